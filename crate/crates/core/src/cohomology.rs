//! Orders of `Hⁿ(G, ℤ/m)` with trivial action.
//!
//! The coboundary maps are lifted to integer matrices, brought to Smith
//! normal form over ℤ, and only then reduced modulo `m`.
//! [`brute_force_counts`] enumerates cochains directly and serves as an
//! independent check.

use std::collections::HashSet;

use crate::circle::CircleElement;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Cap on the number of rows `|G|ⁿ⁺¹` of the coboundary matrix.
pub const DEFAULT_MATRIX_CAP: usize = 4096;
/// Cap on the number of cochains enumerated by [`brute_force_counts`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| x as i128)).collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    fn at(&mut self, r: usize, c: usize) -> &mut i128 {
        &mut self.data[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[target] -= q · row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: i128, from: usize) -> Result<()> {
        for c in from..self.cols {
            let s = self.get(source, c);
            if s != 0 {
                let v = self.at(target, c);
                *v = v
                    .checked_sub(q.checked_mul(s).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    /// col[target] -= q · col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: i128, from: usize) -> Result<()> {
        for r in from..self.rows {
            let s = self.get(r, source);
            if s != 0 {
                let v = self.at(r, target);
                *v = v
                    .checked_sub(q.checked_mul(s).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }
}

/// The nonzero invariant factors `d₁ | d₂ | … | d_r` of an integer matrix.
pub fn smith_invariants(matrix: &IntMatrix) -> Result<Vec<u128>> {
    let mut a = matrix.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize, i128)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c).abs();
                if v != 0 && best.is_none_or(|b| v < b.2) {
                    best = Some((r, c, v));
                    if v == 1 {
                        break;
                    }
                }
            }
            if best.is_some_and(|b| b.2 == 1) {
                break;
            }
        }
        let Some((r, c, _)) = best else { break };
        a.swap_rows(t, r);
        a.swap_cols(t, c);

        loop {
            let p = a.get(t, t);
            let mut clean = true;
            for r in t + 1..rows {
                let v = a.get(r, t);
                if v != 0 {
                    a.row_axpy(r, t, v.div_euclid(p), t)?;
                    if a.get(r, t) != 0 {
                        clean = false;
                    }
                }
            }
            for c in t + 1..cols {
                let v = a.get(t, c);
                if v != 0 {
                    a.col_axpy(c, t, v.div_euclid(p), t)?;
                    if a.get(t, c) != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                // divisibility: fold a non-divisible row into the pivot row
                let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a.get(r, c) % p != 0));
                match offender {
                    Some(r) => {
                        a.row_axpy(t, r, -1, t)?;
                    }
                    None => break,
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let mut best = (t, t, a.get(t, t).abs());
            for r in t + 1..rows {
                let v = a.get(r, t).abs();
                if v != 0 && (best.2 == 0 || v < best.2) {
                    best = (r, t, v);
                }
            }
            for c in t + 1..cols {
                let v = a.get(t, c).abs();
                if v != 0 && (best.2 == 0 || v < best.2) {
                    best = (t, c, v);
                }
            }
            a.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
        }
        diag.push(a.get(t, t).unsigned_abs());
    }
    Ok(diag)
}

/// Integer matrix of `δ: Cⁿ → Cⁿ⁺¹`, one row per `(n+1)`-tuple and one
/// column per `n`-tuple, in cochain table order. For `n = 0` the map is zero.
pub fn coboundary_matrix(group: &FiniteGroup, n: usize) -> Result<IntMatrix> {
    let k = group.order();
    let rows = k.pow(n as u32 + 1);
    let cols = k.pow(n as u32);
    let mut m = IntMatrix::zeros(rows, cols);
    let g = |a, b| group.mul(a, b);
    match n {
        0 => {}
        1 => {
            for g2 in 0..k {
                for g1 in 0..k {
                    let row = g2 * k + g1;
                    *m.at(row, g1) += 1;
                    *m.at(row, g(g2, g1)) -= 1;
                    *m.at(row, g2) += 1;
                }
            }
        }
        2 => {
            let ix = |a: usize, b: usize| a * k + b;
            for g3 in 0..k {
                for g2 in 0..k {
                    for g1 in 0..k {
                        let row = (g3 * k + g2) * k + g1;
                        *m.at(row, ix(g2, g1)) += 1;
                        *m.at(row, ix(g(g3, g2), g1)) -= 1;
                        *m.at(row, ix(g3, g(g2, g1))) += 1;
                        *m.at(row, ix(g3, g2)) -= 1;
                    }
                }
            }
        }
        3 => {
            let ix = |a: usize, b: usize, c: usize| (a * k + b) * k + c;
            for g4 in 0..k {
                for g3 in 0..k {
                    for g2 in 0..k {
                        for g1 in 0..k {
                            let row = ((g4 * k + g3) * k + g2) * k + g1;
                            *m.at(row, ix(g3, g2, g1)) += 1;
                            *m.at(row, ix(g4, g(g3, g2), g1)) += 1;
                            *m.at(row, ix(g4, g3, g2)) += 1;
                            *m.at(row, ix(g4, g3, g(g2, g1))) -= 1;
                            *m.at(row, ix(g(g4, g3), g2, g1)) -= 1;
                        }
                    }
                }
            }
        }
        _ => return Err(Error::UnsupportedArity(n)),
    }
    Ok(m)
}

fn checked_pow(base: u128, exp: usize) -> Result<u128> {
    (0..exp)
        .try_fold(1u128, |acc, _| acc.checked_mul(base))
        .ok_or(Error::TooLarge {
            size: u128::MAX,
            cap: u128::MAX,
        })
}

/// `|Hⁿ(G, ℤ/m)|` for `n ∈ {1, 2, 3}`.
///
/// With invariant factors `dᵢ` of `δₙ` (rank `r`) and `eⱼ` of `δₙ₋₁`
/// (rank `s`) over `cₙ = |G|ⁿ` columns,
/// `|ker δₙ ⊗ ℤ/m| = m^(cₙ−r) Π gcd(dᵢ, m)` and
/// `|im δₙ₋₁ ⊗ ℤ/m| = m^s / Π gcd(eⱼ, m)`.
pub fn cohomology_order(group: &FiniteGroup, n: usize, m: u64, cap: usize) -> Result<u128> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    assert!(m >= 1, "modulus must be positive");
    let rows = (group.order() as u128).pow(n as u32 + 1);
    if rows > cap as u128 {
        return Err(Error::TooLarge {
            size: rows,
            cap: cap as u128,
        });
    }
    let m = m as u128;
    let upper = smith_invariants(&coboundary_matrix(group, n)?)?;
    let lower = smith_invariants(&coboundary_matrix(group, n - 1)?)?;
    let cols = group.order().pow(n as u32);
    let free = cols
        .checked_sub(upper.len() + lower.len())
        .expect("rank of δₙ plus rank of δₙ₋₁ is at most the number of n-cochains");
    let torsion = upper
        .iter()
        .chain(&lower)
        .map(|&d| num_integer::gcd(d, m))
        .try_fold(1u128, u128::checked_mul)
        .ok_or(Error::TooLarge {
            size: u128::MAX,
            cap: u128::MAX,
        })?;
    checked_pow(m, free)?.checked_mul(torsion).ok_or(Error::TooLarge {
        size: u128::MAX,
        cap: u128::MAX,
    })
}

/// Counts of `ℤ/m`-valued `n`-cocycles and of distinct `n`-coboundaries,
/// by enumerating every cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceCounts {
    pub cocycles: u128,
    pub coboundaries: u128,
}

impl BruteForceCounts {
    pub fn ratio(&self) -> u128 {
        self.cocycles / self.coboundaries
    }
}

fn for_each_cochain(
    group: &FiniteGroup,
    arity: usize,
    m: u64,
    mut visit: impl FnMut(&Cochain) -> Result<()>,
) -> Result<()> {
    let len = group.order().pow(arity as u32);
    let mut digits = vec![0u64; len];
    loop {
        let values = digits.iter().map(|&d| CircleElement::new(d as i64, m)).collect();
        visit(&Cochain::from_values(group, arity, values)?)?;
        // odometer increment
        let mut i = 0;
        loop {
            if i == len {
                return Ok(());
            }
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn brute_force_counts(group: &FiniteGroup, n: usize, m: u64, cap: u128) -> Result<BruteForceCounts> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    assert!(m >= 1, "modulus must be positive");
    let len = group.order().pow(n as u32);
    let size = (m as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }

    let mut cocycles = 0u128;
    for_each_cochain(group, n, m, |c| {
        if c.is_cocycle()?.holds() {
            cocycles += 1;
        }
        Ok(())
    })?;

    let coboundaries = if n == 1 {
        // δ on 0-cochains vanishes for the trivial action
        1
    } else {
        let mut seen: HashSet<Vec<CircleElement>> = HashSet::new();
        for_each_cochain(group, n - 1, m, |b| {
            seen.insert(b.coboundary()?.values().to_vec());
            Ok(())
        })?;
        seen.len() as u128
    };
    Ok(BruteForceCounts { cocycles, coboundaries })
}
