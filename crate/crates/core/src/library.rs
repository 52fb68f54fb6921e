//! Builtin groups, all generated from permutations.

use crate::group::{FiniteGroup, DEFAULT_CLOSURE_CAP};

fn from_gens(gens: &[Vec<usize>]) -> FiniteGroup {
    FiniteGroup::from_permutations(gens, DEFAULT_CLOSURE_CAP).expect("builtin generators are valid")
}

/// ℤ/n with element `k` equal to the `k`-th power of the generator, so that
/// `mul(a, b) = (a + b) mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    if n == 1 {
        return FiniteGroup::trivial();
    }
    from_gens(&[(0..n).map(|i| (i + 1) % n).collect()])
}

pub fn klein_four() -> FiniteGroup {
    from_gens(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}

pub fn symmetric3() -> FiniteGroup {
    from_gens(&[vec![1, 0, 2], vec![1, 2, 0]])
}

/// Symmetries of a square with vertices 0..4 in cyclic order.
pub fn dihedral4() -> FiniteGroup {
    from_gens(&[vec![1, 2, 3, 0], vec![2, 1, 0, 3]])
}

/// The left regular representation of the quaternions on ±1, ±i, ±j, ±k.
pub fn quaternion8() -> FiniteGroup {
    // point = 4·sign + unit, units 1, i, j, k
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let left = |unit: usize| -> Vec<usize> {
        (0..8)
            .map(|p| {
                let (sign, u) = (p / 4, p % 4);
                let (s, v) = UNIT_MUL[unit][u];
                4 * ((sign + s) % 2) + v
            })
            .collect()
    };
    from_gens(&[left(1), left(2)])
}

pub fn alternating4() -> FiniteGroup {
    from_gens(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

pub fn symmetric4() -> FiniteGroup {
    from_gens(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
}

/// Resolves a builtin name such as `Z4`, `Z2xZ2`, `S3`, `D4`, `Q8`, `A4`, `S4`.
pub fn builtin(name: &str) -> Option<FiniteGroup> {
    match name {
        "trivial" => Some(FiniteGroup::trivial()),
        "Z2xZ2" | "V4" => Some(klein_four()),
        "S3" => Some(symmetric3()),
        "D4" => Some(dihedral4()),
        "Q8" => Some(quaternion8()),
        "A4" => Some(alternating4()),
        "S4" => Some(symmetric4()),
        _ => {
            let n: usize = name.strip_prefix('Z')?.parse().ok()?;
            (1..=16).contains(&n).then(|| cyclic(n))
        }
    }
}

pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=16).map(|n| format!("Z{n}")).collect();
    names.extend(["Z2xZ2", "S3", "D4", "Q8", "A4", "S4"].map(String::from));
    names
}

/// Every builtin group of order at most `max_order`, in a fixed order.
pub fn corpus(max_order: usize) -> Vec<(String, FiniteGroup)> {
    builtin_names()
        .into_iter()
        .map(|name| {
            let g = builtin(&name).expect("listed names resolve");
            (name, g)
        })
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}
