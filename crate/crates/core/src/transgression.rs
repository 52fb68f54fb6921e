//! Transgression of a 3-cocycle on G to a 2-cochain on a centralizer `C_G(f)`.
//!
//! Products of `k*`-values are written additively in ℚ/ℤ, so inverse factors
//! become subtracted terms. `g*` denotes `g⁻¹`.

use serde::Serialize;

use crate::circle::CircleElement;
use crate::cochain::{random_coboundary, Cochain, ThreeCocycle};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::library;
use crate::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransgressionKind {
    Gamma,
    Willerton,
}

/// A 2-cochain on `C_G(f)` derived from a 3-cocycle.
///
/// The table is indexed by centralizer-local indices; use
/// [`TransgressedCocycle::value`] for parent indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransgressedCocycle {
    base: usize,
    centralizer: Subgroup,
    table: Cochain,
    kind: TransgressionKind,
}

impl TransgressedCocycle {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn centralizer(&self) -> &Subgroup {
        &self.centralizer
    }

    /// Arity-2 cochain on `centralizer().as_group()`.
    pub fn table(&self) -> &Cochain {
        &self.table
    }

    pub fn kind(&self) -> TransgressionKind {
        self.kind
    }

    /// The value at a pair of parent elements of the centralizer.
    pub fn value(&self, h: usize, g: usize) -> Result<CircleElement> {
        let local = |x: usize| {
            self.centralizer.local_index(x).ok_or(Error::NotInCentralizer {
                element: x,
                base: self.base,
            })
        };
        self.table.eval(&[local(h)?, local(g)?])
    }
}

/// `Γ_{h,g}` for `h, g ∈ C_G(f)`, all indices in G:
///
/// `c(h,gf,g*) + c(h,g,f) − c(hgf,g*,h*) − [c(h,g,g*) + c(h,g,1) − c(hg,g*,h*)]`
pub fn gamma_value(c: &ThreeCocycle, f: usize, h: usize, g: usize) -> CircleElement {
    let grp = c.group();
    let (gi, hi) = (grp.inv(g), grp.inv(h));
    let gf = grp.mul(g, f);
    let hg = grp.mul(h, g);
    let hgf = grp.mul(hg, f);
    let numerator = c.c(h, gf, gi) + c.c(h, g, f) - c.c(hgf, gi, hi);
    let denominator = c.c(h, g, gi) + c.c(h, g, 0) - c.c(hg, gi, hi);
    numerator - denominator
}

/// `C_{h,g} = c(h,g,f) + c(hgfg⁻¹h⁻¹, h, g) − c(h, gfg⁻¹, g)`.
pub fn willerton_value(c: &ThreeCocycle, f: usize, h: usize, g: usize) -> CircleElement {
    let grp = c.group();
    let gfg = grp.product(&[g, f, grp.inv(g)]);
    let hgfgh = grp.product(&[h, gfg, grp.inv(h)]);
    c.c(h, g, f) + c.c(hgfgh, h, g) - c.c(h, gfg, g)
}

fn transgress(
    c: &ThreeCocycle,
    f: usize,
    kind: TransgressionKind,
    value: fn(&ThreeCocycle, usize, usize, usize) -> CircleElement,
) -> Result<TransgressedCocycle> {
    c.group().check_element(f)?;
    let centralizer = c.group().centralizer(f);
    let table = Cochain::from_fn(centralizer.as_group(), 2, |t| {
        value(c, f, centralizer.parent_index(t[0]), centralizer.parent_index(t[1]))
    })?;
    Ok(TransgressedCocycle {
        base: f,
        centralizer,
        table,
        kind,
    })
}

pub fn transgress_gamma(c: &ThreeCocycle, f: usize) -> Result<TransgressedCocycle> {
    transgress(c, f, TransgressionKind::Gamma, gamma_value)
}

pub fn transgress_willerton(c: &ThreeCocycle, f: usize) -> Result<TransgressedCocycle> {
    transgress(c, f, TransgressionKind::Willerton, willerton_value)
}

/// Runs the 2-cocycle check on a transgressed table; the witness `(k, h, g)`
/// is reported in parent indices.
pub fn verify_2cocycle(t: &TransgressedCocycle) -> Result<Verdict> {
    Ok(match t.table.is_2cocycle()? {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(w) => Verdict::Fails(w.into_iter().map(|x| t.centralizer.parent_index(x)).collect()),
    })
}

pub fn verify_gamma_is_2cocycle(c: &ThreeCocycle, f: usize) -> Result<Verdict> {
    verify_2cocycle(&transgress_gamma(c, f)?)
}

/// One failed 2-cocycle check in a corpus run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusViolation {
    pub group: String,
    pub cocycle: String,
    pub f: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub kind: TransgressionKind,
    pub checked: usize,
    pub violations: usize,
    pub failures: Vec<CorpusViolation>,
}

/// The cocycles exercised per group in a corpus run: every cyclic pullback
/// followed by `coboundaries` seeded random coboundaries.
pub fn corpus_cocycles(group: &FiniteGroup, coboundaries: u64, seed: u64) -> Result<Vec<(String, ThreeCocycle)>> {
    let mut out = crate::character::cyclic_pullbacks(group);
    for i in 0..coboundaries {
        let s = seed.wrapping_add(i);
        let c = random_coboundary(group, 3, CORPUS_COBOUNDARY_MODULUS, s)?;
        out.push((format!("coboundary#{s}"), ThreeCocycle::new(c)?));
    }
    Ok(out)
}

pub const CORPUS_COBOUNDARY_MODULUS: u64 = 12;

/// Checks the 2-cocycle condition of the chosen transgression for every
/// builtin group up to `max_order`, every `f` and every corpus cocycle.
pub fn verify_corpus(max_order: usize, coboundaries: u64, seed: u64, kind: TransgressionKind) -> Result<CorpusReport> {
    let mut report = CorpusReport {
        kind,
        checked: 0,
        violations: 0,
        failures: Vec::new(),
    };
    for (name, group) in library::corpus(max_order) {
        for (label, c) in corpus_cocycles(&group, coboundaries, seed)? {
            for f in group.elements() {
                let t = match kind {
                    TransgressionKind::Gamma => transgress_gamma(&c, f)?,
                    TransgressionKind::Willerton => transgress_willerton(&c, f)?,
                };
                report.checked += 1;
                if let Verdict::Fails(witness) = verify_2cocycle(&t)? {
                    report.violations += 1;
                    report.failures.push(CorpusViolation {
                        group: name.clone(),
                        cocycle: label.clone(),
                        f,
                        witness,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum TransgressionComparison {
    PointwiseEqual,
    Differ {
        h: usize,
        g: usize,
        #[serde(serialize_with = "crate::io::ser_display")]
        gamma: CircleElement,
        #[serde(serialize_with = "crate::io::ser_display")]
        willerton: CircleElement,
    },
}

/// Reports the first pair (in parent indices) where `Γ` and the Willerton
/// transgression disagree. A report, not a judgement.
pub fn compare_transgressions(c: &ThreeCocycle, f: usize) -> Result<TransgressionComparison> {
    let gamma = transgress_gamma(c, f)?;
    let willerton = transgress_willerton(c, f)?;
    let first = gamma
        .table
        .values()
        .iter()
        .zip(willerton.table.values())
        .position(|(a, b)| a != b);
    Ok(match first {
        None => TransgressionComparison::PointwiseEqual,
        Some(index) => {
            let t = gamma.table.tuple_at(index);
            TransgressionComparison::Differ {
                h: gamma.centralizer.parent_index(t[0]),
                g: gamma.centralizer.parent_index(t[1]),
                gamma: gamma.table.values()[index],
                willerton: willerton.table.values()[index],
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub name: String,
    #[serde(serialize_with = "crate::io::ser_display")]
    pub left: CircleElement,
    #[serde(serialize_with = "crate::io::ser_display")]
    pub right: CircleElement,
    pub equal: bool,
}

impl ProofStep {
    fn new(name: impl Into<String>, left: CircleElement, right: CircleElement) -> Self {
        ProofStep {
            name: name.into(),
            left,
            right,
            equal: left == right,
        }
    }
}

/// Replays the proof that `Γ` is a 2-cocycle for one triple `k, h, g ∈ C_G(f)`.
///
/// `Γ(h,g) + Γ(k,hg) = Π_f − Π_1` and `Γ(k,h) + Γ(kh,g) = Π'_f − Π'_1`;
/// four applications of the 3-cocycle condition rewrite `Π'_x` (for `x = f`
/// and `x = 1`) until it equals `Π_x + c(k,h,g) − c(g*,h*,k*)`, whose extra
/// terms cancel in the difference. Each rewrite is recorded as its own step,
/// with `left` the previous form and `right` the rewritten one.
pub fn proof_trace(c: &ThreeCocycle, f: usize, k: usize, h: usize, g: usize) -> Result<Vec<ProofStep>> {
    let grp = c.group();
    for x in [f, k, h, g] {
        grp.check_element(x)?;
    }
    for x in [k, h, g] {
        if !grp.commutes(x, f) {
            return Err(Error::NotInCentralizer { element: x, base: f });
        }
    }
    let m = |xs: &[usize]| grp.product(xs);
    let (gi, hi, ki) = (grp.inv(g), grp.inv(h), grp.inv(k));
    let cc = |a, b, d| c.c(a, b, d);

    let pi = |x: usize| {
        cc(h, m(&[g, x]), gi) + cc(h, g, x) - cc(m(&[h, g, x]), gi, hi)
            + cc(k, m(&[h, g, x]), m(&[gi, hi]))
            + cc(k, m(&[h, g]), x)
            - cc(m(&[k, h, g, x]), m(&[gi, hi]), ki)
    };
    let pi_prime = |x: usize| {
        cc(k, m(&[h, x]), hi) + cc(k, h, x) - cc(m(&[k, h, x]), hi, ki)
            + cc(m(&[k, h]), m(&[g, x]), gi)
            + cc(m(&[k, h]), g, x)
            - cc(m(&[k, h, g, x]), gi, m(&[hi, ki]))
    };
    // cocycle condition at (k, h, gx, g*)
    let rewrite1 = |x: usize| {
        cc(h, m(&[g, x]), gi) + cc(k, m(&[h, g, x]), gi) + cc(k, h, m(&[g, x])) + cc(k, m(&[h, x]), hi)
            - cc(m(&[k, h, x]), hi, ki)
            + cc(m(&[k, h]), g, x)
            - cc(m(&[k, h, g, x]), gi, m(&[hi, ki]))
    };
    // cocycle condition at (khgx, g*, h*, k*)
    let rewrite2 = |x: usize| {
        cc(h, m(&[g, x]), gi)
            + cc(k, m(&[h, g, x]), gi)
            + cc(k, h, m(&[g, x]))
            + cc(k, m(&[h, x]), hi)
            + cc(m(&[k, h]), g, x)
            - cc(gi, hi, ki)
            - cc(m(&[k, h, g, x]), m(&[gi, hi]), ki)
            - cc(m(&[k, h, g, x]), gi, hi)
    };
    // cocycle condition at (k, hgx, g*, h*)
    let rewrite3 = |x: usize| {
        cc(k, m(&[h, g, x]), m(&[gi, hi]))
            - cc(m(&[h, g, x]), gi, hi)
            - cc(gi, hi, ki)
            - cc(m(&[k, h, g, x]), m(&[gi, hi]), ki)
            + cc(h, m(&[g, x]), gi)
            + cc(k, h, m(&[g, x]))
            + cc(m(&[k, h]), g, x)
    };
    // cocycle condition at (k, h, g, x)
    let rewrite4 = |x: usize| {
        cc(h, g, x) + cc(k, m(&[h, g]), x) + cc(k, h, g) + cc(k, m(&[h, g, x]), m(&[gi, hi]))
            - cc(m(&[h, g, x]), gi, hi)
            - cc(gi, hi, ki)
            - cc(m(&[k, h, g, x]), m(&[gi, hi]), ki)
            + cc(h, m(&[g, x]), gi)
    };
    let spare = cc(k, h, g) - cc(gi, hi, ki);

    let gamma = |a, b| gamma_value(c, f, a, b);
    let left_side = gamma(h, g) + gamma(k, m(&[h, g]));
    let right_side = gamma(k, h) + gamma(m(&[k, h]), g);

    let mut steps = vec![
        ProofStep::new("Γ(h,g) + Γ(k,hg) = Π_f − Π_1", left_side, pi(f) - pi(0)),
        ProofStep::new("Γ(k,h) + Γ(kh,g) = Π'_f − Π'_1", right_side, pi_prime(f) - pi_prime(0)),
    ];
    for (x, label) in [(f, "f"), (0, "1")] {
        steps.extend([
            ProofStep::new(
                format!("Π'_{label}: cocycle condition at (k, h, g{label}, g*)"),
                pi_prime(x),
                rewrite1(x),
            ),
            ProofStep::new(
                format!("Π'_{label}: cocycle condition at (khg{label}, g*, h*, k*)"),
                rewrite1(x),
                rewrite2(x),
            ),
            ProofStep::new(
                format!("Π'_{label}: cocycle condition at (k, hg{label}, g*, h*)"),
                rewrite2(x),
                rewrite3(x),
            ),
            ProofStep::new(
                format!("Π'_{label}: cocycle condition at (k, h, g, {label})"),
                rewrite3(x),
                rewrite4(x),
            ),
            ProofStep::new(
                format!("Π'_{label} − c(k,h,g) + c(g*,h*,k*) = Π_{label}"),
                rewrite4(x) - spare,
                pi(x),
            ),
        ]);
    }
    steps.push(ProofStep::new(
        "Π'_f − Π'_1 = Π_f − Π_1",
        pi_prime(f) - pi_prime(0),
        pi(f) - pi(0),
    ));
    steps.push(ProofStep::new(
        "Γ(h,g) + Γ(k,hg) = Γ(k,h) + Γ(kh,g)",
        left_side,
        right_side,
    ));
    Ok(steps)
}
