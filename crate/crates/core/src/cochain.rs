//! ℚ/ℤ-valued group cochains with trivial action.
//!
//! Arguments are written right to left as `(gₙ, …, g₁)`, matching the
//! 3-cocycle condition
//! `c(g₃,g₂,g₁) c(g₄,g₃g₂,g₁) c(g₄,g₃,g₂) = c(g₄,g₃,g₂g₁) c(g₄g₃,g₂,g₁)`
//! written additively. The table index of `(gₙ, …, g₁)` is
//! `g₁ + g₂·|G| + … + gₙ·|G|ⁿ⁻¹`, so the first argument is the most
//! significant digit and tables enumerate tuples lexicographically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::CircleElement;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::library;
use crate::Verdict;

pub const MAX_ARITY: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    group: FiniteGroup,
    arity: usize,
    values: Vec<CircleElement>,
}

fn table_len(order: usize, arity: usize) -> usize {
    order.pow(arity as u32)
}

fn check_arity(arity: usize) -> Result<()> {
    if (1..=MAX_ARITY).contains(&arity) {
        Ok(())
    } else {
        Err(Error::UnsupportedArity(arity))
    }
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let values = vec![CircleElement::ZERO; table_len(group.order(), arity)];
        Ok(Cochain {
            group: group.clone(),
            arity,
            values,
        })
    }

    pub fn from_values(group: &FiniteGroup, arity: usize, values: Vec<CircleElement>) -> Result<Self> {
        check_arity(arity)?;
        let expected = table_len(group.order(), arity);
        if values.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(Cochain {
            group: group.clone(),
            arity,
            values,
        })
    }

    /// Tabulates `value` over every tuple `(gₙ, …, g₁)`.
    pub fn from_fn(
        group: &FiniteGroup,
        arity: usize,
        mut value: impl FnMut(&[usize]) -> CircleElement,
    ) -> Result<Self> {
        check_arity(arity)?;
        let n = group.order();
        let mut tuple = vec![0; arity];
        let values = (0..table_len(n, arity))
            .map(|index| {
                decode_into(index, n, &mut tuple);
                value(&tuple)
            })
            .collect();
        Ok(Cochain {
            group: group.clone(),
            arity,
            values,
        })
    }

    /// The cochain equal to `value` at `args` and zero elsewhere.
    pub fn delta(group: &FiniteGroup, args: &[usize], value: CircleElement) -> Result<Self> {
        let mut c = Cochain::zero(group, args.len())?;
        let index = c.index(args)?;
        c.values[index] = value;
        Ok(c)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[CircleElement] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn index(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        let n = self.group.order();
        args.iter().try_fold(0, |acc, &g| {
            self.group.check_element(g)?;
            Ok(acc * n + g)
        })
    }

    /// The tuple stored at a table index.
    pub fn tuple_at(&self, index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.arity];
        decode_into(index, self.group.order(), &mut tuple);
        tuple
    }

    pub fn eval(&self, args: &[usize]) -> Result<CircleElement> {
        Ok(self.values[self.index(args)?])
    }

    #[inline]
    pub(crate) fn at2(&self, a: usize, b: usize) -> CircleElement {
        self.values[a * self.group.order() + b]
    }

    #[inline]
    pub(crate) fn at3(&self, a: usize, b: usize, c: usize) -> CircleElement {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    /// The bar-resolution coboundary, raising arity by one.
    pub fn coboundary(&self) -> Result<Cochain> {
        let g = &self.group;
        match self.arity {
            1 => Cochain::from_fn(g, 2, |t| {
                let (g2, g1) = (t[0], t[1]);
                self.values[g1] - self.values[g.mul(g2, g1)] + self.values[g2]
            }),
            2 => Cochain::from_fn(g, 3, |t| {
                let (g3, g2, g1) = (t[0], t[1], t[2]);
                self.at2(g2, g1) - self.at2(g.mul(g3, g2), g1) + self.at2(g3, g.mul(g2, g1)) - self.at2(g3, g2)
            }),
            3 => Cochain::from_fn(g, 4, |t| {
                let (g4, g3, g2, g1) = (t[0], t[1], t[2], t[3]);
                self.at3(g3, g2, g1) + self.at3(g4, g.mul(g3, g2), g1) + self.at3(g4, g3, g2)
                    - self.at3(g4, g3, g.mul(g2, g1))
                    - self.at3(g.mul(g4, g3), g2, g1)
            }),
            n => Err(Error::UnsupportedArity(n)),
        }
    }

    /// Scans every `(g₄, g₃, g₂, g₁)` in lexicographic order and reports the
    /// first quadruple violating the 3-cocycle condition.
    pub fn is_3cocycle(&self) -> Result<Verdict> {
        self.expect_arity(3)?;
        let g = &self.group;
        for g4 in g.elements() {
            for g3 in g.elements() {
                let g43 = g.mul(g4, g3);
                for g2 in g.elements() {
                    let g32 = g.mul(g3, g2);
                    let left_fixed = self.at3(g4, g3, g2);
                    for g1 in g.elements() {
                        let left = self.at3(g3, g2, g1) + self.at3(g4, g32, g1) + left_fixed;
                        let right = self.at3(g4, g3, g.mul(g2, g1)) + self.at3(g43, g2, g1);
                        if left != right {
                            return Ok(Verdict::Fails(vec![g4, g3, g2, g1]));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// Checks `β(h,g) + β(k,hg) = β(k,h) + β(kh,g)` over every `(k, h, g)`.
    pub fn is_2cocycle(&self) -> Result<Verdict> {
        self.expect_arity(2)?;
        let grp = &self.group;
        for k in grp.elements() {
            for h in grp.elements() {
                let kh = grp.mul(k, h);
                for g in grp.elements() {
                    let left = self.at2(h, g) + self.at2(k, grp.mul(h, g));
                    let right = self.at2(k, h) + self.at2(kh, g);
                    if left != right {
                        return Ok(Verdict::Fails(vec![k, h, g]));
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// Checks `α(g₂g₁) = α(g₂) + α(g₁)`.
    pub fn is_1cocycle(&self) -> Result<Verdict> {
        self.expect_arity(1)?;
        let grp = &self.group;
        for g2 in grp.elements() {
            for g1 in grp.elements() {
                if self.values[grp.mul(g2, g1)] != self.values[g2] + self.values[g1] {
                    return Ok(Verdict::Fails(vec![g2, g1]));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// Cocycle check at the cochain's own arity (1, 2 or 3).
    pub fn is_cocycle(&self) -> Result<Verdict> {
        match self.arity {
            1 => self.is_1cocycle(),
            2 => self.is_2cocycle(),
            3 => self.is_3cocycle(),
            n => Err(Error::UnsupportedArity(n)),
        }
    }

    /// True iff the cochain vanishes on every tuple containing the identity.
    pub fn is_normalized(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(index, v)| v.is_zero() || !self.tuple_at(index).contains(&0))
    }

    /// `self ∘ (hom × … × hom)` for a homomorphism `hom: source → self.group()`,
    /// given as the image of each element of `source`.
    pub fn pullback(&self, source: &FiniteGroup, hom: &[usize]) -> Result<Cochain> {
        source.check_homomorphism(&self.group, hom)?;
        let mut image = vec![0; self.arity];
        Cochain::from_fn(source, self.arity, |t| {
            for (slot, &x) in image.iter_mut().zip(t) {
                *slot = hom[x];
            }
            self.values[self.index(&image).expect("homomorphism images are in range")]
        })
    }

    /// Restriction to a subgroup of this cochain's group, in local indices.
    pub fn restrict(&self, subgroup: &Subgroup) -> Result<Cochain> {
        if subgroup.parent() != &self.group {
            return Err(Error::NotASubgroup {
                element: subgroup.elements().last().copied().unwrap_or(0),
            });
        }
        self.pullback(subgroup.as_group(), subgroup.inclusion())
    }

    fn expect_arity(&self, arity: usize) -> Result<()> {
        if self.arity == arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: arity,
                found: self.arity,
            })
        }
    }
}

fn decode_into(mut index: usize, order: usize, tuple: &mut [usize]) {
    for slot in tuple.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
}

/// A cochain known to satisfy the 3-cocycle condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCocycle(Cochain);

impl ThreeCocycle {
    pub fn new(c: Cochain) -> Result<Self> {
        match c.is_3cocycle()? {
            Verdict::Holds => Ok(ThreeCocycle(c)),
            Verdict::Fails(witness) => Err(Error::NotACocycle { witness }),
        }
    }

    pub fn cochain(&self) -> &Cochain {
        &self.0
    }

    pub fn group(&self) -> &FiniteGroup {
        self.0.group()
    }

    pub fn into_inner(self) -> Cochain {
        self.0
    }

    /// `c(g₃, g₂, g₁)`.
    #[inline]
    pub fn c(&self, g3: usize, g2: usize, g1: usize) -> CircleElement {
        self.0.at3(g3, g2, g1)
    }
}

impl TryFrom<Cochain> for ThreeCocycle {
    type Error = Error;

    fn try_from(c: Cochain) -> Result<Self> {
        ThreeCocycle::new(c)
    }
}

/// `c(g₃,g₂,g₁) = a·g₃·⌊(g₂+g₁)/n⌋ / n` on ℤ/n, the standard generators of
/// `H³(ℤ/n, ℚ/ℤ)`.
pub fn cyclic_3cocycle(n: usize, a: i64) -> Cochain {
    let group = library::cyclic(n);
    let den = n as u64;
    Cochain::from_fn(&group, 3, |t| {
        let carry = ((t[1] + t[2]) / n) as i64;
        CircleElement::new(a.rem_euclid(n as i64) * t[0] as i64 * carry, den)
    })
    .expect("arity 3 is supported")
}

/// A cochain with values drawn uniformly from `{0, 1/m, …, (m−1)/m}`.
pub fn random_cochain(group: &FiniteGroup, arity: usize, m: u64, seed: u64) -> Result<Cochain> {
    assert!(m >= 1, "modulus must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Cochain::from_fn(group, arity, |_| CircleElement::new(rng.gen_range(0..m) as i64, m))
}

/// `δβ` for a random `(n−1)`-cochain `β` with values in `(1/m)ℤ/ℤ`.
pub fn random_coboundary(group: &FiniteGroup, arity: usize, m: u64, seed: u64) -> Result<Cochain> {
    if !(2..=3).contains(&arity) {
        return Err(Error::UnsupportedArity(arity));
    }
    random_cochain(group, arity - 1, m, seed)?.coboundary()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ce(p: i64, q: u64) -> CircleElement {
        CircleElement::new(p, q)
    }

    #[test]
    fn evaluation() {
        let s3 = library::symmetric3();
        let zero = Cochain::zero(&s3, 3).unwrap();
        assert_eq!(zero.eval(&[1, 2, 3]).unwrap(), CircleElement::ZERO);
        let d = Cochain::delta(&s3, &[4, 0, 5], ce(1, 3)).unwrap();
        assert_eq!(d.eval(&[4, 0, 5]).unwrap(), ce(1, 3));
        assert_eq!(d.eval(&[5, 0, 4]).unwrap(), CircleElement::ZERO);
        assert_eq!(d.index(&[4, 0, 5]).unwrap(), 4 * 36 + 5);
        assert_eq!(d.tuple_at(4 * 36 + 5), vec![4, 0, 5]);
        assert_eq!(zero.eval(&[1, 2]), Err(Error::ArityMismatch { expected: 3, found: 2 }));
        assert_eq!(
            zero.eval(&[1, 2, 6]),
            Err(Error::IndexOutOfRange { index: 6, order: 6 })
        );
        assert_eq!(Cochain::zero(&s3, 5).unwrap_err(), Error::UnsupportedArity(5));
    }

    #[test]
    fn cyclic_generator_values() {
        let c = cyclic_3cocycle(4, 1);
        assert_eq!(c.eval(&[1, 3, 3]).unwrap(), ce(1, 4));
        assert_eq!(cyclic_3cocycle(3, 2).eval(&[1, 2, 2]).unwrap(), ce(2, 3));
        assert!(cyclic_3cocycle(5, 0).is_zero());
        let c2 = cyclic_3cocycle(2, 1);
        for (i, v) in c2.values().iter().enumerate() {
            let expected = if c2.tuple_at(i) == vec![1, 1, 1] {
                ce(1, 2)
            } else {
                CircleElement::ZERO
            };
            assert_eq!(*v, expected);
        }
    }

    #[test]
    fn cyclic_generators_are_normalized_cocycles() {
        for n in 1..=12 {
            for a in 0..n as i64 {
                let c = cyclic_3cocycle(n, a);
                assert_eq!(c.is_3cocycle().unwrap(), Verdict::Holds, "n={n} a={a}");
                assert!(c.is_normalized());
            }
        }
    }

    #[test]
    fn non_cocycle_is_caught() {
        let z2 = library::cyclic(2);
        let c = Cochain::delta(&z2, &[0, 1, 1], ce(1, 2)).unwrap();
        let Verdict::Fails(w) = c.is_3cocycle().unwrap() else {
            panic!("expected a violation")
        };
        let g = |x: usize, y: usize| (x + y) % 2;
        let at = |a, b, cc| c.eval(&[a, b, cc]).unwrap();
        let (g4, g3, g2, g1) = (w[0], w[1], w[2], w[3]);
        assert_ne!(
            at(g3, g2, g1) + at(g4, g(g3, g2), g1) + at(g4, g3, g2),
            at(g4, g3, g(g2, g1)) + at(g(g4, g3), g2, g1)
        );
        let first = (0..16)
            .map(|i| vec![i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1])
            .find(|t| {
                let (g4, g3, g2, g1) = (t[0], t[1], t[2], t[3]);
                at(g3, g2, g1) + at(g4, g(g3, g2), g1) + at(g4, g3, g2) != at(g4, g3, g(g2, g1)) + at(g(g4, g3), g2, g1)
            });
        assert_eq!(Some(w), first);
    }

    #[test]
    fn two_cocycle_examples() {
        let z2 = library::cyclic(2);
        assert!(Cochain::zero(&z2, 2).unwrap().is_2cocycle().unwrap().holds());
        let ext = Cochain::delta(&z2, &[1, 1], ce(1, 2)).unwrap();
        assert!(ext.is_2cocycle().unwrap().holds());
        let s3 = library::symmetric3();
        for seed in 0..5 {
            let a = random_cochain(&s3, 1, 6, seed).unwrap();
            assert!(a.coboundary().unwrap().is_2cocycle().unwrap().holds());
        }
        assert!(Cochain::zero(&z2, 3).unwrap().is_2cocycle().is_err());
    }

    #[test]
    fn coboundary_examples() {
        let z3 = library::cyclic(3);
        let constant = Cochain::from_fn(&z3, 2, |_| ce(2, 7)).unwrap();
        assert!(constant.coboundary().unwrap().is_zero());
        let z2 = library::cyclic(2);
        for seed in 0..4 {
            let a = random_cochain(&z2, 1, 4, seed).unwrap();
            assert!(a.coboundary().unwrap().coboundary().unwrap().is_zero());
        }
        let b = random_cochain(&z3, 2, 9, 42).unwrap();
        assert!(b.coboundary().unwrap().is_3cocycle().unwrap().holds());
        let d3 = b.coboundary().unwrap().coboundary().unwrap();
        assert!(d3.is_zero());
        assert_eq!(d3.coboundary().unwrap_err(), Error::UnsupportedArity(4));
    }

    #[test]
    fn normalization_predicate() {
        let s3 = library::symmetric3();
        assert!(Cochain::zero(&s3, 3).unwrap().is_normalized());
        assert!(!Cochain::from_fn(&s3, 3, |_| ce(1, 2)).unwrap().is_normalized());
    }

    #[test]
    fn pullbacks() {
        let c = cyclic_3cocycle(2, 1);
        let z2 = c.group().clone();
        assert_eq!(c.pullback(&z2, &[0, 1]).unwrap(), c);
        let z4 = library::cyclic(4);
        let trivial = c.pullback(&z4, &[0, 0, 0, 0]).unwrap();
        assert!(trivial.is_zero());
        let reduced = c.pullback(&z4, &[0, 1, 0, 1]).unwrap();
        assert!(reduced.is_3cocycle().unwrap().holds());
        assert_eq!(
            c.pullback(&library::cyclic(3), &[0, 1, 1]).unwrap_err(),
            Error::NotAHomomorphism { a: 1, b: 1 }
        );
    }

    #[test]
    fn random_coboundaries_are_deterministic() {
        let z2 = library::cyclic(2);
        assert!(random_coboundary(&z2, 3, 1, 99).unwrap().is_zero());
        let a = random_coboundary(&z2, 3, 4, 7).unwrap();
        let b = random_coboundary(&z2, 3, 4, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_3cocycle().unwrap().holds());
        assert!(random_coboundary(&z2, 1, 4, 7).is_err());
    }

    #[test]
    fn three_cocycle_newtype() {
        let z2 = library::cyclic(2);
        let bad = Cochain::delta(&z2, &[0, 1, 1], ce(1, 2)).unwrap();
        assert!(matches!(ThreeCocycle::new(bad), Err(Error::NotACocycle { .. })));
        let good = ThreeCocycle::try_from(cyclic_3cocycle(2, 1)).unwrap();
        assert_eq!(good.c(1, 1, 1), ce(1, 2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn coboundary_squares_to_zero(group_ix in 0usize..8, arity in 1usize..3, m in 1u64..13, seed: u64) {
            let (_, g) = library::corpus(8).swap_remove(group_ix.min(library::corpus(8).len() - 1));
            let c = random_cochain(&g, arity, m, seed).unwrap();
            prop_assert!(c.coboundary().unwrap().coboundary().unwrap().is_zero());
        }

        #[test]
        fn pullback_commutes_with_coboundary(arity in 1usize..4, seed: u64) {
            let z6 = library::cyclic(6);
            let z3 = library::cyclic(3);
            let hom: Vec<usize> = (0..6).map(|x| x % 3).collect();
            let c = random_cochain(&z3, arity, 6, seed).unwrap();
            prop_assert_eq!(
                c.coboundary().unwrap().pullback(&z6, &hom).unwrap(),
                c.pullback(&z6, &hom).unwrap().coboundary().unwrap()
            );
        }
    }
}
