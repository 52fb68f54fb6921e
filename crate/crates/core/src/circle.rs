//! Exact roots of unity, written additively as elements of ℚ/ℤ, and formal
//! rational combinations of them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::Error;

/// An element `p/q` of ℚ/ℤ, standing for the root of unity `exp(2πi p/q)`.
///
/// Always reduced: `0 <= p < q` and `gcd(p, q) = 1`, with zero stored as `0/1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircleElement {
    num: u64,
    den: u64,
}

impl CircleElement {
    pub const ZERO: CircleElement = CircleElement { num: 0, den: 1 };

    /// `num/den` reduced into `[0, 1)`. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let d = den as i128;
        let p = (num as i128).rem_euclid(d);
        Self::reduce(p as u128, den as u128)
    }

    fn reduce(num: u128, den: u128) -> Self {
        let num = num % den;
        let g = num.gcd(&den);
        CircleElement {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `n · self`; `n = -1` gives the inverse root.
    pub fn scale(self, n: i64) -> Self {
        let d = self.den as i128;
        let p = ((self.num as i128) * (n as i128 % d)).rem_euclid(d);
        Self::reduce(p as u128, self.den as u128)
    }
}

impl Default for CircleElement {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for CircleElement {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::reduce(self.num as u128 + rhs.num as u128, self.den as u128);
        }
        let (a, b) = (self.den as u128, rhs.den as u128);
        let l = a.lcm(&b);
        assert!(l <= u64::MAX as u128, "denominator overflow");
        Self::reduce(self.num as u128 * (l / a) + rhs.num as u128 * (l / b), l)
    }
}

impl AddAssign for CircleElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Neg for CircleElement {
    type Output = Self;

    fn neg(self) -> Self {
        if self.num == 0 {
            self
        } else {
            CircleElement {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl Sub for CircleElement {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl SubAssign for CircleElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for CircleElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl Ord for CircleElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for CircleElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for CircleElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let r = parse_rational(s)?;
        Ok(CircleElement::new(*r.numer(), *r.denom() as u64))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational64, Error> {
    let bad = || Error::Parse(format!("expected a fraction p/q, got {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(p, q))
}

pub(crate) fn format_rational(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A finite formal sum `Σ c · ζ^root` with rational coefficients.
///
/// Roots are strictly increasing and coefficients nonzero, so equality of
/// values is equality of term lists. No cyclotomic relations are applied:
/// `1 + ζ₃ + ζ₃²` is kept as three terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    terms: Vec<(Rational64, CircleElement)>,
}

impl CyclotomicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn root(root: CircleElement) -> Self {
        Self::term(Rational64::from_integer(1), root)
    }

    pub fn integer(n: i64) -> Self {
        Self::term(Rational64::from_integer(n), CircleElement::ZERO)
    }

    pub fn term(coefficient: Rational64, root: CircleElement) -> Self {
        if coefficient.is_zero() {
            Self::zero()
        } else {
            CyclotomicValue {
                terms: vec![(coefficient, root)],
            }
        }
    }

    /// Builds the canonical form from arbitrary terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational64, CircleElement)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by_key(|t| t.1);
        let mut merged: Vec<(Rational64, CircleElement)> = Vec::with_capacity(terms.len());
        for (c, r) in terms {
            match merged.last_mut() {
                Some(last) if last.1 == r => last.0 += c,
                _ => merged.push((c, r)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        CyclotomicValue { terms: merged }
    }

    pub fn terms(&self) -> &[(Rational64, CircleElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: Rational64) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        CyclotomicValue {
            terms: self.terms.iter().map(|&(c, r)| (c * factor, r)).collect(),
        }
    }

    /// Pairs of `["c/d", "p/q"]` strings.
    pub fn to_string_pairs(&self) -> Vec<[String; 2]> {
        self.terms
            .iter()
            .map(|&(c, r)| [format_rational(c), r.to_string()])
            .collect()
    }

    pub fn from_string_pairs(pairs: &[[String; 2]]) -> Result<Self, Error> {
        let terms = pairs
            .iter()
            .map(|[c, r]| Ok((parse_rational(c)?, r.parse()?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Self::from_terms(terms))
    }
}

impl Add<&CyclotomicValue> for &CyclotomicValue {
    type Output = CyclotomicValue;

    fn add(self, rhs: &CyclotomicValue) -> CyclotomicValue {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (self.terms[i], rhs.terms[j]);
            match a.1.cmp(&b.1) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.0 + b.0;
                    if !c.is_zero() {
                        out.push((c, a.1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        CyclotomicValue { terms: out }
    }
}

impl Add for CyclotomicValue {
    type Output = CyclotomicValue;

    fn add(self, rhs: CyclotomicValue) -> CyclotomicValue {
        &self + &rhs
    }
}

impl AddAssign<&CyclotomicValue> for CyclotomicValue {
    fn add_assign(&mut self, rhs: &CyclotomicValue) {
        *self = &*self + rhs;
    }
}

impl Neg for &CyclotomicValue {
    type Output = CyclotomicValue;

    fn neg(self) -> CyclotomicValue {
        self.scale(Rational64::from_integer(-1))
    }
}

impl Mul<Rational64> for &CyclotomicValue {
    type Output = CyclotomicValue;

    fn mul(self, rhs: Rational64) -> CyclotomicValue {
        self.scale(rhs)
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})·ζ[{}]", format_rational(*c), r)?;
        }
        Ok(())
    }
}
