//! 1-dimensional 2- and 3-characters, n-class functions and induction of
//! character tables from a subgroup.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Rational64;

use crate::circle::{CircleElement, CyclotomicValue};
use crate::cochain::{cyclic_3cocycle, Cochain, ThreeCocycle};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::transgression::{gamma_value, transgress_gamma};
use crate::Verdict;

/// Values on every pairwise commuting n-tuple of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group: FiniteGroup,
    arity: usize,
    values: BTreeMap<Vec<usize>, CyclotomicValue>,
}

impl CharacterTable {
    pub fn from_fn(
        group: &FiniteGroup,
        arity: usize,
        mut value: impl FnMut(&[usize]) -> Result<CyclotomicValue>,
    ) -> Result<Self> {
        check_arity(arity)?;
        let values = group
            .commuting_tuples(arity)
            .into_iter()
            .map(|t| {
                let v = value(&t)?;
                Ok((t, v))
            })
            .collect::<Result<_>>()?;
        Ok(CharacterTable {
            group: group.clone(),
            arity,
            values,
        })
    }

    /// Validates that the entries cover exactly the commuting tuples.
    pub fn from_entries(
        group: &FiniteGroup,
        arity: usize,
        entries: BTreeMap<Vec<usize>, CyclotomicValue>,
    ) -> Result<Self> {
        check_arity(arity)?;
        for tuple in entries.keys() {
            if tuple.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: tuple.len(),
                });
            }
            for &x in tuple {
                group.check_element(x)?;
            }
            if !pairwise_commuting(group, tuple) {
                return Err(Error::NotPairwiseCommuting { tuple: tuple.clone() });
            }
        }
        let table = CharacterTable {
            group: group.clone(),
            arity,
            values: entries,
        };
        table.check_complete()?;
        Ok(table)
    }

    /// The arity-1 table of a homomorphism `G → ℚ/ℤ`.
    pub fn from_homomorphism(group: &FiniteGroup, lam: &[CircleElement]) -> Result<Self> {
        check_homomorphism(group, lam)?;
        CharacterTable::from_fn(group, 1, |t| Ok(CyclotomicValue::root(lam[t[0]])))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&CyclotomicValue> {
        self.values.get(tuple)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &CyclotomicValue)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_complete(&self) -> Result<()> {
        match self
            .group
            .commuting_tuples(self.arity)
            .into_iter()
            .find(|t| !self.values.contains_key(t))
        {
            Some(tuple) => Err(Error::IncompleteTable { tuple }),
            None => Ok(()),
        }
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if (1..=3).contains(&arity) {
        Ok(())
    } else {
        Err(Error::UnsupportedArity(arity))
    }
}

fn pairwise_commuting(group: &FiniteGroup, tuple: &[usize]) -> bool {
    tuple
        .iter()
        .enumerate()
        .all(|(i, &a)| tuple[i + 1..].iter().all(|&b| group.commutes(a, b)))
}

fn check_homomorphism(group: &FiniteGroup, lam: &[CircleElement]) -> Result<()> {
    if lam.len() != group.order() {
        return Err(Error::ArityMismatch {
            expected: group.order(),
            found: lam.len(),
        });
    }
    for a in group.elements() {
        for b in group.elements() {
            if lam[group.mul(a, b)] != lam[a] + lam[b] {
                return Err(Error::NotAHomomorphism { a, b });
            }
        }
    }
    Ok(())
}

/// Every homomorphism `G → ℚ/ℤ`, as value tables, sorted.
pub fn one_dim_characters(group: &FiniteGroup) -> Vec<Vec<CircleElement>> {
    // greedy generating set
    let mut generators = Vec::new();
    let mut span = group.trivial_subgroup();
    while span.order() < group.order() {
        let next = group.elements().find(|&x| !span.contains(x)).expect("proper span");
        generators.push(next);
        span = group.generated_subgroup(&generators).expect("valid elements");
    }

    let exponent = group.exponent() as u64;
    let mut found = BTreeSet::new();
    let combos = exponent.pow(generators.len() as u32);
    'assignment: for code in 0..combos {
        let images: Vec<CircleElement> = (0..generators.len())
            .map(|i| CircleElement::new(((code / exponent.pow(i as u32)) % exponent) as i64, exponent))
            .collect();
        let mut lam: Vec<Option<CircleElement>> = vec![None; group.order()];
        lam[0] = Some(CircleElement::ZERO);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let vx = lam[x].expect("queued elements are assigned");
            for (&gen, &image) in generators.iter().zip(&images) {
                let y = group.mul(gen, x);
                let vy = image + vx;
                match lam[y] {
                    None => {
                        lam[y] = Some(vy);
                        queue.push_back(y);
                    }
                    Some(existing) if existing != vy => continue 'assignment,
                    Some(_) => {}
                }
            }
        }
        let lam: Vec<CircleElement> = lam.into_iter().map(|v| v.expect("generators span")).collect();
        if check_homomorphism(group, &lam).is_ok() {
            found.insert(lam);
        }
    }
    found.into_iter().collect()
}

/// Pullbacks of every cyclic generator `cyclic_3cocycle(d, a)` along every
/// surjection `G → ℤ/d`, deduplicated, in a deterministic order. Each comes
/// with a label `"Z{d}^{a}@{hom index}"`.
pub fn cyclic_pullbacks(group: &FiniteGroup) -> Vec<(String, ThreeCocycle)> {
    let mut out: Vec<(String, ThreeCocycle)> = Vec::new();
    for (index, lam) in one_dim_characters(group).iter().enumerate() {
        let d = lam.iter().map(|v| v.denominator()).fold(1, num_integer::lcm);
        if d == 1 {
            continue;
        }
        let hom: Vec<usize> = lam
            .iter()
            .map(|v| (v.numerator() * (d / v.denominator())) as usize)
            .collect();
        for a in 1..d as i64 {
            let pulled = cyclic_3cocycle(d as usize, a)
                .pullback(group, &hom)
                .expect("characters are homomorphisms");
            if out.iter().any(|(_, c)| c.cochain() == &pulled) {
                continue;
            }
            let cocycle = ThreeCocycle::new(pulled).expect("pullbacks of cocycles are cocycles");
            out.push((format!("Z{d}^{a}@{index}"), cocycle));
        }
    }
    out
}

/// The joint trace of a 1-dimensional 2-representation with 2-cocycle `γ`:
/// `γ(g,f) + γ(gf,g*) − γ(g,1) − γ(g,g*)` for commuting `f, g`.
pub fn char2_onedim(gamma: &Cochain, f: usize, g: usize) -> Result<CircleElement> {
    if gamma.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: gamma.arity(),
        });
    }
    let grp = gamma.group();
    grp.check_element(f)?;
    grp.check_element(g)?;
    if !grp.commutes(f, g) {
        return Err(Error::NotCommuting { a: f, b: g });
    }
    let gi = grp.inv(g);
    Ok(gamma.at2(g, f) + gamma.at2(grp.mul(g, f), gi) - gamma.at2(g, 0) - gamma.at2(g, gi))
}

fn check_triple(c: &ThreeCocycle, f: usize, g: usize, k: usize) -> Result<()> {
    let grp = c.group();
    for x in [f, g, k] {
        grp.check_element(x)?;
    }
    if pairwise_commuting(grp, &[f, g, k]) {
        Ok(())
    } else {
        Err(Error::NotPairwiseCommuting { tuple: vec![f, g, k] })
    }
}

/// Closed form `Γ_{k,g} + Γ_{kg,k*} − Γ_{k,1} − Γ_{k,k*}` with `Γ` transgressed at `f`.
pub fn char3_onedim(c: &ThreeCocycle, f: usize, g: usize, k: usize) -> Result<CircleElement> {
    check_triple(c, f, g, k)?;
    let grp = c.group();
    let ki = grp.inv(k);
    let gamma = |a, b| gamma_value(c, f, a, b);
    Ok(gamma(k, g) + gamma(grp.mul(k, g), ki) - gamma(k, 0) - gamma(k, ki))
}

/// The same value computed by transgressing first and then taking the
/// 2-character of `Γ` on `C_G(f)`.
pub fn char3_via_transgression(c: &ThreeCocycle, f: usize, g: usize, k: usize) -> Result<CircleElement> {
    check_triple(c, f, g, k)?;
    let t = transgress_gamma(c, f)?;
    let local = |x: usize| t.centralizer().local_index(x).expect("commutes with f");
    char2_onedim(t.table(), local(g), local(k))
}

/// `χ(f, g, k)` over every commuting triple.
pub fn build_char3_table(c: &ThreeCocycle) -> Result<CharacterTable> {
    CharacterTable::from_fn(c.group(), 3, |t| {
        Ok(CyclotomicValue::root(char3_onedim(c, t[0], t[1], t[2])?))
    })
}

/// Checks invariance under simultaneous conjugation. The witness is the
/// tuple followed by the conjugating element.
pub fn is_n_class_function(table: &CharacterTable) -> Verdict {
    let grp = table.group();
    let mut conj = vec![0; table.arity()];
    for (tuple, value) in table.entries() {
        for s in grp.elements() {
            for (slot, &x) in conj.iter_mut().zip(tuple) {
                *slot = grp.conjugate(x, s);
            }
            if table.get(&conj) != Some(value) {
                let mut witness = tuple.clone();
                witness.push(s);
                return Verdict::Fails(witness);
            }
        }
    }
    Verdict::Holds
}

/// `χ_ind(x) = (1/|H|) Σ_{s ∈ G, s⁻¹xs ∈ Hⁿ} t(s⁻¹xs)` for every commuting
/// n-tuple `x` of G. The table `t` lives on `subgroup.as_group()`.
pub fn induce_character(group: &FiniteGroup, subgroup: &Subgroup, table: &CharacterTable) -> Result<CharacterTable> {
    if subgroup.parent() != group {
        return Err(Error::NotASubgroup {
            element: subgroup.elements().last().copied().unwrap_or(0),
        });
    }
    if table.group() != subgroup.as_group() {
        return Err(Error::NotASubgroup {
            element: table.group().order(),
        });
    }
    table.check_complete()?;
    let scale = Rational64::new(1, subgroup.order() as i64);
    let mut local = vec![0; table.arity()];
    CharacterTable::from_fn(group, table.arity(), |tuple| {
        let mut terms = Vec::new();
        'conjugator: for s in group.elements() {
            for (slot, &x) in local.iter_mut().zip(tuple) {
                match subgroup.local_index(group.conjugate(x, s)) {
                    Some(l) => *slot = l,
                    None => continue 'conjugator,
                }
            }
            let value = table
                .get(&local)
                .ok_or_else(|| Error::IncompleteTable { tuple: local.clone() })?;
            terms.extend(value.terms().iter().map(|&(c, r)| (c * scale, r)));
        }
        Ok(CyclotomicValue::from_terms(terms))
    })
}
