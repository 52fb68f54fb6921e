//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..n` and element `0` is always the identity.
//! Groups built from permutations compose right-to-left: `mul(a, b)` applies
//! `b` first, then `a`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Verdict;

/// Default cap on the size of a permutation closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

struct Tables {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

/// A finite group stored as a validated Cayley table. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup(Arc<Tables>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.mul == other.0.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order()).finish()
    }
}

impl FiniteGroup {
    /// Validates a row-major Cayley table with the identity at index 0.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable { row: 0, col: 0 });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::MalformedTable {
                    row,
                    col: entries.len().min(n),
                });
            }
            for (col, &x) in entries.iter().enumerate() {
                if x >= n {
                    return Err(Error::MalformedTable { row, col });
                }
                mul.push(x);
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        for g in 0..n {
            if at(0, g) != g || at(g, 0) != g {
                return Err(Error::NoIdentityAtZero { element: g });
            }
        }
        let inv = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| at(g, h) == 0 && at(h, g) == 0)
                    .ok_or(Error::MissingInverse { element: g })
            })
            .collect::<Result<Vec<usize>>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup(Arc::new(Tables {
            order: n,
            mul,
            inv,
            perms: None,
        })))
    }

    /// Cayley closure of permutation generators, breadth first from the identity.
    pub fn from_permutations(generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        for (i, gen) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = gen.len() == degree
                && gen
                    .iter()
                    .all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(Error::NotAPermutation { generator: i, degree });
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for gen in generators {
                let y: Vec<usize> = elements[x].iter().map(|&p| gen[p]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        let mut inv = vec![0; n];
        for a in &elements {
            for b in &elements {
                let ab: Vec<usize> = b.iter().map(|&p| a[p]).collect();
                mul.push(index[&ab]);
            }
        }
        for (i, a) in elements.iter().enumerate() {
            let mut ai = vec![0; degree];
            for (p, &q) in a.iter().enumerate() {
                ai[q] = p;
            }
            inv[i] = index[&ai];
        }
        Ok(FiniteGroup(Arc::new(Tables {
            order: n,
            mul,
            inv,
            perms: Some(elements),
        })))
    }

    pub fn trivial() -> Self {
        FiniteGroup(Arc::new(Tables {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            perms: None,
        }))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a]
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    /// `s⁻¹ x s`.
    #[inline]
    pub fn conjugate(&self, x: usize, s: usize) -> usize {
        self.mul(self.inv(s), self.mul(x, s))
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.order(),
            })
        }
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.0.mul.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// The permutations behind each element, when the group was built from generators.
    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.0.perms.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a..self.order()).all(|b| self.commutes(a, b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    /// Conjugacy classes, each sorted, ordered by minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for f in self.elements() {
            if seen[f] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|s| self.conjugate(f, s)).collect();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn conjugacy_class_of(&self, f: usize) -> Vec<usize> {
        let class: BTreeSet<usize> = self.elements().map(|s| self.conjugate(f, s)).collect();
        class.into_iter().collect()
    }

    pub fn centralizer(&self, f: usize) -> Subgroup {
        let elements: Vec<usize> = self.elements().filter(|&g| self.commutes(g, f)).collect();
        Subgroup::build(self.clone(), elements)
    }

    /// All pairwise commuting tuples of length `n`, in lexicographic order.
    pub fn commuting_tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        self.extend_commuting(n, &mut current, &mut out);
        out
    }

    fn extend_commuting(&self, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for g in self.elements() {
            if current.iter().all(|&x| self.commutes(x, g)) {
                current.push(g);
                self.extend_commuting(n, current, out);
                current.pop();
            }
        }
    }

    /// Validates a subset of elements as a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        for &x in elements {
            self.check_element(x)?;
        }
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::NotASubgroup { element: 0 });
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(Error::NotASubgroup { element: self.inv(a) });
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotASubgroup {
                        element: self.mul(a, b),
                    });
                }
            }
        }
        Ok(Subgroup::build(self.clone(), set.into_iter().collect()))
    }

    pub fn generated_subgroup(&self, generators: &[usize]) -> Result<Subgroup> {
        for &x in generators {
            self.check_element(x)?;
        }
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(g, x);
                if !members[y] {
                    members[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let elements = self.elements().filter(|&x| members[x]).collect();
        Ok(Subgroup::build(self.clone(), elements))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::build(self.clone(), self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::build(self.clone(), vec![0])
    }

    /// Every subgroup, ordered by size and then by element list.
    ///
    /// Starts from the cyclic subgroups and closes under joins with them,
    /// which reaches every subgroup since each one is generated by its
    /// cyclic subgroups.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Vec<usize>> = self.elements().map(|g| self.generated_elements(&[g])).collect();
        let mut all: BTreeSet<Vec<usize>> = cyclic.clone();
        let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for c in &cyclic {
                    let gens: Vec<usize> = a.iter().chain(c.iter()).copied().collect();
                    let joined = self.generated_elements(&gens);
                    if all.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Vec<usize>> = all.into_iter().collect();
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subgroups
            .into_iter()
            .map(|e| Subgroup::build(self.clone(), e))
            .collect()
    }

    fn generated_elements(&self, generators: &[usize]) -> Vec<usize> {
        self.generated_subgroup(generators)
            .map(|h| h.elements().to_vec())
            .unwrap_or_default()
    }

    pub(crate) fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.parent() == self {
            Ok(())
        } else {
            Err(Error::NotASubgroup {
                element: h.elements().last().copied().unwrap_or(0),
            })
        }
    }

    /// One representative per left coset `gH`, the minimal index in each.
    pub fn coset_representatives(&self, h: &Subgroup) -> Result<Vec<usize>> {
        self.check_subgroup(h)?;
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / h.order());
        for g in self.elements() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h.elements() {
                covered[self.mul(g, x)] = true;
            }
        }
        Ok(reps)
    }

    /// Splits a transversal of G/H by whether `r⁻¹fr` lands in H, groups the
    /// landing representatives by H-conjugacy class, and adjusts each
    /// representative to `r h⁻¹` so that `r⁻¹fr` equals the class
    /// representative exactly.
    pub fn normalize_representatives(&self, h: &Subgroup, f: usize) -> Result<BlockDecomposition> {
        self.check_subgroup(h)?;
        self.check_element(f)?;
        let mut r_double_prime = Vec::new();
        let mut classes: Vec<BlockClass> = Vec::new();
        for r in self.coset_representatives(h)? {
            let x = self.conjugate(f, r);
            if !h.contains(x) {
                r_double_prime.push(r);
                continue;
            }
            // first class whose representative is an H-conjugate h x h⁻¹ of x
            let found = classes.iter().enumerate().find_map(|(i, class)| {
                h.elements()
                    .iter()
                    .find(|&&y| self.mul(y, self.mul(x, self.inv(y))) == class.h)
                    .map(|&y| (i, y))
            });
            match found {
                Some((i, y)) => classes[i].reps.push(self.mul(r, self.inv(y))),
                None => classes.push(BlockClass { h: x, reps: vec![r] }),
            }
        }
        Ok(BlockDecomposition {
            f,
            r_double_prime,
            classes,
            normalized: true,
        })
    }

    /// Checks that left multiplication by `r_i⁻¹` sends each class block
    /// `R_i` onto a transversal of `C_G(h_i)/C_H(h_i)`.
    ///
    /// A failure witness is `[class index, representative]`.
    pub fn verify_transversal_lemma(&self, h: &Subgroup, f: usize) -> Result<Verdict> {
        let decomposition = self.normalize_representatives(h, f)?;
        for (i, class) in decomposition.classes.iter().enumerate() {
            let cg = self.centralizer(class.h);
            let ch = h.centralizer_of(class.h);
            let lead_inv = self.inv(class.reps[0]);
            let mut cosets = BTreeSet::new();
            for &r in &class.reps {
                let t = self.mul(lead_inv, r);
                if !cg.contains(t) {
                    return Ok(Verdict::Fails(vec![i, r]));
                }
                let key = ch.elements().iter().map(|&c| self.mul(t, c)).min().unwrap_or(t);
                if !cosets.insert(key) {
                    return Ok(Verdict::Fails(vec![i, r]));
                }
            }
            if cosets.len() * ch.order() != cg.order() {
                return Ok(Verdict::Fails(vec![i, class.reps[0]]));
            }
        }
        Ok(Verdict::Holds)
    }

    /// Checks `map(ab) = map(a) map(b)` for a map into `target`.
    pub fn check_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> Result<()> {
        if map.len() != self.order() {
            return Err(Error::ArityMismatch {
                expected: self.order(),
                found: map.len(),
            });
        }
        for &x in map {
            target.check_element(x)?;
        }
        for a in self.elements() {
            for b in self.elements() {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// A validated subgroup together with its own Cayley table in local indices.
///
/// Local index `i` is the `i`-th smallest parent element, so the identity is
/// local index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
    local: Vec<Option<usize>>,
    group: FiniteGroup,
}

impl Subgroup {
    fn build(parent: FiniteGroup, elements: Vec<usize>) -> Self {
        let mut local = vec![None; parent.order()];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = Some(i);
        }
        let k = elements.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &elements {
            for &b in &elements {
                mul.push(local[parent.mul(a, b)].expect("subgroup closed under products"));
            }
        }
        let inv = elements
            .iter()
            .map(|&a| local[parent.inv(a)].expect("subgroup closed under inverses"))
            .collect();
        let group = FiniteGroup(Arc::new(Tables {
            order: k,
            mul,
            inv,
            perms: None,
        }));
        Subgroup {
            parent,
            elements,
            local,
            group,
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    /// Sorted parent indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.local.get(x).is_some_and(Option::is_some)
    }

    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.local.get(x).copied().flatten()
    }

    pub fn parent_index(&self, local: usize) -> usize {
        self.elements[local]
    }

    /// The subgroup as a standalone group on local indices.
    pub fn as_group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `C_H(x)` as a subgroup of the parent.
    pub fn centralizer_of(&self, x: usize) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&h| self.parent.commutes(h, x))
            .collect();
        Subgroup::build(self.parent.clone(), elements)
    }

    /// The inclusion as a homomorphism from local indices to parent indices.
    pub fn inclusion(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Re-expresses `self ⊆ ambient` as a subgroup of `ambient.as_group()`.
    pub fn within(&self, ambient: &Subgroup) -> Result<Subgroup> {
        let local: Vec<usize> = self
            .elements
            .iter()
            .map(|&x| ambient.local_index(x).ok_or(Error::NotASubgroup { element: x }))
            .collect::<Result<_>>()?;
        ambient.as_group().subgroup(&local)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockClass {
    /// `h_i`, a parent index lying in H.
    pub h: usize,
    /// `R_i`, normalized so that `r⁻¹fr = h_i` for each entry.
    pub reps: Vec<usize>,
}

impl BlockClass {
    pub fn multiplicity(&self) -> usize {
        self.reps.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub f: usize,
    pub r_double_prime: Vec<usize>,
    pub classes: Vec<BlockClass>,
    pub normalized: bool,
}

impl BlockDecomposition {
    /// Representatives ordered as `R''` followed by `R_1, …, R_n`.
    pub fn ordered_representatives(&self) -> Vec<usize> {
        self.r_double_prime
            .iter()
            .chain(self.classes.iter().flat_map(|c| c.reps.iter()))
            .copied()
            .collect()
    }

    pub fn m_prime(&self) -> usize {
        self.classes.iter().map(BlockClass::multiplicity).sum()
    }

    pub fn m_double_prime(&self) -> usize {
        self.r_double_prime.len()
    }
}
