//! Induced actions as monomial matrices over a subgroup H: the wreath
//! homomorphism `g ↦ ρ̂_g`, the block shape of `ρ̂_f`, the centralizer action
//! on trace indices and the inertia skeleton.

use serde::{Deserialize, Serialize};

use crate::circle::{CircleElement, CyclotomicValue};
use crate::error::{Error, Result};
use crate::group::{BlockDecomposition, FiniteGroup, Subgroup};
use crate::Verdict;

/// A left transversal `r_0, …, r_{m−1}` of `G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
    // coset index of every element of G
    coset_of: Vec<usize>,
}

impl Transversal {
    pub fn new(subgroup: &Subgroup, reps: Vec<usize>) -> Result<Self> {
        let group = subgroup.parent();
        let mut coset_of = vec![usize::MAX; group.order()];
        for (i, &r) in reps.iter().enumerate() {
            group.check_element(r)?;
            for &h in subgroup.elements() {
                let x = group.mul(r, h);
                if coset_of[x] != usize::MAX {
                    return Err(Error::NotATransversal {
                        element: r,
                        reason: "two representatives share a coset",
                    });
                }
                coset_of[x] = i;
            }
        }
        if let Some(missing) = coset_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotATransversal {
                element: missing,
                reason: "a coset has no representative",
            });
        }
        Ok(Transversal {
            subgroup: subgroup.clone(),
            reps,
            coset_of,
        })
    }

    /// Minimal element of every coset, in increasing order.
    pub fn canonical(subgroup: &Subgroup) -> Result<Self> {
        Transversal::new(subgroup, subgroup.parent().coset_representatives(subgroup)?)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.subgroup.parent()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `(j, h)` with `x = r_j·h`.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let j = self.coset_of[x];
        let g = self.group();
        (j, g.mul(g.inv(self.reps[j]), x))
    }
}

/// A monomial matrix over H: column `i` has its single nonzero entry in row
/// `pi[i]`, carrying `labels[i]`. Labels are parent-group indices of
/// elements of H.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub pi: Vec<usize>,
    pub labels: Vec<usize>,
}

impl MonomialMatrix {
    pub fn identity(size: usize, unit: usize) -> Self {
        MonomialMatrix {
            pi: (0..size).collect(),
            labels: vec![unit; size],
        }
    }

    pub fn size(&self) -> usize {
        self.pi.len()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.pi[i] == i).collect()
    }

    /// `self · other`: `pi = pi_A ∘ pi_B`, `label(i) = label_A(pi_B(i)) · label_B(i)`.
    pub fn wreath_mul(&self, other: &MonomialMatrix, group: &FiniteGroup) -> Result<MonomialMatrix> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let (pi, labels) = (0..other.size())
            .map(|i| {
                let mid = other.pi[i];
                (self.pi[mid], group.mul(self.labels[mid], other.labels[i]))
            })
            .unzip();
        Ok(MonomialMatrix { pi, labels })
    }

    pub fn inverse(&self, group: &FiniteGroup) -> MonomialMatrix {
        let mut pi = vec![0; self.size()];
        let mut labels = vec![0; self.size()];
        for (i, (&j, &h)) in self.pi.iter().zip(&self.labels).enumerate() {
            pi[j] = i;
            labels[j] = group.inv(h);
        }
        MonomialMatrix { pi, labels }
    }
}

/// `ρ̂_f`: `pi(i) = j` and `labels(i) = h` where `f·r_i = r_j·h`.
pub fn induced_rho(transversal: &Transversal, f: usize) -> Result<MonomialMatrix> {
    let group = transversal.group();
    group.check_element(f)?;
    let (pi, labels) = transversal
        .reps()
        .iter()
        .map(|&r| transversal.locate(group.mul(f, r)))
        .unzip();
    Ok(MonomialMatrix { pi, labels })
}

/// Checks `ρ̂_{g₂}·ρ̂_{g₁} = ρ̂_{g₂g₁}` for every pair; the witness is `[g₂, g₁]`.
pub fn verify_wreath_hom(transversal: &Transversal) -> Result<Verdict> {
    let group = transversal.group();
    let rho: Vec<MonomialMatrix> = group
        .elements()
        .map(|g| induced_rho(transversal, g))
        .collect::<Result<_>>()?;
    for g2 in group.elements() {
        for g1 in group.elements() {
            if rho[g2].wreath_mul(&rho[g1], group)? != rho[group.mul(g2, g1)] {
                return Ok(Verdict::Fails(vec![g2, g1]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The diagonal-type matrix `D` with `ρ̂'_g = D⁻¹·ρ̂_g·D`, where column `i`
/// sends `r'_i` to the `R`-index `j` of its coset and carries `d_i = r_j⁻¹ r'_i`.
pub fn transversal_change(from: &Transversal, to: &Transversal) -> Result<MonomialMatrix> {
    if from.subgroup() != to.subgroup() || from.len() != to.len() {
        return Err(Error::SizeMismatch {
            left: from.len(),
            right: to.len(),
        });
    }
    let (pi, labels) = to.reps().iter().map(|&r| from.locate(r)).unzip();
    Ok(MonomialMatrix { pi, labels })
}

/// `ρ̂_f` over the representatives reordered as `R''` followed by `R_1, …, R_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub decomposition: BlockDecomposition,
    pub transversal: Transversal,
    pub matrix: MonomialMatrix,
}

impl BlockStructure {
    /// Re-verifies the block shape entrywise. The witness is the offending
    /// column index.
    pub fn check(&self) -> Verdict {
        let m2 = self.decomposition.m_double_prime();
        for i in 0..m2 {
            if self.matrix.pi[i] == i || self.matrix.pi[i] >= m2 {
                return Verdict::Fails(vec![i]);
            }
        }
        let mut i = m2;
        for class in &self.decomposition.classes {
            for _ in &class.reps {
                if self.matrix.pi[i] != i || self.matrix.labels[i] != class.h {
                    return Verdict::Fails(vec![i]);
                }
                i += 1;
            }
        }
        if i == self.matrix.size() && self.matrix.fixed_points().len() == self.decomposition.m_prime() {
            Verdict::Holds
        } else {
            Verdict::Fails(vec![i])
        }
    }
}

pub fn block_structure(subgroup: &Subgroup, f: usize) -> Result<BlockStructure> {
    let group = subgroup.parent();
    let decomposition = group.normalize_representatives(subgroup, f)?;
    let transversal = Transversal::new(subgroup, decomposition.ordered_representatives())?;
    let matrix = induced_rho(&transversal, f)?;
    Ok(BlockStructure {
        decomposition,
        transversal,
        matrix,
    })
}

/// One entry of the centralizer action on trace indices: `g·r = r̃·h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceActionEntry {
    pub class: usize,
    pub r: usize,
    pub r_tilde: usize,
    pub h: usize,
}

/// For every `r ∈ R_i`, the `r̃ ∈ R_i` and `h ∈ C_H(h_i)` with `g·r = r̃·h`.
pub fn induced_trace_action(subgroup: &Subgroup, f: usize, g: usize) -> Result<Vec<TraceActionEntry>> {
    let group = subgroup.parent();
    group.check_element(g)?;
    if !group.commutes(f, g) {
        return Err(Error::NotInCentralizer { element: g, base: f });
    }
    let structure = block_structure(subgroup, f)?;
    trace_action_on(&structure, g)
}

fn trace_action_on(structure: &BlockStructure, g: usize) -> Result<Vec<TraceActionEntry>> {
    let group = structure.transversal.group();
    let offset = structure.decomposition.m_double_prime();
    let mut entries = Vec::with_capacity(structure.decomposition.m_prime());
    let mut start = offset;
    for (class, block) in structure.decomposition.classes.iter().enumerate() {
        let range = start..start + block.reps.len();
        for &r in &block.reps {
            let (j, h) = structure.transversal.locate(group.mul(g, r));
            if !range.contains(&j) || !group.commutes(h, block.h) {
                return Err(Error::ClassEscape { rep: r, element: g });
            }
            entries.push(TraceActionEntry {
                class,
                r,
                r_tilde: structure.transversal.reps()[j],
                h,
            });
        }
        start = range.end;
    }
    Ok(entries)
}

/// Recomputes each block's action as the induced action of `r_i⁻¹ g r_i`
/// over the transversal `r_i⁻¹ R_i` of `C_G(h_i)/C_H(h_i)` and compares it
/// with [`induced_trace_action`]. The witness is `[class, r]`.
pub fn two_way_consistency(subgroup: &Subgroup, f: usize, g: usize) -> Result<Verdict> {
    let direct = induced_trace_action(subgroup, f, g)?;
    let group = subgroup.parent();
    let structure = block_structure(subgroup, f)?;
    let mut cursor = direct.iter();
    for (i, block) in structure.decomposition.classes.iter().enumerate() {
        let cg = group.centralizer(block.h);
        let ch = subgroup.centralizer_of(block.h);
        let local = |x: usize| {
            cg.local_index(x).ok_or(Error::ClassEscape {
                rep: block.reps[0],
                element: x,
            })
        };
        let ch_local: Vec<usize> = ch.elements().iter().map(|&x| local(x)).collect::<Result<_>>()?;
        let inner = cg.as_group().subgroup(&ch_local)?;
        let lead = block.reps[0];
        let lead_inv = group.inv(lead);
        let reps: Vec<usize> = block
            .reps
            .iter()
            .map(|&r| local(group.mul(lead_inv, r)))
            .collect::<Result<_>>()?;
        let transversal = Transversal::new(&inner, reps)?;
        let shifted = local(group.product(&[lead_inv, g, lead]))?;
        let rho = induced_rho(&transversal, shifted)?;
        for (k, &r) in block.reps.iter().enumerate() {
            let entry = cursor.next().ok_or(Error::ClassEscape { rep: r, element: g })?;
            let r_tilde = group.mul(lead, cg.parent_index(transversal.reps()[rho.pi[k]]));
            let h = cg.parent_index(rho.labels[k]);
            if entry.r != r || entry.r_tilde != r_tilde || entry.h != h {
                return Ok(Verdict::Fails(vec![i, r]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// One object per conjugacy class together with its centralizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaSkeleton {
    pub objects: Vec<(usize, Subgroup)>,
}

pub fn inertia_skeleton(group: &FiniteGroup) -> InertiaSkeleton {
    let objects = group
        .conjugacy_classes()
        .into_iter()
        .map(|class| {
            let rep = class[0];
            (rep, group.centralizer(rep))
        })
        .collect();
    InertiaSkeleton { objects }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceMultiplicityReport {
    pub f: usize,
    /// `(h_i, m_i)` per class block.
    pub classes: Vec<(usize, usize)>,
    pub m_double_prime: usize,
    pub index: usize,
}

impl TraceMultiplicityReport {
    pub fn balanced(&self) -> bool {
        self.classes.iter().map(|&(_, m)| m).sum::<usize>() + self.m_double_prime == self.index
    }
}

pub fn trace_multiplicity_report(subgroup: &Subgroup, f: usize) -> Result<TraceMultiplicityReport> {
    let decomposition = subgroup.parent().normalize_representatives(subgroup, f)?;
    Ok(TraceMultiplicityReport {
        f,
        classes: decomposition.classes.iter().map(|c| (c.h, c.multiplicity())).collect(),
        m_double_prime: decomposition.m_double_prime(),
        index: subgroup.index(),
    })
}

/// Trace of the induced monomial representation of a 1-dimensional
/// character `lam` of H (indexed by local H indices): the sum of
/// `lam(label i)` over the fixed points of `ρ̂_f`.
pub fn monomial_trace_oracle(transversal: &Transversal, lam: &[CircleElement], f: usize) -> Result<CyclotomicValue> {
    let h = transversal.subgroup();
    let local = h.as_group();
    if lam.len() != local.order() {
        return Err(Error::ArityMismatch {
            expected: local.order(),
            found: lam.len(),
        });
    }
    for a in local.elements() {
        for b in local.elements() {
            if lam[local.mul(a, b)] != lam[a] + lam[b] {
                return Err(Error::NotAHomomorphism { a, b });
            }
        }
    }
    let rho = induced_rho(transversal, f)?;
    let mut total = CyclotomicValue::zero();
    for i in rho.fixed_points() {
        let label = h.local_index(rho.labels[i]).expect("labels lie in H");
        total += &CyclotomicValue::root(lam[label]);
    }
    Ok(total)
}
