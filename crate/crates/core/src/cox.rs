//! The Cox quotient presentation of a smooth complete toric variety.
//!
//! The irrelevant ideal is generated by the cone-complement monomials, one
//! per maximal cone. Its zero locus is a union of coordinate subspaces whose
//! components correspond to the minimal non-faces of the fan. Two independent
//! routes compute that arrangement: subset enumeration over the fan's faces
//! and the DeMorgan expansion of the ideal's generators.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::{smith_normal_form, IntMatrix, IntVector};
use crate::rayset::{minimal_sets, RaySet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error("Picard group has torsion {0:?}; the fan is not smooth and complete")]
    TorsionDetected(Vec<BigInt>),
}

/// Squarefree monomial ideal, each generator given by its support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub ambient: usize,
    /// Antichain under inclusion, canonical order.
    pub generators: Vec<RaySet>,
}

impl MonomialIdeal {
    pub fn new(ambient: usize, generators: Vec<RaySet>) -> Self {
        MonomialIdeal {
            ambient,
            generators: minimal_sets(generators),
        }
    }

    /// The unit ideal: some generator is the empty monomial `1`.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_empty())
    }
}

/// Union of coordinate subspaces `{x_i = 0 : i in S}` in `A^ambient`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceArrangement {
    pub ambient: usize,
    /// Pairwise incomparable, canonical order. Codimension of `S` is `|S|`.
    pub components: Vec<RaySet>,
}

impl SubspaceArrangement {
    pub fn new(ambient: usize, components: Vec<RaySet>) -> Self {
        SubspaceArrangement {
            ambient,
            components: minimal_sets(components),
        }
    }

    /// Codimension of the arrangement; `None` when it is empty (infinite codimension).
    pub fn codim(&self) -> Option<usize> {
        self.components.iter().map(|c| c.len()).min()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components_of_size(&self, k: usize) -> Vec<RaySet> {
        self.components.iter().copied().filter(|c| c.len() == k).collect()
    }

    /// All components have the same codimension.
    pub fn is_equicodimensional(&self) -> bool {
        match self.codim() {
            Some(d) => self.components.iter().all(|c| c.len() == d),
            None => true,
        }
    }
}

/// One generator per maximal cone: the rays outside the cone.
pub fn irrelevant_ideal(fan: &Fan) -> MonomialIdeal {
    let all = fan.all_rays();
    MonomialIdeal::new(
        fan.num_rays(),
        fan.max_cones().iter().map(|c| all.difference(c.0)).collect(),
    )
}

/// Inclusion-minimal ray sets of size at most `up_to` that lie in no cone.
///
/// Level-by-level enumeration: a candidate of size `k` is a `(k-1)`-face
/// extended by a larger ray index, kept only if all of its `(k-1)`-subsets
/// are faces and it is not a face itself.
pub fn minimal_nonfaces(fan: &Fan, up_to: usize) -> Vec<RaySet> {
    let n = fan.num_rays();
    let mut out = Vec::new();
    let mut prev_faces = fan.faces_of_size(0);
    for k in 1..=up_to {
        if prev_faces.is_empty() {
            break;
        }
        let faces = fan.faces_of_size(k);
        for base in &prev_faces {
            let start = base.max_index().map_or(0, |m| m + 1);
            for j in start..n {
                let cand = base.with(j);
                if faces.contains(&cand) {
                    continue;
                }
                if cand.iter().all(|i| prev_faces.contains(&cand.without(i))) {
                    out.push(cand);
                }
            }
        }
        prev_faces = faces;
    }
    out.sort();
    out
}

/// `Z_Σ` as the arrangement of all minimal non-faces.
pub fn arrangement(fan: &Fan) -> SubspaceArrangement {
    SubspaceArrangement::new(fan.num_rays(), minimal_nonfaces(fan, fan.num_rays()))
}

/// Zero locus of a squarefree monomial ideal by DeMorgan expansion.
///
/// Choosing one vanishing variable from each generator gives the support of a
/// coordinate subspace in the locus; the components are the minimal such
/// supports. Supersets are absorbed after every generator so the expansion
/// stays small.
pub fn arrangement_bruteforce(ideal: &MonomialIdeal) -> SubspaceArrangement {
    let mut partial: Vec<RaySet> = vec![RaySet::EMPTY];
    for &g in &ideal.generators {
        let mut next = Vec::new();
        for &p in &partial {
            if p.intersects(g) {
                next.push(p);
            } else {
                next.extend(g.iter().map(|x| p.with(x)));
            }
        }
        partial = minimal_sets(next);
    }
    SubspaceArrangement::new(ideal.ambient, partial)
}

/// Both forms of the pairwise-intersection condition on the size-`d`
/// components of an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseCheck {
    /// Every two components share at most `d - 2` indices.
    pub pair_form: bool,
    /// Every `(d-1)`-set avoiding all components extends to at most one
    /// size-`d` component.
    pub completion_form: bool,
}

pub fn pairwise_check(arr: &SubspaceArrangement, d: usize) -> PairwiseCheck {
    let comps = arr.components_of_size(d);
    let mut pair_form = true;
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            if a.intersection(*b).len() + 2 > d {
                pair_form = false;
            }
        }
    }

    let mut completion_form = true;
    let mut seen = std::collections::BTreeSet::new();
    for c in &comps {
        for t in c.subsets_of_size(d.saturating_sub(1)) {
            if !seen.insert(t) || arr.components.iter().any(|s| s.is_subset(t)) {
                continue;
            }
            let completions = comps.iter().filter(|s| t.is_subset(**s)).count();
            if completions > 1 {
                completion_form = false;
            }
        }
    }
    PairwiseCheck {
        pair_form,
        completion_form,
    }
}

/// Pairwise codimension condition on the size-`d` components.
///
/// # Panics
/// If the pair form and the completion form disagree, which would mean the
/// arrangement is not the minimal-non-face arrangement it claims to be.
pub fn pairwise_intersection_ok(arr: &SubspaceArrangement, d: usize) -> bool {
    let check = pairwise_check(arr, d);
    assert_eq!(
        check.pair_form, check.completion_form,
        "pair and completion predicates disagree at d = {d}"
    );
    check.pair_form
}

/// The completion predicate read directly off the fan: every `(d-1)`-face has
/// at most one extra ray that turns it into a non-face.
pub fn completion_predicate(fan: &Fan, d: usize) -> bool {
    if d == 0 {
        return true;
    }
    fan.faces_of_size(d - 1).iter().all(|&t| {
        (0..fan.num_rays())
            .filter(|&rho| !t.contains(rho) && !fan.is_face(t.with(rho)))
            .count()
            <= 1
    })
}

/// Every `k`-subset of rays lies in some cone.
pub fn all_subsets_are_faces(fan: &Fan, k: usize) -> bool {
    fan.all_rays().subsets_of_size(k).into_iter().all(|s| fan.is_face(s))
}

/// `Pic(X_Σ)` as the cokernel of `Z^n -> Z^{Σ(1)}, m -> (<m, rho>)_rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardGroup {
    pub rank: usize,
    pub torsion_factors: Vec<BigInt>,
    /// Sends a divisor vector `(a_rho)` to its class in the Smith basis of the cokernel.
    pub class_map: IntMatrix,
}

impl PicardGroup {
    pub fn class_of(&self, divisor: &IntVector) -> IntVector {
        self.class_map.mul_vec(divisor)
    }
}

pub fn picard_group(fan: &Fan) -> Result<PicardGroup, CoxError> {
    let m = fan.num_rays();
    let ray_matrix = IntMatrix::from_rows(fan.rays(), fan.dim());
    let snf = smith_normal_form(&ray_matrix);
    let units = snf.invariant_factors.iter().filter(|d| d.is_one()).count();
    let torsion: Vec<BigInt> = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    if !torsion.is_empty() {
        return Err(CoxError::TorsionDetected(torsion));
    }
    let rank = m - snf.rank();
    let rows: Vec<IntVector> = (units..m).map(|i| snf.left_transform.row(i)).collect();
    Ok(PicardGroup {
        rank,
        torsion_factors: torsion,
        class_map: IntMatrix::from_rows(&rows, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{hirzebruch, projective_space, star_subdivision};

    fn sets(v: &[&[usize]]) -> Vec<RaySet> {
        v.iter().map(|s| RaySet::from_indices(s.iter().copied())).collect()
    }

    #[test]
    fn p2_ideal() {
        let p2 = projective_space(2).unwrap();
        let i = irrelevant_ideal(&p2);
        assert_eq!(i.generators, sets(&[&[0], &[1], &[2]]));
        assert_eq!(arrangement(&p2).components, sets(&[&[0, 1, 2]]));
        assert_eq!(arrangement_bruteforce(&i).components, sets(&[&[0, 1, 2]]));
    }

    #[test]
    fn hirzebruch_ideal() {
        let h = hirzebruch(1).unwrap();
        let i = irrelevant_ideal(&h);
        assert_eq!(i.generators, sets(&[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]));
        let arr = arrangement(&h);
        assert_eq!(arr.components, sets(&[&[0, 1], &[2, 3]]));
        assert_eq!(arr.codim(), Some(2));
        assert!(pairwise_intersection_ok(&arr, 2));
    }

    #[test]
    fn affine_chart_has_unit_ideal() {
        let f = Fan::new(
            2,
            vec![IntVector::from_i64s(&[1, 0]), IntVector::from_i64s(&[0, 1])],
            vec![vec![0, 1]],
            None,
        )
        .unwrap();
        let i = irrelevant_ideal(&f);
        assert_eq!(i.generators, vec![RaySet::EMPTY]);
        assert!(i.is_unit());
        assert!(arrangement_bruteforce(&i).is_empty());
        assert!(arrangement(&f).is_empty());
        assert_eq!(arrangement(&f).codim(), None);
    }

    #[test]
    fn demorgan_examples() {
        let i = MonomialIdeal::new(3, sets(&[&[0, 1], &[0, 2]]));
        assert_eq!(arrangement_bruteforce(&i).components, sets(&[&[0], &[1, 2]]));
        let j = MonomialIdeal::new(2, sets(&[&[0], &[1]]));
        assert_eq!(arrangement_bruteforce(&j).components, sets(&[&[0, 1]]));
    }

    #[test]
    fn pairwise_examples() {
        let bad = SubspaceArrangement::new(3, sets(&[&[0, 1], &[1, 2]]));
        assert!(!pairwise_intersection_ok(&bad, 2));
        let single = SubspaceArrangement::new(4, sets(&[&[0, 1, 2, 3]]));
        assert!(pairwise_intersection_ok(&single, 4));
    }

    #[test]
    fn blowup_of_pn_has_one_pair() {
        for n in 3..=5 {
            let pn = projective_space(n).unwrap();
            let b = star_subdivision(&pn, RaySet::full(n)).unwrap();
            assert_eq!(minimal_nonfaces(&b, 2), sets(&[&[n, n + 1]]));
        }
    }

    #[test]
    fn minimal_nonfaces_of_pn() {
        for n in 1..=5 {
            let pn = projective_space(n).unwrap();
            assert_eq!(minimal_nonfaces(&pn, n + 1), vec![RaySet::full(n + 1)]);
            assert!(minimal_nonfaces(&pn, n).is_empty());
        }
    }

    #[test]
    fn picard_examples() {
        assert_eq!(picard_group(&projective_space(2).unwrap()).unwrap().rank, 1);
        assert_eq!(picard_group(&hirzebruch(3).unwrap()).unwrap().rank, 2);
    }

    #[test]
    fn class_map_kills_principal_divisors() {
        let h = hirzebruch(2).unwrap();
        let pic = picard_group(&h).unwrap();
        assert_eq!(pic.class_map.rows(), 2);
        for j in 0..2 {
            let m = IntVector::unit(2, j);
            let principal = IntVector::new(h.rays().iter().map(|r| r.dot(&m)).collect());
            assert!(pic.class_of(&principal).is_zero());
        }
    }

    #[test]
    fn torsion_detected() {
        let f = Fan::new(
            1,
            vec![IntVector::from_i64s(&[2]), IntVector::from_i64s(&[-2])],
            vec![vec![0], vec![1]],
            None,
        )
        .unwrap();
        assert!(matches!(picard_group(&f), Err(CoxError::TorsionDetected(_))));
    }
}
