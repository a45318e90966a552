//! Exact cone kernel for unimodular simplicial cones.
//!
//! H-representations come straight from the dual basis of a unimodular cone,
//! ray enumeration uses the double description method in integer
//! (fraction-free) arithmetic, and completeness is decided by the wall
//! criterion.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::{
    reduce_mod_hermite, row_hermite_form, smith_normal_form, spans_unimodular_subspace, IntMatrix, IntVector,
};
use crate::rayset::RaySet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("cone {0} is not generated by part of a lattice basis")]
    NonUnimodularCone(RaySet),
    #[error("constraint cone contains a line")]
    NotPointed,
    #[error("maximal cone {0} is not full-dimensional")]
    NotPure(RaySet),
}

/// A simplicial cone given by indices into a fan's ray list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplicialCone(pub RaySet);

impl SimplicialCone {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        SimplicialCone(RaySet::from_indices(indices))
    }

    pub fn ray_indices(&self) -> RaySet {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn generators(&self, rays: &[IntVector]) -> Vec<IntVector> {
        self.0.iter().map(|i| rays[i].clone()).collect()
    }
}

/// `{x : <e, x> = 0 for e in equalities, <m, x> >= 0 for m in inequalities}`
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfspaceRep {
    pub equalities: Vec<IntVector>,
    pub inequalities: Vec<IntVector>,
}

impl HalfspaceRep {
    /// Constraints of both cones; cuts out the intersection.
    pub fn combine(&self, other: &HalfspaceRep) -> HalfspaceRep {
        HalfspaceRep {
            equalities: self.equalities.iter().chain(&other.equalities).cloned().collect(),
            inequalities: self.inequalities.iter().chain(&other.inequalities).cloned().collect(),
        }
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.equalities.iter().all(|e| e.dot(x).is_zero()) && self.inequalities.iter().all(|m| !m.dot(x).is_negative())
    }
}

/// Exact H-representation of a unimodular simplicial cone.
///
/// The inequalities are the dual basis `m_i` with `<m_i, v_j> = delta_ij`, listed
/// in the order of the cone's ray indices. The equalities are a Hermite basis of
/// the annihilator of the rays, and each `m_i` is reduced modulo that basis so
/// the output is canonical.
pub fn h_representation(cone: &SimplicialCone, rays: &[IntVector], dim: usize) -> Result<HalfspaceRep, GeometryError> {
    let gens = cone.generators(rays);
    if gens.is_empty() {
        return Ok(HalfspaceRep {
            equalities: (0..dim).map(|i| IntVector::unit(dim, i)).collect(),
            inequalities: Vec::new(),
        });
    }
    if !spans_unimodular_subspace(&gens, dim) {
        return Err(GeometryError::NonUnimodularCone(cone.0));
    }
    let k = gens.len();
    let snf = smith_normal_form(&IntMatrix::from_rows(&gens, dim));
    let (left, right) = (&snf.left_transform, &snf.right_transform);

    // left * A * right = [I | 0], so right * diag(left, I) inverts the basis
    // matrix whose first k rows are the generators.
    let dual: Vec<IntVector> = (0..k)
        .map(|j| {
            let mut acc = IntVector::zero(dim);
            for l in 0..k {
                acc = acc.add(&right.col(l).scale(&left[(l, j)]));
            }
            acc
        })
        .collect();
    let annihilator: Vec<IntVector> = (k..dim).map(|j| right.col(j)).collect();

    let equalities = row_hermite_form(&annihilator, dim);
    let inequalities = dual.iter().map(|m| reduce_mod_hermite(m, &equalities)).collect();
    Ok(HalfspaceRep {
        equalities,
        inequalities,
    })
}

enum Constraint<'a> {
    Eq(&'a IntVector),
    Ineq(&'a IntVector),
}

impl Constraint<'_> {
    fn normal(&self) -> &IntVector {
        match self {
            Constraint::Eq(a) | Constraint::Ineq(a) => a,
        }
    }
}

/// `s*x - t*y`, normalized to a primitive vector.
fn combine_primitive(s: &BigInt, x: &IntVector, t: &BigInt, y: &IntVector) -> IntVector {
    x.scale(s).add(&y.scale(&-t)).primitive()
}

/// Primitive generators of the extreme rays of a pointed cone, sorted.
///
/// Incremental double description starting from the whole space (all lines,
/// no rays). Adjacency of ray pairs is decided combinatorially from their
/// zero sets over the constraints processed so far.
pub fn extreme_rays(constraints: &HalfspaceRep, dim: usize) -> Result<Vec<IntVector>, GeometryError> {
    let ordered: Vec<Constraint<'_>> = constraints
        .equalities
        .iter()
        .map(Constraint::Eq)
        .chain(constraints.inequalities.iter().map(Constraint::Ineq))
        .collect();

    let mut lines: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<&IntVector> = Vec::new();

    for c in &ordered {
        let a = c.normal();
        if a.is_zero() {
            continue;
        }
        if let Some(pos) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lines.swap_remove(pos);
            if a.dot(&l).is_negative() {
                l = l.neg();
            }
            let al = a.dot(&l);
            for other in lines.iter_mut() {
                let ao = a.dot(other);
                if !ao.is_zero() {
                    *other = combine_primitive(&al, other, &ao, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = a.dot(r);
                if !ar.is_zero() {
                    *r = combine_primitive(&al, r, &ar, &l);
                }
            }
            if matches!(c, Constraint::Ineq(_)) {
                rays.push(l);
            }
        } else {
            let zero_sets: Vec<Vec<bool>> = rays
                .iter()
                .map(|r| processed.iter().map(|p| p.dot(r).is_zero()).collect())
                .collect();
            let values: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

            let mut next: Vec<IntVector> = Vec::new();
            for i in 0..rays.len() {
                let keep = match c {
                    Constraint::Eq(_) => values[i].is_zero(),
                    Constraint::Ineq(_) => !values[i].is_negative(),
                };
                if keep {
                    next.push(rays[i].clone());
                }
            }
            for &p in &pos {
                for &n in &neg {
                    let common: Vec<bool> = zero_sets[p].iter().zip(&zero_sets[n]).map(|(x, y)| *x && *y).collect();
                    let blocked = (0..rays.len()).any(|r| {
                        r != p && r != n && common.iter().zip(&zero_sets[r]).all(|(need, has)| !*need || *has)
                    });
                    if !blocked {
                        next.push(combine_primitive(&values[p], &rays[n], &values[n], &rays[p]));
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }

    if !lines.is_empty() {
        return Err(GeometryError::NotPointed);
    }
    let unique: BTreeSet<IntVector> = rays.into_iter().map(|r| r.primitive()).collect();
    Ok(unique.into_iter().collect())
}

/// Whether `a ∩ b` is exactly the cone on the shared generating rays.
pub fn intersect_in_common_face(
    a: &SimplicialCone,
    b: &SimplicialCone,
    rays: &[IntVector],
    dim: usize,
) -> Result<bool, GeometryError> {
    let ha = h_representation(a, rays, dim)?;
    let hb = h_representation(b, rays, dim)?;
    let got: BTreeSet<IntVector> = extreme_rays(&ha.combine(&hb), dim)?.into_iter().collect();
    let expected: BTreeSet<IntVector> = a.0.intersection(b.0).iter().map(|i| rays[i].primitive()).collect();
    Ok(got == expected)
}

/// Every `(n-1)`-subset of a maximal cone, with the maximal cones containing it.
pub fn walls(fan: &Fan) -> Result<BTreeMap<RaySet, Vec<usize>>, GeometryError> {
    let n = fan.dim();
    let mut out: BTreeMap<RaySet, Vec<usize>> = BTreeMap::new();
    for (idx, cone) in fan.max_cones().iter().enumerate() {
        if cone.dim() != n {
            return Err(GeometryError::NotPure(cone.0));
        }
        for wall in cone.0.subsets_of_size(n - 1) {
            out.entry(wall).or_default().push(idx);
        }
    }
    Ok(out)
}

/// Pairs of maximal cones sharing a wall.
pub fn wall_adjacent_pairs(fan: &Fan) -> Result<Vec<(usize, usize)>, GeometryError> {
    let mut pairs: Vec<(usize, usize)> = walls(fan)?
        .values()
        .filter(|cs| cs.len() == 2)
        .map(|cs| (cs[0], cs[1]))
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// Support of the fan is all of `R^n`: every wall lies in exactly two maximal
/// cones. Requires a validated fan whose maximal cones are full-dimensional.
pub fn is_complete(fan: &Fan) -> Result<bool, GeometryError> {
    if fan.max_cones().is_empty() {
        return Ok(false);
    }
    Ok(walls(fan)?.values().all(|cs| cs.len() == 2))
}

/// Sum of the given rays.
pub(crate) fn ray_sum(indices: RaySet, rays: &[IntVector], dim: usize) -> IntVector {
    indices.iter().fold(IntVector::zero(dim), |acc, i| acc.add(&rays[i]))
}
