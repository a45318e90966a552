//! Smooth simplicial fans: data model, validation, the built-in families and
//! star subdivision.
//!
//! A fan stores its rays and its maximal cones only. Faces are ray subsets of
//! maximal cones, which is exact for simplicial fans.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, ray_sum, SimplicialCone};
use crate::lattice::{spans_unimodular_subspace, IntVector};
use crate::rayset::{RaySet, MAX_RAYS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("malformed fan: {0}")]
    Malformed(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cone {0} is not contained in any maximal cone")]
    NotAFace(RaySet),
    #[error("cone {0} has fewer than two rays")]
    TooSmall(RaySet),
    #[error("new ray {0} already belongs to the fan")]
    RayCollision(IntVector),
    #[error("constructed fan failed validation: {}", .0.summary())]
    Invalid(Box<ValidationReport>),
}

/// A fan of unimodular simplicial cones in `Z^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<SimplicialCone>,
    provenance: Option<String>,
}

impl Fan {
    /// Builds a fan after shape checks only (dimensions and index ranges).
    /// Cones are put in canonical order; call [`validate`] for the fan axioms.
    pub fn new(
        dim: usize,
        rays: Vec<IntVector>,
        max_cones: Vec<Vec<usize>>,
        provenance: Option<String>,
    ) -> Result<Fan, FanError> {
        if dim == 0 {
            return Err(FanError::Malformed("dimension must be positive".into()));
        }
        if rays.len() > MAX_RAYS {
            return Err(FanError::Malformed(format!(
                "{} rays exceed the supported maximum of {MAX_RAYS}",
                rays.len()
            )));
        }
        if let Some((i, r)) = rays.iter().enumerate().find(|(_, r)| r.dim() != dim) {
            return Err(FanError::Malformed(format!(
                "ray {i} has {} coordinates, expected {dim}",
                r.dim()
            )));
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, idx) in max_cones.iter().enumerate() {
            if let Some(&bad) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::Malformed(format!("cone {c} references missing ray {bad}")));
            }
            let set = RaySet::from_indices(idx.iter().copied());
            if set.len() != idx.len() {
                return Err(FanError::Malformed(format!("cone {c} repeats a ray index")));
            }
            cones.push(SimplicialCone(set));
        }
        cones.sort();
        cones.dedup();
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
            provenance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[SimplicialCone] {
        &self.max_cones
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Fan {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn all_rays(&self) -> RaySet {
        RaySet::full(self.rays.len())
    }

    /// True iff the index set spans a cone of the fan.
    pub fn is_face(&self, set: RaySet) -> bool {
        self.max_cones.iter().any(|c| set.is_subset(c.0))
    }

    /// All cones of the fan with exactly `k` rays.
    pub fn faces_of_size(&self, k: usize) -> BTreeSet<RaySet> {
        self.max_cones.iter().flat_map(|c| c.0.subsets_of_size(k)).collect()
    }

    /// Maximal cones containing the given face.
    pub fn star(&self, face: RaySet) -> Vec<SimplicialCone> {
        self.max_cones.iter().copied().filter(|c| face.is_subset(c.0)).collect()
    }

    /// Same rays and cones, ignoring provenance.
    pub fn same_fan(&self, other: &Fan) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FanJson::from(self)).expect("fan serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Fan, FanError> {
        let raw: FanJson = serde_json::from_str(text).map_err(|e| FanError::Malformed(e.to_string()))?;
        raw.try_into()
    }
}

impl FromStr for Fan {
    type Err = FanError;
    fn from_str(s: &str) -> Result<Fan, FanError> {
        Fan::from_json(s)
    }
}

/// Canonical interchange form:
/// `{"dim": n, "rays": [[int,...],...], "max_cones": [[idx,...],...], "provenance": string?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanJson {
    dim: usize,
    rays: Vec<Vec<serde_json::Number>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

impl From<&Fan> for FanJson {
    fn from(f: &Fan) -> Self {
        let num = |x: &BigInt| serde_json::Number::from_str(&x.to_string()).expect("integers are valid JSON numbers");
        FanJson {
            dim: f.dim,
            rays: f.rays.iter().map(|r| r.entries().iter().map(num).collect()).collect(),
            max_cones: f.max_cones.iter().map(|c| c.0.to_vec()).collect(),
            provenance: f.provenance.clone(),
        }
    }
}

impl TryFrom<FanJson> for Fan {
    type Error = FanError;
    fn try_from(raw: FanJson) -> Result<Fan, FanError> {
        let mut rays = Vec::with_capacity(raw.rays.len());
        for (i, r) in raw.rays.iter().enumerate() {
            let mut entries = Vec::with_capacity(r.len());
            for x in r {
                let v = BigInt::from_str(x.as_str())
                    .map_err(|_| FanError::Malformed(format!("ray {i} has non-integer entry {x}")))?;
                entries.push(v);
            }
            rays.push(IntVector::new(entries));
        }
        Fan::new(raw.dim, rays, raw.max_cones, raw.provenance)
    }
}

/// What went wrong in a fan, with the offending ray or cone indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FindingKind {
    NonPrimitiveRay,
    DuplicateRay,
    UnusedRay,
    EmptyCone,
    NonUnimodularCone,
    /// Two maximal cones meet outside their common face.
    BadIntersection,
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    /// Ray indices for ray findings, maximal-cone indices for cone findings.
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_valid_fan: bool,
    pub is_smooth: bool,
    pub is_complete: bool,
    pub failures: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_smooth_complete(&self) -> bool {
        self.is_valid_fan && self.is_smooth && self.is_complete
    }

    pub fn summary(&self) -> String {
        if self.failures.is_empty() {
            return "no failures".into();
        }
        self.failures
            .iter()
            .map(|f| format!("{}{:?}", f.kind, f.indices))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Runs every check and records all findings. Never aborts early.
pub fn validate(fan: &Fan) -> ValidationReport {
    let mut failures = Vec::new();
    let rays = fan.rays();

    for (i, r) in rays.iter().enumerate() {
        if !r.is_primitive() {
            failures.push(Finding {
                kind: FindingKind::NonPrimitiveRay,
                indices: vec![i],
                detail: format!("ray {r} is not primitive"),
            });
        }
    }
    let directions: Vec<IntVector> = rays.iter().map(IntVector::primitive).collect();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            if !directions[i].is_zero() && directions[i] == directions[j] {
                failures.push(Finding {
                    kind: FindingKind::DuplicateRay,
                    indices: vec![i, j],
                    detail: format!("rays {} and {} span the same ray", rays[i], rays[j]),
                });
            }
        }
    }
    let used = fan.max_cones().iter().fold(RaySet::EMPTY, |acc, c| acc.union(c.0));
    for i in fan.all_rays().difference(used).iter() {
        failures.push(Finding {
            kind: FindingKind::UnusedRay,
            indices: vec![i],
            detail: format!("ray {} lies in no maximal cone", rays[i]),
        });
    }

    let mut unimodular = vec![true; fan.max_cones().len()];
    for (c, cone) in fan.max_cones().iter().enumerate() {
        if cone.0.is_empty() {
            unimodular[c] = false;
            failures.push(Finding {
                kind: FindingKind::EmptyCone,
                indices: vec![c],
                detail: "maximal cone has no rays".into(),
            });
        } else if !spans_unimodular_subspace(&cone.generators(rays), fan.dim()) {
            unimodular[c] = false;
            failures.push(Finding {
                kind: FindingKind::NonUnimodularCone,
                indices: vec![c],
                detail: format!("cone {} is not part of a lattice basis", cone.0),
            });
        }
    }
    let is_smooth = rays.iter().all(IntVector::is_primitive) && unimodular.iter().all(|&u| u);

    let cones = fan.max_cones();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            if !(unimodular[a] && unimodular[b]) {
                continue;
            }
            match geometry::intersect_in_common_face(&cones[a], &cones[b], rays, fan.dim()) {
                Ok(true) => {}
                Ok(false) => failures.push(Finding {
                    kind: FindingKind::BadIntersection,
                    indices: vec![a, b],
                    detail: format!("cones {} and {} do not meet in a common face", cones[a].0, cones[b].0),
                }),
                Err(e) => failures.push(Finding {
                    kind: FindingKind::BadIntersection,
                    indices: vec![a, b],
                    detail: e.to_string(),
                }),
            }
        }
    }

    let is_valid_fan = failures.is_empty();
    let pure = cones.iter().all(|c| c.dim() == fan.dim());
    let is_complete = is_valid_fan && pure && geometry::is_complete(fan).unwrap_or(false);
    ValidationReport {
        is_valid_fan,
        is_smooth,
        is_complete,
        failures,
    }
}

fn checked(fan: Fan) -> Result<Fan, FanError> {
    let report = validate(&fan);
    if report.is_valid_fan && report.is_smooth {
        Ok(fan)
    } else {
        Err(FanError::Invalid(Box::new(report)))
    }
}

/// The fan of projective `n`-space: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`,
/// one maximal cone omitting each ray.
pub fn projective_space(n: usize) -> Result<Fan, FanError> {
    if n == 0 {
        return Err(FanError::InvalidParameters("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    rays.push(IntVector::from_i64s(&vec![-1; n]));
    let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    checked(Fan::new(n, rays, cones, Some(format!("P^{n}")))?)
}

/// Smooth complete `d`-dimensional fan with `d + 2` rays, indexed by a
/// non-decreasing list `a_1 <= ... <= a_r` of non-negative integers.
///
/// Rays (in order) are `e_1..e_r`, `-(e_1+..+e_r)`, `e_{r+1}..e_{r+s-1}` and
/// `sum a_i e_i - sum e_{r+j}` with `s = d - r + 1`. Writing `U` for the first
/// `r + 1` rays and `V` for the last `s`, the maximal cones are
/// `U ∪ V - {u, v}`.
pub fn kleinschmidt(d: usize, a: &[u64]) -> Result<Fan, FanError> {
    let r = a.len();
    if r == 0 {
        return Err(FanError::InvalidParameters("need at least one a_i".into()));
    }
    if r + 1 > d {
        return Err(FanError::InvalidParameters(format!(
            "s = d - r + 1 = {} must satisfy 2 <= s <= d",
            (d + 1).saturating_sub(r)
        )));
    }
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(FanError::InvalidParameters("a must be non-decreasing".into()));
    }
    let s = d - r + 1;

    let mut rays: Vec<IntVector> = (0..r).map(|i| IntVector::unit(d, i)).collect();
    let mut neg = IntVector::zero(d);
    for i in 0..r {
        neg = neg.add(&IntVector::unit(d, i).neg());
    }
    rays.push(neg);
    for j in 0..s - 1 {
        rays.push(IntVector::unit(d, r + j));
    }
    let mut last = IntVector::zero(d);
    for (i, &ai) in a.iter().enumerate() {
        last = last.add(&IntVector::unit(d, i).scale(&BigInt::from(ai)));
    }
    for j in 0..s - 1 {
        last = last.add(&IntVector::unit(d, r + j).neg());
    }
    rays.push(last);

    let u: Vec<usize> = (0..=r).collect();
    let v: Vec<usize> = (r + 1..=r + s).collect();
    let mut cones = Vec::new();
    for &du in &u {
        for &dv in &v {
            cones.push((0..d + 2).filter(|&i| i != du && i != dv).collect());
        }
    }
    let list = a.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    checked(Fan::new(
        d,
        rays,
        cones,
        Some(format!("kleinschmidt(d={d}; a={list})")),
    )?)
}

/// The Hirzebruch surface fan: rays `e_1, -e_1, e_2, a e_1 - e_2`.
pub fn hirzebruch(a: u64) -> Result<Fan, FanError> {
    Ok(kleinschmidt(2, &[a])?.with_provenance(format!("hirzebruch({a})")))
}

/// Star subdivision at the cone `sigma`: adds `rho_0 = sum of sigma's rays` and
/// replaces every maximal cone `tau ⊇ sigma` by the cones
/// `(tau - {rho_i}) ∪ {rho_0}`.
pub fn star_subdivision(fan: &Fan, sigma: RaySet) -> Result<Fan, FanError> {
    if sigma.len() < 2 {
        return Err(FanError::TooSmall(sigma));
    }
    if !fan.is_face(sigma) {
        return Err(FanError::NotAFace(sigma));
    }
    let new_ray = ray_sum(sigma, fan.rays(), fan.dim());
    if fan.rays().contains(&new_ray) {
        return Err(FanError::RayCollision(new_ray));
    }
    let new_index = fan.num_rays();
    let mut rays = fan.rays().to_vec();
    rays.push(new_ray);

    let mut cones: Vec<Vec<usize>> = Vec::new();
    for tau in fan.max_cones() {
        if sigma.is_subset(tau.0) {
            for i in sigma.iter() {
                cones.push(tau.0.without(i).with(new_index).to_vec());
            }
        } else {
            cones.push(tau.0.to_vec());
        }
    }
    let trace = format!("{} ; blowup{}", fan.provenance().unwrap_or("fan"), sigma);
    checked(Fan::new(fan.dim(), rays, cones, Some(trace))?)
}
