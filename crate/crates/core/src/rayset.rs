//! Bitset of ray indices, used for cones, monomial supports and non-faces.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest number of rays a fan may carry.
pub const MAX_RAYS: usize = 128;

/// A set of ray indices `< MAX_RAYS`.
///
/// Ordered canonically: first by cardinality, then lexicographically by the
/// sorted index list.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RaySet(u128);

impl RaySet {
    pub const EMPTY: RaySet = RaySet(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = RaySet::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// `{0, 1, ..., n-1}`
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_RAYS);
        if n == MAX_RAYS {
            RaySet(u128::MAX)
        } else {
            RaySet((1u128 << n) - 1)
        }
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_RAYS, "ray index {i} exceeds the supported maximum");
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_RAYS {
            self.0 &= !(1u128 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RAYS && self.0 & (1u128 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RaySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: RaySet) -> RaySet {
        RaySet(self.0 | other.0)
    }

    pub fn intersection(self, other: RaySet) -> RaySet {
        RaySet(self.0 & other.0)
    }

    pub fn difference(self, other: RaySet) -> RaySet {
        RaySet(self.0 & !other.0)
    }

    pub fn intersects(self, other: RaySet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` with exactly `k` elements.
    pub fn subsets_of_size(self, k: usize) -> Vec<RaySet> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        fn rec(elems: &[usize], start: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<RaySet>) {
            if pick.len() == k {
                out.push(RaySet::from_indices(pick.iter().copied()));
                return;
            }
            for i in start..elems.len() {
                if elems.len() - i < k - pick.len() {
                    break;
                }
                pick.push(elems[i]);
                rec(elems, i + 1, k, pick, out);
                pick.pop();
            }
        }
        if k <= elems.len() {
            rec(&elems, 0, k, &mut pick, &mut out);
        }
        out
    }
}

impl Ord for RaySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for RaySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for RaySet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RaySet::from_indices(iter)
    }
}

impl fmt::Debug for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for RaySet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RaySet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= MAX_RAYS) {
            return Err(serde::de::Error::custom(format!(
                "ray index {bad} exceeds the supported maximum of {}",
                MAX_RAYS - 1
            )));
        }
        Ok(RaySet::from_indices(v))
    }
}

/// Keeps only the inclusion-minimal sets, returned in canonical order.
pub fn minimal_sets(mut sets: Vec<RaySet>) -> Vec<RaySet> {
    sets.sort();
    sets.dedup();
    let mut kept: Vec<RaySet> = Vec::with_capacity(sets.len());
    // Canonical order lists smaller sets first, so a superset never precedes
    // one of its subsets.
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}
