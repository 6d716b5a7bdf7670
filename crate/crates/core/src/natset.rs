//! Sorted finite sets of naturals and thresholded almost-containment.
//!
//! "Almost contained" is relative to a finite horizon: `a` is contained in
//! `b` from a threshold `k` when every element of `a` in `[k, horizon)`
//! belongs to `b`. The least such `k` is a certificate that can be carried
//! around and combined; a certificate that only exists vacuously (the whole
//! suffix is empty because `k` reached the horizon) counts as a failure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of naturals, stored strictly increasing.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct NatSet {
    elems: Vec<u64>,
}

impl NatSet {
    pub fn new() -> Self {
        NatSet::default()
    }

    /// Builds a set from arbitrary elements, sorting and deduplicating.
    pub fn from_elements(elems: impl IntoIterator<Item = u64>) -> Self {
        let mut elems: Vec<u64> = elems.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        NatSet { elems }
    }

    pub fn singleton(n: u64) -> Self {
        NatSet { elems: vec![n] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elems.iter().copied()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    /// `|self ∩ [0, bound)|`.
    pub fn count_below(&self, bound: u64) -> u64 {
        self.elems.partition_point(|&e| e < bound) as u64
    }

    pub fn max_element(&self) -> Option<u64> {
        self.elems.last().copied()
    }

    pub fn insert(&mut self, n: u64) {
        if let Err(at) = self.elems.binary_search(&n) {
            self.elems.insert(at, n);
        }
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        NatSet::from_elements(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &NatSet) -> NatSet {
        NatSet {
            elems: self.iter().filter(|&e| !other.contains(e)).collect(),
        }
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint(&self, other: &NatSet) -> bool {
        self.iter().all(|e| !other.contains(e))
    }

    /// The elements `≥ bound`.
    pub fn at_least(&self, bound: u64) -> NatSet {
        NatSet {
            elems: self.iter().filter(|&e| e >= bound).collect(),
        }
    }

    /// Every element moved up by `n`.
    pub fn shift(&self, n: u64) -> Result<NatSet> {
        let elems = self
            .iter()
            .map(|e| e.checked_add(n).ok_or(Error::ArithmeticOverflow))
            .collect::<Result<Vec<u64>>>()?;
        Ok(NatSet { elems })
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

impl TryFrom<Vec<u64>> for NatSet {
    type Error = Error;

    fn try_from(elems: Vec<u64>) -> Result<Self> {
        if let Some(index) = (1..elems.len()).find(|&i| elems[i - 1] >= elems[i]) {
            return Err(Error::NotIncreasing { index });
        }
        Ok(NatSet { elems })
    }
}

impl From<NatSet> for Vec<u64> {
    fn from(set: NatSet) -> Vec<u64> {
        set.elems
    }
}

impl FromIterator<u64> for NatSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        NatSet::from_elements(iter)
    }
}

/// `{ e + n : e ∈ a }`.
pub fn shift_set(a: &NatSet, n: u64) -> Result<NatSet> {
    a.shift(n)
}

/// Evidence that `a ∩ [threshold, horizon) ⊆ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventualCertificate {
    pub threshold: u64,
    pub horizon: u64,
}

/// Outcome of [`eventually_subset`]: the least-threshold certificate when a
/// non-vacuous one exists, plus the count of elements that had to be waived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub certificate: Option<EventualCertificate>,
    /// `|a \ b|`.
    pub excess: u64,
}

/// Least `k` with `a ∩ [k, horizon) ⊆ b`, together with `|a \ b|`.
///
/// All elements must lie below the horizon. When the excess is non-empty and
/// only `k = horizon` would do, the suffix being certified is empty; that is
/// reported as a missing certificate rather than a vacuous one.
pub fn eventually_subset(a: &NatSet, b: &NatSet, horizon: u64) -> Result<SubsetReport> {
    for set in [a, b] {
        if let Some(element) = set.iter().find(|&e| e >= horizon) {
            return Err(Error::AboveHorizon { element, horizon });
        }
    }
    let stray = a.difference(b);
    let threshold = stray.max_element().map_or(0, |m| m + 1);
    let excess = stray.len() as u64;
    let certificate = if !stray.is_empty() && threshold == horizon {
        None
    } else {
        Some(EventualCertificate { threshold, horizon })
    };
    Ok(SubsetReport {
        certificate,
        excess,
    })
}
