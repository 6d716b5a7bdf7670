//! Finite partitions of an initial segment of the naturals into intervals.
//!
//! A partitioning prefix is a strictly increasing point sequence
//! `0 = d(0) < d(1) < … < d(N)`; interval `n` is `[d(n), d(n+1))` and the
//! horizon is `d(N)`. Words aligned to the partition have length `d(N)` and
//! decompose into one slice per interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PartitioningPrefix {
    points: Vec<u64>,
}

impl PartitioningPrefix {
    /// Validates a point sequence: non-empty, starting at 0, strictly
    /// increasing.
    pub fn from_points(points: Vec<u64>) -> Result<Self> {
        if points.first() != Some(&0) {
            return Err(Error::InvalidPartition { index: 0 });
        }
        if let Some(index) = (1..points.len()).find(|&i| points[i - 1] >= points[i]) {
            return Err(Error::InvalidPartition { index });
        }
        Ok(PartitioningPrefix { points })
    }

    /// The partition of `[0, n)` into unit intervals.
    pub fn unit(n: usize) -> Self {
        PartitioningPrefix {
            points: (0..=n as u64).collect(),
        }
    }

    /// The number of intervals `N`.
    pub fn num_intervals(&self) -> usize {
        self.points.len() - 1
    }

    /// The last point `d(N)`; aligned words have this length.
    pub fn horizon(&self) -> u64 {
        *self.points.last().unwrap()
    }

    /// The point `d(n)`. Panics if `n` is out of range.
    pub fn point(&self, n: usize) -> u64 {
        self.points[n]
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// The interval `[d(n), d(n+1))`. Panics if `n ≥ N`.
    pub fn interval(&self, n: usize) -> std::ops::Range<u64> {
        self.points[n]..self.points[n + 1]
    }

    pub fn interval_len(&self, n: usize) -> u64 {
        self.points[n + 1] - self.points[n]
    }
}

impl std::fmt::Debug for PartitioningPrefix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PartitioningPrefix{:?}", self.points)
    }
}

impl TryFrom<Vec<u64>> for PartitioningPrefix {
    type Error = Error;

    fn try_from(points: Vec<u64>) -> Result<Self> {
        PartitioningPrefix::from_points(points)
    }
}

impl From<PartitioningPrefix> for Vec<u64> {
    fn from(d: PartitioningPrefix) -> Vec<u64> {
        d.points
    }
}

/// Accumulates positive interval lengths into a partitioning prefix.
pub fn make_partition(deltas: &[u64]) -> Result<PartitioningPrefix> {
    let mut points = Vec::with_capacity(deltas.len() + 1);
    let mut acc: u64 = 0;
    points.push(acc);
    for (index, &delta) in deltas.iter().enumerate() {
        if delta == 0 {
            return Err(Error::ZeroInterval { index });
        }
        acc = acc.checked_add(delta).ok_or(Error::ArithmeticOverflow)?;
        points.push(acc);
    }
    Ok(PartitioningPrefix { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_accumulate_into_points() {
        let d = make_partition(&[4, 2, 3, 5, 1, 3]).unwrap();
        assert_eq!(d.points(), &[0, 4, 6, 9, 14, 15, 18]);
        assert_eq!(d.num_intervals(), 6);
        assert_eq!(d.horizon(), 18);
        assert_eq!(d.interval(3), 9..14);
    }

    #[test]
    fn unit_lengths_give_the_identity_prefix() {
        let d = make_partition(&[1, 1, 1]).unwrap();
        assert_eq!(d.points(), &[0, 1, 2, 3]);
        assert_eq!(d, PartitioningPrefix::unit(3));
    }

    #[test]
    fn zero_lengths_are_rejected() {
        assert_eq!(
            make_partition(&[2, 0, 1]),
            Err(Error::ZeroInterval { index: 1 })
        );
    }

    #[test]
    fn points_must_start_at_zero_and_increase() {
        assert!(PartitioningPrefix::from_points(vec![1, 2]).is_err());
        assert!(PartitioningPrefix::from_points(vec![0, 2, 2]).is_err());
        assert!(PartitioningPrefix::from_points(vec![]).is_err());
        assert!(PartitioningPrefix::from_points(vec![0]).is_ok());
    }

    #[test]
    fn serde_validates_points() {
        assert!(serde_json::from_str::<PartitioningPrefix>("[0,4,6]").is_ok());
        assert!(serde_json::from_str::<PartitioningPrefix>("[4,6]").is_err());
    }
}
