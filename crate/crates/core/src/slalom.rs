//! Slaloms: sequences of finite cell sets with a width discipline, and the
//! capture relation "the sequence eventually goes through the slalom".
//!
//! Plain slaloms hold natural numbers; binary slaloms hold words of the
//! interval lengths of a fixed partition. Capture at threshold `k` means the
//! value at every index from `k` on lies in the corresponding cell.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::PartitioningPrefix;
use crate::word::Word;

/// A width discipline: the maximal admitted cell size per index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WidthFunction {
    /// `n ↦ n`; in particular the cell at index 0 must be empty.
    Identity,
    /// `n ↦ ⌊√n⌋`.
    FloorSqrt,
    /// A constant bound.
    Constant(u64),
    /// `n ↦ n·(n−1)/2`, the number of unordered pairs below `n`.
    Pairs,
    /// Explicit per-index bounds; evaluation past the table fails.
    Table(Vec<u64>),
}

impl WidthFunction {
    pub fn eval(&self, n: u64) -> Result<u64> {
        match self {
            WidthFunction::Identity => Ok(n),
            WidthFunction::FloorSqrt => Ok(n.isqrt()),
            WidthFunction::Constant(c) => Ok(*c),
            WidthFunction::Pairs => {
                let even = n.is_multiple_of(2);
                let half = if even { n / 2 } else { (n - 1) / 2 };
                let other = if even { n.saturating_sub(1) } else { n };
                half.checked_mul(other).ok_or(Error::ArithmeticOverflow)
            }
            WidthFunction::Table(t) => t
                .get(usize::try_from(n).map_err(|_| Error::WidthUnavailable { index: n })?)
                .copied()
                .ok_or(Error::WidthUnavailable { index: n }),
        }
    }
}

/// The result of checking cells against a width discipline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum WidthVerdict {
    Ok,
    /// Cell `index` has `size` elements but only `bound` are admitted.
    TooWide {
        index: usize,
        size: u64,
        bound: u64,
    },
    /// A binary cell holds a word of the wrong length for its interval.
    WrongWordLength {
        index: usize,
        expected: u64,
        found: u64,
    },
}

impl WidthVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, WidthVerdict::Ok)
    }
}

/// A slalom over the naturals: one finite cell per index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slalom {
    pub cells: Vec<BTreeSet<u64>>,
    pub width: WidthFunction,
}

impl Slalom {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Checks every cell against the declared width discipline.
    pub fn check_width(&self) -> Result<WidthVerdict> {
        for (index, cell) in self.cells.iter().enumerate() {
            let bound = self.width.eval(index as u64)?;
            if cell.len() as u64 > bound {
                return Ok(WidthVerdict::TooWide {
                    index,
                    size: cell.len() as u64,
                    bound,
                });
            }
        }
        Ok(WidthVerdict::Ok)
    }

    /// Capture certificate for a plain sequence, if any: the least `k` such
    /// that `f(n) ∈ cells[n]` for all `n ∈ [k, N)`.
    pub fn goes_through_seq(&self, f: &[u64]) -> Result<Option<CaptureCertificate>> {
        if f.len() != self.cells.len() {
            return Err(Error::SeqLength {
                expected: self.cells.len(),
                found: f.len(),
            });
        }
        Ok(capture_threshold(self.cells.len(), |n| {
            self.cells[n].contains(&f[n])
        }))
    }
}

#[derive(Serialize, Deserialize)]
struct RawBinarySlalom {
    partition: PartitioningPrefix,
    cells: Vec<BTreeSet<Word>>,
    width: WidthFunction,
}

/// A slalom whose cells hold words: the cell at index `n` holds candidate
/// slices for interval `n` of the partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBinarySlalom", into = "RawBinarySlalom")]
pub struct BinarySlalom {
    partition: PartitioningPrefix,
    cells: Vec<BTreeSet<Word>>,
    width: WidthFunction,
}

impl BinarySlalom {
    /// Requires exactly one cell per interval of the partition.
    pub fn new(
        partition: PartitioningPrefix,
        cells: Vec<BTreeSet<Word>>,
        width: WidthFunction,
    ) -> Result<Self> {
        if cells.len() != partition.num_intervals() {
            return Err(Error::CellCount {
                expected: partition.num_intervals(),
                found: cells.len(),
            });
        }
        Ok(BinarySlalom {
            partition,
            cells,
            width,
        })
    }

    pub fn partition(&self) -> &PartitioningPrefix {
        &self.partition
    }

    pub fn cells(&self) -> &[BTreeSet<Word>] {
        &self.cells
    }

    pub fn width(&self) -> &WidthFunction {
        &self.width
    }

    pub fn num_intervals(&self) -> usize {
        self.cells.len()
    }

    /// Checks cell sizes against `width` and every member word against its
    /// interval length.
    pub fn check_width_as(&self, width: &WidthFunction) -> Result<WidthVerdict> {
        for (index, cell) in self.cells.iter().enumerate() {
            let expected = self.partition.interval_len(index);
            if let Some(w) = cell.iter().find(|w| w.len() as u64 != expected) {
                return Ok(WidthVerdict::WrongWordLength {
                    index,
                    expected,
                    found: w.len() as u64,
                });
            }
            let bound = width.eval(index as u64)?;
            if cell.len() as u64 > bound {
                return Ok(WidthVerdict::TooWide {
                    index,
                    size: cell.len() as u64,
                    bound,
                });
            }
        }
        Ok(WidthVerdict::Ok)
    }

    /// Checks against the slalom's own declared width.
    pub fn check_width(&self) -> Result<WidthVerdict> {
        self.check_width_as(&self.width.clone())
    }
}

impl TryFrom<RawBinarySlalom> for BinarySlalom {
    type Error = Error;

    fn try_from(raw: RawBinarySlalom) -> Result<Self> {
        BinarySlalom::new(raw.partition, raw.cells, raw.width)
    }
}

impl From<BinarySlalom> for RawBinarySlalom {
    fn from(b: BinarySlalom) -> RawBinarySlalom {
        RawBinarySlalom {
            partition: b.partition,
            cells: b.cells,
            width: b.width,
        }
    }
}

/// Witness that a point or sequence goes through a slalom from `threshold`
/// on, out of `horizon` many indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaptureCertificate {
    pub threshold: usize,
    pub horizon: usize,
}

/// Least capture threshold over `n` indices, or `None` when even the final
/// index misses. With zero indices there is nothing to capture and the
/// outcome is `None`.
fn capture_threshold(n: usize, hit: impl Fn(usize) -> bool) -> Option<CaptureCertificate> {
    let mut threshold = n;
    for k in (0..n).rev() {
        if hit(k) {
            threshold = k;
        } else {
            break;
        }
    }
    if threshold == n {
        None
    } else {
        Some(CaptureCertificate {
            threshold,
            horizon: n,
        })
    }
}

/// Capture certificate for a point against a binary slalom: slices of `x`
/// along the partition must land in the cells from the threshold on.
pub fn goes_through_point(x: &Word, b: &BinarySlalom) -> Result<Option<CaptureCertificate>> {
    if x.len() as u64 != b.partition.horizon() {
        return Err(Error::Misaligned {
            expected: b.partition.horizon(),
            found: x.len() as u64,
        });
    }
    Ok(capture_threshold(b.cells.len(), |n| {
        b.cells[n].contains(&x.restrict(b.partition.interval(n)))
    }))
}

/// Per-point capture outcome for a finite set of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CaptureSetOutcome {
    AllCaptured {
        certificates: BTreeMap<Word, CaptureCertificate>,
    },
    Failures {
        uncaptured: Vec<Word>,
    },
}

/// Tries to capture every point; reports all escapees when any point fails.
pub fn capture_set(points: &BTreeSet<Word>, b: &BinarySlalom) -> Result<CaptureSetOutcome> {
    let mut certificates = BTreeMap::new();
    let mut uncaptured = Vec::new();
    for x in points {
        match goes_through_point(x, b)? {
            Some(cert) => {
                certificates.insert(x.clone(), cert);
            }
            None => uncaptured.push(x.clone()),
        }
    }
    if uncaptured.is_empty() {
        Ok(CaptureSetOutcome::AllCaptured { certificates })
    } else {
        Ok(CaptureSetOutcome::Failures { uncaptured })
    }
}
