//! Witness pipelines over families of sequences: domination and clipping,
//! encoding a dominated family as interval words, pulling slalom capture
//! back through the encoding, catalogs of capturing slaloms indexed by
//! dominators, and the counting arithmetic of unions of rapid witnesses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::codec::{binary_to_slalom, decode_seq, encode_point};
use crate::error::{Error, Result};
use crate::natset::NatSet;
use crate::partition::{make_partition, PartitioningPrefix};
use crate::rapidity::{check_rapidity_witness, ensure_strictly_increasing, RapidityReport};
use crate::slalom::{
    capture_set, BinarySlalom, CaptureCertificate, CaptureSetOutcome, Slalom, WidthFunction,
};
use crate::word::Word;

/// A finite set of equal-length sequences of naturals, kept sorted and
/// deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct FamilyOfSeqs {
    seqs: Vec<Vec<u64>>,
}

impl FamilyOfSeqs {
    pub fn new(seqs: impl IntoIterator<Item = Vec<u64>>) -> Result<Self> {
        let mut seqs: Vec<Vec<u64>> = seqs.into_iter().collect();
        if let Some(expected) = seqs.first().map(Vec::len) {
            if let Some(found) = seqs.iter().map(Vec::len).find(|&l| l != expected) {
                return Err(Error::SeqLength { expected, found });
            }
        }
        seqs.sort();
        seqs.dedup();
        Ok(FamilyOfSeqs { seqs })
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    /// The common length of the member sequences; `None` for an empty family.
    pub fn seq_len(&self) -> Option<usize> {
        self.seqs.first().map(Vec::len)
    }

    pub fn seqs(&self) -> &[Vec<u64>] {
        &self.seqs
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> {
        self.seqs.iter().map(Vec::as_slice)
    }
}

impl TryFrom<Vec<Vec<u64>>> for FamilyOfSeqs {
    type Error = Error;

    fn try_from(seqs: Vec<Vec<u64>>) -> Result<Self> {
        FamilyOfSeqs::new(seqs)
    }
}

impl From<FamilyOfSeqs> for Vec<Vec<u64>> {
    fn from(f: FamilyOfSeqs) -> Self {
        f.seqs
    }
}

/// The partition whose interval lengths are the entries of `d`: points are
/// the prefix sums of `d`. Every entry must be positive.
pub fn partreal(d: &[u64]) -> Result<PartitioningPrefix> {
    make_partition(d)
}

/// A sequence clipped under a bound, with the index from which it agrees
/// with the original.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClipReport {
    pub clipped: Vec<u64>,
    pub threshold: usize,
}

/// Replaces `f` by a pointwise-bounded sequence that eventually agrees with
/// it: entries from the agreement threshold on are kept verbatim, earlier
/// entries above the bound become 0. The threshold is the least index from
/// which `f` stays at or below `d`; if `f` exceeds `d` at the last index no
/// such index exists.
pub fn clip_to_bound(f: &[u64], d: &[u64]) -> Result<ClipReport> {
    if f.len() != d.len() {
        return Err(Error::SeqLength {
            expected: d.len(),
            found: f.len(),
        });
    }
    let threshold = match (0..f.len()).rev().find(|&n| f[n] > d[n]) {
        Some(n) if n + 1 == f.len() => return Err(Error::NotDominated { index: n }),
        Some(n) => n + 1,
        None => 0,
    };
    let clipped = f
        .iter()
        .zip(d)
        .map(|(&fv, &dv)| if fv > dv { 0 } else { fv })
        .collect();
    Ok(ClipReport { clipped, threshold })
}

/// The pointwise maximum of the family plus one: the least sequence that
/// strictly dominates every member everywhere (and is therefore positive,
/// as a partition's interval lengths must be).
pub fn dominate_family(family: &FamilyOfSeqs) -> Result<Vec<u64>> {
    let Some(len) = family.seq_len() else {
        return Err(Error::EmptyFamily);
    };
    (0..len)
        .map(|n| {
            let max = family.iter().map(|f| f[n]).max().expect("non-empty");
            max.checked_add(1).ok_or(Error::ArithmeticOverflow)
        })
        .collect()
}

/// A family rendered as points of one horizon: the dominator, its
/// partition, each member's clip report, and the decoded word of each
/// clipped member (in family order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedFamily {
    pub dominator: Vec<u64>,
    pub partition: PartitioningPrefix,
    pub clipped: Vec<ClipReport>,
    pub points: Vec<Word>,
}

/// Encodes every member of the family as a word over the dominator's
/// partition. The dominator strictly exceeds each member pointwise, so
/// clipping never changes anything (all thresholds are 0) and each entry
/// fits its interval, making the decoding injective: distinct members give
/// distinct points. Both facts are re-verified.
pub fn encode_family(family: &FamilyOfSeqs) -> Result<EncodedFamily> {
    let dominator = dominate_family(family)?;
    let partition = partreal(&dominator)?;
    let mut clipped = Vec::with_capacity(family.len());
    let mut points = Vec::with_capacity(family.len());
    for f in family.iter() {
        let report = clip_to_bound(f, &dominator)?;
        if report.threshold != 0 || report.clipped != f {
            return Err(Error::SelfCheckFailed {
                what: "a strictly dominated sequence was changed by clipping",
            });
        }
        points.push(decode_seq(&report.clipped, &partition)?);
        clipped.push(report);
    }
    let distinct: BTreeSet<&Word> = points.iter().collect();
    if distinct.len() != family.len() {
        return Err(Error::SelfCheckFailed {
            what: "encoding collapsed two family members onto one point",
        });
    }
    Ok(EncodedFamily {
        dominator,
        partition,
        clipped,
        points,
    })
}

/// Capture of a family pulled back through its encoding: per member, the
/// combined certificate (clip threshold joined with capture threshold) or
/// `None` where the slalom misses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullCaptureReport {
    pub encoded: EncodedFamily,
    pub certificates: Vec<Option<CaptureCertificate>>,
}

impl PullCaptureReport {
    pub fn all_captured(&self) -> bool {
        self.certificates.iter().all(Option::is_some)
    }

    /// Indices of family members the slalom misses.
    pub fn uncaptured(&self) -> Vec<usize> {
        self.certificates
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.is_none().then_some(i))
            .collect()
    }
}

/// Certifies capture of each original family member by a slalom that
/// captures the clipped sequences: the member agrees with its clipped form
/// from the clip threshold and lies in the slalom's cells from the capture
/// threshold, so it lies in the cells from the larger of the two. Each
/// point is first checked to encode back to its clipped sequence.
pub fn pull_capture_through_encoding(
    family: &FamilyOfSeqs,
    slalom: &Slalom,
) -> Result<PullCaptureReport> {
    let encoded = encode_family(family)?;
    let mut certificates = Vec::with_capacity(family.len());
    for (report, point) in encoded.clipped.iter().zip(&encoded.points) {
        if encode_point(point, &encoded.partition)? != report.clipped {
            return Err(Error::SelfCheckFailed {
                what: "an encoded point does not decode back to its sequence",
            });
        }
        let combined =
            slalom
                .goes_through_seq(&report.clipped)?
                .map(|capture| CaptureCertificate {
                    threshold: capture.threshold.max(report.threshold),
                    horizon: capture.horizon,
                });
        certificates.push(combined);
    }
    Ok(PullCaptureReport {
        encoded,
        certificates,
    })
}

/// One catalog entry: a point set over some dominator's partition together
/// with the translated slalom that captures its encodings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family_index: usize,
    pub dominator_index: usize,
    pub points: BTreeSet<Word>,
    pub slalom: Slalom,
}

/// A finite catalog of capturing slaloms, indexed by the dominators whose
/// partitions the cataloged point sets live over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlalomCatalog {
    pub dominators: Vec<Vec<u64>>,
    pub partitions: Vec<PartitioningPrefix>,
    pub entries: Vec<CatalogEntry>,
    /// Pairs of entry indices whose translated slaloms coincide; entries
    /// are kept regardless.
    pub duplicate_slaloms: Vec<(usize, usize)>,
}

/// A successful catalog lookup: which entry answers, through which
/// dominator, and the thresholds of the clip and the capture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogHit {
    pub entry_index: usize,
    pub dominator_index: usize,
    pub clip_threshold: usize,
    pub capture: CaptureCertificate,
    pub combined_threshold: usize,
}

/// Why a lookup found nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "miss", rename_all = "kebab-case")]
pub enum CatalogMiss {
    /// No cataloged dominator bounds the query from any index on.
    NoDominator,
    /// At least one dominator bounds the query, but no entry over any such
    /// dominator contains the decoded point; the first dominating index and
    /// its decoded point are reported.
    PointNotCataloged { dominator_index: usize, point: Word },
}

/// Outcome of a catalog lookup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lookup", rename_all = "kebab-case")]
pub enum CatalogLookup {
    Hit(CatalogHit),
    Miss(CatalogMiss),
}

impl CatalogLookup {
    pub fn is_hit(&self) -> bool {
        matches!(self, CatalogLookup::Hit(_))
    }
}

impl SlalomCatalog {
    /// Builds a catalog from point-set/binary-slalom pairs and a pool of
    /// dominators. Each binary slalom must capture its point set and must
    /// live over the partition of some pooled dominator; the entry stores
    /// its translated (interval-valued) slalom.
    pub fn build(
        families: &[(BTreeSet<Word>, BinarySlalom)],
        dominators: Vec<Vec<u64>>,
    ) -> Result<SlalomCatalog> {
        let partitions: Vec<PartitioningPrefix> = dominators
            .iter()
            .map(|d| partreal(d))
            .collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(families.len());
        for (family_index, (points, binary)) in families.iter().enumerate() {
            match capture_set(points, binary)? {
                CaptureSetOutcome::AllCaptured { .. } => {}
                CaptureSetOutcome::Failures { uncaptured } => {
                    return Err(Error::FamilyNotCaptured {
                        family: family_index,
                        point: uncaptured.into_iter().next().expect("non-empty failures"),
                    })
                }
            }
            let dominator_index = partitions
                .iter()
                .position(|p| p == binary.partition())
                .ok_or(Error::UnknownDominator {
                    family: family_index,
                })?;
            entries.push(CatalogEntry {
                family_index,
                dominator_index,
                points: points.clone(),
                slalom: binary_to_slalom(binary)?,
            });
        }
        let mut duplicate_slaloms = Vec::new();
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if entries[i].slalom == entries[j].slalom {
                    duplicate_slaloms.push((i, j));
                }
            }
        }
        Ok(SlalomCatalog {
            dominators,
            partitions,
            entries,
            duplicate_slaloms,
        })
    }

    /// Looks a query sequence up: scans dominators in pool order for one
    /// that eventually bounds the query, clips, decodes the clipped
    /// sequence over that dominator's partition, and searches the entries
    /// over that dominator for a point set containing the decoded point.
    /// Dominators that bound the query but catalog no matching point are
    /// passed over in favor of later ones. A hit re-verifies that the
    /// entry's slalom captures the clipped sequence.
    pub fn lookup(&self, f: &[u64]) -> Result<CatalogLookup> {
        let mut first_dominating: Option<(usize, Word)> = None;
        for (j, dominator) in self.dominators.iter().enumerate() {
            if dominator.len() != f.len() {
                continue;
            }
            let report = match clip_to_bound(f, dominator) {
                Ok(report) => report,
                Err(Error::NotDominated { .. }) => continue,
                Err(e) => return Err(e),
            };
            let point = decode_seq(&report.clipped, &self.partitions[j])?;
            let entry_index = self
                .entries
                .iter()
                .position(|entry| entry.dominator_index == j && entry.points.contains(&point));
            let Some(entry_index) = entry_index else {
                if first_dominating.is_none() {
                    first_dominating = Some((j, point));
                }
                continue;
            };
            let capture = self.entries[entry_index]
                .slalom
                .goes_through_seq(&report.clipped)?
                .ok_or(Error::SelfCheckFailed {
                    what: "a cataloged slalom misses a point set member it must capture",
                })?;
            return Ok(CatalogLookup::Hit(CatalogHit {
                entry_index,
                dominator_index: j,
                clip_threshold: report.threshold,
                capture,
                combined_threshold: report.threshold.max(capture.threshold),
            }));
        }
        Ok(CatalogLookup::Miss(match first_dominating {
            Some((dominator_index, point)) => CatalogMiss::PointNotCataloged {
                dominator_index,
                point,
            },
            None => CatalogMiss::NoDominator,
        }))
    }
}

/// The tails of a sequence of witnesses under a growth target, and their
/// union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaUnion {
    /// `tails[n]` is the n-th witness restricted to `[f(n), ∞)`.
    pub tails: Vec<NatSet>,
    pub union: NatSet,
}

/// Unions countably many witnesses at finite scale: the n-th witness
/// contributes only its points at or above `f(n)`. Below `f(n)` the union
/// then consists of the first `n` tails alone, so its count below `f(n)`
/// is at most the sum of the first `n` witnesses' counts there — in
/// particular at most `n²` when each witness meets `[0, f(n))` at most `n`
/// times. The count inequality is re-verified directly.
pub fn sigma_union_witness(witnesses: &[NatSet], f: &[u64]) -> Result<SigmaUnion> {
    ensure_strictly_increasing(f)?;
    if witnesses.len() < f.len() {
        return Err(Error::SeqLength {
            expected: f.len(),
            found: witnesses.len(),
        });
    }
    let tails: Vec<NatSet> = f
        .iter()
        .zip(witnesses)
        .map(|(&cut, a)| a.at_least(cut))
        .collect();
    let mut union = NatSet::new();
    for tail in &tails {
        union = union.union(tail);
    }
    for (n, &cut) in f.iter().enumerate() {
        let sum: u64 = witnesses[..n].iter().map(|a| a.count_below(cut)).sum();
        if union.count_below(cut) > sum {
            return Err(Error::SelfCheckFailed {
                what: "a union tail reaches below its own cut",
            });
        }
    }
    Ok(SigmaUnion { tails, union })
}

/// Verdict of the two-witness union bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PairUnionVerdict {
    /// One of the inputs already exceeds the bound somewhere; see its
    /// report for the violation.
    PremiseFailed,
    /// Both inputs satisfy the bound and the union stays within twice the
    /// bound everywhere.
    Holds,
    /// The union exceeds twice the bound (impossible when the premises
    /// hold, but verified rather than trusted).
    Exceeded {
        index: usize,
        count: u64,
        bound: u64,
    },
}

/// The counts behind a [`PairUnionVerdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairUnionReport {
    pub left: RapidityReport,
    pub right: RapidityReport,
    pub union_counts: Vec<u64>,
    pub verdict: PairUnionVerdict,
}

impl PairUnionReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, PairUnionVerdict::Holds)
    }
}

/// Checks that the union of two witnesses, each meeting `[0, f(n))` at most
/// `bound(n)` times, meets it at most `2·bound(n)` times.
pub fn pair_union_bound(
    a: &NatSet,
    b: &NatSet,
    f: &[u64],
    bound: &WidthFunction,
) -> Result<PairUnionReport> {
    let left = check_rapidity_witness(a, f, bound)?;
    let right = check_rapidity_witness(b, f, bound)?;
    let union = a.union(b);
    let union_counts: Vec<u64> = f.iter().map(|&cut| union.count_below(cut)).collect();
    let verdict = if !left.is_rapid() || !right.is_rapid() {
        PairUnionVerdict::PremiseFailed
    } else {
        let mut verdict = PairUnionVerdict::Holds;
        for (index, &count) in union_counts.iter().enumerate() {
            let doubled = bound
                .eval(index as u64)?
                .checked_mul(2)
                .ok_or(Error::ArithmeticOverflow)?;
            if count > doubled {
                verdict = PairUnionVerdict::Exceeded {
                    index,
                    count,
                    bound: doubled,
                };
                break;
            }
        }
        verdict
    };
    Ok(PairUnionReport {
        left,
        right,
        union_counts,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(seqs: &[&[u64]]) -> FamilyOfSeqs {
        FamilyOfSeqs::new(seqs.iter().map(|s| s.to_vec())).unwrap()
    }

    fn nats(elems: &[u64]) -> NatSet {
        elems.iter().copied().collect()
    }

    #[test]
    fn families_deduplicate_and_enforce_equal_lengths() {
        let f = family(&[&[1, 2], &[0, 3], &[1, 2]]);
        assert_eq!(f.len(), 2);
        assert_eq!(f.seq_len(), Some(2));
        assert_eq!(
            FamilyOfSeqs::new(vec![vec![1], vec![1, 2]]),
            Err(Error::SeqLength {
                expected: 1,
                found: 2
            })
        );
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<FamilyOfSeqs>(&json).unwrap(), f);
        assert!(serde_json::from_str::<FamilyOfSeqs>("[[1],[1,2]]").is_err());
    }

    #[test]
    fn partition_points_are_prefix_sums() {
        let d = partreal(&[4, 2, 3, 5, 1, 3]).unwrap();
        assert_eq!(d.points(), &[0, 4, 6, 9, 14, 15, 18]);
        assert!(partreal(&[3, 0, 2]).is_err());
    }

    #[test]
    fn clipping_zeroes_entries_above_the_bound() {
        let report = clip_to_bound(&[5, 1, 7], &[3, 2, 9]).unwrap();
        assert_eq!(report.clipped, vec![0, 1, 7]);
        assert_eq!(report.threshold, 1);

        let below = clip_to_bound(&[1, 2], &[3, 4]).unwrap();
        assert_eq!(below.clipped, vec![1, 2]);
        assert_eq!(below.threshold, 0);

        assert_eq!(
            clip_to_bound(&[1, 9], &[3, 4]),
            Err(Error::NotDominated { index: 1 })
        );
        assert_eq!(
            clip_to_bound(&[1], &[3, 4]),
            Err(Error::SeqLength {
                expected: 2,
                found: 1
            })
        );
        let empty = clip_to_bound(&[], &[]).unwrap();
        assert_eq!(empty.threshold, 0);
        assert!(empty.clipped.is_empty());
    }

    #[test]
    fn clipped_entries_below_threshold_keep_small_values() {
        // Below the threshold only the offending entries become 0.
        let report = clip_to_bound(&[5, 1, 6, 2], &[3, 2, 9, 9]).unwrap();
        assert_eq!(report.clipped, vec![0, 1, 6, 2]);
        assert_eq!(report.threshold, 1);
    }

    #[test]
    fn domination_takes_pointwise_max_plus_one() {
        let f = family(&[&[0, 1], &[2, 0]]);
        assert_eq!(dominate_family(&f).unwrap(), vec![3, 2]);
        assert_eq!(dominate_family(&family(&[&[7, 7]])).unwrap(), vec![8, 8]);
        assert_eq!(
            dominate_family(&family(&[&[0, 0, 0]])).unwrap(),
            vec![1, 1, 1]
        );
        assert_eq!(
            dominate_family(&FamilyOfSeqs::default()),
            Err(Error::EmptyFamily)
        );
    }

    #[test]
    fn encoding_is_injective_with_zero_thresholds() {
        let f = family(&[&[0, 1, 4], &[2, 0, 1], &[1, 1, 1]]);
        let encoded = encode_family(&f).unwrap();
        assert_eq!(encoded.dominator, vec![3, 2, 5]);
        assert_eq!(encoded.partition.points(), &[0, 3, 5, 10]);
        assert_eq!(encoded.points.len(), 3);
        assert!(encoded.clipped.iter().all(|r| r.threshold == 0));
        for (report, point) in encoded.clipped.iter().zip(&encoded.points) {
            assert_eq!(
                encode_point(point, &encoded.partition).unwrap(),
                report.clipped
            );
        }
        let distinct: BTreeSet<&Word> = encoded.points.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn capture_of_encodings_certifies_the_originals() {
        let f = family(&[&[0, 1, 4], &[2, 0, 1]]);
        // Cells holding exactly the family's values per index.
        let slalom = Slalom {
            cells: vec![
                nats(&[0, 2]).iter().collect(),
                nats(&[0, 1]).iter().collect(),
                nats(&[1, 4]).iter().collect(),
            ],
            width: WidthFunction::Constant(2),
        };
        let report = pull_capture_through_encoding(&f, &slalom).unwrap();
        assert!(report.all_captured());
        assert!(report
            .certificates
            .iter()
            .all(|c| c.unwrap().threshold == 0));

        // Cells missing one value late: that member fails, the other keeps
        // a certificate.
        let narrow = Slalom {
            cells: vec![
                nats(&[0, 2]).iter().collect(),
                nats(&[0, 1]).iter().collect(),
                nats(&[4]).iter().collect(),
            ],
            width: WidthFunction::Constant(2),
        };
        let report = pull_capture_through_encoding(&f, &narrow).unwrap();
        assert_eq!(report.uncaptured(), vec![1]);

        // Empty cells: everything fails.
        let empty = Slalom {
            cells: vec![BTreeSet::new(), BTreeSet::new(), BTreeSet::new()],
            width: WidthFunction::Constant(0),
        };
        let report = pull_capture_through_encoding(&f, &empty).unwrap();
        assert_eq!(report.uncaptured(), vec![0, 1]);
    }

    #[test]
    fn self_catalog_lookup_round_trips() {
        let f = vec![3u64, 0, 2];
        let fam = family(&[&f]);
        let encoded = encode_family(&fam).unwrap();
        let points: BTreeSet<Word> = encoded.points.iter().cloned().collect();
        let binary = BinarySlalom::new(
            encoded.partition.clone(),
            (0..encoded.partition.num_intervals())
                .map(|n| {
                    points
                        .iter()
                        .map(|p| p.restrict(encoded.partition.interval(n)))
                        .collect()
                })
                .collect(),
            WidthFunction::Constant(1),
        )
        .unwrap();
        let catalog =
            SlalomCatalog::build(&[(points, binary)], vec![encoded.dominator.clone()]).unwrap();
        assert!(catalog.duplicate_slaloms.is_empty());

        match catalog.lookup(&f).unwrap() {
            CatalogLookup::Hit(hit) => {
                assert_eq!(hit.entry_index, 0);
                assert_eq!(hit.dominator_index, 0);
                assert_eq!(hit.clip_threshold, 0);
                assert_eq!(hit.combined_threshold, hit.capture.threshold);
            }
            miss => panic!("expected hit, got {miss:?}"),
        }

        // A query no pooled dominator bounds at its last index.
        match catalog.lookup(&[0, 0, 99]).unwrap() {
            CatalogLookup::Miss(CatalogMiss::NoDominator) => {}
            other => panic!("expected no-dominator miss, got {other:?}"),
        }

        // Dominated but decoding to an uncataloged point.
        match catalog.lookup(&[0, 0, 0]).unwrap() {
            CatalogLookup::Miss(CatalogMiss::PointNotCataloged {
                dominator_index, ..
            }) => assert_eq!(dominator_index, 0),
            other => panic!("expected point miss, got {other:?}"),
        }
    }

    #[test]
    fn sigma_union_keeps_only_tails() {
        let witnesses = [nats(&[0, 1]), nats(&[0, 5]), NatSet::new()];
        let sigma = sigma_union_witness(&witnesses, &[2, 4, 8]).unwrap();
        assert!(sigma.tails[0].is_empty());
        assert_eq!(sigma.tails[1], nats(&[5]));
        assert!(sigma.tails[2].is_empty());
        assert_eq!(sigma.union, nats(&[5]));

        // Tail m never reaches below cut n for m ≥ n.
        let f = [2u64, 4, 8];
        for (n, &cut) in f.iter().enumerate() {
            for tail in &sigma.tails[n..] {
                assert_eq!(tail.count_below(cut), 0);
            }
        }

        assert_eq!(
            sigma_union_witness(&witnesses[..2], &[2, 4, 8]),
            Err(Error::SeqLength {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            sigma_union_witness(&witnesses, &[2, 2, 8]),
            Err(Error::NotIncreasing { index: 1 })
        );

        let empty = sigma_union_witness(&[NatSet::new(), NatSet::new()], &[1, 2]).unwrap();
        assert!(empty.union.is_empty());

        let single = sigma_union_witness(&[nats(&[1, 3, 9])], &[3]).unwrap();
        assert_eq!(single.union, nats(&[3, 9]));
    }

    #[test]
    fn excess_witnesses_are_ignored() {
        let witnesses = [nats(&[4]), nats(&[9]), nats(&[0])];
        let sigma = sigma_union_witness(&witnesses, &[1, 2]).unwrap();
        assert_eq!(sigma.tails.len(), 2);
        assert_eq!(sigma.union, nats(&[4, 9]));
    }

    #[test]
    fn union_of_two_rapid_witnesses_stays_within_twice_the_bound() {
        let f = [1u64, 3, 6, 10];
        let bound = WidthFunction::Identity;
        let a = nats(&[1, 3, 6]);
        let same = pair_union_bound(&a, &a, &f, &bound).unwrap();
        assert!(same.holds());
        assert_eq!(same.union_counts, vec![0, 1, 2, 3]);

        // Disjoint witnesses each at the boundary reach equality.
        let right = nats(&[2, 4, 7]);
        let report = pair_union_bound(&a, &right, &f, &bound).unwrap();
        assert!(report.holds());
        assert_eq!(report.union_counts, vec![0, 2, 4, 6]);

        let empty = pair_union_bound(&NatSet::new(), &a, &f, &bound).unwrap();
        assert!(empty.holds());
        assert_eq!(empty.union_counts, vec![0, 1, 2, 3]);

        let overloaded = pair_union_bound(&nats(&[0, 1, 2]), &a, &f, &bound).unwrap();
        assert_eq!(overloaded.verdict, PairUnionVerdict::PremiseFailed);
        assert!(overloaded.left.violation.is_some());
    }
}
