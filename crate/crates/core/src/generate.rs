//! Seeded pseudorandom instance generators for every construction in the
//! library. All generators draw from a caller-supplied [`Rng`], so a fixed
//! seed reproduces the same instances byte for byte; [`rng`] builds the
//! stream cipher generator used throughout the test suites and the CLI.
//!
//! Generators produce instances satisfying the preconditions of the
//! operation they feed: witnesses stay strictly below the cover-to-slalom
//! budget, diagonalization covers split only where the instance plans to
//! block, boundary witnesses meet each count bound with equality.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::filterlab::{diagonalize, DiagonalOutcome, FilterCertificate};
use crate::natset::NatSet;
use crate::partition::{make_partition, PartitioningPrefix};
use crate::pipelines::{encode_family, FamilyOfSeqs};
use crate::rapidity::{witness_budget, CoverFamily};
use crate::slalom::{BinarySlalom, Slalom, WidthFunction};
use crate::word::Word;

/// The deterministic generator behind a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A partition with 1..=`max_intervals` intervals of widths
/// 1..=`max_width`.
pub fn partition(rng: &mut impl Rng, max_intervals: usize, max_width: u64) -> PartitioningPrefix {
    let n = rng.random_range(1..=max_intervals.max(1));
    let deltas: Vec<u64> = (0..n)
        .map(|_| rng.random_range(1..=max_width.max(1)))
        .collect();
    make_partition(&deltas).expect("positive widths form a partition")
}

/// A uniformly random word of the given length.
pub fn word(rng: &mut impl Rng, len: u64) -> Word {
    Word::from_raw((0..len).map(|_| u8::from(rng.random_bool(0.5))).collect())
}

/// A sequence whose entry at `n` fits interval `n` of the partition, so
/// decoding then encoding it is the identity.
pub fn bounded_seq(rng: &mut impl Rng, d: &PartitioningPrefix) -> Vec<u64> {
    (0..d.num_intervals())
        .map(|n| {
            let width = d.interval_len(n);
            if width >= 64 {
                rng.random()
            } else {
                rng.random_range(0..1u64 << width)
            }
        })
        .collect()
}

/// A slalom with the given width function: each cell takes 1..=bound
/// values below `max_value` (empty where the bound is 0).
pub fn slalom(rng: &mut impl Rng, len: usize, width: WidthFunction, max_value: u64) -> Slalom {
    let cells = (0..len)
        .map(|n| {
            let bound = width.eval(n as u64).expect("total width function");
            if bound == 0 {
                return BTreeSet::new();
            }
            let size = rng.random_range(1..=bound);
            (0..size).map(|_| rng.random_range(0..=max_value)).collect()
        })
        .collect();
    Slalom { cells, width }
}

/// A sequence the slalom captures from index `from` on (entries are read
/// out of the cells) and arbitrary below. All cells from `from` must be
/// non-empty.
pub fn captured_seq(rng: &mut impl Rng, s: &Slalom, from: usize, max_value: u64) -> Vec<u64> {
    (0..s.len())
        .map(|n| {
            if n < from {
                rng.random_range(0..=max_value)
            } else {
                let cell = &s.cells[n];
                assert!(
                    !cell.is_empty(),
                    "cell {n} is empty at or past the threshold"
                );
                *cell.iter().nth(rng.random_range(0..cell.len())).unwrap()
            }
        })
        .collect()
}

/// A binary slalom over the partition with the given width function: cell
/// `n` holds 1..=bound distinct words of the interval's length (empty
/// where the bound is 0).
pub fn binary_slalom(
    rng: &mut impl Rng,
    d: &PartitioningPrefix,
    width: WidthFunction,
) -> BinarySlalom {
    let cells = (0..d.num_intervals())
        .map(|n| {
            let bound = width.eval(n as u64).expect("total width function");
            let room = if d.interval_len(n) >= 63 {
                u64::MAX
            } else {
                1 << d.interval_len(n)
            };
            let size = bound.min(room);
            if size == 0 {
                return BTreeSet::new();
            }
            let size = rng.random_range(1..=size);
            let mut cell = BTreeSet::new();
            while (cell.len() as u64) < size {
                cell.insert(word(rng, d.interval_len(n)));
            }
            cell
        })
        .collect();
    BinarySlalom::new(d.clone(), cells, width).expect("one cell per interval")
}

/// A word the binary slalom captures from index `from` on (slices are read
/// out of the cells) and arbitrary below. All cells from `from` must be
/// non-empty.
pub fn captured_word(rng: &mut impl Rng, b: &BinarySlalom, from: usize) -> Word {
    let d = b.partition();
    let mut bits = word(rng, d.horizon()).bits().to_vec();
    for n in from..d.num_intervals() {
        let cell = &b.cells()[n];
        assert!(
            !cell.is_empty(),
            "cell {n} is empty at or past the threshold"
        );
        let slice = cell.iter().nth(rng.random_range(0..cell.len())).unwrap();
        let start = d.point(n) as usize;
        bits[start..start + slice.len()].copy_from_slice(slice.bits());
    }
    Word::from_raw(bits)
}

/// A witness whose count below every partition point stays strictly under
/// the cover-to-slalom budget (where the budget is positive; elsewhere the
/// count is 0). Such witnesses always pass the budget check with room to
/// spare, which keeps the slalom's cells within identity width.
pub fn budget_witness(rng: &mut impl Rng, d: &PartitioningPrefix) -> NatSet {
    let mut elems = Vec::new();
    for n in 1..=d.num_intervals() {
        // Count allowed strictly below d(n): one under the budget.
        let allowance = witness_budget(n as u64).saturating_sub(1);
        let room = allowance.saturating_sub(elems.len() as u64);
        if room == 0 {
            continue;
        }
        let interval = d.interval(n - 1);
        let len = (interval.end - interval.start) as usize;
        let take = rng.random_range(0..=room.min(len as u64)) as usize;
        for i in sample(rng, len, take) {
            elems.push(interval.start + i as u64);
        }
        elems.sort_unstable();
    }
    NatSet::from_elements(elems)
}

/// A cover of up to `pieces` pieces, each of at most `max_points` words of
/// length `horizon`, whose splitting points all lie inside `splits`: each
/// piece is a base word toggled on subsets of a few positions of `splits`.
pub fn cover_from_witness(
    rng: &mut impl Rng,
    splits: &NatSet,
    horizon: u64,
    pieces: usize,
    max_points: usize,
) -> CoverFamily {
    let support: Vec<u64> = splits.iter().collect();
    let cover = (0..pieces)
        .map(|_| {
            let base = word(rng, horizon);
            let budget = max_points.max(1).ilog2() as usize;
            let chosen: Vec<u64> = sample(rng, support.len(), budget.min(support.len()))
                .iter()
                .map(|i| support[i])
                .collect();
            let count = rng.random_range(1..=max_points.max(1));
            (0..count)
                .map(|_| {
                    let mut p = base.clone();
                    for &s in &chosen {
                        if rng.random_bool(0.5) {
                            p = p.toggled(s as usize);
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    CoverFamily::new(cover)
}

/// A family of `count` random sequences of the given length with entries
/// up to `max_value` (duplicates collapse, so the family may be smaller).
pub fn family(rng: &mut impl Rng, count: usize, len: usize, max_value: u64) -> FamilyOfSeqs {
    FamilyOfSeqs::new(
        (0..count).map(|_| (0..len).map(|_| rng.random_range(0..=max_value)).collect()),
    )
    .expect("equal lengths by construction")
}

/// A ready-made diagonalization instance with its expected outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalInstance {
    /// The ambient word whose support hosts the construction.
    pub characteristic: Word,
    pub enumeration: NatSet,
    pub cover: CoverFamily,
    pub steps: usize,
    /// The stage at which the run must block, if any; otherwise the run
    /// must escape.
    pub expected_block: Option<usize>,
}

/// Builds a diagonalization instance over words of length `len` with
/// `pieces` stages. With `block_at = None` every piece splits only away
/// from the enumerated positions, so the run escapes. With
/// `block_at = Some(n)` the instance plants, at stage `n`, two extensions
/// of the very prefix the run will have built that disagree exactly at the
/// enumerated position, so the run blocks there and at no earlier stage.
pub fn diagonal_instance(
    rng: &mut impl Rng,
    len: u64,
    pieces: usize,
    block_at: Option<usize>,
) -> DiagonalInstance {
    let len = len.max(1);
    let pieces = pieces.max(1).min(len as usize);
    let block_at = block_at.map(|b| b.min(pieces - 1));
    let positions: Vec<u64> = {
        let mut chosen: Vec<u64> = sample(rng, len as usize, pieces)
            .iter()
            .map(|i| i as u64)
            .collect();
        chosen.sort_unstable();
        chosen
    };
    let enumeration = NatSet::from_elements(positions.iter().copied());
    let mut bits: Vec<u8> = (0..len).map(|_| u8::from(rng.random_bool(0.5))).collect();
    for &p in &positions {
        bits[p as usize] = 1;
    }
    let characteristic = Word::from_raw(bits);

    // A piece that splits only away from the enumerated positions: a base
    // word toggled on a couple of off-enumeration positions.
    fn safe_piece(rng: &mut impl Rng, len: u64, off_enumeration: &[u64]) -> BTreeSet<Word> {
        let base = word(rng, len);
        let toggles: Vec<u64> = sample(rng, off_enumeration.len(), 2.min(off_enumeration.len()))
            .iter()
            .map(|i| off_enumeration[i])
            .collect();
        let count = rng.random_range(1..=4usize);
        (0..count)
            .map(|_| {
                let mut p = base.clone();
                for &s in &toggles {
                    if rng.random_bool(0.5) {
                        p = p.toggled(s as usize);
                    }
                }
                p
            })
            .collect()
    }
    let off_enumeration: Vec<u64> = (0..len).filter(|k| !enumeration.contains(*k)).collect();
    let mut cover = CoverFamily::new(
        (0..pieces)
            .map(|_| safe_piece(rng, len, &off_enumeration))
            .collect(),
    );

    if let Some(stage) = block_at {
        // Run the construction through the earlier stages to learn the
        // exact prefix it builds, then plant the conflict on it.
        let partial = diagonalize(&characteristic, &enumeration, &cover, stage)
            .expect("safe pieces leave the early stages unobstructed");
        let DiagonalOutcome::Escaped { point, .. } = partial else {
            unreachable!("safe pieces never block");
        };
        let position = positions[stage] as usize;
        // A zero-step run hands back the ambient word untouched; the full
        // run zeroes everything below the first enumerated position before
        // stage 0, so apply that here (a no-op for later stages).
        let mut base = point.bits().to_vec();
        for b in &mut base[..positions[0] as usize] {
            *b = 0;
        }
        let mut plant = |bit: u8| {
            let mut bits = base.clone();
            bits[position] = bit;
            for b in bits.iter_mut().skip(position + 1) {
                *b = u8::from(rng.random_bool(0.5));
            }
            Word::from_raw(bits)
        };
        cover.pieces[stage] = [plant(0), plant(1)].into_iter().collect();
    }

    DiagonalInstance {
        characteristic,
        enumeration,
        cover,
        steps: pieces,
        expected_block: block_at,
    }
}

/// A certificate that validates by construction: a random cover, a subject
/// drawn from the covered points, and the cover's own splitting points
/// (plus noise) as witness.
pub fn certificate(
    rng: &mut impl Rng,
    horizon: u64,
    pieces: usize,
    max_points: usize,
) -> Result<FilterCertificate> {
    let cover = CoverFamily::new(
        (0..pieces.max(1))
            .map(|_| {
                (0..rng.random_range(1..=max_points.max(1)))
                    .map(|_| word(rng, horizon))
                    .collect()
            })
            .collect(),
    );
    let covered: Vec<Word> = cover.union().into_iter().collect();
    let take = rng.random_range(1..=covered.len());
    let subject: BTreeSet<Word> = sample(rng, covered.len(), take)
        .iter()
        .map(|i| covered[i].clone())
        .collect();
    let mut witness = cover.splits()?;
    for _ in 0..rng.random_range(0..3usize) {
        witness.insert(rng.random_range(0..horizon.max(1)));
    }
    Ok(FilterCertificate {
        subject,
        cover,
        witness,
    })
}

/// Witnesses that meet the identity count bound with equality: the n-th
/// one holds exactly one element in `[f(i), f(i+1))` for every `i`, so its
/// count below `f(n)` is exactly `n` for every `n`.
pub fn boundary_witnesses(rng: &mut impl Rng, f: &[u64], count: usize) -> Vec<NatSet> {
    (0..count)
        .map(|_| NatSet::from_elements(f.windows(2).map(|pair| rng.random_range(pair[0]..pair[1]))))
        .collect()
}

/// Everything a catalog scenario needs: captured point sets with their
/// binary slaloms, the dominator pool, and queries built from catalog
/// members (possibly spiked above the dominator at positions the clip
/// erases, leaving the decoded point unchanged).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogInstance {
    pub families: Vec<(BTreeSet<Word>, BinarySlalom)>,
    pub dominators: Vec<Vec<u64>>,
    pub queries: Vec<Vec<u64>>,
}

/// Builds a catalog instance from `count` random sequence families. Each
/// family is encoded over its own dominator; the binary slalom's cell `n`
/// holds exactly the interval-`n` slices of the encoded points, so capture
/// is immediate. One query per family takes a member and, where it
/// vanishes before the last index, may spike it above the dominator —
/// clipping restores the member, so every query must hit.
pub fn catalog_instance(
    rng: &mut impl Rng,
    count: usize,
    seqs_per_family: usize,
    seq_len: usize,
    max_value: u64,
) -> Result<CatalogInstance> {
    let mut families = Vec::new();
    let mut dominators = Vec::new();
    let mut queries = Vec::new();
    for _ in 0..count.max(1) {
        let fam = family(rng, seqs_per_family.max(1), seq_len.max(1), max_value);
        let encoded = encode_family(&fam)?;
        let points: BTreeSet<Word> = encoded.points.iter().cloned().collect();
        let cells: Vec<BTreeSet<Word>> = (0..encoded.partition.num_intervals())
            .map(|n| {
                points
                    .iter()
                    .map(|p| p.restrict(encoded.partition.interval(n)))
                    .collect()
            })
            .collect();
        let width = WidthFunction::Constant(points.len() as u64);
        let binary = BinarySlalom::new(encoded.partition.clone(), cells, width)
            .expect("one cell per interval");

        let member = fam.seqs()[rng.random_range(0..fam.len())].clone();
        let mut query = member.clone();
        for n in 0..query.len().saturating_sub(1) {
            if query[n] == 0 && rng.random_bool(0.25) {
                query[n] = encoded.dominator[n] + 1 + rng.random_range(0..4);
            }
        }
        families.push((points, binary));
        dominators.push(encoded.dominator);
        queries.push(query);
    }
    Ok(CatalogInstance {
        families,
        dominators,
        queries,
    })
}
