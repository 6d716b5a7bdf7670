//! Cover certificates for finite point sets and the constructions that
//! manipulate them: validation, unions, powerset enumeration, stagewise
//! diagonalization against a cover, eventual-closure pieces, and
//! prefix/shift transport.
//!
//! A certificate asserts two things about a finite set of points: the cover
//! pieces jointly contain every point, and the witness set contains every
//! splitting point of every piece. Both clauses are finitely checkable, so
//! a certificate can always be re-validated independently of however it was
//! produced.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natset::{shift_set, NatSet};
use crate::rapidity::CoverFamily;
use crate::word::{split_set, Word};

/// A finite point set together with a cover and a witness for the cover's
/// splitting points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterCertificate {
    pub subject: BTreeSet<Word>,
    #[serde(rename = "pieces")]
    pub cover: CoverFamily,
    pub witness: NatSet,
}

impl FilterCertificate {
    /// The common word length across subject and pieces, if any word exists.
    pub fn alignment(&self) -> Result<Option<u64>> {
        let mut expected = self.cover.alignment()?;
        for w in &self.subject {
            match expected {
                None => expected = Some(w.len() as u64),
                Some(e) if e != w.len() as u64 => {
                    return Err(Error::MixedLengths {
                        expected: e as usize,
                        found: w.len(),
                    })
                }
                _ => {}
            }
        }
        Ok(expected)
    }
}

/// The minimal witness for a cover: the union of the splitting points of
/// its pieces.
pub fn witness_of_cover(cover: &CoverFamily) -> Result<NatSet> {
    cover.alignment()?;
    cover.splits()
}

/// Outcome of validating a certificate. Defects are data, not errors; the
/// first one found (misalignment, then coverage, then witness containment)
/// is reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CertificateVerdict {
    Valid,
    /// Two words in the certificate have different lengths.
    Misaligned {
        expected: u64,
        found: u64,
    },
    /// A subject point lies in no piece.
    Uncovered {
        point: Word,
    },
    /// A piece splits at a point missing from the witness.
    MissingSplit {
        split: u64,
    },
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

/// Validates both clauses of a certificate: coverage of the subject and
/// witness containment of all splitting points.
pub fn check_certificate(c: &FilterCertificate) -> CertificateVerdict {
    let mut expected: Option<u64> = None;
    for w in c.subject.iter().chain(c.cover.pieces.iter().flatten()) {
        match expected {
            None => expected = Some(w.len() as u64),
            Some(e) if e != w.len() as u64 => {
                return CertificateVerdict::Misaligned {
                    expected: e,
                    found: w.len() as u64,
                }
            }
            _ => {}
        }
    }
    for x in &c.subject {
        if !c.cover.pieces.iter().any(|piece| piece.contains(x)) {
            return CertificateVerdict::Uncovered { point: x.clone() };
        }
    }
    for piece in &c.cover.pieces {
        // Alignment was just verified, so split_set cannot fail here.
        let splits = split_set(piece.iter()).expect("aligned piece");
        let missing = splits.iter().find(|&s| !c.witness.contains(s));
        if let Some(split) = missing {
            return CertificateVerdict::MissingSplit { split };
        }
    }
    CertificateVerdict::Valid
}

/// Merges certificates: subjects and witnesses union, covers concatenate
/// (duplicate pieces are kept once). The result certifies the union of the
/// subjects. All inputs must share one alignment.
pub fn union_certificate(cs: &[FilterCertificate]) -> Result<FilterCertificate> {
    let mut expected: Option<u64> = None;
    for c in cs {
        if let Some(found) = c.alignment()? {
            match expected {
                None => expected = Some(found),
                Some(e) if e != found => {
                    return Err(Error::MixedLengths {
                        expected: e as usize,
                        found: found as usize,
                    })
                }
                _ => {}
            }
        }
    }
    let mut subject = BTreeSet::new();
    let mut pieces: Vec<BTreeSet<Word>> = Vec::new();
    let mut witness = NatSet::new();
    for c in cs {
        subject.extend(c.subject.iter().cloned());
        for piece in &c.cover.pieces {
            if !pieces.contains(piece) {
                pieces.push(piece.clone());
            }
        }
        witness = witness.union(&c.witness);
    }
    Ok(FilterCertificate {
        subject,
        cover: CoverFamily::new(pieces),
        witness,
    })
}

/// Enumeration cap for [`powerset_points`]: at most 2^16 points.
pub const POWERSET_CAP_BITS: usize = 16;

/// All words of length `len` whose support is contained in `a` — the
/// finite-horizon powerset of `a`. The splitting points of the result are
/// exactly `a` (for `|a| ≥ 2` every element splits some pair; for smaller
/// `a` both sides degenerate to the empty set when `a` is empty).
pub fn powerset_points(a: &NatSet, len: u64) -> Result<BTreeSet<Word>> {
    if let Some(element) = a.max_element() {
        if element >= len {
            return Err(Error::AboveHorizon {
                element,
                horizon: len,
            });
        }
    }
    if a.len() > POWERSET_CAP_BITS {
        return Err(Error::EnumerationCap {
            requested: 1u64.checked_shl(a.len() as u32).unwrap_or(u64::MAX),
            cap: 1 << POWERSET_CAP_BITS,
        });
    }
    let positions: Vec<u64> = a.iter().collect();
    let mut points = BTreeSet::new();
    for mask in 0u64..(1 << positions.len()) {
        let mut bits = vec![0u8; len as usize];
        for (i, &p) in positions.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                bits[p as usize] = 1;
            }
        }
        points.insert(Word::from_raw(bits));
    }
    Ok(points)
}

/// The case taken at one diagonalization stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum StageCase {
    /// No member of the stage's piece extends the prefix built so far; the
    /// enumerated position receives 0.
    NoExtension,
    /// Every extending member of the piece carries `shared` at the
    /// enumerated position; the position receives the opposite bit.
    Forced { shared: u8 },
    /// Two extending members disagree at the enumerated position, so the
    /// position splits the piece and no bit escapes it.
    Conflict,
}

/// One stage of the diagonalization trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: usize,
    pub position: u64,
    pub case: StageCase,
    /// The bit written at `position`; absent for a conflict.
    pub chosen: Option<u8>,
}

/// Result of a diagonalization run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DiagonalOutcome {
    /// A point inside the support of the ambient word and incompatible
    /// with every handled piece.
    Escaped {
        point: Word,
        trace: Vec<StageReport>,
    },
    /// Stage `stage` found two members of its piece that extend the built
    /// prefix and disagree at the enumerated position: the piece splits
    /// right there, so no extension can avoid it.
    Blocked {
        stage: usize,
        position: u64,
        left: Word,
        right: Word,
        trace: Vec<StageReport>,
    },
}

impl DiagonalOutcome {
    pub fn is_escape(&self) -> bool {
        matches!(self, DiagonalOutcome::Escaped { .. })
    }
}

/// Builds, stage by stage, a point inside the support of `a` that escapes
/// the first `steps` pieces of the cover.
///
/// `enumeration` lists the positions consulted per stage; they must lie in
/// the support of `a`. The point starts as a copy of `a` with everything
/// below the first enumerated position zeroed. Stage `n` looks at piece
/// `n`: if no member extends the prefix built so far, position
/// `enumeration(n)` gets 0; if all extending members agree there, it gets
/// the opposite bit; if two extending members disagree there, the piece
/// splits at an enumerated position and the run reports `Blocked`. With
/// `steps = 0` the point is `a` itself.
///
/// On success the postconditions are re-verified by brute force: the point
/// is bitwise below `a`, and for every handled stage the prefix up to and
/// including its position differs from every member of its piece.
pub fn diagonalize(
    a: &Word,
    enumeration: &NatSet,
    cover: &CoverFamily,
    steps: usize,
) -> Result<DiagonalOutcome> {
    let len = a.len() as u64;
    for position in enumeration.iter() {
        if position >= len || a.bit(position as usize) == 0 {
            return Err(Error::OutsideSupport { position });
        }
    }
    if steps > enumeration.len() {
        return Err(Error::InsufficientEnumeration {
            steps: steps as u64,
            available: enumeration.len() as u64,
        });
    }
    if steps > cover.len() {
        return Err(Error::NoSuchPiece {
            index: steps - 1,
            count: cover.len(),
        });
    }
    if let Some(found) = cover.alignment()? {
        if found != len {
            return Err(Error::Misaligned {
                expected: len,
                found,
            });
        }
    }
    if steps == 0 {
        return Ok(DiagonalOutcome::Escaped {
            point: a.clone(),
            trace: Vec::new(),
        });
    }
    let positions: Vec<u64> = enumeration.iter().take(steps).collect();
    let mut bits = a.bits().to_vec();
    for bit in &mut bits[..positions[0] as usize] {
        *bit = 0;
    }
    let mut trace = Vec::with_capacity(steps);
    for (stage, &position) in positions.iter().enumerate() {
        let pos = position as usize;
        let extenders: Vec<&Word> = cover.pieces[stage]
            .iter()
            .filter(|z| z.bits()[..pos] == bits[..pos])
            .collect();
        let (case, bit) = if extenders.is_empty() {
            (StageCase::NoExtension, 0)
        } else {
            let low = extenders.iter().find(|z| z.bit(pos) == 0);
            let high = extenders.iter().find(|z| z.bit(pos) == 1);
            match (low, high) {
                (Some(left), Some(right)) => {
                    trace.push(StageReport {
                        stage,
                        position,
                        case: StageCase::Conflict,
                        chosen: None,
                    });
                    return Ok(DiagonalOutcome::Blocked {
                        stage,
                        position,
                        left: (*left).clone(),
                        right: (*right).clone(),
                        trace,
                    });
                }
                (Some(_), None) => (StageCase::Forced { shared: 0 }, 1),
                (None, Some(_)) => (StageCase::Forced { shared: 1 }, 0),
                (None, None) => unreachable!("non-empty extender set has some bit"),
            }
        };
        bits[pos] = bit;
        trace.push(StageReport {
            stage,
            position,
            case,
            chosen: Some(bit),
        });
    }
    let point = Word::from_raw(bits);
    if !point.is_bitwise_subset(a) {
        return Err(Error::SelfCheckFailed {
            what: "diagonal point leaves the ambient support",
        });
    }
    for (stage, &position) in positions.iter().enumerate() {
        let through = position as usize + 1;
        for z in &cover.pieces[stage] {
            if z.bits()[..through] == point.bits()[..through] {
                return Err(Error::SelfCheckFailed {
                    what: "diagonal prefix is compatible with a handled piece",
                });
            }
        }
    }
    Ok(DiagonalOutcome::Escaped { point, trace })
}

/// The splice of a prefix with the tails of a piece: every point of length
/// `len` that starts with `s` and agrees, from position `|t|` on, with some
/// member of piece `n` that starts with `t`. Requires `|s| = |t|`.
///
/// The splitting points of the result are among those of the piece: two
/// distinct splices share the prefix `s`, so they first disagree at or past
/// `|t|`, where both copy members of the piece that agree below `|t|`.
pub fn eventual_closure_cover(
    cover: &CoverFamily,
    n: usize,
    s: &Word,
    t: &Word,
    len: u64,
) -> Result<BTreeSet<Word>> {
    if n >= cover.len() {
        return Err(Error::NoSuchPiece {
            index: n,
            count: cover.len(),
        });
    }
    if s.len() != t.len() {
        return Err(Error::PrefixLengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    if s.len() as u64 > len {
        return Err(Error::TooShort {
            needed: s.len() as u64,
            found: len,
        });
    }
    if let Some(found) = cover.alignment()? {
        if found != len {
            return Err(Error::Misaligned {
                expected: len,
                found,
            });
        }
    }
    Ok(cover.pieces[n]
        .iter()
        .filter(|y| y.extends(t))
        .map(|y| s.concat(&y.suffix(t.len())))
        .collect())
}

/// Transports a certificate under prefix concatenation: every subject and
/// piece word gains the prefix `s`, and the witness shifts by `|s|`.
pub fn prepend_cover_transport(c: &FilterCertificate, s: &Word) -> Result<FilterCertificate> {
    let prepend_all =
        |words: &BTreeSet<Word>| -> BTreeSet<Word> { words.iter().map(|w| s.concat(w)).collect() };
    Ok(FilterCertificate {
        subject: prepend_all(&c.subject),
        cover: CoverFamily::new(c.cover.pieces.iter().map(&prepend_all).collect()),
        witness: shift_set(&c.witness, s.len() as u64)?,
    })
}

/// Inverts [`prepend_cover_transport`]: strips the prefix `s` from every
/// subject word (all of which must extend `s`), keeps of each piece only
/// the members extending `s` with the prefix stripped, and keeps of the
/// witness only the positions at or past `|s|`, shifted down. Splitting
/// points of words sharing the prefix `s` sit at or past `|s|`, so the
/// reduced witness still contains them all.
pub fn unprepend_cover_transport(c: &FilterCertificate, s: &Word) -> Result<FilterCertificate> {
    if let Some(horizon) = c.alignment()? {
        if (s.len() as u64) > horizon {
            return Err(Error::TooShort {
                needed: s.len() as u64,
                found: horizon,
            });
        }
    }
    if let Some(word) = c.subject.iter().find(|x| !x.extends(s)) {
        return Err(Error::DoesNotExtend {
            word: word.clone(),
            prefix: s.clone(),
        });
    }
    let strip = |words: &BTreeSet<Word>| -> BTreeSet<Word> {
        words
            .iter()
            .filter(|w| w.extends(s))
            .map(|w| w.suffix(s.len()))
            .collect()
    };
    let witness: NatSet = c
        .witness
        .iter()
        .filter(|&k| k >= s.len() as u64)
        .map(|k| k - s.len() as u64)
        .collect();
    Ok(FilterCertificate {
        subject: strip(&c.subject),
        cover: CoverFamily::new(c.cover.pieces.iter().map(&strip).collect()),
        witness,
    })
}

/// Splits a point set by its length-`n` prefixes: each class maps a prefix
/// to the set of tails occurring under it. Concatenating every prefix with
/// its tails recovers the set exactly.
pub fn shift_decomposition(
    points: &BTreeSet<Word>,
    n: u64,
) -> Result<BTreeMap<Word, BTreeSet<Word>>> {
    let mut classes: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for x in points {
        if (x.len() as u64) < n {
            return Err(Error::TooShort {
                needed: n,
                found: x.len() as u64,
            });
        }
        classes
            .entry(x.prefix(n as usize))
            .or_default()
            .insert(x.suffix(n as usize));
    }
    Ok(classes)
}
