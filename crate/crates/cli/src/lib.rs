//! Scenario layer over the `raisonnier` library.
//!
//! A [`Scenario`] names a [`Kind`] and carries either an explicit `payload`
//! (validated against that kind's input schema before anything runs) or a
//! `seed` from which a payload is generated deterministically. Running a
//! scenario yields a [`Report`] whose [`Status`] records whether the checked
//! claim holds.
//!
//! Failures come in two classes and callers are expected to exit
//! accordingly:
//!
//! * a claim that was checked and does not hold (a blocked diagonalization,
//!   an uncaptured point, a witness that is not rapid) is reported as a
//!   [`Status::Fail`] report — exit code 1;
//! * input that never reaches the mathematics (unparsable records, payloads
//!   violating a kind's schema, misaligned or malformed objects) surfaces as
//!   [`ScenarioError::Schema`] — exit code 2.

use std::collections::BTreeSet;
use std::fmt;

use raisonnier::codec;
use raisonnier::generate;
use raisonnier::{
    capture_set, check_certificate, check_rapidity_witness, diagonalize, encode_family,
    eventual_closure_cover, make_partition, prepend_cover_transport, pull_capture_through_encoding,
    sigma_union_witness, slalom_from_cover, split_set, unprepend_cover_transport,
    witness_from_binary_slalom, BinarySlalom, CaptureSetOutcome, CoverFamily, Error, FamilyOfSeqs,
    FilterCertificate, NatSet, Slalom, SlalomCatalog, WidthFunction, Word,
};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Default payload size used when a seeded scenario does not fix one.
pub const DEFAULT_SIZE: u64 = 8;
/// Default word-length budget used when a seeded scenario does not fix one.
pub const DEFAULT_HORIZON: u64 = 16;

/// Exit code for a run whose reports all pass.
pub const EXIT_OK: u8 = 0;
/// Exit code when some checked claim fails.
pub const EXIT_FAIL: u8 = 1;
/// Exit code for malformed input that never reaches the mathematics.
pub const EXIT_SCHEMA: u8 = 2;

/// The scenario kinds the runner understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
#[derive(clap::ValueEnum)]
pub enum Kind {
    /// Encode a word along a partition and decode it back (and/or the
    /// reverse direction starting from a sequence).
    Roundtrip,
    /// Capture a set of points in a binary slalom.
    Capture,
    /// Check the count bounds of a rapidity witness against a target.
    Rapidity,
    /// Build a binary slalom from a cover and a rapidity witness.
    BuildSlalom,
    /// Extract a witness and piece descriptions from an identity-width
    /// binary slalom.
    WitnessFromSlalom,
    /// Validate a filter certificate.
    Certificate,
    /// Run the stagewise diagonalization against a cover.
    Diagonalize,
    /// Close a cover piece under prefix exchange and compare splitting
    /// points.
    Closure,
    /// Move a certificate along a prefix (prepend or unprepend) and
    /// re-validate it.
    Transport,
    /// Encode a sequence family over its dominator; optionally pull a
    /// slalom capture through the encoding.
    Pipeline,
    /// Union countably many rapidity witnesses at finite scale.
    SigmaUnion,
    /// Build a slalom catalog and answer membership queries.
    Catalog,
}

impl Kind {
    /// Every kind, in the order the suite runs them.
    pub const ALL: [Kind; 12] = [
        Kind::Roundtrip,
        Kind::Capture,
        Kind::Rapidity,
        Kind::BuildSlalom,
        Kind::WitnessFromSlalom,
        Kind::Certificate,
        Kind::Diagonalize,
        Kind::Closure,
        Kind::Transport,
        Kind::Pipeline,
        Kind::SigmaUnion,
        Kind::Catalog,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Roundtrip => "roundtrip",
            Kind::Capture => "capture",
            Kind::Rapidity => "rapidity",
            Kind::BuildSlalom => "build-slalom",
            Kind::WitnessFromSlalom => "witness-from-slalom",
            Kind::Certificate => "certificate",
            Kind::Diagonalize => "diagonalize",
            Kind::Closure => "closure",
            Kind::Transport => "transport",
            Kind::Pipeline => "pipeline",
            Kind::SigmaUnion => "sigma-union",
            Kind::Catalog => "catalog",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One scenario record: a kind plus either an explicit payload or the
/// parameters to generate one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
}

/// Whether the scenario's checked claim holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

/// Output formats for reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// The result of running one scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: Kind,
    pub status: Status,
    pub detail: Value,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line per report, deterministic for a fixed report.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string(self).expect("reports serialize"),
            Format::Text => {
                let tag = match self.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                };
                let detail = serde_json::to_string(&self.detail).expect("details serialize");
                format!("{tag} {} {detail}", self.kind)
            }
        }
    }
}

/// Errors that keep a scenario from running at all.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    /// The record or its payload violates the input schema; callers should
    /// exit with [`EXIT_SCHEMA`].
    #[error("schema violation: {0}")]
    Schema(String),
}

/// Errors that express a failed mathematical claim rather than malformed
/// input; they become `Fail` reports instead of schema errors.
fn is_verdict_error(e: &Error) -> bool {
    matches!(
        e,
        Error::WitnessGap { .. }
            | Error::BudgetExceeded { .. }
            | Error::WidthHypothesis { .. }
            | Error::NotDominated { .. }
            | Error::TargetExhausted { .. }
            | Error::UnknownDominator { .. }
            | Error::FamilyNotCaptured { .. }
            | Error::SelfCheckFailed { .. }
    )
}

fn finish(
    kind: Kind,
    outcome: raisonnier::Result<(Status, Value)>,
) -> Result<Report, ScenarioError> {
    match outcome {
        Ok((status, detail)) => Ok(Report {
            kind,
            status,
            detail,
        }),
        Err(e) if is_verdict_error(&e) => Ok(Report {
            kind,
            status: Status::Fail,
            detail: json!({ "error": e.to_string() }),
        }),
        Err(e) => Err(ScenarioError::Schema(format!("{kind}: {e}"))),
    }
}

fn parse<P: serde::de::DeserializeOwned>(kind: Kind, value: Value) -> Result<P, ScenarioError> {
    serde_json::from_value(value).map_err(|e| ScenarioError::Schema(format!("{kind} payload: {e}")))
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

// ---------------------------------------------------------------------------
// Payload schemas
// ---------------------------------------------------------------------------

/// Interval widths plus a word and/or a sequence to push through the codec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundtripPayload {
    pub deltas: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapturePayload {
    pub slalom: BinarySlalom,
    pub points: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RapidityPayload {
    pub witness: NatSet,
    pub target: Vec<u64>,
    pub bound: WidthFunction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildSlalomPayload {
    pub deltas: Vec<u64>,
    pub pieces: CoverFamily,
    pub witness: NatSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFromSlalomPayload {
    pub slalom: BinarySlalom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificatePayload {
    pub certificate: FilterCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalizePayload {
    pub characteristic: Word,
    pub enumeration: NatSet,
    pub pieces: CoverFamily,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosurePayload {
    pub pieces: CoverFamily,
    pub piece: usize,
    pub new_prefix: Word,
    pub old_prefix: Word,
    pub len: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Prepend,
    Unprepend,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportPayload {
    pub certificate: FilterCertificate,
    pub prefix: Word,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelinePayload {
    pub family: FamilyOfSeqs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slalom: Option<Slalom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaUnionPayload {
    pub witnesses: Vec<NatSet>,
    pub target: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFamily {
    pub points: BTreeSet<Word>,
    pub slalom: BinarySlalom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogPayload {
    pub families: Vec<CatalogFamily>,
    pub dominators: Vec<Vec<u64>>,
    pub queries: Vec<Vec<u64>>,
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

/// Runs one scenario. A missing payload is generated from the scenario's
/// seed; a record with neither payload nor seed is a schema violation.
pub fn run_scenario(scenario: &Scenario) -> Result<Report, ScenarioError> {
    let value = match (&scenario.payload, scenario.seed) {
        (Some(v), _) => v.clone(),
        (None, Some(seed)) => {
            let size = scenario.size.unwrap_or(DEFAULT_SIZE);
            let horizon = scenario.horizon.unwrap_or(DEFAULT_HORIZON);
            generate_instance(scenario.kind, seed, size, horizon)?
                .payload
                .expect("generated scenarios carry a payload")
        }
        (None, None) => {
            return Err(ScenarioError::Schema(
                "scenario carries neither a payload nor a seed".into(),
            ))
        }
    };
    dispatch(scenario.kind, value)
}

fn dispatch(kind: Kind, value: Value) -> Result<Report, ScenarioError> {
    let outcome = match kind {
        Kind::Roundtrip => {
            let p: RoundtripPayload = parse(kind, value)?;
            if p.word.is_none() && p.seq.is_none() {
                return Err(ScenarioError::Schema(
                    "roundtrip payload needs a word or a seq".into(),
                ));
            }
            exec_roundtrip(&p)
        }
        Kind::Capture => exec_capture(&parse(kind, value)?),
        Kind::Rapidity => exec_rapidity(&parse(kind, value)?),
        Kind::BuildSlalom => exec_build_slalom(&parse(kind, value)?),
        Kind::WitnessFromSlalom => exec_witness_from_slalom(&parse(kind, value)?),
        Kind::Certificate => exec_certificate(&parse(kind, value)?),
        Kind::Diagonalize => exec_diagonalize(&parse(kind, value)?),
        Kind::Closure => exec_closure(&parse(kind, value)?),
        Kind::Transport => exec_transport(&parse(kind, value)?),
        Kind::Pipeline => exec_pipeline(&parse(kind, value)?),
        Kind::SigmaUnion => exec_sigma_union(&parse(kind, value)?),
        Kind::Catalog => exec_catalog(&parse(kind, value)?),
    };
    finish(kind, outcome)
}

fn exec_roundtrip(p: &RoundtripPayload) -> raisonnier::Result<(Status, Value)> {
    let d = make_partition(&p.deltas)?;
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    if let Some(word) = &p.word {
        let seq = codec::encode_point(word, &d)?;
        let restored = codec::decode_seq(&seq, &d)? == *word;
        ok &= restored;
        detail.insert("word".into(), json!(word));
        detail.insert("seq".into(), json!(seq));
        detail.insert("restored".into(), json!(restored));
    }
    if let Some(seq) = &p.seq {
        let decoded = codec::decode_seq(seq, &d)?;
        let reencoded = codec::encode_point(&decoded, &d)?;
        // Re-encoding recovers the input exactly when every entry fits its
        // interval; larger entries decode by truncation, which is lawful,
        // so faithfulness is reported but not required. Decoding what was
        // re-encoded must give the same point back, and that is required.
        let stable = codec::decode_seq(&reencoded, &d)? == decoded;
        ok &= stable;
        detail.insert("decoded".into(), json!(decoded));
        detail.insert("reencoded".into(), json!(reencoded));
        detail.insert("faithful".into(), json!(reencoded == *seq));
        detail.insert("stable".into(), json!(stable));
    }
    Ok((status_of(ok), Value::Object(detail)))
}

fn exec_capture(p: &CapturePayload) -> raisonnier::Result<(Status, Value)> {
    let points: BTreeSet<Word> = p.points.iter().cloned().collect();
    let outcome = capture_set(&points, &p.slalom)?;
    let ok = matches!(outcome, CaptureSetOutcome::AllCaptured { .. });
    Ok((
        status_of(ok),
        serde_json::to_value(&outcome).expect("capture outcomes serialize"),
    ))
}

fn exec_rapidity(p: &RapidityPayload) -> raisonnier::Result<(Status, Value)> {
    let report = check_rapidity_witness(&p.witness, &p.target, &p.bound)?;
    Ok((
        status_of(report.is_rapid()),
        serde_json::to_value(&report).expect("rapidity reports serialize"),
    ))
}

fn exec_build_slalom(p: &BuildSlalomPayload) -> raisonnier::Result<(Status, Value)> {
    let d = make_partition(&p.deltas)?;
    let slalom = slalom_from_cover(&p.pieces, &p.witness, &d)?;
    let width = slalom.check_width()?;
    let capture = capture_set(&p.pieces.union(), &slalom)?;
    let ok = width.is_ok() && matches!(capture, CaptureSetOutcome::AllCaptured { .. });
    Ok((
        status_of(ok),
        json!({ "slalom": slalom, "width": width, "capture": capture }),
    ))
}

fn exec_witness_from_slalom(p: &WitnessFromSlalomPayload) -> raisonnier::Result<(Status, Value)> {
    let recipe = witness_from_binary_slalom(&p.slalom)?;
    let report = recipe.rapidity_report()?;
    Ok((
        status_of(report.is_rapid()),
        json!({
            "witness": recipe.witness(),
            "prefix_counts": recipe.prefix_counts(),
            "rapidity": report,
        }),
    ))
}

fn exec_certificate(p: &CertificatePayload) -> raisonnier::Result<(Status, Value)> {
    let verdict = check_certificate(&p.certificate);
    Ok((
        status_of(verdict.is_valid()),
        serde_json::to_value(&verdict).expect("certificate verdicts serialize"),
    ))
}

fn exec_diagonalize(p: &DiagonalizePayload) -> raisonnier::Result<(Status, Value)> {
    let outcome = diagonalize(&p.characteristic, &p.enumeration, &p.pieces, p.steps)?;
    Ok((
        status_of(outcome.is_escape()),
        serde_json::to_value(&outcome).expect("diagonal outcomes serialize"),
    ))
}

fn exec_closure(p: &ClosurePayload) -> raisonnier::Result<(Status, Value)> {
    let closure = eventual_closure_cover(&p.pieces, p.piece, &p.new_prefix, &p.old_prefix, p.len)?;
    let closure_splits = split_set(closure.iter())?;
    let piece_splits = split_set(p.pieces.pieces[p.piece].iter())?;
    let contained = closure_splits.is_subset(&piece_splits);
    Ok((
        status_of(contained),
        json!({
            "closure": closure,
            "closure_splits": closure_splits,
            "piece_splits": piece_splits,
            "contained": contained,
        }),
    ))
}

fn exec_transport(p: &TransportPayload) -> raisonnier::Result<(Status, Value)> {
    let moved = match p.direction {
        Direction::Prepend => prepend_cover_transport(&p.certificate, &p.prefix)?,
        Direction::Unprepend => unprepend_cover_transport(&p.certificate, &p.prefix)?,
    };
    let verdict = check_certificate(&moved);
    Ok((
        status_of(verdict.is_valid()),
        json!({ "certificate": moved, "verdict": verdict }),
    ))
}

fn exec_pipeline(p: &PipelinePayload) -> raisonnier::Result<(Status, Value)> {
    match &p.slalom {
        Some(slalom) => {
            let report = pull_capture_through_encoding(&p.family, slalom)?;
            Ok((
                status_of(report.all_captured()),
                serde_json::to_value(&report).expect("pull-capture reports serialize"),
            ))
        }
        None => {
            let encoded = encode_family(&p.family)?;
            Ok((
                Status::Pass,
                serde_json::to_value(&encoded).expect("encoded families serialize"),
            ))
        }
    }
}

fn exec_sigma_union(p: &SigmaUnionPayload) -> raisonnier::Result<(Status, Value)> {
    let union = sigma_union_witness(&p.witnesses, &p.target)?;
    Ok((
        Status::Pass,
        serde_json::to_value(&union).expect("sigma unions serialize"),
    ))
}

fn exec_catalog(p: &CatalogPayload) -> raisonnier::Result<(Status, Value)> {
    let families: Vec<(BTreeSet<Word>, BinarySlalom)> = p
        .families
        .iter()
        .map(|f| (f.points.clone(), f.slalom.clone()))
        .collect();
    let catalog = SlalomCatalog::build(&families, p.dominators.clone())?;
    let mut lookups = Vec::new();
    let mut all_hit = true;
    for query in &p.queries {
        let lookup = catalog.lookup(query)?;
        all_hit &= lookup.is_hit();
        lookups.push(lookup);
    }
    Ok((
        status_of(all_hit),
        json!({
            "entries": catalog.entries.len(),
            "duplicate_slaloms": catalog.duplicate_slaloms,
            "lookups": lookups,
        }),
    ))
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

/// A strictly increasing sequence of the given length.
fn increasing_seq(rng: &mut impl Rng, len: usize) -> Vec<u64> {
    let mut next = rng.random_range(0..4u64);
    (0..len)
        .map(|_| {
            let current = next;
            next += rng.random_range(1..=4u64);
            current
        })
        .collect()
}

/// Generates a scenario of the given kind whose run passes. The same
/// arguments always produce the same scenario; `size 0` yields a minimal
/// instance.
pub fn generate_instance(
    kind: Kind,
    seed: u64,
    size: u64,
    horizon: u64,
) -> Result<Scenario, ScenarioError> {
    let mut rng = generate::rng(seed);
    let payload = build_payload(kind, &mut rng, size, horizon)
        .map_err(|e| ScenarioError::Schema(format!("generating a {kind} instance: {e}")))?;
    Ok(Scenario {
        kind,
        seed: Some(seed),
        size: Some(size),
        horizon: Some(horizon),
        payload: Some(payload),
    })
}

fn build_payload(
    kind: Kind,
    rng: &mut impl Rng,
    size: u64,
    horizon: u64,
) -> raisonnier::Result<Value> {
    let value = match kind {
        Kind::Roundtrip => {
            let d = generate::partition(rng, size.clamp(1, 16) as usize, 8);
            let deltas: Vec<u64> = d.points().windows(2).map(|w| w[1] - w[0]).collect();
            let word = generate::word(rng, d.horizon());
            json!(RoundtripPayload {
                deltas,
                word: Some(word),
                seq: None
            })
        }
        Kind::Capture => {
            let d = generate::partition(rng, size.clamp(1, 12) as usize, 4);
            let slalom = generate::binary_slalom(rng, &d, WidthFunction::Constant(2));
            let points: Vec<Word> = (0..size.clamp(1, 8))
                .map(|_| {
                    let from = rng.random_range(0..d.num_intervals());
                    generate::captured_word(rng, &slalom, from)
                })
                .collect();
            json!(CapturePayload { slalom, points })
        }
        Kind::Rapidity => {
            let target = increasing_seq(rng, size.clamp(2, 16) as usize);
            let witness = generate::boundary_witnesses(rng, &target, 1).remove(0);
            json!(RapidityPayload {
                witness,
                target,
                bound: WidthFunction::Identity
            })
        }
        Kind::BuildSlalom => {
            // A piece indexed n is captured only when the partition has at
            // least n² + 2 intervals, and the witness budget is zero below
            // the 18th partition point; size the instance accordingly.
            let pieces = size.clamp(1, 5) as usize;
            let intervals = ((pieces - 1) * (pieces - 1) + 2).max(18);
            let deltas: Vec<u64> = (0..intervals).map(|_| rng.random_range(1..=3)).collect();
            let d = make_partition(&deltas)?;
            let witness = generate::budget_witness(rng, &d);
            let cover = generate::cover_from_witness(rng, &witness, d.horizon(), pieces, 8);
            json!(BuildSlalomPayload {
                deltas,
                pieces: cover,
                witness
            })
        }
        Kind::WitnessFromSlalom => {
            let d = generate::partition(rng, size.clamp(2, 12) as usize, 3);
            let slalom = generate::binary_slalom(rng, &d, WidthFunction::Identity);
            json!(WitnessFromSlalomPayload { slalom })
        }
        Kind::Certificate => {
            let certificate =
                generate::certificate(rng, horizon.clamp(1, 64), size.clamp(1, 5) as usize, 6)?;
            json!(CertificatePayload { certificate })
        }
        Kind::Diagonalize => {
            let len = horizon.clamp(8, 64);
            let instance = generate::diagonal_instance(rng, len, size.clamp(1, 6) as usize, None);
            json!(DiagonalizePayload {
                characteristic: instance.characteristic,
                enumeration: instance.enumeration,
                pieces: instance.cover,
                steps: instance.steps,
            })
        }
        Kind::Closure => {
            let len = horizon.clamp(2, 32);
            let count = size.clamp(1, 6) as usize;
            let pieces = CoverFamily::new(
                (0..count)
                    .map(|_| {
                        (0..rng.random_range(1..=4usize))
                            .map(|_| generate::word(rng, len))
                            .collect()
                    })
                    .collect(),
            );
            let prefix_len = (len / 2) as usize;
            let old_prefix = pieces.pieces[0]
                .iter()
                .next()
                .expect("generated pieces are non-empty")
                .prefix(prefix_len);
            let new_prefix = generate::word(rng, prefix_len as u64);
            json!(ClosurePayload {
                pieces,
                piece: 0,
                new_prefix,
                old_prefix,
                len
            })
        }
        Kind::Transport => {
            let certificate =
                generate::certificate(rng, horizon.clamp(1, 64), size.clamp(1, 4) as usize, 4)?;
            let prefix = generate::word(rng, size.clamp(1, 4));
            json!(TransportPayload {
                certificate,
                prefix,
                direction: Direction::Prepend
            })
        }
        Kind::Pipeline => {
            let count = size.clamp(1, 10) as usize;
            let len = size.clamp(1, 10) as usize;
            let family = generate::family(rng, count, len, 20);
            // One cell per index holding exactly the values the members
            // take there, so every member is captured from index 0 on.
            let cells: Vec<BTreeSet<u64>> = (0..family.seq_len().unwrap_or(0))
                .map(|n| family.seqs().iter().map(|s| s[n]).collect())
                .collect();
            let width = WidthFunction::Constant(family.len() as u64);
            json!(PipelinePayload {
                family,
                slalom: Some(Slalom { cells, width })
            })
        }
        Kind::SigmaUnion => {
            let target = increasing_seq(rng, size.clamp(2, 12) as usize);
            let witnesses = generate::boundary_witnesses(rng, &target, target.len());
            json!(SigmaUnionPayload { witnesses, target })
        }
        Kind::Catalog => {
            let instance = generate::catalog_instance(
                rng,
                size.clamp(1, 4) as usize,
                3,
                size.clamp(2, 8) as usize,
                12,
            )?;
            json!(CatalogPayload {
                families: instance
                    .families
                    .into_iter()
                    .map(|(points, slalom)| CatalogFamily { points, slalom })
                    .collect(),
                dominators: instance.dominators,
                queries: instance.queries,
            })
        }
    };
    Ok(value)
}
