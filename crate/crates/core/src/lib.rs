//! Finite-horizon combinatorics on Cantor space.
//!
//! Everything here works with explicit finite objects: binary words, finite
//! sets of naturals, interval partitions of an initial segment, and slaloms
//! (width-bounded sequences of finite cells). The library provides
//!
//! * splitting points of word families and threshold certificates for the
//!   eventual inclusion of finite sets ([`word`], [`natset`]);
//! * interval partitions and the big-endian coding between words and
//!   sequences of naturals along a partition ([`partition`], [`codec`]);
//! * slaloms over naturals and over interval words, with capture
//!   certificates ([`slalom`]);
//! * constructions tying covers of point sets to identity-width binary
//!   slaloms and rapidity witnesses ([`rapidity`]);
//! * cover certificates for point sets, diagonalization against a cover,
//!   and prefix/shift transport of certificates ([`filterlab`]);
//! * domination, clipping, family encoding, slalom catalogs, and witness
//!   union arithmetic ([`pipelines`]);
//! * seeded random instance generators for all of the above ([`generate`]).
//!
//! Every construction is paired with an independent check, so results can be
//! re-validated without trusting the construction that produced them.

pub mod codec;
pub mod error;
pub mod filterlab;
pub mod generate;
pub mod natset;
pub mod partition;
pub mod pipelines;
pub mod rapidity;
pub mod slalom;
pub mod word;

pub use error::{Error, Result};
pub use filterlab::{
    check_certificate, diagonalize, eventual_closure_cover, powerset_points,
    prepend_cover_transport, shift_decomposition, union_certificate, unprepend_cover_transport,
    witness_of_cover, CertificateVerdict, DiagonalOutcome, FilterCertificate, StageCase,
    StageReport,
};
pub use natset::{eventually_subset, shift_set, EventualCertificate, NatSet, SubsetReport};
pub use partition::{make_partition, PartitioningPrefix};
pub use pipelines::{
    clip_to_bound, dominate_family, encode_family, pair_union_bound, partreal,
    pull_capture_through_encoding, sigma_union_witness, CatalogEntry, CatalogHit, CatalogLookup,
    CatalogMiss, ClipReport, EncodedFamily, FamilyOfSeqs, PairUnionReport, PairUnionVerdict,
    PullCaptureReport, SigmaUnion, SlalomCatalog,
};
pub use rapidity::{
    check_rapidity_witness, reparam_target, slalom_from_cover, witness_budget,
    witness_from_binary_slalom, CoverFamily, CoverRecipe, RapidityReport, RapidityWitness,
};
pub use slalom::{
    capture_set, goes_through_point, BinarySlalom, CaptureCertificate, CaptureSetOutcome, Slalom,
    WidthFunction, WidthVerdict,
};
pub use word::{split_point, split_set, Word};
