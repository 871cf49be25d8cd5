//! Recognition of interval bigraphs with a fixed bipartition.
//!
//! [`recognize`] returns a [`Certificate`]: a pattern-free vertex ordering
//! with an interval model, or a witness of non-membership that
//! [`verify_certificate`] can check without rerunning the recognizer.

pub mod bigraph;
pub mod bits;
pub mod engine;
pub mod error;
pub mod generators;
pub mod pair_digraph;
pub mod par;
pub mod recognizer;
pub mod witness;

pub use bigraph::{
    build_intervals, check_ordering, connected_components, parse_bigraph, validate_intervals, Bigraph, Color, Interval,
    IntervalModel, IntervalRecord, Ordering, PatternViolation,
};
pub use error::{Error, Result};
pub use pair_digraph::{build_pair_digraph, strong_components, ComponentSet, PairDigraph, PairVertex};
pub use par::Exec;
pub use recognizer::{recognize, recognize_with, Certificate, Options, Recognition, RecognitionTrace, Witness};
pub use witness::{enumerate_bigraphs, oracle_recognize, verify_certificate, OracleResult};
