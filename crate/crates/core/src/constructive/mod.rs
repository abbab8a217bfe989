//! Constructive procedures with full traces and the exact bound arithmetic.

mod bounds;
mod grading;
mod lemma1;
mod report;
mod theorem2;

pub use bounds::{compute_bounds, guaranteed_length, guaranteed_length_u64, BoundsParameters};
pub use grading::{refine_grading, ColorClassPartition, Grading};
pub use lemma1::{
    find_global_witness, lemma1_procedure, lemma1_procedure_with, outcome_violations, BfsRecord, Lemma1Options,
    Lemma1Outcome, Lemma1Trace, Lemma1Variant, PathSource, Precondition, WitnessSource,
};
pub use report::{lemma1_report, theorem2_report};
pub use theorem2::{
    theorem2_colorful_path, theorem2_colorful_path_with, RecursionRecord, Theorem2Options, Theorem2Result,
    Theorem2Trace,
};
