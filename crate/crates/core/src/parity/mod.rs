//! Parity claims on hauptmodul coefficients: quadratic-form hypotheses,
//! shifted-sum identities and interval witness checks.

pub mod claims;
pub mod forms;
pub mod lemma;

pub use claims::{
    check_claim, check_claim_on, density_stats, make_claim, required_precision, search,
    verify_family, DensityStats, Family, FamilySummary, IntervalClaim, Parity, Verdict,
    WitnessReport,
};
pub use forms::{solve_form, FormShape, Hypothesis, QuadraticForm};
pub use lemma::{lemma_lhs, verify_lemma, verify_lemma_on, Lemma, LemmaReport, ShiftSequence};
