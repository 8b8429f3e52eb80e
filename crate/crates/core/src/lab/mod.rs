//! Central-value conditions and the commutativity criteria checked on them.

pub mod condition;
pub mod criteria;
pub mod search;
pub mod sweep;

pub use condition::{check_condition, check_condition_exhaustive, ConditionKind, ConditionWitness, Sign};
pub use criteria::{
    check_annihilator_lemma, check_nonzero_associate, check_restriction_nonzero, verify_single_map_criterion,
    verify_two_map_criterion, Criterion, Hypotheses, LemmaReport, StatementOutcome, TheoremVerdict,
};
pub use search::{search_problem, EvidenceReport, Problem};
pub use sweep::{sweep, SweepReport};
