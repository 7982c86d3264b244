//! Reasoning and aggregation engine for bipolar assumption-based
//! argumentation: extension semantics, quota and oligarchic rule
//! aggregation, preservation checks, and verification suites.

pub mod aggregation;
pub mod framework;
pub mod preservation;
pub mod semantics;
pub mod verify;

pub use aggregation::{aggregate, AggregationError, AggregationSpec, Profile, QuotaKind};
pub use framework::{
    rule_universe, AssumptionSet, Framework, FrameworkError, Rule, Sentence, Signature,
    SignatureError, Violation, MAX_ASSUMPTIONS,
};
pub use preservation::{
    check_disjunctive, check_implicative, check_k_exclusive, check_preservation,
    check_preservation_with_cap, holds, holds_with_cap, PreservationError, PreservationVerdict,
    PropertyId, MAX_EXCLUSIVE_RULES,
};
pub use semantics::{
    enumerate, enumerate_with_cap, is_acceptable, is_acyclic, is_admissible, is_coherent,
    is_complete, is_extension, is_set_stable, well_founded_nonempty, ExtensionReport,
    SemanticsError, SemanticsId, DEFAULT_ENUM_CAP,
};
pub use verify::{
    builtin_scenarios, check_theorem, random_profile, Expectation, GenParams, Scenario,
    ScenarioInput, ScenarioOutcome, TheoremBudget, TheoremReport, VerifyError, THEOREM_IDS,
};
