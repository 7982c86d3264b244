//! Built-in scenarios reproducing the worked examples and
//! counterexamples, random profile generation, and the theorem
//! falsification suite.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::aggregation::{
    aggregate, AggregationError, AggregationSpec, Profile, QuotaKind,
};
use crate::framework::{
    rule_universe, AssumptionSet, Framework, Rule, Signature, SignatureError, MAX_ASSUMPTIONS,
};
use crate::preservation::{
    attack_ring, check_disjunctive, check_implicative, check_k_exclusive, check_preservation,
    holds, PreservationError, PreservationVerdict, PropertyId,
};
use crate::semantics::{enumerate, SemanticsError, SemanticsId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("invalid generator parameters: {0}")]
    BadParams(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("scenario {id}: inconsistent input/expectation combination")]
    BadScenario { id: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Aggregation(#[from] AggregationError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Preservation(#[from] PreservationError),
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

/// Parameters for random profile generation. Attack rules are included
/// per agent with probability `rule_density`, support rules with
/// probability `rule_density * support_fraction`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub assumption_count: usize,
    pub agent_count: usize,
    pub rule_density: f64,
    pub support_fraction: f64,
    pub exclude_self_attack: bool,
    pub exclude_self_support: bool,
    pub seed: u64,
}

impl GenParams {
    pub fn new(assumption_count: usize, agent_count: usize, seed: u64) -> Self {
        GenParams {
            assumption_count,
            agent_count,
            rule_density: 0.5,
            support_fraction: 1.0,
            exclude_self_attack: true,
            exclude_self_support: true,
            seed,
        }
    }

    fn check(&self) -> Result<(), VerifyError> {
        if self.assumption_count == 0 || self.assumption_count > MAX_ASSUMPTIONS {
            return Err(VerifyError::BadParams(format!(
                "assumption_count {} out of range 1..={MAX_ASSUMPTIONS}",
                self.assumption_count
            )));
        }
        if self.agent_count < 2 {
            return Err(VerifyError::BadParams("agent_count must be at least 2".into()));
        }
        for (name, v) in [("rule_density", self.rule_density), ("support_fraction", self.support_fraction)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(VerifyError::BadParams(format!("{name} {v} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// The generated signature for a given assumption count: single-letter
/// assumption names A, B, ... with fresh `~X` contraries.
pub fn generated_signature(assumption_count: usize) -> Result<Arc<Signature>, SignatureError> {
    let names = (0..assumption_count).map(|i| ((b'A' + i as u8) as char).to_string());
    Signature::with_default_contraries(names)
}

/// Draws a profile deterministically from the seed. Rules come from the
/// universe of attack rules (head a canonical contrary) and support rules
/// (head an assumption), honoring the exclusion flags.
pub fn random_profile(params: &GenParams) -> Result<Profile, VerifyError> {
    params.check()?;
    let signature = generated_signature(params.assumption_count)?;
    let universe = rule_universe(&signature, params.exclude_self_attack, params.exclude_self_support);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut agents = Vec::with_capacity(params.agent_count);
    for _ in 0..params.agent_count {
        let mut rules = Vec::new();
        for rule in &universe {
            let is_support = signature.assumption_index(&rule.head).is_some();
            let p = if is_support {
                params.rule_density * params.support_fraction
            } else {
                params.rule_density
            };
            if rng.gen_bool(p) {
                rules.push(rule.clone());
            }
        }
        agents.push(rules);
    }
    Ok(Profile::new(signature, agents)?)
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

/// Input side of a scenario: a single framework, a multi-agent profile,
/// or one of the meta-property witness constructions.
#[derive(Debug, Clone)]
pub enum ScenarioInput {
    Framework(Framework),
    Profile(Profile),
    Implicative { signature: Arc<Signature>, base: BTreeSet<Rule>, r1: Rule, r2: Rule, r3: Rule },
    Disjunctive { signature: Arc<Signature>, base: BTreeSet<Rule>, r1: Rule, r2: Rule },
    KExclusive { signature: Arc<Signature>, rules: BTreeSet<Rule>, samples: usize, seed: u64 },
}

/// What a scenario expects from the engine.
#[derive(Debug, Clone)]
pub enum Expectation {
    /// Aggregating the profile yields exactly these rules.
    AggregatedRules(BTreeSet<Rule>),
    /// Enumerating a semantics (after aggregation, for profiles) yields
    /// exactly these extensions.
    Extensions { semantics: SemanticsId, extensions: Vec<AssumptionSet>, exists: bool },
    /// The preservation check returns this verdict.
    Verdict(PreservationVerdict),
    /// The property holds (or not) on the framework.
    Holds(bool),
    /// The meta-property check (implicative / disjunctive / k-exclusive)
    /// returns this.
    MetaHolds(bool),
    /// Strict validation reports no violations.
    ValidStrict,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub description: String,
    pub input: ScenarioInput,
    pub spec: Option<AggregationSpec>,
    pub property: Option<PropertyId>,
    pub expected: Expectation,
}

/// One scenario's result: pass/fail plus a rendered actual-vs-expected
/// detail line.
#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Scenario {
    fn target_framework(&self) -> Result<Framework, VerifyError> {
        match (&self.input, &self.spec) {
            (ScenarioInput::Framework(fw), None) => Ok(fw.clone()),
            (ScenarioInput::Profile(p), Some(spec)) => Ok(aggregate(p, spec)?),
            _ => Err(VerifyError::BadScenario { id: self.id.clone() }),
        }
    }

    pub fn run(&self) -> Result<ScenarioOutcome, VerifyError> {
        let bad = || VerifyError::BadScenario { id: self.id.clone() };
        let (passed, detail) = match &self.expected {
            Expectation::AggregatedRules(expected) => {
                let fw = self.target_framework()?;
                let sig = fw.signature().clone();
                let render = |rules: &BTreeSet<Rule>| {
                    let parts: Vec<String> = rules.iter().map(|r| r.display(&sig)).collect();
                    format!("{{{}}}", parts.join(", "))
                };
                (
                    fw.rules() == expected,
                    format!("rules {} (expected {})", render(fw.rules()), render(expected)),
                )
            }
            Expectation::Extensions { semantics, extensions, exists } => {
                let fw = self.target_framework()?;
                let report = enumerate(&fw, *semantics)?;
                let sig = fw.signature().clone();
                let render = |exts: &[AssumptionSet]| {
                    let parts: Vec<String> = exts.iter().map(|e| e.display(&sig)).collect();
                    format!("[{}]", parts.join(", "))
                };
                (
                    report.extensions == *extensions && report.exists == *exists,
                    format!(
                        "{semantics} extensions {} exists={} (expected {} exists={})",
                        render(&report.extensions),
                        report.exists,
                        render(extensions),
                        exists
                    ),
                )
            }
            Expectation::Verdict(expected) => {
                let (profile, spec) = match (&self.input, &self.spec) {
                    (ScenarioInput::Profile(p), Some(s)) => (p, s),
                    _ => return Err(bad()),
                };
                let property = self.property.as_ref().ok_or_else(bad)?;
                let verdict = check_preservation(profile, spec, property)?;
                (
                    verdict == *expected,
                    format!("verdict {} (expected {})", verdict.tag(), expected.tag()),
                )
            }
            Expectation::Holds(expected) => {
                let fw = self.target_framework()?;
                let property = self.property.as_ref().ok_or_else(bad)?;
                let actual = holds(&fw, property)?;
                (actual == *expected, format!("holds {actual} (expected {expected})"))
            }
            Expectation::MetaHolds(expected) => {
                let property = self.property.as_ref().ok_or_else(bad)?;
                let actual = match &self.input {
                    ScenarioInput::Implicative { signature, base, r1, r2, r3 } => {
                        check_implicative(signature, base, r1, r2, r3, property)?
                    }
                    ScenarioInput::Disjunctive { signature, base, r1, r2 } => {
                        check_disjunctive(signature, base, r1, r2, property)?
                    }
                    ScenarioInput::KExclusive { signature, rules, samples, seed } => {
                        check_k_exclusive(signature, rules, property, *samples, *seed)?
                    }
                    _ => return Err(bad()),
                };
                (actual == *expected, format!("meta-check {actual} (expected {expected})"))
            }
            Expectation::ValidStrict => {
                let fw = self.target_framework()?;
                let violations = fw.validate(true);
                let sig = fw.signature().clone();
                let rendered: Vec<String> = violations.iter().map(|v| v.display(&sig)).collect();
                (violations.is_empty(), format!("strict violations {rendered:?} (expected none)"))
            }
        };
        Ok(ScenarioOutcome { id: self.id.clone(), passed, detail })
    }
}

fn set(indices: &[usize]) -> AssumptionSet {
    AssumptionSet::from_indices(indices.iter().copied())
}

struct ScenarioBuilder {
    scenarios: Vec<Scenario>,
}

impl ScenarioBuilder {
    fn push(
        &mut self,
        id: &str,
        description: &str,
        input: ScenarioInput,
        spec: Option<AggregationSpec>,
        property: Option<PropertyId>,
        expected: Expectation,
    ) {
        self.scenarios.push(Scenario {
            id: id.to_owned(),
            description: description.to_owned(),
            input,
            spec,
            property,
            expected,
        });
    }
}

/// All built-in scenarios. Expectations are frozen values the engine must
/// reproduce exactly (canonically sorted).
pub fn builtin_scenarios() -> Vec<Scenario> {
    let mut b = ScenarioBuilder { scenarios: Vec::new() };

    // -- s01/s02: three-agent running example for quota and oligarchic rules.
    {
        let sig = generated_signature(4).expect("signature");
        let profile = Profile::new(
            sig.clone(),
            vec![
                vec![Rule::attack(&sig, 0, 1)],
                vec![Rule::support(&sig, 0, 2)],
                vec![Rule::attack(&sig, 0, 1), Rule::support(&sig, 0, 3)],
            ],
        )
        .expect("profile");
        let union: BTreeSet<Rule> = [
            Rule::attack(&sig, 0, 1),
            Rule::support(&sig, 0, 2),
            Rule::support(&sig, 0, 3),
        ]
        .into();
        let only_attack: BTreeSet<Rule> = [Rule::attack(&sig, 0, 1)].into();
        let quota_cases: [(&str, AggregationSpec, BTreeSet<Rule>); 4] = [
            ("s01-weak-majority", AggregationSpec::Named(QuotaKind::WeakMajority), union.clone()),
            ("s01-nomination", AggregationSpec::Named(QuotaKind::Nomination), union.clone()),
            ("s01-strict-majority", AggregationSpec::Named(QuotaKind::StrictMajority), only_attack.clone()),
            ("s01-unanimity", AggregationSpec::Named(QuotaKind::Unanimity), BTreeSet::new()),
        ];
        for (id, spec, expected) in quota_cases {
            b.push(
                id,
                "three-agent quota aggregation example",
                ScenarioInput::Profile(profile.clone()),
                Some(spec),
                None,
                Expectation::AggregatedRules(expected),
            );
        }
        b.push(
            "s02-oligarchy-1-3",
            "oligarchic aggregation with veto agents 1 and 3",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Oligarchy([1, 3].into())),
            None,
            Expectation::AggregatedRules(only_attack),
        );
        b.push(
            "s02-oligarchy-all",
            "oligarchic aggregation with all agents vetoing coincides with unanimity",
            ScenarioInput::Profile(profile),
            Some(AggregationSpec::Oligarchy([1, 2, 3].into())),
            None,
            Expectation::AggregatedRules(BTreeSet::new()),
        );
    }

    // -- s03: admissibility preservation counterexample (quota 2 breaks it,
    //    nomination does not).
    {
        let sig = generated_signature(4).expect("signature");
        let profile = Profile::new(
            sig.clone(),
            vec![
                vec![],
                vec![Rule::attack(&sig, 3, 1), Rule::attack(&sig, 2, 3)],
                vec![Rule::attack(&sig, 3, 0), Rule::attack(&sig, 2, 3), Rule::support(&sig, 0, 1)],
            ],
        )
        .expect("profile");
        let prop = PropertyId::Extension(SemanticsId::Admissible, set(&[0, 1, 2]));
        for agent in 0..3 {
            b.push(
                &format!("s03-agent{}-admissible", agent + 1),
                "{A,B,C} is admissible for each agent",
                ScenarioInput::Framework(profile.agent_framework(agent)),
                None,
                Some(prop.clone()),
                Expectation::Holds(true),
            );
        }
        b.push(
            "s03-quota2",
            "quota 2 loses the defense of C and violates admissibility",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Quota(2)),
            Some(prop.clone()),
            Expectation::Verdict(PreservationVerdict::Violated),
        );
        b.push(
            "s03-nomination",
            "nomination preserves admissibility",
            ScenarioInput::Profile(profile),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            Some(prop),
            Expectation::Verdict(PreservationVerdict::Preserved),
        );
    }

    // -- s04: set-stable preservation counterexample.
    {
        let sig = generated_signature(4).expect("signature");
        let profile = Profile::new(
            sig.clone(),
            vec![
                vec![Rule::attack(&sig, 3, 1), Rule::support(&sig, 1, 0)],
                vec![Rule::attack(&sig, 3, 2)],
                vec![Rule::attack(&sig, 3, 0), Rule::attack(&sig, 2, 3), Rule::support(&sig, 0, 1)],
            ],
        )
        .expect("profile");
        let prop = PropertyId::Extension(SemanticsId::SetStable, set(&[0, 1, 2]));
        for agent in 0..3 {
            b.push(
                &format!("s04-agent{}-set-stable", agent + 1),
                "{A,B,C} is set-stable for each agent",
                ScenarioInput::Framework(profile.agent_framework(agent)),
                None,
                Some(prop.clone()),
                Expectation::Holds(true),
            );
        }
        b.push(
            "s04-quota2-empty",
            "no rule is shared by two agents, so quota 2 empties the rule set",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Quota(2)),
            None,
            Expectation::AggregatedRules(BTreeSet::new()),
        );
        b.push(
            "s04-quota2",
            "with no rules D is unattacked and {A,B,C} stops being set-stable",
            ScenarioInput::Profile(profile),
            Some(AggregationSpec::Quota(2)),
            Some(prop),
            Expectation::Verdict(PreservationVerdict::Violated),
        );
    }

    // -- s05/s06: acceptability of B is implicative and disjunctive.
    {
        let sig = generated_signature(4).expect("signature");
        let imp_base: BTreeSet<Rule> = [Rule::attack(&sig, 2, 0), Rule::support(&sig, 3, 0)].into();
        let (i1, i2, i3) = (Rule::attack(&sig, 1, 2), Rule::attack(&sig, 0, 1), Rule::attack(&sig, 2, 3));
        let dis_base: BTreeSet<Rule> = [Rule::attack(&sig, 1, 0), Rule::support(&sig, 3, 2)].into();
        let (d1, d2) = (Rule::attack(&sig, 0, 2), Rule::attack(&sig, 0, 3));
        for sem in SemanticsId::ACCEPTABILITY {
            b.push(
                &format!("s05-implicative-{sem}"),
                "acceptability of B is implicative",
                ScenarioInput::Implicative {
                    signature: sig.clone(),
                    base: imp_base.clone(),
                    r1: i1.clone(),
                    r2: i2.clone(),
                    r3: i3.clone(),
                },
                None,
                Some(PropertyId::Acceptable(1, sem)),
                Expectation::MetaHolds(true),
            );
            b.push(
                &format!("s06-disjunctive-{sem}"),
                "acceptability of B is disjunctive",
                ScenarioInput::Disjunctive {
                    signature: sig.clone(),
                    base: dis_base.clone(),
                    r1: d1.clone(),
                    r2: d2.clone(),
                },
                None,
                Some(PropertyId::Acceptable(1, sem)),
                Expectation::MetaHolds(true),
            );
        }
    }

    // -- s07: three-assumption acceptability counterexample: nomination
    //    breaks acceptability of C, unanimity keeps it.
    {
        let sig = generated_signature(3).expect("signature");
        let profile = Profile::new(
            sig.clone(),
            vec![
                vec![Rule::attack(&sig, 0, 2), Rule::attack(&sig, 1, 2)],
                vec![Rule::attack(&sig, 1, 0), Rule::attack(&sig, 2, 1)],
                vec![Rule::attack(&sig, 2, 0), Rule::attack(&sig, 0, 1)],
            ],
        )
        .expect("profile");
        b.push(
            "s07-agent1-acceptable",
            "C is acceptable under preferred semantics for agent 1 via {C}",
            ScenarioInput::Framework(profile.agent_framework(0)),
            None,
            Some(PropertyId::Acceptable(2, SemanticsId::Preferred)),
            Expectation::Holds(true),
        );
        b.push(
            "s07-unanimity-preferred",
            "unanimity empties the rules and C stays acceptable",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Unanimity)),
            Some(PropertyId::Acceptable(2, SemanticsId::Preferred)),
            Expectation::Verdict(PreservationVerdict::Preserved),
        );
        b.push(
            "s07-nomination-preferred",
            "nomination keeps every singleton preferred, so C stays credulously acceptable",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            Some(PropertyId::Acceptable(2, SemanticsId::Preferred)),
            Expectation::Verdict(PreservationVerdict::Preserved),
        );
        b.push(
            "s07-nomination-wf",
            "the nomination aggregate has an empty well-founded extension",
            ScenarioInput::Profile(profile),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            Some(PropertyId::Acceptable(2, SemanticsId::WellFounded)),
            Expectation::Verdict(PreservationVerdict::Violated),
        );
    }

    // -- s08/s09: five-assumption extension constructions. The witness
    //    cycle A -> D -> C -> B -> A has even length, so the alternating
    //    set {B,D} keeps defending itself wherever the full cycle forms.
    //    Only the uniqueness-based semantics fit the patterns: implicative
    //    holds for well-founded and ideal, disjunctive for neither, since
    //    in the disjunctive base the support D <- E already pins {B,D,E}
    //    as the unique complete extension with no extra rule adopted.
    {
        let sig = generated_signature(5).expect("signature");
        let imp_base: BTreeSet<Rule> = [
            Rule::attack(&sig, 2, 3),
            Rule::attack(&sig, 0, 1),
            Rule::support(&sig, 4, 3),
        ]
        .into();
        let (i1, i2, i3) = (Rule::attack(&sig, 1, 2), Rule::attack(&sig, 3, 0), Rule::attack(&sig, 0, 4));
        let dis_base: BTreeSet<Rule> = [
            Rule::attack(&sig, 2, 3),
            Rule::attack(&sig, 1, 2),
            Rule::attack(&sig, 0, 1),
            Rule::attack(&sig, 3, 0),
            Rule::support(&sig, 3, 4),
        ]
        .into();
        let (d1, d2) = (Rule::attack(&sig, 2, 4), Rule::attack(&sig, 0, 4));
        let delta = set(&[1, 3, 4]);
        let implicative_truth = [
            (SemanticsId::Preferred, false),
            (SemanticsId::Complete, false),
            (SemanticsId::WellFounded, true),
            (SemanticsId::Ideal, true),
        ];
        let disjunctive_truth = [
            (SemanticsId::Preferred, false),
            (SemanticsId::Complete, false),
            (SemanticsId::WellFounded, false),
            (SemanticsId::Ideal, false),
        ];
        for (sem, expected) in implicative_truth {
            b.push(
                &format!("s08-implicative-{sem}"),
                "five-assumption implicative construction for whole extensions",
                ScenarioInput::Implicative {
                    signature: sig.clone(),
                    base: imp_base.clone(),
                    r1: i1.clone(),
                    r2: i2.clone(),
                    r3: i3.clone(),
                },
                None,
                Some(PropertyId::Extension(sem, delta)),
                Expectation::MetaHolds(expected),
            );
        }
        for (sem, expected) in disjunctive_truth {
            b.push(
                &format!("s09-disjunctive-{sem}"),
                "five-assumption disjunctive construction for whole extensions",
                ScenarioInput::Disjunctive {
                    signature: sig.clone(),
                    base: dis_base.clone(),
                    r1: d1.clone(),
                    r2: d2.clone(),
                },
                None,
                Some(PropertyId::Extension(sem, delta)),
                Expectation::MetaHolds(expected),
            );
        }
    }

    // -- s10: three-assumption, four-agent extension counterexample.
    {
        let sig = generated_signature(3).expect("signature");
        let first = vec![Rule::attack(&sig, 1, 0), Rule::attack(&sig, 2, 1)];
        let second = vec![Rule::attack(&sig, 0, 1), Rule::attack(&sig, 1, 2)];
        let profile = Profile::new(
            sig.clone(),
            vec![first.clone(), first, second.clone(), second],
        )
        .expect("profile");
        b.push(
            "s10-unanimity-preferred",
            "unanimity cancels all attacks, the full set is the preferred extension",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Unanimity)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[0, 1, 2])],
                exists: true,
            },
        );
        b.push(
            "s10-nomination-preferred",
            "the four-rule union has preferred extensions {A,C} and {B}",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[0, 2]), set(&[1])],
                exists: true,
            },
        );
        b.push(
            "s10-majority-preferred",
            "each rule is held by two of four agents, so quota 2 equals the union",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Quota(2)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[0, 2]), set(&[1])],
                exists: true,
            },
        );
        b.push(
            "s10-nomination-complete",
            "complete extensions add the empty set",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Complete,
                extensions: vec![AssumptionSet::EMPTY, set(&[0, 2]), set(&[1])],
                exists: true,
            },
        );
        b.push(
            "s10-nomination-wf",
            "the well-founded extension collapses to the empty set",
            ScenarioInput::Profile(profile),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::WellFounded,
                extensions: vec![AssumptionSet::EMPTY],
                exists: true,
            },
        );
    }

    // -- s11: four-assumption, three-agent extension counterexample. The
    //    nomination aggregate includes the support D <- A, so no closed set
    //    contains A without D and the preferred extensions are {B,C} and
    //    {D} (the chain through the support also makes A self-attacking).
    {
        let sig = generated_signature(4).expect("signature");
        let profile = Profile::new(
            sig.clone(),
            vec![
                vec![Rule::attack(&sig, 0, 3), Rule::attack(&sig, 3, 1), Rule::attack(&sig, 2, 3)],
                vec![Rule::attack(&sig, 0, 3), Rule::attack(&sig, 1, 3), Rule::attack(&sig, 3, 2)],
                vec![Rule::support(&sig, 3, 0)],
            ],
        )
        .expect("profile");
        b.push(
            "s11-majority-aggregate",
            "only ~A <- D is shared by two agents",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Quota(2)),
            None,
            Expectation::AggregatedRules([Rule::attack(&sig, 0, 3)].into()),
        );
        b.push(
            "s11-majority-preferred",
            "under the majority aggregate D attacks A and {B,C,D} is preferred",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Quota(2)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[1, 2, 3])],
                exists: true,
            },
        );
        b.push(
            "s11-unanimity-preferred",
            "unanimity empties the rules, the full set is preferred",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Unanimity)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[0, 1, 2, 3])],
                exists: true,
            },
        );
        b.push(
            "s11-nomination-preferred",
            "the union keeps the support D <- A, leaving {B,C} and {D} preferred",
            ScenarioInput::Profile(profile.clone()),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[1, 2]), set(&[3])],
                exists: true,
            },
        );
        b.push(
            "s11-nomination-wf",
            "the union's well-founded extension is empty",
            ScenarioInput::Profile(profile),
            Some(AggregationSpec::Named(QuotaKind::Nomination)),
            None,
            Expectation::Extensions {
                semantics: SemanticsId::WellFounded,
                extensions: vec![AssumptionSet::EMPTY],
                exists: true,
            },
        );
    }

    // -- s12/s13: coherence is implicative and disjunctive.
    {
        let sig = generated_signature(4).expect("signature");
        let imp_base: BTreeSet<Rule> = [Rule::attack(&sig, 2, 0), Rule::support(&sig, 3, 0)].into();
        b.push(
            "s12-implicative-coherent",
            "coherence is implicative",
            ScenarioInput::Implicative {
                signature: sig.clone(),
                base: imp_base,
                r1: Rule::attack(&sig, 1, 2),
                r2: Rule::attack(&sig, 0, 1),
                r3: Rule::attack(&sig, 2, 3),
            },
            None,
            Some(PropertyId::Coherent),
            Expectation::MetaHolds(true),
        );
        let dis_base: BTreeSet<Rule> = [
            Rule::attack(&sig, 0, 3),
            Rule::attack(&sig, 1, 0),
            Rule::attack(&sig, 3, 1),
            Rule::support(&sig, 2, 0),
        ]
        .into();
        b.push(
            "s13-disjunctive-coherent",
            "coherence is disjunctive",
            ScenarioInput::Disjunctive {
                signature: sig.clone(),
                base: dis_base,
                r1: Rule::attack(&sig, 3, 2),
                r2: Rule::attack(&sig, 1, 2),
            },
            None,
            Some(PropertyId::Coherent),
            Expectation::MetaHolds(true),
        );
    }

    // -- s14: the attack ring witnesses k-exclusivity.
    {
        let sig = generated_signature(4).expect("signature");
        let ring = attack_ring(&sig);
        for (id, prop) in [
            ("s14-ring-wf-nonempty", PropertyId::WellFoundedNonempty),
            ("s14-ring-acyclic", PropertyId::Acyclic),
        ] {
            b.push(
                id,
                "the attack ring is a k-exclusive witness",
                ScenarioInput::KExclusive {
                    signature: sig.clone(),
                    rules: ring.clone(),
                    samples: 64,
                    seed: 0xBABA,
                },
                None,
                Some(prop),
                Expectation::MetaHolds(true),
            );
        }
    }

    // -- s15: the three-assumption illustration framework.
    {
        let sig = generated_signature(3).expect("signature");
        let fw = Framework::new(sig.clone(), [Rule::attack(&sig, 1, 2), Rule::support(&sig, 2, 0)])
            .expect("framework");
        b.push(
            "s15-preferred",
            "{A,C} is the unique preferred extension of the illustration framework",
            ScenarioInput::Framework(fw),
            None,
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[0, 2])],
                exists: true,
            },
        );
    }

    // -- s16: the Brexit example under both support interpretations.
    {
        let sig = generated_signature(5).expect("signature");
        let deductive = Framework::new(
            sig.clone(),
            [
                Rule::attack(&sig, 0, 1),
                Rule::attack(&sig, 0, 4),
                Rule::support(&sig, 0, 2),
                Rule::support(&sig, 0, 3),
            ],
        )
        .expect("framework");
        let necessary = Framework::new(
            sig.clone(),
            [
                Rule::attack(&sig, 0, 1),
                Rule::attack(&sig, 0, 4),
                Rule::support(&sig, 2, 0),
                Rule::support(&sig, 3, 0),
            ],
        )
        .expect("framework");
        b.push(
            "s16-deductive-valid",
            "the deductive reading passes strict validation",
            ScenarioInput::Framework(deductive.clone()),
            None,
            None,
            Expectation::ValidStrict,
        );
        b.push(
            "s16-necessary-valid",
            "the necessary reading passes strict validation",
            ScenarioInput::Framework(necessary.clone()),
            None,
            None,
            Expectation::ValidStrict,
        );
        b.push(
            "s16-deductive-preferred",
            "A is attacked and undefended, its supporters C and D fall with it",
            ScenarioInput::Framework(deductive),
            None,
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[1, 4])],
                exists: true,
            },
        );
        b.push(
            "s16-necessary-preferred",
            "under the necessary reading only A itself is excluded",
            ScenarioInput::Framework(necessary),
            None,
            None,
            Expectation::Extensions {
                semantics: SemanticsId::Preferred,
                extensions: vec![set(&[1, 2, 3, 4])],
                exists: true,
            },
        );
    }

    b.scenarios
}

// ---------------------------------------------------------------------------
// Theorem falsification suite
// ---------------------------------------------------------------------------

/// Registered theorem checks. Each samples or enumerates profiles and
/// hunts for Violated verdicts; a nonempty violation list is an engine
/// defect, not new mathematics.
pub const THEOREM_IDS: [&str; 10] = [
    "T-CF",
    "T-CLOSED",
    "T-ADM-NOM",
    "T-ADM-SMALL",
    "T-SETSTABLE-NOM",
    "T-ACC-SMALL",
    "T-EXT-SMALL",
    "T-WF-VETO",
    "T-ACYCLIC-VETO",
    "T-COHERENCE-UNANIMITY-SMALL",
];

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremBudget {
    pub profiles: usize,
    pub seed: u64,
    pub veto_samples: usize,
}

impl Default for TheoremBudget {
    fn default() -> Self {
        TheoremBudget { profiles: 10_000, seed: 0xB1_B0_1A, veto_samples: 20 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub profiles_checked: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Copy, PartialEq)]
enum SpecFamily {
    /// All named quotas, all quota values, and sampled veto sets.
    All,
    NominationOnly,
    OligarchyOnly,
    UnanimityOnly,
}

struct TheoremSpec {
    max_assumptions: usize,
    min_assumptions: usize,
    max_agents: usize,
    family: SpecFamily,
    /// Require the assumption count to be at least the agent count.
    assumptions_at_least_agents: bool,
}

fn theorem_shape(theorem_id: &str) -> Result<TheoremSpec, VerifyError> {
    let default = TheoremSpec {
        max_assumptions: 5,
        min_assumptions: 2,
        max_agents: 4,
        family: SpecFamily::All,
        assumptions_at_least_agents: false,
    };
    Ok(match theorem_id {
        "T-CF" | "T-CLOSED" => default,
        "T-ADM-NOM" | "T-SETSTABLE-NOM" => TheoremSpec { family: SpecFamily::NominationOnly, ..default },
        "T-ADM-SMALL" => TheoremSpec { max_assumptions: 3, ..default },
        "T-ACC-SMALL" | "T-EXT-SMALL" => TheoremSpec { max_assumptions: 2, min_assumptions: 1, ..default },
        "T-WF-VETO" | "T-ACYCLIC-VETO" => TheoremSpec {
            family: SpecFamily::OligarchyOnly,
            assumptions_at_least_agents: true,
            ..default
        },
        "T-COHERENCE-UNANIMITY-SMALL" => TheoremSpec {
            max_assumptions: 3,
            family: SpecFamily::UnanimityOnly,
            ..default
        },
        _ => return Err(VerifyError::UnknownTheorem(theorem_id.to_owned())),
    })
}

fn theorem_properties(theorem_id: &str, n_assumptions: usize) -> Vec<PropertyId> {
    let all_sets = (0u32..1 << n_assumptions).map(AssumptionSet::from_bits);
    match theorem_id {
        "T-CF" => all_sets.map(PropertyId::ConflictFree).collect(),
        "T-CLOSED" => all_sets.map(PropertyId::Closed).collect(),
        "T-ADM-NOM" | "T-ADM-SMALL" => all_sets
            .map(|s| PropertyId::Extension(SemanticsId::Admissible, s))
            .collect(),
        "T-SETSTABLE-NOM" => all_sets
            .map(|s| PropertyId::Extension(SemanticsId::SetStable, s))
            .collect(),
        "T-ACC-SMALL" => (0..n_assumptions)
            .flat_map(|a| SemanticsId::ACCEPTABILITY.map(move |sem| PropertyId::Acceptable(a, sem)))
            .collect(),
        "T-EXT-SMALL" => all_sets
            .flat_map(|s| {
                [
                    SemanticsId::Preferred,
                    SemanticsId::Complete,
                    SemanticsId::WellFounded,
                    SemanticsId::Ideal,
                ]
                .map(move |sem| PropertyId::Extension(sem, s))
            })
            .collect(),
        "T-WF-VETO" => vec![PropertyId::WellFoundedNonempty],
        "T-ACYCLIC-VETO" => vec![PropertyId::Acyclic],
        "T-COHERENCE-UNANIMITY-SMALL" => vec![PropertyId::Coherent],
        _ => Vec::new(),
    }
}

fn aggregation_specs(
    shape: &TheoremSpec,
    n_agents: usize,
    rng: &mut ChaCha8Rng,
    veto_samples: usize,
) -> Vec<AggregationSpec> {
    let mut specs = Vec::new();
    match shape.family {
        SpecFamily::UnanimityOnly => {
            specs.push(AggregationSpec::Named(QuotaKind::Unanimity));
            return specs;
        }
        SpecFamily::NominationOnly => {
            specs.push(AggregationSpec::Named(QuotaKind::Nomination));
            return specs;
        }
        SpecFamily::All => {
            specs.extend(QuotaKind::ALL.map(AggregationSpec::Named));
            specs.extend((1..=n_agents).map(AggregationSpec::Quota));
        }
        SpecFamily::OligarchyOnly => {}
    }
    {
        for _ in 0..veto_samples {
            let mut veto = BTreeSet::new();
            while veto.is_empty() {
                for agent in 1..=n_agents {
                    if rng.gen_bool(0.5) {
                        veto.insert(agent);
                    }
                }
            }
            specs.push(AggregationSpec::Oligarchy(veto));
        }
    }
    specs
}

/// Runs one registered theorem check over randomly drawn profiles.
pub fn check_theorem(theorem_id: &str, budget: &TheoremBudget) -> Result<TheoremReport, VerifyError> {
    let shape = theorem_shape(theorem_id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut violations = Vec::new();
    let mut checked = 0usize;

    for _ in 0..budget.profiles {
        let n_agents = rng.gen_range(2..=shape.max_agents);
        let min_a = shape.min_assumptions.max(if shape.assumptions_at_least_agents {
            n_agents
        } else {
            1
        });
        if min_a > shape.max_assumptions {
            continue;
        }
        let n_assumptions = rng.gen_range(min_a..=shape.max_assumptions);
        let params = GenParams {
            assumption_count: n_assumptions,
            agent_count: n_agents,
            rule_density: rng.gen_range(0.05..0.5),
            support_fraction: 0.5,
            exclude_self_attack: true,
            exclude_self_support: true,
            seed: rng.gen(),
        };
        let profile = random_profile(&params)?;
        checked += 1;

        let properties = theorem_properties(theorem_id, n_assumptions);
        let specs = aggregation_specs(&shape, n_agents, &mut rng, budget.veto_samples);

        // Evaluate agents once per property, aggregates once per spec.
        let agents: Vec<Framework> =
            (0..n_agents).map(|i| profile.agent_framework(i)).collect();
        let aggregates: Vec<(AggregationSpec, Framework)> = specs
            .into_iter()
            .map(|s| {
                let fw = aggregate(&profile, &s)?;
                Ok((s, fw))
            })
            .collect::<Result<_, VerifyError>>()?;

        for property in &properties {
            let mut all_hold = true;
            for agent in &agents {
                if !holds(agent, property)? {
                    all_hold = false;
                    break;
                }
            }
            if !all_hold {
                continue;
            }
            for (spec, fw) in &aggregates {
                if !holds(fw, property)? {
                    violations.push(format!(
                        "seed={} agents={n_agents} assumptions={n_assumptions} density={:.4} spec={spec} property={}",
                        params.seed,
                        params.rule_density,
                        property.display(profile.signature()),
                    ));
                }
            }
        }
    }

    Ok(TheoremReport {
        theorem_id: theorem_id.to_owned(),
        profiles_checked: checked,
        violations,
    })
}
