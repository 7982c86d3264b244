//! Property preservation under aggregation, and the implicative /
//! disjunctive / k-exclusive meta-properties behind the impossibility
//! results.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::aggregation::{aggregate, AggregationError, AggregationSpec, Profile};
use crate::framework::{rule_universe, AssumptionSet, Framework, Rule, Signature};
use crate::semantics::{self, SemanticsError, SemanticsId, DEFAULT_ENUM_CAP};

/// A checkable property of a framework, optionally about a fixed
/// assumption set or assumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyId {
    ConflictFree(AssumptionSet),
    Closed(AssumptionSet),
    Extension(SemanticsId, AssumptionSet),
    Acceptable(usize, SemanticsId),
    Acyclic,
    WellFoundedNonempty,
    Coherent,
}

impl PropertyId {
    /// Parses the textual form: `conflict-free:<set>` | `closed:<set>` |
    /// `extension:<semantics>:<set>` | `acceptable:<name>:<semantics>` |
    /// `acyclic` | `wf-nonempty` | `coherent`, with sets as comma-joined
    /// assumption names (empty for the empty set).
    pub fn parse(text: &str, signature: &Signature) -> Result<Self, PreservationError> {
        let bad = || PreservationError::BadProperty(text.to_owned());
        match text {
            "acyclic" => return Ok(PropertyId::Acyclic),
            "wf-nonempty" => return Ok(PropertyId::WellFoundedNonempty),
            "coherent" => return Ok(PropertyId::Coherent),
            _ => {}
        }
        let (kind, rest) = text.split_once(':').ok_or_else(bad)?;
        match kind {
            "conflict-free" => Ok(PropertyId::ConflictFree(
                AssumptionSet::parse(rest, signature).map_err(|_| bad())?,
            )),
            "closed" => Ok(PropertyId::Closed(
                AssumptionSet::parse(rest, signature).map_err(|_| bad())?,
            )),
            "extension" => {
                let (sem, set) = rest.split_once(':').ok_or_else(bad)?;
                Ok(PropertyId::Extension(
                    sem.parse().map_err(|_| bad())?,
                    AssumptionSet::parse(set, signature).map_err(|_| bad())?,
                ))
            }
            "acceptable" => {
                let (name, sem) = rest.split_once(':').ok_or_else(bad)?;
                let set = AssumptionSet::parse(name, signature).map_err(|_| bad())?;
                let index = match set.iter().collect::<Vec<_>>()[..] {
                    [i] => i,
                    _ => return Err(bad()),
                };
                Ok(PropertyId::Acceptable(index, sem.parse().map_err(|_| bad())?))
            }
            _ => Err(bad()),
        }
    }

    pub fn display(&self, signature: &Signature) -> String {
        match self {
            PropertyId::ConflictFree(s) => format!("conflict-free of {}", s.display(signature)),
            PropertyId::Closed(s) => format!("closedness of {}", s.display(signature)),
            PropertyId::Extension(sem, s) => format!("{sem} extension {}", s.display(signature)),
            PropertyId::Acceptable(a, sem) => {
                format!("{sem} acceptability of {}", signature.assumption(*a))
            }
            PropertyId::Acyclic => "acyclicity".to_owned(),
            PropertyId::WellFoundedNonempty => "well-founded non-emptiness".to_owned(),
            PropertyId::Coherent => "coherence".to_owned(),
        }
    }
}

/// Outcome of a preservation check (Violated only when every agent
/// satisfied the property and the aggregate did not).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreservationVerdict {
    /// Some agent (1-based) fails the property, so preservation does not
    /// apply.
    NotApplicable { failing_agent: usize },
    Preserved,
    Violated,
}

impl PreservationVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            PreservationVerdict::NotApplicable { .. } => "not-applicable",
            PreservationVerdict::Preserved => "preserved",
            PreservationVerdict::Violated => "violated",
        }
    }
}

impl fmt::Display for PreservationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreservationVerdict::NotApplicable { failing_agent } => {
                write!(f, "not-applicable (agent {failing_agent} fails the property)")
            }
            _ => f.write_str(self.tag()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreservationError {
    #[error("cannot parse property {0:?}")]
    BadProperty(String),
    #[error("witness rule occurs in the base rule set: {0}")]
    WitnessInBase(String),
    #[error("witness rules must be pairwise distinct")]
    DuplicateWitness,
    #[error("k-exclusive rule set must have between 1 and {max} rules, got {got}")]
    BadExclusiveSize { got: usize, max: usize },
    #[error(transparent)]
    Aggregation(#[from] AggregationError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Evaluates a property on a framework.
pub fn holds(framework: &Framework, property: &PropertyId) -> Result<bool, SemanticsError> {
    holds_with_cap(framework, property, DEFAULT_ENUM_CAP)
}

pub fn holds_with_cap(
    framework: &Framework,
    property: &PropertyId,
    cap: usize,
) -> Result<bool, SemanticsError> {
    match property {
        PropertyId::ConflictFree(set) => Ok(framework.is_conflict_free(*set)),
        PropertyId::Closed(set) => Ok(framework.is_closed(*set)),
        PropertyId::Extension(sem, set) => semantics::is_extension_with_cap(framework, *set, *sem, cap),
        PropertyId::Acceptable(a, sem) => semantics::is_acceptable_with_cap(framework, *a, *sem, cap),
        PropertyId::Acyclic => Ok(semantics::is_acyclic(framework)),
        PropertyId::WellFoundedNonempty => semantics::well_founded_nonempty_with_cap(framework, cap),
        PropertyId::Coherent => semantics::is_coherent_with_cap(framework, cap),
    }
}

/// Checks preservation of a property across aggregation: not applicable
/// when some agent fails it, otherwise preserved iff the aggregated
/// framework still satisfies it.
pub fn check_preservation(
    profile: &Profile,
    spec: &AggregationSpec,
    property: &PropertyId,
) -> Result<PreservationVerdict, PreservationError> {
    check_preservation_with_cap(profile, spec, property, DEFAULT_ENUM_CAP)
}

pub fn check_preservation_with_cap(
    profile: &Profile,
    spec: &AggregationSpec,
    property: &PropertyId,
    cap: usize,
) -> Result<PreservationVerdict, PreservationError> {
    for agent in 0..profile.agent_count() {
        if !holds_with_cap(&profile.agent_framework(agent), property, cap)? {
            return Ok(PreservationVerdict::NotApplicable { failing_agent: agent + 1 });
        }
    }
    let aggregated = aggregate(profile, spec)?;
    if holds_with_cap(&aggregated, property, cap)? {
        Ok(PreservationVerdict::Preserved)
    } else {
        Ok(PreservationVerdict::Violated)
    }
}

fn witness_framework(
    signature: &Arc<Signature>,
    base: &BTreeSet<Rule>,
    extra: &[&Rule],
) -> Result<Framework, PreservationError> {
    let rules = base.iter().chain(extra.iter().copied()).cloned();
    Ok(Framework::new(signature.clone(), rules).map_err(AggregationError::from)?)
}

/// Truth-table check for an implicative property witness: P must hold on
/// base + S for all S among the eight subsets of {r1, r2, r3} except
/// exactly S = {r1, r2}, where it must fail.
pub fn check_implicative(
    signature: &Arc<Signature>,
    base: &BTreeSet<Rule>,
    r1: &Rule,
    r2: &Rule,
    r3: &Rule,
    property: &PropertyId,
) -> Result<bool, PreservationError> {
    check_implicative_with_cap(signature, base, r1, r2, r3, property, DEFAULT_ENUM_CAP)
}

pub fn check_implicative_with_cap(
    signature: &Arc<Signature>,
    base: &BTreeSet<Rule>,
    r1: &Rule,
    r2: &Rule,
    r3: &Rule,
    property: &PropertyId,
    cap: usize,
) -> Result<bool, PreservationError> {
    check_witnesses(signature, base, &[r1, r2, r3])?;
    let witnesses = [r1, r2, r3];
    for mask in 0u8..8 {
        let extra: Vec<&Rule> = witnesses
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, r)| *r)
            .collect();
        let fw = witness_framework(signature, base, &extra)?;
        let p = holds_with_cap(&fw, property, cap)?;
        let expect_fail = mask == 0b011; // S = {r1, r2}
        if p == expect_fail {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truth-table check for a disjunctive property witness: P must fail on
/// the bare base and hold once either of {r1, r2} is added.
pub fn check_disjunctive(
    signature: &Arc<Signature>,
    base: &BTreeSet<Rule>,
    r1: &Rule,
    r2: &Rule,
    property: &PropertyId,
) -> Result<bool, PreservationError> {
    check_disjunctive_with_cap(signature, base, r1, r2, property, DEFAULT_ENUM_CAP)
}

pub fn check_disjunctive_with_cap(
    signature: &Arc<Signature>,
    base: &BTreeSet<Rule>,
    r1: &Rule,
    r2: &Rule,
    property: &PropertyId,
    cap: usize,
) -> Result<bool, PreservationError> {
    check_witnesses(signature, base, &[r1, r2])?;
    let witnesses = [r1, r2];
    for mask in 0u8..4 {
        let extra: Vec<&Rule> = witnesses
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, r)| *r)
            .collect();
        let fw = witness_framework(signature, base, &extra)?;
        let p = holds_with_cap(&fw, property, cap)?;
        let expect_fail = mask == 0; // S = {}
        if p == expect_fail {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_witnesses(
    signature: &Arc<Signature>,
    base: &BTreeSet<Rule>,
    rules: &[&Rule],
) -> Result<(), PreservationError> {
    for (i, r) in rules.iter().enumerate() {
        if base.contains(*r) {
            return Err(PreservationError::WitnessInBase(r.display(signature)));
        }
        if rules[..i].contains(r) {
            return Err(PreservationError::DuplicateWitness);
        }
    }
    Ok(())
}

/// Largest rule set accepted by [`check_k_exclusive`]; the proper-subset
/// scan is exponential in |S|.
pub const MAX_EXCLUSIVE_RULES: usize = 16;

/// Checks that a rule set S witnesses k-exclusivity of a property: P
/// fails on the framework holding exactly S and on sampled supersets of
/// S, and P holds on every proper subset of S. Supersets are sampled
/// from the strict rule universe (no self-attacks or self-supports),
/// deterministically under the seed.
pub fn check_k_exclusive(
    signature: &Arc<Signature>,
    rules: &BTreeSet<Rule>,
    property: &PropertyId,
    superset_samples: usize,
    seed: u64,
) -> Result<bool, PreservationError> {
    check_k_exclusive_with_cap(signature, rules, property, superset_samples, seed, DEFAULT_ENUM_CAP)
}

pub fn check_k_exclusive_with_cap(
    signature: &Arc<Signature>,
    rules: &BTreeSet<Rule>,
    property: &PropertyId,
    superset_samples: usize,
    seed: u64,
    cap: usize,
) -> Result<bool, PreservationError> {
    let k = rules.len();
    if k == 0 || k > MAX_EXCLUSIVE_RULES {
        return Err(PreservationError::BadExclusiveSize { got: k, max: MAX_EXCLUSIVE_RULES });
    }
    let ordered: Vec<&Rule> = rules.iter().collect();

    // P must fail with all of S adopted.
    let full = witness_framework(signature, rules, &[])?;
    if holds_with_cap(&full, property, cap)? {
        return Ok(false);
    }

    // P must hold on every proper subset of S.
    for mask in 0u32..(1 << k) - 1 {
        let subset: BTreeSet<Rule> = ordered
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, r)| (*r).clone())
            .collect();
        let fw = witness_framework(signature, &subset, &[])?;
        if !holds_with_cap(&fw, property, cap)? {
            return Ok(false);
        }
    }

    // P must keep failing on random valid supersets of S.
    let pool: Vec<Rule> = rule_universe(signature, true, true)
        .into_iter()
        .filter(|r| !rules.contains(r))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..superset_samples {
        let mut superset = rules.clone();
        for r in &pool {
            if rng.gen_bool(0.5) {
                superset.insert(r.clone());
            }
        }
        let fw = witness_framework(signature, &superset, &[])?;
        if holds_with_cap(&fw, property, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The attack ring over all assumptions of a signature: each assumption
/// attacks the next, the last attacks the first.
pub fn attack_ring(signature: &Signature) -> BTreeSet<Rule> {
    let n = signature.assumption_count();
    (0..n).map(|i| Rule::attack(signature, (i + 1) % n, i)).collect()
}
