//! Multi-agent profiles and the quota / oligarchic aggregation rules.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::framework::{Framework, FrameworkError, Rule, Signature};

/// The rule sets of n >= 2 agents over one shared signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    signature: Arc<Signature>,
    agent_rules: Vec<BTreeSet<Rule>>,
}

impl Profile {
    pub fn new(
        signature: Arc<Signature>,
        agent_rules: impl IntoIterator<Item = impl IntoIterator<Item = Rule>>,
    ) -> Result<Self, AggregationError> {
        let agent_rules: Vec<BTreeSet<Rule>> = agent_rules
            .into_iter()
            .map(|rules| rules.into_iter().collect())
            .collect();
        if agent_rules.len() < 2 {
            return Err(AggregationError::TooFewAgents(agent_rules.len()));
        }
        // Validate every rule against the shared signature.
        for rules in &agent_rules {
            Framework::new(signature.clone(), rules.iter().cloned())?;
        }
        Ok(Profile { signature, agent_rules })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn agent_count(&self) -> usize {
        self.agent_rules.len()
    }

    pub fn agent_rules(&self) -> &[BTreeSet<Rule>] {
        &self.agent_rules
    }

    /// The framework of one agent (0-based index).
    pub fn agent_framework(&self, index: usize) -> Framework {
        Framework::new(self.signature.clone(), self.agent_rules[index].iter().cloned())
            .expect("agent rules were validated at construction")
    }

    /// The rule universe of the profile: every rule some agent holds.
    pub fn rule_union(&self) -> BTreeSet<Rule> {
        self.agent_rules.iter().flatten().cloned().collect()
    }
}

/// The four named quota levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotaKind {
    Nomination,
    WeakMajority,
    StrictMajority,
    Unanimity,
}

impl QuotaKind {
    pub const ALL: [QuotaKind; 4] = [
        QuotaKind::Nomination,
        QuotaKind::WeakMajority,
        QuotaKind::StrictMajority,
        QuotaKind::Unanimity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            QuotaKind::Nomination => "nomination",
            QuotaKind::WeakMajority => "weak-majority",
            QuotaKind::StrictMajority => "strict-majority",
            QuotaKind::Unanimity => "unanimity",
        }
    }
}

/// Computes the quota for a named kind over n agents.
pub fn resolve_quota(kind: QuotaKind, n: usize) -> Result<usize, AggregationError> {
    if n <= 1 {
        return Err(AggregationError::TooFewAgents(n));
    }
    Ok(match kind {
        QuotaKind::Nomination => 1,
        QuotaKind::WeakMajority => n / 2,
        QuotaKind::StrictMajority => n.div_ceil(2),
        QuotaKind::Unanimity => n,
    })
}

/// An aggregation rule: a quota threshold or an oligarchic veto set.
/// Agent indices in veto sets are 1-based, matching the usual agent
/// numbering 1..n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AggregationSpec {
    Quota(usize),
    Named(QuotaKind),
    Oligarchy(BTreeSet<usize>),
}

impl AggregationSpec {
    pub fn dictator(agent: usize) -> Self {
        AggregationSpec::Oligarchy(BTreeSet::from([agent]))
    }

    pub fn is_dictatorship(&self) -> bool {
        matches!(self, AggregationSpec::Oligarchy(v) if v.len() == 1)
    }
}

impl fmt::Display for AggregationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggregationSpec::Quota(q) => write!(f, "quota:{q}"),
            AggregationSpec::Named(kind) => f.write_str(kind.tag()),
            AggregationSpec::Oligarchy(veto) => {
                let parts: Vec<String> = veto.iter().map(usize::to_string).collect();
                write!(f, "oligarchy:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for AggregationSpec {
    type Err = AggregationError;

    /// Grammar: `quota:<q>` | `nomination` | `weak-majority` |
    /// `strict-majority` | `unanimity` | `oligarchy:<i,j,...>` |
    /// `dictator:<i>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(kind) = QuotaKind::ALL.into_iter().find(|k| k.tag() == s) {
            return Ok(AggregationSpec::Named(kind));
        }
        if let Some(q) = s.strip_prefix("quota:") {
            let q = q.parse().map_err(|_| AggregationError::BadSpec(s.to_owned()))?;
            return Ok(AggregationSpec::Quota(q));
        }
        if let Some(list) = s.strip_prefix("oligarchy:") {
            let veto: BTreeSet<usize> = list
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| AggregationError::BadSpec(s.to_owned())))
                .collect::<Result<_, _>>()?;
            if veto.is_empty() {
                return Err(AggregationError::EmptyVeto);
            }
            return Ok(AggregationSpec::Oligarchy(veto));
        }
        if let Some(agent) = s.strip_prefix("dictator:") {
            let agent = agent.parse().map_err(|_| AggregationError::BadSpec(s.to_owned()))?;
            return Ok(AggregationSpec::dictator(agent));
        }
        Err(AggregationError::BadSpec(s.to_owned()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AggregationError {
    #[error("a profile needs at least two agents, got {0}")]
    TooFewAgents(usize),
    #[error("quota {q} out of range 1..={n}")]
    QuotaOutOfRange { q: usize, n: usize },
    #[error("veto agent {agent} out of range 1..={n}")]
    VetoOutOfRange { agent: usize, n: usize },
    #[error("oligarchy needs a nonempty veto set")]
    EmptyVeto,
    #[error("cannot parse aggregation rule {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// Applies an aggregation rule to a profile. Quota q keeps the rules held
/// by at least q agents; oligarchy keeps the intersection over the veto
/// set. The result shares the profile's signature.
pub fn aggregate(profile: &Profile, spec: &AggregationSpec) -> Result<Framework, AggregationError> {
    let n = profile.agent_count();
    let rules: BTreeSet<Rule> = match spec {
        AggregationSpec::Quota(q) => {
            if *q < 1 || *q > n {
                return Err(AggregationError::QuotaOutOfRange { q: *q, n });
            }
            quota_rules(profile, *q)
        }
        AggregationSpec::Named(kind) => quota_rules(profile, resolve_quota(*kind, n)?),
        AggregationSpec::Oligarchy(veto) => {
            if veto.is_empty() {
                return Err(AggregationError::EmptyVeto);
            }
            for &agent in veto {
                if agent < 1 || agent > n {
                    return Err(AggregationError::VetoOutOfRange { agent, n });
                }
            }
            let mut iter = veto.iter();
            let first = profile.agent_rules()[iter.next().unwrap() - 1].clone();
            iter.fold(first, |acc, &agent| {
                acc.intersection(&profile.agent_rules()[agent - 1]).cloned().collect()
            })
        }
    };
    Ok(Framework::new(profile.signature().clone(), rules)?)
}

fn quota_rules(profile: &Profile, q: usize) -> BTreeSet<Rule> {
    profile
        .rule_union()
        .into_iter()
        .filter(|r| profile.agent_rules().iter().filter(|rules| rules.contains(r)).count() >= q)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Signature;

    /// The three-agent quota example: R1 = {~A <- B}, R2 = {A <- C},
    /// R3 = {~A <- B, A <- D}.
    fn quota_profile() -> Profile {
        let sig = Signature::with_default_contraries(["A", "B", "C", "D"]).unwrap();
        Profile::new(
            sig.clone(),
            vec![
                vec![Rule::attack(&sig, 0, 1)],
                vec![Rule::support(&sig, 0, 2)],
                vec![Rule::attack(&sig, 0, 1), Rule::support(&sig, 0, 3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn resolve_quota_values() {
        assert_eq!(resolve_quota(QuotaKind::WeakMajority, 3).unwrap(), 1);
        assert_eq!(resolve_quota(QuotaKind::StrictMajority, 3).unwrap(), 2);
        assert_eq!(resolve_quota(QuotaKind::StrictMajority, 4).unwrap(), 2);
        assert_eq!(resolve_quota(QuotaKind::WeakMajority, 4).unwrap(), 2);
        assert_eq!(resolve_quota(QuotaKind::Nomination, 7).unwrap(), 1);
        assert_eq!(resolve_quota(QuotaKind::Unanimity, 5).unwrap(), 5);
        assert!(resolve_quota(QuotaKind::Unanimity, 1).is_err());
    }

    #[test]
    fn quota_example() {
        let profile = quota_profile();
        let sig = profile.signature().clone();
        let union: BTreeSet<Rule> = [
            Rule::attack(&sig, 0, 1),
            Rule::support(&sig, 0, 2),
            Rule::support(&sig, 0, 3),
        ]
        .into();
        let strict = aggregate(&profile, &AggregationSpec::Named(QuotaKind::StrictMajority)).unwrap();
        assert_eq!(strict.rules(), &BTreeSet::from([Rule::attack(&sig, 0, 1)]));
        let weak = aggregate(&profile, &AggregationSpec::Named(QuotaKind::WeakMajority)).unwrap();
        assert_eq!(weak.rules(), &union);
        let nom = aggregate(&profile, &AggregationSpec::Named(QuotaKind::Nomination)).unwrap();
        assert_eq!(nom.rules(), &union);
        let unanimity = aggregate(&profile, &AggregationSpec::Named(QuotaKind::Unanimity)).unwrap();
        assert!(unanimity.rules().is_empty());
    }

    #[test]
    fn oligarchy_example() {
        let profile = quota_profile();
        let sig = profile.signature().clone();
        let olig = aggregate(&profile, &AggregationSpec::Oligarchy([1, 3].into())).unwrap();
        assert_eq!(olig.rules(), &BTreeSet::from([Rule::attack(&sig, 0, 1)]));
        let all = aggregate(&profile, &AggregationSpec::Oligarchy([1, 2, 3].into())).unwrap();
        assert!(all.rules().is_empty());
        // dictatorship returns the dictator's rules unchanged
        let dict = aggregate(&profile, &AggregationSpec::dictator(2)).unwrap();
        assert_eq!(dict.rules(), &profile.agent_rules()[1]);
    }

    #[test]
    fn out_of_range_specs_rejected() {
        let profile = quota_profile();
        assert_eq!(
            aggregate(&profile, &AggregationSpec::Quota(0)).unwrap_err(),
            AggregationError::QuotaOutOfRange { q: 0, n: 3 }
        );
        assert_eq!(
            aggregate(&profile, &AggregationSpec::Quota(4)).unwrap_err(),
            AggregationError::QuotaOutOfRange { q: 4, n: 3 }
        );
        assert_eq!(
            aggregate(&profile, &AggregationSpec::Oligarchy([4].into())).unwrap_err(),
            AggregationError::VetoOutOfRange { agent: 4, n: 3 }
        );
    }

    #[test]
    fn profile_needs_two_agents() {
        let sig = Signature::with_default_contraries(["A", "B"]).unwrap();
        let empty: Vec<Vec<Rule>> = vec![vec![]];
        assert_eq!(Profile::new(sig, empty).unwrap_err(), AggregationError::TooFewAgents(1));
    }

    #[test]
    fn spec_parsing_round_trip() {
        for text in ["quota:2", "nomination", "weak-majority", "strict-majority", "unanimity", "oligarchy:1,3"] {
            let spec: AggregationSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        let dict: AggregationSpec = "dictator:2".parse().unwrap();
        assert_eq!(dict, AggregationSpec::Oligarchy([2].into()));
        assert!(dict.is_dictatorship());
        assert!("quota:x".parse::<AggregationSpec>().is_err());
        assert!("majority".parse::<AggregationSpec>().is_err());
    }
}
