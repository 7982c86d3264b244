//! Extension semantics: admissible, preferred, complete, set-stable,
//! well-founded, and ideal, plus assumption acceptability, coherence,
//! and acyclicity.
//!
//! Everything here enumerates subsets of the assumption set, filtered by
//! the closure/conflict-freeness/defense primitives from [`crate::framework`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::framework::{AssumptionSet, Framework, FrameworkError};

/// Default ceiling on the assumption count for subset enumeration.
/// Configurable per call up to [`crate::framework::MAX_ASSUMPTIONS`].
pub const DEFAULT_ENUM_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticsId {
    Admissible,
    Preferred,
    Complete,
    SetStable,
    WellFounded,
    Ideal,
}

impl SemanticsId {
    pub const ALL: [SemanticsId; 6] = [
        SemanticsId::Admissible,
        SemanticsId::Preferred,
        SemanticsId::Complete,
        SemanticsId::SetStable,
        SemanticsId::WellFounded,
        SemanticsId::Ideal,
    ];

    /// The five semantics assumption acceptability is defined for.
    pub const ACCEPTABILITY: [SemanticsId; 5] = [
        SemanticsId::Preferred,
        SemanticsId::Complete,
        SemanticsId::SetStable,
        SemanticsId::WellFounded,
        SemanticsId::Ideal,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SemanticsId::Admissible => "admissible",
            SemanticsId::Preferred => "preferred",
            SemanticsId::Complete => "complete",
            SemanticsId::SetStable => "set-stable",
            SemanticsId::WellFounded => "well-founded",
            SemanticsId::Ideal => "ideal",
        }
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SemanticsId {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemanticsId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| SemanticsError::UnknownSemantics(s.to_owned()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("framework has {n} assumptions, enumeration cap is {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown semantics tag {0:?}")]
    UnknownSemantics(String),
    #[error("acceptability is not defined for the {0} semantics")]
    AcceptabilityUndefined(SemanticsId),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// The outcome of enumerating one semantics over a framework.
///
/// `extensions` is duplicate-free and canonically sorted. `exists` is
/// always true for admissible, preferred, and ideal; complete, set-stable,
/// and well-founded extensions may not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub semantics: SemanticsId,
    pub extensions: Vec<AssumptionSet>,
    pub exists: bool,
}

fn check_cap(framework: &Framework, cap: usize) -> Result<(), SemanticsError> {
    let n = framework.signature().assumption_count();
    if n > cap {
        return Err(SemanticsError::CapExceeded { n, cap });
    }
    Ok(())
}

fn subsets(framework: &Framework) -> impl Iterator<Item = AssumptionSet> {
    let n = framework.signature().assumption_count();
    (0u64..1 << n).map(|bits| AssumptionSet::from_bits(bits as u32))
}

/// True iff the set is closed, conflict-free, and counter-attacks every
/// closed attacker.
///
/// The quantification over all closed attacking sets reduces to single
/// attacking assumptions: a closed attacker B has a singleton carrier b
/// and B includes Cl({b}), so attacking Cl({b}) suffices.
pub fn is_admissible(framework: &Framework, set: AssumptionSet) -> bool {
    if !framework.is_closed(set) || !framework.is_conflict_free(set) {
        return false;
    }
    let n = framework.signature().assumption_count();
    for b in 0..n {
        let single = AssumptionSet::singleton(b);
        if framework.attacks_set(single, set)
            && !framework.attacks_set(set, framework.closure(single))
        {
            return false;
        }
    }
    true
}

/// Closed, conflict-free, and attacks the closure of every outside
/// assumption.
pub fn is_set_stable(framework: &Framework, set: AssumptionSet) -> bool {
    if !framework.is_closed(set) || !framework.is_conflict_free(set) {
        return false;
    }
    let all = framework.signature().all_assumptions();
    all.difference(set)
        .iter()
        .all(|b| framework.attacks_set(set, framework.closure(AssumptionSet::singleton(b))))
}

/// Admissible and exactly the set of assumptions it defends.
pub fn is_complete(framework: &Framework, set: AssumptionSet) -> bool {
    is_admissible(framework, set) && framework.defended_set(set) == set
}

fn admissible_family(framework: &Framework) -> Vec<AssumptionSet> {
    subsets(framework).filter(|&s| is_admissible(framework, s)).collect()
}

fn maximal(sets: &[AssumptionSet]) -> Vec<AssumptionSet> {
    sets.iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| s != t && s.is_subset_of(t)))
        .collect()
}

/// Enumerates all extensions of a semantics, using the default cap.
pub fn enumerate(framework: &Framework, semantics: SemanticsId) -> Result<ExtensionReport, SemanticsError> {
    enumerate_with_cap(framework, semantics, DEFAULT_ENUM_CAP)
}

pub fn enumerate_with_cap(
    framework: &Framework,
    semantics: SemanticsId,
    cap: usize,
) -> Result<ExtensionReport, SemanticsError> {
    check_cap(framework, cap)?;
    let (mut extensions, exists) = match semantics {
        SemanticsId::Admissible => (admissible_family(framework), true),
        SemanticsId::Preferred => (maximal(&admissible_family(framework)), true),
        SemanticsId::Complete => {
            let complete: Vec<_> =
                subsets(framework).filter(|&s| is_complete(framework, s)).collect();
            let exists = !complete.is_empty();
            (complete, exists)
        }
        SemanticsId::SetStable => {
            let stable: Vec<_> =
                subsets(framework).filter(|&s| is_set_stable(framework, s)).collect();
            let exists = !stable.is_empty();
            (stable, exists)
        }
        SemanticsId::WellFounded => {
            let complete: Vec<_> =
                subsets(framework).filter(|&s| is_complete(framework, s)).collect();
            if complete.is_empty() {
                (Vec::new(), false)
            } else {
                let wf = complete
                    .iter()
                    .fold(framework.signature().all_assumptions(), |acc, &s| acc.intersection(s));
                (vec![wf], true)
            }
        }
        SemanticsId::Ideal => {
            let admissible = admissible_family(framework);
            let preferred = maximal(&admissible);
            let bound = preferred
                .iter()
                .fold(framework.signature().all_assumptions(), |acc, &s| acc.intersection(s));
            let candidates: Vec<_> = admissible
                .into_iter()
                .filter(|s| s.is_subset_of(bound))
                .collect();
            (maximal(&candidates), true)
        }
    };
    extensions.sort();
    extensions.dedup();
    Ok(ExtensionReport { semantics, extensions, exists })
}

/// Membership form of [`enumerate`]. Admissible, complete, and set-stable
/// are decided directly; the other semantics go through enumeration.
pub fn is_extension(
    framework: &Framework,
    set: AssumptionSet,
    semantics: SemanticsId,
) -> Result<bool, SemanticsError> {
    is_extension_with_cap(framework, set, semantics, DEFAULT_ENUM_CAP)
}

pub fn is_extension_with_cap(
    framework: &Framework,
    set: AssumptionSet,
    semantics: SemanticsId,
    cap: usize,
) -> Result<bool, SemanticsError> {
    check_cap(framework, cap)?;
    match semantics {
        SemanticsId::Admissible => Ok(is_admissible(framework, set)),
        SemanticsId::Complete => Ok(is_complete(framework, set)),
        SemanticsId::SetStable => Ok(is_set_stable(framework, set)),
        _ => Ok(enumerate_with_cap(framework, semantics, cap)?.extensions.contains(&set)),
    }
}

/// True iff some extension under the semantics contains the assumption.
/// Defined for the five acceptability semantics only; false when no
/// extension exists.
pub fn is_acceptable(
    framework: &Framework,
    assumption: usize,
    semantics: SemanticsId,
) -> Result<bool, SemanticsError> {
    is_acceptable_with_cap(framework, assumption, semantics, DEFAULT_ENUM_CAP)
}

pub fn is_acceptable_with_cap(
    framework: &Framework,
    assumption: usize,
    semantics: SemanticsId,
    cap: usize,
) -> Result<bool, SemanticsError> {
    if !SemanticsId::ACCEPTABILITY.contains(&semantics) {
        return Err(SemanticsError::AcceptabilityUndefined(semantics));
    }
    if assumption >= framework.signature().assumption_count() {
        return Err(FrameworkError::BadAssumptionIndex(assumption).into());
    }
    let report = enumerate_with_cap(framework, semantics, cap)?;
    Ok(report.extensions.iter().any(|e| e.contains(assumption)))
}

/// Coherence: the preferred and set-stable extension families coincide.
pub fn is_coherent(framework: &Framework) -> Result<bool, SemanticsError> {
    is_coherent_with_cap(framework, DEFAULT_ENUM_CAP)
}

pub fn is_coherent_with_cap(framework: &Framework, cap: usize) -> Result<bool, SemanticsError> {
    let preferred = enumerate_with_cap(framework, SemanticsId::Preferred, cap)?;
    let set_stable = enumerate_with_cap(framework, SemanticsId::SetStable, cap)?;
    Ok(preferred.extensions == set_stable.extensions)
}

/// Absence of cyclic direct attacks: the graph with an edge b -> t for
/// every rule `contrary(t) <- b` has no directed cycle of length >= 2.
pub fn is_acyclic(framework: &Framework) -> bool {
    let n = framework.signature().assumption_count();
    let mut edges = vec![0u32; n]; // edges[b] = targets attacked directly by b
    for r in framework.rules() {
        for t in 0..n {
            if framework.signature().contrary(t) == &r.head && t != r.body {
                edges[r.body] |= 1 << t;
            }
        }
    }
    // DFS with colors; cycles of length >= 2 only, self-loops dropped above.
    let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
    fn visit(v: usize, edges: &[u32], color: &mut [u8]) -> bool {
        color[v] = 1;
        let mut bits = edges[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            match color[w] {
                1 => return false,
                0 => {
                    if !visit(w, edges, color) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        color[v] = 2;
        true
    }
    (0..n).all(|v| color[v] != 0 || visit(v, &edges, &mut color))
}

/// True iff the well-founded extension exists and is nonempty.
pub fn well_founded_nonempty(framework: &Framework) -> Result<bool, SemanticsError> {
    well_founded_nonempty_with_cap(framework, DEFAULT_ENUM_CAP)
}

pub fn well_founded_nonempty_with_cap(
    framework: &Framework,
    cap: usize,
) -> Result<bool, SemanticsError> {
    let report = enumerate_with_cap(framework, SemanticsId::WellFounded, cap)?;
    Ok(report.exists && !report.extensions[0].is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::{Rule, Signature};

    fn set(indices: &[usize]) -> AssumptionSet {
        AssumptionSet::from_indices(indices.iter().copied())
    }

    fn illustration() -> Framework {
        let sig = Signature::with_default_contraries(["a", "b", "g"]).unwrap();
        let rules = vec![Rule::attack(&sig, 1, 2), Rule::support(&sig, 2, 0)];
        Framework::new(sig, rules).unwrap()
    }

    /// Attack ring over n assumptions: each attacks the next, last attacks first.
    fn ring(n: usize) -> Framework {
        let names: Vec<String> = (0..n).map(|i| format!("A{i}")).collect();
        let sig = Signature::with_default_contraries(names).unwrap();
        let rules: Vec<Rule> = (0..n).map(|i| Rule::attack(&sig, (i + 1) % n, i)).collect();
        Framework::new(sig, rules).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let fw = illustration();
        assert!(is_admissible(&fw, set(&[0, 2])));
        assert!(!is_admissible(&fw, set(&[1])));
        assert!(is_admissible(&fw, AssumptionSet::EMPTY));

        // Figure-1 style aggregate {~C <- D}: {A,B,C} undefended
        let sig = Signature::with_default_contraries(["A", "B", "C", "D"]).unwrap();
        let agg = Framework::new(sig.clone(), [Rule::attack(&sig, 2, 3)]).unwrap();
        assert!(!is_admissible(&agg, set(&[0, 1, 2])));
    }

    #[test]
    fn preferred_of_illustration() {
        let fw = illustration();
        let report = enumerate(&fw, SemanticsId::Preferred).unwrap();
        assert_eq!(report.extensions, vec![set(&[0, 2])]);
        assert!(report.exists);
    }

    #[test]
    fn three_assumption_counterexample_aggregate() {
        // rules ~B <- A, ~C <- B, ~A <- B, ~B <- C
        let sig = Signature::with_default_contraries(["A", "B", "C"]).unwrap();
        let fw = Framework::new(
            sig.clone(),
            [
                Rule::attack(&sig, 1, 0),
                Rule::attack(&sig, 2, 1),
                Rule::attack(&sig, 0, 1),
                Rule::attack(&sig, 1, 2),
            ],
        )
        .unwrap();
        let preferred = enumerate(&fw, SemanticsId::Preferred).unwrap();
        assert_eq!(preferred.extensions, vec![set(&[0, 2]), set(&[1])]);
        let complete = enumerate(&fw, SemanticsId::Complete).unwrap();
        assert_eq!(complete.extensions, vec![AssumptionSet::EMPTY, set(&[0, 2]), set(&[1])]);
        let wf = enumerate(&fw, SemanticsId::WellFounded).unwrap();
        assert!(wf.exists);
        assert_eq!(wf.extensions, vec![AssumptionSet::EMPTY]);
        let ideal = enumerate(&fw, SemanticsId::Ideal).unwrap();
        assert_eq!(ideal.extensions, vec![AssumptionSet::EMPTY]);
    }

    #[test]
    fn single_assumption_no_rules() {
        let sig = Signature::with_default_contraries(["A"]).unwrap();
        let fw = Framework::empty(sig);
        for sem in SemanticsId::ALL {
            let report = enumerate(&fw, sem).unwrap();
            assert!(report.exists, "{sem}");
            assert!(report.extensions.contains(&set(&[0])), "{sem}");
        }
    }

    #[test]
    fn set_stable_examples() {
        // Figure-2 agent 1: ~D <- B, B <- A
        let sig = Signature::with_default_contraries(["A", "B", "C", "D"]).unwrap();
        let fw = Framework::new(sig.clone(), [Rule::attack(&sig, 3, 1), Rule::support(&sig, 1, 0)]).unwrap();
        assert!(is_extension(&fw, set(&[0, 1, 2]), SemanticsId::SetStable).unwrap());
        assert!(is_extension(&fw, AssumptionSet::EMPTY, SemanticsId::Admissible).unwrap());

        // empty aggregate: D unattacked, {A,B,C} no longer set-stable
        let empty = Framework::empty(sig);
        assert!(!is_extension(&empty, set(&[0, 1, 2]), SemanticsId::SetStable).unwrap());
    }

    #[test]
    fn acceptability_examples() {
        // agent 1 of the three-assumption acceptability counterexample:
        // ~A <- C, ~B <- C
        let sig = Signature::with_default_contraries(["A", "B", "C"]).unwrap();
        let fw = Framework::new(sig.clone(), [Rule::attack(&sig, 0, 2), Rule::attack(&sig, 1, 2)]).unwrap();
        assert!(is_acceptable(&fw, 2, SemanticsId::Preferred).unwrap());

        // nomination aggregate of that counterexample: all six attack rules
        let mut rules = Vec::new();
        for (t, b) in [(0, 2), (1, 2), (1, 0), (2, 1), (2, 0), (0, 1)] {
            rules.push(Rule::attack(&sig, t, b));
        }
        let agg = Framework::new(sig.clone(), rules).unwrap();
        let preferred = enumerate(&agg, SemanticsId::Preferred).unwrap();
        assert_eq!(preferred.extensions, vec![set(&[0]), set(&[1]), set(&[2])]);
        assert!(!is_acceptable(&agg, 2, SemanticsId::WellFounded).unwrap());

        // unattacked assumption in an empty framework: acceptable everywhere
        let empty = Framework::empty(sig);
        for sem in SemanticsId::ACCEPTABILITY {
            assert!(is_acceptable(&empty, 0, sem).unwrap(), "{sem}");
        }

        // admissible semantics rejected
        assert_eq!(
            is_acceptable(&empty, 0, SemanticsId::Admissible).unwrap_err(),
            SemanticsError::AcceptabilityUndefined(SemanticsId::Admissible)
        );
    }

    #[test]
    fn coherence_examples() {
        // base {~C <- A, D <- A} plus S = {R1, R2} = {~B <- C, ~A <- B}:
        // the only preferred extension is {D}, not set-stable
        let sig = Signature::with_default_contraries(["A", "B", "C", "D"]).unwrap();
        let base = [Rule::attack(&sig, 2, 0), Rule::support(&sig, 3, 0)];
        let with_s: Vec<Rule> = base
            .iter()
            .cloned()
            .chain([Rule::attack(&sig, 1, 2), Rule::attack(&sig, 0, 1)])
            .collect();
        let fw = Framework::new(sig.clone(), with_s).unwrap();
        let preferred = enumerate(&fw, SemanticsId::Preferred).unwrap();
        assert_eq!(preferred.extensions, vec![set(&[3])]);
        assert!(!is_coherent(&fw).unwrap());

        // base alone: {A,B,D} preferred and set-stable
        let base_fw = Framework::new(sig.clone(), base.to_vec()).unwrap();
        assert!(is_coherent(&base_fw).unwrap());

        // no rules at all: the full set is the unique preferred and
        // set-stable extension
        let empty = Framework::empty(sig.clone());
        let pref = enumerate(&empty, SemanticsId::Preferred).unwrap();
        assert_eq!(pref.extensions, vec![empty.signature().all_assumptions()]);
        assert!(is_coherent(&empty).unwrap());
    }

    #[test]
    fn acyclicity_examples() {
        let fw = ring(4);
        assert!(!is_acyclic(&fw));

        let sig = fw.signature().clone();
        let empty = Framework::empty(sig.clone());
        assert!(is_acyclic(&empty));

        // drop one ring rule: the cycle is broken
        let mut rules: Vec<Rule> = fw.rules().iter().cloned().collect();
        rules.pop();
        let broken = Framework::new(sig, rules).unwrap();
        assert!(is_acyclic(&broken));
    }

    #[test]
    fn self_attack_is_not_a_cycle() {
        let sig = Signature::with_default_contraries(["A", "B"]).unwrap();
        let fw = Framework::new(sig, [Rule::new(crate::framework::Sentence::new("~A").unwrap(), 0)]).unwrap();
        assert!(is_acyclic(&fw));
    }

    #[test]
    fn well_founded_nonempty_examples() {
        let fw = ring(5);
        assert!(!well_founded_nonempty(&fw).unwrap());

        let sig = fw.signature().clone();
        let mut rules: Vec<Rule> = fw.rules().iter().cloned().collect();
        rules.pop();
        let broken = Framework::new(sig.clone(), rules).unwrap();
        assert!(well_founded_nonempty(&broken).unwrap());

        let empty = Framework::empty(sig);
        let wf = enumerate(&empty, SemanticsId::WellFounded).unwrap();
        assert_eq!(wf.extensions, vec![empty.signature().all_assumptions()]);
        assert!(well_founded_nonempty(&empty).unwrap());
    }

    #[test]
    fn cap_refusal() {
        let names: Vec<String> = (0..17).map(|i| format!("a{i:02}")).collect();
        let sig = Signature::with_default_contraries(names).unwrap();
        let fw = Framework::empty(sig);
        assert!(matches!(
            enumerate(&fw, SemanticsId::Preferred),
            Err(SemanticsError::CapExceeded { n: 17, cap: 16 })
        ));
        assert!(enumerate_with_cap(&fw, SemanticsId::Preferred, 20).is_ok());
    }
}
