//! Equivalence of the optimized engine against the naive definitional
//! oracle, plus algebraic invariants checked by property testing.

mod common;

use std::sync::Arc;

use common::Oracle;
use proptest::prelude::*;

use bipolar_aba::verify::generated_signature;
use bipolar_aba::{
    aggregate, enumerate, is_admissible, is_complete, is_set_stable, random_profile,
    rule_universe, AggregationSpec, AssumptionSet, Framework, GenParams, QuotaKind, Rule,
    SemanticsId, Signature,
};

/// Calls `f` with every subset of `universe` of size at most `max_len`.
fn for_each_subset(universe: &[Rule], max_len: usize, f: &mut impl FnMut(&[Rule])) {
    fn rec(universe: &[Rule], start: usize, left: usize, current: &mut Vec<Rule>, f: &mut impl FnMut(&[Rule])) {
        f(current);
        if left == 0 {
            return;
        }
        for i in start..universe.len() {
            current.push(universe[i].clone());
            rec(universe, i + 1, left - 1, current, f);
            current.pop();
        }
    }
    rec(universe, 0, max_len, &mut Vec::new(), f);
}

fn check_core_ops(framework: &Framework, oracle: &Oracle) {
    let n = oracle.n();
    let sig = framework.signature();
    for bits in 0u32..1 << n {
        let set = AssumptionSet::from_bits(bits);
        assert_eq!(framework.closure(set), oracle.closure(set), "closure of {bits:#b}");
        assert_eq!(framework.is_closed(set), oracle.is_closed(set));
        assert_eq!(framework.is_conflict_free(set), oracle.is_conflict_free(set));
        for t in 0..n {
            assert_eq!(framework.attacks(set, t), oracle.attacks(set, t), "attacks {bits:#b} -> {t}");
            assert_eq!(framework.defends(set, t), oracle.defends(set, t), "defends {bits:#b} -> {t}");
            assert_eq!(
                framework.derives(set, sig.assumption(t)).unwrap(),
                oracle.derives(set, sig.assumption(t)),
            );
            assert_eq!(
                framework.derives(set, sig.contrary(t)).unwrap(),
                oracle.derives(set, sig.contrary(t)),
            );
        }
        assert_eq!(is_admissible(framework, set), oracle.is_admissible(set), "admissible {bits:#b}");
    }
}

fn check_semantics(framework: &Framework, oracle: &Oracle) {
    let n = oracle.n();
    for bits in 0u32..1 << n {
        let set = AssumptionSet::from_bits(bits);
        assert_eq!(is_set_stable(framework, set), oracle.is_set_stable(set));
        assert_eq!(is_complete(framework, set), oracle.is_complete(set));
    }
    let complete = oracle.complete_family();
    let set_stable = oracle.set_stable_family();
    let cases: [(SemanticsId, Vec<AssumptionSet>, bool); 5] = [
        (SemanticsId::Admissible, oracle.admissible_family(), true),
        (SemanticsId::Preferred, oracle.preferred_family(), true),
        (SemanticsId::Complete, complete.clone(), !complete.is_empty()),
        (SemanticsId::SetStable, set_stable.clone(), !set_stable.is_empty()),
        (SemanticsId::Ideal, oracle.ideal_family(), true),
    ];
    for (sem, expected, exists) in cases {
        let report = enumerate(framework, sem).unwrap();
        assert_eq!(report.extensions, expected, "{sem}");
        assert_eq!(report.exists, exists, "{sem} exists");
    }
    let report = enumerate(framework, SemanticsId::WellFounded).unwrap();
    match oracle.well_founded() {
        Some(wf) => {
            assert!(report.exists);
            assert_eq!(report.extensions, vec![wf]);
        }
        None => {
            assert!(!report.exists);
            assert!(report.extensions.is_empty());
        }
    }
}

#[test]
fn exhaustive_small_full_semantics() {
    // Every framework with at most 3 assumptions and at most 6 rules.
    for n in 1..=3usize {
        let sig = generated_signature(n).unwrap();
        let universe = rule_universe(&sig, true, true);
        let mut count = 0usize;
        for_each_subset(&universe, 6, &mut |rules| {
            let framework = Framework::new(sig.clone(), rules.iter().cloned()).unwrap();
            let oracle = Oracle::new(&framework);
            check_core_ops(&framework, &oracle);
            check_semantics(&framework, &oracle);
            count += 1;
        });
        // n = 1 has an empty universe once self-cycles are excluded.
        assert!(count >= 1);
    }
}

#[test]
fn exhaustive_four_assumptions_core_ops() {
    // Every framework with 4 assumptions and at most 6 rules; core
    // operations only, the semantics are covered exhaustively above and
    // by sampling below.
    let sig = generated_signature(4).unwrap();
    let universe = rule_universe(&sig, true, true);
    assert_eq!(universe.len(), 24);
    let mut count = 0usize;
    for_each_subset(&universe, 6, &mut |rules| {
        let framework = Framework::new(sig.clone(), rules.iter().cloned()).unwrap();
        let oracle = Oracle::new(&framework);
        check_core_ops(&framework, &oracle);
        count += 1;
    });
    assert_eq!(count, 190_051);
}

#[test]
fn self_cycle_rules_covered() {
    // Self-attacks and self-supports are excluded from the exhaustive
    // universe; cover them separately.
    let sig = generated_signature(2).unwrap();
    let all = rule_universe(&sig, false, false);
    assert_eq!(all.len(), 8);
    for_each_subset(&all, 3, &mut |rules| {
        let framework = Framework::new(sig.clone(), rules.iter().cloned()).unwrap();
        let oracle = Oracle::new(&framework);
        check_core_ops(&framework, &oracle);
        check_semantics(&framework, &oracle);
    });
}

fn sampled_framework(n: usize, density: f64, seed: u64) -> Framework {
    let mut params = GenParams::new(n, 2, seed);
    params.rule_density = density;
    params.support_fraction = 0.7;
    params.exclude_self_attack = false;
    params.exclude_self_support = false;
    random_profile(&params).unwrap().agent_framework(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sampled_semantics_match_oracle(n in 1usize..=5, density in 0.05f64..0.9, seed in any::<u64>()) {
        let framework = sampled_framework(n, density, seed);
        let oracle = Oracle::new(&framework);
        check_core_ops(&framework, &oracle);
        check_semantics(&framework, &oracle);
    }

    #[test]
    fn closure_is_a_closure_operator(n in 1usize..=6, density in 0.05f64..0.9, seed in any::<u64>()) {
        let framework = sampled_framework(n, density, seed);
        for bits in 0u32..1 << n {
            let a = AssumptionSet::from_bits(bits);
            let cl = framework.closure(a);
            prop_assert!(a.is_subset_of(cl));
            prop_assert_eq!(framework.closure(cl), cl);
            for other in 0u32..1 << n {
                let b = AssumptionSet::from_bits(other);
                if a.is_subset_of(b) {
                    prop_assert!(cl.is_subset_of(framework.closure(b)));
                }
            }
        }
    }

    #[test]
    fn singleton_carrier(n in 1usize..=6, density in 0.05f64..0.9, seed in any::<u64>()) {
        let framework = sampled_framework(n, density, seed);
        for bits in 0u32..1 << n {
            let a = AssumptionSet::from_bits(bits);
            for t in 0..n {
                let direct = framework.attacks(a, t);
                let carried = a.iter().any(|i| framework.attacks(AssumptionSet::singleton(i), t));
                prop_assert_eq!(direct, carried);
            }
        }
    }

    #[test]
    fn aggregation_algebra(
        n in 2usize..=4,
        agents in 2usize..=4,
        density in 0.1f64..0.9,
        seed in any::<u64>(),
    ) {
        let mut params = GenParams::new(n, agents, seed);
        params.rule_density = density;
        let profile = random_profile(&params).unwrap();

        let union = aggregate(&profile, &AggregationSpec::Named(QuotaKind::Nomination)).unwrap();
        let mut expected_union = std::collections::BTreeSet::new();
        for rules in profile.agent_rules() {
            expected_union.extend(rules.iter().cloned());
        }
        prop_assert_eq!(union.rules(), &expected_union);

        let unanimity = aggregate(&profile, &AggregationSpec::Named(QuotaKind::Unanimity)).unwrap();
        let mut expected_isect = profile.agent_rules()[0].clone();
        for rules in &profile.agent_rules()[1..] {
            expected_isect = expected_isect.intersection(rules).cloned().collect();
        }
        prop_assert_eq!(unanimity.rules(), &expected_isect);

        let full_veto = AggregationSpec::Oligarchy((1..=agents).collect());
        let oligarchy = aggregate(&profile, &full_veto).unwrap();
        prop_assert_eq!(oligarchy.rules(), unanimity.rules());

        for i in 1..=agents {
            let dictator = aggregate(&profile, &AggregationSpec::dictator(i)).unwrap();
            prop_assert_eq!(dictator.rules(), &profile.agent_rules()[i - 1]);
        }

        // Raising the quota can only shrink the rule set.
        let mut previous = aggregate(&profile, &AggregationSpec::Quota(1)).unwrap();
        for q in 2..=agents {
            let next = aggregate(&profile, &AggregationSpec::Quota(q)).unwrap();
            prop_assert!(next.rules().is_subset(previous.rules()));
            previous = next;
        }
    }
}

// Signature with a contrary that is itself another assumption: the
// closure-based attack path must treat it as both.
#[test]
fn contrary_as_assumption_matches_oracle() {
    let a = bipolar_aba::Sentence::new("a").unwrap();
    let b = bipolar_aba::Sentence::new("b").unwrap();
    let c = bipolar_aba::Sentence::new("c").unwrap();
    let cbar = bipolar_aba::Sentence::new("c*").unwrap();
    let sig: Arc<Signature> = Signature::new(
        [a.clone(), b.clone(), c.clone(), cbar.clone()],
        vec![a.clone(), b.clone(), c.clone()],
        vec![(a.clone(), b.clone()), (b.clone(), a.clone()), (c.clone(), cbar.clone())],
    )
    .unwrap();
    let universe = rule_universe(&sig, false, false);
    for_each_subset(&universe, 4, &mut |rules| {
        let framework = Framework::new(sig.clone(), rules.iter().cloned()).unwrap();
        let oracle = Oracle::new(&framework);
        check_core_ops(&framework, &oracle);
        check_semantics(&framework, &oracle);
    });
}
