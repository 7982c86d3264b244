//! Naive definitional oracle used only by tests. Works on sentences and
//! explicit subset quantification; deliberately ignores the engine's
//! closure characterizations and singleton-carrier shortcuts. Deductions
//! for each assumption subset are computed once up front by forward
//! chaining (memoization only, same definitional content).

use std::collections::BTreeSet;

use bipolar_aba::{AssumptionSet, Framework, Sentence};

pub struct Oracle {
    assumptions: Vec<Sentence>,
    contraries: Vec<Sentence>,
    /// deducible[bits] = all sentences with a deduction tree from that set.
    deducible: Vec<BTreeSet<Sentence>>,
    closed: Vec<AssumptionSet>,
}

impl Oracle {
    pub fn new(framework: &Framework) -> Self {
        let sig = framework.signature();
        let assumptions: Vec<Sentence> = sig.assumptions().to_vec();
        let contraries: Vec<Sentence> =
            (0..assumptions.len()).map(|i| sig.contrary(i).clone()).collect();
        let rules: Vec<(Sentence, Sentence)> = framework
            .rules()
            .iter()
            .map(|r| (r.head.clone(), sig.assumption(r.body).clone()))
            .collect();
        let n = assumptions.len();
        let mut deducible = Vec::with_capacity(1 << n);
        for bits in 0u32..1 << n {
            let mut derived: BTreeSet<Sentence> = AssumptionSet::from_bits(bits)
                .iter()
                .map(|i| assumptions[i].clone())
                .collect();
            loop {
                let mut grew = false;
                for (head, body) in &rules {
                    if derived.contains(body) && !derived.contains(head) {
                        derived.insert(head.clone());
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
            deducible.push(derived);
        }
        let mut oracle = Oracle { assumptions, contraries, deducible, closed: Vec::new() };
        oracle.closed = (0u32..1 << n)
            .map(AssumptionSet::from_bits)
            .filter(|&s| oracle.is_closed(s))
            .collect();
        oracle
    }

    pub fn n(&self) -> usize {
        self.assumptions.len()
    }

    pub fn derives(&self, set: AssumptionSet, sentence: &Sentence) -> bool {
        self.deducible[set.bits() as usize].contains(sentence)
    }

    pub fn closure(&self, set: AssumptionSet) -> AssumptionSet {
        let derived = &self.deducible[set.bits() as usize];
        AssumptionSet::from_indices(
            (0..self.n()).filter(|&i| derived.contains(&self.assumptions[i])),
        )
    }

    pub fn is_closed(&self, set: AssumptionSet) -> bool {
        self.closure(set) == set
    }

    /// Definitional attack: some subset of the attacker deduces the
    /// target's contrary. Quantifies over every subset explicitly.
    pub fn attacks(&self, attacker: AssumptionSet, target: usize) -> bool {
        let bits = attacker.bits();
        let mut sub = bits;
        loop {
            if self.deducible[sub as usize].contains(&self.contraries[target]) {
                return true;
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & bits;
        }
    }

    pub fn attacks_set(&self, attacker: AssumptionSet, target: AssumptionSet) -> bool {
        target.iter().any(|t| self.attacks(attacker, t))
    }

    pub fn is_conflict_free(&self, set: AssumptionSet) -> bool {
        !self.attacks_set(set, set)
    }

    /// Literal defense: every closed attacker of `target` is attacked back.
    pub fn defends(&self, set: AssumptionSet, target: usize) -> bool {
        self.closed
            .iter()
            .filter(|&&b| self.attacks(b, target))
            .all(|&b| self.attacks_set(set, b))
    }

    pub fn is_admissible(&self, set: AssumptionSet) -> bool {
        self.is_closed(set)
            && self.is_conflict_free(set)
            && self
                .closed
                .iter()
                .filter(|&&b| self.attacks_set(b, set))
                .all(|&b| self.attacks_set(set, b))
    }

    pub fn is_set_stable(&self, set: AssumptionSet) -> bool {
        self.is_closed(set)
            && self.is_conflict_free(set)
            && (0..self.n())
                .filter(|&b| !set.contains(b))
                .all(|b| self.attacks_set(set, self.closure(AssumptionSet::singleton(b))))
    }

    pub fn is_complete(&self, set: AssumptionSet) -> bool {
        self.is_admissible(set)
            && (0..self.n()).all(|a| set.contains(a) == self.defends(set, a))
    }

    /// Families are returned in the engine's canonical order.
    fn canonical(mut family: Vec<AssumptionSet>) -> Vec<AssumptionSet> {
        family.sort();
        family
    }

    pub fn admissible_family(&self) -> Vec<AssumptionSet> {
        Self::canonical(
            (0u32..1 << self.n())
                .map(AssumptionSet::from_bits)
                .filter(|&s| self.is_admissible(s))
                .collect(),
        )
    }

    pub fn preferred_family(&self) -> Vec<AssumptionSet> {
        let admissible = self.admissible_family();
        admissible
            .iter()
            .copied()
            .filter(|&a| !admissible.iter().any(|&b| a != b && a.is_subset_of(b)))
            .collect()
    }

    pub fn complete_family(&self) -> Vec<AssumptionSet> {
        Self::canonical(
            (0u32..1 << self.n())
                .map(AssumptionSet::from_bits)
                .filter(|&s| self.is_complete(s))
                .collect(),
        )
    }

    pub fn set_stable_family(&self) -> Vec<AssumptionSet> {
        Self::canonical(
            (0u32..1 << self.n())
                .map(AssumptionSet::from_bits)
                .filter(|&s| self.is_set_stable(s))
                .collect(),
        )
    }

    /// Intersection of complete extensions, if any exist.
    pub fn well_founded(&self) -> Option<AssumptionSet> {
        let complete = self.complete_family();
        complete
            .split_first()
            .map(|(&first, rest)| rest.iter().fold(first, |acc, &c| acc.intersection(c)))
    }

    pub fn ideal_family(&self) -> Vec<AssumptionSet> {
        let preferred = self.preferred_family();
        let core = preferred
            .iter()
            .fold(AssumptionSet::full(self.n()), |acc, &p| acc.intersection(p));
        let candidates: Vec<AssumptionSet> = self
            .admissible_family()
            .into_iter()
            .filter(|a| a.is_subset_of(core))
            .collect();
        Self::canonical(
            candidates
                .iter()
                .copied()
                .filter(|&a| !candidates.iter().any(|&b| a != b && a.is_subset_of(b)))
                .collect(),
        )
    }
}
