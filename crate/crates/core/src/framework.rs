//! Bipolar ABA frameworks: sentences, signatures, rules, and the basic
//! attack/closure machinery everything else is built on.
//!
//! A framework is a deductive system where every rule has a single
//! assumption as its body and either an assumption or a contrary as its
//! head. Assumption-headed rules act as supports, contrary-headed rules
//! as attacks.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Hard cap on the number of assumptions; extension enumeration scans
/// subsets, so the bitmask capacity is the tractability ceiling.
pub const MAX_ASSUMPTIONS: usize = 20;

/// An element of the language. Opaque symbolic name: nonempty, no whitespace.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sentence(String);

impl Sentence {
    pub fn new(name: impl Into<String>) -> Result<Self, SignatureError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SignatureError::BadSentenceName(name));
        }
        Ok(Sentence(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sentence({})", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("sentence name {0:?} is empty or contains whitespace")]
    BadSentenceName(String),
    #[error("signature needs at least one assumption")]
    NoAssumptions,
    #[error("too many assumptions: {0} (capacity {MAX_ASSUMPTIONS})")]
    TooManyAssumptions(usize),
    #[error("assumption {0} is not in the language")]
    AssumptionOutsideLanguage(String),
    #[error("no contrary given for assumption {0}")]
    MissingContrary(String),
    #[error("contrary {contrary} of {assumption} is not in the language")]
    ContraryOutsideLanguage { assumption: String, contrary: String },
}

/// The shared vocabulary of a debate: language, assumptions, and the
/// contrary map. Agents in a profile all reason over one signature.
///
/// Assumptions are kept sorted lexicographically by name; every set or
/// extension the engine emits is ordered by this canonical index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    language: BTreeSet<Sentence>,
    assumptions: Vec<Sentence>,
    contraries: Vec<Sentence>,
}

impl Signature {
    /// Builds a signature from a language, an assumption subset, and a
    /// contrary pair list. The language is extended with assumptions and
    /// contraries if they are missing from it.
    pub fn new(
        language: impl IntoIterator<Item = Sentence>,
        assumptions: impl IntoIterator<Item = Sentence>,
        contraries: impl IntoIterator<Item = (Sentence, Sentence)>,
    ) -> Result<Arc<Self>, SignatureError> {
        let mut language: BTreeSet<Sentence> = language.into_iter().collect();
        let mut assumption_set: BTreeSet<Sentence> = assumptions.into_iter().collect();
        let contrary_pairs: Vec<(Sentence, Sentence)> = contraries.into_iter().collect();

        if assumption_set.is_empty() {
            return Err(SignatureError::NoAssumptions);
        }
        if assumption_set.len() > MAX_ASSUMPTIONS {
            return Err(SignatureError::TooManyAssumptions(assumption_set.len()));
        }
        let assumptions: Vec<Sentence> = std::mem::take(&mut assumption_set).into_iter().collect();
        language.extend(assumptions.iter().cloned());

        let mut contraries = Vec::with_capacity(assumptions.len());
        for a in &assumptions {
            let c = contrary_pairs
                .iter()
                .find(|(x, _)| x == a)
                .map(|(_, c)| c.clone())
                .ok_or_else(|| SignatureError::MissingContrary(a.name().to_owned()))?;
            contraries.push(c);
        }
        language.extend(contraries.iter().cloned());

        Ok(Arc::new(Signature {
            language,
            assumptions,
            contraries,
        }))
    }

    /// Convenience constructor: assumptions by name, each with the
    /// canonical fresh contrary `~name`.
    pub fn with_default_contraries(
        names: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Arc<Self>, SignatureError> {
        let assumptions: Vec<Sentence> = names
            .into_iter()
            .map(Sentence::new)
            .collect::<Result<_, _>>()?;
        let contraries: Vec<(Sentence, Sentence)> = assumptions
            .iter()
            .map(|a| Ok((a.clone(), Sentence::new(format!("~{}", a.name()))?)))
            .collect::<Result<_, SignatureError>>()?;
        Signature::new([], assumptions, contraries)
    }

    pub fn language(&self) -> &BTreeSet<Sentence> {
        &self.language
    }

    pub fn assumptions(&self) -> &[Sentence] {
        &self.assumptions
    }

    pub fn assumption_count(&self) -> usize {
        self.assumptions.len()
    }

    pub fn assumption(&self, index: usize) -> &Sentence {
        &self.assumptions[index]
    }

    /// Index of an assumption in the canonical (lexicographic) order.
    pub fn assumption_index(&self, s: &Sentence) -> Option<usize> {
        self.assumptions.binary_search(s).ok()
    }

    pub fn contrary(&self, index: usize) -> &Sentence {
        &self.contraries[index]
    }

    pub fn contains(&self, s: &Sentence) -> bool {
        self.language.contains(s)
    }

    /// True iff the sentence is a legal rule head: an assumption or the
    /// contrary of some assumption.
    pub fn is_legal_head(&self, s: &Sentence) -> bool {
        self.assumption_index(s).is_some() || self.contraries.contains(s)
    }

    /// The full assumption set over this signature.
    pub fn all_assumptions(&self) -> AssumptionSet {
        AssumptionSet::full(self.assumption_count())
    }
}

/// A set of assumptions, stored as a bitmask over canonical indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AssumptionSet(u32);

impl AssumptionSet {
    pub const EMPTY: AssumptionSet = AssumptionSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ASSUMPTIONS);
        AssumptionSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(index: usize) -> Self {
        AssumptionSet(1 << index)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0u32;
        for i in indices {
            debug_assert!(i < MAX_ASSUMPTIONS);
            bits |= 1 << i;
        }
        AssumptionSet(bits)
    }

    pub fn from_bits(bits: u32) -> Self {
        AssumptionSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1 << index;
    }

    pub fn with(self, index: usize) -> Self {
        AssumptionSet(self.0 | (1 << index))
    }

    pub fn without(self, index: usize) -> Self {
        AssumptionSet(self.0 & !(1 << index))
    }

    pub fn union(self, other: Self) -> Self {
        AssumptionSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        AssumptionSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        AssumptionSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Parses a comma-joined list of assumption names; the empty string
    /// is the empty set.
    pub fn parse(text: &str, signature: &Signature) -> Result<Self, FrameworkError> {
        let mut set = AssumptionSet::EMPTY;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let s = Sentence::new(part).map_err(|_| FrameworkError::UnknownAssumption(part.to_owned()))?;
            let i = signature
                .assumption_index(&s)
                .ok_or_else(|| FrameworkError::UnknownAssumption(part.to_owned()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Renders as `{A, C}` using the signature's assumption names.
    pub fn display(self, signature: &Signature) -> String {
        let names: Vec<&str> = self.iter().map(|i| signature.assumption(i).name()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for AssumptionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AssumptionSet({:b})", self.0)
    }
}

// Canonical order: lexicographic over the ascending index sequence, so
// {} < {A} < {A,B} < {A,C} < {B}. This is the order extension lists are
// reported in.
impl Ord for AssumptionSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (mut x, mut y) = (self.0, other.0);
        while x != 0 && y != 0 {
            let (ix, iy) = (x.trailing_zeros(), y.trailing_zeros());
            if ix != iy {
                return ix.cmp(&iy);
            }
            x &= x - 1;
            y &= y - 1;
        }
        (x != 0).cmp(&(y != 0))
    }
}

impl PartialOrd for AssumptionSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A single-assumption-body inference rule `head <- body`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Sentence,
    pub body: usize,
}

impl Rule {
    pub fn new(head: Sentence, body: usize) -> Self {
        Rule { head, body }
    }

    /// An attack rule `contrary(target) <- body`, using the signature's
    /// contrary map.
    pub fn attack(signature: &Signature, target: usize, body: usize) -> Self {
        Rule::new(signature.contrary(target).clone(), body)
    }

    /// A support rule `head <- body` between two assumptions.
    pub fn support(signature: &Signature, head: usize, body: usize) -> Self {
        Rule::new(signature.assumption(head).clone(), body)
    }

    pub fn display(&self, signature: &Signature) -> String {
        format!("{} <- {}", self.head, signature.assumption(self.body))
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({} <- #{})", self.head, self.body)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameworkError {
    #[error("rule body index {0} out of range")]
    BadBodyIndex(usize),
    #[error("rule head {0} is not in the language")]
    HeadOutsideLanguage(String),
    #[error("sentence {0} is not in the language")]
    SentenceOutsideLanguage(String),
    #[error("unknown assumption {0:?}")]
    UnknownAssumption(String),
    #[error("assumption index {0} out of range")]
    BadAssumptionIndex(usize),
}

/// A well-formedness violation reported by [`Framework::validate`].
/// Violations are data, not failures: a lenient framework may carry them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Rule head is neither an assumption nor any assumption's contrary.
    BadHead(Rule),
    /// Rule of the form `contrary(a) <- a`, excluded by agent rationality.
    SelfAttack(Rule),
    /// Rule of the form `a <- a`; a closure no-op, flagged in strict mode.
    SelfSupport(Rule),
}

impl Violation {
    pub fn display(&self, signature: &Signature) -> String {
        match self {
            Violation::BadHead(r) => format!("bad head: {}", r.display(signature)),
            Violation::SelfAttack(r) => format!("self-attack: {}", r.display(signature)),
            Violation::SelfSupport(r) => format!("self-support: {}", r.display(signature)),
        }
    }
}

/// A bipolar ABA framework: a signature plus a deduplicated rule set.
///
/// Immutable after construction; all operations are pure and safe to call
/// concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framework {
    signature: Arc<Signature>,
    rules: BTreeSet<Rule>,
    // supports_from[b] = assumptions directly derivable from b in one step
    supports_from: Vec<u32>,
    // direct_attackers[t] = bodies of rules whose head is contrary(t)
    direct_attackers: Vec<u32>,
    // contrary(t) seen as an assumption index, when it is one
    contrary_as_assumption: Vec<Option<usize>>,
}

impl Framework {
    pub fn new(
        signature: Arc<Signature>,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<Self, FrameworkError> {
        let n = signature.assumption_count();
        let rules: BTreeSet<Rule> = rules.into_iter().collect();
        for r in &rules {
            if r.body >= n {
                return Err(FrameworkError::BadBodyIndex(r.body));
            }
            if !signature.contains(&r.head) {
                return Err(FrameworkError::HeadOutsideLanguage(r.head.name().to_owned()));
            }
        }

        let mut supports_from = vec![0u32; n];
        let mut direct_attackers = vec![0u32; n];
        for r in &rules {
            if let Some(h) = signature.assumption_index(&r.head) {
                supports_from[r.body] |= 1 << h;
            }
            for t in 0..n {
                if signature.contrary(t) == &r.head {
                    direct_attackers[t] |= 1 << r.body;
                }
            }
        }
        let contrary_as_assumption = (0..n)
            .map(|t| signature.assumption_index(signature.contrary(t)))
            .collect();

        Ok(Framework {
            signature,
            rules,
            supports_from,
            direct_attackers,
            contrary_as_assumption,
        })
    }

    /// Framework over the same signature with no rules.
    pub fn empty(signature: Arc<Signature>) -> Self {
        Framework::new(signature, []).expect("empty rule set is always valid")
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn rules(&self) -> &BTreeSet<Rule> {
        &self.rules
    }

    /// Checks the definitional invariants; strict mode additionally
    /// reports the rationality exclusions (self-attack) and self-support.
    pub fn validate(&self, strict: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        for r in &self.rules {
            if !self.signature.is_legal_head(&r.head) {
                out.push(Violation::BadHead(r.clone()));
            }
            if strict {
                if &r.head == self.signature.contrary(r.body) {
                    out.push(Violation::SelfAttack(r.clone()));
                }
                if &r.head == self.signature.assumption(r.body) {
                    out.push(Violation::SelfSupport(r.clone()));
                }
            }
        }
        out
    }

    /// Least fixpoint of adding every assumption derivable from the set.
    /// Extensive, monotone, idempotent.
    pub fn closure(&self, set: AssumptionSet) -> AssumptionSet {
        let mut cur = set.bits();
        loop {
            let mut next = cur;
            let mut bits = cur;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.supports_from[i];
            }
            if next == cur {
                return AssumptionSet::from_bits(cur);
            }
            cur = next;
        }
    }

    pub fn is_closed(&self, set: AssumptionSet) -> bool {
        self.closure(set) == set
    }

    /// True iff some subset of `set` deduces `sentence`. Every deduction
    /// in a bipolar framework is a chain carried by one leaf assumption,
    /// so this reduces to a closure membership check.
    pub fn derives(&self, set: AssumptionSet, sentence: &Sentence) -> Result<bool, FrameworkError> {
        if !self.signature.contains(sentence) {
            return Err(FrameworkError::SentenceOutsideLanguage(sentence.name().to_owned()));
        }
        let cl = self.closure(set);
        if let Some(i) = self.signature.assumption_index(sentence) {
            return Ok(cl.contains(i));
        }
        Ok(self
            .rules
            .iter()
            .any(|r| &r.head == sentence && cl.contains(r.body)))
    }

    /// True iff `attacker` deduces the contrary of the target assumption.
    pub fn attacks(&self, attacker: AssumptionSet, target: usize) -> bool {
        let cl = self.closure(attacker);
        if self.direct_attackers[target] & cl.bits() != 0 {
            return true;
        }
        match self.contrary_as_assumption[target] {
            Some(j) => cl.contains(j),
            None => false,
        }
    }

    /// True iff `attacker` attacks some member of `target`.
    pub fn attacks_set(&self, attacker: AssumptionSet, target: AssumptionSet) -> bool {
        target.iter().any(|t| self.attacks(attacker, t))
    }

    pub fn is_conflict_free(&self, set: AssumptionSet) -> bool {
        !self.attacks_set(set, set)
    }

    /// True iff `set` counter-attacks every closed attacker of `target`.
    ///
    /// Any closed attacker contains a singleton carrier b and includes
    /// Cl({b}), so quantifying over single attacking assumptions and
    /// their closures is equivalent to quantifying over all closed sets.
    pub fn defends(&self, set: AssumptionSet, target: usize) -> bool {
        let n = self.signature.assumption_count();
        for b in 0..n {
            if self.attacks(AssumptionSet::singleton(b), target)
                && !self.attacks_set(set, self.closure(AssumptionSet::singleton(b)))
            {
                return false;
            }
        }
        true
    }

    /// The assumptions this set defends.
    pub fn defended_set(&self, set: AssumptionSet) -> AssumptionSet {
        let n = self.signature.assumption_count();
        AssumptionSet::from_indices((0..n).filter(|&a| self.defends(set, a)))
    }
}

/// All legal rules over a signature: attack rules `contrary(t) <- b` and
/// support rules `h <- b`, with self-attacks and self-supports optionally
/// excluded. Canonically sorted and deduplicated.
pub fn rule_universe(
    signature: &Signature,
    exclude_self_attack: bool,
    exclude_self_support: bool,
) -> Vec<Rule> {
    let n = signature.assumption_count();
    let mut rules = BTreeSet::new();
    for b in 0..n {
        for t in 0..n {
            if !(exclude_self_attack && t == b) {
                rules.insert(Rule::attack(signature, t, b));
            }
        }
        for h in 0..n {
            if !(exclude_self_support && h == b) {
                rules.insert(Rule::support(signature, h, b));
            }
        }
    }
    // With default contraries these sets are disjoint, but a contrary may
    // be another assumption, in which case an attack rule is also a
    // support rule; the BTreeSet merge keeps one copy.
    rules.into_iter().collect()
}
