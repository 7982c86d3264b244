//! Document format shared by every `baba` subcommand: a single JSON shape
//! for frameworks and profiles, distinguished by the number of agents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use bipolar_aba::{Framework, Profile, Rule, Sentence, Signature};

/// On-disk form. A document with exactly one agent denotes a plain
/// framework; two or more agents denote a profile. Unknown keys are
/// rejected. Contraries are optional and default to `~X` per assumption.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contraries: BTreeMap<String, String>,
    pub agents: Vec<AgentDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentDocument {
    /// `[head, body]` pairs; the body must be an assumption name.
    pub rules: Vec<(String, String)>,
}

/// Result of parsing a document.
#[derive(Debug, Clone)]
pub enum Parsed {
    Framework(Framework),
    Profile(Profile),
}

impl Parsed {
    pub fn signature(&self) -> &Arc<Signature> {
        match self {
            Parsed::Framework(fw) => fw.signature(),
            Parsed::Profile(p) => p.signature(),
        }
    }

    fn agent_rule_sets(&self) -> Vec<Vec<Rule>> {
        match self {
            Parsed::Framework(fw) => vec![fw.rules().iter().cloned().collect()],
            Parsed::Profile(p) => p
                .agent_rules()
                .iter()
                .map(|rules| rules.iter().cloned().collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum DocumentError {
    /// Malformed text; the message carries the position.
    Parse(String),
    /// Well-formed text that does not denote a valid framework or
    /// profile; every violation found is listed.
    Validation(Vec<String>),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Parse(msg) => write!(f, "parse error: {msg}"),
            DocumentError::Validation(problems) => {
                write!(f, "validation error: {}", problems.join("; "))
            }
        }
    }
}

fn sentence(name: &str, problems: &mut Vec<String>) -> Option<Sentence> {
    match Sentence::new(name) {
        Ok(s) => Some(s),
        Err(e) => {
            problems.push(e.to_string());
            None
        }
    }
}

/// Parses a document into a framework (one agent) or a profile (two or
/// more agents). Lenient: rationality violations such as self-attacks are
/// allowed; see [`strict_violations`].
pub fn parse_document(text: &str) -> Result<Parsed, DocumentError> {
    let doc: ProfileDocument =
        serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
    from_document(&doc)
}

pub fn from_document(doc: &ProfileDocument) -> Result<Parsed, DocumentError> {
    let mut problems = Vec::new();

    let mut seen = std::collections::BTreeSet::new();
    for name in &doc.assumptions {
        if !seen.insert(name.as_str()) {
            problems.push(format!("duplicate assumption {name:?}"));
        }
    }
    if doc.agents.is_empty() {
        problems.push(
            "agents list is empty (one agent denotes a framework, two or more a profile)"
                .to_owned(),
        );
    }
    for (key, _) in &doc.contraries {
        if !doc.assumptions.contains(key) {
            problems.push(format!("contrary given for non-assumption {key:?}"));
        }
    }

    let assumptions: Vec<Sentence> = doc
        .assumptions
        .iter()
        .filter_map(|name| sentence(name, &mut problems))
        .collect();
    let contraries: Vec<(Sentence, Sentence)> = assumptions
        .iter()
        .filter_map(|a| {
            let contrary_name = doc
                .contraries
                .get(a.name())
                .cloned()
                .unwrap_or_else(|| format!("~{}", a.name()));
            Some((a.clone(), sentence(&contrary_name, &mut problems)?))
        })
        .collect();

    // The language is everything mentioned: assumptions, contraries, and
    // every rule head and body.
    let mut language: Vec<Sentence> = Vec::new();
    for agent in &doc.agents {
        for (head, body) in &agent.rules {
            language.extend(sentence(head, &mut problems));
            language.extend(sentence(body, &mut problems));
        }
    }
    if !problems.is_empty() {
        return Err(DocumentError::Validation(problems));
    }

    let signature = Signature::new(language, assumptions, contraries)
        .map_err(|e| DocumentError::Validation(vec![e.to_string()]))?;

    let mut agent_rules: Vec<Vec<Rule>> = Vec::with_capacity(doc.agents.len());
    for (i, agent) in doc.agents.iter().enumerate() {
        let mut rules = Vec::with_capacity(agent.rules.len());
        for (head, body) in &agent.rules {
            let head = Sentence::new(head).expect("validated above");
            let body = Sentence::new(body).expect("validated above");
            match signature.assumption_index(&body) {
                Some(index) => rules.push(Rule::new(head, index)),
                None => problems.push(format!(
                    "agent {}: rule body {} is not an assumption",
                    i + 1,
                    body
                )),
            }
        }
        agent_rules.push(rules);
    }
    if !problems.is_empty() {
        return Err(DocumentError::Validation(problems));
    }

    if agent_rules.len() == 1 {
        let fw = Framework::new(signature, agent_rules.pop().expect("one agent"))
            .map_err(|e| DocumentError::Validation(vec![e.to_string()]))?;
        Ok(Parsed::Framework(fw))
    } else {
        let profile = Profile::new(signature, agent_rules)
            .map_err(|e| DocumentError::Validation(vec![e.to_string()]))?;
        Ok(Parsed::Profile(profile))
    }
}

/// Rationality violations under strict validation, rendered one per line
/// with the offending agent. Empty for a strictly valid document.
pub fn strict_violations(parsed: &Parsed) -> Vec<String> {
    let signature = parsed.signature().clone();
    let mut out = Vec::new();
    let rule_sets = parsed.agent_rule_sets();
    let multi = rule_sets.len() > 1;
    for (i, rules) in rule_sets.into_iter().enumerate() {
        let fw = Framework::new(signature.clone(), rules).expect("already validated");
        for violation in fw.validate(true) {
            let rendered = violation.display(&signature);
            if multi {
                out.push(format!("agent {}: {rendered}", i + 1));
            } else {
                out.push(rendered);
            }
        }
    }
    out
}

/// Canonical document form: assumptions sorted, rules sorted, contraries
/// only where they differ from the `~X` default.
pub fn to_document(parsed: &Parsed) -> ProfileDocument {
    let signature = parsed.signature();
    let assumptions: Vec<String> = signature
        .assumptions()
        .iter()
        .map(|a| a.name().to_owned())
        .collect();
    let contraries: BTreeMap<String, String> = signature
        .assumptions()
        .iter()
        .enumerate()
        .filter(|(i, a)| signature.contrary(*i).name() != format!("~{}", a.name()))
        .map(|(i, a)| (a.name().to_owned(), signature.contrary(i).name().to_owned()))
        .collect();
    let agents = parsed
        .agent_rule_sets()
        .into_iter()
        .map(|mut rules| {
            rules.sort();
            AgentDocument {
                rules: rules
                    .iter()
                    .map(|r| {
                        (
                            r.head.name().to_owned(),
                            signature.assumption(r.body).name().to_owned(),
                        )
                    })
                    .collect(),
            }
        })
        .collect();
    ProfileDocument { assumptions, contraries, agents }
}

/// Canonical serialization; `serialize(parse(x))` is a fixed point.
pub fn serialize(parsed: &Parsed) -> String {
    let mut text = serde_json::to_string_pretty(&to_document(parsed))
        .expect("document serialization is infallible");
    text.push('\n');
    text
}
