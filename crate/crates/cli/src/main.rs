//! `baba`: command line front end for the bipolar assumption-based
//! argumentation engine.

use std::path::{Path, PathBuf};
use std::process::exit;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use baba_cli::{parse_document, strict_violations, Parsed};
use bipolar_aba::{
    aggregate, builtin_scenarios, check_preservation_with_cap, check_theorem, enumerate_with_cap,
    AggregationSpec, PreservationError, PreservationVerdict, Profile, PropertyId, SemanticsError,
    SemanticsId, TheoremBudget, DEFAULT_ENUM_CAP, THEOREM_IDS,
};

const EX_VIOLATED: i32 = 2;
const EX_NOT_APPLICABLE: i32 = 3;
const EX_USAGE: i32 = 64;
const EX_DATA: i32 = 65;

/// Environment variable overriding the default subset-enumeration cap.
const ENUM_CAP_VAR: &str = "BABA_ENUM_CAP";

#[derive(Parser)]
#[command(
    name = "baba",
    version,
    about = "Bipolar assumption-based argumentation: semantics, aggregation, preservation"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Reject documents with rationality violations (self-attacks,
    /// self-supports, stray rule heads).
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    Paper,
    Theorems,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the extensions of a framework under one semantics.
    Semantics {
        /// Framework document (a single-agent profile document).
        file: PathBuf,
        /// One of: admissible, preferred, complete, set-stable,
        /// well-founded, ideal.
        #[arg(long)]
        semantics: String,
    },
    /// Aggregate a profile's rule sets into one framework.
    Aggregate {
        /// Profile document (two or more agents).
        profile: PathBuf,
        /// quota:<q> | nomination | weak-majority | strict-majority |
        /// unanimity | oligarchy:<i,j,...> | dictator:<i>
        #[arg(long)]
        rule: String,
    },
    /// Check whether aggregation preserves a property every agent has.
    Preserve {
        /// Profile document (two or more agents).
        profile: PathBuf,
        /// Aggregation rule, as for `aggregate`.
        #[arg(long)]
        rule: String,
        /// conflict-free:<set> | closed:<set> | extension:<semantics>:<set>
        /// | acceptable:<name>:<semantics> | acyclic | wf-nonempty |
        /// coherent, with sets as comma-joined assumption names.
        #[arg(long)]
        property: String,
    },
    /// Run the built-in scenario and theorem fuzz suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Base seed for the theorem fuzz suite.
        #[arg(long)]
        seed: Option<u64>,
        /// Profiles sampled per theorem.
        #[arg(long)]
        budget: Option<usize>,
    },
}

/// A failure with its exit code; usage errors are 64, input data errors
/// (parse or validation) are 65.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EX_USAGE, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure { code: EX_DATA, message: message.into() }
    }
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        Failure::data(e.to_string())
    }
}

impl From<PreservationError> for Failure {
    fn from(e: PreservationError) -> Self {
        Failure::data(e.to_string())
    }
}

fn enum_cap() -> Result<usize, Failure> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("invalid {ENUM_CAP_VAR} value {value:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ENUM_CAP),
        Err(e) => Err(Failure::usage(format!("cannot read {ENUM_CAP_VAR}: {e}"))),
    }
}

fn load(path: &Path, strict: bool) -> Result<Parsed, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_document(&text).map_err(|e| Failure::data(e.to_string()))?;
    if strict {
        let violations = strict_violations(&parsed);
        if !violations.is_empty() {
            return Err(Failure::data(format!(
                "validation error: {}",
                violations.join("; ")
            )));
        }
    }
    Ok(parsed)
}

fn load_framework(path: &Path, strict: bool) -> Result<bipolar_aba::Framework, Failure> {
    match load(path, strict)? {
        Parsed::Framework(fw) => Ok(fw),
        Parsed::Profile(p) => Err(Failure::data(format!(
            "expected a framework document (one agent), got a profile with {} agents",
            p.agent_count()
        ))),
    }
}

fn load_profile(path: &Path, strict: bool) -> Result<Profile, Failure> {
    match load(path, strict)? {
        Parsed::Profile(p) => Ok(p),
        Parsed::Framework(_) => Err(Failure::data(
            "expected a profile document with at least two agents, got a framework".to_owned(),
        )),
    }
}

fn parse_spec(text: &str) -> Result<AggregationSpec, Failure> {
    AggregationSpec::from_str(text).map_err(|e| Failure::usage(e.to_string()))
}

fn run_semantics(file: &Path, tag: &str, strict: bool, format: Format) -> Result<i32, Failure> {
    let semantics =
        SemanticsId::from_str(tag).map_err(|e| Failure::usage(e.to_string()))?;
    let framework = load_framework(file, strict)?;
    let report = enumerate_with_cap(&framework, semantics, enum_cap()?)?;
    let signature = framework.signature();
    match format {
        Format::Json => {
            let extensions: Vec<Vec<&str>> = report
                .extensions
                .iter()
                .map(|e| e.iter().map(|i| signature.assumption(i).name()).collect())
                .collect();
            println!(
                "{}",
                json!({
                    "semantics": semantics.tag(),
                    "exists": report.exists,
                    "extensions": extensions,
                })
            );
        }
        Format::Text => {
            println!("semantics: {semantics}");
            println!("exists: {}", report.exists);
            println!("extensions ({}):", report.extensions.len());
            for extension in &report.extensions {
                println!("  {}", extension.display(signature));
            }
        }
    }
    Ok(0)
}

fn run_aggregate(file: &Path, rule: &str, strict: bool, format: Format) -> Result<i32, Failure> {
    let spec = parse_spec(rule)?;
    let profile = load_profile(file, strict)?;
    let aggregated = aggregate(&profile, &spec).map_err(|e| Failure::data(e.to_string()))?;
    let signature = aggregated.signature();
    match format {
        Format::Json => {
            let rules: Vec<(&str, &str)> = aggregated
                .rules()
                .iter()
                .map(|r| (r.head.name(), signature.assumption(r.body).name()))
                .collect();
            println!("{}", json!({ "rules": rules }));
        }
        Format::Text => {
            for rule in aggregated.rules() {
                println!("{}", rule.display(signature));
            }
        }
    }
    Ok(0)
}

fn run_preserve(
    file: &Path,
    rule: &str,
    property: &str,
    strict: bool,
    format: Format,
) -> Result<i32, Failure> {
    let spec = parse_spec(rule)?;
    let profile = load_profile(file, strict)?;
    let property = PropertyId::parse(property, profile.signature())
        .map_err(|e| Failure::usage(e.to_string()))?;
    let verdict = check_preservation_with_cap(&profile, &spec, &property, enum_cap()?)?;
    match format {
        Format::Json => {
            let mut value = json!({ "verdict": verdict.tag() });
            if let PreservationVerdict::NotApplicable { failing_agent } = verdict {
                value["failing_agent"] = json!(failing_agent);
            }
            println!("{value}");
        }
        Format::Text => println!("{verdict}"),
    }
    Ok(match verdict {
        PreservationVerdict::Preserved => 0,
        PreservationVerdict::Violated => EX_VIOLATED,
        PreservationVerdict::NotApplicable { .. } => EX_NOT_APPLICABLE,
    })
}

fn run_verify(
    suite: Suite,
    seed: Option<u64>,
    budget: Option<usize>,
    format: Format,
) -> Result<i32, Failure> {
    let mut results = Vec::new();
    let mut failures = 0usize;

    if suite != Suite::Theorems {
        for scenario in builtin_scenarios() {
            let outcome = scenario.run().map_err(|e| Failure::data(e.to_string()))?;
            if !outcome.passed {
                failures += 1;
            }
            results.push(json!({
                "kind": "scenario",
                "id": outcome.id,
                "passed": outcome.passed,
                "detail": outcome.detail,
            }));
        }
    }
    if suite != Suite::Paper {
        let mut theorem_budget = TheoremBudget::default();
        if let Some(seed) = seed {
            theorem_budget.seed = seed;
        }
        if let Some(profiles) = budget {
            theorem_budget.profiles = profiles;
        }
        for id in THEOREM_IDS {
            let report =
                check_theorem(id, &theorem_budget).map_err(|e| Failure::data(e.to_string()))?;
            if !report.violations.is_empty() {
                failures += 1;
            }
            results.push(json!({
                "kind": "theorem",
                "id": report.theorem_id,
                "passed": report.violations.is_empty(),
                "profiles": report.profiles_checked,
                "violations": report.violations,
            }));
        }
    }

    match format {
        Format::Json => {
            println!("{}", json!({ "results": results, "failures": failures }));
        }
        Format::Text => {
            for result in &results {
                let id = result["id"].as_str().expect("id is a string");
                let kind = result["kind"].as_str().expect("kind is a string");
                if result["passed"].as_bool().expect("passed is a bool") {
                    println!("{kind} {id}: pass");
                } else if kind == "scenario" {
                    println!(
                        "{kind} {id}: FAIL ({})",
                        result["detail"].as_str().expect("detail is a string")
                    );
                } else {
                    let violations = result["violations"].as_array().expect("violation list");
                    println!(
                        "{kind} {id}: FAIL ({} violations in {} profiles)",
                        violations.len(),
                        result["profiles"]
                    );
                    for violation in violations.iter().take(3) {
                        println!("    {}", violation.as_str().expect("violation is a string"));
                    }
                }
            }
            println!("summary: {} checks, {} failures", results.len(), failures);
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Semantics { file, semantics } => {
            run_semantics(file, semantics, cli.strict, cli.format)
        }
        Command::Aggregate { profile, rule } => {
            run_aggregate(profile, rule, cli.strict, cli.format)
        }
        Command::Preserve { profile, rule, property } => {
            run_preserve(profile, rule, property, cli.strict, cli.format)
        }
        Command::Verify { suite, seed, budget } => {
            run_verify(*suite, *seed, *budget, cli.format)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            exit(code);
        }
    };
    match run(cli) {
        Ok(code) => exit(code),
        Err(failure) => {
            eprintln!("baba: {}", failure.message);
            exit(failure.code);
        }
    }
}
