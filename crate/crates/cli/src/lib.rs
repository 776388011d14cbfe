//! The `heisvc` command line: classification and fixed-set queries, homology
//! runs and the full verification suite, each producing a [`Report`].

pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use heisvc_core::chain::{homology, s3_double_cylinder, s3_join, torus_with_projections, InputFile};
use heisvc_core::cyclic::{
    bf_verify, canonical_class, compare_normalizer_zh, normalizer, primitive_root, zh_findings, NormalizerComparison,
};
use heisvc_core::model::fixed_set_report;
use heisvc_core::suites::{self, SuiteError};
use heisvc_core::{ChainComplex, ChainError, HeisElement, HeisError, HomologyGroup, SubgroupSpec};

pub use report::{Check, Finding, Report, ReportBuilder, Status};

pub const MAX_BOUND: i64 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "heisvc",
    version,
    about = "Verifier for the 3-dimensional vc-universal space of the discrete Heisenberg group"
)]
pub struct Cli {
    /// Ball radius for enumerations.
    #[arg(long, global = true, env = "HEISVC_BOUND", default_value_t = 3,
          value_parser = clap::value_parser!(i64).range(1..=MAX_BOUND))]
    pub bound: i64,

    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive root, conjugacy class and normalizer of the element (a, b, c).
    #[command(allow_negative_numbers = true)]
    Classify { a: i64, b: i64, c: i64 },
    /// Fixed set of the subgroup generated by triples separated by ';'.
    #[command(name = "fixed-set", allow_negative_numbers = true)]
    FixedSet {
        #[arg(required = true, num_args = 1..)]
        generators: Vec<String>,
    },
    /// Homology of s3, torus, join-s3, or a complex file.
    Homology { target: String },
    /// Run every check.
    #[command(name = "verify-all")]
    VerifyAll,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input { .. } => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<HeisError> for CliError {
    fn from(e: HeisError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        CliError::Internal(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify { a, b, c } => cmd_classify(HeisElement::new(*a, *b, *c)),
        Command::FixedSet { generators } => cmd_fixed_set(&parse_generators(&generators.join(" "))?, cli.bound),
        Command::Homology { target } => cmd_homology(target),
        Command::VerifyAll => cmd_verify_all(cli.bound),
    }
}

/// Renders the report and sends it to `--out` or standard output.
pub fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = if cli.json { report.to_json() } else { report.to_table() };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `"1 0 0 ; 0 1 0"` into two elements.
pub fn parse_generators(text: &str) -> Result<Vec<HeisElement>, CliError> {
    let gens = text
        .split(';')
        .map(|t| t.parse::<HeisElement>().map_err(|_| CliError::Usage(format!("malformed triple {:?}", t.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(gens)
}

fn zh_summary(class: &str, comparison: &NormalizerComparison) -> Option<String> {
    match comparison {
        NormalizerComparison::Equal => None,
        NormalizerComparison::ProperContainment { index } => {
            Some(format!("class {class}: Z<h> has index {index} in the normalizer, so N(<h>) != Z<h>"))
        }
    }
}

pub fn cmd_classify(g: HeisElement) -> Result<Report, CliError> {
    if g.is_identity() {
        return Err(CliError::Usage("the identity has no primitive root".into()));
    }
    let mut report = ReportBuilder::new(format!("classify {} {} {}", g.a, g.b, g.c));
    let t = Instant::now();
    let decomposition = primitive_root(&g)?;
    report.answer("primitive_root", decomposition, t.elapsed());
    let t = Instant::now();
    let class = canonical_class(&decomposition.root)?;
    report.answer("class", class, t.elapsed());
    if !class.is_center() {
        let t = Instant::now();
        report.answer("normalizer", normalizer(&decomposition.root)?, t.elapsed());
        let t = Instant::now();
        let comparison = compare_normalizer_zh(&decomposition.root)?;
        report.answer("zh_comparison", comparison, t.elapsed());
        if let Some(summary) = zh_summary(&class.to_string(), &comparison) {
            report.finding("normalizer_vs_zh", summary, json!({ "class": class, "comparison": comparison }));
        }
    }
    Ok(report.finish())
}

pub fn cmd_fixed_set(generators: &[HeisElement], bound: i64) -> Result<Report, CliError> {
    if generators.is_empty() {
        return Err(CliError::Usage("at least one generator is needed".into()));
    }
    let echo: Vec<String> = generators.iter().map(|g| format!("{} {} {}", g.a, g.b, g.c)).collect();
    let mut report = ReportBuilder::new(format!("fixed-set {} --bound {bound}", echo.join(" ; ")));
    let t = Instant::now();
    let answer = fixed_set_report(&SubgroupSpec::new(generators.to_vec()), bound)?;
    if let Some(census) = answer.census {
        if census.zh != census.computed_normalizer {
            report.finding(
                "census_zh",
                format!("{} qualifying cosets of the normalizer but {} of Z<h>", census.computed_normalizer, census.zh),
                census,
            );
        }
    }
    report.answer("fixed_set", answer, t.elapsed());
    Ok(report.finish())
}

fn homology_payload(c: &ChainComplex, groups: &[HomologyGroup]) -> serde_json::Value {
    let table: Vec<String> = groups.iter().enumerate().map(|(k, g)| format!("H{k}={g}")).collect();
    json!({ "ranks": c.ranks(), "groups": groups, "table": table })
}

fn read_complex(path: &Path) -> Result<ChainComplex, CliError> {
    let bad = |message: String| CliError::Input { path: path.display().to_string(), message };
    let text = std::fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let parsed = InputFile::parse(&text).map_err(|e| bad(e.to_string()))?;
    parsed.into_complex().map_err(|e| bad(e.to_string()))
}

pub fn cmd_homology(target: &str) -> Result<Report, CliError> {
    let z = HomologyGroup::free;
    let t = Instant::now();
    let (complex, expected) = match target {
        "s3" => (s3_double_cylinder()?, Some(vec![z(1), z(0), z(0), z(1)])),
        "join-s3" => (s3_join()?, Some(vec![z(1), z(0), z(0), z(1)])),
        "torus" => (torus_with_projections()?.0, Some(vec![z(1), z(2), z(1)])),
        path => (read_complex(Path::new(path))?, None),
    };
    let groups = homology(&complex)?.groups;
    let status = Status::from_ok(expected.as_ref().is_none_or(|e| *e == groups));
    let mut report = ReportBuilder::new(format!("homology {target}"));
    report.push("homology", status, homology_payload(&complex, &groups), t.elapsed());
    Ok(report.finish())
}

pub fn cmd_verify_all(bound: i64) -> Result<Report, CliError> {
    if !(1..=MAX_BOUND).contains(&bound) {
        return Err(CliError::Usage(format!("bound must lie in 1..={MAX_BOUND}, got {bound}")));
    }
    let mut report = ReportBuilder::new(format!("verify-all --bound {bound}"));

    let t = Instant::now();
    let bf = bf_verify(bound)?;
    let per_check = bf.checks.len().max(1) as u32;
    let share = t.elapsed() / per_check;
    for mut c in bf.checks {
        c.name = format!("bf_{}", c.name);
        report.summary(c, share);
    }

    type Suite = fn(i64) -> suites::Result<heisvc_core::CheckSummary>;
    let bounded: [Suite; 4] =
        [suites::action_laws, suites::isotropy_equivariance, suites::fixed_set_consistency, suites::census_exactly_one];
    for suite in bounded {
        let t = Instant::now();
        report.summary(suite(bound)?, t.elapsed());
    }
    let t = Instant::now();
    report.summary(suites::fixed_set_cases()?, t.elapsed());
    let t = Instant::now();
    let checks = suites::homology_checks()?;
    let share = t.elapsed() / checks.len().max(1) as u32;
    for c in checks {
        report.summary(c, share);
    }

    for f in zh_findings(bound)? {
        if let Some(summary) = zh_summary(&f.class.to_string(), &f.comparison) {
            report.finding("normalizer_vs_zh", summary, f);
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_parsing() {
        assert_eq!(
            parse_generators("1 0 0 ; 0 1 0").unwrap(),
            vec![HeisElement::new(1, 0, 0), HeisElement::new(0, 1, 0)]
        );
        assert_eq!(parse_generators(" -2 0 -1 ").unwrap(), vec![HeisElement::new(-2, 0, -1)]);
        for bad in ["", "1 0", "1 0 0 ;", "1 x 0", "1 0 0 0"] {
            assert!(matches!(parse_generators(bad), Err(CliError::Usage(_))), "{bad:?}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cmd_classify(HeisElement::IDENTITY).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_verify_all(0).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_homology("/nonexistent/file.json").unwrap_err().exit_code(), 3);
    }

    #[test]
    fn classify_examples() {
        let r = cmd_classify(HeisElement::new(4, 6, 8)).unwrap();
        assert_eq!(r.check("primitive_root").unwrap().data, json!({"root": {"a": 2, "b": 3, "c": 1}, "exponent": 2}));
        assert_eq!(r.check("class").unwrap().data, json!({"kind": "NonCentralClass", "a": 2, "b": 3, "c_residue": 0}));
        assert!(r.findings.is_empty());

        let r = cmd_classify(HeisElement::new(0, 0, 6)).unwrap();
        assert_eq!(r.check("class").unwrap().data, json!({"kind": "CenterZ"}));
        assert_eq!(r.check("primitive_root").unwrap().data["exponent"], json!(6));
        assert!(r.check("normalizer").is_none());

        let r = cmd_classify(HeisElement::new(2, 0, 1)).unwrap();
        assert_eq!(r.check("zh_comparison").unwrap().data, json!({"relation": "ProperContainment", "index": 2}));
        assert_eq!(r.findings.len(), 1);
        assert!(r.passed());
    }

    #[test]
    fn fixed_set_examples() {
        let case = |text: &str| {
            let r = cmd_fixed_set(&parse_generators(text).unwrap(), 3).unwrap();
            r.check("fixed_set").unwrap().data.clone()
        };
        assert_eq!(case("0 0 5")["case"], json!("B"));
        assert_eq!(case("1 0 0 ; 0 1 0")["case"], json!("D"));
        let a = case("0 1 0");
        assert_eq!(a["case"], json!("A"));
        assert_eq!(a["census"]["computed_normalizer"], json!(1));
    }

    #[test]
    fn homology_targets() {
        for target in ["s3", "join-s3"] {
            let r = cmd_homology(target).unwrap();
            assert!(r.passed());
            assert_eq!(r.checks[0].data["table"], json!(["H0=Z", "H1=0", "H2=0", "H3=Z"]));
        }
        let r = cmd_homology("torus").unwrap();
        assert_eq!(r.checks[0].data["table"], json!(["H0=Z", "H1=Z^2", "H2=Z"]));
    }
}
