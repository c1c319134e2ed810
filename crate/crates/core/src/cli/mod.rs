//! Reads an instance file, runs the analysis and renders the report.

mod input;
mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::action::{validate_action, ActionError};
use crate::character::{
    character_table, cross_check_all, decompose, graded_decomposition, prime_power_verdict, CharacterError,
};
use crate::exactalg::DEFAULT_ORDER_CAP;
use crate::fan::{validate_fan, FanError, ValidationLevel};

pub use input::{parse_input, parse_instance_str, InstanceFile, JsonInt};
pub use report::{
    CrossCheckSummary, Decimal, DecompositionRow, DecompositionSummary, DegreeRow, DivisorCheck, DivisorRow,
    GradedSummary, PrimePowerSummary, QuotientRow, RayRow, Report, ValidationSummary, VerdictSummary,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) | CliError::DimensionMismatch(_) | CliError::IndexOutOfRange(_) => 3,
            CliError::Fan(_) | CliError::Action(_) => 2,
            // Past validation, a failure here means a broken invariant.
            CliError::Character(_) | CliError::InternalInconsistency(_) => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ValidationArg {
    Basic,
    Geometric,
}

impl From<ValidationArg> for ValidationLevel {
    fn from(v: ValidationArg) -> Self {
        match v {
            ValidationArg::Basic => ValidationLevel::Basic,
            ValidationArg::Geometric => ValidationLevel::Geometric,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub graded: bool,
    pub cross_check: bool,
    pub validation: ValidationLevel,
    pub max_order: u64,
    pub normalize_rays: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            graded: false,
            cross_check: false,
            validation: ValidationLevel::Basic,
            max_order: DEFAULT_ORDER_CAP,
            normalize_rays: false,
        }
    }
}

/// Analyze the action of a finite cyclic group on a complete simplicial fan.
#[derive(Debug, Parser)]
#[command(name = "cyclofan", version)]
pub struct Args {
    /// Instance file (json).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Decompose each graded piece and run the prime-power check.
    #[arg(long)]
    pub graded: bool,
    /// Verify the Q-formula, valuation and quotient identities for all divisors.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, value_enum, default_value_t = ValidationArg::Basic)]
    pub validation: ValidationArg,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: u64,
    /// Divide rays by the gcd of their entries instead of rejecting them.
    #[arg(long)]
    pub normalize_rays: bool,
}

impl Args {
    pub fn options(&self) -> Options {
        Options {
            graded: self.graded,
            cross_check: self.cross_check,
            validation: self.validation.into(),
            max_order: self.max_order,
            normalize_rays: self.normalize_rays,
        }
    }
}

pub fn run_analyze(instance: &InstanceFile, options: &Options) -> Result<Report, CliError> {
    instance.check_structure()?;
    let mut fan = instance.fan();
    if options.normalize_rays {
        fan.normalize_rays();
    }
    let validation = validate_fan(&fan, options.validation)?;
    let generator = instance.generator_matrix();
    let action = validate_action(&fan, &generator, options.max_order)?;
    let table = character_table(&fan, &action)?;
    let decomposition = decompose(&table.ungraded());

    let graded = options.graded.then(|| graded_decomposition(&table));
    let prime_power = match options.graded {
        true => match prime_power_verdict(&table) {
            Ok(r) => Some(r),
            Err(CharacterError::NotPrimePower(_)) => None,
            Err(e) => return Err(e.into()),
        },
        false => None,
    };
    let cross_check = options.cross_check.then(|| cross_check_all(&fan, &action, &table)).transpose()?;

    Ok(Report::build(report::ReportParts {
        name: instance.name.clone(),
        fan: &fan,
        generator: &generator,
        ray_perm: &action.ray_perm,
        validation: &validation,
        table: &table,
        decomposition: &decomposition,
        graded: graded.as_ref().map(|g| (g, prime_power.as_ref())),
        cross_check: cross_check.as_ref(),
    }))
}

pub fn emit_report(report: &Report, format: OutputFormat) -> Result<String, CliError> {
    report.verify()?;
    Ok(match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
    })
}

pub fn parse_report(json: &str) -> Result<Report, CliError> {
    serde_json::from_str(json).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Full invocation: the rendered report, or the error and its exit code.
pub fn run(args: &Args) -> Result<String, CliError> {
    let instance = parse_input(&args.input)?;
    let report = run_analyze(&instance, &args.options())?;
    emit_report(&report, args.format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn analyze(inst: &corpus::Instance, options: &Options) -> Result<Report, CliError> {
        run_analyze(&InstanceFile::from_parts(Some(inst.name.clone()), &inst.fan, &inst.generator), options)
    }

    fn all_on() -> Options {
        Options { graded: true, cross_check: true, ..Options::default() }
    }

    #[test]
    fn plane_defaults() {
        let r = analyze(&corpus::projective_plane(), &Options::default()).unwrap();
        assert!(r.decomposition.verdict.permutation);
        assert_eq!(r.decomposition.terms(), "G:3");
        assert!(r.graded.is_none() && r.cross_check.is_none());
    }

    #[test]
    fn rotation_text_line() {
        let r = analyze(&corpus::product_of_lines_rotation(), &all_on()).unwrap();
        let text = emit_report(&r, OutputFormat::Text).unwrap();
        assert!(text.contains("decomposition: G:2, <c^2>:1"), "{text}");
        assert!(r.graded.as_ref().unwrap().prime_power.as_ref().unwrap().agree);
        assert!(r.cross_check.as_ref().unwrap().passed);
    }

    #[test]
    fn hexagon_graded_fails_at_degree_one() {
        let r = analyze(&corpus::hexagon(), &all_on()).unwrap();
        assert!(r.decomposition.verdict.permutation);
        let g = r.graded.unwrap();
        assert!(!g.all_permutation);
        assert!(g.prime_power.is_none());
        let bad: Vec<usize> =
            g.degrees.iter().filter(|d| !d.decomposition.verdict.permutation).map(|d| d.degree.0).collect();
        assert_eq!(bad, vec![1]);
    }

    #[test]
    fn json_round_trip() {
        let r = analyze(&corpus::hexagon(), &all_on()).unwrap();
        let json = emit_report(&r, OutputFormat::Json).unwrap();
        assert_eq!(parse_report(&json).unwrap(), r);
        assert!(json.contains("\"order\": \"6\""));
    }

    #[test]
    fn tampered_multiplicities_are_rejected() {
        let mut r = analyze(&corpus::product_of_lines_rotation(), &Options::default()).unwrap();
        r.decomposition.rows[0].multiplicity = Decimal(BigRational::from_integer(BigInt::from(3)));
        assert!(matches!(emit_report(&r, OutputFormat::Json), Err(CliError::InternalInconsistency(_))));
    }

    #[test]
    fn invalid_generator_exit_code() {
        let mut inst = corpus::projective_plane();
        inst.generator = crate::exactalg::IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let err = analyze(&inst, &Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
