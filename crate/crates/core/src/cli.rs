//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::jz::{verify_identities, JzAlgebra, VerifyReport};
use crate::qfield::{parse_rational, BaseField, FieldError, ParseError};
use crate::repmod::{build_module, Module, ModuleDoc, RepError, DEFAULT_WINDOW};
use crate::spectrum::{classify, orbit, Classification, PointParams, SpectrumError, DEFAULT_SCAN_BOUND};

#[derive(Debug, Parser)]
#[command(name = "hyperweyl", version, about = "Exact checks, point classification and weight modules")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// `symbolic`, or a rational value such as `3` or `-5/2`
    #[arg(long, global = true, default_value = "symbolic")]
    pub q: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, ClapArgs)]
pub struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite
    Verify {
        /// Range `[-b, b]` for the closed-form power check
        #[arg(long, default_value_t = 16)]
        theta_bound: i64,
    },
    /// Classify the point (xi - alpha, h - beta)
    Classify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = DEFAULT_SCAN_BOUND)]
        scan_bound: i64,
    },
    /// List orbit points theta^i(P), i = 0, 1, ...
    Orbit {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Build and check the module attached to the point
    Module {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = DEFAULT_SCAN_BOUND)]
        scan_bound: i64,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {what}: {source}")]
    Parse { what: &'static str, source: ParseError },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Field(_) => 2,
            CliError::Refused(_) => 3,
            _ => 4,
        }
    }
}

/// A rendered document and whether every check in it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

pub fn field_from_flag(q: &str) -> Result<BaseField, CliError> {
    if q == "symbolic" {
        return Ok(BaseField::symbolic());
    }
    let q0 = parse_rational(q).map_err(|source| CliError::Parse { what: "--q", source })?;
    Ok(BaseField::numeric(q0)?)
}

fn point_from(field: &BaseField, p: &PointArgs) -> Result<PointParams, CliError> {
    let alpha = field
        .parse(&p.alpha)
        .map_err(|source| CliError::Parse { what: "--alpha", source })?;
    let beta = field
        .parse(&p.beta)
        .map_err(|source| CliError::Parse { what: "--beta", source })?;
    Ok(PointParams::new(field, alpha, beta))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct OrbitPoint {
    i: usize,
    alpha: String,
    beta: String,
}

#[derive(Serialize)]
struct OrbitDoc {
    q: String,
    points: Vec<OrbitPoint>,
}

/// Execute a parsed command line and render its document.
pub fn run(args: &Args) -> Result<Outcome, CliError> {
    let field = field_from_flag(&args.q)?;
    let text_mode = args.format == Format::Text;
    match &args.command {
        Command::Verify { theta_bound } => {
            let report = verify_identities(&JzAlgebra::new(field), *theta_bound);
            let text = if text_mode { verify_text(&report) } else { json(&report) };
            Ok(Outcome { text, ok: report.all_pass })
        }
        Command::Classify { point, scan_bound } => {
            let p = point_from(&field, point)?;
            let class = classify(&p, *scan_bound)?;
            let text = if text_mode { classify_text(&p, &class) } else { json(&class) };
            Ok(Outcome { text, ok: true })
        }
        Command::Orbit { point, count } => {
            let p = point_from(&field, point)?;
            let doc = OrbitDoc {
                q: field.describe(),
                points: orbit(&p, *count)
                    .into_iter()
                    .enumerate()
                    .map(|(i, pt)| OrbitPoint {
                        i,
                        alpha: pt.alpha.to_string(),
                        beta: pt.beta.to_string(),
                    })
                    .collect(),
            };
            let text = if text_mode { orbit_text(&doc) } else { json(&doc) };
            Ok(Outcome { text, ok: true })
        }
        Command::Module {
            point,
            scan_bound,
            window,
        } => {
            let p = point_from(&field, point)?;
            let class = classify(&p, *scan_bound)?;
            let module = build_module(&p, &class, *window).map_err(|e| match e {
                RepError::WrongType { .. } | RepError::DegenerateWeights => {
                    CliError::Refused(format!("point classifies as {}: {e}", class.point_type))
                }
                other => CliError::Rep(other),
            })?;
            let doc = module.to_checked_doc()?;
            let ok = doc.relations.as_ref().is_some_and(|r| r.pass)
                && doc.irreducibility.as_ref().is_some_and(|c| c.irreducible)
                && doc.casimir.as_ref().is_none_or(|c| c.pass);
            let text = if text_mode { module_text(&module, &doc) } else { json(&doc) };
            Ok(Outcome { text, ok })
        }
    }
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = format!("q = {}\n", r.q);
    let width = r.identities.iter().map(|i| i.name.len()).max().unwrap_or(0);
    for id in &r.identities {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:width$}  gwa {:4}  pbw {:4}  {}",
            id.name,
            mark(id.gwa_pass),
            mark(id.pbw_pass),
            id.statement
        );
        for res in [&id.gwa_residual, &id.pbw_residual].into_iter().flatten() {
            let _ = writeln!(s, "{:width$}  residual: {res}", "");
        }
    }
    for t in &r.theta_powers {
        let _ = writeln!(
            s,
            "theta^n({}) closed form, n in [{}, {}]: {}",
            t.generator,
            t.n_min,
            t.n_max,
            if t.pass { "ok".to_string() } else { format!("FAIL at {:?}", t.failures) }
        );
    }
    let _ = writeln!(s, "{}", if r.all_pass { "all identities hold" } else { "FAILURES" });
    s
}

fn classify_text(p: &PointParams, c: &Classification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "point: alpha = {}, beta = {}", p.alpha, p.beta);
    let _ = writeln!(s, "type: {}", c.point_type);
    let _ = writeln!(s, "vanishing set: {:?}", c.vanishing.shifts);
    let _ = writeln!(s, "quadratic roots in t = q^n: {:?}", c.certificate.roots);
    let _ = writeln!(s, "scan |n| <= {}: {:?} (agrees)", c.certificate.scan_bound, c.certificate.scanned);
    if let Some(o) = &c.certificate.orbit {
        let _ = writeln!(s, "orbit distinct for 0 < |i| <= {} by {}: {}", o.bound, o.method, o.distinct);
    }
    if !c.certificate.dense_alpha_discrepancies.is_empty() {
        let _ = writeln!(
            s,
            "note: displayed alpha condition disagrees at n = {:?}",
            c.certificate.dense_alpha_discrepancies
        );
    }
    s
}

fn orbit_text(d: &OrbitDoc) -> String {
    let mut s = String::new();
    for p in &d.points {
        let _ = writeln!(s, "{:>3}  alpha = {}", p.i, p.alpha);
        let _ = writeln!(s, "     beta  = {}", p.beta);
    }
    s
}

fn module_text(m: &Module, d: &ModuleDoc) -> String {
    let mut s = String::new();
    let _ = write!(s, "kind: {}", d.kind);
    match (d.dim, d.window) {
        (Some(n), _) => {
            let _ = writeln!(s, ", dimension {n}");
        }
        (_, Some([lo, hi])) => {
            let _ = writeln!(s, ", window [{lo}, {hi}]");
        }
        _ => s.push('\n'),
    }
    let lo = d.window.map_or(0, |w| w[0]);
    let _ = writeln!(s, "{:>5}  {:<24}  {:<24}  ecoef", "m", "weight", "fcoef");
    for (i, ((w, f), e)) in d.weights.iter().zip(&d.fcoef).zip(&d.ecoef).enumerate() {
        let _ = writeln!(s, "{:>5}  {w:<24}  {f:<24}  {e}", lo + i as i64);
    }
    if let Some(r) = &d.relations {
        let _ = writeln!(
            s,
            "relations: {} ({} checked, {} boundary skipped)",
            if r.pass { "hold" } else { "FAIL" },
            r.checked,
            r.skipped
        );
    }
    if let Some(c) = &d.irreducibility {
        let how = if c.generation.is_some() { "generation and ladder" } else { "ladder" };
        let _ = writeln!(s, "irreducible ({how}): {}", c.irreducible);
    }
    if let (Some(c), Some(scalar)) = (&d.casimir, &d.casimir_scalar) {
        let _ = writeln!(
            s,
            "casimir on u_m = q^m * ({scalar}): {} ({} checked)",
            if c.pass { "ok" } else { "FAIL" },
            c.checked
        );
    }
    if let Module::Finite(rep) = m {
        for (name, mat) in [("E", rep.e()), ("F", rep.f()), ("H", rep.h())] {
            let _ = writeln!(s, "{name} = {:?}", mat);
        }
    }
    s
}

/// Run, write the document, and map the result to an exit status:
/// 0 success, 1 a check failed, 2 bad input, 3 refused, 4 internal error.
pub fn main_with(args: Args) -> ExitCode {
    let outcome = match run(&args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &args.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return ExitCode::from(4);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &[&str]) -> Args {
        Args::try_parse_from(std::iter::once("hyperweyl").chain(line.iter().copied())).unwrap()
    }

    #[test]
    fn classify_special_point() {
        let out = run(&args(&["classify", "--alpha", "-1/(q-1)^2", "--beta", "2/(q-1)"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["type"], "FiniteOrbitSpecial");
    }

    #[test]
    fn classify_is_deterministic() {
        let a = args(&["classify", "--alpha", "8-4*q", "--beta", "4", "--scan-bound", "8"]);
        assert_eq!(run(&a).unwrap(), run(&a).unwrap());
    }

    #[test]
    fn parse_error_names_position() {
        let err = run(&args(&["classify", "--alpha", "1+*q", "--beta", "0"])).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let msg = err.to_string();
        assert!(msg.contains("--alpha") && msg.contains("position"), "{msg}");
    }

    #[test]
    fn module_refuses_special_point() {
        let err = run(&args(&["module", "--alpha", "-1/(q-1)^2", "--beta", "2/(q-1)"])).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("FiniteOrbitSpecial"));
    }

    #[test]
    fn lowest_module_rows() {
        let out = run(&args(&["module", "--alpha", "0", "--beta", "1", "--window", "6"])).unwrap();
        assert!(out.ok);
        let doc: ModuleDoc = serde_json::from_str(&out.text).unwrap();
        assert_eq!(doc.kind, "lowest");
        assert_eq!(doc.weights.len(), 7);
    }

    #[test]
    fn numeric_q_and_text_format() {
        let out = run(&args(&["--q", "3", "--format", "text", "orbit", "--alpha", "1", "--beta", "0", "--count", "3"]))
            .unwrap();
        assert!(out.text.contains("alpha = -1"), "{}", out.text);
        assert!(field_from_flag("1").is_err());
    }
}
