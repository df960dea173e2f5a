//! Exact operator algebra on polynomial rings, from the command line.
//!
//! Every subcommand prints one JSON report to standard output; notes go
//! to standard error. Exit codes: 0 when all checks pass, 1 when a check
//! found counterexamples, 2 for usage or input-grammar errors, 3 for
//! operation errors (domain gaps, factorization failures, norm bounds).

mod config;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use leibniz_core::analysis::{
    classify_degree, fingerprint, leibniz_fuzz, linear_action, localization_probe,
    monomial_constants, product_closed_grid, recurrence_check, roundtrip_check, CheckReport,
    GenConfig,
};
use leibniz_core::error::Error as CoreError;
use leibniz_core::lmap::{
    additivity_probe, check_additive, check_leibniz, LeibnizMap, MapCheckSample,
};
use leibniz_core::operator::{apply_real, pointwise_log_eval, OperatorSpec};
use leibniz_core::poly::{Poly, RealFactoredPoly};
use leibniz_core::scalar::{ScalarElem, DEFAULT_NORM_BOUND};

use config::{load_map, load_operator, CliError, CliResult, SessionConfig};
use parse::parse_product;
use report::ReportDoc;

/// Exact operators on polynomial rings: apply, verify, fingerprint.
#[derive(Parser)]
#[command(name = "leibniz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// How many transcendentals t1..t3 expressions may mention.
    #[arg(long, global = true, default_value_t = 1)]
    m: usize,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Hard cap on the degree of any parsed polynomial.
    #[arg(long, global = true, default_value_t = 64)]
    degree_cap: usize,
    /// Norm bound for Gaussian-integer factorization.
    #[arg(long, global = true)]
    norm_bound: Option<u64>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a polynomial and print the image.
    Apply {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Apply a real-form operator to a product of real linear and
    /// irreducible quadratic factors.
    ApplyReal {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Fuzz the product identity T(pq) = T(p)q + pT(q) on random samples.
    Check {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Check a scalar map: Leibniz identity, forced values, additivity.
    CheckMap {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Sample the psi/phi tables of an operator over the point pool.
    Fingerprint {
        #[arg(long)]
        op: PathBuf,
    },
    /// Fingerprint, rebuild, and compare against the original operator.
    Roundtrip {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Classify how the operator moves degrees on random samples.
    Classify {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Solve T(z^N) = c·N·z^(N-1) + d·z^N for N = 1..n.
    Constants {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Verify the linear-action recurrences on a product-closed grid.
    Recurrences {
        #[arg(long)]
        op: PathBuf,
    },
    /// Hunt for p, q with p(z0) = q(z0) but T(p)(z0) != T(q)(z0).
    ProbeLocalize {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Factor a polynomial over the Gaussian rationals.
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Expand an expression into canonical coefficient form.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Evaluate p(z)·ln|p(z)| at a Gaussian-rational point.
    EvalLog {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Apply { .. } => "apply",
            Command::ApplyReal { .. } => "apply-real",
            Command::Check { .. } => "check",
            Command::CheckMap { .. } => "check-map",
            Command::Fingerprint { .. } => "fingerprint",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Classify { .. } => "classify",
            Command::Constants { .. } => "constants",
            Command::Recurrences { .. } => "recurrences",
            Command::ProbeLocalize { .. } => "probe-localize",
            Command::Factor { .. } => "factor",
            Command::Expand { .. } => "expand",
            Command::EvalLog { .. } => "eval-log",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let session = SessionConfig {
        m: cli.m,
        degree_cap: cli.degree_cap,
        norm_bound: cli.norm_bound.unwrap_or(DEFAULT_NORM_BOUND),
    };
    if let Err(err) = session.validate() {
        eprintln!("error: {err}");
        return ExitCode::from(2);
    }
    match run(&cli.command, &session, cli.seed) {
        Ok(doc) => {
            let code = if doc.status == "fail" { 1 } else { 0 };
            match emit(&doc, cli.out.as_deref()) {
                Ok(()) => ExitCode::from(code),
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(2)
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Operation(err)) => {
            let mut doc = ReportDoc::new(cli.command.name(), cli.seed, Vec::new());
            doc.status = "error".to_string();
            doc.payload = json!({ "error": err.to_string() });
            if let Err(err) = emit(&doc, cli.out.as_deref()) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            ExitCode::from(3)
        }
    }
}

fn emit(doc: &ReportDoc, out: Option<&std::path::Path>) -> CliResult<()> {
    let mut line = serde_json::to_string(doc).expect("reports serialize");
    line.push('\n');
    match out {
        Some(path) => std::fs::write(path, &line)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{line}");
            Ok(())
        }
    }
}

fn run(command: &Command, session: &SessionConfig, seed: u64) -> CliResult<ReportDoc> {
    match command {
        Command::Apply { op, poly } => {
            let spec = load_operator(op, session)?;
            let p = session.poly(poly)?;
            let image = apply_poly(&spec, &p, session)?;
            let mut doc = ReportDoc::new("apply", seed, vec![spec.kind().into(), poly.clone()]);
            doc.payload = json!(image.to_string());
            doc.counts = json!({ "degree": image.deg_opt() });
            Ok(doc)
        }
        Command::ApplyReal { op, poly } => {
            let spec = load_operator(op, session)?;
            let factors =
                parse_product(poly, session.m, session.degree_cap).map_err(CliError::from)?;
            let real = real_from_factors(&factors)?;
            let image = apply_real(&spec, &real)?;
            let mut doc =
                ReportDoc::new("apply-real", seed, vec![spec.kind().into(), poly.clone()]);
            doc.payload = json!(image.to_string());
            doc.counts = json!({ "degree": image.deg_opt() });
            Ok(doc)
        }
        Command::Check { op, n } => {
            let spec = load_operator(op, session)?;
            let check = leibniz_fuzz(&spec, &GenConfig::default(), *n, seed)?;
            eprintln!("checked {} factored products", check.total);
            Ok(ReportDoc::new("check", seed, vec![spec.kind().into()]).with_check(&check))
        }
        Command::CheckMap { op, n } => {
            let map = load_map(op, session)?;
            cmd_check_map(&map, *n, session, seed)
        }
        Command::Fingerprint { op } => {
            let spec = load_operator(op, session)?;
            let points = GenConfig::default().fingerprint_points();
            let fp = fingerprint(&spec, &points)?;
            let mut doc = ReportDoc::new("fingerprint", seed, vec![spec.kind().into()]);
            doc.payload = report::fingerprint_payload(&fp);
            doc.counts = json!({
                "points": points.len(),
                "psi_samples": fp.psi_samples.len(),
                "phi_samples": fp.phi_samples.len(),
            });
            Ok(doc)
        }
        Command::Roundtrip { op, n } => {
            let spec = load_operator(op, session)?;
            let gen = GenConfig::default();
            let fp = fingerprint(&spec, &gen.fingerprint_points())?;
            let mut rng = GenConfig::rng(seed);
            let samples: Vec<_> = (0..*n).map(|_| gen.sample_factored(&mut rng)).collect();
            let check = roundtrip_check(&spec, &fp, &samples)?;
            Ok(ReportDoc::new("roundtrip", seed, vec![spec.kind().into()]).with_check(&check))
        }
        Command::Classify { op, n } => {
            let spec = load_operator(op, session)?;
            let behavior = classify_degree(&spec, seed, *n)?;
            let mut doc = ReportDoc::new("classify", seed, vec![spec.kind().into()]);
            doc.payload = report::behavior_payload(&behavior);
            doc.counts = json!({ "samples": n });
            Ok(doc)
        }
        Command::Constants { op, n } => {
            let spec = load_operator(op, session)?;
            let constants = monomial_constants(&spec, *n)?;
            let mut doc = ReportDoc::new("constants", seed, vec![spec.kind().into()]);
            doc.payload = report::constants_payload(&constants);
            doc.counts = json!({ "rows": constants.rows.len() });
            Ok(doc)
        }
        Command::Recurrences { op } => {
            let spec = load_operator(op, session)?;
            let gen = GenConfig::default();
            let grid = product_closed_grid(&gen.lead_pool, &gen.root_pool);
            let table = linear_action(&spec, &grid)?;
            let check = recurrence_check(&table);
            let mut doc =
                ReportDoc::new("recurrences", seed, vec![spec.kind().into()]).with_check(&check);
            if let serde_json::Value::Object(counts) = &mut doc.counts {
                counts.insert("grid".into(), json!(grid.len()));
            }
            Ok(doc)
        }
        Command::ProbeLocalize { op, budget } => {
            let spec = load_operator(op, session)?;
            let result = localization_probe(&spec, seed, *budget)?;
            if result.counterexample.is_some() {
                eprintln!("found a localization witness after {} pairs", result.tested);
            }
            let mut doc = ReportDoc::new("probe-localize", seed, vec![spec.kind().into()]);
            doc.payload = report::probe_payload(&result);
            doc.counts = json!({ "tested": result.tested, "budget": budget });
            Ok(doc)
        }
        Command::Factor { poly } => {
            let p = session.poly(poly)?;
            let fp = p.try_factor_with_bound(session.norm_bound)?;
            let mut doc = ReportDoc::new("factor", seed, vec![poly.clone()]);
            doc.payload = json!({
                "factored": fp.to_string(),
                "lead": fp.lead.to_string(),
                "roots": fp.roots.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            doc.counts = json!({ "degree": fp.degree() });
            Ok(doc)
        }
        Command::Expand { poly } => {
            let p = session.poly(poly)?;
            let mut doc = ReportDoc::new("expand", seed, vec![poly.clone()]);
            doc.payload = json!(p.to_string());
            doc.counts = json!({ "degree": p.deg_opt() });
            Ok(doc)
        }
        Command::EvalLog { poly, at } => {
            let p = session.poly(poly)?;
            let point = session.scalar(at)?.to_complex64().ok_or_else(|| {
                CliError::Usage(format!(
                    "--at must be a Gaussian-rational point, got '{at}'"
                ))
            })?;
            let value = pointwise_log_eval(&p, point)?;
            let mut doc = ReportDoc::new("eval-log", seed, vec![poly.clone(), at.clone()]);
            doc.payload = json!({
                "z": { "re": value.z.re, "im": value.z.im },
                "value": { "re": value.value.re, "im": value.value.im },
            });
            Ok(doc)
        }
    }
}

/// Applies an operator to an expanded polynomial, factoring through the
/// session's norm bound when the operator needs root data.
fn apply_poly(op: &OperatorSpec, p: &Poly, session: &SessionConfig) -> CliResult<Poly> {
    if p.is_zero() {
        return Ok(op.apply_expanded(p)?);
    }
    match p.try_factor_with_bound(session.norm_bound) {
        Ok(fp) => Ok(op.apply(&fp)?),
        Err(_) if !needs_factored(op) => Ok(op.apply_expanded(p)?),
        Err(e) => Err(e.into()),
    }
}

fn needs_factored(op: &OperatorSpec) -> bool {
    match op {
        OperatorSpec::RootPower { .. }
        | OperatorSpec::RootPowerReal { .. }
        | OperatorSpec::Representation { .. } => true,
        OperatorSpec::LinComb { terms } => terms.iter().any(|(_, t)| needs_factored(t)),
        _ => false,
    }
}

/// Assembles the real factored form from split product factors: constants
/// fold into the lead, linear factors contribute roots, and quadratics are
/// normalized monic. Anything of higher degree is rejected.
fn real_from_factors(factors: &[(Poly, u32)]) -> CliResult<RealFactoredPoly> {
    let mut lead = ScalarElem::one();
    let mut linear_roots = Vec::new();
    let mut quadratics = Vec::new();
    for (base, mult) in factors {
        match base.deg_opt() {
            None => return Err(CoreError::ZeroLeadingCoefficient.into()),
            Some(0) => lead = &lead * &base.coeff(0).pow(*mult),
            Some(1) => {
                let a = base.coeff(1);
                let root = -&base.coeff(0).div(&a)?;
                lead = &lead * &a.pow(*mult);
                linear_roots.extend(std::iter::repeat_n(root, *mult as usize));
            }
            Some(2) => {
                let a = base.coeff(2);
                let alpha = base.coeff(1).div(&a)?;
                let beta = base.coeff(0).div(&a)?;
                lead = &lead * &a.pow(*mult);
                quadratics.extend(std::iter::repeat_n((alpha, beta), *mult as usize));
            }
            Some(d) => {
                return Err(CliError::Usage(format!(
                    "real products take linear and quadratic factors, found degree {d}"
                )))
            }
        }
    }
    Ok(RealFactoredPoly::new(lead, linear_roots, quadratics)?)
}

fn map_kind(map: &LeibnizMap) -> &'static str {
    match map {
        LeibnizMap::Zero => "zero",
        LeibnizMap::PrimeLog { .. } => "prime_log",
        LeibnizMap::Derivation { .. } => "derivation",
        LeibnizMap::LinComb { .. } => "lincomb",
    }
}

/// The map suite: the Leibniz identity and the forced values φ(0) = φ(1) =
/// φ(−1) = φ(i) = 0 decide pass/fail; additivity is reported as data, since
/// prime-log maps are legitimately non-additive.
fn cmd_check_map(
    map: &LeibnizMap,
    n: usize,
    session: &SessionConfig,
    seed: u64,
) -> CliResult<ReportDoc> {
    let gen = GenConfig::default();
    let mut rng = GenConfig::rng(seed);
    let pairs: Vec<_> = (0..n)
        .map(|_| {
            if map.is_derivation_form() {
                (
                    gen.sample_scalar_with_vars(&mut rng, session.m),
                    gen.sample_scalar_with_vars(&mut rng, session.m),
                )
            } else {
                (gen.sample_scalar(&mut rng), gen.sample_scalar(&mut rng))
            }
        })
        .collect();
    let sample = MapCheckSample::new(pairs);
    let leibniz = check_leibniz(map, &sample)?;
    // Fixed probe pairs first, so a non-additive map always produces the
    // same small-prime witness regardless of the random stream.
    let mut additivity_pairs = additivity_probe().pairs;
    additivity_pairs.extend(sample.pairs.iter().cloned());
    let additivity = check_additive(map, &MapCheckSample::new(additivity_pairs))?;

    let mut forced = CheckReport::new();
    for point in [
        ScalarElem::zero(),
        ScalarElem::one(),
        ScalarElem::from_int(-1),
        ScalarElem::i(),
    ] {
        let value = map.eval(&point)?;
        forced.record(vec![point.to_string()], Poly::constant(value), Poly::zero());
    }

    let mut doc = ReportDoc::new("check-map", seed, vec![map_kind(map).into()]);
    if !leibniz.passes() || !forced.passes() {
        doc.status = "fail".to_string();
    }
    doc.payload = json!({
        "leibniz": report::check_payload(&leibniz),
        "forced": report::check_payload(&forced),
        "additivity": {
            "holds": additivity.passes(),
            "witness": additivity
                .counterexamples
                .first()
                .map(report::counterexample_value),
        },
    });
    doc.counts = json!({
        "leibniz": report::check_counts(&leibniz),
        "forced": report::check_counts(&forced),
        "additivity": report::check_counts(&additivity),
    });
    Ok(doc)
}
