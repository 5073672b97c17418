//! Command implementations for the unipoly CLI: every subcommand reads
//! exact-arithmetic documents, runs one library operation, and returns a
//! single JSON document. Map-valued results are emitted in the same format
//! the commands accept, so outputs can be fed straight back in.

pub mod format;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};
use unipoly::kamke::{jacobian_rank, kamke_solve, sample_report, KamkeSpec};
use unipoly::sequences::{fib_nonpoly_witness, seq_fit, seq_period, seq_value_multiplicity};
use unipoly::symmetrize::{extract_cocycle, symmetrize};
use unipoly::{Degree, LcDegree, PolyMap};

use format::{
    parse_polymap_str, parse_rational, parse_samples_str, polymap_to_doc, rational_string,
};

#[derive(Debug)]
pub enum CliError {
    /// Wrong invocation: unreadable files, malformed flag values.
    Usage(String),
    /// Well-formed invocation on bad content: document or math errors.
    Domain(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<unipoly::Error> for CliError {
    fn from(e: unipoly::Error) -> CliError {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "unipoly", version, about = "Exact calculus of polynomial maps into unitriangular groups")]
pub struct Cli {
    /// Seed for every randomized check (sampling, spot checks).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Symbolic degree of a polynomial map.
    Degree { file: PathBuf },
    /// Degrees of a map on the quotients of the lower central series.
    LcDegree { file: PathBuf },
    /// Chain degree bounds next to the exact degree.
    Bounds { file: PathBuf },
    /// Pointwise product of two maps.
    Mul { f: PathBuf, g: PathBuf },
    /// Pointwise inverse of a map.
    Inv { f: PathBuf },
    /// Pointwise commutator of two maps.
    Comm { f: PathBuf, g: PathBuf },
    /// Conjugate a map by a constant map.
    Conj { f: PathBuf, g: PathBuf },
    /// The map (t_1, .., t_k) -> f(t_1) .. f(t_k) on fresh variables.
    OrderedProduct {
        f: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Iterated symmetrization with all intermediate rounds.
    Symmetrize { f: PathBuf },
    /// Permutation corrections of a map symmetric below the given diagonal.
    Cocycle {
        f: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Operations on one-variable sequences.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Built-in worked examples.
    #[command(subcommand)]
    Demo(DemoCommand),
    /// Solve the power-sum parameterization of a bracketed domain.
    Kamke {
        /// Minimum number of parameterization variables.
        #[arg(long = "B")]
        b: u64,
        /// Linear floor of the domain, as an exact rational.
        #[arg(long)]
        k1: String,
        /// Lower bracket per exponent, repeatable: --k "2=1".
        #[arg(long = "k", value_name = "NU=VALUE")]
        lower: Vec<String>,
        /// Upper bracket per exponent, repeatable: --K "2=2".
        #[arg(long = "K", value_name = "NU=VALUE")]
        upper: Vec<String>,
        /// Membership samples to draw.
        #[arg(long, default_value_t = 1000)]
        samples: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeqCommand {
    /// Certified minimal period of the reduction modulo m.
    Period {
        f: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Interpolate a map through sampled matrices.
    Fit {
        samples: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Value multiplicities over an initial segment.
    Multiplicity {
        f: PathBuf,
        #[arg(long)]
        horizon: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum DemoCommand {
    /// The conjugation sequence in the Fibonacci extension of the plane.
    Fibonacci {
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<PolyMap, CliError> {
    parse_polymap_str(&read_file(path)?)
}

fn degree_json(d: Degree) -> Value {
    match d {
        Degree::Fin(k) => json!(k),
        Degree::NegInf => json!("-inf"),
    }
}

fn lc_json(lc: &LcDegree) -> Value {
    Value::Array(lc.components().iter().map(|d| degree_json(*d)).collect())
}

fn map_json(f: &PolyMap) -> Value {
    serde_json::to_value(polymap_to_doc(f)).expect("document serialization cannot fail")
}

/// Parse "nu=value" where nu is an integer exponent and value a rational.
fn parse_nu_bound(s: &str, flag: &str) -> Result<(u32, BigRational), CliError> {
    let usage = |msg: String| CliError::Usage(msg);
    let (nu, value) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("--{flag} expects NU=VALUE, got {s:?}")))?;
    let nu: u32 = nu
        .trim()
        .parse()
        .map_err(|_| usage(format!("--{flag}: malformed exponent in {s:?}")))?;
    let value = parse_rational(value).map_err(|e| usage(format!("--{flag}: {e}")))?;
    Ok((nu, value))
}

pub fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Degree { file } => {
            let f = load_map(file)?;
            Ok(json!({ "degree": degree_json(f.degree()?) }))
        }
        Command::LcDegree { file } => {
            let f = load_map(file)?;
            Ok(json!({ "components": lc_json(&f.lc_degree()?) }))
        }
        Command::Bounds { file } => {
            let f = load_map(file)?;
            let (lower, upper) = f.degree_bounds();
            let exact = f.degree()?;
            Ok(json!({
                "lower": degree_json(lower),
                "upper": degree_json(upper),
                "exact": degree_json(exact),
            }))
        }
        Command::Mul { f, g } => {
            let f = load_map(f)?;
            let g = load_map(g)?;
            Ok(map_json(&f.product(&g)?))
        }
        Command::Inv { f } => Ok(map_json(&load_map(f)?.inverse())),
        Command::Comm { f, g } => {
            let f = load_map(f)?;
            let g = load_map(g)?;
            Ok(map_json(&f.commutator(&g)?))
        }
        Command::Conj { f, g } => {
            let f = load_map(f)?;
            let g = load_map(g)?;
            Ok(map_json(&f.conjugate(&g)?))
        }
        Command::OrderedProduct { f, k } => Ok(map_json(&load_map(f)?.ordered_product(*k)?)),
        Command::Symmetrize { f } => {
            let sym = symmetrize(&load_map(f)?)?;
            Ok(json!({
                "factor_count": sym.factor_count.to_string(),
                "rounds": sym.rounds.iter().map(map_json).collect::<Vec<_>>(),
                "result": map_json(&sym.result),
            }))
        }
        Command::Cocycle { f, level } => {
            let cocycle = extract_cocycle(&load_map(f)?, *level)?;
            let entries: Vec<Value> = cocycle
                .entries()
                .iter()
                .map(|(sigma, alpha)| json!({ "sigma": sigma, "alpha": map_json(alpha) }))
                .collect();
            Ok(json!({ "level": cocycle.level(), "entries": entries }))
        }
        Command::Seq(SeqCommand::Period { f, modulus }) => {
            let report = seq_period(&load_map(f)?, *modulus, cli.seed)?;
            Ok(json!({
                "modulus": report.modulus,
                "period": report.period,
                "degree_bound": report.degree_bound,
                "determining_points": report.determining_points,
                "cap": report.cap.to_string(),
                "spot_checks": report.spot_checks,
            }))
        }
        Command::Seq(SeqCommand::Fit { samples, degree }) => {
            let samples = parse_samples_str(&read_file(samples)?)?;
            Ok(map_json(&seq_fit(&samples, *degree)?))
        }
        Command::Seq(SeqCommand::Multiplicity { f, horizon }) => {
            let report = seq_value_multiplicity(&load_map(f)?, *horizon)?;
            Ok(json!({
                "horizon": report.horizon,
                "max_multiplicity": report.max_multiplicity,
                "witness_times": report.witness_times,
                "entry_degree_bound": report.entry_degree_bound,
            }))
        }
        Command::Demo(DemoCommand::Fibonacci { depth }) => {
            let witness = fib_nonpoly_witness(*depth)?;
            let conclusion = if witness.all_words_nonvanishing {
                format!(
                    "not polynomial of degree \u{2264} {}: witness found",
                    depth.saturating_sub(1)
                )
            } else {
                format!("all nonvanishing checks failed at depth {depth}")
            };
            Ok(json!({
                "depth": witness.depth,
                "words_checked": witness.words_checked,
                "all_words_nonvanishing": witness.all_words_nonvanishing,
                "first_witness": witness.first_witness,
                "conclusion": conclusion,
            }))
        }
        Command::Kamke { b, k1, lower, upper, samples } => {
            run_kamke(*b, k1, lower, upper, *samples, cli.seed)
        }
    }
}

fn run_kamke(
    b: u64,
    k1: &str,
    lower: &[String],
    upper: &[String],
    samples: u32,
    seed: u64,
) -> Result<Value, CliError> {
    let k1 = parse_rational(k1).map_err(|e| CliError::Usage(format!("--k1: {e}")))?;
    let mut lows = Vec::new();
    for s in lower {
        let (nu, v) = parse_nu_bound(s, "k")?;
        if lows.iter().any(|(m, _)| *m == nu) {
            return Err(CliError::Usage(format!("--k: duplicate exponent {nu}")));
        }
        lows.push((nu, v));
    }
    let mut bounds = Vec::new();
    let mut highs_seen = Vec::new();
    for s in upper {
        let (nu, hi) = parse_nu_bound(s, "K")?;
        if highs_seen.contains(&nu) {
            return Err(CliError::Usage(format!("--K: duplicate exponent {nu}")));
        }
        highs_seen.push(nu);
        let lo = lows
            .iter()
            .find(|(m, _)| *m == nu)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| {
                CliError::Usage(format!("--K names exponent {nu} but --k does not"))
            })?;
        bounds.push((nu, lo, hi));
    }
    if let Some((nu, _)) = lows.iter().find(|(m, _)| !highs_seen.contains(m)) {
        return Err(CliError::Usage(format!(
            "--k names exponent {nu} but --K does not"
        )));
    }
    let spec = KamkeSpec::new(b, k1, bounds).map_err(|e| CliError::Usage(e.to_string()))?;
    let param = kamke_solve(&spec)?;
    let report = sample_report(&param, samples, seed)?;

    // Jacobian rank at the canonical spread point (0, 1, .., n-1).
    let spread: Vec<BigRational> = (0..param.n())
        .map(|i| BigRational::from_integer(i.into()))
        .collect();
    let rank = jacobian_rank(&param, &spread)?;

    let coefficients: Vec<Value> = param
        .coeffs()
        .iter()
        .map(|(nu, c, d)| {
            let (_, lo, hi) = param
                .spec()
                .bounds()
                .iter()
                .find(|(m, _, _)| m == nu)
                .expect("solved exponent appears in the input bounds");
            json!({
                "nu": nu,
                "lower": rational_string(lo),
                "upper": rational_string(hi),
                "c": rational_string(c),
                "d": rational_string(d),
            })
        })
        .collect();
    let q: Vec<Value> = param
        .q()
        .iter()
        .map(|poly| {
            let terms: Vec<Value> = poly
                .terms()
                .map(|(m, c)| json!({ "coeff": format::scalar_string(c), "exps": m.0 }))
                .collect();
            json!({ "terms": terms })
        })
        .collect();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|point| {
            Value::Array(
                point.iter().map(|x| Value::String(rational_string(x))).collect(),
            )
        })
        .collect();
    Ok(json!({
        "b": b,
        "k1": rational_string(param.spec().k1()),
        "n": param.n(),
        "epsilon": rational_string(param.epsilon()),
        "coefficients": coefficients,
        "q": q,
        "jacobian_rank_at_spread_point": rank,
        "sampling": {
            "count": report.count,
            "seed": seed,
            "all_inside": report.all_inside,
            "failures": failures,
        },
    }))
}
