//! Batch computer-algebra front end: compute central functions by either
//! algorithm, enumerate whole orders, cross-validate the two engines, and
//! emit text, JSON, or CSV.

mod cache;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cfn_core::exactmath::{poly_parse, Polynomial, Rat, ALPHA_X, ALPHA_XYZ};
use cfn_core::recurrence::{
    batch_rank3, cfindex_to_label, enumerate_order, rank1_cf, shared_engine, BarbellLabel,
    Rank3Label,
};
use cfn_core::reptheory::is_admissible;
use cfn_core::tensorial::tensorial_central_function;
use cfn_core::tracecoords::{cross_validate, interpolate_to_traces};

#[derive(Parser)]
#[command(
    name = "cfn",
    about = "Exact SL(2,C) central functions of free groups of rank 1, 2, and 3",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one central function as a polynomial in trace coordinates.
    Compute(ComputeArgs),
    /// List every central function of a given fundamental order.
    Enumerate(EnumerateArgs),
    /// Cross-validate the two engines on one function at random points.
    Verify(VerifyArgs),
    /// Compute a reduced rank-2 barbell function χ̃ in x, y, z.
    Barbell(BarbellArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Free-group rank: 1, 2, or 3.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    rank: u32,
    /// Index tuple: rank 1 → n; rank 2 → a,b,c; rank 3 → a,b,c,d,i,j with
    /// 1-based multiplicity indices i, j.
    #[arg(long)]
    index: Option<String>,
    /// Rank-3 diagram label a,b,c,d,e,f (alternative to --index).
    #[arg(long)]
    raw_label: Option<String>,
    #[arg(long, value_enum, default_value_t = Algorithm::Combinatorial)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Sampling seed for the tensorial interpolation.
    #[arg(long, default_value_t = 0xcf)]
    seed: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Fundamental order a+b+c.
    #[arg(long)]
    order: u32,
    /// Print only the number of functions.
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    rank: u32,
    #[arg(long)]
    index: Option<String>,
    #[arg(long)]
    raw_label: Option<String>,
    /// Random evaluation points per run.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0xcf)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BarbellArgs {
    /// Barbell label a,c,b: loop weights a, c joined by a bar of weight b.
    #[arg(long)]
    label: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Combinatorial,
    Tensorial,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum CliError {
    /// exit 2: the requested label is not admissible.
    Inadmissible(String),
    /// exit 2: malformed arguments.
    Usage(String),
    /// exit 1: the two algorithms disagreed.
    Verification(String),
    /// exit 1: a computation failed.
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Inadmissible(_) | CliError::Usage(_) => 2,
            CliError::Verification(_) | CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Inadmissible(m)
            | CliError::Usage(m)
            | CliError::Verification(m)
            | CliError::Internal(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_path = cache::path_from_env();
    if let Some(p) = &cache_path {
        cache::load(p, shared_engine());
    }
    let result = run(&cli);
    if let Some(p) = &cache_path {
        cache::save(p, shared_engine());
    }
    match result {
        Ok((out, code)) => {
            print!("{}", out);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("cfn: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    match &cli.cmd {
        Cmd::Compute(a) => run_compute(a).map(|s| (s, 0)),
        Cmd::Enumerate(a) => run_enumerate(a).map(|s| (s, 0)),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Barbell(a) => run_barbell(a).map(|s| (s, 0)),
    }
}

// ---------------------------------------------------------------------------
// Label addressing.

/// A resolved request: the rank-3 label that carries the computation plus
/// the user-facing key it was addressed by (echoed in JSON/CSV output).
struct Target {
    rank: u32,
    label: Rank3Label,
    key_kind: &'static str,
    key_names: &'static [&'static str],
    key_vals: Vec<u32>,
}

fn parse_tuple(s: &str, n: usize, what: &str) -> Result<Vec<u32>, CliError> {
    let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
    match parts {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(CliError::Usage(format!(
            "{} expects {} comma-separated non-negative integers, got '{}'",
            what, n, s
        ))),
    }
}

fn inadmissible(e: cfn_core::recurrence::RecurrenceError) -> CliError {
    CliError::Inadmissible(e.to_string())
}

fn resolve(rank: u32, index: Option<&str>, raw_label: Option<&str>) -> Result<Target, CliError> {
    match (rank, index, raw_label) {
        (_, Some(_), Some(_)) => Err(CliError::Usage(
            "give exactly one of --index and --raw-label".into(),
        )),
        (3, Some(s), None) => {
            let v = parse_tuple(s, 6, "--index")?;
            let label =
                cfindex_to_label(v[0], v[1], v[2], v[3], v[4], v[5]).map_err(inadmissible)?;
            Ok(Target {
                rank,
                label,
                key_kind: "index",
                key_names: &["a", "b", "c", "d", "i", "j"],
                key_vals: v,
            })
        }
        (3, None, Some(s)) => {
            let v = parse_tuple(s, 6, "--raw-label")?;
            let label =
                Rank3Label::new(v[0], v[1], v[2], v[3], v[4], v[5]).map_err(inadmissible)?;
            Ok(Target {
                rank,
                label,
                key_kind: "label",
                key_names: &["a", "b", "c", "d", "e", "f"],
                key_vals: v,
            })
        }
        (2, Some(s), None) => {
            let v = parse_tuple(s, 3, "--index")?;
            let (a, b, c) = (v[0], v[1], v[2]);
            if !is_admissible(a, b, c) {
                return Err(CliError::Inadmissible(format!(
                    "inadmissible triple ({},{},{}): even sum and triangle inequalities required",
                    a, b, c
                )));
            }
            // degenerate embedding: third slot V₀ forces e = f = c
            let label = Rank3Label::new(a, b, 0, c, c, c).map_err(inadmissible)?;
            Ok(Target {
                rank,
                label,
                key_kind: "index",
                key_names: &["a", "b", "c"],
                key_vals: v,
            })
        }
        (1, Some(s), None) => {
            let v = parse_tuple(s, 1, "--index")?;
            let n = v[0];
            // second and third slots V₀ force d = e = f = n
            let label = Rank3Label::new(n, 0, 0, n, n, n).map_err(inadmissible)?;
            Ok(Target {
                rank,
                label,
                key_kind: "index",
                key_names: &["n"],
                key_vals: v,
            })
        }
        (r, None, Some(_)) => Err(CliError::Usage(format!(
            "--raw-label applies to rank 3 diagrams, not rank {}",
            r
        ))),
        (_, None, None) => Err(CliError::Usage(
            "--index is required (or --raw-label for rank 3)".into(),
        )),
        _ => unreachable!("clap restricts --rank to 1..=3"),
    }
}

// ---------------------------------------------------------------------------
// The two algorithms, projected to the request's rank.

fn combinatorial_poly(t: &Target) -> Result<Polynomial, CliError> {
    match t.rank {
        1 => Ok(rank1_cf(t.key_vals[0])),
        2 => shared_engine()
            .rank2_cf(t.key_vals[0], t.key_vals[1], t.key_vals[2])
            .map_err(inadmissible),
        _ => Ok((*shared_engine().rank3_cf(&t.label)).clone()),
    }
}

fn tensorial_poly(t: &Target, seed: u64) -> Result<Polynomial, CliError> {
    let entry = tensorial_central_function(&t.label);
    let traced = interpolate_to_traces(&entry, t.label.order(), seed)
        .map_err(|e| CliError::Internal(format!("tensorial interpolation failed: {}", e)))?;
    Ok(match t.rank {
        // trace coordinates at X₂ = X₃ = I collapse onto x = Tr X₁
        1 => {
            let img = |s: &str| poly_parse(ALPHA_X.clone(), s).unwrap();
            let images = ["x", "2", "2", "x", "x", "2", "x"].map(img);
            traced.map_vars(ALPHA_X.clone(), &images)
        }
        // traces at X₃ = I: t₃ = 2, t₁₃ = x, t₂₃ = y, t₁₂ = t₁₂₃ = x·y − z
        2 => {
            let img = |s: &str| poly_parse(ALPHA_XYZ.clone(), s).unwrap();
            let images = ["x", "y", "2", "x*y - z", "x", "y", "x*y - z"].map(img);
            traced.map_vars(ALPHA_XYZ.clone(), &images)
        }
        _ => traced,
    })
}

// ---------------------------------------------------------------------------
// Rendering.

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_poly(
    format: Format,
    rank: Option<u32>,
    key_kind: &str,
    key_names: &[&str],
    key_vals: &[u32],
    poly: &Polynomial,
) -> String {
    match format {
        Format::Text => format!("{}\n", poly.to_text()),
        Format::Json => {
            let mut obj = serde_json::Map::new();
            if let Some(r) = rank {
                obj.insert("rank".into(), r.into());
            }
            obj.insert(key_kind.into(), serde_json::json!(key_vals));
            obj.insert("text".into(), poly.to_text().into());
            obj.insert("polynomial".into(), poly.to_json());
            format!("{}\n", serde_json::Value::Object(obj))
        }
        Format::Csv => {
            let vals: Vec<String> = key_vals.iter().map(u32::to_string).collect();
            format!(
                "{},polynomial\n{},{}\n",
                key_names.join(","),
                vals.join(","),
                poly.to_text()
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands.

fn run_compute(a: &ComputeArgs) -> Result<String, CliError> {
    let target = resolve(a.rank, a.index.as_deref(), a.raw_label.as_deref())?;
    let poly = match a.algorithm {
        Algorithm::Combinatorial => combinatorial_poly(&target)?,
        Algorithm::Tensorial => tensorial_poly(&target, a.seed)?,
        Algorithm::Both => {
            let comb = combinatorial_poly(&target)?;
            let tens = tensorial_poly(&target, a.seed)?;
            if comb != tens {
                return Err(CliError::Verification(format!(
                    "algorithms disagree: combinatorial {} vs tensorial {}",
                    comb.to_text(),
                    tens.to_text()
                )));
            }
            comb
        }
    };
    Ok(render_poly(
        a.format,
        Some(target.rank),
        target.key_kind,
        target.key_names,
        &target.key_vals,
        &poly,
    ))
}

fn run_enumerate(a: &EnumerateArgs) -> Result<String, CliError> {
    let tuples = enumerate_order(a.order);
    if a.count_only {
        return Ok(format!("{}\n", tuples.len()));
    }
    let labels: Vec<Rank3Label> = tuples
        .iter()
        .map(|&(x, b, c, d, i, j)| {
            cfindex_to_label(x, b, c, d, i, j).expect("enumerated indices are admissible")
        })
        .collect();
    let polys = batch_rank3(&labels);
    let mut out = String::new();
    match a.format {
        Format::Text => {
            for (t, p) in tuples.iter().zip(&polys) {
                out.push_str(&format!(
                    "{},{},{},{},{},{}: {}\n",
                    t.0,
                    t.1,
                    t.2,
                    t.3,
                    t.4,
                    t.5,
                    p.to_text()
                ));
            }
            out.push_str(&format!("count: {}\n", tuples.len()));
        }
        Format::Csv => {
            out.push_str("a,b,c,d,i,j,polynomial\n");
            for (t, p) in tuples.iter().zip(&polys) {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    t.0,
                    t.1,
                    t.2,
                    t.3,
                    t.4,
                    t.5,
                    p.to_text()
                ));
            }
        }
        Format::Json => {
            let functions: Vec<serde_json::Value> = tuples
                .iter()
                .zip(&polys)
                .map(|(t, p)| {
                    serde_json::json!({
                        "index": [t.0, t.1, t.2, t.3, t.4, t.5],
                        "text": p.to_text(),
                        "polynomial": p.to_json(),
                    })
                })
                .collect();
            out.push_str(&format!(
                "{}\n",
                serde_json::json!({
                    "order": a.order,
                    "count": tuples.len(),
                    "functions": functions,
                })
            ));
        }
    }
    Ok(out)
}

fn run_verify(a: &VerifyArgs) -> Result<(String, u8), CliError> {
    if a.format == Format::Csv {
        return Err(CliError::Usage(
            "csv applies to compute, enumerate, and barbell output".into(),
        ));
    }
    let target = resolve(a.rank, a.index.as_deref(), a.raw_label.as_deref())?;
    let report = cross_validate(&target.label, a.trials, a.seed);
    let l = &report.label;
    let label_vec = [l.a, l.b, l.c, l.d, l.e, l.f];
    let out = match a.format {
        Format::Json => {
            let failures: Vec<serde_json::Value> = report
                .failures
                .iter()
                .map(|(i, cv, tv)| {
                    serde_json::json!({
                        "trial": i,
                        "combinatorial": rat_str(cv),
                        "tensorial": rat_str(tv),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::json!({
                    "label": label_vec,
                    "trials": report.trials,
                    "all_equal": report.all_equal,
                    "observed_ratio": report.observed_ratio.as_ref().map(rat_str),
                    "failures": failures,
                })
            )
        }
        _ => {
            let mut s = format!(
                "label {}: {} trials, {}, observed ratio {}\n",
                label_vec.map(|v| v.to_string()).join(","),
                report.trials,
                if report.all_equal {
                    "all equal".to_string()
                } else {
                    format!("{} disagree", report.failures.len())
                },
                report
                    .observed_ratio
                    .as_ref()
                    .map(rat_str)
                    .unwrap_or_else(|| "none".into()),
            );
            for (i, cv, tv) in report.failures.iter().take(10) {
                s.push_str(&format!(
                    "trial {}: combinatorial {}, tensorial {}\n",
                    i,
                    rat_str(cv),
                    rat_str(tv)
                ));
            }
            s
        }
    };
    Ok((out, if report.all_equal { 0 } else { 1 }))
}

fn run_barbell(a: &BarbellArgs) -> Result<String, CliError> {
    let v = parse_tuple(&a.label, 3, "--label")?;
    let lbl = BarbellLabel::new(v[0], v[1], v[2]).map_err(inadmissible)?;
    let poly = shared_engine().barbell(&lbl);
    Ok(render_poly(
        a.format,
        None,
        "label",
        &["a", "c", "b"],
        &v,
        &poly,
    ))
}
