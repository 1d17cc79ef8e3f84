use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use nilift_core::gowers::{u2_via_fft, u_norm, CyclicFn, GeneratorRegistry};
use nilift_core::nilgroup::{polynomial_map_check, SampleGrid};
use nilift_core::nilseq::{check_n_periodic, AbelianLift, HeisNilsequence, StandardBump};
use nilift_core::pipeline::{deduce, DeduceConfig, OracleParams, OracleRegistry, Status};
use nilift_core::polyalg::parse_coeffs;
use nilift_core::scalar::format_rational;
use nilift_core::verify::{self, VerifyConfig};
use num_complex::Complex64;
use serde_json::json;

use crate::{Command, DeduceArgs, FunctionArgs, HeisenbergArgs, LiftArgs, VerifyArgs};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gowers(args) => gowers(&args),
        Command::Heisenberg(args) => heisenberg(&args),
        Command::Lift(args) => lift(&args),
        Command::Deduce(args) => deduce_cmd(&args),
        Command::Verify(args) => verify_cmd(&args),
    }
}

fn load_function(args: &FunctionArgs) -> Result<CyclicFn> {
    match (&args.gen, &args.input) {
        (Some(spec), None) => {
            let n = args.n.context("--n is required with --gen")?;
            ensure!(n >= 1, "--n must be positive");
            Ok(GeneratorRegistry::builtin().generate(spec, n)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let f = CyclicFn::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if let Some(n) = args.n {
                ensure!(n == f.len(), "--n {n} does not match the {} values in {}", f.len(), path.display());
            }
            Ok(f)
        }
        _ => bail!("give exactly one of --gen or --input"),
    }
}

fn parse_range(range: Option<&str>, n: u64) -> Result<std::ops::Range<i64>> {
    let Some(text) = range else {
        return Ok(0..n as i64);
    };
    let (a, b) = text
        .split_once("..")
        .with_context(|| format!("range '{text}' is not of the form a..b"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .with_context(|| format!("range bound '{s}' is not an integer"))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    ensure!(a <= b, "empty range {text}");
    Ok(a..b)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(path: &Path, rows: &[(i64, Complex64)]) -> Result<()> {
    let mut out = String::from("x,re,im\n");
    for (x, v) in rows {
        writeln!(out, "{x},{},{}", v.re, v.im)?;
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

fn table(rows: &[(i64, Complex64)]) -> Vec<serde_json::Value> {
    rows.iter().map(|(x, v)| json!([x, v.re, v.im])).collect()
}

fn gowers(args: &FunctionArgs) -> Result<ExitCode> {
    ensure!(args.s >= 1, "--s must be at least 1");
    let f = load_function(args)?;
    let k = args.s + 1;
    let norm = u_norm(&f, k)?;
    let mut report = json!({ "N": f.len(), "k": k, "norm": norm });
    if args.s == 1 {
        report["fft_u2"] = json!(u2_via_fft(&f));
    }
    print_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn heisenberg(args: &HeisenbergArgs) -> Result<ExitCode> {
    ensure!(args.n >= 1, "--n must be positive");
    let seq = HeisNilsequence::new(args.n, args.a, StandardBump)?;
    let range = parse_range(args.range.as_deref(), args.n)?;
    let rows: Vec<(i64, Complex64)> = range.map(|t| (t, seq.eval(t))).collect();
    let span = 2 * args.n as i64;
    let certificate = check_n_periodic(|t| seq.p(t), args.n, -span..=span)?;
    if let Some(path) = &args.output {
        write_csv(path, &rows)?;
    }
    print_json(&json!({
        "N": args.n,
        "a": args.a,
        "witness": seq.witness(),
        "certificate": certificate,
        "values": table(&rows),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn lift(args: &LiftArgs) -> Result<ExitCode> {
    ensure!(args.n >= 1, "--n must be positive");
    ensure!(args.s >= 1, "--s must be at least 1");
    let p = parse_coeffs(&args.coeffs)
        .context("coefficients must be exact rationals such as 1/25 or 0.5")?
        .with_degree_bound(args.s)?;
    let lift = AbelianLift::new(p, args.n, StandardBump)?;
    let range = parse_range(args.range.as_deref(), args.n)?;
    let rows: Vec<(i64, Complex64)> = range.map(|x| (x, lift.eval(x))).collect();
    let span = 2 * args.n as i64;
    let certificate = check_n_periodic(|x| lift.p_tilde(x), args.n, -span..=span)?;
    let map = polynomial_map_check(|x| lift.p_tilde(x), &SampleGrid::standard(args.n))?;
    if let Some(path) = &args.output {
        write_csv(path, &rows)?;
    }
    let binomial: Vec<String> = lift.q().to_binomial().coeffs().iter().map(format_rational).collect();
    print_json(&json!({
        "N": args.n,
        "s": args.s,
        "p": lift.p(),
        "q": { "monomial": lift.q(), "binomial": binomial },
        "witness": lift.witness(),
        "certificate": certificate,
        "polynomial_map": { "passed": map.passed(), "derivatives_checked": map.derivatives_checked },
        "image_in_g1": lift.image_in_g1(),
        "coset_in_g1": lift.coset_in_g1(),
        "values": table(&rows),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn deduce_cmd(args: &DeduceArgs) -> Result<ExitCode> {
    ensure!(args.function.s >= 1, "--s must be at least 1");
    let f = load_function(&args.function)?;
    let external = match &args.coeffs {
        Some(c) => Some((parse_coeffs(c)?, None)),
        None => None,
    };
    let params = OracleParams {
        external,
        ..OracleParams::default()
    };
    let oracle = OracleRegistry::builtin().create(&args.oracle, &params)?;
    let deduction = deduce(&f, args.function.s, oracle.as_ref(), &DeduceConfig::default())?;
    let report = &deduction.report;
    if let Some(path) = &args.output {
        // back in the coordinates of the input
        let rows: Vec<(i64, Complex64)> = (0..f.len() as i64)
            .map(|x| (x, deduction.psi_prime(x + report.offset).unwrap_or_default()))
            .collect();
        write_csv(path, &rows)?;
    }
    print_json(report)?;
    Ok(match report.status {
        Status::Success => ExitCode::SUCCESS,
        Status::Declined => {
            eprintln!("oracle '{}' declined (best correlation {:e})", report.oracle.kind, report.oracle.c);
            ExitCode::from(2)
        }
    })
}

fn verify_cmd(args: &VerifyArgs) -> Result<ExitCode> {
    let config = VerifyConfig {
        seed: args.seed,
        tolerance: args.tolerance,
        only: args.only.clone(),
    };
    let results = verify::run(&config)?;
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{r}")?;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} checks passed", results.len())?;
    Ok(if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
