//! `cms`: exact Jack/Jacobi eigenfunctions, super Jacobi polynomials and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 resonance, 3 parse or
//! configuration error, 4 pole.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cms_core::coeff::{Bindings, CoeffFrac, Param};
use cms_core::eigen::{jack, jacobi, specialize_euler, super_jacobi, EigenResult, EulerVariant};
use cms_core::finite::DeformedContext;
use cms_core::verify::{run, Suite, VerifyConfig};
use cms_core::{Error, Partition};

#[derive(Parser)]
#[command(name = "cms", version, about = "Exact Calogero-Moser-Sutherland eigenfunctions and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jack symmetric function J_λ (parameters k, p0).
    Jack(EigenArgs),
    /// Jacobi symmetric function (parameters k, p, q, h, p0).
    Jacobi(EigenArgs),
    /// Super Jacobi polynomial on the deformed BC(m,n) system.
    Superjacobi(SuperArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Fix a parameter: NAME=RATIONAL or NAME=symbolic. Repeatable.
    #[arg(long = "bind", value_name = "NAME=RAT")]
    bind: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EigenArgs {
    /// Partition label, e.g. "2,1"; "-" is the empty partition.
    #[arg(long)]
    partition: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SuperArgs {
    #[arg(long)]
    partition: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Specialize to the Euler supercharacter point.
    #[arg(long, value_name = "odd|even")]
    euler: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// diagram-trigA, diagram-ratA, diagram-ratB, diagram-bc, theorem1, kernel,
    /// duality-A, duality-BC, fourier, triangularity, eigen, gauge, momentum,
    /// superjacobi
    suite: String,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Largest number of particles for the type-A diagrams.
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long, requires = "n")]
    m: Option<usize>,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    /// Seed for random rational parameter samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Parameter samples per system.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[command(flatten)]
    common: Common,
}

/// Outcome of a command: printed output and exit code.
type Outcome = Result<(String, u8), Error>;

fn parse_bindings(items: &[String], allowed: &[Param]) -> Result<Bindings, Error> {
    let mut b = Bindings::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("binding `{item}` is not NAME=VALUE")))?;
        let param: Param = name.trim().parse()?;
        if !allowed.contains(&param) {
            return Err(Error::Parse(format!("parameter `{param}` does not apply to this command")));
        }
        let value = value.trim();
        if value == "symbolic" {
            b.remove(param);
            continue;
        }
        let c: CoeffFrac = value.parse()?;
        if c.as_rational().is_none() {
            return Err(Error::Parse(format!("`{value}` is not an exact rational")));
        }
        b.set(param, c);
    }
    Ok(b)
}

fn eigen_text(r: &EigenResult) -> String {
    let mut out = format!("{} {}\neigenvalue: {}\n", r.family, r.label, r.eigenvalue);
    out.push_str(&format!("expansion: {}\n", r.expansion));
    out
}

fn eigen_cmd(args: &EigenArgs, is_jack: bool) -> Outcome {
    let label: Partition = args.partition.parse()?;
    let allowed: &[Param] = if is_jack {
        &[Param::K, Param::P0]
    } else {
        &[Param::K, Param::P, Param::Q, Param::H, Param::P0]
    };
    let b = parse_bindings(&args.common.bind, allowed)?;
    let r = if is_jack { jack(&label, &b)? } else { jacobi(&label, &b)? };
    let out = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable"),
        Format::Text => eigen_text(&r),
    };
    Ok((out, 0))
}

fn superjacobi_cmd(args: &SuperArgs) -> Outcome {
    let label: Partition = args.partition.parse()?;
    let b = parse_bindings(&args.common.bind, &[Param::K, Param::P, Param::Q, Param::H])?;
    let value = match &args.euler {
        None => {
            let ctx = DeformedContext::with_bindings(args.m, args.n, &b)?;
            let sj = super_jacobi(&label, &ctx)?;
            match args.common.format {
                Format::Json => serde_json::to_string_pretty(&sj).expect("serializable"),
                Format::Text => format!("{}\n", sj.value),
            }
        }
        Some(v) => {
            if !b.is_empty() {
                return Err(Error::Parse("--euler fixes k, p, q; drop --bind".into()));
            }
            let variant: EulerVariant = v.parse()?;
            let (_, value) = specialize_euler(&label, args.m, args.n, variant)?;
            match args.common.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "label": label.to_string(),
                    "m": args.m,
                    "n": args.n,
                    "euler": v,
                    "value": value.to_string(),
                }))
                .expect("serializable"),
                Format::Text => format!("{value}\n"),
            }
        }
    };
    Ok((value, 0))
}

fn verify_cmd(args: &VerifyArgs) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let all = [Param::K, Param::P, Param::Q, Param::H, Param::P0, Param::L];
    let cfg = VerifyConfig {
        max_degree: args.max_degree,
        n_max: args.big_n,
        pair: args.m.zip(args.n),
        bindings: parse_bindings(&args.common.bind, &all)?,
        seed: args.seed,
        samples: args.samples,
    };
    let report = run(suite, &cfg)?;
    let code = if report.passed() { 0 } else { 1 };
    let out = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        Format::Text => report.to_text(),
    };
    Ok((out, code))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resonance { .. } => 2,
        Error::Parse(_) | Error::InvalidPartition(_) | Error::Precondition(_) => 3,
        Error::Pole { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Jack(a) => eigen_cmd(a, true),
        Command::Jacobi(a) => eigen_cmd(a, false),
        Command::Superjacobi(a) => superjacobi_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match outcome {
        Ok((out, code)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
