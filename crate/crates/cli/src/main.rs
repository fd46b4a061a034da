//! `pibcomp`: power integral bases in composites of a real quadratic field
//! with a cubic or totally complex quartic field.
//!
//! The result document goes to stdout (or `--out`); everything else goes
//! to stderr. Exit codes: 0 success, 2 validation failure, 3 computational
//! failure, 4 unsupported branch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use pibcomp::cubic::run_cubic;
use pibcomp::endgame::default_root_width;
use pibcomp::io::result::{cubic_document, index_document, quartic_document};
use pibcomp::io::{load_field_data, verify_field_data, write_result, FieldData, ResultDocument};
use pibcomp::number::rational::parse_rational;
use pibcomp::quartic::{prepare_quartic, run_quartic_tc};
use pibcomp::tower::CompositeElement;
use pibcomp::{Error, ErrorCategory, Result};

#[derive(Debug, Parser)]
#[command(
    name = "pibcomp",
    version,
    about = "Power integral bases in composite number fields"
)]
struct Cli {
    /// Write the result document here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Isolation width for real roots seeding the unit exponent, a rational
    /// in (0, 1) such as 1/1048576.
    #[arg(long, global = true, value_name = "RATIONAL", value_parser = parse_precision)]
    precision: Option<BigRational>,

    /// Override the exponent bound A of the norm equation.
    #[arg(long, global = true, value_name = "A")]
    bound: Option<u32>,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a cubic extension.
    Cubic { file: PathBuf },
    /// Solve a totally complex quartic extension.
    QuarticTc { file: PathBuf },
    /// Index data of one element.
    Index {
        file: PathBuf,
        /// `x_0,…,x_{ℓ−1},y_0,…,y_{ℓ−1},den` for `(Σx_iξ^i + ωΣy_iξ^i)/den`.
        #[arg(long, value_name = "VECTOR", allow_hyphen_values = true)]
        element: String,
    },
    /// Re-validate field data and certify its bundled answers.
    Verify { file: PathBuf },
}

fn parse_precision(s: &str) -> std::result::Result<BigRational, String> {
    let q = parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational such as 1/1000"))?;
    if !q.is_positive() || q >= BigRational::one() {
        return Err(format!("precision must lie in (0, 1), got {q}"));
    }
    Ok(q)
}

fn parse_element(s: &str, ell: usize) -> Result<CompositeElement> {
    let bad = |detail: String| Error::validation("element-shape", "--element", detail);
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<BigInt>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad(format!("{s:?} is not a comma-separated list of integers")))?;
    if v.len() != 2 * ell + 1 {
        return Err(bad(format!(
            "expected {} integers (x's, y's, denominator), got {}",
            2 * ell + 1,
            v.len()
        )));
    }
    let den = v[2 * ell].clone();
    if !den.is_positive() {
        return Err(bad("denominator must be positive".into()));
    }
    Ok(CompositeElement::new(
        v[..ell].to_vec(),
        v[ell..2 * ell].to_vec(),
        den,
    ))
}

fn cubic(fd: FieldData, cli: &Cli, width: &BigRational) -> Result<ResultDocument> {
    let t = &fd.tower;
    let Some(input) = fd.cubic.as_ref() else {
        pibcomp::cubic::build_cubic_thue(t)?;
        return Err(Error::validation(
            "norm-equation-present",
            "/norm_equation",
            "no norm equation data",
        ));
    };
    let mut eq = input.equation.clone();
    if let Some(b) = cli.bound {
        eq.exponent_bound = b;
    }
    log::info!("cubic pipeline, exponent bound {}", eq.exponent_bound);
    let run = run_cubic(t, &eq, width)?;
    cubic_document(t, &run, &eq.target_norm, eq.exponent_bound)
}

fn quartic(fd: FieldData, cli: &Cli, width: &BigRational) -> Result<ResultDocument> {
    let t = &fd.tower;
    let setup = prepare_quartic(t)?;
    let aux = fd.aux.as_ref().ok_or_else(|| {
        Error::validation(
            "aux-field-present",
            "/aux_field",
            "the quartic pipeline needs auxiliary field data",
        )
    })?;
    let mut eq = aux.equation.clone();
    if let Some(b) = cli.bound {
        eq.exponent_bound = b;
    }
    log::info!(
        "quartic pipeline, λ = {}, exponent bound {}",
        setup.lambda,
        eq.exponent_bound
    );
    let run = run_quartic_tc(t, setup, &eq, width)?;
    quartic_document(t, &run, &eq.target_norm, eq.exponent_bound)
}

fn load(path: &Path) -> Result<FieldData> {
    let fd = load_field_data(path)?;
    log::info!(
        "loaded {}: degree {}, D_K = {}",
        path.display(),
        fd.tower.degree(),
        fd.tower.disc_k()
    );
    Ok(fd)
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Error::Degenerate(format!("cannot start {n} worker threads: {e}")))?;
    }
    let width = cli.precision.clone().unwrap_or_else(default_root_width);
    let doc = match &cli.command {
        Command::Cubic { file } => cubic(load(file)?, cli, &width)?,
        Command::QuarticTc { file } => quartic(load(file)?, cli, &width)?,
        Command::Index { file, element } => {
            let fd = load(file)?;
            let e = parse_element(element, fd.tower.degree())?;
            index_document(&fd.tower, &e)?
        }
        Command::Verify { file } => verify_field_data(&load(file)?)?,
    };
    log::info!("{} generator(s)", doc.generators.len());
    write_result(&doc, cli.out.as_deref())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.category() {
                ErrorCategory::Validation => 2,
                ErrorCategory::Computation => 3,
                ErrorCategory::Unsupported => 4,
            })
        }
    }
}
