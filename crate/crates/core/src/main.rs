//! `hypforms`: certify, classify and draw hyperbolic binary forms.
//!
//! Exit codes: 0 success, 1 a verification case failed, 2 bad input,
//! 3 internal disagreement.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypforms::asymptotics::{render_curves, CurveOptions, RenderOptions};
use hypforms::certify::{is_hyperbolic, is_hyperbolic_polar, Certificate};
use hypforms::families::{self, FamilyMember};
use hypforms::index::classify;
use hypforms::parse::parse_form;
use hypforms::verify::{self, SuiteReport, VerifyOptions};
use hypforms::Error;

#[derive(Parser)]
#[command(
    name = "hypforms",
    version,
    about = "Hyperbolic homogeneous polynomials in two variables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify hyperbolicity by the Hessian and the polar criterion.
    Check { poly: String },
    /// Index and component of a hyperbolic form, or of every row of a CSV file.
    Index {
        #[arg(required_unless_present = "file")]
        poly: Option<String>,
        /// CSV with a `poly` column; writes a CSV report to stdout.
        #[arg(long, conflicts_with = "poly")]
        file: Option<PathBuf>,
    },
    /// Generate family members as JSON lines.
    Family {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        /// One of the suite names, or `all`.
        suite: String,
        #[arg(long)]
        d_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
    /// Exact check of the critical point and maximum in the auxiliary lemma.
    Lemma1 {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
    /// Integrate asymptotic curves and write SVG or CSV.
    Curves {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Half-width of the square viewport.
        #[arg(long, default_value_t = 2.0)]
        viewport: f64,
        #[arg(long, default_value_t = 1e-3)]
        standoff: f64,
        #[arg(long, default_value_t = 12)]
        ring_seeds: usize,
        /// Keep every n-th vertex in the output.
        #[arg(long, default_value_t = 20)]
        stride: usize,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// `P_m Q_{D-m}` for `m <= D < m^2`, `D - m` even.
    Arnold {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        m: usize,
    },
    /// `P_{2k+1}`, or `P_{2k+2}` with `--even`.
    Pfact {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        even: bool,
    },
    /// `g_{2n+2}`.
    G {
        #[arg(long)]
        n: usize,
    },
    /// `Q_{2n} P_{2k+1}`, or `Q_{2n} P_{2k+2}` with `--even`.
    F {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        even: bool,
    },
    /// One representative per component of degree `D`.
    Reps {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Csv,
}

enum Failure {
    Input(Error),
    Internal(String),
    Cases,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            e => Failure::Input(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(Error::InvalidParameters(e.to_string()))
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Cases) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Check { poly } => check(&poly),
        Command::Index { poly: Some(p), .. } => {
            println!("{}", classify(&parse_form(&p)?)?.to_json());
            Ok(())
        }
        Command::Index { file, .. } => index_file(&file.expect("clap requires poly or file")),
        Command::Family { family } => family_cmd(family),
        Command::Verify {
            suite,
            d_max,
            n_max,
            seed,
        } => report(verify::run_suite(
            &suite,
            &VerifyOptions { d_max, n_max, seed },
        )?),
        Command::Lemma1 { n_min, n_max } => report(verify::run_lemma1(n_min, n_max)?),
        Command::Curves {
            poly,
            out,
            step,
            viewport,
            standoff,
            ring_seeds,
            stride,
            format,
        } => {
            let f = parse_form(&poly)?;
            for (name, v) in [
                ("step", step),
                ("viewport", viewport),
                ("standoff", standoff),
            ] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(
                        Error::InvalidParameters(format!("--{name} must be positive")).into(),
                    );
                }
            }
            let opts = RenderOptions {
                curve: CurveOptions {
                    step,
                    viewport,
                    standoff,
                    max_len: 4.0 * viewport,
                },
                ring_seeds,
                stride,
            };
            let set = render_curves(&f, &opts)?;
            let text = match format {
                Format::Svg => set.to_svg(stride),
                Format::Csv => set.to_csv(stride)?,
            };
            fs::write(&out, text)?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CheckReport {
    form: String,
    hessian: Certificate,
    polar: Certificate,
}

fn check(poly: &str) -> CliResult {
    let f = parse_form(poly)?;
    let hessian = is_hyperbolic(&f)?;
    let polar = is_hyperbolic_polar(&f)?;
    if hessian.verdict != polar.verdict {
        return Err(Failure::Internal(format!(
            "Hessian and polar criteria disagree on {f}: {:?} vs {:?}",
            hessian.verdict, polar.verdict
        )));
    }
    let r = CheckReport {
        form: f.to_string(),
        hessian,
        polar,
    };
    println!("{}", serde_json::to_string(&r).expect("report serializes"));
    Ok(())
}

#[derive(Serialize)]
struct IndexRow {
    poly: String,
    degree: Option<usize>,
    hyperbolic: Option<bool>,
    index: Option<i64>,
    component_rank: Option<usize>,
    factor_count: Option<usize>,
    error: Option<String>,
}

fn index_row(poly: String) -> IndexRow {
    let mut row = IndexRow {
        poly,
        degree: None,
        hyperbolic: None,
        index: None,
        component_rank: None,
        factor_count: None,
        error: None,
    };
    let f = match parse_form(&row.poly) {
        Ok(f) => f,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.degree = Some(f.degree());
    match classify(&f) {
        Ok(c) => {
            row.hyperbolic = Some(true);
            row.index = Some(c.index);
            row.component_rank = Some(c.component_rank);
            row.factor_count = Some(c.factor_count);
        }
        Err(Error::NotHyperbolic) => row.hyperbolic = Some(false),
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn index_file(path: &PathBuf) -> CliResult {
    let mut rdr = csv::Reader::from_path(path)
        .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::InvalidParameters(e.to_string()))?
        .clone();
    let col = headers.iter().position(|h| h.trim() == "poly").unwrap_or(0);
    let mut polys = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::InvalidParameters(e.to_string()))?;
        polys.push(rec.get(col).unwrap_or("").to_string());
    }
    let rows: Vec<IndexRow> = {
        use rayon::prelude::*;
        polys.into_par_iter().map(index_row).collect()
    };
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn member_line(m: &FamilyMember) -> String {
    serde_json::json!({
        "label": m.label,
        "family_tag": m.family_tag,
        "params": m.params,
        "degree": m.degree,
        "expected_index": m.expected_index,
        "form": m.form.to_string(),
    })
    .to_string()
}

fn family_cmd(cmd: FamilyCmd) -> CliResult {
    let members = match cmd {
        FamilyCmd::Arnold { degree, m } => vec![families::arnold(degree, m)?],
        FamilyCmd::Pfact { k, even } => vec![families::p_factorized(k, even)?],
        FamilyCmd::G { n } => vec![families::g_even(n)?],
        FamilyCmd::F { n, k, even } => vec![families::f_family(n, k, even)?],
        FamilyCmd::Reps { degree } => families::representatives(degree)?,
    };
    let mut out = io::stdout().lock();
    for m in &members {
        writeln!(out, "{}", member_line(m))?;
    }
    Ok(())
}

/// Prints the report; failing cases also go to stderr as one JSON diff.
fn report(r: SuiteReport) -> CliResult {
    println!("{}", r.to_json());
    if r.all_pass() {
        return Ok(());
    }
    let diff: Vec<_> = r.failures().collect();
    eprintln!(
        "{}",
        serde_json::json!({ "suite": r.suite, "failed": diff })
    );
    Err(Failure::Cases)
}
