//! Command-line front end. Every invocation prints one JSON object.
//!
//! Exit codes: 0 success, 1 negative result (not algebraic at the bounds,
//! certificate false, methods disagree, self-test failure), 2 invalid input
//! or insufficient precision, 3 enumeration budget exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use algser::algebra::{rat, BivarPoly, Rat, SupportShape, TruncatedSeries};
use algser::expansion::{expand, Method};
use algser::flajolet_soria::{Budget, DEFAULT_BUDGET};
use algser::henselization::{henselize, HenselOutcome};
use algser::io::{self, PolyFile, SeriesFile};
use algser::newton_oracle::newton_lift;
use algser::wilczynski::{certify, reconstruct, slab_depth, Implicitization, DEFAULT_MINOR_BUDGET};
use algser::Error;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "algser",
    version,
    about = "Exact tools for algebraic power series"
)]
pub struct Cli {
    /// Node budget for coefficient enumeration.
    #[arg(long, global = true, env = "ALGSER_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Write the JSON result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients after the seed, by one or all methods.
    Expand(ExpandArgs),
    /// Recover a vanishing polynomial from a truncated series.
    Implicitize(ImplicitizeArgs),
    /// Reduced Henselian equation for the tail after c_1..c_{k+1}.
    Henselize(HenselizeArgs),
    /// Check P(x, y) = 0 modulo x^(2 dx dy + 1).
    Certify(CertifyArgs),
    /// Newton lift of the root selected by the seed.
    Oracle(OracleArgs),
    /// Run the built-in reference checks.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Fs,
    Closed,
    Newton,
    All,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub seed: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct ImplicitizeArgs {
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub dx: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub dy: u32,
    /// Support shape; defaults to every monomial within the bounds.
    #[arg(long)]
    pub shape: Option<PathBuf>,
    /// Minors tried per column family before falling back to subfamilies.
    #[arg(long, default_value_t = DEFAULT_MINOR_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub minor_budget: u64,
}

#[derive(Debug, Args)]
pub struct HenselizeArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub seed: PathBuf,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub dx: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub dy: u32,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub seed: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Seed for the randomly generated agreement instances.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 25)]
    pub instances: usize,
}

/// A finished command: JSON text plus exit code.
struct Outcome {
    json: String,
    code: i32,
}

impl Outcome {
    fn ok<T: Serialize>(v: &T) -> Self {
        Outcome {
            json: io::to_json(v),
            code: EXIT_OK,
        }
    }

    fn negative<T: Serialize>(v: &T) -> Self {
        Outcome {
            json: io::to_json(v),
            code: EXIT_NEGATIVE,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Input(_)
        | Error::Precision { .. }
        | Error::NotARoot { .. }
        | Error::NotSimpleRoot(_) => EXIT_INPUT,
    }
}

fn read(path: &Path) -> algser::Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_poly(path: &Path) -> algser::Result<BivarPoly> {
    io::parse_poly(&read(path)?)
}

fn read_series(path: &Path) -> algser::Result<TruncatedSeries> {
    io::parse_series(&read(path)?)
}

fn read_seed(path: &Path) -> algser::Result<Vec<Rat>> {
    Ok(read_series(path)?.tail().to_vec())
}

#[derive(Serialize)]
struct ExpandOut {
    /// Index of the first reported coefficient.
    start: usize,
    methods: BTreeMap<String, Vec<String>>,
    agree: bool,
}

fn cmd_expand(a: &ExpandArgs, budget: u64) -> algser::Result<Outcome> {
    let p = read_poly(&a.poly)?;
    let seed = read_seed(&a.seed)?;
    let methods: Vec<Method> = match a.method {
        MethodArg::Fs => vec![Method::Fs],
        MethodArg::Closed => vec![Method::Closed],
        MethodArg::Newton => vec![Method::Newton],
        MethodArg::All => Method::ALL.to_vec(),
    };
    let mut out = BTreeMap::new();
    let mut results = Vec::new();
    for m in methods {
        let mut b = Budget::new(budget);
        let coeffs = expand(&p, &seed, a.count as usize, m, &mut b)?;
        out.insert(m.name().to_string(), io::rats_to_text(&coeffs));
        results.push(coeffs);
    }
    let agree = results.windows(2).all(|w| w[0] == w[1]);
    let v = ExpandOut {
        start: seed.len() + 1,
        methods: out,
        agree,
    };
    Ok(if agree {
        Outcome::ok(&v)
    } else {
        Outcome::negative(&v)
    })
}

#[derive(Serialize)]
struct NegativeImplicitization {
    status: &'static str,
    rank: usize,
    depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidates_tried: Option<usize>,
}

fn cmd_implicitize(a: &ImplicitizeArgs) -> algser::Result<Outcome> {
    let c = read_series(&a.series)?;
    let shape = match &a.shape {
        Some(path) => io::parse_shape(&read(path)?)?,
        None => SupportShape::full(a.dx, a.dy),
    };
    Ok(
        match reconstruct(&shape, &c, a.dx, a.dy, a.minor_budget as usize)? {
            Implicitization::Found { poly, .. } => Outcome::ok(&PolyFile {
                hypothesis_assumed: Some(true),
                ..PolyFile::from_poly(&poly)
            }),
            Implicitization::NotAlgebraic { rank, depth } => {
                Outcome::negative(&NegativeImplicitization {
                    status: "not-algebraic-at-bounds",
                    rank,
                    depth,
                    candidates_tried: None,
                })
            }
            Implicitization::Uncertified {
                rank,
                depth,
                candidates_tried,
            } => Outcome::negative(&NegativeImplicitization {
                status: "uncertified",
                rank,
                depth,
                candidates_tried: Some(candidates_tried),
            }),
        },
    )
}

#[derive(Serialize)]
struct BTerm {
    l: u32,
    m: u32,
    c: String,
}

#[derive(Serialize)]
struct HenselOut {
    omega0: String,
    i_k: u32,
    k0: usize,
    b: Vec<BTerm>,
}

#[derive(Serialize)]
struct PolynomialRootOut {
    polynomial_root: bool,
    z: Vec<String>,
}

fn cmd_henselize(a: &HenselizeArgs) -> algser::Result<Outcome> {
    let p = read_poly(&a.poly)?;
    let c = read_series(&a.seed)?;
    Ok(match henselize(&p, &c, a.k)? {
        HenselOutcome::Equation(form) => Outcome::ok(&HenselOut {
            omega0: rat::to_text(&form.omega0),
            i_k: form.i_k,
            k0: form.k0,
            b: form
                .eq
                .q()
                .terms()
                .map(|(m, c)| BTerm {
                    l: m.i,
                    m: m.j,
                    c: rat::to_text(c),
                })
                .collect(),
        }),
        HenselOutcome::PolynomialRoot(z) => Outcome::ok(&PolynomialRootOut {
            polynomial_root: true,
            z: io::rats_to_text(&z),
        }),
    })
}

#[derive(Serialize)]
struct CertifyOut {
    certified: bool,
    tau: usize,
    /// A positive certificate assumes the series is algebraic within the
    /// bounds; a negative one is unconditional.
    hypothesis_assumed: bool,
}

fn cmd_certify(a: &CertifyArgs) -> algser::Result<Outcome> {
    let p = read_poly(&a.poly)?;
    let c = read_series(&a.series)?;
    let certified = certify(&p, &c, a.dx, a.dy)?;
    let v = CertifyOut {
        certified,
        tau: slab_depth(a.dx, a.dy),
        hypothesis_assumed: certified,
    };
    Ok(if v.certified {
        Outcome::ok(&v)
    } else {
        Outcome::negative(&v)
    })
}

fn cmd_oracle(a: &OracleArgs) -> algser::Result<Outcome> {
    let p = read_poly(&a.poly)?;
    let seed = read_seed(&a.seed)?;
    let r = newton_lift(&p, &seed, a.count as usize)?;
    Ok(Outcome::ok(&SeriesFile::from_coeffs(r.series.tail())))
}

fn dispatch(cli: &Cli) -> algser::Result<Outcome> {
    match &cli.command {
        Command::Expand(a) => cmd_expand(a, cli.budget),
        Command::Implicitize(a) => cmd_implicitize(a),
        Command::Henselize(a) => cmd_henselize(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Selftest(a) => {
            let report = selftest::run(a.seed, a.instances, cli.budget);
            Ok(if report.passed {
                Outcome::ok(&report)
            } else {
                Outcome::negative(&report)
            })
        }
    }
}

#[derive(Serialize)]
struct ErrorOut {
    error: String,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (json, code) = match dispatch(&cli) {
        Ok(o) => (o.json, o.code),
        Err(e) => {
            let _ = writeln!(stderr, "algser: {e}");
            (
                io::to_json(&ErrorOut {
                    error: e.to_string(),
                }),
                exit_code(&e),
            )
        }
    };
    match &cli.output {
        Some(path) if code != EXIT_INPUT && code != EXIT_BUDGET => {
            if let Err(e) = fs::write(path, format!("{json}\n")) {
                let _ = writeln!(stderr, "algser: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        _ => {
            let _ = writeln!(stdout, "{json}");
        }
    }
    code
}
