mod geometry;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use badtri::cf::{expand_quadratic, expand_rational, expand_real, parse_cf, parse_decimal, CfWord};
use badtri::quadfield::parse_quad;

#[derive(Parser)]
#[command(
    name = "badtri",
    version,
    about = "Badly approximable triples and their tilings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction expansion and evaluation
    #[command(subcommand)]
    Cf(CfCmd),
    /// Exact verification of the number-theoretic results
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Build an ε-rule patch (or a stationary sequence) and write it as JSON
    Tile(TileArgs),
    /// Delone, Chabauty–Fell and discrepancy analysis of a patch file
    Analyze {
        #[arg(value_enum)]
        what: AnalyzeKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Second patch for `cfdist`
        #[arg(long)]
        other: Option<PathBuf>,
        /// Restriction radii for `cfdist`
        #[arg(long, value_delimiter = ',', default_values_t = vec![5.0, 10.0, 20.0])]
        radii: Vec<f64>,
    },
    /// Convert a patch file to SVG, JSON or CSV
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum CfCmd {
    /// Expand a quadratic irrational, a rational, or a decimal with error bound
    Expand {
        value: String,
        /// Absolute error of a decimal input; enables certified expansion
        #[arg(long)]
        err: Option<String>,
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
    /// Evaluate a word like `[3,per(1,2)]` or `[2,3,inf]`
    Eval {
        word: String,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Both solutions of x+y+z=1 with digits in the first class
    Main,
    /// The four solutions of x+y=z
    Main2,
    /// Case tables and their forbidden intervals
    Tables {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Insertion identities and the further rational identities
    Identities {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Sporadic solutions and the scalene family
    Family {
        #[arg(long, default_value_t = 10)]
        l_max: usize,
    },
    /// Solutions generated from an insertion code such as `2.11211.2`
    Generate { code: String },
    /// Branch-and-bound search over cylinder triples
    Search {
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = RelationArg::Sum)]
        relation: RelationArg,
        #[arg(long, default_value_t = badtri::theorem::DEFAULT_LOOKAHEAD)]
        lookahead: usize,
        /// Restrict every digit to at most 2
        #[arg(long)]
        two_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    /// x + y + z = 1
    Sum,
    /// x + y = z
    Diff,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeKind {
    Delone,
    Cfdist,
    Discrepancy,
}

#[derive(clap::Args)]
struct TileArgs {
    #[arg(long, conflicts_with = "angles")]
    preset: Option<String>,
    /// `alpha,beta,gamma` in radians
    #[arg(long)]
    angles: Option<String>,
    #[arg(long, required_unless_present = "stationary")]
    epsilon: Option<f64>,
    /// Prototile to start from (1 scalene, 2 isosceles)
    #[arg(long, default_value_t = 1)]
    start: u8,
    /// Build P_0..P_n instead; files get a `-k` suffix
    #[arg(long)]
    stationary: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Also render SVG to this path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Leave the centroids out of the SVG
    #[arg(long)]
    no_points: bool,
}

fn configure_threads() {
    if let Some(n) = std::env::var("BADTRI_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn run_cf(cmd: CfCmd) -> Result<bool> {
    match cmd {
        CfCmd::Expand { value, err, terms } => {
            if let Some(err) = err {
                let err = parse_decimal(&err)?;
                let exp = expand_real(&value, &err, terms)?;
                let digits: Vec<String> = exp.digits.iter().map(u64::to_string).collect();
                println!("[{}]", digits.join(","));
                println!("certified: {}", exp.certified);
                return Ok(true);
            }
            let q = parse_quad(&value).map_err(anyhow::Error::msg)?;
            if let Some(r) = q.to_rat() {
                println!("{}", expand_rational(&r)?);
            } else {
                println!("{}", expand_quadratic(&q)?);
            }
            Ok(true)
        }
        CfCmd::Eval { word, digits } => {
            match parse_cf(&word)? {
                CfWord::Finite(w) => {
                    let v = w.value();
                    println!("{v}");
                }
                CfWord::Periodic(w) => {
                    let v = w.value()?;
                    println!("{v}");
                    println!("{}", v.to_decimal(digits));
                }
            }
            Ok(true)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Cf(cmd) => run_cf(cmd),
        Command::Verify(cmd) => verify::run(cmd),
        Command::Tile(args) => geometry::tile(args),
        Command::Analyze {
            what,
            input,
            other,
            radii,
        } => geometry::analyze(what, &input, other.as_deref(), &radii),
        Command::Export(args) => geometry::export(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
