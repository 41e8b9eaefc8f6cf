use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use obstructor::bundle::Triviality;
use obstructor::cech::Window;
use obstructor::report::{self, ModelSpec, SweepBox, EXIT_INPUT_ERROR};

/// Obstruction calculus for supermanifolds on split bundles over curves.
#[derive(Parser, Debug)]
#[command(name = "obstructor", version)]
struct Cli {
    /// Laurent window for Čech computations.
    #[arg(long, global = true, env = "OBSTRUCTOR_WINDOW", default_value_t = Window::DEFAULT.0)]
    window: u32,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Obstruction table and goodness verdict for one model.
    Analyze(ModelArgs),
    /// Classify every model in a box of degrees.
    Sweep(SweepArgs),
    /// The connecting map on a basis of H0(Q^(2)), rank 3 on P1.
    Exotic(ModelArgs),
    /// Čech dimensions and bases for O(d) on P1.
    Oracle {
        #[arg(allow_negative_numbers = true)]
        degree: i64,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// JSON model spec file.
    #[arg(conflicts_with_all = ["degrees", "balanced", "genus", "triviality"])]
    spec: Option<PathBuf>,

    #[arg(long)]
    genus: Option<u32>,

    /// Summand degrees, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1.., conflicts_with = "balanced")]
    degrees: Option<Vec<i64>>,

    /// `q` copies of `O(d)`.
    #[arg(long, num_args = 2, value_names = ["Q", "D"], allow_negative_numbers = true)]
    balanced: Option<Vec<i64>>,

    /// Per-summand triviality flags (trivial, nontrivial, unknown).
    #[arg(long, value_delimiter = ',', requires = "degrees")]
    triviality: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    genus: u32,

    /// Rank of the cube `[LO, HI]^rank`.
    #[arg(long, requires = "range", conflicts_with_all = ["box_ranges", "balanced_rank"])]
    rank: Option<usize>,

    /// Inclusive degree range.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    range: Option<Vec<i64>>,

    /// Per-summand ranges, e.g. `-2:0,-1:1,0:3`.
    #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "balanced_rank")]
    box_ranges: Option<Vec<String>>,

    /// Sweep `⊕^Q O(d)` for `d` in `--range`.
    #[arg(long, value_name = "Q", requires = "range")]
    balanced_rank: Option<usize>,

    /// Re-derive each genus-0 rank-3 verdict from the connecting map.
    #[arg(long)]
    check_alpha: bool,
}

fn input_error(msg: impl std::fmt::Display) -> String {
    msg.to_string()
}

fn parse_flag(s: &str) -> Result<Triviality, String> {
    match s {
        "trivial" => Ok(Triviality::Trivial),
        "nontrivial" => Ok(Triviality::NonTrivial),
        "unknown" => Ok(Triviality::Unknown),
        other => Err(format!("unknown triviality flag `{other}`")),
    }
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, String> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            return ModelSpec::from_json(&text).map_err(input_error);
        }
        let genus = self.genus.unwrap_or(0);
        let degrees = match (&self.degrees, &self.balanced) {
            (Some(d), None) => d.clone(),
            (None, Some(b)) => {
                let q = usize::try_from(b[0])
                    .ok()
                    .filter(|&q| q > 0)
                    .ok_or_else(|| format!("--balanced: rank must be positive, got {}", b[0]))?;
                vec![b[1]; q]
            }
            _ => return Err("give a spec file, --degrees or --balanced".into()),
        };
        let triviality_flags = self
            .triviality
            .as_ref()
            .map(|v| v.iter().map(|s| parse_flag(s)).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        let spec = ModelSpec {
            genus,
            degrees,
            triviality_flags,
        };
        spec.validate().map_err(input_error)?;
        Ok(spec)
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("range `{s}` is not LO:HI"))?;
    let lo = lo.trim().parse().map_err(|e| format!("range `{s}`: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("range `{s}`: {e}"))?;
    Ok((lo, hi))
}

impl SweepArgs {
    fn sweep_box(&self) -> Result<SweepBox, String> {
        let range = self.range.as_ref().map(|r| (r[0], r[1]));
        match (&self.box_ranges, self.rank, self.balanced_rank, range) {
            (Some(ranges), None, None, None) => Ok(SweepBox::Product {
                genus: self.genus,
                ranges: ranges.iter().map(|s| parse_range(s)).collect::<Result<_, _>>()?,
            }),
            (None, Some(rank), None, Some((lo, hi))) => Ok(SweepBox::cube(self.genus, rank, lo, hi)),
            (None, None, Some(rank), Some(range)) => Ok(SweepBox::Balanced {
                genus: self.genus,
                rank,
                range,
            }),
            _ => Err("give --box, --rank with --range, or --balanced-rank with --range".into()),
        }
    }
}

fn emit<T: std::fmt::Display>(json: bool, value: &T, to_json: impl Fn(&T) -> String) {
    let text = if json {
        format!("{}\n", to_json(value))
    } else {
        value.to_string()
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: &Cli) -> Result<i32, String> {
    let window = Window(cli.window);
    match &cli.command {
        Command::Analyze(args) => {
            let doc = report::analyze(&args.spec()?, window).map_err(input_error)?;
            emit(cli.json, &doc, |d| d.to_json());
            Ok(doc.exit_code())
        }
        Command::Exotic(args) => {
            let doc = report::exotic_report(&args.spec()?, window).map_err(input_error)?;
            emit(cli.json, &doc, |d| d.to_json());
            Ok(doc.exit_code())
        }
        Command::Sweep(args) => {
            let table = report::sweep(&args.sweep_box()?, args.check_alpha, window).map_err(input_error)?;
            emit(cli.json, &table, |t| t.to_json());
            Ok(0)
        }
        Command::Oracle { degree } => {
            let listing = report::oracle(*degree, window).map_err(input_error)?;
            emit(cli.json, &listing, |l| l.to_json());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
