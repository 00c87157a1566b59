use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use arrlab::cli::{
    cmd_analyze, cmd_batch, cmd_compare, cmd_matroid, cmd_realize, error_object, to_json_string, AnalyzeOptions,
    MatroidCommand, Output, RealizeRequest,
};

#[derive(Parser)]
#[command(name = "arrlab", version, about = "Exact analysis of projective line arrangements")]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Combinatorics, screening filters and the Milnor algebra resolution.
    Analyze {
        /// Arrangement file (omit with --batch).
        file: Option<PathBuf>,
        /// Analyze every *.json in a directory, in parallel.
        #[arg(long, value_name = "DIR", conflicts_with = "file")]
        batch: Option<PathBuf>,
        /// Report directory for --batch (default DIR/reports).
        #[arg(long, requires = "batch")]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Ziegler-pair and numerical Terao verdicts for two arrangements.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Highest degree of AR(f) scanned (default 2d-4).
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Matroid utilities.
    Matroid {
        #[command(subcommand)]
        sub: MatroidSub,
    },
    /// Instantiate or sample a realization family (zacharias, c2, m1, m2, or a family file).
    Realize {
        family: String,
        /// Parameter values `name=value`, e.g. `e=2` or `x=(1+a)/2`.
        params: Vec<String>,
        /// Sample COUNT points on COMPONENT instead.
        #[arg(long, num_args = 2, value_names = ["COMPONENT", "COUNT"])]
        sample: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the arrangement files; inline in the output otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Opts {
    /// Highest degree of AR(f) scanned (default 2d-4).
    #[arg(long)]
    max_degree: Option<u32>,
    /// Combinatorics only.
    #[arg(long)]
    skip_syzygy: bool,
    /// Include wall-clock time in reports.
    #[arg(long)]
    timing: bool,
}

impl From<Opts> for AnalyzeOptions {
    fn from(o: Opts) -> Self {
        AnalyzeOptions { max_degree: o.max_degree, skip_syzygy: o.skip_syzygy, timing: o.timing }
    }
}

#[derive(Subcommand)]
enum MatroidSub {
    /// Matroid of an arrangement file.
    FromArrangement { file: PathBuf },
    /// Basis-exchange check of a matroid file.
    Validate { file: PathBuf },
    /// Characteristic polynomial from a matroid/arrangement file or a vector like "(13; 16, 6, 4, 2)".
    Charpoly { input: String },
    /// Isomorphism witness between two matroid or arrangement files.
    Iso { a: PathBuf, b: PathBuf },
    /// Multiplicity lemma and divisional freeness.
    Filters { input: String },
}

fn run(cmd: Cmd) -> anyhow::Result<Output> {
    let out = match cmd {
        Cmd::Analyze { file, batch, out, opts } => match (file, batch) {
            (Some(f), None) => cmd_analyze(&f, &opts.into())?,
            (None, Some(dir)) => {
                let out = out.unwrap_or_else(|| dir.join("reports"));
                cmd_batch(&dir, &out, &opts.into())?
            }
            _ => bail!("give an arrangement file or --batch DIR"),
        },
        Cmd::Compare { a, b, max_degree } => {
            cmd_compare(&a, &b, &AnalyzeOptions { max_degree, ..AnalyzeOptions::default() })?
        }
        Cmd::Matroid { sub } => cmd_matroid(&match sub {
            MatroidSub::FromArrangement { file } => MatroidCommand::FromArrangement(file),
            MatroidSub::Validate { file } => MatroidCommand::Validate(file),
            MatroidSub::Charpoly { input } => MatroidCommand::Charpoly(input),
            MatroidSub::Iso { a, b } => MatroidCommand::Iso(a, b),
            MatroidSub::Filters { input } => MatroidCommand::Filters(input),
        })?,
        Cmd::Realize { family, params, sample, seed, out } => {
            let assignments = params
                .iter()
                .map(|p| p.split_once('=').map(|(n, v)| (n.trim().to_string(), v.trim().to_string())))
                .collect::<Option<Vec<_>>>()
                .context("parameters are given as name=value")?;
            let sample = match sample {
                Some(s) => Some((s[0].clone(), s[1].parse().context("sample count must be a number")?)),
                None => None,
            };
            cmd_realize(&RealizeRequest { family, assignments, sample, seed, out })?
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.cmd) {
        Ok(out) => {
            match format {
                Format::Json => print!("{}", to_json_string(&out.json)),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            let code = match e.downcast_ref::<arrlab::Error>() {
                Some(err) => {
                    if format == Format::Json {
                        print!("{}", to_json_string(&error_object(err)));
                    }
                    err.exit_code()
                }
                None => 2,
            };
            eprintln!("error: {e:#}");
            ExitCode::from(code as u8)
        }
    }
}
