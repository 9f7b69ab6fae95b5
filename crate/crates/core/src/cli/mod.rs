//! The `lyucalc` command line: tables, embedding checks, double-Ext dimensions
//! and randomized φ checks.
//!
//! Exit codes: 0 success, 1 embedding mismatch or failed check, 2 bad input,
//! 3 inhomogeneous generator, 4 internal failure (a repro bundle is written).

pub mod cache;
pub mod report;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::double_ext;
use crate::frobenius::FrobeniusPipeline;
use crate::table::{krull_dimension, lyubeznik_table_with, NoStore, ResolutionStore, TableOptions};
use crate::veronese::veronese_ideal;
pub use cache::DiskCache;
pub use report::{TableReport, TOOL_VERSION};
pub use spec::{IdealSpec, Problem};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INHOMOGENEOUS: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const DEFAULT_SEED: u64 = 0x1d5e_ed00;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "lyucalc", version, about = "Lyubeznik numbers of projective cones over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// problem file (p=, vars=, gens=, label=)
    pub file: PathBuf,
    /// keep non-minimal resolutions
    #[arg(long)]
    pub no_minimize: bool,
    /// persist resolutions under this directory
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// worker threads (default: LYUCALC_THREADS, then all cores)
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the Lyubeznik table
    Table {
        #[command(flatten)]
        common: Common,
        /// only the cell (I, J)
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        cell: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the table with that of the d-uple Veronese re-embedding
    VerifyEmbedding {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        veronese: u32,
    },
    /// dim E^{i,j}(R/I)_d over a window of degrees
    ExtDims {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// a..b, inclusive
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Randomized p-linearity and degree-scaling checks of φ on every cell
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// random representatives per cell
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// Map an error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Invalid(_) | Error::RingMismatch(_) => EXIT_INPUT,
        Error::Inhomogeneous(_) => EXIT_INHOMOGENEOUS,
        _ => EXIT_INTERNAL,
    }
}

pub fn parse_degrees(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Invalid(format!("degree window must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn load(path: &Path) -> Result<(String, Problem)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let pr = Problem::parse(&text)?;
    Ok((text, pr))
}

fn store_for(common: &Common) -> Result<Box<dyn ResolutionStore>> {
    Ok(match &common.cache_dir {
        Some(d) => Box::new(DiskCache::new(d)?),
        None => Box::new(NoStore),
    })
}

fn table_report(pr: &Problem, common: &Common, cells: Option<Vec<(usize, usize)>>) -> Result<TableReport> {
    let store = store_for(common)?;
    let opts = TableOptions {
        minimize: !common.no_minimize,
        cells,
        threads: common.threads,
    };
    let t = lyubeznik_table_with(&pr.ring, &pr.ideal, &opts, store.as_ref())?;
    Ok(TableReport::new(pr.spec.clone(), &t))
}

#[derive(Serialize)]
struct EmbeddingReport {
    veronese: u32,
    equal: bool,
    original: TableReport,
    reembedded: TableReport,
}

#[derive(Serialize)]
struct ExtDimsReport {
    i: usize,
    j: usize,
    degrees: Vec<i64>,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct CheckCell {
    i: usize,
    j: usize,
    dim_e0: usize,
    p_linearity_checks: usize,
    degrees_checked: Vec<i64>,
}

#[derive(Serialize)]
struct CheckReport {
    seed: u64,
    trials: usize,
    cells: Vec<CheckCell>,
}

fn run_command(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Invalid(format!("writing output: {e}"));
    match cmd {
        Command::Table { common, cell, format } => {
            let (_, pr) = load(&common.file)?;
            let cells = cell.as_ref().map(|c| vec![(c[0], c[1])]);
            let rep = table_report(&pr, common, cells)?;
            match format {
                Format::Json => writeln!(out, "{}", rep.to_json()).map_err(io)?,
                Format::Csv => write!(out, "{}", rep.to_csv()).map_err(io)?,
            }
            Ok(0)
        }
        Command::VerifyEmbedding { common, veronese } => {
            let (_, pr) = load(&common.file)?;
            let (ring2, j) = veronese_ideal(&pr.ring, &pr.ideal, *veronese)?;
            let label = Some(format!("{}-uple Veronese of {}", veronese, pr.spec.label.as_deref().unwrap_or("input")));
            let pr2 = Problem::from_ideal(label, &ring2, &j);
            let a = table_report(&pr, common, None)?;
            let b = table_report(&pr2, common, None)?;
            let equal = a.dim_a == b.dim_a && a.entries == b.entries;
            let rep = EmbeddingReport {
                veronese: *veronese,
                equal,
                original: a,
                reembedded: b,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializes")).map_err(io)?;
            Ok(if equal { 0 } else { EXIT_MISMATCH })
        }
        Command::ExtDims {
            common,
            i,
            j,
            degrees,
            format,
        } => {
            let (a, b) = parse_degrees(degrees)?;
            let (_, pr) = load(&common.file)?;
            let e = double_ext(&pr.ring, &pr.ideal, *i, *j, !common.no_minimize)?;
            let degs: Vec<i64> = (a..=b).collect();
            let dims: Vec<usize> = degs.iter().map(|&d| e.outer.piece_dim(d)).collect();
            match format {
                Format::Json => {
                    let rep = ExtDimsReport { i: *i, j: *j, degrees: degs, dims };
                    writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializes")).map_err(io)?;
                }
                Format::Csv => {
                    writeln!(out, "degree,dim").map_err(io)?;
                    for (d, n) in degs.iter().zip(&dims) {
                        writeln!(out, "{d},{n}").map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Check { common, seed, trials } => {
            let (_, pr) = load(&common.file)?;
            let minimize = !common.no_minimize;
            let dim_a = krull_dimension(&pr.ring, &pr.ideal);
            let pipe = FrobeniusPipeline::new(&pr.ring, &pr.ideal, minimize)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut cells = Vec::new();
            for j in 0..=dim_a {
                let inner = pipe.inner(&pr.ring, j)?;
                for i in 0..=j {
                    let phi = inner.cell(&pr.ring, i, minimize)?;
                    let n = phi.check_p_linearity(&mut rng, *trials, 2)?;
                    let degrees = vec![-1, 0, 1];
                    for &d in &degrees {
                        phi.check_degree_scaling(d)?;
                    }
                    cells.push(CheckCell {
                        i,
                        j,
                        dim_e0: phi.dim0(),
                        p_linearity_checks: n,
                        degrees_checked: degrees,
                    });
                }
            }
            let rep = CheckReport {
                seed: *seed,
                trials: *trials,
                cells,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializes")).map_err(io)?;
            Ok(0)
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Table { common, .. }
        | Command::VerifyEmbedding { common, .. }
        | Command::ExtDims { common, .. }
        | Command::Check { common, .. } => common,
    }
}

/// Write the input, the arguments and the error to a fresh directory under
/// LYUCALC_REPRO_DIR or the system temp dir.
pub fn write_repro_bundle(args: &[String], spec_text: Option<&str>, err: &Error) -> std::io::Result<PathBuf> {
    let root = std::env::var_os("LYUCALC_REPRO_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&root)?;
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let dir = root.join(format!("lyucalc-repro-{}-{stamp}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    if let Some(t) = spec_text {
        std::fs::write(dir.join("input.txt"), t)?;
    }
    std::fs::write(dir.join("args.txt"), args.join("\n") + "\n")?;
    std::fs::write(dir.join("error.txt"), format!("{err}\n{TOOL_VERSION}\n"))?;
    Ok(dir)
}

/// Run with explicit arguments (including the program name); returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match run_command(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            if code == EXIT_INTERNAL {
                let text = std::fs::read_to_string(&common(&cli.command).file).ok();
                match write_repro_bundle(args, text.as_deref(), &e) {
                    Ok(dir) => {
                        let _ = writeln!(err, "reproduction bundle: {}", dir.display());
                    }
                    Err(io) => {
                        let _ = writeln!(err, "could not write a reproduction bundle: {io}");
                    }
                }
            }
            code
        }
    }
}
