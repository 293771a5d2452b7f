//! Command-line surface: reproducible runs over pattern sources with JSON
//! and SVG artifacts.
//!
//! Every flag is an exact literal (scalars like `-3/2+1/2r5`, never floats)
//! and every input is a JSON file, so a run is determined by its command
//! line alone: identical invocations produce byte-identical artifacts. JSON
//! output has sorted keys, two-space indentation, and one trailing newline.
//!
//! Exit codes: 0 on success, 2 on validation errors, 3 on mathematical
//! failures (a missing match, supremum, or Cauchy witness) with the failure
//! witness printed to stderr as JSON.

pub mod command;
pub mod literal;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use patternspace::{pattern_from_json, source_from_json, to_stable_string, Int, WindowSource};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MATH: i32 = 3;

/// Why a run stopped: a validation problem (exit 2), or a definite negative
/// mathematical verdict (exit 3) whose witness goes to stderr as JSON.
#[derive(Clone, Debug)]
pub enum Failure {
    Invalid(String),
    Math(Value),
}

impl From<patternspace::Error> for Failure {
    fn from(err: patternspace::Error) -> Self {
        Failure::Invalid(err.to_string())
    }
}

/// A finished artifact ready to be written.
#[derive(Clone, Debug)]
pub enum Artifact {
    Json(Value),
    Svg(String),
}

impl Artifact {
    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            Artifact::Json(value) => to_stable_string(value).into_bytes(),
            Artifact::Svg(text) => text.clone().into_bytes(),
        }
    }
}

#[derive(Parser)]
#[command(name = "patternspace", version, about = "Exact pattern-space computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Materialize a generator preset inside a bounded window.
    Gen {
        /// Preset name: integers, square-lattice, fibonacci,
        /// fibonacci-point-set, fibonacci-tiling, fibonacci-word,
        /// shifted-rows, or periodic:<letter,letter,...>.
        #[arg(long)]
        preset: String,
        /// Bounded region literal, e.g. ball:0:5 or box:-2,-2:2,2.
        #[arg(long)]
        window: String,
        /// Optional translation applied before windowing, e.g. 1/10.
        #[arg(long)]
        shift: Option<String>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut a pattern or source file to a region.
    Cut {
        input: PathBuf,
        /// Region literal: all, empty, ball:<center>:<radius>,
        /// box:<lo>:<hi>, or @<file.json>.
        #[arg(long)]
        region: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact local matching distance between two sources.
    Dist {
        a: PathBuf,
        b: PathBuf,
        /// Probe radius (a scalar literal, at least 2).
        #[arg(long)]
        rmax: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide entourage membership with a verified shift witness.
    Entourage {
        a: PathBuf,
        b: PathBuf,
        /// Bounded comparison window (a region literal).
        #[arg(long = "K")]
        window: String,
        /// Shift norm bound (a scalar literal in (0, 1]).
        #[arg(long = "v")]
        shift_bound: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translation-class census over a growing window schedule.
    Flc {
        input: PathBuf,
        /// Scan radius around each anchor (a scalar literal).
        #[arg(long)]
        radius: String,
        /// Comma-separated window radii, e.g. 2,4,6,8,10.
        #[arg(long)]
        windows: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample an orbit on a shift grid and extract a greedy epsilon-net.
    HullNet {
        input: PathBuf,
        /// Grid literal <count>:<step-vector>; shifts are k*step for k < count.
        #[arg(long)]
        grid: String,
        /// Covering radius (a scalar literal).
        #[arg(long)]
        eps: String,
        /// Probe radius for the exact distances (a scalar literal).
        #[arg(long)]
        rmax: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue a Cauchy sequence of sources along the ball-and-halving schedule.
    CauchyLimit {
        /// JSON file with a "patterns" array of pattern sources.
        runspec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded law suite for one concrete space.
    Axioms {
        /// Space under test: pointset, pointset-ud, patch, symbolic, comb,
        /// or multi.
        #[arg(long)]
        space: String,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plot a pattern window or a hull-net result.
    Render {
        /// A pattern, source, or hull-net result file.
        input: PathBuf,
        /// Emit SVG (the only plot format).
        #[arg(long)]
        svg: bool,
        /// Region literal to frame the plot; defaults to the bounding box of
        /// a finite input.
        #[arg(long)]
        viewport: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses arguments, executes one command, writes its artifact, and returns
/// the process exit code.
pub fn run<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    let outcome = configure_threads().and_then(|()| {
        let out = cli.command.out_path();
        let artifact = cli.command.execute()?;
        write_artifact(&artifact, out.as_deref())
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(message)) => {
            eprintln!("error: {message}");
            EXIT_INVALID
        }
        Err(Failure::Math(witness)) => {
            eprint!("{}", to_stable_string(&witness));
            EXIT_MATH
        }
    }
}

/// Caps the worker pool when PATTERNSPACE_THREADS is set.
fn configure_threads() -> Result<(), Failure> {
    let Some(raw) = std::env::var_os("PATTERNSPACE_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let workers: usize = text.trim().parse().map_err(|_| {
        Failure::Invalid(format!("PATTERNSPACE_THREADS must be a positive integer, got {text:?}"))
    })?;
    if workers == 0 {
        return Err(Failure::Invalid("PATTERNSPACE_THREADS must be at least 1".into()));
    }
    let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    Ok(())
}

fn write_artifact(artifact: &Artifact, out: Option<&Path>) -> Result<(), Failure> {
    let bytes = artifact.to_bytes();
    match out {
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|err| Failure::Invalid(format!("stdout: {err}"))),
        Some(path) => write_atomic(path, &bytes)
            .map_err(|err| Failure::Invalid(format!("{}: {err}", path.display()))),
    }
}

/// Writes through a sibling temp file and a rename, so a reader never
/// observes a half-written artifact.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let name = path.file_name().ok_or_else(|| {
        std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path needs a file name")
    })?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

/// Reads and parses one JSON input file.
pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| Failure::Invalid(format!("{}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| Failure::Invalid(format!("{}: {err}", path.display())))
}

/// Interprets a parsed input file as a pattern source: a bare pattern object
/// (tagged with "kind") or a source object ("pattern" or "generator").
pub fn source_from_value(value: &Value) -> Result<WindowSource<Int>, Failure> {
    if value.get("kind").is_some() {
        Ok(WindowSource::finite(pattern_from_json(value)?))
    } else {
        Ok(source_from_json(value)?)
    }
}

/// Loads a pattern source from a JSON file.
pub fn load_source(path: &Path) -> Result<WindowSource<Int>, Failure> {
    source_from_value(&read_json(path)?)
}
