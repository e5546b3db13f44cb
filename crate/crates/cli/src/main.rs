//! Command-line surface: generate, verify, search, compose, catalog.
//!
//! Exit codes are a stable contract:
//!   0 success (including a completed infeasibility proof),
//!   1 verification failure,
//!   2 inadmissible parameters,
//!   3 admissible but unsupported parameters,
//!   4 solver timeout or missing base array,
//!   5 usage, format or I/O errors.

use clap::{Args, Parser, Subcommand};
use heffter_core::heffter;
use heffter_core::ihs;
use heffter_core::io::{self, FixtureCatalog, Meta};
use heffter_core::solver::{self, BaseProvider, SolveStatus};
use heffter_core::{Error, Grid, HeffterParams, IhsParams, Outcome};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;
const EXIT_ERROR: u8 = 5;

#[derive(Parser)]
#[command(
    name = "heffter",
    about = "Construct, verify and search integer Heffter arrays and Heffter array sets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output format.
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    format: String,
    /// Write the document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for any search involved.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time budget for any search involved, in milliseconds.
    #[arg(long, default_value_t = 60_000)]
    budget_ms: u64,
    /// Fixture directory (default: $HEFFTER_FIXTURES or ./fixtures).
    #[arg(long)]
    fixtures_dir: Option<PathBuf>,
}

impl CommonOpts {
    fn fixtures(&self) -> PathBuf {
        self.fixtures_dir
            .clone()
            .or_else(|| std::env::var_os("HEFFTER_FIXTURES").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("fixtures"))
    }

    fn provider(&self) -> BaseProvider {
        BaseProvider::new(
            Some(self.fixtures()),
            Duration::from_millis(self.budget_ms),
            self.seed,
        )
    }

    fn emit(&self, grids: &[Grid], meta: &Meta) -> Result<(), Error> {
        let text = match self.format.as_str() {
            "csv" => io::write_csv(grids),
            _ => io::write_json(grids, meta),
        };
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(Error::from),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct an array (--s/--k) or an array set (--c) from parameters.
    Generate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "k", conflicts_with = "c")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        k: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Check a document against the defining conditions.
    Verify {
        path: PathBuf,
        /// Expected parameters; defaults to document metadata, then to the
        /// document shape.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, requires = "k")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        k: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the exact search on a prescribed task.
    Search {
        #[command(subcommand)]
        task: SearchTask,
    },
    /// Compose a Heffter array set document into a single array by diagonal
    /// placement.
    Compose {
        path: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Manage the fixture directory.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum SearchTask {
    /// Five-per-line square on the fixed cyclic-diagonal skeleton.
    Base {
        /// Order of the square (a multiple of 4, at least 8).
        #[arg(long)]
        order: usize,
        /// Exhaustive mode: fixed value order, no restarts.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Totally filled array set with the given parameters.
    Set {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Open-range probe (n = 3 or 5, odd coprime m); found sets are stored
    /// in the fixture directory.
    Probe {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List documents in the fixture directory.
    List {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Copy the built-in fixtures into the fixture directory.
    Install {
        #[command(flatten)]
        opts: CommonOpts,
    },
}

/// Built-in fixtures: the two published reference arrays and solver-found
/// base squares.
const EMBEDDED: &[(&str, &str)] = &[
    ("figure1.csv", include_str!("../../../fixtures/figure1.csv")),
    (
        "ihs-10x7-2.csv",
        include_str!("../../../fixtures/ihs-10x7-2.csv"),
    ),
    (
        "h5-order8.json",
        include_str!("../../../fixtures/h5-order8.json"),
    ),
    (
        "h5-order12.json",
        include_str!("../../../fixtures/h5-order12.json"),
    ),
    (
        "h5-order16.json",
        include_str!("../../../fixtures/h5-order16.json"),
    ),
    (
        "h5-order20.json",
        include_str!("../../../fixtures/h5-order20.json"),
    ),
];

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BaseUnavailable { .. } => EXIT_TIMEOUT,
                Error::Inadmissible(_) => EXIT_INADMISSIBLE,
                Error::InvalidInput(_) => EXIT_VERIFY_FAIL,
                _ => EXIT_ERROR,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Generate { m, n, s, k, c, opts } => generate(m, n, s, k, c, &opts),
        Command::Verify {
            path,
            m,
            n,
            s,
            k,
            c,
            json,
        } => verify(&path, m, n, s, k, c, json),
        Command::Search { task } => search(task),
        Command::Compose { path, opts } => compose(&path, &opts),
        Command::Catalog { action } => catalog(action),
    }
}

fn generate(
    m: usize,
    n: usize,
    s: Option<usize>,
    k: Option<usize>,
    c: Option<usize>,
    opts: &CommonOpts,
) -> Result<u8, Error> {
    match (s, k, c) {
        (Some(s), Some(k), None) => {
            let provider = opts.provider();
            match heffter::construct(m, n, s, k, &provider)? {
                Outcome::Built(grid, route) => {
                    eprintln!("route: {route}");
                    let meta = Meta {
                        heffter: Some(HeffterParams::new(m, n, s, k)?),
                        route: Some(route),
                        seed: Some(opts.seed),
                        ..Meta::default()
                    };
                    opts.emit(&[grid], &meta)?;
                    Ok(0)
                }
                Outcome::Inadmissible(reason) => {
                    eprintln!("inadmissible: {reason}");
                    Ok(EXIT_INADMISSIBLE)
                }
                Outcome::Unsupported(reason) => {
                    eprintln!("unsupported: {reason}");
                    Ok(EXIT_UNSUPPORTED)
                }
            }
        }
        (None, None, Some(c)) => {
            let params = IhsParams::new(m, n, c)?;
            match ihs::build_ihs(&params)? {
                Outcome::Built(set, route) => {
                    eprintln!("route: {route}");
                    let meta = Meta {
                        ihs: Some(params),
                        route: Some(route),
                        seed: Some(opts.seed),
                        ..Meta::default()
                    };
                    opts.emit(&set, &meta)?;
                    Ok(0)
                }
                Outcome::Inadmissible(reason) => {
                    eprintln!("inadmissible: {reason}");
                    Ok(EXIT_INADMISSIBLE)
                }
                Outcome::Unsupported(reason) => {
                    eprintln!("unsupported: {reason}");
                    Ok(EXIT_UNSUPPORTED)
                }
            }
        }
        _ => Err(Error::Format(
            "give either --s and --k (array) or --c (array set)".into(),
        )),
    }
}

fn verify(
    path: &Path,
    m: Option<usize>,
    n: Option<usize>,
    s: Option<usize>,
    k: Option<usize>,
    c: Option<usize>,
    json: bool,
) -> Result<u8, Error> {
    let (grids, meta) = io::load_path(path)?;
    let report = if grids.len() == 1 && c.is_none() && meta.ihs.is_none() {
        let g = &grids[0];
        let params = match (m, n, s, k, meta.heffter) {
            (Some(m), Some(n), Some(s), Some(k), _) => HeffterParams::new(m, n, s, k)?,
            (None, None, None, None, Some(p)) => p,
            (None, None, None, None, None) => infer_heffter(g)?,
            _ => return Err(Error::Format("give all of --m --n --s --k".into())),
        };
        heffter_core::verify_heffter(g, &params)
    } else {
        let params = match (m, n, c, meta.ihs) {
            (Some(m), Some(n), Some(c), _) => IhsParams::new(m, n, c)?,
            (None, None, None, Some(p)) => p,
            (None, None, None, None) => {
                let g = grids
                    .first()
                    .ok_or_else(|| Error::Format("empty document".into()))?;
                IhsParams::new(g.rows(), g.cols(), grids.len())?
            }
            _ => return Err(Error::Format("give all of --m --n --c".into())),
        };
        heffter_core::verify_ihs(&grids, &params)
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Error::Format(e.to_string()))?
        );
    } else {
        print!("{report}");
    }
    Ok(if report.valid { 0 } else { EXIT_VERIFY_FAIL })
}

/// Fill counts of a uniformly filled grid, the only parameters it could
/// satisfy.
fn infer_heffter(g: &Grid) -> Result<HeffterParams, Error> {
    let (m, n) = (g.rows(), g.cols());
    let filled = g.filled();
    if filled == 0 || filled % m != 0 || filled % n != 0 {
        return Err(Error::Format(
            "cannot infer parameters from an unevenly filled grid; give --s/--k".into(),
        ));
    }
    HeffterParams::new(m, n, filled / m, filled / n)
}

fn report_outcome(
    outcome: &solver::SolveOutcome,
    opts: &CommonOpts,
    describe: &str,
    meta: Meta,
) -> Result<u8, Error> {
    eprintln!(
        "{describe}: {} ({} nodes, {} restarts, {} ms)",
        match &outcome.status {
            SolveStatus::Found(_) => "found",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::TimedOut => "timed out",
        },
        outcome.stats.nodes,
        outcome.stats.restarts,
        outcome.stats.elapsed_ms
    );
    match &outcome.status {
        SolveStatus::Found(grid) => {
            opts.emit(std::slice::from_ref(grid), &meta)?;
            Ok(0)
        }
        SolveStatus::Infeasible => Ok(0),
        SolveStatus::TimedOut => Ok(EXIT_TIMEOUT),
    }
}

fn search(task: SearchTask) -> Result<u8, Error> {
    match task {
        SearchTask::Base {
            order,
            exhaustive,
            opts,
        } => {
            let mut task = solver::base_array_task(
                order,
                opts.seed,
                Some(Duration::from_millis(opts.budget_ms)),
            )?;
            task.exhaustive = exhaustive;
            let outcome = solver::solve(&task)?;
            let meta = Meta {
                heffter: Some(HeffterParams::new(order, order, 5, 5)?),
                route: Some("exact search".into()),
                seed: Some(opts.seed),
                ..Meta::default()
            };
            report_outcome(&outcome, &opts, &format!("base order {order}"), meta)
        }
        SearchTask::Set {
            m,
            n,
            c,
            exhaustive,
            opts,
        } => {
            let mut task = solver::SolveTask::full(m, n * c);
            task.row_bands = (0..c).map(|i| (i * n + 1, (i + 1) * n)).collect();
            task.seed = opts.seed;
            task.budget = Some(Duration::from_millis(opts.budget_ms));
            task.exhaustive = exhaustive;
            let outcome = solver::solve(&task)?;
            match &outcome.status {
                SolveStatus::Found(wide) => {
                    let set = solver::split_bands(wide, n)?;
                    eprintln!(
                        "set {m}x{n}x{c}: found ({} nodes, {} restarts, {} ms)",
                        outcome.stats.nodes, outcome.stats.restarts, outcome.stats.elapsed_ms
                    );
                    let meta = Meta {
                        ihs: Some(IhsParams::new(m, n, c)?),
                        route: Some("exact search".into()),
                        seed: Some(opts.seed),
                        ..Meta::default()
                    };
                    opts.emit(&set, &meta)?;
                    Ok(0)
                }
                SolveStatus::Infeasible => {
                    eprintln!("set {m}x{n}x{c}: infeasible within the fixed-support model");
                    Ok(0)
                }
                SolveStatus::TimedOut => {
                    eprintln!("set {m}x{n}x{c}: timed out");
                    Ok(EXIT_TIMEOUT)
                }
            }
        }
        SearchTask::Probe { m, n, c, opts } => {
            let catalog = FixtureCatalog::new(opts.fixtures());
            let outcome = solver::probe_open(
                m,
                n,
                c,
                Some(Duration::from_millis(opts.budget_ms)),
                opts.seed,
                Some(&catalog),
            )?;
            match &outcome.status {
                SolveStatus::Found(wide) => {
                    let set = solver::split_bands(wide, n)?;
                    eprintln!(
                        "probe {m}x{n}x{c}: found and stored ({} nodes, {} ms)",
                        outcome.stats.nodes, outcome.stats.elapsed_ms
                    );
                    let meta = Meta {
                        ihs: Some(IhsParams::new(m, n, c)?),
                        route: Some("exact search".into()),
                        seed: Some(opts.seed),
                        ..Meta::default()
                    };
                    opts.emit(&set, &meta)?;
                    Ok(0)
                }
                SolveStatus::Infeasible => {
                    eprintln!("probe {m}x{n}x{c}: infeasible within the fixed-support model");
                    Ok(0)
                }
                SolveStatus::TimedOut => {
                    eprintln!("probe {m}x{n}x{c}: timed out");
                    Ok(EXIT_TIMEOUT)
                }
            }
        }
    }
}

fn compose(path: &Path, opts: &CommonOpts) -> Result<u8, Error> {
    let (grids, meta) = io::load_path(path)?;
    let composed = heffter::compose_diagonal(&grids)?;
    let (k, s, c) = (grids[0].rows(), grids[0].cols(), grids.len());
    let route = format!(
        "diagonal composition of {}",
        meta.route.as_deref().unwrap_or("a verified set document")
    );
    eprintln!("route: {route}");
    let out_meta = Meta {
        heffter: Some(HeffterParams::new(c * k, c * s, s, k)?),
        route: Some(route),
        ..Meta::default()
    };
    opts.emit(&[composed], &out_meta)?;
    Ok(0)
}

fn catalog(action: CatalogAction) -> Result<u8, Error> {
    match action {
        CatalogAction::List { opts } => {
            let catalog = FixtureCatalog::new(opts.fixtures());
            let installed = catalog.list();
            if installed.is_empty() {
                eprintln!("no fixtures in {}", catalog.dir().display());
            }
            for key in &installed {
                println!("{key}");
            }
            let missing: Vec<&str> = EMBEDDED
                .iter()
                .map(|(name, _)| name.rsplit_once('.').map(|(stem, _)| stem).unwrap_or(name))
                .filter(|stem| !installed.iter().any(|k| k == stem))
                .collect();
            if !missing.is_empty() {
                eprintln!("built-ins not installed: {}", missing.join(", "));
            }
            Ok(0)
        }
        CatalogAction::Install { opts } => {
            let dir = opts.fixtures();
            std::fs::create_dir_all(&dir)?;
            for (name, text) in EMBEDDED {
                let path = dir.join(name);
                std::fs::write(&path, text)?;
                eprintln!("installed {}", path.display());
            }
            Ok(0)
        }
    }
}
