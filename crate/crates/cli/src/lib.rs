//! The `gimel` command line.

pub mod cache;
pub mod error;
pub mod fixture;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gimel_core::chain::GradedFreeComplex;
use gimel_core::cube::{compute_pd_report, parse_pd};
use gimel_core::filtration::compute_report;
use gimel_core::poly::Potential;
use gimel_core::reduce::{decompose, extract_sn};
use gimel_core::verify::{check_cone, check_gap, check_linear, quasi_parts, PropertyVerdict};
use log::info;
use rayon::prelude::*;
use serde::Serialize;

use cache::Cache;
pub use error::{CliError, Result};
use fixture::{load_fixture, save_fixture, Fixture};
use report::{plot_csv, ReportJson};

#[derive(Parser, Debug)]
#[command(name = "gimel", version, about = "Piecewise-linear concordance invariants of knots")]
pub struct Cli {
    /// Directory for cached reports.
    #[arg(long, global = true, env = "GIMEL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the invariant report of fixtures or of a PD code.
    Compute {
        /// Fixture files; several are computed concurrently.
        #[arg(long = "fixture", required_unless_present = "pd", conflicts_with = "pd")]
        fixtures: Vec<PathBuf>,
        /// Planar diagram, e.g. "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]".
        #[arg(long)]
        pd: Option<String>,
        /// `auto` for x^n - x^(n-1), or that polynomial written out.
        #[arg(long, default_value = "auto")]
        potential: String,
        /// Rank for PD input; only 2 is supported.
        #[arg(long)]
        n: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simplify a fixture and split it into summands.
    Decompose {
        /// Fixture file.
        #[arg(long)]
        fixture: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tensor product of two fixtures (the connected sum).
    Tensor {
        /// First fixture.
        a: PathBuf,
        /// Second fixture.
        b: PathBuf,
        /// Fixture file to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Dual of a fixture (the mirror image).
    Dual {
        /// Fixture file.
        a: PathBuf,
        /// Fixture file to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the inequalities on reports; with three reports the last is
    /// taken to be the connected sum of the first two.
    Verify {
        /// One report, or three: two knots and their connected sum.
        #[arg(long, num_args = 1.., required = true)]
        reports: Vec<PathBuf>,
    },
    /// Sample the invariant of a report as CSV.
    Plot {
        /// Report file written by `compute`.
        #[arg(long)]
        report: PathBuf,
        /// Write the CSV here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Parses arguments, runs, and returns the process exit code. Errors are
/// written to stderr as one JSON object.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => error::write(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cache = cli.cache_dir.clone().map(Cache::new);
    match &cli.command {
        Command::Compute { fixtures, pd, potential, n, output } => {
            let text = match pd {
                Some(pd) => compute_pd(pd, *n, cache.as_ref())?,
                None => {
                    let reports = fixtures
                        .par_iter()
                        .map(|f| compute_fixture(f, potential, cache.as_ref()))
                        .collect::<Result<Vec<_>>>()?;
                    if reports.len() == 1 {
                        reports.into_iter().next().unwrap()
                    } else {
                        let values: Vec<serde_json::Value> =
                            reports.iter().map(|r| serde_json::from_str(r).expect("own output")).collect();
                        serde_json::to_string_pretty(&values).expect("reports serialize")
                    }
                }
            };
            emit(out, output.as_deref(), &(text + "\n"))
        }
        Command::Decompose { fixture, output } => {
            let text = decompose_fixture(fixture)?;
            emit(out, output.as_deref(), &(text + "\n"))
        }
        Command::Tensor { a, b, output } => {
            let (fa, ca) = load_fixture(a)?;
            let (fb, cb) = load_fixture(b)?;
            let c = ca.tensor(&cb)?;
            c.check_valid()?;
            let name = format!("{}#{}", fa.name.unwrap_or_default(), fb.name.unwrap_or_default());
            save_fixture(&c, Some(name), output)
        }
        Command::Dual { a, output } => {
            let (fa, ca) = load_fixture(a)?;
            let c = ca.dual();
            c.check_valid()?;
            save_fixture(&c, Some(format!("{}_dual", fa.name.unwrap_or_default())), output)
        }
        Command::Verify { reports } => verify(reports, out),
        Command::Plot { report, output } => {
            let r = ReportJson::load(report)?;
            let f = r.gimel.to_pl()?;
            emit(out, output.as_deref(), &plot_csv(&f))
        }
    }
}

fn cached(cache: Option<&Cache>, parts: &[&str], compute: impl FnOnce() -> Result<String>) -> Result<String> {
    let Some(cache) = cache else { return compute() };
    let key = Cache::key(parts);
    if let Some(hit) = cache.get(&key) {
        return Ok(hit);
    }
    let text = compute()?;
    cache.put(&key, &text);
    Ok(text)
}

fn compute_fixture(path: &Path, potential: &str, cache: Option<&Cache>) -> Result<String> {
    let (fixture, c) = load_fixture(path)?;
    if potential != "auto" {
        let requested = Potential::parse(potential)?;
        if requested != Potential::standard(c.n()) {
            return Err(gimel_core::Error::PotentialShape(format!("requested {requested}")).into());
        }
    }
    let canonical = Fixture::from_complex(&c, fixture.name.clone()).to_json();
    cached(cache, &["compute-fixture", &canonical], || {
        info!("computing {}", path.display());
        let rep = compute_report(&c)?;
        Ok(ReportJson::new(&rep, fixture.name.clone()).to_json())
    })
}

fn compute_pd(pd: &str, n: Option<usize>, cache: Option<&Cache>) -> Result<String> {
    if let Some(n) = n.filter(|&n| n != 2) {
        return Err(gimel_core::Error::Unsupported(format!("PD input is computed for n = 2 only, not {n}")).into());
    }
    let d = parse_pd(pd)?;
    let canonical = d.to_string();
    cached(cache, &["compute-pd", &canonical], || {
        let rep = compute_pd_report(&d)?;
        Ok(ReportJson::new(&rep, Some(canonical.clone())).to_json())
    })
}

#[derive(Serialize)]
struct SummandJson {
    euler: i64,
    generators: BTreeMap<String, Vec<usize>>,
    complex: Fixture,
}

#[derive(Serialize)]
struct DecompositionJson {
    name: Option<String>,
    simplified_rank: usize,
    sn: usize,
    summands: Vec<SummandJson>,
}

fn decompose_fixture(path: &Path) -> Result<String> {
    let (fixture, c) = load_fixture(path)?;
    let (simplified, dec) = decompose(&c);
    let sn = extract_sn(&dec)?;
    let sn_index = dec.summands.iter().position(|s| *s == sn).expect("extracted summand is listed");
    let summands = dec
        .summands
        .iter()
        .zip(&dec.provenance)
        .map(|(s, prov): (&GradedFreeComplex, _)| SummandJson {
            euler: s.euler(),
            generators: prov.iter().map(|(i, g)| (i.to_string(), g.clone())).collect(),
            complex: Fixture::from_complex(s, None),
        })
        .collect();
    let j = DecompositionJson { name: fixture.name, simplified_rank: simplified.total_rank(), sn: sn_index, summands };
    Ok(serde_json::to_string_pretty(&j).expect("decomposition serializes"))
}

#[derive(Serialize)]
struct VerdictJson {
    subject: String,
    property: String,
    /// Whether the property is a theorem, so that a failure is an error.
    required: bool,
    holds: bool,
    worst_t: String,
    slack: String,
}

impl VerdictJson {
    fn new(subject: &str, v: PropertyVerdict, required: bool) -> Self {
        VerdictJson {
            subject: subject.to_string(),
            property: v.name,
            required,
            holds: v.holds,
            worst_t: v.worst_t.to_string(),
            slack: v.slack.to_string(),
        }
    }
}

fn verify(paths: &[PathBuf], out: &mut dyn Write) -> Result<()> {
    if paths.len() == 2 || paths.len() > 3 {
        return Err(CliError::Usage(format!("verify takes one or three reports, got {}", paths.len())));
    }
    let reports = paths.iter().map(|p| ReportJson::load(p)).collect::<Result<Vec<_>>>()?;
    let fs = reports.iter().map(|r| r.gimel.to_pl()).collect::<gimel_core::Result<Vec<_>>>()?;
    let mut verdicts = Vec::new();
    for (r, f) in reports.iter().zip(&fs) {
        let label = r.label();
        verdicts.push(VerdictJson::new(&label, check_cone(f), true));
        verdicts.push(VerdictJson::new(&label, check_gap(f), true));
        verdicts.push(VerdictJson::new(&label, check_linear(f), r.n == 2));
    }
    if fs.len() == 3 {
        let label = format!("{} + {} -> {}", reports[0].label(), reports[1].label(), reports[2].label());
        for v in quasi_parts(&fs[0], &fs[1], &fs[2]) {
            verdicts.push(VerdictJson::new(&label, v, true));
        }
    }
    emit(out, None, &(serde_json::to_string_pretty(&verdicts).expect("verdicts serialize") + "\n"))?;
    let failed: Vec<String> = verdicts
        .iter()
        .filter(|v| v.required && !v.holds)
        .map(|v| format!("{} fails for {} (slack {} at t = {})", v.property, v.subject, v.slack, v.worst_t))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::PropertyFailed(failed.join("; ")))
    }
}
