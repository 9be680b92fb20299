//! Command-line front end. Reports are printed as JSON on stdout; exit code
//! 0 means verified, 1 verification (or a hill climb) failed, 2 an input,
//! I/O or usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::build::{figure1_family, hill_climb_pent3, moore_overlay, triangle_shift, HillClimbParams};
use crate::catalog::{graph_orders, known_connected, GRAPH_ORDERS};
use crate::certify::{claimed_opposite_designs, develop, develop_lenient, emit_certificate, parse_certificate, parse_certificate_report};
use crate::compose::wilson_compose;
use crate::designs::{complete_design, parse_gdd, parse_steiner, sts, td, verify_gdd, verify_steiner, Gdd};
use crate::graphs::{hoffman_singleton, petersen};
use crate::incidence::{parse_line_list, Geometry, VerificationReport};
use crate::params::classify_r;
use crate::pent::{verify_pent_with, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "pentgeom", version, about = "Build and verify generalized pentagonal geometries PENT(k, r, w)")]
struct Cli {
    /// Worker threads for verification and hill-climb restarts (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify a certificate, line list, GDD or Steiner file (detected from its first token).
    Verify {
        path: PathBuf,
        /// Fail unless the deficiency graph has girth at least 5.
        #[arg(long)]
        require_girth5: bool,
        /// Fail unless the deficiency graph is connected.
        #[arg(long)]
        require_connected: bool,
        /// Point count of a line list (default: largest id + 1).
        #[arg(long)]
        points: Option<usize>,
        /// On a malformed certificate, list every violation instead of the first.
        #[arg(long)]
        report_all: bool,
    },
    /// Develop a certificate into a line list and verify it.
    Develop {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a construction, verify it, and optionally write it out.
    Build {
        #[command(subcommand)]
        what: BuildCommand,
    },
    /// Place PENT ingredients on the groups of a GDD.
    Compose {
        /// `td:<k>:<n>` or a GDD file.
        #[arg(long)]
        gdd: String,
        /// Ingredient for each group in order of smallest point; a single
        /// ingredient is used for every group.
        #[arg(long = "ingredient", required = true)]
        ingredients: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify each r of a range for girth-5 PENT(k, r, w).
    Admissible {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        w: usize,
        /// A single value or an inclusive range `a..b`.
        #[arg(long)]
        r: String,
    },
    /// Known graph orders for w, or known connected geometries for k.
    Catalog {
        #[arg(long)]
        w: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum BuildCommand {
    /// The pentagon-of-cliques PENT(2, 3m-1, 2m).
    Fig1 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Steiner systems on the neighbourhoods of a Moore graph.
    Overlay {
        #[arg(long, value_enum)]
        graph: MooreGraph,
        #[arg(long, value_enum)]
        design: OverlayDesign,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random girth-5 PENT(3, r, w).
    HillClimb {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        /// Triangle moves per restart (default 200 |E(T)|).
        #[arg(long)]
        max_moves: Option<usize>,
        /// Cyclic symmetry step of the deficiency graph.
        #[arg(long)]
        shift: Option<usize>,
        /// Write a certificate instead of a line list when possible.
        #[arg(long)]
        emit_cert: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MooreGraph {
    Pentagon,
    Petersen,
    Hs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OverlayDesign {
    /// Complete graph K_w (block size 2).
    Kw,
    /// Steiner triple system.
    Sts,
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type CmdResult = Result<i32, InputError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Verify { path, require_girth5, require_connected, points, report_all } => {
            let opts = VerifyOptions { require_girth5, require_connected, ..Default::default() };
            cmd_verify(&path, opts, points, report_all)
        }
        Command::Develop { path, out } => cmd_develop(&path, &out),
        Command::Build { what } => cmd_build(what),
        Command::Compose { gdd, ingredients, out } => cmd_compose(&gdd, &ingredients, out.as_deref()),
        Command::Admissible { k, w, r } => cmd_admissible(k, w, &r),
        Command::Catalog { w, k } => cmd_catalog(w, k),
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit(report: &VerificationReport) -> i32 {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", report.to_json());
    i32::from(!report.overall)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FileKind {
    Certificate,
    Gdd,
    Steiner,
    LineList,
}

fn detect(text: &str) -> Result<FileKind, InputError> {
    let first = text
        .lines()
        .map(|l| l.trim_start().trim_start_matches('$').trim_start())
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| InputError("empty input".into()))?;
    if first.starts_with("PENT(") {
        Ok(FileKind::Certificate)
    } else if first.starts_with("GDD") {
        Ok(FileKind::Gdd)
    } else if first.starts_with("STEINER") {
        Ok(FileKind::Steiner)
    } else if first.starts_with(|c: char| c.is_ascii_digit()) {
        Ok(FileKind::LineList)
    } else {
        Err(InputError(format!("unrecognised file: starts with {:?}", first.chars().take(20).collect::<String>())))
    }
}

/// A geometry from a certificate (developed leniently, with its claims) or
/// a line list.
fn load_geometry(text: &str, points: Option<usize>, opts: &mut VerifyOptions) -> Result<Geometry, InputError> {
    match detect(text)? {
        FileKind::Certificate => {
            let cert = parse_certificate(text)?;
            let g = develop_lenient(&cert)?;
            opts.expected = Some(cert.params);
            opts.claimed_opposite = claimed_opposite_designs(&cert);
            Ok(g)
        }
        FileKind::LineList => Ok(parse_line_list(text, points)?),
        other => Err(InputError(format!("expected a certificate or line list, found a {other:?} file"))),
    }
}

fn cmd_verify(path: &Path, mut opts: VerifyOptions, points: Option<usize>, report_all: bool) -> CmdResult {
    let text = read(path)?;
    match detect(&text)? {
        FileKind::Gdd => Ok(emit(&verify_gdd(&parse_gdd(&text)?))),
        FileKind::Steiner => Ok(emit(&verify_steiner(&parse_steiner(&text)?))),
        FileKind::Certificate if report_all => {
            let (_, errors) = parse_certificate_report(&text);
            if errors.is_empty() {
                let g = load_geometry(&text, points, &mut opts)?;
                return Ok(emit(&verify_pent_with(&g, &opts)));
            }
            for e in &errors[1..] {
                eprintln!("error: {e}");
            }
            Err(InputError(errors[0].to_string()))
        }
        _ => {
            let g = load_geometry(&text, points, &mut opts)?;
            Ok(emit(&verify_pent_with(&g, &opts)))
        }
    }
}

fn cmd_develop(path: &Path, out: &Path) -> CmdResult {
    let cert = parse_certificate(&read(path)?)?;
    let g = develop(&cert)?;
    write(out, &g.to_line_list())?;
    let opts = VerifyOptions {
        expected: Some(cert.params),
        claimed_opposite: claimed_opposite_designs(&cert),
        ..Default::default()
    };
    Ok(emit(&verify_pent_with(&g, &opts)))
}

fn finish(g: &Geometry, opts: &VerifyOptions, out: Option<&Path>) -> CmdResult {
    if let Some(out) = out {
        write(out, &g.to_line_list())?;
    }
    Ok(emit(&verify_pent_with(g, opts)))
}

fn cmd_build(what: BuildCommand) -> CmdResult {
    match what {
        BuildCommand::Fig1 { m, out } => {
            if m < 2 {
                return Err(InputError(format!("--m must be at least 2, got {m}")));
            }
            finish(&figure1_family(m), &VerifyOptions::default(), out.as_deref())
        }
        BuildCommand::Overlay { graph, design, out } => {
            let d = match graph {
                MooreGraph::Pentagon => crate::graphs::Graph::cycle(5),
                MooreGraph::Petersen => petersen(),
                MooreGraph::Hs => hoffman_singleton(),
            };
            let w = d.degree(0);
            let system = match design {
                OverlayDesign::Kw => complete_design(w),
                OverlayDesign::Sts => sts(w)?,
            };
            let g = moore_overlay(&d, |_| system.clone())?;
            let opts = VerifyOptions { require_girth5: true, require_connected: true, ..Default::default() };
            finish(&g, &opts, out.as_deref())
        }
        BuildCommand::HillClimb { w, r, seed, restarts, max_moves, shift, emit_cert, out } => {
            let mut p = HillClimbParams::new(w, r, seed);
            p.restarts = restarts;
            if let Some(m) = max_moves {
                p.max_moves = m;
            }
            if let Some(s) = shift {
                p.graph_params.shift = s;
            }
            let g = match hill_climb_pent3(&p) {
                Ok(g) => g,
                Err(crate::build::BuildError::HillClimbFailed(f)) => {
                    eprintln!("{f}");
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let opts = VerifyOptions { require_girth5: true, require_connected: true, ..Default::default() };
            match (emit_cert, out) {
                (true, Some(out)) => {
                    let d = triangle_shift(g.v(), p.graph_params.shift);
                    match emit_certificate(&g, d) {
                        Ok(cert) => write(&out, &cert.to_text())?,
                        Err(e) => {
                            eprintln!("no certificate ({e}); writing the line list");
                            write(&out, &g.to_line_list())?;
                        }
                    }
                    Ok(emit(&verify_pent_with(&g, &opts)))
                }
                (_, out) => finish(&g, &opts, out.as_deref()),
            }
        }
    }
}

fn load_gdd(arg: &str) -> Result<Gdd, InputError> {
    if let Some(rest) = arg.strip_prefix("td:") {
        let (k, n) = rest.split_once(':').ok_or_else(|| InputError(format!("expected td:<k>:<n>, got {arg}")))?;
        return Ok(td(k.parse()?, n.parse()?)?);
    }
    Ok(parse_gdd(&read(Path::new(arg))?)?)
}

fn cmd_compose(gdd: &str, ingredients: &[PathBuf], out: Option<&Path>) -> CmdResult {
    let gdd = load_gdd(gdd)?;
    let mut geoms = Vec::new();
    for path in ingredients {
        geoms.push(load_geometry(&read(path)?, None, &mut VerifyOptions::default())?);
    }
    if geoms.len() == 1 {
        geoms = vec![geoms[0].clone(); gdd.groups().len()];
    }
    let g = wilson_compose(&gdd, &geoms)?;
    finish(&g, &VerifyOptions::default(), out)
}

fn parse_range(r: &str) -> Result<(usize, usize), InputError> {
    let (a, b) = r.split_once("..").unwrap_or((r, r));
    let (a, b) = (a.trim().parse::<usize>()?, b.trim().trim_start_matches('=').parse::<usize>()?);
    if a > b {
        return Err(InputError(format!("empty range {r}")));
    }
    Ok((a, b))
}

fn cmd_admissible(k: usize, w: usize, r: &str) -> CmdResult {
    let (lo, hi) = parse_range(r)?;
    let mut out = std::io::stdout().lock();
    for r in lo..=hi {
        let _ = writeln!(out, "{r}\t{}", classify_r(k, w, r)?);
    }
    Ok(0)
}

fn cmd_catalog(w: Option<usize>, k: Option<usize>) -> CmdResult {
    let json = match (w, k) {
        (Some(w), _) => match graph_orders(w) {
            Some(row) => serde_json::to_string_pretty(row)?,
            None => format!("{{\"w\": {w}, \"status\": \"not-in-table\"}}"),
        },
        (None, Some(k)) => serde_json::to_string_pretty(&known_connected(k))?,
        (None, None) => serde_json::to_string_pretty(&GRAPH_ORDERS)?,
    };
    println!("{json}");
    Ok(0)
}
