//! Batch CLI for scripted and CI use: instance generation, solving,
//! verification, the exhaustive oracle, family sweeps and stuck-state
//! diagnostics.
//!
//! All deterministic output (certificates, result records, reports) goes to
//! stdout or the requested files; timing goes to stderr so repeated runs
//! with fixed seeds stay byte-identical.
//!
//! Exit codes: 0 success (for `verify`: certificate accepted; for `sweep`:
//! zero failures), 1 verification/sweep failure, 2 argument or
//! precondition errors, 3 internal invariant violations.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hamdisc::certify::{verify_hamilton_cycle, verify_path};
use hamdisc::format::{
    self, detect_format, format_cycle, format_path, parse_certificate, Certificate, GraphFormat,
};
use hamdisc::graph::OrientedGraph;
use hamdisc::instruments::{
    best_discrepancy_exhaustive, conjecture_sweep, construction_gnd, random_min_degree_oriented,
    random_tournament, EnumMode, InstrumentError, SweepConfig, SweepFamily, DEFAULT_ENUM_BUDGET,
    DEFAULT_ORACLE_CAP,
};
use hamdisc::solver::{diagnostics, discrepancy_path, max_discrepancy_hamilton, BranchKind, SolveError};

#[derive(Parser)]
#[command(name = "hamdisc", version, about = "Hamilton cycles with guaranteed orientation discrepancy", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    EdgeList,
    Digraph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Digraph6 => GraphFormat::Digraph6,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    /// Dominating part A of size d, independent part B, all B-A arcs into A.
    Gnd,
    /// Uniform random tournament.
    Tournament,
    /// Random graph conditioned on a minimum-degree target.
    MinDegree,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Oriented graphs with minimum degree at least half the vertex count.
    Dense,
    /// All tournaments (checks the near-directed output guarantee).
    Tournaments,
}

#[derive(Args)]
struct IoArgs {
    /// Input graph file, or - for stdin.
    input: PathBuf,
    /// Force the input format instead of auto-detecting by header.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long)]
        n: usize,
        /// Size of the dominating part (gnd only).
        #[arg(long)]
        d: Option<usize>,
        /// Minimum-degree target (min-degree only).
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: FormatArg,
    },
    /// Construct a Hamilton cycle with sigma_max >= delta and self-verify.
    Solve {
        #[command(flatten)]
        io: IoArgs,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Write the result record here instead of stdout.
        #[arg(long)]
        record_out: Option<PathBuf>,
        /// Emit one trace line per construction event.
        #[arg(long)]
        trace: bool,
    },
    /// Construct a path with sigma_max >= delta (spanning when delta >= n/2).
    Path {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        cert_out: Option<PathBuf>,
        #[arg(long)]
        record_out: Option<PathBuf>,
    },
    /// Re-check a certificate against a graph and a target.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Certificate file, or - for stdin.
        cert: PathBuf,
        #[arg(long, default_value_t = 0)]
        target: usize,
        /// For path certificates: also require every vertex to be covered.
        #[arg(long)]
        require_spanning: bool,
    },
    /// Exhaustive best discrepancy over all Hamilton cycles (small n).
    Oracle {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Run solver + verifier (+ oracle) over a whole instance family.
    Sweep {
        /// Vertex counts, e.g. 5 or 3..5 (inclusive).
        #[arg(long)]
        n: String,
        /// Enumerate every labeled instance.
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of seeded samples per vertex count.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "dense")]
        family: FamilyArg,
        /// Cross-check every instance against the exhaustive oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        budget: u64,
        /// Worker threads for the sweep.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Interval bookkeeping of an almost-spanning cycle.
    Diag {
        #[command(flatten)]
        io: IoArgs,
        /// Cycle certificate on all vertices but one.
        cert: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

fn solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::Internal(_) => {
            let dump = PathBuf::from("hamdisc-invariant-dump.txt");
            let _ = fs::write(&dump, format!("{e}\n"));
            CliError::internal(format!("{e} (dump written to {})", dump.display()))
        }
        other => CliError::usage(other.to_string()),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("reading {}: {e}", path.display())))
    }
}

fn load_graph(io: &IoArgs) -> Result<OrientedGraph, CliError> {
    let text = read_input(&io.input)?;
    let result = match io.format {
        Some(FormatArg::EdgeList) => format::read_edge_list(&text),
        Some(FormatArg::Digraph6) => format::decode_digraph6(text.trim()),
        None => detect_format(&text).and_then(|_| format::read_graph(&text)),
    };
    result.map_err(|e| CliError::usage(format!("parsing {}: {e}", io.input.display())))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::usage(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn branch_field(trace: &hamdisc::solver::SolveTrace) -> String {
    let hist = trace.branch_histogram();
    let all = [
        BranchKind::Tournament,
        BranchKind::DiracBase,
        BranchKind::Insert,
        BranchKind::TightInsert,
        BranchKind::FullBackSegment,
        BranchKind::SingleForwardSegment,
        BranchKind::Absorb,
        BranchKind::ImproveCycle,
    ];
    all.iter()
        .map(|b| format!("{}:{}", b.as_str(), hist.get(b).copied().unwrap_or(0)))
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen { construction, n, d, delta, seed, out, format: fmt } => {
            let map_err = |e: InstrumentError| CliError::usage(e.to_string());
            let g = match construction {
                ConstructionArg::Gnd => {
                    let d = d.ok_or_else(|| CliError::usage("--d is required for gnd"))?;
                    construction_gnd(n, d, seed).map_err(map_err)?
                }
                ConstructionArg::Tournament => random_tournament(n, seed).map_err(map_err)?,
                ConstructionArg::MinDegree => {
                    let delta =
                        delta.ok_or_else(|| CliError::usage("--delta is required for min-degree"))?;
                    random_min_degree_oriented(n, delta, seed).map_err(map_err)?
                }
            };
            let mut text = format::write_graph(&g, fmt.into());
            if fmt == FormatArg::Digraph6 {
                text.push('\n');
            }
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Solve { io, cert_out, record_out, trace: want_trace } => {
            let g = load_graph(&io)?;
            let started = Instant::now();
            let (cert, trace) = max_discrepancy_hamilton(&g).map_err(solve_error)?;
            let delta = g.min_degree();
            let verdict = verify_hamilton_cycle(&g, &cert, delta);
            if !verdict.ok {
                return Err(CliError::internal(format!(
                    "solver output failed verification: {verdict}"
                )));
            }
            let stats = verdict.stats.expect("passing verdict carries stats");
            let elapsed = started.elapsed();

            emit(&cert_out, &format_cycle(&cert))?;
            let mut record = String::new();
            let _ = write!(
                record,
                "result n={} delta={} ell={} sigma_plus={} sigma_minus={} sigma_max={} branches={} arc_probes={}\n",
                g.vertex_count(),
                delta,
                g.vertex_count() - delta,
                stats.sigma_plus,
                stats.sigma_minus,
                stats.sigma_max,
                branch_field(&trace),
                trace.arc_probes,
            );
            if want_trace {
                record.push_str(&trace.render());
            }
            emit(&record_out, &record)?;
            eprintln!("elapsed_ms={}", elapsed.as_millis());
            Ok(ExitCode::SUCCESS)
        }

        Command::Path { io, cert_out, record_out } => {
            let g = load_graph(&io)?;
            let started = Instant::now();
            let path = discrepancy_path(&g).map_err(solve_error)?;
            let delta = g.min_degree();
            let spanning = 2 * delta >= g.vertex_count();
            let verdict = verify_path(&g, &path, delta, spanning);
            if !verdict.ok {
                return Err(CliError::internal(format!(
                    "path output failed verification: {verdict}"
                )));
            }
            let stats = verdict.stats.expect("passing verdict carries stats");
            let elapsed = started.elapsed();

            emit(&cert_out, &format_path(&path))?;
            let record = format!(
                "result n={} delta={} len={} sigma_plus={} sigma_minus={} sigma_max={} spanning={}\n",
                g.vertex_count(),
                delta,
                path.len(),
                stats.sigma_plus,
                stats.sigma_minus,
                stats.sigma_max,
                path.len() == g.vertex_count(),
            );
            emit(&record_out, &record)?;
            eprintln!("elapsed_ms={}", elapsed.as_millis());
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { io, cert, target, require_spanning } => {
            let g = load_graph(&io)?;
            let cert_text = read_input(&cert)?;
            let parsed = parse_certificate(&cert_text, &g)
                .map_err(|e| CliError::usage(format!("parsing {}: {e}", cert.display())))?;
            let verdict = match &parsed {
                Certificate::Cycle(c) => verify_hamilton_cycle(&g, c, target),
                Certificate::Path(p) => verify_path(&g, p, target, require_spanning),
            };
            println!("verdict {verdict}");
            Ok(if verdict.ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }

        Command::Oracle { io, cap } => {
            let g = load_graph(&io)?;
            let best = best_discrepancy_exhaustive(&g, cap)
                .map_err(|e| CliError::usage(e.to_string()))?;
            match best {
                None => println!("oracle best=none"),
                Some((best, witness)) => {
                    println!("oracle best={best} witness={}", format_cycle(&witness).trim_end())
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            n,
            exhaustive,
            samples,
            seed,
            family,
            oracle,
            oracle_cap,
            budget,
            jobs,
            out,
        } => {
            if let Some(jobs) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .map_err(|e| CliError::usage(format!("--jobs: {e}")))?;
            }
            let n_values = parse_range(&n)?;
            let mode = match (exhaustive, samples) {
                (true, None) => EnumMode::Exhaustive,
                (false, Some(count)) => EnumMode::Sample { count, seed },
                _ => {
                    return Err(CliError::usage(
                        "choose exactly one of --exhaustive or --samples N",
                    ))
                }
            };
            let cfg = SweepConfig {
                n_values,
                mode,
                family: match family {
                    FamilyArg::Dense => SweepFamily::DenseOriented,
                    FamilyArg::Tournaments => SweepFamily::Tournaments,
                },
                oracle_check: oracle,
                oracle_cap,
                budget,
            };
            let report = conjecture_sweep(&cfg).map_err(|e| CliError::usage(e.to_string()))?;
            emit(&out, &report.render())?;
            eprintln!("elapsed_ms={}", report.elapsed_ms);
            Ok(if report.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }

        Command::Diag { io, cert } => {
            let g = load_graph(&io)?;
            let cert_text = read_input(&cert)?;
            let parsed = parse_certificate(&cert_text, &g)
                .map_err(|e| CliError::usage(format!("parsing {}: {e}", cert.display())))?;
            let Certificate::Cycle(c) = parsed else {
                return Err(CliError::usage("diag expects a cycle certificate"));
            };
            let mut on = vec![false; g.vertex_count()];
            for v in c.vertices() {
                if v.idx() < on.len() {
                    on[v.idx()] = true;
                }
            }
            let missing: Vec<usize> =
                (0..g.vertex_count()).filter(|&v| !on[v]).collect();
            let [w] = missing.as_slice() else {
                return Err(CliError::usage(format!(
                    "cycle must omit exactly one vertex, omits {}",
                    missing.len()
                )));
            };
            let report = diagnostics(&g, &c, hamdisc::graph::VertexId::new(*w))
                .map_err(|e| CliError::usage(e.to_string()))?;
            print!("{report}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Parses `7` or `3..5` (inclusive) into the list of vertex counts.
fn parse_range(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::usage(format!("bad --n range '{spec}', expected K or LO..HI"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.parse().map_err(|_| bad())?;
        let hi: usize = hi.parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![spec.parse().map_err(|_| bad())?])
    }
}
