use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mols10_core::cnf::{encode_case, write_dimacs, EncodeOptions, LatinEncoding, SubsquareChoice};
use mols10_core::equivalence::{to_orthogonal_pair, OrthogonalArray, PairGraph};
use mols10_core::myrvold::all_pair_cases;
use mols10_core::PairCase;
use mols10_harness::extend::check_extendability;
use mols10_harness::pairfile::read_pair;
use mols10_harness::portfolio::{read_log, run_portfolio, write_instance, RecordLog, SolverConfig};
use mols10_harness::report::{aggregate, dedupe, scatter_csv, scatter_svg, table_csv};
use mols10_harness::runner::{Outcome, SolverCommand, SOLVER_ENV};
use mols10_harness::stats::{compute_stats, DEFAULT_MATE_LIMIT};
use mols10_harness::verify::verify_solution;

#[derive(Parser)]
#[command(name = "mols10", version, about = "Search for transversal representation pairs of order 10")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct EncodingArgs {
    /// Subsquare assumed in L: 1, 2 or either
    #[arg(long, default_value = "either")]
    omega: SubsquareChoice,
    #[arg(long, default_value = "totalizer")]
    latin: LatinEncoding,
    /// Drop the redundant composition clauses
    #[arg(long)]
    no_redundant: bool,
    /// Drop the normal-form clauses
    #[arg(long)]
    no_symmetry: bool,
    /// Drop clauses that only help propagation
    #[arg(long)]
    no_optional: bool,
}

impl EncodingArgs {
    fn options(&self, case: PairCase) -> EncodeOptions {
        let mut o = EncodeOptions::new(case, self.omega);
        o.latin = self.latin;
        o.redundant_trp = !self.no_redundant;
        o.symmetry_breaking = !self.no_symmetry;
        o.optional_clauses = !self.no_optional;
        o
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Solver command with {instance} and {seed} placeholders
    #[arg(long, env = SOLVER_ENV)]
    solver_cmd: Option<String>,
    /// Seconds per solver run
    #[arg(long, default_value_t = 3600.0)]
    timeout: f64,
}

impl SolverArgs {
    fn command(&self) -> Result<SolverCommand> {
        Ok(match &self.solver_cmd {
            Some(t) => SolverCommand::parse(t)?,
            None => SolverCommand::bundled().context("no solver configured")?,
        })
    }

    fn timeout(&self) -> Result<Duration> {
        if self.timeout.is_nan() || self.timeout <= 0.0 {
            bail!("timeout must be positive");
        }
        Ok(Duration::from_secs_f64(self.timeout))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the DIMACS instance of one pair case
    Encode {
        #[arg(long)]
        case: PairCase,
        #[command(flatten)]
        encoding: EncodingArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve pair cases with several seeds and record verified results
    Solve {
        /// Repeatable; with neither this nor --all nothing is solved
        #[arg(long)]
        case: Vec<PairCase>,
        /// All 28 pair cases
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        encoding: EncodingArgs,
        /// Number of seeds; seeds are 1..=N
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = DEFAULT_MATE_LIMIT)]
        mate_limit: usize,
        /// Directory for instances, the record log and the summary
        #[arg(long, default_value = "runs")]
        out: PathBuf,
    },
    /// Check a pair file (text squares or a JSON record)
    Verify { pairfile: PathBuf },
    /// Decide whether a pair extends to a mutual triple
    Extend {
        pairfile: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value = ".")]
        workdir: PathBuf,
    },
    /// Transversal, mate and subsquare statistics of a pair
    Stats {
        pairfile: PathBuf,
        /// 0 counts every decomposition
        #[arg(long, default_value_t = DEFAULT_MATE_LIMIT)]
        mate_limit: usize,
    },
    /// Canonical certificate of the pair's orthogonal-array graph
    Canon {
        pairfile: PathBuf,
        /// Also write the graph in DIMACS edge format
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Summaries, scatter data and plot from a record log
    Report {
        log: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group solved records by certificate
    Dedupe { log: PathBuf },
}

fn limit(n: usize) -> Option<usize> {
    (n > 0).then_some(n)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Encode { case, encoding, output } => {
            let encoded = encode_case(&encoding.options(case));
            let mut f = std::io::BufWriter::new(
                std::fs::File::create(&output).with_context(|| format!("creating {}", output.display()))?,
            );
            write_dimacs(&mut f, &encoded.formula, Some(&encoded.manifest))?;
            f.flush()?;
            let sidecar = output.with_extension("json");
            write_file(&sidecar, &(serde_json::to_string_pretty(&encoded.manifest)? + "\n"))?;
            eprintln!(
                "{}: {} variables, {} clauses",
                encoded.manifest.name, encoded.manifest.num_vars, encoded.manifest.num_clauses
            );
            Ok(0)
        }
        Cmd::Solve {
            case,
            all,
            encoding,
            seeds,
            workers,
            solver,
            mate_limit,
            out,
        } => {
            let cases = if all { all_pair_cases() } else { case };
            let config = SolverConfig {
                command: solver.command()?,
                timeout: solver.timeout()?,
                workers,
                seeds: (1..=seeds).collect(),
                mate_limit: limit(mate_limit),
            };
            config.validate()?;
            let dir = out.join("instances");
            let jobs = cases
                .iter()
                .map(|&c| write_instance(&dir, &encode_case(&encoding.options(c))))
                .collect::<std::io::Result<Vec<_>>>()?;
            let log_path = out.join("records.ndjson");
            let file = OpenOptions::new().create(true).append(true).open(&log_path)?;
            let mut log = RecordLog::new(std::io::BufWriter::new(file));
            let mut write_error = None;
            let records = run_portfolio(&jobs, &config, |r| {
                let verdict = match &r.verdict {
                    Some(v) if v.passed() => "verified".to_string(),
                    Some(v) => format!("REJECTED ({} failures)", v.failures.len()),
                    None => String::new(),
                };
                eprintln!("{}-{} seed {}: {} {:.2}s {verdict}", r.case, r.omega, r.seed, r.outcome, r.wall_seconds);
                if let Err(e) = log.append(r) {
                    write_error.get_or_insert(e);
                }
            })?;
            if let Some(e) = write_error {
                return Err(e).context("appending to the record log");
            }
            let table = aggregate(&records);
            let csv = table_csv(&table);
            write_file(&out.join("summary.csv"), &csv)?;
            print!("{csv}");
            if records.len() == 1 {
                return Ok(match records[0].outcome {
                    Outcome::Sat if records[0].solved() => 10,
                    Outcome::Unsat => 20,
                    Outcome::Timeout => 30,
                    _ => 1,
                });
            }
            Ok(0)
        }
        Cmd::Verify { pairfile } => {
            let d = read_pair(&pairfile)?;
            let verdict = verify_solution(&d);
            println!("{verdict}");
            Ok(if verdict.passed() { 0 } else { 1 })
        }
        Cmd::Extend {
            pairfile,
            solver,
            workdir,
        } => {
            let d = read_pair(&pairfile)?;
            let r = check_extendability(&d.p, &d.q, &solver.command()?, solver.timeout()?, &workdir)?;
            println!("{} {:.3}s", r.outcome, r.wall_seconds);
            if let Some(l) = &r.third {
                print!("{l}");
            }
            Ok(match r.outcome {
                Outcome::Sat => 10,
                Outcome::Unsat => 20,
                Outcome::Timeout => 30,
                Outcome::Error => 1,
            })
        }
        Cmd::Stats { pairfile, mate_limit } => {
            let d = read_pair(&pairfile)?;
            let s = compute_stats(&d.p, &d.q, limit(mate_limit))?;
            println!("{}", serde_json::to_string_pretty(&s)?);
            Ok(0)
        }
        Cmd::Canon { pairfile, export } => {
            let d = read_pair(&pairfile)?;
            let (a, b) = to_orthogonal_pair(&d.p, &d.q)?;
            let graph = PairGraph::from_array(&OrthogonalArray::from_pair(&a, &b)?);
            println!("{}", mols10_core::equivalence::canonicalize(&graph).to_hex());
            if let Some(path) = export {
                write_file(&path, &graph.to_dimacs_graph())?;
            }
            Ok(0)
        }
        Cmd::Report { log, out } => {
            let text = std::fs::read_to_string(&log).with_context(|| format!("reading {}", log.display()))?;
            let records = read_log(&text)?;
            let csv = table_csv(&aggregate(&records));
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                write_file(&dir.join("summary.csv"), &csv)?;
                write_file(&dir.join("scatter.csv"), &scatter_csv(&records))?;
                write_file(&dir.join("runtimes.svg"), &scatter_svg(&records))?;
            }
            print!("{csv}");
            Ok(0)
        }
        Cmd::Dedupe { log } => {
            let text = std::fs::read_to_string(&log).with_context(|| format!("reading {}", log.display()))?;
            let records = read_log(&text)?;
            for class in dedupe(&records) {
                let first = &records[class[0]];
                let members: Vec<String> = class
                    .iter()
                    .map(|&i| format!("{}-{}#{}", records[i].case, records[i].omega, records[i].seed))
                    .collect();
                let cert = first.stats.as_ref().map(|s| s.certificate.as_str()).unwrap_or("");
                println!("{} {}", &cert[..cert.len().min(16)], members.join(" "));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
