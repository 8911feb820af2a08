//! DIMACS solver front end with SAT-competition output.
//!
//! `mols10-sat [--seed N] [--time-limit SECS] FILE`; exits 10 on SAT, 20 on
//! UNSAT and 0 when the limit is reached.

use std::io::{BufWriter, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use mols10_sat::{parse, Limits, Outcome, Solver};

#[derive(Parser)]
#[command(name = "mols10-sat", about = "CDCL SAT solver")]
struct Args {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    time_limit: Option<f64>,
    file: std::path::PathBuf,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("c cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let problem = match parse(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("c parse error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut solver = Solver::new(args.seed);
    solver.reserve_vars(problem.num_vars);
    for c in &problem.clauses {
        if !solver.add_clause(c) {
            break;
        }
    }
    let limits = Limits {
        deadline: args.time_limit.map(|s| start + Duration::from_secs_f64(s)),
        ..Limits::default()
    };
    let outcome = solver.solve_limited(&limits);
    let stats = solver.stats();
    let out = std::io::stdout();
    let mut out = BufWriter::new(out.lock());
    let _ = writeln!(out, "c variables {} clauses {}", problem.num_vars, problem.clauses.len());
    let _ = writeln!(
        out,
        "c conflicts {} decisions {} propagations {} restarts {}",
        stats.conflicts, stats.decisions, stats.propagations, stats.restarts
    );
    let _ = writeln!(out, "c seconds {:.3}", start.elapsed().as_secs_f64());
    let code = match outcome {
        Outcome::Sat => {
            let _ = writeln!(out, "s SATISFIABLE");
            let model = solver.model();
            for chunk in model.chunks(20) {
                let line: Vec<String> = chunk.iter().map(i32::to_string).collect();
                let _ = writeln!(out, "v {}", line.join(" "));
            }
            let _ = writeln!(out, "v 0");
            10
        }
        Outcome::Unsat => {
            let _ = writeln!(out, "s UNSATISFIABLE");
            20
        }
        Outcome::Unknown => {
            let _ = writeln!(out, "s UNKNOWN");
            0
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
