mod common;

use std::os::unix::fs::PermissionsExt;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use mols10_core::cnf::{encode_case, encode_latin_trp, EncodeOptions, LatinEncoding, SubsquareChoice, TrpEncoding};
use mols10_harness::decode::{assignment, model_satisfies};
use mols10_harness::portfolio::{
    read_log, run_one, run_portfolio, write_instance, ConfigError, Job, RecordLog, SolverConfig, MODEL_CHECK,
};
use mols10_harness::report::{aggregate, scatter_csv, scatter_svg, table_csv};
use mols10_harness::runner::{Outcome, SolverCommand};

fn bundled() -> SolverCommand {
    SolverCommand::for_bundled(Path::new(env!("CARGO_BIN_EXE_mols10-sat")))
}

fn config(command: SolverCommand, timeout: Duration, seeds: &[u64]) -> SolverConfig {
    SolverConfig {
        command,
        timeout,
        workers: 2,
        seeds: seeds.to_vec(),
        mate_limit: Some(4),
    }
}

fn order4_job(dir: &Path) -> Job {
    write_instance(dir, &encode_latin_trp(4, TrpEncoding::Composition, LatinEncoding::Totalizer, true)).unwrap()
}

fn case_job(dir: &Path, case: &str, choice: SubsquareChoice) -> Job {
    write_instance(dir, &encode_case(&EncodeOptions::new(case.parse().unwrap(), choice))).unwrap()
}

/// A solver that prints a canned output file whatever it is given.
fn canned(dir: &Path, name: &str, output: &str) -> SolverCommand {
    let out = dir.join(format!("{name}.out"));
    std::fs::write(&out, output).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, format!("#!/bin/sh\ncat {}\n", out.display())).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    SolverCommand::parse(&format!("{} {{instance}}", path.display())).unwrap()
}

fn model_output(model: &[i32]) -> String {
    let lits: Vec<String> = model.iter().map(i32::to_string).collect();
    format!("s SATISFIABLE\nv {} 0\n", lits.join(" "))
}

#[test]
fn empty_job_list_gives_empty_table() {
    let records = run_portfolio(&[], &config(bundled(), Duration::from_secs(1), &[1, 2]), |_| {}).unwrap();
    assert!(records.is_empty());
    let table = aggregate(&records);
    assert!(table.rows.is_empty());
    assert_eq!(table_csv(&table).lines().count(), 1);
}

#[test]
fn invalid_configs_are_rejected() {
    let mut c = config(bundled(), Duration::from_secs(1), &[1]);
    c.workers = 0;
    assert!(matches!(run_portfolio(&[], &c, |_| {}), Err(ConfigError::NoWorkers)));
    let c = config(bundled(), Duration::ZERO, &[1]);
    assert!(matches!(run_portfolio(&[], &c, |_| {}), Err(ConfigError::ZeroTimeout)));
}

#[test]
fn sat_runs_are_verified_and_unsat_cases_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = vec![
        order4_job(dir.path()),
        case_job(dir.path(), "RR", SubsquareChoice::Either),
        case_job(dir.path(), "VX", SubsquareChoice::Omega1),
    ];
    let seen = AtomicUsize::new(0);
    let records = run_portfolio(&jobs, &config(bundled(), Duration::from_secs(60), &[1, 2, 3]), |_| {
        seen.fetch_add(1, Ordering::SeqCst);
    })
    .unwrap();
    assert_eq!(records.len(), 9);
    assert_eq!(seen.load(Ordering::SeqCst), 9);
    for r in &records {
        if r.case.starts_with("latin-trp") {
            assert!(r.solved(), "{r:?}");
            let s = r.stats.as_ref().unwrap();
            assert!(s.mates_p >= 1 && s.mates_q >= 1);
            assert_eq!(s.omega1_compatible, None);
        } else {
            assert_eq!(r.outcome, Outcome::Unsat, "{}-{}", r.case, r.omega);
            assert!(!r.solved());
        }
    }
    let table = aggregate(&records);
    assert_eq!(table.rows.len(), 3);
    let vx = table.rows.iter().find(|r| r.case == "VX").unwrap();
    assert_eq!((vx.runs, vx.unsat, vx.omega.as_str()), (3, 3, "omega1"));
}

#[test]
fn timeouts_are_charged_at_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let job = order4_job(dir.path());
    let slow = dir.path().join("slow");
    std::fs::write(&slow, "#!/bin/sh\nsleep 20\n").unwrap();
    std::fs::set_permissions(&slow, std::fs::Permissions::from_mode(0o755)).unwrap();
    let cmd = SolverCommand::parse(&format!("{} {{instance}}", slow.display())).unwrap();
    let budget = Duration::from_millis(250);
    let records = run_portfolio(&[job], &config(cmd, budget, &[1, 2]), |_| {}).unwrap();
    assert!(records.iter().all(|r| r.outcome == Outcome::Timeout));
    assert!(records.iter().all(|r| r.charged_seconds() == Some(0.25)));
    let row = &aggregate(&records).rows[0];
    assert_eq!((row.timeouts, row.solved), (2, 0));
    assert_eq!(row.mean_seconds, Some(0.25));
    assert_eq!(row.median_seconds, Some(0.25));
    let csv = table_csv(&aggregate(&records));
    assert!(csv.lines().nth(1).unwrap().contains(",timeout,"));
}

#[test]
fn models_violating_the_instance_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let job = order4_job(dir.path());
    let e = encode_latin_trp(4, TrpEncoding::Composition, LatinEncoding::Totalizer, true);
    let model = common::solve(&e.formula, 0).unwrap();
    let semantic = e.manifest.vars.semantic_vars() as usize;
    // an auxiliary flip leaves the squares intact but falsifies some clause
    let flip = (semantic..model.len())
        .find(|&i| {
            let mut bad = model.clone();
            bad[i] = -bad[i];
            !model_satisfies(&e.formula, &assignment(&bad, e.manifest.num_vars).unwrap())
        })
        .expect("some auxiliary variable matters");
    let mut bad = model.clone();
    bad[flip] = -bad[flip];

    let good = run_one(&job, 1, &config(canned(dir.path(), "good", &model_output(&model)), Duration::from_secs(10), &[1]));
    assert!(good.solved(), "{good:?}");
    let r = run_one(&job, 1, &config(canned(dir.path(), "bad", &model_output(&bad)), Duration::from_secs(10), &[1]));
    assert_eq!(r.outcome, Outcome::Sat);
    assert!(!r.solved());
    assert!(r.verdict.as_ref().unwrap().has(MODEL_CHECK));

    let garbage = run_one(&job, 1, &config(canned(dir.path(), "junk", "s SATISFIABLE\nv 1 0\n"), Duration::from_secs(10), &[1]));
    assert!(!garbage.solved());
    assert!(garbage.error.unwrap().starts_with("decode"));
    let row = &aggregate(&[r]).rows[0];
    assert_eq!((row.solved, row.rejected), (0, 1));
}

#[test]
fn report_is_byte_stable_over_the_log() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = vec![order4_job(dir.path()), case_job(dir.path(), "SU", SubsquareChoice::Either)];
    let records = run_portfolio(&jobs, &config(bundled(), Duration::from_secs(60), &[1, 2]), |_| {}).unwrap();
    let mut buf = Vec::new();
    let mut log = RecordLog::new(&mut buf);
    for r in &records {
        log.append(r).unwrap();
    }
    let reread = read_log(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!(reread, records);
    let mut reversed = reread.clone();
    reversed.reverse();
    assert_eq!(table_csv(&aggregate(&records)), table_csv(&aggregate(&reversed)));
    assert_eq!(scatter_csv(&records), scatter_csv(&reversed));
    assert_eq!(scatter_svg(&records), scatter_svg(&reversed));
    assert!(scatter_svg(&records).starts_with("<svg"));
}
