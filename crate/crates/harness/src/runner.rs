//! Running an external DIMACS solver and reading its competition-style output.

use std::io::Read;
use std::os::unix::process::CommandExt;
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable holding the default solver command template.
pub const SOLVER_ENV: &str = "MOLS10_SOLVER";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Sat,
    Unsat,
    Timeout,
    Error,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Sat => "SAT",
            Outcome::Unsat => "UNSAT",
            Outcome::Timeout => "TIMEOUT",
            Outcome::Error => "ERROR",
        })
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("solver command is empty")]
    EmptyCommand,
    #[error("solver command {0:?} has no {{instance}} placeholder")]
    NoInstance(String),
    #[error("no solver configured: set {SOLVER_ENV} or pass --solver-cmd")]
    NoSolver,
}

/// Program plus argument template. `{instance}` and `{seed}` are substituted
/// in every argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverCommand {
    pub program: String,
    pub args: Vec<String>,
}

impl SolverCommand {
    /// Splits a template on whitespace, e.g. `"kissat --seed={seed} {instance}"`.
    pub fn parse(template: &str) -> Result<Self, RunError> {
        let mut words = template.split_whitespace().map(str::to_string);
        let program = words.next().ok_or(RunError::EmptyCommand)?;
        let args: Vec<String> = words.collect();
        if !args.iter().any(|a| a.contains("{instance}")) {
            return Err(RunError::NoInstance(template.to_string()));
        }
        Ok(SolverCommand { program, args })
    }

    /// The `mols10-sat` binary installed next to the running executable.
    pub fn bundled() -> Option<Self> {
        let exe = std::env::current_exe().ok()?;
        let mut dir = exe.parent()?.to_path_buf();
        // test binaries live one level below the other binaries
        for _ in 0..2 {
            let candidate = dir.join("mols10-sat");
            if candidate.is_file() {
                return Some(Self::for_bundled(&candidate));
            }
            dir = dir.parent()?.to_path_buf();
        }
        None
    }

    pub fn for_bundled(path: &Path) -> Self {
        SolverCommand {
            program: path.display().to_string(),
            args: vec!["--seed".into(), "{seed}".into(), "{instance}".into()],
        }
    }

    /// `MOLS10_SOLVER` if set, otherwise the bundled solver.
    pub fn from_env_or_bundled() -> Result<Self, RunError> {
        match std::env::var(SOLVER_ENV) {
            Ok(t) if !t.trim().is_empty() => Self::parse(&t),
            _ => Self::bundled().ok_or(RunError::NoSolver),
        }
    }

    pub fn argv(&self, instance: &Path, seed: u64) -> Vec<String> {
        let inst = instance.display().to_string();
        self.args
            .iter()
            .map(|a| a.replace("{instance}", &inst).replace("{seed}", &seed.to_string()))
            .collect()
    }

    pub fn template(&self) -> String {
        std::iter::once(self.program.as_str())
            .chain(self.args.iter().map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub outcome: Outcome,
    /// DIMACS literals from the `v` lines, on SAT.
    pub model: Option<Vec<i32>>,
    pub wall_seconds: f64,
    /// Peak resident set of the solver process, when the platform reports it.
    pub peak_rss_kib: Option<u64>,
    pub message: Option<String>,
}

/// Reported status and model from solver output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Sat(Vec<i32>),
    Unsat,
    Unknown,
}

pub fn parse_output(text: &str) -> Result<Parsed, String> {
    let mut status = None;
    let mut model = Vec::new();
    let mut terminated = false;
    for line in text.lines() {
        if let Some(s) = line.strip_prefix("s ") {
            let s = s.trim();
            let parsed = match s {
                "SATISFIABLE" => Parsed::Sat(Vec::new()),
                "UNSATISFIABLE" => Parsed::Unsat,
                "UNKNOWN" => Parsed::Unknown,
                _ => return Err(format!("unrecognised status line {line:?}")),
            };
            if status.is_some() {
                return Err("more than one status line".into());
            }
            status = Some(parsed);
        } else if let Some(v) = line.strip_prefix("v ").or_else(|| (line == "v").then_some("")) {
            for tok in v.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| format!("bad value literal {tok:?}"))?;
                if lit == 0 {
                    terminated = true;
                } else {
                    model.push(lit);
                }
            }
        }
    }
    match status {
        Some(Parsed::Sat(_)) if !terminated => Err("model not terminated by 0".into()),
        Some(Parsed::Sat(_)) => Ok(Parsed::Sat(model)),
        Some(other) => Ok(other),
        None => Err("no status line".into()),
    }
}

fn tail(text: &str, lines: usize) -> String {
    let all: Vec<&str> = text.lines().collect();
    all[all.len().saturating_sub(lines)..].join("\n")
}

struct Exit {
    status: libc::c_int,
    rusage: libc::rusage,
}

fn wait_pid(pid: libc::pid_t, block: bool) -> Option<Exit> {
    let mut status = 0;
    // SAFETY: rusage is plain data and both out-pointers are valid.
    let mut rusage: libc::rusage = unsafe { std::mem::zeroed() };
    let flags = if block { 0 } else { libc::WNOHANG };
    let r = unsafe { libc::wait4(pid, &mut status, flags, &mut rusage) };
    (r == pid).then_some(Exit { status, rusage })
}

/// Runs the solver on `instance`, killing it after `timeout`.
pub fn run_solver(cmd: &SolverCommand, instance: &Path, seed: u64, timeout: Duration) -> RunResult {
    let start = Instant::now();
    let error = |message: String| RunResult {
        outcome: Outcome::Error,
        model: None,
        wall_seconds: start.elapsed().as_secs_f64(),
        peak_rss_kib: None,
        message: Some(message),
    };
    let mut child = match Command::new(&cmd.program)
        .args(cmd.argv(instance, seed))
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .process_group(0)
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return error(format!("cannot start {}: {e}", cmd.program)),
    };
    let pid = child.id() as libc::pid_t;
    let mut stdout = child.stdout.take().expect("piped stdout");
    let mut stderr = child.stderr.take().expect("piped stderr");
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stderr.read_to_string(&mut s);
        s
    });

    let mut timed_out = false;
    let mut pause = Duration::from_millis(1);
    let exit = loop {
        if let Some(exit) = wait_pid(pid, false) {
            break exit;
        }
        if start.elapsed() >= timeout {
            timed_out = true;
            // the whole group, so wrapper scripts do not leave the pipes open
            // SAFETY: plain syscall on the group we created.
            unsafe { libc::kill(-pid, libc::SIGKILL) };
            let _ = child.kill();
            break wait_pid(pid, true).expect("reaping killed solver");
        }
        thread::sleep(pause.min(timeout.saturating_sub(start.elapsed())));
        pause = (pause * 2).min(Duration::from_millis(50));
    };
    let wall_seconds = start.elapsed().as_secs_f64();
    let out = out_reader.join().unwrap_or_default();
    let err = err_reader.join().unwrap_or_default();
    // ru_maxrss is in KiB on Linux
    let peak_rss_kib = (exit.rusage.ru_maxrss > 0).then_some(exit.rusage.ru_maxrss as u64);

    let mut result = RunResult {
        outcome: Outcome::Timeout,
        model: None,
        wall_seconds,
        peak_rss_kib,
        message: None,
    };
    if timed_out {
        return result;
    }
    match parse_output(&out) {
        Ok(Parsed::Sat(model)) => {
            result.outcome = Outcome::Sat;
            result.model = Some(model);
        }
        Ok(Parsed::Unsat) => result.outcome = Outcome::Unsat,
        Ok(Parsed::Unknown) => {}
        Err(e) => {
            result.outcome = Outcome::Error;
            let how = if libc::WIFSIGNALED(exit.status) {
                format!("killed by signal {}", libc::WTERMSIG(exit.status))
            } else {
                format!("exit status {}", libc::WEXITSTATUS(exit.status))
            };
            result.message = Some(format!("{e} ({how})\n{}\n{}", tail(&out, 5), tail(&err, 5)));
        }
    }
    result
}
