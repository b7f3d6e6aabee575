//! The `lefchar` command line: job parsing, orchestration and reports.

mod fit;
mod job;
mod run;
mod wire;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

pub use fit::fit_polynomial;
pub use job::{group_spec, Caps, GroupField, Job, Limits, ParabolicField, Resolved, Task, TorsionField};
pub use run::{execute, Report, Verdict};
pub use wire::{CycWire, PolyWire};

#[derive(Debug, Parser)]
#[command(name = "lefchar", version, about = "Characters at finite-order torus elements via fixed-point components of flag varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the tasks listed in the job file.
    Run(Common),
    /// Run the job's tasks plus every verification.
    Verify(Common),
    /// Fixed components and counting identities only.
    Components(Common),
    /// Character values on the job's range of n.
    Char(Common),
    /// Residue-class polynomials, leading coefficients and degrees.
    Asymptote(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Job file (JSON).
    pub job: PathBuf,
    /// Write the full JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the perturbed cocharacter; overrides the job's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_weyl: Option<usize>,
    #[arg(long)]
    pub max_weights: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long)]
    pub timing: bool,
}

impl Command {
    fn split(self) -> (Common, Option<Vec<Task>>) {
        match self {
            Command::Run(c) => (c, None),
            Command::Verify(c) => (c, Some(vec![Task::Verify])),
            Command::Components(c) => (c, Some(vec![Task::Components, Task::Counting])),
            Command::Char(c) => (c, Some(vec![Task::Character])),
            Command::Asymptote(c) => (c, Some(vec![Task::Asymptotics])),
        }
    }
}

/// Runs one command and returns the report.
pub fn run_command(command: Command) -> Result<(Report, Option<PathBuf>)> {
    let started = Instant::now();
    let is_verify = matches!(command, Command::Verify(_));
    let (opts, tasks) = command.split();
    let text = std::fs::read_to_string(&opts.job)?;
    let mut job = Job::from_json(&text)?;
    match tasks {
        Some(extra) if is_verify => job.tasks.extend(extra),
        Some(only) => job.tasks = only,
        None => {}
    }
    let limits = Limits::resolve(&job.caps, opts.max_weyl, opts.max_weights);
    let seed = opts.seed.unwrap_or(job.seed);
    let work = || -> Result<Report> {
        let resolved = Resolved::new(&job, limits, seed)?;
        execute(&job, &resolved)
    };
    let mut report = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Job(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    if opts.timing {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    Ok((report, opts.out))
}

pub fn summary(report: &Report) -> String {
    let mut s = format!(
        "group {} (|W| = {}), t of order {} x = {:?}/{}, P levi {:?}\n",
        report.group,
        report.weyl_order,
        report.t.order,
        report.t.numerators,
        report.t.order,
        report.parabolic
    );
    if let Some(cs) = &report.components {
        let dims: Vec<usize> = cs.iter().map(|c| c.dim).collect();
        s += &format!("components: {} with dims {:?}\n", cs.len(), dims);
    }
    if let Some(c) = &report.counting {
        s += &format!(
            "counting: |Y_S| = {}, |W^P| = {}, orbit sum = {} ({})\n",
            c.ys_count,
            c.coset_count,
            c.orbit_sum,
            if c.passed() { "ok" } else { "FAILED" }
        );
    }
    if let Some(chars) = &report.characters {
        for e in chars {
            s += &format!("ch(t, V({}lambda)) = {}\n", e.n, e.text);
        }
    }
    if let Some(ps) = &report.polynomials {
        for p in ps {
            s += &format!("n = {} mod {}: {}\n", p.residue, report.t.order, p.total.text);
        }
    }
    if !report.verdicts.is_empty() {
        let failed: Vec<&Verdict> = report.verdicts.iter().filter(|v| !v.passed).collect();
        s += &format!(
            "verify: {}/{} checks passed\n",
            report.verdicts.len() - failed.len(),
            report.verdicts.len()
        );
        for v in failed {
            s += &format!("  FAILED {} ({})\n", v.check, v.context);
        }
    }
    s
}

/// Parses arguments, runs, writes outputs; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(cli.command) {
        Ok((report, out)) => {
            print!("{}", summary(&report));
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(&path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
