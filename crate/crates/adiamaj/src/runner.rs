//! Experiment configuration, deterministic artifact writing, and the
//! command line interface.
//!
//! Every run writes CSV reports with full-precision floats plus a
//! `summary.json` carrying the headline scalars; identical configs and
//! seeds reproduce the files byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::analysis::{
    growth_bound_margins, ground_report, normalize_k_list, oscillation_sweep, tail_oscillation,
    trajectory_report, uniform_grid, MajorizationReport, SweepParams,
};
use crate::error::{Error, Result};
use crate::evolution::{auto_dt, evolve, Trajectory};
use crate::majorization::prefix_sums;
use crate::model::{ProblemSpec, ScheduleSpec};
use crate::spectrum::{ground_state, spectral_report};

pub const DEFAULT_GRID: usize = 1001;
pub const DEFAULT_TOL: f64 = 1e-9;

fn default_grid() -> usize {
    DEFAULT_GRID
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_tail() -> (f64, f64) {
    (0.8, 1.0)
}

fn default_parallel() -> usize {
    1
}

/// Problem source: an explicit cost table or a named seeded family.
/// With both `f` and `cost` present the explicit table wins.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ProblemConfig {
    Explicit {
        n: u32,
        f: Vec<f64>,
    },
    Named {
        n: u32,
        cost: CostFamily,
        #[serde(default)]
        marked: usize,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CostFamily {
    Grover,
    RandomInt,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScheduleConfig {
    Linear {
        #[serde(rename = "T")]
        total: f64,
    },
    Tabulated {
        #[serde(rename = "T")]
        total: f64,
        points: Vec<(f64, f64)>,
    },
}

impl ScheduleConfig {
    pub fn total_time(&self) -> f64 {
        match self {
            ScheduleConfig::Linear { total } | ScheduleConfig::Tabulated { total, .. } => *total,
        }
    }
}

/// One experiment, fully determined: problem, schedule, grids, prefix
/// lengths, integrator step, and tolerances. The hash of the resolved
/// config is embedded in every output header.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemConfig,
    pub schedule: ScheduleConfig,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default)]
    pub k_list: Vec<usize>,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default, rename = "T_list")]
    pub t_list: Vec<f64>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tail")]
    pub tail_window: (f64, f64),
    #[serde(default = "default_parallel")]
    pub parallel: usize,
}

impl ExperimentConfig {
    /// Search instance used when no config file is given: marked state 0
    /// among 32, linear schedule of length 50.
    pub fn base() -> Self {
        Self {
            problem: ProblemConfig::Named { n: 5, cost: CostFamily::Grover, marked: 0 },
            schedule: ScheduleConfig::Linear { total: 50.0 },
            grid: DEFAULT_GRID,
            k_list: vec![],
            dt: None,
            t_list: vec![],
            tol: DEFAULT_TOL,
            seed: 0,
            tail_window: (0.8, 1.0),
            parallel: 1,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::InvalidConfig { detail: format!("grid must have at least 2 points, got {}", self.grid) });
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidConfig { detail: "tol must be positive".into() });
        }
        if self.parallel < 1 {
            return Err(Error::InvalidConfig { detail: "parallel must be at least 1".into() });
        }
        if let Some(dt) = self.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(Error::InvalidConfig { detail: "dt must be positive".into() });
            }
        }
        let (lo, hi) = self.tail_window;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return Err(Error::InvalidConfig { detail: "tail_window must satisfy 0 <= lo < hi <= 1".into() });
        }
        if self.t_list.windows(2).any(|w| w[1] <= w[0])
            || self.t_list.iter().any(|&t| !(t.is_finite() && t > 0.0))
        {
            return Err(Error::InvalidConfig { detail: "T_list must be positive and strictly increasing".into() });
        }
        Ok(())
    }

    pub fn build_problem(&self) -> Result<ProblemSpec> {
        match &self.problem {
            ProblemConfig::Explicit { n, f } => {
                if f.len() != 1usize << n {
                    return Err(Error::InvalidConfig {
                        detail: format!("f has {} entries but n = {n} needs {}", f.len(), 1usize << n),
                    });
                }
                ProblemSpec::new(f.clone())
            }
            ProblemConfig::Named { n, cost: CostFamily::Grover, marked } => ProblemSpec::grover(*n, *marked),
            ProblemConfig::Named { n, cost: CostFamily::RandomInt, .. } => ProblemSpec::random_int(*n, self.seed),
        }
    }

    pub fn build_schedule(&self) -> Result<ScheduleSpec> {
        match &self.schedule {
            ScheduleConfig::Linear { total } => ScheduleSpec::linear(*total),
            ScheduleConfig::Tabulated { total, points } => ScheduleSpec::tabulated(*total, points.clone()),
        }
    }

    /// SHA-256 of the canonical JSON form; keys follow declaration order,
    /// so equal configs hash equally across runs and platforms.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        hex::encode(hasher.finalize())
    }
}

#[derive(Debug, Parser)]
#[command(name = "adiamaj", version, about = "Adiabatic ground paths, evolved states, and majorization reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON experiment config; omitted means the built-in search instance
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing)
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed for the random-int problem family
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of schedule grid points
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Total runtime; repeat for sweep and figure1 runtime lists
    #[arg(long = "T", global = true, value_name = "TIME")]
    pub total_time: Vec<f64>,
    /// Integrator step (default: drift-budget rule)
    #[arg(long, global = true)]
    pub dt: Option<f64>,
    /// Reported prefix length; repeatable
    #[arg(long = "k", global = true, value_name = "K")]
    pub k: Vec<usize>,
    /// Majorization tolerance on partial sums
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for sweeps
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Instantaneous ground state along the path: s, t, lambda, partial sums
    #[command(name = "ground-curve")]
    GroundCurve,
    /// Integrate the time-dependent state and record its partial sums
    #[command(name = "evolve")]
    Evolve,
    /// Check step-by-step majorization of the exact ground path
    #[command(name = "verify-ground")]
    VerifyGround,
    /// Check step-by-step majorization of the evolved state
    #[command(name = "verify-actual")]
    VerifyActual,
    /// Margins of the ground-state growth bound on an interior grid
    #[command(name = "bounds")]
    Bounds,
    /// Two lowest eigenvalues, minimal gap, and the adiabatic error bound
    #[command(name = "gap")]
    Gap,
    /// Tail oscillation amplitude versus runtime
    #[command(name = "sweep")]
    Sweep,
    /// Ground and evolved leading partial sums per runtime, for plotting
    #[command(name = "figure1")]
    Figure1,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GroundCurve => "ground-curve",
            Command::Evolve => "evolve",
            Command::VerifyGround => "verify-ground",
            Command::VerifyActual => "verify-actual",
            Command::Bounds => "bounds",
            Command::Gap => "gap",
            Command::Sweep => "sweep",
            Command::Figure1 => "figure1",
        }
    }
}

fn apply_cli(cfg: &mut ExperimentConfig, cli: &Cli) -> Result<()> {
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(grid) = cli.grid {
        cfg.grid = grid;
    }
    if let Some(dt) = cli.dt {
        cfg.dt = Some(dt);
    }
    if let Some(tol) = cli.tol {
        cfg.tol = tol;
    }
    if let Some(parallel) = cli.parallel {
        cfg.parallel = parallel;
    }
    if !cli.k.is_empty() {
        cfg.k_list = cli.k.clone();
    }
    if !cli.total_time.is_empty() {
        match cli.command {
            Command::Sweep | Command::Figure1 => cfg.t_list = cli.total_time.clone(),
            _ => {
                if cli.total_time.len() > 1 {
                    return Err(Error::InvalidConfig {
                        detail: format!("{} takes a single --T", cli.command.name()),
                    });
                }
                match &mut cfg.schedule {
                    ScheduleConfig::Linear { total } => *total = cli.total_time[0],
                    ScheduleConfig::Tabulated { .. } => {
                        return Err(Error::InvalidConfig {
                            detail: "--T cannot override a tabulated schedule".into(),
                        })
                    }
                }
            }
        }
    }
    Ok(())
}

/// Headline scalars of a run. Keys are always present; null marks scalars
/// the command does not compute.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub violation_count: Option<usize>,
    pub worst_deficit: Option<f64>,
    pub g_min: Option<f64>,
    #[serde(rename = "D_max")]
    pub d_max: Option<f64>,
    pub max_delta: Option<f64>,
    #[serde(rename = "oscillation_amplitude_by_T")]
    pub oscillation_amplitude_by_t: Option<Vec<(f64, f64)>>,
}

impl RunSummary {
    fn empty() -> Self {
        Self {
            violation_count: None,
            worst_deficit: None,
            g_min: None,
            d_max: None,
            max_delta: None,
            oscillation_amplitude_by_t: None,
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_time(t: f64) -> String {
    format!("{t}").replace('.', "p").replace('-', "m")
}

struct CsvFile {
    buf: String,
}

impl CsvFile {
    fn new(command: &str, hash: &str, cfg: &ExperimentConfig, columns: &[String]) -> Self {
        let mut buf = String::new();
        let _ = writeln!(buf, "# generator: adiamaj {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(buf, "# command: {command}");
        let _ = writeln!(buf, "# config-hash: {hash}");
        let _ = writeln!(buf, "# seed: {}", cfg.seed);
        let _ = writeln!(buf, "# tol: {}", fmt(cfg.tol));
        let _ = writeln!(
            buf,
            "# fixed-tolerances: root-residual=1e-13 norm-drift=1e-8 sandwich-slack=1e-9"
        );
        let _ = writeln!(buf, "{}", columns.join(","));
        Self { buf }
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.buf, "{}", cells.join(","));
    }

    fn finish(self, path: &Path) -> Result<()> {
        fs::write(path, self.buf)?;
        Ok(())
    }
}

fn verdict_csv(
    name: &str,
    command: &str,
    hash: &str,
    cfg: &ExperimentConfig,
    report: &MajorizationReport,
    out: &Path,
) -> Result<()> {
    let columns: Vec<String> =
        ["s_left", "s_right", "relation", "witness_k", "deficit"].map(String::from).into();
    let mut csv = CsvFile::new(command, hash, cfg, &columns);
    for (i, v) in report.verdicts.iter().enumerate() {
        csv.row(&[
            fmt(report.grid[i]),
            fmt(report.grid[i + 1]),
            format!("{:?}", v.relation),
            v.witness_k.map(|k| k.to_string()).unwrap_or_default(),
            fmt(v.deficit),
        ]);
    }
    csv.finish(&out.join(name))
}

fn resolve_dt(cfg: &ExperimentConfig, p: &ProblemSpec, sched: &ScheduleSpec) -> f64 {
    cfg.dt.unwrap_or_else(|| auto_dt(sched.total_time, sched.norm_bound(p)))
}

fn run_trajectory(cfg: &ExperimentConfig, p: &ProblemSpec) -> Result<Trajectory> {
    let sched = cfg.build_schedule()?;
    let dt = resolve_dt(cfg, p, &sched);
    evolve(p, &sched, dt, &uniform_grid(cfg.grid))
}

fn ground_curve_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let ks = normalize_k_list(p.dim(), &cfg.k_list)?;
    let mut columns: Vec<String> = ["s", "t", "lambda"].map(String::from).into();
    columns.extend(ks.iter().map(|k| format!("A_{k}")));
    let mut csv = CsvFile::new("ground-curve", hash, cfg, &columns);
    for &s in &uniform_grid(cfg.grid) {
        let gs = ground_state(&p, s)?;
        let mut cells = vec![fmt(s), fmt(gs.t), fmt(gs.lambda)];
        cells.extend(ks.iter().map(|&k| fmt(gs.cumulative[k - 1])));
        csv.row(&cells);
    }
    csv.finish(&out.join("ground_curve.csv"))?;
    println!("ground-curve: {} grid points, k = {ks:?}", cfg.grid);
    Ok((0, RunSummary::empty()))
}

fn evolve_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let ks = normalize_k_list(p.dim(), &cfg.k_list)?;
    let traj = run_trajectory(cfg, &p)?;
    let mut columns: Vec<String> = ["time", "s", "norm", "overlap", "delta"].map(String::from).into();
    columns.extend(ks.iter().map(|k| format!("B_{k}")));
    let mut csv = CsvFile::new("evolve", hash, cfg, &columns);
    for (i, st) in traj.states.iter().enumerate() {
        let b = prefix_sums(&st.probabilities());
        let mut cells = vec![fmt(st.time), fmt(st.s), fmt(st.norm), fmt(traj.fidelity[i]), fmt(traj.delta[i])];
        cells.extend(ks.iter().map(|&k| fmt(b[k - 1])));
        csv.row(&cells);
    }
    csv.finish(&out.join("trajectory.csv"))?;
    println!(
        "evolve: {} samples, step {:.3e}, norm drift {:.3e}, max delta {:.3e}",
        traj.states.len(),
        traj.step_size,
        traj.norm_drift,
        traj.max_delta()
    );
    let mut summary = RunSummary::empty();
    summary.max_delta = Some(traj.max_delta());
    Ok((0, summary))
}

fn verify_ground_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let report = ground_report(&p, &uniform_grid(cfg.grid), &cfg.k_list, cfg.tol)?;
    verdict_csv("ground_verdicts.csv", "verify-ground", hash, cfg, &report, out)?;
    println!(
        "verify-ground: {} violations, worst deficit {:.3e}",
        report.violation_count, report.worst_deficit
    );
    let mut summary = RunSummary::empty();
    summary.violation_count = Some(report.violation_count);
    summary.worst_deficit = Some(report.worst_deficit);
    let code = if report.violation_count == 0 { 0 } else { 2 };
    Ok((code, summary))
}

fn verify_actual_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let traj = run_trajectory(cfg, &p)?;
    let report = trajectory_report(&traj, &cfg.k_list, cfg.tol)?;
    verdict_csv("trajectory_verdicts.csv", "verify-actual", hash, cfg, &report, out)?;
    println!(
        "verify-actual: {} violations, worst deficit {:.3e}, max delta {:.3e}",
        report.violation_count,
        report.worst_deficit,
        traj.max_delta()
    );
    let mut summary = RunSummary::empty();
    summary.violation_count = Some(report.violation_count);
    summary.worst_deficit = Some(report.worst_deficit);
    summary.max_delta = Some(traj.max_delta());
    Ok((0, summary))
}

fn bounds_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let grid = uniform_grid(cfg.grid);
    let interior = &grid[1..cfg.grid - 1];
    if interior.is_empty() {
        return Err(Error::InvalidConfig { detail: "bounds needs an interior grid; use at least 3 points".into() });
    }
    let bounds = growth_bound_margins(&p, interior, &cfg.k_list)?;
    let mut columns: Vec<String> = vec!["s".into()];
    columns.extend(bounds.k_list.iter().map(|k| format!("margin_{k}")));
    let mut csv = CsvFile::new("bounds", hash, cfg, &columns);
    for (i, &s) in bounds.grid.iter().enumerate() {
        let mut cells = vec![fmt(s)];
        cells.extend(bounds.margin[i].iter().map(|&m| fmt(m)));
        csv.row(&cells);
    }
    csv.finish(&out.join("bound_margins.csv"))?;
    let code = if bounds.vacuous || bounds.min_margin() >= 0.0 { 0 } else { 2 };
    if bounds.vacuous {
        println!("bounds: vacuous (tied minimum, c = 0)");
    } else {
        println!("bounds: c = {}, min margin {:.3e}", bounds.c, bounds.min_margin());
    }
    Ok((code, RunSummary::empty()))
}

fn gap_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let sched = cfg.build_schedule()?;
    let report = spectral_report(&p, &sched, &uniform_grid(cfg.grid))?;
    let mut csv = CsvFile::new("gap", hash, cfg, &["s", "E0", "E1", "gap"].map(String::from));
    for (i, &s) in report.s_grid.iter().enumerate() {
        csv.row(&[fmt(s), fmt(report.e0[i]), fmt(report.e1[i]), fmt(report.e1[i] - report.e0[i])]);
    }
    csv.finish(&out.join("gap.csv"))?;
    let payload = json!({
        "config_hash": hash,
        "seed": cfg.seed,
        "s_grid": report.s_grid,
        "E0": report.e0,
        "E1": report.e1,
        "g_min": report.g_min,
        "D_max": report.d_max,
        "epsilon_bound": report.epsilon_bound,
    });
    fs::write(out.join("spectrum.json"), serde_json::to_string_pretty(&payload)? + "\n")?;
    println!(
        "gap: g_min {:.6e}, D_max {:.6e}, epsilon {:.6e}",
        report.g_min, report.d_max, report.epsilon_bound
    );
    let mut summary = RunSummary::empty();
    summary.g_min = Some(report.g_min);
    summary.d_max = Some(report.d_max);
    Ok((0, summary))
}

fn sweep_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    if cfg.t_list.is_empty() {
        return Err(Error::InvalidConfig { detail: "sweep needs T_list in the config or repeated --T".into() });
    }
    let p = cfg.build_problem()?;
    let params = SweepParams {
        t_list: cfg.t_list.clone(),
        dt: cfg.dt,
        tail_window: cfg.tail_window,
        k_list: cfg.k_list.clone(),
        grid_points: cfg.grid,
        parallel: cfg.parallel,
    };
    let sweep = oscillation_sweep(&p, &params)?;
    let mut csv = CsvFile::new("sweep", hash, cfg, &["T", "oscillation_amplitude", "max_delta"].map(String::from));
    for (i, &t) in sweep.t_list.iter().enumerate() {
        csv.row(&[fmt(t), fmt(sweep.oscillation_amplitude[i]), fmt(sweep.max_delta[i])]);
    }
    csv.finish(&out.join("sweep.csv"))?;
    println!(
        "sweep: amplitudes {:?}, non-increasing within 10%: {}",
        sweep.oscillation_amplitude,
        sweep.non_increasing(0.1)
    );
    let mut summary = RunSummary::empty();
    summary.max_delta = sweep.max_delta.iter().cloned().fold(None, |acc: Option<f64>, v| {
        Some(acc.map_or(v, |a| a.max(v)))
    });
    summary.oscillation_amplitude_by_t =
        Some(sweep.t_list.iter().cloned().zip(sweep.oscillation_amplitude.iter().cloned()).collect());
    Ok((0, summary))
}

fn figure1_cmd(cfg: &ExperimentConfig, out: &Path, hash: &str) -> Result<(i32, RunSummary)> {
    let p = cfg.build_problem()?;
    let t_list = if cfg.t_list.is_empty() { vec![10.0, 50.0, 250.0] } else { cfg.t_list.clone() };
    let mut amplitude_by_t = Vec::with_capacity(t_list.len());
    let mut worst_delta: f64 = 0.0;
    for &total in &t_list {
        let sched = ScheduleSpec::linear(total)?;
        let dt = resolve_dt(cfg, &p, &sched);
        let traj = evolve(&p, &sched, dt, &uniform_grid(cfg.grid))?;
        let mut csv = CsvFile::new("figure1", hash, cfg, &["s", "A_1", "B_1"].map(String::from));
        for (i, st) in traj.states.iter().enumerate() {
            let b1 = prefix_sums(&st.probabilities())[0];
            csv.row(&[fmt(st.s), fmt(traj.ground_cumulative[i][0]), fmt(b1)]);
        }
        csv.finish(&out.join(format!("figure1_T{}.csv", fmt_time(total))))?;
        amplitude_by_t.push((total, tail_oscillation(&traj, &[1], cfg.tail_window)));
        worst_delta = worst_delta.max(traj.max_delta());
    }
    println!("figure1: runtimes {t_list:?}, tail amplitudes {amplitude_by_t:?}");
    let mut summary = RunSummary::empty();
    summary.max_delta = Some(worst_delta);
    summary.oscillation_amplitude_by_t = Some(amplitude_by_t);
    Ok((0, summary))
}

/// Executes one subcommand against a resolved config, writing the report
/// files and `summary.json` into `out`, and returns the process exit code.
pub fn run(command: Command, cfg: &ExperimentConfig, out: &Path) -> Result<i32> {
    cfg.validate()?;
    fs::create_dir_all(out)?;
    let hash = cfg.hash();
    let (code, summary) = match command {
        Command::GroundCurve => ground_curve_cmd(cfg, out, &hash)?,
        Command::Evolve => evolve_cmd(cfg, out, &hash)?,
        Command::VerifyGround => verify_ground_cmd(cfg, out, &hash)?,
        Command::VerifyActual => verify_actual_cmd(cfg, out, &hash)?,
        Command::Bounds => bounds_cmd(cfg, out, &hash)?,
        Command::Gap => gap_cmd(cfg, out, &hash)?,
        Command::Sweep => sweep_cmd(cfg, out, &hash)?,
        Command::Figure1 => figure1_cmd(cfg, out, &hash)?,
    };
    fs::write(out.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(code)
}

/// Full CLI entry: parse, load config, apply flag overrides, run. Returns
/// the exit code instead of calling `process::exit` so tests can drive it.
pub fn cli_main() -> i32 {
    use clap::error::ErrorKind;
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    let mut cfg = match &cli.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        },
        None => ExperimentConfig::base(),
    };
    if let Err(e) = apply_cli(&mut cfg, &cli) {
        eprintln!("error: {e}");
        return 1;
    }
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    match run(cli.command, &cfg, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
