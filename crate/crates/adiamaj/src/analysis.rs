//! Verification layer: step-by-step majorization reports for ground and
//! evolved states, growth-bound margins, the fidelity sandwich on partial
//! sums, and oscillation-versus-runtime sweeps.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evolution::{auto_dt, evolve, Trajectory};
use crate::majorization::{
    check_majorization, distribution_from_state, prefix_sums, Distribution, MajorizationVerdict,
    Relation,
};
use crate::model::{ProblemSpec, ScheduleSpec};
use crate::spectrum::{ground_derivatives, ground_state};

/// Fixed additive slack of the sandwich assertion |A_k - B_k| ≤ 2√k·δ.
pub const SANDWICH_SLACK: f64 = 1e-9;

/// Uniform grid of `points` schedule values covering [0, 1].
pub fn uniform_grid(points: usize) -> Vec<f64> {
    assert!(points >= 2, "grid needs at least 2 points");
    (0..points).map(|i| i as f64 / (points - 1) as f64).collect()
}

/// Reporting prefix lengths {1, 2, N/2, N-1}, deduplicated.
pub fn default_k_list(dim: usize) -> Vec<usize> {
    let mut ks = vec![1, 2, dim / 2, dim - 1];
    ks.retain(|&k| k >= 1 && k < dim);
    ks.sort_unstable();
    ks.dedup();
    ks
}

pub(crate) fn normalize_k_list(dim: usize, k_list: &[usize]) -> Result<Vec<usize>> {
    if k_list.is_empty() {
        return Ok(default_k_list(dim));
    }
    let mut ks = k_list.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if ks.iter().any(|&k| k < 1 || k > dim) {
        return Err(Error::InvalidConfig {
            detail: format!("prefix lengths must lie in 1..={dim}"),
        });
    }
    Ok(ks)
}

fn validate_grid(grid: &[f64], interior: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig { detail: "grid must be non-empty".into() });
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig { detail: "grid must be strictly increasing".into() });
    }
    let (lo, hi) = (grid[0], *grid.last().unwrap());
    let ok = if interior { lo > 0.0 && hi < 1.0 } else { (0.0..=1.0).contains(&lo) && hi <= 1.0 };
    if !ok {
        let range = if interior { "(0, 1)" } else { "[0, 1]" };
        return Err(Error::InvalidConfig { detail: format!("grid values must lie in {range}") });
    }
    Ok(())
}

/// Grid-wise record of step-by-step majorization: partial-sum curves at the
/// reporting prefix lengths and one verdict per consecutive grid pair
/// (always over every prefix length, not just the reported ones).
#[derive(Debug, Clone)]
pub struct MajorizationReport {
    pub grid: Vec<f64>,
    pub k_list: Vec<usize>,
    /// curves[j][i] is the partial sum at grid point j, prefix k_list[i].
    pub curves: Vec<Vec<f64>>,
    pub verdicts: Vec<MajorizationVerdict>,
    pub worst_deficit: f64,
    pub violation_count: usize,
}

fn assemble_report(
    grid: Vec<f64>,
    k_list: Vec<usize>,
    distributions: &[Distribution],
    curves: Vec<Vec<f64>>,
    tol: f64,
) -> Result<MajorizationReport> {
    let mut verdicts = Vec::with_capacity(distributions.len().saturating_sub(1));
    for pair in distributions.windows(2) {
        verdicts.push(check_majorization(&pair[0], &pair[1], tol)?);
    }
    let worst_deficit = verdicts.iter().map(|v| v.deficit).fold(0.0, f64::min);
    let violation_count = verdicts.iter().filter(|v| v.relation == Relation::NotMajorized).count();
    Ok(MajorizationReport { grid, k_list, curves, verdicts, worst_deficit, violation_count })
}

/// Checks that consecutive instantaneous ground states majorize their
/// predecessors along the grid. This ordering is exact for the ground path,
/// so the violation count must be zero; the report lets the caller assert it.
pub fn ground_report(
    p: &ProblemSpec,
    grid: &[f64],
    k_list: &[usize],
    tol: f64,
) -> Result<MajorizationReport> {
    validate_grid(grid, false)?;
    let ks = normalize_k_list(p.dim(), k_list)?;
    let mut distributions = Vec::with_capacity(grid.len());
    let mut curves = Vec::with_capacity(grid.len());
    for &s in grid {
        let gs = ground_state(p, s)?;
        curves.push(ks.iter().map(|&k| gs.cumulative[k - 1]).collect());
        distributions.push(Distribution::new(gs.probabilities())?);
    }
    assemble_report(grid.to_vec(), ks, &distributions, curves, tol)
}

/// Same comparison over the evolved state's distributions. Violations are
/// the studied phenomenon and are reported, not errored; the fidelity
/// sandwich |A_k - B_k| ≤ 2√k·δ, however, is asserted hard for every sample
/// and prefix length because a breach means a gauge or integrator bug.
pub fn trajectory_report(traj: &Trajectory, k_list: &[usize], tol: f64) -> Result<MajorizationReport> {
    let Some(first) = traj.states.first() else {
        return Ok(MajorizationReport {
            grid: vec![],
            k_list: k_list.to_vec(),
            curves: vec![],
            verdicts: vec![],
            worst_deficit: 0.0,
            violation_count: 0,
        });
    };
    let dim = first.b.len();
    let ks = normalize_k_list(dim, k_list)?;
    let mut distributions = Vec::with_capacity(traj.states.len());
    let mut curves = Vec::with_capacity(traj.states.len());
    for (idx, state) in traj.states.iter().enumerate() {
        let probs = state.probabilities();
        let cumulative = prefix_sums(&probs);
        let bound_scale = traj.delta[idx];
        for (k, (b_k, a_k)) in cumulative.iter().zip(&traj.ground_cumulative[idx]).enumerate() {
            let gap = (a_k - b_k).abs();
            let bound = 2.0 * ((k + 1) as f64).sqrt() * bound_scale + SANDWICH_SLACK;
            if gap > bound {
                return Err(Error::SandwichViolation { s: state.s, k: k + 1, excess: gap - bound });
            }
        }
        curves.push(ks.iter().map(|&k| cumulative[k - 1]).collect());
        distributions.push(distribution_from_state(&state.b)?);
    }
    assemble_report(
        traj.states.iter().map(|st| st.s).collect(),
        ks,
        &distributions,
        curves,
        tol,
    )
}

/// Independent re-derivation of the sandwich: recomputes the ground partial
/// sums from the problem instead of trusting the trajectory's record, and
/// returns the largest slack consumed, max over samples and k of
/// (|A_k - B_k| - 2√k·δ).
pub fn delta_sandwich_check(traj: &Trajectory, p: &ProblemSpec) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for (idx, state) in traj.states.iter().enumerate() {
        let gs = ground_state(p, state.s.clamp(0.0, 1.0))?;
        let cumulative = prefix_sums(&state.probabilities());
        for (k, (b_k, a_k)) in cumulative.iter().zip(&gs.cumulative).enumerate() {
            let consumed = (a_k - b_k).abs() - 2.0 * ((k + 1) as f64).sqrt() * traj.delta[idx];
            if consumed > worst {
                worst = consumed;
            }
            if consumed > SANDWICH_SLACK {
                return Err(Error::SandwichViolation {
                    s: state.s,
                    k: k + 1,
                    excess: consumed - SANDWICH_SLACK,
                });
            }
        }
    }
    Ok(worst)
}

/// Margins of the ground-state growth bound
/// dA_k/ds ≥ (2c/k)·A_k·(1-A_k) with c = min(m, 1), m the second-smallest
/// canonical cost. A tied minimum makes c = 0 and the bound vacuous.
#[derive(Debug, Clone)]
pub struct BoundMargins {
    pub grid: Vec<f64>,
    pub k_list: Vec<usize>,
    /// margin[j][i] = dA_k/ds - (2c/k)·A_k(1-A_k) at grid[j], k = k_list[i].
    pub margin: Vec<Vec<f64>>,
    pub c: f64,
    pub vacuous: bool,
}

impl BoundMargins {
    /// Smallest margin across the grid and prefix lengths.
    pub fn min_margin(&self) -> f64 {
        self.margin.iter().flatten().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates the growth-bound margins on an interior grid. The prefix
/// length N is excluded (A_N ≡ 1 makes that row identically zero).
pub fn growth_bound_margins(p: &ProblemSpec, grid: &[f64], k_list: &[usize]) -> Result<BoundMargins> {
    validate_grid(grid, true)?;
    let mut ks = normalize_k_list(p.dim(), k_list)?;
    ks.retain(|&k| k < p.dim());
    if ks.is_empty() {
        return Err(Error::InvalidConfig { detail: "no prefix length below N to bound".into() });
    }
    let m = p.second_cost();
    let c = m.min(1.0);
    let vacuous = c == 0.0;
    let mut margin = Vec::with_capacity(grid.len());
    for &s in grid {
        let gs = ground_state(p, s)?;
        let deriv = ground_derivatives(p, s)?;
        let row = ks
            .iter()
            .map(|&k| {
                let a_k = gs.cumulative[k - 1];
                deriv.d_cumulative_ds[k - 1] - (2.0 * c / k as f64) * a_k * (1.0 - a_k)
            })
            .collect();
        margin.push(row);
    }
    Ok(BoundMargins { grid: grid.to_vec(), k_list: ks, margin, c, vacuous })
}

/// Oscillation strength and fidelity deficit as functions of runtime.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub t_list: Vec<f64>,
    /// Per runtime: max over the k-list of the largest consecutive decrease
    /// of B_k on the tail window, clamped at zero.
    pub oscillation_amplitude: Vec<f64>,
    pub max_delta: Vec<f64>,
}

impl SweepResult {
    /// Trend check: amplitudes non-increasing along the runtime list, each
    /// step allowed `slack` relative headroom (plus an absolute epsilon for
    /// exact zeros). A trend, not a guarantee.
    pub fn non_increasing(&self, slack: f64) -> bool {
        self.oscillation_amplitude
            .windows(2)
            .all(|w| w[1] <= w[0] * (1.0 + slack) + 1e-12)
    }
}

/// Inputs of [`oscillation_sweep`]. An empty k-list means the default
/// {1, 2, N/2, N-1}; `dt = None` picks the drift-budget step per runtime.
#[derive(Debug, Clone)]
pub struct SweepParams {
    pub t_list: Vec<f64>,
    pub dt: Option<f64>,
    pub tail_window: (f64, f64),
    pub k_list: Vec<usize>,
    pub grid_points: usize,
    pub parallel: usize,
}

impl SweepParams {
    pub fn new(t_list: Vec<f64>) -> Self {
        Self { t_list, dt: None, tail_window: (0.8, 1.0), k_list: vec![], grid_points: 1001, parallel: 1 }
    }
}

/// Largest consecutive decrease of the index-ordered prefix sums B_k on the
/// tail window, maximized over the prefix lengths.
pub fn tail_oscillation(traj: &Trajectory, k_list: &[usize], tail_window: (f64, f64)) -> f64 {
    let (lo, hi) = tail_window;
    let tail: Vec<Vec<f64>> = traj
        .states
        .iter()
        .filter(|st| st.s >= lo && st.s <= hi)
        .map(|st| prefix_sums(&st.probabilities()))
        .collect();
    let mut worst: f64 = 0.0;
    for pair in tail.windows(2) {
        for &k in k_list {
            worst = worst.max(pair[0][k - 1] - pair[1][k - 1]);
        }
    }
    worst
}

/// Runs one evolution per runtime and measures how the tail oscillation and
/// the fidelity deficit respond to slower schedules.
pub fn oscillation_sweep(p: &ProblemSpec, params: &SweepParams) -> Result<SweepResult> {
    if params.t_list.is_empty() || params.t_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig { detail: "runtime list must be non-empty and increasing".into() });
    }
    let (lo, hi) = params.tail_window;
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
        return Err(Error::InvalidConfig { detail: "tail window must satisfy 0 <= lo < hi <= 1".into() });
    }
    if params.grid_points < 2 {
        return Err(Error::InvalidConfig { detail: "grid needs at least 2 points".into() });
    }
    let ks = normalize_k_list(p.dim(), &params.k_list)?;
    let grid = uniform_grid(params.grid_points);

    let run_one = |&total: &f64| -> Result<(f64, f64)> {
        let sched = ScheduleSpec::linear(total)?;
        let dt = params.dt.unwrap_or_else(|| auto_dt(total, sched.norm_bound(p)));
        let traj = evolve(p, &sched, dt, &grid)?;
        Ok((tail_oscillation(&traj, &ks, params.tail_window), traj.max_delta()))
    };

    let outcomes: Vec<Result<(f64, f64)>> = if params.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.parallel)
            .build()
            .map_err(|e| Error::InvalidConfig { detail: format!("thread pool: {e}") })?;
        pool.install(|| params.t_list.par_iter().map(run_one).collect())
    } else {
        params.t_list.iter().map(run_one).collect()
    };

    let mut oscillation_amplitude = Vec::with_capacity(outcomes.len());
    let mut max_delta = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        let (osc, dlt) = outcome?;
        oscillation_amplitude.push(osc);
        max_delta.push(dlt);
    }
    Ok(SweepResult { t_list: params.t_list.clone(), oscillation_amplitude, max_delta })
}

/// Tail-monotonicity threshold for one prefix length: when the measured
/// max δ stays below δ* = (c/(2k√k))·min_tail A_k(1-A_k)·Δs, consecutive
/// B_k decreases on the tail are impossible. Near the end of the path
/// A_k → 1, so with a unique minimum and a tail touching s = 1 the minimum
/// weight saturates to zero and the premise can never hold; `saturated`
/// flags that case, and `delta_star_unsaturated` reports the threshold over
/// the non-saturated samples for context.
#[derive(Debug, Clone)]
pub struct TailThreshold {
    pub k: usize,
    pub c: f64,
    pub delta_star: f64,
    pub saturated: bool,
    pub delta_star_unsaturated: f64,
    pub max_delta: f64,
    pub premise_holds: bool,
    pub tail_monotone: bool,
    /// The demonstrated statement: premise ⇒ monotone tail.
    pub implication_holds: bool,
}

const SATURATION_FLOOR: f64 = 1e-12;

pub fn tail_threshold(
    traj: &Trajectory,
    p: &ProblemSpec,
    k: usize,
    tail_window: (f64, f64),
) -> Result<TailThreshold> {
    if k < 1 || k > p.dim() {
        return Err(Error::InvalidConfig { detail: format!("prefix length {k} outside 1..={}", p.dim()) });
    }
    let (lo, hi) = tail_window;
    let idx: Vec<usize> = (0..traj.states.len())
        .filter(|&i| traj.states[i].s >= lo && traj.states[i].s <= hi)
        .collect();
    if idx.len() < 2 {
        return Err(Error::InvalidConfig { detail: "tail window holds fewer than two samples".into() });
    }
    let ds = idx
        .windows(2)
        .map(|w| traj.states[w[1]].s - traj.states[w[0]].s)
        .fold(f64::INFINITY, f64::min);
    let c = p.second_cost().min(1.0);
    let scale = c / (2.0 * k as f64 * (k as f64).sqrt());

    let weights: Vec<f64> = idx
        .iter()
        .map(|&i| {
            let a_k = traj.ground_cumulative[i][k - 1];
            a_k * (1.0 - a_k)
        })
        .collect();
    let min_weight = weights.iter().cloned().fold(f64::INFINITY, f64::min);
    let saturated = min_weight <= SATURATION_FLOOR;
    let delta_star = scale * min_weight * ds;
    let unsat_min = weights
        .iter()
        .cloned()
        .filter(|&w| w > SATURATION_FLOOR)
        .fold(f64::INFINITY, f64::min);
    let delta_star_unsaturated =
        if unsat_min.is_finite() { scale * unsat_min * ds } else { 0.0 };

    let curves: Vec<f64> = idx
        .iter()
        .map(|&i| prefix_sums(&traj.states[i].probabilities())[k - 1])
        .collect();
    let tail_monotone = curves.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    let max_delta = traj.max_delta();
    let premise_holds = max_delta < delta_star;
    Ok(TailThreshold {
        k,
        c,
        delta_star,
        saturated,
        delta_star_unsaturated,
        max_delta,
        premise_holds,
        tail_monotone,
        implication_holds: !premise_holds || tail_monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::EvolutionState;
    use num_complex::Complex64;

    #[test]
    fn ground_curves_flat_for_constant_cost() {
        let constant = ProblemSpec::new(vec![2.0; 4]).unwrap();
        let grid = uniform_grid(11);
        let report = ground_report(&constant, &grid, &[], 1e-9).unwrap();
        assert_eq!(report.violation_count, 0);
        assert_eq!(report.k_list, vec![1, 2, 3]);
        for row in &report.curves {
            for (v, k) in row.iter().zip(&report.k_list) {
                assert!((v - *k as f64 / 4.0).abs() < 1e-12);
            }
        }
        for v in &report.verdicts {
            assert!(v.holds());
            assert!(v.deficit.abs() < 1e-12);
        }
    }

    #[test]
    fn two_level_leading_sum_climbs_monotonically() {
        let p = ProblemSpec::new(vec![0.0, 1.0]).unwrap();
        let grid = uniform_grid(101);
        let report = ground_report(&p, &grid, &[1], 1e-9).unwrap();
        assert_eq!(report.violation_count, 0);
        assert!((report.curves[0][0] - 0.5).abs() < 1e-12);
        assert!((report.curves[100][0] - 1.0).abs() < 1e-12);
        for pair in report.curves.windows(2) {
            assert!(pair[1][0] > pair[0][0] - 1e-15);
        }
    }

    #[test]
    fn random_ground_paths_have_no_violations() {
        for seed in [1, 2, 3] {
            let p = ProblemSpec::random_int(5, seed).unwrap();
            let report = ground_report(&p, &uniform_grid(101), &[], 1e-9).unwrap();
            assert_eq!(report.violation_count, 0, "seed {seed}");
            assert!(report.worst_deficit >= -1e-9);
        }
    }

    #[test]
    fn short_runtime_trajectory_breaks_majorization_but_not_sandwich() {
        let p = ProblemSpec::grover(5, 0).unwrap();
        let sched = ScheduleSpec::linear(10.0).unwrap();
        let traj = evolve(&p, &sched, auto_dt(10.0, 1.0), &uniform_grid(1001)).unwrap();
        let report = trajectory_report(&traj, &[], 1e-9).unwrap();
        assert!(report.violation_count > 0);
        assert!(report.worst_deficit < -1e-9);
        let slack = delta_sandwich_check(&traj, &p).unwrap();
        assert!(slack <= SANDWICH_SLACK);
    }

    #[test]
    fn exact_ground_trajectory_passes_sandwich_with_zero_slack() {
        let p = ProblemSpec::random_int(4, 9).unwrap();
        let grid = uniform_grid(21);
        let mut states = Vec::new();
        let mut delta = Vec::new();
        let mut ground_cumulative = Vec::new();
        for &s in &grid {
            let gs = ground_state(&p, s).unwrap();
            states.push(EvolutionState {
                time: s,
                s,
                b: gs.a.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
                norm: 1.0,
            });
            delta.push(0.0);
            ground_cumulative.push(gs.cumulative.clone());
        }
        let traj = Trajectory {
            fidelity: vec![1.0; states.len()],
            delta,
            ground_cumulative,
            norm_drift: 0.0,
            step_size: 1.0,
            states,
        };
        let report = trajectory_report(&traj, &[], 1e-9).unwrap();
        assert_eq!(report.violation_count, 0);
        let slack = delta_sandwich_check(&traj, &p).unwrap();
        assert!(slack <= 1e-12);
    }

    #[test]
    fn empty_trajectory_yields_empty_report() {
        let traj = Trajectory {
            states: vec![],
            fidelity: vec![],
            delta: vec![],
            ground_cumulative: vec![],
            norm_drift: 0.0,
            step_size: 1.0,
        };
        let report = trajectory_report(&traj, &[1], 1e-9).unwrap();
        assert!(report.verdicts.is_empty());
        assert_eq!(report.violation_count, 0);
    }

    #[test]
    fn growth_margins_positive_for_two_level() {
        let p = ProblemSpec::new(vec![0.0, 1.0]).unwrap();
        let grid: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
        let bounds = growth_bound_margins(&p, &grid, &[]).unwrap();
        assert!(!bounds.vacuous);
        assert_eq!(bounds.c, 1.0);
        assert_eq!(bounds.k_list, vec![1]);
        assert!(bounds.min_margin() > 0.0);
        let mid = bounds.margin[9][0];
        assert!((mid - (0.7071067811865475 - 0.25)).abs() < 1e-9);
    }

    #[test]
    fn tied_minimum_reports_vacuous() {
        let tied = ProblemSpec::new(vec![1.0, 3.0, 1.0, 2.0]).unwrap();
        let grid: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
        let bounds = growth_bound_margins(&tied, &grid, &[]).unwrap();
        assert!(bounds.vacuous);
        assert_eq!(bounds.c, 0.0);

        let constant = ProblemSpec::new(vec![5.0; 4]).unwrap();
        let bounds = growth_bound_margins(&constant, &grid, &[]).unwrap();
        assert!(bounds.vacuous);
    }

    #[test]
    fn sweep_amplitudes_fall_with_runtime() {
        let p = ProblemSpec::grover(5, 0).unwrap();
        let mut params = SweepParams::new(vec![150.0, 300.0, 600.0]);
        params.grid_points = 51;
        params.parallel = 2;
        let sweep = oscillation_sweep(&p, &params).unwrap();
        assert!(sweep.non_increasing(0.1), "amplitudes {:?}", sweep.oscillation_amplitude);
        assert!(sweep.oscillation_amplitude[0] > sweep.oscillation_amplitude[2]);
        for pair in sweep.max_delta.windows(2) {
            assert!(pair[1] < pair[0]);
        }

        let single = oscillation_sweep(&p, &SweepParams { grid_points: 21, ..SweepParams::new(vec![20.0]) }).unwrap();
        assert_eq!(single.oscillation_amplitude.len(), 1);
        assert!(single.non_increasing(0.1));
    }

    fn synthetic_tail(b1: &[f64], a1: f64, delta: f64) -> Trajectory {
        let states: Vec<EvolutionState> = b1
            .iter()
            .enumerate()
            .map(|(i, &v)| EvolutionState {
                time: i as f64,
                s: 0.85 + 0.05 * i as f64,
                b: vec![Complex64::new(v.sqrt(), 0.0), Complex64::new((1.0 - v).sqrt(), 0.0)],
                norm: 1.0,
            })
            .collect();
        let n = states.len();
        Trajectory {
            fidelity: vec![1.0; n],
            delta: vec![delta; n],
            ground_cumulative: vec![vec![a1, 1.0]; n],
            norm_drift: 0.0,
            step_size: 1.0,
            states,
        }
    }

    #[test]
    fn threshold_implication_branches() {
        let p = ProblemSpec::new(vec![0.0, 1.0]).unwrap();

        let monotone = synthetic_tail(&[0.70, 0.80, 0.90], 0.5, 1e-9);
        let th = tail_threshold(&monotone, &p, 1, (0.8, 1.0)).unwrap();
        assert!(!th.saturated);
        assert!((th.delta_star - 0.5 * 0.25 * 0.05).abs() < 1e-12);
        assert!(th.premise_holds && th.tail_monotone && th.implication_holds);

        let dipping = synthetic_tail(&[0.70, 0.80, 0.75], 0.5, 1e-9);
        let th = tail_threshold(&dipping, &p, 1, (0.8, 1.0)).unwrap();
        assert!(th.premise_holds && !th.tail_monotone && !th.implication_holds);

        let saturated = synthetic_tail(&[0.70, 0.80, 0.75], 1.0, 1e-9);
        let th = tail_threshold(&saturated, &p, 1, (0.8, 1.0)).unwrap();
        assert!(th.saturated);
        assert_eq!(th.delta_star, 0.0);
        assert!(!th.premise_holds && th.implication_holds);

        let big_delta = synthetic_tail(&[0.70, 0.80, 0.75], 0.5, 0.3);
        let th = tail_threshold(&big_delta, &p, 1, (0.8, 1.0)).unwrap();
        assert!(!th.premise_holds && th.implication_holds);
    }
}
