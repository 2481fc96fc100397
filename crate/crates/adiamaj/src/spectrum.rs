//! Instantaneous ground states of H(s) in closed form.
//!
//! For H(s) = (1-s)(I - |α⟩⟨α|) + s·diag(f) with canonical f (min 0,
//! ascending), the ground eigenvalue λ(s) is encoded by the secular root
//! t(s) = 1 - s - λ(s): the positive solution of
//!
//! ```text
//! (1-s)/N · Σ_i 1/(t + s·f_i) = 1.
//! ```
//!
//! The function on the left is strictly decreasing in t on (0, ∞), exceeds 1
//! at t = (1-s)/N already from the f_i = 0 term, and is at most 1-s at t = 1,
//! so the root is bracketed and bisection cannot fail. Ground amplitudes are
//! a_i ∝ t/(t + s·f_i), positive and descending. Derivatives in s come from
//! implicit differentiation of the same equation.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::majorization::prefix_sums;
use crate::model::{ProblemSpec, ScheduleKind, ScheduleSpec};

const ROOT_RESIDUAL_TOL: f64 = 1e-13;
const BRACKET_WIDTH_TOL: f64 = 1e-15;
const ORACLE_RESIDUAL_TOL: f64 = 1e-9;

/// Instantaneous ground state at one schedule value.
#[derive(Debug, Clone)]
pub struct GroundStateSolution {
    pub s: f64,
    /// Secular root t = 1 - s - λ; decreases strictly from 1 at s = 0 to 0
    /// at s = 1.
    pub t: f64,
    /// Ground eigenvalue of the canonical H(s); add s·shift for the
    /// caller's original costs.
    pub lambda: f64,
    /// Positive amplitudes in canonical order, descending because f ascends.
    pub a: Vec<f64>,
    /// Partial sums A_k = Σ_{i≤k} a_i²; A_N = 1.
    pub cumulative: Vec<f64>,
}

impl GroundStateSolution {
    /// Squared amplitudes in canonical order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.a.iter().map(|v| v * v).collect()
    }

    /// Checks the construction invariants; used by tests and the oracle path.
    pub fn validate(&self) -> Result<()> {
        let norm2: f64 = neumaier(self.a.iter().map(|v| v * v));
        if (norm2 - 1.0).abs() > 1e-10 {
            return Err(Error::Norm { norm: norm2.sqrt(), tol: 1e-10 });
        }
        if self.a.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidConfig { detail: "amplitudes not descending".into() });
        }
        Ok(())
    }
}

/// First-order response of the ground state to the schedule value.
#[derive(Debug, Clone)]
pub struct GroundDerivatives {
    pub dt_ds: f64,
    /// d(s/t)/ds, the positive rate at which the amplitude ratios sharpen.
    pub ratio_slope: f64,
    /// dA_k/ds for every prefix length k.
    pub d_cumulative_ds: Vec<f64>,
}

/// Two lowest eigenpairs from the dense oracle. Eigenvalues refer to the
/// caller's original costs (canonical values plus s·shift); eigenvectors are
/// in canonical order with the ground sign fixed by Σ v0 > 0.
#[derive(Debug, Clone)]
pub struct OracleEigenpair {
    pub e0: f64,
    pub e1: f64,
    pub v0: Vec<f64>,
    pub v1: Vec<f64>,
}

/// Gap and drive statistics along a schedule.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub s_grid: Vec<f64>,
    pub e0: Vec<f64>,
    pub e1: Vec<f64>,
    pub g_min: f64,
    pub d_max: f64,
    /// D_max / g_min², the adiabatic runtime scale.
    pub epsilon_bound: f64,
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn secular_parts(p: &ProblemSpec, s: f64, t: f64) -> (f64, f64) {
    let pref = (1.0 - s) / p.dim() as f64;
    let phi = pref * neumaier(p.f.iter().map(|&fi| 1.0 / (t + s * fi)));
    let slope = -pref * neumaier(p.f.iter().map(|&fi| (t + s * fi).powi(-2)));
    (phi, slope)
}

/// Residual φ(t) - 1 of the secular equation; strictly decreasing in t.
pub fn secular_residual(p: &ProblemSpec, s: f64, t: f64) -> Result<f64> {
    assert!((0.0..1.0).contains(&s), "schedule value {s} outside [0, 1)");
    if t <= 0.0 {
        return Err(Error::Domain { t });
    }
    Ok(secular_parts(p, s, t).0 - 1.0)
}

/// Solves the secular equation for t(s). Exact at the endpoints (t(0) = 1,
/// t(1) = 0); elsewhere bracketed bisection to width 1e-12 followed by a
/// Newton polish kept inside the bracket.
pub fn solve_t(p: &ProblemSpec, s: f64) -> Result<f64> {
    assert!((0.0..=1.0).contains(&s), "schedule value {s} outside [0, 1]");
    if s == 0.0 {
        return Ok(1.0);
    }
    if s == 1.0 {
        return Ok(0.0);
    }
    let mut lo = (1.0 - s) / (2.0 * p.dim() as f64);
    let mut hi = 1.0;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if secular_parts(p, s, mid).0 > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..12 {
        let (phi, slope) = secular_parts(p, s, t);
        let residual = phi - 1.0;
        if residual.abs() <= ROOT_RESIDUAL_TOL {
            return Ok(t);
        }
        if residual > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= BRACKET_WIDTH_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let next = t - residual / slope;
        t = if next <= lo || next >= hi { 0.5 * (lo + hi) } else { next };
    }
    let residual = secular_parts(p, s, t).0 - 1.0;
    if residual.abs() <= ROOT_RESIDUAL_TOL || hi - lo <= BRACKET_WIDTH_TOL {
        Ok(t)
    } else {
        Err(Error::ConvergenceFailure { s, residual })
    }
}

/// Closed-form instantaneous ground state. Amplitudes are computed as ratios
/// r_i = t/(t + s·f_i) against the dominant first component, so concentration
/// near s = 1 never overflows; at s = 1 the limit is the uniform vector over
/// the argmin set of f.
pub fn ground_state(p: &ProblemSpec, s: f64) -> Result<GroundStateSolution> {
    assert!((0.0..=1.0).contains(&s), "schedule value {s} outside [0, 1]");
    let dim = p.dim();
    if s == 1.0 {
        let z = p.min_multiplicity();
        let amp = 1.0 / (z as f64).sqrt();
        let a: Vec<f64> = (0..dim).map(|i| if i < z { amp } else { 0.0 }).collect();
        let cumulative = prefix_sums(&a.iter().map(|v| v * v).collect::<Vec<_>>());
        return Ok(GroundStateSolution { s, t: 0.0, lambda: 0.0, a, cumulative });
    }
    let t = solve_t(p, s)?;
    let mut a: Vec<f64> = p.f.iter().map(|&fi| t / (t + s * fi)).collect();
    let norm = neumaier(a.iter().map(|v| v * v)).sqrt();
    for v in &mut a {
        *v /= norm;
    }
    let cumulative = prefix_sums(&a.iter().map(|v| v * v).collect::<Vec<_>>());
    Ok(GroundStateSolution { s, t, lambda: 1.0 - s - t, a, cumulative })
}

/// Analytic derivatives dt/ds and dA_k/ds by implicit differentiation of the
/// secular equation. With d_i = t + s·f_i and S1 = Σ 1/d_i, S2 = Σ 1/d_i²,
/// S2f = Σ f_i/d_i²:
///
/// ```text
/// dt/ds = -(S1 + (1-s)·S2f) / ((1-s)·S2)
/// ```
///
/// and dA_k/ds = 2·(A_k·G_N - G_k) where G_k = Σ_{i≤k} a_i²·g_i with
/// g_i = f_i·u/(1 + (s/t)·f_i) and u = d(s/t)/ds = (t - s·dt/ds)/t².
pub fn ground_derivatives(p: &ProblemSpec, s: f64) -> Result<GroundDerivatives> {
    assert!(s > 0.0 && s < 1.0, "derivatives need interior s, got {s}");
    let gs = ground_state(p, s)?;
    let t = gs.t;
    let s1 = neumaier(p.f.iter().map(|&fi| 1.0 / (t + s * fi)));
    let s2 = neumaier(p.f.iter().map(|&fi| (t + s * fi).powi(-2)));
    let s2f = neumaier(p.f.iter().map(|&fi| fi / (t + s * fi).powi(2)));
    let dt_ds = -(s1 + (1.0 - s) * s2f) / ((1.0 - s) * s2);
    let ratio_slope = (t - s * dt_ds) / (t * t);
    let ratio = s / t;
    let mut g_prefix = Vec::with_capacity(p.dim());
    let mut acc = 0.0;
    for (&ai, &fi) in gs.a.iter().zip(&p.f) {
        acc += ai * ai * fi * ratio_slope / (1.0 + ratio * fi);
        g_prefix.push(acc);
    }
    let g_total = *g_prefix.last().unwrap();
    let d_cumulative_ds = gs
        .cumulative
        .iter()
        .zip(&g_prefix)
        .map(|(&ak, &gk)| 2.0 * (ak * g_total - gk))
        .collect();
    Ok(GroundDerivatives { dt_ds, ratio_slope, d_cumulative_ds })
}

/// The threshold index of the amplitude sign-change pattern between s and
/// s + ds: amplitudes at or below it do not shrink, amplitudes above it do.
/// Returns the 1-based index (0 when every amplitude shrinks, which cannot
/// happen for normalized states) and verifies the single-crossing shape.
pub fn crossing_index(p: &ProblemSpec, s: f64, ds: f64) -> Result<usize> {
    assert!(s > 0.0 && ds > 0.0 && s + ds <= 1.0, "need 0 < s and s + ds <= 1");
    let now = ground_state(p, s)?;
    let next = ground_state(p, s + ds)?;
    let diff: Vec<f64> = next.a.iter().zip(&now.a).map(|(n, c)| n - c).collect();
    let i0 = diff.iter().rposition(|&d| d >= 0.0).map_or(0, |i| i + 1);
    for (i, &d) in diff.iter().enumerate().take(i0) {
        if d < -1e-12 {
            return Err(Error::SignPatternViolation { s, index: i + 1 });
        }
    }
    Ok(i0)
}

/// Dense symmetric eigensolve of the two lowest eigenpairs, the independent
/// check on the secular path. The residual ‖Hv - Ev‖ ≤ 1e-9·max(1, ‖H(s)‖)
/// is enforced post-hoc so the oracle itself is trustworthy; the scale factor
/// reflects that backward error in a symmetric eigensolve grows with the
/// matrix norm, not with the eigenvalue alone.
pub fn dense_spectrum_oracle(p: &ProblemSpec, s: f64) -> Result<OracleEigenpair> {
    let handle = p.hamiltonian(s);
    let h = handle.dense()?;
    let scale = handle.norm_bound().max(1.0);
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    let eig = SymmetricEigen::new(h.clone());
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let (i0, i1) = (order[0], order[1]);
    let mut pairs = Vec::with_capacity(2);
    for idx in [i0, i1] {
        let mut e = eig.eigenvalues[idx];
        let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().cloned().collect();
        refine_eigenpair(&h, scale, &mut e, &mut v);
        let residual = residual_norm(&h, e, &v);
        if residual > ORACLE_RESIDUAL_TOL * scale {
            return Err(Error::EigensolveFailure { s, residual });
        }
        pairs.push((e, v));
    }
    let (e0, mut v0) = pairs.remove(0);
    let (e1, mut v1) = pairs.remove(0);
    if v0.iter().sum::<f64>() < 0.0 {
        v0.iter_mut().for_each(|x| *x = -*x);
    }
    let lead = v1
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    if v1[lead] < 0.0 {
        v1.iter_mut().for_each(|x| *x = -*x);
    }
    let offset = s * p.shift;
    Ok(OracleEigenpair { e0: e0 + offset, e1: e1 + offset, v0, v1 })
}

/// Rayleigh-quotient inverse iteration, polishing an eigenpair from the QR
/// sweep down to residuals near machine precision relative to ‖H‖. Needed
/// because eigenvector error from the sweep alone scales as residual/gap and
/// can exceed the oracle comparison tolerances when the gap is small.
fn refine_eigenpair(h: &DMatrix<f64>, scale: f64, e: &mut f64, v: &mut [f64]) {
    let dim = v.len();
    for _ in 0..3 {
        if residual_norm(h, *e, v) <= 1e-14 * scale {
            return;
        }
        let mut shifted = h.clone();
        for i in 0..dim {
            shifted[(i, i)] -= *e;
        }
        let rhs = DVector::from_column_slice(v);
        let Some(x) = shifted.lu().solve(&rhs) else { return };
        let norm = x.norm();
        if !norm.is_finite() || norm == 0.0 {
            return;
        }
        let y = x / norm;
        let rayleigh = y.dot(&(h * &y));
        if !rayleigh.is_finite() {
            return;
        }
        *e = rayleigh;
        v.copy_from_slice(y.as_slice());
    }
}

fn residual_norm(h: &DMatrix<f64>, e: f64, v: &[f64]) -> f64 {
    let dim = v.len();
    let mut acc = 0.0;
    for i in 0..dim {
        let mut r = -e * v[i];
        for j in 0..dim {
            r += h[(i, j)] * v[j];
        }
        acc += r * r;
    }
    acc.sqrt()
}

/// Sweeps the oracle over a schedule grid: two lowest eigenvalue curves, the
/// minimum gap, and the largest drive matrix element
/// D_max = max |⟨E1| (ds/dt)·(H1 - H0) |E0⟩|.
pub fn spectral_report(p: &ProblemSpec, sched: &ScheduleSpec, grid: &[f64]) -> Result<SpectralReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig { detail: "grid must be non-empty and strictly increasing".into() });
    }
    if !(0.0..=1.0).contains(&grid[0]) || *grid.last().unwrap() > 1.0 {
        return Err(Error::InvalidConfig { detail: "grid values must lie in [0, 1]".into() });
    }
    let dim = p.dim();
    let mut e0 = Vec::with_capacity(grid.len());
    let mut e1 = Vec::with_capacity(grid.len());
    let mut g_min = f64::INFINITY;
    let mut d_max: f64 = 0.0;
    for &s in grid {
        let pair = dense_spectrum_oracle(p, s)?;
        let gap = pair.e1 - pair.e0;
        g_min = g_min.min(gap);
        let time = sched.time_at(s)?;
        let (_, rate, _) = sched.eval(time)?;
        let mean: f64 = pair.v0.iter().sum::<f64>() / dim as f64;
        let element: f64 = (0..dim)
            .map(|i| pair.v1[i] * (p.f[i] * pair.v0[i] - pair.v0[i] + mean))
            .sum();
        d_max = d_max.max((rate * element).abs());
        e0.push(pair.e0);
        e1.push(pair.e1);
    }
    let epsilon_bound = d_max / (g_min * g_min);
    Ok(SpectralReport { s_grid: grid.to_vec(), e0, e1, g_min, d_max, epsilon_bound })
}

impl ScheduleSpec {
    /// Inverse lookup: the physical time at which the schedule reaches `s`.
    pub fn time_at(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::TimeOutOfRange { time: s, total: 1.0 });
        }
        match &self.kind {
            ScheduleKind::Linear => Ok(s * self.total_time),
            ScheduleKind::Tabulated(points) => {
                let seg = points.partition_point(|&(_, ps)| ps <= s).clamp(1, points.len() - 1);
                let (t0, s0) = points[seg - 1];
                let (t1, s1) = points[seg];
                Ok(t0 + (s - s0) * (t1 - t0) / (s1 - s0))
            }
            ScheduleKind::Interpolation { .. } => {
                let mut lo = 0.0;
                let mut hi = self.total_time;
                for _ in 0..200 {
                    if hi - lo <= 1e-13 * self.total_time {
                        break;
                    }
                    let mid = 0.5 * (lo + hi);
                    if self.eval(mid)?.0 < s {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Ok(0.5 * (lo + hi))
            }
        }
    }
}
