//! Problem definition and Hamiltonian structure.
//!
//! The operator family is H(s) = (1-s)·H0 + s·H1 with H0 = I - |α⟩⟨α| (the
//! projector complement of the uniform state) and H1 = diag(f). Costs are
//! canonicalized on construction: shifted so min f = 0 and sorted ascending,
//! with the permutation recorded so results can be mapped back to the
//! caller's labels. The shift moves eigenvalues by s·shift and leaves
//! eigenvectors alone; the sort is a relabeling.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest dimension the dense oracle path will accept.
pub const ORACLE_CEILING: usize = 1 << 12;

/// Cost function over N = 2^n basis labels in canonical form.
///
/// Fields are read-only after construction; mutating them breaks the
/// canonical-form invariants (f[0] = 0, f ascending, perm consistent).
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    /// Qubit count; the dimension is N = 2^n.
    pub n: u32,
    /// Costs as supplied by the caller.
    pub f_raw: Vec<f64>,
    /// Canonical costs: shifted so the minimum is 0, sorted ascending.
    pub f: Vec<f64>,
    /// Subtracted minimum of `f_raw`.
    pub shift: f64,
    /// Sorted position i holds original index `perm[i]`:
    /// f[i] = f_raw[perm[i]] - shift.
    pub perm: Vec<usize>,
    /// Soft poly(n) guard: true when max canonical cost exceeds the ceiling.
    pub ceiling_exceeded: bool,
}

impl ProblemSpec {
    /// Canonicalizes a raw cost vector. The poly(n) ceiling (default n^3) is
    /// a soft guard: exceeding it only sets `ceiling_exceeded`.
    pub fn new(f_raw: Vec<f64>) -> Result<Self> {
        Self::with_ceiling(f_raw, None, false)
    }

    /// As [`ProblemSpec::new`] with an explicit ceiling; `strict` upgrades the
    /// soft guard to a `CeilingExceeded` error.
    pub fn with_ceiling(f_raw: Vec<f64>, ceiling: Option<f64>, strict: bool) -> Result<Self> {
        let len = f_raw.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { len });
        }
        if let Some(idx) = f_raw.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCost { index: idx });
        }
        let n = len.trailing_zeros();
        let shift = f_raw.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut perm: Vec<usize> = (0..len).collect();
        perm.sort_by(|&i, &j| f_raw[i].partial_cmp(&f_raw[j]).unwrap().then(i.cmp(&j)));
        let f: Vec<f64> = perm.iter().map(|&i| f_raw[i] - shift).collect();
        let ceiling = ceiling.unwrap_or((n as f64).powi(3));
        let max_f = *f.last().unwrap();
        let ceiling_exceeded = max_f > ceiling;
        if strict && ceiling_exceeded {
            return Err(Error::CeilingExceeded { max: max_f, ceiling });
        }
        Ok(Self { n, f_raw, f, shift, perm, ceiling_exceeded })
    }

    /// Search family: cost 0 at `marked`, 1 elsewhere.
    pub fn grover(n: u32, marked: usize) -> Result<Self> {
        let dim = 1usize << n;
        if marked >= dim {
            return Err(Error::InvalidConfig {
                detail: format!("marked index {marked} outside 0..{dim}"),
            });
        }
        let mut f = vec![1.0; dim];
        f[marked] = 0.0;
        Self::new(f)
    }

    /// Seeded family with integer costs in [0, n^3] and at least one zero.
    pub fn random_int(n: u32, seed: u64) -> Result<Self> {
        let dim = 1usize << n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hi = (n as i64).pow(3).max(1);
        let mut f: Vec<f64> = (0..dim).map(|_| rng.gen_range(0..=hi) as f64).collect();
        let zero_at = rng.gen_range(0..dim);
        f[zero_at] = 0.0;
        Self::new(f)
    }

    /// Seeded family with a unique minimum: one zero, integer costs in
    /// [1, n^3] everywhere else.
    pub fn random_int_unique(n: u32, seed: u64) -> Result<Self> {
        let dim = 1usize << n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hi = (n as i64).pow(3).max(1);
        let mut f: Vec<f64> = (0..dim).map(|_| rng.gen_range(1..=hi) as f64).collect();
        let zero_at = rng.gen_range(0..dim);
        f[zero_at] = 0.0;
        Self::new(f)
    }

    /// Dimension N = 2^n.
    pub fn dim(&self) -> usize {
        self.f.len()
    }

    /// Number of canonical costs equal to the minimum (size of the argmin set).
    pub fn min_multiplicity(&self) -> usize {
        self.f.iter().take_while(|&&v| v == 0.0).count()
    }

    /// Second-smallest canonical cost, the constant m of the growth bound;
    /// zero when the minimum is tied.
    pub fn second_cost(&self) -> f64 {
        self.f[1]
    }

    /// Read-only view of H(s) at a fixed schedule value.
    pub fn hamiltonian(&self, s: f64) -> OperatorHandle<'_> {
        assert!((0.0..=1.0).contains(&s), "schedule value {s} outside [0, 1]");
        OperatorHandle { problem: self, s }
    }
}

/// H(s) for one schedule value, acting through the rank-one-plus-diagonal
/// structure. Cheap to construct; immutable view.
#[derive(Debug, Clone, Copy)]
pub struct OperatorHandle<'a> {
    pub problem: &'a ProblemSpec,
    pub s: f64,
}

impl OperatorHandle<'_> {
    /// Applies H(s) in O(N) without forming a matrix:
    /// (1-s)·(v - mean(v)) + s·(f ⊙ v).
    pub fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let dim = self.problem.dim();
        if v.len() != dim || out.len() != dim {
            return Err(Error::LengthMismatch { left: v.len(), right: dim });
        }
        let s = self.s;
        let mean = v.iter().sum::<Complex64>() / dim as f64;
        for ((o, &vi), &fi) in out.iter_mut().zip(v).zip(&self.problem.f) {
            *o = (1.0 - s) * (vi - mean) + s * fi * vi;
        }
        Ok(())
    }

    /// Allocating convenience wrapper around [`OperatorHandle::apply_into`].
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::ZERO; self.problem.dim()];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    /// Applies H1 - H0 = diag(f) - I + |α⟩⟨α| in O(N), the schedule direction
    /// of dH/dt for the linear path.
    pub fn apply_drive_into(&self, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let dim = self.problem.dim();
        if v.len() != dim || out.len() != dim {
            return Err(Error::LengthMismatch { left: v.len(), right: dim });
        }
        let mean = v.iter().sum::<Complex64>() / dim as f64;
        for ((o, &vi), &fi) in out.iter_mut().zip(v).zip(&self.problem.f) {
            *o = fi * vi - vi + mean;
        }
        Ok(())
    }

    /// Dense symmetric matrix for the oracle path:
    /// entry (i, j) = (1-s)(δ_ij - 1/N) + s·f(i)·δ_ij.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        let dim = self.problem.dim();
        if dim > ORACLE_CEILING {
            return Err(Error::OracleTooLarge { dim, ceiling: ORACLE_CEILING });
        }
        let s = self.s;
        let off = -(1.0 - s) / dim as f64;
        let mut h = DMatrix::from_element(dim, dim, off);
        for i in 0..dim {
            h[(i, i)] += 1.0 - s + s * self.problem.f[i];
        }
        Ok(h)
    }

    /// Upper bound on the operator norm, used for integrator step control:
    /// (1-s) + s·max f.
    pub fn norm_bound(&self) -> f64 {
        let max_f = *self.problem.f.last().unwrap();
        (1.0 - self.s) + self.s * max_f
    }
}

/// Path from H0 to H1 parameterized by physical time in [0, T].
#[derive(Clone)]
pub struct ScheduleSpec {
    pub kind: ScheduleKind,
    /// Total runtime in units of 1/energy.
    pub total_time: f64,
}

#[derive(Clone)]
pub enum ScheduleKind {
    /// s(t) = t/T.
    Linear,
    /// Piecewise-linear interpolation through strictly increasing (t, s)
    /// knots from (0, 0) to (T, 1).
    Tabulated(Vec<(f64, f64)>),
    /// H(t) = f(t)·H0 + g(t)·H1; the eigenvectors depend only on
    /// σ = g/(f+g) while the dynamics feel the scale f+g.
    Interpolation {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for ScheduleKind {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleKind::Linear => w.write_str("Linear"),
            ScheduleKind::Tabulated(pts) => w.debug_tuple("Tabulated").field(pts).finish(),
            ScheduleKind::Interpolation { .. } => w.write_str("Interpolation"),
        }
    }
}

const INTERP_VALIDATION_SAMPLES: usize = 1001;

impl ScheduleSpec {
    pub fn linear(total_time: f64) -> Result<Self> {
        if !(total_time.is_finite() && total_time > 0.0) {
            return Err(Error::InvalidConfig { detail: format!("runtime T = {total_time} must be positive") });
        }
        Ok(Self { kind: ScheduleKind::Linear, total_time })
    }

    /// Validates that the knots start at (0, 0), end at (T, 1), and are
    /// strictly increasing in both coordinates.
    pub fn tabulated(total_time: f64, points: Vec<(f64, f64)>) -> Result<Self> {
        if !(total_time.is_finite() && total_time > 0.0) || points.len() < 2 {
            return Err(Error::InvalidConfig {
                detail: "tabulated schedule needs T > 0 and at least two knots".into(),
            });
        }
        let first = points[0];
        let last = *points.last().unwrap();
        if first != (0.0, 0.0) || (last.0 - total_time).abs() > 1e-12 || (last.1 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig {
                detail: "tabulated schedule must run from (0, 0) to (T, 1)".into(),
            });
        }
        for pair in points.windows(2) {
            if pair[1].0 <= pair[0].0 || pair[1].1 <= pair[0].1 {
                return Err(Error::NonMonotoneSchedule { time: pair[1].0 });
            }
        }
        Ok(Self { kind: ScheduleKind::Tabulated(points), total_time })
    }

    /// Accepts an interpolation pair only when the sampled σ = g/(f+g) runs
    /// strictly from 0 to 1 with f+g positive throughout.
    pub fn interpolation(
        total_time: f64,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    ) -> Result<Self> {
        if !(total_time.is_finite() && total_time > 0.0) {
            return Err(Error::InvalidConfig { detail: "runtime T must be positive".into() });
        }
        let sigma = |t: f64| {
            let fv = f(t);
            let gv = g(t);
            (gv / (fv + gv), fv + gv)
        };
        let (s0, _) = sigma(0.0);
        let (s1, _) = sigma(total_time);
        if s0.abs() > 1e-9 || (s1 - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig {
                detail: format!("interpolation path runs from σ = {s0} to {s1}, expected 0 to 1"),
            });
        }
        let mut prev = s0;
        for i in 1..INTERP_VALIDATION_SAMPLES {
            let t = total_time * i as f64 / (INTERP_VALIDATION_SAMPLES - 1) as f64;
            let (s, scale) = sigma(t);
            if !(scale.is_finite() && scale > 0.0) || !s.is_finite() {
                return Err(Error::InvalidConfig {
                    detail: format!("interpolation scale f+g = {scale} at t = {t} must be positive"),
                });
            }
            if s <= prev {
                return Err(Error::NonMonotoneSchedule { time: t });
            }
            prev = s;
        }
        Ok(Self { kind: ScheduleKind::Interpolation { f, g }, total_time })
    }

    /// Evaluates the schedule at a physical time: returns (s, rate, scale)
    /// with rate = ds/dt and scale the energy prefactor multiplying the
    /// normalized Hamiltonian (1 except for interpolation paths).
    pub fn eval(&self, time: f64) -> Result<(f64, f64, f64)> {
        let total = self.total_time;
        let slack = 1e-9 * total;
        if !(-slack..=total + slack).contains(&time) {
            return Err(Error::TimeOutOfRange { time, total });
        }
        let t = time.clamp(0.0, total);
        match &self.kind {
            ScheduleKind::Linear => Ok((t / total, 1.0 / total, 1.0)),
            ScheduleKind::Tabulated(points) => {
                let seg = points.partition_point(|&(pt, _)| pt <= t).clamp(1, points.len() - 1);
                let (t0, s0) = points[seg - 1];
                let (t1, s1) = points[seg];
                let slope = (s1 - s0) / (t1 - t0);
                Ok((s0 + slope * (t - t0), slope, 1.0))
            }
            ScheduleKind::Interpolation { f, g } => {
                let sigma = |t: f64| {
                    let fv = f(t);
                    let gv = g(t);
                    (gv / (fv + gv), fv + gv)
                };
                let (s, scale) = sigma(t);
                let h = total * 1e-7;
                let lo = (t - h).max(0.0);
                let hi = (t + h).min(total);
                let rate = (sigma(hi).0 - sigma(lo).0) / (hi - lo);
                Ok((s.clamp(0.0, 1.0), rate, scale))
            }
        }
    }

    /// Upper bound on scale(t)·‖H(s(t))‖ along the path, for step control.
    pub fn norm_bound(&self, problem: &ProblemSpec) -> f64 {
        let max_f = *problem.f.last().unwrap();
        match &self.kind {
            ScheduleKind::Linear | ScheduleKind::Tabulated(_) => max_f.max(1.0),
            ScheduleKind::Interpolation { .. } => {
                let mut bound: f64 = 0.0;
                for i in 0..INTERP_VALIDATION_SAMPLES {
                    let t = self.total_time * i as f64 / (INTERP_VALIDATION_SAMPLES - 1) as f64;
                    let (s, _, scale) = self.eval(t).expect("validated path");
                    bound = bound.max(scale * ((1.0 - s) + s * max_f));
                }
                bound
            }
        }
    }
}

/// Uniform superposition |α⟩, the shared ground state of every H(0).
pub fn uniform_state(dim: usize) -> Vec<Complex64> {
    vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_shifts_and_sorts() {
        let p = ProblemSpec::new(vec![3.0, 1.0, 2.0, 1.0]).unwrap();
        assert_eq!(p.shift, 1.0);
        assert_eq!(p.f, vec![0.0, 0.0, 1.0, 2.0]);
        assert_eq!(p.perm, vec![1, 3, 2, 0]);
        assert_eq!(p.min_multiplicity(), 2);

        let identity = ProblemSpec::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(identity.shift, 0.0);
        assert_eq!(identity.perm, vec![0, 1]);

        let constant = ProblemSpec::new(vec![5.0; 4]).unwrap();
        assert_eq!(constant.f, vec![0.0; 4]);
        assert_eq!(constant.shift, 5.0);
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(ProblemSpec::new(vec![0.0, 1.0, 2.0]), Err(Error::NotPowerOfTwo { len: 3 })));
        assert!(matches!(ProblemSpec::new(vec![1.0]), Err(Error::NotPowerOfTwo { len: 1 })));
        assert!(matches!(
            ProblemSpec::new(vec![0.0, f64::NAN]),
            Err(Error::NonFiniteCost { index: 1 })
        ));
        let big = ProblemSpec::new(vec![0.0, 1e6]).unwrap();
        assert!(big.ceiling_exceeded);
        assert!(matches!(
            ProblemSpec::with_ceiling(vec![0.0, 1e6], None, true),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn families() {
        let g = ProblemSpec::grover(3, 5).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.f[0], 0.0);
        assert!(g.f[1..].iter().all(|&v| v == 1.0));
        assert_eq!(g.perm[0], 5);

        let r = ProblemSpec::random_int(4, 7).unwrap();
        assert_eq!(r.f[0], 0.0);
        assert!(r.f.iter().all(|&v| v == v.trunc() && v <= 64.0));
        let r2 = ProblemSpec::random_int(4, 7).unwrap();
        assert_eq!(r.f_raw, r2.f_raw);

        let u = ProblemSpec::random_int_unique(4, 7).unwrap();
        assert_eq!(u.min_multiplicity(), 1);
        assert!(u.second_cost() >= 1.0);
    }

    #[test]
    fn matvec_matches_hand_matrix() {
        let p = ProblemSpec::new(vec![0.0, 1.0]).unwrap();
        let h = p.hamiltonian(0.5);
        let out = h.apply(&[Complex64::ONE, Complex64::ZERO]).unwrap();
        assert!((out[0].re - 0.25).abs() < 1e-15);
        assert!((out[1].re + 0.25).abs() < 1e-15);

        let d = h.dense().unwrap();
        assert!((d[(0, 0)] - 0.25).abs() < 1e-15);
        assert!((d[(0, 1)] + 0.25).abs() < 1e-15);
        assert!((d[(1, 1)] - 0.75).abs() < 1e-15);

        let d0 = p.hamiltonian(0.0).dense().unwrap();
        for (a, b) in d0.iter().zip([0.5, -0.5, -0.5, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn alpha_annihilated_at_start_and_diagonal_at_end() {
        let p = ProblemSpec::new(vec![2.0, 0.0, 1.0, 5.0]).unwrap();
        let alpha = uniform_state(4);
        for z in p.hamiltonian(0.0).apply(&alpha).unwrap() {
            assert!(z.norm() < 1e-15);
        }
        let mut e2 = vec![Complex64::ZERO; 4];
        e2[2] = Complex64::ONE;
        let out = p.hamiltonian(1.0).apply(&e2).unwrap();
        assert!((out[2].re - p.f[2]).abs() < 1e-15);
        assert!(out.iter().enumerate().all(|(i, z)| i == 2 || z.norm() < 1e-15));
    }

    #[test]
    fn linear_schedule_evaluation() {
        let sched = ScheduleSpec::linear(10.0).unwrap();
        let (s, rate, scale) = sched.eval(5.0).unwrap();
        assert_eq!((s, rate, scale), (0.5, 0.1, 1.0));
        assert_eq!(sched.eval(10.0).unwrap().0, 1.0);
        assert!(matches!(sched.eval(11.0), Err(Error::TimeOutOfRange { .. })));
    }

    #[test]
    fn interpolation_reduces_to_linear() {
        let total = 4.0;
        let sched = ScheduleSpec::interpolation(
            total,
            Arc::new(move |t: f64| 1.0 - t / total),
            Arc::new(move |t: f64| t / total),
        )
        .unwrap();
        let (s, rate, scale) = sched.eval(1.0).unwrap();
        assert!((s - 0.25).abs() < 1e-12);
        assert!((rate - 0.25).abs() < 1e-6);
        assert!((scale - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tabulated_schedule_interpolates_and_rejects_nonmonotone() {
        let sched = ScheduleSpec::tabulated(10.0, vec![(0.0, 0.0), (5.0, 0.7), (10.0, 1.0)]).unwrap();
        let (s, rate, _) = sched.eval(2.5).unwrap();
        assert!((s - 0.35).abs() < 1e-12);
        assert!((rate - 0.14).abs() < 1e-12);
        let (s, rate, _) = sched.eval(7.5).unwrap();
        assert!((s - 0.85).abs() < 1e-12);
        assert!((rate - 0.06).abs() < 1e-12);

        assert!(matches!(
            ScheduleSpec::tabulated(10.0, vec![(0.0, 0.0), (5.0, 0.8), (6.0, 0.5), (10.0, 1.0)]),
            Err(Error::NonMonotoneSchedule { .. })
        ));
    }

    #[test]
    fn schedule_norm_bound_covers_path() {
        let p = ProblemSpec::new(vec![0.0, 3.0, 1.0, 2.0]).unwrap();
        let sched = ScheduleSpec::linear(5.0).unwrap();
        assert_eq!(sched.norm_bound(&p), 3.0);
        assert_eq!(p.hamiltonian(0.0).norm_bound(), 1.0);
        assert_eq!(p.hamiltonian(1.0).norm_bound(), 3.0);
    }
}
