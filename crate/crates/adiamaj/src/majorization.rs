//! Majorization primitives on probability distributions.
//!
//! A distribution `x` is majorized by `y` (written `x ≺ y`) when every prefix
//! sum of the descending-sorted entries of `x` is bounded by the matching
//! prefix sum of `y`. The comparison here is grid-friendly: it returns the
//! most negative partial-sum gap (the Lorenz deficit) and the prefix length
//! witnessing it, instead of a bare boolean.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance on partial-sum comparisons. Ground-state
/// amplitudes carry secular-root error around 1e-12, so 1e-9 gives headroom
/// without masking real violations (1e-3 scale in short-runtime oscillations).
pub const DEFAULT_TOL: f64 = 1e-9;

const SUM_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-8;

/// Probability distribution over N basis labels. Validated on construction;
/// operations assume the invariants and stay O(N) or O(N log N).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    p: Vec<f64>,
}

impl Distribution {
    /// Builds a distribution, checking non-negativity and unit total
    /// (absolute tolerance 1e-10).
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some(idx) = p.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidDistribution { index: idx });
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Norm { norm: sum, tol: SUM_TOL });
        }
        Ok(Self { p })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Entries in their original index order.
    pub fn entries(&self) -> &[f64] {
        &self.p
    }

    /// Uniform distribution over `n` labels, the bottom element of the
    /// majorization order.
    pub fn uniform(n: usize) -> Self {
        Self { p: vec![1.0 / n as f64; n] }
    }

    /// Point mass at `index`, the top element of the majorization order.
    pub fn point_mass(n: usize, index: usize) -> Self {
        let mut p = vec![0.0; n];
        p[index] = 1.0;
        Self { p }
    }
}

/// Cumulative sums of a distribution sorted in decreasing order (the Lorenz
/// curve). Non-decreasing, ends at 1, with concave increments.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumCurve {
    pub cumulative: Vec<f64>,
}

/// Ordering outcome of a single majorization comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Strict Lorenz dominance somewhere, no deficit beyond tolerance.
    Majorized,
    /// Partial-sum curves coincide within tolerance.
    Equal,
    /// Some prefix sum of `x` exceeds that of `y` beyond tolerance.
    NotMajorized,
}

/// Result of `check_majorization(x, y, tol)`: whether `x ≺ y`, the most
/// negative partial-sum gap, and the prefix length where it occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    /// 1-based prefix length achieving the deficit; present when the
    /// comparison fails.
    pub witness_k: Option<usize>,
    /// min over k of (prefix_y[k] - prefix_x[k]); negative means violation.
    pub deficit: f64,
}

impl MajorizationVerdict {
    /// True unless the relation is `NotMajorized`.
    pub fn holds(&self) -> bool {
        self.relation != Relation::NotMajorized
    }
}

/// Maps a unit-norm complex state to its measurement distribution of squared
/// moduli. The input norm must be within 1e-8 of 1; entries are then scaled
/// by the exact total so the distribution invariant (1e-10) holds.
pub fn distribution_from_state(amplitudes: &[Complex64]) -> Result<Distribution> {
    let sum_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    let norm = sum_sq.sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Norm { norm, tol: NORM_TOL });
    }
    let p = amplitudes.iter().map(|z| z.norm_sqr() / sum_sq).collect();
    Ok(Distribution { p })
}

/// Plain cumulative sums in the given index order. This is the `A_k`/`B_k`
/// curve of a canonically ordered problem, not the Lorenz curve; use
/// [`partial_sums`] for order-free comparisons.
pub fn prefix_sums(p: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    p.iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect()
}

/// Lorenz curve: cumulative sums of the entries sorted in decreasing order.
/// Ties are broken by ascending original index so the output is deterministic.
pub fn partial_sums(d: &Distribution) -> PartialSumCurve {
    let mut order: Vec<usize> = (0..d.p.len()).collect();
    order.sort_by(|&i, &j| d.p[j].partial_cmp(&d.p[i]).unwrap().then(i.cmp(&j)));
    let sorted: Vec<f64> = order.iter().map(|&i| d.p[i]).collect();
    PartialSumCurve { cumulative: prefix_sums(&sorted) }
}

/// Compares two distributions in the majorization order with an absolute
/// tolerance on partial sums. `x ≺ y` holds when every Lorenz prefix of `y`
/// is at least the matching prefix of `x` minus `tol`.
pub fn check_majorization(x: &Distribution, y: &Distribution, tol: f64) -> Result<MajorizationVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let cx = partial_sums(x);
    let cy = partial_sums(y);
    let mut deficit = f64::INFINITY;
    let mut witness = 0usize;
    let mut max_gap = f64::NEG_INFINITY;
    for (k, (a, b)) in cx.cumulative.iter().zip(&cy.cumulative).enumerate() {
        let gap = b - a;
        if gap < deficit {
            deficit = gap;
            witness = k + 1;
        }
        max_gap = max_gap.max(gap);
    }
    let relation = if deficit >= -tol && max_gap <= tol {
        Relation::Equal
    } else if deficit >= -tol {
        Relation::Majorized
    } else {
        Relation::NotMajorized
    };
    let witness_k = (relation == Relation::NotMajorized).then_some(witness);
    Ok(MajorizationVerdict { relation, witness_k, deficit })
}

/// Scalar severity of a comparison: min over k of the Lorenz prefix gaps.
/// Non-negative exactly when `x ≺ y` without tolerance.
pub fn lorenz_deficit(x: &Distribution, y: &Distribution) -> Result<f64> {
    Ok(check_majorization(x, y, 0.0)?.deficit)
}
