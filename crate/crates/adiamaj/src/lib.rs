//! Numerical laboratory for adiabatic interpolation between a uniform
//! projector Hamiltonian and a diagonal cost Hamiltonian.
//!
//! The path H(s) = (1-s)·(I - |α⟩⟨α|) + s·diag(f) keeps its instantaneous
//! ground state in closed form: a single secular parameter t(s) fixes the
//! energy and all amplitudes. This crate solves that secular equation,
//! integrates the time-dependent Schrödinger equation along arbitrary
//! schedules, and verifies the ordering claims that make the path
//! interesting: the exact ground state's probability distribution is
//! step-by-step majorized along s, and the physically evolved state obeys
//! the same ordering approximately, up to a fidelity-controlled sandwich,
//! with small oscillations at the end of fast schedules.
//!
//! Modules:
//! - [`model`]: problems (canonical sorted costs), schedules, O(N) matvec.
//! - [`spectrum`]: secular root, closed-form ground state, derivatives,
//!   dense eigensolver oracle, gap and adiabatic error bound.
//! - [`evolution`]: RK4 integration, norm-drift budget, gauge fixing.
//! - [`majorization`]: distributions, partial sums, majorization verdicts.
//! - [`analysis`]: ground/trajectory reports, growth-bound margins,
//!   fidelity sandwich, oscillation sweeps, tail thresholds.
//! - [`runner`]: JSON experiment configs, deterministic CSV artifacts,
//!   command line interface.
//!
//! ```
//! use adiamaj::{check_majorization, ground_state, Distribution, ProblemSpec, Relation};
//!
//! let p = ProblemSpec::grover(3, 0)?;
//! let early = Distribution::new(ground_state(&p, 0.4)?.probabilities())?;
//! let late = Distribution::new(ground_state(&p, 0.6)?.probabilities())?;
//! assert_eq!(check_majorization(&early, &late, 1e-9)?.relation, Relation::Majorized);
//! # Ok::<(), adiamaj::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod evolution;
pub mod majorization;
pub mod model;
pub mod runner;
pub mod spectrum;

pub use analysis::{
    default_k_list, delta_sandwich_check, ground_report, growth_bound_margins, oscillation_sweep,
    tail_oscillation, tail_threshold, trajectory_report, uniform_grid, BoundMargins,
    MajorizationReport, SweepParams, SweepResult, TailThreshold,
};
pub use error::{Error, Result};
pub use evolution::{
    auto_dt, convergence_probe, evolve, fitted_order, gauge_fixed_overlap, propagate,
    propagate_fixed, EvolutionState, TimeDirection, Trajectory,
};
pub use majorization::{
    check_majorization, distribution_from_state, lorenz_deficit, partial_sums, prefix_sums,
    Distribution, MajorizationVerdict, PartialSumCurve, Relation,
};
pub use model::{uniform_state, OperatorHandle, ProblemSpec, ScheduleKind, ScheduleSpec};
pub use runner::{
    cli_main, run, Cli, Command, CostFamily, ExperimentConfig, ProblemConfig, RunSummary,
    ScheduleConfig,
};
pub use spectrum::{
    crossing_index, dense_spectrum_oracle, ground_derivatives, ground_state, secular_residual,
    solve_t, spectral_report, GroundDerivatives, GroundStateSolution, OracleEigenpair,
    SpectralReport,
};
