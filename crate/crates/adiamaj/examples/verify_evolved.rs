//! Majorization verdicts for the physically evolved state: a fast run
//! shows genuine end-of-path violations, a slow run suppresses them, and
//! both stay inside the fidelity sandwich |A_k - B_k| <= 2*sqrt(k)*delta.

use adiamaj::{
    auto_dt, delta_sandwich_check, evolve, trajectory_report, uniform_grid, ProblemSpec,
    ScheduleSpec,
};

fn main() -> adiamaj::Result<()> {
    let p = ProblemSpec::grover(5, 0)?;
    for total in [10.0, 600.0] {
        let sched = ScheduleSpec::linear(total)?;
        let dt = auto_dt(total, sched.norm_bound(&p));
        let traj = evolve(&p, &sched, dt, &uniform_grid(101))?;
        let report = trajectory_report(&traj, &[], 1e-9)?;
        let slack = delta_sandwich_check(&traj, &p)?;
        println!(
            "T = {total:>5}: violations {:>3}, worst deficit {:+.3e}, max delta {:.3e}, sandwich slack {:+.3e}",
            report.violation_count,
            report.worst_deficit,
            traj.max_delta(),
            slack
        );
    }
    Ok(())
}
