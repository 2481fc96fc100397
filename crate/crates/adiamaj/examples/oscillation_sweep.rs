//! End-of-path oscillation of the evolved partial sums versus runtime:
//! slower schedules shrink both the fidelity deficit and the tail
//! oscillation amplitude, and the tail-monotonicity threshold explains
//! when the oscillation must vanish entirely.

use adiamaj::{
    auto_dt, evolve, oscillation_sweep, tail_threshold, uniform_grid, ProblemSpec, ScheduleSpec,
    SweepParams,
};

fn main() -> adiamaj::Result<()> {
    let p = ProblemSpec::grover(5, 0)?;
    let mut params = SweepParams::new(vec![150.0, 300.0, 600.0]);
    params.grid_points = 51;
    params.parallel = 3;
    let sweep = oscillation_sweep(&p, &params)?;

    println!("{:>6} {:>24} {:>14}", "T", "oscillation amplitude", "max delta");
    for (i, &t) in sweep.t_list.iter().enumerate() {
        println!("{t:>6} {:>24.6e} {:>14.6e}", sweep.oscillation_amplitude[i], sweep.max_delta[i]);
    }
    println!("non-increasing within 10% slack: {}", sweep.non_increasing(0.1));

    let total = 300.0;
    let sched = ScheduleSpec::linear(total)?;
    let traj = evolve(&p, &sched, auto_dt(total, sched.norm_bound(&p)), &uniform_grid(51))?;
    let th = tail_threshold(&traj, &p, 1, (0.8, 1.0))?;
    println!("\ntail threshold for k = 1 at T = {total}:");
    println!("  delta*            {:.3e} (saturated: {})", th.delta_star, th.saturated);
    println!("  delta* unsaturated {:.3e}", th.delta_star_unsaturated);
    println!("  measured delta    {:.3e}", th.max_delta);
    println!("  premise holds     {}", th.premise_holds);
    println!("  tail monotone     {}", th.tail_monotone);
    println!("  implication holds {}", th.implication_holds);
    Ok(())
}
