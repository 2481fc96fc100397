//! Time-dependent evolution of the search instance: norm conservation,
//! overlap with the instantaneous ground state, and the fidelity deficit
//! delta along the run.

use adiamaj::{auto_dt, evolve, uniform_grid, ProblemSpec, ScheduleSpec};

fn main() -> adiamaj::Result<()> {
    let p = ProblemSpec::grover(4, 0)?;
    let sched = ScheduleSpec::linear(60.0)?;
    let dt = auto_dt(sched.total_time, sched.norm_bound(&p));
    let traj = evolve(&p, &sched, dt, &uniform_grid(11))?;

    println!("search n = 4, T = 60, dt = {dt:.5}");
    println!("{:>6} {:>6} {:>14} {:>12} {:>12}", "time", "s", "norm", "overlap", "delta");
    for (i, st) in traj.states.iter().enumerate() {
        println!(
            "{:>6.1} {:>6.3} {:>14.12} {:>12.9} {:>12.3e}",
            st.time, st.s, st.norm, traj.fidelity[i], traj.delta[i]
        );
    }
    println!("\nnorm drift {:.3e} (budget 1e-8)", traj.norm_drift);
    println!("max delta  {:.4e}", traj.max_delta());
    Ok(())
}
