//! Ground weight A_1 versus evolved weight B_1 along s. A fast run lags
//! the ground curve wholesale but stays smooth; a moderately slow run
//! tracks it and overshoots near s = 1, where B_1 visibly dips. Each dip
//! is a step-by-step majorization violation.

use adiamaj::{
    auto_dt, evolve, prefix_sums, tail_oscillation, uniform_grid, ProblemSpec, ScheduleSpec,
};

fn main() -> adiamaj::Result<()> {
    let p = ProblemSpec::grover(5, 0)?;
    for total in [10.0, 250.0] {
        let sched = ScheduleSpec::linear(total)?;
        let dt = auto_dt(total, sched.norm_bound(&p));
        let traj = evolve(&p, &sched, dt, &uniform_grid(201))?;
        println!("T = {total}");
        println!("{:>6} {:>10} {:>10}", "s", "A_1", "B_1");
        for (i, st) in traj.states.iter().enumerate().step_by(8) {
            let b1 = prefix_sums(&st.probabilities())[0];
            println!("{:>6.2} {:>10.6} {:>10.6}", st.s, traj.ground_cumulative[i][0], b1);
        }
        let amp = tail_oscillation(&traj, &[1], (0.8, 1.0));
        println!("tail oscillation amplitude: {amp:.3e}\n");
    }
    Ok(())
}
