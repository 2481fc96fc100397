//! Two lowest eigenvalues along the path, the minimal gap, and the
//! adiabatic error budget epsilon = D_max / g_min^2 for the search
//! instance, whose gap minimum is 1/sqrt(N) at s = 1/2.

use adiamaj::{spectral_report, uniform_grid, ProblemSpec, ScheduleSpec};

fn main() -> adiamaj::Result<()> {
    let p = ProblemSpec::grover(4, 0)?;
    let sched = ScheduleSpec::linear(200.0)?;
    let report = spectral_report(&p, &sched, &uniform_grid(401))?;

    println!("{:>6} {:>14} {:>14} {:>14}", "s", "E0", "E1", "gap");
    for i in (0..=400).step_by(50) {
        println!(
            "{:>6.3} {:>14.10} {:>14.10} {:>14.10}",
            report.s_grid[i],
            report.e0[i],
            report.e1[i],
            report.e1[i] - report.e0[i]
        );
    }

    let theory = (p.dim() as f64).sqrt().recip();
    println!("\ng_min   {:.10}  (theory 1/sqrt(N) = {theory:.10})", report.g_min);
    println!("D_max   {:.6e}", report.d_max);
    println!("epsilon {:.6e}  (T = {})", report.epsilon_bound, sched.total_time);
    Ok(())
}
