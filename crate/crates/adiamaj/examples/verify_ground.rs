//! Step-by-step majorization of the exact ground path: for any cost
//! vector, the sorted probability distribution at a later s majorizes the
//! one at an earlier s. The violation count stays at zero.

use adiamaj::{ground_report, uniform_grid, ProblemSpec};

fn main() -> adiamaj::Result<()> {
    for seed in 0..5u64 {
        let p = ProblemSpec::random_int(5, seed)?;
        let report = ground_report(&p, &uniform_grid(501), &[], 1e-9)?;
        println!(
            "seed {seed}: {} grid steps, violations {}, worst deficit {:+.3e}",
            report.verdicts.len(),
            report.violation_count,
            report.worst_deficit
        );
    }
    Ok(())
}
