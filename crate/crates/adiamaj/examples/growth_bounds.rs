//! The ground-path growth bound dA_k/ds >= (2c/k)*A_k*(1-A_k) with
//! c = min(second canonical cost, 1), and the single sign change of the
//! consecutive amplitude differences that drives it.

use adiamaj::{crossing_index, growth_bound_margins, uniform_grid, ProblemSpec};

fn main() -> adiamaj::Result<()> {
    let p = ProblemSpec::random_int_unique(4, 3)?;
    println!("canonical costs: {:?}", p.f);

    let grid = uniform_grid(201);
    let bounds = growth_bound_margins(&p, &grid[1..200], &[])?;
    println!("c = {}", bounds.c);
    for (i, &k) in bounds.k_list.iter().enumerate() {
        let min = bounds.margin.iter().map(|row| row[i]).fold(f64::INFINITY, f64::min);
        println!("k = {k:>2}: min margin {min:+.6e}");
    }
    println!("overall min margin {:+.6e} (positive: the bound holds strictly)", bounds.min_margin());

    println!("\namplitude-difference sign change (1-based index):");
    for &s in &[0.25, 0.5, 0.75] {
        let i0 = crossing_index(&p, s, 1e-4)?;
        println!("  s = {s}: crossing at {i0} of {}", p.dim());
    }
    Ok(())
}
