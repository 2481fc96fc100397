//! Drive the experiment runner end to end: resolve a config, execute a
//! subcommand, and inspect the deterministic artifacts it writes.

use std::fs;

use adiamaj::{run, Command, ExperimentConfig, ScheduleConfig};

fn main() -> adiamaj::Result<()> {
    let dir = std::env::temp_dir().join("adiamaj_experiment_run");
    let mut cfg = ExperimentConfig::base();
    cfg.grid = 201;
    cfg.schedule = ScheduleConfig::Linear { total: 30.0 };

    let code = run(Command::VerifyGround, &cfg, &dir)?;
    println!("verify-ground exit code: {code}");
    println!("config hash: {}", cfg.hash());

    println!("\nsummary.json:");
    print!("{}", fs::read_to_string(dir.join("summary.json"))?);

    println!("\nground_verdicts.csv (first rows):");
    for line in fs::read_to_string(dir.join("ground_verdicts.csv"))?.lines().take(9) {
        println!("{line}");
    }
    Ok(())
}
