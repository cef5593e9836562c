use std::process::ExitCode;

use jacquet_core::acceptance::run_all;

const SEED: u64 = 20_240_601;

fn main() -> ExitCode {
    let outcomes = run_all(SEED);
    for o in &outcomes {
        println!("{o} [{:.2} s]", o.elapsed.as_secs_f64());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 && outcomes.len() == 7 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
