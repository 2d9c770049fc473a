use std::process::ExitCode;

use skeinlab::suite::run_suite;

fn main() -> ExitCode {
    let outcomes = run_suite(128);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    if failed.is_empty() {
        println!(
            "acceptance: {} of {} criteria passed",
            outcomes.len(),
            outcomes.len()
        );
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
