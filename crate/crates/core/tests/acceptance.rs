//! Runs without the libtest harness so the per-criterion lines always reach stdout.

use std::process::ExitCode;

use lorenzkit::verify::{run_suite, Suite};

fn main() -> ExitCode {
    let reports = run_suite(Suite::All);
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "{} of {} criteria passed",
        reports.len() - failed.len(),
        reports.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
