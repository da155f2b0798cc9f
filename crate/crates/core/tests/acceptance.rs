//! Acceptance table: one line per criterion; exits nonzero if any row fails.
//! Built without the libtest harness so the table is always printed.

use std::process::ExitCode;

use lieper::reproduce::{format_table, run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id);
        print!("{}", format_table(std::slice::from_ref(&r)));
        if !r.pass {
            failed.push(r.name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria pass", CRITERIA.len(), CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
