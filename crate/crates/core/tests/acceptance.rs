//! Runs the experiment registered for each acceptance criterion and prints
//! one line per criterion. Exits nonzero when any criterion fails.

use std::process::ExitCode;

use homlab::harness::{self, Session};

fn main() -> ExitCode {
    let registry = harness::registry();
    let mut ids: Vec<(u8, &str)> = registry.iter().filter_map(|e| e.criterion.map(|c| (c, e.id))).collect();
    ids.sort_unstable();
    assert_eq!(ids.len(), 13, "one experiment per criterion");

    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let session = Session::default();
    let names: Vec<&str> = ids.iter().map(|&(_, id)| id).collect();
    let reports = harness::run_all(&names, &session, workers).expect("registered ids");

    let mut failed = 0;
    for ((c, id), r) in ids.iter().zip(&reports) {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {c:>2} [{id}]: {verdict} ({:.2}s) {}", r.seconds, r.measured);
        if !r.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", ids.len() - failed, ids.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
