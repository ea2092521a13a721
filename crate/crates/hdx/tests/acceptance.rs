//! One PASS/FAIL line per acceptance criterion. Criteria 1 to 11 run the
//! full battery in-process; criterion 12 runs the binary twice.

use std::process::{Command, ExitCode};

use hdx::suite::{Suite, SuiteOptions, CRITERIA};

const SEED: u64 = 42;

fn determinism() -> (bool, String) {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hdx"))
            .args(["suite", "--quick", "--seed", &SEED.to_string()])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = !a.stdout.is_empty() && a.stdout == b.stdout && a.status.code() == b.status.code();
    (same, format!("{} bytes each, identical: {same}", a.stdout.len()))
}

fn main() -> ExitCode {
    let suite = Suite::new(SuiteOptions { quick: false, seed: SEED });
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let r = suite.run(id);
        println!("{}", r.line());
        failed += usize::from(!r.pass);
    }
    let (ok, summary) = determinism();
    println!("{} 12 suite --quick is byte-identical across runs: {summary}", if ok { "PASS" } else { "FAIL" });
    failed += usize::from(!ok);
    println!("{} of 12 criteria failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
