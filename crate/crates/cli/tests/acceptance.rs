//! CLI acceptance: determinism of repeated runs (criterion 10).

use std::process::Command;

fn covrad() -> Command {
    Command::new(env!("CARGO_BIN_EXE_covrad"))
}

#[test]
fn criterion_10_determinism() {
    let run = || {
        let out = covrad()
            .args(["table", "2", "--format", "json", "--seed", "0"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "table 2 failed: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "two identical invocations differ byte-for-byte");
    assert!(!first.is_empty());
    println!("criterion 10 (byte-identical repeated runs): PASS");
}
