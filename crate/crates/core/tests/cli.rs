use std::process::{Command, Output};

use lambert_parity::report::{ReportRecord, SeriesRecord};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambert-parity"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_json_round_trips() {
    let o = cli(&["expand", "Y_DEF", "--order", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let record: SeriesRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(record.series, "Y_DEF");
    assert_eq!(record.coeffs, ["0", "0", "0", "-1", "0", "-2", "0", "-3"]);
}

#[test]
fn expand_csv() {
    let o = cli(&["expand", "phi", "--order", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,coefficient\n0,1\n1,0\n2,2\n3,0\n4,1\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["expand", "NOPE"][..],
        &["expand", "A", "--order", "0"],
        &["verify"],
        &["verify", "--all", "--order", "7"],
        &["verify", "--identity", "I99"],
        &["bench", "--op", "mul"],
        &["frobnicate"],
    ] {
        let o = cli(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_all_json_is_stable_apart_from_timing() {
    let run = || {
        let o = cli(&["verify", "--all", "--order", "64", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let mut records: Vec<ReportRecord> = serde_json::from_str(&stdout(&o)).unwrap();
        for r in &mut records {
            r.elapsed_ms = 0.0;
        }
        records
    };
    let first = run();
    assert_eq!(first.len(), 13);
    assert_eq!(first, run());
    let conj = first.iter().find(|r| r.identity == "I11_CONJ2").unwrap();
    assert_eq!(conj.annotation.as_deref(), Some("unproven conjecture"));
    let flips: Vec<_> = first.iter().filter_map(|r| r.resolved_sign).collect();
    assert_eq!(flips, [-1, -1]);
}

#[test]
fn verify_single_identity_table() {
    let o = cli(&["verify", "--identity", "I4", "--order", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("I4_LEMMA1"));
    assert!(stdout(&o).contains("VERIFIED"));
}

#[test]
fn bench_csv_has_one_row_per_size() {
    let o = cli(&[
        "bench",
        "--op",
        "mul",
        "--sizes",
        "16,32",
        "--format",
        "csv",
        "--algorithm",
        "karatsuba",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "size,elapsed_ms");
    assert!(lines[1].starts_with("16,") && lines[2].starts_with("32,"));
}
