use std::process::{Command, Output};

use exunits::OutputRecord;

fn exunits(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exunits"))
        .args(args)
        .env_remove("EXUNITS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_examples() {
    for (n, k, c, expected) in [
        ("15", "3", "0", "6"),
        ("45", "2", "1", "9"),
        ("6", "4", "2", "0"),
    ] {
        let o = exunits(&["count", "-n", n, "-k", k, "-c", c, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let record: OutputRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(record.count, expected);
        assert_eq!(record.n, n);
        assert_eq!(record.k.to_string(), k);
    }
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    let o = exunits(&["table", "-n", "35", "-k", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 35);
    for line in text.lines() {
        let record: OutputRecord = serde_json::from_str(line).unwrap();
        assert_eq!(record.to_json(), line);
        // counts are strings, never JSON numbers
        assert!(line.contains(&format!("\"count\":\"{}\"", record.count)));
    }
}

#[test]
fn big_counts_are_exact_decimal() {
    let n = (4_294_967_291u64 * 4_294_967_279).to_string();
    let o = exunits(&[
        "count", "-n", &n, "-k", "40", "-c", "12345", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let count = text.lines().nth(1).unwrap().rsplit(',').next().unwrap();
    assert!(count.len() > 700);
    assert!(count.bytes().all(|b| b.is_ascii_digit()));
}

#[test]
fn units_command() {
    assert_eq!(
        stdout(&exunits(&["units", "-n", "7", "--exceptional"])),
        "2\n3\n4\n5\n6\n"
    );
    assert_eq!(
        stdout(&exunits(&["units", "-n", "12", "--exceptional"])),
        ""
    );
    assert_eq!(stdout(&exunits(&["units", "-n", "10"])), "1\n3\n7\n9\n");
}

#[test]
fn verify_command() {
    let o = exunits(&["verify", "--n-max", "60", "--k", "2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("OK: 0 mismatches"));

    let o = exunits(&[
        "verify",
        "--n-max",
        "30",
        "--k",
        "3",
        "--sign-placement",
        "global",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "MISMATCH: n=15 k=3 c=0 formula=-6 oracle=6\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        exunits(&["count", "-n", "5", "-k", "1", "-c", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        exunits(&["table", "-n", "0", "-k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(exunits(&["units"]).status.code(), Some(2));
    assert_eq!(
        exunits(&["table", "-n", "5000", "-k", "2", "--method", "convolution"])
            .status
            .code(),
        Some(3)
    );
    let o = exunits(&[
        "count",
        "-n",
        "7",
        "-k",
        "3",
        "-c",
        "0",
        "--method",
        "enumerate",
        "--budget",
        "24",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn budget_environment_variable() {
    let run = |budget: &str, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_exunits"));
        cmd.args([
            "count",
            "-n",
            "7",
            "-k",
            "3",
            "-c",
            "0",
            "--method",
            "enumerate",
        ]);
        if let Some(f) = flag {
            cmd.args(["--budget", f]);
        }
        cmd.env("EXUNITS_BUDGET", budget)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("24", None), Some(3));
    assert_eq!(run("25", None), Some(0));
    assert_eq!(run("24", Some("25")), Some(0));
}
