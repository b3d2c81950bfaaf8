use std::process::{Command, Output};

use motivic_dt::dtinv::SQSeries;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic-dt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn series_json_is_canonical() {
    let o = run(&[
        "series", "--type", "A1~", "--mode", "pt", "--order", "2", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let z = SQSeries::from_json(&v).unwrap();
    assert_eq!(z.coeff(1, &[1]), motivic_dt::coeff::MotiveScalar::v());
    assert_eq!(z.to_json(), v);
    // deterministic
    assert_eq!(
        stdout(&run(&[
            "series", "--type", "A1~", "--order", "2", "--format", "json"
        ])),
        stdout(&o)
    );
}

#[test]
fn kac_interpolates() {
    let o = run(&[
        "kac",
        "--quiver",
        "kronecker",
        "--dim",
        "1,1",
        "--q",
        "2,3,4",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("q + 1"));
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = run(&["verify", "--suite", "reduction", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS reduction"));
    assert!(text.contains("First dimensional reduction"));
    assert_eq!(
        stdout(&run(&["verify", "--suite", "reduction", "--q", "2"])),
        text
    );

    // a single sample cannot determine a degree-one Kac polynomial, but the
    // check still compares the value; a wrong q fails loudly
    let bad = run(&["verify", "--suite", "kac:jordan", "--q", "6"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("kac:jordan"));
}

#[test]
fn usage_and_guard_errors() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["series", "--type", "Z9~"]).status.code(), Some(2));
    assert_eq!(
        run(&["series", "--type", "A1~", "--group", "cyclic:2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--suite", "nothing-here"]).status.code(),
        Some(2)
    );
    let guard = run(&[
        "repcount",
        "--quiver",
        "jordan",
        "--dim",
        "4",
        "--q",
        "5",
        "--what",
        "preprojective",
    ]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("limit"));
}

#[test]
fn other_subcommands() {
    let o = run(&["hilb", "--type", "A1~", "--order", "2"]);
    assert!(stdout(&o).contains("L^{3/2} + L^{1/2}"));
    let o = run(&[
        "euler", "--group", "cyclic:3", "--mode", "ncdt", "--order", "1", "--format", "json",
    ]);
    assert!(o.status.success());
    let o = run(&["gv", "--type", "A2~"]);
    assert_eq!(stdout(&o).matches("n = -1").count(), 3);
    let o = run(&["universal", "--quiver", "jordan", "--order", "2"]);
    assert!(stdout(&o).contains("L^2/(L - 1)"));
    let o = run(&[
        "repcount",
        "--quiver",
        "kronecker",
        "--dim",
        "1,1",
        "--q",
        "3",
        "--what",
        "fiber0",
    ]);
    assert!(o.status.success());
}
