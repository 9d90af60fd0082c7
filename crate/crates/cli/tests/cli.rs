use std::path::PathBuf;
use std::process::Command;

use nodal_syzygy_cli::{emit_report, execute, parse_field, OutputFormat, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nodal-syzygy"))
}

fn write(
    dir: &tempfile::TempDir,
    name: &str,
    vars: &[&str],
    characteristic: u64,
    factors: &[&str],
) -> PathBuf {
    let path = dir.path().join(name);
    let body = serde_json::json!({ "variables": vars, "characteristic": characteristic, "factors": factors });
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn plane(dir: &tempfile::TempDir, name: &str, characteristic: u64, factors: &[&str]) -> PathBuf {
    write(dir, name, &["x", "y", "z"], characteristic, factors)
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const NODAL: [&str; 4] = [
    "x^3+y^3-3*x*y*z",
    "x^2+2*y^2+3*z^2",
    "x^2+4*y^2+9*z^2",
    "x^2+8*y^2+27*z^2",
];

#[test]
fn verified_arrangement_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = plane(&dir, "a.json", 0, &["x", "y", "z", "x^2+y^2+z^2"]);
    let (code, out, _) = invoke(&["--input", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("computed exponents:  (3)_3"));
    assert!(out.contains("M(f) computed: 0 → S(-9) → S(-7)^3 → S(-4)^3 → S"));
    assert!(out.contains("        6: . . . 1"));
}

#[test]
fn nodal_cubic_exits_two_with_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let p = plane(&dir, "n.json", 32003, &NODAL);
    let (code, out, _) = invoke(&["--input", p.to_str().unwrap(), "--json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["computedExponents"],
        serde_json::json!([7, 7, 7, 8, 8, 8, 8])
    );
    assert_eq!(v["predictedExponents"], serde_json::Value::Null);
    assert_eq!(v["outcome"], "hypotheses-violated");
}

#[test]
fn triple_point_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = plane(&dir, "t.json", 0, &["x", "y", "x+y", "z"]);
    let (code, out, _) = invoke(&["--input", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("triple point (0:0:1)"), "{out}");
}

#[test]
fn truncated_oracle_is_a_partial_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let p = plane(
        &dir,
        "c.json",
        32003,
        &[
            "x^2+2*y^2+3*z^2",
            "x^2+4*y^2+9*z^2",
            "x^2+8*y^2+27*z^2",
            "x^2+16*y^2+81*z^2",
        ],
    );
    let args = [
        "--input",
        p.to_str().unwrap(),
        "--oracle",
        "linear-algebra",
        "--degree-cap",
        "6",
        "--json",
    ];
    let (code, out, _) = invoke(&args);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["partial"], true);
    assert_eq!(v["computedExponents"], serde_json::json!([6, 6, 6]));
}

#[test]
fn usage_and_io_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(invoke(&["--input", missing.to_str().unwrap()]).0, 1);

    let p = plane(&dir, "a.json", 0, &["x", "y", "z", "x^2+y^2+z^2"]);
    let (code, _, err) = invoke(&["--input", p.to_str().unwrap(), "--field", "p:4"]);
    assert_eq!(code, 1);
    assert!(err.contains("p:4") || err.contains("prime"), "{err}");
    assert_eq!(
        invoke(&[
            "--input",
            p.to_str().unwrap(),
            "--mode",
            "surface-experiment"
        ])
        .0,
        1
    );

    let s = write(
        &dir,
        "s.json",
        &["x", "y", "z", "w"],
        32003,
        &["x", "y", "z", "w", "x+y+z+w"],
    );
    assert_eq!(invoke(&["--input", s.to_str().unwrap()]).0, 1);

    let bad = plane(&dir, "b.json", 0, &["x", "y", "z", "x^2+y^"]);
    let (code, _, err) = invoke(&["--input", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    assert_eq!(invoke(&["--bogus"]).0, 1);
}

#[test]
fn json_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let p = plane(
        &dir,
        "c.json",
        32003,
        &[
            "x",
            "x^2+2*y^2+3*z^2",
            "x^2+4*y^2+9*z^2",
            "x^2+8*y^2+27*z^2",
        ],
    );
    let a = invoke(&["--input", p.to_str().unwrap(), "--json"]);
    let b = invoke(&["--input", p.to_str().unwrap(), "--json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    for key in [
        "case",
        "predictedExponents",
        "computedExponents",
        "bettiPredicted",
        "bettiComputed",
        "checks",
        "frame",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["frame"]["matrix"].is_array());
}

#[test]
fn field_override_and_no_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let p = plane(
        &dir,
        "l.json",
        0,
        &[
            "x+y+z",
            "x^2+2*y^2+3*z^2",
            "x^2+4*y^2+9*z^2",
            "x^2+8*y^2+27*z^2",
        ],
    );
    let mut config = RunConfig::new(&p);
    config.field = Some(parse_field("p:32003").unwrap());
    let normalized = execute(&config).unwrap();
    assert_eq!(normalized.exit_code(), 0);
    config.normalize = false;
    let raw = execute(&config).unwrap();
    assert_eq!(raw.exit_code(), 0);
    let text = emit_report(&raw, OutputFormat::Text);
    assert!(
        text.contains("roster and relation checks skipped"),
        "{text}"
    );
    assert!(text.contains("field ZZ/32003"));
}

#[test]
fn surface_mode() {
    let dir = tempfile::tempdir().unwrap();
    let factors: Vec<String> = (1..=5)
        .map(|j: u32| {
            format!(
                "x^2+{}*y^2+{}*z^2+{}*w^2",
                2u64.pow(j),
                3u64.pow(j),
                4u64.pow(j)
            )
        })
        .collect();
    let refs: Vec<&str> = factors.iter().map(|s| s.as_str()).collect();
    let p = write(&dir, "s.json", &["x", "y", "z", "w"], 32003, &refs);
    let (code, out, _) = invoke(&[
        "--input",
        p.to_str().unwrap(),
        "--mode",
        "surface-experiment",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("computed exponents: (7)_6(8)_16(9)_6"));
}

#[test]
fn parse_field_forms() {
    assert!(parse_field("q").is_ok());
    assert!(parse_field("p:32003").is_ok());
    assert!(parse_field("p:2").is_err());
    assert!(parse_field("z").is_err());
}
