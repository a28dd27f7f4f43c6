use std::path::PathBuf;
use std::process::{Command, Output};

fn contexts() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../contexts")
}

fn ctx(name: &str) -> String {
    contexts()
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecpair"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(o: &Output, key: &str) -> String {
    let prefix = format!("{key}: ");
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in {}", stdout(o)))
}

#[test]
fn weil_equivalence_suite_passes() {
    let o = run(&["verify", "weil-equivalence", "--context", &ctx("tiny-f49")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(field(&o, "result"), "pass");
    assert_eq!(field(&o, "definitions 1, 2, 3 agree"), "pass (16 trials)");
}

#[test]
fn trivial_weil_pairing() {
    for q in [r#"{"x": [2], "y": [3]}"#, r#"{"x": [0], "y": [1]}"#] {
        let o = run(&[
            "pair",
            "--context",
            &ctx("tiny-f25"),
            "--pairing",
            "weil",
            "--def",
            "2",
            "--P",
            "infinity",
            "--Q",
            q,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(field(&o, "value"), "[1,0]");
    }
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = [
        "pair",
        "--context",
        "ss103",
        "--pairing",
        "tate",
        "--def",
        "1",
        "--seed",
        "5",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "pair",
        "--context",
        "ss103",
        "--pairing",
        "tate",
        "--def",
        "1",
        "--seed",
        "6",
    ]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn reduced_tate_is_independent_of_definition_and_seed() {
    let value = |def: &str, seed: &str| {
        field(
            &run(&[
                "pair",
                "--context",
                &ctx("ss103"),
                "--pairing",
                "tate",
                "--reduced",
                "--def",
                def,
                "--seed",
                seed,
            ]),
            "value",
        )
    };
    let v = value("1", "1");
    assert_eq!(v, value("2", "2"));
    assert_eq!(v, value("1", "9"));
}

#[test]
fn malformed_input_exits_2() {
    let cases: [&[&str]; 5] = [
        &["pair", "--context", "ss103", "--pairing", "nope"],
        &[
            "pair",
            "--context",
            "ss103",
            "--pairing",
            "weil",
            "--P",
            "{",
        ],
        &["verify", "nope", "--context", "ss103"],
        &["bench", "--context", "/does/not/exist.json"],
        &["pair", "--context", "mnt4", "--pairing", "r_ate"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_output_is_one_object() {
    let o = run(&[
        "pair",
        "--context",
        "mnt4",
        "--pairing",
        "ate",
        "--reduced",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pairing"], "ate");
    assert_eq!(v["lambda"], 206);
    assert_eq!(v["value"].as_array().unwrap().len(), 4);
}

#[test]
fn context_files_match_presets() {
    for name in ["tiny-f49", "ss103", "j1728-k4"] {
        let o = run(&["context-new", "--preset", name, "--seed", "7"]);
        assert_eq!(stdout(&o), std::fs::read_to_string(ctx(name)).unwrap());
    }
}

#[test]
fn freeman_bench_and_family() {
    let o = run(&["bench", "--context", &ctx("freeman-k10")]);
    let tate: u64 = field(&o, "tate").parse().unwrap();
    let hess: u64 = field(&o, "hess").parse().unwrap();
    assert!(hess <= tate / 4 + 2);
    assert_eq!(field(&o, "hess_vector"), "[1,2,-2,-2]");
    let f = run(&["family"]);
    assert_eq!(field(&f, "x0"), "-2");
    assert_eq!(field(&f, "shortest"), "[1,2,-2,-2]");
}

#[test]
fn hess_modes_agree() {
    let value = |p: &str| {
        field(
            &run(&[
                "pair",
                "--context",
                "freeman-k10",
                "--pairing",
                p,
                "--reduced",
            ]),
            "value",
        )
    };
    assert_eq!(value("hess"), value("vercauteren"));
}

#[test]
fn lattice_command() {
    let o = run(&["lattice", "--r", "251", "--y", "283", "--k", "10"]);
    assert_eq!(field(&o, "shortest"), "[1,2,-2,-2]");
    assert_eq!(
        run(&["lattice", "--r", "251", "--y", "2", "--k", "10"])
            .status
            .code(),
        Some(2)
    );
}
