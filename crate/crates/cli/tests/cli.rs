use std::process::{Command, Output};

fn sqperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqperm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn counts_small_families() {
    let out = sqperm(&["count", "--family", "square", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "104");
    let out = sqperm(&["count", "--family", "convex-permutomino", "--n", "4"]);
    assert_eq!(stdout(&out).trim(), "18");
}

#[test]
fn encode_then_decode() {
    let out = sqperm(&["encode", "--perm", "3,5,4,1,2"]);
    assert!(out.status.success());
    let word = stdout(&out).trim().to_string();
    assert_eq!(word, "XY,UR,UL,DR,XY@3");
    let out = sqperm(&["decode", "--word", &word]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3,5,4,1,2");
}

#[test]
fn failed_decode_exits_with_one() {
    let out = sqperm(&["decode", "--word", "XY,DL,XY@1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("south-west"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(sqperm(&["count", "--family", "nope", "--n", "3"]).status.code(), Some(2));
    assert_eq!(sqperm(&["encode", "--perm", "1,1,2"]).status.code(), Some(2));
    assert_eq!(
        sqperm(&["render", "--permutomino", "0,0;0,1;1,0"]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_json_lists_records() {
    let out = sqperm(&["classify", "--perm", "3,5,4,1,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["square"], true);
    assert_eq!(v["upper"], 4);
    assert_eq!(v["left"], 3);
    assert_eq!(v["records"][0], "ul+bl");
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let args = ["sample", "--family", "square", "--n", "40", "--count", "5", "--seed", "9", "--json"];
    let a = sqperm(&args);
    let b = sqperm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["items"].as_array().unwrap().len(), 5);
    let other = sqperm(&["sample", "--family", "square", "--n", "40", "--count", "5", "--seed", "10", "--json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn render_writes_svg_file() {
    let path = std::env::temp_dir().join(format!("sqperm-render-{}.svg", std::process::id()));
    let out = sqperm(&[
        "render",
        "--perm",
        "1,2*,3",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 3);
}

#[test]
fn render_ascii_permutomino() {
    let out = sqperm(&["render", "--permutomino", "0,0;0,2;1,2;1,1;2,1;2,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "#.\n##\n");
}

#[test]
fn verify_small_sizes() {
    let out = sqperm(&["verify", "--max-n", "5"]);
    assert!(out.status.success(), "{}", stdout(&out));
}
