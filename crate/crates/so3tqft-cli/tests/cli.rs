use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_so3tqft")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn dims_genus_two() {
    let (code, out) = run(&["dims", "--p", "5", "--genus", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# so3tqft dims seed=0"));
    assert!(out.lines().any(|l| l == "dim: 5"), "{out}");
}

#[test]
fn index_identity_check_passes() {
    let (code, out) = run(&["check", "--paper", "prop9.1", "--p", "7", "--genus", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("index-identity: pass"));
}

#[test]
fn fkb_framing_five() {
    let (code, out) =
        run(&["fkb", "--pd", "L9a12.pd", "--axis", "J", "--surgery", "K", "--framing", "5", "--p", "5", "--plus"]);
    assert_eq!(code, 0);
    assert!(out.contains("equals_1_plus_2z3: true"));
    assert!(out.contains("z_index: 11"));
    assert!(out.contains("obstructs_s3: true"));
    let (_, out) = run(&["fkb", "--framing", "1", "--plus"]);
    assert!(out.contains("unit_ideal: true"));
    assert!(out.contains("obstructs_s3: false"));
}

#[test]
fn json_is_deterministic_and_carries_seed() {
    let args = ["--format", "json", "--seed", "9", "lollipop-suite", "--samples", "4"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["header"]["seed"], 9);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["check", "--paper", "no-such-check"]).0, 2);
    assert_eq!(run(&["dims", "--p", "9"]).0, 2);
    assert_eq!(run(&["invariant", "--pd", "/nonexistent.pd"]).0, 2);
}

#[test]
fn invariant_from_file() {
    let dir = std::env::temp_dir().join(format!("so3tqft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unknot.pd");
    std::fs::write(&path, "U 0\ncomponent 0 framing 0 surgery\n").unwrap();
    let (code, out) = run(&["invariant", "--pd", path.to_str().unwrap(), "--p", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("o_p: 1"), "{out}");
    let (_, out) = run(&["cutbound", "--p", "5", "--pd", path.to_str().unwrap()]);
    assert!(out.contains("cut_bound: 1"), "{out}");
}

#[test]
fn mapping_torus_range() {
    let (code, out) = run(&["--format", "json", "mapping-torus", "--p", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["tori"].as_array().unwrap().len(), 15);
    assert_eq!(v["result"]["paths_agree"], true);
}
