use std::path::PathBuf;
use std::process::Command;

fn moorek(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_moorek")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("moorek-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn kgroups_text_reports() {
    let (code, out, _) = moorek(&["kgroups", "M(3)", "-n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("K̃^0        = Z_3"));
    assert!(out.contains("K̃^1        = 0"));
    assert!(out.contains("K̃^0(;Z_3) = Z_3"));
    assert!(out.contains("K^1(;Z_3)  = Z_3"));

    let (code, out, _) = moorek(&["kgroups", "point", "-n", "2"]);
    assert_eq!(code, 0);
    for line in ["K̃^0        = 0", "K̃^1        = 0", "K̃^0(;Z_2) = 0", "K^1(;Z_2)  = 0"] {
        assert!(out.contains(line), "{line} missing from\n{out}");
    }
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    for args in [
        vec!["kgroups", "MxSM(3)", "-n", "3", "--json"],
        vec!["verify", "prod(S(2),M(2))", "-n", "2", "--json"],
        vec!["twisted-table", "MxSM(2)", "-n", "2", "--subgroup", "--json"],
        vec!["identify", "MxSM(3)", "-n", "3", "--json"],
        vec!["count-fields", "prod(S(2),S(2))", "-n", "6", "--json"],
        vec!["pimsner", "S(2)", "-n", "3", "--e", "t", "--json"],
    ] {
        let (code, out, err) = moorek(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
        assert_eq!(again, out, "{args:?}");
    }
}

#[test]
fn profile_json_parses_back_into_a_profile() {
    let (_, out, _) = moorek(&["kgroups", "MxSM(3)", "-n", "3", "--json"]);
    let p: moorek::kprofile::KProfile = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&serde_json::to_value(&p).unwrap()).unwrap() + "\n";
    assert_eq!(again, out);
}

#[test]
fn runs_are_deterministic() {
    let args = ["twisted-table", "MxSM(3)", "-n", "3", "--json"];
    assert_eq!(moorek(&args), moorek(&args));
}

#[test]
fn subgroup_identification() {
    let (code, out, _) = moorek(&["identify", "MxSM(3)", "-n", "3", "--subgroup"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("nonabelian, order 27, Heisenberg"), "{out}");
}

#[test]
fn exit_codes() {
    // parse error, with position
    let (code, _, err) = moorek(&["kgroups", "smash(M(2)", "-n", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("position"), "{err}");
    // modulus too small, unknown verb, missing argument
    assert_eq!(moorek(&["kgroups", "S(2)", "-n", "1"]).0, 2);
    assert_eq!(moorek(&["frobnicate", "S(2)", "-n", "2"]).0, 2);
    assert_eq!(moorek(&["kgroups", "S(2)"]).0, 2);
    // full group for even n is refused
    assert_eq!(moorek(&["identify", "MxSM(2)", "-n", "2"]).0, 2);
    // help goes to stdout with success
    let (code, out, _) = moorek(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("twisted-table"));
}

#[test]
fn ambiguity_lists_stipulations_and_splitting_file_resolves_it() {
    let (code, _, err) = moorek(&["kgroups", "smash(M(3),M(3))", "-n", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("ambiguous extension"), "{err}");
    assert!(err.contains(r#"{"k0n": "direct", "k1n": "direct"}"#), "{err}");

    let file = temp_file("split.json", r#"{"k0n": "direct", "k1n": "direct"}"#);
    let (code, out, err) = moorek(&["kgroups", "smash(M(3),M(3))", "-n", "3", "--splitting", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("K̃^0        = Z_3"));
    assert!(out.contains("K̃^1        = Z_3"));
    assert!(out.contains("assumption:"));

    let bad = temp_file("bad.json", r#"{"k2": "direct"}"#);
    assert_eq!(moorek(&["kgroups", "S(2)", "-n", "2", "--splitting", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn simn_on_ring_files() {
    let z4 = temp_file("z4.json", r#"{"factors": [4], "labels": ["t"], "mult": []}"#);
    let (code, out, _) = moorek(&["simn", z4.to_str().unwrap(), "-n", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"classes": 2, "tensor_order": 2, "inequality": true}));

    let (code, out, _) = moorek(&["simn", z4.to_str().unwrap(), "-n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("{0, 2t}") && out.contains("{t, 3t}"), "{out}");
    assert!(out.contains("r^{-1}"), "{out}");

    // Z_2[t]/(t^3) violates the inequality, which is a check failure
    let trunc = temp_file("trunc.json", r#"{"factors": [2, 2], "labels": ["t", "t2"], "mult": [[0, 0, [0, 1]]]}"#);
    assert_eq!(moorek(&["simn", trunc.to_str().unwrap(), "-n", "2"]).0, 1);

    let z6 = temp_file("z6.json", r#"{"factors": [6], "labels": ["g"]}"#);
    assert_eq!(moorek(&["simn", z6.to_str().unwrap(), "-n", "2"]).0, 2);
    assert_eq!(moorek(&["simn", "/nonexistent/ring.json", "-n", "2"]).0, 2);
}

#[test]
fn verify_reports_pass_lines() {
    let (code, out, _) = moorek(&["verify", "MxSM(3)", "-n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS bockstein-exactness"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn pimsner_reports_pieces() {
    let (code, out, _) = moorek(&["pimsner", "point", "-n", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("K_0(O_E) = Z_4"), "{out}");
    assert!(out.contains("K_1(O_E) = 0"), "{out}");
    assert_eq!(moorek(&["pimsner", "point", "-n", "4", "--rank", "1"]).0, 2);
    let (_, out, _) = moorek(&["pimsner", "S(1)", "-n", "3", "--rank", "3"]);
    assert!(out.contains("coker1 = Z_2"), "{out}");
}
