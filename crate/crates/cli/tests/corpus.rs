//! Every case in the shipped corpus: exit code, byte-identical reruns and
//! report shape.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvalg"))
        .current_dir(corpus())
        .args(args)
        .output()
        .unwrap()
}

fn cases() -> Vec<(String, Vec<String>, i32)> {
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus().join("manifest.json")).unwrap())
            .unwrap();
    manifest
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let args = c["args"]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| a.as_str().unwrap().to_string())
                .collect();
            (
                c["name"].as_str().unwrap().to_string(),
                args,
                c["exit"].as_i64().unwrap() as i32,
            )
        })
        .collect()
}

#[test]
fn corpus_covers_every_command_and_exit_code() {
    let cases = cases();
    let files = std::fs::read_dir(corpus()).unwrap().count();
    assert!(files >= 10);
    for command in [
        "validate",
        "check-morphism",
        "compose",
        "exp",
        "log",
        "qme-check",
        "pushforward",
        "brackets",
        "ibl-check",
    ] {
        for code in [0, 1] {
            assert!(
                cases.iter().any(|(_, a, e)| a[0] == command && *e == code),
                "{command} lacks an exit-{code} case"
            );
        }
    }
    assert!(cases.iter().any(|(_, _, e)| *e == 2));
}

#[test]
fn exit_codes_and_reports_match_the_manifest() {
    for (name, args, expected) in cases() {
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(expected),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report: Value = serde_json::from_slice(&out.stdout)
            .unwrap_or_else(|e| panic!("{name}: stdout is not JSON: {e}"));
        assert_eq!(report["command"], args[0].as_str(), "{name}");
        assert_eq!(report["pass"], expected == 0, "{name}");
        assert!(!out.stderr.is_empty(), "{name}: no summary");
        match expected {
            1 => {
                let failing: Vec<&Value> = report["checks"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter(|c| c["pass"] == false)
                    .collect();
                assert!(!failing.is_empty(), "{name}");
                assert!(
                    failing.iter().all(|c| c["witness"].is_object()),
                    "{name}: failure without a witness"
                );
            }
            2 => assert!(report["error"]["kind"].is_string(), "{name}"),
            _ => assert!(
                report["checks"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .all(|c| c["pass"] == true),
                "{name}"
            ),
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    for (name, args, _) in cases() {
        let (first, second) = (run(&args), run(&args));
        assert_eq!(first.stdout, second.stdout, "{name}");
        assert_eq!(first.stderr, second.stderr, "{name}");
    }
}

#[test]
fn output_flag_writes_the_same_report() {
    let dir = std::env::temp_dir().join(format!("mvalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args: Vec<String> = ["qme-check", "supertrivial.json", "candidate_solution.json"]
        .map(String::from)
        .to_vec();
    let plain = run(&args);
    let mut with_file = args.clone();
    with_file.extend(["-o".to_string(), path.display().to_string()]);
    let out = run(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), plain.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn composing_one_one_families_multiplies_them() {
    let args: Vec<String> = [
        "compose",
        "sym_xy.json",
        "sym_xy.json",
        "sym_xy.json",
        "family_swap_11.json",
        "family_back_11.json",
    ]
    .map(String::from)
    .to_vec();
    let report: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    let result = report["result"].as_array().unwrap();
    assert_eq!(result.len(), 1);
    assert_eq!(
        (result[0]["n"].as_u64(), result[0]["m"].as_u64()),
        (Some(1), Some(1))
    );
    let entries = result[0]["map"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["in"], serde_json::json!(["x"]));
    assert_eq!(entries[0]["out"][0]["monomial"], serde_json::json!(["x"]));
    assert_eq!(entries[0]["out"][0]["coeff"][0]["q"], "6/1");
}

#[test]
fn truncation_errors_suggest_a_larger_parameter() {
    let args: Vec<String> = [
        "exp",
        "sym_xy.json",
        "sym_xy_d1.json",
        "family_swap_11.json",
    ]
    .map(String::from)
    .to_vec();
    let report: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert_eq!(report["error"]["suggestion"], "rerun with --trunc D=2");
    let args: Vec<String> = [
        "qme-check",
        "bv_second_order.json",
        "candidate_deep_pole.json",
    ]
    .map(String::from)
    .to_vec();
    let report: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert_eq!(report["error"]["suggestion"], "rerun with --trunc P=8");
}
