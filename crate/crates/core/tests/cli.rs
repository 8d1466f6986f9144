use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use superell::cli::{Mode, RunConfig};

fn write_config(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("superell-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{name}.toml"));
    std::fs::write(&path, text).unwrap();
    path
}

fn superell(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superell")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), json, stdout)
}

fn with_config(name: &str, text: &str, args: &[&str]) -> (i32, Value, String) {
    let path = write_config(name, text);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.push("--config");
    all.push(&p);
    superell(&all)
}

const RAMANUJAN: &str = "f = [\"1\", \"0\", \"7\"]\nb = \"1\"\nheight_cap = \"log:1000\"\n";

#[test]
fn bound_st_matches_closed_form() {
    let (code, r, _) = with_config("st", "mode = \"bound-st\"\nf = [\"1\", \"0\", \"7\"]\nb = \"1\"\n", &["bound"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["mode"], "bound-st");
    let log_nat = r["bound"]["log_nat"].as_f64().unwrap();
    assert!((log_nat - (80.0 * 40f64.ln() + 22.0 * 7f64.ln())).abs() < 1e-9);
    assert_eq!(r["bound"]["estimate_mode"], "user-exact");
    let sum: f64 = r["bound"]["terms"].as_array().unwrap().iter().map(|t| t["value"].as_f64().unwrap()).sum();
    assert!((sum - log_nat).abs() < 1e-12);
}

#[test]
fn zero_b_exits_2() {
    let (code, r, _) = with_config("zero-b", "f = [\"1\", \"0\", \"7\"]\nb = \"0\"\nm = 3\n", &["bound", "--kind", "super"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["key"], "b");
    assert_eq!(r["error"]["message"], "b must be nonzero");
}

#[test]
fn hypotheses_are_errors() {
    let (code, r, _) = with_config("sq", "f = [\"1\", \"2\", \"1\"]\nb = \"1\"\nheight_cap = 2.0\nm = 2\n", &["solve"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["key"], "f");
    assert_eq!(r["error"]["message"], "f has multiple zeros");
    let (code, r, _) = with_config("m2", "f = [\"1\", \"0\", \"7\"]\nb = \"1\"\nm = 2\n", &["bound", "--kind", "super"]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().starts_with("hypothesis violated"));
    let (code, r, _) = with_config("gauss-solve", "f = [\"1\", \"0\", \"7\"]\nb = \"1\"\nm = 2\nheight_cap = 2.0\n[field]\npoly = [\"1\", \"0\", \"1\"]\n", &["solve"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["key"], "field");
    assert_eq!(r["error"]["message"], "solver supports K = Q only");
}

#[test]
fn malformed_inputs_name_the_key() {
    let (code, r, _) = with_config("bad-cap", "f = [\"1\", \"0\", \"7\"]\nb = \"1\"\nm = 2\nheight_cap = \"ten\"\n", &["solve"]);
    assert_eq!((code, r["error"]["key"].as_str()), (2, Some("height_cap")));
    let (code, r, _) = with_config("bad-f", "f = [\"1\", \"x\", \"7\"]\nb = \"1\"\nm = 2\nheight_cap = 1.0\n", &["solve"]);
    assert_eq!((code, r["error"]["key"].as_str()), (2, Some("f")));
    let (code, r, _) = superell(&["solve", "--config", "/nonexistent/superell.toml"]);
    assert_eq!((code, r["error"]["key"].as_str()), (2, Some("config")));
    let (code, _, _) = superell(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_ramanujan_nagell() {
    let (code, r, _) = with_config("rn", RAMANUJAN, &["verify", "--m-cap", "64"]);
    assert_eq!(code, 0);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["max_exponent"]["m"], 15);
    assert_eq!(r["max_exponent"]["witness"]["x"], "181");
    assert_eq!(r["max_exponent"]["witness"]["y"], "2");
}

#[test]
fn flags_override_config_and_echo_round_trips() {
    let text = "f = [\"1\", \"0\", \"0\", \"-2\"]\nb = \"1\"\nm = 2\nheight_cap = 1.0\n";
    let (code, r, _) = with_config("echo", text, &["solve", "--height-cap", "log:10000", "--workers", "2"]);
    assert_eq!(code, 0);
    let xs: Vec<&str> = r["solutions"].as_array().unwrap().iter().map(|s| s["x"].as_str().unwrap()).collect();
    assert_eq!(xs, ["3", "3"]);
    let echoed: RunConfig = serde_json::from_value(r["inputs"].clone()).unwrap();
    let mut expected = RunConfig::from_toml(text).unwrap();
    expected.mode = Some(Mode::Solve);
    expected.height_cap = Some(superell::cli::HeightCap::Spec("log:10000".into()));
    expected.workers = Some(2);
    assert_eq!(echoed, expected);
}

#[test]
fn reports_are_deterministic_across_worker_counts() {
    let text = "f = [\"1\", \"0\", \"0\", \"17\"]\nb = \"1\"\nm = 2\nheight_cap = \"log:2000\"\n";
    let (_, a, _) = with_config("det1", text, &["solve", "--workers", "1"]);
    let (_, b, _) = with_config("det4", text, &["solve", "--workers", "4"]);
    assert_eq!(a["solutions"], b["solutions"]);
    assert!(!a["solutions"].as_array().unwrap().is_empty());
}

#[test]
fn bound_over_gaussian_field_with_finite_places() {
    let text = "mode = \"bound-super\"\nf = [\"1\", \"0\", \"2\"]\nb = [\"0\", \"1\"]\nm = 3\n\n[field]\npoly = [\"1\", \"0\", \"1\"]\n\n[[primes]]\np = 5\n\n[[primes]]\np = 5\nfactor_index = 1\n";
    let (code, r, _) = with_config("gauss", text, &["bound"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["field"]["q_s"], "25");
    assert_eq!(r["field"]["s"], 3);
    assert_eq!(r["bound"]["inputs"]["abs_disc"], "4");
}

#[test]
fn selftest_passes() {
    let (code, r, _) = superell(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(r["selftest"]["failed"], 0);
}
