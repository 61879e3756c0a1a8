use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn lines(&self) -> Vec<Value> {
        self.stdout.lines().map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{e}: {l}"))).collect()
    }

    fn summary(&self) -> Value {
        self.lines().pop().expect("summary line")
    }

    fn entry(&self, axiom: &str) -> Value {
        self.lines().into_iter().find(|l| l["axiom"] == axiom).unwrap_or_else(|| panic!("no {axiom} in {}", self.stdout))
    }
}

fn run(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_algebroid"))
        .args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn verify_function_algebroid_on_p2() {
    let p2 = data("p2.json");
    let r = run(&["verify", "--example", "function-algebroid", "--groupoid", p2.to_str().unwrap()], None);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let lines = r.lines();
    let entries = &lines[..lines.len() - 1];
    assert!(entries.len() >= 50, "{}", entries.len());
    assert!(entries.iter().all(|e| e["status"] == "pass" && e["paper_eq"].is_string()));
    assert_eq!(r.summary()["ok"], true);
}

#[test]
fn non_counital_weight_suggests_the_groupoid_recipe() {
    let p2 = data("p2.json");
    let r = run(&["measure", "--example", "convolution", "--groupoid", p2.to_str().unwrap(), "--mu", "1,4"], None);
    assert_eq!(r.code, 1);
    let failing: Vec<Value> = r.lines().into_iter().filter(|l| l["status"] == "fail").collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["paper_eq"], "base-weight-counital");
    assert_eq!(failing[0]["note"], "apply groupoid_rn modifier");
}

#[test]
fn groupoid_recipe_piped_into_measure() {
    let m = run(&["modify", "--recipe", "groupoid_rn", "--mu", "1,4"], None);
    assert_eq!(m.code, 0, "{}", m.stderr);
    let meas = run(&["measure"], Some(&m.stdout));
    assert_eq!(meas.code, 0, "{}", meas.stdout);
    assert_eq!(meas.entry("σ^φ = σ₁")["status"], "pass");
    assert_eq!(meas.entry("δ⁺")["witness"]["trivial"], true);
    assert_eq!(meas.entry("δ⁻")["witness"]["trivial"], true);
    let v = run(&["verify", "--input", "-"], Some(&m.stdout));
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn missing_square_roots_are_reported() {
    let r = run(&["modify", "--recipe", "groupoid_rn", "--mu", "1,2"], None);
    assert_eq!(r.code, 1);
    let e = &r.lines()[0];
    assert_eq!(e["paper_eq"], "radon-nikodym-cocycle");
    assert_eq!(e["witness"]["missing"], serde_json::json!([2]));
    assert_eq!(e["note"], "rerun with --sqrt 2");
    let ok = run(&["modify", "--recipe", "groupoid_rn", "--mu", "1,2", "--sqrt", "2"], None);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    let meas = run(&["measure"], Some(&ok.stdout));
    assert_eq!(meas.code, 0, "{}", meas.stdout);
}

#[test]
fn crossed_and_inner_recipes() {
    let m = run(&["modify", "--recipe", "crossed_rn", "--mu", "1,4"], None);
    assert_eq!(m.code, 0, "{}", m.stderr);
    assert_eq!(run(&["measure"], Some(&m.stdout)).code, 0);
    let i = run(&["modify", "--example", "crossed-product", "--recipe", "inner", "--u", "1,2", "--v", "3,-1"], None);
    assert_eq!(i.code, 0, "{}", i.stderr);
    assert_eq!(run(&["verify"], Some(&i.stdout)).code, 0);
    let bad = run(&["modify", "--example", "crossed-product", "--recipe", "inner", "--u", "0,1", "--v", "1,1"], None);
    assert_eq!(bad.code, 2);
}

#[test]
fn dual_of_the_group_algebra() {
    let r = run(&["dual", "--example", "group-algebra"], None);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.entry("dual algebra")["witness"]["dim"], 2);
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["report", "--example", "crossed-product"], None);
    let b = run(&["report", "--example", "crossed-product"], None);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn build_then_integrals_with_out_file() {
    let dir = std::env::temp_dir().join(format!("algebroid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let art = dir.join("tensor.json");
    let b = run(&["build", "--example", "tensor", "--out", art.to_str().unwrap()], None);
    assert_eq!(b.code, 0);
    assert_eq!(b.summary()["ok"], true);
    let r = run(&["integrals", "--input", art.to_str().unwrap()], None);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.entry("Left partial integrals")["witness"]["dim"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schema_and_usage_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("algebroid-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"arrows\": [\"a\"], \n \"units\": 3}").unwrap();
    let r = run(&["verify", "--example", "convolution", "--groupoid", bad.to_str().unwrap()], None);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line"), "{}", r.stderr);
    assert_eq!(run(&["verify", "--example", "nope"], None).code, 2);
    assert_eq!(run(&["measure", "--example", "convolution", "--mu", "1,0.5"], None).code, 2);
    assert_eq!(run(&["frobnicate"], None).code, 2);
    let art = run(&["verify"], Some("{\"kind\": \"regular-mha\", \"mha\": {\"algebra\": {\"dim\": 1, \"structure\": [[[[0, \"x\"]]]]}}}"));
    assert_eq!(art.code, 2);
    assert!(art.stderr.contains("artifact.mha"), "{}", art.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}
