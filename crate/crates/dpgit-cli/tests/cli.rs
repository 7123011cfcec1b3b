use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../dpgit-core/data/fixtures")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dpgit")).args(args).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dpgit-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

#[test]
fn hj_and_menu() {
    let (code, v) = run(&["hj", "9", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["expansion"], serde_json::json!([5, 2]));
    assert_eq!(v["result"]["string"], serde_json::json!([-5, -2]));
    assert_eq!(v["result"]["reversed"], serde_json::json!([-2, -5]));
    let (_, v) = run(&["menu", "2"]);
    assert_eq!(v["result"], serde_json::json!(["A1", "A2", "A3", "A4", "1/4(1,1)"]));
}

#[test]
fn cayley_cubic_is_stable() {
    let (code, v) = run(&["git-stability", &fixture("x3c.dp")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["class"], "Stable");
    assert_eq!(v["result"]["profile"], serde_json::json!(["A1", "A1", "A1", "A1"]));
}

#[test]
fn exit_code_contract() {
    let d = scratch("codes");
    let good = d.join("good.dp");
    let degenerate = d.join("degenerate.dp");
    let malformed = d.join("malformed.dp");
    std::fs::write(&good, "ring P^3 vars x0 x1 x2 x3\npoly x0^3 + x1^3 + x2^3 + x3^3\n").unwrap();
    std::fs::write(&degenerate, "ring P^4 vars a b c d e\npoly a^2 + b^2 + c^2 + d^2 + e^2\npoly 2*a^2 + 2*b^2 + 2*c^2 + 2*d^2 + 2*e^2\n").unwrap();
    std::fs::write(&malformed, "ring P^3 vars x0 x1 x2 x3\npoly x0 +\n").unwrap();
    for cmd in ["classify-singularities", "git-stability"] {
        assert_eq!(run(&[cmd, good.to_str().unwrap()]).0, 0);
        let (code, v) = run(&[cmd, degenerate.to_str().unwrap()]);
        assert_eq!(code, 2, "{v}");
        assert_eq!(v["error"]["kind"], "math");
        let (code, v) = run(&[cmd, malformed.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert_eq!(v["error"]["line"], 2);
    }
    assert_eq!(run(&["hj", "6", "2"]).0, 2);
}

#[test]
fn output_is_byte_stable_without_timings() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string(&v).unwrap()
    };
    let f = fixture("x1_inf.dp");
    let a = strip(run(&["git-stability", &f]).1);
    let b = strip(run(&["git-stability", &f]).1);
    assert_eq!(a, b);
}

#[test]
fn moduli_point_of_a_pencil() {
    let d = scratch("moduli");
    let f = d.join("pencil.dp");
    std::fs::write(&f, "ring P^4 vars a b c d e\npoly a^2 + b^2 + c^2 + d^2 + e^2\npoly b^2 + 2*c^2 + 3*d^2 + 4*e^2\n").unwrap();
    let (code, v) = run(&["moduli-point", f.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["point"][0], "1");
    assert_eq!(v["result"]["on_deg4_divisor"], false);
    let g = d.join("inv.dp");
    std::fs::write(&g, "invariants [8, 1, 0, 0, 0]\n").unwrap();
    let (_, v) = run(&["moduli-point", g.to_str().unwrap()]);
    assert_eq!(v["result"]["on_deg3_divisor"], true);
}

#[test]
fn degenerate_command() {
    let d = scratch("degen");
    let f = d.join("z8.dp");
    std::fs::write(&f, "ring P(1,1,2,3) vars x y z w\npoly w^2 - z^2*x^2 - z*y^4 - x^5*y - y^6\nweights [2, 1, 0, 2]\n").unwrap();
    let (code, v) = run(&["degenerate", f.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["limit"], "-y^4*z - x^2*z^2 + w^2");
}

#[test]
fn batch_mode_writes_one_output_per_file() {
    let d = scratch("batch");
    for f in ["x3t.dp", "x3c.dp", "fermat.dp", "x2t.dp"] {
        std::fs::copy(fixtures().join(f), d.join(f)).unwrap();
    }
    let (code, v) = run(&["classify-singularities", "--batch", d.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["files"].as_array().unwrap().len(), 4);
    let out: Value = serde_json::from_str(&std::fs::read_to_string(d.join("x3t.classify-singularities.json")).unwrap()).unwrap();
    assert_eq!(out["result"]["summary"], "3A2");
}

#[test]
fn truncation_override_keeps_results() {
    let f = fixture("x1e.dp");
    let (_, a) = run(&["classify-singularities", &f]);
    let out = Command::new(env!("CARGO_BIN_EXE_dpgit"))
        .args(["classify-singularities", "--truncation", "6", &f])
        .env("DPGIT_TRUNCATION", "5")
        .output()
        .unwrap();
    let b: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(a["result"]["summary"], b["result"]["summary"]);
}

#[test]
fn catalog_verify_all_green() {
    let (code, v) = run(&["catalog-verify"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"].as_array().unwrap().len(), 13);
}
