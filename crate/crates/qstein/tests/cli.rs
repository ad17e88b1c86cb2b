use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
}

fn qstein(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qstein"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("QSTEIN_WINDOW");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().unwrap();
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn json_of(r: &Run) -> Value {
    serde_json::from_str(r.stdout.trim()).unwrap_or_else(|e| panic!("invalid JSON {:?}: {e}", r.stdout))
}

/// Every command with the exit code it must produce.
const FIXTURES: &[(&[&str], i32)] = &[
    (&["normalize", "t*z", "--q", "1/2"], 0),
    (&["normalize", "(1/2+1/3*i)*z^2*t", "--q", "i"], 0),
    (&["normalize", "z^-1"], 2),
    (&["normalize", "d[2]*d[3]", "--algebra", "ChargesZ"], 0),
    (&["normalize", "zeta[1]*tau[2]", "--algebra", "azb-dual", "--q", "2"], 0),
    (&["coproduct", "t^2", "--q", "1/2"], 0),
    (&["coproduct", "one[0]", "--algebra", "FunZ", "--window", "2"], 0),
    (&["antipode", "z*t", "--q", "1/2"], 0),
    (&["antipode", "tau[3]", "--algebra", "CurrentsC"], 0),
    (&["counit", "z^3", "--q", "2"], 0),
    (&["pair", "t^2", "zeta[0]*tau[2]", "--q", "1/2"], 0),
    (&["pair", "z^2+zinv", "zeta[2]", "--algebra", "LaurentCx"], 0),
    (&["pair", "z", "d[1]", "--algebra", "LaurentCx"], 2),
    (&["seminorm", "eval", "--family", "PDK", "--params", "4,2", "--q", "1/2", "z*t+3*zinv"], 0),
    (&["seminorm", "eval", "--family", "NormC_OCx", "--params", "2", "z^2+zinv"], 0),
    (&["seminorm", "eval", "--family", "RN", "--params", "3", "zeta[1]*tau[1]"], 0),
    (&["seminorm", "check-submult", "--family", "NormC_Azb", "--params", "2", "--samples", "200", "--tol", "1e-9"], 0),
    (
        &[
            "seminorm",
            "check-submult",
            "--family",
            "PDK",
            "--params",
            "4,2",
            "--q",
            "2",
            "--samples",
            "200",
            "--path",
            "float",
        ],
        0,
    ),
    (&["seminorm", "check-submult", "--family", "PDK", "--params", "1,2", "--q", "1/2", "--samples", "10"], 2),
    (&["seminorm", "eval", "--family", "Unknown", "z"], 2),
    (&["qbinom", "4", "2", "--q", "1/2"], 0),
    (&["qbinom", "4", "2", "--q", "0"], 2),
    (&["fourier", "--map", "sharpZ", "d[3]+2*d[-1]"], 0),
    (&["fourier", "--map", "sharpC", "tau[2]"], 0),
    (&["fourier", "--map", "cyclic:4", "d[1]"], 0),
    (&["fourier", "--map", "cyclic:3", "d[1]"], 0),
    (&["fourier", "--map", "sharpQ", "d[1]"], 2),
    (&["check-hopf", "--algebra", "azb", "--q", "i", "--window", "3"], 0),
    (&["check-hopf", "--algebra", "azb-dual", "--q", "1/2", "--window", "2"], 0),
    (&["check-hopf", "--algebra", "PolyC", "--window", "4"], 0),
    (&["check-hopf", "--algebra", "CyclicCharges:3"], 0),
    (&["check-hopf", "--algebra", "skew:LaurentCx", "--q", "2", "--window", "2"], 0),
    (&["check-hopf", "--algebra", "nonsense"], 2),
    (&["check-qpair", "--base", "LaurentCx", "--q", "1/2"], 0),
    (&["check-qpair", "--base", "LaurentCx", "--q", "1/2", "2*z"], 1),
    (&["check-envelope", "--map", "sharpCx", "--window", "3"], 0),
    (&["check-envelope", "--map", "cyclic:3"], 0),
    (&["check-reflexivity", "--q", "1/2", "--window", "2"], 0),
    (&["check-reflexivity", "--q", "3/5+4/5*i", "--window", "2"], 0),
    (&["envelope", "outer", "--grid", "pow2:2", "--set", "1;z;zinv"], 0),
    (&["envelope", "inner", "--grid", "1,2,1/2", "--set", "1;z"], 0),
    (&["envelope", "outer", "--set", "z"], 2),
    (&["envelope", "duality", "--f", "rCN(2,1)", "--set", "1;z;zinv"], 0),
    (&["envelope", "closure", "--f", "rCN(1,1)", "--g", "rCN(2,2)"], 0),
    (&["envelope", "majorize", "--g", "rCN(1,3)", "--grid", "pow2:4"], 0),
    (&["azb", "normalize", "t*z", "--q", "1/2"], 0),
    (&["azb", "coproduct", "t", "--q", "2"], 0),
    (&["azb", "antipode", "t", "--q", "2"], 0),
    (&["azb", "pair", "t^3", "zeta[0]*tau[3]", "--q", "2"], 0),
    (&["azb", "check-hopf", "--window", "2", "--q", "1/2"], 0),
    (&["azb", "frobnicate"], 2),
    (&["frobnicate"], 2),
    (&[], 2),
    (&["qbinom", "4", "2", "--q"], 2),
];

#[test]
fn fixture_exit_codes_and_determinism() {
    for (args, expected) in FIXTURES {
        let first = qstein(args, None, &[]);
        assert_eq!(first.code, *expected, "exit code of {args:?}: {}", first.stdout);
        let payload = json_of(&first);
        let status = payload.get("status").and_then(Value::as_str);
        match expected {
            0 => assert!(status.is_none() || status == Some("ok"), "{args:?}: {payload}"),
            1 => assert_eq!(status, Some("violation"), "{args:?}"),
            _ => assert_eq!(status, Some("error"), "{args:?}"),
        }
        let second = qstein(args, None, &[]);
        assert_eq!(first.stdout, second.stdout, "output of {args:?} is not byte-stable");
    }
}

#[test]
fn documented_examples() {
    let r = qstein(&["normalize", "t*z", "--q", "1/2"], None, &[]);
    assert_eq!(json_of(&r), json!({"basis": [[[1, 1], "1/2"]]}));
    let r = qstein(&["qbinom", "4", "2", "--q", "1/2"], None, &[]);
    assert_eq!(json_of(&r)["value"], "35/16");
    let r = qstein(&["check-hopf", "--algebra", "azb", "--q", "i", "--window", "3"], None, &[]);
    assert_eq!(json_of(&r)["status"], "ok");
    let r = qstein(&["envelope", "majorize", "--g", "rCN(1,3)"], None, &[]);
    let v = json_of(&r);
    assert_eq!((v["C"].as_str(), v["N"].as_u64()), (Some("8"), Some(3)));
}

#[test]
fn values_match_hand_computation() {
    // κ(t) = 1⊗t + t⊗z.
    let v = json_of(&qstein(&["coproduct", "t", "--q", "2"], None, &[]));
    assert_eq!(v, json!({"tensor": [[[[0, 0], [0, 1]], "1"], [[[0, 1], [1, 0]], "1"]]}));
    // σ(t) = −q⁻¹ z⁻¹ t.
    let v = json_of(&qstein(&["antipode", "t", "--q", "2"], None, &[]));
    assert_eq!(v, json!({"basis": [[[-1, 1], "-1/2"]]}));
    // ⟨t², ζ₀⊛τ²⟩ = (2)!_q = 1 + q.
    let v = json_of(&qstein(&["pair", "t^2", "zeta[0]*tau[2]", "--q", "1/2"], None, &[]));
    assert_eq!(v["value"], "3/2");
    // PDK at D=4, K=2, q=1/2: p(z t) = 4·(1/2) = 2 and p(3 z⁻¹) = 12.
    let v = json_of(&qstein(
        &["seminorm", "eval", "--family", "PDK", "--params", "4,2", "--q", "1/2", "z*t+3*zinv"],
        None,
        &[],
    ));
    assert_eq!(v["value"], "14");
    // The fourth roots of unity: δ¹ ↦ (1, i, −1, −i).
    let v = json_of(&qstein(&["fourier", "--map", "cyclic:4", "d[1]"], None, &[]));
    assert_eq!(v["basis"], json!([[[0], "1"], [[1], "0+1*i"], [[2], "-1"], [[3], "0+-1*i"]]));
    let v = json_of(&qstein(&["fourier", "--map", "cyclic:3", "d[1]"], None, &[]));
    assert_eq!(v["values"][1], json!([[1], ["-0.5", "0.866025403784"]]));
}

#[test]
fn stdin_and_window_environment() {
    let r = qstein(&["azb", "normalize", "-", "--q", "1/2"], Some("t * z\n"), &[]);
    assert_eq!(json_of(&r), json!({"basis": [[[1, 1], "1/2"]]}));
    let narrow = qstein(&["coproduct", "one[0]", "--algebra", "FunZ"], None, &[("QSTEIN_WINDOW", "1")]);
    let wide = qstein(&["coproduct", "one[0]", "--algebra", "FunZ"], None, &[]);
    assert_eq!(json_of(&narrow)["tensor"].as_array().unwrap().len(), 3);
    assert_eq!(json_of(&wide)["tensor"].as_array().unwrap().len(), 9);
    let explicit =
        qstein(&["coproduct", "one[0]", "--algebra", "FunZ", "--window", "2"], None, &[("QSTEIN_WINDOW", "1")]);
    assert_eq!(json_of(&explicit)["tensor"].as_array().unwrap().len(), 5);
}

#[test]
fn syntax_errors_report_position() {
    let r = qstein(&["normalize", "z^-1"], None, &[]);
    assert_eq!(r.code, 2);
    let msg = json_of(&r)["error"].as_str().unwrap().to_string();
    assert!(msg.contains("position 2") && msg.contains("unsigned integer"), "{msg}");
}
