use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lightlike"))
}

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn analyze_json(file: &str, extra: &[&str]) -> Value {
    let path = model(file);
    let mut args = vec!["analyze", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), contents).unwrap();
    f
}

fn strings(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect()
}

#[test]
fn gfh_example_is_osserman_with_sixth_power() {
    let r = analyze_json("gfh-p2.json", &[]);
    assert_eq!(r["model"]["kind"], "gfh");
    let pt = &r["model"]["points"][0];
    assert_eq!(pt["classification"], "coisotropic");
    assert_eq!(pt["radical_rank"], 2);
    assert_eq!(pt["signature"]["positive"], 2);
    assert_eq!(pt["signature"]["negative"], 2);
    assert!(pt["facts"].as_array().unwrap().iter().all(|f| f["holds"] == true));
    let o = &pt["osserman"];
    assert_eq!(o["verdict"], true);
    // det(A − λI) of a nilpotent 6×6 matrix is λ⁶
    let coeffs: Vec<&str> = o["char_poly"]["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["0", "0", "0", "0", "0", "0", "1"]);
    assert_eq!(o["directions"].as_array().unwrap().len(), 32);
    assert_eq!(pt["trace_identity_max_residual"], "0");
    assert_eq!(r["seed"], 7);
}

#[test]
fn umbilical_example_is_einstein_and_semi_symmetric() {
    let r = analyze_json("umbilical.json", &[]);
    let m = &r["model"];
    assert_eq!(m["kind"], "hypersurface");
    assert_eq!(m["classification"], "coisotropic");
    assert_eq!(m["einstein"]["lambda"], "3");
    // Ric = m c g + B tr A_N − B A_N = 2g + 2g − g on the screen
    assert_eq!(strings(&m["ricci"]), [["0", "0", "0"], ["0", "3", "0"], ["0", "0", "3"]]);
    let s = &m["symmetry"];
    assert_eq!(s["semi_symmetric"]["holds"], true);
    assert_eq!(s["totally_umbilical"]["holds"], true);
    assert_eq!(s["rho"], "1");
    assert_eq!(s["semi_symmetry_tuples"], 729);
    assert_eq!(s["local_symmetry"]["holds"], false);
    assert!(s["implications"].as_array().unwrap().iter().all(|i| i["applies"] == false || i["holds"] == true));
}

#[test]
fn raw_metric_example_emits_associated_metric() {
    let r = analyze_json("raw-metric.json", &[]);
    let m = &r["model"];
    assert_eq!(m["classification"], "coisotropic");
    assert_eq!(m["codimension"], 1);
    assert_eq!(m["radical_rank"], 1);
    // g + η⊗η with η the dual of the radical vector e_0
    assert_eq!(strings(&m["working_gram_tilde"]), [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]);
    assert_eq!(strings(&m["gram_tilde_inverse"]), [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]);
    assert!(m["curvature"].is_null());
}

/// `R_abcd = k(g_bc g_ad − g_ac g_bd)` flattened row-major.
fn constant_curvature_json(g: &[[i64; 3]; 3], k: i64) -> String {
    let mut comps = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    comps.push((k * (g[b][c] * g[a][d] - g[a][c] * g[b][d])).to_string());
                }
            }
        }
    }
    comps.join(", ")
}

#[test]
fn raw_metric_with_curvature_runs_the_osserman_test() {
    let g = [[0, 0, 0], [0, 1, 0], [0, 0, 1]];
    let text = format!(
        r#"{{"kind": "raw-metric", "gram": [[0,0,0],[0,1,0],[0,0,1]], "curvature": [{}], "options": {{"samples": 6}}}}"#,
        constant_curvature_json(&g, 2)
    );
    let f = write_temp(&text);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &r["model"]["curvature"];
    assert_eq!(c["status"]["verified"], true);
    assert_eq!(c["osserman"]["verdict"], true);
    assert_eq!(c["einstein"]["einstein"], true);

    // a lone component breaks the symmetries; no Osserman test is attempted
    let mut comps = vec!["0"; 81];
    comps[1 * 27 + 2 * 9 + 1 * 3 + 2] = "1";
    let text = format!(r#"{{"kind": "raw-metric", "gram": [[0,0,0],[0,1,0],[0,0,1]], "curvature": [{}]}}"#, comps.join(","));
    let f = write_temp(&text);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &r["model"]["curvature"];
    assert_eq!(c["status"]["verified"], false);
    assert!(c["status"]["violated_identity"].is_string());
    assert!(c["osserman"].is_null());
}

#[test]
fn reports_are_byte_identical_and_seed_changes_directions() {
    let path = model("gfh-p2.json");
    let p = path.to_str().unwrap();
    let a = run(&["analyze", p, "--seed", "3"]).stdout;
    let b = run(&["analyze", p, "--seed", "3"]).stdout;
    assert_eq!(a, b);
    let c = run(&["analyze", p, "--seed", "4"]).stdout;
    assert_ne!(a, c);
    let (ra, rc): (Value, Value) = (serde_json::from_slice(&a).unwrap(), serde_json::from_slice(&c).unwrap());
    let verdict = |r: &Value| r["model"]["points"][0]["osserman"]["verdict"].clone();
    assert_eq!(verdict(&ra), verdict(&rc));
}

#[test]
fn exact_reports_contain_no_floats_and_float_mode_agrees() {
    let exact = analyze_json("umbilical.json", &[]);
    fn all_strings_rational(v: &Value) -> bool {
        match v {
            Value::String(s) => !s.contains('.') || s.contains(' '),
            Value::Array(a) => a.iter().all(all_strings_rational),
            Value::Object(o) => o.values().all(all_strings_rational),
            _ => true,
        }
    }
    assert!(all_strings_rational(&exact["model"]));
    let float = analyze_json("umbilical.json", &["--mode", "float"]);
    assert_eq!(float["mode"], "float");
    assert_eq!(float["model"]["einstein"]["lambda"], "3.0");
    assert_eq!(float["model"]["symmetry"]["semi_symmetric"]["holds"], true);
}

#[test]
fn text_format_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.txt");
    let path = model("umbilical.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--format", "text", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(out_path).unwrap();
    assert!(text.contains("einstein: yes, λ = 3"));
    assert!(text.contains("semi-symmetric: yes"));
}

#[test]
fn schema_errors_name_the_field_and_exit_1() {
    let f = write_temp(r#"{"kind": "hypersurface", "c": 1, "g": [[0,0,0],[0,1,0],[0,0,1]], "B": [[0,0,0],[0,1,0],[0,0,{"num": 1}]], "A_N": [[0,0,0],[0,1,0],[0,0,1]]}"#);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("B[2][2]"), "{err}");

    let f = write_temp(r#"{"kind": "torus"}"#);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kind"));

    let f = write_temp(r#"{"kind": "gfh", "p": 1, "f": [{"exponents": [1], "num": 1, "scale": 2}], "h": [], "points": []}"#);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f[0]"));

    let out = run(&["analyze", "/nonexistent/model.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invariant_violations_are_input_errors() {
    // B(ξ, ·) ≠ 0
    let f = write_temp(r#"{"kind": "hypersurface", "c": 1, "g": [[0,0,0],[0,1,0],[0,0,1]], "B": [[0,1,0],[1,1,0],[0,0,1]], "A_N": [[0,0,0],[0,1,0],[0,0,1]]}"#);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input error"));

    // nondegenerate metric is not a lightlike hypersurface
    let f = write_temp(r#"{"kind": "hypersurface", "c": 1, "g": [[1,0],[0,1]], "B": [[0,0],[0,0]], "A_N": [[0,0],[0,0]]}"#);
    assert_eq!(run(&["analyze", f.path().to_str().unwrap()]).status.code(), Some(1));

    // gfh point of the wrong length
    let f = write_temp(r#"{"kind": "gfh", "p": 1, "f": [], "h": [], "points": [[0, 0, 0]]}"#);
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points[0]"));
}

#[test]
fn hypersurface_frame_hint_in_other_coordinates() {
    // e_0 + e_1 spans the radical of g = [[1,-1,0],[-1,1,0],[0,0,1]]
    let text = r#"{"kind": "hypersurface", "c": 2,
        "g": [[1,-1,0],[-1,1,0],[0,0,1]],
        "B": [[0,0,0],[0,0,0],[0,0,0]],
        "A_N": [[0,0,0],[0,0,0],[0,0,0]],
        "frame": {"radical": [[1,1,0]], "screen": [[1,0,0],[0,0,1]]}}"#;
    let f = write_temp(text);
    let out = run(&["analyze", f.path().to_str().unwrap(), "--samples", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let m = &r["model"];
    assert_eq!(m["frame"]["source"], "hint");
    assert_eq!(m["symmetry"]["totally_geodesic"]["holds"], true);
    // Ric = m c g with m = 2
    assert_eq!(m["einstein"]["lambda"], "4");
    assert_eq!(m["symmetry"]["local_symmetry"]["holds"], true);
}

#[test]
fn mutated_self_test_fails_with_witness() {
    let out = run(&["self-test", "--mode", "float", "--mutate", "char-poly-exponent", "--format", "text"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("criterion 1: FAIL"), "{text}");
    assert!(text.contains("instance 0:"));
    assert!(text.contains("criterion 2: PASS"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 1:"));
}

#[test]
fn float_self_test_passes() {
    let out = run(&["self-test", "--mode", "float"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 7);
}
