use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn rotor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotor")).args(args).output().expect("rotor runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn simulate_fig2_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    let o = rotor(&["simulate", "--config", scenario("fig2.toml").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,x,y,theta,px,py,ptheta,H_re,H_im,L_re,L_im,G1_re,G1_im,G2_re,G2_im,P_1_1_re,P_1_1_im,Q_1_1_re,Q_1_1_im"
    );
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    let last: Vec<f64> = csv.lines().last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], std::f64::consts::TAU);
    let closure = [1, 2, 4, 5].iter().map(|&i| (last[i] - first[i]).powi(2)).sum::<f64>().sqrt();
    assert!(closure <= 1e-12, "{closure}");
    assert!(stdout(&o).contains("recurrence"));
    assert!(stdout(&o).contains("P_1_1"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |cmd: &str, cfg: &str, file: &str| {
        let out = dir.path().join(file);
        let o = rotor(&[cmd, "--config", scenario(cfg).to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("simulate", "gravity.toml", "a.csv"), run("simulate", "gravity.toml", "b.csv"));
    assert_eq!(run("verify-algebra", "gravity.toml", "a.json"), run("verify-algebra", "gravity.toml", "b.json"));
    assert_eq!(run("rank", "rank.toml", "a.json"), run("rank", "rank.toml", "b.json"));
}

#[test]
fn aniso_scenario_closes() {
    let o = rotor(&["simulate", "--config", scenario("aniso_3_5.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    let rows: Vec<Vec<f64>> = csv.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    let (first, last) = (&rows[0], rows.last().unwrap());
    let closure = [1, 2, 4, 5].iter().map(|&i| (last[i] - first[i]).powi(2)).sum::<f64>().sqrt();
    assert!(closure <= 1e-5, "{closure}");
    assert!(stderr(&o).contains("verlet"));
}

#[test]
fn verify_algebra_reports_json() {
    for cfg in ["fig2.toml", "gravity.toml"] {
        let o = rotor(&["verify-algebra", "--config", scenario(cfg).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(json["schema"], 1);
        let claims = json["claims"].as_array().unwrap();
        assert!(claims.iter().all(|c| c["status"] == "pass"));
        let ids: Vec<&str> = claims.iter().map(|c| c["claim-id"].as_str().unwrap()).collect();
        assert!(ids.contains(&"rank.with_P11"));
        if cfg == "gravity.toml" {
            assert!(ids.contains(&"gravity.L_not_conserved") && ids.contains(&"casimir.gravity"));
            assert_eq!(json["parameters"]["gravity"], "49/5");
        } else {
            assert!(ids.contains(&"su2.bracket.L_G1") && ids.contains(&"casimir.isotropic"));
        }
    }
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("scenario.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn rank_matches_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(scenario("rank.toml")).unwrap();
    let cases = [
        (r#"["F1", "F2", "G1", "G2", "P_1_1"]"#, 5, 0),
        (r#"["F1", "F2", "G1", "G2"]"#, 4, 0),
        (r#"["F1", "F2", "G1", "G2", "P_1_1", "L"]"#, 5, 0),
        (r#"["F1", "F2", "L", "G1", "G2"]"#, 4, 0),
        (r#"["F1", "F2", "G1", "G2"]"#, 5, 1),
    ];
    for (set, expected, code) in cases {
        let text = base
            .replace(r#"integrals = ["F1", "F2", "G1", "G2", "P_1_1"]"#, &format!("integrals = {set}"))
            .replace("expected_rank = 5", &format!("expected_rank = {expected}"));
        let o = rotor(&["rank", "--config", write_config(dir.path(), &text).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{set}: {}", stderr(&o));
    }

    let floating = base.replace(r#"mode = "exact""#, r#"mode = "floating""#);
    let o = rotor(&["rank", "--config", write_config(dir.path(), &floating).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["singular_values"].as_array().unwrap().len(), 5);
    assert_eq!(json["tolerance"], 1e-10);

    let complex = base.replace(r#""P_1_1"]"#, r#""K_1_1"]"#);
    let o = rotor(&["rank", "--config", write_config(dir.path(), &complex).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("K_1_1"));
}

#[test]
fn resonance_flags() {
    let o = rotor(&["resonance", "--capital-omega", "1", "--omega", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((json["m"].as_i64(), json["n"].as_i64(), json["schema"].as_i64()), (Some(1), Some(1), Some(1)));

    let o = rotor(&["resonance", "--capital-omega", "0.6", "--omega", "1", "--max-den", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((json["m"].as_i64(), json["n"].as_i64()), (Some(3), Some(5)));

    let o = rotor(&["resonance", "--capital-omega", "1.4142135", "--omega", "1", "--max-den", "100", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["found"], false);

    let o = rotor(&["resonance", "--capital-omega", "-0.5", "--omega", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap()["n"], -2);

    let o = rotor(&["resonance", "--config", scenario("fig2.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = rotor(&["resonance", "--omega", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rotor(&["resonance", "--capital-omega", "1", "--omega", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_configs_exit_2_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(scenario("fig2.toml")).unwrap();
    let cases = [
        (base.replace("rod_length = 1", "rod_length = 1\nwobble = 3"), "wobble"),
        (base.replace("k = 1", "k = 1\nomega = 1"), "omega"),
        (base.replace("mass = 1", "mass = \"one\""), "parameters.mass"),
        (base.replace("py = \"1/2\"", "py = \"1/0\""), "initial_state.py"),
        (base.replace("method = \"analytic\"", "method = \"euler\""), "euler"),
        (base.replace("variant = \"isotropic\"", "variant = \"gravity\""), "gravity"),
        ("[parameters\nmass = 1".to_string(), "parameters"),
    ];
    for (text, key) in cases {
        let o = rotor(&["simulate", "--config", write_config(dir.path(), &text).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{key}: {}", stderr(&o));
        assert!(stderr(&o).contains(key), "{key} not named in: {}", stderr(&o));
    }
    let o = rotor(&["simulate", "--config", "/nonexistent/scenario.toml"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rotor(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn runtime_singularity_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
[parameters]
mass = 1
omega = 1
inertia = "1/12"

[potential]
variant = "sw1"
alpha = 1
beta = 1
gamma = 1

[initial_state]
x = 0
y = 1
theta = 0
px = 0
py = 0
ptheta = 0

[run]
method = "verlet"
t_final = 1
"#;
    let o = rotor(&["simulate", "--config", write_config(dir.path(), text).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("singular"));
}

#[test]
fn verify_algebra_needs_an_exact_oscillator() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(scenario("fig2.toml")).unwrap();
    let o = rotor(&[
        "verify-algebra",
        "--config",
        write_config(dir.path(), &base.replace("k = 1", "k = 2")).to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("omega"), "{}", stderr(&o));
    let o = rotor(&["verify-algebra", "--config", scenario("aniso_3_5.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn in_process_entry_point() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = rotor_core::cli::run_with(
        ["rotor", "resonance", "--capital-omega", "0.75", "--omega", "1"],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("\"n\": 4"));
}
