use std::f64::consts::TAU;
use std::fs;
use std::path::Path;
use std::process::Command;

fn ringgauge(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ringgauge")).args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

fn quick_config(dir: &Path, b_final: f64) -> String {
    let path = dir.join("scenario.json");
    let cfg = serde_json::json!({
        "schema_version": 1,
        "gauge": "landau",
        "flux": 0.3333333333333333,
        "l_max": 32,
        "n_grid": 256,
        "classical": {
            "rho0": 1.0, "v0": 1.0, "b_final": b_final,
            "ramp_time": 20.0 * TAU, "dt": 1e-3, "record_every": 10
        }
    });
    fs::write(&path, cfg.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

fn column(path: &Path, name: &str) -> Vec<f64> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let idx = reader.headers().unwrap().iter().position(|h| h == name).unwrap();
    reader.records().map(|r| r.unwrap()[idx].parse().unwrap()).collect()
}

#[test]
fn spectrum_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a");
    let (code, text) = ringgauge(&["spectrum", "--flux", "0.3333333333333333", "--lmax", "32", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(out.join("spectrum.csv").exists() && out.join("spectrum_report.json").exists());
    assert_eq!(column(&out.join("spectrum.csv"), "landau").len(), 65);

    let (code, text) = ringgauge(&["spectrum", "--lmax", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2, "{text}");
    assert!(text.contains("l_max below minimum 8"));

    let (code, text) = ringgauge(&["spectrum", "--flux", "-2.5", "--tol", "spectrum=1e-20", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1, "{text}");
    assert!(text.contains("FAIL spectrum_cross_gauge"));

    let (code, _) = ringgauge(&["spectrum", "--tol", "nonsense=1", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _) = ringgauge(&["spectrum", "--gauges", "coulomb", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn zero_flux_spectra_coincide() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = ringgauge(&["spectrum", "--flux", "0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let path = dir.path().join("spectrum_interior.csv");
    let (cyl, landau, sing) = (column(&path, "cylindrical"), column(&path, "landau"), column(&path, "singular"));
    let expected = column(&path, "expected");
    for i in 0..expected.len() {
        assert_eq!(cyl[i], expected[i]);
        assert_eq!(sing[i], expected[i]);
        assert!((landau[i] - expected[i]).abs() < 1e-14);
    }
}

#[test]
fn figure_files() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["fig1", "fig3"] {
        let (code, text) = ringgauge(&["figure", "--which", which, "--out", dir.path().to_str().unwrap()]);
        assert_eq!(code, 0, "{text}");
        let re = column(&dir.path().join(format!("{which}.csv")), "re_psi");
        assert_eq!(re.len(), 2 * 257);
        assert!((re[0] - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert!((re[257] - 0.398_942_280_401_432_7).abs() < 1e-15);
    }
    let (code, _) = ringgauge(&["figure", "--which", "fig2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn classical_ledgers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path(), 0.01);
    let out = dir.path().join("ramp");
    let (code, text) = ringgauge(&["classical", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let lz = column(&out.join("trajectory.csv"), "lz_cyl");
    assert!(lz.iter().all(|v| (v - lz[0]).abs() < 1e-8));
    let b = column(&out.join("trajectory.csv"), "B");
    assert_eq!((b[0], *b.last().unwrap()), (0.0, 0.01));

    let cfg = quick_config(dir.path(), 0.0);
    let flat = dir.path().join("flat");
    let (code, text) = ringgauge(&["classical", "--config", &cfg, "--out", flat.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let traj = flat.join("trajectory.csv");
    let (cyl, landau) = (column(&traj, "lz_cyl"), column(&traj, "lz_landau"));
    assert!(cyl.iter().chain(&landau).all(|v| (v - 1.0).abs() < 1e-9));

    let (code, _) = ringgauge(&["classical", "--config", "/no/such/file.json", "--out", flat.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = ringgauge(&["verify", "--suite", "quantum", "--flux", "0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify_report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() > 20);

    let cfg = quick_config(dir.path(), 0.01);
    let (code, text) = ringgauge(&["verify", "--suite", "all", "--config", &cfg, "--jobs", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("PASS classical_diamagnetic_shift"));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"schema_version":1,"gauge":"landau","flux":0.5,"l_max":32,"n_grid":256,"colour":"red"}"#).unwrap();
    let (code, _) = ringgauge(&["verify", "--config", bad.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn json_tables_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(
        &path,
        r#"{"schema_version":1,"gauge":"singular","flux":-2.5,"l_max":32,"n_grid":128,"output_format":"json"}"#,
    )
    .unwrap();
    let (code, text) = ringgauge(&["spectrum", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let table: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("spectrum.json")).unwrap()).unwrap();
    assert_eq!(table["columns"][0], "index");
    assert_eq!(table["rows"].as_array().unwrap().len(), 65);
}
