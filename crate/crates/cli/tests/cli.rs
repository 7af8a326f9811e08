use std::process::{Command, Output};

fn sforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sforms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sforms(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).expect("valid json")
}

#[test]
fn group_queries() {
    assert_eq!(stdout(&["group", "2I", "order"]), "120\n");
    assert_eq!(stdout(&["group", "Y'", "order"]), "120\n");
    let classes = stdout(&["group", "2T", "classes"]);
    assert!(classes.starts_with("2T: 7 classes"));
    assert_eq!(classes.lines().count(), 8);
    let z6 = stdout(&["group", "Z6", "chartab"]);
    assert_eq!(z6.lines().count(), 7);
    assert_eq!(json(&["group", "2O", "classes", "--format", "json"])["classes"].as_array().unwrap().len(), 8);
}

#[test]
fn induce_examples() {
    assert_eq!(stdout(&["induce", "2I", "--gen", "S", "--r", "3"]), "2x4s + 2x6s\n");
    assert_eq!(stdout(&["induce", "2O", "--gen", "R", "--r", "1"]), "2s + 2s' + 2x4s\n");
    assert_eq!(stdout(&["induce", "2T", "--gen", "RST", "--r", "0"]), "1 + 1' + 1'' + 3x3\n");
    let doc = json(&["induce", "2I", "--gen", "S", "--r", "3", "--format", "json"]);
    assert_eq!(doc["schema_version"], 1);
    let c = doc["constituents"].as_array().unwrap();
    assert!(c.iter().all(|e| e["multiplicity"] == 2));
    let table = json(&["induce", "2O", "--gen", "T", "--format", "json"]);
    assert_eq!(table["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["induce", "2T", "--gen", "T", "--r", "6"][..],
        &["induce", "2T", "--gen", "X", "--r", "0"],
        &["group", "3T", "order"],
        &["group", "2T", "order", "--format", "dot"],
        &["spectrum", "2T", "--irrep", "5x"],
        &["spectrum", "2T", "--weight", "heat:-1"],
        &["spectrum", "Z4", "--r", "1", "--weight", "zeta:1"],
        &["torsion", "--q", "4", "--r", "0"],
        &["verify", "everything"],
        &["frobnicate"],
    ] {
        assert_eq!(sforms(args).status.code(), Some(2), "{args:?}");
    }
    let err = String::from_utf8(sforms(&["spectrum", "2T", "--irrep", "5x"]).stderr).unwrap();
    assert!(err.contains("2s''"), "valid names listed: {err}");
}

#[test]
fn spectrum_formats() {
    let csv = stdout(&["spectrum", "Z4", "--r", "1", "--nmax", "4", "--format", "csv"]);
    assert_eq!(csv, "level,eigenvalue,degeneracy\n0,0,0\n1,3,2\n2,8,0\n3,15,8\n4,24,0\n");
    let doc = json(&["spectrum", "2I", "--nmax", "12", "--format", "json", "--weight", "heat:0.5"]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["entries"][12]["degeneracy"], 13);
    assert_eq!(doc["spectral_sum"]["weight"]["kind"], "heat");
    // <RST> = {E, -E}, so this lens space is S³/Z2
    for r in ["0", "1"] {
        let lens = stdout(&["spectrum", "2T", "--gen", "RST", "--r", r, "--nmax", "20", "--format", "csv"]);
        assert_eq!(lens, stdout(&["spectrum", "Z2", "--r", r, "--nmax", "20", "--format", "csv"]));
    }
    let spinor = stdout(&["spectrum", "2T", "--irrep", "2S''", "--nmax", "6", "--format", "csv"]);
    assert!(spinor.lines().skip(1).step_by(2).all(|l| l.ends_with(",0")), "{spinor}");
}

#[test]
fn torsion_and_verify() {
    assert_eq!(stdout(&["torsion", "--q", "6", "--r", "3"]), "4\n");
    assert_eq!(stdout(&["torsion", "--q", "4", "--r", "1"]), "2\n");
    let out = stdout(&["verify", "isospectral", "--nmax", "60"]);
    assert!(out.trim_end().ends_with("0 failed"), "{out}");
    let doc = json(&["verify", "torsion", "--format", "json"]);
    assert_eq!(doc["schema_version"], 1);
    assert!(doc["items"].as_array().unwrap().iter().all(|i| i["status"] == "pass"));
    // the printed 4s relation in 2T fails, so the suite exits 1
    let rel = sforms(&["verify", "relations", "--nmax", "10"]);
    assert_eq!(rel.status.code(), Some(1));
    assert!(String::from_utf8(rel.stdout).unwrap().contains("FAIL relations/2T/S(4s)"));
}

#[test]
fn mckay_outputs() {
    let dot = stdout(&["mckay", "2O", "--format", "dot"]);
    assert!(dot.starts_with("graph \"2O McKay ~E7\" {"));
    assert_eq!(dot.matches(" -- ").count(), 7);
    assert_eq!(dot, stdout(&["mckay", "2O", "--format", "dot"]));
    let doc = json(&["mckay", "Z5", "--format", "json"]);
    assert_eq!(doc["ade_type"], "~A4");
    let classes = json(&["mckay", "2T", "--classes", "--format", "json"]);
    assert_eq!(classes["relinked_type"], "AffineE6");
    assert_eq!(classes["correspondence"]["two_to_one"], true);
    assert_eq!(sforms(&["mckay", "Z5", "--classes"]).status.code(), Some(2));
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("sforms-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("2O.json");
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    let fresh = stdout(&["group", "2O", "chartab", "--cache", p]);
    assert!(path.exists());
    assert_eq!(stdout(&["group", "2O", "chartab", "--cache", p]), fresh);
    assert_eq!(stdout(&["induce", "O'", "--gen", "R", "--r", "1", "--cache", p]), "2s + 2s' + 2x4s\n");
    assert_eq!(sforms(&["group", "2T", "order", "--cache", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
