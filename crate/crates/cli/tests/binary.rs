use std::fs;
use std::process::Command;

fn hqnn() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hqnn"))
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = hqnn().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        hqnn().arg("--help").output().unwrap().status.code(),
        Some(0)
    );

    let bad_cfg = tmp.path().join("bad.toml");
    fs::write(&bad_cfg, "dataset_dir = 3\n").unwrap();
    let out = hqnn()
        .args(["curve", "--config"])
        .arg(&bad_cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = hqnn()
        .args(["diag", "--dataset"])
        .arg(tmp.path().join("missing"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    fs::write(tmp.path().join("broken.ham"), "qubits: 1\nterm: x Z\n").unwrap();
    let out = hqnn()
        .args(["diag", "--dataset"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn generate_diagnose_and_gradcheck() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    let status = hqnn()
        .args([
            "gen-synthetic",
            "--qubits",
            "2",
            "--bond-lengths",
            "0.5,1.0,1.5",
            "--out",
        ])
        .arg(&data)
        .status()
        .unwrap();
    assert!(status.success());

    let out = hqnn()
        .args(["diag", "--dataset"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);

    let cfg = tmp.path().join("exp.toml");
    fs::write(
        &cfg,
        "dataset_dir = \"data\"\noutput_dir = \"out\"\ntrain_bond_lengths = [0.5, 1.5]\n\
         test_bond_lengths = [1.0]\nvariants = [\"with-measurements\"]\nseeds = [4]\n",
    )
    .unwrap();
    let out = hqnn()
        .args(["gradcheck", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());

    let model = tmp.path().join("model.json");
    let out = hqnn()
        .args(["train", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&model)
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    assert_eq!(json["parameters"].as_array().unwrap().len(), 8);
    assert_eq!(json["seed"], 4);
}
