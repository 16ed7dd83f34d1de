use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bergmankit"));
    c.env_remove("BERGMANKIT_SIZE_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let o = run(&full);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("json output"))
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let files = Files {
            dir: tempfile::tempdir().unwrap(),
        };
        files.build("k4.mat", &["--kind", "complete", "--size", "4"]);
        files.build("fano.mat", &["--kind", "projective", "--dim", "2", "--prime", "2"]);
        files.build("u23.mat", &["--kind", "uniform", "--rank", "2", "--size", "3"]);
        files
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    fn build(&self, name: &str, args: &[&str]) {
        let out = self.arg(name);
        let mut full = vec!["matroid", "build", "--out", out.as_str()];
        full.extend_from_slice(args);
        let o = run(&full);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn nested_fan_of_k4() {
    let f = Files::new();
    let k4 = f.arg("k4.mat");
    let out = f.arg("k4.fan");
    let o = run(&["fan", "build", "--matroid", &k4, "--structure", "nested", "--out", &out]);
    assert!(o.status.success());
    assert!(f.path("k4.fan").is_file());
    let (_, rays) = structured(&["fan", "rays", "--fan", &out]);
    assert_eq!(rays.as_array().unwrap().len(), 10);
    let (_, cones) = structured(&["fan", "cones", "--fan", &out]);
    assert_eq!(cones.as_array().unwrap().len(), 15);
}

#[test]
fn cremona_criterion_exit_codes() {
    let f = Files::new();
    let (code, v) = structured(&["map", "cremona-criterion", "--matroid", &f.arg("k4.mat"), "--basis", "14,24,34"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], Value::Bool(true));
    let o = run(&["map", "cremona-criterion", "--matroid", &f.arg("fano.mat"), "--basis", "001,010,100"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["map", "cremona-criterion", "--matroid", &f.arg("k4.mat"), "--basis", "12,13,23"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn os_identity_on_fano() {
    let f = Files::new();
    let (code, v) = structured(&["invariants", "verify-os", "--matroid", &f.arg("fano.mat")]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["matches"] == Value::Bool(true)));
}

#[test]
fn input_errors_exit_one() {
    let f = Files::new();
    assert_eq!(run(&["matroid", "describe", "--matroid", &f.arg("missing.mat")]).status.code(), Some(1));
    std::fs::write(f.path("bad.mat"), "{ not json").unwrap();
    assert_eq!(run(&["matroid", "describe", "--matroid", &f.arg("bad.mat")]).status.code(), Some(1));
}

#[test]
fn size_cap_from_environment() {
    let f = Files::new();
    let k4 = f.arg("k4.mat");
    let args = ["invariants", "osdim", "--matroid", k4.as_str(), "--p", "2"];
    assert!(run(&args).status.success());
    let o = bin().args(args).env("BERGMANKIT_SIZE_CAP", "3").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn braid_group_and_fine_gap() {
    let f = Files::new();
    let k4 = f.arg("k4.mat");
    let (code, v) = structured(&[
        "map", "group-order", "--matroid", &k4, "--structure", "nested", "--automorphisms", "--cremona", "14,24,34",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], Value::from(120));
    let map = f.arg("c.map");
    assert!(run(&["map", "cremona", "--matroid", &k4, "--basis", "14,24,34", "--out", &map]).status.success());
    for (structure, code) in [("nested", 0), ("fine", 2)] {
        let fan = f.arg(&format!("{structure}.fan"));
        run(&["fan", "build", "--matroid", &k4, "--structure", structure, "--out", &fan]);
        assert_eq!(run(&["map", "verify-iso", "--map", &map, "--fan", &fan]).status.code(), Some(code));
    }
}

#[test]
fn parallel_split_passes() {
    let f = Files::new();
    let u = f.arg("u23.mat");
    f.build(
        "p.mat",
        &["--kind", "parallel", "--left", &u, "--right", &u, "--left-point", "2", "--right-point", "0"],
    );
    let (code, v) = structured(&["map", "parallel-split", "--matroid", &f.arg("p.mat")]);
    assert_eq!(code, 0);
    assert_eq!(v["backward_off"], Value::from(60));
}

#[test]
fn verification_commands_succeed_on_k4() {
    let f = Files::new();
    let k4 = f.arg("k4.mat");
    for args in [
        vec!["invariants", "charpoly", "--matroid", &k4, "--method", "both"],
        vec!["chow", "relations", "--matroid", &k4],
        vec!["chow", "coarse3", "--matroid", &k4],
        vec!["chow", "degree", "--matroid", &k4, "--flat", "12^2", "--cross-check"],
        vec!["csm", "balancing", "--matroid", &k4],
        vec!["csm", "cross-check", "--matroid", &k4],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
    let (_, v) = structured(&["chow", "degree", "--matroid", &k4, "--flat", "12,13,23^2"]);
    assert_eq!(v["degree"], Value::from(-1));
}

#[test]
fn output_is_byte_identical() {
    let f = Files::new();
    let k4 = f.arg("k4.mat");
    for args in [
        vec!["fan", "build", "--matroid", k4.as_str(), "--structure", "fine"],
        vec!["matroid", "describe", "--matroid", k4.as_str()],
        vec!["--format", "structured", "csm", "weights", "--matroid", k4.as_str(), "--k", "1"],
        vec!["map", "matroid-iso", "--source", k4.as_str(), "--target", k4.as_str()],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
