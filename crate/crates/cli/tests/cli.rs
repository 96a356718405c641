use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn gimel(args: &[&str]) -> (i32, String, String) {
    gimel_env(args, &[])
}

fn gimel_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gimel"));
    cmd.args(args).env_remove("GIMEL_CACHE_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn error_kind(stderr: &str) -> String {
    json(stderr.lines().last().unwrap())["error"].as_str().unwrap().to_string()
}

#[test]
fn compute_pretzel_fixture() {
    let (code, out, _) = gimel(&["compute", "--fixture", fixture("p2m37_n5.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(strings(&r["gimel"]["breakpoints"]), ["0", "1/2", "1"]);
    assert_eq!(strings(&r["gimel"]["values"]), ["0", "-5/8", "-3/2"]);
    assert_eq!(r["genus_bound"], "3/2");
    assert_eq!(r["genus_bound_ceil"], "2");
    assert_eq!(r["name"], "p2m37_n5");
}

#[test]
fn compute_unknot_pd() {
    let (code, out, _) = gimel(&["compute", "--pd", "PD[]", "--n", "2"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(strings(&r["gimel"]["values"]), ["0", "0"]);
    for key in ["slope0", "value1", "s", "genus_bound", "genus_bound_ceil"] {
        assert_eq!(r[key], "0", "{key}");
    }
    // gamma(1) of the unknot is n - 1
    assert_eq!(r["u"], "1");
}

#[test]
fn tensor_then_compute() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.json");
    let kd = dir.path().join("kd.json");
    let (a, b) = (fixture("s3_p754.json"), fixture("s3_p976.json"));
    let (code, _, err) = gimel(&["tensor", a.to_str().unwrap(), b.to_str().unwrap(), "-o", k.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (_, out, _) = gimel(&["compute", "--fixture", k.to_str().unwrap()]);
    let r = json(&out);
    assert_eq!(strings(&r["gimel"]["breakpoints"]), ["0", "1/3", "1"]);
    assert_eq!(strings(&r["gimel"]["values"]), ["0", "0", "-1/2"]);
    assert_eq!(strings(&r["gamma"]["values"]), ["-2", "-2/3", "0"]);
    assert_eq!(gimel(&["dual", k.to_str().unwrap(), "-o", kd.to_str().unwrap()]).0, 0);
    let (_, out, _) = gimel(&["compute", "--fixture", kd.to_str().unwrap()]);
    assert_eq!(strings(&json(&out)["gimel"]["values"]), ["0", "0"]);
}

#[test]
fn several_fixtures_keep_their_order() {
    let paths: Vec<String> = (3..=8).map(|n| fixture(&format!("p2m37_n{n}.json")).to_str().unwrap().to_string()).collect();
    let mut args = vec!["compute"];
    for p in &paths {
        args.push("--fixture");
        args.push(p);
    }
    let (code, out, _) = gimel(&args);
    assert_eq!(code, 0);
    let names: Vec<String> = json(&out).as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, (3..=8).map(|n| format!("p2m37_n{n}")).collect::<Vec<_>>());
}

#[test]
fn output_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let f = fixture("p2m37_n4.json");
    let args = ["compute", "--fixture", f.to_str().unwrap(), "--cache-dir", cache.to_str().unwrap()];
    let (c1, first, _) = gimel(&args);
    let (c2, second, _) = gimel(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    assert_eq!(first, gimel(&["compute", "--fixture", f.to_str().unwrap()]).1);
    let entries: Vec<PathBuf> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    // A hit is served from the store: a marked entry comes back verbatim.
    let marked = first.trim_end().replace("p2m37_n4", "from-cache");
    std::fs::write(&entries[0], &marked).unwrap();
    let (_, third, _) = gimel(&args);
    assert_eq!(third.trim_end(), marked);
    // The environment variable selects the same store.
    let (_, fourth, _) =
        gimel_env(&["compute", "--fixture", f.to_str().unwrap()], &[("GIMEL_CACHE_DIR", cache.to_str().unwrap())]);
    assert_eq!(fourth.trim_end(), marked);
}

#[test]
fn decompose_reports_the_summand() {
    let (code, out, _) = gimel(&["decompose", "--fixture", fixture("p2m37_n3.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let d = json(&out);
    let sn = d["sn"].as_u64().unwrap() as usize;
    assert_eq!(d["summands"][sn]["euler"], 1);

    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.json");
    std::fs::write(&two, r#"{"n": 2, "ring": "equivariant", "modules": {"0": [0, 0]}}"#).unwrap();
    let (code, _, err) = gimel(&["decompose", "--fixture", two.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(error_kind(&err), "decomposition");
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let p = |s: &str| dir.path().join(s).to_str().unwrap().to_string();
    let (a, b) = (fixture("s3_p754.json"), fixture("s3_p976.json"));
    gimel(&["tensor", a.to_str().unwrap(), b.to_str().unwrap(), "-o", &p("k.json")]);
    for (src, dst) in [(a.to_str().unwrap().to_string(), "a.r"), (b.to_str().unwrap().to_string(), "b.r"), (p("k.json"), "k.r")] {
        assert_eq!(gimel(&["compute", "--fixture", &src, "-o", &p(dst)]).0, 0);
    }
    let (code, out, err) = gimel(&["verify", "--reports", &p("a.r"), &p("b.r"), &p("k.r")]);
    assert_eq!(code, 0, "{err}");
    let verdicts = json(&out);
    let verdicts = verdicts.as_array().unwrap();
    assert_eq!(verdicts.len(), 3 * 3 + 3);
    assert!(verdicts.iter().filter(|v| v["required"] == true).all(|v| v["holds"] == true));

    // Lower the value at 1/3 so that the cone bound breaks.
    let mut r = json(&std::fs::read_to_string(p("k.r")).unwrap());
    r["gimel"]["values"][1] = Value::String("-1".into());
    std::fs::write(p("bad.r"), r.to_string()).unwrap();
    let (code, out, err) = gimel(&["verify", "--reports", &p("bad.r")]);
    assert_eq!(code, 2);
    assert_eq!(error_kind(&err), "property");
    assert!(json(&out).as_array().unwrap().iter().any(|v| v["property"] == "cone" && v["holds"] == false));

    assert_eq!(gimel(&["verify", "--reports", &p("a.r"), &p("b.r")]).0, 1);
}

#[test]
fn plot_csv() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    gimel(&["compute", "--fixture", fixture("p2m37_n3.json").to_str().unwrap(), "-o", r.to_str().unwrap()]);
    assert_eq!(gimel(&["plot", "--report", r.to_str().unwrap(), "-o", csv.to_str().unwrap()]).0, 0);
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,value");
    // 100 grid points plus the breakpoint 1/2, which is off the grid
    assert_eq!(lines.len(), 1 + 101);
    assert!(lines.contains(&"0.500000000000,-0.750000000000"));
    assert_eq!(*lines.last().unwrap(), "1.000000000000,-2.000000000000");
}

#[test]
fn exit_codes() {
    let (code, _, err) = gimel(&["compute", "--pd", "PD[X[1,4,2,5]"]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "parse"));
    let (code, _, err) = gimel(&["compute", "--pd", "PD[X[1,2,3,4]]"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "invalid_diagram"));
    let (code, _, err) = gimel(&["compute", "--pd", "PD[]", "--n", "3"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "unsupported"));
    let (code, _, err) = gimel(&["compute", "--fixture", "/nonexistent/f.json"]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "io"));
    let (code, _, err) = gimel(&["frobnicate"]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "usage"));
    let f = fixture("p2m37_n3.json");
    let (code, _, err) = gimel(&["compute", "--fixture", f.to_str().unwrap(), "--potential", "x^3 - x"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "potential_shape"));
    assert_eq!(gimel(&["compute", "--fixture", f.to_str().unwrap(), "--potential", "x^3 - x^2"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "ring": "equivariant", "modules": {"0": [0], "1": [0], "2": [0]},
                             "differentials": {"0": [["1"]], "1": [["1"]]}}"#).unwrap();
    let (code, _, err) = gimel(&["compute", "--fixture", bad.to_str().unwrap()]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "validation"));
    assert_eq!(gimel(&["--help"]).0, 0);
}
