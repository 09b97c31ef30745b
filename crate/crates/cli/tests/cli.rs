use std::process::{Command, Output};

use serde_json::Value;

fn ffdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffdisc")).args(args).output().expect("spawn ffdisc")
}

fn json_out(args: &[&str]) -> Value {
    let out = ffdisc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn classify_example_is_bounded() {
    let v = json_out(&["classify", "--q", "2", "--Q", "t^2*(t+1)^2", "--twist", "t:1/2,t+1:0/1"]);
    assert_eq!(v["verdict"], "bounded");
    assert_eq!(v["pm1"], "bounded");
}

#[test]
fn ramanujan_example() {
    let v = json_out(&["ramanujan", "--q", "2", "--G", "t", "--H", "1"]);
    assert_eq!(v["value"], -1);
    let m = json_out(&["ramanujan", "--q", "2", "--G", "t", "--H", "1", "--method", "moebius"]);
    assert_eq!(m["value"], -1);
}

#[test]
fn selftest_quick_exits_zero() {
    let out = ffdisc(&["selftest", "--profile", "quick"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion")).count(), 10);
}

#[test]
fn errors_are_json_on_stderr() {
    for args in [
        &["factor", "--q", "4", "--G", "t^2+"][..],
        &["factor", "--q", "6", "--G", "t"],
        &["longsum", "--q", "2", "--Q", "t^2*(t+1)", "--N", "5"],
        &["ramanujan", "--q", "2", "--G", "0", "--H", "1"],
        &["nonsense"],
    ] {
        let out = ffdisc(args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(out.stdout.is_empty());
        let err: Value = serde_json::from_slice(&out.stderr).unwrap_or_else(|_| panic!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
        assert!(err["error"].is_string() && err["message"].is_string());
    }
}

#[test]
fn outputs_are_deterministic() {
    let runs = [
        &["shortscan", "--q", "3", "--Q", "t^2", "--H", "2", "--N", "6", "--seed", "5"][..],
        &["longsum", "--q", "2", "--Q", "t^2*(t+1)^2", "--twist", "t:1/2,t+1:0/1", "--N", "40"],
        &["lexsum", "--q", "2", "--f", "liouville", "--N", "300", "--every", "7"],
        &["polymath", "--q", "2", "--d-max", "16"],
    ];
    for args in runs {
        let (a, b) = (ffdisc(args), ffdisc(args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn longsum_methods_agree() {
    let base = ["longsum", "--q", "3", "--Q", "t^2+1", "--twist", "t^2+1:1/3", "--N", "9"];
    let closed = String::from_utf8(ffdisc(&base).stdout).unwrap();
    let brute = String::from_utf8(ffdisc(&[&base[..], &["--method", "brute"]].concat()).stdout).unwrap();
    assert_eq!(closed.lines().next(), Some("N,value_re,value_im,running_max"));
    for (x, y) in closed.lines().zip(brute.lines()).skip(1) {
        let parse = |l: &str| l.split(',').skip(1).map(|v| v.parse::<f64>().unwrap()).collect::<Vec<_>>();
        for (a, b) in parse(x).into_iter().zip(parse(y)) {
            assert!((a - b).abs() < 1e-9, "{x} vs {y}");
        }
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let cache = dir.path().join("cache");
    std::fs::write(&cfg, format!("[field]\np = 3\n[output]\nformat = csv\n[cache]\ndir = {}\n", cache.display())).unwrap();
    let cfg = cfg.to_str().unwrap();

    let out = ffdisc(&["--config", cfg, "chars", "--Q", "t"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,chi,"), "{text}");
    assert_eq!(text.lines().count(), 3);

    // flags win over the file
    let v: Value = serde_json::from_slice(&ffdisc(&["--config", cfg, "--q", "2", "--format", "json", "chars", "--Q", "t^2"]).stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);

    std::fs::write(dir.path().join("bad.cfg"), "[field]\ncolour = red\n").unwrap();
    let out = ffdisc(&["--config", dir.path().join("bad.cfg").to_str().unwrap(), "chars", "--Q", "t"]);
    assert!(!out.status.success());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    let out = ffdisc(&["factor", "--q", "2", "--G", "t^3+t", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let factors: Vec<(String, u64)> =
        v["factors"].as_array().unwrap().iter().map(|f| (f["P"].as_str().unwrap().to_string(), f["e"].as_u64().unwrap())).collect();
    assert_eq!(factors, vec![("t".to_string(), 1), ("t+1".to_string(), 2)]);
}

#[test]
fn character_literals_round_trip() {
    let v = json_out(&["chars", "--q", "3", "--Q", "t^2+1"]);
    for c in v.as_array().unwrap() {
        let lit = c["chi"].as_str().unwrap();
        let g = json_out(&["gauss", "--q", "3", "--Q", "t^2+1", "--chi", lit]);
        assert_eq!(g["chi"].as_str(), Some(lit));
    }
}
