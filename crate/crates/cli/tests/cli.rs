use multiboost::datasets::toy_label;
use multiboost_cli::ingest::ingest_csv;
use multiboost_cli::{CliError, TraceFile};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiboost")).args(args).current_dir(dir).output().expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = bin(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], dir: &Path) -> i32 {
    bin(args, dir).status.code().expect("exited")
}

fn d1(dir: &Path) {
    fs::write(dir.join("d1.csv"), "x,y\n0,1\n1,-1\n2,1\n").unwrap();
}

#[test]
fn toygen_writes_the_labeled_grid() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["toygen", "--n", "7", "--out", "toy.csv"], dir.path());
    let data = ingest_csv(&dir.path().join("toy.csv")).unwrap();
    assert_eq!(data.len(), 49);
    for i in 0..data.len() {
        let x = data.x(i);
        assert_eq!(data.y(i), toy_label(x[0], x[1]));
    }
}

#[test]
fn one_discrete_round_on_three_points() {
    let dir = tempfile::tempdir().unwrap();
    d1(dir.path());
    ok(&["run", "--algo", "discrete", "--data", "d1.csv", "--rounds", "1", "--out", "t.json"], dir.path());
    let tf = TraceFile::read(&dir.path().join("t.json")).unwrap();
    assert_eq!(tf.rounds.len(), 1);
    assert!((tf.rounds[0].alpha - 0.5 * 2f64.ln()).abs() < 1e-15);
    for (a, b) in tf.rounds[0].w.iter().zip([0.25, 0.5, 0.25]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn mirror_trace_matches_discrete_hypotheses_and_alphas() {
    let dir = tempfile::tempdir().unwrap();
    d1(dir.path());
    ok(&["toygen", "--n", "10", "--out", "toy.csv"], dir.path());
    let read = |name: &str| TraceFile::read(&dir.path().join(name)).unwrap();
    for (data, rounds, bitwise) in [("d1.csv", "1", true), ("toy.csv", "40", false)] {
        for algo in ["discrete", "mirror"] {
            ok(&["run", "--algo", algo, "--data", data, "--rounds", rounds, "--out", &format!("{algo}.json")], dir.path());
        }
        let (a, b) = (read("discrete.json"), read("mirror.json"));
        assert_eq!(a.rounds.len(), b.rounds.len());
        for (x, y) in a.rounds.iter().zip(&b.rounds) {
            assert_eq!(serde_json::to_string(&x.hypothesis).unwrap(), serde_json::to_string(&y.hypothesis).unwrap());
            if bitwise {
                assert_eq!(x.alpha.to_bits(), y.alpha.to_bits());
            } else {
                // the two views accumulate rounding differently over long runs
                assert!((x.alpha - y.alpha).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn identical_runs_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["toygen", "--n", "8", "--out", "toy.csv"], dir.path());
    for (algo, learner) in [("discrete", "stump"), ("m1", "tree:2"), ("real", "stump")] {
        let args = |out: &'static str| {
            vec!["run", "--algo", algo, "--learner", learner, "--data", "toy.csv", "--rounds", "25", "--out", out]
        };
        ok(&args("a.json"), dir.path());
        ok(&args("b.json"), dir.path());
        assert_eq!(fs::read(dir.path().join("a.json")).unwrap(), fs::read(dir.path().join("b.json")).unwrap());
    }
}

#[test]
fn trace_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["toygen", "--n", "6", "--out", "toy.csv"], dir.path());
    ok(&["run", "--learner", "tree:3", "--data", "toy.csv", "--rounds", "5", "--out", "t.json"], dir.path());
    let text = fs::read_to_string(dir.path().join("t.json")).unwrap();
    let tf = TraceFile::parse(&text).unwrap();
    assert_eq!(tf.to_json().unwrap(), text);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    d1(dir.path());
    fs::write(dir.path().join("bad.csv"), "1,1\n2\n").unwrap();
    fs::write(dir.path().join("bad.json"), "{\"meta\": 3}").unwrap();
    assert_eq!(code(&["run", "--data", "d1.csv", "--rounds", "0", "--out", "x.json"], dir.path()), 2);
    assert_eq!(code(&["run", "--algo", "logit", "--data", "d1.csv", "--out", "x.json"], dir.path()), 2);
    assert_eq!(code(&["run", "--learner", "tree:0", "--data", "d1.csv", "--out", "x.json"], dir.path()), 2);
    assert_eq!(code(&["run", "--data", "bad.csv", "--out", "x.json"], dir.path()), 3);
    assert_eq!(code(&["analyze", "bad.json", "--data", "d1.csv", "--out", "rep"], dir.path()), 3);
    let numeric: CliError = multiboost::Error::Infeasible { sweeps: 1, residual: 1.0 }.into();
    assert_eq!(numeric.exit_code(), 4);
}

#[test]
fn multiclass_data_needs_a_multiclass_booster() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.csv"), "0,0\n1,1\n2,2\n0.1,0\n").unwrap();
    assert_eq!(code(&["run", "--algo", "discrete", "--data", "m.csv", "--out", "x.json"], dir.path()), 2);
    ok(&["run", "--algo", "m1", "--data", "m.csv", "--rounds", "3", "--out", "x.json"], dir.path());
}

#[test]
fn thread_cap_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_multiboost"))
            .args(["toygen", "--n", "3", "--out", "t.csv"])
            .env("MULTIBOOST_THREADS", v)
            .current_dir(dir.path())
            .status()
            .unwrap()
            .code()
    };
    assert_eq!(run("2"), Some(0));
    assert_eq!(run("0"), Some(2));
    assert_eq!(run("many"), Some(2));
}

#[test]
fn constant_weights_form_a_period_one_cycle() {
    let dir = tempfile::tempdir().unwrap();
    d1(dir.path());
    ok(&["run", "--data", "d1.csv", "--rounds", "1", "--out", "t.json"], dir.path());
    let mut tf = TraceFile::read(&dir.path().join("t.json")).unwrap();
    let mut r = tf.rounds[0].clone();
    r.w = vec![1.0 / 3.0; 3];
    tf.rounds = (1..=4).map(|t| {
        let mut x = r.clone();
        x.t = t;
        x
    }).collect();
    fs::write(dir.path().join("flat.json"), tf.to_json().unwrap()).unwrap();
    ok(&["analyze", "flat.json", "--out", "rep"], dir.path());
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("rep/summary.json")).unwrap()).unwrap();
    assert_eq!(s["cycle"]["entered"], true);
    assert_eq!(s["cycle"]["period"], 1);
}

#[test]
fn toy_trace_analysis_reports_a_short_stump_cycle() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["toygen", "--n", "20", "--out", "toy.csv"], dir.path());
    ok(&["run", "--data", "toy.csv", "--rounds", "200", "--out", "t.json"], dir.path());
    ok(&["analyze", "t.json", "--out", "rep", "--block", "20"], dir.path());
    let rep = dir.path().join("rep");
    for f in ["birkhoff.csv", "margins.csv", "margin_curve.csv", "bound.csv", "similarity.csv", "summary.json"] {
        assert!(rep.join(f).exists(), "{f}");
    }
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(rep.join("summary.json")).unwrap()).unwrap();
    assert_eq!(s["cycle"]["entered"], true);
    let distinct = s["cycle"]["distinct_hypotheses"].as_u64().unwrap();
    assert!((3..=10).contains(&distinct), "{distinct}");
    assert!(s["mean_similarity"].as_f64().is_some());
    assert_eq!(s["edge_bound"]["fraction_satisfied"], 1.0);
    let sim = fs::read_to_string(rep.join("similarity.csv")).unwrap();
    assert_eq!(sim.lines().count(), 201);
}

#[test]
fn depth_study_kappa_grows_with_depth() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["depth-study", "--depths", "1,3,6,10", "--rounds", "100", "--seed", "0", "--out", "ds"], dir.path());
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("ds/summary.json")).unwrap()).unwrap();
    let kappas: Vec<f64> = s.as_array().unwrap().iter().map(|d| d["mean_kappa"].as_f64().unwrap_or(1.0)).collect();
    assert!(kappas.windows(2).all(|w| w[1] >= w[0]), "{kappas:?}");
    for d in [1, 3, 6, 10] {
        assert!(dir.path().join(format!("ds/kappa_depth{d}.csv")).exists());
        assert!(dir.path().join(format!("ds/accuracy_depth{d}.csv")).exists());
    }
}

#[test]
fn kernel_outputs_agree_with_the_kernel_estimate() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["kernel-demo", "--dim", "6", "--sigma2", "0.1", "--rounds", "10", "--out", "kd"], dir.path());
    let csv = fs::read_to_string(dir.path().join("kd/kernel_demo.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let gap: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(gap <= 1e-8);
    }
    fs::write(dir.path().join("reg.csv"), "x1,x2,y\n0,1,0.5\n1,0,-0.2\n1,1,0.1\n").unwrap();
    ok(&["run", "--algo", "kernel", "--data", "reg.csv", "--rounds", "4", "--out", "k.json"], dir.path());
    let k: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("k.json")).unwrap()).unwrap();
    assert_eq!(k["rounds"].as_array().unwrap().len(), 4);
}
