use std::path::Path;
use std::process::{Command, Output};

use cfmm::{CVec, Kernel, C64};
use cfmm_cli::format::{PointCloud, ResultFile};

fn cfmm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfmm")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = cfmm(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    cfmm(args).status.code().unwrap()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn value(stdout: &str, key: &str) -> f64 {
    let line = stdout.lines().find(|l| l.starts_with(&format!("{key}="))).unwrap();
    line[key.len() + 1..].parse().unwrap()
}

#[test]
fn gen_round_trips_and_is_reproducible() {
    let d = tempfile::tempdir().unwrap();
    let (a, b, c) = (p(d.path(), "a.zf"), p(d.path(), "b.zf"), p(d.path(), "c.zf"));
    ok(&["gen", "--family", "wobble2d", "--n", "1000", "--out", &a, "--charges", "--seed", "5"]);
    ok(&["gen", "--family", "wobble2d", "--n", "1000", "--out", &b, "--charges", "--seed", "5", "--a", "0.05", "--b", "3", "--t0", "13"]);
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let pc = PointCloud::read(&a).unwrap();
    assert_eq!((pc.dim, pc.len(), pc.charges.as_ref().unwrap().len()), (2, 1000, 1000));
    pc.write(&c).unwrap();
    assert_eq!(std::fs::read(&c).unwrap(), bytes);

    ok(&["gen", "--family", "uniform3d", "--n", "50", "--out", &a, "--seed", "9"]);
    ok(&["gen", "--family", "uniform3d", "--n", "50", "--out", &b, "--seed", "9"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read(&a).unwrap().len(), 24 + 50 * 48);
}

#[test]
fn gen_rejects_bad_parameters() {
    let d = tempfile::tempdir().unwrap();
    let a = p(d.path(), "a.zf");
    assert_eq!(code(&["gen", "--family", "wobble2d", "--n", "10", "--out", &a, "--a", "-1"]), 2);
    assert_eq!(code(&["gen", "--family", "uniform2d", "--n", "10", "--out", &a, "--lipschitz", "1.5"]), 2);
    assert_eq!(code(&["gen", "--family", "uniform2d", "--n", "10", "--out", &a, "--t0", "3"]), 2);
    assert_eq!(code(&["gen", "--family", "uniform2d", "--n", "0", "--out", &a]), 2);
    assert_eq!(code(&["gen", "--family", "sphere", "--n", "10", "--out", &a]), 2);
}

#[test]
fn single_pair_equals_kernel() {
    let d = tempfile::tempdir().unwrap();
    let (s, t, o) = (p(d.path(), "s.zf"), p(d.path(), "t.zf"), p(d.path(), "o.zf"));
    let y = CVec::from_parts([0.1, -0.2, 0.3], [0.02, 0.0, 0.01]);
    let x = CVec::from_parts([4.0, 1.0, -2.0], [0.1, -0.3, 0.0]);
    let q = C64::new(0.6, -1.1);
    PointCloud::from_points(&[y], Some(vec![q])).write(&s).unwrap();
    PointCloud::from_points(&[x], None).write(&t).unwrap();
    ok(&["eval", "--kernel", "helm3d", "--wavenumber", "2.5", "--eps", "1e-9", "--src", &s, "--targ", &t, "--out", &o]);
    let u = ResultFile::read(&o).unwrap();
    assert_eq!(u.values, vec![Kernel::Helm3d(2.5).value(&x, &y).unwrap() * q]);
}

#[test]
fn eval_matches_direct_through_check() {
    let d = tempfile::tempdir().unwrap();
    for (kernel, wave, family, eps) in [("lap2d", None, "wobble2d", "1e-12"), ("helm2d", Some("6.283185307179586"), "wobble2d", "1e-6"), ("lap3d", None, "wobble3d", "1e-6")] {
        let (pts, f, g) = (p(d.path(), "pts.zf"), p(d.path(), "f.zf"), p(d.path(), "g.csv"));
        ok(&["gen", "--family", family, "--n", "3000", "--out", &pts, "--charges"]);
        let mut k = vec!["--kernel", kernel];
        if let Some(w) = wave {
            k.extend(["--wavenumber", w]);
        }
        let mut ev = vec!["eval", "--eps", eps, "--src", &pts, "--out", &f];
        ev.extend(&k);
        let report = ok(&ev);
        assert_eq!(value(&report, "n_targets"), 3000.0);
        let mut di = vec!["direct", "--src", &pts, "--out", &g];
        di.extend(&k);
        ok(&di);
        let tol = format!("{:e}", 3.0 * eps.parse::<f64>().unwrap());
        let chk = ok(&["check", "--fmm-out", &f, "--direct-out", &g, "--charges", &pts, "--tol", &tol]);
        assert!(value(&chk, "relerr") <= 3.0 * eps.parse::<f64>().unwrap(), "{kernel}: {chk}");
    }
}

#[test]
fn separate_targets_and_csv_input() {
    let d = tempfile::tempdir().unwrap();
    let (s, t, f, g) = (p(d.path(), "s.csv"), p(d.path(), "t.zf"), p(d.path(), "f.zf"), p(d.path(), "g.zf"));
    ok(&["gen", "--family", "uniform3d", "--n", "1500", "--out", &s, "--charges", "--seed", "3"]);
    ok(&["gen", "--family", "uniform3d", "--n", "400", "--out", &t, "--seed", "4"]);
    ok(&["eval", "--kernel", "lap3d", "--eps", "1e-8", "--src", &s, "--targ", &t, "--out", &f, "--leaf-size", "30"]);
    ok(&["direct", "--kernel", "lap3d", "--src", &s, "--targ", &t, "--out", &g]);
    assert_eq!(ResultFile::read(&f).unwrap().values.len(), 400);
    let chk = ok(&["check", "--fmm-out", &f, "--direct-out", &g, "--charges", &s]);
    assert!(value(&chk, "relerr") <= 3e-8, "{chk}");
}

#[test]
fn check_of_identical_results_is_zero() {
    let d = tempfile::tempdir().unwrap();
    let (s, f) = (p(d.path(), "s.zf"), p(d.path(), "f.zf"));
    ok(&["gen", "--family", "uniform2d", "--n", "200", "--out", &s, "--charges"]);
    ok(&["direct", "--kernel", "lap2d", "--src", &s, "--out", &f]);
    assert_eq!(value(&ok(&["check", "--fmm-out", &f, "--direct-out", &f, "--charges", &s]), "relerr"), 0.0);
}

#[test]
fn thread_count_does_not_change_output() {
    let d = tempfile::tempdir().unwrap();
    let (s, a, b) = (p(d.path(), "s.zf"), p(d.path(), "a.zf"), p(d.path(), "b.zf"));
    ok(&["gen", "--family", "wobble3d", "--n", "4000", "--out", &s, "--charges"]);
    ok(&["eval", "--kernel", "helm3d", "--wavenumber", "1", "--eps", "1e-6", "--src", &s, "--out", &a, "--threads", "1", "--deterministic"]);
    ok(&["eval", "--kernel", "helm3d", "--wavenumber", "1", "--eps", "1e-6", "--src", &s, "--out", &b, "--threads", "8", "--deterministic"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn failures_map_to_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let (s, o, n) = (p(d.path(), "s.zf"), p(d.path(), "o.zf"), p(d.path(), "n.zf"));
    ok(&["gen", "--family", "uniform2d", "--n", "500", "--out", &s, "--charges", "--lipschitz", "0.9"]);
    assert_eq!(code(&["eval", "--kernel", "lap2d", "--eps", "1e-6", "--src", &s, "--out", &o]), 3);
    assert_eq!(code(&["eval", "--kernel", "lap3d", "--eps", "1e-6", "--src", &s, "--out", &o]), 2);
    assert_eq!(code(&["eval", "--kernel", "helm2d", "--eps", "1e-6", "--src", &s, "--out", &o]), 2);
    assert_eq!(code(&["eval", "--kernel", "lap2d", "--eps", "1e-20", "--src", &s, "--out", &o]), 2);
    assert_eq!(code(&["eval", "--kernel", "lap2d", "--eps", "1e-6", "--src", &p(d.path(), "missing.zf"), "--out", &o]), 1);

    ok(&["gen", "--family", "wobble2d", "--n", "4000", "--out", &s, "--charges"]);
    assert_eq!(code(&["eval", "--kernel", "helm2d", "--wavenumber", "20", "--eps", "1e-9", "--src", &s, "--out", &o]), 4);

    ok(&["gen", "--family", "wobble2d", "--n", "10", "--out", &n]);
    assert_eq!(code(&["eval", "--kernel", "lap2d", "--eps", "1e-6", "--src", &n, "--out", &o]), 2);
}

#[test]
fn bench_writes_one_row_per_size() {
    let d = tempfile::tempdir().unwrap();
    let out = p(d.path(), "bench.csv");
    let stdout = ok(&["bench", "--kernel", "lap2d", "--eps", "1e-6", "--n-list", "2e3,4000,8e3", "--out", &out, "--direct-cap", "4000", "--subset", "500"]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,t_fmm_seconds,t_direct_seconds,relerr,P_max,k");
    assert_eq!(lines.len(), 4);
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), ["2000", "4000", "8000"]);
    assert!(!rows[1][2].is_empty() && rows[2][2].is_empty());
    for r in &rows {
        assert!(r[3].parse::<f64>().unwrap() <= 3e-6);
        assert_eq!(r[5], "1");
    }
}

mod round_trip {
    use super::*;
    use proptest::prelude::*;

    fn finite() -> impl Strategy<Value = f64> {
        prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn binary_and_csv_are_lossless(dim in 2usize..4, vals in prop::collection::vec((finite(), finite()), 0..60), charges in any::<bool>()) {
            let n = vals.len() / (dim + 1);
            let z: Vec<C64> = vals.iter().map(|&(a, b)| C64::new(a, b)).collect();
            let pc = PointCloud { dim, coords: z[..n * dim].to_vec(), charges: charges.then(|| z[n * dim..n * dim + n].to_vec()) };
            let b = pc.to_bytes();
            let back = PointCloud::from_bytes(&b).unwrap();
            prop_assert_eq!(back.to_bytes(), b);
            prop_assert_eq!(&PointCloud::from_csv(&pc.to_csv().unwrap()).unwrap(), &pc);
            let r = ResultFile { dim, values: z.clone() };
            prop_assert_eq!(ResultFile::from_bytes(&r.to_bytes()).unwrap(), r);
        }
    }
}
