use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use cwsoc::QuarticLaw;

fn cwsoc() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cwsoc"));
    c.env_remove("CWSOC_SEED").env("RUST_BACKTRACE", "0");
    c
}

fn run(args: &[&str]) -> Output {
    cwsoc().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn zero_sweeps_writes_only_the_header() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["simulate", "--n", "16", "--sweeps", "0", "--out", p(tmp.path())]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(tmp.path().join("samples.csv")).unwrap();
    assert_eq!(text, "chain,sweep,s,t,s_scaled,t_scaled\n");
    assert!(tmp.path().join("manifest.json").exists());
}

#[test]
fn simulate_records_follow_burn_in_and_thinning() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&[
        "simulate", "--n", "16", "--sweeps", "20", "--burn-in", "5", "--thin", "3", "--chains", "2", "--out",
        p(tmp.path()),
    ]);
    assert!(o.status.success());
    let (header, rows) = read_csv(&tmp.path().join("samples.csv"));
    assert_eq!(header, ["chain", "sweep", "s", "t", "s_scaled", "t_scaled"]);
    let keys: Vec<(String, String)> = rows.iter().map(|r| (r[0].clone(), r[1].clone())).collect();
    let mut expected = Vec::new();
    for chain in ["0", "1"] {
        for sweep in [8, 11, 14, 17, 20] {
            expected.push((chain.to_string(), sweep.to_string()));
        }
    }
    assert_eq!(keys, expected);
    for r in &rows {
        let s: f64 = r[2].parse().unwrap();
        let s_scaled: f64 = r[4].parse().unwrap();
        assert_eq!(s_scaled, s / 8.0);
    }
}

#[test]
fn chains_are_independent_of_how_many_run() {
    let tmp = tempfile::tempdir().unwrap();
    let one = tmp.path().join("one");
    let four = tmp.path().join("four");
    let base = ["simulate", "--n", "12", "--sweeps", "50", "--burn-in", "0", "--seed", "5"];
    assert!(run(&[&base[..], &["--out", p(&one)]].concat()).status.success());
    assert!(run(&[&base[..], &["--chains", "4", "--out", p(&four)]].concat()).status.success());
    let (_, a) = read_csv(&one.join("samples.csv"));
    let (_, b) = read_csv(&four.join("samples.csv"));
    assert_eq!(b.len(), 4 * a.len());
    assert_eq!(a[..], b[..a.len()]);
    assert_ne!(b[..a.len()].iter().map(|r| &r[2]).collect::<Vec<_>>(), b[a.len()..2 * a.len()].iter().map(|r| &r[2]).collect::<Vec<_>>());
}

#[test]
fn usage_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    for args in [
        vec!["verify", "--suite", "nonsense"],
        vec!["simulate", "--bogus-flag"],
        vec!["simulate", "--n", "0", "--out", p(tmp.path())],
        vec!["simulate", "--sigma", "-1", "--out", p(tmp.path())],
        vec!["simulate", "--n", "8"],
        vec!["limit"],
        vec!["limit", "--quantile", "1.5"],
        vec!["verify", "--tol", "no_such_key=1"],
        vec!["verify", "--tol", "inversion"],
        vec!["verify", "--n-list", "3-6"],
        vec!["plotdata", "--input", "x.csv", "--bins", "0"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn limit_queries() {
    let o = run(&["limit", "--cdf", "0", "--quantile", "0.5", "--density", "0", "--cdf", "-1"]);
    assert!(o.status.success());
    let lines: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    let law = QuarticLaw::standard();
    assert_eq!(lines[0], law.density(0.0));
    assert_eq!(lines[1], 0.5);
    assert_eq!(lines[2], law.cdf(-1.0));
    assert!(lines[3].abs() < 1e-12);

    let wide = run(&["limit", "--sigma", "2", "--density", "1"]);
    let d: f64 = stdout(&wide).trim().parse().unwrap();
    assert!((d - 0.5 * law.density(0.5)).abs() < 1e-15);
}

#[test]
fn limit_samples_pass_the_ks_command() {
    let draws = run(&["limit", "--sample", "100000", "--seed", "21"]);
    assert!(draws.status.success());
    assert_eq!(stdout(&draws).lines().count(), 100_000);
    let mut ks = cwsoc().arg("ks").stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    ks.stdin.take().unwrap().write_all(&draws.stdout).unwrap();
    let o = ks.wait_with_output().unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("samples 100000"));
    assert!(stdout(&o).contains("result PASS"));

    // Draws from the σ = 1 law are far from the σ = 3 law.
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("draws.txt");
    std::fs::write(&file, &draws.stdout).unwrap();
    let o = run(&["ks", "--input", p(&file), "--sigma", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result FAIL"));
}

#[test]
fn limit_sampling_reads_the_seed_from_the_environment() {
    let a = run(&["limit", "--sample", "5", "--seed", "44"]);
    let b = cwsoc().args(["limit", "--sample", "5"]).env("CWSOC_SEED", "44").output().unwrap();
    let c = cwsoc().args(["limit", "--sample", "5", "--seed", "1"]).env("CWSOC_SEED", "44").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn ks_rejects_garbage_and_empty_input() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.txt");
    std::fs::write(&bad, "0.1 0.2 banana").unwrap();
    assert_eq!(run(&["ks", "--input", p(&bad)]).status.code(), Some(1));
    let empty = tmp.path().join("empty.txt");
    std::fs::write(&empty, "\n").unwrap();
    assert_eq!(run(&["ks", "--input", p(&empty)]).status.code(), Some(1));
}

#[test]
fn plotdata_histogram_is_normalized() {
    let tmp = tempfile::tempdir().unwrap();
    let sim = tmp.path().join("sim");
    assert!(run(&["simulate", "--n", "32", "--sweeps", "2000", "--burn-in", "100", "--sigma", "1.5", "--out", p(&sim)])
        .status
        .success());
    let input = sim.join("samples.csv");

    let o = run(&["plotdata", "--input", p(&input), "--bins", "1"]);
    assert!(o.status.success());
    let (header, rows) = read_csv(&sim.join("histogram.csv"));
    assert_eq!(header, ["bin_left", "bin_right", "density_empirical", "density_limit"]);
    assert_eq!(rows.len(), 1);
    let width: f64 = rows[0][1].parse::<f64>().unwrap() - rows[0][0].parse::<f64>().unwrap();
    let d: f64 = rows[0][2].parse().unwrap();
    assert!((d * width - 1.0).abs() < 1e-12);
    assert_eq!(rows[0][3], "");

    let out = tmp.path().join("hist");
    let o = run(&["plotdata", "--input", p(&input), "--bins", "37", "--overlay-limit", "--out", p(&out)]);
    assert!(o.status.success());
    let (_, rows) = read_csv(&out.join("histogram.csv"));
    assert_eq!(rows.len(), 37);
    let law = QuarticLaw::new(1.5).unwrap();
    let mut mass = 0.0;
    for r in &rows {
        let v: Vec<f64> = r.iter().map(|x| x.parse().unwrap()).collect();
        mass += v[2] * (v[1] - v[0]);
        // σ is taken from the manifest next to the input.
        assert_eq!(v[3], law.density(0.5 * (v[0] + v[1])));
    }
    assert!((mass - 1.0).abs() < 1e-12, "{mass}");

    let o = run(&["plotdata", "--input", p(&input), "--column", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convergence_writes_one_row_per_order() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["convergence", "--n-list", "16,32", "--samples", "500", "--burn-in", "50", "--thin", "2", "--out", p(tmp.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&tmp.path().join("convergence.csv"));
    assert_eq!(header, ["n", "ks", "mean_t_scaled", "sd_t_scaled", "samples"]);
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0].as_str(), rows[1][0].as_str()), ("16", "32"));
    for r in &rows {
        let ks: f64 = r[1].parse().unwrap();
        assert!(ks > 0.0 && ks < 1.0);
        assert_eq!(r[4], "500");
    }
    let replayed = tmp.path().join("again");
    let o = run(&["replay", "--manifest", p(&tmp.path().join("manifest.json")), "--out", p(&replayed)]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read(tmp.path().join("convergence.csv")).unwrap(),
        std::fs::read(replayed.join("convergence.csv")).unwrap()
    );
}

#[test]
fn verify_complex_suite_writes_a_report() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--suite", "complex", "--out", p(tmp.path())]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(tmp.path().join("report.json")).unwrap();
    let reports: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reports = reports.as_array().unwrap();
    assert!(reports.len() >= 12);
    assert!(reports.iter().all(|r| r["pass"] == true && r["name"].as_str().unwrap().starts_with("complex.")));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS ")).count(), reports.len());

    let o = run(&["verify", "--suite", "complex", "--tol", "gaussian_integral=1e-300", "--out", p(tmp.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL complex.gaussian_integral"));
}

#[test]
fn config_file_sits_between_flags_and_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.cfg");
    std::fs::write(&cfg, "# test run\nn = 10\nsweeps = 30\nburn-in = 0\nseed = 8\n").unwrap();
    let read_manifest = |dir: &Path| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
    };

    let a = tmp.path().join("a");
    let o = cwsoc()
        .args(["simulate", "--config", p(&cfg), "--out", p(&a)])
        .env("CWSOC_SEED", "99")
        .output()
        .unwrap();
    assert!(o.status.success());
    let m = read_manifest(&a);
    assert_eq!(m["params"]["n"], 10);
    assert_eq!(m["sampler"]["seed"], 8);
    assert_eq!(m["settings"]["sweeps"], 30);

    let b = tmp.path().join("b");
    assert!(run(&["simulate", "--config", p(&cfg), "--seed", "3", "--n", "6", "--out", p(&b)]).status.success());
    let m = read_manifest(&b);
    assert_eq!((m["params"]["n"].clone(), m["sampler"]["seed"].clone()), (6.into(), 3.into()));

    let c = tmp.path().join("c");
    let o = cwsoc()
        .args(["simulate", "--n", "6", "--sweeps", "5", "--out", p(&c)])
        .env("CWSOC_SEED", "99")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(read_manifest(&c)["sampler"]["seed"], 99);

    std::fs::write(&cfg, "temperature = 3\n").unwrap();
    assert_eq!(run(&["simulate", "--config", p(&cfg), "--out", p(&c)]).status.code(), Some(2));
}

#[test]
fn manifest_records_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run(&["simulate", "--n", "9", "--sweeps", "10", "--sigma", "0.5", "--seed", "4", "--out", p(tmp.path())])
        .status
        .success());
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "simulate");
    assert_eq!(m["params"]["sigma"], 0.5);
    assert_eq!(m["sampler"]["burn_in_sweeps"], 1000);
    assert!(m["timestamp"].as_str().unwrap().ends_with('Z'));
    assert!(!m["code_version"].as_str().unwrap().is_empty());
    assert_eq!(m["output_paths"].as_array().unwrap().len(), 2);
}

#[test]
fn default_convergence_improves_with_n() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run(&["convergence", "--out", p(tmp.path())]).status.success());
    let (_, rows) = read_csv(&tmp.path().join("convergence.csv"));
    let n: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(n, ["32", "64", "128", "256"]);
    let ks: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(ks[3] < ks[0], "{ks:?}");
    for r in &rows {
        assert!(r[4].parse::<u64>().unwrap() >= 20_000);
        let mean: f64 = r[2].parse().unwrap();
        assert!((mean - 1.0).abs() < 0.1);
    }
}

#[test]
fn long_run_concentrates_t() {
    let tmp = tempfile::tempdir().unwrap();
    for sigma in ["1", "2"] {
        let out = tmp.path().join(sigma);
        assert!(run(&["simulate", "--n", "256", "--sweeps", "20000", "--sigma", sigma, "--out", p(&out)]).status.success());
        let (_, rows) = read_csv(&out.join("samples.csv"));
        assert_eq!(rows.len(), 19_000);
        let mean = rows.iter().map(|r| r[5].parse::<f64>().unwrap()).sum::<f64>() / rows.len() as f64;
        let var: f64 = sigma.parse::<f64>().unwrap().powi(2);
        assert!((mean - var).abs() <= 0.1 * var, "σ² = {var}: {mean}");
    }
}

#[test]
fn full_suite_passes_on_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--out", p(tmp.path())]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
