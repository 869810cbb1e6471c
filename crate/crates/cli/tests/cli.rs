use std::path::Path;
use std::process::{Command, Output};

use absorbance_cli::commands::{run_sweep, SimulationKind};
use absorbance_cli::config::Config;
use absorbance_cli::error::exit;
use absorbance_core::simulator::run;

fn absorbance(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_absorbance"))
        .args(args)
        .env_remove("ABSORBANCE_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = absorbance(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV as numbers, skipping comments and the header.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect()
}

fn argmax(rows: &[Vec<f64>], col: usize) -> f64 {
    rows.iter().max_by(|a, b| a[col].total_cmp(&b[col])).unwrap()[0]
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn w_values_and_domain_exit() {
    let w = |x: &str| rows(&stdout(&["w", x]))[0][1];
    assert_eq!(w("0"), 0.0);
    assert!((w("2.718281828459045") - 1.0).abs() < 1e-15);
    assert!((w("-0.2706705664732254") + 0.406_375_739_959_96).abs() < 1e-12);
    let out = absorbance(&["w", "-0.5"]);
    assert_eq!(out.status.code(), Some(exit::DOMAIN as i32));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-0.5"));
}

#[test]
fn figure_curves() {
    let fig2b = rows(&stdout(&["curves", "fig2b"]));
    assert!((argmax(&fig2b, 1) - 2.0).abs() < 1e-12);
    assert!((argmax(&fig2b, 2) - 1.6).abs() < 1e-12);

    let fig2c = rows(&stdout(&["curves", "fig2c", "--grid", "0.1:10:30", "--log"]));
    assert_eq!(fig2c.len(), 30);
    for r in &fig2c {
        assert!((r[3] - 1.196_307_094_506_295_7).abs() < 1e-12);
    }

    let multi = rows(&stdout(&["curves", "multipass"]));
    assert_eq!(argmax(&multi, 1), 3.0);
    assert_eq!(argmax(&multi, 2), 2.0);

    let sup_b = rows(&stdout(&["curves", "supB", "--grid", "0.5:1:2"]));
    assert!((sup_b[0][3] - 1.036_354_601_246_718_3).abs() < 1e-12);
    assert!((sup_b[1][3] - 1.196_307_094_506_295_7).abs() < 1e-12);

    let fig2a = rows(&stdout(&["curves", "fig2a", "--set", "channel.length=1"]));
    assert!(fig2a.iter().all(|r| r[3] > 1.0));
}

#[test]
fn domain_errors_name_the_grid_point() {
    let out = absorbance(&["curves", "fig2b", "--grid", "0:1:3"]);
    assert_eq!(out.status.code(), Some(exit::DOMAIN as i32));
    assert!(String::from_utf8_lossy(&out.stderr).contains("L = 0"));
}

#[test]
fn optimal_report() {
    let r = rows(&stdout(&["optimal"]));
    assert_eq!(r[0][2], 2.0);
    assert!((r[0][3] - 0.135_335_283_236_612_7).abs() < 1e-12);
    assert!((r[1][2] - 1.593_624_260_040_040_1).abs() < 1e-12);
    assert!((r[1][3] - 0.203_187_869_979_979_95).abs() < 1e-12);
    assert!((r[1][5] - 1.196_307_094_506_295_7).abs() < 1e-12);

    let lossy = rows(&stdout(&["optimal", "--set", "channel.beta=1"]));
    assert_eq!(lossy[0][2], 1.0);
    assert!((lossy[1][2] - r[1][2] / 2.0).abs() < 1e-15);

    let general = stdout(&["optimal", "--set", "source.kind=overdispersed", "--set", "source.fano=826"]);
    let g = rows(&general);
    assert_eq!(g.len(), 3);
    assert!((g[2][2] - 6.017_796_859_416_48).abs() < 1e-10);

    let out = absorbance(&["optimal", "--set", "channel.absorbance=0"]);
    assert_eq!(out.status.code(), Some(exit::DOMAIN as i32));
}

#[test]
fn config_errors_exit_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write(dir.path(), "typo.toml", "channel.absorbance = 1.0\nchannel.gama = 0.5\n");
    let out = absorbance(&["optimal", "--config", &typo]);
    assert_eq!(out.status.code(), Some(exit::CONFIG as i32));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gama"));

    let bad = write(dir.path(), "bad.toml", "# comment\nchannel.gamma = 1.5\n");
    let out = absorbance(&["optimal", "--config", &bad]);
    assert_eq!(out.status.code(), Some(exit::CONFIG as i32));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.toml:2"));

    for args in [
        &["curves", "fig2a", "--grid", "1:0:5"][..],
        &["curves", "fig2a", "--grid", "nonsense"],
        &["optimal", "--config", "/does/not/exist.toml"],
        &["simulate", "heralded", "--set", "run.windows=450"],
        &["curves", "fig2a", "--log"],
    ] {
        assert_eq!(absorbance(args).status.code(), Some(exit::CONFIG as i32), "{args:?}");
    }
    assert_eq!(absorbance(&["frobnicate"]).status.code(), Some(exit::USAGE as i32));
    assert_eq!(absorbance(&["w", "0", "--out", "/proc/forbidden/x.csv"]).status.code(), Some(exit::IO as i32));
}

#[test]
fn simulation_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "h.toml", "run.lengths = [0.5, 1.6]\nrun.windows = 200\nrun.group_size = 50\n");
    let outputs: Vec<Vec<String>> = ["a.csv", "b.csv"]
        .iter()
        .map(|name| {
            let out = dir.path().join(name);
            stdout(&["simulate", "heralded", "--config", &cfg, "--seed", "42", "--out", out.to_str().unwrap()]);
            ["", ".groups", ".windows"]
                .iter()
                .map(|s| std::fs::read_to_string(dir.path().join(name.replace(".csv", &format!("{s}.csv")))).unwrap())
                .collect()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let summary = rows(&outputs[0][0]);
    assert_eq!(summary.len(), 2);
    assert_eq!(rows(&outputs[0][1]).len(), 2 * 4);
    assert_eq!(rows(&outputs[0][2]).len(), 2 * 200);
    assert!(outputs[0][0].contains("# run.seed = 42"));

    let other = stdout(&["simulate", "heralded", "--config", &cfg, "--seed", "43"]);
    assert_ne!(other, outputs[0][0]);
}

#[test]
fn echoed_config_reproduces_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    stdout(&[
        "simulate", "single-arm", "--seed", "9", "--grid", "1:2:2",
        "--set", "source.mean=5000", "--set", "detector.dark_mean=3",
        "--set", "run.windows=200", "--set", "run.group_size=100",
        "--out", first.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&first).unwrap();
    let (reloaded, _) = Config::parse(&text, None).unwrap();
    let echo: Vec<String> = text.lines().skip(1).take_while(|l| l.starts_with("# ")).map(|l| l[2..].to_string()).collect();
    assert_eq!(reloaded.echo_lines(), echo);

    let second = dir.path().join("second.csv");
    stdout(&["simulate", "single-arm", "--config", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(text, std::fs::read_to_string(&second).unwrap());
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_absorbance"))
        .args(["optimal", "--out", "nested/opt.csv"])
        .env("ABSORBANCE_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("nested/opt.csv").exists());
}

#[test]
fn empirical_source_relative_to_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "counts.txt", "# n p\n0 0.1\n1 0.2\n2 0.3\n3 0.4\n");
    let cfg = write(dir.path(), "e.toml", "source.kind = \"empirical\"\nsource.pmf_file = \"counts.txt\"\n");
    let r = rows(&stdout(&["optimal", "--config", &cfg]));
    // mean 2, variance 1: Fano 0.5
    assert_eq!(r.len(), 3);
    assert!((r[2][1] - 0.5).abs() < 1e-15);
}

#[test]
fn table_format() {
    let text = stdout(&["optimal", "--format", "table"]);
    assert!(text.starts_with("optimal\n"));
    assert!(text.lines().nth(1).unwrap().contains("optimal_length"));
}

#[test]
fn parallel_runner_matches_sequential() {
    let mut cfg = Config::default();
    cfg.run.lengths = Some(vec![0.7, 2.2]);
    cfg.run.seed = 17;
    let results = run_sweep(&cfg, SimulationKind::Heralded).unwrap();
    for r in &results {
        assert_eq!(r.run, run(&cfg.heralded_at(r.length).unwrap()).unwrap());
    }
}
