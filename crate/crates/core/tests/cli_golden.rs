use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;

use fracwave::cli::{figure_dataset, RunConfig};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.csv"))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracwave"))
}

#[test]
fn figures_match_goldens() {
    for name in ["fig1", "fig2", "b1", "b2"] {
        let csv = figure_dataset(name, &RunConfig::default()).unwrap().to_csv();
        let golden = std::fs::read_to_string(golden_path(name)).unwrap();
        assert!(csv == golden, "{name} differs from its golden file");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = std::env::temp_dir().join(format!("fracwave-rerun-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["fig1", "b2"] {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let path = dir.join(format!("{name}-{k}.csv"));
            let status = binary().args(["figure", name, "--out"]).arg(&path).status().unwrap();
            assert!(status.success());
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[0], std::fs::read(golden_path(name)).unwrap());
    }
    let json = |_: ()| binary().args(["figure", "fig2", "--format", "json"]).output().unwrap().stdout;
    assert_eq!(json(()), json(()));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn closed_form_columns() {
    let cfg = RunConfig::default();
    let b1 = figure_dataset("b1", &cfg).unwrap();
    let xs = b1.column("x").unwrap();
    assert_eq!((xs[0], xs[xs.len() - 1]), (-5.0, 5.0));
    for (x, v) in xs.iter().zip(b1.column("nu_0").unwrap()) {
        assert!((v - (-x.abs()).exp()).abs() <= 1e-15);
    }
    for ds in [&b1, &figure_dataset("b2", &cfg).unwrap()] {
        for (x, v) in xs.iter().zip(ds.column("nu_0.5").unwrap()) {
            assert!((v - (-x * x / 4.0).exp() / PI.sqrt()).abs() <= 1e-12, "x {x}");
        }
    }

    let fig1 = figure_dataset("fig1", &cfg).unwrap();
    let xs = fig1.column("x").unwrap();
    assert_eq!((xs[0], xs[xs.len() - 1]), (0.0, 4.0));
    for (x, v) in xs.iter().zip(fig1.column("nu_0.5").unwrap()) {
        assert!((v - (-x * x / 4.0).exp() / (2.0 * PI.sqrt())).abs() <= 1e-12, "x {x}");
    }
    assert!((fig1.column("nu_0.5").unwrap()[0] - 0.2820948).abs() < 1e-7);

    let fig2 = figure_dataset("fig2", &cfg).unwrap();
    let ts = fig2.column("t").unwrap();
    assert_eq!((ts[0], ts[ts.len() - 1]), (0.0, 3.0));
    for (t, v) in ts.iter().zip(fig2.column("nu_0.5").unwrap()) {
        let exact = if *t == 0.0 { 0.0 } else { (-1.0 / (4.0 * t)).exp() / (2.0 * PI.sqrt() * t.powf(1.5)) };
        assert!((v - exact).abs() <= 1e-12, "t {t}");
    }
}

#[test]
fn signalling_peak_at_one_sixth() {
    let cfg = RunConfig { n: Some(30_001), range: Some((0.0, 3.0)), ..RunConfig::default() };
    let fig2 = figure_dataset("fig2", &cfg).unwrap();
    let ts = fig2.column("t").unwrap();
    let vs = fig2.column("nu_0.5").unwrap();
    let k = (0..vs.len()).max_by(|&i, &j| vs[i].total_cmp(&vs[j])).unwrap();
    assert!((ts[k] - 1.0 / 6.0).abs() <= 1e-4, "{}", ts[k]);
}

#[test]
fn failures_exit_nonzero() {
    let out = binary().args(["figure", "fig7"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown figure"));
    let out = binary().args(["eval", "mwright", "--nu", "0.5", "--gamma", "1"]).output().unwrap();
    assert!(!out.status.success());
    let out = binary().args(["eval", "qfactor", "--gamma", "0"]).output().unwrap();
    assert!(!out.status.success());
    let out = binary().args(["eval", "mwright", "--nu", "0.5", "--x", "1"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("r,value,error_estimate,terms,method"));
}
