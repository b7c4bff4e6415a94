//! Pins the standard scenario's report files. Set `UPDATE_GOLDEN=1` to
//! rewrite them after an intended change.

use std::fs;
use std::path::{Path, PathBuf};

use icps_cli::commands;
use icps_cli::{Overrides, ScenarioConfig};
use icps_core::Exact;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn compare(produced: &Path, golden: &Path, files: &[&str]) {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for f in files {
        let got = fs::read_to_string(produced.join(f)).unwrap();
        let want_path = golden.join(f);
        if update {
            fs::create_dir_all(golden).unwrap();
            fs::write(&want_path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&want_path).unwrap_or_else(|e| panic!("{}: {e}", want_path.display()));
        assert!(got == want, "{f} differs from {}", want_path.display());
    }
}

#[test]
fn standard_scenario_reports() {
    let cfg = ScenarioConfig::load(&root().join("scenarios/standard.json")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let report = commands::run_scenario::<Exact>(&cfg, &Overrides::default(), dir.path()).unwrap();
    assert!(report.all_hard_pass());
    compare(
        dir.path(),
        &root().join("crates/cli/tests/golden/standard"),
        &["stable_sets.json", "certificates.json", "traces.json", "check.json", "summary.txt"],
    );
}

#[test]
fn sweep_and_surface_csv() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = ScenarioConfig::load(&root().join("scenarios/sweep.json")).unwrap();
    commands::sweep::<Exact>(sweep.sweep.as_ref().unwrap(), dir.path()).unwrap();
    let surface = ScenarioConfig::load(&root().join("scenarios/surface.json")).unwrap();
    commands::surface::<Exact>(surface.surface.as_ref().unwrap(), dir.path()).unwrap();
    compare(
        dir.path(),
        &root().join("crates/cli/tests/golden/grids"),
        &["sweep.csv", "sweep_notes.txt", "surface.csv"],
    );
}
