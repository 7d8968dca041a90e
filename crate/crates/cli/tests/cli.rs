use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_torsion");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn torsion(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("TORSION_FIXTURES").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Copies a few quick fixtures into a scratch directory.
fn quick_fixtures(dir: &Path) {
    for name in ["bound-local-p2", "bound-global-surfaces", "census-printed", "collate-surfaces", "degseq-cyclic-07"] {
        let file = format!("{name}.golden");
        std::fs::copy(Path::new(FIXTURES).join(&file), dir.join(&file)).unwrap();
    }
}

#[test]
fn local_bound_reports_weil_cap() {
    let o = torsion(&["bound", "--d", "2", "--p", "2", "--f", "1", "--e", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("prime_to_p_bound=33 "), "{}", stdout(&o));
}

#[test]
fn census_over_f3() {
    let o = torsion(&["census", "--p", "3", "--dim", "2", "--strategy", "truncated"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("counts=1-16,18-25,28-30,34-36,42,49"));
    let o = torsion(&["census", "--p", "3", "--dim", "2"]);
    assert!(stdout(&o).contains("counts=1-25,27-30,34-36,42,49"));
}

#[test]
fn seven_row() {
    let o = torsion(&["degseq", "--N", "7", "--all-cm-j"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("row=\"(2,6), (12), (6,18)^2, (24), (3,21)^2, (24)^2, (6,18), (24)^3\"\n"));
}

#[test]
fn output_does_not_depend_on_workers() {
    let a = torsion(&["--jobs", "1", "degseq", "--N", "8", "--all-cm-j"]);
    let b = torsion(&["--jobs", "4", "degseq", "--N", "8", "--all-cm-j"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn formats() {
    let csv = stdout(&torsion(&["collate", "--dim", "1", "--format", "csv"]));
    assert!(csv.starts_with("kind,dim,primes,source,cap,values\norders,1,\"2,3,5\",census,35,\"1,2,3,4,5,6\"\n"));
    let table = stdout(&torsion(&["torsion", "--example", "third", "--format", "table"]));
    assert!(table.starts_with("kind     field            structure  order\ntorsion  f^3 - 3*f^2 + 1  Z/9        9\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(torsion(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(torsion(&["census"]).status.code(), Some(2));
    assert_eq!(torsion(&["bound", "--d", "2", "--p", "4"]).status.code(), Some(3));
    assert_eq!(torsion(&["census", "--p", "7", "--strategy", "fancy"]).status.code(), Some(4));
    let o = torsion(&["torsion", "--minpoly", "d^7 - 2", "--b", "d", "--c", "d"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_file_written_only_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let o = torsion(&["bound", "--d", "1", "--p", "5", "--output", good.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&good).unwrap().starts_with("kind=local p=5"));
    let bad = dir.path().join("bad.txt");
    let o = torsion(&["bound", "--d", "1", "--p", "6", "--output", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!bad.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn perturbed_fixture_fails_once() {
    let dir = tempfile::tempdir().unwrap();
    quick_fixtures(dir.path());
    let target = dir.path().join("collate-surfaces.golden");
    let text = std::fs::read_to_string(&target).unwrap().replace("60,72", "60,71");
    std::fs::write(&target, text).unwrap();
    let o = torsion(&["verify-goldens", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(6));
    let out = stdout(&o);
    assert_eq!(out.matches("status=fail").count(), 1, "{out}");
    assert!(out.contains("fixture=collate-surfaces status=fail"));
    assert!(out.ends_with("kind=summary fixtures=5 passed=4 failed=1\n"));
}

#[test]
fn mantissa_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    quick_fixtures(dir.path());
    let target = dir.path().join("bound-global-surfaces.golden");
    let text = std::fs::read_to_string(&target).unwrap().replace("4.0262", "4.0265");
    std::fs::write(&target, text).unwrap();
    let o = torsion(&["verify-goldens", "--dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn fixture_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    quick_fixtures(dir.path());
    let o = Command::new(BIN).arg("verify-goldens").env("TORSION_FIXTURES", dir.path()).output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("kind=summary fixtures=5 passed=5 failed=0\n"));
}

#[test]
fn missing_fixture_dir_is_a_configuration_error() {
    let o = torsion(&["verify-goldens", "--dir", "/nonexistent/fixtures"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("configuration error"));
}

#[test]
fn bundled_goldens_pass() {
    let o = torsion(&["verify-goldens"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("status=fail"));
}
