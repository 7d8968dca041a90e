//! Golden fixtures: each `*.golden` file holds the arguments of one
//! command and its expected structured-text output.
//!
//! ```text
//! # args: bound --d 2 --n 1
//! # tolerance: comparison_mantissa 0.0005
//! kind=global d=2 n=1 collation_bound=1815 ...
//! ```

use std::path::{Path, PathBuf};

use clap::{Arg, ArgMatches, Command};
use rayon::prelude::*;

use super::{Registry, Subcommand};
use crate::error::CliError;
use crate::output::{render, Format, Record, Report};

pub const FIXTURE_ENV: &str = "TORSION_FIXTURES";

pub struct VerifyGoldens;

impl Subcommand for VerifyGoldens {
    fn name(&self) -> &'static str {
        "verify-goldens"
    }

    fn command(&self) -> Command {
        Command::new("verify-goldens")
            .about("Recompute every golden fixture and diff against the stored output")
            .arg(Arg::new("dir").long("dir").help(format!("fixture directory (else ${FIXTURE_ENV}, else the bundled set)")))
    }

    fn run(&self, m: &ArgMatches) -> Result<Report, CliError> {
        let dir = fixture_dir(m.get_one::<String>("dir").map(PathBuf::from));
        let fixtures = load(&dir)?;
        let results: Vec<Record> = fixtures.par_iter().map(check).collect();
        let failures = results.iter().filter(|r| r.get("status") != Some("pass")).count();
        let mut out = Report { records: results, failures };
        out.push(
            Record::new("summary")
                .with("fixtures", fixtures.len())
                .with("passed", fixtures.len() - failures)
                .with("failed", failures),
        );
        Ok(out)
    }
}

fn fixture_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(FIXTURE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")))
}

struct Fixture {
    name: String,
    args: Vec<String>,
    tolerances: Vec<(String, f64)>,
    expected: String,
}

fn load(dir: &Path) -> Result<Vec<Fixture>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Config(format!("fixture directory {} not found", dir.display())));
    }
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "golden"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Config(format!("no .golden files in {}", dir.display())));
    }
    paths.iter().map(|p| parse_fixture(p)).collect()
}

fn parse_fixture(path: &Path) -> Result<Fixture, CliError> {
    let name = path.file_stem().unwrap().to_string_lossy().into_owned();
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let bad = |msg: &str| CliError::Config(format!("{}: {msg}", path.display()));
    let mut args = None;
    let mut tolerances = Vec::new();
    let mut expected = String::new();
    for line in src.lines() {
        if let Some(rest) = line.strip_prefix("# args:") {
            args = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
        } else if let Some(rest) = line.strip_prefix("# tolerance:") {
            let mut it = rest.split_whitespace();
            let (Some(key), Some(tol)) = (it.next(), it.next().and_then(|t| t.parse().ok())) else {
                return Err(bad("tolerance needs a key and a number"));
            };
            tolerances.push((key.to_string(), tol));
        } else if !line.starts_with('#') {
            expected.push_str(line);
            expected.push('\n');
        }
    }
    let args = args.ok_or_else(|| bad("missing '# args:' line"))?;
    if args.first().map(String::as_str) == Some("verify-goldens") {
        return Err(bad("fixtures cannot run verify-goldens"));
    }
    Ok(Fixture { name, args, tolerances, expected })
}

fn check(f: &Fixture) -> Record {
    let base = Record::new("golden").with("fixture", &f.name);
    let got = Registry::builtin()
        .execute(&f.args)
        .and_then(|r| render(&r, Format::Text))
        .unwrap_or_else(|e| format!("error: {e}\n"));
    let want: Vec<&str> = f.expected.lines().collect();
    let have: Vec<&str> = got.lines().collect();
    for k in 0..want.len().max(have.len()) {
        let (w, h) = (want.get(k).copied().unwrap_or(""), have.get(k).copied().unwrap_or(""));
        if !lines_agree(w, h, &f.tolerances) {
            return base.with("status", "fail").with("line", k + 1).with("expected", w).with("got", h);
        }
    }
    base.with("status", "pass")
}

/// Byte equality, except for keys given a numeric tolerance.
fn lines_agree(want: &str, have: &str, tolerances: &[(String, f64)]) -> bool {
    if want == have {
        return true;
    }
    if tolerances.is_empty() {
        return false;
    }
    let (w, h) = (fields(want), fields(have));
    w.len() == h.len()
        && w.iter().zip(&h).all(|((kw, vw), (kh, vh))| {
            kw == kh
                && (vw == vh
                    || tolerances.iter().any(|(key, tol)| {
                        key == kw
                            && matches!((vw.parse::<f64>(), vh.parse::<f64>()), (Ok(a), Ok(b)) if (a - b).abs() <= *tol)
                    }))
        })
}

/// Splits a structured-text line into `key=value` pairs.
fn fields(line: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            while let Some(c) = chars.next() {
                match c {
                    '\\' => value.extend(chars.next()),
                    '"' => break,
                    _ => value.push(c),
                }
            }
            chars.next();
        } else {
            value = chars.by_ref().take_while(|&c| c != ' ').collect();
        }
        out.push((key.trim().to_string(), value));
    }
    out
}
