//! Subcommands, each behind the [`Subcommand`] trait and looked up by name.

mod bound;
mod census;
mod collate;
mod degseq;
mod goldens;
mod report;
mod torsion;

use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::error::CliError;
use crate::output::Report;

pub trait Subcommand: Send + Sync {
    fn name(&self) -> &'static str;
    /// Argument definitions; the name and global flags are added by the
    /// registry.
    fn command(&self) -> Command;
    fn run(&self, args: &ArgMatches) -> Result<Report, CliError>;
}

pub struct Registry {
    entries: Vec<Box<dyn Subcommand>>,
}

impl Registry {
    pub fn builtin() -> Self {
        let mut r = Registry { entries: Vec::new() };
        r.register(Box::new(bound::Bound));
        r.register(Box::new(census::Census));
        r.register(Box::new(collate::Collate));
        r.register(Box::new(degseq::Degseq));
        r.register(Box::new(torsion::Torsion));
        r.register(Box::new(report::ReportCmd));
        r.register(Box::new(goldens::VerifyGoldens));
        r
    }

    pub fn register(&mut self, cmd: Box<dyn Subcommand>) {
        assert!(self.get(cmd.name()).is_none(), "duplicate command {}", cmd.name());
        self.entries.push(cmd);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Subcommand> {
        self.entries.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn cli(&self) -> Command {
        let mut app = Command::new("torsion")
            .about("Torsion bounds, point-count censuses, modular-curve fibres and torsion over number fields")
            .subcommand_required(true)
            .arg(
                Arg::new("format")
                    .long("format")
                    .global(true)
                    .default_value("text")
                    .value_parser(crate::output::Format::NAMES),
            )
            .arg(Arg::new("output").long("output").short('o').global(true).help("write to a file instead of stdout"))
            .arg(
                Arg::new("jobs")
                    .long("jobs")
                    .short('j')
                    .global(true)
                    .value_parser(clap::value_parser!(usize))
                    .help("worker threads (default: available cores)"),
            );
        for c in &self.entries {
            app = app.subcommand(c.command().name(c.name()));
        }
        app
    }

    /// Parses `argv` (without the program name) and runs the selected
    /// command on the current thread pool.
    pub fn execute<I, S>(&self, argv: I) -> Result<Report, CliError>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let argv = std::iter::once("torsion".into()).chain(argv.into_iter().map(Into::into));
        let m = self.cli().try_get_matches_from(argv)
            .map_err(|e| CliError::Usage(e.to_string().trim_start_matches("error: ").to_string()))?;
        let (name, sub) = m.subcommand().expect("subcommand required");
        self.get(name).expect("registered").run(sub)
    }
}

pub(crate) fn flag(name: &'static str) -> Arg {
    Arg::new(name).long(name).action(ArgAction::SetTrue)
}

pub(crate) fn u64_arg(name: &'static str) -> Arg {
    Arg::new(name).long(name).value_parser(clap::value_parser!(u64))
}

pub(crate) fn u32_arg(name: &'static str) -> Arg {
    Arg::new(name).long(name).value_parser(clap::value_parser!(u32))
}

/// Comma-separated list of integers.
pub(crate) fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad integer {t:?} in list {s:?}"))))
        .collect()
}

pub(crate) fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
