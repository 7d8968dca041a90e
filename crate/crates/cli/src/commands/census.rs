use clap::{Arg, ArgMatches, Command};
use rayon::prelude::*;
use torsion_core::hondatate::strategy::DEFAULT_STRATEGY;
use torsion_core::hondatate::{census_strategy, census_strategy_names, elliptic_census, surface_counts_with};

use super::{parse_list, u32_arg, Subcommand};
use crate::error::CliError;
use crate::output::{Record, Report};

pub struct Census;

impl Subcommand for Census {
    fn name(&self) -> &'static str {
        "census"
    }

    fn command(&self) -> Command {
        Command::new("census")
            .about("Point counts realized by isogeny classes over F_p")
            .arg(Arg::new("p").long("p").required(true).help("prime or comma-separated primes"))
            .arg(u32_arg("dim").default_value("2").value_parser(clap::value_parser!(u32).range(1..=2)))
            .arg(
                Arg::new("strategy")
                    .long("strategy")
                    .default_value(DEFAULT_STRATEGY)
                    .help(format!("surface enumeration ({})", census_strategy_names().join(", "))),
            )
    }

    fn run(&self, m: &ArgMatches) -> Result<Report, CliError> {
        let primes = parse_list(m.get_one::<String>("p").unwrap())?;
        let dim = *m.get_one::<u32>("dim").unwrap();
        let strategy = census_strategy(m.get_one::<String>("strategy").unwrap())?;
        let rows: Result<Vec<Record>, CliError> = primes
            .par_iter()
            .map(|&p| {
                let c = if dim == 1 { elliptic_census(p)? } else { surface_counts_with(p, strategy.as_ref())? };
                let mut r = Record::new("census").with("p", p).with("dim", dim);
                if dim == 2 {
                    r = r.with("strategy", strategy.name());
                }
                let classes: usize = c.provenance.values().map(Vec::len).sum();
                Ok(r.with("classes", classes).with("counts", c.ranges().replace(", ", ",")))
            })
            .collect();
        Ok(Report { records: rows?, failures: 0 })
    }
}
