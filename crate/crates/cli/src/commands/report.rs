use std::collections::BTreeSet;

use clap::{ArgMatches, Command};
use torsion_core::collate::{admissible_orders, attained_surface_orders, build_input, count_source, undecided_report};
use torsion_core::exactnum::int::to_u64;
use torsion_core::localbounds::global_collation_bound;

use super::{join, Subcommand};
use crate::error::CliError;
use crate::output::{Record, Report};

pub struct ReportCmd;

impl Subcommand for ReportCmd {
    fn name(&self) -> &'static str {
        "report"
    }

    fn command(&self) -> Command {
        Command::new("report")
            .about("Surface orders over Q: the candidate list, known attained values and what remains open")
    }

    fn run(&self, _m: &ArgMatches) -> Result<Report, CliError> {
        let bound = global_collation_bound(2, 1)?;
        let cap = to_u64(&bound).expect("small bound");
        let input = build_input(count_source("census")?.as_ref(), &[2, 3, 5], 2)?;
        let list = admissible_orders(&input, cap)?;
        let attained = attained_surface_orders();
        let attained_set: BTreeSet<u64> = attained.iter().map(|(n, _)| *n).collect();
        let open = undecided_report(&list, &attained_set)?;

        let mut out = Report::default();
        out.push(Record::new("bound").with("collation_bound", &bound));
        out.push(Record::new("candidates").with("values", join(&list.admissible_orders)));
        for (n, how) in attained {
            // Imported facts, not computed here.
            out.push(Record::new("attained").with("order", n).with("construction", how).with("source", "imported"));
        }
        out.push(Record::new("undecided").with("count", open.len()).with("values", join(&open)));
        Ok(out)
    }
}
