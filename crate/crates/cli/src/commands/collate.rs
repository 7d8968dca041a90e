use clap::{Arg, ArgMatches, Command};
use torsion_core::collate::{admissible_orders, build_input, count_source, count_source_names};
use torsion_core::exactnum::int::to_u64;
use torsion_core::localbounds::global_collation_bound;

use super::{join, parse_list, u32_arg, u64_arg, Subcommand};
use crate::error::CliError;
use crate::output::{Record, Report};

pub struct Collate;

impl Subcommand for Collate {
    fn name(&self) -> &'static str {
        "collate"
    }

    fn command(&self) -> Command {
        Command::new("collate")
            .about("Torsion orders compatible with the point counts at several primes")
            .arg(u32_arg("dim").default_value("2"))
            .arg(Arg::new("primes").long("primes").default_value("2,3,5"))
            .arg(
                Arg::new("source")
                    .long("source")
                    .default_value("census")
                    .help(format!("count source ({})", count_source_names().join(", "))),
            )
            .arg(u64_arg("cap").help("largest order considered (default: the global bound over Q)"))
    }

    fn run(&self, m: &ArgMatches) -> Result<Report, CliError> {
        let dim = *m.get_one::<u32>("dim").unwrap();
        let primes = parse_list(m.get_one::<String>("primes").unwrap())?;
        let source = count_source(m.get_one::<String>("source").unwrap())?;
        let cap = match m.get_one::<u64>("cap") {
            Some(&c) => c,
            None => to_u64(&global_collation_bound(dim, 1)?)
                .ok_or_else(|| CliError::Core(torsion_core::Error::Unsupported("cap too large".into())))?,
        };
        let input = build_input(source.as_ref(), &primes, dim)?;
        let list = admissible_orders(&input, cap)?;
        let (odd, a) = list.two_adic_shape();
        let mut out = Report::default();
        out.push(
            Record::new("orders")
                .with("dim", dim)
                .with("primes", join(&primes))
                .with("source", source.name())
                .with("cap", cap)
                .with("values", join(&list.admissible_orders)),
        );
        out.push(Record::new("shape").with("max_two_exponent", a).with("odd_parts", join(&odd)));
        for (n, note) in &list.annotations {
            out.push(Record::new("annotation").with("order", n).with("note", note));
        }
        Ok(out)
    }
}
