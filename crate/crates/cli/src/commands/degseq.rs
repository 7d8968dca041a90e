use std::str::FromStr;

use clap::{Arg, ArgAction, ArgMatches, Command};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use torsion_core::modcurves::cm_j_invariants;
use torsion_core::modcurves::fiber::{degree_sequence, full_two_torsion_degree_sequence};
use torsion_core::modcurves::tables::format_row;

use super::{flag, u32_arg, Subcommand};
use crate::error::CliError;
use crate::output::{Record, Report};

pub struct Degseq;

impl Subcommand for Degseq {
    fn name(&self) -> &'static str {
        "degseq"
    }

    fn command(&self) -> Command {
        Command::new("degseq")
            .about("Residue degrees of the fibre of X_1(N) (or of Z/2 x Z/2M) over given j")
            .arg(u32_arg("N").help("cyclic order, 4..13").value_parser(clap::value_parser!(u32).range(4..=13)))
            .arg(u32_arg("M").help("full two-torsion with Z/2M, M = 2..4").value_parser(clap::value_parser!(u32).range(2..=4)))
            .group(clap::ArgGroup::new("order").args(["N", "M"]).required(true))
            .arg(Arg::new("j").long("j").action(ArgAction::Append).allow_hyphen_values(true).help("j-invariant (rational); repeatable"))
            .arg(flag("all-cm-j").conflicts_with("j"))
    }

    fn run(&self, m: &ArgMatches) -> Result<Report, CliError> {
        let (label, compute): (String, Box<dyn Fn(&BigRational) -> torsion_core::Result<_> + Sync>) =
            if let Some(&n) = m.get_one::<u32>("N") {
                (format!("Z/{n}"), Box::new(move |j| degree_sequence(n, j)))
            } else {
                let k = *m.get_one::<u32>("M").unwrap();
                (format!("Z/2xZ/{}", 2 * k), Box::new(move |j| full_two_torsion_degree_sequence(k, j)))
            };
        let all = m.get_flag("all-cm-j");
        let js: Vec<BigRational> = if all {
            cm_j_invariants().into_iter().map(BigRational::from_integer).collect()
        } else {
            let raw: Vec<&String> = m.get_many::<String>("j").map(|v| v.collect()).unwrap_or_default();
            if raw.is_empty() {
                return Err(CliError::Usage("give --j or --all-cm-j".into()));
            }
            raw.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?
        };
        let seqs = js.par_iter().map(|j| compute(j)).collect::<torsion_core::Result<Vec<_>>>()?;
        let mut out = Report::default();
        for (j, s) in js.iter().zip(&seqs) {
            out.push(
                Record::new("fibre")
                    .with("group", &label)
                    .with("j", j)
                    .with("degrees", s)
                    .with("total", s.total()),
            );
        }
        if all {
            out.push(Record::new("row").with("group", &label).with("row", format_row(&seqs)));
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("bad j-invariant {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (BigInt::from_str(a.trim()).map_err(|_| bad())?, BigInt::from_str(b.trim()).map_err(|_| bad())?);
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?)),
    }
}
