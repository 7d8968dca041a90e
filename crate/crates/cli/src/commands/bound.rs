use clap::{ArgMatches, Command};
use torsion_core::localbounds::{
    global_collation_bound, largest_torsion_prime, local_bound, silverberg_bound_log10, LocalContext,
};

use super::{join, u32_arg, u64_arg, Subcommand};
use crate::error::CliError;
use crate::output::{Record, Report};

pub struct Bound;

impl Subcommand for Bound {
    fn name(&self) -> &'static str {
        "bound"
    }

    fn command(&self) -> Command {
        Command::new("bound")
            .about("Local torsion bound at a prime (--p), or the global surface bounds (--n)")
            .arg(u32_arg("d").required(true).help("dimension"))
            .arg(u64_arg("p").conflicts_with("n"))
            .arg(u32_arg("f").default_value("1").help("residue degree"))
            .arg(u32_arg("e").default_value("1").help("ramification index"))
            .arg(u32_arg("n").help("degree of the number field"))
    }

    fn run(&self, m: &ArgMatches) -> Result<Report, CliError> {
        let d = *m.get_one::<u32>("d").unwrap();
        let mut out = Report::default();
        if let Some(&p) = m.get_one::<u64>("p") {
            let ctx = LocalContext::new(p, *m.get_one("f").unwrap(), *m.get_one("e").unwrap(), d)?;
            let b = local_bound(ctx)?;
            out.push(
                Record::new("local")
                    .with("p", ctx.p)
                    .with("f", ctx.f)
                    .with("e", ctx.e)
                    .with("d", ctx.d)
                    .with("q", ctx.q())
                    .with("prime_to_p_bound", &b.prime_to_p_bound)
                    .with("formal_group_factor", &b.formal_group_factor)
                    .with("component_factor", &b.component_factor)
                    .with("special_fiber_factor", &b.special_fiber_factor)
                    .with("total_bound", &b.total_bound)
                    .with("additive_primes", join(&b.additive_prime_support)),
            );
        } else {
            let Some(&n) = m.get_one::<u32>("n") else {
                return Err(CliError::Usage("bound needs either --p or --n".into()));
            };
            let s = silverberg_bound_log10(d, n)?;
            out.push(
                Record::new("global")
                    .with("d", d)
                    .with("n", n)
                    .with("collation_bound", global_collation_bound(d, n)?)
                    .with("largest_torsion_prime", largest_torsion_prime(d, n)?)
                    .with("comparison_mantissa", format!("{:.4}", s.mantissa()))
                    .with("comparison_exponent", s.exponent),
            );
        }
        Ok(out)
    }
}
