use clap::{Arg, ArgMatches, Command};
use torsion_core::nftorsion::torsion::{cubic_example, explicit_orders, torsion_subgroup, KubertCurve, CUBIC_EXAMPLES};
use torsion_core::nftorsion::weierstrass::Point;

use super::Subcommand;
use crate::error::CliError;
use crate::output::{Record, Report};

pub struct Torsion;

impl Subcommand for Torsion {
    fn name(&self) -> &'static str {
        "torsion"
    }

    fn command(&self) -> Command {
        let labels: Vec<&str> = CUBIC_EXAMPLES.iter().map(|e| e.0).collect();
        Command::new("torsion")
            .about("Torsion subgroup of y^2 + (1-c)xy - by = x^3 - bx^2 over a number field")
            .arg(Arg::new("example").long("example").value_parser(labels).conflicts_with_all(["minpoly", "b", "c"]))
            .arg(Arg::new("minpoly").long("minpoly").help("monic integer minimal polynomial, e.g. \"d^3 - d^2 - 2*d + 1\""))
            .arg(Arg::new("b").long("b").allow_hyphen_values(true))
            .arg(Arg::new("c").long("c").allow_hyphen_values(true))
            .arg(Arg::new("var").long("var").default_value("d"))
    }

    fn run(&self, m: &ArgMatches) -> Result<Report, CliError> {
        let curve = match m.get_one::<String>("example") {
            Some(label) => cubic_example(label)?,
            None => {
                let get = |k: &str| {
                    m.get_one::<String>(k)
                        .ok_or_else(|| CliError::Usage(format!("--{k} is required without --example")))
                };
                KubertCurve::from_strings(m.get_one::<String>("var").unwrap(), get("minpoly")?, get("b")?, get("c")?)?
            }
        };
        let group = torsion_subgroup(&curve)?;
        let mut out = Report::default();
        out.push(
            Record::new("torsion")
                .with("field", curve.field.minpoly().display_in(curve.field.name()))
                .with("structure", &group)
                .with("order", group.order()),
        );
        let model = curve.model();
        for (i, g) in group.generators.iter().enumerate() {
            let order = model.order(g, group.order()).unwrap_or(0);
            out.push(Record::new("generator").with("index", i + 1).with("point", point(g)).with("order", order));
        }
        for (name, order) in explicit_orders(&curve, group.order())? {
            let order = order.map_or("infinite".to_string(), |o| o.to_string());
            out.push(Record::new("explicit").with("point", name).with("order", order));
        }
        Ok(out)
    }
}

fn point<C: std::fmt::Display>(p: &Point<C>) -> String {
    match p {
        Point::Infinity => "O".into(),
        Point::Affine(x, y) => format!("({x}, {y})"),
    }
}
