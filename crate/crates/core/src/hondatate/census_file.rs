//! Line-oriented census files.
//!
//! ```text
//! census version=1 p=2 dim=2 strategy=complete records=20
//! datum kind=II poly=4,0,-4,0,1 count=1
//! datum kind=I a1=-2 a2=-2 poly=4,8,8,4,1 count=25
//! counts values=1-16,19,20,25
//! ```

use std::collections::BTreeMap;

use super::{format_ranges, parse_ranges, CountCensus, WeilDatum, WeilKind};
use crate::error::{Error, Result};

pub const VERSION: u32 = 1;

fn poly_field(w: &WeilDatum) -> String {
    w.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn write_census(census: &CountCensus, strategy: &str) -> String {
    let data: Vec<&WeilDatum> = census.provenance.values().flatten().collect();
    let mut out = format!(
        "census version={VERSION} p={} dim={} strategy={strategy} records={}\n",
        census.p,
        census.dimension,
        data.len()
    );
    for w in data {
        let params = match w.kind {
            WeilKind::Elliptic { a } => format!("kind=E a={a}"),
            WeilKind::TypeI { a1, a2 } => format!("kind=I a1={a1} a2={a2}"),
            WeilKind::TypeII => "kind=II".to_string(),
            WeilKind::TypeIII { d, two_a, two_b } => {
                format!("kind=III d={d} two_a={two_a} two_b={two_b}")
            }
        };
        out.push_str(&format!(
            "datum {params} poly={} count={}\n",
            poly_field(w),
            w.point_count()
        ));
    }
    out.push_str(&format!(
        "counts values={}\n",
        format_ranges(&census.counts).replace(' ', "")
    ));
    out
}

fn fields(line: &str) -> Result<(&str, BTreeMap<&str, &str>)> {
    let mut it = line.split_whitespace();
    let tag = it.next().unwrap_or("");
    let mut map = BTreeMap::new();
    for tok in it {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
        map.insert(k, v);
    }
    Ok((tag, map))
}

fn get<T: std::str::FromStr>(map: &BTreeMap<&str, &str>, key: &str) -> Result<T> {
    map.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad value for {key}")))
}

/// Reads a census back, re-validating every datum and checking the stored
/// polynomial, count and summary line against recomputation.
pub fn read_census(src: &str) -> Result<(CountCensus, String)> {
    let mut lines = src.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let (tag, head) = fields(lines.next().ok_or_else(|| Error::Parse("empty census".into()))?)?;
    if tag != "census" {
        return Err(Error::Parse("missing census header".into()));
    }
    let version: u32 = get(&head, "version")?;
    if version != VERSION {
        return Err(Error::Unsupported(format!("census version {version}")));
    }
    let p: u64 = get(&head, "p")?;
    let dim: u32 = get(&head, "dim")?;
    let strategy: String = get(&head, "strategy")?;
    let records: usize = get(&head, "records")?;
    let mut data = Vec::new();
    let mut summary = None;
    for line in lines {
        let (tag, f) = fields(line)?;
        match tag {
            "datum" => {
                let kind = match f.get("kind").copied() {
                    Some("E") => WeilKind::Elliptic { a: get(&f, "a")? },
                    Some("I") => WeilKind::TypeI {
                        a1: get(&f, "a1")?,
                        a2: get(&f, "a2")?,
                    },
                    Some("II") => WeilKind::TypeII,
                    Some("III") => WeilKind::TypeIII {
                        d: get(&f, "d")?,
                        two_a: get(&f, "two_a")?,
                        two_b: get(&f, "two_b")?,
                    },
                    other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
                };
                let w = WeilDatum { p, kind };
                w.validate()?;
                if w.dimension() != dim {
                    return Err(Error::Parse(format!("{w} has the wrong dimension")));
                }
                if get::<String>(&f, "poly")? != poly_field(&w) || get::<i64>(&f, "count")? != w.point_count() {
                    return Err(Error::Parse(format!("record for {w} does not match recomputation")));
                }
                data.push(w);
            }
            "counts" => summary = Some(parse_ranges(&get::<String>(&f, "values")?)?),
            _ => return Err(Error::Parse(format!("unknown record {tag:?}"))),
        }
    }
    if data.len() != records {
        return Err(Error::Parse(format!("expected {records} records, found {}", data.len())));
    }
    let census = CountCensus::from_data(p, dim, &data);
    if summary.as_ref() != Some(&census.counts) {
        return Err(Error::Parse("summary line disagrees with the records".into()));
    }
    Ok((census, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hondatate::{elliptic_census, surface_counts};

    #[test]
    fn round_trip() {
        for c in [surface_counts(2).unwrap(), elliptic_census(5).unwrap()] {
            let text = write_census(&c, "complete");
            let (back, strategy) = read_census(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(strategy, "complete");
            assert_eq!(write_census(&back, "complete"), text);
        }
    }

    #[test]
    fn tampered_records_rejected() {
        let text = write_census(&surface_counts(2).unwrap(), "complete");
        let bad = text.replacen("count=1\n", "count=2\n", 1);
        assert!(read_census(&bad).is_err());
        let bad = text.replacen("version=1", "version=9", 1);
        assert!(matches!(read_census(&bad), Err(Error::Unsupported(_))));
    }
}
