//! Named enumeration strategies for the Type III part of a surface census.
//!
//! `complete` searches every squarefree `d < 16p` allowed by the inequality.
//! `truncated` stops at `d <= 4p`, which is the search that reproduces the
//! historically printed census lines; it misses a few classes with
//! half-integral `b` for `p = 3` and `p = 5`.

use super::{type_iii_classes, WeilDatum};
use crate::error::{Error, Result};

pub const DEFAULT_STRATEGY: &str = "complete";

pub trait CensusStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn type_iii(&self, p: u64) -> Vec<WeilDatum>;
}

struct Complete;

impl CensusStrategy for Complete {
    fn name(&self) -> &'static str {
        "complete"
    }
    fn description(&self) -> &'static str {
        "all squarefree d < 16p"
    }
    fn type_iii(&self, p: u64) -> Vec<WeilDatum> {
        type_iii_classes(p, 16 * p as i64 - 1)
    }
}

struct Truncated;

impl CensusStrategy for Truncated {
    fn name(&self) -> &'static str {
        "truncated"
    }
    fn description(&self) -> &'static str {
        "squarefree d <= 4p only"
    }
    fn type_iii(&self, p: u64) -> Vec<WeilDatum> {
        type_iii_classes(p, 4 * p as i64)
    }
}

type Ctor = fn() -> Box<dyn CensusStrategy>;

const REGISTRY: &[(&str, Ctor)] = &[
    ("complete", || Box::new(Complete)),
    ("truncated", || Box::new(Truncated)),
];

pub fn census_strategy_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _)| *n).collect()
}

pub fn census_strategy(name: &str) -> Result<Box<dyn CensusStrategy>> {
    REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, ctor)| ctor())
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "unknown census strategy {name:?} (known: {})",
                census_strategy_names().join(", ")
            ))
        })
}
