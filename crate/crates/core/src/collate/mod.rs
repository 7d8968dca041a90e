//! Prime-by-prime collation of attainable point counts into candidate
//! torsion orders.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{domain, Error, Result};
use crate::exactnum::int::{is_prime, strip_prime, to_u64};
use crate::hondatate::{census_strategy, elliptic_counts, surface_counts_with};
use crate::localbounds::weil_cap;

pub fn prime_to_p_part(n: u64, p: u64) -> u64 {
    strip_prime(n, p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollationInput {
    pub per_prime: BTreeMap<u64, BTreeSet<u64>>,
    pub dimension: u32,
}

impl CollationInput {
    pub fn validate(&self) -> Result<()> {
        for (p, d) in &self.per_prime {
            if !is_prime(*p) {
                return domain(format!("{p} is not prime"));
            }
            if d.is_empty() || d.contains(&0) {
                return domain(format!("D_{p} must be a nonempty set of positive integers"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateList {
    pub dimension: u32,
    pub admissible_orders: BTreeSet<u64>,
    /// `N -> p -> element of D_p divisible by the prime-to-p part of N`.
    pub witnesses: BTreeMap<u64, BTreeMap<u64, u64>>,
    pub annotations: BTreeMap<u64, String>,
}

impl CandidateList {
    /// Orders written as `2^a * y`: the odd parts and the largest `a`.
    pub fn two_adic_shape(&self) -> (BTreeSet<u64>, u32) {
        let odd = self.admissible_orders.iter().map(|&n| strip_prime(n, 2)).collect();
        let a = self.admissible_orders.iter().map(|n| n.trailing_zeros()).max().unwrap_or(0);
        (odd, a)
    }
}

/// `N <= cap` survives when, for every prime `p`, the prime-to-`p` part of
/// `N` divides some element of `D_p`.
pub fn admissible_orders(input: &CollationInput, cap: u64) -> Result<CandidateList> {
    input.validate()?;
    if cap == 0 {
        return domain("cap must be positive");
    }
    let mut admissible = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    'n: for n in 1..=cap {
        let mut w = BTreeMap::new();
        for (&p, d) in &input.per_prime {
            let m = prime_to_p_part(n, p);
            match d.iter().find(|&&x| x % m == 0) {
                Some(&x) => {
                    w.insert(p, x);
                }
                None => continue 'n,
            }
        }
        admissible.insert(n);
        witnesses.insert(n, w);
    }
    let mut annotations = BTreeMap::new();
    if input.dimension == 1 && admissible.contains(&5) {
        annotations.insert(5, "excluded by a global argument (modularity), not computed".to_string());
    }
    Ok(CandidateList {
        dimension: input.dimension,
        admissible_orders: admissible,
        witnesses,
        annotations,
    })
}

pub fn undecided_report(list: &CandidateList, attained: &BTreeSet<u64>) -> Result<BTreeSet<u64>> {
    if let Some(x) = attained.iter().find(|x| !list.admissible_orders.contains(x)) {
        return domain(format!("attained value {x} is not a candidate"));
    }
    Ok(list.admissible_orders.difference(attained).copied().collect())
}

/// Where the per-prime sets `D_p` come from.
pub trait CountSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn counts(&self, p: u64, dim: u32) -> Result<BTreeSet<u64>>;
}

/// Isogeny-class census (elliptic counts in dimension 1).
struct Census(&'static str, &'static str);

impl CountSource for Census {
    fn name(&self) -> &'static str {
        self.0
    }
    fn counts(&self, p: u64, dim: u32) -> Result<BTreeSet<u64>> {
        let raw = match dim {
            1 => elliptic_counts(p)?,
            2 => surface_counts_with(p, census_strategy(self.1)?.as_ref())?.counts,
            _ => return Err(Error::Unsupported(format!("census in dimension {dim}"))),
        };
        Ok(raw.into_iter().map(|n| n as u64).collect())
    }
}

/// Every integer from 1 up to the Weil cap.
struct WeilInterval;

impl CountSource for WeilInterval {
    fn name(&self) -> &'static str {
        "weil-interval"
    }
    fn counts(&self, p: u64, dim: u32) -> Result<BTreeSet<u64>> {
        let cap = to_u64(&weil_cap(p, dim)?).ok_or_else(|| Error::Unsupported("cap too large".into()))?;
        Ok((1..=cap).collect())
    }
}

type Ctor = fn() -> Box<dyn CountSource>;

const SOURCES: &[(&str, Ctor)] = &[
    ("census", || Box::new(Census("census", "complete"))),
    ("census-truncated", || Box::new(Census("census-truncated", "truncated"))),
    ("weil-interval", || Box::new(WeilInterval)),
];

pub fn count_source_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn count_source(name: &str) -> Result<Box<dyn CountSource>> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| c())
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "unknown count source {name:?} (known: {})",
                count_source_names().join(", ")
            ))
        })
}

pub fn build_input(source: &dyn CountSource, primes: &[u64], dim: u32) -> Result<CollationInput> {
    let mut per_prime = BTreeMap::new();
    for &p in primes {
        per_prime.insert(p, source.counts(p, dim)?);
    }
    Ok(CollationInput { per_prime, dimension: dim })
}

/// Torsion orders of integral-moduli abelian surfaces over Q known from
/// constructions outside this crate. Imported facts, not computed here.
pub fn attained_surface_orders() -> Vec<(u64, &'static str)> {
    let elliptic = [1u64, 2, 3, 4, 6];
    let mut out: BTreeMap<u64, &'static str> = BTreeMap::new();
    for a in elliptic {
        for b in elliptic {
            out.entry(a * b).or_insert("product of two elliptic curves");
        }
    }
    for n in [5, 7, 10] {
        out.entry(n).or_insert("Weil restriction from a quadratic field");
    }
    out.entry(19).or_insert("J_1(13)");
    out.entry(20).or_insert("J_1(16)");
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn prime_to_p_examples() {
        assert_eq!(prime_to_p_part(24, 2), 3);
        assert_eq!(prime_to_p_part(24, 3), 8);
        assert_eq!(prime_to_p_part(7, 7), 1);
    }

    #[test]
    fn dimension_one() {
        let input = build_input(count_source("census").unwrap().as_ref(), &[2, 3, 5], 1).unwrap();
        let list = admissible_orders(&input, 35).unwrap();
        assert_eq!(list.admissible_orders, set(&[1, 2, 3, 4, 5, 6]));
        assert!(list.annotations.contains_key(&5));
    }

    #[test]
    fn undecided_edges() {
        let input = build_input(count_source("census").unwrap().as_ref(), &[2, 3, 5], 1).unwrap();
        let list = admissible_orders(&input, 35).unwrap();
        assert_eq!(undecided_report(&list, &list.admissible_orders).unwrap(), BTreeSet::new());
        assert_eq!(undecided_report(&list, &BTreeSet::new()).unwrap(), list.admissible_orders);
        assert!(undecided_report(&list, &set(&[7])).is_err());
    }

    #[test]
    fn unconstrained_input_keeps_everything() {
        let fact20: u64 = (1..=20).product();
        let input = CollationInput {
            per_prime: [(2, set(&[fact20])), (3, set(&[fact20]))].into_iter().collect(),
            dimension: 2,
        };
        assert_eq!(admissible_orders(&input, 20).unwrap().admissible_orders, (1..=20).collect());
    }

    proptest! {
        #[test]
        fn monotone_and_divisor_closed(d2 in proptest::collection::btree_set(1u64..60, 1..12),
                                       d3 in proptest::collection::btree_set(1u64..60, 1..12),
                                       extra in 1u64..60) {
            let base = CollationInput { per_prime: [(2, d2.clone())].into_iter().collect(), dimension: 2 };
            let list = admissible_orders(&base, 200).unwrap();
            for &n in &list.admissible_orders {
                for (&p, &w) in &list.witnesses[&n] {
                    prop_assert_eq!(w % prime_to_p_part(n, p), 0);
                }
                for k in 1..n {
                    if n % k == 0 {
                        prop_assert!(list.admissible_orders.contains(&k));
                    }
                }
            }
            let mut bigger = base.clone();
            bigger.per_prime.get_mut(&2).unwrap().insert(extra);
            prop_assert!(list.admissible_orders.is_subset(&admissible_orders(&bigger, 200).unwrap().admissible_orders));
            let mut more = base.clone();
            more.per_prime.insert(3, d3);
            prop_assert!(admissible_orders(&more, 200).unwrap().admissible_orders.is_subset(&list.admissible_orders));
        }
    }
}
