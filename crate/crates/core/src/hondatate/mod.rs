//! Isogeny classes of elliptic curves and abelian surfaces over prime
//! fields, and the sets of point counts they realize.

pub mod census_file;
pub mod strategy;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, Sign};

use crate::error::{domain, Result};
use crate::exactnum::int::{is_prime, is_squarefree, isqrt, isqrt_u64};
use crate::exactnum::ZPoly;
use crate::localbounds::weil_cap;

pub use strategy::{census_strategy, census_strategy_names, CensusStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeilKind {
    /// An elliptic curve with trace `a`.
    Elliptic { a: i64 },
    /// Isogenous to a product of elliptic curves with traces `a1 <= a2`.
    TypeI { a1: i64, a2: i64 },
    /// Frobenius `±sqrt(p)`.
    TypeII,
    /// `beta = a + b sqrt(d)` stored as `(d, 2a, 2b)`.
    TypeIII { d: i64, two_a: i64, two_b: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeilDatum {
    pub p: u64,
    pub kind: WeilKind,
}

/// Admissible traces of elliptic curves over `F_p`: `|a| <= 2 sqrt(p)` and
/// either ordinary or one of the supersingular values.
pub fn admissible_traces(p: u64) -> Vec<i64> {
    let p = p as i64;
    let r = isqrt_u64(4 * p as u64) as i64;
    (-r..=r)
        .filter(|&a| a * a <= 4 * p)
        .filter(|&a| a % p != 0 || a == 0 || a * a == 2 * p || a * a == 3 * p)
        .collect()
}

/// `|A| + B sqrt(d) < 4 sqrt(p)` for `B > 0`, by squaring.
pub fn type_iii_in_range(p: u64, d: i64, two_a: i64, two_b: i64) -> bool {
    let (a, b) = (two_a.unsigned_abs() as i128, two_b.unsigned_abs() as i128);
    let (p, d) = (p as i128, d as i128);
    if a * a >= 16 * p {
        return false;
    }
    let rhs = 16 * p + a * a - b * b * d;
    rhs > 0 && (a == 0 || 64 * a * a * p < rhs * rhs)
}

impl WeilDatum {
    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        match self.kind {
            WeilKind::Elliptic { a } => {
                if !admissible_traces(p).contains(&a) {
                    return domain(format!("trace {a} not admissible over F_{p}"));
                }
            }
            WeilKind::TypeI { a1, a2 } => {
                let ok = admissible_traces(p);
                if !ok.contains(&a1) || !ok.contains(&a2) {
                    return domain(format!("traces ({a1},{a2}) not admissible over F_{p}"));
                }
            }
            WeilKind::TypeII => {}
            WeilKind::TypeIII { d, two_a, two_b } => {
                if d <= 1 || !is_squarefree(d as u64) {
                    return domain(format!("d = {d} must be squarefree and > 1"));
                }
                if two_b == 0 {
                    return domain("b must be nonzero");
                }
                if (two_a - two_b) % 2 != 0 || (two_a % 2 != 0 && d % 4 != 1) {
                    return domain("a + b sqrt(d) is not an algebraic integer");
                }
                if !type_iii_in_range(p, d, two_a, two_b) {
                    return domain("|a| + |b| sqrt(d) must be below 2 sqrt(p)");
                }
            }
        }
        Ok(())
    }

    /// Frobenius polynomial coefficients, constant term first.
    pub(crate) fn coeffs(&self) -> Vec<i64> {
        let p = self.p as i64;
        match self.kind {
            WeilKind::Elliptic { a } => vec![p, -a, 1],
            WeilKind::TypeI { a1, a2 } => {
                // (T^2 - a1 T + p)(T^2 - a2 T + p)
                vec![p * p, -p * (a1 + a2), 2 * p + a1 * a2, -(a1 + a2), 1]
            }
            WeilKind::TypeII => vec![p * p, 0, -2 * p, 0, 1],
            WeilKind::TypeIII { d, two_a, two_b } => {
                let mid = (two_a * two_a - d * two_b * two_b) / 4 + 2 * p;
                vec![p * p, -two_a * p, mid, -two_a, 1]
            }
        }
    }

    pub fn frobenius_poly(&self) -> Result<ZPoly> {
        self.validate()?;
        Ok(ZPoly::from_i64(&self.coeffs()))
    }

    pub fn point_count(&self) -> i64 {
        let p = self.p as i64;
        match self.kind {
            WeilKind::Elliptic { a } => p + 1 - a,
            WeilKind::TypeI { a1, a2 } => (p + 1 - a1) * (p + 1 - a2),
            WeilKind::TypeII => (p - 1) * (p - 1),
            WeilKind::TypeIII { .. } => self.coeffs().iter().sum(),
        }
    }

    pub fn dimension(&self) -> u32 {
        match self.kind {
            WeilKind::Elliptic { .. } => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for WeilDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            WeilKind::Elliptic { a } => write!(f, "E(a={a})"),
            WeilKind::TypeI { a1, a2 } => write!(f, "I(a1={a1},a2={a2})"),
            WeilKind::TypeII => write!(f, "II"),
            WeilKind::TypeIII { d, two_a, two_b } => {
                let half = |v: i64| {
                    if v % 2 == 0 {
                        (v / 2).to_string()
                    } else {
                        format!("{v}/2")
                    }
                };
                write!(f, "III(d={d},a={},b={})", half(two_a), half(two_b))
            }
        }
    }
}

/// Point counts of elliptic curves over `F_p`.
pub fn elliptic_counts(p: u64) -> Result<BTreeSet<i64>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(admissible_traces(p).into_iter().map(|a| p as i64 + 1 - a).collect())
}

/// Point counts by enumerating every nonsingular Weierstrass model over
/// `F_p`. Cost grows like `p^7`; intended for `p <= 7`.
pub fn exhaustive_elliptic_counts(p: u64) -> BTreeSet<i64> {
    use crate::nftorsion::weierstrass::CurveModel;
    use crate::exactnum::{Coeff, Fp};
    let f = |v: u64| Fp { v, p };
    let mut out = BTreeSet::new();
    for code in 0..p.pow(5) {
        let mut c = code;
        let mut digit = || {
            let d = c % p;
            c /= p;
            f(d)
        };
        let e = CurveModel {
            a1: digit(),
            a2: digit(),
            a3: digit(),
            a4: digit(),
            a6: digit(),
        };
        if e.discriminant().is_nil() {
            continue;
        }
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if e.equation_at(&f(x), &f(y)).is_nil() {
                    n += 1;
                }
            }
        }
        out.insert(n);
    }
    out
}

pub fn type_i_classes(p: u64) -> Vec<WeilDatum> {
    let t = admissible_traces(p);
    let mut out = Vec::new();
    for (i, &a1) in t.iter().enumerate() {
        for &a2 in &t[i..] {
            out.push(WeilDatum {
                p,
                kind: WeilKind::TypeI { a1, a2 },
            });
        }
    }
    out
}

/// Type III data with `d <= d_max`, ascending in `d`, then `2b`, then `2a`.
pub fn type_iii_classes(p: u64, d_max: i64) -> Vec<WeilDatum> {
    let mut out = Vec::new();
    for d in 2..=d_max {
        if !is_squarefree(d as u64) {
            continue;
        }
        let mut two_b = 1;
        while two_b * two_b * d < 16 * p as i64 {
            let r = isqrt_u64(16 * p) as i64;
            for two_a in -r..=r {
                let datum = WeilDatum {
                    p,
                    kind: WeilKind::TypeIII { d, two_a, two_b },
                };
                if datum.validate().is_ok() {
                    out.push(datum);
                }
            }
            two_b += 1;
        }
    }
    out
}

/// Every isogeny class of abelian surfaces over `F_p`.
pub fn surface_isogeny_classes(p: u64) -> Result<Vec<WeilDatum>> {
    surface_isogeny_classes_with(p, census_strategy(strategy::DEFAULT_STRATEGY)?.as_ref())
}

pub fn surface_isogeny_classes_with(p: u64, strategy: &dyn CensusStrategy) -> Result<Vec<WeilDatum>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let mut out = type_i_classes(p);
    out.push(WeilDatum {
        p,
        kind: WeilKind::TypeII,
    });
    out.extend(strategy.type_iii(p));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountCensus {
    pub p: u64,
    pub dimension: u32,
    pub counts: BTreeSet<i64>,
    pub provenance: BTreeMap<i64, Vec<WeilDatum>>,
}

impl CountCensus {
    pub fn from_data(p: u64, dimension: u32, data: &[WeilDatum]) -> Self {
        let mut provenance: BTreeMap<i64, Vec<WeilDatum>> = BTreeMap::new();
        for w in data {
            provenance.entry(w.point_count()).or_default().push(*w);
        }
        CountCensus {
            p,
            dimension,
            counts: provenance.keys().copied().collect(),
            provenance,
        }
    }

    /// Compact range notation, e.g. `1-16, 19, 20, 25`.
    pub fn ranges(&self) -> String {
        format_ranges(&self.counts)
    }
}

/// Renders a set of integers as comma-separated runs (runs of length at
/// least three collapse to `lo-hi`).
pub fn format_ranges(set: &BTreeSet<i64>) -> String {
    let v: Vec<i64> = set.iter().copied().collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
            j += 1;
        }
        if j >= i + 2 {
            parts.push(format!("{}-{}", v[i], v[j]));
        } else {
            for x in &v[i..=j] {
                parts.push(x.to_string());
            }
        }
        i = j + 1;
    }
    parts.join(", ")
}

/// Parses the notation produced by [`format_ranges`].
pub fn parse_ranges(s: &str) -> Result<BTreeSet<i64>> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || crate::error::Error::Parse(format!("bad range item {part:?}"));
        match part.split_once('-') {
            Some((lo, hi)) if !lo.is_empty() => {
                let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
                out.extend(lo..=hi);
            }
            _ => {
                out.insert(part.parse().map_err(|_| bad())?);
            }
        }
    }
    Ok(out)
}

pub fn surface_counts(p: u64) -> Result<CountCensus> {
    surface_counts_with(p, census_strategy(strategy::DEFAULT_STRATEGY)?.as_ref())
}

pub fn surface_counts_with(p: u64, strategy: &dyn CensusStrategy) -> Result<CountCensus> {
    let data = surface_isogeny_classes_with(p, strategy)?;
    Ok(CountCensus::from_data(p, 2, &data))
}

pub fn elliptic_census(p: u64) -> Result<CountCensus> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let data: Vec<WeilDatum> = admissible_traces(p)
        .into_iter()
        .map(|a| WeilDatum {
            p,
            kind: WeilKind::Elliptic { a },
        })
        .collect();
    Ok(CountCensus::from_data(p, 1, &data))
}

/// Lower end of the Weil interval, `ceil((sqrt(p) - 1)^(2 dim))`.
pub fn weil_floor(p: u64, dim: u32) -> BigInt {
    // Track (sqrt p - 1)^k as a + b sqrt p.
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(0));
    let pb = BigInt::from(p);
    for _ in 0..2 * dim {
        let na = &b * &pb - &a;
        b = &a - &b;
        a = na;
    }
    let r = isqrt(&(&b * &b * &pb)).unwrap();
    if b.sign() == Sign::Minus {
        a - r
    } else if &r * &r == &b * &b * &pb {
        a + r
    } else {
        a + r + 1
    }
}

/// Weil interval check used by the census invariants.
pub fn count_in_weil_interval(p: u64, dim: u32, n: i64) -> bool {
    let n = BigInt::from(n);
    n >= weil_floor(p, dim) && n <= weil_cap(p, dim).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::factor::factor_rational_poly;
    use crate::exactnum::Coeff;

    fn range_set(s: &str) -> BTreeSet<i64> {
        parse_ranges(s).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let w = WeilDatum { p: 5, kind: WeilKind::TypeII };
        assert_eq!(w.frobenius_poly().unwrap(), ZPoly::from_i64(&[25, 0, -10, 0, 1]));
        assert_eq!(w.point_count(), 16);
        let w = WeilDatum { p: 2, kind: WeilKind::TypeIII { d: 2, two_a: 0, two_b: 2 } };
        assert_eq!(w.frobenius_poly().unwrap(), ZPoly::from_i64(&[4, 0, 2, 0, 1]));
        assert_eq!(w.point_count(), 7);
        let w = WeilDatum { p: 2, kind: WeilKind::TypeI { a1: -2, a2: -2 } };
        let q = ZPoly::from_i64(&[2, 2, 1]);
        assert_eq!(w.frobenius_poly().unwrap(), q.mul(&q));
        assert_eq!(w.point_count(), 25);
        let bad = WeilDatum { p: 2, kind: WeilKind::TypeIII { d: 3, two_a: 1, two_b: 1 } };
        assert!(bad.frobenius_poly().is_err());
    }

    #[test]
    fn elliptic_counts_match_exhaustive_search() {
        assert_eq!(elliptic_counts(2).unwrap(), range_set("1-5"));
        assert_eq!(elliptic_counts(3).unwrap(), range_set("1-7"));
        assert_eq!(elliptic_counts(5).unwrap(), range_set("2-10"));
        for p in [2, 3, 5, 7] {
            assert_eq!(elliptic_counts(p).unwrap(), exhaustive_elliptic_counts(p), "p = {p}");
        }
    }

    #[test]
    fn class_lists() {
        let c2 = surface_isogeny_classes(2).unwrap();
        assert!(c2.contains(&WeilDatum { p: 2, kind: WeilKind::TypeIII { d: 2, two_a: 0, two_b: 2 } }));
        assert_eq!(type_i_classes(2).len(), 15);
        let c3 = surface_isogeny_classes(3).unwrap();
        assert!(c3.iter().all(|w| !matches!(w.kind, WeilKind::TypeIII { d, .. } if d >= 48)));
    }

    #[test]
    fn census_over_f2_matches_printed_line() {
        assert_eq!(surface_counts(2).unwrap().ranges(), "1-16, 19, 20, 25");
    }

    #[test]
    fn census_invariants() {
        for p in [2u64, 3, 5, 7] {
            for w in surface_isogeny_classes(p).unwrap() {
                let f = w.frobenius_poly().unwrap();
                // T^4 P(p/T) = p^2 P(T)
                let pb = BigInt::from(p);
                let rev: Vec<BigInt> = (0..=4).map(|k| &f.coeffs()[4 - k] * pb.pow((4 - k) as u32)).collect();
                assert_eq!(ZPoly::from_coeffs(rev), f.scale(&pb.pow(2)));
                assert_eq!(f.eval(&BigInt::from(1)), BigInt::from(w.point_count()));
                assert!(count_in_weil_interval(p, 2, w.point_count()), "{w}");
                if matches!(w.kind, WeilKind::TypeIII { .. }) {
                    let fac = factor_rational_poly(&f.to_q()).unwrap();
                    assert_eq!(fac.degrees(), vec![4], "{w} reducible");
                }
            }
        }
        assert_eq!(*surface_counts(2).unwrap().counts.last().unwrap(), 25);
        assert!(BigInt::from(1).is_unity());
    }

    #[test]
    fn weil_floor_values() {
        assert_eq!(weil_floor(2, 2), BigInt::from(1));
        assert_eq!(weil_floor(5, 2), BigInt::from(3));
        assert_eq!(weil_floor(4, 1), BigInt::from(1));
    }

    #[test]
    fn range_round_trip() {
        let s = "4, 6-50, 52-56, 90, 100";
        assert_eq!(format_ranges(&range_set(s)), s);
        assert_eq!(format_ranges(&range_set("1, 2, 4")), "1, 2, 4");
    }
}
