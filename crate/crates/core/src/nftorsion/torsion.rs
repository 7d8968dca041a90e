//! Torsion subgroups of Kubert curves over number fields.
//!
//! The upper bound comes from point counts at good primes: the prime-to-`p`
//! part of the torsion injects into the reduction modulo any prime above
//! `p`, so two residue characteristics bound every prime. The lower bound
//! is the group generated by `(0,0)` and the rational 2-torsion.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite_field::{FiniteFieldCurve, GfField, MAX_FIELD_SIZE};
use super::weierstrass::{CurveModel, Point};
use crate::error::{domain, Error, Result};
use crate::exactnum::int::{factor_u64, is_prime};
use crate::exactnum::parse::parse_upoly;
use crate::exactnum::zmod::PrimeField;
use crate::exactnum::{nf_roots, Coeff, NFElement, NFPoly, NumberField, ZPoly};

/// Largest rational prime tried for reduction.
pub const PRIME_BUDGET: u64 = 200;
const MAX_DEGREE: usize = 6;

/// `y^2 + (1 - c) x y - b y = x^3 - b x^2` over a number field.
#[derive(Clone, Debug)]
pub struct KubertCurve {
    pub field: Arc<NumberField>,
    pub b: NFElement,
    pub c: NFElement,
}

impl KubertCurve {
    pub fn new(field: &Arc<NumberField>, b: NFElement, c: NFElement) -> Result<Self> {
        let e = KubertCurve {
            field: field.clone(),
            b,
            c,
        };
        if e.model().discriminant().is_nil() {
            return domain("singular Kubert curve");
        }
        Ok(e)
    }

    /// From a minimal polynomial and `b`, `c` written in the variable `var`.
    pub fn from_strings(var: &str, minpoly: &str, b: &str, c: &str) -> Result<Self> {
        let m = parse_upoly(minpoly, var)?;
        if m.coeffs().iter().any(|q| !q.is_integer()) {
            return domain("minimal polynomial must have integer coefficients");
        }
        let m = ZPoly::from_coeffs(m.coeffs().iter().map(|q| q.to_integer()).collect());
        let field = NumberField::new(var, m)?;
        let b = field.element(&parse_upoly(b, var)?);
        let c = field.element(&parse_upoly(c, var)?);
        KubertCurve::new(&field, b, c)
    }

    pub fn model(&self) -> CurveModel<NFElement> {
        CurveModel::kubert(&self.b, &self.c)
    }

    pub fn origin(&self) -> Point<NFElement> {
        Point::Affine(self.b.zero_like(), self.b.zero_like())
    }

    /// Rational points of order 2.
    pub fn two_torsion(&self) -> Result<Vec<Point<NFElement>>> {
        let e = self.model();
        let cubic = NFPoly::from_coeffs(e.two_division_cubic());
        let mut xs = nf_roots(&cubic)?;
        xs.dedup();
        let half = self.b.from_i64_like(2);
        Ok(xs
            .into_iter()
            .map(|x| {
                let y = e.a1.times(&x).plus(&e.a3).negate().divide_by(&half);
                Point::Affine(x, y)
            })
            .collect())
    }
}

trait DivideBy {
    fn divide_by(&self, d: &Self) -> Self;
}

impl DivideBy for NFElement {
    fn divide_by(&self, d: &Self) -> Self {
        use crate::exactnum::FieldCoeff;
        self.divide(d).expect("nonzero divisor")
    }
}

/// `Z/n1 x Z/n2` with `n2 | n1`, and points realizing it.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionGroup {
    pub structure: (u64, u64),
    pub generators: Vec<Point<NFElement>>,
}

impl TorsionGroup {
    pub fn order(&self) -> u64 {
        self.structure.0 * self.structure.1
    }
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.structure {
            (n, 1) => write!(f, "Z/{n}"),
            (n1, n2) => write!(f, "Z/{n1} x Z/{n2}"),
        }
    }
}

/// One prime ideal used for reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCount {
    pub p: u64,
    pub residue_degree: u32,
    pub count: u64,
}

/// Point counts over the residue fields of good primes `5 <= p <= limit`.
pub fn residue_counts(e: &KubertCurve, limit: u64) -> Result<Vec<ResidueCount>> {
    let mut out = Vec::new();
    let bad = bad_primes_filter(e);
    for p in (5..=limit).filter(|&p| is_prime(p)) {
        if bad(p) {
            continue;
        }
        out.extend(counts_above(e, p)?);
    }
    Ok(out)
}

fn bad_primes_filter(e: &KubertCurve) -> impl Fn(u64) -> bool {
    let disc_norm = e.model().discriminant().norm();
    let poly_disc = e.field.poly_discriminant();
    move |p: u64| {
        let pb = BigInt::from(p);
        (disc_norm.numer() % &pb).is_zero()
            || (disc_norm.denom() % &pb).is_zero()
            || (&poly_disc % &pb).is_zero()
    }
}

fn counts_above(e: &KubertCurve, p: u64) -> Result<Vec<ResidueCount>> {
    let fp = PrimeField::new(p);
    let m = fp.reduce_zpoly(e.field.minpoly());
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for g in fp.factor_squarefree(&m, &mut rng) {
        let k = (g.len() - 1) as u32;
        if p.checked_pow(k).is_none_or(|q| q > MAX_FIELD_SIZE) {
            continue;
        }
        let field = GfField::from_modulus(p, &g)?;
        let (Some(b), Some(c)) = (field.reduce(&e.b), field.reduce(&e.c)) else {
            continue;
        };
        let Ok(curve) = FiniteFieldCurve::new(&field, CurveModel::kubert(&b, &c)) else {
            continue;
        };
        out.push(ResidueCount {
            p,
            residue_degree: k,
            count: curve.count_points(),
        });
    }
    Ok(out)
}

/// Bound on `#E(K)_tors` from the counts, or `None` while only one residue
/// characteristic is available.
pub fn order_bound(counts: &[ResidueCount]) -> Option<u64> {
    let chars: std::collections::BTreeSet<u64> = counts.iter().map(|r| r.p).collect();
    if chars.len() < 2 {
        return None;
    }
    let mut ells: Vec<u64> = counts.iter().flat_map(|r| factor_u64(r.count).into_iter().map(|(l, _)| l)).collect();
    ells.sort_unstable();
    ells.dedup();
    let mut bound = 1u64;
    for l in ells {
        let e = counts
            .iter()
            .filter(|r| r.p != l)
            .map(|r| factor_u64(r.count).into_iter().find(|f| f.0 == l).map_or(0, |f| f.1))
            .min()
            .unwrap_or(0);
        bound *= l.pow(e);
    }
    Some(bound)
}

/// All points of the subgroup generated by `gens`, or `None` once it has
/// more than `cap` elements.
fn closure(
    e: &CurveModel<NFElement>,
    gens: &[Point<NFElement>],
    cap: u64,
) -> Option<Vec<Point<NFElement>>> {
    let mut group = vec![Point::Infinity];
    for g in gens {
        if group.contains(g) {
            continue;
        }
        // Cosets of the current group by multiples of g.
        let base = group.clone();
        let mut shift = g.clone();
        while !base.contains(&shift) {
            for h in &base {
                group.push(e.add_unchecked(h, &shift));
            }
            if group.len() as u64 > cap {
                return None;
            }
            shift = e.add_unchecked(&shift, g);
        }
    }
    Some(group)
}

/// Structure and generators of a finite abelian group with at most two
/// cyclic factors, given all its elements.
fn structure_of(e: &CurveModel<NFElement>, group: &[Point<NFElement>]) -> Result<TorsionGroup> {
    let n = group.len() as u64;
    let orders: Vec<u64> = group.iter().map(|p| e.order(p, n).expect("finite group")).collect();
    let (i1, &n1) = orders.iter().enumerate().max_by_key(|&(i, o)| (*o, std::cmp::Reverse(i))).unwrap();
    let g1 = group[i1].clone();
    let n2 = n / n1;
    if n2 == 1 {
        return Ok(TorsionGroup {
            structure: (n1, 1),
            generators: vec![g1],
        });
    }
    let cyclic: Vec<Point<NFElement>> = (0..n1).map(|k| e.mul(&g1, k)).collect();
    for (p, &o) in group.iter().zip(&orders) {
        if o != n2 || n1 % n2 != 0 {
            continue;
        }
        if (1..n2).all(|k| !cyclic.contains(&e.mul(p, k))) {
            return Ok(TorsionGroup {
                structure: (n1, n2),
                generators: vec![g1, p.clone()],
            });
        }
    }
    Err(Error::Domain(format!("group of order {n} is not of the form Z/n1 x Z/n2")))
}

/// Explicit subgroup: `(0,0)` together with the rational 2-torsion.
pub fn known_subgroup(e: &KubertCurve, cap: u64) -> Result<Option<TorsionGroup>> {
    let model = e.model();
    let mut gens = vec![e.origin()];
    gens.extend(e.two_torsion()?);
    match closure(&model, &gens, cap) {
        Some(group) => structure_of(&model, &group).map(Some),
        None => Ok(None),
    }
}

pub fn torsion_subgroup(e: &KubertCurve) -> Result<TorsionGroup> {
    if e.field.degree() > MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "torsion over fields of degree {} > {MAX_DEGREE}",
            e.field.degree()
        )));
    }
    let bad = bad_primes_filter(e);
    let mut counts = Vec::new();
    let mut lower: Option<TorsionGroup> = None;
    let mut last_bound = None;
    for p in (5..=PRIME_BUDGET).filter(|&p| is_prime(p)) {
        if bad(p) {
            continue;
        }
        counts.extend(counts_above(e, p)?);
        let Some(bound) = order_bound(&counts) else {
            continue;
        };
        last_bound = Some(bound);
        if lower.is_none() {
            lower = known_subgroup(e, bound)?;
            if lower.is_none() {
                return Err(Error::Domain(format!(
                    "explicit points generate more than the bound {bound}"
                )));
            }
        }
        let found = lower.as_ref().unwrap();
        if bound % found.order() != 0 {
            return Err(Error::Domain(format!(
                "explicit subgroup of order {} does not divide the bound {bound}",
                found.order()
            )));
        }
        if found.order() == bound {
            return Ok(found.clone());
        }
    }
    let lower = lower.map_or(1, |g| g.order());
    Err(Error::Undecided(format!(
        "torsion order between {lower} and {} after primes up to {PRIME_BUDGET}",
        last_bound.map_or("unbounded".to_string(), |b| b.to_string())
    )))
}

/// The three cubic examples as `(label, minpoly, b, c, variable)`.
pub const CUBIC_EXAMPLES: [(&str, &str, &str, &str, &str); 3] = [
    ("first", "d^3 - d^2 - 2*d + 1", "2*d - 1", "d^2 - d", "d"),
    ("second", "d^3 - 15*d^2 + 12*d + 1", "14*d^2 - 12*d - 1", "d^2 - d", "d"),
    ("third", "f^3 - 3*f^2 + 1", "13*f^2 - f - 5", "2*f^2 - 1", "f"),
];

pub fn cubic_example(label: &str) -> Result<KubertCurve> {
    let Some(&(_, m, b, c, var)) = CUBIC_EXAMPLES.iter().find(|x| x.0 == label) else {
        return Err(Error::Unsupported(format!("unknown example {label}")));
    };
    KubertCurve::from_strings(var, m, b, c)
}

/// Orders of the explicit points, keyed by a short description.
pub fn explicit_orders(e: &KubertCurve, limit: u64) -> Result<BTreeMap<String, Option<u64>>> {
    let model = e.model();
    let mut out = BTreeMap::new();
    out.insert("(0,0)".to_string(), model.order(&e.origin(), limit));
    for (i, t) in e.two_torsion()?.iter().enumerate() {
        out.insert(format!("T{}", i + 1), model.order(t, limit));
    }
    Ok(out)
}
