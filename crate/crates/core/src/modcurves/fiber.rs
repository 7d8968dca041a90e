//! Fibres of `X_1(N) -> X(1)` over a rational `j` in Kubert coordinates.
//!
//! After the shear `c = v - lambda b` both generators have constant leading
//! coefficient in `b`, so every root of `Res_b` in `v` lifts to a common
//! zero. A factor `r(v)` of the resultant is then a component of degree
//! `deg r` once a reduction at a degree-one prime shows that the common
//! zero is unique; components lying on the discriminant or on a lower-order
//! locus are dropped.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{j_kubert_formal, primitive_order_relation, var_b, var_c, MIN_ORDER};
use crate::error::{Error, Result};
use crate::exactnum::factor::irreducible_factors_z;
use crate::exactnum::int::next_prime;
use crate::exactnum::numfield::{is_square, NFElement, NFPoly, NumberField};
use crate::exactnum::zmod::{ModPoly, PrimeField};
use crate::exactnum::{resultant, BiPoly, Coeff, UPoly, ZPoly};
use crate::nftorsion::weierstrass::{CurveModel, Point};

pub const MAX_LAMBDA: i64 = 10;
const FIRST_PRIME: u64 = 1 << 20;
const PRIME_TRIES: usize = 60;
const VOTES: usize = 3;
const MAX_LIFT_PRIMES: usize = 4000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct FiberScheme {
    pub n: u32,
    pub j: BigRational,
    pub generators: (BiPoly, BiPoly),
    pub excised: Vec<BiPoly>,
    /// Shear used for elimination.
    pub lambda: i64,
    /// Minimal polynomials in `v = c + lambda b` of the components.
    pub components: Vec<ZPoly>,
}

impl FiberScheme {
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d: Vec<usize> = self.components.iter().map(|r| r.deg()).collect();
        d.sort_unstable();
        DegreeSequence(d)
    }
}

/// `den(j) c4^3 - num(j) Delta`.
pub fn j_generator(j: &BigRational) -> BiPoly {
    let (c4_cubed, disc) = j_kubert_formal();
    c4_cubed.scale(j.denom()).sub(&disc.scale(j.numer()))
}

/// Components of the Kubert-coordinate fibre of `X_1(N)` over `j`.
pub fn fiber_scheme(n: u32, j: &BigRational) -> Result<FiberScheme> {
    let rel = primitive_order_relation(n)?;
    let g = j_generator(j);
    let (_, disc) = j_kubert_formal();
    let mut excised = vec![disc];
    for d in MIN_ORDER..n {
        if n % d == 0 {
            excised.push(primitive_order_relation(d)?);
        }
    }
    let (lambda, components) = solve(&rel, &g, &excised)?;
    Ok(FiberScheme {
        n,
        j: j.clone(),
        generators: (rel, g),
        excised,
        lambda,
        components,
    })
}

pub fn degree_sequence(n: u32, j: &BigRational) -> Result<DegreeSequence> {
    Ok(fiber_scheme(n, j)?.degree_sequence())
}

fn shear(f: &BiPoly, lambda: i64) -> BiPoly {
    let image = var_c().sub(&var_b().scale(&BigInt::from(lambda)));
    f.substitute(1, &image)
}

/// Leading coefficient in `b` when it is a nonzero constant.
fn constant_lc(f: &BiPoly) -> Option<BigInt> {
    let rows = f.coeffs_in(0);
    let top = rows.last()?;
    (top.deg() == 0 && !top.is_zero()).then(|| top.coeffs()[0].clone())
}

enum Verdict {
    Genuine,
    Excised,
    Unseparated,
}

struct Sheared {
    f: BiPoly,
    g: BiPoly,
    excised: Vec<BiPoly>,
    lc: BigInt,
}

fn eval_mod(fp: &PrimeField, f: &BiPoly, b: u64, v: u64) -> u64 {
    let row = f.eval_var_mod(fp, 1, v);
    fp.eval(&row, b)
}

fn classify(s: &Sheared, r: &ZPoly) -> Result<Verdict> {
    let mut p = FIRST_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(r.deg() as u64);
    let (mut excised_votes, mut unseparated_votes) = (0, 0);
    for _ in 0..PRIME_TRIES {
        p = next_prime(p + 1);
        let pb = BigInt::from(p);
        if (&s.lc % &pb).is_zero() || (r.lc().unwrap() % &pb).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p);
        let rp = fp.reduce_zpoly(r);
        if !fp.is_squarefree(&rp) {
            continue;
        }
        let Some(&v0) = fp.roots(&rp, &mut rng).first() else {
            continue;
        };
        let g = fp.gcd(&s.f.eval_var_mod(&fp, 1, v0), &s.g.eval_var_mod(&fp, 1, v0));
        match g.len() {
            0 | 1 => {
                return Err(Error::EliminationFailure(format!(
                    "no common zero over a root of {r} modulo {p}"
                )))
            }
            2 => {
                let b0 = fp.mul(fp.neg(g[0]), fp.inv(g[1]));
                if s.excised.iter().all(|e| eval_mod(&fp, e, b0, v0) != 0) {
                    return Ok(Verdict::Genuine);
                }
                excised_votes += 1;
                if excised_votes == VOTES {
                    return Ok(Verdict::Excised);
                }
            }
            _ => {
                unseparated_votes += 1;
                if unseparated_votes == VOTES {
                    return Ok(Verdict::Unseparated);
                }
            }
        }
    }
    Err(Error::EliminationFailure(format!(
        "could not certify the component {r} within {PRIME_TRIES} primes"
    )))
}

fn try_lambda(rel: &BiPoly, g: &BiPoly, excised: &[BiPoly], lambda: i64) -> Result<Option<Vec<ZPoly>>> {
    let f = shear(rel, lambda);
    let gg = shear(g, lambda);
    let (Some(lf), Some(lg)) = (constant_lc(&f), constant_lc(&gg)) else {
        return Ok(None);
    };
    let res = resultant(&f, &gg, "b")?;
    if res.is_zero() {
        return Ok(None);
    }
    let facs = irreducible_factors_z(&res);
    let s = Sheared {
        f,
        g: gg,
        excised: excised.iter().map(|e| shear(e, lambda)).collect(),
        lc: lf * lg,
    };
    let mut out = Vec::new();
    for r in facs {
        match classify(&s, &r)? {
            Verdict::Genuine => out.push(r),
            Verdict::Excised => {}
            Verdict::Unseparated => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Eliminates `b` from `rel = g = 0` after the first shear that puts the
/// system in shape position; returns the shear and the components.
pub fn solve(rel: &BiPoly, g: &BiPoly, excised: &[BiPoly]) -> Result<(i64, Vec<ZPoly>)> {
    for lambda in 1..=MAX_LAMBDA {
        if let Some(comps) = try_lambda(rel, g, excised, lambda)? {
            return Ok((lambda, comps));
        }
    }
    Err(Error::EliminationFailure(format!(
        "no shear c = v - lambda b with lambda <= {MAX_LAMBDA} separates the fibre"
    )))
}

/// Point `(b, c)` of a component, in the field it generates.
///
/// `b` is the unique common root of the sheared generators over
/// `K = Q[v]/(r)`. It is found modulo word-sized primes by a Euclidean
/// gcd over `F_p[v]/(r)`, lifted by Chinese remaindering and rational
/// reconstruction, and accepted once it satisfies both equations in `K`.
pub fn component_point(scheme: &FiberScheme, r: &ZPoly) -> Result<(Arc<NumberField>, NFElement, NFElement)> {
    let (field, v) = NumberField::from_irreducible("v", &r.to_q())?;
    let rows_f = shear(&scheme.generators.0, scheme.lambda).coeffs_in(0);
    let rows_g = shear(&scheme.generators.1, scheme.lambda).coeffs_in(0);
    let embed = |rows: &[ZPoly]| -> NFPoly {
        UPoly::from_coeffs(
            rows.iter()
                .map(|row| row.eval_with(&v, |c| v.from_int_like(c)))
                .collect(),
        )
    };
    let (fb, gb) = (embed(&rows_f), embed(&rows_g));
    let n = r.deg();
    let mut acc = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    let mut p: u64 = (1 << 31) - 1;
    let mut used = 0usize;
    let mut next_check = 4usize;
    let mut failures = 0usize;
    while failures < PRIME_TRIES && used < MAX_LIFT_PRIMES {
        p -= 1;
        while !crate::exactnum::int::is_prime(p) {
            p -= 1;
        }
        let fp = PrimeField::new(p);
        let Some(image) = linear_gcd_mod(&fp, r, &rows_f, &rows_g) else {
            failures += 1;
            continue;
        };
        let mut padded = image;
        padded.resize(n, 0);
        crate::exactnum::bipoly::crt_accumulate(&mut acc, &modulus, &padded, p);
        modulus *= BigInt::from(p);
        used += 1;
        if used < next_check {
            continue;
        }
        next_check = used + used / 2 + 1;
        let coeffs: Option<Vec<BigRational>> = acc
            .iter()
            .map(|a| crate::exactnum::int::rational_reconstruction(a, &modulus))
            .collect();
        let Some(coeffs) = coeffs else {
            continue;
        };
        let b = UPoly::from_coeffs(coeffs).eval_with(&v, |q| v.one_like().scale_q(q));
        if fb.eval(&b).is_zero() && gb.eval(&b).is_zero() {
            let c = v.minus(&b.times(&v.from_i64_like(scheme.lambda)));
            return Ok((field, b, c));
        }
    }
    Err(Error::EliminationFailure(format!(
        "component {r} does not determine b uniquely"
    )))
}

/// Image of `b` in `F_p[v]/(r)` when the gcd of the two generators there is
/// linear with invertible leading coefficient.
fn linear_gcd_mod(fp: &PrimeField, r: &ZPoly, rows_f: &[ZPoly], rows_g: &[ZPoly]) -> Option<ModPoly> {
    let rp = fp.reduce_zpoly(r);
    if rp.len() != r.deg() + 1 {
        return None;
    }
    let lift = |rows: &[ZPoly]| -> Vec<ModPoly> {
        let mut out: Vec<ModPoly> = rows.iter().map(|z| fp.rem(&fp.reduce_zpoly(z), &rp)).collect();
        while out.last().is_some_and(|c| c.is_empty()) {
            out.pop();
        }
        out
    };
    let inv = |a: &[u64]| -> Option<ModPoly> {
        let (g, s, _) = fp.ext_gcd(a, &rp);
        (g.len() == 1).then_some(s)
    };
    let (mut a, mut b) = (lift(rows_f), lift(rows_g));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b over F_p[v]/(r).
        let lc_inv = inv(b.last().unwrap())?;
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = fp.rem(&fp.poly_mul(a.last().unwrap(), &lc_inv), &rp);
            for (k, bc) in b.iter().enumerate() {
                let t = fp.rem(&fp.poly_mul(&q, bc), &rp);
                a[shift + k] = fp.poly_sub(&a[shift + k], &t);
            }
            debug_assert!(a.last().unwrap().is_empty());
            while a.last().is_some_and(|c| c.is_empty()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.len() != 2 {
        return None;
    }
    let lc_inv = inv(&a[1])?;
    Some(fp.rem(&fp.poly_mul(&fp.poly_sub(&[], &a[0]), &lc_inv), &rp))
}

/// Degree sequence of the locus with `(0,0)` of exact order `2M` and full
/// rational 2-torsion.
pub fn full_two_torsion_degree_sequence(m: u32, j: &BigRational) -> Result<DegreeSequence> {
    if !(2..=4).contains(&m) {
        return Err(Error::Unsupported(format!("Z/2 x Z/2M needs 2 <= M <= 4, got {m}")));
    }
    let scheme = fiber_scheme(2 * m, j)?;
    let mut out = Vec::new();
    for r in &scheme.components {
        let n = r.deg();
        if residue_pretest(&scheme, r, m) && quadratic_splits(&scheme, r, m)? {
            out.extend([n, n]);
        } else {
            out.push(2 * n);
        }
    }
    out.sort_unstable();
    Ok(DegreeSequence(out))
}

/// Whether the 2-division cubic, with the root `x([M](0,0))` removed,
/// splits over the field of the component.
fn quadratic_splits(scheme: &FiberScheme, r: &ZPoly, m: u32) -> Result<bool> {
    let (_, b, c) = component_point(scheme, r)?;
    let e = CurveModel::kubert(&b, &c);
    let origin = Point::Affine(b.zero_like(), b.zero_like());
    let Point::Affine(x0, _) = e.mul(&origin, m as u64) else {
        return Err(Error::Domain("(0,0) has order dividing M".into()));
    };
    let cubic = UPoly::from_coeffs(e.two_division_cubic());
    let (quad, rem) = cubic.divrem(&UPoly::from_coeffs(vec![x0.negate(), b.one_like()]));
    if !rem.is_zero() {
        return Err(Error::Domain("[M](0,0) is not a 2-torsion point".into()));
    }
    let q = quad.coeffs();
    let disc = q[1].times(&q[1]).minus(&q[0].times(&q[2]).times(&b.from_i64_like(4)));
    is_square(&disc)
}

/// `[m](0,0)` on the Kubert curve over `F_p`, or `None` if an intermediate
/// sum meets the point at infinity.
fn kubert_multiple_mod(fp: &PrimeField, b: u64, c: u64, m: u32) -> Option<(u64, u64)> {
    let (a1, a2, a3) = (fp.sub(1, c), fp.neg(b), fp.neg(b));
    let add = |p1: (u64, u64), p2: (u64, u64)| -> Option<(u64, u64)> {
        let (num, den) = if p1 == p2 {
            let num = fp.sub(
                fp.add(fp.mul(3, fp.mul(p1.0, p1.0)), fp.mul(fp.mul(2, a2), p1.0)),
                fp.mul(a1, p1.1),
            );
            (num, fp.add(fp.add(fp.mul(2, p1.1), fp.mul(a1, p1.0)), a3))
        } else {
            (fp.sub(p2.1, p1.1), fp.sub(p2.0, p1.0))
        };
        if den == 0 {
            return None;
        }
        let l = fp.mul(num, fp.inv(den));
        let nu = fp.sub(p1.1, fp.mul(l, p1.0));
        let x3 = fp.sub(fp.sub(fp.sub(fp.add(fp.mul(l, l), fp.mul(a1, l)), a2), p1.0), p2.0);
        let y3 = fp.sub(fp.sub(fp.neg(fp.mul(fp.add(l, a1), x3)), nu), a3);
        Some((x3, y3))
    };
    let mut acc = (0, 0);
    for _ in 1..m {
        acc = add(acc, (0, 0))?;
    }
    Some(acc)
}

/// False when the quadratic discriminant is a non-residue at some
/// degree-one prime of the component field, which proves it is not a
/// square there.
fn residue_pretest(scheme: &FiberScheme, r: &ZPoly, m: u32) -> bool {
    let f = shear(&scheme.generators.0, scheme.lambda);
    let g = shear(&scheme.generators.1, scheme.lambda);
    let mut p: u64 = FIRST_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for _ in 0..4 * PRIME_TRIES {
        if checked >= 24 {
            break;
        }
        p = next_prime(p + 1);
        if (r.lc().unwrap() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p);
        let rp = fp.reduce_zpoly(r);
        if !fp.is_squarefree(&rp) {
            continue;
        }
        for v0 in fp.roots(&rp, &mut rng).into_iter().take(2) {
            let h = fp.gcd(&f.eval_var_mod(&fp, 1, v0), &g.eval_var_mod(&fp, 1, v0));
            if h.len() != 2 {
                continue;
            }
            let b0 = fp.mul(fp.neg(h[0]), fp.inv(h[1]));
            let c0 = fp.sub(v0, fp.mul(b0, (scheme.lambda as u64) % p));
            let Some((x0, _)) = kubert_multiple_mod(&fp, b0, c0, m) else {
                continue;
            };
            let a1 = fp.sub(1, c0);
            let b2 = fp.sub(fp.mul(a1, a1), fp.mul(4, b0));
            let b4 = fp.neg(fp.mul(a1, b0));
            // 4x^3 + b2 x^2 + 2 b4 x + b6 = (x - x0)(4x^2 + q1 x + q0).
            let q1 = fp.add(b2, fp.mul(4, x0));
            let q0 = fp.add(fp.mul(2, b4), fp.mul(x0, q1));
            let disc = fp.sub(fp.mul(q1, q1), fp.mul(16, q0));
            checked += 1;
            if disc != 0 && fp.pow(disc, (p - 1) / 2) != 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcurves::cm_j_invariants;
    use crate::modcurves::tables::{cyclic_row, format_row};

    fn row(n: u32) -> String {
        let seqs: Vec<DegreeSequence> = cm_j_invariants()
            .into_iter()
            .map(|j| degree_sequence(n, &BigRational::from_integer(j)).unwrap())
            .collect();
        format_row(&seqs)
    }

    #[test]
    fn rows_four_and_five() {
        assert_eq!(row(4), cyclic_row(4).unwrap());
        assert_eq!(row(5), cyclic_row(5).unwrap());
    }

    #[test]
    fn sequence_display() {
        assert_eq!(DegreeSequence(vec![1, 2]).to_string(), "(1,2)");
    }
}
