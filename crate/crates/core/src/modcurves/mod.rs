//! Kubert normal form, division polynomials, order-N relations between
//! `b` and `c`, and the j-line fibres of `X_1(N)` over CM j-invariants.

pub mod fiber;
pub mod tables;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::exactnum::factor::irreducible_factors_z;
use crate::exactnum::{BiPoly, Coeff, FieldCoeff, QPoly, UPoly};
use crate::nftorsion::weierstrass::CurveModel;

pub use fiber::{
    degree_sequence, fiber_scheme, full_two_torsion_degree_sequence, DegreeSequence, FiberScheme,
};

pub const MIN_ORDER: u32 = 4;
pub const MAX_ORDER: u32 = 13;

pub fn var_b() -> BiPoly {
    BiPoly::var("b", "c", 0)
}

pub fn var_c() -> BiPoly {
    BiPoly::var("b", "c", 1)
}

/// `y^2 + (1 - c) x y - b y = x^3 - b x^2` with formal `b`, `c`.
pub fn kubert_formal() -> CurveModel<BiPoly> {
    CurveModel::kubert(&var_b(), &var_c())
}

/// Runs the division-polynomial recurrences in the `f_n` normalization:
/// `psi_n = f_n` for odd `n` and `psi_n = psi_2 f_n` for even `n`, with
/// `psi_2^2` passed in as `two`. Returns `f_0, ..., f_n`.
fn recurrence<T: Clone>(
    n: usize,
    f3: T,
    f4: T,
    zero: T,
    one: T,
    two: &T,
    mul: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let two_sq = mul(two, two);
    let mut f = vec![zero, one.clone(), one, f3, f4];
    for k in 5..=n {
        let m = k / 2;
        let cube = |x: &T| mul(&mul(x, x), x);
        let sq = |x: &T| mul(x, x);
        let next = if k % 2 == 1 {
            let mut s = mul(&f[m + 2], &cube(&f[m]));
            let mut t = mul(&f[m - 1], &cube(&f[m + 1]));
            if m % 2 == 0 {
                s = mul(&s, &two_sq);
            } else {
                t = mul(&t, &two_sq);
            }
            sub(&s, &t)
        } else {
            let inner = sub(&mul(&f[m + 2], &sq(&f[m - 1])), &mul(&f[m - 2], &sq(&f[m + 1])));
            mul(&f[m], &inner)
        };
        f.push(next);
    }
    f.truncate(n + 1);
    f
}

/// The `n`-division polynomial `f_n(x)` of a long Weierstrass model, in the
/// normalization where `psi_n = f_n` for odd `n` and `psi_n = psi_2 f_n`
/// for even `n`. An affine point `P` with `2P != O` satisfies `[n]P = O`
/// exactly when `f_n(x(P)) = 0`.
pub fn division_polynomial<C: Coeff>(e: &CurveModel<C>, n: usize) -> UPoly<C> {
    division_polynomials(e, n).pop().unwrap()
}

/// `f_0, ..., f_n`.
pub fn division_polynomials<C: Coeff>(e: &CurveModel<C>, n: usize) -> Vec<UPoly<C>> {
    let inv = e.invariants();
    let k = |v: i64| e.a1.from_i64_like(v);
    let (b2, b4, b6, b8) = (&inv.b2, &inv.b4, &inv.b6, &inv.b8);
    let f3 = UPoly::from_coeffs(vec![b8.clone(), k(3).times(b6), k(3).times(b4), b2.clone(), k(3)]);
    let f4 = UPoly::from_coeffs(vec![
        b4.times(b8).minus(&b6.times(b6)),
        b2.times(b8).minus(&b4.times(b6)),
        k(10).times(b8),
        k(10).times(b6),
        k(5).times(b4),
        b2.clone(),
        k(2),
    ]);
    let two = UPoly::from_coeffs(e.two_division_cubic());
    recurrence(
        n,
        f3,
        f4,
        UPoly::zero(),
        UPoly::constant(k(1)),
        &two,
        |a, b| a.mul(b),
        |a, b| a.sub(b),
    )
}

/// `f_0(0), ..., f_n(0)` on the formal Kubert curve, as elements of `Z[b,c]`.
pub fn division_values_at_origin(n: usize) -> Vec<BiPoly> {
    let inv = kubert_formal().invariants();
    let f4 = inv.b4.mul(&inv.b8).sub(&inv.b6.mul(&inv.b6));
    let zero = BiPoly::zero("b", "c");
    recurrence(
        n,
        inv.b8.clone(),
        f4,
        zero.clone(),
        zero.constant_like(1),
        &inv.b6,
        |a, b| a.mul(b),
        |a, b| a.sub(b),
    )
}

fn relation_cache() -> &'static [OnceLock<BiPoly>; 14] {
    static CACHE: OnceLock<[OnceLock<BiPoly>; 14]> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `F_N(b, c)`: the relation saying `(0,0)` has exact order `N` on the
/// Kubert curve. Powers of `b` and the relations for proper divisors are
/// divided out; the result is primitive with positive grlex leading
/// coefficient (`b > c`).
pub fn primitive_order_relation(n: u32) -> Result<BiPoly> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::Unsupported(format!(
            "order relations are available for {MIN_ORDER} <= N <= {MAX_ORDER}, got {n}"
        )));
    }
    if let Some(f) = relation_cache()[n as usize].get() {
        return Ok(f.clone());
    }
    let mut g = division_values_at_origin(n as usize).pop().unwrap();
    let b = var_b();
    while let Some(q) = g.div_exact(&b) {
        g = q;
    }
    for d in MIN_ORDER..n {
        if n % d == 0 {
            let fd = primitive_order_relation(d)?;
            while let Some(q) = g.div_exact(&fd) {
                g = q;
            }
        }
    }
    let g = g.primitive();
    Ok(relation_cache()[n as usize].get_or_init(|| g).clone())
}

/// Numerator `c4^3` and denominator `Delta` of `j(b, c)`.
pub fn j_kubert_formal() -> (BiPoly, BiPoly) {
    let inv = kubert_formal().invariants();
    (inv.c4.pow(3), inv.disc)
}

/// `j = c4^3 / Delta` of the Kubert curve at scalar `(b, c)`.
pub fn j_kubert<C: FieldCoeff>(b: &C, c: &C) -> Result<C> {
    let inv = CurveModel::kubert(b, c).invariants();
    if inv.disc.is_nil() {
        return domain("singular Kubert curve: discriminant vanishes");
    }
    Ok(inv.c4.pow(3).divide(&inv.disc).unwrap())
}

/// The displayed closed form of `j(b, c)`, numerator and denominator.
pub fn j_kubert_display() -> (BiPoly, BiPoly) {
    let (b, c) = (var_b(), var_c());
    let one = b.constant_like(1);
    let k = |n: i64| b.constant_like(n);
    let u = one.sub(&c);
    let s = u.pow(2).sub(&k(4).mul(&b));
    let num = s.pow(2).add(&k(24).mul(&b).mul(&u)).pow(3);
    let den = b.pow(3).mul(
        &s.pow(2)
            .add(&k(8).mul(&u.pow(3)))
            .sub(&k(27).mul(&b))
            .sub(&k(9).mul(&u).mul(&s)),
    );
    (num, den)
}

fn hesse_polys() -> (QPoly, QPoly) {
    let q = |v: &[i64]| QPoly::from_coeffs(v.iter().map(|&x| BigRational::from_integer(x.into())).collect());
    let num = q(&[0, 0, 0, -10077696, 0, 0, 139968, 0, 0, -648, 0, 0, 1]);
    let den = q(&[-19683, 0, 0, -2187, 0, 0, -81, 0, 0, -1]);
    (num, den)
}

/// j-invariant of the Hesse cubic `X^3 + Y^3 + Z^3 + lambda XYZ = 0`.
pub fn hesse_j(lambda: &BigRational) -> Result<BigRational> {
    let (num, den) = hesse_polys();
    let d = den.eval(lambda);
    if d.is_zero() {
        return domain(format!("lambda = {lambda} is a pole of the Hesse j-function"));
    }
    Ok(num.eval(lambda) / d)
}

/// Degrees of the irreducible factors of the Hesse `lambda`-fibre over `j`.
pub fn hesse_fiber_degrees(j: &BigRational) -> Vec<usize> {
    let (num, den) = hesse_polys();
    let g = num.sub(&den.scale(j)).to_primitive_z();
    let mut out: Vec<usize> = irreducible_factors_z(&g).iter().map(|f| f.deg()).collect();
    out.sort_unstable();
    out
}

/// Whether `lambda` is a root of the Hesse fibre over `j`.
pub fn hesse_fiber_contains(j: &BigRational, lambda: &BigRational) -> bool {
    let (num, den) = hesse_polys();
    !den.eval(lambda).is_zero() && num.sub(&den.scale(j)).eval(lambda).is_zero()
}

/// The thirteen rational CM j-invariants, ordered by discriminant
/// `-3, -4, -12, -27, -16, -7, -28, -8, -11, -19, -43, -67, -163`.
pub fn cm_j_invariants() -> Vec<BigInt> {
    let p = |e2: u32, e3: u32, rest: i64| -> BigInt {
        BigInt::from(2).pow(e2) * BigInt::from(3).pow(e3) * BigInt::from(rest)
    };
    vec![
        BigInt::zero(),
        BigInt::from(1728),
        p(4, 3, 125),
        -p(15, 1, 125),
        p(3, 3, 1331),
        -p(0, 3, 125),
        p(0, 3, 125 * 4913),
        p(6, 0, 125),
        -p(15, 0, 1),
        -p(15, 3, 1),
        -p(18, 3, 125),
        -p(15, 3, 125 * 1331),
        -p(18, 3, 125 * 12167 * 24389),
    ]
}

/// Degree of `X_1(N) -> X(1)`.
pub fn modular_degree(n: u64) -> u64 {
    let mut num = n * n;
    for (p, _) in crate::exactnum::int::factor_u64(n) {
        num = num / (p * p) * (p * p - 1);
    }
    num / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Fp;
    use crate::nftorsion::weierstrass::Point;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_relations() {
        assert_eq!(primitive_order_relation(4).unwrap().to_string(), "c");
        assert_eq!(primitive_order_relation(5).unwrap().to_string(), "b - c");
        assert_eq!(primitive_order_relation(6).unwrap().to_string(), "c^2 - b + c");
        assert!(matches!(primitive_order_relation(14), Err(Error::Unsupported(_))));
        assert!(matches!(primitive_order_relation(3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn seven_matches_tate_parametrization() {
        // b = d^3 - d^2, c = d^2 - d is the classical X_1(7) family.
        let f7 = primitive_order_relation(7).unwrap();
        for d in -5i64..=5 {
            let d = q(d);
            let b = &d * &d * &d - &d * &d;
            let c = &d * &d - &d;
            assert!(f7.eval(&b, &c).is_zero());
        }
    }

    #[test]
    fn low_division_polynomials() {
        let e = CurveModel { a1: q(1), a2: q(-1), a3: q(0), a4: q(2), a6: q(5) };
        let f = division_polynomials(&e, 4);
        assert_eq!(f[1], UPoly::constant(q(1)));
        // psi_2^2 is the 2-division cubic.
        assert_eq!(UPoly::from_coeffs(e.two_division_cubic()), {
            let inv = e.invariants();
            UPoly::from_coeffs(vec![inv.b6, inv.b4.times(&q(2)), inv.b2, q(4)])
        });
        for (n, f) in f.iter().enumerate().skip(1) {
            let expected = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n - 4) / 2 };
            assert_eq!(f.deg(), expected);
        }
        let f5 = division_polynomial(&e, 5);
        assert_eq!(f5.deg(), 12);
    }

    #[test]
    fn elliptic_net_identity() {
        // psi_{m+n} psi_{m-n} = psi_{m+1} psi_{m-1} psi_n^2 - psi_{n+1} psi_{n-1} psi_m^2,
        // with each psi_k = f_k * psi_2^e and psi_2^2 the 2-division cubic.
        let p = 10007;
        let e = CurveModel { a1: Fp::new(3, p), a2: Fp::new(-1, p), a3: Fp::new(7, p), a4: Fp::new(2, p), a6: Fp::new(5, p) };
        let f = division_polynomials(&e, 14);
        let two = UPoly::from_coeffs(e.two_division_cubic());
        let prod = |ks: &[usize]| {
            let mut acc = UPoly::constant(Fp::new(1, p));
            let mut exp = 0;
            for &k in ks {
                acc = acc.mul(&f[k]);
                exp += (k % 2 == 0) as u32;
            }
            (acc, exp)
        };
        // Every product below has an even number of even indices.
        let lift = |(g, exp): (UPoly<Fp>, u32)| g.mul(&two.pow(exp / 2));
        for m in 2..=7 {
            for n in 1..m {
                let lhs = prod(&[m + n, m - n]);
                let r1 = prod(&[m + 1, m - 1, n, n]);
                let r2 = prod(&[n + 1, n - 1, m, m]);
                assert_eq!(lift(lhs), lift(r1).sub(&lift(r2)), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn division_values_match_group_law() {
        let vals = division_values_at_origin(13);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 50 {
            let p = if tested % 2 == 0 { 11 } else { 13 };
            let (b, c) = (Fp::new(rng.gen_range(1..p as i64), p), Fp::new(rng.gen_range(0..p as i64), p));
            let e = CurveModel::kubert(&b, &c);
            if e.discriminant().is_nil() {
                continue;
            }
            tested += 1;
            let origin = Point::Affine(Fp::new(0, p), Fp::new(0, p));
            for n in 1..=13usize {
                let by_law = e.mul(&origin, n as u64).is_infinity();
                let by_poly = vals[n].eval(&b, &c).is_nil();
                assert_eq!(by_law, by_poly, "p={p} b={} c={} n={n}", b.v, c.v);
            }
        }
    }

    #[test]
    fn j_forms_agree() {
        let (n1, d1) = j_kubert_formal();
        let (n2, d2) = j_kubert_display();
        assert_eq!(n1, n2);
        assert_eq!(n1.mul(&d2), n2.mul(&d1));
        assert_eq!(d1, d2);
        // On X_1(4), c = 0 and c4 = 16b^2 + 16b + 1.
        let b = var_b();
        let j4 = n1.substitute(1, &BiPoly::zero("b", "c"));
        let c4 = b.pow(2).scale(&16.into()).add(&b.scale(&16.into())).add(&b.constant_like(1));
        assert_eq!(j4, c4.pow(3));
        assert!(j_kubert(&q(0), &q(1)).is_err());
    }

    proptest! {
        #[test]
        fn j_at_rational_points(b in 1i64..40, c in -20i64..20) {
            let (n, d) = j_kubert_display();
            let (bq, cq) = (q(b), q(c));
            let den = d.eval(&bq, &cq);
            prop_assume!(!den.is_zero());
            prop_assert_eq!(j_kubert(&bq, &cq).unwrap(), n.eval(&bq, &cq) / den);
        }
    }

    #[test]
    fn hesse() {
        assert_eq!(hesse_j(&q(0)).unwrap(), q(0));
        assert!(hesse_j(&q(-3)).is_err());
        // -lambda^3 (lambda^3 - 216)^3 / (lambda^3 + 27)^3 at lambda = 1.
        assert_eq!(hesse_j(&q(1)).unwrap(), BigRational::new(9938375.into(), 21952.into()));
        let (num, den) = hesse_polys();
        assert_eq!((num.deg(), den.deg()), (12, 9));
        assert!(hesse_fiber_contains(&q(0), &q(0)));
        assert_eq!(hesse_fiber_degrees(&q(0)), vec![1, 1, 2]);
    }

    #[test]
    fn cm_list() {
        let js = cm_j_invariants();
        assert_eq!(js.len(), 13);
        assert_eq!(js[0], BigInt::zero());
        assert_eq!(js[2], BigInt::from(54000));
        assert_eq!(js[9], BigInt::from(-884736));
        // A CM curve is supersingular at primes inert in its CM field.
        let discs = [-3i64, -4, -12, -27, -16, -7, -28, -8, -11, -19, -43, -67, -163];
        for (j, d) in js.iter().zip(discs) {
            let mut inert_seen = 0;
            for p in crate::exactnum::int::primes_up_to(400).into_iter().filter(|&p| p > 3) {
                let jp = Fp::from_big(j, p);
                let e = if jp.v == 0 {
                    CurveModel { a1: Fp::new(0, p), a2: Fp::new(0, p), a3: Fp::new(0, p), a4: Fp::new(0, p), a6: Fp::new(1, p) }
                } else if jp.v == 1728 % p {
                    CurveModel { a1: Fp::new(0, p), a2: Fp::new(0, p), a3: Fp::new(0, p), a4: Fp::new(1, p), a6: Fp::new(0, p) }
                } else {
                    let k = jp.times(&jp.minus(&Fp::new(1728, p)));
                    CurveModel { a1: Fp::new(0, p), a2: Fp::new(0, p), a3: Fp::new(0, p), a4: k.times(&Fp::new(-3, p)), a6: k.times(&k).times(&Fp::new(2, p)).divide(&jp).unwrap() }
                };
                if e.discriminant().is_nil() {
                    continue;
                }
                let dp = Fp::new(d, p);
                if dp.v == 0 || dp.pow(((p - 1) / 2) as u32).is_unity() {
                    continue;
                }
                inert_seen += 1;
                let mut count = 1;
                for x in 0..p as i64 {
                    let rhs = e.equation_at(&Fp::new(x, p), &Fp::new(0, p)).negate();
                    count += if rhs.is_nil() { 1 } else if rhs.pow(((p - 1) / 2) as u32).is_unity() { 2 } else { 0 };
                }
                assert_eq!(count, p + 1, "j={j} p={p}");
            }
            assert!(inert_seen > 10);
        }
    }

    #[test]
    fn modular_degrees() {
        assert_eq!(modular_degree(4), 6);
        assert_eq!(modular_degree(7), 24);
        assert_eq!(modular_degree(9), 36);
        assert_eq!(modular_degree(13), 84);
        assert_eq!(modular_degree(12), 48);
    }
}
