//! Closed-form torsion bounds: Weil caps, the component-group exponent
//! `m_p(D)`, the local bound at a place, global collation bounds and the
//! comparison bounds for CM curves.

pub mod logs;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::exactnum::int::{euler_phi, factor_u64, is_prime, isqrt, isqrt_u64, prime_power, valuation};

/// `(1 + sqrt(q))^(2d) = a + b sqrt(q)` with `b = 0` when `q` is a square.
fn expand(q: u64, d: u32) -> (BigInt, BigInt) {
    let s = isqrt_u64(q);
    if s * s == q {
        return (BigInt::from(1 + s).pow(2 * d), BigInt::zero());
    }
    let qb = BigInt::from(q);
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    for _ in 0..2 * d {
        let na = &a + &b * &qb;
        let nb = &a + &b;
        a = na;
        b = nb;
    }
    (a, b)
}

/// Exact floor of `(1 + sqrt(q))^(2d)` for any positive `q`.
pub fn floor_one_plus_sqrt_pow(q: u64, d: u32) -> BigInt {
    let (a, b) = expand(q, d);
    a + isqrt(&(&b * &b * BigInt::from(q))).unwrap()
}

/// `[(1 + sqrt(q))^(2d)]` for a prime power `q`.
pub fn weil_cap(q: u64, d: u32) -> Result<BigInt> {
    prime_power(q)?;
    if d == 0 {
        return domain("dimension must be positive");
    }
    Ok(floor_one_plus_sqrt_pow(q, d))
}

/// Largest power of `p` not exceeding `(1 + sqrt(q))^(2d)`. An integer lies
/// below a real number exactly when it lies below its floor.
pub fn p_power_floor(q: u64, d: u32, p: u64) -> Result<BigInt> {
    let (base, _) = prime_power(q)?;
    if base != p {
        return domain(format!("{q} is not a power of {p}"));
    }
    let cap = weil_cap(q, d)?;
    let pb = BigInt::from(p);
    let mut r = BigInt::one();
    while &r * &pb <= cap {
        r *= &pb;
    }
    Ok(r)
}

/// `#GL_D(Z/NZ)`.
pub fn gl_order(dim: u32, n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for (l, k) in factor_u64(n) {
        let lb = BigInt::from(l);
        let ld = lb.pow(dim);
        acc *= lb.pow((k - 1) * dim * dim);
        for i in 0..dim {
            acc *= &ld - lb.pow(i);
        }
    }
    acc
}

/// `m_p(D)` by the reduction to prime-power moduli.
pub fn m_p(p: u64, dim: u32) -> u32 {
    let cap = 200u64.max(4 * (dim as u64).pow(2) + 1);
    let mut best = u32::MAX;
    if p != 2 {
        best = valuation(&gl_order(dim, 4), p);
    }
    for l in 3..=cap {
        if l != p && is_prime(l) {
            best = best.min(valuation(&gl_order(dim, l), p));
            if best == 0 {
                break;
            }
        }
    }
    best
}

/// `m_p(D)` by direct search over every `3 <= N <= limit` prime to `p`.
pub fn m_p_brute_force(p: u64, dim: u32, limit: u64) -> u32 {
    (3..=limit)
        .filter(|n| n % p != 0)
        .map(|n| valuation(&gl_order(dim, n), p))
        .min()
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalContext {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub d: u32,
}

impl LocalContext {
    pub fn new(p: u64, f: u32, e: u32, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if f == 0 || e == 0 || d == 0 {
            return domain("f, e and d must be positive");
        }
        if (f as f64) * (p as f64).log2() > 62.0 {
            return domain("residue field too large");
        }
        Ok(LocalContext { p, f, e, d })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub ctx: LocalContext,
    /// Bound on torsion prime to `p`.
    pub prime_to_p_bound: BigInt,
    /// `p^(f d [e/(p-1)])`.
    pub formal_group_factor: BigInt,
    /// `p^(2d m_p(2d))`.
    pub component_factor: BigInt,
    /// `[(1+sqrt q)^(2d)]_p`.
    pub special_fiber_factor: BigInt,
    pub total_bound: BigInt,
    pub additive_prime_support: BTreeSet<u64>,
}

pub fn local_bound(ctx: LocalContext) -> Result<BoundReport> {
    let q = ctx.q();
    let prime_to_p_bound = weil_cap(q, ctx.d)?;
    let pb = BigInt::from(ctx.p);
    let formal_exp = ctx.f * ctx.d * (ctx.e / (ctx.p as u32 - 1).max(1));
    let formal_group_factor = pb.pow(formal_exp);
    let component_factor = pb.pow(2 * ctx.d * m_p(ctx.p, 2 * ctx.d));
    let special_fiber_factor = p_power_floor(q, ctx.d, ctx.p)?;
    let total_bound = &prime_to_p_bound * &formal_group_factor * &component_factor * &special_fiber_factor;
    Ok(BoundReport {
        ctx,
        prime_to_p_bound,
        formal_group_factor,
        component_factor,
        special_fiber_factor,
        total_bound,
        additive_prime_support: additive_prime_support(ctx.d),
    })
}

/// Primes `l <= 2d + 1`.
pub fn additive_prime_support(d: u32) -> BTreeSet<u64> {
    (2..=2 * d as u64 + 1).filter(|&l| is_prime(l)).collect()
}

/// `[(1 + 2^(n/2))^(2d)] [(1 + 3^(n/2))^(2d)]`.
pub fn global_collation_bound(d: u32, n: u32) -> Result<BigInt> {
    let two = 2u64.checked_pow(n);
    let three = 3u64.checked_pow(n);
    match (two, three) {
        (Some(a), Some(b)) => Ok(weil_cap(a, d)? * weil_cap(b, d)?),
        _ => domain("degree too large"),
    }
}

/// Largest prime at most `[(1 + 2^(n/2))^(2d)]`.
pub fn largest_torsion_prime(d: u32, n: u32) -> Result<u64> {
    let q = match 2u64.checked_pow(n) {
        Some(q) => q,
        None => return domain("degree too large"),
    };
    let cap = weil_cap(q, d)?
        .to_u64()
        .ok_or_else(|| crate::error::Error::Domain("bound too large".into()))?;
    Ok((2..=cap).rev().find(|&l| is_prime(l)).unwrap())
}

/// Leading digits of
/// `[(1 + 2^(#GL_2d(Z/3) n / 2)) (1 + 3^(#GL_2d(Z/4) n / 2))]^(2d)`.
pub fn silverberg_bound_log10(d: u32, n: u32) -> Result<logs::Scientific> {
    if d == 0 || n == 0 {
        return domain("d and n must be positive");
    }
    let h2 = gl_order(2 * d, 3) * n;
    let h3 = gl_order(2 * d, 4) * n;
    let sum = logs::log10_one_plus_half_power(2, &h2) + logs::log10_one_plus_half_power(3, &h3);
    let l = sum * (2 * d);
    let mult_bits = (h2.bits() + h3.bits() + 8) as u64;
    // The floor of the product moves log10 by less than 10^-(digits) here.
    logs::certify_scientific(&l, &logs::error_bound(mult_bits), 5)
}

/// Largest `e` with `phi(e) <= delta * muO * n`, where `delta` is 1/2 when
/// the field contains the CM field.
pub fn cm_exponent_bound(n: u32, mu_o: u32, contains_cm_field: bool) -> Result<u64> {
    if ![2, 4, 6].contains(&mu_o) || n == 0 {
        return domain("mu(O) must be 2, 4 or 6 and n positive");
    }
    let bound = mu_o as u64 * n as u64 / if contains_cm_field { 2 } else { 1 };
    // phi(e) >= sqrt(e/2) caps the search.
    let limit = 2 * bound * bound + 2;
    Ok((1..=limit).filter(|&e| euler_phi(e) <= bound).max().unwrap())
}

/// Largest prime `l` with `phi(l) = l - 1` inside the same bound.
pub fn cm_prime_bound(n: u32, mu_o: u32, contains_cm_field: bool) -> Result<u64> {
    cm_exponent_bound(n, mu_o, contains_cm_field)?;
    let bound = mu_o as u64 * n as u64 / if contains_cm_field { 2 } else { 1 };
    Ok((2..=bound + 1).rev().find(|&l| is_prime(l)).unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn weil_caps() {
        assert_eq!(weil_cap(2, 1).unwrap(), b(5));
        assert_eq!(weil_cap(3, 2).unwrap(), b(55));
        assert_eq!(weil_cap(4, 1).unwrap(), b(9));
        assert_eq!(weil_cap(13, 1).unwrap(), b(21));
        assert!(weil_cap(6, 1).is_err());
        assert_eq!(p_power_floor(2, 1, 2).unwrap(), b(4));
        assert_eq!(p_power_floor(7, 1, 7).unwrap(), b(7));
        assert_eq!(p_power_floor(2, 2, 2).unwrap(), b(32));
    }

    /// Counts invertible matrices over `Z/N` by enumeration.
    fn brute_gl(dim: usize, n: u64) -> u64 {
        let entries = dim * dim;
        let total = n.pow(entries as u32);
        let mut count = 0;
        for code in 0..total {
            let mut m = vec![0i64; entries];
            let mut c = code;
            for e in m.iter_mut() {
                *e = (c % n) as i64;
                c /= n;
            }
            let det = match dim {
                1 => m[0],
                2 => m[0] * m[3] - m[1] * m[2],
                _ => unreachable!(),
            };
            if num_integer::Integer::gcd(&det.rem_euclid(n as i64), &(n as i64)) == 1 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 3), b(48));
        assert_eq!(gl_order(2, 4), b(96));
        assert_eq!(gl_order(1, 12), b(4));
        for n in 2..=8 {
            assert_eq!(gl_order(2, n), BigInt::from(brute_gl(2, n)), "N = {n}");
            assert_eq!(gl_order(1, n), BigInt::from(brute_gl(1, n)));
        }
        for d in 1..=3 {
            for m in 2..=20u64 {
                for n in 2..=20u64 {
                    if num_integer::Integer::gcd(&m, &n) == 1 {
                        assert_eq!(gl_order(d, m * n), gl_order(d, m) * gl_order(d, n));
                    }
                }
            }
        }
    }

    #[test]
    fn m_p_examples() {
        assert_eq!(m_p(7, 2), 0);
        assert_eq!(m_p(2, 2), 4);
        assert_eq!(m_p(3, 2), 1);
    }

    #[test]
    fn local_bound_examples() {
        let r = local_bound(LocalContext::new(7, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(r.total_bound, b(91));
        let r = local_bound(LocalContext::new(2, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(r.total_bound, b(10240));
        let r = local_bound(LocalContext::new(13, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(r.total_bound, b(21 * 13));
        assert_eq!(r.formal_group_factor * r.component_factor, b(1));
        assert_eq!(
            additive_prime_support(2).into_iter().collect::<Vec<_>>(),
            vec![2, 3, 5]
        );
    }

    #[test]
    fn global_bounds() {
        assert_eq!(global_collation_bound(2, 1).unwrap(), b(1815));
        assert_eq!(global_collation_bound(1, 1).unwrap(), b(35));
        assert_eq!(weil_cap(8, 1).unwrap(), b(14));
        assert_eq!(largest_torsion_prime(1, 5).unwrap(), 43);
    }

    #[test]
    fn silverberg_examples() {
        let s = silverberg_bound_log10(2, 1).unwrap();
        assert_eq!(s.exponent, 1275357349);
        assert_eq!(s.digits, 40262);
        // Exponent grows linearly in n.
        let e1 = silverberg_bound_log10(1, 1).unwrap().exponent;
        let e2 = silverberg_bound_log10(1, 2).unwrap().exponent;
        let e4 = silverberg_bound_log10(1, 4).unwrap().exponent;
        assert!((e4 - e2 - 2 * (e2 - e1)).abs() <= 2);
    }

    #[test]
    fn cm_bounds() {
        assert_eq!(cm_exponent_bound(1, 6, false).unwrap(), 18);
        assert_eq!(cm_exponent_bound(1, 2, true).unwrap(), 2);
        assert_eq!(cm_exponent_bound(5, 6, false).unwrap(), 90);
        assert_eq!(cm_prime_bound(5, 6, false).unwrap(), 31);
    }

    proptest! {
        #[test]
        fn weil_cap_brackets(q in 2u64..5000, d in 1u32..5) {
            let (a, bb) = expand(q, d);
            let r = floor_one_plus_sqrt_pow(q, d);
            let t = &r - &a;
            let rhs = &bb * &bb * BigInt::from(q);
            prop_assert!(&t * &t <= rhs);
            let t1: BigInt = &t + 1;
            prop_assert!(&t1 * &t1 > rhs);
        }
    }
}
