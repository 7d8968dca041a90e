//! Integer helpers: square roots, primality, small factorizations.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return domain(format!("isqrt of negative value {n}"));
    }
    Ok(BigInt::from_biguint(Sign::Plus, isqrt_unsigned(n.magnitude())))
}

pub fn isqrt_unsigned(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // Newton iteration from an overestimate.
    let bits = n.bits();
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn is_square(n: &BigInt) -> bool {
    match isqrt(n) {
        Ok(r) => &r * &r == *n,
        Err(_) => false,
    }
}

pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Primes in `[2, limit]`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&k| is_prime(k)).collect()
}

/// Trial-division factorization, ascending primes with exponents.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits `q = p^f`, failing when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factor_u64(q).as_slice() {
        [(p, f)] => Ok((*p, *f)),
        _ => domain(format!("{q} is not a prime power")),
    }
}

pub fn is_squarefree(n: u64) -> bool {
    factor_u64(n).iter().all(|&(_, k)| k == 1)
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, k)| (p - 1) * p.pow(k - 1))
        .product()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// Removes every factor `p` from `n`.
pub fn strip_prime(mut n: u64, p: u64) -> u64 {
    while n % p == 0 && n > 0 {
        n /= p;
    }
    n
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Symmetric residue of `a` modulo `m` in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Inverse modulo `m`, when it exists.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// The fraction `n/d` with `n = a d (mod m)` and `|n|, |d| <= sqrt(m/2)`,
/// when one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<num_rational::BigRational> {
    let bound = isqrt_unsigned(&(m / 2u32).magnitude().clone());
    let bound = BigInt::from(bound);
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(num_rational::BigRational::new(r1, t1))
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        for (n, d) in [(3i64, 7i64), (-5, 11), (0, 1), (12345, 678)] {
            let a = BigInt::from(n) * inv_mod(&BigInt::from(d), &m).unwrap();
            let q = rational_reconstruction(&a, &m).unwrap();
            assert_eq!(q, num_rational::BigRational::new(n.into(), d.into()));
        }
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(288)).unwrap(), big(16));
        let n = BigInt::from(10u32).pow(40);
        assert_eq!(isqrt(&n).unwrap(), BigInt::from(10u32).pow(20));
        assert!(isqrt(&big(-1)).is_err());
    }

    #[test]
    fn primality_and_factoring() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(49).unwrap(), (7, 2));
        assert!(prime_power(12).is_err());
        assert_eq!(euler_phi(18), 6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn isqrt_brackets(bytes in proptest::collection::vec(any::<u8>(), 1..=32)) {
            let n = BigInt::from_bytes_be(Sign::Plus, &bytes);
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1;
            prop_assert!(&r1 * &r1 > n);
        }
    }
}
