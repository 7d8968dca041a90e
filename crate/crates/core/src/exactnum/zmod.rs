//! Dense polynomials over a prime field `F_p` with `p < 2^32`, stored as
//! plain `u64` vectors (low degree first, trimmed).

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::int::inv_mod_u64;
use super::upoly::ZPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

pub type ModPoly = Vec<u64>;

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 32));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        inv_mod_u64(a, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        super::int::pow_mod(a, e, self.p)
    }

    pub fn reduce_big(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r: i64 = r.try_into().expect("residue fits");
        r.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_zpoly(&self, f: &ZPoly) -> ModPoly {
        let mut v: ModPoly = f.coeffs().iter().map(|c| self.reduce_big(c)).collect();
        trim(&mut v);
        v
    }

    pub fn eval(&self, f: &[u64], x: u64) -> u64 {
        let mut acc = 0;
        for &c in f.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut v: ModPoly = (0..n)
            .map(|i| {
                self.add(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut v: ModPoly = (0..n)
            .map(|i| {
                self.sub(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> ModPoly {
        let mut v: ModPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut v);
        v
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // Accumulate in u128 and reduce once per output coefficient.
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let p = self.p as u128;
        let mut v: ModPoly = acc.into_iter().map(|s| (s % p) as u64).collect();
        trim(&mut v);
        v
    }

    pub fn divrem(&self, a: &[u64], d: &[u64]) -> (ModPoly, ModPoly) {
        assert!(!d.is_empty(), "division by zero polynomial");
        if a.len() < d.len() {
            return (Vec::new(), a.to_vec());
        }
        let dd = d.len() - 1;
        let inv = self.inv(d[dd]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - dd];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + dd], inv);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &dc) in d.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, dc));
            }
        }
        r.truncate(dd);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], d: &[u64]) -> ModPoly {
        self.divrem(a, d).1
    }

    pub fn monic(&self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> ModPoly {
        let mut v: ModPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut v);
        v
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> ModPoly {
        let mut acc = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.poly_mul(&acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.poly_mul(&b, &b), m);
            }
        }
        self.rem(&acc, m)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn ddf(&self, f: &[u64]) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.powmod(&h, self.p, &rest);
            let g = self.gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`
    /// (odd `p` only).
    pub fn edf(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        assert!(self.p % 2 == 1, "equal-degree splitting needs odd p");
        let exp = (num_bigint::BigUint::from(self.p).pow(d as u32) - 1u32) >> 1u32;
        loop {
            let a: ModPoly = {
                let mut v: ModPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut v);
                v
            };
            if a.len() < 2 {
                continue;
            }
            let g = self.gcd(&a, f);
            let g = if g.len() > 1 {
                g
            } else {
                let b = self.powmod_big_exp(&a, &exp, f);
                let b1 = self.poly_sub(&b, &[1]);
                self.gcd(&b1, f)
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    fn powmod_big_exp(&self, base: &[u64], e: &num_bigint::BigUint, m: &[u64]) -> ModPoly {
        let mut acc = vec![1u64];
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.poly_mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.poly_mul(&acc, &b), m);
            }
        }
        acc
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted by degree then coefficients.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial.
    pub fn factor_degrees(&self, f: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            for _ in 0..(g.len() - 1) / d {
                out.push(d);
            }
        }
        out
    }

    /// Distinct roots in `F_p`, ascending.
    pub fn roots(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<u64> {
        if f.len() <= 1 {
            return Vec::new();
        }
        let f = self.monic(f);
        let x = vec![0u64, 1];
        let xp = self.powmod(&x, self.p, &f);
        let g = self.gcd(&f, &self.poly_sub(&xp, &x));
        if g.len() <= 1 {
            return Vec::new();
        }
        let mut roots: Vec<u64> = if self.p == 2 {
            (0..2).filter(|&r| self.eval(&g, r) == 0).collect()
        } else {
            self.edf(&g, 1, rng)
                .into_iter()
                .map(|l| self.neg(l[0]))
                .collect()
        };
        roots.sort_unstable();
        roots
    }
}

pub fn trim(v: &mut ModPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Resultant over `F_p` of polynomials with their actual degrees.
pub fn resultant_mod(fp: &PrimeField, a: &[u64], b: &[u64]) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut acc = 1u64;
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return fp.mul(acc, fp.pow(b[0], m as u64));
        }
        let r = fp.rem(&a, &b);
        if r.is_empty() {
            return 0;
        }
        if (m * n) % 2 == 1 {
            acc = fp.neg(acc);
        }
        acc = fp.mul(acc, fp.pow(*b.last().unwrap(), (m - (r.len() - 1)) as u64));
        a = b;
        b = r;
    }
}
