//! Coefficient domains for the polynomial types.
//!
//! Elements carry whatever context they need (a modulus, a field), so zero
//! and one are produced from an existing element rather than from nothing.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn is_nil(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Image of an integer in the same domain as `self`.
    fn from_int_like(&self, n: &BigInt) -> Self;

    fn is_unity(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_int_like(&BigInt::from(n))
    }
}

pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Option<Self>;

    fn divide(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.times(&i))
    }
}

impl Coeff for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        n.clone()
    }
}

impl Coeff for BigRational {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Residue modulo a prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn from_big(n: &BigInt, p: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(p));
        Fp {
            v: r.try_into().expect("residue fits"),
            p,
        }
    }

    /// Reduction of a rational whose denominator is prime to `p`.
    pub fn from_rational(q: &BigRational, p: u64) -> Option<Self> {
        let d = Fp::from_big(q.denom(), p);
        if d.v == 0 {
            return None;
        }
        Some(Fp::from_big(q.numer(), p).times(&d.inv()?))
    }
}

impl Coeff for Fp {
    fn is_nil(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn plus(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }
    fn minus(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }
    fn times(&self, o: &Self) -> Self {
        Fp {
            v: self.v * o.v % self.p,
            p: self.p,
        }
    }
    fn negate(&self) -> Self {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Fp::from_big(n, self.p)
    }
}

impl FieldCoeff for Fp {
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(Fp {
                v: super::int::inv_mod_u64(self.v, self.p),
                p: self.p,
            })
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn abs_big(n: &BigInt) -> BigInt {
    n.abs()
}
