//! Dense univariate polynomials over any [`Coeff`] domain.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{Coeff, FieldCoeff};

/// Coefficients stored low degree first with no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

pub type ZPoly = UPoly<BigInt>;
pub type QPoly = UPoly<BigRational>;

impl<C: Coeff> UPoly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_nil()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_nil() {
            return Self::zero();
        }
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        UPoly { coeffs: v }
    }

    /// `x - r`.
    pub fn linear_root(r: &C) -> Self {
        Self::from_coeffs(vec![r.negate(), r.one_like()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a = a.plus(b);
        }
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![self.coeffs[0].zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        match acc {
            Some(a) => a,
            None => match self.coeffs.first() {
                Some(c) => Self::constant(c.one_like()),
                None => Self::zero(),
            },
        }
    }

    /// Horner evaluation at a point of the same domain.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Evaluation at a point of another domain, mapping coefficients first.
    pub fn eval_with<D: Coeff>(&self, x: &D, embed: impl Fn(&C) -> D) -> D {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(&embed(c));
        }
        acc
    }

    /// Substitution `x -> g(x)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&c.from_int_like(&BigInt::from(i))))
                .collect(),
        )
    }
}

impl<C: FieldCoeff> UPoly<C> {
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lc().expect("division by zero polynomial");
        let inv = dl.inv().expect("leading coefficient invertible");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let zero = dl.zero_like();
        let mut q = vec![zero.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].times(&inv);
            if c.is_nil() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].minus(&c.times(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = |p: &Self| -> Self {
            p.coeffs
                .first()
                .map(|c| Self::constant(c.one_like()))
                .unwrap_or_else(Self::zero)
        };
        let unit = if self.is_zero() { one(other) } else { one(self) };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (unit.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), unit);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().and_then(|l| l.inv()) {
            Some(i) => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            None => (r0, s0, t0),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Squarefree part `f / gcd(f, f')` (characteristic zero, or when the
    /// derivative does not vanish identically), made monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Sylvester resultant over a field.
    pub fn resultant(&self, other: &Self) -> C {
        let sample = self
            .coeffs
            .first()
            .or(other.coeffs.first())
            .expect("resultant of two zero polynomials")
            .clone();
        if self.is_zero() || other.is_zero() {
            return sample.zero_like();
        }
        let mut acc = sample.one_like();
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return acc.times(&b.coeffs[0].pow(m as u32));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return sample.zero_like();
            }
            if (m * n) % 2 == 1 {
                acc = acc.negate();
            }
            acc = acc.times(&b.lc().unwrap().pow((m - r.deg()) as u32));
            a = b;
            b = r;
        }
    }
}

impl ZPoly {
    pub fn from_i64(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().unwrap().is_negative() {
            g = -g;
        }
        self.map(|c| c / &g)
    }

    pub fn to_q(&self) -> QPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact division in `Z[x]`, `None` when the quotient is not integral.
    pub fn div_exact_z(&self, d: &Self) -> Option<Self> {
        let dl = d.lc()?;
        let dd = d.deg();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < dd {
            return None;
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(dl);
            if !Zero::is_zero(&rem) {
                return None;
            }
            if Zero::is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if r[..dd].iter().any(|c| !Zero::is_zero(c)) {
            return None;
        }
        Some(Self::from_coeffs(q))
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn one_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl QPoly {
    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        Self::from_coeffs(
            v.iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    /// Integer primitive polynomial with the same roots and positive
    /// leading coefficient.
    pub fn to_primitive_z(&self) -> ZPoly {
        let den = super::coeff::common_denominator(self.coeffs.iter());
        ZPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }
}

/// Deterministic total order: degree, then coefficients from the top down.
pub fn cmp_deglex<C: Coeff + Ord>(a: &UPoly<C>, b: &UPoly<C>) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

impl<C: Coeff + fmt::Display> UPoly<C> {
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_nil() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            let body = if body.contains('/') && k > 0 {
                format!("({body})")
            } else {
                body
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<C: Coeff> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

pub fn one_q() -> BigRational {
    BigRational::one()
}
