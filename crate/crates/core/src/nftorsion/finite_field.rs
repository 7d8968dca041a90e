//! Finite fields `F_q`, `q = p^k <= 10^4`, with log/exp tables, and point
//! counting on elliptic curves over them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::weierstrass::CurveModel;
use crate::error::{domain, Error, Result};
use crate::exactnum::int::prime_power;
use crate::exactnum::zmod::{ModPoly, PrimeField};
use crate::exactnum::{Coeff, FieldCoeff, NFElement};

pub const MAX_FIELD_SIZE: u64 = 10_000;

/// `F_p[x]/(g)` for a monic irreducible `g`. Elements are encoded as the
/// base-`p` integer of their coefficient vector.
pub struct GfField {
    p: u32,
    k: u32,
    q: u32,
    modulus: ModPoly,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

impl GfField {
    /// `F_q` with the first monic irreducible modulus in lexicographic order.
    pub fn new(q: u64) -> Result<Arc<Self>> {
        let (p, k) = prime_power(q)?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::Unsupported(format!("field size {q} exceeds {MAX_FIELD_SIZE}")));
        }
        let fp = PrimeField::new(p);
        for tail in 0..q {
            let mut g = digits(tail, p, k as usize);
            g.push(1);
            if fp.factor_degrees(&g) == [k as usize] {
                return Self::from_modulus(p, &g);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Residue field `F_p[x]/(g)`; `g` must be monic and irreducible mod `p`.
    pub fn from_modulus(p: u64, g: &[u64]) -> Result<Arc<Self>> {
        let fp = PrimeField::new(p);
        let k = g.len().saturating_sub(1);
        if k == 0 || g[k] != 1 || fp.factor_degrees(g) != [k] {
            return domain("residue field modulus must be monic irreducible");
        }
        let q = p.checked_pow(k as u32).filter(|&q| q <= MAX_FIELD_SIZE);
        let Some(q) = q else {
            return Err(Error::Unsupported(format!("residue field {p}^{k} exceeds {MAX_FIELD_SIZE}")));
        };
        let encode = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32;
        let mut field = GfField {
            p: p as u32,
            k: k as u32,
            q: q as u32,
            modulus: g.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        for cand in 1..q {
            let gen = digits(cand, p, k);
            let mut table = Vec::with_capacity(order as usize);
            let mut cur = vec![1u64];
            let mut ok = true;
            for i in 0..order {
                let enc = encode(&pad(&cur, k));
                if i > 0 && enc == 1 {
                    ok = false;
                    break;
                }
                table.push(enc);
                cur = fp.rem(&fp.poly_mul(&cur, &gen), g);
            }
            if ok {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in table.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                field.exp = table;
                field.log = log;
                return Ok(Arc::new(field));
            }
        }
        unreachable!("the multiplicative group is cyclic")
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.q as u64
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = Gf> + '_ {
        (0..self.q).map(move |v| Gf { field: self.clone(), v })
    }

    pub fn element(self: &Arc<Self>, v: u32) -> Gf {
        assert!(v < self.q);
        Gf { field: self.clone(), v }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Gf {
        self.element(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x`.
    pub fn generator(self: &Arc<Self>) -> Gf {
        let fp = PrimeField::new(self.p as u64);
        let x = fp.rem(&[0, 1], &self.modulus);
        let k = self.k as usize;
        let v = pad(&x, k).iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d);
        self.element(v as u32)
    }

    pub fn from_rational(self: &Arc<Self>, q: &BigRational) -> Option<Gf> {
        let p = BigInt::from(self.p);
        let red = |n: &BigInt| n.mod_floor_u32(&p);
        let d = red(q.denom());
        if d == 0 {
            return None;
        }
        let n = self.element(red(q.numer()));
        n.divide(&self.element(d))
    }

    /// Image of a number-field element, sending the field generator to `x`;
    /// `None` if a denominator vanishes.
    pub fn reduce(self: &Arc<Self>, a: &NFElement) -> Option<Gf> {
        let x = self.generator();
        let mut acc = self.element(0);
        for c in a.rep().coeffs().iter().rev() {
            acc = acc.times(&x).plus(&self.from_rational(c)?);
        }
        Some(acc)
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg_raw(&self, a: u32) -> u32 {
        let p = self.p;
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }
}

trait ModFloorU32 {
    fn mod_floor_u32(&self, m: &BigInt) -> u32;
}

impl ModFloorU32 for BigInt {
    fn mod_floor_u32(&self, m: &BigInt) -> u32 {
        use num_integer::Integer;
        self.mod_floor(m).to_u32().expect("residue fits")
    }
}

fn digits(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(n % p);
        n /= p;
    }
    out
}

fn pad(v: &[u64], k: usize) -> Vec<u64> {
    let mut out = v.to_vec();
    out.resize(k, 0);
    out
}

#[derive(Clone)]
pub struct Gf {
    field: Arc<GfField>,
    v: u32,
}

impl Gf {
    pub fn value(&self) -> u32 {
        self.v
    }

    pub fn field(&self) -> &Arc<GfField> {
        &self.field
    }

    /// `+1`, `-1` or `0` according as `self` is a nonzero square, a
    /// non-square or zero. Odd characteristic only.
    pub fn quadratic_character(&self) -> i32 {
        if self.v == 0 {
            0
        } else if self.field.log[self.v as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Absolute trace to the prime field, as an integer in `0..p`.
    pub fn absolute_trace(&self) -> u32 {
        let mut acc = self.zero_like();
        let mut cur = self.clone();
        for _ in 0..self.field.k {
            acc = acc.plus(&cur);
            cur = cur.pow(self.field.p);
        }
        acc.v
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && (Arc::ptr_eq(&self.field, &other.field) || self.field.modulus == other.field.modulus)
    }
}

impl Coeff for Gf {
    fn is_nil(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        self.field.element(0)
    }
    fn one_like(&self) -> Self {
        self.field.element(1)
    }
    fn plus(&self, o: &Self) -> Self {
        self.field.element(self.field.add_raw(self.v, o.v))
    }
    fn minus(&self, o: &Self) -> Self {
        self.field.element(self.field.add_raw(self.v, self.field.neg_raw(o.v)))
    }
    fn times(&self, o: &Self) -> Self {
        self.field.element(self.field.mul_raw(self.v, o.v))
    }
    fn negate(&self) -> Self {
        self.field.element(self.field.neg_raw(self.v))
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        let p = BigInt::from(self.field.p);
        self.field.element(n.mod_floor_u32(&p))
    }
}

impl FieldCoeff for Gf {
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let n = self.field.q - 1;
        let l = self.field.log[self.v as usize];
        Some(self.field.element(self.field.exp[((n - l) % n) as usize]))
    }
}

/// A nonsingular long Weierstrass model over `F_q`.
#[derive(Clone, Debug)]
pub struct FiniteFieldCurve {
    pub field: Arc<GfField>,
    pub model: CurveModel<Gf>,
}

impl FiniteFieldCurve {
    pub fn new(field: &Arc<GfField>, model: CurveModel<Gf>) -> Result<Self> {
        if model.discriminant().is_nil() {
            return domain("singular model over a finite field");
        }
        Ok(FiniteFieldCurve {
            field: field.clone(),
            model,
        })
    }

    pub fn from_ints(q: u64, a: [i64; 5]) -> Result<Self> {
        let field = GfField::new(q)?;
        let c = |n: i64| field.from_int(n);
        let model = CurveModel {
            a1: c(a[0]),
            a2: c(a[1]),
            a3: c(a[2]),
            a4: c(a[3]),
            a6: c(a[4]),
        };
        Self::new(&field, model)
    }

    /// `#E(F_q)`, by solving the quadratic in `y` over every abscissa.
    pub fn count_points(&self) -> u64 {
        let e = &self.model;
        let two = self.field.characteristic() == 2;
        let mut count = 1u64;
        for x in self.field.elements() {
            let s = e.a1.times(&x).plus(&e.a3);
            let t = x.times(&x).times(&x).plus(&e.a2.times(&x).times(&x)).plus(&e.a4.times(&x)).plus(&e.a6);
            if two {
                if s.is_nil() {
                    count += 1;
                } else {
                    // y = s z turns the equation into z^2 + z = t / s^2.
                    let u = t.divide(&s.times(&s)).unwrap();
                    if u.absolute_trace() == 0 {
                        count += 2;
                    }
                }
            } else {
                let d = s.times(&s).plus(&t.from_i64_like(4).times(&t));
                count += (1 + d.quadratic_character()) as u64;
            }
        }
        count
    }

    /// `q + 1 - #E(F_q)`.
    pub fn trace(&self) -> i64 {
        self.field.size() as i64 + 1 - self.count_points() as i64
    }
}
