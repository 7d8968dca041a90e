//! Number fields `Q[t]/(m)` with `m` monic, integral and irreducible.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bipoly::{resultant, BiPoly};
use super::coeff::{common_denominator, Coeff, FieldCoeff};
use super::factor::{factor_squarefree_z, is_irreducible_z};
use super::upoly::{QPoly, UPoly, ZPoly};
use crate::error::{domain, Result};

#[derive(PartialEq, Eq, Debug)]
pub struct NumberField {
    name: String,
    minpoly: ZPoly,
    minpoly_q: QPoly,
}

impl NumberField {
    /// Builds the field after certifying that `minpoly` is monic and
    /// irreducible over `Q`.
    pub fn new(name: &str, minpoly: ZPoly) -> Result<Arc<Self>> {
        if minpoly.is_zero() || minpoly.deg() == 0 {
            return domain("minimal polynomial must have positive degree");
        }
        if !One::is_one(minpoly.lc().unwrap()) {
            return domain(format!("minimal polynomial {} is not monic", minpoly.display_in(name)));
        }
        if !is_irreducible_z(&minpoly) {
            return domain(format!("{} is reducible over Q", minpoly.display_in(name)));
        }
        let minpoly_q = minpoly.to_q();
        Ok(Arc::new(NumberField {
            name: name.to_string(),
            minpoly,
            minpoly_q,
        }))
    }

    /// Field generated by a root of an irreducible rational polynomial that
    /// need not be monic or integral. Returns the field (generated by a
    /// scaled root with integral monic minimal polynomial) and the root.
    pub fn from_irreducible(name: &str, g: &QPoly) -> Result<(Arc<Self>, NFElement)> {
        let h = g.monic();
        let n = h.deg();
        let den = common_denominator(h.coeffs().iter());
        // theta' = den * theta has minimal polynomial den^n h(x / den).
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut pw = BigRational::one();
        for k in (0..=n).rev() {
            coeffs.push(&h.coeffs()[k] * &pw);
            pw *= BigRational::from_integer(den.clone());
        }
        coeffs.reverse();
        let m = UPoly::from_coeffs(coeffs.into_iter().map(|c| c.to_integer()).collect());
        let field = NumberField::new(name, m)?;
        let root = field.gen().scale_q(&BigRational::new(BigInt::one(), den));
        Ok((field, root))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn minpoly(&self) -> &ZPoly {
        &self.minpoly
    }

    /// Discriminant of the minimal polynomial, up to sign.
    pub fn poly_discriminant(&self) -> BigInt {
        let q = self.minpoly_q.resultant(&self.minpoly_q.derivative());
        q.to_integer()
    }

    pub fn gen(self: &Arc<Self>) -> NFElement {
        self.element(&QPoly::from_coeffs(vec![BigRational::zero(), BigRational::one()]))
    }

    pub fn element(self: &Arc<Self>, rep: &QPoly) -> NFElement {
        NFElement {
            field: self.clone(),
            rep: rep.rem(&self.minpoly_q),
        }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> NFElement {
        self.from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn from_rational(self: &Arc<Self>, q: &BigRational) -> NFElement {
        NFElement {
            field: self.clone(),
            rep: QPoly::constant(q.clone()),
        }
    }
}

#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    rep: QPoly,
}

impl NFElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &QPoly {
        &self.rep
    }

    fn with(&self, rep: QPoly) -> Self {
        NFElement {
            field: self.field.clone(),
            rep,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.deg() == 0 && !self.rep.is_zero() && One::is_one(&self.rep.coeffs()[0])
    }

    pub fn scale_q(&self, q: &BigRational) -> Self {
        self.with(self.rep.scale(q))
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.deg() {
            _ if self.rep.is_zero() => Some(BigRational::zero()),
            0 => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// Field norm to `Q`.
    pub fn norm(&self) -> BigRational {
        if self.rep.is_zero() {
            return BigRational::zero();
        }
        self.field.minpoly_q.resultant(&self.rep)
    }

    pub fn cmp_rep(&self, other: &Self) -> Ordering {
        super::upoly::cmp_deglex(&self.rep, &other.rep)
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rep.display_in(&self.field.name);
        if self.rep.coeffs().len() > 1 {
            write!(f, "({s})")
        } else {
            write!(f, "{s}")
        }
    }
}

impl Coeff for NFElement {
    fn is_nil(&self) -> bool {
        self.rep.is_zero()
    }
    fn zero_like(&self) -> Self {
        self.with(QPoly::zero())
    }
    fn one_like(&self) -> Self {
        self.with(QPoly::constant(BigRational::one()))
    }
    fn plus(&self, o: &Self) -> Self {
        self.with(self.rep.add(&o.rep))
    }
    fn minus(&self, o: &Self) -> Self {
        self.with(self.rep.sub(&o.rep))
    }
    fn times(&self, o: &Self) -> Self {
        self.with(self.rep.mul(&o.rep).rem(&self.field.minpoly_q))
    }
    fn negate(&self) -> Self {
        self.with(self.rep.neg())
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        self.with(QPoly::constant(BigRational::from_integer(n.clone())))
    }
}

impl FieldCoeff for NFElement {
    fn inv(&self) -> Option<Self> {
        if self.rep.is_zero() {
            return None;
        }
        let (g, s, _) = self.rep.ext_gcd(&self.field.minpoly_q);
        debug_assert!(g.deg() == 0);
        Some(self.with(s.rem(&self.field.minpoly_q)))
    }
}

pub type NFPoly = UPoly<NFElement>;

/// Lifts a rational polynomial into `K[x]`.
pub fn embed_poly(k: &Arc<NumberField>, f: &QPoly) -> NFPoly {
    NFPoly::from_coeffs(f.coeffs().iter().map(|c| k.from_rational(c)).collect())
}

/// Norm `Res_t(m(t), h(x - s t))` as a primitive integer polynomial in `x`.
fn shifted_norm(k: &Arc<NumberField>, h: &NFPoly, s: i64) -> Result<ZPoly> {
    let den = h
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, &common_denominator(c.rep().coeffs().iter())));
    let t = BiPoly::var("t", "x", 0);
    let x = BiPoly::var("t", "x", 1);
    let shifted = x.sub(&t.scale(&BigInt::from(s)));
    let mut big = BiPoly::zero("t", "x");
    for c in h.coeffs().iter().rev() {
        let cz = c.rep().map(|q| (q * BigRational::from_integer(den.clone())).to_integer());
        big = big.mul(&shifted).add(&t.from_upoly_like(&cz, 0));
    }
    let m = t.from_upoly_like(k.minpoly(), 0);
    resultant(&m, &big, "t")
}

/// Roots of `g` lying in its coefficient field, with multiplicity, in a
/// deterministic order.
pub fn nf_roots(g: &NFPoly) -> Result<Vec<NFElement>> {
    if g.is_zero() {
        return domain("roots of the zero polynomial");
    }
    if g.deg() == 0 {
        return Ok(Vec::new());
    }
    let k = g.lc().unwrap().field().clone();
    let h = g.squarefree_part();
    let mut simple = Vec::new();
    if h.deg() == 1 {
        simple.push(h.coeffs()[0].negate());
    } else {
        let theta = k.gen();
        let mut found = None;
        for s in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7] {
            let norm = shifted_norm(&k, &h, s)?;
            if norm.is_zero() {
                continue;
            }
            if super::factor::gcd_z(&norm, &norm.derivative()).deg() == 0 {
                found = Some((s, norm));
                break;
            }
        }
        let Some((s, norm)) = found else {
            return domain("no separating shift for the norm");
        };
        // Roots a of h give roots a + s*theta of the norm.
        let shift = theta.scale_q(&BigRational::from_integer(s.into()));
        let h_shifted = h.compose(&NFPoly::from_coeffs(vec![shift.negate(), k.from_int(1)]));
        for n_i in factor_squarefree_z(&norm.primitive()) {
            if n_i.deg() > k.degree() || k.degree() % n_i.deg() != 0 {
                continue;
            }
            let gcd = h_shifted.gcd(&embed_poly(&k, &n_i.to_q()));
            if gcd.deg() == 1 {
                simple.push(gcd.coeffs()[0].negate().minus(&shift));
            }
        }
    }
    let mut out = Vec::new();
    for r in simple {
        let lin = NFPoly::linear_root(&r);
        let mut rest = g.clone();
        while let Some(q) = rest.div_exact(&lin) {
            out.push(r.clone());
            rest = q;
        }
    }
    out.sort_by(|a, b| a.cmp_rep(b));
    Ok(out)
}

/// Whether `a` is a square in its field.
pub fn is_square(a: &NFElement) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let x2 = NFPoly::from_coeffs(vec![a.negate(), a.zero_like(), a.one_like()]);
    Ok(!nf_roots(&x2)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::coeff::rat;
    use proptest::prelude::*;

    fn cubic_field() -> Arc<NumberField> {
        NumberField::new("f", ZPoly::from_i64(&[1, 0, -3, 1])).unwrap()
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(NumberField::new("t", ZPoly::from_i64(&[-1, 0, 1])).is_err());
        assert!(NumberField::new("t", ZPoly::from_i64(&[-2, 0, 2])).is_err());
    }

    #[test]
    fn generator_satisfies_minpoly() {
        let k = cubic_field();
        let f = k.gen();
        let m = embed_poly(&k, &k.minpoly().to_q());
        assert!(m.eval(&f).is_zero());
        let inv = f.inv().unwrap();
        assert!(inv.times(&f).is_one());
    }

    #[test]
    fn roots_in_quadratic_field() {
        let k = NumberField::new("t", ZPoly::from_i64(&[-2, 0, 1])).unwrap();
        let t = k.gen();
        let x2m2 = embed_poly(&k, &ZPoly::from_i64(&[-2, 0, 1]).to_q());
        assert_eq!(nf_roots(&x2m2).unwrap(), vec![t.negate(), t.clone()]);
        let x2p1 = embed_poly(&k, &ZPoly::from_i64(&[1, 0, 1]).to_q());
        assert!(nf_roots(&x2p1).unwrap().is_empty());
        // (x - t)^2 (x - 1) has roots t (twice) and 1.
        let lin = NFPoly::linear_root(&t);
        let g = lin.mul(&lin).mul(&NFPoly::linear_root(&k.from_int(1)));
        assert_eq!(nf_roots(&g).unwrap().len(), 3);
    }

    #[test]
    fn non_monic_generator() {
        // 2x^2 - 3 has root sqrt(3/2).
        let g = QPoly::from_ratios(&[(-3, 1), (0, 1), (2, 1)]);
        let (k, r) = NumberField::from_irreducible("u", &g).unwrap();
        assert!(embed_poly(&k, &g).eval(&r).is_zero());
        assert_eq!(r.norm(), rat(-3, 2));
    }

    #[test]
    fn cyclic_cubic_splits_in_itself() {
        // x^3 - 3x^2 + 1 is a cyclic cubic, so it has all three roots in K.
        let k = cubic_field();
        let m = embed_poly(&k, &k.minpoly().to_q());
        assert_eq!(nf_roots(&m).unwrap().len(), 3);
        assert!(is_square(&k.from_int(4)).unwrap());
        assert!(!is_square(&k.from_int(2)).unwrap());
    }

    fn elem() -> impl Strategy<Value = (i64, i64, i64)> {
        (-20i64..=20, -20i64..=20, -20i64..=20)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn ring_axioms(a in elem(), b in elem(), c in elem()) {
            let k = cubic_field();
            let mk = |(x, y, z): (i64, i64, i64)| k.element(&ZPoly::from_i64(&[x, y, z]).to_q());
            let (a, b, c) = (mk(a), mk(b), mk(c));
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            if !a.is_zero() {
                prop_assert!(a.inv().unwrap().times(&a).is_one());
            }
        }
    }
}
