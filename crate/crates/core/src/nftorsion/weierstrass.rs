//! Long Weierstrass models over any coefficient field and the chord-tangent
//! group law.

use crate::error::{domain, Result};
use crate::exactnum::{Coeff, FieldCoeff};

#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel<C> {
    pub a1: C,
    pub a2: C,
    pub a3: C,
    pub a4: C,
    pub a6: C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<C> {
    pub b2: C,
    pub b4: C,
    pub b6: C,
    pub b8: C,
    pub c4: C,
    pub c6: C,
    pub disc: C,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point<C> {
    Infinity,
    Affine(C, C),
}

impl<C: Coeff> Point<C> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl<C: Coeff> CurveModel<C> {
    /// `y^2 + (1 - c) x y - b y = x^3 - b x^2`.
    pub fn kubert(b: &C, c: &C) -> Self {
        let zero = b.zero_like();
        CurveModel {
            a1: b.one_like().minus(c),
            a2: b.negate(),
            a3: b.negate(),
            a4: zero.clone(),
            a6: zero,
        }
    }

    pub fn invariants(&self) -> Invariants<C> {
        let k = |n: i64| self.a1.from_i64_like(n);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.times(a1).plus(&k(4).times(a2));
        let b4 = k(2).times(a4).plus(&a1.times(a3));
        let b6 = a3.times(a3).plus(&k(4).times(a6));
        let b8 = a1
            .times(a1)
            .times(a6)
            .plus(&k(4).times(a2).times(a6))
            .minus(&a1.times(a3).times(a4))
            .plus(&a2.times(a3).times(a3))
            .minus(&a4.times(a4));
        let c4 = b2.times(&b2).minus(&k(24).times(&b4));
        let c6 = b2
            .times(&b2)
            .times(&b2)
            .negate()
            .plus(&k(36).times(&b2).times(&b4))
            .minus(&k(216).times(&b6));
        let disc = b2
            .times(&b2)
            .times(&b8)
            .negate()
            .minus(&k(8).times(&b4).times(&b4).times(&b4))
            .minus(&k(27).times(&b6).times(&b6))
            .plus(&k(9).times(&b2).times(&b4).times(&b6));
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        }
    }

    pub fn discriminant(&self) -> C {
        self.invariants().disc
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> CurveModel<D> {
        CurveModel {
            a1: f(&self.a1),
            a2: f(&self.a2),
            a3: f(&self.a3),
            a4: f(&self.a4),
            a6: f(&self.a6),
        }
    }

    /// `y^2 + a1 x y + a3 y - (x^3 + a2 x^2 + a4 x + a6)`.
    pub fn equation_at(&self, x: &C, y: &C) -> C {
        let lhs = y.times(y).plus(&self.a1.times(x).times(y)).plus(&self.a3.times(y));
        let rhs = x
            .times(x)
            .times(x)
            .plus(&self.a2.times(x).times(x))
            .plus(&self.a4.times(x))
            .plus(&self.a6);
        lhs.minus(&rhs)
    }

    pub fn contains(&self, pt: &Point<C>) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => self.equation_at(x, y).is_nil(),
        }
    }

    /// The 2-division cubic `4x^3 + b2 x^2 + 2 b4 x + b6`, low degree first.
    pub fn two_division_cubic(&self) -> Vec<C> {
        let inv = self.invariants();
        let k = |n: i64| self.a1.from_i64_like(n);
        vec![inv.b6, k(2).times(&inv.b4), inv.b2, k(4)]
    }
}

impl<C: FieldCoeff> CurveModel<C> {
    pub fn neg(&self, pt: &Point<C>) -> Point<C> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                Point::Affine(x.clone(), y.negate().minus(&self.a1.times(x)).minus(&self.a3))
            }
        }
    }

    /// Group law without membership checks.
    pub fn add_unchecked(&self, p: &Point<C>, q: &Point<C>) -> Point<C> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let k = |n: i64| self.a1.from_i64_like(n);
        let slope;
        if x1 == x2 {
            let ysum = y1.plus(y2).plus(&self.a1.times(x2)).plus(&self.a3);
            if ysum.is_nil() {
                return Point::Infinity;
            }
            // Tangent.
            let num = k(3)
                .times(x1)
                .times(x1)
                .plus(&k(2).times(&self.a2).times(x1))
                .plus(&self.a4)
                .minus(&self.a1.times(y1));
            let den = k(2).times(y1).plus(&self.a1.times(x1)).plus(&self.a3);
            slope = num.divide(&den).expect("nonzero denominator");
        } else {
            slope = y2.minus(y1).divide(&x2.minus(x1)).expect("distinct abscissae");
        }
        let nu = y1.minus(&slope.times(x1));
        let x3 = slope
            .times(&slope)
            .plus(&self.a1.times(&slope))
            .minus(&self.a2)
            .minus(x1)
            .minus(x2);
        let y3 = slope
            .plus(&self.a1)
            .times(&x3)
            .negate()
            .minus(&nu)
            .minus(&self.a3);
        Point::Affine(x3, y3)
    }

    pub fn add(&self, p: &Point<C>, q: &Point<C>) -> Result<Point<C>> {
        if !self.contains(p) || !self.contains(q) {
            return domain("point not on curve");
        }
        Ok(self.add_unchecked(p, q))
    }

    pub fn mul(&self, p: &Point<C>, n: u64) -> Point<C> {
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// Exact order when it is at most `limit`.
    pub fn order(&self, p: &Point<C>, limit: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=limit {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add_unchecked(&acc, p);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Fp;
    use proptest::prelude::*;

    fn fp(v: i64, p: u64) -> Fp {
        Fp::new(v, p)
    }

    fn points(e: &CurveModel<Fp>, p: u64) -> Vec<Point<Fp>> {
        let mut out = vec![Point::Infinity];
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                let pt = Point::Affine(fp(x, p), fp(y, p));
                if e.contains(&pt) {
                    out.push(pt);
                }
            }
        }
        out
    }

    #[test]
    fn kubert_order_five() {
        // b = c = 1 puts (0,0) on X_1(5).
        let e = CurveModel::kubert(&fp(1, 11), &fp(1, 11));
        let p0 = Point::Affine(fp(0, 11), fp(0, 11));
        assert_eq!(e.order(&p0, 20), Some(5));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn associativity(coeffs in proptest::collection::vec(0i64..13, 5), i in 0usize..400, j in 0usize..400, k in 0usize..400) {
            let p = 13;
            let e = CurveModel { a1: fp(coeffs[0], p), a2: fp(coeffs[1], p), a3: fp(coeffs[2], p), a4: fp(coeffs[3], p), a6: fp(coeffs[4], p) };
            prop_assume!(!e.discriminant().is_nil());
            let pts = points(&e, p);
            let (a, b, c) = (&pts[i % pts.len()], &pts[j % pts.len()], &pts[k % pts.len()]);
            let lhs = e.add(&e.add(a, b).unwrap(), c).unwrap();
            let rhs = e.add(a, &e.add(b, c).unwrap()).unwrap();
            prop_assert_eq!(lhs.clone(), rhs);
            prop_assert!(e.contains(&lhs));
            prop_assert!(e.add(a, &e.neg(a)).unwrap().is_infinity());
            prop_assert_eq!(e.add(a, &Point::Infinity).unwrap(), a.clone());
        }
    }
}
