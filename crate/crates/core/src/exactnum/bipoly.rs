//! Sparse polynomials in two named variables over `Z`, and elimination by
//! multimodular resultants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::int::{is_prime, symmetric_mod};
use super::upoly::ZPoly;
use super::zmod::{resultant_mod, trim, ModPoly, PrimeField};
use crate::error::{domain, Result};

/// Exponent pair `(i, j)` for `x^i y^j`, where `x` is the first name.
pub type Exps = (u32, u32);

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    names: [Arc<str>; 2],
    terms: BTreeMap<Exps, BigInt>,
}

impl BiPoly {
    pub fn zero(x: &str, y: &str) -> Self {
        BiPoly {
            names: [Arc::from(x), Arc::from(y)],
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self) -> Self {
        BiPoly {
            names: self.names.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(x: &str, y: &str, terms: impl IntoIterator<Item = (Exps, BigInt)>) -> Self {
        let mut p = BiPoly::zero(x, y);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn constant_like(&self, c: impl Into<BigInt>) -> Self {
        let mut p = self.empty_like();
        p.add_term((0, 0), c.into());
        p
    }

    /// The variable with the given index (0 for `x`, 1 for `y`).
    pub fn var(x: &str, y: &str, idx: usize) -> Self {
        let e = if idx == 0 { (1, 0) } else { (0, 1) };
        BiPoly::from_terms(x, y, [(e, BigInt::one())])
    }

    pub fn names(&self) -> (&str, &str) {
        (&self.names[0], &self.names[1])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| &**n == name)
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if Zero::is_zero(&c) {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if idx == 0 { i } else { j })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if Zero::is_zero(k) {
            return self.empty_like();
        }
        BiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.empty_like();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &o.terms {
                r.add_term((i + k, j + l), c * d);
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = self.constant_like(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Largest term in graded lexicographic order with `x` before `y`.
    pub fn leading_term_grlex(&self) -> Option<(Exps, &BigInt)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(e, c)| (*e, c))
    }

    /// Content removed, sign fixed so the grlex-leading coefficient is
    /// positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_term_grlex().unwrap().1.is_negative() {
            g = -g;
        }
        BiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c / &g)).collect(),
        }
    }

    /// Coefficients with respect to variable `idx`, as polynomials in the
    /// other variable (dense, index = degree in `idx`).
    pub fn coeffs_in(&self, idx: usize) -> Vec<ZPoly> {
        let n = match self.degree_in(idx) {
            Some(n) => n as usize,
            None => return Vec::new(),
        };
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); n + 1];
        for (&(i, j), c) in &self.terms {
            let (outer, inner) = if idx == 0 { (i, j) } else { (j, i) };
            let row = &mut rows[outer as usize];
            if row.len() <= inner as usize {
                row.resize(inner as usize + 1, BigInt::zero());
            }
            row[inner as usize] = c.clone();
        }
        rows.into_iter().map(ZPoly::from_coeffs).collect()
    }

    fn from_coeffs_in(&self, idx: usize, rows: &[ZPoly]) -> Self {
        let mut r = self.empty_like();
        for (outer, row) in rows.iter().enumerate() {
            for (inner, c) in row.coeffs().iter().enumerate() {
                let e = if idx == 0 {
                    (outer as u32, inner as u32)
                } else {
                    (inner as u32, outer as u32)
                };
                r.add_term(e, c.clone());
            }
        }
        r
    }

    /// Embeds a univariate polynomial as a polynomial in variable `idx`.
    pub fn from_upoly_like(&self, f: &ZPoly, idx: usize) -> Self {
        let mut r = self.empty_like();
        for (k, c) in f.coeffs().iter().enumerate() {
            let e = if idx == 0 { (k as u32, 0) } else { (0, k as u32) };
            r.add_term(e, c.clone());
        }
        r
    }

    /// The univariate polynomial when only variable `idx` occurs.
    pub fn to_upoly(&self, idx: usize) -> Option<ZPoly> {
        let other = 1 - idx;
        if self.degree_in(other).unwrap_or(0) > 0 {
            return None;
        }
        Some(self.coeffs_in(idx).into_iter().map(|c| c.coeffs().first().cloned().unwrap_or_default()).collect::<Vec<_>>()).map(ZPoly::from_coeffs)
    }

    /// Exact quotient, or `None` when `d` does not divide `self` in `Z[x,y]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let idx = 0;
        let dd = d.coeffs_in(idx);
        let mut r = self.coeffs_in(idx);
        let n = dd.len() - 1;
        if r.len() < dd.len() {
            // Only possible when the divisor has no x and divides each row.
            if n > 0 {
                return None;
            }
        }
        let lc = &dd[n];
        let mut q = vec![ZPoly::zero(); r.len().saturating_sub(n).max(1)];
        for k in (n..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let t = r[k].div_exact_z(lc)?;
            for (j, dj) in dd.iter().enumerate() {
                r[k - n + j] = r[k - n + j].sub(&t.mul(dj));
            }
            q[k - n] = t;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.from_coeffs_in(idx, &q))
    }

    pub fn eval<C: Coeff>(&self, x: &C, y: &C) -> C {
        let mut acc = x.zero_like();
        for (k, row) in self.coeffs_in(0).iter().enumerate().rev() {
            let v = row.eval_with(y, |c| y.from_int_like(c));
            acc = acc.times(x).plus(&v);
            let _ = k;
        }
        acc
    }

    /// Substitutes variable `idx` by the integer `v`, leaving a polynomial
    /// in the other variable.
    pub fn eval_var(&self, idx: usize, v: &BigInt) -> ZPoly {
        let rows = self.coeffs_in(1 - idx);
        ZPoly::from_coeffs(rows.iter().map(|row| row.eval(v)).collect())
    }

    /// Reduction mod `p` after substituting variable `idx` by `v`.
    pub fn eval_var_mod(&self, fp: &PrimeField, idx: usize, v: u64) -> ModPoly {
        let other = 1 - idx;
        let n = self.degree_in(other).unwrap_or(0) as usize;
        let mut out = vec![0u64; n + 1];
        let pw = PowTable::new(fp, v);
        for (&(i, j), c) in &self.terms {
            let (at, free) = if idx == 0 { (i, j) } else { (j, i) };
            let t = fp.mul(fp.reduce_big(c), pw.get(fp, at));
            out[free as usize] = fp.add(out[free as usize], t);
        }
        trim(&mut out);
        out
    }

    /// Replaces variable `idx` by the polynomial `image`.
    pub fn substitute(&self, idx: usize, image: &Self) -> Self {
        let rows = self.coeffs_in(idx);
        let mut acc = self.empty_like();
        for row in rows.iter().rev() {
            acc = acc.mul(image).add(&self.from_upoly_like(row, 1 - idx));
        }
        acc
    }

    /// Sum of absolute values of the coefficients.
    pub fn one_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn partial_derivative(&self, idx: usize) -> Self {
        let mut r = self.empty_like();
        for (&(i, j), c) in &self.terms {
            let k = if idx == 0 { i } else { j };
            if k > 0 {
                let e = if idx == 0 { (i - 1, j) } else { (i, j - 1) };
                r.add_term(e, c * BigInt::from(k));
            }
        }
        r
    }
}

/// Cached powers of a residue, indexed by exponent.
struct PowTable {
    pows: std::cell::RefCell<Vec<u64>>,
    base: u64,
}

impl PowTable {
    fn new(fp: &PrimeField, base: u64) -> Self {
        PowTable {
            pows: std::cell::RefCell::new(vec![1 % fp.p]),
            base,
        }
    }

    fn get(&self, fp: &PrimeField, e: u32) -> u64 {
        let mut pows = self.pows.borrow_mut();
        while pows.len() <= e as usize {
            let last = *pows.last().unwrap();
            pows.push(fp.mul(last, self.base));
        }
        pows[e as usize]
    }
}

/// Resultant with respect to the named variable. The result is returned as a
/// univariate polynomial in the remaining variable.
pub fn resultant(f: &BiPoly, g: &BiPoly, eliminate: &str) -> Result<ZPoly> {
    let idx = match f.index_of(eliminate) {
        Some(i) => i,
        None => return domain(format!("unknown variable {eliminate}")),
    };
    if f.is_zero() || g.is_zero() {
        return Ok(ZPoly::zero());
    }
    let (m, n) = (f.degree_in(idx).unwrap(), g.degree_in(idx).unwrap());
    if m == 0 && n == 0 {
        return domain(format!("{eliminate} occurs in neither polynomial"));
    }
    let other = 1 - idx;
    let deg_bound = (m * g.degree_in(other).unwrap() + n * f.degree_in(other).unwrap()) as usize;
    // Each entry of the Sylvester matrix is bounded in one-norm; the
    // permanent is at most the product of row sums.
    let bound = f.one_norm().pow(n) * g.one_norm().pow(m);
    let fc = f.coeffs_in(idx);
    let gc = g.coeffs_in(idx);

    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); deg_bound + 1];
    let mut p: u64 = (1 << 31) - 1;
    while modulus <= &bound * 2u32 {
        p -= 2;
        if !is_prime(p) {
            continue;
        }
        let fp = PrimeField::new(p);
        let fl = fp.reduce_zpoly(&fc[m as usize]);
        let gl = fp.reduce_zpoly(&gc[n as usize]);
        if fl.is_empty() || gl.is_empty() {
            continue;
        }
        let fr: Vec<ModPoly> = fc.iter().map(|c| fp.reduce_zpoly(c)).collect();
        let gr: Vec<ModPoly> = gc.iter().map(|c| fp.reduce_zpoly(c)).collect();
        let mut xs = Vec::with_capacity(deg_bound + 1);
        let mut ys = Vec::with_capacity(deg_bound + 1);
        let mut t = 0u64;
        while xs.len() <= deg_bound && t < p {
            if fp.eval(&fl, t) != 0 && fp.eval(&gl, t) != 0 {
                let mut a: ModPoly = fr.iter().map(|c| fp.eval(c, t)).collect();
                let mut b: ModPoly = gr.iter().map(|c| fp.eval(c, t)).collect();
                trim(&mut a);
                trim(&mut b);
                xs.push(t);
                ys.push(resultant_mod(&fp, &a, &b));
            }
            t += 1;
        }
        let image = interpolate(&fp, &xs, &ys);
        crt_accumulate(&mut acc, &modulus, &image, p);
        modulus *= p;
    }
    let coeffs = acc.iter().map(|c| symmetric_mod(c, &modulus)).collect();
    Ok(ZPoly::from_coeffs(coeffs))
}

/// Newton interpolation through `(xs[i], ys[i])`, as dense coefficients.
fn interpolate(fp: &PrimeField, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = fp.sub(dd[i], dd[i - 1]);
            let den = fp.sub(xs[i], xs[i - k]);
            dd[i] = fp.mul(num, fp.inv(den));
        }
    }
    let mut poly = vec![0u64; n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![0u64; n];
        for i in (0..n).rev() {
            if poly[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = fp.add(next[i + 1], poly[i]);
            }
            next[i] = fp.sub(next[i], fp.mul(poly[i], xs[k]));
        }
        next[0] = fp.add(next[0], dd[k]);
        poly = next;
    }
    poly
}

pub(crate) fn crt_accumulate(acc: &mut [BigInt], modulus: &BigInt, image: &[u64], p: u64) {
    let pb = BigInt::from(p);
    let fp = PrimeField::new(p);
    let m_mod_p = fp.reduce_big(modulus);
    let inv = fp.inv(m_mod_p);
    for (k, a) in acc.iter_mut().enumerate() {
        let r = image.get(k).copied().unwrap_or(0);
        let cur = fp.reduce_big(a);
        let h = fp.mul(fp.sub(r, cur), inv);
        if h != 0 {
            *a += modulus * BigInt::from(h);
        }
        debug_assert!(a.mod_floor(&pb) == BigInt::from(r));
    }
}

fn fmt_power(out: &mut String, name: &str, e: u32) {
    if e == 1 {
        out.push_str(name);
    } else if e > 1 {
        out.push_str(&format!("{name}^{e}"));
    }
}

impl Coeff for BiPoly {
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        self.empty_like()
    }
    fn one_like(&self) -> Self {
        self.constant_like(1)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        self.constant_like(n.clone())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut mono = String::new();
            fmt_power(&mut mono, &self.names[0], e.0);
            if e.0 > 0 && e.1 > 0 {
                mono.push('*');
            }
            fmt_power(&mut mono, &self.names[1], e.1);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if One::is_one(&a) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b() -> BiPoly {
        BiPoly::var("b", "c", 0)
    }
    fn c() -> BiPoly {
        BiPoly::var("b", "c", 1)
    }

    #[test]
    fn resultant_of_linear_forms() {
        let f = BiPoly::var("x", "a", 0).sub(&BiPoly::var("x", "a", 1));
        let g = BiPoly::var("x", "a", 0).sub(&BiPoly::var("x", "a", 0).constant_like(5));
        // Res_x(x - a, x - 5) = a - 5 up to the linear-form convention.
        let r = resultant(&f, &g, "x").unwrap();
        assert_eq!(r, ZPoly::from_i64(&[-5, 1]));
    }

    #[test]
    fn resultant_rejects_missing_variable() {
        assert!(resultant(&c(), &c().add(&c().constant_like(1)), "b").is_err());
        assert!(resultant(&c(), &c(), "z").is_err());
    }

    #[test]
    fn common_component_gives_zero() {
        let f = b().sub(&c());
        let r = resultant(&f, &f.mul(&b()), "b").unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn exact_division_and_display() {
        let f = c().mul(&c()).add(&c()).sub(&b());
        let g = f.mul(&b().add(&c()));
        assert_eq!(g.div_exact(&f).unwrap(), b().add(&c()));
        assert!(g.div_exact(&b().add(&b().constant_like(2))).is_none());
        assert_eq!(f.neg().primitive().to_string(), "c^2 - b + c");
        assert_eq!(b().sub(&c()).to_string(), "b - c");
    }

    #[test]
    fn substitution() {
        // c -> v - 2b in b - c, with the second name now meaning v.
        let f = b().sub(&c());
        let img = c().sub(&b().scale(&BigInt::from(2)));
        assert_eq!(f.substitute(1, &img).to_string(), "3*b - c");
    }

    fn small() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec(((0u32..=3, 0u32..=3), -5i64..=5), 1..=6).prop_map(|ts| {
            BiPoly::from_terms("x", "y", ts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
        })
    }

    /// Sylvester determinant over Q[y] by fraction-free elimination on
    /// evaluated copies: oracle compares at several integer values of y.
    fn sylvester_at(f: &BiPoly, g: &BiPoly, y: i64) -> BigInt {
        use crate::exactnum::upoly::QPoly;
        let fy = f.eval_var(1, &BigInt::from(y));
        let gy = g.eval_var(1, &BigInt::from(y));
        let m = f.degree_in(0).unwrap() as usize;
        let n = g.degree_in(0).unwrap() as usize;
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let coef = |p: &ZPoly, k: usize| p.coeffs().get(k).cloned().unwrap_or_default();
        let mut mat = vec![vec![num_rational::BigRational::zero(); size]; size];
        for r in 0..n {
            for k in 0..=m {
                mat[r][r + m - k] = num_rational::BigRational::from_integer(coef(&fy, k));
            }
        }
        for r in 0..m {
            for k in 0..=n {
                mat[n + r][r + n - k] = num_rational::BigRational::from_integer(coef(&gy, k));
            }
        }
        let _ = QPoly::zero();
        let mut det = num_rational::BigRational::one();
        for col in 0..size {
            let piv = (col..size).find(|&r| !mat[r][col].is_zero());
            let Some(piv) = piv else { return BigInt::zero() };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= mat[col][col].clone();
            for r in col + 1..size {
                let factor = &mat[r][col] / &mat[col][col];
                for k in col..size {
                    let v = &factor * &mat[col][k];
                    mat[r][k] -= v;
                }
            }
        }
        det.to_integer()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn resultant_antisymmetry(f in small(), g in small()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assume!(f.degree_in(0).unwrap() > 0 || g.degree_in(0).unwrap() > 0);
            let r1 = resultant(&f, &g, "x").unwrap();
            let r2 = resultant(&g, &f, "x").unwrap();
            let m = f.degree_in(0).unwrap();
            let n = g.degree_in(0).unwrap();
            let sign = if (m * n) % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(r1.clone(), r2.scale(&BigInt::from(sign)));
            // Matches the Sylvester determinant wherever the leading
            // coefficients survive specialization.
            let lf = &f.coeffs_in(0)[m as usize];
            let lg = &g.coeffs_in(0)[n as usize];
            for y in -3i64..=3 {
                let yb = BigInt::from(y);
                if Zero::is_zero(&lf.eval(&yb)) || Zero::is_zero(&lg.eval(&yb)) {
                    continue;
                }
                prop_assert_eq!(r1.eval(&yb), sylvester_at(&f, &g, y));
            }
        }
    }
}
