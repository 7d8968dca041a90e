//! Fixed-point logarithms with explicit error bounds, enough to print the
//! leading digits of numbers far too large to write down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binary digits after the point.
pub const PREC: u32 = 320;

fn one() -> BigInt {
    BigInt::one() << PREC
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> PREC
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << PREC).div_floor(b)
}

/// `atanh(z)` for a fixed-point `0 <= z <= 1/2`.
fn atanh(z: &BigInt) -> BigInt {
    let z2 = mul(z, z);
    let mut term = z.clone();
    let mut acc = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        acc += &term / BigInt::from(k);
        term = mul(&term, &z2);
        k += 2;
    }
    acc
}

/// `ln(1 + y)` for fixed-point `0 <= y <= 1`.
pub fn ln1p(y: &BigInt) -> BigInt {
    let z = div(y, &(y + (one() << 1)));
    atanh(&z) << 1
}

fn ratio(n: u64, d: u64) -> BigInt {
    div(&(BigInt::from(n) << PREC), &(BigInt::from(d) << PREC))
}

pub fn ln2() -> BigInt {
    ln1p(&one())
}

pub fn ln3() -> BigInt {
    ln2() + ln1p(&ratio(1, 2))
}

pub fn ln10() -> BigInt {
    // ln 10 = 3 ln 2 + ln(5/4)
    ln2() * 3 + ln1p(&ratio(1, 4))
}

/// `exp(x)` for fixed-point `0 <= x < 3`.
pub fn exp(x: &BigInt) -> BigInt {
    // Halve until small, then square back.
    let mut y = x.clone();
    let mut halvings = 0;
    while y > (one() >> 4) {
        y >>= 1;
        halvings += 1;
    }
    let mut term = one();
    let mut acc = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        acc += &term;
        term = mul(&term, &y) / BigInt::from(k);
        k += 1;
    }
    for _ in 0..halvings {
        acc = mul(&acc, &acc);
    }
    acc
}

/// Fixed-point `sqrt(2)^-1`.
fn inv_sqrt2() -> BigInt {
    let two_scaled = BigInt::from(2) << (2 * PREC);
    let s = crate::exactnum::int::isqrt(&two_scaled).unwrap();
    div(&one(), &s)
}

/// The correction `log10(1 + base^(-h/2))`.
fn log10_correction(base: u64, half_exp: &BigInt, ln10: &BigInt) -> BigInt {
    // 1 + base^(-h/2) with h large contributes nothing at this precision.
    if half_exp > &BigInt::from(2 * PREC) {
        return BigInt::zero();
    }
    let h = half_exp.to_u64().unwrap();
    let b = BigInt::from(base);
    let whole = h / 2;
    let mut y = div(&one(), &(b.pow(whole as u32) << PREC));
    if h % 2 == 1 {
        let r = if base == 2 {
            inv_sqrt2()
        } else {
            let three_scaled = BigInt::from(3) << (2 * PREC);
            div(&one(), &crate::exactnum::int::isqrt(&three_scaled).unwrap())
        };
        y = mul(&y, &r);
    }
    div(&ln1p(&y), ln10)
}

/// `log10(1 + base^(h/2))` as fixed point, for `base` in {2, 3}.
pub fn log10_one_plus_half_power(base: u64, half_exp: &BigInt) -> BigInt {
    let ln10 = ln10();
    let lnb = if base == 2 { ln2() } else { ln3() };
    let main = (div(&lnb, &ln10) * half_exp) >> 1u32;
    main + log10_correction(base, half_exp, &ln10)
}

/// A positive real written as `mantissa * 10^exponent`, with the mantissa
/// given by its leading decimal digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scientific {
    /// Leading digits, e.g. 40262 for 4.0262.
    pub digits: u64,
    pub sig_figs: u32,
    pub exponent: i64,
}

impl Scientific {
    pub fn mantissa(&self) -> f64 {
        self.digits as f64 / 10f64.powi(self.sig_figs as i32 - 1)
    }
}

impl std::fmt::Display for Scientific {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = self.digits.to_string();
        let (head, tail) = s.split_at(1);
        write!(f, "{head}.{tail}e{}", self.exponent)
    }
}

/// Rounds `10^L` to `sig_figs` significant figures, where the fixed-point
/// `log10` is known to within `err`. Fails when the interval straddles a
/// rounding boundary.
pub fn certify_scientific(l: &BigInt, err: &BigInt, sig_figs: u32) -> Result<Scientific> {
    let round = |v: &BigInt| -> (i64, u64) {
        let exponent = (v >> PREC).to_i64().unwrap();
        let frac = v - (BigInt::from(exponent) << PREC);
        let ln10 = ln10();
        let m = exp(&mul(&frac, &ln10));
        let scaled = m * BigInt::from(10u64.pow(sig_figs - 1));
        // Round half up.
        let digits: BigInt = (scaled + (one() >> 1)) >> PREC;
        let digits = digits.to_u64().unwrap();
        if digits >= 10u64.pow(sig_figs) {
            (exponent + 1, digits / 10)
        } else {
            (exponent, digits)
        }
    };
    let lo = round(&(l - err));
    let hi = round(&(l + err));
    if lo != hi || l.is_negative() {
        return Err(Error::Undecided(format!(
            "cannot certify {sig_figs} significant figures"
        )));
    }
    Ok(Scientific {
        digits: lo.1,
        sig_figs,
        exponent: lo.0,
    })
}

/// A generous absolute error for a fixed-point value built from a few
/// hundred series terms and multiplied by an integer of `mult_bits` bits.
pub fn error_bound(mult_bits: u64) -> BigInt {
    BigInt::one() << (mult_bits as u32 + 24)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(v: &BigInt) -> f64 {
        let shifted: BigInt = v >> (PREC - 60);
        shifted.to_f64().unwrap() / 2f64.powi(60)
    }

    #[test]
    fn constants_match_floating_point() {
        assert!((to_f64(&ln2()) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((to_f64(&ln3()) - 3f64.ln()).abs() < 1e-15);
        assert!((to_f64(&ln10()) - std::f64::consts::LN_10).abs() < 1e-15);
        assert!((to_f64(&exp(&ln2())) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn small_values_round_trip() {
        // log10(1 + 2^3) = log10 9
        let l = log10_one_plus_half_power(2, &BigInt::from(6));
        assert!((to_f64(&l) - 9f64.log10()).abs() < 1e-15);
        // log10(1 + 3^(1/2))
        let l = log10_one_plus_half_power(3, &BigInt::from(1));
        assert!((to_f64(&l) - (1.0 + 3f64.sqrt()).log10()).abs() < 1e-15);
        let s = certify_scientific(&(BigInt::from(3) << PREC), &error_bound(0), 5).unwrap();
        assert_eq!(s.to_string(), "1.0000e3");
    }
}
