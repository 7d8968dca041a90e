//! Exact arithmetic kernel.

pub mod bipoly;
pub mod coeff;
pub mod factor;
pub mod int;
pub mod numfield;
pub mod parse;
pub mod upoly;
pub mod zmod;

pub use bipoly::{resultant, BiPoly};
pub use coeff::{Coeff, FieldCoeff, Fp};
pub use factor::{factor_rational_poly, Factorization};
pub use int::isqrt;
pub use numfield::{nf_roots, NFElement, NFPoly, NumberField};
pub use upoly::{QPoly, UPoly, ZPoly};

/// Universal scalar: an exact rational in lowest terms.
pub type ExactScalar = num_rational::BigRational;

/// Squarefree part over `Q` or over a number field.
pub fn squarefree_part<C: FieldCoeff>(f: &UPoly<C>) -> crate::error::Result<UPoly<C>> {
    if f.is_zero() {
        return crate::error::domain("squarefree part of the zero polynomial");
    }
    Ok(f.squarefree_part())
}
