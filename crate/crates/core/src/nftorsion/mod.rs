//! Elliptic curves over number fields and small finite fields.
pub mod finite_field;
pub mod torsion;
pub mod weierstrass;

pub use finite_field::{FiniteFieldCurve, Gf, GfField};
pub use torsion::{torsion_subgroup, KubertCurve, TorsionGroup};
