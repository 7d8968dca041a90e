//! Exact computations behind torsion bounds for abelian varieties with
//! integral moduli: local bounds, point-count censuses over prime fields,
//! collation of candidate orders, degree sequences of modular curves and
//! torsion of elliptic curves over number fields.

pub mod collate;
pub mod error;
pub mod exactnum;
pub mod hondatate;
pub mod localbounds;
pub mod modcurves;
pub mod nftorsion;

pub use error::{Error, Result};
