//! Exact invariants of the logarithmic vector bundle attached to a reduced
//! plane curve `f = 0`: Jacobian syzygies, the Jacobian module `N(f)`,
//! splitting types along lines, jumping loci and the Bourbaki ideal.
//!
//! All computations are exact over the rationals or a simple number field and
//! never use Gröbner bases; every graded object is handled one degree at a
//! time with linear algebra.

pub mod bourbaki;
pub mod bundle;
pub mod check;
pub mod error;
pub mod field;
pub mod graded;
pub mod jacobian;
pub mod linalg;
pub mod loci;
pub mod parse;
pub mod poly;
pub mod qpoly;
pub mod syzygy;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{FieldSpec, NumberField, Scalar};
pub use poly::{Monomial, Poly};
