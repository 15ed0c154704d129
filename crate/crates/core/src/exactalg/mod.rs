//! Exact arithmetic: base fields, polynomials, Laurent polynomials,
//! matrices over commutative rings, and Hilbert symbols.

pub mod field;
pub mod hilbert;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ring;

pub use field::{BaseField, Scalar};
pub use hilbert::{hilbert_symbol, Place};
pub use laurent::{LaurentPoly, Normalized};
pub use matrix::{FieldMatrix, LaurentMatrix, Matrix};
pub use poly::{Poly, UniPoly};
pub use ring::Ring;
