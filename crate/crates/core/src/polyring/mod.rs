//! Polynomial rings: exact coefficient fields, sparse polynomials and
//! pluggable monomial orders.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{field_arith, FieldElem, FieldOp, FieldSpec};
pub use monomial::{monomial_cmp, Monomial, MonomialOrder, DEGREE_CAP};
pub(crate) use monomial::DegreeOverflowPanic;
pub use parse::parse_poly;
pub use poly::{poly_arith, Poly, PolyOp, RingCtx};
