//! The ambient ring: exact fields, monomials, polynomials and their text form.

mod field;
mod monomial;
mod parse;
mod polynomial;

pub use field::{Field, FieldElement, FieldError, DEFAULT_PRIME};
pub use monomial::{count_monomials, monomials_of_degree, Monomial, MAX_VARS, VAR_NAMES};
pub use parse::{parse, ParseError};
pub use polynomial::{ArithOp, EulerCheck, PolyError, Polynomial};
