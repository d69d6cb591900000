//! Exact polynomial arithmetic, polynomial matrices and the expression parser.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod polynomial;

pub use field::{Field, Rational, RationalFunction, UniPoly};
pub use matrix::{MatrixError, PolyMatrix};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::{Polynomial, Ring};
