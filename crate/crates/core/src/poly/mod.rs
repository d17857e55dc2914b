//! Exact sparse polynomials and the elimination toolkit.

pub mod field;
pub mod gcd;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod ratfun;
pub mod resultant;

pub use field::{rat, ratio, Field, Gf2, Integral, Rational};
pub use groebner::{groebner_basis, GroebnerBasis, Ideal, QuotientDim};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::Polynomial;
pub use ratfun::RationalFunction;
