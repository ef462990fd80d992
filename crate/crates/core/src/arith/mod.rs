//! Exact scalars, sparse multivariate polynomials, monomial orders and
//! polynomial matrices.

mod cyclotomic;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod ring;
mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicScalar};
pub use matrix::{rational_rank, subsets, Matrix, PfaffianMemo};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{format_monomial, Poly, WeightedDegree};
pub use ring::{MonomialOrder, PolyRing, RingRef};
pub use scalar::{common_denominator, format_rational, int, numerator_gcd, rat, Rational, Scalar};
