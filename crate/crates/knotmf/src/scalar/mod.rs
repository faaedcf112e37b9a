//! Exact arithmetic: rationals, Laurent polynomials, atom-denominator scalars,
//! univariate rational functions and det-relation normal forms.

mod atoms;
mod fraction;
mod laurent;
mod quotient;
mod ratfunc;
mod registry;

pub use atoms::{a_pow, q_pow, qa_registry, s_poly, u_poly, Scalar, ScalarJson};
pub use fraction::Frac;
pub use laurent::{format_q, parse_q, pow_q, Exps, LaurentPoly, TermJson, Weight};
pub use quotient::{QuotientReducer, Relation};
pub use ratfunc::{rational_roots, Poly1, RationalFunc1};
pub use registry::{VarRegistry, VarWeight};

pub type Q = num_rational::BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("polynomials live over different registries")]
    RegistryMismatch,
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("image of Laurent variable {0} is not a monomial")]
    NonInvertibleImage(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expansion point is a pole")]
    Pole,
    #[error("not expandable as a power series in the requested variables")]
    NotPowerSeries,
    #[error("relation rhs involves its leading variables or relations overlap")]
    BadRelation,
    #[error("parse error: {0}")]
    Parse(String),
}
