//! Bell polynomials, Blissard reciprocal sequences and the family of
//! generalized Laplace transforms they parameterize.

pub mod bell;
pub mod error;
pub mod expr;
pub mod iso;
pub mod kernels;
pub mod quadrature;
pub mod rational;
pub mod selftest;
pub mod sequence;
pub mod series;
pub mod transform;
pub mod umbral;

pub use error::{Error, Result};
pub use expr::{parse_function, Expr as ExpressionAst, FunctionExpr};
pub use rational::Rational;
pub use sequence::UmbralSequence;
pub use series::{Convention, FormalPowerSeries};
