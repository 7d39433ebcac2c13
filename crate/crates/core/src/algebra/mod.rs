//! Exact arithmetic kernel.

mod halfpower;
mod laurent;
mod monomial;
mod rational;
mod ratfun;
mod series;
mod subst;
mod vars;

pub use halfpower::{half_power_convert, half_power_convert_series, HalfPowerVars};
pub use laurent::LaurentPoly;
pub use monomial::{Monomial, MAX_VARS};
pub use rational::{binomial, parse_rational, rat, ratio, Rational};
pub use ratfun::RationalFunction;
pub use series::{Coef, Grading, TruncatedSeries, EXACT};
pub use subst::Subst;
pub use vars::VarTable;
