//! Exact computer algebra for q-Fibonacci and q-Lucas polynomial families.
//!
//! The crate is organised in layers:
//!
//! * [`poly`] — sparse Laurent polynomials in the three variables `x`, `s`,
//!   `q` with arbitrary-precision integer coefficients. Everything above is
//!   built on this ring: equality of identities reduces to "the difference
//!   is the empty term map".
//! * [`series`] — formal power series in `q` truncated at a fixed order,
//!   used where infinite products and bilateral sums replace polynomials.
//! * [`qfun`] — q-combinatorial primitives: q-integers, q-binomial
//!   coefficients, q-Pochhammer products, Rogers-Szegő polynomials, the
//!   q-derivative, and the umbral operator map `f(x) -> f(x + (q-1)sD)·1`.
//! * [`fiblucas`] — the q-Fibonacci/q-Lucas families themselves, by several
//!   independent constructions (explicit sums, three recurrences, operator
//!   image, weighted Morse-code enumeration), the negative-index extension,
//!   and closed-form special-value tables.
//! * [`identities`] — a closed registry of named identity checks with
//!   parameter grids, producing pass/fail reports with rendered
//!   counterexamples.
//! * [`bailey`] — Rogers-Ramanujan machinery: Bailey pairs, truncated
//!   infinite products, bilateral theta sums, master formulas, and the
//!   Slater-type corollaries, all verified as truncated series.
//!
//! All values are immutable after construction and all operations are pure;
//! internal memo tables are synchronised so concurrent callers observe the
//! same results as sequential ones.

pub mod bailey;
mod error;
pub mod fiblucas;
pub mod identities;
pub mod poly;
pub mod qfun;
pub mod series;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, Monomial, SubstMap, SubstTarget};
pub use series::QSeries;
