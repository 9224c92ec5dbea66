//! Artin-Schreier L-functions over F_q: exact L-polynomials, curve families,
//! Dirichlet characters of order p, closed-form moment evaluators, and a
//! verification harness that checks exact identities in the number ring
//! Q(zeta_p)[t]/(t^{2p} - q) and asymptotic ones as banded properties.
//!
//! Everything exact is computed with arbitrary-precision rationals; floats
//! appear only in truncated Euler products and root finding.

pub mod error;
pub mod exact;
pub mod gf;
pub mod polyring;
pub mod lfun;
pub mod chars;
pub mod families;
pub mod formulas;
pub mod harness;

pub use error::Error;
