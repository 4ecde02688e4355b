//! Exact arithmetic for truncated formal power series in `q` with polynomial
//! coefficients in two formal variables `x` and `z`, together with the
//! classical q-objects built on top of it (q-Pochhammer products, Gaussian
//! binomials, complete homogeneous symmetric functions, Newton interpolation
//! at geometric points) and a catalog of verifiable q-identities.
//!
//! Everything is computed over arbitrary-precision rationals; an identity
//! check is an exact coefficient-by-coefficient comparison up to a trusted
//! truncation order, never a numeric approximation.

pub mod identities;
pub mod newton;
pub mod poly;
pub mod qfun;
pub mod rational;
pub mod series;
pub mod sym;

pub use identities::{verify, IdentityCheck, IdentityError, IdentityTag, Params};
pub use newton::NewtonExpansion;
pub use poly::{MultiPoly, Subst};
pub use rational::Rat;
pub use series::{QSeries, SeriesError};
pub use sym::Alphabet;
