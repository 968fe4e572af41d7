//! Numerics for the h-zeta function zeta_h(s) = sum h_n / n^s, where
//! h_n = 1 + 1/3 + ... + 1/(2n-1), together with log-tangent integrals,
//! harmonic Euler sums and a harness that checks closed-form identities
//! between them.

pub mod continuation;
pub mod error;
pub mod exact;
pub mod h_series;
pub mod harness;
pub mod precision;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
pub use precision::{ComplexValue, DoubleDouble, Estimate, PrecisionContext};
