//! Exact-arithmetic certification of log-concavity phenomena: Lorentzian
//! polynomials, M-convex supports, sectional log-concavity, adjoint
//! polynomials of rational polyhedral cones, and numerators of Segre zeta
//! functions of monomial ideals.
//!
//! Every verdict in this crate is decided over arbitrary-precision
//! rationals; the single floating-point path is the quadrature oracle in
//! [`segrezeta::integral_oracle`].

pub mod cone;
pub mod convexity;
mod error;
pub mod fixtures;
pub mod lorentz;
pub mod lp;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod scan;
pub mod sectional;
pub mod segrezeta;
pub mod signature;

pub use error::{Error, Result};
pub use matrix::RationalMatrix;
pub use poly::{Exponent, Polynomial};
pub use rational::Rat;
