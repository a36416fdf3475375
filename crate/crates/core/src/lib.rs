//! Numerics for the first-associated Meixner-Pollaczek polynomials
//! `p_n(x) = P_n^{(1/2)}(x/√2; π/2, 1)`.
//!
//! The crate evaluates the polynomials by several independent routes,
//! evaluates their orthogonality weight and generating functions, the
//! coherent-state wavefunction and Bargmann-type kernel built from them, and
//! provides residual checks that certify each closed form numerically.
//!
//! Interchangeable algorithms (polynomial evaluation routes, kernel routes,
//! verification suites) live behind traits and are looked up by name through
//! [`registry::Registry`].

pub mod bargmann;
pub mod coeffs;
pub mod error;
pub mod genfun;
pub mod measures;
pub mod polynomials;
pub mod quadrature;
pub mod registry;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use special::{ComplexValue, SeriesControl};
