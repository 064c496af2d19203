//! Functions of square complex matrices computed from Hermite interpolation
//! on the spectrum.
//!
//! If `T(A) = 0` for a polynomial `T` with roots `λⱼ` of multiplicity `mⱼ`,
//! then `f(A) = L(A)` where `L` is the polynomial of degree `< deg T` that
//! matches `f` and its first `mⱼ - 1` derivatives at every `λⱼ`. This crate
//! builds `L` directly (no Jordan reduction), and exposes the machinery
//! around it: spectral projectors from principal resolvents, linear ODEs
//! with constant coefficients, and a Jordan form assembled from the
//! projectors.

pub mod error;
pub mod interp;
pub mod jordan;
pub mod linalg;
pub mod matfun;
pub mod odesolve;
pub mod poly;
pub mod scalar;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};

pub use matfun::MatrixC;
pub use poly::Polynomial;
pub use scalar::{Complex, FunctionSpec, Jet};
pub use tol::Tolerances;
