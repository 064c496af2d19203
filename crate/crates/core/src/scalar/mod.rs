//! Complex scalars, truncated Taylor series and the scalar functions whose
//! derivative jets feed the interpolation problems.

mod complex;
mod function;
mod jet;

pub use complex::Complex;
pub use function::FunctionSpec;
pub use jet::Jet;
