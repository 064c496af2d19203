//! Linear ODEs with constant coefficients, solved through `exp(tA)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matfun::{matrix_exp, MatrixC};
use crate::poly::Polynomial;
use crate::scalar::{Complex, Jet};
use crate::spectral::find_roots_with_multiplicity;
use crate::tol::Tolerances;

/// `y^(n) + a_{n−1} y^(n−1) + … + a₀ y = 0`, stored as `a₀ … a_{n−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearODE {
    coeffs: Vec<Complex>,
}

impl LinearODE {
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySpec);
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(LinearODE { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `xⁿ + a_{n−1}x^{n−1} + … + a₀`
    pub fn char_poly(&self) -> Polynomial {
        let mut c = self.coeffs.clone();
        c.push(Complex::ONE);
        Polynomial::new(c)
    }
}

/// First-order system for the state `(y^(n−1), …, y′, y)`.
pub fn companion(ode: &LinearODE) -> MatrixC {
    let n = ode.order();
    let mut m = MatrixC::zeros(n);
    for j in 0..n {
        m[(0, j)] = -ode.coeffs[n - 1 - j];
    }
    for i in 1..n {
        m[(i, i - 1)] = Complex::ONE;
    }
    m
}

/// The basis function `t^power · exp(lambda·t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisTerm {
    pub lambda: Complex,
    pub power: usize,
}

impl BasisTerm {
    pub fn eval(&self, t: f64) -> Complex {
        (self.lambda * t).exp() * t.powi(self.power as i32)
    }

    /// Taylor jet in `t` at `t0`.
    pub fn jet(&self, t0: f64, order: usize) -> Jet {
        let t = Jet::variable(Complex::real(t0), order);
        t.powu(self.power as u32).mul(&t.scale(self.lambda).exp())
    }
}

impl fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.lambda;
        let exp = if l == Complex::ZERO {
            None
        } else if l.im == 0.0 {
            Some(match l.re {
                1.0 => "exp(t)".to_string(),
                -1.0 => "exp(-t)".to_string(),
                _ => format!("exp({l}t)"),
            })
        } else if l.re == 0.0 {
            Some(match l.im {
                1.0 => "exp(it)".to_string(),
                -1.0 => "exp(-it)".to_string(),
                _ => format!("exp({l}t)"),
            })
        } else {
            Some(format!("exp(({l})t)"))
        };
        match (self.power, exp) {
            (0, None) => f.write_str("1"),
            (p, None) => write!(f, "t^{p}"),
            (0, Some(e)) => f.write_str(&e),
            (p, Some(e)) => write!(f, "t^{p} * {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionBasis {
    pub terms: Vec<BasisTerm>,
}

/// `{tᵖ e^{λt} : 0 ≤ p < m}` over the roots `λ` (multiplicity `m`) of the
/// characteristic polynomial.
pub fn general_solution_basis(ode: &LinearODE, tol: &Tolerances) -> Result<SolutionBasis> {
    let spectrum = find_roots_with_multiplicity(&ode.char_poly(), tol)?;
    let terms = spectrum
        .nodes()
        .into_iter()
        .flat_map(|(lambda, m)| (0..m).map(move |power| BasisTerm { lambda, power }))
        .collect();
    Ok(SolutionBasis { terms })
}

/// Either a scalar ODE (through its companion matrix) or `y′ = Ay`.
#[derive(Clone, Debug, PartialEq)]
pub enum IvpSystem {
    Ode(LinearODE),
    Matrix(MatrixC),
}

impl IvpSystem {
    pub fn matrix(&self) -> MatrixC {
        match self {
            IvpSystem::Ode(ode) => companion(ode),
            IvpSystem::Matrix(a) => a.clone(),
        }
    }
}

/// `exp(tA)·y₀`. For an ODE the state is `(y^(n−1), …, y)`.
pub fn ivp_solve(system: &IvpSystem, y0: &[Complex], t: f64, tol: &Tolerances) -> Result<Vec<Complex>> {
    let a = system.matrix();
    if y0.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: y0.len(),
        });
    }
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(matrix_exp(&a, Complex::real(t), None, tol)?.matvec(y0))
}
