use super::{Complex, Jet};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tol::Tolerances;

/// A scalar function with computable derivatives of every order.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Exp,
    Sin,
    Cos,
    /// `x ↦ 1/x`
    Reciprocal,
    /// `x ↦ x^k`, negative `k` allowed.
    Power(i32),
    Polynomial(Polynomial),
    Rational {
        numerator: Polynomial,
        denominator: Polynomial,
    },
    /// `x ↦ exp(t·x)`
    ScaledExp(Complex),
}

impl FunctionSpec {
    /// Rational function `num / den`; rejects the zero denominator.
    pub fn rational(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        Ok(FunctionSpec::Rational {
            numerator,
            denominator,
        })
    }

    /// Value of the denominator at `x` for functions with poles.
    fn denominator_at(&self, x: Complex) -> Option<Complex> {
        match self {
            FunctionSpec::Reciprocal => Some(x),
            FunctionSpec::Power(k) if *k < 0 => Some(x),
            FunctionSpec::Rational { denominator, .. } => Some(denominator.eval(x)),
            _ => None,
        }
    }

    /// Whether `x` is (numerically) a pole.
    pub fn has_pole_at(&self, x: Complex, tol: &Tolerances) -> bool {
        self.denominator_at(x)
            .is_some_and(|d| d.abs() < tol.pole * (1.0 + x.abs()))
    }

    /// Taylor jet of order `order` at `center`.
    pub fn jet_of(&self, center: Complex, order: usize, tol: &Tolerances) -> Result<Jet> {
        if self.has_pole_at(center, tol) {
            return Err(Error::PoleAtNode { at: center });
        }
        let x = Jet::variable(center, order);
        let jet = match self {
            FunctionSpec::Exp => x.exp(),
            FunctionSpec::Sin => x.sin_cos().0,
            FunctionSpec::Cos => x.sin_cos().1,
            FunctionSpec::Reciprocal => x.recip(),
            FunctionSpec::Power(k) if *k >= 0 => x.powu(k.unsigned_abs()),
            FunctionSpec::Power(k) => x.powu(k.unsigned_abs()).recip(),
            FunctionSpec::Polynomial(p) => poly_jet(p, &x),
            FunctionSpec::Rational {
                numerator,
                denominator,
            } => poly_jet(numerator, &x).div(&poly_jet(denominator, &x)),
            FunctionSpec::ScaledExp(t) => x.scale(*t).exp(),
        };
        if jet.coeffs.iter().all(|c| c.is_finite()) {
            Ok(jet)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn eval(&self, x: Complex, tol: &Tolerances) -> Result<Complex> {
        Ok(self.jet_of(x, 0, tol)?.value())
    }
}

/// Horner's scheme over jets.
fn poly_jet(p: &Polynomial, x: &Jet) -> Jet {
    p.coeffs()
        .iter()
        .rev()
        .fold(Jet::constant(x.center, Complex::ZERO, x.order()), |acc, &c| {
            acc.mul(x).add_const(c)
        })
}
