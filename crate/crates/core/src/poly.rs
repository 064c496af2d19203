//! Dense univariate polynomials over [`Complex`].
//!
//! Coefficients are stored in ascending degree order and the zero polynomial
//! is the empty vector. After every operation trailing coefficients whose
//! modulus is at most `TRIM_TOL * max|c|` are dropped, so `degree()` reflects
//! the numerically meaningful degree.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Complex;
use crate::tol::Tolerances;

const TRIM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex::ONE)
    }

    pub fn constant(c: Complex) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Complex::ZERO, Complex::ONE])
    }

    /// `x - a`.
    pub fn linear_factor(a: Complex) -> Self {
        Polynomial {
            coeffs: vec![-a, Complex::ONE],
        }
    }

    /// Builds a polynomial from ascending coefficients, trimming negligible
    /// leading terms.
    pub fn new(coeffs: Vec<Complex>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::real(c)).collect())
    }

    fn trim(&mut self) {
        let max = self.norm_inf();
        let cut = TRIM_TOL * max;
        while let Some(last) = self.coeffs.last() {
            if last.abs() <= cut {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or(Complex::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Complex> {
        self.coeffs.last().copied()
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::ZERO, |acc, &c| acc * x + c)
    }

    /// Derivative of the given order.
    pub fn derivative(&self, order: usize) -> Polynomial {
        if order == 0 {
            return self.clone();
        }
        if order >= self.coeffs.len() {
            return Polynomial::zero();
        }
        let coeffs = (order..self.coeffs.len())
            .map(|k| {
                // k! / (k - order)!
                let falling: f64 = ((k - order + 1)..=k).map(|j| j as f64).product();
                self.coeffs[k] * falling
            })
            .collect();
        Polynomial::new(coeffs)
    }

    /// First `count` Taylor coefficients at `c`: `p^(k)(c) / k!`.
    ///
    /// Computed by repeated synthetic division, so no factorials appear.
    pub fn taylor_at(&self, c: Complex, count: usize) -> Vec<Complex> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            if work.is_empty() {
                out.push(Complex::ZERO);
                continue;
            }
            // Divide `work` by (x - c): remainder is the next coefficient.
            let mut carry = Complex::ZERO;
            for coef in work.iter_mut().rev() {
                let v = *coef + carry * c;
                *coef = carry;
                carry = v;
            }
            out.push(carry);
            work.pop();
        }
        out
    }

    /// Re-expands `Σ t_p (x - c)^p` in the monomial basis.
    pub fn from_taylor(c: Complex, taylor: &[Complex]) -> Polynomial {
        let shift = Polynomial::linear_factor(c);
        taylor
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, &t| &(&acc * &shift) + &Polynomial::constant(t))
    }

    pub fn scale(&self, s: Complex) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Division with remainder: `self = den * q + r`, `deg r < deg den`.
    pub fn divmod(&self, den: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = den.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let Some(nd) = self.degree() else {
            return Ok((Polynomial::zero(), Polynomial::zero()));
        };
        if nd < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead = den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex::ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &d) in den.coeffs[..dd].iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = Complex::ZERO;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic normalisation; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(l) => self.scale(l.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g`, `g` monic.
    ///
    /// A remainder is treated as zero once its sup-norm falls below
    /// `tol.gcd` times the size of the terms that cancelled to produce it.
    pub fn bezout(a: &Polynomial, b: &Polynomial, tol: &Tolerances) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
        let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("divisor is nonzero");
            let scale = r0.norm_inf().max(q.norm_inf() * r1.norm_inf());
            let r = if r.norm_inf() <= tol.gcd * scale {
                Polynomial::zero()
            } else {
                r
            };
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (Polynomial::zero(), Polynomial::zero(), Polynomial::zero()),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    /// Monic `∏ (x - λ)^m`.
    pub fn from_roots(roots: &[(Complex, usize)]) -> Polynomial {
        let mut coeffs = vec![Complex::ONE];
        for &(lambda, m) in roots {
            for _ in 0..m {
                coeffs.push(Complex::ZERO);
                for k in (1..coeffs.len()).rev() {
                    let prev = coeffs[k - 1];
                    coeffs[k] = prev - lambda * coeffs[k];
                }
                coeffs[0] = -lambda * coeffs[0];
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}
