//! Truncated Taylor series ("jets").
//!
//! Convention: `coeffs[p] = f^(p)(center) / p!`. All binary operations
//! require both operands to share the center and length.

use super::Complex;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub center: Complex,
    pub coeffs: Vec<Complex>,
}

impl Jet {
    /// The identity function `x ↦ x` expanded at `center` to `order`.
    pub fn variable(center: Complex, order: usize) -> Jet {
        let mut coeffs = vec![Complex::ZERO; order + 1];
        coeffs[0] = center;
        if order > 0 {
            coeffs[1] = Complex::ONE;
        }
        Jet { center, coeffs }
    }

    pub fn constant(center: Complex, value: Complex, order: usize) -> Jet {
        let mut coeffs = vec![Complex::ZERO; order + 1];
        coeffs[0] = value;
        Jet { center, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> Complex {
        self.coeffs[0]
    }

    /// Raw derivative `f^(p)(center)`.
    pub fn derivative(&self, p: usize) -> Complex {
        let fact: f64 = (1..=p).map(|j| j as f64).product();
        self.coeffs[p] * fact
    }

    fn with(&self, coeffs: Vec<Complex>) -> Jet {
        Jet {
            center: self.center,
            coeffs,
        }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        self.with(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.with(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex) -> Jet {
        self.with(self.coeffs.iter().map(|&a| a * s).collect())
    }

    pub fn add_const(&self, c: Complex) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Jet) -> Jet {
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..a.len())
            .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
            .collect();
        self.with(coeffs)
    }

    /// Series quotient; the caller guarantees `other.value() != 0`.
    pub fn div(&self, other: &Jet) -> Jet {
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut c: Vec<Complex> = Vec::with_capacity(a.len());
        for k in 0..a.len() {
            let mut s = a[k];
            for j in 1..=k {
                s -= b[j] * c[k - j];
            }
            c.push(s / b[0]);
        }
        self.with(c)
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(self.center, Complex::ONE, self.order()).div(self)
    }

    /// `c[k] = (1/k) Σ_{j=1}^{k} j a[j] c[k-j]`
    pub fn exp(&self) -> Jet {
        let a = &self.coeffs;
        let mut c = Vec::with_capacity(a.len());
        c.push(a[0].exp());
        for k in 1..a.len() {
            let s: Complex = (1..=k).map(|j| a[j] * c[k - j] * j as f64).sum();
            c.push(s / k as f64);
        }
        self.with(c)
    }

    /// Coupled recurrence for `(sin a, cos a)`.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.coeffs;
        let mut s = Vec::with_capacity(a.len());
        let mut c = Vec::with_capacity(a.len());
        s.push(a[0].sin());
        c.push(a[0].cos());
        for k in 1..a.len() {
            let mut ss = Complex::ZERO;
            let mut cc = Complex::ZERO;
            for j in 1..=k {
                let ja = a[j] * j as f64;
                ss += ja * c[k - j];
                cc += ja * s[k - j];
            }
            s.push(ss / k as f64);
            c.push(-cc / k as f64);
        }
        (self.with(s), self.with(c))
    }

    /// Non-negative integer power by repeated squaring.
    pub fn powu(&self, k: u32) -> Jet {
        let mut base = self.clone();
        let mut acc = Jet::constant(self.center, Complex::ONE, self.order());
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
