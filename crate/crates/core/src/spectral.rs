//! Eigenvalues with multiplicities from the characteristic polynomial.

use crate::error::{Error, Result};
use crate::matfun::MatrixC;
use crate::poly::Polynomial;
use crate::scalar::Complex;
use crate::tol::Tolerances;

/// Largest matrix dimension accepted by the characteristic-polynomial route.
pub const MAX_DIM: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEstimate {
    pub eigenvalues: Vec<Complex>,
    pub multiplicities: Vec<usize>,
    /// Monic `det(xI − A)`.
    pub char_poly: Polynomial,
    pub warnings: Vec<String>,
}

impl SpectrumEstimate {
    /// A spectrum given by the caller; the characteristic polynomial is
    /// rebuilt from it.
    pub fn from_pairs(pairs: &[(Complex, usize)], tol: &Tolerances) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySpec);
        }
        if let Some(&(lambda, _)) = pairs.iter().find(|p| p.1 == 0) {
            return Err(Error::InvalidCondition(format!(
                "eigenvalue {lambda} has multiplicity 0"
            )));
        }
        if pairs.iter().any(|p| !p.0.is_finite()) {
            return Err(Error::NonFinite);
        }
        let max = pairs.iter().fold(0.0, |m: f64, p| m.max(p.0.abs()));
        let limit = tol.node_sep * (1.0 + max);
        for (i, &(a, _)) in pairs.iter().enumerate() {
            for &(b, _) in &pairs[i + 1..] {
                if (a - b).abs() <= limit {
                    return Err(Error::NodesTooClose { a, b });
                }
            }
        }
        Ok(SpectrumEstimate {
            eigenvalues: pairs.iter().map(|p| p.0).collect(),
            multiplicities: pairs.iter().map(|p| p.1).collect(),
            char_poly: Polynomial::from_roots(pairs),
            warnings: Vec::new(),
        })
    }

    /// `(λᵢ, mᵢ)` pairs, the node set for interpolation.
    pub fn nodes(&self) -> Vec<(Complex, usize)> {
        self.eigenvalues
            .iter()
            .copied()
            .zip(self.multiplicities.iter().copied())
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// Faddeev–LeVerrier on `A / 2^e`, with `2^e` near `‖A‖_F`.
pub fn characteristic_polynomial(a: &MatrixC) -> Result<Polynomial> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::TooLarge { n, max: MAX_DIM });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = a.frobenius();
    let e = if norm > 0.0 { norm.log2().round() as i32 } else { 0 };
    let s = 2f64.powi(e);
    let a_s = a.scale(Complex::real(1.0 / s));
    // c[j] is the coefficient of x^j of det(xI − A_s).
    let mut c = vec![Complex::ZERO; n + 1];
    c[n] = Complex::ONE;
    let mut m = MatrixC::zeros(n);
    for k in 1..=n {
        m = (&a_s * &m).shift(c[n - k + 1]);
        c[n - k] = -(&a_s * &m).trace() / k as f64;
    }
    for (j, cj) in c.iter_mut().enumerate() {
        *cj *= 2f64.powi(e * (n - j) as i32);
    }
    Ok(Polynomial::new(c))
}

/// Rounding-level bound for Horner evaluation of `p` at `z`.
fn eval_error_bound(p: &Polynomial, z: Complex) -> f64 {
    let r = z.abs();
    let deg = p.coeffs().len();
    let mag = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    4.0 * (deg as f64 + 1.0) * f64::EPSILON * mag
}

/// Simultaneous Aberth–Ehrlich iteration. Returns the roots and whether all
/// of them met the stopping rule within `max_iters` sweeps.
pub fn aberth(p: &Polynomial, max_iters: usize) -> (Vec<Complex>, bool) {
    let p = p.monic();
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return (Vec::new(), true),
    };
    let dp = p.derivative(1);
    let coeffs = p.coeffs();
    let radius = (0..d)
        .map(|k| coeffs[k].abs().powf(1.0 / (d - k) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Complex::new(angle.cos(), angle.sin()) * radius
        })
        .collect();
    let mut done = vec![false; d];
    for _ in 0..max_iters {
        for k in 0..d {
            if done[k] {
                continue;
            }
            let pz = p.eval(z[k]);
            if pz.abs() <= eval_error_bound(&p, z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = pz / dp.eval(z[k]);
            let repel: Complex = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).recip())
                .sum();
            let w = ratio / (Complex::ONE - ratio * repel);
            if !w.is_finite() {
                done[k] = true;
                continue;
            }
            z[k] -= w;
            if w.abs() <= 1e-12 * (1.0 + z[k].abs()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return (z, true);
        }
    }
    (z, false)
}

/// Roots of `p` grouped into distinct eigenvalues with multiplicities.
///
/// Distinct values are the roots of the square-free part `p / gcd(p, p′)`;
/// each root of `p` itself is then assigned to the nearest distinct value,
/// which fixes the multiplicities and their sum. A derivative-vanishing count
/// is kept as a cross-check and disagreements become warnings.
pub fn find_roots_with_multiplicity(p: &Polynomial, tol: &Tolerances) -> Result<SpectrumEstimate> {
    let p = p.monic();
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidCondition(
                "polynomial of degree 0 has no roots".into(),
            ))
        }
    };
    let mut warnings = Vec::new();
    let (g, _, _) = Polynomial::bezout(&p, &p.derivative(1), tol);
    let square_free = if g.degree().unwrap_or(0) == 0 {
        p.clone()
    } else {
        p.divmod(&g)?.0.monic()
    };
    let (distinct, ok) = aberth(&square_free, tol.max_iters);
    if !ok {
        return Err(Error::NoConvergence {
            iters: tol.max_iters,
        });
    }
    let (all, _) = if square_free.degree() == Some(deg) {
        (distinct.clone(), true)
    } else {
        aberth(&p, tol.max_iters)
    };

    let max_abs = all.iter().fold(0.0, |m: f64, z| m.max(z.abs()));
    let cluster = tol.cluster * (1.0 + max_abs);
    let mut centers: Vec<Complex> = Vec::new();
    for z in distinct {
        if !centers.iter().any(|c| (*c - z).abs() <= cluster) {
            centers.push(z);
        }
    }

    let mut groups: Vec<Vec<Complex>> = vec![Vec::new(); centers.len()];
    for z in &all {
        let k = (0..centers.len())
            .min_by(|&a, &b| (centers[a] - *z).abs().total_cmp(&(centers[b] - *z).abs()))
            .expect("at least one center");
        groups[k].push(*z);
    }

    let mut pairs: Vec<(Complex, usize)> = Vec::new();
    for (center, group) in centers.iter().zip(&groups) {
        if group.is_empty() {
            warnings.push(format!(
                "square-free root {center} has no nearby root of the full polynomial; dropped"
            ));
            continue;
        }
        let m = group.len();
        pairs.push((polish(&p, *center, m), m));
    }

    let found: usize = pairs.iter().map(|p| p.1).sum();
    if found != deg {
        return Err(Error::InconsistentMultiplicities {
            expected: deg,
            found,
        });
    }

    for &(lambda, m) in &pairs {
        let by_derivative = vanishing_order(&p, lambda, tol);
        if by_derivative != m {
            warnings.push(format!(
                "eigenvalue {lambda}: cluster size {m}, derivative test suggests {by_derivative}"
            ));
        }
    }

    pairs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.lex_cmp(&b.0)));
    Ok(SpectrumEstimate {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        multiplicities: pairs.iter().map(|p| p.1).collect(),
        char_poly: p,
        warnings,
    })
}

/// Newton iteration on `p^(m−1)`, which has a simple root at an
/// `m`-fold root of `p`.
fn polish(p: &Polynomial, start: Complex, m: usize) -> Complex {
    let d0 = p.derivative(m - 1);
    let d1 = d0.derivative(1);
    let mut z = start;
    let mut last = f64::INFINITY;
    for _ in 0..32 {
        let step = d0.eval(z) / d1.eval(z);
        if !step.is_finite() || step.abs() >= last {
            break;
        }
        z -= step;
        last = step.abs();
        if last <= 4.0 * f64::EPSILON * (1.0 + z.abs()) {
            break;
        }
    }
    z
}

/// Number of leading derivatives of `p` that vanish at `lambda` relative to
/// `‖p‖∞ (1 + |λ|)^deg`.
pub fn vanishing_order(p: &Polynomial, lambda: Complex, tol: &Tolerances) -> usize {
    let deg = p.degree().unwrap_or(0);
    let scale = tol.multiplicity * p.norm_inf() * (1.0 + lambda.abs()).powi(deg as i32);
    let taylor = p.taylor_at(lambda, deg + 1);
    let mut fact = 1.0;
    let mut count = 0;
    for (j, t) in taylor.iter().enumerate() {
        if j > 0 {
            fact *= j as f64;
        }
        if (*t * fact).abs() <= scale {
            count += 1;
        } else {
            break;
        }
    }
    count
}

pub fn spectrum_of(a: &MatrixC, tol: &Tolerances) -> Result<SpectrumEstimate> {
    find_roots_with_multiplicity(&characteristic_polynomial(a)?, tol)
}
