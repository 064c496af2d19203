//! Polynomials and functions evaluated at matrices, principal resolvents
//! as spectral projectors.

mod matrix;

pub use matrix::MatrixC;

use crate::error::{Error, Result};
use crate::interp::{self, NewtonForm};
use crate::poly::Polynomial;
use crate::scalar::{Complex, FunctionSpec};
use crate::spectral::{spectrum_of, SpectrumEstimate};
use crate::tol::Tolerances;

/// Horner evaluation `p(A)`.
pub fn poly_at_matrix(p: &Polynomial, a: &MatrixC) -> MatrixC {
    let n = a.dim();
    let mut acc = MatrixC::zeros(n);
    for &c in p.coeffs().iter().rev() {
        acc = (&acc * a).shift(c);
    }
    acc
}

/// `Σ cₖ ∏_{i<k} (A − zᵢI)` by nested multiplication.
pub fn newton_at_matrix(form: &NewtonForm, a: &MatrixC) -> MatrixC {
    let n = a.dim();
    let k = form.coeffs.len();
    let mut acc = MatrixC::scalar(n, form.coeffs[k - 1]);
    for j in (0..k - 1).rev() {
        acc = (&acc * &a.shift(-form.points[j])).shift(form.coeffs[j]);
    }
    acc
}

/// `1e-8 · (1 + ‖A‖_F)^max(mᵢ)` with the default tolerances.
pub fn matrix_tol(a: &MatrixC, spectrum: &SpectrumEstimate, tol: &Tolerances) -> f64 {
    let m = spectrum.multiplicities.iter().copied().max().unwrap_or(1);
    tol.matrix * (1.0 + a.frobenius()).powi(m as i32)
}

fn resolve_spectrum(
    a: &MatrixC,
    spectrum: Option<&SpectrumEstimate>,
    tol: &Tolerances,
) -> Result<SpectrumEstimate> {
    match spectrum {
        Some(s) => {
            if s.dimension() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: s.dimension(),
                });
            }
            Ok(s.clone())
        }
        None => spectrum_of(a, tol),
    }
}

fn pole_to_eigenvalue(e: Error) -> Error {
    match e {
        Error::PoleAtNode { at } => Error::PoleAtEigenvalue { lambda: at },
        other => other,
    }
}

/// `f(A) = L(A)` with `L` interpolating `f` on the spectrum.
pub fn apply_function(
    f: &FunctionSpec,
    a: &MatrixC,
    spectrum: Option<&SpectrumEstimate>,
    tol: &Tolerances,
) -> Result<MatrixC> {
    let s = resolve_spectrum(a, spectrum, tol)?;
    let l = interp::hermite_from_function(f, &s.nodes(), tol).map_err(pole_to_eigenvalue)?;
    Ok(poly_at_matrix(&l, a))
}

/// Same as [`apply_function`], evaluating the Newton form of `L` instead of
/// its monomial expansion.
pub fn apply_function_newton(
    f: &FunctionSpec,
    a: &MatrixC,
    spectrum: Option<&SpectrumEstimate>,
    tol: &Tolerances,
) -> Result<MatrixC> {
    let s = resolve_spectrum(a, spectrum, tol)?;
    let spec = interp::spec_from_function(f, &s.nodes(), tol).map_err(pole_to_eigenvalue)?;
    Ok(newton_at_matrix(&interp::newton_form(&spec, tol)?, a))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inverse {
    pub inverse: MatrixC,
    /// `‖A·A⁻¹ − I‖_F`
    pub residual: f64,
}

/// `A⁻¹` as the interpolant of `1/x` on the spectrum, evaluated at `A`.
///
/// An eigenvalue within `cluster · (1 + max|λ|)` of zero is treated as
/// zero.
pub fn inverse_via_interp(
    a: &MatrixC,
    spectrum: Option<&SpectrumEstimate>,
    tol: &Tolerances,
) -> Result<Inverse> {
    let s = resolve_spectrum(a, spectrum, tol)?;
    let max = s.eigenvalues.iter().fold(0.0, |m: f64, z| m.max(z.abs()));
    if let Some(&lambda) = s
        .eigenvalues
        .iter()
        .find(|z| z.abs() <= tol.cluster * (1.0 + max))
    {
        return Err(Error::SingularMatrix { lambda });
    }
    let inverse = apply_function(&FunctionSpec::Reciprocal, a, Some(&s), tol).map_err(|e| match e {
        Error::PoleAtEigenvalue { lambda } => Error::SingularMatrix { lambda },
        other => other,
    })?;
    let residual = (&(a * &inverse) - &MatrixC::identity(a.dim())).frobenius();
    Ok(Inverse { inverse, residual })
}

/// `exp(tA)`; exactly `I` at `t = 0`.
pub fn matrix_exp(
    a: &MatrixC,
    t: Complex,
    spectrum: Option<&SpectrumEstimate>,
    tol: &Tolerances,
) -> Result<MatrixC> {
    if t == Complex::ZERO {
        return Ok(MatrixC::identity(a.dim()));
    }
    apply_function(&FunctionSpec::ScaledExp(t), a, spectrum, tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub spectrum: SpectrumEstimate,
    /// `Lᵢ(A) = T̂ᵢ(A)`, parallel to the eigenvalues.
    pub resolvents: Vec<MatrixC>,
    /// `(A − λᵢI)·Lᵢ(A)`
    pub nilpotent_parts: Vec<MatrixC>,
}

/// Frobenius residuals of the four resolvent identities. Each check is a
/// `(residual, scale)` pair; the scale is the natural size of the terms.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventReport {
    /// `‖ΣLᵢ − I‖`, scale `√n`.
    pub partition: (f64, f64),
    /// `max ‖LᵢLⱼ‖` over `i ≠ j`, scale `‖Lᵢ‖‖Lⱼ‖`.
    pub orthogonality: (f64, f64),
    /// `max ‖Lᵢ² − Lᵢ‖`, scale `‖Lᵢ‖²`.
    pub idempotency: (f64, f64),
    /// `max ‖(A − λᵢI)^mᵢ Lᵢ‖`, scale `max(‖A − λᵢI‖, ‖A‖)^mᵢ ‖Lᵢ‖`.
    /// The `‖A‖` floor keeps near-scalar matrices from dividing rounding
    /// noise by a vanishing shift.
    pub nilpotency: (f64, f64),
}

impl ResolventReport {
    pub fn checks(&self) -> [(&'static str, (f64, f64)); 4] {
        [
            ("partition", self.partition),
            ("orthogonality", self.orthogonality),
            ("idempotency", self.idempotency),
            ("nilpotency", self.nilpotency),
        ]
    }

    /// Largest residual divided by its scale.
    pub fn max_relative(&self) -> f64 {
        self.checks()
            .iter()
            .map(|(_, (r, s))| if *s > 0.0 { r / s } else { *r })
            .fold(0.0, f64::max)
    }

    pub fn max_absolute(&self) -> f64 {
        self.checks().iter().map(|(_, (r, _))| *r).fold(0.0, f64::max)
    }
}

/// Keeps the larger `residual / scale` ratio.
fn worse(cur: (f64, f64), new: (f64, f64)) -> (f64, f64) {
    let ratio = |p: (f64, f64)| if p.1 > 0.0 { p.0 / p.1 } else { p.0 };
    if ratio(new) > ratio(cur) {
        new
    } else {
        cur
    }
}

pub fn verify_resolvent_identities(decomp: &SpectralDecomposition, a: &MatrixC) -> ResolventReport {
    let n = a.dim();
    let ls = &decomp.resolvents;
    let mut sum = MatrixC::zeros(n);
    for l in ls {
        sum = &sum + l;
    }
    let partition = (
        (&sum - &MatrixC::identity(n)).frobenius(),
        (n as f64).sqrt(),
    );
    let norms: Vec<f64> = ls.iter().map(|l| l.frobenius()).collect();
    let a_norm = a.frobenius();
    let mut orthogonality = (0.0, 1.0);
    let mut idempotency = (0.0, 1.0);
    let mut nilpotency = (0.0, 1.0);
    for (i, li) in ls.iter().enumerate() {
        for (j, lj) in ls.iter().enumerate() {
            if i != j {
                orthogonality = worse(orthogonality, ((li * lj).frobenius(), norms[i] * norms[j]));
            }
        }
        idempotency = worse(
            idempotency,
            ((&(li * li) - li).frobenius(), norms[i] * norms[i]),
        );
        let shifted = a.shift(-decomp.spectrum.eigenvalues[i]);
        let m = decomp.spectrum.multiplicities[i];
        let residual = (&shifted.pow(m) * li).frobenius();
        let scale = shifted.frobenius().max(a_norm).powi(m as i32) * norms[i];
        nilpotency = worse(nilpotency, (residual, scale));
    }
    ResolventReport {
        partition,
        orthogonality,
        idempotency,
        nilpotency,
    }
}

/// Principal resolvents `Lᵢ(A)` with the identities checked.
pub fn resolvents_at_matrix(
    a: &MatrixC,
    spectrum: Option<&SpectrumEstimate>,
    tol: &Tolerances,
) -> Result<SpectralDecomposition> {
    let s = resolve_spectrum(a, spectrum, tol)?;
    let nodes = s.nodes();
    let mut resolvents = Vec::with_capacity(nodes.len());
    let mut nilpotent_parts = Vec::with_capacity(nodes.len());
    for (i, &(lambda, _)) in nodes.iter().enumerate() {
        let l = poly_at_matrix(&interp::principal_resolvent(&nodes, i, tol)?, a);
        nilpotent_parts.push(&a.shift(-lambda) * &l);
        resolvents.push(l);
    }
    let decomp = SpectralDecomposition {
        spectrum: s,
        resolvents,
        nilpotent_parts,
    };
    let limit = matrix_tol(a, &decomp.spectrum, tol);
    let report = verify_resolvent_identities(&decomp, a);
    for (_, (residual, scale)) in report.checks() {
        if residual > limit * scale.max(1.0) {
            return Err(Error::IdentityCheckFailed {
                residual,
                limit: limit * scale.max(1.0),
            });
        }
    }
    Ok(decomp)
}

/// `Σᵢ [Σ_{p<mᵢ} f^(p)(λᵢ)/p! · (A − λᵢI)^p] · Lᵢ(A)`, summed in eigenvalue
/// order.
pub fn taylor_resolvent_apply(
    f: &FunctionSpec,
    a: &MatrixC,
    decomp: &SpectralDecomposition,
    tol: &Tolerances,
) -> Result<MatrixC> {
    let n = a.dim();
    if decomp.spectrum.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: decomp.spectrum.dimension(),
        });
    }
    let mut out = MatrixC::zeros(n);
    for (i, (lambda, m)) in decomp.spectrum.nodes().into_iter().enumerate() {
        let jet = f.jet_of(lambda, m - 1, tol).map_err(pole_to_eigenvalue)?;
        let nil = &decomp.nilpotent_parts[i];
        let mut power = decomp.resolvents[i].clone();
        let mut term = power.scale(jet.coeffs[0]);
        for p in 1..m {
            power = nil * &power;
            term = &term + &power.scale(jet.coeffs[p]);
        }
        out = &out + &term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::characteristic_polynomial;
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(x: f64) -> Complex {
        Complex::real(x)
    }

    fn real(rows: &[&[f64]]) -> MatrixC {
        MatrixC::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn sample_a() -> MatrixC {
        real(&[&[9.0, -15.0, -25.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])
    }

    fn close(a: &MatrixC, b: &MatrixC, eps: f64) {
        let d = (a - b).max_abs();
        assert!(d <= eps, "max difference {d:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn rotation_squared_plus_one() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let a = real(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert_eq!(poly_at_matrix(&p, &a), MatrixC::zeros(2));
    }

    #[test]
    fn sample_shifted_product() {
        let p = Polynomial::from_real(&[-5.0, -4.0, 1.0]);
        let expect = real(&[
            &[25.0, -100.0, -125.0],
            &[5.0, -20.0, -25.0],
            &[1.0, -4.0, -5.0],
        ]);
        close(&poly_at_matrix(&p, &sample_a()), &expect, 1e-12);
    }

    #[test]
    fn sample_inverse() {
        let expect = real(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[-0.04, 0.36, -0.6]]);
        let inv = inverse_via_interp(&sample_a(), None, &tol()).unwrap();
        close(&inv.inverse, &expect, 1e-10);
        assert!(inv.residual < 1e-10);
        let direct = apply_function(&FunctionSpec::Reciprocal, &sample_a(), None, &tol()).unwrap();
        close(&direct, &expect, 1e-10);
    }

    #[test]
    fn small_inverses() {
        let inv = inverse_via_interp(&MatrixC::identity(3), None, &tol()).unwrap();
        close(&inv.inverse, &MatrixC::identity(3), 1e-14);
        let d = MatrixC::diagonal(&[c(2.0), c(4.0)]);
        let inv = inverse_via_interp(&d, None, &tol()).unwrap();
        close(&inv.inverse, &MatrixC::diagonal(&[c(0.5), c(0.25)]), 1e-14);
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            inverse_via_interp(&a, None, &tol()),
            Err(Error::SingularMatrix { .. })
        ));
        assert!(matches!(
            apply_function(&FunctionSpec::Reciprocal, &a, None, &tol()),
            Err(Error::PoleAtEigenvalue { .. })
        ));
    }

    #[test]
    fn low_degree_polynomial_is_itself() {
        let p = Polynomial::from_real(&[1.0, -2.0, 0.5]);
        let a = sample_a();
        let via = apply_function(&FunctionSpec::Polynomial(p.clone()), &a, None, &tol()).unwrap();
        close(&via, &poly_at_matrix(&p, &a), 1e-9);
    }

    #[test]
    fn exponential_examples() {
        let a = sample_a();
        assert_eq!(matrix_exp(&a, Complex::ZERO, None, &tol()).unwrap(), MatrixC::identity(3));
        let nil = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        close(
            &matrix_exp(&nil, Complex::ONE, None, &tol()).unwrap(),
            &real(&[&[1.0, 1.0], &[0.0, 1.0]]),
            1e-14,
        );
    }

    #[test]
    fn newton_path_matches_monomial_path() {
        let a = sample_a();
        let x = apply_function(&FunctionSpec::Exp, &a, None, &tol()).unwrap();
        let y = apply_function_newton(&FunctionSpec::Exp, &a, None, &tol()).unwrap();
        assert!((&x - &y).frobenius() <= 1e-10 * x.frobenius());
    }

    #[test]
    fn supplied_spectrum_dimension_checked() {
        let s = SpectrumEstimate::from_pairs(&[(c(1.0), 1)], &tol()).unwrap();
        assert_eq!(
            apply_function(&FunctionSpec::Exp, &sample_a(), Some(&s), &tol()),
            Err(Error::DimensionMismatch { expected: 3, found: 1 })
        );
    }

    #[test]
    fn resolvents_of_diagonal() {
        let a = MatrixC::diagonal(&[c(1.0), c(2.0)]);
        let d = resolvents_at_matrix(&a, None, &tol()).unwrap();
        let i1 = d.spectrum.eigenvalues.iter().position(|z| (*z - c(1.0)).abs() < 1e-9).unwrap();
        close(&d.resolvents[i1], &MatrixC::diagonal(&[c(1.0), c(0.0)]), 1e-12);
        close(&d.resolvents[1 - i1], &MatrixC::diagonal(&[c(0.0), c(1.0)]), 1e-12);
        assert!(verify_resolvent_identities(&d, &a).max_absolute() < 1e-14);
    }

    #[test]
    fn single_eigenvalue_resolvent_is_identity() {
        let j = real(&[&[2.0, 1.0, 0.0], &[0.0, 2.0, 1.0], &[0.0, 0.0, 2.0]]);
        let d = resolvents_at_matrix(&j, None, &tol()).unwrap();
        assert_eq!(d.resolvents.len(), 1);
        close(&d.resolvents[0], &MatrixC::identity(3), 0.0);
        let report = verify_resolvent_identities(&d, &j);
        assert!(report.max_absolute() <= 1e-10);
        let shifted = j.shift(c(-2.0));
        assert!(shifted.pow(2).frobenius() > 0.5);
        assert_eq!(shifted.pow(3), MatrixC::zeros(3));
    }

    #[test]
    fn sample_resolvents() {
        let a = sample_a();
        let d = resolvents_at_matrix(&a, None, &tol()).unwrap();
        assert_eq!(d.spectrum.multiplicities, vec![2, 1]);
        let ranks: Vec<usize> = d
            .resolvents
            .iter()
            .map(|l| crate::linalg::svd(l).rank(1e-8))
            .collect();
        assert_eq!(ranks, vec![2, 1]);
        assert!(verify_resolvent_identities(&d, &a).max_absolute() <= 1e-9);
        let inv = taylor_resolvent_apply(&FunctionSpec::Reciprocal, &a, &d, &tol()).unwrap();
        let expect = real(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[-0.04, 0.36, -0.6]]);
        close(&inv, &expect, 1e-10);
    }

    #[test]
    fn single_eigenvalue_taylor_formula() {
        let j = real(&[&[0.5, 1.0], &[0.0, 0.5]]);
        let d = resolvents_at_matrix(&j, None, &tol()).unwrap();
        let e = taylor_resolvent_apply(&FunctionSpec::Exp, &j, &d, &tol()).unwrap();
        let h = 0.5f64.exp();
        close(&e, &real(&[&[h, h], &[0.0, h]]), 1e-9);
    }

    fn small_matrix() -> impl Strategy<Value = MatrixC> {
        (2usize..5).prop_flat_map(|n| {
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
                MatrixC::from_rows(
                    v.chunks(n)
                        .map(|r| r.iter().map(|&(x, y)| Complex::new(x, y)).collect())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn cayley_hamilton(a in small_matrix()) {
            let p = characteristic_polynomial(&a).unwrap();
            let n = a.dim() as i32;
            let r = poly_at_matrix(&p, &a).frobenius();
            prop_assert!(r <= 1e-8 * (1.0 + a.frobenius()).powi(n));
        }

        #[test]
        fn exponential_group_law(a in small_matrix(), s in -1.0f64..1.0, t in -1.0f64..1.0) {
            let tl = tol();
            let spec = spectrum_of(&a, &tl).unwrap();
            let lhs = matrix_exp(&a, c(s + t), Some(&spec), &tl).unwrap();
            let rhs = &matrix_exp(&a, c(s), Some(&spec), &tl).unwrap()
                * &matrix_exp(&a, c(t), Some(&spec), &tl).unwrap();
            prop_assert!((&lhs - &rhs).frobenius() <= 1e-7 * (1.0 + lhs.frobenius()));
        }

        #[test]
        fn high_degree_reduces_mod_char_poly(a in small_matrix(),
            coeffs in prop::collection::vec(-1.0f64..1.0, 10)) {
            let p = Polynomial::from_real(&coeffs);
            let t = characteristic_polynomial(&a).unwrap();
            let (_, r) = p.divmod(&t).unwrap();
            let direct = poly_at_matrix(&p, &a);
            let reduced = poly_at_matrix(&r, &a);
            prop_assert!((&direct - &reduced).frobenius() <= 1e-7 * (1.0 + direct.frobenius()));
        }
    }
}
