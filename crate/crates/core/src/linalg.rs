//! Dense helpers: one-sided Jacobi SVD and LU with partial pivoting.

use crate::matfun::MatrixC;
use crate::scalar::Complex;

/// `Σ conj(aᵢ)·bᵢ`
pub fn dot(a: &[Complex], b: &[Complex]) -> Complex {
    a.iter().zip(b).map(|(&x, &y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Singular value decomposition `A·V = U·diag(s)`, values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Left singular vectors; zero vectors where `s` is zero.
    pub u: Vec<Vec<Complex>>,
    pub s: Vec<f64>,
    /// Right singular vectors (a unitary basis of the column-index space).
    pub v: Vec<Vec<Complex>>,
}

impl Svd {
    /// Count of singular values above `rel · s_max`.
    pub fn rank(&self, rel: f64) -> usize {
        let cut = rel * self.s.first().copied().unwrap_or(0.0);
        self.s.iter().filter(|&&x| x > cut).count()
    }
}

const SWEEPS: usize = 80;

/// Hestenes one-sided Jacobi on the given columns (all of equal length).
pub fn svd_columns(cols: &[Vec<Complex>]) -> Svd {
    let k = cols.len();
    let mut a: Vec<Vec<Complex>> = cols.to_vec();
    let mut v: Vec<Vec<Complex>> = (0..k)
        .map(|j| {
            let mut e = vec![Complex::ZERO; k];
            e[j] = Complex::ONE;
            e
        })
        .collect();
    for _ in 0..SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = norm(&a[p]).powi(2);
                let beta = norm(&a[q]).powi(2);
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.abs();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    let sig: Vec<f64> = a.iter().map(|col| norm(col)).collect();
    order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]).then(i.cmp(&j)));
    let mut u = Vec::with_capacity(k);
    let mut s = Vec::with_capacity(k);
    let mut vs = Vec::with_capacity(k);
    for &j in &order {
        let sj = sig[j];
        u.push(if sj > 0.0 {
            a[j].iter().map(|&z| z / sj).collect()
        } else {
            a[j].clone()
        });
        s.push(sj);
        vs.push(v[j].clone());
    }
    Svd { u, s, v: vs }
}

/// Column pair update with `q` pre-multiplied by `conj(phase)`.
fn rotate(m: &mut [Vec<Complex>], p: usize, q: usize, phase: Complex, c: f64, s: f64) {
    let ph = phase.conj();
    for r in 0..m[p].len() {
        let x = m[p][r];
        let y = m[q][r] * ph;
        m[p][r] = x * c - y * s;
        m[q][r] = x * s + y * c;
    }
}

pub fn svd(a: &MatrixC) -> Svd {
    svd_columns(&a.columns())
}

/// Orthonormal basis of the column span, using relative threshold `rel`.
pub fn range_basis(cols: &[Vec<Complex>], rel: f64) -> Vec<Vec<Complex>> {
    let d = svd_columns(cols);
    let r = d.rank(rel);
    d.u.into_iter().take(r).collect()
}

/// Orthonormal basis of the null space of a square matrix.
pub fn kernel_basis(a: &MatrixC, rel: f64) -> Vec<Vec<Complex>> {
    let d = svd(a);
    let r = d.rank(rel);
    d.v.into_iter().skip(r).collect()
}

/// LU factorisation with partial pivoting, `P·A = L·U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: MatrixC,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// `None` if a pivot is exactly zero.
    pub fn new(a: &MatrixC) -> Option<Lu> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs()))
                .unwrap();
            if lu[(piv, k)].abs() == 0.0 {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = t;
                }
                perm.swap(k, piv);
                sign = -sign;
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Some(Lu { lu, perm, sign })
    }

    pub fn solve(&self, b: &[Complex]) -> Vec<Complex> {
        let n = self.lu.dim();
        let mut x: Vec<Complex> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> MatrixC {
        let n = self.lu.dim();
        let cols: Vec<Vec<Complex>> = (0..n)
            .map(|j| {
                let mut e = vec![Complex::ZERO; n];
                e[j] = Complex::ONE;
                self.solve(&e)
            })
            .collect();
        MatrixC::from_columns(&cols).expect("square by construction")
    }

    pub fn determinant(&self) -> Complex {
        (0..self.lu.dim())
            .map(|i| self.lu[(i, i)])
            .fold(Complex::real(self.sign), |acc, d| acc * d)
    }
}

/// `‖A‖_F · ‖A⁻¹‖_F`, infinite for an exactly singular matrix.
pub fn condition_estimate(a: &MatrixC) -> f64 {
    match Lu::new(a) {
        Some(lu) => a.frobenius() * lu.inverse().frobenius(),
        None => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MatrixC {
        MatrixC::from_rows(vec![
            vec![Complex::new(1.0, 2.0), Complex::new(0.5, 0.0), Complex::new(-1.0, 1.0)],
            vec![Complex::new(0.0, -1.0), Complex::new(3.0, 0.5), Complex::new(2.0, 0.0)],
            vec![Complex::new(1.5, 0.0), Complex::new(-2.0, 1.0), Complex::new(0.0, 0.25)],
        ])
        .unwrap()
    }

    #[test]
    fn svd_reconstructs() {
        let a = sample();
        let d = svd(&a);
        for (j, vj) in d.v.iter().enumerate() {
            let av = a.matvec(vj);
            for (x, y) in av.iter().zip(&d.u[j]) {
                assert!((*x - *y * d.s[j]).abs() < 1e-13);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let g = dot(&d.v[i], &d.v[j]);
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((g - Complex::real(e)).abs() < 1e-14);
            }
        }
        assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rank_and_kernel_of_rank_one() {
        let u = [Complex::new(1.0, 1.0), Complex::real(2.0), Complex::new(0.0, -1.0)];
        let w = [Complex::real(1.0), Complex::new(0.0, 3.0), Complex::real(-1.0)];
        let mut a = MatrixC::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                a[(i, j)] = u[i] * w[j].conj();
            }
        }
        let d = svd(&a);
        assert_eq!(d.rank(1e-10), 1);
        let ker = kernel_basis(&a, 1e-10);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(norm(&a.matvec(v)) < 1e-13);
        }
        let range = range_basis(&a.columns(), 1e-10);
        assert_eq!(range.len(), 1);
    }

    #[test]
    fn lu_inverse_and_determinant() {
        let a = sample();
        let lu = Lu::new(&a).unwrap();
        let prod = &a * &lu.inverse();
        assert!((&prod - &MatrixC::identity(3)).frobenius() < 1e-14);
        let diag = MatrixC::diagonal(&[Complex::real(2.0), Complex::real(-3.0)]);
        let d = Lu::new(&diag).unwrap().determinant();
        assert!((d - Complex::real(-6.0)).abs() < 1e-15);
        assert!(Lu::new(&MatrixC::zeros(2)).is_none());
    }
}
