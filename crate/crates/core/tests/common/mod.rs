//! Independent oracles and random problem generators for the integration
//! tests. Nothing here goes through the interpolation machinery.

#![allow(dead_code)]

use matfun::interp::{InterpolationNode, InterpolationSpec};
use matfun::{Complex, MatrixC, Polynomial, Tolerances};
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type NaComplex = nalgebra::Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(x: f64) -> Complex {
    Complex::real(x)
}

pub fn to_na(a: &MatrixC) -> DMatrix<NaComplex> {
    let n = a.dim();
    DMatrix::from_fn(n, n, |i, j| NaComplex::new(a[(i, j)].re, a[(i, j)].im))
}

pub fn from_na(m: &DMatrix<NaComplex>) -> MatrixC {
    let rows = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| Complex::new(m[(i, j)].re, m[(i, j)].im)).collect())
        .collect();
    MatrixC::from_rows(rows).unwrap()
}

/// Inverse by LU with partial pivoting (nalgebra).
pub fn oracle_inverse(a: &MatrixC) -> Option<MatrixC> {
    to_na(a).try_inverse().map(|m| from_na(&m))
}

pub fn condition(a: &MatrixC) -> f64 {
    match oracle_inverse(a) {
        Some(inv) => a.frobenius() * inv.frobenius(),
        None => f64::INFINITY,
    }
}

/// `exp(A)` by Taylor series on `A / 2^s`, then `s` squarings.
pub fn oracle_expm(a: &MatrixC) -> MatrixC {
    let n = a.dim();
    let norm = a.frobenius();
    let s = if norm > 0.25 { (norm / 0.25).log2().ceil() as i32 } else { 0 };
    let x = a.scale(c(0.5f64.powi(s)));
    let mut term = MatrixC::identity(n);
    let mut sum = MatrixC::identity(n);
    for k in 1..=30 {
        term = (&term * &x).scale(c(1.0 / k as f64));
        sum = &sum + &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Classical RK4 for `y′ = Ay` with a fixed step.
pub fn oracle_rk4(a: &MatrixC, y0: &[Complex], t: f64, h: f64) -> Vec<Complex> {
    let steps = (t / h).round().max(1.0) as usize;
    let h = t / steps as f64;
    let axpy = |y: &[Complex], k: &[Complex], s: f64| -> Vec<Complex> {
        y.iter().zip(k).map(|(&a, &b)| a + b * s).collect()
    };
    let mut y = y0.to_vec();
    for _ in 0..steps {
        let k1 = a.matvec(&y);
        let k2 = a.matvec(&axpy(&y, &k1, h / 2.0));
        let k3 = a.matvec(&axpy(&y, &k2, h / 2.0));
        let k4 = a.matvec(&axpy(&y, &k3, h));
        for i in 0..y.len() {
            y[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    y
}

/// Eigenvalues of a real matrix (nalgebra).
pub fn oracle_eigenvalues(rows: &[Vec<f64>]) -> Vec<Complex> {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    m.complex_eigenvalues()
        .iter()
        .map(|z| Complex::new(z.re, z.im))
        .collect()
}

/// Hermite interpolation by solving the confluent Vandermonde system with
/// full pivoting. Row `(λ, p)` reads `Σₖ aₖ C(k, p) λ^(k−p) = data[p]`.
pub fn oracle_hermite(spec: &InterpolationSpec) -> Polynomial {
    let n = spec.size();
    let mut m = DMatrix::<NaComplex>::zeros(n, n);
    let mut rhs = nalgebra::DVector::<NaComplex>::zeros(n);
    let mut row = 0;
    for node in spec.nodes() {
        let l = NaComplex::new(node.lambda.re, node.lambda.im);
        for (p, d) in node.data.iter().enumerate() {
            for k in p..n {
                m[(row, k)] = l.powi((k - p) as i32) * binomial(k, p);
            }
            rhs[row] = NaComplex::new(d.re, d.im);
            row += 1;
        }
    }
    let sol = m.full_piv_lu().solve(&rhs).expect("nonsingular confluent system");
    Polynomial::new(sol.iter().map(|z| Complex::new(z.re, z.im)).collect())
}

pub fn binomial(k: usize, p: usize) -> f64 {
    (0..p).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64)
}

pub fn random_complex(r: &mut ChaCha8Rng, scale: f64) -> Complex {
    Complex::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale))
}

pub fn gaussian_complex(r: &mut ChaCha8Rng) -> Complex {
    let re: f64 = r.sample(StandardNormal);
    let im: f64 = r.sample(StandardNormal);
    Complex::new(re, im)
}

/// `k` points in the disk of radius `radius`, pairwise at least `sep` apart.
pub fn separated_points(r: &mut ChaCha8Rng, k: usize, radius: f64, sep: f64) -> Vec<Complex> {
    let mut pts: Vec<Complex> = Vec::with_capacity(k);
    while pts.len() < k {
        let z = random_complex(r, radius);
        if z.abs() <= radius && pts.iter().all(|p| (*p - z).abs() >= sep) {
            pts.push(z);
        }
    }
    pts
}

/// Random nodes with multiplicities summing to `n`.
pub fn random_nodes(r: &mut ChaCha8Rng, n: usize, radius: f64, sep: f64) -> Vec<(Complex, usize)> {
    let k = r.gen_range(1..=n);
    let pts = separated_points(r, k, radius, sep);
    let mut mult = vec![1usize; k];
    for _ in k..n {
        let j = r.gen_range(0..k);
        mult[j] += 1;
    }
    pts.into_iter().zip(mult).collect()
}

pub fn random_spec(r: &mut ChaCha8Rng, n: usize) -> InterpolationSpec {
    let nodes = random_nodes(r, n, 1.5, 0.4);
    let built = nodes
        .into_iter()
        .map(|(lambda, m)| {
            let data = (0..m).map(|_| random_complex(r, 1.0)).collect();
            InterpolationNode::from_taylor(lambda, data).unwrap()
        })
        .collect();
    InterpolationSpec::new(built, &Tolerances::default()).unwrap()
}

pub fn random_poly(r: &mut ChaCha8Rng, deg: usize) -> Polynomial {
    Polynomial::new((0..=deg).map(|_| random_complex(r, 1.0)).collect())
}

/// Block structure of a constructed matrix: `(eigenvalue, block sizes)`.
#[derive(Clone, Debug)]
pub struct Structure {
    pub groups: Vec<(Complex, Vec<usize>)>,
}

impl Structure {
    pub fn dim(&self) -> usize {
        self.groups.iter().flat_map(|g| g.1.iter()).sum()
    }

    pub fn multiplicities(&self) -> Vec<(Complex, usize)> {
        self.groups
            .iter()
            .map(|(l, b)| (*l, b.iter().sum()))
            .collect()
    }

    pub fn jordan_matrix(&self) -> MatrixC {
        let n = self.dim();
        let mut j = MatrixC::zeros(n);
        let mut off = 0;
        for (lambda, blocks) in &self.groups {
            for &size in blocks {
                for k in 0..size {
                    j[(off + k, off + k)] = *lambda;
                    if k + 1 < size {
                        j[(off + k, off + k + 1)] = Complex::ONE;
                    }
                }
                off += size;
            }
        }
        j
    }

    /// Sorted `(re, im, size)` keys for multiset comparison.
    pub fn block_keys(&self) -> Vec<(i64, i64, usize)> {
        let mut keys: Vec<(i64, i64, usize)> = self
            .groups
            .iter()
            .flat_map(|(l, b)| b.iter().map(move |&s| key(*l, s)))
            .collect();
        keys.sort();
        keys
    }
}

/// Eigenvalue rounded to 1e-4 plus block size.
pub fn key(lambda: Complex, size: usize) -> (i64, i64, usize) {
    ((lambda.re * 1e4).round() as i64, (lambda.im * 1e4).round() as i64, size)
}

/// Random Jordan structure of dimension `n` with eigenvalues in `|λ| ≤ 2`,
/// pairwise at least 0.5 apart, blocks of size at most `max_block`.
pub fn random_structure(r: &mut ChaCha8Rng, n: usize, max_block: usize) -> Structure {
    let k = r.gen_range(1..=n.min(4));
    let pts = separated_points(r, k, 2.0, 0.5);
    let mut groups: Vec<(Complex, Vec<usize>)> = pts.into_iter().map(|p| (p, Vec::new())).collect();
    let mut left = n;
    let mut g = 0;
    while left > 0 {
        let size = r.gen_range(1..=left.min(max_block));
        let target = if g < k { g } else { r.gen_range(0..k) };
        groups[target].1.push(size);
        left -= size;
        g += 1;
    }
    groups.retain(|grp| !grp.1.is_empty());
    Structure { groups }
}

/// Gaussian complex matrix with Frobenius condition number at most `kappa`.
pub fn random_basis(r: &mut ChaCha8Rng, n: usize, kappa: f64) -> MatrixC {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| gaussian_complex(r)).collect())
            .collect();
        let p = MatrixC::from_rows(rows).unwrap();
        if condition(&p) <= kappa {
            return p;
        }
    }
}

/// `P·J₀·P⁻¹` for a random structure.
pub struct Constructed {
    pub a: MatrixC,
    pub structure: Structure,
}

pub fn constructed_matrix(r: &mut ChaCha8Rng, n: usize, max_block: usize) -> Constructed {
    let structure = random_structure(r, n, max_block);
    let p = random_basis(r, n, 100.0);
    let inv = oracle_inverse(&p).unwrap();
    let a = &(&p * &structure.jordan_matrix()) * &inv;
    Constructed { a, structure }
}

/// The 200-matrix suite shared by several checks.
pub fn matrix_suite(seed: u64, count: usize) -> Vec<Constructed> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=8);
            constructed_matrix(&mut r, n, 3)
        })
        .collect()
}

pub fn rel_diff(x: &MatrixC, y: &MatrixC) -> f64 {
    (x - y).frobenius() / y.frobenius().max(f64::MIN_POSITIVE)
}

pub fn sample_a() -> MatrixC {
    MatrixC::from_real_rows(&[
        vec![9.0, -15.0, -25.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ])
    .unwrap()
}
