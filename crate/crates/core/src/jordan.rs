//! Jordan normal form assembled from the resolvent projectors.
//!
//! Each generalized eigenspace is the range of a projector `Lᵢ(A)`. Inside
//! it, `A − λI` is nilpotent and its cycles are built greedily from the
//! highest grade down.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{self, dot, svd_columns};
use crate::matfun::{resolvents_at_matrix, MatrixC, SpectralDecomposition};
use crate::scalar::Complex;
use crate::spectral::MAX_DIM;
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JordanBlock {
    pub lambda: Complex,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanForm {
    pub p: MatrixC,
    pub j: MatrixC,
    pub blocks: Vec<JordanBlock>,
    /// `‖AP − PJ‖_F`
    pub residual: f64,
}

/// Orthonormal basis of the range of `Lᵢ(A)`.
pub fn generalized_eigenspace_basis(
    decomp: &SpectralDecomposition,
    i: usize,
    tol: &Tolerances,
) -> Result<Vec<Vec<Complex>>> {
    let len = decomp.resolvents.len();
    if i >= len {
        return Err(Error::InvalidIndex { index: i, len });
    }
    let m = decomp.spectrum.multiplicities[i];
    let d = linalg::svd(&decomp.resolvents[i]);
    let rank = d.rank(tol.rank);
    if rank != m {
        return Err(Error::RankMismatch {
            expected: m,
            found: rank,
        });
    }
    Ok(d.u.into_iter().take(m).collect())
}

/// Coordinates of `x` in the orthonormal basis `q`.
fn coords(q: &[Vec<Complex>], x: &[Complex]) -> Vec<Complex> {
    q.iter().map(|col| dot(col, x)).collect()
}

fn combine(q: &[Vec<Complex>], c: &[Complex]) -> Vec<Complex> {
    let mut out = vec![Complex::ZERO; q[0].len()];
    for (col, &w) in q.iter().zip(c) {
        for (o, &v) in out.iter_mut().zip(col) {
            *o += v * w;
        }
    }
    out
}

/// Removes the components along the orthonormal set `basis`.
fn project_out(basis: &[Vec<Complex>], v: &[Complex]) -> Vec<Complex> {
    let mut out = v.to_vec();
    for b in basis {
        let w = dot(b, &out);
        for (o, &x) in out.iter_mut().zip(b) {
            *o -= x * w;
        }
    }
    out
}

/// Small dense operator on coordinate vectors, stored by columns.
struct Op {
    cols: Vec<Vec<Complex>>,
}

impl Op {
    fn apply(&self, x: &[Complex]) -> Vec<Complex> {
        combine(&self.cols, x)
    }
}

/// Orthonormal basis of `{x : P⊥ B x = 0}` where `P⊥` projects out `lower`.
fn kernel_over(b: &Op, lower: &[Vec<Complex>], thresh: f64) -> Vec<Vec<Complex>> {
    let cols: Vec<Vec<Complex>> = b.cols.iter().map(|c| project_out(lower, c)).collect();
    let d = svd_columns(&cols);
    let rank = d.s.iter().filter(|&&s| s > thresh).count();
    d.v.into_iter().skip(rank).collect()
}

/// Cycles of generalized eigenvectors spanning `subspace`, each returned
/// generator first: `v, (A − λI)v, …`.
///
/// `subspace` must be orthonormal and invariant under `A`.
pub fn cycle_basis(
    a: &MatrixC,
    lambda: Complex,
    subspace: &[Vec<Complex>],
    tol: &Tolerances,
) -> Result<Vec<Vec<Vec<Complex>>>> {
    let m = subspace.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let shifted = a.shift(-lambda);
    let b = Op {
        cols: subspace
            .iter()
            .map(|q| coords(subspace, &shifted.matvec(q)))
            .collect(),
    };
    let thresh = tol.jordan * a.frobenius().max(f64::MIN_POSITIVE);

    // kernels[k] is an orthonormal basis of ker B^(k+1).
    let mut kernels: Vec<Vec<Vec<Complex>>> = Vec::new();
    let mut lower: Vec<Vec<Complex>> = Vec::new();
    while lower.len() < m {
        let next = kernel_over(&b, &lower, thresh);
        if next.len() <= lower.len() {
            return Err(Error::DependentCycles);
        }
        kernels.push(next.clone());
        lower = next;
    }
    let dims: Vec<usize> = std::iter::once(0)
        .chain(kernels.iter().map(|k| k.len()))
        .collect();
    let q = kernels.len();

    // Generators in coordinates, with their chain lengths.
    let mut gens: Vec<(Vec<Complex>, usize)> = Vec::new();
    for k in (1..=q).rev() {
        let above = if k < q { dims[k + 1] - dims[k] } else { 0 };
        let exact = (dims[k] - dims[k - 1]) - above;
        if exact == 0 {
            continue;
        }
        let mut span: Vec<Vec<Complex>> = if k >= 2 {
            kernels[k - 2].clone()
        } else {
            Vec::new()
        };
        for (g, len) in &gens {
            let mut v = g.clone();
            for _ in 0..len - k {
                v = b.apply(&v);
            }
            span.push(v);
        }
        let span = if span.is_empty() {
            span
        } else {
            linalg::range_basis(&span, 1e-12)
        };
        let candidates: Vec<Vec<Complex>> = kernels[k - 1]
            .iter()
            .map(|v| project_out(&span, v))
            .collect();
        let d = svd_columns(&candidates);
        if d.s.len() < exact || d.s[exact - 1] <= tol.jordan {
            return Err(Error::DependentCycles);
        }
        for u in d.u.into_iter().take(exact) {
            gens.push((u, k));
        }
    }

    let cycles = gens
        .into_iter()
        .map(|(g, len)| {
            let mut chain = Vec::with_capacity(len);
            let mut v = g;
            for _ in 0..len {
                chain.push(combine(subspace, &v));
                v = b.apply(&v);
            }
            chain
        })
        .collect();
    Ok(cycles)
}

/// Lexicographic on `(re, im)`, real parts equal within `eps`.
fn eigen_order(a: Complex, b: Complex, eps: f64) -> Ordering {
    if (a.re - b.re).abs() <= eps * (1.0 + a.abs().max(b.abs())) {
        a.im.total_cmp(&b.im)
    } else {
        a.re.total_cmp(&b.re)
    }
}

pub fn jordan_form(a: &MatrixC, tol: &Tolerances) -> Result<JordanForm> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::TooLarge { n, max: MAX_DIM });
    }
    let decomp = resolvents_at_matrix(a, None, tol)?;
    let mut blocks: Vec<(JordanBlock, Vec<Vec<Complex>>)> = Vec::new();
    for i in 0..decomp.resolvents.len() {
        let q = generalized_eigenspace_basis(&decomp, i, tol)?;
        let m = q.len();
        // Trace of A restricted to the subspace, divided by its dimension.
        let lambda = q
            .iter()
            .map(|v| dot(v, &a.matvec(v)))
            .sum::<Complex>()
            / m as f64;
        for chain in cycle_basis(a, lambda, &q, tol)? {
            let size = chain.len();
            let mut cols = chain;
            cols.reverse();
            blocks.push((JordanBlock { lambda, size }, cols));
        }
    }
    blocks.sort_by(|(x, _), (y, _)| {
        eigen_order(x.lambda, y.lambda, tol.cluster).then(y.size.cmp(&x.size))
    });

    let mut p_cols = Vec::with_capacity(n);
    let mut j = MatrixC::zeros(n);
    let mut offset = 0;
    for (block, cols) in &blocks {
        for k in 0..block.size {
            j[(offset + k, offset + k)] = block.lambda;
            if k + 1 < block.size {
                j[(offset + k, offset + k + 1)] = Complex::ONE;
            }
        }
        offset += block.size;
        p_cols.extend(cols.iter().cloned());
    }
    if p_cols.len() != n {
        return Err(Error::DependentCycles);
    }
    let p = MatrixC::from_columns(&p_cols)?;
    let residual = (&(a * &p) - &(&p * &j)).frobenius();
    let kappa = linalg::condition_estimate(&p);
    if !kappa.is_finite() {
        return Err(Error::DependentCycles);
    }
    let limit = tol.jordan * a.frobenius().max(f64::MIN_POSITIVE) * kappa;
    if residual > limit {
        return Err(Error::VerificationFailed { residual, limit });
    }
    Ok(JordanForm {
        p,
        j,
        blocks: blocks.into_iter().map(|(b, _)| b).collect(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Lu;

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

    fn sizes_of(f: &JordanForm) -> Vec<(i64, usize)> {
        let mut v: Vec<(i64, usize)> = f
            .blocks
            .iter()
            .map(|b| (b.lambda.re.round() as i64, b.size))
            .collect();
        v.sort();
        v
    }

    fn reconstructs(a: &MatrixC, f: &JordanForm) {
        let inv = Lu::new(&f.p).unwrap().inverse();
        let back = &(&f.p * &f.j) * &inv;
        assert!((&back - a).frobenius() <= 1e-6 * a.frobenius());
    }

    #[test]
    fn sample_matrix() {
        let a = sample_a();
        let f = jordan_form(&a, &tol()).unwrap();
        assert_eq!(sizes_of(&f), vec![(-1, 1), (5, 2)]);
        assert_eq!(f.blocks[0].size, 1);
        reconstructs(&a, &f);
    }

    #[test]
    fn sample_generalized_eigenspace() {
        let a = sample_a();
        let d = resolvents_at_matrix(&a, None, &tol()).unwrap();
        let i = d.spectrum.multiplicities.iter().position(|&m| m == 2).unwrap();
        let basis = generalized_eigenspace_basis(&d, i, &tol()).unwrap();
        assert_eq!(basis.len(), 2);
        let sq = a.shift(c(-5.0)).pow(2);
        for v in &basis {
            assert!(linalg::norm(&sq.matvec(v)) <= 1e-8);
        }
        let cycles = cycle_basis(&a, c(5.0), &basis, &tol()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
    }

    #[test]
    fn diagonal_matrix() {
        let a = MatrixC::diagonal(&[c(3.0), c(3.0), c(7.0)]);
        let f = jordan_form(&a, &tol()).unwrap();
        assert_eq!(sizes_of(&f), vec![(3, 1), (3, 1), (7, 1)]);
        let d = resolvents_at_matrix(&a, None, &tol()).unwrap();
        let basis = generalized_eigenspace_basis(&d, 0, &tol()).unwrap();
        for v in &basis {
            assert!(v[2].abs() < 1e-12);
        }
        let cycles = cycle_basis(&a, c(3.0), &basis, &tol()).unwrap();
        assert!(cycles.iter().all(|cyc| cyc.len() == 1));
    }

    #[test]
    fn nilpotent_block() {
        let a = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let f = jordan_form(&a, &tol()).unwrap();
        assert_eq!(f.blocks, vec![JordanBlock { lambda: c(0.0), size: 2 }]);
        assert_eq!(f.j, a);
    }

    #[test]
    fn mixed_blocks_same_eigenvalue() {
        let a = real(&[&[2.0, 1.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 2.0]]);
        let d = resolvents_at_matrix(&a, None, &tol()).unwrap();
        let basis = generalized_eigenspace_basis(&d, 0, &tol()).unwrap();
        assert_eq!(basis.len(), 3);
        let mut lens: Vec<usize> = cycle_basis(&a, c(2.0), &basis, &tol())
            .unwrap()
            .iter()
            .map(|c| c.len())
            .collect();
        lens.sort();
        assert_eq!(lens, vec![1, 2]);
        let f = jordan_form(&a, &tol()).unwrap();
        assert_eq!(f.blocks.iter().map(|b| b.size).collect::<Vec<_>>(), vec![2, 1]);
        reconstructs(&a, &f);
    }

    #[test]
    fn jordan_block_space_is_everything() {
        let a = real(&[&[4.0, 1.0, 0.0], &[0.0, 4.0, 1.0], &[0.0, 0.0, 4.0]]);
        let d = resolvents_at_matrix(&a, None, &tol()).unwrap();
        assert_eq!(generalized_eigenspace_basis(&d, 0, &tol()).unwrap().len(), 3);
        let f = jordan_form(&a, &tol()).unwrap();
        assert_eq!(f.blocks.len(), 1);
        assert_eq!(f.blocks[0].size, 3);
    }

    #[test]
    fn block_order_is_lexicographic() {
        let a = MatrixC::diagonal(&[c(7.0), Complex::new(1.0, 1.0), Complex::new(1.0, -1.0), c(-2.0)]);
        let f = jordan_form(&a, &tol()).unwrap();
        let lams: Vec<Complex> = f.blocks.iter().map(|b| b.lambda).collect();
        let expect = [c(-2.0), Complex::new(1.0, -1.0), Complex::new(1.0, 1.0), c(7.0)];
        for (x, y) in lams.iter().zip(expect) {
            assert!((*x - y).abs() < 1e-9, "{lams:?}");
        }
    }

    #[test]
    fn bad_index() {
        let d = resolvents_at_matrix(&sample_a(), None, &tol()).unwrap();
        assert_eq!(
            generalized_eigenspace_basis(&d, 5, &tol()),
            Err(Error::InvalidIndex { index: 5, len: 2 })
        );
    }
}
