//! Hermite–Lagrange interpolation with multiple nodes.
//!
//! Data at a node of multiplicity `m` is stored jet-scaled: entry `p` is
//! `c^(p) / p!`. Constructors accept raw derivatives as well.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Complex, FunctionSpec, Jet};
use crate::tol::Tolerances;

#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationNode {
    pub lambda: Complex,
    /// Jet-scaled data; its length is the multiplicity.
    pub data: Vec<Complex>,
}

impl InterpolationNode {
    /// From raw derivative values `c^(0), c^(1), …`.
    pub fn from_derivatives(lambda: Complex, derivs: &[Complex]) -> Result<Self> {
        let mut fact = 1.0;
        let data = derivs
            .iter()
            .enumerate()
            .map(|(p, &d)| {
                if p > 0 {
                    fact *= p as f64;
                }
                d / fact
            })
            .collect();
        Self::from_taylor(lambda, data)
    }

    /// From Taylor coefficients `c^(p) / p!`.
    pub fn from_taylor(lambda: Complex, data: Vec<Complex>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidCondition(format!(
                "node {lambda} has multiplicity 0"
            )));
        }
        if !lambda.is_finite() || data.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(InterpolationNode { lambda, data })
    }

    pub fn multiplicity(&self) -> usize {
        self.data.len()
    }

    /// Raw derivative values.
    pub fn derivatives(&self) -> Vec<Complex> {
        self.data
            .iter()
        .enumerate()
        .scan(1.0, |fact, (p, &c)| {
            if p > 0 {
                *fact *= p as f64;
            }
            Some(c * *fact)
        })
        .collect()
    }
}

/// A validated interpolation problem.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationSpec {
    nodes: Vec<InterpolationNode>,
}

impl InterpolationSpec {
    pub fn new(nodes: Vec<InterpolationNode>, tol: &Tolerances) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptySpec);
        }
        let roots: Vec<Complex> = nodes.iter().map(|n| n.lambda).collect();
        check_separation(&roots, tol)?;
        Ok(InterpolationSpec { nodes })
    }

    pub fn nodes(&self) -> &[InterpolationNode] {
        &self.nodes
    }

    /// Number of conditions `n = Σ mⱼ`.
    pub fn size(&self) -> usize {
        self.nodes.iter().map(|n| n.multiplicity()).sum()
    }

    pub fn roots(&self) -> Vec<(Complex, usize)> {
        self.nodes
            .iter()
            .map(|n| (n.lambda, n.multiplicity()))
            .collect()
    }
}

fn separation_limit(points: &[Complex], tol: &Tolerances) -> f64 {
    let max = points.iter().fold(0.0, |m: f64, z| m.max(z.abs()));
    tol.node_sep * (1.0 + max)
}

fn check_separation(points: &[Complex], tol: &Tolerances) -> Result<()> {
    let limit = separation_limit(points, tol);
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            if (a - b).abs() <= limit {
                return Err(Error::NodesTooClose { a, b });
            }
        }
    }
    Ok(())
}

/// `L(x) = Σₖ coeffs[k] · ∏_{i<k} (x − points[i])`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonForm {
    /// The confluent node sequence; repeated nodes are contiguous.
    pub points: Vec<Complex>,
    pub coeffs: Vec<Complex>,
}

impl NewtonForm {
    pub fn eval(&self, x: Complex) -> Complex {
        let n = self.coeffs.len();
        let mut acc = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            acc = acc * (x - self.points[k]) + self.coeffs[k];
        }
        acc
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.coeffs.len();
        let mut acc = Polynomial::constant(self.coeffs[n - 1]);
        for k in (0..n - 1).rev() {
            acc = &(&acc * &Polynomial::linear_factor(self.points[k]))
                + &Polynomial::constant(self.coeffs[k]);
        }
        acc
    }
}

/// Node indices in processing order: descending multiplicity, then `(re, im)`.
fn processing_order(spec: &InterpolationSpec) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..spec.nodes.len()).collect();
    idx.sort_by(|&a, &b| {
        let (na, nb) = (&spec.nodes[a], &spec.nodes[b]);
        nb.multiplicity()
            .cmp(&na.multiplicity())
            .then_with(|| na.lambda.lex_cmp(&nb.lambda))
    });
    idx
}

fn check_size(spec: &InterpolationSpec, tol: &Tolerances) -> Result<()> {
    let n = spec.size();
    if n > tol.max_nodes {
        return Err(Error::TooManyConditions {
            n,
            max: tol.max_nodes,
        });
    }
    Ok(())
}

/// Confluent divided differences.
pub fn newton_form(spec: &InterpolationSpec, tol: &Tolerances) -> Result<NewtonForm> {
    check_size(spec, tol)?;
    let mut points = Vec::new();
    let mut owner = Vec::new();
    for j in processing_order(spec) {
        let node = &spec.nodes[j];
        for _ in 0..node.multiplicity() {
            points.push(node.lambda);
            owner.push(j);
        }
    }
    let n = points.len();
    let mut col: Vec<Complex> = owner.iter().map(|&j| spec.nodes[j].data[0]).collect();
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(col[0]);
    for k in 1..n {
        for i in 0..n - k {
            col[i] = if owner[i] == owner[i + k] {
                spec.nodes[owner[i]].data[k]
            } else {
                (col[i + 1] - col[i]) / (points[i + k] - points[i])
            };
        }
        coeffs.push(col[0]);
    }
    Ok(NewtonForm { points, coeffs })
}

/// Explicit Lagrange formula for simple nodes.
fn lagrange_simple(spec: &InterpolationSpec) -> Polynomial {
    let nodes = &spec.nodes;
    let mut out = Polynomial::zero();
    for (j, nj) in nodes.iter().enumerate() {
        let mut basis = Polynomial::one();
        let mut denom = Complex::ONE;
        for (i, ni) in nodes.iter().enumerate() {
            if i != j {
                basis = &basis * &Polynomial::linear_factor(ni.lambda);
                denom *= nj.lambda - ni.lambda;
            }
        }
        out = &out + &basis.scale(nj.data[0] / denom);
    }
    out
}

/// Interpolates the data residual of `p` and adds the correction, while
/// that keeps shrinking the residual. Recovers most of the accuracy lost
/// when expanding the Newton form in the monomial basis.
fn refine(mut p: Polynomial, spec: &InterpolationSpec, tol: &Tolerances) -> Result<Polynomial> {
    let mut residual = condition_residual(&p, spec);
    for _ in 0..3 {
        if residual == 0.0 || !residual.is_finite() {
            break;
        }
        let nodes = spec
            .nodes
            .iter()
            .map(|node| {
                let data = p
                    .taylor_at(node.lambda, node.multiplicity())
                    .into_iter()
                    .zip(&node.data)
                    .map(|(a, &b)| b - a)
                    .collect();
                InterpolationNode {
                    lambda: node.lambda,
                    data,
                }
            })
            .collect();
        let correction = newton_form(&InterpolationSpec { nodes }, tol)?.to_polynomial();
        let candidate = &p + &correction;
        let next = condition_residual(&candidate, spec);
        if next >= residual {
            break;
        }
        p = candidate;
        residual = next;
    }
    Ok(p)
}

/// Largest deviation of `p`'s Taylor data from the spec at every node.
pub fn condition_residual(p: &Polynomial, spec: &InterpolationSpec) -> f64 {
    spec.nodes
        .iter()
        .flat_map(|node| {
            p.taylor_at(node.lambda, node.multiplicity())
                .into_iter()
                .zip(node.data.iter())
                .map(|(a, &b)| (a - b).abs())
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max)
}

/// The interpolation polynomial `L` with `deg L < n`.
pub fn hermite_solve(spec: &InterpolationSpec, tol: &Tolerances) -> Result<Polynomial> {
    check_size(spec, tol)?;
    let poly = if spec.nodes.iter().all(|n| n.multiplicity() == 1) {
        lagrange_simple(spec)
    } else {
        refine(newton_form(spec, tol)?.to_polynomial(), spec, tol)?
    };
    if !poly.coeffs().iter().all(|c| c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let data_scale = spec
        .nodes
        .iter()
        .flat_map(|n| n.data.iter())
        .fold(1.0, |m: f64, c| m.max(c.abs()));
    let residual = condition_residual(&poly, spec);
    let limit = tol.cond * data_scale;
    if residual > limit {
        return Err(Error::IllConditioned { residual, limit });
    }
    Ok(poly)
}

/// Spec whose data are the jets of `f` at `nodes`.
pub fn spec_from_function(
    f: &FunctionSpec,
    nodes: &[(Complex, usize)],
    tol: &Tolerances,
) -> Result<InterpolationSpec> {
    let built = nodes
        .iter()
        .map(|&(lambda, m)| {
            if m == 0 {
                return Err(Error::InvalidCondition(format!(
                    "node {lambda} has multiplicity 0"
                )));
            }
            InterpolationNode::from_taylor(lambda, f.jet_of(lambda, m - 1, tol)?.coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    InterpolationSpec::new(built, tol)
}

pub fn hermite_from_function(
    f: &FunctionSpec,
    nodes: &[(Complex, usize)],
    tol: &Tolerances,
) -> Result<Polynomial> {
    hermite_solve(&spec_from_function(f, nodes, tol)?, tol)
}

/// Result of adding one condition to an existing interpolant.
#[derive(Clone, Debug, PartialEq)]
pub struct Extension {
    pub poly: Polynomial,
    /// Coefficient of `∏ (x − λⱼ)^mⱼ` added to the old interpolant.
    pub c: Complex,
}

/// Adds one condition to `l0`, which interpolates on `existing`.
///
/// Either `new_node` is fresh and `target_order == 0`, or it is an existing
/// node `λⱼ` and `target_order == mⱼ`. `target_value` is a raw derivative.
pub fn extend_one_point(
    l0: &Polynomial,
    existing: &[(Complex, usize)],
    new_node: Complex,
    target_value: Complex,
    target_order: usize,
    tol: &Tolerances,
) -> Result<Extension> {
    let mut all: Vec<Complex> = existing.iter().map(|e| e.0).collect();
    all.push(new_node);
    let limit = separation_limit(&all, tol);
    let hit = existing
        .iter()
        .find(|(lambda, _)| (*lambda - new_node).abs() <= limit);
    let (x, order) = match hit {
        Some(&(lambda, m)) if target_order == m => (lambda, m),
        Some(&(lambda, m)) => {
            return Err(Error::InvalidCondition(format!(
                "node {lambda} has multiplicity {m}; the next condition has order {m}, not {target_order}"
            )))
        }
        None if target_order == 0 => (new_node, 0),
        None => {
            return Err(Error::InvalidCondition(format!(
                "fresh node {new_node} needs a value condition (order 0), got order {target_order}"
            )))
        }
    };
    let w = Polynomial::from_roots(existing);
    let fact: f64 = (1..=order).map(|j| j as f64).product();
    let k = w.taylor_at(x, order + 1)[order] * fact;
    let current = l0.taylor_at(x, order + 1)[order] * fact;
    let scale = w.coeffs().iter().map(|c| c.abs()).sum::<f64>()
        * (1.0 + x.abs()).powi(w.degree().unwrap_or(0) as i32)
        * fact;
    // Also rejects a NaN `k`.
    if k.abs().partial_cmp(&(tol.pole * scale)) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DegenerateCondition);
    }
    let c = (target_value - current) / k;
    let poly = l0 + &w.scale(c);
    Ok(Extension { poly, c })
}

/// Interpolant of `q` on the disjoint union of two node sets, built as
/// `[q/T₂]₁·T₂ + [q/T₁]₂·T₁`.
pub fn merge_union(
    q: &FunctionSpec,
    set1: &[(Complex, usize)],
    set2: &[(Complex, usize)],
    tol: &Tolerances,
) -> Result<Polynomial> {
    if set1.is_empty() && set2.is_empty() {
        return Err(Error::EmptySpec);
    }
    let all: Vec<Complex> = set1.iter().chain(set2).map(|e| e.0).collect();
    let limit = separation_limit(&all, tol);
    for &(a, _) in set1 {
        if let Some(&(b, _)) = set2.iter().find(|(b, _)| (a - *b).abs() <= limit) {
            return Err(Error::NodeCollision { at: b });
        }
    }
    let t1 = Polynomial::from_roots(set1);
    let t2 = Polynomial::from_roots(set2);
    let part1 = quotient_interp(q, &t2, set1, tol)?;
    let part2 = quotient_interp(q, &t1, set2, tol)?;
    Ok(&(&part1 * &t2) + &(&part2 * &t1))
}

/// `[q / t]` interpolated on `nodes`; zero for an empty node set.
fn quotient_interp(
    q: &FunctionSpec,
    t: &Polynomial,
    nodes: &[(Complex, usize)],
    tol: &Tolerances,
) -> Result<Polynomial> {
    if nodes.is_empty() {
        return Ok(Polynomial::zero());
    }
    let built = nodes
        .iter()
        .map(|&(lambda, m)| {
            if m == 0 {
                return Err(Error::InvalidCondition(format!(
                    "node {lambda} has multiplicity 0"
                )));
            }
            let qj = q.jet_of(lambda, m - 1, tol)?;
            let tj = Jet {
                center: lambda,
                coeffs: t.taylor_at(lambda, m),
            };
            InterpolationNode::from_taylor(lambda, qj.div(&tj).coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    hermite_solve(&InterpolationSpec::new(built, tol)?, tol)
}

/// `T̂ᵢ`: value 1 at `λᵢ`, every other condition zero.
///
/// Built as the degree `mᵢ − 1` Taylor polynomial at `λᵢ` of
/// `1 / ∏_{j≠i} (x − λⱼ)^mⱼ`, multiplied by that product.
pub fn principal_resolvent(
    nodes: &[(Complex, usize)],
    i: usize,
    tol: &Tolerances,
) -> Result<Polynomial> {
    if i >= nodes.len() {
        return Err(Error::InvalidIndex {
            index: i,
            len: nodes.len(),
        });
    }
    if let Some(&(lambda, _)) = nodes.iter().find(|n| n.1 == 0) {
        return Err(Error::InvalidCondition(format!(
            "node {lambda} has multiplicity 0"
        )));
    }
    let points: Vec<Complex> = nodes.iter().map(|n| n.0).collect();
    check_separation(&points, tol)?;
    let (lambda, m) = nodes[i];
    let others: Vec<(Complex, usize)> = nodes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &n)| n)
        .collect();
    let rest = Polynomial::from_roots(&others);
    let inv = Jet {
        center: lambda,
        coeffs: rest.taylor_at(lambda, m),
    }
    .recip();
    Ok(&Polynomial::from_taylor(lambda, &inv.coeffs) * &rest)
}

/// `‖L − (q mod T)‖∞ / max(1, ‖q mod T‖∞)`, where `L` interpolates `q`
/// on `nodes` and `T` is the node polynomial. Zero in exact arithmetic.
pub fn interp_equals_remainder(
    q: &Polynomial,
    nodes: &[(Complex, usize)],
    tol: &Tolerances,
) -> Result<f64> {
    let l = hermite_from_function(&FunctionSpec::Polynomial(q.clone()), nodes, tol)?;
    let (_, r) = q.divmod(&Polynomial::from_roots(nodes))?;
    Ok((&l - &r).norm_inf() / r.norm_inf().max(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemainderBound {
    pub x0: Complex,
    /// `sup|f^(n)| / n! · ∏ |x₀ − λⱼ|^mⱼ`
    pub bound: f64,
    /// `f(x₀) − L(x₀)`
    pub actual_error: f64,
    pub holds: bool,
}

/// Checks the interpolation error at a real point against the
/// derivative bound over the convex hull.
pub fn remainder_bound_check(
    f: &FunctionSpec,
    nodes: &[(Complex, usize)],
    x0: Complex,
    deriv_sup: f64,
    tol: &Tolerances,
) -> Result<RemainderBound> {
    if let Some(&(at, _)) = nodes.iter().find(|n| !n.0.is_real()) {
        return Err(Error::NonRealInput { at });
    }
    if !x0.is_real() {
        return Err(Error::NonRealInput { at: x0 });
    }
    if !(deriv_sup.is_finite() && deriv_sup >= 0.0) {
        return Err(Error::InvalidCondition(format!(
            "derivative bound must be a non-negative number, got {deriv_sup}"
        )));
    }
    let l = hermite_from_function(f, nodes, tol)?;
    let n: usize = nodes.iter().map(|n| n.1).sum();
    let fact: f64 = (1..=n).map(|j| j as f64).product();
    let prod: f64 = nodes
        .iter()
        .map(|&(lambda, m)| (x0 - lambda).abs().powi(m as i32))
        .product();
    let bound = deriv_sup / fact * prod;
    let fx = f.eval(x0, tol)?;
    let lx = l.eval(x0);
    let actual_error = (fx - lx).re;
    let slack = 4.0 * f64::EPSILON * (fx.abs() + lx.abs() + bound);
    Ok(RemainderBound {
        x0,
        bound,
        actual_error,
        holds: actual_error.abs() <= bound + slack,
    })
}

/// `max |f^(order)|` over `samples` equispaced points of `[lo, hi]`.
pub fn sampled_derivative_sup(
    f: &FunctionSpec,
    lo: f64,
    hi: f64,
    order: usize,
    samples: usize,
    tol: &Tolerances,
) -> Result<f64> {
    let count = samples.max(2);
    let mut sup: f64 = 0.0;
    for k in 0..count {
        let x = lo + (hi - lo) * k as f64 / (count - 1) as f64;
        let jet = f.jet_of(Complex::real(x), order, tol)?;
        sup = sup.max(jet.derivative(order).abs());
    }
    Ok(sup)
}
