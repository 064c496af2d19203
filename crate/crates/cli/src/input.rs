//! Parsing of the JSON input formats.

use std::fs;

use matfun::interp::{InterpolationNode, InterpolationSpec};
use matfun::odesolve::LinearODE;
use matfun::spectral::SpectrumEstimate;
use matfun::{Complex, FunctionSpec, MatrixC, Polynomial, Tolerances};
use serde::Deserialize;
use serde_json::Value;

use crate::Failure;

/// A file path, or inline JSON when the argument starts with `{` or `[`.
pub fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::malformed(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::malformed(format!("invalid JSON in {arg}: {e}")))
}

fn decode<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::malformed(format!("invalid {what}: {e}")))
}

/// Complex entries may be strings (`"1-2i"`) or plain JSON numbers.
#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Number(f64),
}

impl Scalar {
    fn value(&self) -> Result<Complex, Failure> {
        match self {
            Scalar::Text(s) => s
                .parse()
                .map_err(|e| Failure::malformed(format!("bad complex literal {s:?}: {e}"))),
            Scalar::Number(x) => Ok(Complex::real(*x)),
        }
    }
}

fn values(xs: &[Scalar]) -> Result<Vec<Complex>, Failure> {
    xs.iter().map(Scalar::value).collect()
}

pub fn complex(s: &str) -> Result<Complex, Failure> {
    Scalar::Text(s.to_string()).value()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: Vec<Vec<Scalar>>,
}

pub fn matrix(arg: &str) -> Result<MatrixC, Failure> {
    let m: MatrixFile = decode(read_json(arg)?, "matrix")?;
    let rows = m.rows.iter().map(|r| values(r)).collect::<Result<_, _>>()?;
    Ok(MatrixC::from_rows(rows)?)
}

pub fn polynomial_value(v: Value) -> Result<Polynomial, Failure> {
    let coeffs: Vec<Scalar> = decode(v, "polynomial")?;
    Ok(Polynomial::new(values(&coeffs)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumEntry {
    value: Scalar,
    multiplicity: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumFile {
    eigenvalues: Vec<SpectrumEntry>,
}

pub fn spectrum(arg: &str, tol: &Tolerances) -> Result<SpectrumEstimate, Failure> {
    let s: SpectrumFile = decode(read_json(arg)?, "spectrum")?;
    let pairs = s
        .eigenvalues
        .iter()
        .map(|e| Ok((e.value.value()?, e.multiplicity)))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(SpectrumEstimate::from_pairs(&pairs, tol)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OdeFile {
    coeffs: Vec<Scalar>,
    y0: Option<Vec<Scalar>>,
    t: Option<f64>,
}

pub struct OdeRequest {
    pub ode: LinearODE,
    pub y0: Option<Vec<Complex>>,
    pub t: Option<f64>,
}

pub fn ode(arg: &str) -> Result<OdeRequest, Failure> {
    let f: OdeFile = decode(read_json(arg)?, "ODE")?;
    Ok(OdeRequest {
        ode: LinearODE::new(values(&f.coeffs)?)?,
        y0: f.y0.map(|y| values(&y)).transpose()?,
        t: f.t,
    })
}

pub fn vector(arg: &str) -> Result<Vec<Complex>, Failure> {
    let xs: Vec<Scalar> = decode(read_json(arg)?, "vector")?;
    values(&xs)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeEntry {
    lambda: Scalar,
    multiplicity: Option<usize>,
    /// Raw derivative values `f(λ), f′(λ), f″(λ), …`.
    data: Option<Vec<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    /// Builtin function name; replaces per-node data.
    function: Option<String>,
    nodes: Vec<NodeEntry>,
}

/// Nodes with multiplicities, the optional function, and the explicit data.
pub struct SpecRequest {
    pub function: Option<FunctionSpec>,
    pub nodes: Vec<(Complex, usize)>,
    data: Vec<Option<Vec<Complex>>>,
}

impl SpecRequest {
    /// The interpolation problem, from the function when one is named.
    pub fn build(&self, tol: &Tolerances) -> Result<InterpolationSpec, Failure> {
        if let Some(f) = &self.function {
            return Ok(matfun::interp::spec_from_function(f, &self.nodes, tol)?);
        }
        let nodes = self
            .nodes
            .iter()
            .zip(&self.data)
            .map(|(&(lambda, _), data)| {
                let data = data.as_ref().ok_or_else(|| {
                    Failure::malformed(format!("node {lambda} has no data and no function is given"))
                })?;
                Ok(InterpolationNode::from_derivatives(lambda, data)?)
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        Ok(InterpolationSpec::new(nodes, tol)?)
    }
}

pub fn spec(arg: &str) -> Result<SpecRequest, Failure> {
    let f: SpecFile = decode(read_json(arg)?, "interpolation spec")?;
    let function = f.function.as_deref().map(function).transpose()?;
    let mut nodes = Vec::new();
    let mut data = Vec::new();
    for n in &f.nodes {
        let lambda = n.lambda.value()?;
        let d = n.data.as_ref().map(|d| values(d)).transpose()?;
        let m = match (n.multiplicity, &d) {
            (Some(m), Some(d)) if m != d.len() => {
                return Err(Failure::malformed(format!(
                    "node {lambda}: multiplicity {m} but {} data values",
                    d.len()
                )))
            }
            (Some(m), _) => m,
            (None, Some(d)) => d.len(),
            (None, None) => 1,
        };
        nodes.push((lambda, m));
        data.push(d);
    }
    Ok(SpecRequest { function, nodes, data })
}

/// `exp`, `sin`, `cos`, `reciprocal`, `power:K`, `scaled-exp:T`.
pub fn function(name: &str) -> Result<FunctionSpec, Failure> {
    let lower = name.trim().to_ascii_lowercase();
    let (head, arg) = match lower.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (lower.as_str(), None),
    };
    let f = match (head, arg) {
        ("exp", None) => FunctionSpec::Exp,
        ("sin", None) => FunctionSpec::Sin,
        ("cos", None) => FunctionSpec::Cos,
        ("reciprocal" | "inv", None) => FunctionSpec::Reciprocal,
        ("power" | "pow", Some(k)) => FunctionSpec::Power(
            k.parse()
                .map_err(|_| Failure::malformed(format!("bad exponent in {name:?}")))?,
        ),
        ("scaled-exp", Some(t)) => FunctionSpec::ScaledExp(complex(t)?),
        _ => {
            return Err(Failure::malformed(format!(
                "unknown function {name:?}; expected exp, sin, cos, reciprocal, power:K or scaled-exp:T"
            )))
        }
    };
    Ok(f)
}

/// `NUM,DEN`: either two polynomial files, or two inline arrays such as
/// `["1"],["0","1"]`.
pub fn rational(arg: &str) -> Result<FunctionSpec, Failure> {
    let (num, den) = if arg.trim_start().starts_with('[') {
        let both: Vec<Value> = decode(read_json(&format!("[{arg}]"))?, "rational function")?;
        match <[Value; 2]>::try_from(both) {
            Ok([n, d]) => (n, d),
            Err(_) => return Err(Failure::malformed("--rational needs exactly NUM,DEN")),
        }
    } else {
        match arg.split_once(',') {
            Some((n, d)) => (read_json(n)?, read_json(d)?),
            None => return Err(Failure::malformed("--rational needs exactly NUM,DEN")),
        }
    };
    Ok(FunctionSpec::rational(polynomial_value(num)?, polynomial_value(den)?)?)
}
