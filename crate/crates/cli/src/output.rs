//! JSON rendering. Complex numbers are strings in shortest round-trip form,
//! and object keys are sorted, so equal results print identically.

use matfun::matfun::ResolventReport;
use matfun::spectral::SpectrumEstimate;
use matfun::{Complex, MatrixC, Polynomial};
use serde_json::{json, Value};

pub fn complex(z: Complex) -> Value {
    // Normalize negative zero so that output does not depend on it.
    let z = Complex::new(z.re + 0.0, z.im + 0.0);
    Value::String(z.to_string())
}

pub fn vector(v: &[Complex]) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

pub fn matrix(m: &MatrixC) -> Value {
    json!({ "rows": m.rows().iter().map(|r| vector(r)).collect::<Vec<_>>() })
}

pub fn polynomial(p: &Polynomial) -> Value {
    if p.is_zero() {
        return json!(["0"]);
    }
    vector(p.coeffs())
}

pub fn spectrum(s: &SpectrumEstimate) -> Value {
    let entries: Vec<Value> = s
        .nodes()
        .into_iter()
        .map(|(l, m)| json!({ "value": complex(l), "multiplicity": m }))
        .collect();
    json!({ "eigenvalues": entries })
}

pub fn report(r: &ResolventReport) -> Value {
    let mut out = serde_json::Map::new();
    for (name, (residual, scale)) in r.checks() {
        out.insert(name.into(), json!({ "residual": residual, "scale": scale }));
    }
    Value::Object(out)
}
