//! Numerical tolerances.
//!
//! Every threshold is relative; the scale it is applied to is documented on
//! the field. [`Tolerances::scaled`] multiplies all of them at once, which is
//! what the `MATFUN_TOL` environment variable controls in the CLI.

/// Name of the environment variable holding a global tolerance multiplier.
pub const TOL_ENV: &str = "MATFUN_TOL";

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Denominator-vanishing test: `|den(c)| < pole * (1 + |c|)`.
    pub pole: f64,
    /// Euclidean remainder treated as zero below `gcd * running scale`.
    pub gcd: f64,
    /// Interpolation nodes collide below `node_sep * (1 + max|λ|)`.
    pub node_sep: f64,
    /// Residual of the interpolation conditions, relative to the data scale.
    pub cond: f64,
    /// Two roots are the same eigenvalue below `cluster * (1 + max|λ|)`.
    pub cluster: f64,
    /// Derivative-vanishing test for multiplicities, relative to
    /// `‖p‖∞ (1 + |λ|)^deg`.
    pub multiplicity: f64,
    /// Operator identities: `matrix * (1 + ‖A‖_F)^max(m)`.
    pub matrix: f64,
    /// Singular values below `rank * σ_max` count as zero.
    pub rank: f64,
    /// Jordan reconstruction: `jordan * ‖A‖_F * κ(P)`.
    pub jordan: f64,
    /// Largest number of interpolation conditions accepted.
    pub max_nodes: usize,
    /// Iteration cap for the simultaneous root finder.
    pub max_iters: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pole: 1e-12,
            gcd: 1e-10,
            node_sep: 1e-9,
            cond: 1e-6,
            cluster: 1e-6,
            multiplicity: 1e-6,
            matrix: 1e-8,
            rank: 1e-8,
            jordan: 1e-6,
            max_nodes: 64,
            max_iters: 200,
        }
    }
}

impl Tolerances {
    /// All floating thresholds multiplied by `factor`; limits are unchanged.
    pub fn scaled(&self, factor: f64) -> Self {
        Tolerances {
            pole: self.pole * factor,
            gcd: self.gcd * factor,
            node_sep: self.node_sep * factor,
            cond: self.cond * factor,
            cluster: self.cluster * factor,
            multiplicity: self.multiplicity * factor,
            matrix: self.matrix * factor,
            rank: self.rank * factor,
            jordan: self.jordan * factor,
            ..self.clone()
        }
    }

    /// Defaults scaled by the value of `MATFUN_TOL`, if set.
    ///
    /// Returns an error message when the variable is present but is not a
    /// positive finite number.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(TOL_ENV) {
            Err(_) => Ok(Self::default()),
            Ok(v) => {
                let f: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| format!("{TOL_ENV}={v:?} is not a number"))?;
                if !(f.is_finite() && f > 0.0) {
                    return Err(format!("{TOL_ENV} must be positive, got {v}"));
                }
                Ok(Self::default().scaled(f))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_touches_thresholds_only() {
        let t = Tolerances::default().scaled(10.0);
        assert!((t.pole - 1e-11).abs() < 1e-25);
        assert!((t.cluster - 1e-5).abs() < 1e-20);
        assert_eq!(t.max_nodes, 64);
        assert_eq!(t.max_iters, 200);
    }
}
