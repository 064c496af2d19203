//! `matfun`: functions of square complex matrices from the command line.
//! Results are JSON on stdout. Exit status 0 on success, 2 when the library
//! rejects the problem, 1 on malformed input.

mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use matfun::interp::{hermite_solve, remainder_bound_check, sampled_derivative_sup};
use matfun::jordan::jordan_form;
use matfun::matfun::{
    apply_function, inverse_via_interp, matrix_exp, resolvents_at_matrix, verify_resolvent_identities,
};
use matfun::odesolve::{companion, general_solution_basis, ivp_solve, IvpSystem};
use matfun::spectral::{spectrum_of, SpectrumEstimate};
use matfun::{Complex, Tolerances};
use serde_json::{json, Value};

/// Samples used to estimate `sup |f^(n)|` when `--deriv-sup` is omitted.
const SUP_SAMPLES: usize = 1024;

#[derive(Parser)]
#[command(name = "matfun", version, about = "Matrix functions by Hermite interpolation on the spectrum")]
struct Cli {
    /// Multiplier for every default tolerance (overrides MATFUN_TOL).
    #[arg(long, global = true, value_name = "FACTOR")]
    tol: Option<f64>,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interpolation polynomial of a spec, coefficients in ascending degree.
    Interp {
        #[arg(long)]
        spec: String,
    },
    /// f(A) for a builtin or rational function.
    Apply {
        #[arg(long)]
        matrix: String,
        /// exp, sin, cos, reciprocal, power:K or scaled-exp:T
        #[arg(long, conflicts_with = "rational", required_unless_present = "rational")]
        function: Option<String>,
        /// Numerator and denominator polynomials, NUM,DEN.
        #[arg(long)]
        rational: Option<String>,
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// A⁻¹ as the interpolant of 1/x.
    Inverse {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// exp(tA).
    Exp {
        #[arg(long)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// Spectral projectors with their identity residuals.
    Resolvents {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// Solution basis of a linear ODE, and the IVP solution when y0 and t are given.
    SolveOde {
        #[arg(long)]
        ode: String,
        /// Initial state (y^(n-1), …, y′, y) as a JSON array or file.
        #[arg(long)]
        y0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
    },
    /// Jordan form A = P J P⁻¹.
    Jordan {
        #[arg(long)]
        matrix: String,
    },
    /// Eigenvalues with multiplicities and the characteristic polynomial.
    Spectrum {
        #[arg(long)]
        matrix: String,
    },
    /// Interpolation error at a real point against the derivative bound.
    RemainderCheck {
        #[arg(long)]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        /// Upper bound for |f^(n)| on the hull; sampled when omitted.
        #[arg(long)]
        deriv_sup: Option<f64>,
    },
}

/// A failed run: exit status plus the error object printed on stdout.
pub struct Failure {
    code: u8,
    kind: String,
    detail: String,
}

impl Failure {
    pub fn malformed(detail: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind: "MalformedInput".into(),
            detail: detail.into(),
        }
    }
}

impl From<matfun::Error> for Failure {
    fn from(e: matfun::Error) -> Self {
        Failure {
            code: 2,
            kind: e.kind().into(),
            detail: e.to_string(),
        }
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances, Failure> {
    match cli.tol {
        Some(f) if f.is_finite() && f > 0.0 => Ok(Tolerances::default().scaled(f)),
        Some(f) => Err(Failure::malformed(format!("--tol must be positive, got {f}"))),
        None => Tolerances::from_env().map_err(Failure::malformed),
    }
}

fn given_spectrum(arg: &Option<String>, tol: &Tolerances) -> Result<Option<SpectrumEstimate>, Failure> {
    arg.as_deref().map(|s| input::spectrum(s, tol)).transpose()
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let tol = tolerances(cli)?;
    let out = match &cli.command {
        Command::Interp { spec } => {
            let l = hermite_solve(&input::spec(spec)?.build(&tol)?, &tol)?;
            json!({ "coefficients": output::polynomial(&l) })
        }
        Command::Apply {
            matrix,
            function,
            rational,
            spectrum,
        } => {
            let a = input::matrix(matrix)?;
            let f = match (function, rational) {
                (Some(name), _) => input::function(name)?,
                (None, Some(r)) => input::rational(r)?,
                (None, None) => return Err(Failure::malformed("one of --function or --rational is required")),
            };
            let s = given_spectrum(spectrum, &tol)?;
            output::matrix(&apply_function(&f, &a, s.as_ref(), &tol)?)
        }
        Command::Inverse { matrix, spectrum } => {
            let a = input::matrix(matrix)?;
            let s = given_spectrum(spectrum, &tol)?;
            let inv = inverse_via_interp(&a, s.as_ref(), &tol)?;
            let mut v = output::matrix(&inv.inverse);
            v["residual"] = json!(inv.residual);
            v
        }
        Command::Exp { matrix, t, spectrum } => {
            let a = input::matrix(matrix)?;
            if !t.is_finite() {
                return Err(Failure::malformed("--t must be finite"));
            }
            let s = given_spectrum(spectrum, &tol)?;
            output::matrix(&matrix_exp(&a, Complex::real(*t), s.as_ref(), &tol)?)
        }
        Command::Resolvents { matrix, spectrum } => {
            let a = input::matrix(matrix)?;
            let s = given_spectrum(spectrum, &tol)?;
            let d = resolvents_at_matrix(&a, s.as_ref(), &tol)?;
            let mut v = output::spectrum(&d.spectrum);
            v["resolvents"] = Value::Array(d.resolvents.iter().map(output::matrix).collect());
            v["identities"] = output::report(&verify_resolvent_identities(&d, &a));
            v
        }
        Command::SolveOde { ode, y0, t } => {
            let req = input::ode(ode)?;
            let y0 = match y0 {
                Some(v) => Some(input::vector(v)?),
                None => req.y0,
            };
            let t = t.or(req.t);
            let basis = general_solution_basis(&req.ode, &tol)?;
            let mut v = json!({
                "companion": output::matrix(&companion(&req.ode)),
                "basis": basis.terms.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "terms": basis.terms.iter()
                    .map(|b| json!({ "lambda": output::complex(b.lambda), "power": b.power }))
                    .collect::<Vec<_>>(),
            });
            match (y0, t) {
                (Some(y0), Some(t)) => {
                    let y = ivp_solve(&IvpSystem::Ode(req.ode), &y0, t, &tol)?;
                    v["t"] = json!(t);
                    v["y"] = output::vector(&y);
                }
                (None, None) => {}
                _ => return Err(Failure::malformed("an initial value problem needs both y0 and t")),
            }
            v
        }
        Command::Jordan { matrix } => {
            let f = jordan_form(&input::matrix(matrix)?, &tol)?;
            json!({
                "blocks": f.blocks.iter()
                    .map(|b| json!({ "lambda": output::complex(b.lambda), "size": b.size }))
                    .collect::<Vec<_>>(),
                "P": output::matrix(&f.p),
                "J": output::matrix(&f.j),
                "residual": f.residual,
            })
        }
        Command::Spectrum { matrix } => {
            let s = spectrum_of(&input::matrix(matrix)?, &tol)?;
            let mut v = output::spectrum(&s);
            v["char_poly"] = output::polynomial(&s.char_poly);
            v["warnings"] = json!(s.warnings);
            v
        }
        Command::RemainderCheck { spec, x0, deriv_sup } => {
            let req = input::spec(spec)?;
            let f = req
                .function
                .ok_or_else(|| Failure::malformed("remainder-check needs a spec with a \"function\" field"))?;
            if !x0.is_finite() {
                return Err(Failure::malformed("--x0 must be finite"));
            }
            let sup = match deriv_sup {
                Some(s) => *s,
                None => {
                    if let Some(&(at, _)) = req.nodes.iter().find(|n| !n.0.is_real()) {
                        return Err(matfun::Error::NonRealInput { at }.into());
                    }
                    let lo = req.nodes.iter().map(|n| n.0.re).fold(*x0, f64::min);
                    let hi = req.nodes.iter().map(|n| n.0.re).fold(*x0, f64::max);
                    let n = req.nodes.iter().map(|n| n.1).sum();
                    sampled_derivative_sup(&f, lo, hi, n, SUP_SAMPLES, &tol)?
                }
            };
            let b = remainder_bound_check(&f, &req.nodes, Complex::real(*x0), sup, &tol)?;
            json!({
                "x0": x0,
                "deriv_sup": sup,
                "bound": b.bound,
                "actual_error": b.actual_error,
                "holds": b.holds,
            })
        }
    };
    Ok(out)
}

fn emit(cli_output: Option<&str>, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n";
    match cli_output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::malformed(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_json(f: &Failure) -> Value {
    json!({ "error": { "kind": f.kind, "detail": f.detail } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let f = Failure::malformed(e.render().to_string().trim().to_string());
            println!("{}", serde_json::to_string_pretty(&error_json(&f)).unwrap());
            return ExitCode::from(f.code);
        }
    };
    let result = run(&cli).and_then(|v| emit(cli.output.as_deref(), &v));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            println!("{}", serde_json::to_string_pretty(&error_json(&f)).unwrap());
            ExitCode::from(f.code)
        }
    }
}
