use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain where the quantity is defined.
    ParameterDomain { what: &'static str, value: f64 },
    /// The dielectric constant does not produce an attractive image charge.
    NoBinding { epsilon: f64 },
    /// Transition levels given in the wrong order.
    Ordering { upper: u32, lower: u32 },
    /// Malformed or inconsistent input data.
    Input(String),
    /// The fit problem has no admissible solution.
    FitDomain(&'static str),
    /// Iteration limit reached; carries the last iterate.
    Convergence {
        iterations: usize,
        e0: f64,
        delta: f64,
    },
    /// The isospectral denominator `Γ(3-2δ, t) - R` vanishes somewhere.
    SingularFamily { r_param: f64, min_denominator: f64 },
    /// A numerical routine failed to reach its tolerance.
    Numeric(&'static str),
    /// Richardson check between two meshes failed.
    Accuracy { relative_change: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParameterDomain { what, value } => {
                write!(f, "parameter out of domain: {what} (got {value})")
            }
            Error::NoBinding { epsilon } => write!(
                f,
                "no binding: dielectric constant {epsilon} must exceed 1 for an attractive image charge"
            ),
            Error::Ordering { upper, lower } => write!(
                f,
                "transition ordering: upper level {upper} must exceed lower level {lower}"
            ),
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
            Error::FitDomain(msg) => write!(f, "fit domain: {msg}"),
            Error::Convergence {
                iterations,
                e0,
                delta,
            } => write!(
                f,
                "no convergence after {iterations} iterations (last iterate e0 = {e0}, delta = {delta})"
            ),
            Error::SingularFamily {
                r_param,
                min_denominator,
            } => write!(
                f,
                "singular isospectral family: R = {r_param} makes the denominator reach {min_denominator}"
            ),
            Error::Numeric(msg) => write!(f, "numerical failure: {msg}"),
            Error::Accuracy { relative_change } => write!(
                f,
                "grid too coarse: eigenvalue changed by {relative_change:.3e} (relative) between meshes"
            ),
        }
    }
}

impl core::error::Error for Error {}
