use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("resonant denominator {value:e} eV (grid point {index:?})")]
    ResonantDenominator { index: Option<usize>, value: f64 },

    #[error("laser-cavity detuning {0:e} eV is inside the resonance guard")]
    ResonantCavity(f64),

    #[error("no exciton resonance: no sign change in [{lo}, {hi}] eV")]
    NoResonance { lo: f64, hi: f64 },

    #[error("absorbance curve has no local maximum")]
    NoPeak,

    #[error("resolvent is singular at energy {0} eV")]
    SingularResolvent(f64),

    #[error("dense kernel requested for l = {l}, limit is {limit}")]
    GridTooLarge { l: usize, limit: usize },

    #[error("line {line}: key `{key}`: {message}")]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Configuration problems, as opposed to numerical failures.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. } | Error::Config { .. } | Error::UnknownScenario(_)
        )
    }

    /// Numerical failures of a solver or a resonance guard.
    pub fn is_solver(&self) -> bool {
        matches!(
            self,
            Error::ResonantDenominator { .. }
                | Error::ResonantCavity(_)
                | Error::NoResonance { .. }
                | Error::NoPeak
                | Error::SingularResolvent(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
