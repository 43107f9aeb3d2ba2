use reduced_eos::EosError;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Eos(#[from] EosError),
    #[error("{failed} row(s) failed; first at rho = {first_rho} kg/m³: {source}")]
    Rows { failed: usize, first_rho: f64, source: EosError },
    #[error("{0}")]
    Audit(String),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    /// Machine-readable code and process exit status.
    pub fn code(&self) -> (&'static str, i32) {
        match self {
            CliError::Usage(_) => ("E_USAGE", 2),
            CliError::Parse(_) => ("E_PARSE", 2),
            CliError::Validation(_) => ("E_VALIDATION", 2),
            CliError::NotFound(_) => ("E_NOT_FOUND", 2),
            CliError::Io(_) => ("E_IO", 2),
            CliError::Eos(e) | CliError::Rows { source: e, .. } => eos_code(e),
            CliError::Audit(_) => ("E_AUDIT", 4),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.code().1
    }

    /// `error[CODE]: message` on a single line.
    pub fn render(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.code().0, msg)
    }
}

fn eos_code(e: &EosError) -> (&'static str, i32) {
    match e {
        EosError::Domain(_) => ("E_DOMAIN", 4),
        EosError::ModelMismatch { .. } => ("E_MODEL_MISMATCH", 2),
        EosError::DegenerateData(_) => ("E_DEGENERATE_DATA", 2),
        EosError::Validation(_) => ("E_VALIDATION", 2),
        EosError::RankDeficiency { .. } => ("E_RANK_DEFICIENT", 3),
        EosError::Bracket { .. } => ("E_BRACKET", 3),
        EosError::Convergence { .. } => ("E_CONVERGENCE", 3),
        EosError::Numerical(_) => ("E_NUMERICAL", 3),
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
