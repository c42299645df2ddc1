use std::fmt;

/// Failures surfaced by the command line. Syntax, usage and IO problems exit
/// with status 2, domain errors from the library with status 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Syntax { flag: Option<String>, line: Option<usize>, column: Option<usize>, message: String },
    Usage(String),
    Io(String),
    Domain(lpa_core::Error),
}

impl CliError {
    pub fn syntax_at(column: usize, message: impl Into<String>) -> Self {
        CliError::Syntax { flag: None, line: None, column: Some(column), message: message.into() }
    }

    pub fn syntax(message: impl Into<String>) -> Self {
        CliError::Syntax { flag: None, line: None, column: None, message: message.into() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Domain(e) => e.kind(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    /// Prefixes a syntax error with the flag it came from.
    pub fn in_flag(self, flag: &str) -> Self {
        match self {
            CliError::Syntax { flag: None, line, column, message } => CliError::Syntax { flag: Some(flag.into()), line, column, message },
            other => other,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax { flag, line, column, message } => {
                if let Some(fl) = flag {
                    write!(f, "{fl}: ")?;
                }
                match (line, column) {
                    (Some(l), Some(c)) => write!(f, "line {l}, column {c}: ")?,
                    (Some(l), None) => write!(f, "line {l}: ")?,
                    (None, Some(c)) => write!(f, "column {c}: ")?,
                    (None, None) => {}
                }
                f.write_str(message)
            }
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<lpa_core::Error> for CliError {
    fn from(e: lpa_core::Error) -> Self {
        CliError::Domain(e)
    }
}
