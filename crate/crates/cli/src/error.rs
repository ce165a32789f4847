use std::fmt;

use serde::Serialize;

/// Process exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExitKind {
    Usage,
    Validation,
    Overflow,
    TooLarge,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Usage => 2,
            ExitKind::Validation => 3,
            ExitKind::Overflow => 4,
            ExitKind::TooLarge => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct CliError {
    pub kind: ExitKind,
    /// Short machine-readable name, e.g. `DuplicateEntry`.
    pub name: String,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.message)
    }
}

impl CliError {
    pub fn new(kind: ExitKind, name: &str, message: impl Into<String>) -> Self {
        CliError { kind, name: name.to_string(), message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(ExitKind::Usage, "Usage", message)
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::new(ExitKind::Validation, "Parse", message)
    }

    /// The single-line JSON error record written to stderr.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "error": {
                "code": self.kind.code(),
                "kind": self.name,
                "message": self.message,
            }
        })
        .to_string()
    }
}

impl From<matpow_core::Error> for CliError {
    fn from(e: matpow_core::Error) -> Self {
        use matpow_core::Error::*;
        let (kind, name) = match &e {
            DuplicateEntry(_) => (ExitKind::Validation, "DuplicateEntry"),
            OutOfRange(_) => (ExitKind::Validation, "OutOfRange"),
            WrongLength { .. } => (ExitKind::Validation, "WrongLength"),
            EmptyGrid => (ExitKind::Validation, "EmptyGrid"),
            IndexOutOfRange { .. } => (ExitKind::Validation, "IndexOutOfRange"),
            NotPermutation => (ExitKind::Validation, "NotPermutation"),
            InvalidArgument(_) => (ExitKind::Validation, "InvalidArgument"),
            Overflow => (ExitKind::Overflow, "Overflow"),
            NonIntegralResult(_) => (ExitKind::Overflow, "NonIntegralResult"),
            TooLarge(_) => (ExitKind::TooLarge, "TooLarge"),
        };
        CliError::new(kind, name, e.to_string())
    }
}
