//! Error records emitted on stderr with exit code 2.

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {path}: {message}")]
    Io { path: String, message: String },
    #[error("{module}.{operation}: {message}")]
    Module { module: &'static str, operation: &'static str, message: String },
}

impl CliError {
    pub fn module(module: &'static str, operation: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Module { module, operation, message: e.to_string() }
    }

    /// One-line JSON record for the diagnostic stream.
    pub fn record(&self) -> String {
        let v = match self {
            CliError::Usage(m) => json!({"error": "usage", "message": m}),
            CliError::Io { path, message } => json!({"error": "io", "path": path, "message": message}),
            CliError::Module { module, operation, message } => {
                let kind = message.split(':').next().unwrap_or("").trim();
                json!({"error": kind, "module": module, "operation": operation, "message": message})
            }
        };
        v.to_string()
    }
}

/// Wraps a module error with its module and operation names.
pub trait Context<T> {
    fn op(self, module: &'static str, operation: &'static str) -> Result<T, CliError>;
}

impl<T, E: std::fmt::Display> Context<T> for Result<T, E> {
    fn op(self, module: &'static str, operation: &'static str) -> Result<T, CliError> {
        self.map_err(|e| CliError::module(module, operation, e))
    }
}
