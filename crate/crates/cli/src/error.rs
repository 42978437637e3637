use std::path::PathBuf;

use gencliff::{AlgebraError, FieldError, ParseError, StructureError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for a refused precondition, 3 for a failed verification, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Structure(e) => match e {
                StructureError::Verification(_) => 3,
                StructureError::Field(f) => field_code(f),
                StructureError::Algebra(a) => algebra_code(a),
                _ => 2,
            },
            CliError::Algebra(a) => algebra_code(a),
            CliError::Field(f) => field_code(f),
            CliError::Parse(_) | CliError::Io { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "precondition",
            3 => "verification",
            _ => "error",
        }
    }
}

fn algebra_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::Precondition(_) | AlgebraError::Characteristic { .. } => 2,
        AlgebraError::Field(f) => field_code(f),
        _ => 1,
    }
}

fn field_code(e: &FieldError) -> i32 {
    match e {
        FieldError::NoPrimitiveCubeRoot | FieldError::Undecidable(_) => 2,
        _ => 1,
    }
}
