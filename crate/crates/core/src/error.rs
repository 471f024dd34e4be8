use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("denominator vanishes: {0}")]
    EvalPole(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("lambda is zero: {0}")]
    LambdaZero(String),
    #[error("gluing undefined: {0}")]
    GluingUndefined(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("instruction {index}: {source}")]
    AtInstruction { index: usize, source: Box<Error> },
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, column, message: message.into() }
    }

    pub fn at(self, index: usize) -> Error {
        match self {
            Error::AtInstruction { .. } => self,
            other => Error::AtInstruction { index, source: Box::new(other) },
        }
    }

    /// Stable name used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::EvalPole(_) => "EvalPole",
            Error::Parse { .. } => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::UnknownArc(_) => "UnknownArc",
            Error::Shape(_) => "ShapeError",
            Error::LambdaZero(_) => "LambdaZero",
            Error::GluingUndefined(_) => "GluingUndefined",
            Error::Label(_) => "LabelError",
            Error::Consistency(_) => "ConsistencyError",
            Error::Unsupported(_) => "Unsupported",
            Error::AtInstruction { source, .. } => source.kind(),
        }
    }

    pub fn instruction(&self) -> Option<usize> {
        match self {
            Error::AtInstruction { index, .. } => Some(*index),
            _ => None,
        }
    }

    pub fn is_parse(&self) -> bool {
        match self {
            Error::Parse { .. } => true,
            Error::AtInstruction { source, .. } => source.is_parse(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
