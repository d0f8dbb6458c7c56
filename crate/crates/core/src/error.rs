use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("projected tile count {projected} exceeds cap {cap}")]
    TileCap { projected: u128, cap: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("empty net")]
    EmptyNet,
    #[error("empty square: no net points in the square")]
    EmptySquare,
    #[error("square {square} is not inside the window {window}")]
    OutsideWindow { square: String, window: String },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed patch file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
