use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", located(file, *line, *column, message))]
    Syntax { file: String, line: usize, column: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] paralift_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

fn located(file: &str, line: usize, column: usize, message: &str) -> String {
    match (line, column) {
        (0, _) => format!("{file}: {message}"),
        (l, 0) => format!("{file}:{l}: {message}"),
        (l, c) => format!("{file}:{l}:{c}: {message}"),
    }
}
