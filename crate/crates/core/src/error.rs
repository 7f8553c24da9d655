use thiserror::Error;

/// Structural problems in a schedule grid or its file encoding.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("team count must be even and at least 4, got {0}")]
    TeamCount(usize),
    #[error("team {team}: expected {expected} rounds, found {found}")]
    RowLength { team: usize, expected: usize, found: usize },
    #[error("team {team}, round {round}: opponent value {value} out of range")]
    OpponentOutOfRange { team: usize, round: usize, value: i32 },
    #[error("team {team}, round {round}: team plays itself")]
    SelfOpponent { team: usize, round: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Problems in a distance matrix or its file encoding.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is empty")]
    Empty,
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("entry ({i}, {j}) is negative")]
    Negative { i: usize, j: usize },
    #[error("entry ({i}, {j}) differs from ({j}, {i})")]
    Asymmetric { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) is nonzero")]
    NonzeroDiagonal { i: usize },
}

/// Errors from the operations of the toolkit.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TtpError {
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("size mismatch: schedule has {schedule} teams, matrix has {matrix}")]
    DimensionMismatch { schedule: usize, matrix: usize },
    #[error("expected {expected} teams, got {found}")]
    WrongTeamCount { expected: usize, found: usize },
    #[error("team count {0} must be even and at least 4")]
    InvalidTeamCount(usize),
    #[error("team count {0} is not of the form 6m - 2 with m >= {1}")]
    NotExpanderSize(usize, usize),
    #[error("m must be at least 1, got {0}")]
    InvalidM(usize),
    #[error("ordering is not a permutation of 1..={0}")]
    InvalidOrdering(usize),
    #[error("the catalog has no schedules in families {0}")]
    NoCandidates(String),
    #[error("bundle line {line}: {message}")]
    Bundle { line: usize, message: String },
}
