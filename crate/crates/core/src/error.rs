use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: invalid item token {token:?}")]
    Parse { line: usize, token: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot append an empty pattern")]
    EmptyPattern,

    #[error("oracle refuses {n_items} items (limit {limit})")]
    OracleGuard { n_items: usize, limit: usize },

    #[error("level pool: depth {depth} is already live")]
    LevelLive { depth: usize },

    #[error("level pool: depth {depth} out of range (max {max})")]
    LevelOutOfRange { depth: usize, max: usize },

    #[error("store snapshot of {snapshot} patterns is ahead of store with {current}")]
    StaleSnapshot { snapshot: usize, current: usize },

    #[error(transparent)]
    Io(#[from] io::Error),
}
