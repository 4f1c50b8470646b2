//! Maximal frequent itemset mining with indexed local maximal pattern
//! propagation.
//!
//! The search is a depth-first set enumeration with PEP, FHUT, HUTMFI and
//! dynamic reordering. Superset checking goes through a pluggable
//! [`SupersetChecker`]:
//!
//! - [`FastLmfi`]: word-granular local index over vertical pattern bitmaps,
//!   child indexes built in one AND pass, per-level preallocated buffers.
//! - [`ProFocus`]: progressive focusing, explicit per-node pattern-id lists
//!   built in two passes.
//! - [`NaiveChecker`]: linear scan of every mined pattern.
//!
//! ```
//! use fastlmfi::{build_vertical, mine_patterns, parse_fimi_str, MinerConfig};
//!
//! let db = parse_fimi_str("1 2 3\n1 2 3 4\n2 3 4\n1 3 4\n1 2\n").unwrap();
//! let vdb = build_vertical(&db, 2).unwrap();
//! let out = mine_patterns(&vdb, &MinerConfig::new(2)).unwrap();
//! assert_eq!(out.sorted_itemsets(), vec![vec![1, 2, 3], vec![1, 3, 4], vec![2, 3, 4]]);
//! ```

pub mod bitvec;
pub mod checker;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod lind;
pub mod mfistore;
pub mod miner;
pub mod oracle;
pub mod pool;
pub mod profocus;
pub mod stats;

pub use bitvec::{BitVec, Word};
pub use checker::{Engine, EngineCounters, NaiveChecker, SupersetChecker};
pub use dataset::{
    build_vertical, load_fimi, parse_fimi, parse_fimi_str, resolve_minsup, ExtItem, ItemId, MinSupport, TransactionDb,
    VerticalDb,
};
pub use error::{Error, Result};
pub use lind::{FastLmfi, Lind, LindEntry};
pub use mfistore::{MfiStore, PatternId, StoreSnapshot};
pub use miner::{mine, mine_patterns, Mined, MinerConfig, MiningOutput, Pattern, WordBits};
pub use oracle::{lattice_mfi, oracle_mfi, OracleResult};
pub use pool::LevelPool;
pub use profocus::{LmfiList, ProFocus};
pub use stats::RunStats;
