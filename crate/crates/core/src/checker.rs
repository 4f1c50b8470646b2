//! The superset-checking contract shared by the three engines.

use std::fmt;
use std::str::FromStr;

use crate::bitvec::Word;
use crate::dataset::ItemId;
use crate::error::{Error, Result};
use crate::mfistore::{MfiStore, StoreSnapshot};

/// Which superset-checking engine drives the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    FastLmfi,
    ProFocus,
    Naive,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::FastLmfi, Engine::ProFocus, Engine::Naive];

    pub fn name(self) -> &'static str {
        match self {
            Engine::FastLmfi => "fastlmfi",
            Engine::ProFocus => "profocus",
            Engine::Naive => "naive",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fastlmfi" => Ok(Engine::FastLmfi),
            "profocus" => Ok(Engine::ProFocus),
            "naive" => Ok(Engine::Naive),
            other => Err(Error::Config(format!("unknown engine {other:?}"))),
        }
    }
}

/// Work counters an engine accumulates over a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineCounters {
    /// Elementary AND / membership operations.
    pub word_ands: u64,
    /// Largest word-granular local index seen.
    pub peak_lind_entries: usize,
    /// Largest pattern-granular local list seen.
    pub peak_local_ids: usize,
    /// Times a local index held more entries than the store has words.
    pub index_bound_violations: u64,
    /// Propagations whose child index was not contained in its parent.
    pub containment_violations: u64,
    pub allocations: usize,
    pub growth_events: usize,
}

/// Per-node local state plus the operations the miner needs from it.
///
/// `Local` is the node's view of the relevant maximal patterns. The miner
/// guarantees DFS discipline: the local at `depth` is released before another
/// local at the same depth is created.
pub trait SupersetChecker<W: Word> {
    type Local;

    fn engine(&self) -> Engine;

    /// Local state of the root (empty head) at depth 0.
    fn root(&mut self, store: &MfiStore<W>) -> Result<Self::Local>;

    /// Child local for `head ∪ {item}` at `depth`.
    fn propagate(
        &mut self,
        parent: &Self::Local,
        store: &MfiStore<W>,
        item: ItemId,
        depth: usize,
    ) -> Result<Self::Local>;

    /// Narrows `local` in place after `item` joined the head (PEP).
    fn absorb(&mut self, local: &mut Self::Local, store: &MfiStore<W>, item: ItemId);

    /// Adds patterns appended since `since`, all of which contain `head`.
    fn increment(
        &mut self,
        local: &mut Self::Local,
        since: StoreSnapshot,
        store: &MfiStore<W>,
        head: &[ItemId],
    ) -> Result<()>;

    /// Is `head ∪ extra` contained in some stored pattern?
    fn subsumed(&mut self, local: &Self::Local, store: &MfiStore<W>, head: &[ItemId], extra: &[ItemId]) -> bool;

    fn release(&mut self, local: Self::Local, depth: usize);

    /// Number of invariant violations in `local` against a direct recheck of
    /// the store. Expensive; instrumented runs only.
    fn audit(&self, _local: &Self::Local, _store: &MfiStore<W>, _head: &[ItemId]) -> usize {
        0
    }

    /// Turns on per-call self checks.
    fn set_audit(&mut self, _on: bool) {}

    fn counters(&self) -> EngineCounters;
}

/// Sorted union of `a` and `b` into `out`.
pub(crate) fn sorted_union(a: &[ItemId], b: &[ItemId], out: &mut Vec<ItemId>) {
    out.clear();
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out.dedup();
}

/// Linear scan over the whole store for every query.
#[derive(Debug, Default)]
pub struct NaiveChecker {
    scratch: Vec<ItemId>,
    counters: EngineCounters,
}

impl NaiveChecker {
    pub fn new() -> Self {
        Self::default()
    }
}

impl<W: Word> SupersetChecker<W> for NaiveChecker {
    type Local = ();

    fn engine(&self) -> Engine {
        Engine::Naive
    }

    fn root(&mut self, _store: &MfiStore<W>) -> Result<()> {
        Ok(())
    }

    fn propagate(&mut self, _: &(), _: &MfiStore<W>, _: ItemId, _: usize) -> Result<()> {
        Ok(())
    }

    fn absorb(&mut self, _: &mut (), _: &MfiStore<W>, _: ItemId) {}

    fn increment(&mut self, _: &mut (), _: StoreSnapshot, _: &MfiStore<W>, _: &[ItemId]) -> Result<()> {
        Ok(())
    }

    fn subsumed(&mut self, _: &(), store: &MfiStore<W>, head: &[ItemId], extra: &[ItemId]) -> bool {
        sorted_union(head, extra, &mut self.scratch);
        let (found, scanned) = store.naive_subsumed_counted(&self.scratch);
        self.counters.word_ands += scanned as u64;
        found
    }

    fn release(&mut self, _: (), _: usize) {}

    fn counters(&self) -> EngineCounters {
        self.counters
    }
}
