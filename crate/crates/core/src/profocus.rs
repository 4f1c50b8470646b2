//! Progressive focusing baseline.
//!
//! Each node keeps an explicit list of the pattern ids whose patterns contain
//! its head. A child list is built in two passes: project the parent's ids
//! onto the new item, then place the survivors into the child's list.

use crate::bitvec::Word;
use crate::checker::{Engine, EngineCounters, SupersetChecker};
use crate::dataset::ItemId;
use crate::error::{Error, Result};
use crate::mfistore::{MfiStore, StoreSnapshot};
use crate::pool::LevelPool;

pub type PatternIdx = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LmfiList {
    ids: Vec<PatternIdx>,
}

impl LmfiList {
    pub fn from_ids(ids: Vec<PatternIdx>) -> Self {
        Self { ids }
    }

    pub fn ids(&self) -> &[PatternIdx] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn into_buffer(self) -> Vec<PatternIdx> {
        self.ids
    }
}

/// Step one: ids of `parent` whose pattern contains `item`, into `projected`.
fn project<W: Word>(parent: &[PatternIdx], store: &MfiStore<W>, item: ItemId, projected: &mut Vec<PatternIdx>) {
    projected.clear();
    let col = store.item_bits(item);
    for &id in parent {
        if col.get(id as usize) {
            projected.push(id);
        }
    }
}

/// Step two: place the projected ids into the child list.
fn place(projected: &[PatternIdx], out: &mut Vec<PatternIdx>) {
    out.clear();
    for &id in projected {
        out.push(id);
    }
}

/// Child list for `head ∪ {item}`. `scratch` holds the projection.
pub fn pf_child<W: Word>(
    parent: &LmfiList,
    store: &MfiStore<W>,
    item: ItemId,
    scratch: &mut Vec<PatternIdx>,
    mut buf: Vec<PatternIdx>,
) -> LmfiList {
    project(&parent.ids, store, item, scratch);
    place(scratch, &mut buf);
    LmfiList { ids: buf }
}

/// Does some listed pattern contain all of `extra`?
pub fn pf_subsumed<W: Word>(list: &LmfiList, store: &MfiStore<W>, extra: &[ItemId]) -> (bool, usize) {
    let mut ops = 0;
    for &id in &list.ids {
        let mut all = true;
        for &x in extra {
            ops += 1;
            if !store.contains(id as usize, x) {
                all = false;
                break;
            }
        }
        if all {
            return (true, ops.max(1));
        }
    }
    (false, ops)
}

/// Appends the ids of patterns added since `since`; each contains the head.
pub fn pf_increment<W: Word>(
    list: &mut LmfiList,
    since: StoreSnapshot,
    store: &MfiStore<W>,
    head: &[ItemId],
) -> Result<()> {
    let now = store.n_patterns();
    if since.n_patterns > now {
        return Err(Error::StaleSnapshot {
            snapshot: since.n_patterns,
            current: now,
        });
    }
    for id in since.n_patterns..now {
        debug_assert!(head.iter().all(|&h| store.contains(id, h)));
        list.ids.push(id as PatternIdx);
    }
    Ok(())
}

#[derive(Debug)]
pub struct ProFocus {
    pool: LevelPool<PatternIdx>,
    scratch: Vec<PatternIdx>,
    counters: EngineCounters,
}

impl ProFocus {
    pub fn new(max_depth: usize) -> Self {
        Self {
            pool: LevelPool::new(max_depth + 1),
            scratch: Vec::new(),
            counters: EngineCounters::default(),
        }
    }

    fn observe(&mut self, list: &LmfiList) {
        self.counters.peak_local_ids = self.counters.peak_local_ids.max(list.len());
    }
}

impl<W: Word> SupersetChecker<W> for ProFocus {
    type Local = LmfiList;

    fn engine(&self) -> Engine {
        Engine::ProFocus
    }

    fn root(&mut self, store: &MfiStore<W>) -> Result<LmfiList> {
        let mut buf = self.pool.acquire(0, store.n_patterns())?;
        buf.extend(0..store.n_patterns() as PatternIdx);
        let list = LmfiList { ids: buf };
        self.observe(&list);
        Ok(list)
    }

    fn propagate(&mut self, parent: &LmfiList, store: &MfiStore<W>, item: ItemId, depth: usize) -> Result<LmfiList> {
        let buf = self.pool.acquire(depth, parent.len())?;
        let child = pf_child(parent, store, item, &mut self.scratch, buf);
        self.counters.word_ands += (parent.len() + child.len()) as u64;
        self.observe(&child);
        Ok(child)
    }

    fn absorb(&mut self, local: &mut LmfiList, store: &MfiStore<W>, item: ItemId) {
        project(&local.ids, store, item, &mut self.scratch);
        self.counters.word_ands += (local.len() + self.scratch.len()) as u64;
        place(&self.scratch, &mut local.ids);
    }

    fn increment(
        &mut self,
        local: &mut LmfiList,
        since: StoreSnapshot,
        store: &MfiStore<W>,
        head: &[ItemId],
    ) -> Result<()> {
        let need = local.len() + store.n_patterns().saturating_sub(since.n_patterns);
        self.pool.reserve(&mut local.ids, need);
        pf_increment(local, since, store, head)?;
        self.observe(local);
        Ok(())
    }

    fn subsumed(&mut self, local: &LmfiList, store: &MfiStore<W>, _head: &[ItemId], extra: &[ItemId]) -> bool {
        let (found, ops) = pf_subsumed(local, store, extra);
        self.counters.word_ands += ops as u64;
        found
    }

    fn release(&mut self, local: LmfiList, depth: usize) {
        self.pool.release(depth, local.into_buffer());
    }

    fn audit(&self, local: &LmfiList, store: &MfiStore<W>, head: &[ItemId]) -> usize {
        let want: Vec<PatternIdx> = (0..store.n_patterns())
            .filter(|&id| head.iter().all(|&h| store.contains(id, h)))
            .map(|id| id as PatternIdx)
            .collect();
        usize::from(local.ids != want)
    }

    fn counters(&self) -> EngineCounters {
        EngineCounters {
            allocations: self.pool.allocations(),
            growth_events: self.pool.growth_events(),
            ..self.counters
        }
    }
}
