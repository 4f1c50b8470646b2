//! Word-granular local maximal-pattern index (LIND).
//!
//! A node's LIND lists the store words that still hold patterns containing
//! the node's head. Each entry carries the AND of the head items' pattern
//! columns for that word, so a child index is one AND per parent entry:
//!
//! ```text
//! mask(child, w) = mask(parent, w) & item_bits[i].word(w)
//! ```
//!
//! Entries whose mask becomes zero are dropped, so the child's word ids are
//! always a subset of the parent's.

use crate::bitvec::{valid_mask, Word};
use crate::checker::{Engine, EngineCounters, SupersetChecker};
use crate::dataset::ItemId;
use crate::error::{Error, Result};
use crate::mfistore::{MfiStore, StoreSnapshot};
use crate::pool::LevelPool;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LindEntry<W> {
    pub word: usize,
    pub mask: W,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lind<W: Word> {
    entries: Vec<LindEntry<W>>,
    head_len: usize,
}

impl<W: Word> Lind<W> {
    /// Root index: every store word, masked to the valid pattern bits.
    pub fn root(store: &MfiStore<W>, mut buf: Vec<LindEntry<W>>) -> Self {
        buf.clear();
        buf.extend((0..store.word_count()).map(|w| LindEntry {
            word: w,
            mask: store.valid_mask(w),
        }));
        Self {
            entries: buf,
            head_len: 0,
        }
    }

    pub fn entries(&self) -> &[LindEntry<W>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn head_len(&self) -> usize {
        self.head_len
    }

    pub fn word_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.word)
    }

    /// Pattern ids whose bit is set in some mask.
    pub fn pattern_ids(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for e in &self.entries {
            let mut m = e.mask;
            while m != W::ZERO {
                let tz = m.trailing_zeros() as usize;
                out.push(e.word * W::BITS + tz);
                m &= !W::bit(tz);
            }
        }
        out
    }

    pub fn into_buffer(self) -> Vec<LindEntry<W>> {
        self.entries
    }

    /// Child index for `head ∪ {item}`, built in one pass into `buf`.
    /// Returns the child and the number of word ANDs performed.
    pub fn propagate(&self, store: &MfiStore<W>, item: ItemId, mut buf: Vec<LindEntry<W>>) -> (Self, usize) {
        buf.clear();
        let col = store.item_bits(item).words();
        for e in &self.entries {
            let m = e.mask & col[e.word];
            if m != W::ZERO {
                buf.push(LindEntry { word: e.word, mask: m });
            }
        }
        (
            Self {
                entries: buf,
                head_len: self.head_len + 1,
            },
            self.entries.len(),
        )
    }

    /// In-place variant of [`Lind::propagate`] for items absorbed into the head.
    pub fn narrow(&mut self, store: &MfiStore<W>, item: ItemId) -> usize {
        let col = store.item_bits(item).words();
        let ops = self.entries.len();
        self.entries.retain_mut(|e| {
            e.mask &= col[e.word];
            e.mask != W::ZERO
        });
        self.head_len += 1;
        ops
    }

    /// Folds in the patterns appended since `since`.
    ///
    /// New masks are the AND of `head`'s columns restricted to the bits that
    /// became valid after the snapshot. The buffer must already have room for
    /// `store.word_count()` entries. Returns the number of word ANDs.
    pub fn increment_parent(&mut self, since: StoreSnapshot, store: &MfiStore<W>, head: &[ItemId]) -> Result<usize> {
        let now = store.n_patterns();
        if since.n_patterns > now {
            return Err(Error::StaleSnapshot {
                snapshot: since.n_patterns,
                current: now,
            });
        }
        debug_assert_eq!(head.len(), self.head_len);
        if since.n_patterns == now {
            return Ok(0);
        }
        let first_word = since.n_patterns / W::BITS;
        let mut ops = 0;
        for w in first_word..store.word_count() {
            let mut m = store.valid_mask(w) & !valid_mask::<W>(since.n_patterns, w);
            for &h in head {
                m &= store.item_word(h, w);
                ops += 1;
            }
            if m == W::ZERO {
                continue;
            }
            match self.entries.last_mut() {
                Some(last) if last.word == w => last.mask |= m,
                _ => {
                    debug_assert!(self.entries.last().is_none_or(|l| l.word < w));
                    self.entries.push(LindEntry { word: w, mask: m });
                }
            }
        }
        Ok(ops)
    }

    /// Does some indexed pattern also contain every item of `extra`?
    /// Returns the answer and the number of word ANDs.
    pub fn subsumed(&self, store: &MfiStore<W>, extra: &[ItemId]) -> (bool, usize) {
        let mut ops = 0;
        for e in &self.entries {
            let mut m = e.mask;
            for &x in extra {
                m &= store.item_word(x, e.word);
                ops += 1;
                if m == W::ZERO {
                    break;
                }
            }
            if m != W::ZERO {
                return (true, ops);
            }
        }
        (false, ops)
    }

    /// Violations of the structural and mask invariants against a direct
    /// subset test over the whole store.
    pub fn count_violations(&self, store: &MfiStore<W>, head: &[ItemId]) -> usize {
        let mut bad = 0;
        if self.head_len != head.len() {
            bad += 1;
        }
        bad += self.entries.windows(2).filter(|p| p[0].word >= p[1].word).count();
        bad += self.entries.iter().filter(|e| e.mask == W::ZERO).count();
        let mut entries = self.entries.iter().peekable();
        for w in 0..store.word_count() {
            let have = match entries.peek() {
                Some(e) if e.word == w => entries.next().unwrap().mask,
                _ => W::ZERO,
            };
            let mut want = W::ZERO;
            for j in 0..W::BITS {
                let id = w * W::BITS + j;
                if id >= store.n_patterns() {
                    break;
                }
                if head.iter().all(|&h| store.contains(id, h)) {
                    want |= W::bit(j);
                }
            }
            if have != want {
                bad += 1;
            }
        }
        bad + entries.count()
    }
}

/// `child ⊆ parent` over ascending word ids.
fn word_ids_contained<W: Word>(child: &Lind<W>, parent: &Lind<W>) -> bool {
    let mut p = parent.entries.iter();
    child.entries.iter().all(|c| p.by_ref().any(|e| e.word == c.word))
}

/// The FastLMFI engine: LIND propagation over a per-level buffer pool.
#[derive(Debug)]
pub struct FastLmfi<W: Word> {
    pool: LevelPool<LindEntry<W>>,
    counters: EngineCounters,
    audit: bool,
}

impl<W: Word> FastLmfi<W> {
    /// `max_depth` is the deepest level the search may reach.
    pub fn new(max_depth: usize) -> Self {
        Self {
            pool: LevelPool::new(max_depth + 1),
            counters: EngineCounters::default(),
            audit: false,
        }
    }

    pub fn pool(&self) -> &LevelPool<LindEntry<W>> {
        &self.pool
    }

    fn observe(&mut self, lind: &Lind<W>, store: &MfiStore<W>) {
        self.counters.peak_lind_entries = self.counters.peak_lind_entries.max(lind.len());
        if lind.len() > store.word_count() {
            self.counters.index_bound_violations += 1;
        }
    }
}

impl<W: Word> SupersetChecker<W> for FastLmfi<W> {
    type Local = Lind<W>;

    fn engine(&self) -> Engine {
        Engine::FastLmfi
    }

    fn root(&mut self, store: &MfiStore<W>) -> Result<Lind<W>> {
        let buf = self.pool.acquire(0, store.word_count())?;
        let lind = Lind::root(store, buf);
        self.observe(&lind, store);
        Ok(lind)
    }

    fn propagate(&mut self, parent: &Lind<W>, store: &MfiStore<W>, item: ItemId, depth: usize) -> Result<Lind<W>> {
        let buf = self.pool.acquire(depth, parent.len())?;
        let (child, ops) = parent.propagate(store, item, buf);
        self.counters.word_ands += ops as u64;
        if self.audit && !word_ids_contained(&child, parent) {
            self.counters.containment_violations += 1;
        }
        self.observe(&child, store);
        Ok(child)
    }

    fn absorb(&mut self, local: &mut Lind<W>, store: &MfiStore<W>, item: ItemId) {
        self.counters.word_ands += local.narrow(store, item) as u64;
    }

    fn increment(
        &mut self,
        local: &mut Lind<W>,
        since: StoreSnapshot,
        store: &MfiStore<W>,
        head: &[ItemId],
    ) -> Result<()> {
        self.pool.reserve(&mut local.entries, store.word_count());
        let ops = local.increment_parent(since, store, head)?;
        self.counters.word_ands += ops as u64;
        self.observe(local, store);
        Ok(())
    }

    fn subsumed(&mut self, local: &Lind<W>, store: &MfiStore<W>, _head: &[ItemId], extra: &[ItemId]) -> bool {
        let (found, ops) = local.subsumed(store, extra);
        self.counters.word_ands += ops as u64;
        found
    }

    fn release(&mut self, local: Lind<W>, depth: usize) {
        self.pool.release(depth, local.into_buffer());
    }

    fn audit(&self, local: &Lind<W>, store: &MfiStore<W>, head: &[ItemId]) -> usize {
        local.count_violations(store, head)
    }

    fn set_audit(&mut self, on: bool) {
        self.audit = on;
    }

    fn counters(&self) -> EngineCounters {
        EngineCounters {
            allocations: self.pool.allocations(),
            growth_events: self.pool.growth_events(),
            ..self.counters
        }
    }
}
