//! Depth-first set-enumeration search for maximal frequent itemsets.
//!
//! Each node has a head (the itemset) and a tail (candidate extensions).
//! At a node the miner counts extension supports, moves equal-support items
//! into the head (PEP), reorders the tail by increasing support, then either
//! emits a leaf, prunes a subsumed head-union-tail (HUTMFI), or recurses.
//! A leftmost child whose whole head-union-tail turned out frequent stops the
//! remaining siblings (FHUT).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::bitvec::{BitVec, Word};
use crate::checker::{sorted_union, Engine, NaiveChecker, SupersetChecker};
use crate::dataset::{ExtItem, ItemId, VerticalDb};
use crate::error::{Error, Result};
use crate::lind::FastLmfi;
use crate::mfistore::{MfiStore, PatternId};
use crate::profocus::ProFocus;
use crate::stats::RunStats;

/// Width of the pattern-bitmap words used by the indexed engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordBits {
    W32,
    W64,
}

impl WordBits {
    pub fn bits(self) -> usize {
        match self {
            WordBits::W32 => 32,
            WordBits::W64 => 64,
        }
    }
}

impl fmt::Display for WordBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

impl FromStr for WordBits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "32" => Ok(WordBits::W32),
            "64" => Ok(WordBits::W64),
            other => Err(Error::Config(format!("word width must be 32 or 64, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinerConfig {
    pub minsup: usize,
    pub engine: Engine,
    pub pep: bool,
    pub fhut: bool,
    pub hutmfi: bool,
    pub reorder: bool,
    pub word_bits: WordBits,
    /// Recheck every local index against the store after each update.
    pub audit: bool,
    /// Compare every superset answer with a full linear scan.
    pub cross_check: bool,
    /// Count heads entered more than once.
    pub track_visits: bool,
}

impl MinerConfig {
    pub fn new(minsup: usize) -> Self {
        Self {
            minsup,
            engine: Engine::FastLmfi,
            pep: true,
            fhut: true,
            hutmfi: true,
            reorder: true,
            word_bits: WordBits::W64,
            audit: false,
            cross_check: false,
            track_visits: false,
        }
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    /// Sets the four pruning toggles from the low bits of `mask`
    /// (pep, fhut, hutmfi, reorder).
    pub fn with_toggles(mut self, mask: u8) -> Self {
        self.pep = mask & 1 != 0;
        self.fhut = mask & 2 != 0;
        self.hutmfi = mask & 4 != 0;
        self.reorder = mask & 8 != 0;
        self
    }

    pub fn instrumented(mut self) -> Self {
        self.audit = true;
        self.cross_check = true;
        self.track_visits = true;
        self
    }
}

pub struct Mined<W: Word> {
    pub store: MfiStore<W>,
    pub stats: RunStats,
}

/// A mined pattern in external item ids, ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern {
    pub items: Vec<ExtItem>,
    pub support: usize,
}

/// Word-width-independent result of a run.
#[derive(Clone, Debug)]
pub struct MiningOutput {
    /// Discovery order.
    pub patterns: Vec<Pattern>,
    pub stats: RunStats,
}

impl MiningOutput {
    /// Item sets only, sorted; for set comparisons.
    pub fn sorted_itemsets(&self) -> Vec<Vec<ExtItem>> {
        let mut v: Vec<Vec<ExtItem>> = self.patterns.iter().map(|p| p.items.clone()).collect();
        v.sort();
        v
    }

    pub fn write_fimi<Wr: std::io::Write>(&self, out: &mut Wr) -> std::io::Result<()> {
        for p in &self.patterns {
            let items: Vec<String> = p.items.iter().map(|i| i.to_string()).collect();
            writeln!(out, "{} ({})", items.join(" "), p.support)?;
        }
        Ok(())
    }
}

/// Mines with pattern words of type `W` (`cfg.word_bits` is ignored).
pub fn mine<W: Word>(db: &VerticalDb, cfg: &MinerConfig) -> Result<Mined<W>> {
    if cfg.minsup == 0 {
        return Err(Error::Config("minsup must be >= 1".into()));
    }
    if cfg.minsup != db.minsup {
        return Err(Error::Config(format!(
            "database built for minsup {} but miner configured with {}",
            db.minsup, cfg.minsup
        )));
    }
    let depth = db.n_items();
    match cfg.engine {
        Engine::FastLmfi => Search::<W, _>::new(db, cfg, FastLmfi::<W>::new(depth)).run(),
        Engine::ProFocus => Search::<W, _>::new(db, cfg, ProFocus::new(depth)).run(),
        Engine::Naive => Search::<W, _>::new(db, cfg, NaiveChecker::new()).run(),
    }
}

/// Mines with the word width selected in `cfg` and maps results to external ids.
pub fn mine_patterns(db: &VerticalDb, cfg: &MinerConfig) -> Result<MiningOutput> {
    match cfg.word_bits {
        WordBits::W32 => mine::<u32>(db, cfg).map(|m| to_output(db, m)),
        WordBits::W64 => mine::<u64>(db, cfg).map(|m| to_output(db, m)),
    }
}

fn to_output<W: Word>(db: &VerticalDb, mined: Mined<W>) -> MiningOutput {
    let patterns = (0..mined.store.n_patterns())
        .map(|id| Pattern {
            items: db.to_external(mined.store.pattern(id)),
            support: mined.store.support(id),
        })
        .collect();
    MiningOutput {
        patterns,
        stats: mined.stats,
    }
}

struct Search<'a, W: Word, C: SupersetChecker<W>> {
    db: &'a VerticalDb,
    cfg: &'a MinerConfig,
    store: MfiStore<W>,
    checker: C,
    /// Transaction bitmap of the node at each depth.
    tids: Vec<BitVec>,
    head: Vec<ItemId>,
    union: Vec<ItemId>,
    stats: RunStats,
    superset_time: Duration,
    visited: HashSet<Vec<ItemId>>,
}

impl<'a, W: Word, C: SupersetChecker<W>> Search<'a, W, C> {
    fn new(db: &'a VerticalDb, cfg: &'a MinerConfig, mut checker: C) -> Self {
        checker.set_audit(cfg.audit);
        let n = db.n_transactions;
        let mut tids = vec![BitVec::zeros(n); db.n_items() + 1];
        tids[0] = BitVec::ones(n);
        Self {
            db,
            cfg,
            store: MfiStore::new(db.n_items()),
            stats: RunStats::new(checker.engine(), W::BITS),
            checker,
            tids,
            head: Vec::new(),
            union: Vec::new(),
            superset_time: Duration::ZERO,
            visited: HashSet::new(),
        }
    }

    fn run(mut self) -> Result<Mined<W>> {
        let start = Instant::now();
        let t = Instant::now();
        let mut root = self.checker.root(&self.store)?;
        self.superset_time += t.elapsed();
        let items: Vec<ItemId> = (0..self.db.n_items() as ItemId).collect();
        self.visit(0, &items, &mut root, self.db.n_transactions, true)?;
        self.checker.release(root, 0);

        if self.cfg.audit && self.store.find_subsumed_pair().is_some() {
            self.stats.audit_violations += 1;
        }
        let c = self.checker.counters();
        let stats = &mut self.stats;
        stats.total = start.elapsed();
        stats.superset = self.superset_time.min(stats.total);
        stats.n_mfi = self.store.n_patterns();
        stats.n_word_ands = c.word_ands;
        stats.peak_lind_entries = c.peak_lind_entries;
        stats.peak_local_ids = c.peak_local_ids;
        stats.allocations = c.allocations;
        stats.growth_events = c.growth_events;
        stats.index_bound_violations = c.index_bound_violations;
        stats.containment_violations = c.containment_violations;
        Ok(Mined {
            store: self.store,
            stats: self.stats,
        })
    }

    /// Returns whether this node's head-union-candidate-tail is known
    /// frequent along its leftmost chain (the FHUT signal for the parent).
    fn visit(
        &mut self,
        depth: usize,
        candidates: &[ItemId],
        local: &mut C::Local,
        support: usize,
        is_hut: bool,
    ) -> Result<bool> {
        self.stats.n_nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if self.cfg.track_visits {
            let mut key = self.head.clone();
            key.sort_unstable();
            if !self.visited.insert(key) {
                self.stats.duplicate_heads += 1;
            }
        }
        let entry_len = self.head.len();

        let tail_supports = self.extend_supports(depth, candidates);
        let all_frequent = tail_supports.len() == candidates.len();
        let mut tail = if self.cfg.pep {
            self.pep_trim(local, support, tail_supports)
        } else {
            tail_supports
        };
        if self.cfg.reorder {
            reorder_tail(&mut tail);
        }
        let tail: Vec<ItemId> = tail.into_iter().map(|(x, _)| x).collect();

        let hut_frequent = if tail.is_empty() {
            self.emit_if_maximal(local, support)?;
            is_hut && all_frequent
        } else if self.cfg.hutmfi && self.check(local, &tail) {
            self.stats.hutmfi_prunes += 1;
            is_hut && all_frequent
        } else {
            let mut leftmost_frequent = false;
            for (k, &item) in tail.iter().enumerate() {
                let snapshot = self.store.snapshot();
                let (lo, hi) = self.tids.split_at_mut(depth + 1);
                let child_support = hi[0].and_into(&lo[depth], &self.db.columns[item as usize]);

                let t = Instant::now();
                let mut child = self.checker.propagate(local, &self.store, item, depth + 1)?;
                self.superset_time += t.elapsed();
                self.head.push(item);
                self.audit(&child);

                let r = self.visit(depth + 1, &tail[k + 1..], &mut child, child_support, k == 0);

                self.head.pop();
                let t = Instant::now();
                self.checker.release(child, depth + 1);
                let inc = self.checker.increment(local, snapshot, &self.store, &self.head);
                self.superset_time += t.elapsed();
                let r = r?;
                inc?;
                self.audit(local);

                if k == 0 && r && self.cfg.fhut {
                    self.stats.fhut_cutoffs += 1;
                    leftmost_frequent = true;
                    break;
                }
            }
            is_hut && all_frequent && leftmost_frequent
        };

        self.head.truncate(entry_len);
        Ok(hut_frequent)
    }

    /// Support of `head ∪ {x}` for each candidate, keeping the frequent ones.
    fn extend_supports(&self, depth: usize, candidates: &[ItemId]) -> Vec<(ItemId, usize)> {
        extend_supports(&self.tids[depth], self.db, candidates)
    }

    /// Moves every equal-support extension into the head.
    fn pep_trim(&mut self, local: &mut C::Local, support: usize, tail: Vec<(ItemId, usize)>) -> Vec<(ItemId, usize)> {
        let mut kept = Vec::with_capacity(tail.len());
        let mut absorbed = false;
        for (x, s) in tail {
            if s == support {
                self.head.push(x);
                self.stats.pep_absorbed += 1;
                let t = Instant::now();
                self.checker.absorb(local, &self.store, x);
                self.superset_time += t.elapsed();
                absorbed = true;
            } else {
                kept.push((x, s));
            }
        }
        if absorbed {
            self.audit(local);
        }
        kept
    }

    fn emit_if_maximal(&mut self, local: &mut C::Local, support: usize) -> Result<Option<PatternId>> {
        if self.head.is_empty() || self.check(local, &[]) {
            return Ok(None);
        }
        let mut items = self.head.clone();
        items.sort_unstable();
        self.store.append_pattern(&items, support).map(Some)
    }

    /// Superset query for `head ∪ extra`.
    fn check(&mut self, local: &C::Local, extra: &[ItemId]) -> bool {
        self.stats.n_superset_checks += 1;
        let t = Instant::now();
        let answer = self.checker.subsumed(local, &self.store, &self.head, extra);
        self.superset_time += t.elapsed();
        if self.cfg.cross_check {
            sorted_union(&self.head, extra, &mut self.union);
            self.stats.cross_checks += 1;
            if self.store.naive_subsumed(&self.union) != answer {
                self.stats.cross_mismatches += 1;
            }
        }
        answer
    }

    fn audit(&mut self, local: &C::Local) {
        if self.cfg.audit {
            self.stats.audit_checks += 1;
            let bad = self.checker.audit(local, &self.store, &self.head);
            self.stats.audit_violations += bad as u64;
        }
    }
}

/// Supports of `tids ∧ column(x)` for each candidate, frequent ones only.
pub fn extend_supports(tids: &BitVec, db: &VerticalDb, candidates: &[ItemId]) -> Vec<(ItemId, usize)> {
    candidates
        .iter()
        .filter_map(|&x| {
            let s = tids.and_count(&db.columns[x as usize]);
            (s >= db.minsup).then_some((x, s))
        })
        .collect()
}

/// Ascending extension support, ties by ascending item id.
pub fn reorder_tail(tail: &mut [(ItemId, usize)]) {
    tail.sort_by_key(|&(x, s)| (s, x));
}

/// Splits `tail` into items with the head's support (moved to the head) and
/// the rest.
pub fn pep_split(support: usize, tail: &[(ItemId, usize)]) -> (Vec<ItemId>, Vec<(ItemId, usize)>) {
    let (eq, rest): (Vec<_>, Vec<_>) = tail.iter().partition(|p| p.1 == support);
    (eq.into_iter().map(|(item, _)| item).collect(), rest)
}
