//! Global store of mined maximal patterns.
//!
//! Patterns are kept twice: as an append-ordered list of sorted itemsets,
//! and as one vertical bit vector per item with one bit per pattern. Word
//! `w` of every column covers pattern ids `[w * W::BITS, (w + 1) * W::BITS)`.

use std::io::{self, Write};

use crate::bitvec::{valid_mask, words_for, BitVec, Word};
use crate::dataset::{ItemId, VerticalDb};
use crate::error::{Error, Result};

pub type PatternId = usize;

/// Point-in-time marker of the store size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StoreSnapshot {
    pub n_patterns: usize,
}

impl StoreSnapshot {
    pub fn word_count<W: Word>(self) -> usize {
        words_for::<W>(self.n_patterns)
    }

    /// Valid bits of the last word at snapshot time.
    pub fn last_word_mask<W: Word>(self) -> W {
        match self.word_count::<W>() {
            0 => W::ZERO,
            n => valid_mask::<W>(self.n_patterns, n - 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MfiStore<W: Word = u64> {
    patterns: Vec<Vec<ItemId>>,
    supports: Vec<usize>,
    item_bits: Vec<BitVec<W>>,
}

impl<W: Word> MfiStore<W> {
    pub fn new(n_items: usize) -> Self {
        Self {
            patterns: Vec::new(),
            supports: Vec::new(),
            item_bits: vec![BitVec::zeros(0); n_items],
        }
    }

    pub fn n_items(&self) -> usize {
        self.item_bits.len()
    }

    pub fn n_patterns(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn word_count(&self) -> usize {
        words_for::<W>(self.patterns.len())
    }

    pub fn snapshot(&self) -> StoreSnapshot {
        StoreSnapshot {
            n_patterns: self.patterns.len(),
        }
    }

    pub fn pattern(&self, id: PatternId) -> &[ItemId] {
        &self.patterns[id]
    }

    pub fn support(&self, id: PatternId) -> usize {
        self.supports[id]
    }

    pub fn patterns(&self) -> impl Iterator<Item = &[ItemId]> + '_ {
        self.patterns.iter().map(Vec::as_slice)
    }

    pub fn item_bits(&self, item: ItemId) -> &BitVec<W> {
        &self.item_bits[item as usize]
    }

    /// Word `w` of item `item`'s pattern column.
    #[inline]
    pub fn item_word(&self, item: ItemId, w: usize) -> W {
        self.item_bits[item as usize].word(w)
    }

    /// Valid pattern bits of word `w`.
    #[inline]
    pub fn valid_mask(&self, w: usize) -> W {
        valid_mask::<W>(self.patterns.len(), w)
    }

    #[inline]
    pub fn contains(&self, id: PatternId, item: ItemId) -> bool {
        self.item_bits[item as usize].get(id)
    }

    /// Appends a pattern the caller has already checked for subsumption.
    pub fn append_pattern(&mut self, itemset: &[ItemId], support: usize) -> Result<PatternId> {
        if itemset.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut items = itemset.to_vec();
        items.sort_unstable();
        items.dedup();
        let id = self.patterns.len();
        for col in &mut self.item_bits {
            col.push_zero();
        }
        for &i in &items {
            self.item_bits[i as usize].set(id);
        }
        self.patterns.push(items);
        self.supports.push(support);
        Ok(id)
    }

    /// Linear scan: is some stored pattern a superset of `itemset` (sorted)?
    pub fn naive_subsumed(&self, itemset: &[ItemId]) -> bool {
        self.patterns.iter().any(|p| is_sorted_subset(itemset, p))
    }

    /// Number of patterns a linear scan visits before answering.
    pub fn naive_subsumed_counted(&self, itemset: &[ItemId]) -> (bool, usize) {
        for (n, p) in self.patterns.iter().enumerate() {
            if is_sorted_subset(itemset, p) {
                return (true, n + 1);
            }
        }
        (false, self.patterns.len())
    }

    /// First pair `(a, b)` with `patterns[a] ⊆ patterns[b]`, if any.
    pub fn find_subsumed_pair(&self) -> Option<(PatternId, PatternId)> {
        for (a, pa) in self.patterns.iter().enumerate() {
            for (b, pb) in self.patterns.iter().enumerate() {
                if a != b && is_sorted_subset(pa, pb) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Rebuilds pattern `id` from the vertical columns.
    pub fn pattern_from_columns(&self, id: PatternId) -> Vec<ItemId> {
        (0..self.item_bits.len() as ItemId)
            .filter(|&i| self.contains(id, i))
            .collect()
    }

    /// Writes one pattern per line in external ids, `1 5 9 (42)`, discovery order.
    pub fn write_fimi<Wr: Write>(&self, db: &VerticalDb, out: &mut Wr) -> io::Result<()> {
        for (items, &sup) in self.patterns.iter().zip(&self.supports) {
            let ext = db.to_external(items);
            let mut first = true;
            for e in ext {
                if !first {
                    out.write_all(b" ")?;
                }
                write!(out, "{e}")?;
                first = false;
            }
            writeln!(out, " ({sup})")?;
        }
        Ok(())
    }
}

/// `a ⊆ b` for ascending slices.
pub fn is_sorted_subset(a: &[ItemId], b: &[ItemId]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut bi = b.iter();
    'outer: for x in a {
        for y in bi.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
pub(crate) use tests::d1_store;
