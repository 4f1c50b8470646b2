//! FIMI flat-file parsing and the vertical (per-item bitmap) database.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use crate::bitvec::BitVec;
use crate::error::{Error, Result};

/// Item identifier as it appears in the input file.
pub type ExtItem = u32;

/// Dense item identifier after pruning and support ordering.
pub type ItemId = u32;

/// Horizontal transaction database.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransactionDb {
    /// Each transaction sorted ascending, duplicate-free.
    pub transactions: Vec<Vec<ExtItem>>,
    /// Number of distinct items seen.
    pub n_items: usize,
}

impl TransactionDb {
    /// Builds a database from raw item lists, normalizing each transaction.
    pub fn from_transactions<I, T>(raw: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = ExtItem>,
    {
        let transactions: Vec<Vec<ExtItem>> = raw
            .into_iter()
            .map(|t| {
                let mut t: Vec<ExtItem> = t.into_iter().collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        let mut all: Vec<ExtItem> = transactions.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        Self {
            n_items: all.len(),
            transactions,
        }
    }

    pub fn n_transactions(&self) -> usize {
        self.transactions.len()
    }

    /// Supports of every distinct item, ascending by external id.
    pub fn item_supports(&self) -> Vec<(ExtItem, usize)> {
        let mut all: Vec<ExtItem> = self.transactions.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut out: Vec<(ExtItem, usize)> = Vec::new();
        for item in all {
            match out.last_mut() {
                Some((last, n)) if *last == item => *n += 1,
                _ => out.push((item, 1)),
            }
        }
        out
    }
}

/// Parses FIMI text: one transaction per line, whitespace-separated
/// non-negative integers. Blank lines are skipped.
pub fn parse_fimi<R: BufRead>(reader: R) -> Result<TransactionDb> {
    let mut raw = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let mut items = Vec::new();
        for token in line.split_whitespace() {
            let item = token.parse::<ExtItem>().map_err(|_| Error::Parse {
                line: idx + 1,
                token: token.to_string(),
            })?;
            items.push(item);
        }
        if !items.is_empty() {
            raw.push(items);
        }
    }
    Ok(TransactionDb::from_transactions(raw))
}

pub fn parse_fimi_str(text: &str) -> Result<TransactionDb> {
    parse_fimi(text.as_bytes())
}

pub fn load_fimi<P: AsRef<Path>>(path: P) -> Result<TransactionDb> {
    let file = File::open(path)?;
    parse_fimi(BufReader::new(file))
}

/// Minimum support as given by the user.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MinSupport {
    Absolute(usize),
    /// Fraction of the transaction count, in `(0, 1]`.
    Relative(f64),
}

impl MinSupport {
    /// Resolves to an absolute transaction count. Relative thresholds round up.
    pub fn resolve(self, n_transactions: usize) -> Result<usize> {
        match self {
            MinSupport::Absolute(0) => Err(Error::Config("absolute minsup must be >= 1".into())),
            MinSupport::Absolute(n) => Ok(n),
            MinSupport::Relative(r) if !(r > 0.0 && r <= 1.0) => {
                Err(Error::Config(format!("relative minsup {r} outside (0, 1]")))
            }
            MinSupport::Relative(r) => {
                let x = r * n_transactions as f64;
                let nearest = x.round();
                // 0.07 * 100 evaluates to 7.000000000000001; that is 7, not 8.
                let count = if (x - nearest).abs() <= 1e-9 * x.max(1.0) {
                    nearest
                } else {
                    x.ceil()
                };
                Ok((count as usize).max(1))
            }
        }
    }
}

impl FromStr for MinSupport {
    type Err = Error;

    /// A decimal point selects a relative threshold, otherwise absolute.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("invalid minsup {s:?}"));
        if s.contains('.') {
            let r: f64 = s.parse().map_err(|_| bad())?;
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::Config(format!("relative minsup {r} outside (0, 1]")));
            }
            Ok(MinSupport::Relative(r))
        } else {
            let n: usize = s.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(Error::Config("absolute minsup must be >= 1".into()));
            }
            Ok(MinSupport::Absolute(n))
        }
    }
}

pub fn resolve_minsup(spec: MinSupport, n_transactions: usize) -> Result<usize> {
    spec.resolve(n_transactions)
}

/// Vertical database of frequent items.
///
/// Internal item ids are ordered by increasing support, ties broken by
/// ascending external id.
#[derive(Clone, Debug)]
pub struct VerticalDb {
    pub columns: Vec<BitVec>,
    pub item_support: Vec<usize>,
    pub ext_of_int: Vec<ExtItem>,
    pub minsup: usize,
    pub n_transactions: usize,
}

impl VerticalDb {
    pub fn n_items(&self) -> usize {
        self.columns.len()
    }

    pub fn external(&self, item: ItemId) -> ExtItem {
        self.ext_of_int[item as usize]
    }

    /// Maps internal items to external ids, sorted ascending.
    pub fn to_external(&self, items: &[ItemId]) -> Vec<ExtItem> {
        let mut out: Vec<ExtItem> = items.iter().map(|&i| self.external(i)).collect();
        out.sort_unstable();
        out
    }
}

pub fn build_vertical(db: &TransactionDb, minsup: usize) -> Result<VerticalDb> {
    if minsup == 0 {
        return Err(Error::Config("minsup must be >= 1".into()));
    }
    let mut kept: Vec<(ExtItem, usize)> = db.item_supports().into_iter().filter(|&(_, s)| s >= minsup).collect();
    kept.sort_by_key(|&(item, s)| (s, item));

    let n = db.n_transactions();
    let lookup: std::collections::HashMap<ExtItem, usize> =
        kept.iter().enumerate().map(|(i, &(e, _))| (e, i)).collect();
    let mut columns = vec![BitVec::zeros(n); kept.len()];
    for (tid, t) in db.transactions.iter().enumerate() {
        for item in t {
            if let Some(&i) = lookup.get(item) {
                columns[i].set(tid);
            }
        }
    }
    Ok(VerticalDb {
        item_support: kept.iter().map(|&(_, s)| s).collect(),
        ext_of_int: kept.iter().map(|&(e, _)| e).collect(),
        columns,
        minsup,
        n_transactions: n,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// D1 with A=1, B=2, C=3, D=4.
    pub const D1: &str = "1 2 3\n1 2 3 4\n2 3 4\n1 3 4\n1 2\n";

    pub fn d1() -> TransactionDb {
        parse_fimi_str(D1).unwrap()
    }
}
