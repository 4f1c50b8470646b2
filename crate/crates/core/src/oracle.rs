//! Brute-force reference miner.
//!
//! Works directly on the horizontal transactions with per-candidate support
//! counting, sharing no code with the bitmap search.

use std::collections::{BTreeMap, BTreeSet};

use crate::dataset::{ExtItem, TransactionDb};
use crate::error::{Error, Result};

/// Largest item universe the oracle accepts.
pub const ORACLE_MAX_ITEMS: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    pub all_frequent: BTreeMap<Vec<ExtItem>, usize>,
    pub maximal: BTreeSet<Vec<ExtItem>>,
}

fn guard(db: &TransactionDb, minsup: usize) -> Result<()> {
    if minsup == 0 {
        return Err(Error::Config("minsup must be >= 1".into()));
    }
    if db.n_items > ORACLE_MAX_ITEMS {
        return Err(Error::OracleGuard {
            n_items: db.n_items,
            limit: ORACLE_MAX_ITEMS,
        });
    }
    Ok(())
}

fn contains_all(transaction: &[ExtItem], items: &[ExtItem]) -> bool {
    items.iter().all(|x| transaction.binary_search(x).is_ok())
}

fn support_of(db: &TransactionDb, items: &[ExtItem]) -> usize {
    db.transactions.iter().filter(|t| contains_all(t, items)).count()
}

/// Levelwise candidate-generate-and-test, then a maximality filter.
pub fn oracle_mfi(db: &TransactionDb, minsup: usize) -> Result<OracleResult> {
    guard(db, minsup)?;
    let mut all_frequent: BTreeMap<Vec<ExtItem>, usize> = BTreeMap::new();

    let mut level: Vec<Vec<ExtItem>> = db
        .item_supports()
        .into_iter()
        .filter(|&(_, s)| s >= minsup)
        .map(|(i, s)| {
            all_frequent.insert(vec![i], s);
            vec![i]
        })
        .collect();

    while !level.is_empty() {
        let mut next = Vec::new();
        for (a_idx, a) in level.iter().enumerate() {
            for b in &level[a_idx + 1..] {
                let k = a.len();
                if a[..k - 1] != b[..k - 1] {
                    continue;
                }
                let mut cand = a.clone();
                cand.push(b[k - 1]);
                let all_subsets_frequent = (0..cand.len()).all(|skip| {
                    let sub: Vec<ExtItem> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    all_frequent.contains_key(&sub)
                });
                if !all_subsets_frequent {
                    continue;
                }
                let s = support_of(db, &cand);
                if s >= minsup {
                    next.push(cand);
                    all_frequent.insert(next.last().unwrap().clone(), s);
                }
            }
        }
        level = next;
    }

    // Downward closure self-check.
    for items in all_frequent.keys() {
        if items.len() > 1 {
            for skip in 0..items.len() {
                let mut sub = items.clone();
                sub.remove(skip);
                assert!(
                    all_frequent.contains_key(&sub),
                    "downward closure violated at {items:?}"
                );
            }
        }
    }

    let universe: Vec<ExtItem> = db.item_supports().into_iter().map(|p| p.0).collect();
    let maximal = all_frequent
        .keys()
        .filter(|x| {
            !universe.iter().any(|y| {
                if x.binary_search(y).is_ok() {
                    return false;
                }
                let mut ext = (*x).clone();
                ext.push(*y);
                ext.sort_unstable();
                all_frequent.contains_key(&ext)
            })
        })
        .cloned()
        .collect();
    Ok(OracleResult { all_frequent, maximal })
}

/// Second route: scans every subset of the item universe as a bitmask.
pub fn lattice_mfi(db: &TransactionDb, minsup: usize) -> Result<OracleResult> {
    guard(db, minsup)?;
    let universe: Vec<ExtItem> = db.item_supports().into_iter().map(|p| p.0).collect();
    let n = universe.len();
    let masks: Vec<u32> = db
        .transactions
        .iter()
        .map(|t| {
            t.iter()
                .map(|x| 1u32 << universe.binary_search(x).unwrap())
                .fold(0, |a, b| a | b)
        })
        .collect();
    let mut freq = vec![false; 1usize << n];
    let mut all_frequent = BTreeMap::new();
    for set in 1u32..(1u32 << n) {
        let s = masks.iter().filter(|&&m| m & set == set).count();
        if s >= minsup {
            freq[set as usize] = true;
            all_frequent.insert(decode(&universe, set), s);
        }
    }
    let maximal = (1u32..(1u32 << n))
        .filter(|&set| freq[set as usize])
        .filter(|&set| (0..n).all(|b| set & (1 << b) != 0 || !freq[(set | (1 << b)) as usize]))
        .map(|set| decode(&universe, set))
        .collect();
    Ok(OracleResult { all_frequent, maximal })
}

fn decode(universe: &[ExtItem], set: u32) -> Vec<ExtItem> {
    (0..universe.len())
        .filter(|&b| set & (1 << b) != 0)
        .map(|b| universe[b])
        .collect()
}
