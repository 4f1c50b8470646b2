#![allow(dead_code)]

use std::path::PathBuf;

use fastlmfi::TransactionDb;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random database with at most `max_items` items and `max_tx` transactions.
pub fn random_db(rng: &mut ChaCha8Rng, max_items: u32, max_tx: usize) -> TransactionDb {
    let n_items = rng.gen_range(1..=max_items);
    let n_tx = rng.gen_range(1..=max_tx);
    let density: f64 = rng.gen_range(0.05..0.95);
    let rows: Vec<Vec<u32>> = (0..n_tx)
        .map(|_| (1..=n_items).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    TransactionDb::from_transactions(rows)
}

/// Dense database built from overlapping seed patterns plus noise.
pub fn dense_db(rng: &mut ChaCha8Rng, n_items: u32, n_tx: usize, n_seeds: usize) -> TransactionDb {
    let seeds: Vec<Vec<u32>> = (0..n_seeds)
        .map(|_| (0..n_items).filter(|_| rng.gen_bool(0.6)).collect())
        .collect();
    let rows: Vec<Vec<u32>> = (0..n_tx)
        .map(|_| {
            let seed = &seeds[rng.gen_range(0..seeds.len())];
            let mut row: Vec<u32> = seed.iter().copied().filter(|_| rng.gen_bool(0.9)).collect();
            row.extend((0..n_items).filter(|_| rng.gen_bool(0.05)));
            row
        })
        .collect();
    TransactionDb::from_transactions(rows)
}

pub fn d1() -> TransactionDb {
    fastlmfi::parse_fimi_str("1 2 3\n1 2 3 4\n2 3 4\n1 3 4\n1 2\n").unwrap()
}

/// `FASTLMFI_DATA_DIR`, or `data/` at the workspace root.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("FASTLMFI_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

pub fn dataset(name: &str) -> Option<PathBuf> {
    let path = data_dir().join(name);
    path.is_file().then_some(path)
}
