//! Per-depth buffer pool for the depth-first search.
//!
//! One buffer per DFS level, shared by every node at that level. A buffer is
//! moved out on `acquire` and handed back on `release`; at most one buffer per
//! depth is live at a time.

use crate::error::{Error, Result};

#[derive(Debug)]
pub struct LevelPool<T> {
    levels: Vec<Vec<T>>,
    live: Vec<bool>,
    allocations: usize,
    growth_events: usize,
}

impl<T> LevelPool<T> {
    /// Pool for depths `0..n_levels`.
    pub fn new(n_levels: usize) -> Self {
        Self {
            levels: (0..n_levels).map(|_| Vec::new()).collect(),
            live: vec![false; n_levels],
            allocations: 0,
            growth_events: 0,
        }
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Takes the buffer for `depth`, cleared, with room for `capacity` elements.
    pub fn acquire(&mut self, depth: usize, capacity: usize) -> Result<Vec<T>> {
        if depth >= self.levels.len() {
            return Err(Error::LevelOutOfRange {
                depth,
                max: self.levels.len().saturating_sub(1),
            });
        }
        if self.live[depth] {
            return Err(Error::LevelLive { depth });
        }
        self.live[depth] = true;
        let mut buf = std::mem::take(&mut self.levels[depth]);
        buf.clear();
        self.reserve(&mut buf, capacity);
        Ok(buf)
    }

    pub fn release(&mut self, depth: usize, buf: Vec<T>) {
        debug_assert!(self.live[depth], "releasing idle depth {depth}");
        self.live[depth] = false;
        self.levels[depth] = buf;
    }

    /// Grows `buf` to hold at least `capacity` elements, doubling.
    pub fn reserve(&mut self, buf: &mut Vec<T>, capacity: usize) {
        if buf.capacity() >= capacity {
            return;
        }
        if buf.capacity() == 0 {
            self.allocations += 1;
        } else {
            self.growth_events += 1;
        }
        let target = capacity.max(buf.capacity() * 2);
        buf.reserve_exact(target - buf.len());
    }

    /// First-time buffer allocations.
    pub fn allocations(&self) -> usize {
        self.allocations
    }

    /// Reallocations of an existing buffer.
    pub fn growth_events(&self) -> usize {
        self.growth_events
    }

    pub fn live_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }
}
