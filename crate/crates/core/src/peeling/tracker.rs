//! Min-trackers for peeling: a bucket queue over integer keys and a lazy
//! binary heap for arbitrary ordered keys.
//!
//! Both return the minimum-key live vertex with ties going to the smallest
//! vertex id, so they produce identical peel orders on the same input.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Selects which min-tracker drives a peeling pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrackerKind {
    /// Buckets for unweighted graphs, heap for weighted ones.
    #[default]
    Auto,
    /// Bucket queue indexed by integer key; unweighted graphs only.
    Bucket,
    /// Binary heap with lazy deletion.
    Heap,
}

pub(crate) trait MinTracker<K> {
    /// `floor` must bound from below every key that will be reported through
    /// [`MinTracker::update`] during the pass.
    fn build(keys: &[K], floor: K) -> Self;

    /// Removes and returns the live vertex with minimum `(key, id)`.
    fn pop_min(&mut self, keys: &[K], removed: &[bool]) -> Option<usize>;

    /// Records that `v`'s key has changed to `key`.
    fn update(&mut self, v: usize, key: K);
}

/// Heap of `(key, id)` pairs; stale entries are skipped on pop.
pub(crate) struct HeapTracker<K: Ord> {
    heap: BinaryHeap<Reverse<(K, usize)>>,
}

impl<K: Ord + Copy> MinTracker<K> for HeapTracker<K> {
    fn build(keys: &[K], _floor: K) -> Self {
        let heap = keys
            .iter()
            .enumerate()
            .map(|(v, &k)| Reverse((k, v)))
            .collect();
        HeapTracker { heap }
    }

    fn pop_min(&mut self, keys: &[K], removed: &[bool]) -> Option<usize> {
        while let Some(Reverse((k, v))) = self.heap.pop() {
            if !removed[v] && keys[v] == k {
                return Some(v);
            }
        }
        None
    }

    fn update(&mut self, v: usize, key: K) {
        self.heap.push(Reverse((key, v)));
    }
}

/// Bucket queue over integer keys in `[floor, max_key]`.
///
/// Each bucket keeps its vertices in a min-heap by id so the smallest id
/// wins ties. Removing a vertex lowers each neighbor's key by one, so after
/// popping a vertex of key `d` the scan resumes at bucket `d - 1`; that is
/// handled by [`MinTracker::update`] pulling the cursor back.
pub(crate) struct BucketQueue {
    floor: u64,
    buckets: Vec<BinaryHeap<Reverse<usize>>>,
    cursor: usize,
}

impl MinTracker<u64> for BucketQueue {
    fn build(keys: &[u64], floor: u64) -> Self {
        let top = keys.iter().copied().max().unwrap_or(floor);
        let mut buckets: Vec<BinaryHeap<Reverse<usize>>> =
            (floor..=top).map(|_| BinaryHeap::new()).collect();
        for (v, &k) in keys.iter().enumerate() {
            buckets[(k - floor) as usize].push(Reverse(v));
        }
        let cursor = keys
            .iter()
            .map(|&k| (k - floor) as usize)
            .min()
            .unwrap_or(0);
        BucketQueue {
            floor,
            buckets,
            cursor,
        }
    }

    fn pop_min(&mut self, keys: &[u64], removed: &[bool]) -> Option<usize> {
        while self.cursor < self.buckets.len() {
            let key = self.floor + self.cursor as u64;
            let bucket = &mut self.buckets[self.cursor];
            while let Some(Reverse(v)) = bucket.pop() {
                if !removed[v] && keys[v] == key {
                    return Some(v);
                }
            }
            self.cursor += 1;
        }
        None
    }

    fn update(&mut self, v: usize, key: u64) {
        debug_assert!(key >= self.floor, "key below bucket floor");
        let idx = (key - self.floor) as usize;
        if idx >= self.buckets.len() {
            self.buckets.resize_with(idx + 1, BinaryHeap::new);
        }
        self.buckets[idx].push(Reverse(v));
        if idx < self.cursor {
            self.cursor = idx;
        }
    }
}
