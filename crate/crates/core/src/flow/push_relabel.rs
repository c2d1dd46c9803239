//! Highest-label push-relabel with the gap heuristic and periodic global
//! relabeling.
//!
//! Phase one computes a maximum preflow: only nodes with height below the
//! node count are discharged. Phase two returns the stranded excess to the
//! source so the result is a proper flow.

use std::collections::VecDeque;

use super::network::{FlowNetwork, MaxFlow};
use crate::error::{DenseError, Result};

const UNSET: usize = usize::MAX;

struct Residual {
    /// CSR offsets into `out`.
    first: Vec<usize>,
    /// Residual arc ids grouped by tail.
    out: Vec<usize>,
    /// Head of each residual arc; arc `r` and `r ^ 1` are reverses.
    to: Vec<usize>,
    res: Vec<i64>,
}

impl Residual {
    fn new(net: &FlowNetwork) -> Residual {
        let nodes = net.num_nodes();
        let mut deg = vec![0usize; nodes];
        let mut to = Vec::with_capacity(2 * net.num_arcs());
        let mut res = Vec::with_capacity(2 * net.num_arcs());
        for (u, v, c) in net.arcs() {
            deg[u] += 1;
            deg[v] += 1;
            to.push(v);
            res.push(c);
            to.push(u);
            res.push(0);
        }
        let mut first = vec![0; nodes + 1];
        for x in 0..nodes {
            first[x + 1] = first[x] + deg[x];
        }
        let mut fill = first.clone();
        let mut out = vec![0; 2 * net.num_arcs()];
        for r in 0..to.len() {
            let tail = to[r ^ 1];
            out[fill[tail]] = r;
            fill[tail] += 1;
        }
        Residual {
            first,
            out,
            to,
            res,
        }
    }

    #[inline]
    fn arcs_of(&self, x: usize) -> &[usize] {
        &self.out[self.first[x]..self.first[x + 1]]
    }

    /// BFS distances to `target` along residual arcs; `UNSET` if unreachable.
    fn distances_to(&self, target: usize, skip: Option<usize>) -> Vec<usize> {
        let nodes = self.first.len() - 1;
        let mut dist = vec![UNSET; nodes];
        dist[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(w) = queue.pop_front() {
            for &r in self.arcs_of(w) {
                let u = self.to[r];
                if dist[u] == UNSET && Some(u) != skip && self.res[r ^ 1] > 0 {
                    dist[u] = dist[w] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

struct Solver {
    g: Residual,
    nodes: usize,
    source: usize,
    sink: usize,
    height: Vec<usize>,
    excess: Vec<i64>,
    current: Vec<usize>,
    buckets: Vec<Vec<usize>>,
    queued: Vec<bool>,
    count: Vec<usize>,
    top: usize,
    relabels_since_global: usize,
}

impl Solver {
    fn activate(&mut self, x: usize) {
        let h = self.height[x];
        if x == self.source || x == self.sink || h >= self.nodes || self.queued[x] {
            return;
        }
        self.queued[x] = true;
        self.buckets[h].push(x);
        self.top = self.top.max(h);
    }

    fn global_relabel(&mut self) {
        let dist = self.g.distances_to(self.sink, Some(self.source));
        self.count.iter_mut().for_each(|c| *c = 0);
        for b in &mut self.buckets {
            b.clear();
        }
        self.queued.iter_mut().for_each(|q| *q = false);
        self.top = 0;
        for (x, &d) in dist.iter().enumerate() {
            self.height[x] = if x == self.source {
                self.nodes
            } else {
                d.min(self.nodes)
            };
            if self.height[x] < self.nodes {
                self.count[self.height[x]] += 1;
            }
            self.current[x] = self.g.first[x];
        }
        for x in 0..self.nodes {
            if self.excess[x] > 0 {
                self.activate(x);
            }
        }
        self.relabels_since_global = 0;
    }

    fn push(&mut self, r: usize, from: usize, amount: i64) {
        let w = self.g.to[r];
        self.g.res[r] -= amount;
        self.g.res[r ^ 1] += amount;
        self.excess[from] -= amount;
        self.excess[w] += amount;
    }

    fn relabel(&mut self, v: usize) {
        let old = self.height[v];
        let mut best = self.nodes;
        for &r in self.g.arcs_of(v) {
            if self.g.res[r] > 0 {
                best = best.min(self.height[self.g.to[r]] + 1);
            }
        }
        self.count[old] -= 1;
        if self.count[old] == 0 {
            // Gap: nothing above `old` can reach the sink any more.
            for x in 0..self.nodes {
                let h = self.height[x];
                if h > old && h < self.nodes {
                    self.count[h] -= 1;
                    self.height[x] = self.nodes;
                }
            }
            self.height[v] = self.nodes;
        } else {
            self.height[v] = best.min(self.nodes);
            if self.height[v] < self.nodes {
                self.count[self.height[v]] += 1;
            }
        }
        self.current[v] = self.g.first[v];
        self.relabels_since_global += 1;
    }

    fn discharge(&mut self, v: usize) {
        while self.excess[v] > 0 && self.height[v] < self.nodes {
            let end = self.g.first[v + 1];
            if self.current[v] == end {
                self.relabel(v);
                if self.relabels_since_global >= self.nodes {
                    self.global_relabel();
                    return;
                }
                continue;
            }
            let r = self.g.out[self.current[v]];
            let w = self.g.to[r];
            if self.g.res[r] > 0 && self.height[v] == self.height[w] + 1 {
                let amount = self.excess[v].min(self.g.res[r]);
                let was_idle = self.excess[w] == 0;
                self.push(r, v, amount);
                if was_idle {
                    self.activate(w);
                }
            } else {
                self.current[v] += 1;
            }
        }
    }

    fn maximum_preflow(&mut self) {
        for i in 0..self.g.arcs_of(self.source).len() {
            let r = self.g.arcs_of(self.source)[i];
            let cap = self.g.res[r];
            if cap > 0 {
                self.excess[self.source] += cap;
                self.push(r, self.source, cap);
            }
        }
        self.global_relabel();
        loop {
            while self.top > 0 && self.buckets[self.top].is_empty() {
                self.top -= 1;
            }
            let Some(v) = self.buckets[self.top].pop() else {
                break;
            };
            self.queued[v] = false;
            if self.height[v] != self.top {
                self.activate(v);
                continue;
            }
            self.discharge(v);
            if self.excess[v] > 0 {
                self.activate(v);
            }
        }
    }

    /// Pushes remaining excess back to the source (FIFO order).
    fn return_excess(&mut self) {
        let dist = self.g.distances_to(self.source, None);
        for (x, &d) in dist.iter().enumerate() {
            self.height[x] = if d == UNSET { 2 * self.nodes } else { d };
            self.current[x] = self.g.first[x];
        }
        let mut queue: VecDeque<usize> = (0..self.nodes)
            .filter(|&x| x != self.source && x != self.sink && self.excess[x] > 0)
            .collect();
        while let Some(v) = queue.pop_front() {
            while self.excess[v] > 0 {
                let end = self.g.first[v + 1];
                if self.current[v] == end {
                    let mut best = usize::MAX;
                    for &r in self.g.arcs_of(v) {
                        if self.g.res[r] > 0 {
                            best = best.min(self.height[self.g.to[r]] + 1);
                        }
                    }
                    debug_assert!(best != usize::MAX, "excess with no residual arc");
                    self.height[v] = best;
                    self.current[v] = self.g.first[v];
                    continue;
                }
                let r = self.g.out[self.current[v]];
                let w = self.g.to[r];
                if self.g.res[r] > 0 && self.height[v] == self.height[w] + 1 {
                    let amount = self.excess[v].min(self.g.res[r]);
                    let was_idle = self.excess[w] == 0;
                    self.push(r, v, amount);
                    if was_idle && w != self.source && w != self.sink {
                        queue.push_back(w);
                    }
                } else {
                    self.current[v] += 1;
                }
            }
        }
    }
}

/// Exact maximum flow and minimum cut.
pub fn max_flow(net: &FlowNetwork) -> Result<MaxFlow> {
    let source = net.source();
    let mut out_cap: i64 = 0;
    for (u, _, c) in net.arcs() {
        if u == source {
            out_cap = out_cap.checked_add(c).ok_or(DenseError::CapacityOverflow)?;
        }
    }
    let nodes = net.num_nodes();
    let g = Residual::new(net);
    let current = g.first[..nodes].to_vec();
    let mut s = Solver {
        g,
        nodes,
        source,
        sink: net.sink(),
        height: vec![0; nodes],
        excess: vec![0; nodes],
        current,
        buckets: vec![Vec::new(); nodes + 1],
        queued: vec![false; nodes],
        count: vec![0; nodes + 1],
        top: 0,
        relabels_since_global: 0,
    };
    s.maximum_preflow();
    s.return_excess();

    let flow: Vec<i64> = (0..net.num_arcs()).map(|a| s.g.res[2 * a + 1]).collect();
    let value = s.excess[s.sink];

    let mut source_side = vec![false; nodes];
    source_side[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for &r in s.g.arcs_of(x) {
            let w = s.g.to[r];
            if s.g.res[r] > 0 && !source_side[w] {
                source_side[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(MaxFlow {
        value,
        flow,
        source_side,
    })
}
