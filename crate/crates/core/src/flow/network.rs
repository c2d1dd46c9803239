use std::fmt::Write as _;

use crate::error::{DenseError, Result};

/// Directed network with integer capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    num_nodes: usize,
    source: usize,
    sink: usize,
    tails: Vec<usize>,
    heads: Vec<usize>,
    caps: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize, source: usize, sink: usize) -> FlowNetwork {
        assert!(source < num_nodes && sink < num_nodes && source != sink);
        FlowNetwork {
            num_nodes,
            source,
            sink,
            tails: Vec::new(),
            heads: Vec::new(),
            caps: Vec::new(),
        }
    }

    /// Adds an arc and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> Result<usize> {
        if from >= self.num_nodes {
            return Err(DenseError::VertexOutOfRange(from));
        }
        if to >= self.num_nodes {
            return Err(DenseError::VertexOutOfRange(to));
        }
        if cap < 0 {
            return Err(DenseError::InvalidParameter(format!(
                "negative capacity {cap}"
            )));
        }
        self.tails.push(from);
        self.heads.push(to);
        self.caps.push(cap);
        Ok(self.caps.len() - 1)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_arcs(&self) -> usize {
        self.caps.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arc(&self, a: usize) -> (usize, usize, i64) {
        (self.tails[a], self.heads[a], self.caps[a])
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.num_arcs()).map(move |a| self.arc(a))
    }

    /// DIMACS max-flow format with 1-based node ids.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c densekit flow network");
        let _ = writeln!(out, "p max {} {}", self.num_nodes, self.num_arcs());
        let _ = writeln!(out, "n {} s", self.source + 1);
        let _ = writeln!(out, "n {} t", self.sink + 1);
        for (u, v, c) in self.arcs() {
            let _ = writeln!(out, "a {} {} {}", u + 1, v + 1, c);
        }
        out
    }
}

/// A maximum flow together with the source side of a minimum cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i64,
    /// Flow on each arc, indexed by arc id.
    pub flow: Vec<i64>,
    /// Nodes reachable from the source in the residual network.
    pub source_side: Vec<bool>,
}

impl MaxFlow {
    pub fn cut_capacity(&self, net: &FlowNetwork) -> i64 {
        net.arcs()
            .filter(|&(u, v, _)| self.source_side[u] && !self.source_side[v])
            .map(|(_, _, c)| c)
            .sum()
    }

    /// Checks capacity bounds, conservation at inner nodes, the flow value
    /// and that the cut capacity equals the value.
    pub fn verify(&self, net: &FlowNetwork) -> std::result::Result<(), String> {
        let mut balance = vec![0i64; net.num_nodes()];
        for (a, (u, v, c)) in net.arcs().enumerate() {
            let f = self.flow[a];
            if f < 0 || f > c {
                return Err(format!("arc {a} ({u}->{v}) carries {f} of {c}"));
            }
            balance[u] -= f;
            balance[v] += f;
        }
        for (x, &b) in balance.iter().enumerate() {
            if x != net.source() && x != net.sink() && b != 0 {
                return Err(format!("node {x} has imbalance {b}"));
            }
        }
        if balance[net.sink()] != self.value {
            return Err(format!(
                "sink receives {} but value is {}",
                balance[net.sink()],
                self.value
            ));
        }
        if !self.source_side[net.source()] || self.source_side[net.sink()] {
            return Err("cut does not separate source and sink".into());
        }
        let cut = self.cut_capacity(net);
        if cut != self.value {
            return Err(format!(
                "cut capacity {cut} differs from flow value {}",
                self.value
            ));
        }
        Ok(())
    }
}
