//! Directed and undirected graphs shared by the reductions and oracles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple digraph with optional 0/1 arc weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), u8>,
    weighted: bool,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph { n, arcs: BTreeMap::new(), weighted: false };
        for (u, v) in arcs {
            g.check_arc(u, v)?;
            g.arcs.insert((u, v), 1);
        }
        Ok(g)
    }

    /// Complete digraph whose arcs in `ones` weigh 1 and all others 0.
    pub fn complete_01(n: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arcs = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    arcs.insert((u, v), 0);
                }
            }
        }
        let mut g = Digraph { n, arcs, weighted: true };
        for (u, v) in ones {
            g.check_arc(u, v)?;
            g.arcs.insert((u, v), 1);
        }
        Ok(g)
    }

    pub fn weighted(n: usize, arcs: impl IntoIterator<Item = ((usize, usize), u8)>) -> Result<Self> {
        let mut g = Digraph { n, arcs: BTreeMap::new(), weighted: true };
        for ((u, v), w) in arcs {
            g.check_arc(u, v)?;
            if w > 1 {
                return Err(Error::Graph(format!("arc ({u},{v}) has weight {w}; only 0/1 supported")));
            }
            g.arcs.insert((u, v), w);
        }
        Ok(g)
    }

    fn check_arc(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Graph(format!("arc ({u},{v}) out of range for {} vertices", self.n)));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.keys().copied()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains_key(&(u, v))
    }

    /// Arc weight; unweighted arcs weigh 1, absent arcs `None`.
    pub fn weight(&self, u: usize, v: usize) -> Option<u8> {
        self.arcs.get(&(u, v)).copied()
    }

    /// Arcs with weight 1.
    pub fn heavy_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().filter(|(_, &w)| w == 1).map(|(&a, _)| a)
    }

    pub fn is_complete(&self) -> bool {
        self.arcs.len() == self.n * self.n.saturating_sub(1)
    }

    /// Dense weight matrix; fails unless the digraph is complete.
    pub fn weight_matrix(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_complete() {
            return Err(Error::Graph("expected a complete digraph".into()));
        }
        let mut w = vec![vec![0i64; self.n]; self.n];
        for (&(u, v), &x) in &self.arcs {
            w[u][v] = x as i64;
        }
        Ok(w)
    }

    /// Arcs going forward in `order`.
    pub fn forward_arcs(&self, order: &[usize]) -> Vec<(usize, usize)> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        self.arcs().filter(|&(u, v)| pos[u] < pos[v]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<u64>,
}

impl UndirectedGraph {
    pub const MAX_VERTICES: usize = 64;

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(Error::SizeLimit { what: "undirected graph", n, max: Self::MAX_VERTICES });
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(UndirectedGraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    /// Other vertices not adjacent to `u`, ascending.
    pub fn non_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| v != u && !self.adjacent(u, v)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|&v| v < self.n)
            && vertices
                .iter()
                .enumerate()
                .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }
}

/// On-disk graph: `{"n": 3, "edges": [[0,1]], "directed": true, "weights": [1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub directed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u8>>,
}

impl GraphFile {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn undirected(&self) -> Result<UndirectedGraph> {
        if self.directed {
            return Err(Error::Graph("expected an undirected graph".into()));
        }
        UndirectedGraph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }

    /// Digraph view; with `weights` the arcs carry those 0/1 weights.
    pub fn digraph(&self) -> Result<Digraph> {
        if !self.directed {
            return Err(Error::Graph("expected a directed graph".into()));
        }
        match &self.weights {
            None => Digraph::new(self.n, self.edges.iter().map(|e| (e[0], e[1]))),
            Some(w) => {
                if w.len() != self.edges.len() {
                    return Err(Error::Graph("weights and edges differ in length".into()));
                }
                Digraph::weighted(self.n, self.edges.iter().map(|e| (e[0], e[1])).zip(w.iter().copied()))
            }
        }
    }

    /// Complete 0/1 digraph: listed arcs weigh as given (1 if unweighted),
    /// every unlisted ordered pair weighs 0.
    pub fn complete_digraph(&self) -> Result<Digraph> {
        let g = self.digraph()?;
        Digraph::complete_01(g.n(), g.heavy_arcs().collect::<Vec<_>>())
    }

    pub fn from_digraph(g: &Digraph) -> Self {
        let edges: Vec<[usize; 2]> = g.arcs().map(|(u, v)| [u, v]).collect();
        let weights = g
            .is_weighted()
            .then(|| g.arcs().map(|(u, v)| g.weight(u, v).unwrap_or(0)).collect());
        GraphFile { n: g.n(), edges, directed: true, weights }
    }

    pub fn from_undirected(g: &UndirectedGraph) -> Self {
        GraphFile { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(), directed: false, weights: None }
    }
}
