//! Exact solvers for the companion graph and string problems.
//!
//! All of them are exponential and size-capped; every result carries a
//! certificate (a vertex set, an order, a tour or a string) so callers can
//! re-check it independently.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Digraph, UndirectedGraph};

pub const MAX_CLIQUE_VERTICES: usize = 20;
pub const MAX_MAS_VERTICES: usize = 9;
pub const MAX_ATSP_VERTICES: usize = 13;
pub const MAX_SCS_PATTERNS: usize = 8;

/// Maximum clique via Bron–Kerbosch with pivoting on bitmasks.
pub fn max_clique_exact(g: &UndirectedGraph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > MAX_CLIQUE_VERTICES {
        return Err(Error::SizeLimit { what: "clique oracle graph", n, max: MAX_CLIQUE_VERTICES });
    }
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut best = 0u64;
    bron_kerbosch(g, 0, all, 0, &mut best);
    Ok(bits(best))
}

fn bron_kerbosch(g: &UndirectedGraph, r: u64, mut p: u64, mut x: u64, best: &mut u64) {
    if p == 0 && x == 0 {
        if r.count_ones() > best.count_ones() {
            *best = r;
        }
        return;
    }
    if r.count_ones() + p.count_ones() <= best.count_ones() {
        return;
    }
    let pivot = bits(p | x)
        .into_iter()
        .max_by_key(|&u| (g.neighbors_mask(u) & p).count_ones())
        .expect("p | x non-empty");
    for v in bits(p & !g.neighbors_mask(pivot)) {
        let nv = g.neighbors_mask(v);
        bron_kerbosch(g, r | 1 << v, p & nv, x & nv, best);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// A vertex order together with its forward arcs, which form an acyclic subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicSubgraph {
    pub order: Vec<usize>,
    pub kept: Vec<(usize, usize)>,
}

/// Maximum acyclic subgraph by enumerating vertex orders.
pub fn max_acyclic_subgraph_exact(g: &Digraph) -> Result<AcyclicSubgraph> {
    let n = g.n();
    if n > MAX_MAS_VERTICES {
        return Err(Error::SizeLimit { what: "acyclic subgraph oracle graph", n, max: MAX_MAS_VERTICES });
    }
    let arcs: Vec<(usize, usize)> = g.arcs().collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut pos = vec![0usize; n];
    for order in (0..n).permutations(n) {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let forward = arcs.iter().filter(|&&(u, v)| pos[u] < pos[v]).count();
        if best.as_ref().is_none_or(|(b, _)| forward > *b) {
            let done = forward == arcs.len();
            best = Some((forward, order));
            if done {
                break;
            }
        }
    }
    let order = best.map(|(_, o)| o).unwrap_or_default();
    let kept = g.forward_arcs(&order);
    Ok(AcyclicSubgraph { order, kept })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianResult {
    pub order: Vec<usize>,
    pub weight: i64,
    pub is_cycle: bool,
}

impl HamiltonianResult {
    /// Recomputes the weight from the matrix; `None` if `order` is not a permutation.
    pub fn recompute(&self, w: &[Vec<i64>]) -> Option<i64> {
        let n = w.len();
        if self.order.len() != n || self.order.iter().copied().sorted().ne(0..n) {
            return None;
        }
        let mut total: i64 = self.order.windows(2).map(|p| w[p[0]][p[1]]).sum();
        if self.is_cycle && n >= 2 {
            total += w[self.order[n - 1]][self.order[0]];
        }
        Some(total)
    }
}

/// Held–Karp over subsets. With `cycle` the tour closes back to vertex 0;
/// otherwise the best path may start anywhere.
fn held_karp(w: &[Vec<i64>], cycle: bool) -> HamiltonianResult {
    let n = w.len();
    if n <= 1 {
        return HamiltonianResult { order: (0..n).collect(), weight: 0, is_cycle: cycle };
    }
    const NEG: i64 = i64::MIN / 4;
    let full = 1usize << n;
    let mut dp = vec![NEG; full * n];
    let mut parent = vec![usize::MAX; full * n];
    if cycle {
        dp[n] = 0;
    } else {
        for v in 0..n {
            dp[(1 << v) * n + v] = 0;
        }
    }
    for mask in 1..full {
        for last in 0..n {
            let cur = dp[mask * n + last];
            if cur == NEG {
                continue;
            }
            for next in 0..n {
                if mask >> next & 1 == 1 {
                    continue;
                }
                let m2 = mask | 1 << next;
                let cand = cur + w[last][next];
                if cand > dp[m2 * n + next] {
                    dp[m2 * n + next] = cand;
                    parent[m2 * n + next] = last;
                }
            }
        }
    }
    let all = full - 1;
    let (mut last, weight) = (0..n)
        .filter(|&v| !cycle || v != 0)
        .map(|v| (v, dp[all * n + v] + if cycle { w[v][0] } else { 0 }))
        .fold((usize::MAX, NEG), |acc, x| if x.1 > acc.1 { x } else { acc });
    let mut order = Vec::with_capacity(n);
    let mut mask = all;
    while last != usize::MAX {
        order.push(last);
        let p = parent[mask * n + last];
        mask &= !(1 << last);
        last = p;
    }
    order.reverse();
    HamiltonianResult { order, weight, is_cycle: cycle }
}

/// Maximum-weight Hamiltonian cycle of a complete weighted digraph.
pub fn max_atsp_exact(g: &Digraph) -> Result<HamiltonianResult> {
    let n = g.n();
    if n > MAX_ATSP_VERTICES {
        return Err(Error::SizeLimit { what: "ATSP oracle graph", n, max: MAX_ATSP_VERTICES });
    }
    Ok(held_karp(&g.weight_matrix()?, true))
}

/// Maximum-weight Hamiltonian path of a complete weighted digraph.
pub fn max_hamiltonian_path_exact(g: &Digraph) -> Result<HamiltonianResult> {
    let n = g.n();
    if n > MAX_ATSP_VERTICES {
        return Err(Error::SizeLimit { what: "Hamiltonian path oracle graph", n, max: MAX_ATSP_VERTICES });
    }
    Ok(held_karp(&g.weight_matrix()?, false))
}

/// Greedy edge heuristic: heaviest arcs first, keeping a disjoint path
/// system, then the paths are chained into one cycle.
pub fn max_atsp_greedy(g: &Digraph) -> Result<HamiltonianResult> {
    let w = g.weight_matrix()?;
    let n = w.len();
    if n <= 1 {
        return Ok(HamiltonianResult { order: (0..n).collect(), weight: 0, is_cycle: true });
    }
    let mut arcs: Vec<(usize, usize)> = g.arcs().collect();
    arcs.sort_by_key(|&(u, v)| (std::cmp::Reverse(w[u][v]), u, v));
    let mut succ = vec![usize::MAX; n];
    let mut pred = vec![usize::MAX; n];
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    let mut used = 0;
    for (u, v) in arcs {
        if used == n - 1 {
            break;
        }
        if succ[u] != usize::MAX || pred[v] != usize::MAX {
            continue;
        }
        let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
        if ru == rv {
            continue;
        }
        comp[ru] = rv;
        succ[u] = v;
        pred[v] = u;
        used += 1;
    }
    let mut order = Vec::with_capacity(n);
    for start in (0..n).filter(|&v| pred[v] == usize::MAX) {
        let mut v = start;
        loop {
            order.push(v);
            if succ[v] == usize::MAX {
                break;
            }
            v = succ[v];
        }
    }
    let mut r = HamiltonianResult { order, weight: 0, is_cycle: true };
    r.weight = r.recompute(&w).ok_or_else(|| Error::InternalInvariantViolation("greedy tour is not a permutation".into()))?;
    Ok(r)
}

/// Largest `k` with `a`'s length-`k` suffix equal to `b`'s length-`k` prefix, `k < min(|a|,|b|)`
/// unless one string is contained in the other.
pub fn overlap<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let max = a.len().min(b.len());
    (0..=max).rev().find(|&k| a[a.len() - k..] == b[..k]).unwrap_or(0)
}

pub fn contains_factor<T: PartialEq>(hay: &[T], needle: &[T]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// Removes duplicates and patterns occurring inside another pattern.
pub fn remove_contained<T: Ord + Clone>(patterns: &[Vec<T>]) -> Vec<Vec<T>> {
    let uniq: Vec<Vec<T>> = patterns.iter().cloned().sorted().dedup().collect();
    uniq.iter()
        .enumerate()
        .filter(|(i, p)| !uniq.iter().enumerate().any(|(j, q)| *i != j && q.len() >= p.len() && contains_factor(q, p)))
        .map(|(_, p)| p.clone())
        .collect()
}

/// Shortest common superstring by maximum-overlap merging over every order
/// of the substring-free pattern set. Ties resolve to the lexicographically
/// smallest string.
pub fn scs_exact<T: Ord + Clone>(patterns: &[Vec<T>]) -> Result<Vec<T>> {
    let reduced = remove_contained(patterns);
    let k = reduced.len();
    if k > MAX_SCS_PATTERNS {
        return Err(Error::SizeLimit { what: "superstring oracle pattern set", n: k, max: MAX_SCS_PATTERNS });
    }
    let ov: Vec<Vec<usize>> = reduced.iter().map(|a| reduced.iter().map(|b| overlap(a, b)).collect()).collect();
    let mut best: Option<Vec<T>> = None;
    for order in (0..k).permutations(k) {
        let mut s: Vec<T> = Vec::new();
        for (idx, &i) in order.iter().enumerate() {
            let skip = if idx == 0 { 0 } else { ov[order[idx - 1]][i] };
            s.extend_from_slice(&reduced[i][skip..]);
        }
        let better = match &best {
            None => true,
            Some(b) => s.len() < b.len() || (s.len() == b.len() && s < *b),
        };
        if better {
            best = Some(s);
        }
    }
    Ok(best.unwrap_or_default())
}
