//! Approximation algorithms for the subsequence kind.
//!
//! For length-2 patterns the text is split into repeated symbols `P`,
//! singletons `P′` and the residual multiset `Q`. The output `F·F′·F·F″`
//! places `F` (an ordering of `P`) on both sides of `F′`, so every pattern
//! touching `P` is a subsequence; patterns inside `P′` survive exactly when
//! their arc goes forward in the order chosen for `F′` by an acyclic-subgraph
//! routine.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::model::{Arrangement, Instance, Kind, MultisetText, Pattern, Scorer, SolutionReport, Symbol};
use crate::seed::derive_seed;

pub const MAX_EXACT_MAS_VERTICES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqPartition {
    /// Symbols occurring at least twice, ascending.
    pub p: Vec<Symbol>,
    /// Symbols occurring exactly once, ascending.
    pub p_prime: Vec<Symbol>,
    /// `count − 2` copies of each symbol of `p`, ascending.
    pub q: Vec<Symbol>,
}

impl PqPartition {
    pub fn in_p(&self, s: Symbol) -> bool {
        self.p.binary_search(&s).is_ok()
    }
}

pub fn partition_pq(text: &MultisetText) -> PqPartition {
    let mut part = PqPartition { p: Vec::new(), p_prime: Vec::new(), q: Vec::new() };
    for s in text.support() {
        let c = text.count(s);
        if c == 1 {
            part.p_prime.push(s);
        } else {
            part.p.push(s);
            part.q.extend(std::iter::repeat_n(s, c as usize - 2));
        }
    }
    part
}

/// Digraph on `P′`; vertex `i` stands for `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPrimeGraph {
    pub vertices: Vec<Symbol>,
    pub graph: Digraph,
}

fn check_length_two_subsequence(instance: &Instance) -> Result<()> {
    if instance.kind != Kind::Subsequence {
        return Err(Error::PreconditionViolated("expected the subsequence kind".into()));
    }
    if let Some(p) = instance.patterns.iter().find(|p| p.len() != 2) {
        return Err(Error::PreconditionViolated(format!("pattern of length {} (expected 2)", p.len())));
    }
    Ok(())
}

pub fn build_p_prime_graph(instance: &Instance, partition: &PqPartition) -> Result<PPrimeGraph> {
    check_length_two_subsequence(instance)?;
    let mut local = vec![usize::MAX; instance.sigma()];
    for (i, s) in partition.p_prime.iter().enumerate() {
        local[s.index()] = i;
    }
    let arcs: Vec<(usize, usize)> = instance
        .patterns
        .iter()
        .map(|p| (local[p.symbols()[0].index()], local[p.symbols()[1].index()]))
        .filter(|&(a, b)| a != usize::MAX && b != usize::MAX && a != b)
        .collect();
    Ok(PPrimeGraph { vertices: partition.p_prime.clone(), graph: Digraph::new(partition.p_prime.len(), arcs)? })
}

/// Maximum-acyclic-subgraph routine used for `F′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasSubroutine {
    /// Dynamic program over vertex subsets, at most nine vertices.
    ExactBrute,
    /// A seeded random order or its reverse, whichever keeps more arcs.
    OrderVsReverse { seed: u64 },
    /// [`MasSubroutine::OrderVsReverse`] followed by single-vertex moves.
    LocalSearch { seed: u64, passes: usize },
}

impl MasSubroutine {
    pub fn default_for(vertices: usize) -> Self {
        if vertices <= MAX_EXACT_MAS_VERTICES {
            MasSubroutine::ExactBrute
        } else {
            MasSubroutine::LocalSearch { seed: 0, passes: 2 * vertices }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MasSubroutine::ExactBrute => "exact",
            MasSubroutine::OrderVsReverse { .. } => "order-reverse",
            MasSubroutine::LocalSearch { .. } => "local",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            MasSubroutine::ExactBrute => None,
            MasSubroutine::OrderVsReverse { seed } | MasSubroutine::LocalSearch { seed, .. } => Some(*seed),
        }
    }
}

/// A vertex order; `kept` are exactly its forward arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasOrder {
    pub order: Vec<usize>,
    pub kept: Vec<(usize, usize)>,
}

fn forward_count(in_masks: &[u64], order: &[usize]) -> usize {
    let mut seen = 0u64;
    let mut total = 0;
    for &v in order {
        total += (in_masks[v] & seen).count_ones() as usize;
        seen |= 1 << v;
    }
    total
}

fn forward_count_slow(g: &Digraph, order: &[usize]) -> usize {
    g.forward_arcs(order).len()
}

fn exact_order(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    let mut in_masks = vec![0u64; n];
    for (u, v) in g.arcs() {
        in_masks[v] |= 1 << u;
    }
    let full = 1usize << n;
    let mut best = vec![0usize; full];
    let mut last = vec![usize::MAX; full];
    for mask in 1..full {
        for v in (0..n).filter(|&v| mask >> v & 1 == 1) {
            let rest = mask & !(1 << v);
            let val = best[rest] + (in_masks[v] & rest as u64).count_ones() as usize;
            if last[mask] == usize::MAX || val > best[mask] {
                best[mask] = val;
                last[mask] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full - 1;
    while mask != 0 {
        let v = last[mask];
        order.push(v);
        mask &= !(1 << v);
    }
    order.reverse();
    debug_assert_eq!(forward_count(&in_masks, &order), best[full - 1]);
    order
}

fn order_vs_reverse(g: &Digraph, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let forward = forward_count_slow(g, &order);
    if 2 * forward < g.num_arcs() {
        order.reverse();
    }
    order
}

/// Moves single vertices to their best position until no move helps or
/// `passes` rounds have run. Never decreases the forward-arc count.
fn improve_locally(g: &Digraph, mut order: Vec<usize>, passes: usize) -> Vec<usize> {
    let mut current = forward_count_slow(g, &order);
    for _ in 0..passes {
        let mut improved = false;
        for v in 0..g.n() {
            let from = order.iter().position(|&x| x == v).expect("v in order");
            let mut trial = order.clone();
            trial.remove(from);
            let mut best = (current, from);
            for to in 0..=trial.len() {
                if to == from {
                    continue;
                }
                trial.insert(to, v);
                let c = forward_count_slow(g, &trial);
                trial.remove(to);
                if c > best.0 {
                    best = (c, to);
                }
            }
            if best.0 > current {
                trial.insert(best.1, v);
                order = trial;
                current = best.0;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    order
}

pub fn mas_order(g: &Digraph, sub: MasSubroutine) -> Result<MasOrder> {
    let order = match sub {
        MasSubroutine::ExactBrute => {
            if g.n() > MAX_EXACT_MAS_VERTICES {
                return Err(Error::SizeLimit { what: "exact acyclic subgraph", n: g.n(), max: MAX_EXACT_MAS_VERTICES });
            }
            exact_order(g)
        }
        MasSubroutine::OrderVsReverse { seed } => order_vs_reverse(g, seed),
        MasSubroutine::LocalSearch { seed, passes } => improve_locally(g, order_vs_reverse(g, seed), passes),
    };
    let kept = g.forward_arcs(&order);
    Ok(MasOrder { order, kept })
}

/// `F·F′·F·F″` for a given ordering of `P′`.
pub fn assemble(partition: &PqPartition, f_prime: &[Symbol]) -> Arrangement {
    let mut out = Vec::with_capacity(2 * partition.p.len() + f_prime.len() + partition.q.len());
    out.extend_from_slice(&partition.p);
    out.extend_from_slice(f_prime);
    out.extend_from_slice(&partition.p);
    out.extend_from_slice(&partition.q);
    Arrangement::new(out)
}

/// Intermediate products of the length-2 subsequence algorithm.
#[derive(Clone, Debug)]
pub struct Rcsseq2Plan {
    pub partition: PqPartition,
    pub graph: PPrimeGraph,
    pub mas: MasOrder,
    pub arrangement: Arrangement,
}

pub fn plan_rcsseq2(instance: &Instance, mas: MasSubroutine) -> Result<Rcsseq2Plan> {
    instance.ensure_valid()?;
    check_length_two_subsequence(instance)?;
    let partition = partition_pq(&instance.text);
    let graph = build_p_prime_graph(instance, &partition)?;
    let mas = mas_order(&graph.graph, mas)?;
    let f_prime: Vec<Symbol> = mas.order.iter().map(|&v| graph.vertices[v]).collect();
    let arrangement = assemble(&partition, &f_prime);
    Ok(Rcsseq2Plan { partition, graph, mas, arrangement })
}

pub fn solve_rcsseq2(instance: &Instance, mas: MasSubroutine) -> Result<SolutionReport> {
    let started = Instant::now();
    let plan = plan_rcsseq2(instance, mas)?;
    Ok(Scorer::new(instance)
        .report(plan.arrangement)
        .with_algorithm(format!("rcsseq2-{}", mas.name()))
        .with_seed(mas.seed())
        .with_elapsed(started.elapsed()))
}

/// Occurrences of the most frequent symbol across all patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Delta {
    pub value: usize,
}

/// Zero for an empty pattern set.
pub fn compute_delta(patterns: &[Pattern]) -> Delta {
    let mut counts = std::collections::HashMap::new();
    for s in patterns.iter().flat_map(|p| p.symbols()) {
        *counts.entry(*s).or_insert(0usize) += 1;
    }
    Delta { value: counts.into_values().max().unwrap_or(0) }
}

/// Uniform shuffle of the expanded multiset.
pub fn random_arrangement(text: &MultisetText, seed: u64) -> Arrangement {
    let mut symbols = text.sorted_symbols();
    symbols.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Arrangement::new(symbols)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScoreEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte-Carlo mean score of uniformly random arrangements. Sample `i` uses
/// `derive_seed(seed, i)`, so the estimate does not depend on thread count.
pub fn estimate_expected_score(instance: &Instance, samples: usize, seed: u64) -> Result<ScoreEstimate> {
    if samples == 0 {
        return Err(Error::PreconditionViolated("at least one sample is required".into()));
    }
    let scorer = Scorer::new(instance);
    let scores: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let arr = random_arrangement(&instance.text, derive_seed(seed, i));
            scorer.matched(&arr.symbols).len() as f64
        })
        .collect();
    let n = samples as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let std_error = if samples > 1 {
        let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(ScoreEstimate { mean, std_error, samples })
}

/// Single random arrangement, reported like any other solver.
pub fn solve_random(instance: &Instance, seed: u64) -> Result<SolutionReport> {
    instance.ensure_valid()?;
    let started = Instant::now();
    Ok(Scorer::new(instance)
        .report(random_arrangement(&instance.text, seed))
        .with_algorithm("random")
        .with_seed(Some(seed))
        .with_elapsed(started.elapsed()))
}
