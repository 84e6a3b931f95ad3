//! Approximation algorithms for the substring kind.
//!
//! * [`greedy_maximal_concat`]: concatenate a maximal fitting subset of the
//!   patterns, then append the leftover symbols.
//! * [`solve_rcsstr2_set`]: length-2 patterns over a text without repeated
//!   symbols, solved through a Hamiltonian cycle on the pattern digraph with
//!   one zero-weight arc cut open.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::model::{concat_with_leftovers, Arrangement, Instance, Kind, Pattern, Scorer, SolutionReport, Symbol};
use crate::oracles::{self, contains_factor, HamiltonianResult};

/// Order in which the greedy scan offers patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderStrategy {
    #[default]
    InputOrder,
    LongestFirst,
    ShortestFirst,
    Random(u64),
}

impl OrderStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            OrderStrategy::InputOrder => "input",
            OrderStrategy::LongestFirst => "longest",
            OrderStrategy::ShortestFirst => "shortest",
            OrderStrategy::Random(_) => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            OrderStrategy::Random(s) => Some(*s),
            _ => None,
        }
    }

    pub fn order(&self, patterns: &[Pattern]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..patterns.len()).collect();
        match self {
            OrderStrategy::InputOrder => {}
            OrderStrategy::LongestFirst => idx.sort_by_key(|&i| std::cmp::Reverse(patterns[i].len())),
            OrderStrategy::ShortestFirst => idx.sort_by_key(|&i| patterns[i].len()),
            OrderStrategy::Random(seed) => idx.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed)),
        }
        idx
    }
}

/// Indices of the maximal subset chosen by the greedy scan, in scan order.
pub fn select_maximal_subset(instance: &Instance, strategy: OrderStrategy) -> Vec<usize> {
    concat_with_leftovers(instance, &strategy.order(&instance.patterns)).1
}

pub fn greedy_maximal_concat(instance: &Instance, strategy: OrderStrategy) -> Result<SolutionReport> {
    instance.ensure_valid()?;
    if instance.kind != Kind::Substring {
        return Err(Error::PreconditionViolated("greedy concatenation expects the substring kind".into()));
    }
    let started = Instant::now();
    let (arrangement, _) = concat_with_leftovers(instance, &strategy.order(&instance.patterns));
    Ok(Scorer::new(instance)
        .report(arrangement)
        .with_algorithm(format!("greedy-concat-{}", strategy.name()))
        .with_seed(strategy.seed())
        .with_elapsed(started.elapsed()))
}

/// Upper bound on the optimum given `q` greedily chosen patterns of length
/// at most `ell`: `q·ℓ(ℓ(ℓ+1)/2 − 1)`, or `q·ℓ²` for substring-free sets.
///
/// For `ell = 1` the general formula degenerates to 0; greedy is exact there.
pub fn alg1_bound(ell: u64, q: u64, substring_free: bool) -> u64 {
    if substring_free {
        q * ell * ell
    } else {
        q * ell * (ell * (ell + 1) / 2 - 1)
    }
}

/// True iff no pattern occurs inside another one.
pub fn is_substring_free(patterns: &[Pattern]) -> bool {
    patterns.iter().enumerate().all(|(i, p)| {
        patterns
            .iter()
            .enumerate()
            .all(|(j, q)| i == j || !contains_factor(q.symbols(), p.symbols()))
    })
}

/// Max-ATSP routine plugged into [`solve_rcsstr2_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtspSubroutine {
    ExactHeldKarp,
    GreedyEdge,
}

impl AtspSubroutine {
    /// Default: exact up to the Held–Karp size cap.
    pub fn default_for(vertices: usize) -> Self {
        if vertices <= oracles::MAX_ATSP_VERTICES {
            AtspSubroutine::ExactHeldKarp
        } else {
            AtspSubroutine::GreedyEdge
        }
    }

    /// Declared approximation guarantee as a ratio `(num, den)`.
    ///
    /// On 0/1 weights the greedy edge rule always keeps one weight-1 arc when
    /// any exists, and a tour weighs at most `n`, so it guarantees 1/n. A
    /// 3/4-approximate routine in this slot carries its ratio over unchanged.
    pub fn guarantee(&self, vertices: usize) -> (u64, u64) {
        match self {
            AtspSubroutine::ExactHeldKarp => (1, 1),
            AtspSubroutine::GreedyEdge => (1, vertices.max(1) as u64),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AtspSubroutine::ExactHeldKarp => "exact",
            AtspSubroutine::GreedyEdge => "greedy",
        }
    }

    pub fn tour(&self, g: &Digraph) -> Result<HamiltonianResult> {
        match self {
            AtspSubroutine::ExactHeldKarp => oracles::max_atsp_exact(g),
            AtspSubroutine::GreedyEdge => oracles::max_atsp_greedy(g),
        }
    }
}

/// Complete digraph on the text's symbols, weight 1 on `(a, b)` iff `ab` is a
/// pattern. Vertex `i` is `support[i]`.
pub fn pattern_digraph(instance: &Instance, support: &[Symbol]) -> Result<Digraph> {
    let mut local = vec![usize::MAX; instance.sigma()];
    for (i, s) in support.iter().enumerate() {
        local[s.index()] = i;
    }
    let ones: Vec<(usize, usize)> = instance
        .patterns
        .iter()
        .map(|p| (local[p.symbols()[0].index()], local[p.symbols()[1].index()]))
        .collect();
    Digraph::complete_01(support.len(), ones)
}

/// Rotates a Hamiltonian cycle into a path: the cut is placed at the first
/// zero-weight arc if there is one, otherwise the closing arc is dropped.
pub fn break_cycle(order: &[usize], weight: impl Fn(usize, usize) -> i64) -> Vec<usize> {
    let n = order.len();
    if n < 2 {
        return order.to_vec();
    }
    match (0..n).find(|&i| weight(order[i], order[(i + 1) % n]) == 0) {
        Some(i) => (1..=n).map(|k| order[(i + k) % n]).collect(),
        None => order.to_vec(),
    }
}

pub fn solve_rcsstr2_set(instance: &Instance, sub: AtspSubroutine) -> Result<SolutionReport> {
    instance.ensure_valid()?;
    if instance.kind != Kind::Substring {
        return Err(Error::PreconditionViolated("expected the substring kind".into()));
    }
    if !instance.text.is_set() {
        return Err(Error::PreconditionViolated("every symbol of t must occur exactly once".into()));
    }
    if let Some(p) = instance.patterns.iter().find(|p| p.len() != 2) {
        return Err(Error::PreconditionViolated(format!("pattern of length {} (expected 2)", p.len())));
    }
    let started = Instant::now();
    let support = instance.text.support();
    let g = pattern_digraph(instance, &support)?;
    let tour = sub.tour(&g)?;
    let path = break_cycle(&tour.order, |u, v| g.weight(u, v).unwrap_or(0) as i64);
    let arrangement = Arrangement::new(path.into_iter().map(|v| support[v]).collect());
    Ok(Scorer::new(instance)
        .report(arrangement)
        .with_algorithm(format!("atsp2-{}", sub.name()))
        .with_elapsed(started.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> Instance {
        crate::bench::tight_example()
    }

    #[test]
    fn tight_example_greedy_takes_only_abc() {
        let inst = tight();
        assert_eq!(select_maximal_subset(&inst, OrderStrategy::InputOrder), vec![0]);
        let r = greedy_maximal_concat(&inst, OrderStrategy::InputOrder).unwrap();
        assert_eq!(r.score, 1);
    }

    #[test]
    fn example_one_in_given_order() {
        let inst = Instance::parse("abc", "aabbcc", &["aca", "abb", "bbc", "cba"], Kind::Substring).unwrap();
        assert_eq!(select_maximal_subset(&inst, OrderStrategy::InputOrder), vec![0, 2]);
        let r = greedy_maximal_concat(&inst, OrderStrategy::InputOrder).unwrap();
        assert_eq!(inst.alphabet.decode(&r.arrangement.symbols), "acabbc");
        assert_eq!(r.score, 3);
    }

    #[test]
    fn single_pattern_is_taken() {
        let inst = Instance::parse("abc", "abcabc", &["cbacab"], Kind::Substring).unwrap();
        assert_eq!(greedy_maximal_concat(&inst, OrderStrategy::LongestFirst).unwrap().score, 1);
    }

    #[test]
    fn bound_formula() {
        assert_eq!(alg1_bound(3, 1, false), 15);
        assert_eq!(alg1_bound(2, 1, false), 4);
        assert_eq!(alg1_bound(3, 1, true), 9);
        assert_eq!(alg1_bound(3, 4, false), 60);
    }

    #[test]
    fn substring_freeness() {
        let p = |s: &str| Pattern::new(s.bytes().map(|b| Symbol((b - b'a') as u16)).collect()).unwrap();
        assert!(is_substring_free(&[p("abb"), p("bbc"), p("cba"), p("aca")]));
        assert!(!is_substring_free(&[p("ab"), p("abc")]));
        assert!(is_substring_free(&[p("ab")]));
    }

    #[test]
    fn atsp2_examples() {
        let inst = Instance::parse("abc", "abc", &["ab", "bc"], Kind::Substring).unwrap();
        let r = solve_rcsstr2_set(&inst, AtspSubroutine::ExactHeldKarp).unwrap();
        assert_eq!(inst.alphabet.decode(&r.arrangement.symbols), "abc");
        assert_eq!(r.score, 2);

        let inst = Instance::parse("abc", "abc", &["ab", "bc", "ca"], Kind::Substring).unwrap();
        assert_eq!(solve_rcsstr2_set(&inst, AtspSubroutine::ExactHeldKarp).unwrap().score, 2);

        let inst = Instance::parse("ab", "ab", &["ab"], Kind::Substring).unwrap();
        let r = solve_rcsstr2_set(&inst, AtspSubroutine::GreedyEdge).unwrap();
        assert_eq!(inst.alphabet.decode(&r.arrangement.symbols), "ab");
        assert_eq!(r.score, 1);
    }

    #[test]
    fn atsp2_preconditions() {
        let repeated = Instance::parse("ab", "aab", &["ab"], Kind::Substring).unwrap();
        assert!(matches!(
            solve_rcsstr2_set(&repeated, AtspSubroutine::ExactHeldKarp),
            Err(Error::PreconditionViolated(_))
        ));
        let long = Instance::parse("abc", "abc", &["abc"], Kind::Substring).unwrap();
        assert!(matches!(
            solve_rcsstr2_set(&long, AtspSubroutine::ExactHeldKarp),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn cycle_break_cuts_at_zero_arc() {
        // cycle 0 -> 1 -> 2 -> 0, arc (2, 0) weighs 0
        let path = break_cycle(&[0, 1, 2], |u, v| if (u, v) == (2, 0) { 0 } else { 1 });
        assert_eq!(path, vec![0, 1, 2]);
        let path = break_cycle(&[0, 1, 2], |u, v| if (u, v) == (0, 1) { 0 } else { 1 });
        assert_eq!(path, vec![1, 2, 0]);
    }
}
