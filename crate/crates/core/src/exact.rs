//! Exact optimum by backtracking over distinct arrangements of the multiset.
//!
//! Each search node picks the next symbol from the remaining count vector, so
//! equal symbols are never permuted among themselves. Containment is tracked
//! incrementally: one automaton state for the substring kind, one progress
//! pointer per pattern for the subsequence kind.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::matcher::AhoCorasick;
use crate::model::{Arrangement, Instance, Kind, Scorer, SolutionReport, Symbol};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    None,
    FeasibilityBound,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    pub pruning: Pruning,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: DEFAULT_NODE_BUDGET, time_budget: None, pruning: Pruning::FeasibilityBound }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig { pruning: Pruning::None, ..Self::default() }
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget.max(1);
        self
    }
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub report: SolutionReport,
    /// Set only when the search space was exhausted or closed by the bound.
    pub proven_optimal: bool,
    pub nodes_expanded: u64,
    pub leaves_visited: u64,
}

enum Tracker {
    Substring { ac: AhoCorasick, states: Vec<u32> },
    Subsequence { progress: Vec<usize> },
}

struct Search<'a> {
    instance: &'a Instance,
    tracker: Tracker,
    remaining: Vec<u32>,
    prefix: Vec<Symbol>,
    matched: Vec<bool>,
    n_matched: usize,
    undo: Vec<usize>,
    scratch: Vec<u32>,
    best: Option<(usize, Vec<Symbol>)>,
    nodes: u64,
    leaves: u64,
    config: &'a SearchConfig,
    deadline: Option<Instant>,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, config: &'a SearchConfig) -> Self {
        let n = instance.patterns.len();
        let tracker = match instance.kind {
            Kind::Substring => {
                let ac = AhoCorasick::new(&instance.patterns, instance.sigma());
                let start = ac.start();
                Tracker::Substring { ac, states: vec![start] }
            }
            Kind::Subsequence => Tracker::Subsequence { progress: vec![0; n] },
        };
        Search {
            instance,
            tracker,
            remaining: instance.text.counts().to_vec(),
            prefix: Vec::with_capacity(instance.text.total()),
            matched: vec![false; n],
            n_matched: 0,
            undo: Vec::new(),
            scratch: vec![0; instance.sigma()],
            best: None,
            nodes: 0,
            leaves: 0,
            config,
            deadline: config.time_budget.map(|d| Instant::now() + d),
            aborted: false,
        }
    }

    /// Pushes `sym`, returning the undo-stack height before the push.
    fn push(&mut self, sym: Symbol) -> usize {
        let mark = self.undo.len();
        self.remaining[sym.index()] -= 1;
        self.prefix.push(sym);
        match &mut self.tracker {
            Tracker::Substring { ac, states } => {
                let next = ac.next(*states.last().expect("root state"), sym);
                states.push(next);
                for &p in ac.outputs(next) {
                    let p = p as usize;
                    if !self.matched[p] {
                        self.matched[p] = true;
                        self.n_matched += 1;
                        self.undo.push(p);
                    }
                }
            }
            Tracker::Subsequence { progress } => {
                for (p, pat) in self.instance.patterns.iter().enumerate() {
                    let at = progress[p];
                    if at < pat.len() && pat.symbols()[at] == sym {
                        progress[p] += 1;
                        self.undo.push(p);
                        if at + 1 == pat.len() {
                            self.matched[p] = true;
                            self.n_matched += 1;
                        }
                    }
                }
            }
        }
        mark
    }

    fn pop(&mut self, mark: usize) {
        let sym = self.prefix.pop().expect("non-empty prefix");
        self.remaining[sym.index()] += 1;
        match &mut self.tracker {
            Tracker::Substring { states, .. } => {
                states.pop();
                for p in self.undo.drain(mark..) {
                    self.matched[p] = false;
                    self.n_matched -= 1;
                }
            }
            Tracker::Subsequence { progress } => {
                for p in self.undo.drain(mark..) {
                    if self.matched[p] {
                        self.matched[p] = false;
                        self.n_matched -= 1;
                    }
                    progress[p] -= 1;
                }
            }
        }
    }

    fn bound(&mut self) -> usize {
        let mut ub = self.n_matched;
        for (p, pat) in self.instance.patterns.iter().enumerate() {
            if self.matched[p] {
                continue;
            }
            let done = match &self.tracker {
                Tracker::Substring { ac, states } => ac.overlap(*states.last().expect("root state"), p),
                Tracker::Subsequence { progress } => progress[p],
            };
            if suffix_fits(&pat.symbols()[done..], &self.remaining, &mut self.scratch) {
                ub += 1;
            }
        }
        ub
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes > self.config.node_budget {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        if self.out_of_budget() {
            self.aborted = true;
            return;
        }
        if self.prefix.len() == self.instance.text.total() {
            self.leaves += 1;
            if self.best.as_ref().is_none_or(|(s, _)| self.n_matched > *s) {
                self.best = Some((self.n_matched, self.prefix.clone()));
            }
            return;
        }
        let pruning = self.config.pruning == Pruning::FeasibilityBound;
        if pruning {
            if let Some((best, _)) = self.best {
                if self.bound() <= best {
                    return;
                }
            }
        }
        for i in 0..self.remaining.len() {
            if self.remaining[i] == 0 {
                continue;
            }
            let mark = self.push(Symbol::from(i));
            self.dfs();
            self.pop(mark);
            if self.aborted {
                return;
            }
            if pruning && self.best.as_ref().is_some_and(|(s, _)| *s == self.instance.patterns.len()) {
                return;
            }
        }
    }
}

fn suffix_fits(rest: &[Symbol], remaining: &[u32], scratch: &mut [u32]) -> bool {
    let mut ok = true;
    for &s in rest {
        let c = &mut scratch[s.index()];
        *c += 1;
        if *c > remaining[s.index()] {
            ok = false;
        }
    }
    for &s in rest {
        scratch[s.index()] = 0;
    }
    ok
}

/// Maximum number of patterns any arrangement can contain.
///
/// Among optimal arrangements the lexicographically smallest (by symbol id)
/// is reported. When the budget runs out the best incumbent is returned inside
/// [`Error::BudgetExhausted`].
pub fn solve_exact(instance: &Instance, config: &SearchConfig) -> Result<ExactResult> {
    instance.ensure_valid()?;
    let started = Instant::now();
    let mut search = Search::new(instance, config);
    search.dfs();
    let scorer = Scorer::new(instance);
    let symbols = match search.best.take() {
        Some((_, s)) => s,
        None => instance.text.sorted_symbols(),
    };
    let report = scorer
        .report(Arrangement::new(symbols))
        .with_algorithm("exact")
        .with_elapsed(started.elapsed());
    let result = ExactResult {
        report,
        proven_optimal: !search.aborted,
        nodes_expanded: search.nodes,
        leaves_visited: search.leaves,
    };
    if search.aborted {
        Err(Error::BudgetExhausted(Box::new(result)))
    } else {
        Ok(result)
    }
}

/// Matched-so-far plus the number of unmatched patterns whose still-missing
/// part fits the remaining counts. Never below the best completion of `prefix`.
pub fn upper_bound(instance: &Instance, prefix: &[Symbol]) -> Result<usize> {
    let mut remaining = instance.text.counts().to_vec();
    for &s in prefix {
        let slot = remaining.get_mut(s.index()).filter(|c| **c > 0).ok_or(Error::ArrangementMismatch)?;
        *slot -= 1;
    }
    let config = SearchConfig::default();
    let mut search = Search::new(instance, &config);
    for &s in prefix {
        search.push(s);
    }
    Ok(search.bound())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> Instance {
        Instance::parse("abc", "aabbcc", &["abb", "bbc", "cba", "aca"], Kind::Substring).unwrap()
    }

    #[test]
    fn example_one_optimum() {
        let r = solve_exact(&example1(), &SearchConfig::default()).unwrap();
        assert!(r.proven_optimal);
        assert_eq!(r.report.score, 3);
    }

    #[test]
    fn example_two_optimum() {
        let inst = Instance::parse("abc", "aabc", &["ab", "bc", "cb", "ca"], Kind::Subsequence).unwrap();
        assert_eq!(solve_exact(&inst, &SearchConfig::default()).unwrap().report.score, 3);
    }

    #[test]
    fn two_symbol_conflict() {
        let inst = Instance::parse("ab", "ab", &["ab", "ba"], Kind::Substring).unwrap();
        let r = solve_exact(&inst, &SearchConfig::default()).unwrap();
        assert_eq!(r.report.score, 1);
        assert_eq!(inst.alphabet.decode(&r.report.arrangement.symbols), "ab");
    }

    #[test]
    fn single_pattern_using_whole_text() {
        let inst = Instance::parse("abc", "abcabc", &["cbacab"], Kind::Substring).unwrap();
        let r = solve_exact(&inst, &SearchConfig::default()).unwrap();
        assert_eq!(r.report.score, 1);
        assert_eq!(inst.alphabet.decode(&r.report.arrangement.symbols), "cbacab");
    }

    #[test]
    fn bound_examples() {
        let inst = example1();
        assert_eq!(upper_bound(&inst, &[]).unwrap(), 4);
        let prefix = inst.alphabet.encode("acabb").unwrap();
        assert!(upper_bound(&inst, &prefix).unwrap() >= 3);
        // both copies of `a` used: cba and aca drop out
        let prefix = inst.alphabet.encode("aa").unwrap();
        assert_eq!(upper_bound(&inst, &prefix).unwrap(), 2);
    }

    #[test]
    fn budget_exhaustion_keeps_incumbent() {
        let cfg = SearchConfig::exhaustive().with_node_budget(20);
        match solve_exact(&example1(), &cfg) {
            Err(Error::BudgetExhausted(r)) => {
                assert!(!r.proven_optimal);
                assert_eq!(r.report.arrangement.len(), 6);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn invalid_instance_rejected() {
        let inst = Instance::parse("ab", "ab", &["aa"], Kind::Substring).unwrap();
        assert!(matches!(solve_exact(&inst, &SearchConfig::default()), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn exhaustive_visits_every_distinct_arrangement() {
        let inst = example1();
        let r = solve_exact(&inst, &SearchConfig::exhaustive()).unwrap();
        // 6! / (2! 2! 2!)
        assert_eq!(r.leaves_visited, 90);
    }
}
