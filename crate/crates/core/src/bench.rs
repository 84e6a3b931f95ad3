//! Instance generators and the approximation-ratio benchmark harness.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{solve_exact, SearchConfig};
use crate::graph::{Digraph, UndirectedGraph};
use crate::model::{Alphabet, Instance, Kind, MultisetText, Pattern, SolutionReport, Symbol};
use crate::reductions;
use crate::seed::derive_seed;
use crate::superstring::{self, AtspSubroutine, OrderStrategy};
use crate::supersequence::{self, MasSubroutine};

const MAX_REDRAWS: usize = 100;

/// The 15-symbol instance on which greedy concatenation picks `abc` and
/// nothing else, while the other 15 patterns fit together.
pub fn tight_example() -> Instance {
    Instance::parse(
        "abcqwxz",
        "abcqqqwwwxxxzzz",
        &[
            "abc", "qa", "az", "wqa", "qaz", "azx", "qb", "bz", "wqb", "qbz", "bzx", "qc", "cz", "wqc", "qcz", "czx",
        ],
        Kind::Substring,
    )
    .expect("tight example is well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub sigma: usize,
    /// Text length; ignored when `set_text` (then `m = sigma`).
    pub m: usize,
    pub n: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub kind: Kind,
    /// Every symbol occurs exactly once.
    pub set_text: bool,
}

impl RandomSpec {
    fn check(&self) -> Result<()> {
        let m = if self.set_text { self.sigma } else { self.m };
        if self.sigma == 0 || m == 0 || self.min_len == 0 || self.max_len < self.min_len {
            return Err(Error::PreconditionViolated(format!("invalid random spec {self:?}")));
        }
        if self.min_len > m {
            return Err(Error::PreconditionViolated("patterns longer than the text".into()));
        }
        Ok(())
    }
}

/// Random instance, valid by construction: each pattern is cut from a fresh
/// random arrangement of `t` (a factor for the substring kind, an increasing
/// index subset for the subsequence kind). A duplicate is redrawn up to 100
/// times; after that fewer than `n` patterns are returned.
///
/// The first pattern drawn has length `max_len` (capped by `m`), so the
/// instance's longest pattern is exactly `max_len` whenever that fits.
pub fn random_instance(spec: &RandomSpec, seed: u64) -> Result<Instance> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::default_labels(spec.sigma)?;
    let text_symbols: Vec<Symbol> = if spec.set_text {
        (0..spec.sigma).map(Symbol::from).collect()
    } else {
        (0..spec.m).map(|_| Symbol::from(rng.gen_range(0..spec.sigma))).collect()
    };
    let m = text_symbols.len();
    let text = MultisetText::from_symbols(&text_symbols, spec.sigma);
    let max_len = spec.max_len.min(m);
    let mut patterns: Vec<Pattern> = Vec::with_capacity(spec.n);
    'outer: for k in 0..spec.n {
        for _ in 0..MAX_REDRAWS {
            let len = if k == 0 { max_len } else { rng.gen_range(spec.min_len.min(max_len)..=max_len) };
            let mut arr = text_symbols.clone();
            arr.shuffle(&mut rng);
            let symbols = match spec.kind {
                Kind::Substring => {
                    let start = rng.gen_range(0..=m - len);
                    arr[start..start + len].to_vec()
                }
                Kind::Subsequence => {
                    let mut idx = rand::seq::index::sample(&mut rng, m, len).into_vec();
                    idx.sort_unstable();
                    idx.into_iter().map(|i| arr[i]).collect()
                }
            };
            let p = Pattern::new(symbols)?;
            if !patterns.contains(&p) {
                patterns.push(p);
                continue 'outer;
            }
        }
        break;
    }
    Ok(Instance::new(alphabet, text, patterns, spec.kind))
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<UndirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    UndirectedGraph::new(n, edges)
}

pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, arcs)
}

pub fn random_complete_01(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    let g = random_digraph(n, p, seed)?;
    Digraph::complete_01(n, g.arcs().collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Random(RandomSpec),
    CliqueReduction(UndirectedGraph),
    AtspReduction(Digraph),
    MasReduction(Digraph),
    TightExample,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Random(_) => "random",
            Family::CliqueReduction(_) => "clique",
            Family::AtspReduction(_) => "atsp",
            Family::MasReduction(_) => "mas",
            Family::TightExample => "tight",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Instance> {
        match &self.family {
            Family::Random(spec) => random_instance(spec, self.seed),
            Family::CliqueReduction(g) => reductions::clique_to_rcsstr(g),
            Family::AtspReduction(g) => reductions::atsp01_to_rcsstr2(g),
            Family::MasReduction(g) => reductions::digraph_to_rcsseq2(g),
            Family::TightExample => Ok(tight_example()),
        }
    }
}

/// Solver selection shared by the harness and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Exact,
    GreedyConcat(OrderStrategy),
    Atsp2(AtspSubroutine),
    Rcsseq2(MasSubroutine),
    Random { seed: u64 },
}

impl Algorithm {
    pub fn name(&self) -> String {
        match self {
            Algorithm::Exact => "exact".into(),
            Algorithm::GreedyConcat(o) => format!("greedy-concat-{}", o.name()),
            Algorithm::Atsp2(s) => format!("atsp2-{}", s.name()),
            Algorithm::Rcsseq2(m) => format!("rcsseq2-{}", m.name()),
            Algorithm::Random { .. } => "random".into(),
        }
    }

    /// Parses harness names such as `exact`, `greedy-concat`,
    /// `greedy-concat-longest`, `atsp2-greedy`, `rcsseq2-local`, `random`.
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        let bad = || Error::PreconditionViolated(format!("unknown algorithm {name:?}"));
        Ok(match name {
            "exact" => Algorithm::Exact,
            "greedy-concat" | "greedy-concat-input" => Algorithm::GreedyConcat(OrderStrategy::InputOrder),
            "greedy-concat-longest" => Algorithm::GreedyConcat(OrderStrategy::LongestFirst),
            "greedy-concat-shortest" => Algorithm::GreedyConcat(OrderStrategy::ShortestFirst),
            "greedy-concat-random" => Algorithm::GreedyConcat(OrderStrategy::Random(seed)),
            "atsp2" | "atsp2-exact" => Algorithm::Atsp2(AtspSubroutine::ExactHeldKarp),
            "atsp2-greedy" => Algorithm::Atsp2(AtspSubroutine::GreedyEdge),
            "rcsseq2" | "rcsseq2-exact" => Algorithm::Rcsseq2(MasSubroutine::ExactBrute),
            "rcsseq2-order-reverse" => Algorithm::Rcsseq2(MasSubroutine::OrderVsReverse { seed }),
            "rcsseq2-local" => Algorithm::Rcsseq2(MasSubroutine::LocalSearch { seed, passes: 16 }),
            "random" => Algorithm::Random { seed },
            _ => return Err(bad()),
        })
    }

    /// Runs on a valid instance. Exact search budget errors surface as
    /// [`Error::BudgetExhausted`].
    pub fn run(&self, instance: &Instance, config: &SearchConfig) -> Result<SolutionReport> {
        match *self {
            Algorithm::Exact => solve_exact(instance, config).map(|r| r.report),
            Algorithm::GreedyConcat(o) => superstring::greedy_maximal_concat(instance, o),
            Algorithm::Atsp2(s) => superstring::solve_rcsstr2_set(instance, s),
            Algorithm::Rcsseq2(m) => supersequence::solve_rcsseq2(instance, m),
            Algorithm::Random { seed } => supersequence::solve_random(instance, seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance_id: String,
    pub family: String,
    pub kind: Kind,
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub algorithm: String,
    pub score: usize,
    /// Absent when the exact solve ran out of budget.
    pub exact_score: Option<usize>,
    pub ratio: Option<f64>,
    pub elapsed_ms: f64,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSummary {
    pub algorithm: String,
    pub min_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub rows: usize,
}

#[derive(Clone, Debug, Default)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub summaries: Vec<BenchSummary>,
}

pub const CSV_HEADER: &str = "instance_id,family,kind,n,m,ell,algorithm,score,exact_score,ratio,elapsed_ms,seed";

/// Solves every instance with every algorithm; ratios are taken against the
/// exact optimum. Instances are processed in parallel and rows sorted by
/// `(instance_id, algorithm position)`.
pub fn run_bench(
    instances: &[(String, String, Instance)],
    algorithms: &[Algorithm],
    config: &SearchConfig,
    with_exact: bool,
) -> Result<BenchOutcome> {
    let per_instance: Vec<Vec<(usize, BenchRow)>> = instances
        .par_iter()
        .map(|(id, family, inst)| -> Result<Vec<(usize, BenchRow)>> {
            inst.ensure_valid()?;
            let exact = if with_exact {
                match solve_exact(inst, config) {
                    Ok(r) => Some(r.report.score),
                    Err(Error::BudgetExhausted(_)) => None,
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            let mut rows = Vec::with_capacity(algorithms.len());
            for (pos, alg) in algorithms.iter().enumerate() {
                let started = Instant::now();
                let (score, seed) = match alg.run(inst, config) {
                    Ok(r) => (r.score, r.seed),
                    Err(Error::BudgetExhausted(r)) => (r.report.score, None),
                    Err(e) => return Err(e),
                };
                let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
                let ratio = exact.filter(|&e| e > 0).map(|e| score as f64 / e as f64);
                rows.push((
                    pos,
                    BenchRow {
                        instance_id: id.clone(),
                        family: family.clone(),
                        kind: inst.kind,
                        n: inst.patterns.len(),
                        m: inst.text.total(),
                        ell: inst.max_pattern_len(),
                        algorithm: alg.name(),
                        score,
                        exact_score: exact,
                        ratio,
                        elapsed_ms,
                        seed,
                    },
                ));
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let mut keyed: Vec<(usize, BenchRow)> = per_instance.into_iter().flatten().collect();
    keyed.sort_by(|a, b| a.1.instance_id.cmp(&b.1.instance_id).then(a.0.cmp(&b.0)));
    let rows: Vec<BenchRow> = keyed.into_iter().map(|(_, r)| r).collect();

    let summaries = algorithms
        .iter()
        .map(|alg| {
            let name = alg.name();
            let ratios: Vec<f64> = rows.iter().filter(|r| r.algorithm == name).filter_map(|r| r.ratio).collect();
            BenchSummary {
                rows: rows.iter().filter(|r| r.algorithm == name).count(),
                min_ratio: ratios.iter().copied().reduce(f64::min),
                mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                algorithm: name,
            }
        })
        .collect();
    Ok(BenchOutcome { rows, summaries })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV table; `with_timing = false` writes 0 in `elapsed_ms` so reruns are
/// byte-identical. Summary rows use `instance_id = summary` and put the
/// statistic name (`min` / `mean`) in the `family` column.
pub fn to_csv(outcome: &BenchOutcome, with_timing: bool) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &outcome.rows {
        let elapsed = if with_timing { format!("{:.3}", r.elapsed_ms) } else { "0".into() };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance_id,
            r.family,
            r.kind,
            r.n,
            r.m,
            r.ell,
            r.algorithm,
            r.score,
            opt(r.exact_score),
            opt(r.ratio.map(|x| format!("{x:.6}"))),
            elapsed,
            opt(r.seed)
        );
    }
    for s in &outcome.summaries {
        for (stat, value) in [("min", s.min_ratio), ("mean", s.mean_ratio)] {
            let _ = writeln!(out, "summary,{stat},,,,,{},,,{},,", s.algorithm, opt(value.map(|x| format!("{x:.6}"))));
        }
    }
    out
}

/// Batch of `count` generated instances keyed `<family>-<index>`, each with
/// seed `derive_seed(seed, index)`.
pub fn generate_batch(family: &Family, count: usize, seed: u64) -> Result<Vec<(String, String, Instance)>> {
    (0..count)
        .map(|i| {
            let spec = GenSpec { family: family.clone(), seed: derive_seed(seed, i as u64) };
            Ok((format!("{}-{:04}", family.name(), i), family.name().to_string(), spec.generate()?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_example_shape() {
        let t = tight_example();
        assert_eq!(t.text.total(), 15);
        assert_eq!(t.patterns.len(), 16);
        assert!(t.validate().is_empty());
    }

    #[test]
    fn random_instances_are_valid_and_reproducible() {
        for kind in [Kind::Substring, Kind::Subsequence] {
            for s in 0..50 {
                let spec = RandomSpec { sigma: 3, m: 8, n: 5, min_len: 1, max_len: 3, kind, set_text: false };
                let a = random_instance(&spec, s).unwrap();
                assert!(a.validate().is_empty());
                assert_eq!(a.max_pattern_len(), 3);
                assert_eq!(a, random_instance(&spec, s).unwrap());
            }
        }
    }

    #[test]
    fn set_text_has_unit_counts() {
        let spec = RandomSpec { sigma: 5, m: 0, n: 4, min_len: 2, max_len: 2, kind: Kind::Substring, set_text: true };
        let inst = random_instance(&spec, 3).unwrap();
        assert!(inst.text.is_set());
        assert_eq!(inst.text.total(), 5);
    }

    #[test]
    fn duplicate_redraws_shrink_n() {
        let spec = RandomSpec { sigma: 1, m: 2, n: 5, min_len: 1, max_len: 2, kind: Kind::Substring, set_text: false };
        let inst = random_instance(&spec, 0).unwrap();
        assert_eq!(inst.patterns.len(), 2);
    }

    #[test]
    fn empty_batch_is_header_only() {
        let out = run_bench(&[], &[Algorithm::Exact], &SearchConfig::default(), true).unwrap();
        let csv = to_csv(&BenchOutcome { rows: out.rows, summaries: vec![] }, false);
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn atsp2_exact_has_unit_ratio() {
        let spec = RandomSpec { sigma: 6, m: 0, n: 6, min_len: 2, max_len: 2, kind: Kind::Substring, set_text: true };
        let batch = generate_batch(&Family::Random(spec), 50, 1).unwrap();
        let algs = [Algorithm::Atsp2(AtspSubroutine::ExactHeldKarp), Algorithm::GreedyConcat(OrderStrategy::InputOrder)];
        let out = run_bench(&batch, &algs, &SearchConfig::default(), true).unwrap();
        assert_eq!(out.rows.len(), 100);
        assert_eq!(out.summaries[0].min_ratio, Some(1.0));
        let again = run_bench(&batch, &algs, &SearchConfig::default(), true).unwrap();
        assert_eq!(to_csv(&out, false), to_csv(&again, false));
    }
}
