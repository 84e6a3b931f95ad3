//! Instance generators for the hardness reductions, with certificate maps.
//!
//! * clique → substring kind: `t` holds `n` copies of every vertex symbol and
//!   pattern `sᵢ = vᵢⁿ · d(vᵢ)`, where `d(vᵢ)` lists the non-neighbours of
//!   `vᵢ` in ascending order. Contained patterns always form a clique.
//! * complete 0/1 digraph → length-2 substring patterns over a set `t`.
//! * digraph → length-2 subsequence patterns over a set `t`.
//! * binary shortest common superstring through completeness queries.

use crate::error::{Error, Result};
use crate::exact::{solve_exact, SearchConfig};
use crate::graph::{Digraph, UndirectedGraph};
use crate::model::{concat_with_leftovers, Alphabet, Arrangement, Instance, Kind, MultisetText, Pattern, Symbol};

pub fn clique_to_rcsstr(g: &UndirectedGraph) -> Result<Instance> {
    let n = g.n();
    if n == 0 {
        return Err(Error::PreconditionViolated("graph needs at least one vertex".into()));
    }
    let alphabet = Alphabet::default_labels(n)?;
    let text = MultisetText::from_counts(vec![n as u32; n]);
    let patterns = (0..n)
        .map(|v| {
            let mut s = vec![Symbol::from(v); n];
            s.extend(g.non_neighbors(v).into_iter().map(Symbol::from));
            Pattern::new(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance::new(alphabet, text, patterns, Kind::Substring))
}

/// Concatenates the clique's patterns (ascending vertex order) and appends
/// the leftover symbols.
pub fn clique_to_arrangement(g: &UndirectedGraph, clique: &[usize]) -> Result<Arrangement> {
    if !g.is_clique(clique) {
        return Err(Error::NotAClique);
    }
    let instance = clique_to_rcsstr(g)?;
    let mut order = clique.to_vec();
    order.sort_unstable();
    let (arrangement, taken) = concat_with_leftovers(&instance, &order);
    if taken.len() != order.len() {
        return Err(Error::InternalInvariantViolation("clique patterns exceed the text budget".into()));
    }
    Ok(arrangement)
}

/// Vertices whose patterns the arrangement contains; always a clique.
pub fn arrangement_to_clique(g: &UndirectedGraph, arrangement: &Arrangement) -> Result<Vec<usize>> {
    let instance = clique_to_rcsstr(g)?;
    let report = crate::model::score_arrangement(&instance, arrangement)?;
    if !g.is_clique(&report.matched) {
        return Err(Error::InternalInvariantViolation(format!(
            "matched vertices {:?} do not form a clique",
            report.matched
        )));
    }
    Ok(report.matched)
}

/// `t = V` as a set, one pattern `ab` per weight-1 arc.
pub fn atsp01_to_rcsstr2(g: &Digraph) -> Result<Instance> {
    if !g.is_complete() {
        return Err(Error::PreconditionViolated("expected a complete 0/1-weighted digraph".into()));
    }
    arcs_to_instance(g.n(), g.heavy_arcs(), Kind::Substring)
}

/// `t = V` as a set, one pattern `ab` per arc.
pub fn digraph_to_rcsseq2(g: &Digraph) -> Result<Instance> {
    arcs_to_instance(g.n(), g.arcs(), Kind::Subsequence)
}

fn arcs_to_instance(n: usize, arcs: impl Iterator<Item = (usize, usize)>, kind: Kind) -> Result<Instance> {
    let alphabet = Alphabet::default_labels(n)?;
    let text = MultisetText::from_counts(vec![1; n]);
    let patterns = arcs
        .map(|(u, v)| Pattern::new(vec![Symbol::from(u), Symbol::from(v)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance::new(alphabet, text, patterns, kind))
}

/// True iff some arrangement contains every pattern.
pub fn is_complete(instance: &Instance, config: &SearchConfig) -> Result<bool> {
    Ok(solve_exact(instance, config)?.report.score == instance.patterns.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScsDriverOutcome {
    /// Shortest common superstring over `{0, 1}`.
    pub superstring: Vec<u8>,
    pub solver_calls: usize,
}

/// Shortest common superstring of binary patterns via completeness queries
/// on texts `0ⁱ1ʲ`.
///
/// Total lengths `L` are swept upward from the trivial lower bound to `n·ℓ`;
/// for each `L`, `i` runs upward and the first complete instance wins. With
/// `binary_search` the smallest feasible `L` is located by bisection instead
/// (feasibility is monotone in `L`: appending a symbol keeps a superstring).
pub fn binary_scs_driver(patterns: &[Vec<u8>], config: &SearchConfig, binary_search: bool) -> Result<ScsDriverOutcome> {
    if patterns.iter().flatten().any(|&b| b > 1) {
        return Err(Error::PreconditionViolated("patterns must be over {0, 1}".into()));
    }
    if patterns.iter().any(Vec::is_empty) {
        return Err(Error::EmptyPattern);
    }
    for (i, p) in patterns.iter().enumerate() {
        if patterns[..i].contains(p) {
            return Err(Error::PreconditionViolated("patterns must be distinct".into()));
        }
    }
    if patterns.is_empty() {
        return Ok(ScsDriverOutcome { superstring: Vec::new(), solver_calls: 0 });
    }
    let alphabet = Alphabet::new(['0', '1'])?;
    let pats = patterns
        .iter()
        .map(|p| Pattern::new(p.iter().map(|&b| Symbol(b as u16)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let zeros = |p: &Vec<u8>| p.iter().filter(|&&b| b == 0).count();
    let i_min = patterns.iter().map(zeros).max().unwrap_or(0);
    let j_min = patterns.iter().map(|p| p.len() - zeros(p)).max().unwrap_or(0);
    let ell = patterns.iter().map(Vec::len).max().unwrap_or(0);
    let lo = (i_min + j_min).max(ell);
    let hi = patterns.len() * ell;

    let mut calls = 0usize;
    // Smallest complete text of total length `len`, if any.
    let try_length = |len: usize, calls: &mut usize| -> Result<Option<Vec<u8>>> {
        for i in i_min..=len.saturating_sub(j_min) {
            let j = len - i;
            let text = MultisetText::from_counts(vec![i as u32, j as u32]);
            let instance = Instance::new(alphabet.clone(), text, pats.clone(), Kind::Substring);
            *calls += 1;
            let r = solve_exact(&instance, config)?;
            if r.report.score == pats.len() {
                return Ok(Some(r.report.arrangement.symbols.iter().map(|s| s.0 as u8).collect()));
            }
        }
        Ok(None)
    };

    let found = if binary_search {
        let (mut a, mut b) = (lo, hi);
        let mut best = None;
        while a <= b {
            let mid = (a + b) / 2;
            match try_length(mid, &mut calls)? {
                Some(s) => {
                    best = Some(s);
                    if mid == 0 {
                        break;
                    }
                    b = mid - 1;
                }
                None => a = mid + 1,
            }
        }
        best
    } else {
        let mut found = None;
        for len in lo..=hi {
            if let Some(s) = try_length(len, &mut calls)? {
                found = Some(s);
                break;
            }
        }
        found
    };
    let superstring = found.ok_or_else(|| {
        Error::InternalInvariantViolation("no complete instance up to the concatenation length".into())
    })?;
    Ok(ScsDriverOutcome { superstring, solver_calls: calls })
}
