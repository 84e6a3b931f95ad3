//! Instances, arrangements and scoring.
//!
//! Symbols are dense integer ids; printable labels only exist at the I/O
//! boundary through [`Alphabet`].

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::AhoCorasick;

/// A symbol id, dense in `0..alphabet.len()` within one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u16);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Symbol {
    fn from(i: usize) -> Self {
        Symbol(u16::try_from(i).expect("symbol id overflows u16"))
    }
}

const DEFAULT_LABELS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Bijection between symbol ids and printable characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<char>,
}

impl Alphabet {
    pub fn new(labels: impl IntoIterator<Item = char>) -> Result<Self> {
        let labels: Vec<char> = labels.into_iter().collect();
        for (i, c) in labels.iter().enumerate() {
            if labels[..i].contains(c) {
                return Err(Error::DuplicateLabel(*c));
            }
        }
        if labels.len() > u16::MAX as usize {
            return Err(Error::SizeLimit { what: "alphabet", n: labels.len(), max: u16::MAX as usize });
        }
        Ok(Alphabet { labels })
    }

    /// `a..z`, `A..Z`, `0..9` truncated to `n` labels.
    pub fn default_labels(n: usize) -> Result<Self> {
        if n > DEFAULT_LABELS.len() {
            return Err(Error::SizeLimit { what: "default alphabet", n, max: DEFAULT_LABELS.len() });
        }
        Alphabet::new(DEFAULT_LABELS.chars().take(n))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, s: Symbol) -> char {
        self.labels[s.index()]
    }

    pub fn symbol(&self, c: char) -> Result<Symbol> {
        self.labels
            .iter()
            .position(|&l| l == c)
            .map(Symbol::from)
            .ok_or(Error::UnknownSymbol(c))
    }

    pub fn encode(&self, text: &str) -> Result<Vec<Symbol>> {
        text.chars().map(|c| self.symbol(c)).collect()
    }

    pub fn decode(&self, symbols: &[Symbol]) -> String {
        symbols.iter().map(|&s| self.label(s)).collect()
    }

    pub fn as_string(&self) -> String {
        self.labels.iter().collect()
    }
}

/// Per-symbol occurrence counts of a symbol sequence, indexed by id.
pub fn count_vector(symbols: &[Symbol], sigma: usize) -> Vec<u32> {
    let mut counts = vec![0u32; sigma];
    for s in symbols {
        if s.index() >= counts.len() {
            counts.resize(s.index() + 1, 0);
        }
        counts[s.index()] += 1;
    }
    counts
}

fn fits(demand: &[u32], budget: &[u32]) -> bool {
    demand
        .iter()
        .enumerate()
        .all(|(i, &d)| d == 0 || budget.get(i).is_some_and(|&b| d <= b))
}

/// The resource multiset `t`, stored as counts per symbol id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetText {
    counts: Vec<u32>,
    total: usize,
}

impl MultisetText {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        let total = counts.iter().map(|&c| c as usize).sum();
        MultisetText { counts, total }
    }

    pub fn from_symbols(symbols: &[Symbol], sigma: usize) -> Self {
        Self::from_counts(count_vector(symbols, sigma))
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, s: Symbol) -> u32 {
        self.counts.get(s.index()).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Symbols with a non-zero count, ascending.
    pub fn support(&self) -> Vec<Symbol> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| Symbol::from(i))
            .collect()
    }

    /// True when every symbol of the support occurs exactly once.
    pub fn is_set(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// The multiset expanded in ascending symbol order.
    pub fn sorted_symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.total);
        for (i, &c) in self.counts.iter().enumerate() {
            out.extend(std::iter::repeat_n(Symbol::from(i), c as usize));
        }
        out
    }

    pub fn contains_counts(&self, demand: &[u32]) -> bool {
        fits(demand, &self.counts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    symbols: Vec<Symbol>,
}

impl Pattern {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn counts(&self, sigma: usize) -> Vec<u32> {
        count_vector(&self.symbols, sigma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Substring,
    Subsequence,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Substring => f.write_str("substring"),
            Kind::Subsequence => f.write_str("subsequence"),
        }
    }
}

/// Reasons an instance falls outside the problem's assumptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// The pattern needs more copies of some symbol than `t` holds.
    InfeasiblePattern { index: usize },
    DuplicatePattern { first: usize, second: usize },
    EmptyText,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InfeasiblePattern { index } => write!(f, "pattern {index} does not fit the text"),
            Violation::DuplicatePattern { first, second } => {
                write!(f, "patterns {first} and {second} are identical")
            }
            Violation::EmptyText => f.write_str("text is empty"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub alphabet: Alphabet,
    pub text: MultisetText,
    pub patterns: Vec<Pattern>,
    pub kind: Kind,
}

impl Instance {
    pub fn new(alphabet: Alphabet, text: MultisetText, patterns: Vec<Pattern>, kind: Kind) -> Self {
        let mut text = text;
        if text.counts.len() < alphabet.len() {
            text.counts.resize(alphabet.len(), 0);
        }
        Instance { alphabet, text, patterns, kind }
    }

    /// Builds an instance from printable strings over `alphabet`.
    pub fn parse(alphabet: &str, t: &str, patterns: &[&str], kind: Kind) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet.chars())?;
        let text = MultisetText::from_symbols(&alphabet.encode(t)?, alphabet.len());
        let patterns = patterns
            .iter()
            .map(|p| Pattern::new(alphabet.encode(p)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance::new(alphabet, text, patterns, kind))
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn max_pattern_len(&self) -> usize {
        self.patterns.iter().map(Pattern::len).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_instance(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(v))
        }
    }

    /// Drops later duplicates of a pattern, keeping the first occurrence.
    pub fn dedup_patterns(&mut self) {
        let mut seen = std::collections::HashSet::new();
        self.patterns.retain(|p| seen.insert(p.clone()));
    }

    pub fn pattern_string(&self, i: usize) -> String {
        self.alphabet.decode(self.patterns[i].symbols())
    }

    pub fn arrangement_from_str(&self, s: &str) -> Result<Arrangement> {
        Ok(Arrangement::new(self.alphabet.encode(s)?))
    }
}

/// An ordering of the multiset text.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Arrangement {
    pub symbols: Vec<Symbol>,
}

impl Arrangement {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Arrangement { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub score: usize,
    /// Indices of contained patterns, ascending.
    pub matched: Vec<usize>,
    pub arrangement: Arrangement,
    pub algorithm: String,
    pub elapsed: Duration,
    pub seed: Option<u64>,
}

impl SolutionReport {
    pub fn with_algorithm(mut self, name: impl Into<String>) -> Self {
        self.algorithm = name.into();
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }
}

pub fn contains_substring(text: &[Symbol], pattern: &[Symbol]) -> bool {
    if pattern.is_empty() {
        return true;
    }
    pattern.len() <= text.len() && text.windows(pattern.len()).any(|w| w == pattern)
}

/// Single greedy left-to-right scan.
pub fn contains_subsequence(text: &[Symbol], pattern: &[Symbol]) -> bool {
    let mut rest = pattern.iter().peekable();
    for s in text {
        match rest.peek() {
            Some(&p) if p == s => {
                rest.next();
            }
            Some(_) => {}
            None => break,
        }
    }
    rest.peek().is_none()
}

pub fn contains(kind: Kind, text: &[Symbol], pattern: &[Symbol]) -> bool {
    match kind {
        Kind::Substring => contains_substring(text, pattern),
        Kind::Subsequence => contains_subsequence(text, pattern),
    }
}

pub fn is_arrangement_of(arrangement: &Arrangement, text: &MultisetText) -> bool {
    let counts = count_vector(&arrangement.symbols, text.counts.len());
    let width = counts.len().max(text.counts.len());
    (0..width).all(|i| counts.get(i).copied().unwrap_or(0) == text.counts.get(i).copied().unwrap_or(0))
}

pub fn validate_instance(instance: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    if instance.text.total() == 0 {
        out.push(Violation::EmptyText);
    }
    for (i, p) in instance.patterns.iter().enumerate() {
        if let Some(first) = instance.patterns[..i].iter().position(|q| q == p) {
            out.push(Violation::DuplicatePattern { first, second: i });
        }
        if !instance.text.contains_counts(&p.counts(instance.sigma())) {
            out.push(Violation::InfeasiblePattern { index: i });
        }
    }
    out
}

/// Scores arrangements of one instance; the substring automaton is built once.
#[derive(Clone, Debug)]
pub struct Scorer<'a> {
    instance: &'a Instance,
    automaton: Option<AhoCorasick>,
}

impl<'a> Scorer<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        let automaton = match instance.kind {
            Kind::Substring => Some(AhoCorasick::new(&instance.patterns, instance.sigma())),
            Kind::Subsequence => None,
        };
        Scorer { instance, automaton }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    /// Matched pattern indices without the permutation check.
    pub fn matched(&self, symbols: &[Symbol]) -> Vec<usize> {
        match &self.automaton {
            Some(ac) => {
                let hit = ac.find_all(symbols);
                hit.iter().enumerate().filter(|(_, &h)| h).map(|(i, _)| i).collect()
            }
            None => self
                .instance
                .patterns
                .iter()
                .enumerate()
                .filter(|(_, p)| contains_subsequence(symbols, p.symbols()))
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn score(&self, arrangement: &Arrangement) -> Result<SolutionReport> {
        if !is_arrangement_of(arrangement, &self.instance.text) {
            return Err(Error::ArrangementMismatch);
        }
        Ok(self.report(arrangement.clone()))
    }

    pub(crate) fn report(&self, arrangement: Arrangement) -> SolutionReport {
        let matched = self.matched(&arrangement.symbols);
        SolutionReport {
            score: matched.len(),
            matched,
            arrangement,
            algorithm: String::new(),
            elapsed: Duration::ZERO,
            seed: None,
        }
    }
}

pub fn score_arrangement(instance: &Instance, arrangement: &Arrangement) -> Result<SolutionReport> {
    Scorer::new(instance).score(arrangement)
}

/// Scoring through a naive per-pattern scan; kept as a cross-check for [`Scorer`].
pub fn score_naive(instance: &Instance, arrangement: &Arrangement) -> Result<SolutionReport> {
    if !is_arrangement_of(arrangement, &instance.text) {
        return Err(Error::ArrangementMismatch);
    }
    let matched: Vec<usize> = instance
        .patterns
        .iter()
        .enumerate()
        .filter(|(_, p)| contains(instance.kind, &arrangement.symbols, p.symbols()))
        .map(|(i, _)| i)
        .collect();
    Ok(SolutionReport {
        score: matched.len(),
        matched,
        arrangement: arrangement.clone(),
        algorithm: "naive".into(),
        elapsed: Duration::ZERO,
        seed: None,
    })
}

/// Concatenates patterns in the given order while they fit the remaining
/// budget, then appends leftovers in ascending symbol order. Returns the
/// arrangement and the indices taken.
pub fn concat_with_leftovers(instance: &Instance, order: &[usize]) -> (Arrangement, Vec<usize>) {
    let sigma = instance.sigma();
    let mut budget = instance.text.counts().to_vec();
    let mut out = Vec::with_capacity(instance.text.total());
    let mut taken = Vec::new();
    for &i in order {
        let p = &instance.patterns[i];
        let demand = p.counts(sigma);
        if fits(&demand, &budget) {
            for (b, d) in budget.iter_mut().zip(&demand) {
                *b -= d;
            }
            out.extend_from_slice(p.symbols());
            taken.push(i);
        }
    }
    for (i, &c) in budget.iter().enumerate() {
        out.extend(std::iter::repeat_n(Symbol::from(i), c as usize));
    }
    (Arrangement::new(out), taken)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| Symbol((b - b'a') as u16)).collect()
    }

    pub(crate) fn example1() -> Instance {
        Instance::parse("abc", "aabbcc", &["abb", "bbc", "cba", "aca"], Kind::Substring).unwrap()
    }

    fn example2() -> Instance {
        Instance::parse("abc", "aabc", &["ab", "bc", "cb", "ca"], Kind::Subsequence).unwrap()
    }

    #[test]
    fn substring_examples() {
        assert!(contains_substring(&syms("acabbc"), &syms("abb")));
        assert!(contains_substring(&syms("acabbc"), &syms("acabbc")));
        assert!(!contains_substring(&syms("acabbc"), &syms("cba")));
    }

    #[test]
    fn subsequence_examples() {
        assert!(contains_subsequence(&syms("abca"), &syms("ca")));
        assert!(contains_subsequence(&syms("abca"), &syms("abca")));
        assert!(!contains_subsequence(&syms("abca"), &syms("cb")));
    }

    #[test]
    fn scores_example_one() {
        let inst = example1();
        let arr = inst.arrangement_from_str("acabbc").unwrap();
        let r = score_arrangement(&inst, &arr).unwrap();
        assert_eq!(r.score, 3);
        let names: Vec<String> = r.matched.iter().map(|&i| inst.pattern_string(i)).collect();
        assert_eq!(names, ["abb", "bbc", "aca"]);
    }

    #[test]
    fn scores_example_two() {
        let inst = example2();
        let r = score_arrangement(&inst, &inst.arrangement_from_str("abca").unwrap()).unwrap();
        assert_eq!(r.score, 3);
        let names: Vec<String> = r.matched.iter().map(|&i| inst.pattern_string(i)).collect();
        assert_eq!(names, ["ab", "bc", "ca"]);
    }

    #[test]
    fn scores_tight_certificate() {
        let inst = Instance::parse(
            "abcqzwx",
            "abcqqqzzzwwwxxx",
            &[
                "abc", "qa", "az", "wqa", "qaz", "azx", "qb", "bz", "wqb", "qbz", "bzx", "qc", "cz", "wqc",
                "qcz", "czx",
            ],
            Kind::Substring,
        )
        .unwrap();
        let r = score_arrangement(&inst, &inst.arrangement_from_str("wqazxwqbzxwqczx").unwrap()).unwrap();
        assert_eq!(r.score, 15);
        assert!(!r.matched.contains(&0));
    }

    #[test]
    fn mismatch_is_rejected() {
        let inst = example1();
        let arr = inst.arrangement_from_str("aaabbb").unwrap();
        assert!(matches!(score_arrangement(&inst, &arr), Err(Error::ArrangementMismatch)));
    }

    #[test]
    fn validation() {
        assert!(example1().validate().is_empty());
        let inf = Instance::parse("ab", "ab", &["aa"], Kind::Substring).unwrap();
        assert_eq!(inf.validate(), vec![Violation::InfeasiblePattern { index: 0 }]);
        let dup = Instance::parse("ab", "ab", &["ab", "ab"], Kind::Substring).unwrap();
        assert_eq!(dup.validate(), vec![Violation::DuplicatePattern { first: 0, second: 1 }]);
        let mut fixed = dup.clone();
        fixed.dedup_patterns();
        assert!(fixed.validate().is_empty());
    }

    #[test]
    fn arrangement_membership() {
        let t = MultisetText::from_counts(vec![2, 2, 2]);
        assert!(is_arrangement_of(&Arrangement::new(syms("acabbc")), &t));
        assert!(is_arrangement_of(&Arrangement::default(), &MultisetText::from_counts(vec![])));
        assert!(!is_arrangement_of(&Arrangement::new(syms("aab")), &MultisetText::from_counts(vec![1, 2])));
    }

    #[test]
    fn empty_pattern_rejected() {
        assert!(matches!(Pattern::new(vec![]), Err(Error::EmptyPattern)));
        assert!(matches!(
            Instance::parse("ab", "ab", &[""], Kind::Substring),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn alphabet_is_bijective() {
        assert!(matches!(Alphabet::new("aba".chars()), Err(Error::DuplicateLabel('a'))));
        let a = Alphabet::default_labels(3).unwrap();
        assert_eq!(a.decode(&a.encode("cab").unwrap()), "cab");
        assert!(matches!(a.encode("d"), Err(Error::UnknownSymbol('d'))));
    }

    #[test]
    fn concatenation_scores_at_least_one_when_single_pattern_fits() {
        let inst = Instance::parse("abc", "abcabc", &["cbacab"], Kind::Substring).unwrap();
        let (arr, taken) = concat_with_leftovers(&inst, &[0]);
        assert_eq!(taken, [0]);
        assert_eq!(score_arrangement(&inst, &arr).unwrap().score, 1);
    }
}
