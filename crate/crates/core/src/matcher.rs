//! Multi-pattern substring automaton over dense symbol ids.
//!
//! A trie with failure links, completed into a full transition table so that
//! every step is a single lookup. Besides match reporting it records, for
//! every state and pattern, how long a prefix of that pattern the current
//! text already ends with; the exact solver uses this for its bound.

use std::collections::VecDeque;

use crate::model::{Pattern, Symbol};

const ROOT: u32 = 0;

#[derive(Clone, Debug)]
pub struct AhoCorasick {
    sigma: usize,
    n_patterns: usize,
    delta: Vec<u32>,
    depth: Vec<u32>,
    /// Patterns ending at each state, including those reached via failure links.
    outputs: Vec<Vec<u32>>,
    /// `overlap[state * n_patterns + p]`: longest suffix of the state string
    /// that is a prefix of pattern `p`.
    overlap: Vec<u32>,
}

impl AhoCorasick {
    pub fn new(patterns: &[Pattern], sigma: usize) -> Self {
        let sigma = patterns
            .iter()
            .flat_map(|p| p.symbols())
            .map(|s| s.index() + 1)
            .max()
            .unwrap_or(0)
            .max(sigma)
            .max(1);
        let n = patterns.len();
        const NONE: u32 = u32::MAX;

        let mut trie: Vec<u32> = vec![NONE; sigma];
        let mut depth = vec![0u32];
        let mut outputs: Vec<Vec<u32>> = vec![Vec::new()];
        // (state, pattern) pairs where state lies on the pattern's trie path.
        let mut on_path: Vec<Vec<u32>> = vec![(0..n as u32).collect()];

        for (pi, p) in patterns.iter().enumerate() {
            let mut cur = ROOT as usize;
            for &s in p.symbols() {
                let slot = cur * sigma + s.index();
                if trie[slot] == NONE {
                    let id = depth.len() as u32;
                    trie[slot] = id;
                    trie.extend(std::iter::repeat_n(NONE, sigma));
                    depth.push(depth[cur] + 1);
                    outputs.push(Vec::new());
                    on_path.push(Vec::new());
                }
                cur = trie[slot] as usize;
                on_path[cur].push(pi as u32);
            }
            outputs[cur].push(pi as u32);
        }

        let states = depth.len();
        let mut fail = vec![ROOT; states];
        let mut delta = trie;
        let mut overlap = vec![0u32; states * n];
        let mut queue = VecDeque::new();
        for c in 0..sigma {
            let nxt = delta[c];
            if nxt == NONE {
                delta[c] = ROOT;
            } else {
                fail[nxt as usize] = ROOT;
                queue.push_back(nxt);
            }
        }
        while let Some(s) = queue.pop_front() {
            let s = s as usize;
            let f = fail[s] as usize;
            let inherited = outputs[f].clone();
            outputs[s].extend(inherited);
            outputs[s].sort_unstable();
            outputs[s].dedup();
            for p in 0..n {
                overlap[s * n + p] = overlap[f * n + p];
            }
            for &p in &on_path[s] {
                overlap[s * n + p as usize] = depth[s];
            }
            for c in 0..sigma {
                let slot = s * sigma + c;
                let nxt = delta[slot];
                if nxt == NONE {
                    delta[slot] = delta[f * sigma + c];
                } else {
                    fail[nxt as usize] = delta[f * sigma + c];
                    queue.push_back(nxt);
                }
            }
        }

        AhoCorasick { sigma, n_patterns: n, delta, depth, outputs, overlap }
    }

    pub fn start(&self) -> u32 {
        ROOT
    }

    #[inline]
    pub fn next(&self, state: u32, s: Symbol) -> u32 {
        self.delta[state as usize * self.sigma + s.index()]
    }

    /// Pattern indices whose occurrence ends at this state.
    #[inline]
    pub fn outputs(&self, state: u32) -> &[u32] {
        &self.outputs[state as usize]
    }

    pub fn state_depth(&self, state: u32) -> u32 {
        self.depth[state as usize]
    }

    /// Number of symbols of `pattern` already matched by the text's tail.
    #[inline]
    pub fn overlap(&self, state: u32, pattern: usize) -> usize {
        self.overlap[state as usize * self.n_patterns + pattern] as usize
    }

    pub fn num_states(&self) -> usize {
        self.depth.len()
    }

    /// Which patterns occur in `text`.
    pub fn find_all(&self, text: &[Symbol]) -> Vec<bool> {
        let mut hit = vec![false; self.n_patterns];
        let mut state = self.start();
        for &s in text {
            state = self.next(state, s);
            for &p in self.outputs(state) {
                hit[p as usize] = true;
            }
        }
        hit
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::contains_substring;

    fn pats(ps: &[&str]) -> Vec<Pattern> {
        ps.iter()
            .map(|p| Pattern::new(p.bytes().map(|b| Symbol((b - b'a') as u16)).collect()).unwrap())
            .collect()
    }

    fn syms(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| Symbol((b - b'a') as u16)).collect()
    }

    #[test]
    fn finds_overlapping_patterns() {
        let p = pats(&["abb", "bbc", "cba", "aca"]);
        let ac = AhoCorasick::new(&p, 3);
        assert_eq!(ac.find_all(&syms("acabbc")), vec![true, true, false, true]);
    }

    #[test]
    fn nested_patterns_are_reported() {
        let p = pats(&["abc", "b", "bc"]);
        let ac = AhoCorasick::new(&p, 3);
        assert_eq!(ac.find_all(&syms("aabca")), vec![true, true, true]);
    }

    #[test]
    fn overlap_tracks_longest_partial_match() {
        let p = pats(&["abb", "bbc", "cba"]);
        let ac = AhoCorasick::new(&p, 3);
        let mut st = ac.start();
        for s in syms("acabb") {
            st = ac.next(st, s);
        }
        assert_eq!(ac.overlap(st, 0), 3);
        assert_eq!(ac.overlap(st, 1), 2);
        assert_eq!(ac.overlap(st, 2), 0);
    }

    #[test]
    fn agrees_with_naive_scan_on_small_words() {
        let p = pats(&["a", "ab", "ba", "aab", "bab", "abba"]);
        let ac = AhoCorasick::new(&p, 2);
        for len in 0..=7u32 {
            for bits in 0..(1u32 << len) {
                let text: Vec<Symbol> = (0..len).map(|i| Symbol(((bits >> i) & 1) as u16)).collect();
                let got = ac.find_all(&text);
                for (i, q) in p.iter().enumerate() {
                    assert_eq!(got[i], contains_substring(&text, q.symbols()));
                }
            }
        }
    }
}
