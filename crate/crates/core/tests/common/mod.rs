#![allow(dead_code)]

use rcs_core::{Arrangement, Instance, Symbol};

/// Every distinct arrangement of a count vector, in lexicographic order.
pub fn all_arrangements(counts: &[u32]) -> Vec<Vec<Symbol>> {
    fn rec(counts: &mut [u32], cur: &mut Vec<Symbol>, left: usize, out: &mut Vec<Vec<Symbol>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(Symbol(i as u16));
                rec(counts, cur, left - 1, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let total = counts.iter().map(|&c| c as usize).sum();
    rec(&mut counts.to_vec(), &mut Vec::new(), total, &mut out);
    out
}

/// Optimum by scoring every distinct arrangement with the naive scorer.
pub fn brute_optimum(inst: &Instance) -> usize {
    all_arrangements(inst.text.counts())
        .into_iter()
        .map(|a| rcs_core::model::score_naive(inst, &Arrangement::new(a)).unwrap().score)
        .max()
        .unwrap_or(0)
}

pub fn multinomial(counts: &[u32]) -> u64 {
    let mut num = 1u64;
    let mut k = 0u64;
    for &c in counts {
        for j in 1..=c as u64 {
            k += 1;
            num = num * k / j;
        }
    }
    num
}
