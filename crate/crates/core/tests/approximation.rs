mod common;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rcs_core::bench::{random_complete_01, random_digraph, random_instance, RandomSpec};
use rcs_core::model::count_vector;
use rcs_core::oracles::{max_acyclic_subgraph_exact, max_atsp_exact};
use rcs_core::superstring::{break_cycle, greedy_maximal_concat, select_maximal_subset, OrderStrategy};
use rcs_core::supersequence::{
    estimate_expected_score, mas_order, partition_pq, plan_rcsseq2, solve_rcsseq2, MasSubroutine,
};
use rcs_core::{contains_subsequence, solve_exact, Instance, Kind, SearchConfig};

fn strategies(seed: u64) -> [OrderStrategy; 4] {
    [
        OrderStrategy::InputOrder,
        OrderStrategy::LongestFirst,
        OrderStrategy::ShortestFirst,
        OrderStrategy::Random(seed),
    ]
}

#[test]
fn greedy_subset_fits_and_is_maximal() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..300 {
        let spec = RandomSpec {
            sigma: rng.gen_range(2..=5),
            m: rng.gen_range(4..=20),
            n: rng.gen_range(1..=10),
            min_len: 1,
            max_len: 4,
            kind: Kind::Substring,
            set_text: false,
        };
        let inst = random_instance(&spec, rng.gen()).unwrap();
        let sigma = inst.sigma();
        for strategy in strategies(rng.gen()) {
            let chosen = select_maximal_subset(&inst, strategy);
            let mut left: Vec<i64> = inst.text.counts().iter().map(|&c| c as i64).collect();
            for &i in &chosen {
                for (l, c) in left.iter_mut().zip(inst.patterns[i].counts(sigma)) {
                    *l -= c as i64;
                }
            }
            assert!(left.iter().all(|&l| l >= 0), "budget exceeded");
            for i in (0..inst.patterns.len()).filter(|i| !chosen.contains(i)) {
                let demand = inst.patterns[i].counts(sigma);
                assert!(demand.iter().zip(&left).any(|(&d, &l)| d as i64 > l), "pattern {i} still fits");
            }
            let r = greedy_maximal_concat(&inst, strategy).unwrap();
            assert!(r.score >= chosen.len());
            assert_eq!(count_vector(&r.arrangement.symbols, sigma), inst.text.counts());
        }
    }
}

#[test]
fn cycle_break_keeps_tour_weight() {
    for seed in 0..200 {
        let n = 2 + (seed as usize % 7);
        let g = random_complete_01(n, 0.4, seed).unwrap();
        let w = g.weight_matrix().unwrap();
        let tour = max_atsp_exact(&g).unwrap();
        let has_zero = (0..n).any(|i| w[tour.order[i]][tour.order[(i + 1) % n]] == 0);
        let path = break_cycle(&tour.order, |u, v| w[u][v]);
        assert_eq!(path.iter().copied().sorted().collect::<Vec<_>>(), (0..n).collect::<Vec<_>>());
        let path_weight: i64 = path.windows(2).map(|e| w[e[0]][e[1]]).sum();
        if has_zero {
            assert_eq!(path_weight, tour.weight);
        } else {
            assert_eq!(path_weight, tour.weight - w[tour.order[n - 1]][tour.order[0]]);
        }
    }
}

fn length_two_subsequence(rng: &mut ChaCha8Rng) -> Instance {
    let spec = RandomSpec {
        sigma: rng.gen_range(2..=5),
        m: rng.gen_range(2..=8),
        n: rng.gen_range(1..=8),
        min_len: 2,
        max_len: 2,
        kind: Kind::Subsequence,
        set_text: rng.gen_bool(0.3),
    };
    random_instance(&spec, rng.gen()).unwrap()
}

fn mas_routines(n: usize, seed: u64) -> Vec<MasSubroutine> {
    let mut v = vec![
        MasSubroutine::OrderVsReverse { seed },
        MasSubroutine::LocalSearch { seed, passes: 2 * n },
    ];
    if n <= 9 {
        v.push(MasSubroutine::ExactBrute);
    }
    v
}

#[test]
fn every_mas_routine_keeps_half_the_arcs() {
    for seed in 0..300u64 {
        let n = 1 + (seed as usize % 12);
        let g = random_digraph(n, 0.35, seed).unwrap();
        for sub in mas_routines(n, seed) {
            let m = mas_order(&g, sub).unwrap();
            assert_eq!(m.kept, g.forward_arcs(&m.order));
            assert!(2 * m.kept.len() >= g.num_arcs(), "{sub:?} kept {} of {}", m.kept.len(), g.num_arcs());
        }
        if n <= 9 {
            let best = max_acyclic_subgraph_exact(&g).unwrap().kept.len();
            assert_eq!(mas_order(&g, MasSubroutine::ExactBrute).unwrap().kept.len(), best);
        }
    }
}

#[test]
fn rcsseq2_preserves_counts_and_layout() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let inst = length_two_subsequence(&mut rng);
        let plan = plan_rcsseq2(&inst, MasSubroutine::ExactBrute).unwrap();
        let part = partition_pq(&inst.text);
        let syms = &plan.arrangement.symbols;
        assert_eq!(count_vector(syms, inst.sigma()), inst.text.counts());
        let (p, pp) = (part.p.len(), part.p_prime.len());
        assert_eq!(&syms[..p], &part.p[..]);
        assert_eq!(&syms[p + pp..2 * p + pp], &part.p[..]);
        let mut mid = syms[p..p + pp].to_vec();
        mid.sort();
        assert_eq!(mid, part.p_prime);
    }
}

#[test]
fn rcsseq2_score_decomposes_and_never_beats_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..300 {
        let inst = length_two_subsequence(&mut rng);
        let part = partition_pq(&inst.text);
        let touching = inst
            .patterns
            .iter()
            .filter(|p| p.symbols().iter().any(|&s| part.in_p(s)))
            .count();
        let plan = plan_rcsseq2(&inst, MasSubroutine::ExactBrute).unwrap();
        let mas = max_acyclic_subgraph_exact(&plan.graph.graph).unwrap().kept.len();
        let exact_score = solve_rcsseq2(&inst, MasSubroutine::ExactBrute).unwrap().score;
        assert_eq!(exact_score, touching + mas);
        let opt = solve_exact(&inst, &SearchConfig::default()).unwrap().report.score;
        for sub in mas_routines(part.p_prime.len(), rng.gen()) {
            assert!(solve_rcsseq2(&inst, sub).unwrap().score <= opt);
        }
        assert!(exact_score <= opt);
    }
}

#[test]
fn random_arrangement_contains_each_pattern_often_enough() {
    let inst = Instance::parse("abcdef", "aabbccddeeff", &["abc", "fed", "ace", "bb", "fa"], Kind::Subsequence).unwrap();
    let samples = 10_000u64;
    for (i, p) in inst.patterns.iter().enumerate() {
        let hits = (0..samples)
            .filter(|&k| {
                let arr = rcs_core::supersequence::random_arrangement(&inst.text, rcs_core::seed::derive_seed(7, k));
                contains_subsequence(&arr.symbols, p.symbols())
            })
            .count() as f64;
        let freq = hits / samples as f64;
        let target = 1.0 / (1..=p.len()).product::<usize>() as f64;
        let se = (target * (1.0 - target) / samples as f64).sqrt();
        assert!(freq >= target - 3.0 * se, "pattern {i}: {freq} < {target} - 3·{se}");
    }
    let est = estimate_expected_score(&inst, 2000, 3).unwrap();
    assert_eq!(est, estimate_expected_score(&inst, 2000, 3).unwrap());
    assert!(est.std_error > 0.0);
}
