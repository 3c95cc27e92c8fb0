//! Property tests over random automata.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cayleyseq_core::classify::{classify, similarity_bijection};
use cayleyseq_core::fraction::{l_multivariate, l_univariate, series_counts};
use cayleyseq_core::frequency::{
    analyze_denominator, frequency_report, Verdict, DEFAULT_TOLERANCE,
};
use cayleyseq_core::group::{cayley_automaton, generate_group};
use cayleyseq_core::kernel::{first_difference, monoid_closure, relation_language};
use cayleyseq_core::{build_kernel_graph, empirical_counts, Automaton, Permutation, VertexOrder};

fn automaton_strategy(
    bases: std::ops::RangeInclusive<u32>,
    max_states: usize,
) -> impl Strategy<Value = Automaton> {
    (bases, 1..=max_states, 1..=3usize)
        .prop_flat_map(|(p, n, k)| {
            (
                Just(p),
                proptest::collection::vec(0..k, n),
                proptest::collection::vec(proptest::collection::vec(0..n, p as usize), n),
                0..n,
                Just(k),
            )
        })
        .prop_map(|(p, labels, transitions, initial, k)| {
            let names = (0..labels.len()).map(|q| format!("q{q}")).collect();
            let alphabet = (0..k).map(|l| format!("s{l}")).collect();
            Automaton::new(p, names, alphabet, labels, transitions, initial)
                .expect("valid by construction")
        })
}

fn permutation_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).expect("shuffle"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subsequence_states_produce_subsequences(aut in automaton_strategy(2..=3, 6), i in 0u32..4, j_seed: u64) {
        let p = u64::from(aut.base());
        let pi = p.pow(i);
        let j = j_seed % pi;
        let q = aut.subsequence_state(i, j).unwrap();
        for n in 1..=1000u64 {
            prop_assert_eq!(aut.eval(pi * n + j).unwrap(), aut.eval_from(q, n).unwrap());
        }
    }

    #[test]
    fn kernel_is_a_congruence(aut in automaton_strategy(2..=3, 8)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let reachable = aut.reachable_states();
        prop_assert!(graph.num_vertices() <= reachable.len());
        for &q in &reachable {
            let u = graph.class_of(q).unwrap();
            for d in 0..aut.base() {
                prop_assert_eq!(graph.class_of(aut.next(q, d)), Some(graph.next(u, d)));
            }
            for s in 1..aut.base() {
                prop_assert_eq!(graph.first_term(u, s), aut.label(aut.next(q, s)));
            }
        }
        prop_assert_eq!(graph.reachable_from(graph.base_vertex()).len(), graph.num_vertices());
    }

    #[test]
    fn distinct_classes_have_witnesses(aut in automaton_strategy(2..=3, 5)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let p = u64::from(aut.base());
        let q2 = (aut.num_states() * aut.num_states()) as u32;
        let bound = p.checked_pow(q2).unwrap_or(u64::MAX);
        for u in 0..graph.num_vertices() {
            for v in u + 1..graph.num_vertices() {
                let a = aut.with_initial(graph.members(u)[0]).unwrap();
                let b = aut.with_initial(graph.members(v)[0]).unwrap();
                let n = first_difference(&a, &b);
                prop_assert!(n.is_some());
                let n = n.unwrap();
                prop_assert!(n <= bound);
                prop_assert_ne!(a.eval(n).unwrap(), b.eval(n).unwrap());
            }
        }
    }

    #[test]
    fn classification_chain(aut in automaton_strategy(2..=3, 6)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let cls = classify(&graph).unwrap();
        prop_assert_eq!(cls.r1, cls.is_group);
        prop_assert!(!cls.self_similar || cls.homogeneous);
        prop_assert!(!cls.homogeneous || cls.r1);
        if aut.base() == 2 {
            prop_assert_eq!(cls.homogeneous, cls.is_group && cls.is_cayley);
            prop_assert!(!cls.is_group || cls.reproduces);
        }
    }

    #[test]
    fn similarity_at_base_is_identity(aut in automaton_strategy(2..=3, 6)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let map = similarity_bijection(&graph, graph.base_vertex()).unwrap().unwrap();
        for (l, image) in map.iter().enumerate() {
            if let Some(m) = image {
                prop_assert_eq!(*m, l);
            }
        }
    }

    #[test]
    fn monoid_is_closed(aut in automaton_strategy(2..=3, 5)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let monoid = monoid_closure(&graph, 100_000).unwrap();
        let elems = monoid.elements();
        for g in elems {
            for h in elems {
                let gh: Vec<usize> = g.iter().map(|&v| h[v]).collect();
                prop_assert!(elems.contains(&gh));
            }
        }
        let bijective = (0..aut.base()).all(|d| graph.is_bijective(d));
        prop_assert_eq!(monoid.is_group(), bijective);
    }

    #[test]
    fn relation_language_accepts_returning_words(
        aut in automaton_strategy(2..=3, 6),
        words in proptest::collection::vec(proptest::collection::vec(0u32..3, 0..8), 20),
    ) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let p = aut.base();
        for u in 0..graph.num_vertices() {
            let lang = relation_language(&graph, u).unwrap();
            for w in &words {
                let w: Vec<u32> = w.iter().map(|&d| d % p).collect();
                let returns = !w.is_empty() && graph.run(u, &w) == u;
                prop_assert_eq!(lang.accepts(&w), returns);
            }
        }
    }

    #[test]
    fn series_counts_match_enumeration(aut in automaton_strategy(2..=3, 4)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let l = l_univariate(&graph, graph.base_vertex()).unwrap();
        let p = u64::from(aut.base());
        let n_max = if p == 2 { 8 } else { 5 };
        let series = series_counts(&l, n_max).unwrap();
        let mut counts = vec![0u64; aut.alphabet().len()];
        let mut m = 1;
        for n in 1..=n_max as u32 {
            while m < p.pow(n) {
                counts[aut.eval(m).unwrap()] += 1;
                m += 1;
            }
            for (letter, &c) in counts.iter().enumerate() {
                prop_assert_eq!(&series.partial_sums[letter][n as usize - 1], &BigRational::from_integer(c.into()));
            }
        }
    }

    #[test]
    fn multivariate_specializes(aut in automaton_strategy(2..=2, 4)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        for u in 0..graph.num_vertices() {
            let multi = l_multivariate(&graph, u).unwrap();
            prop_assert_eq!(multi.specialize().unwrap(), l_univariate(&graph, u).unwrap());
        }
    }

    #[test]
    fn denominator_roots(aut in automaton_strategy(2..=3, 5)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let l = l_univariate(&graph, graph.base_vertex()).unwrap();
        let d = l.denominator();
        let analysis = analyze_denominator(d, aut.base(), DEFAULT_TOLERANCE).unwrap();
        let total: usize = analysis.roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, d.degree().unwrap_or(0));
        for root in &analysis.roots {
            prop_assert_eq!(root.residue.is_some(), root.multiplicity == 1);
            let Some(res) = &root.residue else { continue };
            let Some(alpha) = &root.exact else { continue };
            // (x - α)/D near α, approached from both sides
            let a = num_traits::ToPrimitive::to_f64(alpha).unwrap();
            let want = res.to_complex().re;
            for h in [1e-7, -1e-7] {
                let z = num_complex::Complex64::new(a + h, 0.0);
                let approx = h / d.eval_complex(z).re;
                prop_assert!((approx - want).abs() <= 1e-5 * want.abs().max(1.0), "{approx} vs {want}");
            }
        }
    }

    #[test]
    fn limits_are_a_distribution(aut in automaton_strategy(2..=3, 5)) {
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let l = l_univariate(&graph, graph.base_vertex()).unwrap();
        let Ok(report) = frequency_report(&l, aut.base()) else { return Ok(()) };
        if !report.analysis.hypotheses_hold() || !report.analysis.only_root_one_over_p {
            return Ok(());
        }
        let mut sum = BigRational::zero();
        for v in &report.verdicts {
            let Verdict::Limit(x) = v else { panic!("expected a limit, got {v:?}") };
            prop_assert!(*x >= BigRational::zero());
            sum += x;
        }
        prop_assert_eq!(sum, BigRational::one());
    }

    #[test]
    fn empirical_totals(aut in automaton_strategy(2..=3, 6), n in 1u32..8) {
        let counts = empirical_counts(&aut, n).unwrap();
        let p = u64::from(aut.base()).pow(n);
        prop_assert_eq!(counts.below.iter().sum::<u64>(), p - 1);
        prop_assert_eq!(counts.through.iter().sum::<u64>(), p);
    }

    #[test]
    fn group_action_convention(gens in proptest::collection::vec(permutation_strategy(5), 1..3)) {
        let group = generate_group(&gens, 200).unwrap();
        for i in 0..group.order() {
            for j in 0..group.order() {
                let gh = group.element(group.mul(i, j));
                for u in 0..5 {
                    prop_assert_eq!(gh.apply(u), group.element(j).apply(group.element(i).apply(u)));
                }
            }
        }
    }

    #[test]
    fn cayley_automata_are_schreier(gens in proptest::collection::vec(permutation_strategy(4), 2..4)) {
        let group = generate_group(&gens, 100).unwrap();
        let aut = cayley_automaton(&group, &[Permutation::identity(4)]).unwrap();
        prop_assert!(aut.is_schreier());
        let graph = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        let cls = classify(&graph).unwrap();
        prop_assert!(cls.is_group && cls.is_cayley && cls.self_similar);
    }
}
