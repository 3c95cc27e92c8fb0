//! End-to-end acceptance checks. Runs without the libtest harness so that
//! the one-line verdict of every criterion is always printed; the process
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use cayleyseq_core::classify::{classify, derived_labeling, kernel_group};
use cayleyseq_core::fraction::{
    l_multivariate_all, series_counts, system_data, DEFAULT_SIZE_BOUND,
};
use cayleyseq_core::frequency::{analyze_denominator, Number, Verdict, DEFAULT_TOLERANCE};
use cayleyseq_core::group::{cayley_automaton, generate_group};
use cayleyseq_core::kernel::equivalent;
use cayleyseq_core::poly::{rat, MPoly, Monomial, UPoly};
use cayleyseq_core::{
    build_kernel_graph, corpus, digits_lsb, empirical_counts, frequency_report, l_univariate,
    Automaton, CorpusName, KernelGraph, MultivariateFraction, Permutation, UnivariateFraction,
    VertexOrder,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn graph_of(aut: &Automaton) -> Result<KernelGraph, String> {
    build_kernel_graph(aut, VertexOrder::Bfs).map_err(|e| e.to_string())
}

fn base_fraction(graph: &KernelGraph) -> Result<UnivariateFraction, String> {
    l_univariate(graph, graph.base_vertex()).map_err(|e| e.to_string())
}

fn letter(aut: &Automaton, name: &str) -> Result<usize, String> {
    aut.letter_index(name)
        .ok_or_else(|| format!("no letter {name}"))
}

fn poly(c: &[i64]) -> UPoly {
    UPoly::from_ints(c)
}

// ---------------------------------------------------------------- 1

fn thue_morse_fractions() -> Outcome {
    let start = Instant::now();
    let aut = corpus(CorpusName::ThueMorse);
    let graph = graph_of(&aut)?;
    let letters = aut.alphabet().to_vec();

    let univ = base_fraction(&graph)?;
    let expected = UnivariateFraction::from_parts(
        letters.clone(),
        vec![poly(&[0, 0, -1]), poly(&[0, -1, 1])],
        poly(&[-1, 2]),
    )
    .map_err(|e| e.to_string())?;
    ensure(univ.equals_up_to_scalar(&expected), || {
        format!("L(a,x) = {univ}")
    })?;

    let multi =
        cayleyseq_core::l_multivariate(&graph, graph.base_vertex()).map_err(|e| e.to_string())?;
    let (x, y) = (MPoly::var(0), MPoly::var(1));
    let one = MPoly::one();
    let num_a = (&x * &y).scale(&rat(-1, 1));
    let num_b = &(&x * &x) - &x;
    let den = &(&(&(&y * &y) - &(&x * &x)) + &x.scale(&rat(2, 1))) - &one;
    let expected = MultivariateFraction::from_parts(2, letters, vec![num_a, num_b], den)
        .map_err(|e| e.to_string())?;

    // Independent oracle: the series Σ a_n x^{#0s(n)} y^{#1s(n)} truncated at
    // ten digits, compared with D·S = N up to that total degree.
    let ours_ok = matches_series(&aut, &multi, 10)?;
    let target_ok = matches_series(&aut, &expected, 10)?;
    if !multi.equals_up_to_scalar(&expected) {
        let times_x_over_y = MultivariateFraction::from_parts(
            2,
            aut.alphabet().to_vec(),
            multi.numerators().iter().map(|p| p * &x).collect(),
            multi.denominator() * &y,
        )
        .is_ok_and(|f| f.equals_up_to_scalar(&expected));
        return Err(format!(
            "L(a,x,y) = {multi} matches the digit-count series: {ours_ok}; \
             target matches it: {target_ok}; target = (x/y)·L(a,x,y): {times_x_over_y}"
        ));
    }
    ensure(ours_ok, || {
        "L(a,x,y) disagrees with the digit-count series".into()
    })?;

    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{elapsed:.2?}"))
}

fn truncate(p: &MPoly, degree: u32) -> MPoly {
    p.terms()
        .filter(|(m, _)| m.degree() <= degree)
        .fold(MPoly::zero(), |acc, (m, c)| {
            &acc + &MPoly::term(c.clone(), m.clone())
        })
}

fn matches_series(aut: &Automaton, f: &MultivariateFraction, digits: u32) -> Result<bool, String> {
    let p = aut.base();
    let mut series = vec![MPoly::zero(); aut.alphabet().len()];
    for n in 1..u64::from(p).pow(digits) {
        let mut exps = vec![0u32; p as usize];
        for d in digits_lsb(n, p).map_err(|e| e.to_string())? {
            exps[d as usize] += 1;
        }
        let l = aut.eval(n).map_err(|e| e.to_string())?;
        series[l] = &series[l] + &MPoly::term(rat(1, 1), Monomial::new(exps));
    }
    Ok(series
        .iter()
        .zip(f.numerators())
        .all(|(s, num)| truncate(&(f.denominator() * s), digits) == truncate(num, digits)))
}

// ---------------------------------------------------------------- 2

fn apery_mod7() -> Outcome {
    let start = Instant::now();
    let aut = corpus(CorpusName::AperyMod7);
    let graph = graph_of(&aut)?;
    ensure(graph.num_vertices() == 6, || {
        format!("kernel size {}", graph.num_vertices())
    })?;
    let group = kernel_group(&graph, 1000)
        .map_err(|e| e.to_string())?
        .ok_or("G(a) is not a group")?;
    ensure(group.order() == 6 && group.is_cyclic(), || {
        format!("|G(a)| = {}", group.order())
    })?;
    let cls = classify(&graph).map_err(|e| e.to_string())?;
    ensure(cls.self_similar, || "not self-similar".into())?;

    let l = base_fraction(&graph)?;
    let printed_d = poly(&[1, -12, 24, 128, -300, -336, -441]);
    let (nums, d) = l.normalized_at_origin().map_err(|e| e.to_string())?;
    ensure(d == printed_d, || {
        format!("denominator {}", l.denominator())
    })?;
    let factored = [
        poly(&[-1]),
        poly(&[1, 3]),
        poly(&[-1, 7]),
        poly(&[1, 1, 1]),
        poly(&[1, -9, 21]),
    ]
    .iter()
    .fold(UPoly::one(), |acc, f| &acc * f);
    ensure(factored == printed_d, || {
        format!("product of factors is {factored}")
    })?;

    let printed_p = [
        poly(&[0, 1, 2, -80, 136, 380, 497]),
        poly(&[0, 0, 9, -63, 70, 96, -112]),
        poly(&[0, 3, -27, 42, 102, -148, 28]),
        poly(&[0, 0, 4, -28, 105, -179, 98]),
        poly(&[0, 2, -18, 28, 68, 123, -203]),
        poly(&[0, 0, 0, 35, -175, 70, 70]),
    ];
    let seventh = rat(1, 7);
    for i in 1..=6 {
        let idx = letter(&aut, &format!("d{i}"))?;
        let value = nums[idx].eval(&seventh);
        ensure(value == rat(570, 16807), || format!("P_{i}(1/7) = {value}"))?;
        ensure(nums[idx] == printed_p[i - 1], || {
            format!("P_{i} = {}", nums[idx])
        })?;
    }

    let report = frequency_report(&l, 7).map_err(|e| e.to_string())?;
    for (name, v) in report.letters.iter().zip(&report.verdicts) {
        ensure(*v == Verdict::Limit(rat(1, 6)), || format!("{name}: {v:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{elapsed:.2?}"))
}

// ---------------------------------------------------------------- 3

fn quaternion() -> Outcome {
    let start = Instant::now();
    let aut = corpus(CorpusName::QuaternionFig3);
    let graph = graph_of(&aut)?;
    ensure(graph.num_vertices() == 8, || {
        format!("kernel size {}", graph.num_vertices())
    })?;
    let group = kernel_group(&graph, 1000)
        .map_err(|e| e.to_string())?
        .ok_or("G(a) is not a group")?;
    ensure(group.order() == 8, || format!("|G(a)| = {}", group.order()))?;
    ensure(!group.is_abelian(), || "G(a) is abelian".into())?;
    ensure(group.count_of_order(2) == 1, || {
        format!("{} elements of order 2", group.count_of_order(2))
    })?;

    let l = base_fraction(&graph)?;
    let printed_d = poly(&[-1, 0, 2, 0, 8]);
    ensure(
        l.denominator().scale(printed_d.lead().unwrap())
            == printed_d.scale(l.denominator().lead().unwrap()),
        || format!("denominator {}", l.denominator()),
    )?;

    let analysis =
        analyze_denominator(&printed_d, 2, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    for (alpha, res) in [(rat(1, 2), rat(1, 6)), (rat(-1, 2), rat(-1, 6))] {
        let root = analysis
            .roots
            .iter()
            .find(|r| r.exact.as_ref() == Some(&alpha))
            .ok_or_else(|| format!("{alpha} is not a root"))?;
        ensure(root.residue == Some(Number::Exact(res.clone())), || {
            format!("Res(1/D, {alpha}) = {:?}", root.residue)
        })?;
    }

    let report = frequency_report(&l, 2).map_err(|e| e.to_string())?;
    let (small, large) = (rat(1, 12), rat(1, 6));
    for i in 1..=8 {
        let idx = letter(&aut, &format!("d{i}"))?;
        let (even, odd) = if [1, 4, 5, 8].contains(&i) {
            (&small, &large)
        } else {
            (&large, &small)
        };
        match &report.verdicts[idx] {
            Verdict::EvenOdd {
                even: e, odd: o, ..
            } if e == even && o == odd => {}
            v => return Err(format!("d{i}: {v:?}")),
        }
    }

    let printed_p = vec![
        poly(&[0, -1, 0, 2, 0, 2]),
        poly(&[0, 0, -1, 0, 1]),
        poly(&[0, 0, 0, 0, -3]),
        poly(&[0, 0, 0, -2, 0, 2]),
        poly(&[0, 0, 0, -1, 0, -2]),
        poly(&[0, 0, 0, 0, -3]),
        poly(&[0, 0, -1, 0, 1]),
        poly(&[0, 0, 0, -1, 0, -2]),
    ];
    let mut ordered = vec![UPoly::zero(); 8];
    for (i, p) in printed_p.into_iter().enumerate() {
        ordered[letter(&aut, &format!("d{}", i + 1))?] = p;
    }
    let printed = UnivariateFraction::from_parts(aut.alphabet().to_vec(), ordered, printed_d)
        .map_err(|e| e.to_string())?;
    ensure(l.equals_up_to_scalar(&printed), || format!("L(a,x) = {l}"))?;

    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{elapsed:.2?}"))
}

// ---------------------------------------------------------------- 4

fn apery_numbers(n_max: usize) -> Vec<BigUint> {
    // binomial rows built incrementally: row[k] = C(n, k)
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut sum = BigUint::zero();
        let mut c_nk = BigUint::one();
        let mut c_npk = BigUint::one();
        for k in 0..=n {
            if k > 0 {
                c_nk = c_nk * (n - k + 1) / k;
                c_npk = c_npk * (n + k) / k;
            }
            let t = &c_nk * &c_npk;
            sum += &t * &t;
        }
        out.push(sum);
    }
    out
}

fn prefix_oracles() -> Outcome {
    let apery = corpus(CorpusName::AperyMod7);
    let seven = BigUint::from(7u32);
    for (n, a) in apery_numbers(200).iter().enumerate().skip(1) {
        let residue = a % &seven;
        let got = &apery.alphabet()[apery.eval(n as u64).map_err(|e| e.to_string())?];
        ensure(*got == format!("d{residue}"), || {
            format!("A({n}) mod 7 = {residue}, automaton gives {got}")
        })?;
    }
    let tm = corpus(CorpusName::ThueMorse);
    for n in 1..=100_000u64 {
        let want = if n.count_ones() % 2 == 1 { "B" } else { "A" };
        let got = &tm.alphabet()[tm.eval(n).map_err(|e| e.to_string())?];
        ensure(got == want, || format!("Thue-Morse term {n}: {got}"))?;
    }
    Ok("Apéry n <= 200, Thue-Morse n <= 100000".into())
}

// ---------------------------------------------------------------- 5

fn random_automaton(rng: &mut StdRng) -> Automaton {
    let states = rng.gen_range(1..=6);
    let letters = rng.gen_range(1..=3usize);
    let names = (0..states).map(|q| format!("q{q}")).collect();
    let alphabet = (0..letters).map(|l| format!("s{l}")).collect();
    let labels = (0..states).map(|_| rng.gen_range(0..letters)).collect();
    let transitions = (0..states)
        .map(|_| (0..2).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    Automaton::new(2, names, alphabet, labels, transitions, 0).expect("valid by construction")
}

fn check_equivalences(aut: &Automaton) -> Result<bool, String> {
    let graph = graph_of(aut)?;
    let cls = classify(&graph).map_err(|e| e.to_string())?;
    ensure(cls.r1 == cls.global_relations.all_types(), || {
        "R1 flag inconsistent".into()
    })?;
    ensure(cls.r1 == cls.is_group, || {
        format!("R1 = {}, group = {}", cls.r1, cls.is_group)
    })?;
    ensure(cls.homogeneous == (cls.is_group && cls.is_cayley), || {
        format!(
            "homogeneous = {}, group = {}, Cayley = {}",
            cls.homogeneous, cls.is_group, cls.is_cayley
        )
    })?;
    if cls.is_group {
        ensure(cls.reproduces, || {
            "derived labeling does not reproduce".into()
        })?;
        let derived = derived_labeling(&graph).map_err(|e| e.to_string())?;
        ensure(equivalent(aut, &derived), || {
            "derived automaton not equivalent".into()
        })?;
        for n in 1..=1u64 << 12 {
            let a = &aut.alphabet()[aut.eval(n).map_err(|e| e.to_string())?];
            let b = &derived.alphabet()[derived.eval(n).map_err(|e| e.to_string())?];
            ensure(a == b, || format!("prefixes differ at {n}"))?;
        }
    }
    Ok(cls.is_group)
}

fn equivalence_suite() -> Outcome {
    let mut checked = 0;
    let mut groups = 0;
    for name in CorpusName::all() {
        let aut = corpus(name);
        if aut.base() != 2 {
            continue;
        }
        groups += usize::from(check_equivalences(&aut).map_err(|e| format!("{name}: {e}"))?);
        checked += 1;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for i in 0..300 {
        let aut = random_automaton(&mut rng);
        groups += usize::from(check_equivalences(&aut).map_err(|e| format!("random #{i}: {e}"))?);
        checked += 1;
    }
    Ok(format!(
        "{checked} automata, {groups} with G(a) a group, 0 counterexamples"
    ))
}

// ---------------------------------------------------------------- 6

fn leftmost_digit_regression() -> Outcome {
    let aut = corpus(CorpusName::LeftmostDigit(3));
    let graph = graph_of(&aut)?;
    let cls = classify(&graph).map_err(|e| e.to_string())?;
    ensure(cls.kernel_size == 1, || {
        format!("kernel size {}", cls.kernel_size)
    })?;
    ensure(cls.global_relations.per_type.iter().all(|&b| b), || {
        format!("R1 flags {:?}", cls.global_relations.per_type)
    })?;
    ensure(!cls.reproduces, || {
        "derived labeling reproduces the sequence".into()
    })?;
    Ok(format!(
        "first mismatch at n = {}",
        cls.witnesses
            .reproduction_mismatch
            .map_or("?".into(), |n| n.to_string())
    ))
}

// ---------------------------------------------------------------- 7

fn random_perm(rng: &mut StdRng, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("a shuffle is a permutation")
}

fn round_trip_once(rng: &mut StdRng) -> Result<Option<(usize, usize)>, String> {
    let degree = rng.gen_range(3..=5);
    let gens: Vec<Permutation> = (0..rng.gen_range(2..=3))
        .map(|_| random_perm(rng, degree))
        .collect();
    let Ok(group) = generate_group(&gens, 24) else {
        return Ok(None);
    };
    if group.order() < 2 {
        return Ok(None);
    }
    let picks: Vec<Permutation> = (0..rng.gen_range(0..=2))
        .map(|_| group.element(rng.gen_range(0..group.order())).clone())
        .collect();
    let members = group
        .subgroup_generated(&picks)
        .map_err(|e| e.to_string())?;
    if group.core(&members).len() != 1 {
        return Ok(None);
    }
    let k: Vec<Permutation> = members.iter().map(|&i| group.element(i).clone()).collect();
    let aut = cayley_automaton(&group, &k).map_err(|e| e.to_string())?;
    let graph = graph_of(&aut)?;
    let cls = classify(&graph).map_err(|e| e.to_string())?;
    ensure(cls.self_similar, || "not self-similar".into())?;
    ensure(graph.num_vertices() == group.order(), || {
        format!("|N(a)| = {}, |G| = {}", graph.num_vertices(), group.order())
    })?;

    // base-point map: the state of g goes to the kernel vertex of its sequence
    let derived = derived_labeling(&graph).map_err(|e| e.to_string())?;
    let phi: Vec<usize> = (0..aut.num_states())
        .map(|q| {
            graph
                .class_of(q)
                .ok_or_else(|| format!("state {q} unreachable"))
        })
        .collect::<Result<_, _>>()?;
    let mut seen = vec![false; graph.num_vertices()];
    for &v in &phi {
        ensure(!std::mem::replace(&mut seen[v], true), || {
            "base-point map not injective".into()
        })?;
    }
    ensure(phi[aut.initial()] == graph.base_vertex(), || {
        "identity not sent to the base".into()
    })?;
    for q in 0..aut.num_states() {
        for d in 0..aut.base() {
            ensure(phi[aut.next(q, d)] == graph.next(phi[q], d), || {
                format!("arrow {q} -{d}-> not preserved")
            })?;
        }
        let (mine, theirs) = (
            &aut.alphabet()[aut.label(q)],
            &derived.alphabet()[derived.label(phi[q])],
        );
        ensure(mine == theirs, || {
            format!("label of {q}: {mine} vs {theirs}")
        })?;
    }
    Ok(Some((group.order(), members.len())))
}

fn cayley_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut done = Vec::new();
    let mut attempts = 0;
    while done.len() < 20 {
        attempts += 1;
        ensure(attempts < 10_000, || "could not sample enough pairs".into())?;
        if let Some(shape) =
            round_trip_once(&mut rng).map_err(|e| format!("pair #{}: {e}", done.len()))?
        {
            done.push(shape);
        }
    }
    let nontrivial = done.iter().filter(|&&(_, k)| k > 1).count();
    let largest = done.iter().map(|&(g, _)| g).max().unwrap_or(0);
    Ok(format!(
        "20 pairs, {nontrivial} with K nontrivial, largest |G| = {largest}"
    ))
}

// ---------------------------------------------------------------- 8

/// Checks `(I - M) Λ = C` from the returned fractions alone: every
/// denominator is brought to the first one, then each row is multiplied out.
fn back_substitute(graph: &KernelGraph, fractions: &[MultivariateFraction]) -> Result<(), String> {
    let sys = system_data(graph);
    let n = graph.num_vertices();
    let d = fractions[0].denominator().clone();
    let (_, d_lead) = d.leading_term().ok_or("zero denominator")?;
    let mut nums: Vec<Vec<MPoly>> = Vec::with_capacity(n);
    for f in fractions {
        let (_, lead) = f.denominator().leading_term().ok_or("zero denominator")?;
        let s: BigRational = d_lead / lead;
        ensure(f.denominator().scale(&s) == d, || {
            "denominators differ beyond a scalar".into()
        })?;
        nums.push(f.numerators().iter().map(|p| p.scale(&s)).collect());
    }
    for u in 0..n {
        for l in 0..sys.letters.len() {
            let mut lhs = nums[u][l].clone();
            for v in 0..n {
                lhs = &lhs - &(&sys.m[u][v] * &nums[v][l]);
            }
            ensure(lhs == &sys.c[u][l] * &d, || {
                format!("row {u}, letter {l} fails")
            })?;
        }
    }
    Ok(())
}

fn exact_solve() -> Outcome {
    let start = Instant::now();
    for name in CorpusName::all() {
        let graph = graph_of(&corpus(name))?;
        let all = l_multivariate_all(&graph, DEFAULT_SIZE_BOUND, None)
            .map_err(|e| format!("{name}: {e}"))?;
        back_substitute(&graph, &all).map_err(|e| format!("{name}: {e}"))?;
        for (u, f) in all.iter().enumerate() {
            let special = f.specialize().map_err(|e| e.to_string())?;
            let univ = l_univariate(&graph, u).map_err(|e| e.to_string())?;
            ensure(special == univ, || {
                format!("{name}, vertex {u}: {special} vs {univ}")
            })?;
        }
    }
    Ok(format!(
        "{} corpus automata, every vertex, {:.2?}",
        CorpusName::all().len(),
        start.elapsed()
    ))
}

// ---------------------------------------------------------------- 9

fn counting() -> Outcome {
    for name in CorpusName::all() {
        let aut = corpus(name);
        let p = u64::from(aut.base());
        let n_max: u32 = match p {
            2 => 10,
            3 => 7,
            _ => 5,
        };
        let graph = graph_of(&aut)?;
        let l = base_fraction(&graph)?;
        ensure(l.letters() == aut.alphabet(), || {
            format!("{name}: letter order differs")
        })?;
        let series = series_counts(&l, n_max as usize).map_err(|e| e.to_string())?;
        let mut counts = vec![0u64; aut.alphabet().len()];
        let mut m = 1u64;
        for n in 1..=n_max {
            let end = p.pow(n);
            while m < end {
                counts[aut.eval(m).map_err(|e| e.to_string())?] += 1;
                m += 1;
            }
            for (letter, &c) in counts.iter().enumerate() {
                let predicted = &series.partial_sums[letter][n as usize - 1];
                ensure(*predicted == BigRational::from_integer(c.into()), || {
                    format!("{name}: letter {letter} at n = {n}: {predicted} vs {c}")
                })?;
            }
            let total = series.total(n as usize);
            let want = BigRational::from_integer(((p - 1) * p.pow(n - 1)).into());
            ensure(total == want, || {
                format!("{name}: total at n = {n} is {total}")
            })?;
        }
    }
    Ok("all corpus automata".into())
}

// ---------------------------------------------------------------- 10

fn asymptotics() -> Outcome {
    let quat = corpus(CorpusName::QuaternionFig3);
    let report =
        frequency_report(&base_fraction(&graph_of(&quat)?)?, 2).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for n in [16u32, 17] {
        let counts = empirical_counts(&quat, n).map_err(|e| e.to_string())?;
        for (l, v) in report.verdicts.iter().enumerate() {
            let Verdict::EvenOdd { even, odd, .. } = v else {
                return Err(format!("letter {l}: {v:?}"));
            };
            let target = if n % 2 == 0 { even } else { odd };
            let target: f64 = num_traits::ToPrimitive::to_f64(target).unwrap_or(f64::NAN);
            let err = (counts.ratio(l) - target).abs();
            worst = worst.max(err);
            ensure(err <= 0.02, || {
                format!("quaternion n = {n}, letter {l}: off by {err}")
            })?;
        }
    }
    let apery = corpus(CorpusName::AperyMod7);
    let counts = empirical_counts(&apery, 6).map_err(|e| e.to_string())?;
    let mut worst_apery: f64 = 0.0;
    for l in 0..apery.alphabet().len() {
        let err = (counts.ratio(l) - 1.0 / 6.0).abs();
        worst_apery = worst_apery.max(err);
        ensure(err <= 0.05, || format!("Apéry letter {l}: off by {err}"))?;
    }
    Ok(format!(
        "max deviation {worst:.4} (quaternion), {worst_apery:.4} (Apéry)"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Thue-Morse fractions", thue_morse_fractions),
        ("Apery mod 7", apery_mod7),
        ("quaternion example", quaternion),
        ("corpus prefix oracles", prefix_oracles),
        ("equivalence suite (p = 2)", equivalence_suite),
        ("leftmost digit counterexample", leftmost_digit_regression),
        ("Cayley round trip", cayley_round_trip),
        ("exact linear solve", exact_solve),
        ("counting", counting),
        ("asymptotics vs empirical counts", asymptotics),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
