//! The kernel `N(a)`, the graph `Γ(a)` and the monoid `G(a)`.
//!
//! Two states produce the same sequence iff, after any common word, the
//! states reached have the same *signature*: the labels reached by one more
//! nonzero digit, `(τ(δ(q, s)))_{s = 1..p-1}`. The kernel classes are found by
//! Moore-style refinement starting from that signature.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::{Automaton, Letter, State};
use crate::numeration;
use crate::Digit;

pub use crate::group::DEFAULT_ELEMENT_BOUND;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    MonoidTooLarge {
        bound: usize,
    },
    /// Vertices cannot be ordered by label: the labeling is not injective
    /// on kernel classes.
    LabelOrderUnavailable,
    VertexOutOfRange(usize),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::MonoidTooLarge { bound } => {
                write!(f, "monoid has more than {bound} elements")
            }
            KernelError::LabelOrderUnavailable => {
                write!(f, "label order needs one distinct label per kernel class")
            }
            KernelError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
        }
    }
}

/// Kernel classes of the reachable states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPartition {
    /// Class of each state; `None` for unreachable states.
    pub class_of: Vec<Option<usize>>,
    /// States of each class, classes numbered by first member.
    pub classes: Vec<Vec<State>>,
}

fn signature(aut: &Automaton, q: State) -> Vec<Letter> {
    (1..aut.base()).map(|s| aut.label(aut.next(q, s))).collect()
}

/// Moore refinement over a set of states closed under transitions. Returns
/// a class id per listed state (same order), ids numbered by first
/// appearance.
pub(crate) fn refine(aut: &Automaton, states: &[State]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; aut.num_states()];
    for (k, &q) in states.iter().enumerate() {
        pos[q] = k;
    }
    let renumber = |keys: Vec<Vec<usize>>| -> (Vec<usize>, usize) {
        let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(keys.len());
        for key in keys {
            let next = ids.len();
            out.push(*ids.entry(key).or_insert(next));
        }
        let count = ids.len();
        (out, count)
    };
    let (mut class, mut count) = renumber(states.iter().map(|&q| signature(aut, q)).collect());
    loop {
        let keys = states
            .iter()
            .enumerate()
            .map(|(k, &q)| {
                let mut key = Vec::with_capacity(aut.base() as usize + 1);
                key.push(class[k]);
                key.extend((0..aut.base()).map(|d| class[pos[aut.next(q, d)]]));
                key
            })
            .collect();
        let (next, next_count) = renumber(keys);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

pub fn kernel_partition(aut: &Automaton) -> KernelPartition {
    let mut reachable = aut.reachable_states();
    reachable.sort_unstable();
    let ids = refine(aut, &reachable);
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut class_of = vec![None; aut.num_states()];
    let mut classes = vec![Vec::new(); count];
    for (&q, &c) in reachable.iter().zip(&ids) {
        class_of[q] = Some(c);
        classes[c].push(q);
    }
    KernelPartition { class_of, classes }
}

/// Do two automata (same base and alphabet names) produce the same
/// sequence? Decided by refining the disjoint union.
pub fn equivalent(a: &Automaton, b: &Automaton) -> bool {
    if a.base() != b.base() {
        return false;
    }
    let Some(union) = disjoint_union(a, b) else {
        return false;
    };
    let all: Vec<State> = (0..union.num_states()).collect();
    let ids = refine(&union, &all);
    ids[a.initial()] == ids[a.num_states() + b.initial()]
}

/// Shortest index `n` (in length-then-digit order of its reversed digits)
/// with `a_n != b_n`, found by a product search.
pub fn first_difference(a: &Automaton, b: &Automaton) -> Option<u64> {
    let p = a.base();
    if p != b.base() {
        return Some(1);
    }
    let map: Vec<Option<Letter>> = a.alphabet().iter().map(|s| b.letter_index(s)).collect();
    let same = |x: State, y: State| map[a.label(x)] == Some(b.label(y));
    let mut seen = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert((a.initial(), b.initial()), Vec::<Digit>::new());
    queue.push_back((a.initial(), b.initial()));
    while let Some((x, y)) = queue.pop_front() {
        let word = seen[&(x, y)].clone();
        for s in 1..p {
            if !same(a.next(x, s), b.next(y, s)) {
                let mut digits = word.clone();
                digits.push(s);
                return numeration::from_digits_lsb(&digits, p).ok();
            }
        }
        for d in 0..p {
            let pair = (a.next(x, d), b.next(y, d));
            if let alloc::collections::btree_map::Entry::Vacant(e) = seen.entry(pair) {
                let mut w = word.clone();
                w.push(d);
                e.insert(w);
                queue.push_back(pair);
            }
        }
    }
    None
}

fn disjoint_union(a: &Automaton, b: &Automaton) -> Option<Automaton> {
    use alloc::format;
    let mut alphabet: Vec<_> = a.alphabet().to_vec();
    let mut b_letters = Vec::with_capacity(b.alphabet().len());
    for s in b.alphabet() {
        let idx = match alphabet.iter().position(|x| x == s) {
            Some(i) => i,
            None => {
                alphabet.push(s.clone());
                alphabet.len() - 1
            }
        };
        b_letters.push(idx);
    }
    let na = a.num_states();
    let names = (0..na + b.num_states()).map(|i| format!("s{i}")).collect();
    let mut labels: Vec<Letter> = a.labels().to_vec();
    labels.extend(b.labels().iter().map(|&l| b_letters[l]));
    let mut transitions = a.transitions();
    transitions.extend(
        b.transitions()
            .into_iter()
            .map(|row| row.into_iter().map(|q| q + na).collect()),
    );
    Automaton::new(a.base(), names, alphabet, labels, transitions, a.initial()).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexOrder {
    /// Breadth-first from the base vertex, digits in increasing order.
    #[default]
    Bfs,
    /// By the (common) label of the states in each class, in alphabet
    /// order. Requires one distinct label per class.
    Labels,
}

/// `Γ(a)`: one vertex per distinct sequence in `N(a)`, with the generator
/// maps `t_i(u) = (u_{pn+i})_{n >= 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelGraph {
    base: u32,
    gens: Vec<Vec<usize>>,
    first_terms: Vec<Vec<Letter>>,
    base_vertex: usize,
    class_of: Vec<Option<usize>>,
    members: Vec<Vec<State>>,
    source: Automaton,
}

pub fn build_kernel_graph(aut: &Automaton, order: VertexOrder) -> Result<KernelGraph, KernelError> {
    let partition = kernel_partition(aut);
    let p = aut.base();
    let classes = partition.classes.len();
    // vertex numbering
    let mut vertex_of_class = vec![usize::MAX; classes];
    match order {
        VertexOrder::Bfs => {
            let start = partition.class_of[aut.initial()].expect("initial is reachable");
            let mut queue = VecDeque::from([start]);
            vertex_of_class[start] = 0;
            let mut next_id = 1;
            while let Some(c) = queue.pop_front() {
                let rep = partition.classes[c][0];
                for d in 0..p {
                    let t = partition.class_of[aut.next(rep, d)].expect("closed");
                    if vertex_of_class[t] == usize::MAX {
                        vertex_of_class[t] = next_id;
                        next_id += 1;
                        queue.push_back(t);
                    }
                }
            }
        }
        VertexOrder::Labels => {
            let mut keyed: Vec<(Letter, usize)> = Vec::with_capacity(classes);
            for (c, members) in partition.classes.iter().enumerate() {
                let l = aut.label(members[0]);
                if members.iter().any(|&q| aut.label(q) != l) {
                    return Err(KernelError::LabelOrderUnavailable);
                }
                keyed.push((l, c));
            }
            keyed.sort_unstable();
            if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(KernelError::LabelOrderUnavailable);
            }
            for (v, &(_, c)) in keyed.iter().enumerate() {
                vertex_of_class[c] = v;
            }
        }
    }
    let mut members = vec![Vec::new(); classes];
    for (c, states) in partition.classes.iter().enumerate() {
        members[vertex_of_class[c]] = states.clone();
    }
    let class_of = partition
        .class_of
        .iter()
        .map(|c| c.map(|c| vertex_of_class[c]))
        .collect::<Vec<_>>();
    let gens = (0..p)
        .map(|d| {
            members
                .iter()
                .map(|m| class_of[aut.next(m[0], d)].expect("closed"))
                .collect()
        })
        .collect();
    let first_terms = members.iter().map(|m| signature(aut, m[0])).collect();
    Ok(KernelGraph {
        base: p,
        gens,
        first_terms,
        base_vertex: class_of[aut.initial()].expect("initial is reachable"),
        class_of,
        members,
        source: aut.clone(),
    })
}

impl KernelGraph {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn num_vertices(&self) -> usize {
        self.members.len()
    }

    /// The vertex representing the sequence itself.
    pub fn base_vertex(&self) -> usize {
        self.base_vertex
    }

    /// `t_d(v)`.
    #[inline]
    pub fn next(&self, v: usize, d: Digit) -> usize {
        self.gens[d as usize][v]
    }

    /// The generator map `t_d` as a vector of images.
    pub fn generator(&self, d: Digit) -> &[usize] {
        &self.gens[d as usize]
    }

    pub fn run(&self, v: usize, word: &[Digit]) -> usize {
        word.iter().fold(v, |v, &d| self.next(v, d))
    }

    /// `(u_1, …, u_{p-1})` for the sequence `u` at vertex `v`.
    pub fn first_terms(&self, v: usize) -> &[Letter] {
        &self.first_terms[v]
    }

    /// `u_s` for `1 <= s < p`.
    pub fn first_term(&self, v: usize, s: Digit) -> Letter {
        self.first_terms[v][s as usize - 1]
    }

    /// Kernel vertex of an automaton state (`None` if unreachable).
    pub fn class_of(&self, q: State) -> Option<usize> {
        self.class_of[q]
    }

    /// Automaton states in the class of `v`.
    pub fn members(&self, v: usize) -> &[State] {
        &self.members[v]
    }

    pub fn source(&self) -> &Automaton {
        &self.source
    }

    pub fn alphabet(&self) -> &[alloc::string::String] {
        self.source.alphabet()
    }

    /// The `n`-th term of the sequence at vertex `v`, computed from the
    /// graph alone.
    pub fn eval_from(&self, v: usize, n: u64) -> Result<Letter, numeration::NumerationError> {
        let digits = numeration::digits_lsb(n, self.base)?;
        let (&lead, rest) = digits.split_last().expect("n >= 1 has a digit");
        Ok(self.first_term(self.run(v, rest), lead))
    }

    /// Whether `t_d` is a bijection of the vertex set.
    pub fn is_bijective(&self, d: Digit) -> bool {
        let mut seen = vec![false; self.num_vertices()];
        self.gens[d as usize]
            .iter()
            .all(|&v| !core::mem::replace(&mut seen[v], true))
    }

    /// Vertices reachable from `v`.
    pub fn reachable_from(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_vertices()];
        let mut order = vec![v];
        seen[v] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for d in 0..self.base {
                let w = self.next(u, d);
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Shortest word from `from` to `to` (digits in increasing order).
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<Digit>> {
        let n = self.num_vertices();
        let mut prev: Vec<Option<(usize, Digit)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut word = Vec::new();
                let mut x = to;
                while let Some((y, d)) = prev[x] {
                    word.push(d);
                    x = y;
                }
                word.reverse();
                return Some(word);
            }
            for d in 0..self.base {
                let w = self.next(u, d);
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, d));
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), KernelError> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(KernelError::VertexOutOfRange(v))
        }
    }
}

/// The monoid `G(a)` of self-maps of `N(a)` generated by the `t_i`, with
/// composition "first `g`, then `h`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationMonoid {
    elements: Vec<Vec<usize>>,
    words: Vec<Vec<Digit>>,
    is_group: bool,
}

impl TransformationMonoid {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    /// Elements as vertex maps; element 0 is the identity.
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    /// A shortest generator word for each element.
    pub fn word(&self, i: usize) -> &[Digit] {
        &self.words[i]
    }
}

pub fn monoid_closure(
    graph: &KernelGraph,
    bound: usize,
) -> Result<TransformationMonoid, KernelError> {
    let n = graph.num_vertices();
    let identity: Vec<usize> = (0..n).collect();
    let mut index = BTreeMap::new();
    index.insert(identity.clone(), 0usize);
    let mut elements = vec![identity];
    let mut words = vec![Vec::new()];
    let mut head = 0;
    while head < elements.len() {
        for d in 0..graph.base() {
            let t = graph.generator(d);
            let next: Vec<usize> = elements[head].iter().map(|&v| t[v]).collect();
            if !index.contains_key(&next) {
                if elements.len() >= bound {
                    return Err(KernelError::MonoidTooLarge { bound });
                }
                let mut w = words[head].clone();
                w.push(d);
                index.insert(next.clone(), elements.len());
                elements.push(next);
                words.push(w);
            }
        }
        head += 1;
    }
    let is_group = (0..graph.base()).all(|d| graph.is_bijective(d));
    Ok(TransformationMonoid {
        elements,
        words,
        is_group,
    })
}

/// Per-type existence of a global relation, decided inside `G(a)`: a
/// relation word of type `r` ends with `r`, and it is global iff it acts as
/// the identity on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalRelations {
    pub per_type: Vec<bool>,
    /// A shortest global relation word of each type, digits least
    /// significant first.
    pub witnesses: Vec<Option<Vec<Digit>>>,
}

impl GlobalRelations {
    /// Condition R1: global relations of all types.
    pub fn all_types(&self) -> bool {
        self.per_type.iter().all(|&b| b)
    }
}

pub fn has_global_relations_all_types(
    graph: &KernelGraph,
    monoid: &TransformationMonoid,
) -> GlobalRelations {
    let p = graph.base();
    let mut witnesses = vec![None; p as usize];
    for r in 0..p {
        let t = graph.generator(r);
        let mut best: Option<Vec<Digit>> = None;
        for (k, m) in monoid.elements().iter().enumerate() {
            if m.iter().enumerate().all(|(u, &v)| t[v] == u) {
                let len = monoid.word(k).len() + 1;
                if best.as_ref().is_none_or(|b| len < b.len()) {
                    let mut w = monoid.word(k).to_vec();
                    w.push(r);
                    best = Some(w);
                }
            }
        }
        witnesses[r as usize] = best;
    }
    GlobalRelations {
        per_type: witnesses.iter().map(Option::is_some).collect(),
        witnesses,
    }
}

/// `rel(u)` as a regular language over digit words (least significant
/// digit first): words `w ≠ ε` with `u^w = u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLanguage<'g> {
    graph: &'g KernelGraph,
    start: usize,
}

impl<'g> RelationLanguage<'g> {
    pub fn accepts(&self, word: &[Digit]) -> bool {
        !word.is_empty() && self.graph.run(self.start, word) == self.start
    }

    pub fn start(&self) -> usize {
        self.start
    }
}

pub fn relation_language(
    graph: &KernelGraph,
    u: usize,
) -> Result<RelationLanguage<'_>, KernelError> {
    graph.check_vertex(u)?;
    Ok(RelationLanguage { graph, start: u })
}

/// Outcome of comparing two relation languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelComparison {
    pub equal: bool,
    /// A shortest word in exactly one of the languages.
    pub witness: Option<Vec<Digit>>,
}

/// Decide `rel(u) = rel(v)` by searching the product acceptor for a pair
/// whose acceptance differs.
pub fn rel_equal(graph: &KernelGraph, u: usize, v: usize) -> Result<RelComparison, KernelError> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)?;
    let n = graph.num_vertices();
    let mut prev: Vec<Option<(usize, Digit)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let start = u * n + v;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut first = true;
    while let Some(pair) = queue.pop_front() {
        let (x, y) = (pair / n, pair % n);
        if !first && ((x == u) != (y == v)) {
            let mut word = Vec::new();
            let mut k = pair;
            while let Some((q, d)) = prev[k] {
                word.push(d);
                k = q;
                if k == start {
                    break;
                }
            }
            word.reverse();
            return Ok(RelComparison {
                equal: false,
                witness: Some(word),
            });
        }
        first = false;
        for d in 0..graph.base() {
            let next = graph.next(x, d) * n + graph.next(y, d);
            if !seen[next] {
                seen[next] = true;
                prev[next] = Some((pair, d));
                queue.push_back(next);
            }
        }
    }
    Ok(RelComparison {
        equal: true,
        witness: None,
    })
}

/// For each type `r`, the length-lexicographically least relation word of
/// `rel(u)` ending with `r`, if one of length at most `max_len` exists.
pub fn minimal_relations(
    graph: &KernelGraph,
    u: usize,
    max_len: usize,
) -> Result<Vec<Option<Vec<Digit>>>, KernelError> {
    graph.check_vertex(u)?;
    let n = graph.num_vertices();
    // BFS from u with digits in increasing order: first discovery is the
    // length-lex least path.
    let mut path: Vec<Option<Vec<Digit>>> = vec![None; n];
    path[u] = Some(Vec::new());
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let w = path[x].clone().expect("visited");
        for d in 0..graph.base() {
            let y = graph.next(x, d);
            if path[y].is_none() {
                let mut wy = w.clone();
                wy.push(d);
                path[y] = Some(wy);
                queue.push_back(y);
            }
        }
    }
    let mut out = Vec::with_capacity(graph.base() as usize);
    for r in 0..graph.base() {
        let best = (0..n)
            .filter(|&x| graph.next(x, r) == u)
            .filter_map(|x| path[x].as_ref())
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .map(|w| {
                let mut w = w.clone();
                w.push(r);
                w
            })
            .filter(|w| w.len() <= max_len);
        out.push(best);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus, CorpusName};

    fn graph(name: CorpusName) -> KernelGraph {
        build_kernel_graph(&corpus(name), VertexOrder::Bfs).unwrap()
    }

    #[test]
    fn kernel_sizes() {
        assert_eq!(
            kernel_partition(&corpus(CorpusName::ThueMorse))
                .classes
                .len(),
            2
        );
        assert_eq!(
            kernel_partition(&corpus(CorpusName::AperyMod7))
                .classes
                .len(),
            6
        );
        assert_eq!(
            kernel_partition(&corpus(CorpusName::LeftmostDigit(3)))
                .classes
                .len(),
            1
        );
        assert_eq!(
            kernel_partition(&corpus(CorpusName::QuaternionFig3))
                .classes
                .len(),
            8
        );
    }

    #[test]
    fn thue_morse_graph() {
        let g = graph(CorpusName::ThueMorse);
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.generator(0), &[0, 1]);
        assert_eq!(g.generator(1), &[1, 0]);
        let m = monoid_closure(&g, DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(m.order(), 2);
        assert!(m.is_group());
        let rel = has_global_relations_all_types(&g, &m);
        assert_eq!(rel.per_type, vec![true, true]);
        assert_eq!(rel.witnesses[0], Some(vec![0]));
        assert_eq!(rel.witnesses[1], Some(vec![1, 1]));
        let mins = minimal_relations(&g, g.base_vertex(), 8).unwrap();
        assert_eq!(mins, vec![Some(vec![0]), Some(vec![1, 1])]);
        assert!(rel_equal(&g, 0, 0).unwrap().equal);
        assert!(rel_equal(&g, 0, 1).unwrap().equal);
    }

    #[test]
    fn single_vertex_graph() {
        let g = graph(CorpusName::LeftmostDigit(3));
        assert_eq!(g.num_vertices(), 1);
        for d in 0..3 {
            assert_eq!(g.generator(d), &[0]);
        }
        let m = monoid_closure(&g, 10).unwrap();
        assert_eq!(m.order(), 1);
        assert!(has_global_relations_all_types(&g, &m).all_types());
        let mins = minimal_relations(&g, 0, 3).unwrap();
        assert_eq!(mins, vec![Some(vec![0]), Some(vec![1]), Some(vec![2])]);
        assert_eq!(minimal_relations(&g, 0, 0).unwrap(), vec![None, None, None]);
    }

    #[test]
    fn non_injective_generator() {
        // t_1 sends both a and b to b
        let aut = Automaton::new(
            2,
            vec!["a".into(), "b".into(), "c".into()],
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![0, 1, 2],
            vec![vec![0, 1], vec![2, 1], vec![2, 0]],
            0,
        )
        .unwrap();
        let g = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert!(!g.is_bijective(1));
        let m = monoid_closure(&g, 100).unwrap();
        assert!(!m.is_group());
        let rel = has_global_relations_all_types(&g, &m);
        assert!(!rel.per_type[1]);
    }

    #[test]
    fn rel_witness() {
        // gen_0 fixes vertex 0 but not vertex 1
        let aut = Automaton::new(
            2,
            vec!["a".into(), "b".into(), "c".into()],
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![0, 1, 2],
            vec![vec![0, 1], vec![2, 0], vec![1, 2]],
            0,
        )
        .unwrap();
        let g = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
        assert_eq!(g.num_vertices(), 3);
        let a = g.class_of(0).unwrap();
        let b = g.class_of(1).unwrap();
        let cmp = rel_equal(&g, a, b).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.witness, Some(vec![0]));
        let lang_a = relation_language(&g, a).unwrap();
        let lang_b = relation_language(&g, b).unwrap();
        assert!(lang_a.accepts(&[0]));
        assert!(!lang_b.accepts(&[0]));
        assert!(!lang_a.accepts(&[]));
    }

    #[test]
    fn label_order() {
        let q = corpus(CorpusName::QuaternionFig3);
        let g = build_kernel_graph(&q, VertexOrder::Labels).unwrap();
        assert_eq!(g.base_vertex(), 5);
        // vertex k is the class of the state labeled d_{k+1}
        for v in 0..8 {
            assert_eq!(q.label(g.members(v)[0]), v);
        }
        let lm = corpus(CorpusName::LeftmostDigit(3));
        assert_eq!(
            build_kernel_graph(&lm, VertexOrder::Labels).unwrap_err(),
            KernelError::LabelOrderUnavailable
        );
    }

    #[test]
    fn graph_evaluation_matches_automaton() {
        for name in CorpusName::all() {
            let aut = corpus(name);
            let g = build_kernel_graph(&aut, VertexOrder::Bfs).unwrap();
            for n in 1..500 {
                assert_eq!(
                    g.eval_from(g.base_vertex(), n).unwrap(),
                    aut.eval(n).unwrap()
                );
            }
        }
    }

    #[test]
    fn equivalence_and_difference() {
        let tm = corpus(CorpusName::ThueMorse);
        assert!(equivalent(&tm, &tm));
        assert_eq!(first_difference(&tm, &tm), None);
        let shifted = tm.with_initial(1).unwrap();
        assert!(!equivalent(&tm, &shifted));
        assert_eq!(first_difference(&tm, &shifted), Some(1));
    }
}
