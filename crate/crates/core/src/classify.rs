//! Homogeneity, self-similarity and the structural certificates.
//!
//! Homogeneity is always decided from its definition (every kernel element
//! generates the whole kernel and has the same relation language). For
//! `p = 2` the structural verdict (group and Cayley graph) is computed as
//! well and the two must agree.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::{Automaton, Letter};
use crate::group::{generate_group, GroupError, PermGroup, DEFAULT_ELEMENT_BOUND};
use crate::kernel::{
    self, has_global_relations_all_types, monoid_closure, rel_equal, GlobalRelations, KernelError,
    KernelGraph,
};
use crate::perm::Permutation;
use crate::Digit;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    Kernel(KernelError),
    Group(GroupError),
    NotAGroup,
    /// Definitional and structural homogeneity disagree for `p = 2`.
    InconsistentVerdicts {
        definitional: bool,
        structural: bool,
    },
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::Kernel(e) => write!(f, "{e}"),
            ClassifyError::Group(e) => write!(f, "{e}"),
            ClassifyError::NotAGroup => write!(f, "G(a) is not a group"),
            ClassifyError::InconsistentVerdicts {
                definitional,
                structural,
            } => write!(
                f,
                "homogeneity verdicts disagree: definitional {definitional}, structural {structural}"
            ),
        }
    }
}

impl From<KernelError> for ClassifyError {
    fn from(e: KernelError) -> Self {
        ClassifyError::Kernel(e)
    }
}

impl From<GroupError> for ClassifyError {
    fn from(e: GroupError) -> Self {
        ClassifyError::Group(e)
    }
}

/// Letter map `φ` with `u_n = φ(a_n)`; `None` for letters `a` never uses.
pub type LetterMap = Vec<Option<Letter>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConflictKind {
    /// `φ(letter)` would need two different values.
    NotAFunction {
        letter: Letter,
        images: (Letter, Letter),
    },
    /// Two letters would share the image `image`.
    NotInjective {
        letters: (Letter, Letter),
        image: Letter,
    },
}

/// Why no letter bijection exists, with the digit word (least significant
/// first) where the conflicting constraint appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityConflict {
    pub vertex: usize,
    pub word: Vec<Digit>,
    pub kind: ConflictKind,
}

/// A bijection `φ` of letters with `u_n = φ(a_n)` for all `n`, where `u` is
/// the sequence at vertex `u`.
pub fn similarity_bijection(
    graph: &KernelGraph,
    u: usize,
) -> Result<Result<LetterMap, SimilarityConflict>, KernelError> {
    let n = graph.num_vertices();
    if u >= n {
        return Err(KernelError::VertexOutOfRange(u));
    }
    let letters = graph.alphabet().len();
    let mut forward: LetterMap = vec![None; letters];
    let mut backward: Vec<Option<Letter>> = vec![None; letters];
    let mut words: Vec<Option<Vec<Digit>>> = vec![None; n * n];
    let start = graph.base_vertex() * n + u;
    words[start] = Some(Vec::new());
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        let (x, y) = (pair / n, pair % n);
        let word = words[pair].clone().expect("visited");
        for s in 1..graph.base() {
            let (from, to) = (graph.first_term(x, s), graph.first_term(y, s));
            let conflict = |kind| {
                let mut w = word.clone();
                w.push(s);
                Ok(Err(SimilarityConflict {
                    vertex: u,
                    word: w,
                    kind,
                }))
            };
            match forward[from] {
                Some(prev) if prev != to => {
                    return conflict(ConflictKind::NotAFunction {
                        letter: from,
                        images: (prev, to),
                    })
                }
                _ => {}
            }
            match backward[to] {
                Some(prev) if prev != from => {
                    return conflict(ConflictKind::NotInjective {
                        letters: (prev, from),
                        image: to,
                    })
                }
                _ => {}
            }
            forward[from] = Some(to);
            backward[to] = Some(from);
        }
        for d in 0..graph.base() {
            let next = graph.next(x, d) * n + graph.next(y, d);
            if words[next].is_none() {
                let mut w = word.clone();
                w.push(d);
                words[next] = Some(w);
                queue.push_back(next);
            }
        }
    }
    Ok(Ok(forward))
}

/// `G(a)` as a permutation group of the vertices, when every generator is
/// a bijection.
pub fn kernel_group(graph: &KernelGraph, bound: usize) -> Result<Option<PermGroup>, GroupError> {
    let mut gens = Vec::with_capacity(graph.base() as usize);
    for d in 0..graph.base() {
        let images = graph.generator(d).iter().map(|&v| v as u32).collect();
        match Permutation::from_images(images) {
            Ok(p) => gens.push(p),
            Err(_) => return Ok(None),
        }
    }
    generate_group(&gens, bound).map(Some)
}

/// `Γ(a)` turned into an automaton: initial state the base vertex and
/// `τ(u)` the first term of the sequence at `t_1^{-1}(u)`.
pub fn derived_labeling(graph: &KernelGraph) -> Result<Automaton, ClassifyError> {
    let n = graph.num_vertices();
    if !(0..graph.base()).all(|d| graph.is_bijective(d)) {
        return Err(ClassifyError::NotAGroup);
    }
    let mut pre_one = vec![0usize; n];
    for v in 0..n {
        pre_one[graph.next(v, 1)] = v;
    }
    let labels = (0..n).map(|u| graph.first_term(pre_one[u], 1)).collect();
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let transitions = (0..n)
        .map(|v| (0..graph.base()).map(|d| graph.next(v, d)).collect())
        .collect();
    Automaton::new(
        graph.base(),
        names,
        graph.alphabet().to_vec(),
        labels,
        transitions,
        graph.base_vertex(),
    )
    .map_err(|e| ClassifyError::Group(GroupError::Automaton(e)))
}

/// Does the automaton derived from `Γ(a)` produce exactly the sequence of
/// `aut`?
pub fn reproduces(aut: &Automaton, graph: &KernelGraph) -> Result<bool, ClassifyError> {
    let derived = derived_labeling(graph)?;
    Ok(kernel::equivalent(aut, &derived))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witnesses {
    /// Digits whose generator map is not a bijection.
    pub non_bijective: Vec<Digit>,
    /// A pair `(u, v)` with `v` not reachable from `u`.
    pub unreachable: Option<(usize, usize)>,
    /// A vertex whose relation language differs from the base one, with a
    /// shortest word in exactly one of them.
    pub rel_mismatch: Option<(usize, Vec<Digit>)>,
    pub similarity_conflict: Option<SimilarityConflict>,
    /// First index where the derived automaton disagrees with the sequence.
    pub reproduction_mismatch: Option<u64>,
    /// Generators of the stabilizer of the base vertex in `G(a)`, as
    /// permutations of the vertices.
    pub stabilizer_generators: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub base: u32,
    pub kernel_size: usize,
    pub monoid_order: usize,
    pub global_relations: GlobalRelations,
    /// Global relations of all types.
    pub r1: bool,
    /// `G(a)` is a group.
    pub is_group: bool,
    /// `Γ(a)` is the Cayley graph of `G(a)`.
    pub is_cayley: bool,
    /// Decided from the definition.
    pub homogeneous: bool,
    /// `is_group && is_cayley`.
    pub structural_homogeneous: bool,
    pub self_similar: bool,
    /// `Γ(a)` with its derived labeling produces the sequence.
    pub reproduces: bool,
    pub witnesses: Witnesses,
}

pub fn classify(graph: &KernelGraph) -> Result<Classification, ClassifyError> {
    classify_with_bound(graph, DEFAULT_ELEMENT_BOUND)
}

pub fn classify_with_bound(
    graph: &KernelGraph,
    bound: usize,
) -> Result<Classification, ClassifyError> {
    let n = graph.num_vertices();
    let base = graph.base_vertex();
    let monoid = monoid_closure(graph, bound)?;
    let global_relations = has_global_relations_all_types(graph, &monoid);
    let mut witnesses = Witnesses {
        non_bijective: (0..graph.base())
            .filter(|&d| !graph.is_bijective(d))
            .collect(),
        ..Witnesses::default()
    };
    let is_group = monoid.is_group();
    let is_cayley = is_group && monoid.order() == n;

    // N(u) = N(a) for every u: every vertex reaches the base.
    let mut homogeneous = true;
    for u in 0..n {
        if !graph.reachable_from(u).contains(&base) {
            witnesses.unreachable = Some((u, base));
            homogeneous = false;
            break;
        }
    }
    if homogeneous {
        for u in 0..n {
            let cmp = rel_equal(graph, u, base)?;
            if !cmp.equal {
                witnesses.rel_mismatch = Some((u, cmp.witness.unwrap_or_default()));
                homogeneous = false;
                break;
            }
        }
    }

    let mut self_similar = true;
    for u in 0..n {
        if let Err(conflict) = similarity_bijection(graph, u)? {
            witnesses.similarity_conflict = Some(conflict);
            self_similar = false;
            break;
        }
    }

    let reproduces = if is_group {
        let derived = derived_labeling(graph)?;
        let same = kernel::equivalent(graph.source(), &derived);
        if !same {
            witnesses.reproduction_mismatch = kernel::first_difference(graph.source(), &derived);
        }
        same
    } else {
        false
    };

    if is_group {
        if let Some(group) = kernel_group(graph, bound)? {
            let stab: Vec<usize> = (0..group.order())
                .filter(|&i| group.element(i).apply(base) == base)
                .collect();
            witnesses.stabilizer_generators = group
                .subgroup_generators(&stab)
                .into_iter()
                .map(|i| group.element(i).clone())
                .collect();
        }
    }

    let structural_homogeneous = is_group && is_cayley;
    if graph.base() == 2 && homogeneous != structural_homogeneous {
        return Err(ClassifyError::InconsistentVerdicts {
            definitional: homogeneous,
            structural: structural_homogeneous,
        });
    }

    Ok(Classification {
        base: graph.base(),
        kernel_size: n,
        monoid_order: monoid.order(),
        r1: global_relations.all_types(),
        global_relations,
        is_group,
        is_cayley,
        homogeneous,
        structural_homogeneous,
        self_similar,
        reproduces,
        witnesses,
    })
}

/// Minimality condition (†) for a Schreier automaton of `group`: only
/// elements fixing the initial state leave the output labels invariant.
pub fn dagger_check(aut: &Automaton, group: &PermGroup) -> Result<bool, GroupError> {
    check_schreier(aut, group)?;
    let q0 = aut.initial();
    if group.orbit(q0).len() != aut.num_states() {
        return Err(GroupError::NotTransitive);
    }
    Ok(group.elements().iter().all(|h| {
        let start = h.apply(q0);
        start == q0
            || group
                .elements()
                .iter()
                .any(|g| aut.label(g.apply(start)) != aut.label(g.apply(q0)))
    }))
}

fn check_schreier(aut: &Automaton, group: &PermGroup) -> Result<(), GroupError> {
    if group.degree() != aut.num_states() || group.generators().len() != aut.base() as usize {
        return Err(GroupError::GeneratorMismatch);
    }
    for d in 0..aut.base() {
        let action = aut.digit_permutation(d).ok_or(GroupError::NotSchreier)?;
        if action != group.generators()[d as usize] {
            return Err(GroupError::GeneratorMismatch);
        }
    }
    Ok(())
}

/// `H = {h : τ(hg) = τ(g) for all g}` for a Cayley automaton, states
/// identified with group elements through `g ↦ q_0^g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceSubgroup {
    /// Element indices into the group.
    pub members: Vec<usize>,
    pub generators: Vec<Permutation>,
    pub is_normal: bool,
}

pub fn invariance_subgroup(
    aut: &Automaton,
    group: &PermGroup,
) -> Result<InvarianceSubgroup, GroupError> {
    check_schreier(aut, group)?;
    let q0 = aut.initial();
    let n = group.order();
    if n != aut.num_states() || group.orbit(q0).len() != n {
        return Err(GroupError::NotCayley);
    }
    let tau = |g: usize| aut.label(group.element(g).apply(q0));
    let members: Vec<usize> = (0..n)
        .filter(|&h| (0..n).all(|g| tau(group.mul(h, g)) == tau(g)))
        .collect();
    let generators = group
        .subgroup_generators(&members)
        .into_iter()
        .map(|i| group.element(i).clone())
        .collect();
    Ok(InvarianceSubgroup {
        is_normal: group.is_normal(&members),
        members,
        generators,
    })
}

/// The identification `Δ ≅ G/K` for a self-similar sequence whose kernel
/// graph is a Cayley graph.
#[derive(Debug, Clone)]
pub struct CosetStructure {
    /// `G(a)` acting on the kernel vertices.
    pub group: PermGroup,
    /// `K` as element indices of `group`.
    pub subgroup: Vec<usize>,
    /// `K` through the base-point map `h ↦ base^h`.
    pub subgroup_vertices: Vec<usize>,
    pub core_trivial: bool,
    /// The letter fixed by `K`: the derived label of the base vertex.
    pub base_letter: Letter,
    /// Each left coset `hK` (as vertices `base^{hk}`) with its letter `h·δ`.
    pub letter_of_coset: Vec<(Vec<usize>, Letter)>,
}

pub fn coset_structure(graph: &KernelGraph) -> Result<Option<CosetStructure>, ClassifyError> {
    let Some(group) = kernel_group(graph, DEFAULT_ELEMENT_BOUND)? else {
        return Ok(None);
    };
    let base = graph.base_vertex();
    let n = graph.num_vertices();
    if group.order() != n {
        return Ok(None);
    }
    let mut maps = Vec::with_capacity(n);
    for h in 0..n {
        match similarity_bijection(graph, group.element(h).apply(base))? {
            Ok(map) => maps.push(map),
            Err(_) => return Ok(None),
        }
    }
    let pre_one = (0..n)
        .find(|&v| graph.next(v, 1) == base)
        .expect("t_1 is a bijection");
    let base_letter = graph.first_term(pre_one, 1);
    let action = |h: usize| maps[h][base_letter].expect("base letter occurs in the sequence");
    let subgroup: Vec<usize> = (0..n).filter(|&h| action(h) == base_letter).collect();
    let core_trivial = group.core(&subgroup).len() == 1;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut letter_of_coset = Vec::new();
    for h in 0..n {
        let coset = group.left_coset(h, &subgroup);
        if seen.insert(coset.clone()) {
            let mut vertices: Vec<usize> = coset
                .iter()
                .map(|&g| group.element(g).apply(base))
                .collect();
            vertices.sort_unstable();
            letter_of_coset.push((vertices, action(h)));
        }
    }
    let mut subgroup_vertices: Vec<usize> = subgroup
        .iter()
        .map(|&k| group.element(k).apply(base))
        .collect();
    subgroup_vertices.sort_unstable();
    Ok(Some(CosetStructure {
        group,
        subgroup,
        subgroup_vertices,
        core_trivial,
        base_letter,
        letter_of_coset,
    }))
}
