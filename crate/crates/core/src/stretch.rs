//! Candidate loops and the exact asymmetric stretch factor between marked
//! graphs.
//!
//! The stretch factor Λ(T, T') = sup ||g||_{T'} / ||g||_T is attained on the
//! candidates of T: loops that are embedded circles, bouquets of two circles,
//! or barbells in the quotient graph. Enumerating those (each orientation
//! once, a loop and its reverse identified) turns the supremum into an exact
//! finite maximum; a word-enumeration brute force provides the independent
//! oracle.

use crate::marked_graph::{EdgePath, MarkedGraph, OrientedEdge};
use crate::rational::{ExtRational, Rational};
use crate::words::{enumerate_cyclic_words, CyclicWord, Word};
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StretchError {
    #[error("rank mismatch: {from} vs {to}")]
    RankMismatch { from: usize, to: usize },
}

/// Shapes of candidate loops. The degenerate barbells and the vertex shape
/// occur only in quotient graphs of boundary trees, where vertex groups are
/// nontrivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateShape {
    Circle,
    Bouquet,
    Barbell,
    SimplyDegenerateBarbell,
    DoublyDegenerateBarbell,
    Vertex,
}

impl CandidateShape {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateShape::Circle => "circle",
            CandidateShape::Bouquet => "bouquet",
            CandidateShape::Barbell => "barbell",
            CandidateShape::SimplyDegenerateBarbell => "simply_degenerate_barbell",
            CandidateShape::DoublyDegenerateBarbell => "doubly_degenerate_barbell",
            CandidateShape::Vertex => "vertex",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CandidateLoop {
    pub shape: CandidateShape,
    pub edge_path: EdgePath,
    pub word: CyclicWord,
}

/// One row of a stretch report.
#[derive(Clone, Debug)]
pub struct CandidateRatio {
    pub word: CyclicWord,
    pub shape: Option<CandidateShape>,
    pub len_from: Rational,
    pub len_to: Rational,
    pub ratio: ExtRational,
}

#[derive(Clone, Debug)]
pub struct StretchReport {
    pub lambda: ExtRational,
    pub witness: Option<CyclicWord>,
    pub table: Vec<CandidateRatio>,
}

fn canonical_cycle(path: &[OrientedEdge]) -> EdgePath {
    let n = path.len();
    let mut best: Option<EdgePath> = None;
    let reversed: EdgePath = path.iter().rev().map(|e| e.reverse()).collect();
    for p in [path.to_vec(), reversed] {
        for r in 0..n {
            let rotated: EdgePath = (0..n).map(|k| p[(r + k) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

fn cycle_vertices(t: &MarkedGraph, cycle: &[OrientedEdge]) -> HashSet<usize> {
    cycle.iter().map(|&e| t.graph().source(e)).collect()
}

fn rotate_to_vertex(t: &MarkedGraph, cycle: &[OrientedEdge], v: usize) -> EdgePath {
    let n = cycle.len();
    let start = (0..n)
        .find(|&i| t.graph().source(cycle[i]) == v)
        .expect("vertex lies on cycle");
    (0..n).map(|k| cycle[(start + k) % n]).collect()
}

fn reverse_path(path: &[OrientedEdge]) -> EdgePath {
    path.iter().rev().map(|e| e.reverse()).collect()
}

/// All embedded circles of the quotient graph, one representative per
/// unoriented circle.
fn embedded_circles(t: &MarkedGraph) -> Vec<EdgePath> {
    let g = t.graph();
    let mut out_arcs: Vec<Vec<OrientedEdge>> = vec![Vec::new(); g.n_vertices()];
    for pair in 0..g.n_edges() {
        for e in [OrientedEdge::forward(pair), OrientedEdge::backward(pair)] {
            out_arcs[g.source(e)].push(e);
        }
    }
    let mut found: HashSet<EdgePath> = HashSet::new();

    fn extend(
        g: &crate::marked_graph::MetricGraph,
        out_arcs: &[Vec<OrientedEdge>],
        start: usize,
        path: &mut EdgePath,
        visited: &mut HashSet<usize>,
        found: &mut HashSet<EdgePath>,
    ) {
        let last = *path.last().unwrap();
        let at = g.target(last);
        if at == start {
            found.insert(canonical_cycle(path));
            return;
        }
        if visited.contains(&at) {
            return;
        }
        visited.insert(at);
        for &e in &out_arcs[at] {
            if e == last.reverse() {
                continue;
            }
            path.push(e);
            extend(g, out_arcs, start, path, visited, found);
            path.pop();
        }
        visited.remove(&at);
    }

    for start in 0..g.n_vertices() {
        for &e in &out_arcs[start] {
            let mut path = vec![e];
            let mut visited = HashSet::from([start]);
            extend(g, &out_arcs, start, &mut path, &mut visited, &mut found);
        }
    }
    let mut circles: Vec<EdgePath> = found.into_iter().collect();
    circles.sort();
    circles
}

/// Embedded paths from a vertex of `c1` to a vertex of `c2` whose interior
/// avoids both circles.
fn connecting_paths(t: &MarkedGraph, v1: &HashSet<usize>, v2: &HashSet<usize>) -> Vec<EdgePath> {
    let g = t.graph();
    let mut out_arcs: Vec<Vec<OrientedEdge>> = vec![Vec::new(); g.n_vertices()];
    for pair in 0..g.n_edges() {
        for e in [OrientedEdge::forward(pair), OrientedEdge::backward(pair)] {
            out_arcs[g.source(e)].push(e);
        }
    }
    let mut result = Vec::new();

    fn extend(
        g: &crate::marked_graph::MetricGraph,
        out_arcs: &[Vec<OrientedEdge>],
        v1: &HashSet<usize>,
        v2: &HashSet<usize>,
        path: &mut EdgePath,
        interior: &mut HashSet<usize>,
        result: &mut Vec<EdgePath>,
    ) {
        let at = g.target(*path.last().unwrap());
        if v2.contains(&at) {
            result.push(path.clone());
            return;
        }
        if v1.contains(&at) || interior.contains(&at) {
            return;
        }
        interior.insert(at);
        for &e in &out_arcs[at] {
            path.push(e);
            extend(g, out_arcs, v1, v2, path, interior, result);
            path.pop();
        }
        interior.remove(&at);
    }

    for &u in v1 {
        for &e in &out_arcs[u] {
            let mut path = vec![e];
            let mut interior = HashSet::new();
            extend(g, &out_arcs, v1, v2, &mut path, &mut interior, &mut result);
        }
    }
    result
}

/// The complete candidate list of a marked graph: embedded circles, bouquets
/// of two circles (both relative orientations), and barbells (both relative
/// orientations). A loop and its reverse are identified.
pub fn enumerate_candidates(t: &MarkedGraph) -> Vec<CandidateLoop> {
    let circles = embedded_circles(t);
    let mut seen: HashSet<EdgePath> = HashSet::new();
    let mut out: Vec<CandidateLoop> = Vec::new();
    let mut push = |shape: CandidateShape, path: EdgePath, out: &mut Vec<CandidateLoop>| {
        let canon = canonical_cycle(&path);
        if !seen.insert(canon.clone()) {
            return;
        }
        debug_assert!(crosses_each_edge_at_most_twice(&canon));
        let word = CyclicWord::from_word(&t.word_of_loop(&canon));
        debug_assert!(!word.is_empty(), "candidate word must be nontrivial");
        out.push(CandidateLoop {
            shape,
            edge_path: canon,
            word,
        });
    };

    for c in &circles {
        push(CandidateShape::Circle, c.clone(), &mut out);
    }

    for (i, c1) in circles.iter().enumerate() {
        let verts1 = cycle_vertices(t, c1);
        for c2 in circles.iter().skip(i + 1) {
            let verts2 = cycle_vertices(t, c2);
            let common: Vec<usize> = verts1.intersection(&verts2).copied().collect();
            if common.len() == 1 {
                let v = common[0];
                let a = rotate_to_vertex(t, c1, v);
                let b = rotate_to_vertex(t, c2, v);
                let mut gamma = a.clone();
                gamma.extend(b.iter().copied());
                push(CandidateShape::Bouquet, gamma, &mut out);
                let mut gamma = a;
                gamma.extend(reverse_path(&b));
                push(CandidateShape::Bouquet, gamma, &mut out);
            } else if common.is_empty() {
                for eta in connecting_paths(t, &verts1, &verts2) {
                    let u = t.graph().source(eta[0]);
                    let w = t.graph().target(*eta.last().unwrap());
                    let a = rotate_to_vertex(t, c1, u);
                    let b = rotate_to_vertex(t, c2, w);
                    for b_variant in [b.clone(), reverse_path(&b)] {
                        let mut gamma = a.clone();
                        gamma.extend(eta.iter().copied());
                        gamma.extend(b_variant);
                        gamma.extend(reverse_path(&eta));
                        push(CandidateShape::Barbell, gamma, &mut out);
                    }
                }
            }
        }
    }

    out.sort_by(|x, y| x.word.cmp(&y.word).then(x.edge_path.cmp(&y.edge_path)));
    out
}

fn crosses_each_edge_at_most_twice(path: &[OrientedEdge]) -> bool {
    let mut counts = std::collections::HashMap::new();
    for e in path {
        *counts.entry(e.pair).or_insert(0usize) += 1;
    }
    counts.values().all(|&c| c <= 2)
}

/// Exact stretch factor Λ(T, T2) via the candidate maximum; the witness is the
/// shortlex-least maximizing candidate word.
pub fn stretch_factor(t: &MarkedGraph, t2: &MarkedGraph) -> Result<StretchReport, StretchError> {
    if t.rank() != t2.rank() {
        return Err(StretchError::RankMismatch {
            from: t.rank(),
            to: t2.rank(),
        });
    }
    Ok(stretch_factor_into(t, |w| t2.translation_length(w)))
}

/// Candidate maximum of `len_to(w) / ||w||_T`. Exact for any target
/// translation-length function, since the source is free and simplicial.
pub fn stretch_factor_into<F>(t: &MarkedGraph, len_to: F) -> StretchReport
where
    F: Fn(&Word) -> Rational,
{
    let mut table = Vec::new();
    let mut lambda = ExtRational::zero();
    let mut witness: Option<CyclicWord> = None;
    for cand in enumerate_candidates(t) {
        let len_from = t.path_length(&cand.edge_path);
        debug_assert_eq!(len_from, t.translation_length(&cand.word.to_word()));
        let len_to = len_to(&cand.word.to_word());
        let ratio = ExtRational::ratio(&len_to, &len_from);
        if ratio > lambda {
            lambda = ratio.clone();
            witness = Some(cand.word.clone());
        } else if ratio == lambda {
            if let Some(wit) = &witness {
                if cand.word.shortlex_cmp(wit).is_lt() {
                    witness = Some(cand.word.clone());
                }
            }
        }
        table.push(CandidateRatio {
            word: cand.word,
            shape: Some(cand.shape),
            len_from,
            len_to,
            ratio,
        });
    }
    StretchReport {
        lambda,
        witness,
        table,
    }
}

/// Max of `f_to(w)/f_from(w)` over conjugacy classes of length <= `max_len`
/// (conventions 0/0 = 0, positive/0 = inf). The witness is the first
/// maximizer in enumeration (shortlex) order.
pub fn max_ratio_over_classes<F, G>(
    rank: usize,
    max_len: usize,
    f_from: F,
    f_to: G,
) -> (ExtRational, Option<(CyclicWord, Rational, Rational)>)
where
    F: Fn(&Word) -> Rational,
    G: Fn(&Word) -> Rational,
{
    let mut lambda = ExtRational::zero();
    let mut best: Option<(CyclicWord, Rational, Rational)> = None;
    for c in enumerate_cyclic_words(rank, max_len) {
        let word = c.to_word();
        let den = f_from(&word);
        let num = f_to(&word);
        let ratio = ExtRational::ratio(&num, &den);
        if ratio > lambda {
            lambda = ratio;
            best = Some((c, den, num));
        }
    }
    (lambda, best)
}

/// Brute-force stretch bound: max ratio over all conjugacy classes of length
/// at most `max_len`. Monotone in `max_len`; equals `stretch_factor` once
/// `max_len` reaches the candidate word-length bound.
pub fn brute_force_stretch(
    t: &MarkedGraph,
    t2: &MarkedGraph,
    max_len: usize,
) -> Result<StretchReport, StretchError> {
    if t.rank() != t2.rank() {
        return Err(StretchError::RankMismatch {
            from: t.rank(),
            to: t2.rank(),
        });
    }
    let (lambda, best) = max_ratio_over_classes(
        t.rank(),
        max_len,
        |w| t.translation_length(w),
        |w| t2.translation_length(w),
    );
    let (witness, table) = match best {
        Some((word, len_from, len_to)) => {
            let ratio = ExtRational::ratio(&len_to, &len_from);
            (
                Some(word.clone()),
                vec![CandidateRatio {
                    word,
                    shape: None,
                    len_from,
                    len_to,
                    ratio,
                }],
            )
        }
        None => (None, Vec::new()),
    };
    Ok(StretchReport {
        lambda,
        witness,
        table,
    })
}

/// Longest candidate word of `t`, the length bound that makes the brute force
/// reach the true stretch factor.
pub fn candidate_word_length_bound(t: &MarkedGraph) -> usize {
    enumerate_candidates(t)
        .iter()
        .map(|c| c.word.len())
        .max()
        .unwrap_or(1)
}

/// The asymmetric Lipschitz distance: log of the stretch factor between the
/// covolume-1 representatives.
pub fn lipschitz_distance(t: &MarkedGraph, t2: &MarkedGraph) -> Result<f64, StretchError> {
    let report = stretch_factor(&t.normalize_covolume(), &t2.normalize_covolume())?;
    Ok(report.lambda.to_f64().ln())
}

/// Λ on covolume-1 representatives as an exact rational (its log is the
/// Lipschitz distance).
pub fn normalized_stretch(
    t: &MarkedGraph,
    t2: &MarkedGraph,
) -> Result<StretchReport, StretchError> {
    stretch_factor(&t.normalize_covolume(), &t2.normalize_covolume())
}
