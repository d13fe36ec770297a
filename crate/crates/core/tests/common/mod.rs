//! Seeded random instances shared by the property and acceptance suites.
//! Each suite compiles its own copy, so not every helper is used in both.
#![allow(dead_code)]

use cvn_core::boundary::{End, PullSpec, PulledTree, SplittingKind, SplittingTree};
use cvn_core::marked_graph::{self, MarkedGraph, Marking, OrientedEdge};
use cvn_core::rational::{rational, Rational};
use cvn_core::whitehead::{relabel_moves, type_ii_moves, WhiteheadMove};
use cvn_core::words::{Letter, Word};
use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational in [1/4, 4] with small denominator.
pub fn random_length(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=5i64);
    let lo = (den + 3) / 4; // ceil(den/4)
    let num = rng.gen_range(lo..=4 * den);
    rational(num, den)
}

pub fn random_reduced_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        loop {
            let idx = rng.gen_range(1..=rank);
            let letter = if rng.gen_bool(0.5) {
                Letter::generator(idx)
            } else {
                Letter::inverse_generator(idx)
            };
            if letters.last() != Some(&letter.inverse()) {
                letters.push(letter);
                break;
            }
        }
    }
    Word::reduce(letters)
}

/// A random connected metric graph of the given rank with at most `max_edges`
/// edges and no valence-1 vertices, marked by spanning-tree collapse.
pub fn random_marked_graph(rng: &mut ChaCha8Rng, rank: usize, max_edges: usize) -> MarkedGraph {
    loop {
        let max_vertices = (max_edges + 1).saturating_sub(rank).max(1);
        let n_vertices = rng.gen_range(1..=max_vertices.min(3));
        let n_edges = n_vertices - 1 + rank;
        if n_edges > max_edges {
            continue;
        }
        // Spanning tree: vertex i > 0 attaches to a previous vertex.
        let mut endpoints: Vec<(usize, usize)> = Vec::new();
        for v in 1..n_vertices {
            endpoints.push((rng.gen_range(0..v), v));
        }
        let tree_edges: Vec<usize> = (0..n_vertices - 1).collect();
        for _ in 0..rank {
            endpoints.push((rng.gen_range(0..n_vertices), rng.gen_range(0..n_vertices)));
        }
        let lengths: Vec<Rational> = (0..n_edges).map(|_| random_length(rng)).collect();
        let graph = marked_graph::MetricGraphBuilder {
            vertex_names: (0..n_vertices).map(|v| format!("v{v}")).collect(),
            edge_names: (0..n_edges).map(|e| format!("e{e}")).collect(),
            endpoints: endpoints.clone(),
            lengths,
        }
        .build();

        // Collapse marking: petal i is the i-th non-tree edge, connected to the
        // base through the spanning tree.
        let base = 0usize;
        let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_vertices];
        for &e in &tree_edges {
            let (a, b) = endpoints[e];
            tree_adj[a].push((b, e));
            tree_adj[b].push((a, e));
        }
        // BFS parents.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n_vertices];
        let mut order = vec![base];
        let mut seen = vec![false; n_vertices];
        seen[base] = true;
        while let Some(v) = order.pop() {
            for &(u, e) in &tree_adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((v, e));
                    order.push(u);
                }
            }
        }
        let path_from_base = |mut v: usize| -> Vec<OrientedEdge> {
            let mut rev = Vec::new();
            while let Some((p, e)) = parent[v] {
                let oe = if endpoints[e] == (p, v) {
                    OrientedEdge::forward(e)
                } else {
                    OrientedEdge::backward(e)
                };
                rev.push(oe);
                v = p;
            }
            rev.reverse();
            rev
        };
        let generator_paths: Vec<Vec<OrientedEdge>> = (n_vertices - 1..n_edges)
            .map(|e| {
                let (a, b) = endpoints[e];
                let mut path = path_from_base(a);
                path.push(OrientedEdge::forward(e));
                let mut back = path_from_base(b);
                back.reverse();
                let back: Vec<OrientedEdge> = back.into_iter().map(|oe| oe.reverse()).collect();
                path.extend(back);
                marked_graph::tighten(&path)
            })
            .collect();
        let marking = Marking {
            base,
            spanning_tree: tree_edges,
            generator_paths,
        };
        match MarkedGraph::new(graph, marking, rank) {
            Ok(t) => return t,
            Err(_) => continue,
        }
    }
}

/// Composition of `count` random Whitehead moves, as substitution images.
pub fn random_automorphism(rng: &mut ChaCha8Rng, rank: usize, count: usize) -> Vec<Word> {
    let type2 = type_ii_moves(rank);
    let relabels = relabel_moves(rank);
    let mut images: Vec<Word> = (1..=rank)
        .map(|i| Word::letter(Letter::generator(i)))
        .collect();
    for _ in 0..count {
        let mv: &WhiteheadMove = if rng.gen_bool(0.5) {
            &type2[rng.gen_range(0..type2.len())]
        } else {
            &relabels[rng.gen_range(0..relabels.len())]
        };
        images = images.iter().map(|w| mv.apply_word(w, rank)).collect();
    }
    images
}

/// A random relabeling (signed permutation) as substitution images.
pub fn random_relabel(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Word> {
    let relabels = relabel_moves(rank);
    relabels[rng.gen_range(0..relabels.len())].to_substitution(rank)
}

/// Random cyclically reduced non-proper-power word over generator indices
/// `lo..=hi`, of length 1..=3.
pub fn random_pull_element(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=3usize);
        let span = hi - lo + 1;
        let raw = random_reduced_word(rng, span, len);
        // Shift letters into the [lo, hi] index range.
        let shifted = Word::reduce(raw.letters().iter().map(|l| {
            if l.is_inverse() {
                Letter::inverse_generator(l.index() + lo - 1)
            } else {
                Letter::generator(l.index() + lo - 1)
            }
        }));
        if shifted.is_empty() {
            continue;
        }
        if !shifted.is_cyclically_reduced() {
            continue;
        }
        if shifted.is_proper_power().unwrap().is_some() {
            continue;
        }
        return shifted;
    }
}

/// A random pulled tree: HNN or amalgam, random edge length, 0..=2 pulls.
pub fn random_pulled_tree(rng: &mut ChaCha8Rng, rank: usize) -> PulledTree {
    let kind = if rank >= 2 && rng.gen_bool(0.5) {
        SplittingKind::Hnn
    } else {
        SplittingKind::Amalgam {
            split_index: rng.gen_range(1..rank),
        }
    };
    random_pulled_tree_of_kind(rng, rank, kind)
}

/// A random pulled tree over a prescribed splitting.
pub fn random_pulled_tree_of_kind(
    rng: &mut ChaCha8Rng,
    rank: usize,
    kind: SplittingKind,
) -> PulledTree {
    let edge_length = random_length(rng);
    let base = SplittingTree {
        rank,
        kind,
        edge_length: edge_length.clone(),
    };
    let mut pulls: Vec<PullSpec> = Vec::new();
    let mut remaining = edge_length;
    for end in [End::One, End::Two] {
        if rng.gen_bool(0.4) || remaining.is_zero() {
            continue;
        }
        let (lo, hi) = match kind {
            SplittingKind::Hnn => (1, rank - 1),
            SplittingKind::Amalgam { split_index } => match end {
                End::One => (1, split_index),
                End::Two => (split_index + 1, rank),
            },
        };
        let element = random_pull_element(rng, lo, hi);
        // Fraction of the remaining length; occasionally the whole of it.
        let num = rng.gen_range(1..=8i64);
        let frac = if rng.gen_bool(0.1) {
            rational(1, 1)
        } else {
            rational(num, 8)
        };
        let length = &remaining * frac;
        remaining = &remaining - &length;
        pulls.push(PullSpec {
            end,
            element,
            length,
        });
    }
    PulledTree::new(base, pulls).expect("random pulled tree is valid")
}

/// A random word that is not elliptic in the given tree.
pub fn random_hyperbolic_word(rng: &mut ChaCha8Rng, tree: &PulledTree, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = random_reduced_word(rng, tree.rank(), len);
        if w.is_empty() {
            continue;
        }
        if tree.folding_oracle_length(&w).is_ok() {
            return w;
        }
    }
}
