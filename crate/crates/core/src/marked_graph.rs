//! Marked metric graphs: points of unprojectivized outer space.
//!
//! A point is a finite connected metric graph without valence-1 vertices,
//! first Betti number equal to the rank, together with a marking: a base
//! vertex, a spanning tree, and one closed edge path at the base per
//! generator. The marking words (spanning-tree collapses of the generator
//! paths) must form a basis of the free group on the graph's petals; this is
//! checked by Stallings folding, and the folded memories give the inverse
//! direction (edge loop -> group word) used for candidate reporting.

use crate::fold;
use crate::rational::{parse_rational, Rational};
use crate::words::{Letter, Word, WordError};
use num_traits::Zero;
use serde::Deserialize;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> GraphError {
    GraphError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

/// An oriented edge: index of the geometric edge pair plus a direction flag.
/// `reversed = false` is the orientation declared in the input file.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub pair: usize,
    pub reversed: bool,
}

impl OrientedEdge {
    pub fn forward(pair: usize) -> Self {
        OrientedEdge {
            pair,
            reversed: false,
        }
    }

    pub fn backward(pair: usize) -> Self {
        OrientedEdge {
            pair,
            reversed: true,
        }
    }

    pub fn reverse(self) -> Self {
        OrientedEdge {
            pair: self.pair,
            reversed: !self.reversed,
        }
    }
}

pub type EdgePath = Vec<OrientedEdge>;

/// Frees an edge path of back-tracks (an edge followed by its reverse).
pub fn tighten(path: &[OrientedEdge]) -> EdgePath {
    let mut stack: EdgePath = Vec::with_capacity(path.len());
    for &e in path {
        if stack.last() == Some(&e.reverse()) {
            stack.pop();
        } else {
            stack.push(e);
        }
    }
    stack
}

/// Tightens a path regarded as a cyclic loop: free tightening plus removal of
/// matching first/last edges.
pub fn tighten_cyclic(path: &[OrientedEdge]) -> EdgePath {
    let mut p = tighten(path);
    let mut lo = 0usize;
    let mut hi = p.len();
    while hi - lo >= 2 && p[lo] == p[hi - 1].reverse() {
        lo += 1;
        hi -= 1;
    }
    p.truncate(hi);
    p.drain(..lo);
    p
}

#[derive(Clone, Debug)]
pub struct MetricGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    /// Per edge pair, endpoints in file orientation.
    endpoints: Vec<(usize, usize)>,
    lengths: Vec<Rational>,
}

impl MetricGraph {
    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn n_edges(&self) -> usize {
        self.endpoints.len()
    }

    pub fn betti(&self) -> usize {
        self.n_edges() + 1 - self.n_vertices()
    }

    pub fn source(&self, e: OrientedEdge) -> usize {
        let (a, b) = self.endpoints[e.pair];
        if e.reversed {
            b
        } else {
            a
        }
    }

    pub fn target(&self, e: OrientedEdge) -> usize {
        self.source(e.reverse())
    }

    pub fn length(&self, pair: usize) -> &Rational {
        &self.lengths[pair]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, pair: usize) -> &str {
        &self.edge_names[pair]
    }

    pub fn volume(&self) -> Rational {
        self.lengths.iter().fold(Rational::zero(), |acc, l| acc + l)
    }

    fn degree(&self, v: usize) -> usize {
        self.endpoints
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    fn is_connected(&self) -> bool {
        if self.n_vertices() == 0 {
            return false;
        }
        let mut seen = vec![false; self.n_vertices()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.endpoints {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Plain-field constructor for [`MetricGraph`]; validation happens when the
/// graph is combined with a marking in [`MarkedGraph::new`].
pub struct MetricGraphBuilder {
    pub vertex_names: Vec<String>,
    pub edge_names: Vec<String>,
    pub endpoints: Vec<(usize, usize)>,
    pub lengths: Vec<Rational>,
}

impl MetricGraphBuilder {
    pub fn build(self) -> MetricGraph {
        MetricGraph {
            vertex_names: self.vertex_names,
            edge_names: self.edge_names,
            endpoints: self.endpoints,
            lengths: self.lengths,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Marking {
    pub base: usize,
    pub spanning_tree: Vec<usize>,
    pub generator_paths: Vec<EdgePath>,
}

#[derive(Clone, Debug)]
pub struct MarkedGraph {
    graph: MetricGraph,
    marking: Marking,
    rank: usize,
    /// Petal index (into the collapsed rose) of each non-tree edge pair.
    petal_of_pair: Vec<Option<usize>>,
    /// Collapsed marking words: generator i as a word in the petals.
    marking_petal_words: Vec<Word>,
    /// Inverse marking: petal j as a word in the generators.
    petal_words_inverted: Vec<Word>,
}

impl MarkedGraph {
    pub fn new(
        graph: MetricGraph,
        marking: Marking,
        rank: usize,
    ) -> Result<MarkedGraph, GraphError> {
        validate_graph(&graph, rank)?;
        validate_marking(&graph, &marking, rank)?;

        let tree: HashSet<usize> = marking.spanning_tree.iter().copied().collect();
        let mut petal_of_pair = vec![None; graph.n_edges()];
        let mut next = 0usize;
        for (pair, slot) in petal_of_pair.iter_mut().enumerate() {
            if !tree.contains(&pair) {
                *slot = Some(next);
                next += 1;
            }
        }
        debug_assert_eq!(next, rank);

        let collapse = |path: &EdgePath| -> Word {
            Word::reduce(path.iter().filter_map(|e| {
                petal_of_pair[e.pair].map(|j| {
                    if e.reversed {
                        Letter::inverse_generator(j + 1)
                    } else {
                        Letter::generator(j + 1)
                    }
                })
            }))
        };
        let marking_petal_words: Vec<Word> =
            marking.generator_paths.iter().map(&collapse).collect();
        if !fold::generates_free_group(&marking_petal_words, rank) {
            return Err(invalid(
                "marking.paths",
                "collapsed marking words do not form a basis of the fundamental group",
            ));
        }
        let petal_words_inverted = fold::invert_basis(&marking_petal_words, rank)
            .expect("basis inversion succeeds after the basis test");

        Ok(MarkedGraph {
            graph,
            marking,
            rank,
            petal_of_pair,
            marking_petal_words,
            petal_words_inverted,
        })
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn marking_petal_words(&self) -> &[Word] {
        &self.marking_petal_words
    }

    /// The tightened closed edge path representing the conjugacy class of `w`.
    pub fn loop_of_word(&self, w: &Word) -> EdgePath {
        let mut path: EdgePath = Vec::new();
        for l in w.letters() {
            let gen_path = &self.marking.generator_paths[l.index() - 1];
            if l.is_inverse() {
                path.extend(gen_path.iter().rev().map(|e| e.reverse()));
            } else {
                path.extend(gen_path.iter().copied());
            }
        }
        tighten_cyclic(&path)
    }

    /// Metric length of an edge path.
    pub fn path_length(&self, path: &[OrientedEdge]) -> Rational {
        path.iter()
            .fold(Rational::zero(), |acc, e| acc + self.graph.length(e.pair))
    }

    /// `||w||`: the length of the cyclically tightened loop representing `w`.
    pub fn translation_length(&self, w: &Word) -> Rational {
        self.path_length(&self.loop_of_word(w))
    }

    /// The free-group word (up to conjugacy) carried by a closed edge path.
    pub fn word_of_loop(&self, path: &[OrientedEdge]) -> Word {
        let petal_word = Word::reduce(path.iter().filter_map(|e| {
            self.petal_of_pair[e.pair].map(|j| {
                if e.reversed {
                    Letter::inverse_generator(j + 1)
                } else {
                    Letter::generator(j + 1)
                }
            })
        }));
        petal_word.substitute(&self.petal_words_inverted)
    }

    pub fn quotient_volume(&self) -> Rational {
        self.graph.volume()
    }

    pub fn rescale(&self, factor: &Rational) -> MarkedGraph {
        assert!(
            factor > &Rational::zero(),
            "rescale factor must be positive"
        );
        let mut out = self.clone();
        for l in out.graph.lengths.iter_mut() {
            *l = &*l * factor;
        }
        out
    }

    pub fn normalize_covolume(&self) -> MarkedGraph {
        let vol = self.quotient_volume();
        self.rescale(&(Rational::new(1.into(), 1.into()) / vol))
    }

    /// Precomposes the marking with the automorphism `x_i -> images[i]`.
    /// Satisfies `||w||_{remark(T, φ)} = ||φ(w)||_T`.
    pub fn remark(&self, images: &[Word]) -> Result<MarkedGraph, GraphError> {
        if images.len() != self.rank {
            return Err(invalid("remark.images", "one image per generator required"));
        }
        if images.iter().any(|im| im.max_index() > self.rank) {
            return Err(invalid(
                "remark.images",
                "image uses a letter beyond the rank",
            ));
        }
        if !fold::generates_free_group(images, self.rank) {
            return Err(invalid(
                "remark.images",
                "images do not define an automorphism",
            ));
        }
        let new_paths: Vec<EdgePath> = images
            .iter()
            .map(|im| {
                let mut path: EdgePath = Vec::new();
                for l in im.letters() {
                    let gen_path = &self.marking.generator_paths[l.index() - 1];
                    if l.is_inverse() {
                        path.extend(gen_path.iter().rev().map(|e| e.reverse()));
                    } else {
                        path.extend(gen_path.iter().copied());
                    }
                }
                tighten(&path)
            })
            .collect();
        let marking = Marking {
            base: self.marking.base,
            spanning_tree: self.marking.spanning_tree.clone(),
            generator_paths: new_paths,
        };
        MarkedGraph::new(self.graph.clone(), marking, self.rank)
    }

    /// Merges valence-2 vertices away (the base vertex is kept). Translation
    /// lengths are unchanged.
    pub fn merge_valence_two(&self) -> MarkedGraph {
        let mut current = self.clone();
        loop {
            let candidate = (0..current.graph.n_vertices())
                .find(|&v| v != current.marking.base && current.graph.degree(v) == 2);
            let Some(v) = candidate else {
                return current;
            };
            current = current.contract_valence_two(v);
        }
    }

    fn contract_valence_two(&self, v: usize) -> MarkedGraph {
        let g = &self.graph;
        // The two half-edges at v, as oriented edges pointing out of v.
        let mut out_arcs: Vec<OrientedEdge> = Vec::new();
        for pair in 0..g.n_edges() {
            let (a, b) = g.endpoints[pair];
            if a == v {
                out_arcs.push(OrientedEdge::forward(pair));
            }
            if b == v {
                out_arcs.push(OrientedEdge::backward(pair));
            }
        }
        assert_eq!(out_arcs.len(), 2, "vertex is not valence 2");
        let (e_out, f_out) = (out_arcs[0], out_arcs[1]);
        assert_ne!(e_out.pair, f_out.pair, "valence-2 loop component");

        // New edge spans target(e_out) -> v -> target(f_out), oriented from the
        // e side to the f side; it replaces both pairs.
        let e_in = e_out.reverse();
        let u = g.source(e_in);
        let w_vtx = g.target(f_out);
        let new_len = g.length(e_out.pair) + g.length(f_out.pair);

        let mut vertex_map = vec![0usize; g.n_vertices()];
        let mut new_vertex_names = Vec::new();
        for old in 0..g.n_vertices() {
            if old == v {
                continue;
            }
            vertex_map[old] = new_vertex_names.len();
            new_vertex_names.push(g.vertex_names[old].clone());
        }

        let mut pair_map = vec![None; g.n_edges()];
        let mut new_names = Vec::new();
        let mut new_endpoints = Vec::new();
        let mut new_lengths = Vec::new();
        for pair in 0..g.n_edges() {
            if pair == e_out.pair || pair == f_out.pair {
                continue;
            }
            pair_map[pair] = Some(new_names.len());
            new_names.push(g.edge_names[pair].clone());
            let (a, b) = g.endpoints[pair];
            new_endpoints.push((vertex_map[a], vertex_map[b]));
            new_lengths.push(g.lengths[pair].clone());
        }
        let merged_pair = new_names.len();
        new_names.push(g.edge_names[e_out.pair].clone());
        new_endpoints.push((vertex_map[u], vertex_map[w_vtx]));
        new_lengths.push(new_len);

        // Oriented-edge rewriting: e_in (u -> v) becomes the merged edge,
        // f_out (v -> w) disappears (it is subsumed by the merged edge).
        let rewrite = |e: OrientedEdge| -> Vec<OrientedEdge> {
            if e.pair == e_in.pair {
                let merged = OrientedEdge::forward(merged_pair);
                if e == e_in {
                    vec![merged]
                } else {
                    vec![merged.reverse()]
                }
            } else if e.pair == f_out.pair {
                Vec::new()
            } else {
                vec![OrientedEdge {
                    pair: pair_map[e.pair].unwrap(),
                    reversed: e.reversed,
                }]
            }
        };

        let new_graph = MetricGraph {
            vertex_names: new_vertex_names,
            edge_names: new_names,
            endpoints: new_endpoints,
            lengths: new_lengths,
        };

        let old_tree: HashSet<usize> = self.marking.spanning_tree.iter().copied().collect();
        let both_in_tree = old_tree.contains(&e_out.pair) && old_tree.contains(&f_out.pair);
        let mut new_tree: Vec<usize> = self
            .marking
            .spanning_tree
            .iter()
            .filter_map(|&p| pair_map[p])
            .collect();
        if both_in_tree {
            new_tree.push(merged_pair);
        }

        let new_paths: Vec<EdgePath> = self
            .marking
            .generator_paths
            .iter()
            .map(|path| tighten(&path.iter().flat_map(|&e| rewrite(e)).collect::<Vec<_>>()))
            .collect();

        let marking = Marking {
            base: vertex_map[self.marking.base],
            spanning_tree: new_tree,
            generator_paths: new_paths,
        };
        MarkedGraph::new(new_graph, marking, self.rank)
            .expect("valence-2 contraction preserves validity")
    }
}

fn validate_graph(g: &MetricGraph, rank: usize) -> Result<(), GraphError> {
    if rank == 0 {
        return Err(invalid("rank", "rank must be at least 1"));
    }
    if rank > 26 {
        return Err(invalid("rank", "the word alphabet a-z caps the rank at 26"));
    }
    if g.n_vertices() == 0 {
        return Err(invalid("vertices", "at least one vertex required"));
    }
    let mut seen = HashSet::new();
    for name in &g.vertex_names {
        if !seen.insert(name.clone()) {
            return Err(invalid(
                "vertices",
                format!("duplicate vertex name {name:?}"),
            ));
        }
    }
    let mut seen = HashSet::new();
    for (i, name) in g.edge_names.iter().enumerate() {
        if !seen.insert(name.clone()) {
            return Err(invalid(
                format!("edges[{i}].id"),
                format!("duplicate edge id {name:?}"),
            ));
        }
    }
    for (i, l) in g.lengths.iter().enumerate() {
        if l <= &Rational::zero() {
            return Err(invalid(
                format!("edges[{i}].length"),
                "edge lengths must be positive",
            ));
        }
    }
    if !g.is_connected() {
        return Err(invalid("edges", "graph is not connected"));
    }
    if g.n_edges() + 1 < g.n_vertices() {
        return Err(invalid("edges", "too few edges to be connected"));
    }
    if g.betti() != rank {
        return Err(invalid(
            "edges",
            format!(
                "first Betti number {} does not match rank {}",
                g.betti(),
                rank
            ),
        ));
    }
    if let Some(v) = (0..g.n_vertices()).find(|&v| g.degree(v) == 1) {
        return Err(invalid(
            "vertices",
            format!("vertex {:?} has valence 1", g.vertex_name(v)),
        ));
    }
    Ok(())
}

fn validate_marking(g: &MetricGraph, m: &Marking, rank: usize) -> Result<(), GraphError> {
    if m.base >= g.n_vertices() {
        return Err(invalid("marking.base", "unknown base vertex"));
    }
    if m.spanning_tree.len() + 1 != g.n_vertices() {
        return Err(invalid(
            "spanning_tree",
            format!(
                "a spanning tree of {} vertices needs {} edges, got {}",
                g.n_vertices(),
                g.n_vertices() - 1,
                m.spanning_tree.len()
            ),
        ));
    }
    // Union-find acyclicity; |V|-1 acyclic edges also span.
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
            r
        } else {
            v
        }
    }
    let mut parent: Vec<usize> = (0..g.n_vertices()).collect();
    let mut tree_seen = HashSet::new();
    for &pair in &m.spanning_tree {
        if pair >= g.n_edges() {
            return Err(invalid("spanning_tree", "unknown edge id"));
        }
        if !tree_seen.insert(pair) {
            return Err(invalid(
                "spanning_tree",
                format!("edge {:?} listed twice", g.edge_name(pair)),
            ));
        }
        let (a, b) = g.endpoints[pair];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(invalid(
                "spanning_tree",
                format!("edge {:?} closes a cycle in the tree", g.edge_name(pair)),
            ));
        }
        parent[ra] = rb;
    }
    if m.generator_paths.len() != rank {
        return Err(invalid(
            "marking.paths",
            format!(
                "expected {rank} generator paths, got {}",
                m.generator_paths.len()
            ),
        ));
    }
    for (i, path) in m.generator_paths.iter().enumerate() {
        let field = format!("marking.paths[{i}]");
        if path.is_empty() {
            return Err(invalid(field, "generator path is empty"));
        }
        let mut at = m.base;
        for &e in path {
            if e.pair >= g.n_edges() {
                return Err(invalid(field, "unknown edge id"));
            }
            if g.source(e) != at {
                return Err(invalid(
                    field,
                    format!(
                        "path breaks at edge {:?}: expected source {:?}",
                        g.edge_name(e.pair),
                        g.vertex_name(at)
                    ),
                ));
            }
            at = g.target(e);
        }
        if at != m.base {
            return Err(invalid(field, "path does not return to the base vertex"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawEdge {
    id: String,
    from: String,
    to: String,
    length: String,
}

#[derive(Deserialize)]
struct RawMarking {
    base: String,
    paths: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawMarkedGraph {
    #[serde(rename = "type")]
    kind: String,
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    spanning_tree: Vec<String>,
    marking: RawMarking,
}

impl MarkedGraph {
    pub fn from_json_value(value: &serde_json::Value) -> Result<MarkedGraph, GraphError> {
        let raw: RawMarkedGraph = serde_json::from_value(value.clone())
            .map_err(|e| invalid("document", e.to_string()))?;
        if raw.kind != "marked_graph" {
            return Err(invalid(
                "type",
                format!("expected \"marked_graph\", got {:?}", raw.kind),
            ));
        }
        let vertex_index: HashMap<&str, usize> = raw
            .vertices
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut edge_names = Vec::new();
        let mut endpoints = Vec::new();
        let mut lengths = Vec::new();
        let mut edge_index: HashMap<String, usize> = HashMap::new();
        for (i, e) in raw.edges.iter().enumerate() {
            let from = *vertex_index.get(e.from.as_str()).ok_or_else(|| {
                invalid(
                    format!("edges[{i}].from"),
                    format!("unknown vertex {:?}", e.from),
                )
            })?;
            let to = *vertex_index.get(e.to.as_str()).ok_or_else(|| {
                invalid(
                    format!("edges[{i}].to"),
                    format!("unknown vertex {:?}", e.to),
                )
            })?;
            let length = parse_rational(&e.length)
                .map_err(|err| invalid(format!("edges[{i}].length"), err.to_string()))?;
            edge_index.insert(e.id.clone(), i);
            edge_names.push(e.id.clone());
            endpoints.push((from, to));
            lengths.push(length);
        }
        let graph = MetricGraph {
            vertex_names: raw.vertices.clone(),
            edge_names,
            endpoints,
            lengths,
        };
        let tree = raw
            .spanning_tree
            .iter()
            .map(|id| {
                edge_index
                    .get(id)
                    .copied()
                    .ok_or_else(|| invalid("spanning_tree", format!("unknown edge id {id:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let base = *vertex_index.get(raw.marking.base.as_str()).ok_or_else(|| {
            invalid(
                "marking.base",
                format!("unknown vertex {:?}", raw.marking.base),
            )
        })?;
        let parse_path = |(i, path): (usize, &Vec<String>)| -> Result<EdgePath, GraphError> {
            path.iter()
                .map(|step| {
                    let (reversed, id) = match step.strip_prefix('~') {
                        Some(rest) => (true, rest),
                        None => (false, step.as_str()),
                    };
                    edge_index
                        .get(id)
                        .map(|&pair| OrientedEdge { pair, reversed })
                        .ok_or_else(|| {
                            invalid(
                                format!("marking.paths[{i}]"),
                                format!("unknown edge id {id:?}"),
                            )
                        })
                })
                .collect()
        };
        let generator_paths = raw
            .marking
            .paths
            .iter()
            .enumerate()
            .map(parse_path)
            .collect::<Result<Vec<_>, _>>()?;
        let marking = Marking {
            base,
            spanning_tree: tree,
            generator_paths,
        };
        MarkedGraph::new(graph, marking, raw.rank)
    }

    pub fn from_json_str(s: &str) -> Result<MarkedGraph, GraphError> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| invalid("document", e.to_string()))?;
        MarkedGraph::from_json_value(&value)
    }
}

/// Programmatic constructors used by tests and examples.
pub mod build {
    use super::*;

    /// The rose with `lengths.len()` petals; generator i is petal i.
    pub fn rose(lengths: &[Rational]) -> MarkedGraph {
        let rank = lengths.len();
        let graph = MetricGraph {
            vertex_names: vec!["v0".into()],
            edge_names: (0..rank).map(|i| format!("e{i}")).collect(),
            endpoints: vec![(0, 0); rank],
            lengths: lengths.to_vec(),
        };
        let marking = Marking {
            base: 0,
            spanning_tree: Vec::new(),
            generator_paths: (0..rank).map(|i| vec![OrientedEdge::forward(i)]).collect(),
        };
        MarkedGraph::new(graph, marking, rank).expect("rose is valid")
    }

    /// Two loops `u` (at v0) and `v` (at v1) joined by an arc `eta` from v0 to
    /// v1; marking x1 = u, x2 = eta v eta^{-1}.
    pub fn barbell(len_u: Rational, len_v: Rational, len_eta: Rational) -> MarkedGraph {
        let graph = MetricGraph {
            vertex_names: vec!["v0".into(), "v1".into()],
            edge_names: vec!["u".into(), "v".into(), "eta".into()],
            endpoints: vec![(0, 0), (1, 1), (0, 1)],
            lengths: vec![len_u, len_v, len_eta],
        };
        let marking = Marking {
            base: 0,
            spanning_tree: vec![2],
            generator_paths: vec![
                vec![OrientedEdge::forward(0)],
                vec![
                    OrientedEdge::forward(2),
                    OrientedEdge::forward(1),
                    OrientedEdge::backward(2),
                ],
            ],
        };
        MarkedGraph::new(graph, marking, 2).expect("barbell is valid")
    }

    /// Theta graph: two vertices joined by three parallel edges; marking
    /// x1 = e0 e1^{-1}, x2 = e1 e2^{-1}.
    pub fn theta(l0: Rational, l1: Rational, l2: Rational) -> MarkedGraph {
        let graph = MetricGraph {
            vertex_names: vec!["v0".into(), "v1".into()],
            edge_names: vec!["e0".into(), "e1".into(), "e2".into()],
            endpoints: vec![(0, 1), (0, 1), (0, 1)],
            lengths: vec![l0, l1, l2],
        };
        let marking = Marking {
            base: 0,
            spanning_tree: vec![1],
            generator_paths: vec![
                vec![OrientedEdge::forward(0), OrientedEdge::backward(1)],
                vec![OrientedEdge::forward(1), OrientedEdge::backward(2)],
            ],
        };
        MarkedGraph::new(graph, marking, 2).expect("theta is valid")
    }
}
