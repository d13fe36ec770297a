//! Whitehead graphs, Whitehead automorphisms, and the decision procedures for
//! primitive and simple elements.
//!
//! An element is *primitive* when it belongs to some free basis, *simple* when
//! it belongs to some proper free factor. Primitivity is decided by greedy
//! length descent over type-II Whitehead moves (peak reduction guarantees the
//! greedy minimum is the orbit minimum; length 1 means primitive). Simplicity
//! is decided by breadth-first search through the orbit words of length at most
//! the input's, looking for a word that omits a generator; the cutpoint
//! criterion on Whitehead graphs is kept as a tested cross-check rather than
//! used as the decision procedure.

use crate::fold;
use crate::words::{CyclicWord, Letter, Word, WordError};
use std::collections::{HashMap, HashSet, VecDeque};

/// The graph on the 2N letters with one edge {x, y^{-1}} per cyclic adjacency
/// x·y of the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: usize,
    /// Unordered letter pairs, one entry per adjacency (multiset).
    edges: Vec<(Letter, Letter)>,
}

impl WhiteheadGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(Letter, Letter)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Multiplicity of the unordered edge {x, y}.
    pub fn multiplicity(&self, x: Letter, y: Letter) -> usize {
        let key = normalize_pair(x, y);
        self.edges.iter().filter(|&&e| e == key).count()
    }
}

fn normalize_pair(x: Letter, y: Letter) -> (Letter, Letter) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

pub fn whitehead_graph(w: &CyclicWord, rank: usize) -> Result<WhiteheadGraph, WordError> {
    if w.is_empty() {
        return Err(WordError::TrivialWord);
    }
    let letters = w.letters();
    let n = letters.len();
    let mut edges = Vec::with_capacity(n);
    for i in 0..n {
        let x = letters[i];
        let y = letters[(i + 1) % n];
        edges.push(normalize_pair(x, y.inverse()));
    }
    edges.sort();
    Ok(WhiteheadGraph { rank, edges })
}

/// True iff the graph on all 2N letter-vertices is disconnected or has an
/// articulation vertex. Isolated vertices count as disconnection.
pub fn is_disconnected_or_has_cutpoint(g: &WhiteheadGraph) -> bool {
    let n = 2 * g.rank;
    let vid = |l: Letter| 2 * (l.index() - 1) + usize::from(l.is_inverse());
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    for &(x, y) in &g.edges {
        adj[vid(x)].insert(vid(y));
        adj[vid(y)].insert(vid(x));
    }

    // Connectivity over every vertex, isolated ones included.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return true;
    }

    // Articulation vertices by brute force: n is at most 52.
    for cut in 0..n {
        let mut seen = vec![false; n];
        seen[cut] = true;
        let Some(start) = (0..n).find(|&v| v != cut) else {
            continue;
        };
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return true;
        }
    }
    false
}

/// A Whitehead automorphism: a relabeling (permutation composed with
/// inversions of the basis) or a type-II move `(A, a)` with `a ∈ A`,
/// `a^{-1} ∉ A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WhiteheadMove {
    /// `x_i -> images[i-1]` where the images are single letters forming a
    /// signed permutation of the basis.
    Relabel { images: Vec<Letter> },
    /// Fixes `multiplier`; every other letter y maps to
    /// `(a^{-1} if y^{-1} ∈ A) · y · (a if y ∈ A)`.
    TypeII {
        multiplier: Letter,
        set: Vec<Letter>,
    },
}

impl WhiteheadMove {
    pub fn to_substitution(&self, rank: usize) -> Vec<Word> {
        match self {
            WhiteheadMove::Relabel { images } => {
                assert_eq!(images.len(), rank);
                images.iter().map(|&l| Word::letter(l)).collect()
            }
            WhiteheadMove::TypeII { multiplier, set } => {
                let a = *multiplier;
                (1..=rank)
                    .map(|i| {
                        let y = Letter::generator(i);
                        if i == a.index() {
                            return Word::letter(y);
                        }
                        let mut letters = Vec::with_capacity(3);
                        if set.contains(&y.inverse()) {
                            letters.push(a.inverse());
                        }
                        letters.push(y);
                        if set.contains(&y) {
                            letters.push(a);
                        }
                        Word::reduce(letters)
                    })
                    .collect()
            }
        }
    }

    pub fn apply(&self, w: &CyclicWord, rank: usize) -> CyclicWord {
        CyclicWord::from_word(&w.to_word().substitute(&self.to_substitution(rank)))
    }

    pub fn apply_word(&self, w: &Word, rank: usize) -> Word {
        w.substitute(&self.to_substitution(rank))
    }
}

/// All nontrivial type-II moves for the given rank, in a fixed deterministic
/// order (multiplier ascending, then set bitmask ascending).
pub fn type_ii_moves(rank: usize) -> Vec<WhiteheadMove> {
    let letters: Vec<Letter> = (1..=rank)
        .flat_map(|i| [Letter::generator(i), Letter::inverse_generator(i)])
        .collect();
    let mut moves = Vec::new();
    for &a in &letters {
        let others: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|&l| l != a && l != a.inverse())
            .collect();
        for mask in 1u32..(1 << others.len()) {
            let mut set = vec![a];
            for (bit, &l) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    set.push(l);
                }
            }
            set.sort();
            moves.push(WhiteheadMove::TypeII { multiplier: a, set });
        }
    }
    moves
}

/// All relabel moves (signed permutations of the basis). Factorial in rank;
/// meant for small-rank oracles and certificates.
pub fn relabel_moves(rank: usize) -> Vec<WhiteheadMove> {
    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let rest: Vec<usize> = items
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &y)| y)
                .collect();
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let idx: Vec<usize> = (1..=rank).collect();
    let mut moves = Vec::new();
    for perm in permutations(&idx) {
        for mask in 0u32..(1 << rank) {
            let images: Vec<Letter> = perm
                .iter()
                .enumerate()
                .map(|(pos, &target)| {
                    if mask & (1 << pos) != 0 {
                        Letter::inverse_generator(target)
                    } else {
                        Letter::generator(target)
                    }
                })
                .collect();
            moves.push(WhiteheadMove::Relabel { images });
        }
    }
    moves
}

/// Result of greedy Whitehead length minimization.
#[derive(Clone, Debug)]
pub struct Minimization {
    pub minimal: CyclicWord,
    pub moves: Vec<WhiteheadMove>,
}

/// Greedy descent: while some type-II move strictly shortens the word, apply
/// the move whose result is shortest, breaking ties by the lexicographically
/// least resulting word. Peak reduction guarantees the fixed point has the
/// minimal length in the Aut(F_N)-orbit.
pub fn whitehead_minimize(w: &CyclicWord, rank: usize) -> Minimization {
    let moves = type_ii_moves(rank);
    let mut current = w.clone();
    let mut applied = Vec::new();
    loop {
        let mut best: Option<(CyclicWord, &WhiteheadMove)> = None;
        for m in &moves {
            let image = m.apply(&current, rank);
            if image.len() >= current.len() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, _)) => image.len() < b.len() || (image.len() == b.len() && image < *b),
            };
            if better {
                best = Some((image, m));
            }
        }
        match best {
            Some((image, m)) => {
                applied.push(m.clone());
                current = image;
            }
            None => {
                return Minimization {
                    minimal: current,
                    moves: applied,
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Primitive,
    SimpleNotPrimitive,
    Nonsimple,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Primitive => "primitive",
            Verdict::SimpleNotPrimitive => "simple-not-primitive",
            Verdict::Nonsimple => "nonsimple",
        }
    }
}

/// A replayable witness: applying `moves` in order to the input's cyclic word
/// yields `final_word`, whose shape justifies `verdict`.
#[derive(Clone, Debug)]
pub struct SimplicityCertificate {
    pub verdict: Verdict,
    pub moves: Vec<WhiteheadMove>,
    pub final_word: CyclicWord,
}

pub fn is_primitive(w: &Word, rank: usize) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::TrivialWord);
    }
    let cyclic = CyclicWord::from_word(w);
    Ok(whitehead_minimize(&cyclic, rank).minimal.len() == 1)
}

/// BFS through the orbit words of length at most `|w|` under type-II moves,
/// searching for a word that omits some generator. Length may dip and return
/// within the cap; it never exceeds it.
fn simple_search(start: &CyclicWord, rank: usize) -> Option<(CyclicWord, Vec<WhiteheadMove>)> {
    let cap = start.len();
    if start.omits_some_generator(rank) {
        return Some((start.clone(), Vec::new()));
    }
    let moves = type_ii_moves(rank);
    let mut parent: HashMap<CyclicWord, (CyclicWord, WhiteheadMove)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(start.clone());
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    while let Some(node) = queue.pop_front() {
        for m in &moves {
            let image = m.apply(&node, rank);
            if image.len() > cap || seen.contains(&image) {
                continue;
            }
            parent.insert(image.clone(), (node.clone(), m.clone()));
            if image.omits_some_generator(rank) {
                let mut path = Vec::new();
                let mut cur = image.clone();
                while cur != *start {
                    let (prev, mv) = parent.get(&cur).unwrap().clone();
                    path.push(mv);
                    cur = prev;
                }
                path.reverse();
                return Some((image, path));
            }
            seen.insert(image.clone());
            queue.push_back(image);
        }
    }
    None
}

pub fn is_simple(w: &Word, rank: usize) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::TrivialWord);
    }
    Ok(simple_search(&CyclicWord::from_word(w), rank).is_some())
}

/// Full three-way classification with a replayable move certificate.
pub fn classify(w: &Word, rank: usize) -> Result<SimplicityCertificate, WordError> {
    if w.is_empty() {
        return Err(WordError::TrivialWord);
    }
    let cyclic = CyclicWord::from_word(w);
    let minimization = whitehead_minimize(&cyclic, rank);
    if minimization.minimal.len() == 1 {
        return Ok(SimplicityCertificate {
            verdict: Verdict::Primitive,
            moves: minimization.moves,
            final_word: minimization.minimal,
        });
    }
    match simple_search(&cyclic, rank) {
        Some((found, path)) => Ok(SimplicityCertificate {
            verdict: Verdict::SimpleNotPrimitive,
            moves: path,
            final_word: found,
        }),
        None => Ok(SimplicityCertificate {
            verdict: Verdict::Nonsimple,
            moves: minimization.moves,
            final_word: minimization.minimal,
        }),
    }
}

/// Greedy Nielsen reduction of a tuple, plus the basis test. The basis verdict
/// comes from Stallings folding (exact); the reduced tuple is the greedy
/// length-descent normal form, inversion-oriented and sorted.
pub fn nielsen_reduce_tuple(tuple: &[Word], rank: usize) -> (bool, Vec<Word>) {
    let is_basis = tuple.len() == rank && fold::generates_free_group(tuple, rank);
    let mut t: Vec<Word> = tuple.to_vec();
    loop {
        // Best elementary transformation u_j <- u_i^{±1} u_j or u_j u_i^{±1}
        // that strictly shortens slot j; ties broken by (length, word).
        let mut best: Option<(usize, Word)> = None;
        for i in 0..t.len() {
            for j in 0..t.len() {
                if i == j {
                    continue;
                }
                let candidates = [
                    t[i].concat(&t[j]),
                    t[i].inverse().concat(&t[j]),
                    t[j].concat(&t[i]),
                    t[j].concat(&t[i].inverse()),
                ];
                for cand in candidates {
                    if cand.len() >= t[j].len() {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some((bj, bw)) => {
                            let saved = t[j].len() - cand.len();
                            let best_saved = t[*bj].len() - bw.len();
                            saved > best_saved || (saved == best_saved && cand < *bw)
                        }
                    };
                    if better {
                        best = Some((j, cand));
                    }
                }
            }
        }
        match best {
            Some((j, cand)) => t[j] = cand,
            None => break,
        }
    }
    let mut reduced: Vec<Word> = t
        .into_iter()
        .map(|u| {
            let inv = u.inverse();
            if inv < u {
                inv
            } else {
                u
            }
        })
        .collect();
    reduced.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    (is_basis, reduced)
}

/// All conjugacy classes of primitive elements of length at most `max_len`,
/// in enumeration order.
pub fn enumerate_primitive_classes(rank: usize, max_len: usize) -> Vec<CyclicWord> {
    crate::words::enumerate_cyclic_words(rank, max_len)
        .filter(|c| is_primitive(&c.to_word(), rank).unwrap_or(false))
        .collect()
}
