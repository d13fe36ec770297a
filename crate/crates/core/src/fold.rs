//! Stallings folding for subgroups of a free group.
//!
//! Two consumers: the basis test (does a tuple of words generate the whole
//! group?) and basis inversion (given a basis `m_1..m_N`, express each
//! standard generator as a word in the `m_i`). Inversion is done by folding a
//! wedge of labeled cycles while carrying a memory word on each edge; the
//! memory of a based loop is the preimage of its label word.

use crate::words::{Letter, Word};

#[derive(Clone)]
struct EdgeRec {
    a: usize,
    b: usize,
    /// Label read along the arc a -> b.
    label: Letter,
    /// Memory read along the arc a -> b; the reverse arc carries the inverse.
    mem: Word,
}

struct FoldGraph {
    parent: Vec<usize>,
    edges: Vec<Option<EdgeRec>>,
    root: usize,
}

impl FoldGraph {
    fn new_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let r = self.find(self.parent[v]);
            self.parent[v] = r;
            r
        } else {
            v
        }
    }

    /// Builds the wedge of cycles spelling `generators[i]`, with memory `x_{i+1}`
    /// on the closing edge of cycle i.
    fn wedge(generators: &[Word]) -> FoldGraph {
        let mut g = FoldGraph {
            parent: vec![0],
            edges: Vec::new(),
            root: 0,
        };
        for (i, w) in generators.iter().enumerate() {
            let n = w.len();
            let mut prev = g.root;
            for (j, &label) in w.letters().iter().enumerate() {
                let next = if j + 1 == n { g.root } else { g.new_vertex() };
                let mem = if j + 1 == n {
                    Word::letter(Letter::generator(i + 1))
                } else {
                    Word::identity()
                };
                g.edges.push(Some(EdgeRec {
                    a: prev,
                    b: next,
                    label,
                    mem,
                }));
                prev = next;
            }
        }
        g
    }

    /// Folds to completion. Returns false on a memory conflict (the input is
    /// then not a basis; the graph is still usable for the generation test).
    fn fold(&mut self) -> bool {
        let mut consistent = true;
        loop {
            let Some((e1, d1, e2, d2)) = self.find_foldable_pair() else {
                return consistent;
            };
            let (m1, w1) = self.arc_out(e1, d1);
            let (m2, w2) = self.arc_out(e2, d2);
            if w1 == w2 {
                if m1 != m2 {
                    consistent = false;
                }
                self.edges[e2] = None;
                continue;
            }
            // Gauge the memories at the vertex that disappears so the two
            // folded arcs agree. Never gauge at the root: that would conjugate
            // based-loop memories. If w2 is the root, swap roles.
            let (kill_edge, m_keep, m_lose, v_keep, v_lose) = if w2 == self.find(self.root) {
                (e1, m2, m1, w2, w1)
            } else {
                (e2, m1, m2, w1, w2)
            };
            let c = m_keep.inverse().concat(&m_lose);
            for slot in self.edges.iter_mut() {
                let Some(e) = slot else { continue };
                let ra = root_of(&mut self.parent, e.a);
                let rb = root_of(&mut self.parent, e.b);
                if ra == v_lose && rb == v_lose {
                    e.mem = c.concat(&e.mem).concat(&c.inverse());
                } else if ra == v_lose {
                    e.mem = c.concat(&e.mem);
                } else if rb == v_lose {
                    e.mem = e.mem.concat(&c.inverse());
                }
            }
            self.parent[v_lose] = v_keep;
            self.edges[kill_edge] = None;
        }
    }

    /// Memory and target (as root) of the outgoing arc of edge `e` in direction
    /// `forward`.
    fn arc_out(&mut self, e: usize, forward: bool) -> (Word, usize) {
        let rec = self.edges[e].clone().expect("live edge");
        if forward {
            let t = self.find(rec.b);
            (rec.mem, t)
        } else {
            let t = self.find(rec.a);
            (rec.mem.inverse(), t)
        }
    }

    fn find_foldable_pair(&mut self) -> Option<(usize, bool, usize, bool)> {
        use std::collections::HashMap;
        let mut by_source: HashMap<(usize, Letter), (usize, bool)> = HashMap::new();
        let live: Vec<usize> = (0..self.edges.len())
            .filter(|&i| self.edges[i].is_some())
            .collect();
        for i in live {
            let (a, b, label) = {
                let rec = self.edges[i].as_ref().unwrap();
                (rec.a, rec.b, rec.label)
            };
            let ra = self.find(a);
            let rb = self.find(b);
            for (src, lab, dir) in [(ra, label, true), (rb, label.inverse(), false)] {
                if let Some(&(j, jd)) = by_source.get(&(src, lab)) {
                    if j != i {
                        return Some((j, jd, i, dir));
                    }
                } else {
                    by_source.insert((src, lab), (i, dir));
                }
            }
        }
        None
    }

    /// After folding: the petal memories indexed by generator, when the graph
    /// is exactly the rank-`rank` rose at the root.
    fn rose_memories(&mut self, rank: usize) -> Option<Vec<Word>> {
        let root = self.find(self.root);
        let mut petals: Vec<Option<Word>> = vec![None; rank];
        let mut count = 0usize;
        for i in 0..self.edges.len() {
            let Some(rec) = self.edges[i].clone() else {
                continue;
            };
            if self.find(rec.a) != root || self.find(rec.b) != root {
                return None;
            }
            count += 1;
            let idx = rec.label.index();
            if idx > rank {
                return None;
            }
            let mem = if rec.label.is_inverse() {
                rec.mem.inverse()
            } else {
                rec.mem
            };
            if petals[idx - 1].replace(mem).is_some() {
                return None;
            }
        }
        if count != rank || petals.iter().any(|p| p.is_none()) {
            return None;
        }
        Some(petals.into_iter().map(Option::unwrap).collect())
    }
}

fn root_of(parent: &mut Vec<usize>, v: usize) -> usize {
    if parent[v] != v {
        let r = root_of(parent, parent[v]);
        parent[v] = r;
        r
    } else {
        v
    }
}

/// True iff the tuple generates the whole rank-`rank` free group (equivalently,
/// is a basis when the tuple has `rank` entries).
pub fn generates_free_group(tuple: &[Word], rank: usize) -> bool {
    let mut g = FoldGraph::wedge(tuple);
    g.fold();
    // The folded graph presents the subgroup; it is everything iff the graph
    // is the full rose on `rank` petals.
    let root = g.find(g.root);
    let mut labels_seen = vec![false; rank + 1];
    let mut edge_count = 0usize;
    for i in 0..g.edges.len() {
        let Some(rec) = g.edges[i].clone() else {
            continue;
        };
        if g.find(rec.a) != root || g.find(rec.b) != root {
            return false;
        }
        edge_count += 1;
        let idx = rec.label.index();
        if idx > rank || labels_seen[idx] {
            return false;
        }
        labels_seen[idx] = true;
    }
    edge_count == rank && (1..=rank).all(|i| labels_seen[i])
}

/// Given a basis `images` of the rank-`rank` free group (the map
/// `x_i -> images[i]`), returns the inverse map: word `out[j]` satisfies
/// `out[j].substitute(images) == x_{j+1}`. `None` when `images` is not a basis.
pub fn invert_basis(images: &[Word], rank: usize) -> Option<Vec<Word>> {
    if images.len() != rank {
        return None;
    }
    let mut g = FoldGraph::wedge(images);
    if !g.fold() {
        return None;
    }
    g.rose_memories(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    #[test]
    fn standard_basis_generates() {
        assert!(generates_free_group(&[w("a"), w("b")], 2));
        assert!(generates_free_group(&[w("ab"), w("b")], 2));
        assert!(!generates_free_group(&[w("ab"), w("ba")], 2));
        assert!(!generates_free_group(&[w("aa"), w("b")], 2));
        assert!(!generates_free_group(&[w("a")], 2));
        assert!(generates_free_group(&[w("a"), w("b"), w("c")], 3));
    }

    #[test]
    fn inversion_recovers_generators() {
        let cases: Vec<Vec<Word>> = vec![
            vec![w("a"), w("b")],
            vec![w("ab"), w("b")],
            vec![w("b"), w("a")],
            vec![w("aba"), w("ab")],
            vec![w("bab"), w("BA")],
            vec![w("abc"), w("bc"), w("c")],
            vec![w("caB"), w("Ba"), w("cca")],
        ];
        for images in cases {
            let rank = images.len();
            if !generates_free_group(&images, rank) {
                continue;
            }
            let inv = invert_basis(&images, rank).expect("basis inverts");
            for (j, nj) in inv.iter().enumerate() {
                assert_eq!(
                    nj.substitute(&images),
                    Word::letter(Letter::generator(j + 1)),
                    "inverse failed at generator {} for images {:?}",
                    j + 1,
                    images
                );
            }
        }
    }

    #[test]
    fn non_basis_inversion_fails() {
        assert!(invert_basis(&[w("ab"), w("ba")], 2).is_none());
        assert!(invert_basis(&[w("a"), w("a")], 2).is_none());
    }
}
