//! Simplicial boundary trees: one-edge splittings with point vertex trees,
//! pulls, and the equivalence decision procedures.
//!
//! A base tree is the Bass-Serre tree of either the HNN splitting
//! `F_N = A*` (A = <x_1..x_{N-1}>, stable letter t = x_N) or the amalgam
//! `F_N = A_1 * A_2` (A_1 = <x_1..x_k>), with a single edge orbit of length
//! `l` and point vertex trees. A pull identifies an initial segment of the
//! edge with its translate under a vertex element `g_i`; translation lengths
//! then drop by `2 l_i` per folded turn, which is a closed-form count of
//! syllable patterns (`t^{-1} g_1^k t` at end 1, `t g_2^k t^{-1}` at end 2 for
//! HNN; syllables that are powers of `g_i` for amalgams). The folding oracle
//! recomputes lengths from point displacements `d(x, w^2 x) - d(x, w x)`
//! along the Bass-Serre geodesic, independently of the pattern count.

use crate::rational::{parse_rational, ExtRational, Rational};
use crate::stretch::{CandidateRatio, CandidateShape, StretchReport};
use crate::whitehead;
use crate::words::{
    enumerate_cyclic_words, enumerate_reduced_words, CyclicWord, Letter, Word, WordError,
};
use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("word {word:?} is elliptic")]
    Elliptic { word: String },
    #[error("tree has no nontrivial pull")]
    NoPull,
    #[error(transparent)]
    Word(#[from] WordError),
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> TreeError {
    TreeError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    One,
    Two,
}

impl End {
    pub fn as_number(self) -> u8 {
        match self {
            End::One => 1,
            End::Two => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingKind {
    /// Nonseparating edge: `F_N = A*` with stable letter `x_N`.
    Hnn,
    /// Separating edge: `F_N = <x_1..x_k> * <x_{k+1}..x_N>`.
    Amalgam { split_index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingTree {
    pub rank: usize,
    pub kind: SplittingKind,
    pub edge_length: Rational,
}

/// A pull at one end of the edge: the element `g` of the vertex group at that
/// end and the folded initial segment length. For HNN trees both ends carry
/// elements of `A`; the end-2 element acts at the far vertex as
/// `t g t^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullSpec {
    pub end: End,
    pub element: Word,
    pub length: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledTree {
    base: SplittingTree,
    pulls: Vec<PullSpec>,
}

impl SplittingTree {
    pub fn validate(&self) -> Result<(), TreeError> {
        if self.rank > 26 {
            return Err(invalid("rank", "the word alphabet a-z caps the rank at 26"));
        }
        match self.kind {
            SplittingKind::Hnn => {
                if self.rank < 2 {
                    return Err(invalid("rank", "an hnn splitting needs rank >= 2"));
                }
            }
            SplittingKind::Amalgam { split_index } => {
                if split_index == 0 || split_index + 1 > self.rank {
                    return Err(invalid(
                        "split_index",
                        format!(
                            "need 1 <= k <= {}, got {split_index}",
                            self.rank.saturating_sub(1)
                        ),
                    ));
                }
            }
        }
        if self.edge_length <= Rational::zero() {
            return Err(invalid("edge_length", "edge length must be positive"));
        }
        Ok(())
    }

    /// Generator index range of the vertex group at the given end.
    fn factor_range(&self, end: End) -> (usize, usize) {
        match (self.kind, end) {
            (SplittingKind::Hnn, _) => (1, self.rank - 1),
            (SplittingKind::Amalgam { split_index }, End::One) => (1, split_index),
            (SplittingKind::Amalgam { split_index }, End::Two) => (split_index + 1, self.rank),
        }
    }
}

impl PulledTree {
    pub fn new(base: SplittingTree, pulls: Vec<PullSpec>) -> Result<PulledTree, TreeError> {
        base.validate()?;
        let mut total = Rational::zero();
        let mut seen_ends = Vec::new();
        for (i, pull) in pulls.iter().enumerate() {
            let field = format!("pulls[{i}]");
            if seen_ends.contains(&pull.end) {
                return Err(invalid(field, "at most one pull per end"));
            }
            seen_ends.push(pull.end);
            if pull.length < Rational::zero() {
                return Err(invalid(
                    format!("{field}.length"),
                    "pull length must be >= 0",
                ));
            }
            if pull.length > base.edge_length {
                return Err(invalid(
                    format!("{field}.length"),
                    "pull length exceeds the edge length",
                ));
            }
            total += &pull.length;
            let (lo, hi) = base.factor_range(pull.end);
            if pull.element.is_empty() {
                return Err(invalid(
                    format!("{field}.element"),
                    "pulling element is trivial",
                ));
            }
            for l in pull.element.letters() {
                if l.index() < lo || l.index() > hi {
                    return Err(invalid(
                        format!("{field}.element"),
                        format!(
                            "letter {l} is outside the vertex group <x_{lo}..x_{hi}> at end {}",
                            pull.end.as_number()
                        ),
                    ));
                }
            }
            if !pull.element.is_cyclically_reduced() {
                return Err(invalid(
                    format!("{field}.element"),
                    "pulling element must be cyclically reduced",
                ));
            }
            if pull.element.is_proper_power()?.is_some() {
                return Err(invalid(
                    format!("{field}.element"),
                    "pulling element must not be a proper power",
                ));
            }
        }
        if total > base.edge_length {
            return Err(invalid(
                "pulls",
                "the pulled segments overlap: l_1 + l_2 must not exceed the edge length",
            ));
        }
        Ok(PulledTree { base, pulls })
    }

    pub fn base(&self) -> &SplittingTree {
        &self.base
    }

    pub fn pulls(&self) -> &[PullSpec] {
        &self.pulls
    }

    pub fn rank(&self) -> usize {
        self.base.rank
    }

    pub fn kind(&self) -> SplittingKind {
        self.base.kind
    }

    fn pull_at(&self, end: End) -> Option<&PullSpec> {
        self.pulls.iter().find(|p| p.end == end)
    }

    /// Pulling data at an end: (element, length), trivial pulls filtered out.
    fn active_pull(&self, end: End) -> Option<(&Word, &Rational)> {
        self.pull_at(end).and_then(|p| {
            if p.length.is_zero() {
                None
            } else {
                Some((&p.element, &p.length))
            }
        })
    }

    /// Same base splitting in the fixed adapted-basis coordinates.
    pub fn same_base(&self, other: &PulledTree) -> bool {
        self.base == other.base
    }

    /// Structural equality: same base and the same pulls (pulling elements
    /// compared up to inversion, which yields the same identification).
    pub fn isometric_eq(&self, other: &PulledTree) -> bool {
        if !self.same_base(other) {
            return false;
        }
        let eq_pull = |a: Option<(&Word, &Rational)>, b: Option<(&Word, &Rational)>| match (a, b) {
            (None, None) => true,
            (Some((ga, la)), Some((gb, lb))) => la == lb && (ga == gb || *ga == gb.inverse()),
            _ => false,
        };
        eq_pull(self.active_pull(End::One), other.active_pull(End::One))
            && eq_pull(self.active_pull(End::Two), other.active_pull(End::Two))
    }
}

// ---------------------------------------------------------------------------
// Syllables
// ---------------------------------------------------------------------------

/// Cyclic syllable structure of a word relative to the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyllableDecomposition {
    /// Conjugate into a vertex group (trivial word included).
    Elliptic,
    /// Cyclic alternation: entry j is the sign of the j-th stable letter and
    /// the (possibly empty) A-syllable following it.
    Hnn(Vec<(i8, Word)>),
    /// Cyclic alternation of nontrivial syllables, tagged by factor 1 or 2.
    Amalgam(Vec<(u8, Word)>),
}

pub fn syllable_decompose(tree: &PulledTree, w: &Word) -> Result<SyllableDecomposition, TreeError> {
    if w.is_empty() {
        return Err(TreeError::Word(WordError::TrivialWord));
    }
    let cyclic = CyclicWord::from_word(w);
    Ok(decompose_cyclic(&tree.base, &cyclic))
}

fn decompose_cyclic(base: &SplittingTree, cyclic: &CyclicWord) -> SyllableDecomposition {
    let letters = cyclic.letters();
    if letters.is_empty() {
        return SyllableDecomposition::Elliptic;
    }
    match base.kind {
        SplittingKind::Hnn => {
            let t_index = base.rank;
            let positions: Vec<usize> = (0..letters.len())
                .filter(|&i| letters[i].index() == t_index)
                .collect();
            if positions.is_empty() {
                return SyllableDecomposition::Elliptic;
            }
            let n = positions.len();
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                let sign = if letters[positions[j]].is_inverse() {
                    -1i8
                } else {
                    1
                };
                let from = positions[j] + 1;
                let to = positions[(j + 1) % n];
                let syllable: Vec<Letter> = if j + 1 < n {
                    letters[from..to].to_vec()
                } else {
                    letters[from..]
                        .iter()
                        .chain(letters[..to].iter())
                        .copied()
                        .collect()
                };
                out.push((sign, Word::reduce(syllable)));
            }
            SyllableDecomposition::Hnn(out)
        }
        SplittingKind::Amalgam { split_index } => {
            let factor = |l: Letter| if l.index() <= split_index { 1u8 } else { 2u8 };
            let first = factor(letters[0]);
            if letters.iter().all(|&l| factor(l) == first) {
                return SyllableDecomposition::Elliptic;
            }
            // Rotate to a factor boundary so runs do not wrap.
            let n = letters.len();
            let start = (0..n)
                .find(|&i| factor(letters[(i + n - 1) % n]) != factor(letters[i]))
                .expect("mixed word has a factor boundary");
            let rotated: Vec<Letter> = (0..n).map(|k| letters[(start + k) % n]).collect();
            let mut out: Vec<(u8, Word)> = Vec::new();
            let mut run: Vec<Letter> = vec![rotated[0]];
            for &l in &rotated[1..] {
                if factor(l) == factor(*run.last().unwrap()) {
                    run.push(l);
                } else {
                    out.push((factor(run[0]), Word::reduce(run.drain(..))));
                    run.push(l);
                }
            }
            out.push((factor(run[0]), Word::reduce(run.drain(..))));
            SyllableDecomposition::Amalgam(out)
        }
    }
}

fn is_nonzero_power_of(s: &Word, g: &Word) -> bool {
    if s.is_empty() {
        return false;
    }
    if s == g || *s == g.inverse() {
        return true;
    }
    match s.is_proper_power() {
        Ok(Some((root, _))) => root == *g || root == g.inverse(),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Translation lengths: pattern-count formula and folding oracle
// ---------------------------------------------------------------------------

impl PulledTree {
    /// Closed-form translation length. Elliptic words (and the trivial word)
    /// have length 0.
    pub fn translation_length(&self, w: &Word) -> Rational {
        if w.is_empty() {
            return Rational::zero();
        }
        let cyclic = CyclicWord::from_word(w);
        match decompose_cyclic(&self.base, &cyclic) {
            SyllableDecomposition::Elliptic => Rational::zero(),
            SyllableDecomposition::Hnn(slots) => {
                let n = slots.len();
                let mut total = Rational::from_integer((n as i64).into()) * &self.base.edge_length;
                for j in 0..n {
                    let (sign_before, syllable) = &slots[j];
                    let sign_after = slots[(j + 1) % n].0;
                    total -= self.hnn_slot_deduction(*sign_before, sign_after, syllable);
                }
                assert!(
                    total >= Rational::zero(),
                    "pattern deductions exceeded the base length"
                );
                total
            }
            SyllableDecomposition::Amalgam(syllables) => {
                let n = syllables.len();
                let mut total = Rational::from_integer((n as i64).into()) * &self.base.edge_length;
                for (factor, syllable) in &syllables {
                    total -= self.amalgam_syllable_deduction(*factor, syllable);
                }
                assert!(
                    total >= Rational::zero(),
                    "pattern deductions exceeded the base length"
                );
                total
            }
        }
    }

    /// Deduction for an HNN slot `t^{sign_before} syllable t^{sign_after}`:
    /// `2 l_1` for `t^{-1} g_1^k t`, `2 l_2` for `t g_2^k t^{-1}`.
    fn hnn_slot_deduction(&self, sign_before: i8, sign_after: i8, syllable: &Word) -> Rational {
        let pull = match (sign_before, sign_after) {
            (-1, 1) => self.active_pull(End::One),
            (1, -1) => self.active_pull(End::Two),
            _ => None,
        };
        match pull {
            Some((g, l)) if is_nonzero_power_of(syllable, g) => l + l,
            _ => Rational::zero(),
        }
    }

    fn amalgam_syllable_deduction(&self, factor: u8, syllable: &Word) -> Rational {
        let end = if factor == 1 { End::One } else { End::Two };
        match self.active_pull(end) {
            Some((g, l)) if is_nonzero_power_of(syllable, g) => l + l,
            _ => Rational::zero(),
        }
    }

    /// Independent length oracle: walks the Bass-Serre geodesic from the base
    /// vertex, applies the pulled identifications as turn overlaps, and
    /// returns `d(x, w^2 x) - d(x, w x)`. Errors on elliptic words.
    pub fn folding_oracle_length(&self, w: &Word) -> Result<Rational, TreeError> {
        if w.is_empty() {
            return Err(TreeError::Word(WordError::TrivialWord));
        }
        if matches!(
            decompose_cyclic(&self.base, &CyclicWord::from_word(w)),
            SyllableDecomposition::Elliptic
        ) {
            return Err(TreeError::Elliptic {
                word: w.to_string(),
            });
        }
        let d1 = self.displacement(w);
        let d2 = self.displacement(&w.concat(w));
        Ok(d2 - d1)
    }

    /// `d(x, w x)` for the base vertex x (the A_1-vertex for amalgams, the
    /// A-vertex for HNN trees).
    fn displacement(&self, w: &Word) -> Rational {
        match self.base.kind {
            SplittingKind::Hnn => {
                let t_index = self.base.rank;
                // Signs of the stable letters and the vertex-group words
                // between consecutive ones.
                let mut signs: Vec<i8> = Vec::new();
                let mut between: Vec<Word> = Vec::new();
                let mut current: Vec<Letter> = Vec::new();
                for &l in w.letters() {
                    if l.index() == t_index {
                        if !signs.is_empty() {
                            between.push(Word::reduce(current.drain(..)));
                        } else {
                            current.clear();
                        }
                        signs.push(if l.is_inverse() { -1 } else { 1 });
                    } else if !signs.is_empty() {
                        current.push(l);
                    }
                }
                let m = signs.len();
                let mut total = Rational::from_integer((m as i64).into()) * &self.base.edge_length;
                for j in 0..m.saturating_sub(1) {
                    total -= self.hnn_slot_deduction(signs[j], signs[j + 1], &between[j]);
                }
                total
            }
            SplittingKind::Amalgam { split_index } => {
                let factor = |l: Letter| if l.index() <= split_index { 1u8 } else { 2u8 };
                let letters = w.letters();
                if letters.is_empty() {
                    return Rational::zero();
                }
                let mut runs: Vec<(u8, Word)> = Vec::new();
                let mut run: Vec<Letter> = vec![letters[0]];
                for &l in &letters[1..] {
                    if factor(l) == factor(*run.last().unwrap()) {
                        run.push(l);
                    } else {
                        runs.push((factor(run[0]), Word::reduce(run.drain(..))));
                        run.push(l);
                    }
                }
                runs.push((factor(run[0]), Word::reduce(run.drain(..))));
                let m = runs.len();
                let lead = runs[0].0 == 2;
                let trail = runs[m - 1].0 == 2;
                let edge_count = (m - 1) + usize::from(lead) + usize::from(trail);
                let mut total =
                    Rational::from_integer((edge_count as i64).into()) * &self.base.edge_length;
                // Junction at syllable j exists for interior syllables always,
                // for the first (last) syllable only with a leading (trailing)
                // edge.
                for (j, (factor, syllable)) in runs.iter().enumerate() {
                    let has_junction =
                        (j > 0 && j + 1 < m) || (j == 0 && lead) || (j + 1 == m && trail);
                    if has_junction {
                        total -= self.amalgam_syllable_deduction(*factor, syllable);
                    }
                }
                total
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Specialness and equivalence
// ---------------------------------------------------------------------------

/// A pull is special when the edge is nonseparating (HNN) and every pulling
/// element with positive pulled length is nonsimple in the corank-1 factor.
pub fn is_special_pull(tree: &PulledTree) -> Result<bool, TreeError> {
    let active: Vec<_> = tree.pulls.iter().filter(|p| !p.length.is_zero()).collect();
    if active.is_empty() {
        return Err(TreeError::NoPull);
    }
    if !matches!(tree.base.kind, SplittingKind::Hnn) {
        return Ok(false);
    }
    let factor_rank = tree.base.rank - 1;
    for pull in active {
        if whitehead::is_simple(&pull.element, factor_rank)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does the pull set qualify the tree as a special pull of its own base
/// (trivial pulls allowed, so a bare HNN base qualifies)?
fn pull_set_special(tree: &PulledTree) -> Result<bool, TreeError> {
    if !matches!(tree.base.kind, SplittingKind::Hnn) {
        // A bare amalgam base has no pull at all; the amalgam edge is
        // separating, so any nontrivial pull is non-special.
        return Ok(tree.pulls.iter().all(|p| p.length.is_zero()));
    }
    let factor_rank = tree.base.rank - 1;
    for pull in tree.pulls.iter().filter(|p| !p.length.is_zero()) {
        if whitehead::is_simple(&pull.element, factor_rank)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Primitive,
    Simple,
    All,
    SpecialPull,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Primitive => "primitive",
            Relation::Simple => "simple",
            Relation::All => "all",
            Relation::SpecialPull => "special_pull",
        }
    }
}

/// Word classes over which spectra are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumClass {
    Primitive,
    Simple,
    All,
}

impl SpectrumClass {
    pub fn relation(self) -> Relation {
        match self {
            SpectrumClass::Primitive => Relation::Primitive,
            SpectrumClass::Simple => Relation::Simple,
            SpectrumClass::All => Relation::All,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub relation: Relation,
    pub verdict: bool,
    pub witness: Option<CyclicWord>,
    pub max_len_checked: usize,
}

/// Decides special-pull-equivalence in the fixed adapted-basis coordinates:
/// equal trees, or identical bases with both pull sets special.
pub fn special_pull_equivalent(
    left: &PulledTree,
    right: &PulledTree,
) -> Result<EquivalenceReport, TreeError> {
    if left.rank() != right.rank() {
        return Err(TreeError::RankMismatch {
            left: left.rank(),
            right: right.rank(),
        });
    }
    let verdict = left.isometric_eq(right)
        || (left.same_base(right) && pull_set_special(left)? && pull_set_special(right)?);
    Ok(EquivalenceReport {
        relation: Relation::SpecialPull,
        verdict,
        witness: None,
        max_len_checked: 0,
    })
}

/// Compares translation-length spectra on all conjugacy classes of length at
/// most `max_len`, restricted to the given word class. The witness is the
/// first discrepant class in enumeration (shortlex) order; class membership
/// is only ever decided on discrepant words.
pub fn spectrum_compare(
    left: &PulledTree,
    right: &PulledTree,
    class: SpectrumClass,
    max_len: usize,
) -> Result<EquivalenceReport, TreeError> {
    if left.rank() != right.rank() {
        return Err(TreeError::RankMismatch {
            left: left.rank(),
            right: right.rank(),
        });
    }
    let rank = left.rank();
    let mut witness: Option<CyclicWord> = None;
    for c in enumerate_cyclic_words(rank, max_len) {
        let word = c.to_word();
        if left.translation_length(&word) == right.translation_length(&word) {
            continue;
        }
        let in_class = match class {
            SpectrumClass::All => true,
            SpectrumClass::Primitive => whitehead::is_primitive(&word, rank)?,
            SpectrumClass::Simple => whitehead::is_simple(&word, rank)?,
        };
        if in_class {
            witness = Some(c);
            break;
        }
    }
    Ok(EquivalenceReport {
        relation: class.relation(),
        verdict: witness.is_none(),
        witness,
        max_len_checked: max_len,
    })
}

/// Shapes realizable by candidate loops in the quotient graph of the base
/// splitting (the element families behind them are infinite and are not
/// enumerated).
pub fn enumerate_candidates_boundary(tree: &PulledTree) -> Vec<CandidateShape> {
    match tree.base.kind {
        SplittingKind::Hnn => vec![CandidateShape::Vertex, CandidateShape::Circle],
        SplittingKind::Amalgam { .. } => {
            vec![
                CandidateShape::Vertex,
                CandidateShape::DoublyDegenerateBarbell,
            ]
        }
    }
}

// ---------------------------------------------------------------------------
// Stretch lower bounds
// ---------------------------------------------------------------------------

/// Certified lower bound for Λ(left, right): the exact maximum of
/// `||w||_right / ||w||_left` over conjugacy classes of length <= `max_len`
/// (conventions 0/0 = 0, positive/0 = inf). Same-kind pairs are solved by an
/// exact skeleton optimization over syllable patterns; mixed kinds fall back
/// to class enumeration.
pub fn stretch_lower_bound(
    left: &PulledTree,
    right: &PulledTree,
    max_len: usize,
) -> Result<StretchReport, TreeError> {
    if left.rank() != right.rank() {
        return Err(TreeError::RankMismatch {
            left: left.rank(),
            right: right.rank(),
        });
    }
    let same_kind = match (left.base.kind, right.base.kind) {
        (SplittingKind::Hnn, SplittingKind::Hnn) => true,
        (SplittingKind::Amalgam { split_index: a }, SplittingKind::Amalgam { split_index: b }) => {
            a == b
        }
        _ => false,
    };
    let (lambda, best) = if same_kind {
        skeleton::max_ratio(left, right, max_len)
    } else {
        crate::stretch::max_ratio_over_classes(
            left.rank(),
            max_len,
            |w| left.translation_length(w),
            |w| right.translation_length(w),
        )
    };
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

/// Exact syllable-skeleton optimization of the length ratio between two trees
/// over the same splitting kind. The ratio of a word depends only on its
/// cyclic pattern profile (stable-letter signs plus, per slot, which pulling
/// subgroup the syllable lies in), so each slot can be replaced by a shortest
/// representative of its membership class; a Dinkelbach iteration over a
/// knapsack DP then maximizes the ratio exactly.
mod skeleton {
    use super::*;

    #[derive(Clone, Debug)]
    struct Choice {
        syllable: Word,
        /// Deduction this syllable triggers, per tree and per applicable
        /// pattern; zero when it is in no pulling subgroup.
        ded_left_end1: Rational,
        ded_left_end2: Rational,
        ded_right_end1: Rational,
        ded_right_end2: Rational,
    }

    fn subgroup_reps(
        left: &PulledTree,
        right: &PulledTree,
        end_filter: &dyn Fn(End) -> bool,
    ) -> Vec<Word> {
        let mut reps: Vec<Word> = Vec::new();
        for tree in [left, right] {
            for pull in tree.pulls() {
                if pull.length.is_zero() || !end_filter(pull.end) {
                    continue;
                }
                let g = &pull.element;
                if !reps.iter().any(|r| r == g || *r == g.inverse()) {
                    reps.push(g.clone());
                }
            }
        }
        reps
    }

    /// Shortest word over generator indices `lo..=hi` lying in none of the
    /// listed cyclic subgroups.
    fn generic_syllable(lo: usize, hi: usize, reps: &[Word]) -> Option<Word> {
        if hi < lo {
            return None;
        }
        let rank_span = hi - lo + 1;
        for candidate in enumerate_reduced_words(rank_span, 3) {
            if candidate.is_empty() {
                continue;
            }
            let shifted = shift_indices(&candidate, lo - 1);
            if !reps.iter().any(|g| is_nonzero_power_of(&shifted, g)) {
                return Some(shifted);
            }
        }
        None
    }

    fn shift_indices(w: &Word, offset: usize) -> Word {
        Word::reduce(w.letters().iter().map(|l| {
            if l.is_inverse() {
                Letter::inverse_generator(l.index() + offset)
            } else {
                Letter::generator(l.index() + offset)
            }
        }))
    }

    fn deduction(tree: &PulledTree, end: End, syllable: &Word) -> Rational {
        match tree.active_pull(end) {
            Some((g, l)) if is_nonzero_power_of(syllable, g) => l + l,
            _ => Rational::zero(),
        }
    }

    fn choices_for(
        left: &PulledTree,
        right: &PulledTree,
        lo: usize,
        hi: usize,
        end_filter: &dyn Fn(End) -> bool,
    ) -> Vec<Choice> {
        let reps = subgroup_reps(left, right, end_filter);
        let mut words: Vec<Word> = reps.clone();
        if let Some(generic) = generic_syllable(lo, hi, &reps) {
            words.push(generic);
        }
        words
            .into_iter()
            .map(|syllable| Choice {
                ded_left_end1: deduction(left, End::One, &syllable),
                ded_left_end2: deduction(left, End::Two, &syllable),
                ded_right_end1: deduction(right, End::One, &syllable),
                ded_right_end2: deduction(right, End::Two, &syllable),
                syllable,
            })
            .collect()
    }

    /// Exact max of `||w||_right / ||w||_left` over classes of length <=
    /// `max_len`, with the 0/0 = 0 and positive/0 = inf conventions.
    pub fn max_ratio(
        left: &PulledTree,
        right: &PulledTree,
        max_len: usize,
    ) -> (ExtRational, Option<(CyclicWord, Rational, Rational)>) {
        let build = match left.base.kind {
            SplittingKind::Hnn => hnn_best_word,
            SplittingKind::Amalgam { .. } => amalgam_best_word,
        };
        let mut lambda = Rational::zero();
        let mut best: Option<(CyclicWord, Rational, Rational)> = None;
        for _ in 0..10_000 {
            let Some(word) = build(left, right, max_len, &lambda) else {
                break;
            };
            let den = left.translation_length(&word);
            let num = right.translation_length(&word);
            if den.is_zero() {
                if num.is_zero() {
                    break;
                }
                let cyclic = CyclicWord::from_word(&word);
                return (ExtRational::Infinity, Some((cyclic, den, num)));
            }
            if &num - &lambda * &den <= Rational::zero() {
                break;
            }
            lambda = &num / &den;
            best = Some((CyclicWord::from_word(&word), den, num));
        }
        if best.is_none() {
            return (ExtRational::zero(), None);
        }
        (ExtRational::Finite(lambda), best)
    }

    /// Maximizer of `||w||_right - λ ||w||_left` over HNN syllable skeletons
    /// of total length <= `max_len`; `None` when no hyperbolic word fits.
    fn hnn_best_word(
        left: &PulledTree,
        right: &PulledTree,
        max_len: usize,
        lambda: &Rational,
    ) -> Option<Word> {
        if max_len == 0 {
            return None;
        }
        let rank = left.rank();
        let choices = choices_for(left, right, 1, rank - 1, &|_| true);
        let l_left = &left.base.edge_length;
        let l_right = &right.base.edge_length;
        let t_gain = l_right - lambda * l_left;

        // Slot value of syllable `c` between stable letters of signs (s, s').
        let slot_value = |c: Option<&Choice>, s: i8, s_next: i8| -> Rational {
            let Some(c) = c else { return Rational::zero() };
            match (s, s_next) {
                (-1, 1) => lambda * &c.ded_left_end1 - &c.ded_right_end1,
                (1, -1) => lambda * &c.ded_left_end2 - &c.ded_right_end2,
                _ => Rational::zero(),
            }
        };

        // dp[len][sign(+=0,-=1)] per first sign: best value and backpointer.
        type Back = Option<(usize, usize, Option<usize>)>; // (prev_len, prev_sign, choice)
        let mut best_total: Option<(Rational, Vec<(i8, Option<usize>)>)> = None;
        for first_sign in [1i8, -1] {
            let fs = usize::from(first_sign < 0);
            let mut dp: Vec<[Option<(Rational, Back)>; 2]> = vec![[None, None]; max_len + 1];
            dp[1][fs] = Some((t_gain.clone(), None));
            for used in 1..=max_len {
                for sign_idx in 0..2 {
                    let Some((value, _)) = dp[used][sign_idx].clone() else {
                        continue;
                    };
                    let sign = if sign_idx == 0 { 1i8 } else { -1 };
                    // Empty syllable: next sign must equal the current one.
                    let mut options: Vec<(Option<usize>, usize, i8)> = vec![(None, 0, sign)];
                    for (ci, c) in choices.iter().enumerate() {
                        for next in [1i8, -1] {
                            options.push((Some(ci), c.syllable.len(), next));
                        }
                    }
                    for (choice, extra, next_sign) in options {
                        let new_len = used + extra + 1;
                        if new_len > max_len {
                            continue;
                        }
                        let c = choice.map(|ci| &choices[ci]);
                        let v = &value + slot_value(c, sign, next_sign) + &t_gain;
                        let ns = usize::from(next_sign < 0);
                        if dp[new_len][ns].as_ref().is_none_or(|(old, _)| v > *old) {
                            dp[new_len][ns] = Some((v, Some((used, sign_idx, choice))));
                        }
                    }
                }
            }
            // Close the cycle with the final syllable back to the first sign.
            for used in 1..=max_len {
                for sign_idx in 0..2 {
                    let Some((value, _)) = dp[used][sign_idx].clone() else {
                        continue;
                    };
                    let sign = if sign_idx == 0 { 1i8 } else { -1 };
                    let mut closings: Vec<(Option<usize>, usize)> = Vec::new();
                    if sign == first_sign {
                        closings.push((None, 0));
                    }
                    for (ci, c) in choices.iter().enumerate() {
                        closings.push((Some(ci), c.syllable.len()));
                    }
                    for (choice, extra) in closings {
                        if used + extra > max_len {
                            continue;
                        }
                        let c = choice.map(|ci| &choices[ci]);
                        let total = &value + slot_value(c, sign, first_sign);
                        let better = best_total.as_ref().is_none_or(|(old, _)| total > *old);
                        if better {
                            let slots = reconstruct(&dp, used, sign_idx, choice, fs);
                            best_total = Some((total, slots));
                        }
                    }
                }
            }
        }
        let (_, slots) = best_total?;
        let mut letters: Vec<Letter> = Vec::new();
        for (sign, choice) in &slots {
            letters.push(if *sign < 0 {
                Letter::inverse_generator(rank)
            } else {
                Letter::generator(rank)
            });
            if let Some(ci) = choice {
                letters.extend(choices[*ci].syllable.letters().iter().copied());
            }
        }
        Some(Word::reduce(letters))
    }

    /// Walks the dp backpointers into the slot list `(sign, syllable choice)`,
    /// where the choice is the syllable FOLLOWING that stable letter
    /// (cyclically, the last entry's syllable is `closing`).
    #[allow(clippy::type_complexity)]
    fn reconstruct(
        dp: &[[Option<(Rational, Option<(usize, usize, Option<usize>)>)>; 2]],
        mut used: usize,
        mut sign_idx: usize,
        closing: Option<usize>,
        _first_sign_idx: usize,
    ) -> Vec<(i8, Option<usize>)> {
        let mut rev: Vec<(i8, Option<usize>)> = Vec::new();
        let mut following = closing;
        loop {
            let sign = if sign_idx == 0 { 1i8 } else { -1 };
            let back = dp[used][sign_idx]
                .as_ref()
                .expect("dp cell on reconstruction path")
                .1;
            rev.push((sign, following));
            match back {
                Some((prev_len, prev_sign, choice)) => {
                    following = choice;
                    used = prev_len;
                    sign_idx = prev_sign;
                }
                None => break,
            }
        }
        rev.reverse();
        rev
    }

    /// Maximizer over amalgam skeletons: even cyclic alternation of factor-1
    /// and factor-2 syllables. Each syllable's deduction is independent of its
    /// neighbors, so a knapsack over the length budget suffices.
    fn amalgam_best_word(
        left: &PulledTree,
        right: &PulledTree,
        max_len: usize,
        lambda: &Rational,
    ) -> Option<Word> {
        let SplittingKind::Amalgam { split_index } = left.base.kind else {
            unreachable!("amalgam skeleton on non-amalgam tree");
        };
        let rank = left.rank();
        let choices_1 = choices_for(left, right, 1, split_index, &|e| e == End::One);
        let choices_2 = choices_for(left, right, split_index + 1, rank, &|e| e == End::Two);
        if choices_1.is_empty() || choices_2.is_empty() {
            return None;
        }
        let l_left = &left.base.edge_length;
        let l_right = &right.base.edge_length;
        let syl_gain = l_right - lambda * l_left;
        let value_of = |c: &Choice, factor: u8| -> Rational {
            let (dl, dr) = if factor == 1 {
                (&c.ded_left_end1, &c.ded_right_end1)
            } else {
                (&c.ded_left_end2, &c.ded_right_end2)
            };
            &syl_gain + lambda * dl - dr
        };

        // dp[expecting][len]: best value of an alternating prefix of that
        // total length whose next syllable must have factor `expecting + 1`.
        #[derive(Clone)]
        struct Cell {
            value: Rational,
            back: Option<(usize, usize)>, // (prev_len, choice index)
        }
        let mut dp: [Vec<Option<Cell>>; 2] = [vec![None; max_len + 1], vec![None; max_len + 1]];
        dp[0][0] = Some(Cell {
            value: Rational::zero(),
            back: None,
        });
        for used in 0..=max_len {
            for expecting in 0..2usize {
                let Some(cell) = dp[expecting][used].clone() else {
                    continue;
                };
                let choices = if expecting == 0 {
                    &choices_1
                } else {
                    &choices_2
                };
                for (ci, c) in choices.iter().enumerate() {
                    let nl = used + c.syllable.len();
                    if nl > max_len {
                        continue;
                    }
                    let v = &cell.value + value_of(c, expecting as u8 + 1);
                    let ne = 1 - expecting;
                    if dp[ne][nl].as_ref().is_none_or(|old| v > old.value) {
                        dp[ne][nl] = Some(Cell {
                            value: v,
                            back: Some((used, ci)),
                        });
                    }
                }
            }
        }
        // A word closes when the alternation returns to "expecting factor 1"
        // with at least one pair placed.
        let mut best: Option<(Rational, usize)> = None;
        for len in 1..=max_len {
            if let Some(cell) = &dp[0][len] {
                if best.as_ref().is_none_or(|(v, _)| cell.value > *v) {
                    best = Some((cell.value.clone(), len));
                }
            }
        }
        let (_, mut len) = best?;
        let mut expecting = 0usize;
        let mut parts_rev: Vec<Word> = Vec::new();
        while let Some(cell) = dp[expecting][len].clone() {
            match cell.back {
                Some((prev_len, ci)) => {
                    let placed = 1 - expecting;
                    let choices = if placed == 0 { &choices_1 } else { &choices_2 };
                    parts_rev.push(choices[ci].syllable.clone());
                    expecting = placed;
                    len = prev_len;
                }
                None => break,
            }
        }
        parts_rev.reverse();
        let mut letters: Vec<Letter> = Vec::new();
        for part in parts_rev {
            letters.extend(part.letters().iter().copied());
        }
        if letters.is_empty() {
            return None;
        }
        Some(Word::reduce(letters))
    }
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawPull {
    end: u8,
    element: String,
    length: String,
}

#[derive(Deserialize)]
struct RawPulledTree {
    #[serde(rename = "type")]
    kind_tag: String,
    rank: usize,
    kind: String,
    edge_length: String,
    #[serde(default)]
    split_index: Option<usize>,
    #[serde(default)]
    pulls: Vec<RawPull>,
}

impl PulledTree {
    pub fn from_json_value(value: &serde_json::Value) -> Result<PulledTree, TreeError> {
        let raw: RawPulledTree = serde_json::from_value(value.clone())
            .map_err(|e| invalid("document", e.to_string()))?;
        if raw.kind_tag != "pulled_tree" {
            return Err(invalid(
                "type",
                format!("expected \"pulled_tree\", got {:?}", raw.kind_tag),
            ));
        }
        let kind = match raw.kind.as_str() {
            "hnn" => SplittingKind::Hnn,
            "amalgam" => {
                let split_index = raw
                    .split_index
                    .ok_or_else(|| invalid("split_index", "required for amalgam splittings"))?;
                SplittingKind::Amalgam { split_index }
            }
            other => {
                return Err(invalid(
                    "kind",
                    format!("expected \"hnn\" or \"amalgam\", got {other:?}"),
                ))
            }
        };
        let edge_length =
            parse_rational(&raw.edge_length).map_err(|e| invalid("edge_length", e.to_string()))?;
        let base = SplittingTree {
            rank: raw.rank,
            kind,
            edge_length,
        };
        let pulls = raw
            .pulls
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let end = match p.end {
                    1 => End::One,
                    2 => End::Two,
                    other => {
                        return Err(invalid(
                            format!("pulls[{i}].end"),
                            format!("expected 1 or 2, got {other}"),
                        ))
                    }
                };
                let element = Word::parse(&p.element, raw.rank)
                    .map_err(|e| invalid(format!("pulls[{i}].element"), e.to_string()))?;
                let length = parse_rational(&p.length)
                    .map_err(|e| invalid(format!("pulls[{i}].length"), e.to_string()))?;
                Ok(PullSpec {
                    end,
                    element,
                    length,
                })
            })
            .collect::<Result<Vec<_>, TreeError>>()?;
        PulledTree::new(base, pulls)
    }

    pub fn from_json_str(s: &str) -> Result<PulledTree, TreeError> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| invalid("document", e.to_string()))?;
        PulledTree::from_json_value(&value)
    }
}

/// Programmatic constructors used by tests and examples.
pub mod build {
    use super::*;
    use crate::rational::rational_from_int;

    pub fn hnn_base(rank: usize, edge_length: Rational) -> PulledTree {
        PulledTree::new(
            SplittingTree {
                rank,
                kind: SplittingKind::Hnn,
                edge_length,
            },
            Vec::new(),
        )
        .expect("valid base")
    }

    pub fn amalgam_base(rank: usize, split_index: usize, edge_length: Rational) -> PulledTree {
        PulledTree::new(
            SplittingTree {
                rank,
                kind: SplittingKind::Amalgam { split_index },
                edge_length,
            },
            Vec::new(),
        )
        .expect("valid base")
    }

    pub fn with_pull(base: &PulledTree, end: End, element: &str, length: Rational) -> PulledTree {
        let mut pulls = base.pulls().to_vec();
        pulls.push(PullSpec {
            end,
            element: Word::parse(element, base.rank()).expect("valid element"),
            length,
        });
        PulledTree::new(base.base().clone(), pulls).expect("valid pull")
    }

    /// The unit-edge HNN base in rank `rank`.
    pub fn unit_hnn(rank: usize) -> PulledTree {
        hnn_base(rank, rational_from_int(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rational, rational_from_int};

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    fn commutator_pull_end1() -> PulledTree {
        build::with_pull(&build::unit_hnn(3), End::One, "abAB", rational(2, 5))
    }

    #[test]
    fn syllable_examples() {
        let t = commutator_pull_end1();
        match syllable_decompose(&t, &w("CabABca")).unwrap() {
            SyllableDecomposition::Hnn(slots) => {
                assert_eq!(slots.len(), 2);
                // Canonical rotation starts at 'a'; the slot after t reads "a b A B"
                // wait: slots are (sign, following syllable) pairs.
                let repr: Vec<(i8, String)> = slots
                    .iter()
                    .map(|(s, word)| (*s, word.to_string()))
                    .collect();
                assert!(repr.contains(&(-1, "abAB".to_string())));
                assert!(repr.contains(&(1, "a".to_string())));
            }
            other => panic!("expected hnn decomposition, got {other:?}"),
        }
        assert_eq!(
            syllable_decompose(&t, &w("ab")).unwrap(),
            SyllableDecomposition::Elliptic
        );
        let amalgam = build::amalgam_base(2, 1, rational_from_int(1));
        match syllable_decompose(&amalgam, &w("ab")).unwrap() {
            SyllableDecomposition::Amalgam(syllables) => {
                assert_eq!(syllables.len(), 2);
                assert_eq!(syllables[0], (1, w("a")));
                assert_eq!(syllables[1], (2, w("b")));
            }
            other => panic!("expected amalgam decomposition, got {other:?}"),
        }
        assert!(syllable_decompose(&t, &Word::identity()).is_err());
    }

    #[test]
    fn hnn_lengths() {
        let base = build::unit_hnn(3);
        assert_eq!(base.translation_length(&w("c")), rational_from_int(1));
        assert_eq!(base.translation_length(&w("ab")), rational_from_int(0));
        assert_eq!(base.translation_length(&w("CabABca")), rational_from_int(2));

        let t = commutator_pull_end1();
        assert_eq!(t.translation_length(&w("c")), rational_from_int(1));
        assert_eq!(t.translation_length(&w("CabABca")), rational(6, 5));
        // The end-2 pattern is not pulled in this tree.
        assert_eq!(t.translation_length(&w("cabABCa")), rational_from_int(2));
    }

    #[test]
    fn amalgam_lengths() {
        // A_1 = <a>, A_2 = <b, c>, pull (a, 1/4) at end 1.
        let base = build::amalgam_base(3, 1, rational_from_int(1));
        let t = build::with_pull(&base, End::One, "a", rational(1, 4));
        assert_eq!(base.translation_length(&w("ab")), rational_from_int(2));
        assert_eq!(t.translation_length(&w("ab")), rational(3, 2));
        assert_eq!(t.translation_length(&w("aab")), rational(3, 2));
        assert_eq!(t.translation_length(&w("b")), rational_from_int(0));
    }

    #[test]
    fn folding_oracle_agrees_on_examples() {
        let base = build::unit_hnn(3);
        assert_eq!(
            base.folding_oracle_length(&w("c")).unwrap(),
            rational_from_int(1)
        );
        let t = commutator_pull_end1();
        assert_eq!(
            t.folding_oracle_length(&w("CabABca")).unwrap(),
            rational(6, 5)
        );
        assert!(t.folding_oracle_length(&w("ab")).is_err());
        assert!(t.folding_oracle_length(&Word::identity()).is_err());

        let amalgam = build::with_pull(
            &build::amalgam_base(3, 1, rational_from_int(1)),
            End::One,
            "a",
            rational(1, 4),
        );
        assert_eq!(
            amalgam.folding_oracle_length(&w("ab")).unwrap(),
            rational(3, 2)
        );
    }

    #[test]
    fn oracle_handles_unreduced_cyclic_words() {
        // Words that are not cyclically reduced exercise the displacement
        // difference d(w^2) - d(w).
        let t = commutator_pull_end1();
        for s in ["BcabABcab", "AcaCa", "cabABCaA"] {
            let word = w(s);
            let expected = t.translation_length(&word);
            if matches!(
                decompose_cyclic(t.base(), &CyclicWord::from_word(&word)),
                SyllableDecomposition::Elliptic
            ) {
                continue;
            }
            assert_eq!(
                t.folding_oracle_length(&word).unwrap(),
                expected,
                "mismatch for {s}"
            );
        }
    }

    #[test]
    fn specialness() {
        let special = commutator_pull_end1();
        assert!(is_special_pull(&special).unwrap());
        let nonspecial = build::with_pull(&build::unit_hnn(3), End::One, "a", rational(2, 5));
        assert!(!is_special_pull(&nonspecial).unwrap());
        let amalgam = build::with_pull(
            &build::amalgam_base(3, 1, rational_from_int(1)),
            End::One,
            "a",
            rational(1, 4),
        );
        assert!(!is_special_pull(&amalgam).unwrap());
        assert!(matches!(
            is_special_pull(&build::unit_hnn(3)),
            Err(TreeError::NoPull)
        ));
        // Rank 2: every nontrivial element of A = F_1 is nonsimple.
        let rank2 = build::with_pull(&build::unit_hnn(2), End::One, "a", rational(1, 2));
        assert!(is_special_pull(&rank2).unwrap());
    }

    #[test]
    fn special_pull_equivalence_examples() {
        let t1 = commutator_pull_end1();
        let t2 = build::with_pull(&build::unit_hnn(3), End::Two, "abAB", rational(3, 10));
        let base = build::unit_hnn(3);

        assert!(special_pull_equivalent(&t1, &t1).unwrap().verdict);
        assert!(special_pull_equivalent(&t1, &t2).unwrap().verdict);
        assert!(special_pull_equivalent(&t1, &base).unwrap().verdict);

        let nonspecial = build::with_pull(&base, End::One, "a", rational(2, 5));
        assert!(!special_pull_equivalent(&nonspecial, &base).unwrap().verdict);
        assert!(
            special_pull_equivalent(&nonspecial, &nonspecial)
                .unwrap()
                .verdict
        );

        let other_base = build::hnn_base(3, rational_from_int(2));
        assert!(
            !special_pull_equivalent(
                &t1,
                &build::with_pull(&other_base, End::One, "abAB", rational(2, 5))
            )
            .unwrap()
            .verdict
        );

        assert!(matches!(
            special_pull_equivalent(&t1, &build::unit_hnn(2)),
            Err(TreeError::RankMismatch { .. })
        ));
    }

    #[test]
    fn spectrum_compare_finds_primitive_witness() {
        let base = build::unit_hnn(3);
        let t = build::with_pull(&base, End::Two, "a", rational(2, 5));
        let report = spectrum_compare(&t, &base, SpectrumClass::Primitive, 6).unwrap();
        assert!(!report.verdict);
        let witness = report.witness.expect("witness present");
        assert_eq!(witness.to_string(), "aCbc");
        assert!(whitehead::is_primitive(&witness.to_word(), 3).unwrap());
        assert_ne!(
            t.translation_length(&witness.to_word()),
            base.translation_length(&witness.to_word())
        );
        // The concrete witness family value: b c a C has lengths 6/5 vs 2.
        assert_eq!(t.translation_length(&w("bcaC")), rational(6, 5));
        assert_eq!(base.translation_length(&w("bcaC")), rational_from_int(2));
    }

    #[test]
    fn spectrum_compare_all_vs_primitive_on_special_pair() {
        let t1 = commutator_pull_end1();
        let t2 = build::with_pull(&build::unit_hnn(3), End::Two, "abAB", rational(3, 10));
        let primitive = spectrum_compare(&t1, &t2, SpectrumClass::Primitive, 7).unwrap();
        assert!(primitive.verdict, "witness: {:?}", primitive.witness);
        let all = spectrum_compare(&t1, &t2, SpectrumClass::All, 7).unwrap();
        assert!(!all.verdict);
        let witness = all.witness.unwrap();
        assert_eq!(witness, CyclicWord::parse("CabABca", 3).unwrap());
        assert_eq!(t1.translation_length(&witness.to_word()), rational(6, 5));
        assert_eq!(
            t2.translation_length(&witness.to_word()),
            rational_from_int(2)
        );
    }

    #[test]
    fn spectrum_compare_across_splitting_kinds() {
        // Same rank, different splittings: the stable letter is elliptic in
        // the amalgam but not in the HNN tree.
        let hnn = build::unit_hnn(3);
        let amalgam = build::amalgam_base(3, 1, rational_from_int(1));
        let report = spectrum_compare(&hnn, &amalgam, SpectrumClass::All, 2).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.witness.unwrap().to_string(), "c");
    }

    #[test]
    fn stretch_lower_bound_across_splitting_kinds_is_infinite() {
        let hnn = build::unit_hnn(3);
        let amalgam = build::amalgam_base(3, 1, rational_from_int(1));
        // "c" is elliptic in the amalgam and hyperbolic in the HNN tree.
        let report = stretch_lower_bound(&amalgam, &hnn, 2).unwrap();
        assert!(report.lambda.is_infinite());
        // "ab" crosses the amalgam edge but lies in the HNN vertex group.
        let report = stretch_lower_bound(&hnn, &amalgam, 2).unwrap();
        assert!(report.lambda.is_infinite());
        assert_eq!(report.witness.unwrap().to_string(), "ab");
    }

    #[test]
    fn candidate_shapes() {
        let hnn = build::unit_hnn(3);
        assert_eq!(
            enumerate_candidates_boundary(&hnn),
            vec![CandidateShape::Vertex, CandidateShape::Circle]
        );
        let amalgam = build::amalgam_base(3, 1, rational_from_int(1));
        assert_eq!(
            enumerate_candidates_boundary(&amalgam),
            vec![
                CandidateShape::Vertex,
                CandidateShape::DoublyDegenerateBarbell
            ]
        );
        let pulled = build::with_pull(&amalgam, End::One, "a", rational(1, 4));
        assert_eq!(
            enumerate_candidates_boundary(&pulled),
            enumerate_candidates_boundary(&amalgam)
        );
    }

    #[test]
    fn stretch_lower_bound_identity_and_monotone() {
        let t = commutator_pull_end1();
        for max_len in [2usize, 5, 9] {
            let report = stretch_lower_bound(&t, &t, max_len).unwrap();
            assert_eq!(
                report.lambda,
                ExtRational::Finite(rational_from_int(1)),
                "L = {max_len}"
            );
        }
        let base = build::unit_hnn(3);
        let mut previous = ExtRational::zero();
        for max_len in [1usize, 4, 7, 10] {
            let report = stretch_lower_bound(&t, &base, max_len).unwrap();
            assert!(report.lambda >= previous, "not monotone at L = {max_len}");
            previous = report.lambda;
        }
    }

    #[test]
    fn stretch_lower_bound_matches_enumeration_small() {
        // The skeleton optimizer must agree with plain class enumeration.
        let base = build::unit_hnn(3);
        let t1 = commutator_pull_end1();
        let t2 = build::with_pull(&base, End::Two, "a", rational(1, 4));
        let amalgam_base = build::amalgam_base(3, 1, rational_from_int(1));
        let amalgam_pulled = build::with_pull(&amalgam_base, End::One, "a", rational(1, 4));
        let pairs: Vec<(&PulledTree, &PulledTree)> = vec![
            (&t1, &base),
            (&base, &t1),
            (&t2, &base),
            (&t1, &t2),
            (&amalgam_pulled, &amalgam_base),
            (&amalgam_base, &amalgam_pulled),
        ];
        for (left, right) in pairs {
            for max_len in [3usize, 5] {
                let fast = stretch_lower_bound(left, right, max_len).unwrap();
                let (slow, _) = crate::stretch::max_ratio_over_classes(
                    left.rank(),
                    max_len,
                    |word| left.translation_length(word),
                    |word| right.translation_length(word),
                );
                assert_eq!(fast.lambda, slow, "L = {max_len}");
            }
        }
    }

    #[test]
    fn double_pull_ratio_reaches_two() {
        let base = build::unit_hnn(3);
        let double = build::with_pull(
            &build::with_pull(&base, End::One, "abAB", rational(1, 4)),
            End::Two,
            "abAB",
            rational(1, 4),
        );
        let report = stretch_lower_bound(&double, &base, 20).unwrap();
        assert_eq!(report.lambda, ExtRational::Finite(rational_from_int(2)));
    }

    #[test]
    fn full_pull_gives_infinite_ratio() {
        let base = build::unit_hnn(3);
        let full = build::with_pull(&base, End::One, "abAB", rational_from_int(1));
        // C abAB c <generic> is elliptic in the fully pulled tree but not in
        // the base.
        let report = stretch_lower_bound(&full, &base, 10).unwrap();
        assert!(report.lambda.is_infinite());
    }

    #[test]
    fn pull_monotonicity() {
        let base = build::unit_hnn(3);
        let t = commutator_pull_end1();
        for c in enumerate_cyclic_words(3, 5) {
            let word = c.to_word();
            assert!(t.translation_length(&word) <= base.translation_length(&word));
        }
    }

    #[test]
    fn json_parsing() {
        let doc = r#"{
            "type": "pulled_tree", "rank": 3, "kind": "hnn",
            "edge_length": "1",
            "pulls": [{"end": 1, "element": "abAB", "length": "2/5"}]
        }"#;
        let t = PulledTree::from_json_str(doc).unwrap();
        assert_eq!(t, commutator_pull_end1());

        let bad = doc.replace("\"2/5\"", "\"7/5\"");
        let err = PulledTree::from_json_str(&bad).unwrap_err();
        assert!(err.to_string().contains("pulls[0].length"), "{err}");

        let bad = doc.replace("abAB", "abc");
        let err = PulledTree::from_json_str(&bad).unwrap_err();
        assert!(err.to_string().contains("pulls[0].element"), "{err}");

        let doc = r#"{
            "type": "pulled_tree", "rank": 3, "kind": "amalgam",
            "edge_length": "1", "split_index": 1,
            "pulls": [{"end": 2, "element": "bc", "length": "1/3"}]
        }"#;
        let t = PulledTree::from_json_str(doc).unwrap();
        assert!(matches!(
            t.kind(),
            SplittingKind::Amalgam { split_index: 1 }
        ));

        // Element outside its vertex group.
        let bad = doc.replace("\"bc\"", "\"ab\"");
        assert!(PulledTree::from_json_str(&bad).is_err());
    }

    #[test]
    fn validation_rejects_overlapping_pulls() {
        let base = build::unit_hnn(3);
        let pulls = vec![
            PullSpec {
                end: End::One,
                element: w("abAB"),
                length: rational(3, 5),
            },
            PullSpec {
                end: End::Two,
                element: w("a"),
                length: rational(1, 2),
            },
        ];
        assert!(PulledTree::new(base.base().clone(), pulls).is_err());
    }

    #[test]
    fn validation_rejects_proper_power_elements() {
        let base = build::unit_hnn(3);
        let pulls = vec![PullSpec {
            end: End::One,
            element: w("abab"),
            length: rational(1, 5),
        }];
        assert!(PulledTree::new(base.base().clone(), pulls).is_err());
    }
}
