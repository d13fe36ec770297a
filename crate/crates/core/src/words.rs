//! Reduced words in a free group of finite rank.
//!
//! Generators are written `a, b, c, ...` and their inverses `A, B, C, ...`.
//! Letters are ordered `a < A < b < B < ...` (generator index first, positive
//! before negative); all lexicographic tie-breaking in the crate uses this
//! order. `Word` is always freely reduced, `CyclicWord` is cyclically reduced
//! and stored as the lexicographically least rotation (inversion is *not*
//! quotiented out: callers wanting an inversion-invariant key take
//! `min(w, w.inverse())` themselves).

use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// One letter `x_i` or `x_i^{-1}`, encoded as a nonzero signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter(i16);

impl Letter {
    /// The generator `x_index`, `index` counted from 1.
    pub fn generator(index: usize) -> Letter {
        assert!(
            index >= 1 && index <= i16::MAX as usize,
            "generator index out of range"
        );
        Letter(index as i16)
    }

    pub fn inverse_generator(index: usize) -> Letter {
        Letter::generator(index).inverse()
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        assert!(self.index() <= 26, "letters beyond 'z' have no rendering");
        (base + (self.index() - 1) as u8) as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter::generator(c as usize - 'a' as usize + 1)),
            'A'..='Z' => Some(Letter::inverse_generator(c as usize - 'A' as usize + 1)),
            _ => None,
        }
    }

    fn order_key(self) -> u32 {
        2 * (self.index() as u32 - 1) + u32::from(self.is_inverse())
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid character {ch:?} in word {word:?}: words use [a-zA-Z] only")]
    InvalidCharacter { word: String, ch: char },
    #[error("letter {ch:?} in word {word:?} exceeds rank {rank}")]
    LetterBeyondRank { word: String, ch: char, rank: usize },
    #[error("the trivial word is not allowed here")]
    TrivialWord,
}

/// A freely reduced word; the invariant is maintained by every constructor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut stack: Vec<Letter> = Vec::new();
        for l in raw {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack }
    }

    /// Parses the bit-exact word syntax: lowercase generator, uppercase
    /// inverse, empty string is the identity. Letters beyond `rank` are a
    /// parse error.
    pub fn parse(s: &str, rank: usize) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let l = Letter::from_char(ch).ok_or(WordError::InvalidCharacter {
                word: s.to_owned(),
                ch,
            })?;
            if l.index() > rank {
                return Err(WordError::LetterBeyondRank {
                    word: s.to_owned(),
                    ch,
                    rank,
                });
            }
            letters.push(l);
        }
        Ok(Word::reduce(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    /// No cancellation between the last and first letter.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) => *f != l.inverse(),
            _ => true,
        }
    }

    /// Writes `self = conjugator * cyclic * conjugator^{-1}` with `cyclic`
    /// cyclically reduced (and stored in its canonical rotation; the rotation
    /// offset is folded into the conjugator).
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == self.letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        let core = self.letters[lo..hi].to_vec();
        let r = least_rotation_index(&core);
        let conjugator = Word::reduce(self.letters[..lo].iter().chain(core[..r].iter()).copied());
        (CyclicWord::from_cyclically_reduced(core), conjugator)
    }

    /// Maximal decomposition `self = root^exponent` with `exponent >= 2`,
    /// if one exists. Errors on the trivial word.
    pub fn is_proper_power(&self) -> Result<Option<(Word, u32)>, WordError> {
        if self.is_empty() {
            return Err(WordError::TrivialWord);
        }
        let (cyclic, conj) = self.cyclic_reduce();
        let n = cyclic.len();
        let letters = cyclic.letters();
        // Smallest period d dividing n such that rotating by d fixes the word.
        for d in 1..n {
            if n % d != 0 {
                continue;
            }
            if (0..n).all(|i| letters[i] == letters[(i + d) % n]) {
                let root_core = Word {
                    letters: letters[..d].to_vec(),
                };
                let root = root_core.conjugate_by(&conj);
                return Ok(Some((root, (n / d) as u32)));
            }
        }
        Ok(None)
    }

    /// Homomorphic image under `x_i -> images[i-1]`, freely reduced.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.letters {
            let image = &images[l.index() - 1];
            let push = |out: &mut Vec<Letter>, letter: Letter| {
                if out.last() == Some(&letter.inverse()) {
                    out.pop();
                } else {
                    out.push(letter);
                }
            };
            if l.is_inverse() {
                for m in image.letters.iter().rev() {
                    push(&mut out, m.inverse());
                }
            } else {
                for m in image.letters.iter() {
                    push(&mut out, *m);
                }
            }
        }
        Word { letters: out }
    }
}

/// `apply_substitution(w, images)`: free-standing form of [`Word::substitute`].
pub fn apply_substitution(w: &Word, images: &[Word]) -> Word {
    w.substitute(images)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A cyclically reduced conjugacy-class representative, stored as its
/// lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Canonicalizes a cyclically reduced letter sequence. Panics (debug) when
    /// the input is not cyclically reduced.
    pub fn from_cyclically_reduced(letters: Vec<Letter>) -> CyclicWord {
        debug_assert!(
            is_cyclically_reduced(&letters),
            "input not cyclically reduced"
        );
        CyclicWord {
            letters: least_rotation(letters),
        }
    }

    /// Cyclic class of an arbitrary word.
    pub fn from_word(w: &Word) -> CyclicWord {
        w.cyclic_reduce().0
    }

    pub fn parse(s: &str, rank: usize) -> Result<CyclicWord, WordError> {
        Ok(CyclicWord::from_word(&Word::parse(s, rank)?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// The canonical rotation read as an ordinary (reduced) word.
    pub fn to_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
        }
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::from_cyclically_reduced(
            self.letters.iter().rev().map(|l| l.inverse()).collect(),
        )
    }

    /// Length-then-lexicographic comparison, the order in which
    /// [`enumerate_cyclic_words`] produces classes. Witness selection uses
    /// this order throughout the crate.
    pub fn shortlex_cmp(&self, other: &CyclicWord) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// True when some generator index in `1..=rank` does not occur at all.
    pub fn omits_some_generator(&self, rank: usize) -> bool {
        let mut seen = vec![false; rank + 1];
        for l in &self.letters {
            seen[l.index()] = true;
        }
        (1..=rank).any(|i| !seen[i])
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

fn is_cyclically_reduced(letters: &[Letter]) -> bool {
    let n = letters.len();
    if n == 0 {
        return true;
    }
    (0..n).all(|i| letters[i] != letters[(i + 1) % n].inverse())
}

fn least_rotation_index(letters: &[Letter]) -> usize {
    let n = letters.len();
    if n <= 1 {
        return 0;
    }
    let mut best = 0usize;
    for start in 1..n {
        for k in 0..n {
            let a = letters[(start + k) % n];
            let b = letters[(best + k) % n];
            match a.cmp(&b) {
                Ordering::Less => {
                    best = start;
                    break;
                }
                Ordering::Greater => break,
                Ordering::Equal => {}
            }
        }
    }
    best
}

fn least_rotation(letters: Vec<Letter>) -> Vec<Letter> {
    let n = letters.len();
    let best = least_rotation_index(&letters);
    (0..n).map(|k| letters[(best + k) % n]).collect()
}

/// All cyclically reduced conjugacy-class representatives of length `1..=max_len`,
/// each exactly once (canonical rotation), in length-then-lexicographic order.
pub fn enumerate_cyclic_words(rank: usize, max_len: usize) -> impl Iterator<Item = CyclicWord> {
    CyclicWordEnumerator::new(rank, max_len)
}

struct CyclicWordEnumerator {
    rank: usize,
    max_len: usize,
    len: usize,
    buffer: std::vec::IntoIter<CyclicWord>,
}

impl CyclicWordEnumerator {
    fn new(rank: usize, max_len: usize) -> Self {
        CyclicWordEnumerator {
            rank,
            max_len,
            len: 0,
            buffer: Vec::new().into_iter(),
        }
    }

    fn fill_next_length(&mut self) -> bool {
        while self.len < self.max_len {
            self.len += 1;
            let mut out = Vec::new();
            let mut current: Vec<Letter> = Vec::with_capacity(self.len);
            collect_canonical(self.rank, self.len, &mut current, &mut out);
            if !out.is_empty() {
                self.buffer = out.into_iter();
                return true;
            }
        }
        false
    }
}

impl Iterator for CyclicWordEnumerator {
    type Item = CyclicWord;

    fn next(&mut self) -> Option<CyclicWord> {
        loop {
            if let Some(w) = self.buffer.next() {
                return Some(w);
            }
            if !self.fill_next_length() {
                return None;
            }
        }
    }
}

fn all_letters(rank: usize) -> impl Iterator<Item = Letter> {
    // Ascending in the letter order a < A < b < B < ...
    (1..=rank).flat_map(|i| [Letter::generator(i), Letter::inverse_generator(i)])
}

fn collect_canonical(
    rank: usize,
    len: usize,
    current: &mut Vec<Letter>,
    out: &mut Vec<CyclicWord>,
) {
    if current.len() == len {
        if current[0] != current[len - 1].inverse()
            && current[..] == least_rotation(current.clone())[..]
        {
            out.push(CyclicWord {
                letters: current.clone(),
            });
        }
        return;
    }
    for l in all_letters(rank) {
        if let Some(&prev) = current.last() {
            if l == prev.inverse() {
                continue;
            }
        }
        // A canonical (least) rotation never starts above its first letter.
        if !current.is_empty() && l < current[0] {
            continue;
        }
        current.push(l);
        collect_canonical(rank, len, current, out);
        current.pop();
    }
}

/// All freely reduced words of length `0..=max_len`, length-then-lex order.
/// Brute-force oracle fodder; exponential in `max_len`.
pub fn enumerate_reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in all_letters(rank) {
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word { letters: v.clone() }));
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::parse(s, 26).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("aA"), Word::identity());
        assert_eq!(w("abBa"), w("aa"));
        assert_eq!(w("abAB").to_string(), "abAB");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("a b", 2),
            Err(WordError::InvalidCharacter { .. })
        ));
        assert!(matches!(
            Word::parse("abc", 2),
            Err(WordError::LetterBeyondRank { .. })
        ));
    }

    #[test]
    fn letter_order_is_index_major() {
        let a = Letter::generator(1);
        let cap_a = Letter::inverse_generator(1);
        let b = Letter::generator(2);
        assert!(a < cap_a && cap_a < b);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, conj) = w("baB").cyclic_reduce();
        assert_eq!(c, cw("a"));
        assert_eq!(conj, w("b"));

        let (c, conj) = w("abAB").cyclic_reduce();
        assert_eq!(c.to_string(), "abAB");
        assert!(conj.is_empty());

        // Acac is already cyclically reduced; canonical rotation starts at 'a'
        // and the rotation offset lands in the conjugator.
        let (c, conj) = w("Acac").cyclic_reduce();
        assert_eq!(c.to_string(), "acAc");
        assert_eq!(conj.concat(&c.to_word()).concat(&conj.inverse()), w("Acac"));
    }

    #[test]
    fn cyclic_reduce_matches_exhaustive_conjugation_oracle() {
        // Oracle: the cyclic length of w is the minimal length of g w g^{-1}
        // over conjugators g, and the cyclic word is reachable by conjugation.
        for word in enumerate_reduced_words(2, 4) {
            let (cyclic, conj) = word.cyclic_reduce();
            assert_eq!(
                conj.concat(&cyclic.to_word()).concat(&conj.inverse()),
                word,
                "decomposition identity failed for {word}"
            );
            let mut min_len = word.len();
            for g in enumerate_reduced_words(2, 2) {
                min_len = min_len.min(word.conjugate_by(&g.inverse()).len());
            }
            assert_eq!(cyclic.len(), min_len, "cyclic length wrong for {word}");
        }
    }

    #[test]
    fn proper_power_examples() {
        assert_eq!(w("abab").is_proper_power().unwrap(), Some((w("ab"), 2)));
        assert_eq!(w("ab").is_proper_power().unwrap(), None);
        assert_eq!(w("aabaab").is_proper_power().unwrap(), Some((w("aab"), 2)));
        assert_eq!(w("aaaa").is_proper_power().unwrap(), Some((w("a"), 4)));
        // Conjugated powers factor through the conjugator.
        assert_eq!(w("abbA").is_proper_power().unwrap(), Some((w("abA"), 2)));
        assert!(Word::identity().is_proper_power().is_err());
    }

    #[test]
    fn substitution_examples() {
        let images = vec![w("a"), w("ba")];
        assert_eq!(w("ab").substitute(&images), w("aba"));
        let any = vec![w("bab"), w("AA")];
        assert_eq!(w("aA").substitute(&any), Word::identity());
        let swap = vec![w("b"), w("a")];
        assert_eq!(w("abAB").substitute(&swap), w("baBA"));
    }

    #[test]
    fn enumerate_rank1() {
        let got: Vec<String> = enumerate_cyclic_words(1, 2)
            .map(|c| c.to_string())
            .collect();
        assert_eq!(got, vec!["a", "A", "aa", "AA"]);
    }

    #[test]
    fn enumerate_rank2_counts() {
        let len1: Vec<String> = enumerate_cyclic_words(2, 1)
            .map(|c| c.to_string())
            .collect();
        assert_eq!(len1, vec!["a", "A", "b", "B"]);
        let upto2: Vec<String> = enumerate_cyclic_words(2, 2)
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            upto2,
            vec!["a", "A", "b", "B", "aa", "ab", "aB", "AA", "Ab", "AB", "bb", "BB"]
        );
        assert_eq!(upto2.len(), 12);
    }

    #[test]
    fn enumeration_is_canonical_and_duplicate_free() {
        let all: Vec<CyclicWord> = enumerate_cyclic_words(3, 5).collect();
        let mut seen = std::collections::HashSet::new();
        for c in &all {
            assert!(is_cyclically_reduced(c.letters()));
            assert_eq!(c.letters()[..], least_rotation(c.letters().to_vec())[..]);
            assert!(seen.insert(c.clone()), "duplicate {c}");
        }
        // Every cyclically reduced word's class appears.
        for word in enumerate_reduced_words(3, 4) {
            if word.is_empty() {
                continue;
            }
            let (c, conj) = word.cyclic_reduce();
            if conj.is_empty() && c.len() == word.len() {
                assert!(seen.contains(&c), "missing class of {word}");
            }
        }
    }
}
