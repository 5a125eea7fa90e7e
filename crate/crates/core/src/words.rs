//! Freely reduced words over a rank-`r` alphabet with formal inverses.
//!
//! Letters are encoded as signed nonzero integers: `+i` is the `i`-th
//! generator, `-i` its inverse, so inversion and comparison are constant
//! time. The text syntax maps `a`..`z` to generators 1..26 and `A`..`Z` to
//! their inverses, e.g. `"abA"` parses as `a·b·a⁻¹`.
//!
//! Every [`Word`] carries the rank of its ambient free group; operations on
//! words of different ranks are an error, never a silent promotion.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::num::NonZeroI32;

/// A single generator or inverse generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(NonZeroI32);

impl Letter {
    /// The `index`-th generator (1-based). Panics if `index` is 0.
    pub fn positive(index: u32) -> Letter {
        assert!(index >= 1 && index <= i32::MAX as u32, "generator index out of range");
        Letter(NonZeroI32::new(index as i32).unwrap())
    }

    /// The inverse of the `index`-th generator (1-based).
    pub fn negative(index: u32) -> Letter {
        Letter::positive(index).inverse()
    }

    pub fn new(index: u32, positive: bool) -> Letter {
        if positive {
            Letter::positive(index)
        } else {
            Letter::negative(index)
        }
    }

    /// 1-based index of the underlying generator.
    pub fn generator(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    pub fn inverse(self) -> Letter {
        Letter(NonZeroI32::new(-self.0.get()).unwrap())
    }

    /// True when `self` and `other` are the same generator with opposite signs.
    pub fn cancels(self, other: Letter) -> bool {
        self.0.get() == -other.0.get()
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Letter) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order: `a < a⁻¹ < b < b⁻¹ < …` (generator first, positive before negative).
impl Ord for Letter {
    fn cmp(&self, other: &Letter) -> Ordering {
        (self.generator(), !self.is_positive()).cmp(&(other.generator(), !other.is_positive()))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.generator();
        if idx <= 26 {
            let base = if self.is_positive() { b'a' } else { b'A' };
            write!(f, "{}", (base + (idx - 1) as u8) as char)
        } else if self.is_positive() {
            write!(f, "<{idx}>")
        } else {
            write!(f, "<{idx}>^-1")
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Errors from word construction and word-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    /// A generator index exceeds the ambient rank.
    GeneratorOutOfRange { index: u32, rank: u32 },
    /// Two words of different ambient ranks were mixed in one operation.
    RankMismatch { left: u32, right: u32 },
    /// An operation required a nonempty word.
    EmptyWord,
    /// Unparseable character in the text syntax (0-based column).
    InvalidChar { ch: char, column: usize },
    /// A rank outside `1..=i32::MAX`.
    InvalidRank(u32),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::GeneratorOutOfRange { index, rank } => {
                write!(f, "generator {index} exceeds rank {rank}")
            }
            WordError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            WordError::EmptyWord => write!(f, "operation requires a nonempty word"),
            WordError::InvalidChar { ch, column } => {
                write!(f, "invalid character {ch:?} at column {column}")
            }
            WordError::InvalidRank(r) => write!(f, "invalid rank {r}"),
        }
    }
}

impl core::error::Error for WordError {}

/// A freely reduced word in the free group of rank `rank`.
///
/// The letter sequence never contains an adjacent cancelling pair; all
/// constructors reduce. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    /// The identity element of `F(rank)`.
    pub fn identity(rank: u32) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Freely reduce a letter sequence. Idempotent; errors when a letter
    /// exceeds `rank`.
    pub fn reduce(rank: u32, letters: impl IntoIterator<Item = Letter>) -> Result<Word, WordError> {
        if rank == 0 || rank > i32::MAX as u32 {
            return Err(WordError::InvalidRank(rank));
        }
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator() > rank {
                return Err(WordError::GeneratorOutOfRange { index: l.generator(), rank });
            }
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Ok(Word { rank, letters: stack })
    }

    /// Parse the text syntax (`a`..`z` generators, `A`..`Z` inverses) with an
    /// explicit ambient rank.
    pub fn parse(text: &str, rank: u32) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for (column, ch) in text.chars().enumerate() {
            let l = match ch {
                'a'..='z' => Letter::positive(ch as u32 - 'a' as u32 + 1),
                'A'..='Z' => Letter::negative(ch as u32 - 'A' as u32 + 1),
                _ => return Err(WordError::InvalidChar { ch, column }),
            };
            if l.generator() > rank {
                return Err(WordError::GeneratorOutOfRange { index: l.generator(), rank });
            }
            letters.push(l);
        }
        Word::reduce(rank, letters)
    }

    /// Parse with the rank inferred as the highest generator used (at least 1).
    pub fn parse_infer(text: &str) -> Result<Word, WordError> {
        let mut max = 1;
        for (column, ch) in text.chars().enumerate() {
            match ch {
                'a'..='z' => max = max.max(ch as u32 - 'a' as u32 + 1),
                'A'..='Z' => max = max.max(ch as u32 - 'A' as u32 + 1),
                _ => return Err(WordError::InvalidChar { ch, column }),
            }
        }
        Word::parse(text, max)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Re-ambient the word in a larger free group. Lowering the rank is an
    /// error if a letter would fall outside it.
    pub fn promoted(&self, rank: u32) -> Result<Word, WordError> {
        Word::reduce(rank, self.letters.iter().copied())
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            Err(WordError::RankMismatch { left: self.rank, right: other.rank })
        } else {
            Ok(())
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        Word::reduce(self.rank, self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// The reduced conjugate `x · self · x⁻¹`.
    pub fn conjugate_by(&self, x: &Word) -> Result<Word, WordError> {
        x.concat(self)?.concat(&x.inverse())
    }

    /// The reduced power `self^n` (negative `n` inverts).
    pub fn pow(&self, n: i32) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut acc = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            acc = acc.concat(&base).expect("same rank");
        }
        acc
    }

    /// First letter of `self` differs from the first letter of `other`.
    pub fn heads_distinct(&self, other: &Word) -> Result<bool, WordError> {
        self.check_rank(other)?;
        match (self.first(), other.first()) {
            (Some(x), Some(y)) => Ok(x != y),
            _ => Err(WordError::EmptyWord),
        }
    }

    /// Reduced, and the first letter is not the inverse of the last
    /// (words of length ≤ 1 count as cyclically reduced).
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => !f.cancels(l),
            _ => true,
        }
    }

    /// Split `self = x · core · x⁻¹` with `core` cyclically reduced and the
    /// conjugator `x` as long as possible.
    pub fn cyclic_decompose(&self) -> CyclicDecomposition {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        CyclicDecomposition {
            conjugator: Word { rank: self.rank, letters: self.letters[..lo].to_vec() },
            core: Word { rank: self.rank, letters: self.letters[lo..hi].to_vec() },
        }
    }

    /// The cyclically reduced core of the word.
    pub fn cyclic_core(&self) -> Word {
        self.cyclic_decompose().core
    }

    /// Rotate a cyclically reduced word left by `k` letters.
    ///
    /// Rotations of a CR word stay reduced and CR.
    pub fn rotated_left(&self, k: usize) -> Word {
        debug_assert!(self.is_cyclically_reduced());
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word { rank: self.rank, letters }
    }

    /// For each generator, all its occurrences carry the same sign.
    pub fn is_monotone(&self) -> bool {
        // 0 = unseen, +1 / -1 = committed sign
        let mut seen = vec![0i8; self.rank as usize];
        for l in &self.letters {
            let slot = &mut seen[(l.generator() - 1) as usize];
            let sign = if l.is_positive() { 1 } else { -1 };
            if *slot == 0 {
                *slot = sign;
            } else if *slot != sign {
                return false;
            }
        }
        true
    }

    /// Signed occurrence count per generator, indexed 0..rank.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank as usize];
        for l in &self.letters {
            sums[(l.generator() - 1) as usize] += if l.is_positive() { 1 } else { -1 };
        }
        sums
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.rank == other.rank && other.letters.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        self.rank == other.rank && other.letters.ends_with(&self.letters)
    }

    /// Is `self` a prefix of the reduced form of `u^k` or `(u⁻¹)^k` for some
    /// `k ≥ 0`?
    ///
    /// `u` may fail to be cyclically reduced; powers are reduced before the
    /// prefix test, and the scan runs until the reduced power is long enough
    /// that further powers cannot change the relevant prefix.
    pub fn is_prefix_of_power(&self, u: &Word) -> Result<bool, WordError> {
        self.check_rank(u)?;
        if u.is_empty() {
            return Err(WordError::EmptyWord);
        }
        if self.is_empty() {
            return Ok(true);
        }
        for base in [u.clone(), u.inverse()] {
            let mut power = Word::identity(self.rank);
            // Appending `base` can erase at most |base| letters of the
            // current power, so once |power| ≥ |self| + |base| the prefix of
            // length |self| is final.
            while power.len() < self.len() + base.len() {
                power = power.concat(&base).expect("same rank");
                if self.is_prefix_of(&power) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Apply the homomorphism sending generator `i` to `images[i-1]`.
    ///
    /// The result lives in the common rank of the images.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, WordError> {
        let target_rank = match images.first() {
            Some(w) => w.rank,
            None => return Err(WordError::InvalidRank(0)),
        };
        for w in images {
            if w.rank != target_rank {
                return Err(WordError::RankMismatch { left: target_rank, right: w.rank });
            }
        }
        let mut letters = Vec::new();
        for l in &self.letters {
            let idx = (l.generator() - 1) as usize;
            let image = images.get(idx).ok_or(WordError::GeneratorOutOfRange {
                index: l.generator(),
                rank: images.len() as u32,
            })?;
            if l.is_positive() {
                letters.extend(image.letters.iter().copied());
            } else {
                letters.extend(image.letters.iter().rev().map(|x| x.inverse()));
            }
        }
        Word::reduce(target_rank, letters)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex: shorter words first, then letterwise by [`Letter`]'s order.
impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"(r{})", self.rank)
    }
}

/// Render a word back into the text syntax (`"1"` would be ambiguous, so the
/// empty word prints as the empty string here, unlike `Display`).
pub fn to_text(w: &Word) -> String {
    let mut s = String::with_capacity(w.len());
    for l in w.letters() {
        let idx = l.generator();
        debug_assert!(idx <= 26, "text syntax covers ranks up to 26");
        let base = if l.is_positive() { b'a' } else { b'A' };
        s.push((base + (idx - 1) as u8) as char);
    }
    s
}

/// A maximal-conjugator split `w = conjugator · core · conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: Word,
    pub core: Word,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_pairs() {
        assert_eq!(Word::parse("abBa", 2).unwrap(), w("aa"));
        assert_eq!(Word::parse("aBa", 2).unwrap(), w("aBa"));
        assert_eq!(Word::parse("aA", 2).unwrap(), Word::identity(2));
    }

    #[test]
    fn reduce_rejects_out_of_range_letters() {
        assert_eq!(
            Word::parse("abc", 2),
            Err(WordError::GeneratorOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn parse_reports_offending_column() {
        assert_eq!(
            Word::parse("ab?x", 2),
            Err(WordError::InvalidChar { ch: '?', column: 2 })
        );
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["", "a", "aBa", "AAb", "abAB"] {
            assert_eq!(to_text(&Word::parse(s, 2).unwrap()), s);
        }
    }

    #[test]
    fn cyclic_decompose_examples() {
        // visible conjugation
        let d = w("baB").cyclic_decompose();
        assert_eq!((d.conjugator, d.core), (w("b"), w("a")));
        // already CR
        let d = w("aabb").cyclic_decompose();
        assert_eq!((d.conjugator, d.core), (Word::identity(2), w("aabb")));
    }

    #[test]
    fn cyclic_decompose_matches_brute_force() {
        // Oracle: try every split w = x u x^-1 by explicit letters, pick max |x|.
        let brute = |input: &Word| -> (Word, Word) {
            let n = input.len();
            for cut in (0..=n / 2).rev() {
                let x = Word::reduce(2, input.letters()[..cut].iter().copied()).unwrap();
                let u = Word::reduce(2, input.letters()[cut..n - cut].iter().copied()).unwrap();
                let rebuilt = x.concat(&u).unwrap().concat(&x.inverse()).unwrap();
                if rebuilt == *input
                    && u.is_cyclically_reduced()
                    && x.len() + u.len() + x.len() == n
                {
                    return (x, u);
                }
            }
            unreachable!("identity split always works");
        };
        for s in ["abaBA", "aBa", "aabb", "babA", "a", ""] {
            let input = w(s);
            let d = input.cyclic_decompose();
            let (bx, bu) = brute(&input);
            // brute force scans cuts in decreasing |x|, so the first hit is maximal
            assert_eq!((d.conjugator.clone(), d.core.clone()), (bx, bu), "input {s}");
            let rebuilt = d.conjugator.concat(&d.core).unwrap().concat(&d.conjugator.inverse()).unwrap();
            assert_eq!(rebuilt, input);
        }
        let d = w("abaBA").cyclic_decompose();
        assert_eq!((d.conjugator, d.core), (w("ab"), w("a")));
    }

    #[test]
    fn monotone_examples() {
        assert!(w("aabb").is_monotone());
        assert!(!w("abaB").is_monotone());
        assert!(Word::identity(2).is_monotone());
    }

    #[test]
    fn heads_distinct_examples() {
        assert!(w("ab").heads_distinct(&w("ba")).unwrap());
        assert!(w("ab").heads_distinct(&w("Ab")).unwrap());
        assert!(!w("ab").heads_distinct(&w("aB")).unwrap());
        assert_eq!(
            w("ab").heads_distinct(&Word::identity(2)),
            Err(WordError::EmptyWord)
        );
    }

    #[test]
    fn exponent_sums_examples() {
        assert_eq!(w("aabb").exponent_sums(), vec![2, 2]);
        assert_eq!(w("aBa").exponent_sums(), vec![2, -1]);
        assert_eq!(Word::identity(2).exponent_sums(), vec![0, 0]);
    }

    #[test]
    fn prefix_of_power_examples() {
        assert!(w("aba").is_prefix_of_power(&w("ab")).unwrap());
        assert!(w("AB").is_prefix_of_power(&w("ba")).unwrap());
        assert!(!w("ba").is_prefix_of_power(&w("ab")).unwrap());
        assert_eq!(
            w("a").is_prefix_of_power(&Word::identity(2)),
            Err(WordError::EmptyWord)
        );
    }

    #[test]
    fn prefix_of_power_handles_non_cyclically_reduced_base() {
        // (abA)^k = a b^k A, so abbb is a prefix of the 3rd power.
        assert!(w("abbb").is_prefix_of_power(&w("abA")).unwrap());
        assert!(!w("abab").is_prefix_of_power(&w("abA")).unwrap());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let three = Word::parse("c", 3).unwrap();
        assert!(matches!(w("a").concat(&three), Err(WordError::RankMismatch { .. })));
    }

    #[test]
    fn substitute_applies_homomorphism() {
        // a -> x, b -> y^-1 z y  maps  a^2 b^2  to  x^2 y^-1 z^2 y
        let images = [Word::parse("a", 3).unwrap(), Word::parse("Bcb", 3).unwrap()];
        let out = w("aabb").substitute(&images).unwrap();
        assert_eq!(out, Word::parse("aaBccb", 3).unwrap());
    }

    #[test]
    fn shortlex_order() {
        assert!(w("b") < w("ab"));
        assert!(w("a") < w("A"));
        assert!(w("ab") < w("ba"));
    }
}
