//! The subtraction-Euclid classification of cyclically reduced bases.
//!
//! Running the subtraction gcd algorithm on a coprime pair `(p, q)` yields a
//! pair sequence ending at `(1, 1)`. Replaying it backwards from a seed
//! basis `{a^±1, b^±1}` — appending one element to the other according to
//! which side shrank — builds a CR basis with element lengths exactly
//! `(p, q)`. Conversely, every CR basis shrinks back to a seed by peeling
//! the shorter element off the longer one, after rotating both elements by
//! a common prefix whenever the peeling direction comes out wrong.

use alloc::vec;
use alloc::vec::Vec;

use super::{is_basis, require_rank2, Basis2, F2Error};
use crate::words::{Letter, Word};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The trace of the subtraction Euclidean algorithm on a coprime pair,
/// from `(p, q)` down to `(1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidSequence {
    pairs: Vec<(u64, u64)>,
}

impl EuclidSequence {
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Number of subtraction steps.
    pub fn steps(&self) -> usize {
        self.pairs.len() - 1
    }
}

pub fn euclid_sequence(p: u64, q: u64) -> Result<EuclidSequence, F2Error> {
    if p == 0 || q == 0 {
        return Err(F2Error::NonPositive { p, q });
    }
    if gcd(p, q) != 1 {
        return Err(F2Error::NotCoprime { p, q });
    }
    let mut pairs = vec![(p, q)];
    let (mut p, mut q) = (p, q);
    while (p, q) != (1, 1) {
        if p < q {
            q -= p;
        } else {
            p -= q;
        }
        pairs.push((p, q));
    }
    Ok(EuclidSequence { pairs })
}

/// One of the four seed bases `{a^±1, b^±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Seed {
    pub a_positive: bool,
    pub b_positive: bool,
}

impl Seed {
    pub const ALL: [Seed; 4] = [
        Seed { a_positive: true, b_positive: true },
        Seed { a_positive: true, b_positive: false },
        Seed { a_positive: false, b_positive: true },
        Seed { a_positive: false, b_positive: false },
    ];

    /// The ordered pair `(a^±1, b^±1)`.
    pub fn words(self) -> (Word, Word) {
        let a = Word::reduce(2, [Letter::new(1, self.a_positive)]).unwrap();
        let b = Word::reduce(2, [Letter::new(2, self.b_positive)]).unwrap();
        (a, b)
    }
}

/// Build the CR basis determined by `(p, q)` and a seed: element lengths come
/// out as exactly `(p, q)`, and both elements are cyclically reduced and
/// monotone.
pub fn generate_cr_basis(p: u64, q: u64, seed: Seed) -> Result<Basis2, F2Error> {
    let seq = euclid_sequence(p, q)?;
    let (mut u, mut v) = seed.words();
    // walk the pair list from the second-to-last entry back to the first
    for &(pi, qi) in seq.pairs()[..seq.pairs().len() - 1].iter().rev() {
        if pi < qi {
            v = v.concat(&u).expect("rank 2 throughout");
        } else {
            u = u.concat(&v).expect("rank 2 throughout");
        }
    }
    debug_assert_eq!((u.len() as u64, v.len() as u64), (p, q));
    debug_assert!(u.is_cyclically_reduced() && v.is_cyclically_reduced());
    debug_assert!(u.is_monotone() && v.is_monotone());
    Ok(Basis2::new_unchecked(u, v))
}

/// Which input element was inverted before the reverse chain could run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inverted {
    None,
    First,
    Second,
}

/// Result of reversing the Euclidean construction on a CR basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseEuclid {
    /// Shrinking chain of CR bases from the normalized input down to a seed.
    /// `chain[0]` equals the (possibly inverted) input conjugated by
    /// `rotation`; each later entry peels the shorter element off the longer.
    pub chain: Vec<Basis2>,
    /// The common cyclic rotation applied to both elements.
    pub rotation: Word,
    /// The single element inversion applied before anything else.
    pub inverted: Inverted,
}

impl ReverseEuclid {
    /// The seed basis the chain terminates at.
    pub fn seed_basis(&self) -> &Basis2 {
        self.chain.last().expect("chain is never empty")
    }
}

/// Reverse the Euclidean construction: shrink a CR basis step by step down
/// to one of the four seeds.
///
/// The shrinking step requires the shorter element to be a suffix of the
/// longer. When it is a prefix instead, both elements are rotated by that
/// offending element (a common prefix of both) and the chain restarts; the
/// composite of these rotations is reported. When no chain runs even after
/// rotation, one element is inverted first, which is reported too.
pub fn reverse_euclid(x0: &Word, y0: &Word) -> Result<ReverseEuclid, F2Error> {
    require_rank2(x0)?;
    require_rank2(y0)?;
    if !x0.is_cyclically_reduced() || !y0.is_cyclically_reduced() {
        return Err(F2Error::NotCyclicallyReduced);
    }
    if !is_basis(x0, y0)? {
        return Err(F2Error::NotABasis);
    }
    for inverted in [Inverted::None, Inverted::First, Inverted::Second] {
        let (cx, cy) = match inverted {
            Inverted::None => (x0.clone(), y0.clone()),
            Inverted::First => (x0.inverse(), y0.clone()),
            Inverted::Second => (x0.clone(), y0.inverse()),
        };
        match try_chain(cx, cy)? {
            Some((chain, rotation)) => {
                return Ok(ReverseEuclid { chain, rotation, inverted });
            }
            None => continue,
        }
    }
    Err(F2Error::Internal("no inversion variant admits a reverse chain"))
}

/// Run the suffix-peeling chain from `(cx, cy)`, applying the common-prefix
/// rotation fix as needed. `Ok(None)` means this inversion variant cannot
/// work; rotations are bounded so invalid variants cannot loop.
fn try_chain(mut cx: Word, mut cy: Word) -> Result<Option<(Vec<Basis2>, Word)>, F2Error> {
    let mut rotation = Word::identity(2);
    let max_restarts = cx.len() + cy.len() + 2;
    for _ in 0..max_restarts {
        match run_suffix_chain(&cx, &cy)? {
            ChainOutcome::Done(chain) => {
                debug_assert!(chain
                    .iter()
                    .all(|b| b.is_cr() && is_basis(b.u(), b.v()).unwrap_or(false)));
                return Ok(Some((chain, rotation)));
            }
            ChainOutcome::NeedsRotation(by) => {
                // `by` is a common prefix of the current pair: rotating both
                // elements by it keeps them CR and keeps the pair a basis
                let rx = rotate_by_prefix(&cx, &by);
                let ry = rotate_by_prefix(&cy, &by);
                match (rx, ry) {
                    (Some(rx), Some(ry)) => {
                        rotation = rotation.concat(&by).expect("rank 2 throughout");
                        cx = rx;
                        cy = ry;
                    }
                    _ => return Ok(None),
                }
            }
            ChainOutcome::Stuck => return Ok(None),
        }
    }
    Ok(None)
}

enum ChainOutcome {
    Done(Vec<Basis2>),
    /// The shorter element came out as a prefix (not a suffix) of the longer:
    /// rotate both elements by it and restart.
    NeedsRotation(Word),
    Stuck,
}

fn run_suffix_chain(cx: &Word, cy: &Word) -> Result<ChainOutcome, F2Error> {
    let (mut x, mut y) = (cx.clone(), cy.clone());
    let mut chain = vec![Basis2::new_unchecked(x.clone(), y.clone())];
    loop {
        if x.len() == 1 && y.len() == 1 {
            if x.first().unwrap().generator() == y.first().unwrap().generator() {
                return Err(F2Error::Internal("chain ended at a one-generator pair"));
            }
            return Ok(ChainOutcome::Done(chain));
        }
        if x.len() == y.len() {
            // CR basis element lengths are coprime, so equal lengths above 1
            // cannot happen for genuine input
            return Err(F2Error::Internal("equal element lengths above the seed"));
        }
        let x_is_shorter = x.len() < y.len();
        let (short, long) = if x_is_shorter { (&x, &y) } else { (&y, &x) };
        if short.is_suffix_of(long) {
            let t = Word::reduce(2, long.letters()[..long.len() - short.len()].iter().copied())?;
            if x_is_shorter {
                y = t;
            } else {
                x = t;
            }
            chain.push(Basis2::new_unchecked(x.clone(), y.clone()));
        } else if short.is_prefix_of(long) {
            return Ok(ChainOutcome::NeedsRotation(short.clone()));
        } else {
            return Ok(ChainOutcome::Stuck);
        }
    }
}

/// `prefix⁻¹ · w · prefix` when `prefix` really is a prefix of `w`, i.e. the
/// clean cyclic rotation moving `prefix` to the back.
fn rotate_by_prefix(w: &Word, prefix: &Word) -> Option<Word> {
    if !prefix.is_prefix_of(w) {
        return None;
    }
    let rotated = w.rotated_left(prefix.len());
    (rotated.len() == w.len()).then_some(rotated)
}
