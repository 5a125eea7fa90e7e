//! The rank-two toolkit: cyclically reduced bases via the subtraction
//! Euclidean construction, the reverse reduction, the decomposition of
//! arbitrary bases, enumeration, and primitivity.
//!
//! Everything here is specific to `F₂ = F(a, b)`; operations reject words of
//! any other rank.

mod enumerate;
mod euclid;
mod express;
mod primitive;

pub use enumerate::{enumerate_bases, enumerate_cr_bases, EnumMode, BRUTE_CAP, STRUCTURAL_CAP};
pub use euclid::{
    euclid_sequence, generate_cr_basis, reverse_euclid, EuclidSequence, Inverted, ReverseEuclid,
    Seed,
};
pub use express::express_in_basis;
pub use primitive::{
    exponent_pattern, is_primitive, ExponentPattern, PatternReport, PatternViolation,
};

use alloc::string::String;
use core::fmt;

use crate::graph::Workspace;
use crate::words::{Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F2Error {
    Word(WordError),
    /// An operation restricted to rank 2 received another rank.
    NotRank2 { rank: u32 },
    /// Euclid construction needs positive coprime integers.
    NotCoprime { p: u64, q: u64 },
    NonPositive { p: u64, q: u64 },
    /// The word pair does not generate the free group of rank 2.
    NotABasis,
    /// The operation needs both elements cyclically reduced.
    NotCyclicallyReduced,
    /// Enumeration request larger than the configured cap.
    CapExceeded { requested: usize, cap: usize },
    /// A condition the theory guarantees failed at runtime — a bug.
    Internal(&'static str),
    /// The pattern corollary's hypothesis is unattainable for this input.
    PatternPrecondition(String),
}

impl fmt::Display for F2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F2Error::Word(e) => write!(f, "{e}"),
            F2Error::NotRank2 { rank } => write!(f, "operation requires rank 2, got rank {rank}"),
            F2Error::NotCoprime { p, q } => write!(f, "({p}, {q}) are not coprime"),
            F2Error::NonPositive { p, q } => write!(f, "({p}, {q}) must both be positive"),
            F2Error::NotABasis => write!(f, "the words do not form a basis of F2"),
            F2Error::NotCyclicallyReduced => {
                write!(f, "the words must be cyclically reduced")
            }
            F2Error::CapExceeded { requested, cap } => {
                write!(f, "enumeration up to length {requested} exceeds the cap {cap}")
            }
            F2Error::Internal(what) => write!(f, "internal invariant violated: {what}"),
            F2Error::PatternPrecondition(why) => write!(f, "pattern precondition unmet: {why}"),
        }
    }
}

impl core::error::Error for F2Error {}

impl From<WordError> for F2Error {
    fn from(e: WordError) -> Self {
        F2Error::Word(e)
    }
}

fn require_rank2(w: &Word) -> Result<(), F2Error> {
    if w.rank() != 2 {
        Err(F2Error::NotRank2 { rank: w.rank() })
    } else {
        Ok(())
    }
}

/// An ordered basis of `F₂`. Constructed via [`Basis2::new`], which folds
/// the two-loop bouquet to check the pair generates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Basis2 {
    u: Word,
    v: Word,
}

impl Basis2 {
    pub fn new(u: Word, v: Word) -> Result<Basis2, F2Error> {
        if !is_basis(&u, &v)? {
            return Err(F2Error::NotABasis);
        }
        Ok(Basis2 { u, v })
    }

    /// Construction sites that already know the pair generates.
    pub(crate) fn new_unchecked(u: Word, v: Word) -> Basis2 {
        debug_assert!(is_basis(&u, &v).unwrap_or(false), "not a basis: {u} {v}");
        Basis2 { u, v }
    }

    pub fn u(&self) -> &Word {
        &self.u
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn into_words(self) -> (Word, Word) {
        (self.u, self.v)
    }

    pub fn swapped(&self) -> Basis2 {
        Basis2 { u: self.v.clone(), v: self.u.clone() }
    }

    /// Unordered representative: elements sorted shortlex.
    pub fn normalized(&self) -> Basis2 {
        if self.u <= self.v {
            self.clone()
        } else {
            self.swapped()
        }
    }

    /// Both elements cyclically reduced.
    pub fn is_cr(&self) -> bool {
        self.u.is_cyclically_reduced() && self.v.is_cyclically_reduced()
    }

    pub fn total_len(&self) -> usize {
        self.u.len() + self.v.len()
    }
}

impl fmt::Display for Basis2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

impl fmt::Debug for Basis2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basis2{{{}, {}}}", self.u, self.v)
    }
}

/// Do `u` and `v` generate `F₂`? Decided by folding the bouquet of the two
/// loops: the pair generates iff the fold collapses to the two-loop rose.
pub fn is_basis(u: &Word, v: &Word) -> Result<bool, F2Error> {
    is_basis_with(u, v, &mut Workspace::new())
}

/// [`is_basis`] with caller-provided fold scratch space; sweeps folding many
/// candidate pairs should reuse one workspace per worker.
pub fn is_basis_with(u: &Word, v: &Word, ws: &mut Workspace) -> Result<bool, F2Error> {
    require_rank2(u)?;
    require_rank2(v)?;
    if u.is_empty() || v.is_empty() {
        return Ok(false);
    }
    ws.begin(2);
    let bp = ws.new_vertex();
    ws.add_word_loop(bp, u);
    ws.add_word_loop(bp, v);
    ws.run_fold();
    Ok(ws.folded_is_rose())
}

/// The shape of an arbitrary basis of `F₂`:
/// `{x·u·x⁻¹, x·w·v·w⁻¹·x⁻¹}` with all junctions cancellation-free, `u` and
/// `v` cyclically reduced, `w` a prefix of a power of `u` or of `u⁻¹`, and
/// `{w⁻¹uw, v}` a CR basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralBasisDecomposition {
    pub x: Word,
    pub w: Word,
    pub u: Word,
    pub v: Word,
    /// True when the second input element took the `u` role (the element
    /// with the shorter maximal conjugator plays `u`; ties keep input order).
    pub role_swapped: bool,
}

impl GeneralBasisDecomposition {
    /// The CR basis `{w⁻¹uw, v}` reached by conjugating the input by `xw`.
    pub fn cr_basis(&self) -> Basis2 {
        let c = self
            .u
            .conjugate_by(&self.w.inverse())
            .expect("decomposition words share rank 2");
        Basis2::new_unchecked(c, self.v.clone())
    }
}

/// Decompose an arbitrary basis `{ū, v̄}` per the general-basis shape.
pub fn decompose_general_basis(
    u_bar: &Word,
    v_bar: &Word,
) -> Result<GeneralBasisDecomposition, F2Error> {
    if !is_basis(u_bar, v_bar)? {
        return Err(F2Error::NotABasis);
    }
    let du = u_bar.cyclic_decompose();
    let dv = v_bar.cyclic_decompose();
    // the element with the shorter maximal conjugator plays the u role
    let role_swapped = dv.conjugator.len() < du.conjugator.len();
    let (short, long, long_core) = if role_swapped {
        (&dv, &du, du.core.clone())
    } else {
        (&du, &dv, dv.core.clone())
    };
    let x = short.conjugator.clone();
    let u = short.core.clone();
    let v = long_core;
    if !x.is_prefix_of(&long.conjugator) {
        return Err(F2Error::Internal("conjugators are not prefix-comparable"));
    }
    let w = Word::reduce(2, long.conjugator.letters()[x.len()..].iter().copied())?;
    if !w.is_prefix_of_power(&u).unwrap_or(false) && !(u.is_empty() && w.is_empty()) {
        return Err(F2Error::Internal("w is not a prefix of a power of u or u^-1"));
    }
    // w^-1 u w must be a cyclic rotation of u, and {w^-1 u w, v} a CR basis
    let rotated = u.conjugate_by(&w.inverse())?;
    if rotated.len() != u.len() || !rotated.is_cyclically_reduced() {
        return Err(F2Error::Internal("w^-1 u w is not a cyclic rotation of u"));
    }
    if !is_basis(&rotated, &v)? {
        return Err(F2Error::Internal("{w^-1 u w, v} is not a basis"));
    }
    Ok(GeneralBasisDecomposition { x, w, u, v, role_swapped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn is_basis_examples() {
        assert!(is_basis(&w2("a"), &w2("b")).unwrap());
        assert!(is_basis(&w2("aba"), &w2("ba")).unwrap());
        assert!(!is_basis(&w2("aa"), &w2("b")).unwrap());
        assert!(!is_basis(&w2("aabb"), &w2("ab")).unwrap());
        assert!(!is_basis(&Word::identity(2), &w2("b")).unwrap());
        assert!(is_basis(&w2("baB"), &w2("b")).unwrap());
    }

    #[test]
    fn is_basis_rejects_other_ranks() {
        let c = Word::parse("c", 3).unwrap();
        assert!(matches!(is_basis(&c, &c), Err(F2Error::NotRank2 { rank: 3 })));
    }

    #[test]
    fn decompose_trivial_basis() {
        let d = decompose_general_basis(&w2("a"), &w2("b")).unwrap();
        assert_eq!(
            (d.x.clone(), d.w.clone(), d.u.clone(), d.v.clone(), d.role_swapped),
            (Word::identity(2), Word::identity(2), w2("a"), w2("b"), false)
        );
        assert!(d.cr_basis().is_cr());
    }

    #[test]
    fn decompose_one_sided_conjugate() {
        // {bab^-1, b}: the CR element "b" takes the u role (empty conjugator),
        // so x = 1, w = "b", and the other core "a" is v.
        let d = decompose_general_basis(&w2("baB"), &w2("b")).unwrap();
        assert_eq!(d.x, Word::identity(2));
        assert_eq!(d.w, w2("b"));
        assert_eq!(d.u, w2("b"));
        assert_eq!(d.v, w2("a"));
        assert!(d.role_swapped);
        assert!(d.w.is_prefix_of_power(&d.u).unwrap());
    }

    #[test]
    fn decompose_recovers_common_conjugator() {
        // conjugate the basis {ab, b} by "a"
        let u_bar = w2("ab").conjugate_by(&w2("a")).unwrap();
        let v_bar = w2("b").conjugate_by(&w2("a")).unwrap();
        assert_eq!((u_bar.clone(), v_bar.clone()), (w2("aabA"), w2("abA")));
        let d = decompose_general_basis(&u_bar, &v_bar).unwrap();
        assert_eq!(d.x, w2("a"));
        assert_eq!(d.w, Word::identity(2));
        assert_eq!((d.u.clone(), d.v.clone()), (w2("ab"), w2("b")));
    }

    #[test]
    fn decompose_agrees_with_exhaustive_split_search() {
        // Oracle: search all (x, w) with x a common conjugator prefix and w a
        // prefix of a power of u^±1 satisfying every invariant of the shape.
        let brute = |ub: &Word, vb: &Word| -> Option<(Word, Word, Word, Word)> {
            let du = ub.cyclic_decompose();
            let dv = vb.cyclic_decompose();
            for (su, sv) in [(&du, &dv), (&dv, &du)] {
                let x = &su.conjugator;
                if !x.is_prefix_of(&sv.conjugator) {
                    continue;
                }
                let w = Word::reduce(2, sv.conjugator.letters()[x.len()..].iter().copied())
                    .unwrap();
                if !w.is_prefix_of_power(&su.core).unwrap() {
                    continue;
                }
                let rot = su.core.conjugate_by(&w.inverse()).unwrap();
                if rot.len() == su.core.len()
                    && is_basis(&rot, &sv.core).unwrap()
                {
                    return Some((x.clone(), w, su.core.clone(), sv.core.clone()));
                }
            }
            None
        };
        for (ub, vb) in [
            (w2("baB"), w2("b")),
            (w2("aabA"), w2("abA")),
            (w2("a"), w2("b")),
            (w2("aba"), w2("ba")),
            (w2("bbabB"), w2("b")),
        ] {
            let d = decompose_general_basis(&ub, &vb).unwrap();
            let (bx, bw, bu, bv) = brute(&ub, &vb).expect("oracle finds a decomposition");
            assert_eq!((d.x, d.w, d.u, d.v), (bx, bw, bu, bv), "{ub} {vb}");
        }
    }

    #[test]
    fn decompose_rejects_non_bases() {
        assert_eq!(decompose_general_basis(&w2("aa"), &w2("b")), Err(F2Error::NotABasis));
    }
}
