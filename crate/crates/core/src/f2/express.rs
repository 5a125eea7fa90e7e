//! Expressing the standard generators as words in an arbitrary basis.
//!
//! Nielsen reduction: greedily multiply one element of the pair by the other
//! (on either side, with either sign) whenever that strictly shortens it,
//! until the pair becomes two single letters. Tracking each move on a formal
//! copy of the pair yields words `A`, `B` with `A(u, v) = a` and
//! `B(u, v) = b`. The round trip is re-checked on every call.

use alloc::vec::Vec;

use super::{is_basis, require_rank2, F2Error};
use crate::words::Word;

#[derive(Clone)]
struct State {
    p: Word,
    q: Word,
    fp: Word,
    fq: Word,
}

impl State {
    fn total(&self) -> usize {
        self.p.len() + self.q.len()
    }

    /// The four products that could replace `p` (respectively `q`), paired
    /// with their formal counterparts.
    fn candidates(&self, replace_p: bool) -> Vec<(Word, Word)> {
        let (a, b, fa, fb) = if replace_p {
            (&self.p, &self.q, &self.fp, &self.fq)
        } else {
            (&self.q, &self.p, &self.fq, &self.fp)
        };
        let c = |x: Result<Word, _>| x.expect("rank 2 throughout");
        alloc::vec![
            (c(a.concat(b)), c(fa.concat(fb))),
            (c(a.concat(&b.inverse())), c(fa.concat(&fb.inverse()))),
            (c(b.concat(a)), c(fb.concat(fa))),
            (c(b.inverse().concat(a)), c(fb.inverse().concat(fa))),
        ]
    }

    fn replace(&mut self, replace_p: bool, new: (Word, Word)) {
        if replace_p {
            self.p = new.0;
            self.fp = new.1;
        } else {
            self.q = new.0;
            self.fq = new.1;
        }
    }

    /// Apply the steepest strictly shortening move, if any.
    fn strict_step(&mut self) -> bool {
        let mut best: Option<(usize, bool, usize)> = None; // (new_len, replace_p, index)
        for replace_p in [true, false] {
            let old = if replace_p { self.p.len() } else { self.q.len() };
            for (i, (cand, _)) in self.candidates(replace_p).iter().enumerate() {
                if cand.len() < old {
                    let key = (cand.len(), replace_p, i);
                    if best.is_none_or(|b| (key.0, !key.1, key.2) < (b.0, !b.1, b.2)) {
                        best = Some(key);
                    }
                }
            }
        }
        match best {
            Some((_, replace_p, i)) => {
                let cand = self.candidates(replace_p).swap_remove(i);
                self.replace(replace_p, cand);
                true
            }
            None => false,
        }
    }

    /// Plateau escape: a length-preserving move followed by a strict one.
    fn plateau_step(&mut self) -> bool {
        for replace_p in [true, false] {
            let old = if replace_p { self.p.len() } else { self.q.len() };
            for cand in self.candidates(replace_p) {
                if cand.0.len() != old {
                    continue;
                }
                let mut trial = self.clone();
                trial.replace(replace_p, cand);
                if trial.strict_step() {
                    *self = trial;
                    return true;
                }
            }
        }
        false
    }
}

/// Words `A`, `B` over the standard alphabet with `A(u, v) = a` and
/// `B(u, v) = b`; substituting a word's letters by `A`/`B` rewrites it in
/// the coordinates of the basis `{u, v}`.
pub fn express_in_basis(u: &Word, v: &Word) -> Result<(Word, Word), F2Error> {
    require_rank2(u)?;
    require_rank2(v)?;
    if !is_basis(u, v)? {
        return Err(F2Error::NotABasis);
    }
    let a = Word::parse("a", 2).unwrap();
    let b = Word::parse("b", 2).unwrap();
    let mut state = State { p: u.clone(), q: v.clone(), fp: a.clone(), fq: b.clone() };
    let cap = state.total() * state.total() + 4;
    let mut steps = 0;
    while state.total() > 2 {
        steps += 1;
        if steps > cap {
            return Err(F2Error::Internal("basis reduction did not terminate"));
        }
        if !state.strict_step() && !state.plateau_step() {
            return Err(F2Error::Internal("basis reduction stalled"));
        }
    }
    let (l1, l2) = (state.p.first().unwrap(), state.q.first().unwrap());
    if l1.generator() == l2.generator() {
        return Err(F2Error::Internal("basis reduction ended at one generator"));
    }
    let expr1 = if l1.is_positive() { state.fp.clone() } else { state.fp.inverse() };
    let expr2 = if l2.is_positive() { state.fq.clone() } else { state.fq.inverse() };
    let (ea, eb) = if l1.generator() == 1 { (expr1, expr2) } else { (expr2, expr1) };
    // round trip: the expressions must evaluate back to the generators
    let images = [u.clone(), v.clone()];
    if ea.substitute(&images)? != a || eb.substitute(&images)? != b {
        return Err(F2Error::Internal("basis expression round trip failed"));
    }
    Ok((ea, eb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn identity_basis() {
        let (ea, eb) = express_in_basis(&w2("a"), &w2("b")).unwrap();
        assert_eq!((ea, eb), (w2("a"), w2("b")));
    }

    #[test]
    fn swapped_and_inverted_seeds() {
        let (ea, eb) = express_in_basis(&w2("b"), &w2("a")).unwrap();
        assert_eq!((ea, eb), (w2("b"), w2("a")));
        let (ea, eb) = express_in_basis(&w2("A"), &w2("b")).unwrap();
        assert_eq!((ea, eb), (w2("A"), w2("b")));
    }

    #[test]
    fn euclid_basis() {
        let (ea, eb) = express_in_basis(&w2("aba"), &w2("ba")).unwrap();
        let images = [w2("aba"), w2("ba")];
        assert_eq!(ea.substitute(&images).unwrap(), w2("a"));
        assert_eq!(eb.substitute(&images).unwrap(), w2("b"));
    }

    #[test]
    fn conjugated_basis() {
        let (ea, eb) = express_in_basis(&w2("baB"), &w2("b")).unwrap();
        let images = [w2("baB"), w2("b")];
        assert_eq!(ea.substitute(&images).unwrap(), w2("a"));
        assert_eq!(eb.substitute(&images).unwrap(), w2("b"));
    }

    #[test]
    fn rejects_non_bases() {
        assert_eq!(express_in_basis(&w2("aa"), &w2("b")), Err(F2Error::NotABasis));
    }

    #[test]
    fn round_trip_over_all_small_bases() {
        for basis in super::super::enumerate_bases(6, super::super::EnumMode::Brute).unwrap() {
            let (u, v) = (basis.u(), basis.v());
            let (ea, eb) = express_in_basis(u, v).unwrap();
            let images = [u.clone(), v.clone()];
            assert_eq!(ea.substitute(&images).unwrap(), w2("a"), "basis {basis}");
            assert_eq!(eb.substitute(&images).unwrap(), w2("b"), "basis {basis}");
        }
    }
}
