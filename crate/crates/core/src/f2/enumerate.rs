//! Enumeration of bases of `F₂` up to bounded length.
//!
//! CR bases come from the Euclidean construction: every coprime length pair
//! and seed, closed under rotation by common prefixes/suffixes (realized as
//! single-letter rotation steps to a fixpoint) and a single element
//! inversion. General bases come either from brute force (fold every reduced
//! word pair) or structurally, by dressing each CR basis `{c, v}` with a
//! rotation of `c`, a winding prefix `w`, and a conjugator `x`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::euclid::{gcd, generate_cr_basis, Seed};
use super::{is_basis_with, Basis2, F2Error};
use crate::graph::Workspace;
use crate::words::{Letter, Word};

/// Cap for brute-force enumeration (folds every reduced pair).
pub const BRUTE_CAP: usize = 10;
/// Cap for structural enumeration.
pub const STRUCTURAL_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    Brute,
    Structural,
}

/// All reduced rank-2 words grouped by length `0..=max`.
pub(crate) fn reduced_words_by_length(max: usize) -> Vec<Vec<Word>> {
    let letters = [
        Letter::positive(1),
        Letter::negative(1),
        Letter::positive(2),
        Letter::negative(2),
    ];
    let mut by: Vec<Vec<Word>> = vec![vec![Word::identity(2)]];
    for len in 1..=max {
        let mut cur = Vec::with_capacity(4 * by[len - 1].len());
        for w in &by[len - 1] {
            for &l in &letters {
                if w.last().is_none_or(|last| !last.cancels(l)) {
                    let mut ls = w.letters().to_vec();
                    ls.push(l);
                    cur.push(Word::reduce(2, ls).expect("rank 2, no cancellation"));
                }
            }
        }
        by.push(cur);
    }
    by
}

/// All CR bases `{u, v}` with `|u| + |v| ≤ max_len`, deduplicated as
/// unordered pairs and sorted.
pub fn enumerate_cr_bases(max_len: usize) -> Vec<Basis2> {
    let mut out: BTreeSet<Basis2> = BTreeSet::new();
    for p in 1..max_len as u64 {
        for q in 1..=(max_len as u64 - p) {
            if gcd(p, q) != 1 {
                continue;
            }
            for seed in Seed::ALL {
                let base = generate_cr_basis(p, q, seed).expect("coprime positive pair");
                rotation_closure_with_inversions(&base, &mut out);
            }
        }
    }
    out.into_iter().collect()
}

/// Insert into `out` every pair obtained from `base` by rotating both
/// elements by a common prefix or suffix (iterated), optionally inverting
/// one element afterwards.
fn rotation_closure_with_inversions(base: &Basis2, out: &mut BTreeSet<Basis2>) {
    let mut seen: BTreeSet<(Word, Word)> = BTreeSet::new();
    let mut stack = vec![(base.u().clone(), base.v().clone())];
    seen.insert(stack[0].clone());
    while let Some((u, v)) = stack.pop() {
        out.insert(Basis2::new_unchecked(u.clone(), v.clone()).normalized());
        out.insert(Basis2::new_unchecked(u.inverse(), v.clone()).normalized());
        out.insert(Basis2::new_unchecked(u.clone(), v.inverse()).normalized());
        // a rotation by a longer common prefix/suffix is a composite of
        // single-letter rotations, so single steps reach the whole closure
        if u.first() == v.first() {
            let r = (u.rotated_left(1), v.rotated_left(1));
            if seen.insert(r.clone()) {
                stack.push(r);
            }
        }
        if u.last() == v.last() {
            let r = (u.rotated_left(u.len() - 1), v.rotated_left(v.len() - 1));
            if seen.insert(r.clone()) {
                stack.push(r);
            }
        }
    }
}

/// All bases with total length ≤ `max_total_len`, as unordered pairs.
///
/// `Brute` folds every reduced word pair; `Structural` decorates the CR
/// enumeration with rotations, winding prefixes and conjugators. The two
/// modes agree wherever their caps overlap.
pub fn enumerate_bases(max_total_len: usize, mode: EnumMode) -> Result<Vec<Basis2>, F2Error> {
    let cap = match mode {
        EnumMode::Brute => BRUTE_CAP,
        EnumMode::Structural => STRUCTURAL_CAP,
    };
    if max_total_len > cap {
        return Err(F2Error::CapExceeded { requested: max_total_len, cap });
    }
    Ok(match mode {
        EnumMode::Brute => enumerate_brute(max_total_len),
        EnumMode::Structural => enumerate_structural(max_total_len),
    })
}

fn enumerate_brute(max_total: usize) -> Vec<Basis2> {
    let mut out: BTreeSet<Basis2> = BTreeSet::new();
    if max_total < 2 {
        return Vec::new();
    }
    let by_len = reduced_words_by_length(max_total - 1);
    let mut ws = Workspace::new();
    for lu in 1..max_total {
        for lv in lu..=(max_total - lu) {
            for u in &by_len[lu] {
                for v in &by_len[lv] {
                    if lu == lv && v < u {
                        continue;
                    }
                    if is_basis_with(u, v, &mut ws).expect("rank 2") {
                        out.insert(Basis2::new_unchecked(u.clone(), v.clone()).normalized());
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn enumerate_structural(max_total: usize) -> Vec<Basis2> {
    let mut out: BTreeSet<Basis2> = BTreeSet::new();
    let x_pool = reduced_words_by_length(max_total / 4);
    for base in enumerate_cr_bases(max_total) {
        for (c, v) in [(base.u(), base.v()), (base.v(), base.u())] {
            let n = c.len();
            let budget = max_total - n - v.len();
            for k in 0..n {
                // u is the rotation of c with w^-1 u w = c for the w family below
                let u = c.rotated_left(k);
                let alpha = Word::reduce(2, u.letters()[..n - k].iter().copied()).unwrap();
                let delta_inv =
                    Word::reduce(2, u.letters()[n - k..].iter().copied()).unwrap().inverse();
                let mut windings: Vec<Word> = Vec::new();
                let mut m = 0;
                while 2 * (m * n + (n - k)) <= budget {
                    windings.push(u.pow(m as i32).concat(&alpha).unwrap());
                    m += 1;
                }
                m = 0;
                while 2 * (m * n + k) <= budget {
                    windings.push(u.inverse().pow(m as i32).concat(&delta_inv).unwrap());
                    m += 1;
                }
                for w in &windings {
                    debug_assert!(w.is_prefix_of_power(&u).unwrap());
                    debug_assert_eq!(&u.conjugate_by(&w.inverse()).unwrap(), c);
                    let v_hat = v.conjugate_by(w).unwrap();
                    if v_hat.len() != 2 * w.len() + v.len() {
                        continue; // junction cancels; this pair arises from its own data
                    }
                    let x_budget = (budget - 2 * w.len()) / 4;
                    for x_len in 0..=x_budget {
                        for x in &x_pool[x_len] {
                            let u_bar = u.conjugate_by(x).unwrap();
                            if u_bar.len() != 2 * x.len() + n {
                                continue;
                            }
                            let v_bar = v_hat.conjugate_by(x).unwrap();
                            if v_bar.len() != 2 * x.len() + v_hat.len() {
                                continue;
                            }
                            out.insert(Basis2::new_unchecked(u_bar, v_bar).normalized());
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}
