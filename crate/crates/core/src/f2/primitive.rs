//! Primitivity in `F₂` and the exponent pattern of CR bases.
//!
//! A word is primitive iff its cyclically reduced core appears, up to cyclic
//! rotation and inversion, among the elements of the Euclid-constructed CR
//! bases of the matching length. Fast rejections (non-monotone core,
//! exponent sums with gcd ≠ 1) are classical necessary conditions and only
//! ever short-circuit the answer `false`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::euclid::{gcd, generate_cr_basis, Seed};
use super::{is_basis, require_rank2, F2Error};
use crate::words::Word;

/// Are `a` and `b` equal as cyclic words?
pub(crate) fn cyclically_equal(a: &Word, b: &Word) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    // search a in b·b
    let doubled: Vec<_> = b.letters().iter().chain(b.letters().iter()).copied().collect();
    doubled.windows(a.len()).any(|win| win == a.letters())
}

/// Is `a` a cyclic subword of `b` (a contiguous block of `b` read as a
/// cyclic word)?
fn cyclic_subword(a: &Word, b: &Word) -> bool {
    if a.len() > b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let doubled: Vec<_> = b.letters().iter().chain(b.letters().iter()).copied().collect();
    doubled.windows(a.len()).any(|win| win == a.letters())
}

/// Is `w` an element of some basis of `F₂`?
pub fn is_primitive(w: &Word) -> Result<bool, F2Error> {
    require_rank2(w)?;
    let core = w.cyclic_core();
    let n = core.len();
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if !core.is_monotone() {
        return Ok(false);
    }
    let sums = core.exponent_sums();
    if gcd(sums[0].unsigned_abs(), sums[1].unsigned_abs()) != 1 {
        return Ok(false);
    }
    // Every CR primitive of length n ≥ 2 sits in a CR basis with a partner
    // of coprime length below n (peeling the longer element shrinks the
    // partner while keeping ours). So it is, up to rotation and inversion,
    // the length-n element of a Euclid-generated basis.
    let core_inv = core.inverse();
    let n64 = n as u64;
    for q in 1..n64 {
        if gcd(n64, q) != 1 {
            continue;
        }
        for (p1, q1) in [(n64, q), (q, n64)] {
            for seed in Seed::ALL {
                let b = generate_cr_basis(p1, q1, seed)?;
                let cand = if p1 == n64 { b.u() } else { b.v() };
                if cyclically_equal(&core, cand) || cyclically_equal(&core_inv, cand) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Signed exponents of the maximal runs of one generator, reading `w` as a
/// cyclic word. A run of `k` consecutive `g` letters contributes `+k`, of
/// `g⁻¹` letters `-k`. A cyclic word written entirely in `g` has no run
/// bounded on both sides, so it contributes nothing.
fn cyclic_run_exponents(w: &Word, generator: u32) -> Vec<i64> {
    let letters = w.letters();
    let n = letters.len();
    if n == 0 || letters.iter().all(|l| l.generator() == generator) {
        return Vec::new();
    }
    // rotate to a boundary where the generator is absent, then scan linearly
    let start = (0..n)
        .find(|&i| letters[i].generator() != generator)
        .expect("some letter differs");
    let mut runs = Vec::new();
    let mut current: i64 = 0;
    for off in 0..n {
        let l = letters[(start + off) % n];
        if l.generator() == generator {
            current += if l.is_positive() { 1 } else { -1 };
        } else if current != 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current != 0 {
        runs.push(current);
    }
    runs
}

/// The letter-run pattern of a CR basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPattern {
    /// Generator appearing only in isolated runs of the fixed exponent `eps`.
    pub eps_generator: u32,
    pub eps: i8,
    /// The other generator, whose runs carry exponent `m` or `m + 1`.
    pub run_generator: u32,
    pub m: i64,
    /// True when the shorter element was inverted to make it a cyclic
    /// subword of the longer one before scanning.
    pub inverted_shorter: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternViolation {
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternReport {
    /// A seed basis: both elements single letters, no run structure.
    Degenerate,
    Conforms(ExponentPattern),
    Violation(PatternViolation),
}

/// Scan a CR basis for the run pattern: after normalizing (inverting the
/// shorter element if needed so it is a cyclic subword of the longer), one
/// generator appears with a fixed exponent `ε ∈ {±1}` in both elements and
/// the other in runs of `m` or `m + 1`.
pub fn exponent_pattern(u: &Word, v: &Word) -> Result<PatternReport, F2Error> {
    require_rank2(u)?;
    require_rank2(v)?;
    if !u.is_cyclically_reduced() || !v.is_cyclically_reduced() {
        return Err(F2Error::NotCyclicallyReduced);
    }
    if !is_basis(u, v)? {
        return Err(F2Error::NotABasis);
    }
    if u.len() == 1 && v.len() == 1 {
        return Ok(PatternReport::Degenerate);
    }
    let (shorter, longer) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    let (shorter, inverted_shorter) = if cyclic_subword(shorter, longer) {
        (shorter.clone(), false)
    } else if cyclic_subword(&shorter.inverse(), longer) {
        (shorter.inverse(), true)
    } else {
        return Err(F2Error::PatternPrecondition(format!(
            "neither {shorter} nor its inverse is a cyclic subword of {longer}"
        )));
    };
    let runs_of = |generator: u32| -> Vec<i64> {
        let mut all = cyclic_run_exponents(&shorter, generator);
        all.extend(cyclic_run_exponents(longer, generator));
        all
    };
    for (eps_generator, run_generator) in [(1u32, 2u32), (2, 1)] {
        let eps_runs: BTreeSet<i64> = runs_of(eps_generator).into_iter().collect();
        let run_runs: BTreeSet<i64> = runs_of(run_generator).into_iter().collect();
        let eps_ok = eps_runs.len() == 1
            && (eps_runs.contains(&1) || eps_runs.contains(&-1));
        if !eps_ok || run_runs.is_empty() {
            continue;
        }
        let (min, max) = (
            *run_runs.iter().next().unwrap(),
            *run_runs.iter().next_back().unwrap(),
        );
        if max - min <= 1 {
            return Ok(PatternReport::Conforms(ExponentPattern {
                eps_generator,
                eps: if eps_runs.contains(&1) { 1 } else { -1 },
                run_generator,
                m: min,
                inverted_shorter,
            }));
        }
    }
    Ok(PatternReport::Violation(PatternViolation {
        detail: format!(
            "run exponents do not fit the (eps, m/m+1) schema: a-runs {:?}, b-runs {:?}",
            runs_of(1),
            runs_of(2)
        ),
    }))
}
