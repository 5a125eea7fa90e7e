//! Mechanical verification sweeps.
//!
//! The central check: for a basis `{u, v}` of `F₂`, the subgroup `<u²v²>`
//! X-covers `<u²v², uv>`. Equivalently (and checked independently), `uv`
//! appears in the core graph of `<u²v²>`. [`verify_counterexample`] sweeps
//! every basis up to a total length bound, runs both routes, and demands
//! they agree and hold; it also certifies once that the extension is
//! nevertheless free, so covering in every basis does not make it algebraic.
//! The rank-3 example where the analogous cover fails is checked by
//! [`verify_f3_example`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::f2::{
    enumerate_bases, express_in_basis, is_basis, Basis2, EnumMode, F2Error,
};
use crate::graph::compute_morphism;
use crate::subgroup::{
    appears, is_member, x_covers_cores, AppearWitness, Cover, Subgroup, SubgroupError,
};
use crate::words::{Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    Word(WordError),
    F2(F2Error),
    Subgroup(SubgroupError),
    /// `search_noncovering_basis` requires `h ≤ j`.
    NotASubgroupPair,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Word(e) => write!(f, "{e}"),
            VerifyError::F2(e) => write!(f, "{e}"),
            VerifyError::Subgroup(e) => write!(f, "{e}"),
            VerifyError::NotASubgroupPair => write!(f, "h is not a subgroup of j"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<WordError> for VerifyError {
    fn from(e: WordError) -> Self {
        VerifyError::Word(e)
    }
}

impl From<F2Error> for VerifyError {
    fn from(e: F2Error) -> Self {
        VerifyError::F2(e)
    }
}

impl From<SubgroupError> for VerifyError {
    fn from(e: SubgroupError) -> Self {
        VerifyError::Subgroup(e)
    }
}

/// Everything the sweep computes for one ordered basis `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCheck {
    pub basis: Basis2,
    /// Witness that `uv` appears in `Γ(<u²v²>)`, when it does.
    pub appears_witness: Option<AppearWitness>,
    /// Does `u₁` or `(v⁻¹)₁` leave the basepoint of `Γ(<u²v²>)`?
    pub head_condition: bool,
    /// The independent route: is the `Γ(<u²v²>) → Γ(<u²v², uv>)` morphism
    /// onto?
    pub cover: Cover,
    /// How many of `u`, `v` are cyclically reduced (0, 1 or 2).
    pub cr_count: u8,
}

impl BasisCheck {
    /// The appearance route and the morphism route agree.
    pub fn routes_agree(&self) -> bool {
        (self.appears_witness.is_some()) == (self.cover == Cover::Covers)
    }

    /// The conditions this basis is required to satisfy: the appearance (and
    /// agreeing cover) always; the head condition whenever at least one
    /// element is cyclically reduced.
    pub fn holds(&self) -> bool {
        self.appears_witness.is_some()
            && self.cover == Cover::Covers
            && (self.cr_count == 0 || self.head_condition)
    }
}

/// Run both check routes on one ordered basis. The caller guarantees the
/// pair is a basis.
pub fn check_basis(u: &Word, v: &Word) -> Result<BasisCheck, VerifyError> {
    let uu_vv = u.pow(2).concat(&v.pow(2))?;
    let uv = u.concat(v)?;
    let h = Subgroup::new(2, alloc::vec![uu_vv.clone()])?;
    let h_core = h.core_graph();
    let appears_witness = appears(&uv, &h_core)?;
    let head_condition = {
        let bp = h_core.basepoint();
        let u_head = u.first().expect("basis elements are nonempty");
        let v_inv_head = v.last().expect("basis elements are nonempty").inverse();
        h_core.step(bp, u_head).is_some() || h_core.step(bp, v_inv_head).is_some()
    };
    let j = h.extended(&uv)?;
    let cover = x_covers_cores(&h_core, &j.core_graph())?;
    let cr_count =
        u.is_cyclically_reduced() as u8 + v.is_cyclically_reduced() as u8;
    Ok(BasisCheck {
        basis: Basis2::new_unchecked(u.clone(), v.clone()),
        appears_witness,
        head_condition,
        cover,
        cr_count,
    })
}

/// [`check_basis`] with the tested word replaced — exists so the harness can
/// prove to itself that the sweep notices deliberately wrong claims.
pub fn check_basis_with_word(u: &Word, v: &Word, w: &Word) -> Result<BasisCheck, VerifyError> {
    let uu_vv = u.pow(2).concat(&v.pow(2))?;
    let h = Subgroup::new(2, alloc::vec![uu_vv])?;
    let h_core = h.core_graph();
    let appears_witness = appears(w, &h_core)?;
    let head_condition = true;
    let j = h.extended(w)?;
    let cover = x_covers_cores(&h_core, &j.core_graph())?;
    let cr_count = u.is_cyclically_reduced() as u8 + v.is_cyclically_reduced() as u8;
    Ok(BasisCheck {
        basis: Basis2::new_unchecked(u.clone(), v.clone()),
        appears_witness,
        head_condition,
        cover,
        cr_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    /// The ordered basis that failed.
    pub basis: Basis2,
    pub diagnostic: String,
}

/// Report of one counterexample sweep.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub max_len: usize,
    pub mode: EnumMode,
    /// Unordered bases enumerated; each is checked in both element orders.
    pub bases_checked: usize,
    pub failures: Vec<SweepFailure>,
    /// Per ordered basis data, populated on request.
    pub per_basis: Option<Vec<BasisCheck>>,
    /// Certificate that the extension is free (checked once per sweep).
    pub free_factor_ok: bool,
    /// Filled in by the caller; excluded from determinism comparisons.
    pub wall_time: Duration,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn judge(check: &BasisCheck, failures: &mut Vec<SweepFailure>) {
    if !check.routes_agree() {
        failures.push(SweepFailure {
            basis: check.basis.clone(),
            diagnostic: format!(
                "appearance and morphism routes disagree: appears={}, cover={:?}",
                check.appears_witness.is_some(),
                check.cover
            ),
        });
        return;
    }
    if check.appears_witness.is_none() {
        failures.push(SweepFailure {
            basis: check.basis.clone(),
            diagnostic: String::from("uv does not appear in the core graph of <u^2 v^2>"),
        });
    } else if check.cover != Cover::Covers {
        failures.push(SweepFailure {
            basis: check.basis.clone(),
            diagnostic: format!("<u^2v^2> does not cover <u^2v^2, uv>: {:?}", check.cover),
        });
    }
    if check.cr_count > 0 && !check.head_condition {
        failures.push(SweepFailure {
            basis: check.basis.clone(),
            diagnostic: String::from(
                "neither u1 nor (v^-1)1 leaves the basepoint, though an element is CR",
            ),
        });
    }
}

/// The two ordered checks for one unordered basis.
pub fn ordered_checks_for(basis: &Basis2) -> Result<[BasisCheck; 2], VerifyError> {
    Ok([check_basis(basis.u(), basis.v())?, check_basis(basis.v(), basis.u())?])
}

/// Judge a flat list of ordered checks (in enumeration order) into a report.
/// Parallel sweeps compute the checks however they like and feed them here,
/// so reports are identical regardless of worker count.
pub fn build_report(
    max_len: usize,
    mode: EnumMode,
    bases_checked: usize,
    checks: Vec<BasisCheck>,
    collect_per_basis: bool,
) -> Result<CoverReport, VerifyError> {
    let mut failures = Vec::new();
    for check in &checks {
        judge(check, &mut failures);
    }
    let certificate = certify_free_decomposition()?;
    if !certificate.holds() {
        failures.push(SweepFailure {
            basis: Basis2::new(Word::parse("a", 2)?, Word::parse("b", 2)?)?,
            diagnostic: String::from("free-factor certificate for <a^2b^2> in <a^2b^2, ab> failed"),
        });
    }
    Ok(CoverReport {
        max_len,
        mode,
        bases_checked,
        failures,
        per_basis: collect_per_basis.then_some(checks),
        free_factor_ok: certificate.holds(),
        wall_time: Duration::ZERO,
    })
}

/// Sweep every basis `{u, v}` with `|u| + |v| ≤ max_len` (both element
/// orders) and check that `<u²v²>` covers `<u²v², uv>` by both routes, plus
/// the head condition where it is required. Also certifies the free
/// decomposition of the target extension once.
pub fn verify_counterexample(
    max_len: usize,
    mode: EnumMode,
    collect_per_basis: bool,
) -> Result<CoverReport, VerifyError> {
    let bases = enumerate_bases(max_len, mode)?;
    let mut checks = Vec::with_capacity(2 * bases.len());
    for basis in &bases {
        checks.extend(ordered_checks_for(basis)?);
    }
    build_report(max_len, mode, bases.len(), checks, collect_per_basis)
}

/// The two conclusions checked per basis: does `uv` appear in `Γ(<u²v²>)`,
/// and does `u₁` or `(v⁻¹)₁` leave its basepoint? Errors when `{u, v}` is
/// not a basis.
pub fn check_lemma_conditions(u: &Word, v: &Word) -> Result<(bool, bool), VerifyError> {
    if !is_basis(u, v)? {
        return Err(F2Error::NotABasis.into());
    }
    let check = check_basis(u, v)?;
    Ok((check.appears_witness.is_some(), check.head_condition))
}

/// Certificate that `J = <a²b², ab>` is a free extension of `H = <a²b²>`:
/// `J` is free of rank 2 and is generated by the two listed words, so they
/// form a basis of `J` and `H` is generated by a subset of it. The abstract
/// side (a one-generator subgroup embeds in the rank-2 free group on the
/// same basis) is run through the real embedding check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeFactorCertificate {
    /// Cycle rank of `Γ(<a²b², ab>)` — must be 2.
    pub j_cycle_rank: usize,
    /// Number of exhibited generators — 2 by construction.
    pub j_generator_count: usize,
    /// `<c>` embeds injectively into `F(c, d)`.
    pub abstract_embed_injective: bool,
}

impl FreeFactorCertificate {
    pub fn holds(&self) -> bool {
        self.j_cycle_rank == self.j_generator_count && self.abstract_embed_injective
    }
}

pub fn certify_free_decomposition() -> Result<FreeFactorCertificate, VerifyError> {
    let j = Subgroup::parse(2, &["aabb", "ab"])?;
    let j_core = j.core_graph();
    // In the presentation of J on its own basis (c = a²b², d = ab), H is the
    // subgroup generated by the single basis element c.
    let h_abstract = Subgroup::parse(2, &["a"])?;
    let f_abstract = Subgroup::parse(2, &["a", "b"])?;
    let embed = crate::subgroup::embeds_as_subgraph(&h_abstract, &f_abstract)?;
    Ok(FreeFactorCertificate {
        j_cycle_rank: j_core.cycle_rank(),
        j_generator_count: j.generators().len(),
        abstract_embed_injective: embed,
    })
}

/// Report of the rank-3 example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F3Report {
    /// Does `x y⁻¹ z y` appear in `Γ(<x² y⁻¹ z² y>)`? The point is that it
    /// does not.
    pub appears_in_h: bool,
    /// Sanity: the relator itself is a member.
    pub membership_sanity: bool,
    /// Substituting `a ↦ x`, `b ↦ y⁻¹zy` maps `a²b²` to `x²y⁻¹z²y` and `ab`
    /// to `xy⁻¹zy`.
    pub substitution_matches: bool,
    /// The cover verdict via the morphism route (expected: `NotCovers`).
    pub cover: Cover,
}

impl F3Report {
    /// Everything as expected: the cover fails in rank 3.
    pub fn as_expected(&self) -> bool {
        !self.appears_in_h
            && self.membership_sanity
            && self.substitution_matches
            && self.cover == Cover::NotCovers
    }
}

/// Check the rank-3 example: with `x, y, z` the generators of `F₃`, the
/// subgroup `<x²y⁻¹z²y>` does not X-cover `<x²y⁻¹z²y, xy⁻¹zy>`, although the
/// pair is the image of `(<a²b²>, <a²b², ab>)` under `a ↦ x, b ↦ y⁻¹zy`.
pub fn verify_f3_example() -> Result<F3Report, VerifyError> {
    // letters: a = x, b = y, c = z
    let h_word = Word::parse("aaBccb", 3)?;
    let w_word = Word::parse("aBcb", 3)?;
    let h = Subgroup::new(3, alloc::vec![h_word.clone()])?;
    let h_core = h.core_graph();
    let appears_in_h = appears(&w_word, &h_core)?.is_some();
    let membership_sanity = is_member(&h_core, &h_word)?;
    let images = [Word::parse("a", 3)?, Word::parse("Bcb", 3)?];
    let substitution_matches = Word::parse("aabb", 2)?
        .promoted(3)?
        .substitute(&images)?
        == h_word
        && Word::parse("ab", 2)?.promoted(3)?.substitute(&images)? == w_word;
    let j = h.extended(&w_word)?;
    let cover = x_covers_cores(&h_core, &j.core_graph())?;
    Ok(F3Report { appears_in_h, membership_sanity, substitution_matches, cover })
}

/// Sweep all bases up to `max_len`, rewriting the generators of `h` and `j`
/// in each basis's coordinates, and return the first basis (in enumeration
/// order) in which `h` fails to cover `j`, or `None`.
pub fn search_noncovering_basis(
    h: &Subgroup,
    j: &Subgroup,
    max_len: usize,
) -> Result<Option<Basis2>, VerifyError> {
    let h_core = h.core_graph();
    let j_core = j.core_graph();
    if compute_morphism(&h_core, &j_core)
        .map_err(SubgroupError::from)?
        .is_none()
    {
        return Err(VerifyError::NotASubgroupPair);
    }
    for basis in enumerate_bases(max_len, EnumMode::Brute)? {
        let (ea, eb) = express_in_basis(basis.u(), basis.v())?;
        let images = [ea, eb];
        let rewrite = |g: &Subgroup| -> Result<Subgroup, VerifyError> {
            let gens = g
                .generators()
                .iter()
                .map(|w| w.substitute(&images))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Subgroup::new(2, gens)?)
        };
        let h_y = rewrite(h)?;
        let j_y = rewrite(j)?;
        if crate::subgroup::x_covers(&h_y, &j_y)? != Cover::Covers {
            return Ok(Some(basis));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn seed_bases_pass() {
        let report = verify_counterexample(2, EnumMode::Brute, true).unwrap();
        assert!(report.passed());
        assert_eq!(report.bases_checked, 4);
        assert!(report.free_factor_ok);
        let per = report.per_basis.unwrap();
        assert_eq!(per.len(), 8); // both orders
        for check in &per {
            assert!(check.holds());
            assert!(check.routes_agree());
        }
    }

    #[test]
    fn lemma_conditions_examples() {
        assert_eq!(check_lemma_conditions(&w2("a"), &w2("b")).unwrap(), (true, true));
        assert_eq!(check_lemma_conditions(&w2("aba"), &w2("ba")).unwrap(), (true, true));
        assert_eq!(check_lemma_conditions(&w2("baB"), &w2("b")).unwrap(), (true, true));
        assert!(check_lemma_conditions(&w2("aa"), &w2("b")).is_err());
    }

    #[test]
    fn corrupted_check_is_caught() {
        // replacing uv by uv^-1 must produce visible failures: ab^-1 does
        // not appear in the aabb cycle
        let check = check_basis_with_word(&w2("a"), &w2("b"), &w2("aB")).unwrap();
        assert!(check.appears_witness.is_none());
        assert_eq!(check.cover, Cover::NotCovers);
        let honest = check_basis(&w2("a"), &w2("b")).unwrap();
        assert!(honest.holds());
    }

    #[test]
    fn free_factor_certificate_holds() {
        let cert = certify_free_decomposition().unwrap();
        assert_eq!(cert.j_cycle_rank, 2);
        assert!(cert.holds());
    }

    #[test]
    fn f3_example_behaves_as_printed() {
        let report = verify_f3_example().unwrap();
        assert!(!report.appears_in_h);
        assert!(report.membership_sanity);
        assert!(report.substitution_matches);
        assert_eq!(report.cover, Cover::NotCovers);
        assert!(report.as_expected());
    }

    #[test]
    fn noncover_search_identity_pair() {
        let h = Subgroup::parse(2, &["aabb"]).unwrap();
        assert_eq!(search_noncovering_basis(&h, &h, 4).unwrap(), None);
    }

    #[test]
    fn noncover_search_main_pair_small() {
        let h = Subgroup::parse(2, &["aabb"]).unwrap();
        let j = Subgroup::parse(2, &["aabb", "ab"]).unwrap();
        assert_eq!(search_noncovering_basis(&h, &j, 5).unwrap(), None);
    }

    #[test]
    fn noncover_search_requires_subgroup_pair() {
        let h = Subgroup::parse(2, &["a"]).unwrap();
        let j = Subgroup::parse(2, &["b"]).unwrap();
        assert_eq!(
            search_noncovering_basis(&h, &j, 2),
            Err(VerifyError::NotASubgroupPair)
        );
    }

    #[test]
    fn single_generator_vs_whole_group() {
        // In the standard basis the image of "a" misses the letter b, so the
        // a-loop cannot cover the rose: the very first basis already fails.
        let h = Subgroup::parse(2, &["a"]).unwrap();
        let f2 = Subgroup::parse(2, &["a", "b"]).unwrap();
        let found = search_noncovering_basis(&h, &f2, 4).unwrap();
        assert!(found.is_some());
    }
}
