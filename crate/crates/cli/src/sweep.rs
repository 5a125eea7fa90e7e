//! Sweep driver (optionally parallel) and report rendering.
//!
//! Workers compute per-basis checks; the report is always assembled from the
//! checks in enumeration order, so output bytes do not depend on `--jobs`.

use std::fmt::Write;
use std::time::Instant;

use rayon::prelude::*;

use stallings::f2::{enumerate_bases, EnumMode};
use stallings::verify::{build_report, ordered_checks_for, BasisCheck, CoverReport, VerifyError};

use crate::input::Alphabet;

pub fn run_verify(
    max_len: usize,
    mode: EnumMode,
    per_basis: bool,
    jobs: usize,
) -> Result<CoverReport, VerifyError> {
    let start = Instant::now();
    let bases = enumerate_bases(max_len, mode)?;
    let checks: Result<Vec<[BasisCheck; 2]>, VerifyError> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| bases.par_iter().map(ordered_checks_for).collect())
    } else {
        bases.iter().map(ordered_checks_for).collect()
    };
    let flat: Vec<BasisCheck> = checks?.into_iter().flatten().collect();
    let mut report = build_report(max_len, mode, bases.len(), flat, per_basis)?;
    report.wall_time = start.elapsed();
    Ok(report)
}

pub fn mode_name(mode: EnumMode) -> &'static str {
    match mode {
        EnumMode::Brute => "brute",
        EnumMode::Structural => "structural",
    }
}

fn check_line(check: &BasisCheck, alphabet: &Alphabet) -> String {
    let split = match &check.appears_witness {
        Some(w) => format!("split={}", w.split),
        None => "none".to_owned(),
    };
    format!(
        "basis {} {} : appears {} head {} cover {:?}",
        alphabet.word_to_text(check.basis.u()),
        alphabet.word_to_text(check.basis.v()),
        split,
        u8::from(check.head_condition),
        check.cover
    )
    .to_lowercase()
}

pub fn render_report(
    report: &CoverReport,
    alphabet: &Alphabet,
    records: bool,
    timings: bool,
) -> String {
    let mut s = String::new();
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    if records {
        let _ = writeln!(
            s,
            "verify-counterexample {} {}",
            report.max_len,
            mode_name(report.mode)
        );
        let _ = writeln!(s, "bases {}", report.bases_checked);
        let _ = writeln!(s, "free-factor {}", u8::from(report.free_factor_ok));
        if let Some(per) = &report.per_basis {
            for check in per {
                let _ = writeln!(s, "{}", check_line(check, alphabet));
            }
        }
        for f in &report.failures {
            let _ = writeln!(
                s,
                "failure {} {} : {}",
                alphabet.word_to_text(f.basis.u()),
                alphabet.word_to_text(f.basis.v()),
                f.diagnostic
            );
        }
        let _ = writeln!(s, "failures {}", report.failures.len());
        let _ = writeln!(s, "{verdict}");
    } else {
        let _ = writeln!(
            s,
            "verify-counterexample max-len={} mode={}",
            report.max_len,
            mode_name(report.mode)
        );
        let _ = writeln!(
            s,
            "bases checked: {} unordered ({} ordered checks)",
            report.bases_checked,
            2 * report.bases_checked
        );
        let _ = writeln!(
            s,
            "free decomposition certificate: {}",
            if report.free_factor_ok { "ok" } else { "FAILED" }
        );
        if let Some(per) = &report.per_basis {
            for check in per {
                let _ = writeln!(s, "  {}", check_line(check, alphabet));
            }
        }
        for f in &report.failures {
            let _ = writeln!(
                s,
                "FAILURE at {{{}, {}}}: {}",
                alphabet.word_to_text(f.basis.u()),
                alphabet.word_to_text(f.basis.v()),
                f.diagnostic
            );
        }
        let _ = writeln!(s, "failures: {}", report.failures.len());
        let _ = writeln!(s, "result: {verdict}");
    }
    if timings {
        let _ = writeln!(s, "wall time: {:.3}s", report.wall_time.as_secs_f64());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_report_matches_sequential() {
        let seq = run_verify(4, EnumMode::Brute, true, 1).unwrap();
        let par = run_verify(4, EnumMode::Brute, true, 4).unwrap();
        let al = Alphabet::new("ab").unwrap();
        assert_eq!(
            render_report(&seq, &al, true, false),
            render_report(&par, &al, true, false)
        );
        assert!(seq.passed());
    }
}
