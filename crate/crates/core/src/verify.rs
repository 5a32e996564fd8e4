//! Sweeps that check every closed-form result against brute force over a range
//! of orders, and the randomized and exhaustive cover-lemma property suite.
//!
//! Orders and samples are checked in parallel; results are merged in input
//! order so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{domain, Result};
use crate::fibonacci::{
    check_fib_identities, check_fib_lemmas, predicted_fib_net_occurrences, theta_count, theta_steps,
};
use crate::net_frequency::{net_occurrences_indexed, NetOccurrenceRecord, PairwiseRepeatTable};
use crate::occurrence::{find_occurrences, Occurrence};
use crate::onoc::{all_onocs, greedy_onoc, lemma_violations, prove_completeness};
use crate::report::{Claim, ClaimReport};
use crate::thue_morse::{
    ab_counts, ab_steps, check_factorization, check_tm_identities, predicted_tm_net_occurrences,
    smallest_factorization, tm_net_strings, validate_smallest_factorization, FactorizationKind,
};
use crate::words::{fib_word, tm_word, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Fibonacci,
    ThueMorse,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderRange {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub family: Family,
    pub orders: OrderRange,
    /// Keyed `"<order>/<claim>"`, orders zero-padded so keys sort by order.
    pub claims: BTreeMap<String, Claim>,
    pub net_occurrence_counts: BTreeMap<usize, usize>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.claims.values().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &Claim)> {
        self.claims.iter().filter(|(_, c)| !c.pass)
    }
}

fn merge(family: Family, from: usize, to: usize, started: Instant, per_order: Vec<(ClaimReport, usize)>) -> VerificationReport {
    let mut claims = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for (report, count) in per_order {
        counts.insert(report.order, count);
        for (name, claim) in report.claims {
            claims.insert(format!("{:02}/{name}", report.order), claim);
        }
    }
    VerificationReport {
        family,
        orders: OrderRange { from, to },
        claims,
        net_occurrence_counts: counts,
        wall_time_ms: started.elapsed().as_millis() as u64,
    }
}

fn spans(records: &[NetOccurrenceRecord]) -> Vec<Occurrence> {
    records.iter().map(|r| r.occurrence).collect()
}

/// Brute-force net occurrences, cross-checked against the indexed engine, the
/// prediction and the cover scan. Returns the brute-force count.
fn net_occurrence_claims(report: &mut ClaimReport, text: &Word, predicted: Vec<Occurrence>) -> usize {
    let table = PairwiseRepeatTable::new(text);
    let brute = table.net_occurrences();
    let indexed = spans(&net_occurrences_indexed(text).expect("nonempty text"));
    report.insert(
        "predicted net occurrences equal brute force",
        Claim::check(predicted == brute, || json!({ "predicted": predicted, "brute_force": brute })),
    );
    report.insert(
        "indexed engine equals brute force",
        Claim::check(indexed == brute, || json!({ "indexed": indexed, "brute_force": brute })),
    );
    let completeness = prove_completeness(text, &predicted);
    let complete = completeness.cover_valid && completeness.offending_supers.is_empty() && completeness.oracle_agrees;
    report.insert(
        "predicted occurrences form a complete cover",
        Claim::check(complete, || json!(completeness)),
    );
    brute.len()
}

fn first_failure<T, W>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Option<W>) -> Option<W> {
    items.into_iter().find_map(|t| bad(&t))
}

fn fibonacci_order(i: usize) -> Result<(ClaimReport, usize)> {
    let text = fib_word(i)?;
    let mut report = ClaimReport::new(i);

    let steps = theta_steps(i, i - 4)?;
    let bad = first_failure(steps, |s| {
        let scanned = find_occurrences(&fib_word(i - s.j).expect("order >= 1"), &text).expect("nonempty");
        (!(s.disjoint && s.max_matches && s.set == scanned)).then(|| {
            json!({ "j": s.j, "recurrence": s.set, "scan": scanned,
                    "disjoint": s.disjoint, "max_matches": s.max_matches })
        })
    });
    report.insert("theta recurrence equals scan", Claim::check(bad.is_none(), || bad.unwrap()));

    let bad = first_failure(0..i, |&j| {
        let scanned = find_occurrences(&fib_word(i - j).expect("order >= 1"), &text).expect("nonempty").len() as u64;
        let formula = theta_count(i, j).expect("in domain");
        (formula != scanned).then(|| json!({ "j": j, "formula": formula, "scan": scanned }))
    });
    report.insert("theta counts equal scan", Claim::check(bad.is_none(), || bad.unwrap()));

    for (prefix, sub) in [("identity", check_fib_identities(i)?), ("lemma", check_fib_lemmas(i)?)] {
        for (name, claim) in sub.claims {
            report.insert(format!("{prefix}: {name}"), claim);
        }
    }
    let count = net_occurrence_claims(&mut report, &text, predicted_fib_net_occurrences(i)?);
    Ok((report, count))
}

/// Checks every Fibonacci claim for orders `7..=max_order`.
pub fn verify_fibonacci(max_order: usize) -> Result<VerificationReport> {
    if !(7..=25).contains(&max_order) {
        return Err(domain("max_order", max_order, "7 <= max_order <= 25"));
    }
    let started = Instant::now();
    let per_order = (7..=max_order)
        .into_par_iter()
        .map(fibonacci_order)
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(Family::Fibonacci, 7, max_order, started, per_order))
}

fn letter_count(text: &Word, letter: Letter) -> u64 {
    text.letters().filter(|&l| l == letter).count() as u64
}

fn thue_morse_order(i: usize) -> Result<(ClaimReport, usize)> {
    let text = tm_word(i)?;
    let mut report = ClaimReport::new(i);
    let (a, b) = ab_counts(i - 1);

    let steps = ab_steps(i, i - 2)?;
    let bad = first_failure(steps, |s| {
        let w = tm_word(i - s.j).expect("order >= 1");
        let scan_a = find_occurrences(&w, &text).expect("nonempty");
        let scan_b = find_occurrences(&w.flip(), &text).expect("nonempty");
        let ok = s.a_identities && s.b_identities && s.sets.a_set == scan_a && s.sets.b_set == scan_b;
        (!ok).then(|| {
            json!({ "j": s.j, "recurrence": s.sets, "scan_a": scan_a, "scan_b": scan_b,
                    "a_identities": s.a_identities, "b_identities": s.b_identities })
        })
    });
    report.insert("occurrence-set recurrence equals scan", Claim::check(bad.is_none(), || bad.unwrap()));

    let bad = first_failure(0..=i - 2, |&j| {
        let w = tm_word(i - j).expect("order >= 1");
        let sa = find_occurrences(&w, &text).expect("nonempty").len() as u64;
        let sb = find_occurrences(&w.flip(), &text).expect("nonempty").len() as u64;
        (sa != a[j] || sb != b[j]).then(|| json!({ "j": j, "a": a[j], "b": b[j], "scan_a": sa, "scan_b": sb }))
    });
    report.insert("counts a_j, b_j equal scan", Claim::check(bad.is_none(), || bad.unwrap()));

    // outside the recurrence's range; recorded, not asserted
    let (la, lb) = (letter_count(&text, Letter::A), letter_count(&text, Letter::B));
    report.insert(
        "single-letter counts versus a_{i-1}, b_{i-1}",
        Claim::holds_with(json!({
            "scan_a": la, "a": a[i - 1], "scan_b": lb, "b": b[i - 1],
            "agrees": la == a[i - 1] && lb == b[i - 1],
        })),
    );

    for (name, claim) in check_tm_identities(i)?.claims {
        report.insert(format!("identity: {name}"), claim);
    }
    let bad = first_failure(tm_net_strings(i)?, |(w, starts)| {
        let scanned = find_occurrences(w, &text).expect("nonempty");
        (scanned.as_slice() != starts.as_slice())
            .then(|| json!({ "string": w, "expected": starts, "scan": scanned }))
    });
    report.insert("net strings occur only at the listed positions", Claim::check(bad.is_none(), || bad.unwrap()));

    let kinds = [FactorizationKind::A, FactorizationKind::B];
    let mut invalid = Vec::new();
    let mut off_basis = Vec::new();
    let mut single_letter_shape = Vec::new();
    for j in 0..i {
        for kind in kinds {
            let sf = smallest_factorization(i, j, kind)?;
            let factors = sf.factorization.factors();
            if !validate_smallest_factorization(i, j, kind, factors)? {
                invalid.push(json!({ "j": j, "kind": kind }));
            }
            let check = check_factorization(i, j, kind, factors)?;
            if !(check.basis && check.first_last) {
                let entry = json!({ "j": j, "kind": kind, "check": check, "factorization": sf });
                if j + 1 < i {
                    off_basis.push(entry);
                } else {
                    single_letter_shape.push(entry);
                }
            }
        }
    }
    report.insert("smallest factorizations are valid", Claim::check(invalid.is_empty(), || json!(invalid)));
    report.insert(
        "smallest factorizations use the basis, first/last rule (j <= i-2)",
        Claim::check(off_basis.is_empty(), || json!(off_basis)),
    );
    report.insert(
        "smallest factorizations at j = i-1 outside the basis",
        Claim::holds_with(json!(single_letter_shape)),
    );

    let count = net_occurrence_claims(&mut report, &text, predicted_tm_net_occurrences(i)?);
    Ok((report, count))
}

/// Checks every Thue-Morse claim for orders `5..=max_order`.
pub fn verify_thue_morse(max_order: usize) -> Result<VerificationReport> {
    if !(5..=16).contains(&max_order) {
        return Err(domain("max_order", max_order, "5 <= max_order <= 16"));
    }
    let started = Instant::now();
    let per_order = (5..=max_order)
        .into_par_iter()
        .map(thue_morse_order)
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(Family::ThueMorse, 5, max_order, started, per_order))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub text: Word,
    pub cover: Vec<Occurrence>,
    pub offending: Occurrence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub samples: usize,
    pub tested: usize,
    /// Texts without any cover.
    pub skipped: usize,
    pub covers_checked: usize,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Violations of the bridging-super lemma for each given cover of `text`.
fn check_text(text: &Word, covers: impl Fn(&[Occurrence], usize) -> Vec<Vec<Occurrence>>) -> (usize, Vec<Violation>) {
    let table = PairwiseRepeatTable::new(text);
    let nets = table.net_occurrences();
    let covers = covers(&nets, text.len());
    let mut violations = Vec::new();
    for cover in &covers {
        for offending in lemma_violations(&table, &nets, cover) {
            violations.push(Violation {
                text: text.clone(),
                cover: cover.clone(),
                offending,
            });
        }
    }
    (covers.len(), violations)
}

fn summarize(samples: usize, results: Vec<(usize, Vec<Violation>)>) -> PropertyReport {
    let skipped = results.iter().filter(|(covers, _)| *covers == 0).count();
    PropertyReport {
        samples,
        tested: samples - skipped,
        skipped,
        covers_checked: results.iter().map(|(c, _)| c).sum(),
        violations: results.into_iter().flat_map(|(_, v)| v).collect(),
    }
}

/// i.i.d. uniform letters, lengths uniform on `[4, max_len]`.
fn random_texts(seed: u64, samples: usize, max_len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let len = rng.gen_range(4..=max_len);
            Word::from_letters((0..len).map(|_| if rng.gen::<bool>() { Letter::B } else { Letter::A }))
        })
        .collect()
}

/// Seeded random texts with lengths uniform on `[4, max_len]`, each checked
/// against its greedy cover.
pub fn verify_onoc_lemma_random(seed: u64, samples: usize, max_len: usize) -> Result<PropertyReport> {
    if samples < 1 {
        return Err(domain("samples", samples, "samples >= 1"));
    }
    if !(4..=32).contains(&max_len) {
        return Err(domain("max_len", max_len, "4 <= max_len <= 32"));
    }
    let texts = random_texts(seed, samples, max_len);
    let results = texts
        .par_iter()
        .map(|t| check_text(t, |nets, n| greedy_onoc(nets, n).into_iter().collect()))
        .collect();
    Ok(summarize(samples, results))
}

/// Every binary text of length `1..=max_len`, each checked against every cover
/// whose members have increasing starts (which includes the greedy cover).
pub fn verify_onoc_lemma_exhaustive(max_len: usize) -> Result<PropertyReport> {
    if !(1..=16).contains(&max_len) {
        return Err(domain("max_len", max_len, "1 <= max_len <= 16"));
    }
    let texts: Vec<(usize, u32)> = (1..=max_len).flat_map(|n| (0..1u32 << n).map(move |bits| (n, bits))).collect();
    let results: Vec<_> = texts
        .par_iter()
        .map(|&(n, bits)| {
            let text = Word::from_letters((0..n).map(|k| if bits >> k & 1 == 1 { Letter::B } else { Letter::A }));
            check_text(&text, all_onocs)
        })
        .collect();
    Ok(summarize(texts.len(), results))
}
