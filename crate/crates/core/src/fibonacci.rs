//! Occurrence sets of `F_{i-j}` inside `F_i`, their counts, and computational
//! checks of the structural facts that pin down the net occurrences of `F_i`.

use serde_json::json;

use crate::error::{domain, Result};
use crate::net_frequency::PairwiseRepeatTable;
use crate::occurrence::{find_occurrences, Occurrence, PositionSet};
use crate::report::{Claim, ClaimReport, IdentityReport, LemmaReport};
use crate::words::{delta, fib_number, fib_word, q_word, Word};

fn f(k: usize) -> usize {
    fib_number(k as i64) as usize
}

/// One bottom-up step of the `Θ` recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaStep {
    pub j: usize,
    pub set: PositionSet,
    /// The constituent sets were pairwise disjoint.
    pub disjoint: bool,
    /// The maximum matched its closed form.
    pub max_matches: bool,
}

/// Every `Θ_{i,0..=j}` evaluated bottom-up, keeping the per-step clause checks.
pub fn theta_steps(i: usize, j: usize) -> Result<Vec<ThetaStep>> {
    if i < 6 || i > 90 {
        return Err(domain("i", i, "6 <= i <= 90"));
    }
    if j > i - 4 {
        return Err(domain("j", j, format!("0 <= j <= {}", i - 4)));
    }
    let fi = f(i);
    let mut steps: Vec<ThetaStep> = Vec::with_capacity(j + 1);
    for k in 0..=j {
        let step = if k < 2 {
            ThetaStep {
                j: k,
                set: PositionSet::singleton(1),
                disjoint: true,
                max_matches: true,
            }
        } else {
            let previous = &steps[k - 1].set;
            let shifted = steps[k - 2].set.shift(f(i - k));
            let mut disjoint = previous.is_disjoint(&shifted);
            let mut set = previous.union(&shifted);
            let expected_max = if k % 2 == 0 {
                let last = PositionSet::singleton(fi - f(i - k) + 1);
                disjoint &= previous.is_disjoint(&last) && shifted.is_disjoint(&last);
                set = set.union(&last);
                fi - f(i - k) + 1
            } else {
                fi - f(i - k + 1) + 1
            };
            ThetaStep {
                j: k,
                max_matches: set.max() == Some(expected_max),
                set,
                disjoint,
            }
        };
        steps.push(step);
    }
    Ok(steps)
}

/// Starting positions of `F_{i-j}` in `F_i`, for `i >= 6` and `0 <= j <= i - 4`.
pub fn theta_set(i: usize, j: usize) -> Result<PositionSet> {
    Ok(theta_steps(i, j)?.pop().expect("at least one step").set)
}

/// Number of occurrences of `F_{i-j}` in `F_i`, for `0 <= j <= i - 1`.
pub fn theta_count(i: usize, j: usize) -> Result<u64> {
    if !(2..=90).contains(&i) {
        return Err(domain("i", i, "2 <= i <= 90"));
    }
    if j > i - 1 {
        return Err(domain("j", j, format!("0 <= j <= {}", i - 1)));
    }
    let j = j as i64;
    let i = i as i64;
    Ok(if j <= i - 4 {
        fib_number(j + 2) - (j % 2) as u64
    } else if j <= i - 2 {
        fib_number(j + 1)
    } else {
        fib_number(j - 1)
    })
}

/// The three net occurrences of `F_i`: `F_{i-2} Q_i` at `1` and `f_{i-2} + 1`,
/// `F_{i-2}` at `f_{i-1} + 1`.
pub fn predicted_fib_net_occurrences(i: usize) -> Result<Vec<Occurrence>> {
    if !(7..=90).contains(&i) {
        return Err(domain("i", i, "7 <= i <= 90"));
    }
    let q = q_word(i)?.len();
    let (f2, f1) = (f(i - 2), f(i - 1));
    Ok(vec![
        Occurrence { start: 1, end: f2 + q },
        Occurrence { start: f2 + 1, end: 2 * f2 + q },
        Occurrence { start: f1 + 1, end: f(i) },
    ])
}

fn fw(k: usize) -> Word {
    fib_word(k).expect("order >= 1")
}

fn cat(parts: &[&Word]) -> Word {
    let mut w = Word::new();
    for p in parts {
        w.push_word(p);
    }
    w
}

fn equality(name: &str, lhs: &Word, rhs: &Word) -> Claim {
    Claim::check(lhs == rhs, || json!({ "identity": name, "lhs": lhs, "rhs": rhs }))
}

fn positions(text: &Word, pattern: &Word, expected: &[usize]) -> Claim {
    let found = find_occurrences(pattern, text).expect("nonempty pattern");
    Claim::check(found.as_slice() == expected, || {
        json!({ "pattern": pattern, "expected": expected, "observed": found })
    })
}

/// Concatenation identities for `F_i`. Those involving `Q_i` start at `i = 7`.
pub fn check_fib_identities(i: usize) -> Result<IdentityReport> {
    if !(6..=40).contains(&i) {
        return Err(domain("i", i, "6 <= i <= 40"));
    }
    let mut report = ClaimReport::new(i);
    let fi = fw(i);
    report.insert(
        "F_i = F_{i-2} F_{i-3} F_{i-2}",
        equality("F_{i-2} F_{i-3} F_{i-2}", &fi, &cat(&[&fw(i - 2), &fw(i - 3), &fw(i - 2)])),
    );
    report.insert(
        "F_i = F_{i-2} F_{i-2} F_{i-5} F_{i-4}",
        equality(
            "F_{i-2} F_{i-2} F_{i-5} F_{i-4}",
            &fi,
            &cat(&[&fw(i - 2), &fw(i - 2), &fw(i - 5), &fw(i - 4)]),
        ),
    );
    if i >= 7 {
        let q = q_word(i)?;
        let parity = (i % 2) as u8;
        report.insert(
            "F_{i-4} F_{i-5} = Q_i Delta(1 - i mod 2)",
            equality(
                "F_{i-4} F_{i-5}",
                &cat(&[&fw(i - 4), &fw(i - 5)]),
                &cat(&[&q, &delta(1 - parity)?]),
            ),
        );
        report.insert(
            "F_{i-5} F_{i-4} = Q_i Delta(i mod 2)",
            equality(
                "F_{i-5} F_{i-4}",
                &cat(&[&fw(i - 5), &fw(i - 4)]),
                &cat(&[&q, &delta(parity)?]),
            ),
        );
        let want = f(i - 3) - 2;
        report.insert(
            "|Q_i| = f_{i-3} - 2",
            Claim::check(q.len() == want, || json!({ "expected": want, "observed": q.len() })),
        );
    }
    Ok(report)
}

/// `Q_k`, taking `Q_6` to be empty.
fn q_or_empty(k: usize) -> Word {
    if k >= 7 {
        q_word(k).expect("order >= 7")
    } else {
        Word::new()
    }
}

/// Every start in `positions` is followed in `text` by `follower`.
fn always_followed(text: &Word, positions: &PositionSet, len: usize, follower: &Word) -> Claim {
    let t = text.as_bytes();
    let bad: Vec<usize> = positions
        .iter()
        .filter(|&p| {
            let from = p - 1 + len;
            t.get(from..from + follower.len()) != Some(follower.as_bytes())
        })
        .collect();
    Claim::check(bad.is_empty(), || json!({ "follower": follower, "not_followed_at": bad }))
}

/// Like [`always_followed`] with a one-letter follower, except that an
/// occurrence ending the text has no right extension and is skipped. Skipped
/// starts are attached to a passing claim.
fn right_extensions_agree(text: &Word, positions: &PositionSet, len: usize, letter: &Word) -> Claim {
    let (at_end, inner): (Vec<usize>, Vec<usize>) =
        positions.iter().partition(|&p| p - 1 + len == text.len());
    let inner: PositionSet = inner.into_iter().collect();
    let claim = always_followed(text, &inner, len, letter);
    if claim.pass && !at_end.is_empty() {
        Claim::holds_with(json!({ "ends_text_at": at_end }))
    } else {
        claim
    }
}

fn unique(text: &Word, pattern: &Word) -> Claim {
    let found = find_occurrences(pattern, text).expect("nonempty pattern");
    Claim::check(found.len() == 1, || json!({ "pattern": pattern, "observed": found }))
}

/// Net occurrences with a start in `starts` and an end of at least `ends_from`
/// that `allowed` rejects.
fn net_in_rectangle(
    table: &PairwiseRepeatTable,
    starts: std::ops::RangeInclusive<usize>,
    ends_from: usize,
    mut allowed: impl FnMut(Occurrence) -> bool,
) -> Vec<Occurrence> {
    let n = table.text().len();
    let mut out = Vec::new();
    for s in starts {
        for e in ends_from.max(s)..=n {
            let occ = Occurrence { start: s, end: e };
            if table.is_net(occ) && !allowed(occ) {
                out.push(occ);
            }
        }
    }
    out
}

/// Exhaustive checks of the positional and uniqueness lemmas on `F_i`.
pub fn check_fib_lemmas(i: usize) -> Result<LemmaReport> {
    if !(7..=25).contains(&i) {
        return Err(domain("i", i, "7 <= i <= 25"));
    }
    let mut report = ClaimReport::new(i);
    let fi = fw(i);
    let (f1, f2, f3) = (f(i - 1), f(i - 2), f(i - 3));

    let doubled = fi.concat(&fi);
    report.insert("F_i occurs exactly twice in F_i F_i", positions(&doubled, &fi, &[1, f(i) + 1]));
    report.insert("F_{i-1} occurs only at 1", positions(&fi, &fw(i - 1), &[1]));
    report.insert(
        "F_{i-2} occurs at 1, f_{i-2}+1, f_{i-1}+1",
        positions(&fi, &fw(i - 2), &[1, f2 + 1, f1 + 1]),
    );
    report.insert(
        "F_{i-3} occurs at 1, f_{i-3}+1, f_{i-2}+1, f_{i-1}+1",
        positions(&fi, &fw(i - 3), &[1, f3 + 1, f2 + 1, f1 + 1]),
    );
    let aaa = fi.contains_str("aaa");
    let bb = fi.contains_str("bb");
    report.insert(
        "no aaa and no bb",
        Claim::check(!aaa && !bb, || json!({ "contains_aaa": aaa, "contains_bb": bb })),
    );

    let q = q_word(i)?;
    let f2q = fw(i - 2).concat(&q);
    report.insert("F_{i-2} Q_i occurs only at 1, f_{i-2}+1", positions(&fi, &f2q, &[1, f2 + 1]));

    let table = PairwiseRepeatTable::new(&fi);
    let net_expected = [
        (Occurrence { start: f1 + 1, end: f(i) }, true),
        (Occurrence { start: 1, end: f2 + q.len() }, true),
        (Occurrence { start: f2 + 1, end: 2 * f2 + q.len() }, true),
        (Occurrence { start: 1, end: f2 }, false),
        (Occurrence { start: f2 + 1, end: 2 * f2 }, false),
    ];
    let wrong: Vec<_> = net_expected
        .iter()
        .filter(|(o, net)| table.is_net(*o) != *net)
        .map(|(o, net)| json!({ "occurrence": o, "expected_net": net }))
        .collect();
    report.insert(
        "net status of the F_{i-2} and F_{i-2} Q_i occurrences",
        Claim::check(wrong.is_empty(), || json!(wrong)),
    );

    let f3w = fw(i - 3);
    let f3_at = find_occurrences(&f3w, &fi)?;
    report.insert(
        "F_{i-3} is always followed by Q_{i-1}",
        always_followed(&fi, &f3_at, f3, &q_or_empty(i - 1)),
    );
    let f365 = cat(&[&f3w, &fw(i - 6), &fw(i - 5)]);
    report.insert("F_{i-3} F_{i-6} F_{i-5} is unique", unique(&fi, &f365));
    report.insert(
        "length-(f_{i-2}-1) prefix of F_{i-3} F_{i-6} F_{i-5} is unique",
        unique(&fi, &f365.substring(1, f2 - 1)?),
    );
    let u = f3w.substring(1, f3 - 1)?;
    let last = f3w.substring(f3, f3)?;
    report.insert(
        "length-(f_{i-3}-1) prefix of F_{i-3} is always followed by its last letter",
        right_extensions_agree(&fi, &find_occurrences(&u, &fi)?, u.len(), &last),
    );

    let mut repeated_extensions = Vec::new();
    for x in ["a", "b"] {
        let x: Word = x.parse()?;
        for ext in [x.concat(&f2q), f2q.concat(&x)] {
            let count = find_occurrences(&ext, &fi)?.len();
            if count > 1 {
                repeated_extensions.push(json!({ "string": ext, "occurrences": count }));
            }
        }
    }
    report.insert(
        "one-letter extensions of F_{i-2} Q_i are unique",
        Claim::check(repeated_extensions.is_empty(), || json!(repeated_extensions)),
    );

    let allowed = &|o: Occurrence| {
        let s = fi.substring(o.start, o.end).expect("occurrence within text");
        s == fw(i - 2) || s == f2q
    };
    let mut offenders = Vec::new();
    for u in f3_at.iter() {
        offenders.extend(net_in_rectangle(&table, 1..=u, u + f3 - 1, allowed));
    }
    report.insert(
        "net super-occurrences of F_{i-3} are F_{i-2} or F_{i-2} Q_i",
        Claim::check(offenders.is_empty(), || json!(offenders)),
    );

    // proper super-occurrences of Q_i at f_{i-2}+1; the two occurrences of
    // F_{i-2} Q_i contain it and are the only exceptions
    let (qs, qe) = (f2 + 1, f2 + q.len());
    let offenders: Vec<Occurrence> =
        net_in_rectangle(&table, 1..=qs, qe, |o| (o.start == qs && o.end == qe) || allowed(o));
    report.insert(
        "net proper super-occurrences of Q_i at f_{i-2}+1 are occurrences of F_{i-2} Q_i",
        Claim::check(offenders.is_empty(), || json!(offenders)),
    );
    Ok(report)
}
