//! Occurrence sets of `T_{i-j}` and `flip(T_{i-j})` inside `T_i`, their counts,
//! the nine net occurrences of `T_i`, and smallest factorizations of `T_i`
//! around a target word.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{domain, Error, Result};
use crate::occurrence::{find_occurrences, Occurrence, PositionSet};
use crate::report::{Claim, ClaimReport, IdentityReport};
use crate::words::{factor_starts, flatten_factors, tm_word, FactorRef, Factorization, Word};

fn tau(k: usize) -> usize {
    1 << (k - 1)
}

/// Positions of `T_{i-j}` (`a_set`) and of its flip (`b_set`) in `T_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceSets {
    pub a_set: PositionSet,
    pub b_set: PositionSet,
}

/// One step of the mutual recurrence, with its overlap identities.
#[derive(Debug, Clone, PartialEq)]
pub struct AbStep {
    pub j: usize,
    pub sets: OccurrenceSets,
    /// `A_{j-1} ∩ B'_{j-1} = I_{j-3}`, the other two intersections empty.
    pub a_identities: bool,
    /// The analogous identities for the flipped word.
    pub b_identities: bool,
}

/// Whether three sets meet exactly as the recurrence states: `x ∩ y = overlap`,
/// `z` disjoint from both.
fn overlaps_as_stated(x: &PositionSet, y: &PositionSet, z: &PositionSet, overlap: &PositionSet) -> bool {
    x.intersection(y) == *overlap && x.is_disjoint(z) && y.is_disjoint(z)
}

/// `A_{i,0..=j}` and `B_{i,0..=j}` evaluated bottom-up, for `0 <= j <= i - 2`.
pub fn ab_steps(i: usize, j: usize) -> Result<Vec<AbStep>> {
    if !(2..=24).contains(&i) {
        return Err(domain("i", i, "2 <= i <= 24"));
    }
    if j > i - 2 {
        return Err(domain(
            "j",
            j,
            format!("0 <= j <= {} (single letters are counted by direct scan)", i - 2),
        ));
    }
    let mut a: Vec<PositionSet> = vec![PositionSet::singleton(1)];
    let mut b: Vec<PositionSet> = vec![PositionSet::new()];
    let mut steps = vec![AbStep {
        j: 0,
        sets: OccurrenceSets {
            a_set: a[0].clone(),
            b_set: b[0].clone(),
        },
        a_identities: true,
        b_identities: true,
    }];
    for k in 1..=j {
        let (mut a_ok, mut b_ok) = (true, true);
        if k == 1 {
            a.push(PositionSet::singleton(1));
            b.push(PositionSet::singleton(tau(i - 1) + 1));
        } else {
            let near = tau(i - k);
            let far = tau(i - k) + tau(i - k - 1);
            let (a_overlap, b_overlap) = if k == 2 {
                (PositionSet::new(), PositionSet::new())
            } else {
                let wide = tau(i - k + 1) + tau(i - k);
                let widest = tau(i - k + 2);
                (
                    a[k - 3].shift(wide).union(&b[k - 3].shift(widest)),
                    b[k - 3].shift(wide).union(&a[k - 3].shift(widest)),
                )
            };
            let b_prime = b[k - 1].shift(near);
            let a_prime = a[k - 2].shift(far);
            a_ok = overlaps_as_stated(&a[k - 1], &b_prime, &a_prime, &a_overlap);
            let next_a = a[k - 1].union(&b_prime).union(&a_prime);

            let a_dprime = a[k - 1].shift(near);
            let b_dprime = b[k - 2].shift(far);
            b_ok = overlaps_as_stated(&b[k - 1], &a_dprime, &b_dprime, &b_overlap);
            let next_b = b[k - 1].union(&a_dprime).union(&b_dprime);
            a.push(next_a);
            b.push(next_b);
        }
        steps.push(AbStep {
            j: k,
            sets: OccurrenceSets {
                a_set: a[k].clone(),
                b_set: b[k].clone(),
            },
            a_identities: a_ok,
            b_identities: b_ok,
        });
    }
    Ok(steps)
}

pub fn ab_sets(i: usize, j: usize) -> Result<OccurrenceSets> {
    Ok(ab_steps(i, j)?.pop().expect("at least one step").sets)
}

/// Occurrence counts `a_0..=a_{j_max}` of `T_{i-j}` and `b_0..=b_{j_max}` of its flip.
pub fn ab_counts(j_max: usize) -> (Vec<u64>, Vec<u64>) {
    let mut a = vec![1u64; j_max + 1];
    let mut b = vec![0u64; j_max + 1];
    for j in 1..=j_max {
        if j >= 2 {
            a[j] = a[j - 1] + 2 * a[j - 2];
        }
        b[j] = b[j - 1] + a[j - 1];
    }
    (a, b)
}

/// Jacobsthal number `J_k = (2^k - (-1)^k) / 3`, so `J_0 = 0`, `J_1 = J_2 = 1`.
/// The occurrence count `a_j` equals `J_{j+1}`.
pub fn jacobsthal(k: u32) -> u64 {
    assert!(k <= 62, "jacobsthal needs k <= 62");
    let p = 1i64 << k;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    ((p - sign) / 3) as u64
}

/// The strings with net occurrences in `T_i`, each with its starting positions.
pub fn tm_net_strings(i: usize) -> Result<Vec<(Word, Vec<usize>)>> {
    if !(5..=30).contains(&i) {
        return Err(domain("i", i, "5 <= i <= 30"));
    }
    let t = |k| tm_word(k).expect("order >= 1");
    let (t1, t2, t3, t4) = (tau(i - 1), tau(i - 2), tau(i - 3), tau(i - 4));
    Ok(vec![
        (t(i - 2), vec![1, t2 + t3 + 1, t1 + t2 + 1]),
        (t(i - 2).flip(), vec![t2 + 1, t1 + 1]),
        (t(i - 4).concat(&t(i - 3).flip()), vec![t3 + t4 + 1, t1 + t3 + 1]),
        (t(i - 4).flip().concat(&t(i - 3)), vec![t3 + 1, t1 + t3 + t4 + 1]),
    ])
}

/// The nine net occurrences of `T_i`, sorted.
pub fn predicted_tm_net_occurrences(i: usize) -> Result<Vec<Occurrence>> {
    let mut out: Vec<Occurrence> = tm_net_strings(i)?
        .into_iter()
        .flat_map(|(w, starts)| {
            starts.into_iter().map(move |s| Occurrence {
                start: s,
                end: s + w.len() - 1,
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// First `(position, period)` at which `text` has an overlap, i.e. two
/// occurrences of one string sharing a position. 1-based position.
pub fn find_overlap(text: &Word) -> Option<(usize, usize)> {
    find_repetition(text, |run, d| run > d)
}

/// First `(position, period)` at which `text` contains a cube `xxx`.
pub fn find_cube(text: &Word) -> Option<(usize, usize)> {
    find_repetition(text, |run, d| run >= 2 * d)
}

/// For every period `d`, the run of agreement `t[p..] ~ t[p + d..]` from each
/// `p`; reports the first `(p, d)` where `hit(run, d)` holds.
fn find_repetition(text: &Word, hit: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let t = text.as_bytes();
    let n = t.len();
    let mut first: Option<(usize, usize)> = None;
    for d in 1..n {
        let mut run = 0usize;
        for p in (0..n - d).rev() {
            run = if t[p] == t[p + d] { run + 1 } else { 0 };
            if hit(run, d) {
                let cand = (p + 1, d);
                first = Some(first.map_or(cand, |f| f.min(cand)));
            }
        }
    }
    first
}

/// Displayed factorizations of `T_i` (from `i = 5`) and, for `i <= 12`,
/// overlap- and cube-freeness.
pub fn check_tm_identities(i: usize) -> Result<IdentityReport> {
    if !(5..=24).contains(&i) {
        return Err(domain("i", i, "5 <= i <= 24"));
    }
    use FactorRef::{Tm, TmFlip};
    let target = tm_word(i)?;
    let mut report = ClaimReport::new(i);
    let shapes: [(&str, Vec<FactorRef>); 4] = [
        (
            "T_i = T_{i-2} flip(T_{i-2}) flip(T_{i-2}) T_{i-2}",
            vec![Tm(i - 2), TmFlip(i - 2), TmFlip(i - 2), Tm(i - 2)],
        ),
        (
            "T_i = T_{i-2} flip(T_{i-3}) T_{i-2} T_{i-3} T_{i-2}",
            vec![Tm(i - 2), TmFlip(i - 3), Tm(i - 2), Tm(i - 3), Tm(i - 2)],
        ),
        (
            "T_i = T_{i-3} flip(T_{i-4}) T_{i-4} flip(T_{i-3}) T_{i-2} T_{i-4} flip(T_{i-3}) flip(T_{i-4}) flip(T_{i-3})",
            vec![
                Tm(i - 3),
                TmFlip(i - 4),
                Tm(i - 4),
                TmFlip(i - 3),
                Tm(i - 2),
                Tm(i - 4),
                TmFlip(i - 3),
                TmFlip(i - 4),
                TmFlip(i - 3),
            ],
        ),
        (
            "T_i = T_{i-3} flip(T_{i-4}) T_{i-3} T_{i-4} T_{i-2} T_{i-4} flip(T_{i-4}) T_{i-3} flip(T_{i-3})",
            vec![
                Tm(i - 3),
                TmFlip(i - 4),
                Tm(i - 3),
                Tm(i - 4),
                Tm(i - 2),
                Tm(i - 4),
                TmFlip(i - 4),
                Tm(i - 3),
                TmFlip(i - 3),
            ],
        ),
    ];
    for (name, factors) in shapes {
        let spelled = flatten_factors(&factors)?;
        report.insert(
            name,
            Claim::check(spelled == target, || json!({ "lhs": target, "rhs": spelled })),
        );
    }
    if i <= 12 {
        report.insert("overlap-free", repetition_claim(find_overlap(&target)));
        report.insert("cube-free", repetition_claim(find_cube(&target)));
    }
    Ok(report)
}

fn repetition_claim(found: Option<(usize, usize)>) -> Claim {
    match found {
        None => Claim::holds(),
        Some((position, period)) => Claim::fails(json!({ "position": position, "period": period })),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FactorizationKind {
    /// Around occurrences of `T_{i-j}`.
    A,
    /// Around occurrences of `flip(T_{i-j})`.
    B,
}

impl fmt::Display for FactorizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorizationKind::A => "A",
            FactorizationKind::B => "B",
        })
    }
}

impl FactorizationKind {
    fn target(self, order: usize) -> FactorRef {
        match self {
            FactorizationKind::A => FactorRef::Tm(order),
            FactorizationKind::B => FactorRef::TmFlip(order),
        }
    }
}

/// The fewest-factor factorization of `T_i` that keeps every occurrence of the
/// kind's target word as a whole factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallestFactorization {
    pub factorization: Factorization,
    pub kind: FactorizationKind,
    pub i: usize,
    pub j: usize,
}

impl Serialize for SmallestFactorization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "order": self.i,
            "j": self.j,
            "kind": self.kind,
            "factors": self.factorization.factors(),
        })
        .serialize(serializer)
    }
}

fn next(factors: &[FactorRef]) -> Result<Vec<FactorRef>> {
    factors
        .iter()
        .map(|f| match *f {
            FactorRef::Tm(m) if m >= 2 => Ok(FactorRef::Tm(m - 1)),
            FactorRef::TmFlip(m) if m >= 2 => Ok(FactorRef::TmFlip(m - 1)),
            _ => Err(Error::InvalidWord(format!("no next-order factor for {f}"))),
        })
        .collect()
}

fn flip(factors: &[FactorRef]) -> Vec<FactorRef> {
    factors
        .iter()
        .map(|f| match f {
            FactorRef::Tm(m) => FactorRef::TmFlip(*m),
            FactorRef::TmFlip(m) => FactorRef::Tm(*m),
            FactorRef::Fib(_) => f.clone(),
            FactorRef::Literal(w) => FactorRef::Literal(w.flip()),
        })
        .collect()
}

/// Joins `x` and `y` whose touching factors are both `flip(T_order)`, replacing
/// that pair by `flip(T_{order-1}) T_order T_{order-1}`.
pub fn boxplus(x: &[FactorRef], y: &[FactorRef], order: usize) -> Result<Vec<FactorRef>> {
    let want = FactorRef::TmFlip(order);
    let describe = |f: Option<&FactorRef>| f.map_or("nothing".to_string(), |f| f.to_string());
    if order < 2 || x.last() != Some(&want) || y.first() != Some(&want) {
        return Err(Error::BoxplusMismatch {
            order,
            left: describe(x.last()),
            right: describe(y.first()),
        });
    }
    let mut out = x[..x.len() - 1].to_vec();
    out.extend([FactorRef::TmFlip(order - 1), FactorRef::Tm(order), FactorRef::Tm(order - 1)]);
    out.extend_from_slice(&y[1..]);
    Ok(out)
}

/// Smallest factorization of `text` keeping each occurrence of `target` whole:
/// the target occurrences, with each gap between them as a single factor.
fn factorize_around(text: &Word, target: &FactorRef) -> Result<Vec<FactorRef>> {
    let word = target.resolve()?;
    let starts = find_occurrences(&word, text)?;
    let mut factors = Vec::new();
    let mut pos = 1;
    let gap = |from: usize, to: usize, factors: &mut Vec<FactorRef>| -> Result<()> {
        if from <= to {
            factors.push(name_literal(text.substring(from, to)?));
        }
        Ok(())
    };
    for s in starts.iter() {
        gap(pos, s - 1, &mut factors)?;
        factors.push(target.clone());
        pos = s + word.len();
    }
    gap(pos, text.len(), &mut factors)?;
    Ok(factors)
}

/// A single letter is named as `T_1` or its flip; anything else stays literal.
fn name_literal(w: Word) -> FactorRef {
    match w.as_bytes() {
        b"a" => FactorRef::Tm(1),
        b"b" => FactorRef::TmFlip(1),
        _ => FactorRef::Literal(w),
    }
}

/// `F^A_{i,j}` or `F^B_{i,j}` for `i >= 2` and `0 <= j <= i - 1`.
///
/// Built by the mutual recurrence wherever it stays within defined orders.
/// `F^B_{i,0}` is `(T_i)`, the one-factor factorization, since `T_i` contains no
/// occurrence of its flip. For `j = i - 1 >= 2` the recurrence would need `T_0`,
/// so the factorization is read off the single-letter occurrences instead.
pub fn smallest_factorization(i: usize, j: usize, kind: FactorizationKind) -> Result<SmallestFactorization> {
    if !(2..=24).contains(&i) {
        return Err(domain("i", i, "2 <= i <= 24"));
    }
    if j > i - 1 {
        return Err(domain("j", j, format!("0 <= j <= {}", i - 1)));
    }
    let text = tm_word(i)?;
    let factors = if j >= 2 && j == i - 1 {
        factorize_around(&text, &kind.target(1))?
    } else {
        let (a, b) = recurrence(i, j)?;
        match kind {
            FactorizationKind::A => a,
            FactorizationKind::B => b,
        }
    };
    Ok(SmallestFactorization {
        factorization: Factorization::new(factors, text)?,
        kind,
        i,
        j,
    })
}

fn recurrence(i: usize, j: usize) -> Result<(Vec<FactorRef>, Vec<FactorRef>)> {
    use FactorRef::{Tm, TmFlip};
    if j == 0 {
        return Ok((vec![Tm(i)], vec![Tm(i)]));
    }
    let mut a = vec![Tm(i - 1), TmFlip(i - 1)];
    let mut b = a.clone();
    for k in 2..=j {
        let (na, nb) = (next(&a)?, next(&b)?);
        let next_a = if k % 2 == 1 {
            [na.clone(), flip(&nb)].concat()
        } else {
            boxplus(&na, &flip(&nb), i - k)?
        };
        b = [nb, flip(&na)].concat();
        a = next_a;
    }
    Ok((a, b))
}

/// Whether `factors` keep every occurrence of `target` in `T_i` whole and no two
/// neighbouring factors both differ from it.
pub fn validate_smallest_factorization(
    i: usize,
    j: usize,
    kind: FactorizationKind,
    factors: &[FactorRef],
) -> Result<bool> {
    let c = check_factorization(i, j, kind, factors)?;
    Ok(c.covers_occurrences && c.no_two_consecutive)
}

/// Each property a smallest factorization is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub covers_occurrences: bool,
    pub no_two_consecutive: bool,
    /// Every factor is one of `T_{i-j}`, `T_{i-j-1}` or their flips.
    pub basis: bool,
    /// First factor `T_{i-j}`; last factor `T_{i-j}` for even `j`, its flip for odd `j`.
    pub first_last: bool,
}

impl FactorizationCheck {
    pub fn passes(&self) -> bool {
        self.covers_occurrences && self.no_two_consecutive && self.basis && self.first_last
    }
}

/// Errors with [`Error::NotAFactorization`] unless `factors` spell `T_i`.
pub fn check_factorization(
    i: usize,
    j: usize,
    kind: FactorizationKind,
    factors: &[FactorRef],
) -> Result<FactorizationCheck> {
    if !(2..=24).contains(&i) {
        return Err(domain("i", i, "2 <= i <= 24"));
    }
    if j > i - 1 {
        return Err(domain("j", j, format!("0 <= j <= {}", i - 1)));
    }
    let text = tm_word(i)?;
    if factors.is_empty() || flatten_factors(factors)? != text {
        return Err(Error::NotAFactorization);
    }
    let words: Vec<Word> = factors.iter().map(FactorRef::resolve).collect::<Result<_>>()?;
    let target = kind.target(i - j).resolve()?;
    let starts = factor_starts(factors)?;

    let whole: PositionSet = starts
        .iter()
        .zip(&words)
        .filter(|(_, w)| **w == target)
        .map(|(s, _)| *s)
        .collect();
    let covers_occurrences = whole == find_occurrences(&target, &text)?;
    let no_two_consecutive = words.windows(2).all(|p| p[0] == target || p[1] == target);

    let level = tm_word(i - j)?;
    let mut basis_words = vec![level.clone(), level.flip()];
    if i - j >= 2 {
        let below = tm_word(i - j - 1)?;
        basis_words.push(below.flip());
        basis_words.push(below);
    }
    let basis = words.iter().all(|w| basis_words.contains(w));
    let last = if j % 2 == 0 { level.clone() } else { level.flip() };
    let first_last = words.first() == Some(&level) && words.last() == Some(&last);
    Ok(FactorizationCheck {
        covers_occurrences,
        no_two_consecutive,
        basis,
        first_last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_frequency::net_occurrences_bruteforce;
    use FactorRef::{Literal, Tm, TmFlip};
    use FactorizationKind::{A, B};

    fn set(v: &[usize]) -> PositionSet {
        v.iter().copied().collect()
    }

    fn oracle(i: usize, j: usize) -> OccurrenceSets {
        let t = tm_word(i).unwrap();
        let w = tm_word(i - j).unwrap();
        OccurrenceSets {
            a_set: find_occurrences(&w, &t).unwrap(),
            b_set: find_occurrences(&w.flip(), &t).unwrap(),
        }
    }

    #[test]
    fn ab_examples() {
        let s = ab_sets(5, 2).unwrap();
        assert_eq!(s.a_set, set(&[1, 7, 13]));
        assert_eq!(s.b_set, set(&[5, 9]));
        assert_eq!(ab_sets(5, 3).unwrap().a_set, set(&[1, 4, 7, 11, 13]));
        assert_eq!(ab_sets(12, 5).unwrap(), oracle(12, 5));
        assert_eq!(ab_sets(2, 0).unwrap().b_set, PositionSet::new());
    }

    #[test]
    fn ab_domain() {
        assert!(matches!(ab_sets(4, 3), Err(Error::Domain { name: "j", .. })));
        assert!(matches!(ab_sets(1, 0), Err(Error::Domain { name: "i", .. })));
    }

    #[test]
    fn ab_matches_scan_with_identities() {
        for i in 2..=11 {
            for step in ab_steps(i, i - 2).unwrap() {
                assert!(step.a_identities && step.b_identities, "i = {i}, j = {}", step.j);
                assert_eq!(step.sets, oracle(i, step.j), "i = {i}, j = {}", step.j);
            }
        }
    }

    #[test]
    fn counts() {
        let (a, b) = ab_counts(4);
        assert_eq!(a, [1, 1, 3, 5, 11]);
        assert_eq!(b, [0, 1, 2, 5, 10]);
        assert_eq!(ab_counts(0), (vec![1], vec![0]));
        let (a, _) = ab_counts(20);
        assert_eq!(&a[..8], [1, 1, 3, 5, 11, 21, 43, 85]);
        for (j, &aj) in a.iter().enumerate() {
            assert_eq!(aj, jacobsthal(j as u32 + 1));
        }
        assert_eq!(jacobsthal(0), 0);
        assert_eq!(oracle(5, 3).a_set.len(), 5);
    }

    #[test]
    fn predicted_net_occurrences() {
        let spans: Vec<(usize, usize)> =
            predicted_tm_net_occurrences(5).unwrap().iter().map(|o| (o.start, o.end)).collect();
        assert_eq!(
            spans,
            [(1, 4), (3, 5), (4, 6), (5, 8), (7, 10), (9, 12), (11, 13), (12, 14), (13, 16)]
        );
        assert!(predicted_tm_net_occurrences(4).is_err());
        for i in 5..=10 {
            let found: Vec<Occurrence> = net_occurrences_bruteforce(&tm_word(i).unwrap())
                .unwrap()
                .iter()
                .map(|r| r.occurrence)
                .collect();
            assert_eq!(predicted_tm_net_occurrences(i).unwrap(), found, "i = {i}");
        }
    }

    #[test]
    fn net_strings_occur_only_at_listed_positions() {
        for i in 5..=12 {
            let t = tm_word(i).unwrap();
            for (w, starts) in tm_net_strings(i).unwrap() {
                assert_eq!(find_occurrences(&w, &t).unwrap(), set(&starts), "i = {i}, {w}");
            }
        }
    }

    #[test]
    fn repetitions() {
        assert_eq!(find_overlap(&"ababa".parse().unwrap()), Some((1, 2)));
        assert_eq!(find_overlap(&"aa".parse().unwrap()), None);
        assert_eq!(find_overlap(&"aaa".parse().unwrap()), Some((1, 1)));
        assert_eq!(find_cube(&"babababa".parse().unwrap()), Some((1, 2)));
        assert_eq!(find_cube(&"ababa".parse().unwrap()), None);
        for i in 1..=10 {
            let t = tm_word(i).unwrap();
            assert_eq!(find_overlap(&t), None);
            assert_eq!(find_cube(&t), None);
        }
    }

    #[test]
    fn identities() {
        for i in [5, 8, 10] {
            let r = check_tm_identities(i).unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert_eq!(r.claims.len(), 6);
        }
        assert_eq!(check_tm_identities(13).unwrap().claims.len(), 4);
        assert!(check_tm_identities(4).is_err());
    }

    #[test]
    fn displayed_factorizations() {
        for i in 4..=9 {
            let a2 = smallest_factorization(i, 2, A).unwrap();
            assert_eq!(
                a2.factorization.factors(),
                &[Tm(i - 2), TmFlip(i - 3), Tm(i - 2), Tm(i - 3), Tm(i - 2)]
            );
            let b2 = smallest_factorization(i, 2, B).unwrap();
            assert_eq!(b2.factorization.factors(), &[Tm(i - 2), TmFlip(i - 2), TmFlip(i - 2), Tm(i - 2)]);
        }
        assert_eq!(smallest_factorization(6, 0, A).unwrap().factorization.factors(), &[Tm(6)]);
        assert_eq!(smallest_factorization(6, 0, B).unwrap().factorization.factors(), &[Tm(6)]);
        assert_eq!(
            smallest_factorization(6, 1, B).unwrap().factorization.factors(),
            &[Tm(5), TmFlip(5)]
        );
    }

    #[test]
    fn recurrence_agrees_with_direct_construction() {
        // the factorization is unique, so building it from the scanned
        // occurrences must give the same factors wherever both apply
        for i in 2..=11 {
            let text = tm_word(i).unwrap();
            for j in 0..=i - 1 {
                for kind in [A, B] {
                    if kind == B && j == 0 {
                        continue;
                    }
                    let sf = smallest_factorization(i, j, kind).unwrap();
                    let direct = factorize_around(&text, &kind.target(i - j)).unwrap();
                    let resolve = |fs: &[FactorRef]| -> Vec<Word> {
                        fs.iter().map(|f| f.resolve().unwrap()).collect()
                    };
                    assert_eq!(resolve(sf.factorization.factors()), resolve(&direct), "{i} {j} {kind}");
                }
            }
        }
    }

    #[test]
    fn validation() {
        let sf = smallest_factorization(8, 5, A).unwrap();
        let starts = sf.factorization.starts().unwrap();
        let at: Vec<usize> = starts
            .iter()
            .zip(sf.factorization.factors())
            .filter(|(_, f)| **f == Tm(3))
            .map(|(s, _)| *s)
            .collect();
        assert_eq!(set(&at), find_occurrences(&tm_word(3).unwrap(), &tm_word(8).unwrap()).unwrap());
        for (i, j, kind) in [(8, 3, A), (10, 4, B), (8, 5, A)] {
            let sf = smallest_factorization(i, j, kind).unwrap();
            assert!(validate_smallest_factorization(i, j, kind, sf.factorization.factors()).unwrap());
            assert!(check_factorization(i, j, kind, sf.factorization.factors()).unwrap().passes());
        }
        // splitting a non-target factor leaves two non-target neighbours
        let split = [Tm(3), TmFlip(1), Tm(1), Tm(3), Tm(2), Tm(3)];
        assert_eq!(flatten_factors(&split).unwrap(), tm_word(5).unwrap());
        assert!(!validate_smallest_factorization(5, 2, A, &split).unwrap());
        // one literal factor hides every occurrence
        let merged = [Literal(tm_word(5).unwrap())];
        assert!(!validate_smallest_factorization(5, 2, A, &merged).unwrap());
        assert_eq!(
            validate_smallest_factorization(4, 2, A, &[Tm(3)]).unwrap_err(),
            Error::NotAFactorization
        );
    }

    #[test]
    fn single_letter_targets() {
        // T_3 = abba: the b-run between the two a's is one factor
        let sf = smallest_factorization(3, 2, A).unwrap();
        assert_eq!(sf.factorization.factors(), &[Tm(1), Literal("bb".parse().unwrap()), Tm(1)]);
        let c = check_factorization(3, 2, A, sf.factorization.factors()).unwrap();
        assert!(c.covers_occurrences && c.no_two_consecutive && c.first_last);
        assert!(!c.basis);
        let sf = smallest_factorization(3, 2, B).unwrap();
        assert_eq!(sf.factorization.factors(), &[Tm(1), TmFlip(1), TmFlip(1), Tm(1)]);
        assert!(check_factorization(3, 2, B, sf.factorization.factors()).unwrap().passes());
    }

    #[test]
    fn boxplus_checks_its_boundary() {
        let x = [Tm(3), TmFlip(3)];
        let y = [TmFlip(3), Tm(3)];
        assert_eq!(boxplus(&x, &y, 3).unwrap(), [Tm(3), TmFlip(2), Tm(3), Tm(2), Tm(3)]);
        assert!(matches!(boxplus(&y, &x, 3), Err(Error::BoxplusMismatch { order: 3, .. })));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(smallest_factorization(4, 1, A).unwrap()).unwrap();
        assert_eq!(
            v,
            json!({"order": 4, "j": 1, "kind": "A", "factors": [
                {"kind": "TM", "order": 3, "text": null},
                {"kind": "TMflip", "order": 3, "text": null}
            ]})
        );
    }
}
