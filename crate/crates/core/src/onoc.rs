//! Overlapping net occurrence covers (ONOCs) and the bridging-super-occurrence
//! completeness check.
//!
//! A cover is a chain of net occurrences `(i_1, j_1), ..., (i_c, j_c)` with
//! `i_1 = 1`, `j_c = n` and `i_{k+1} <= j_k`. Its bridging net sub-occurrences
//! (BNSOs) are the overlaps `(i_{k+1}, j_k)`. Any net occurrence outside the
//! cover must contain `(i - 1, j + 1)` for some BNSO `(i, j)`, so scanning
//! those super-occurrences decides whether the cover is complete.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::net_frequency::PairwiseRepeatTable;
use crate::occurrence::{is_net_occurrence, Occurrence};
use crate::words::Word;

/// A validated ONOC of `text`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    text: Word,
    members: Vec<Occurrence>,
}

impl Cover {
    pub fn new(text: &Word, members: Vec<Occurrence>) -> Result<Cover> {
        if !is_onoc(text, &members)? {
            return Err(Error::InvalidCover(format!(
                "{} is not an overlapping net occurrence cover",
                format_members(&members)
            )));
        }
        Ok(Cover {
            text: text.clone(),
            members,
        })
    }

    pub fn members(&self) -> &[Occurrence] {
        &self.members
    }

    pub fn text(&self) -> &Word {
        &self.text
    }

    pub fn bnsos(&self) -> Vec<Occurrence> {
        chain_bnsos(&self.members)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub cover_valid: bool,
    pub bnsos: Vec<Occurrence>,
    /// Net occurrences outside the cover found among the bridging super-occurrences.
    pub offending_supers: Vec<Occurrence>,
    /// The scan's verdict matches a full brute-force enumeration: offenders are
    /// empty exactly when the cover already lists every net occurrence, and
    /// every net occurrence outside the cover was found by the scan.
    pub oracle_agrees: bool,
}

pub(crate) fn format_members(members: &[Occurrence]) -> String {
    let parts: Vec<String> = members.iter().map(|o| o.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn chain_holds(members: &[Occurrence], n: usize) -> bool {
    match (members.first(), members.last()) {
        (Some(first), Some(last)) => {
            first.start == 1
                && last.end == n
                && members.windows(2).all(|p| p[1].start <= p[0].end)
        }
        _ => false,
    }
}

fn chain_bnsos(members: &[Occurrence]) -> Vec<Occurrence> {
    members
        .windows(2)
        .map(|p| Occurrence {
            start: p[1].start,
            end: p[0].end,
        })
        .collect()
}

pub fn is_onoc(text: &Word, candidate: &[Occurrence]) -> Result<bool> {
    if candidate.is_empty() {
        return Err(Error::InvalidCover("a cover needs at least one member".into()));
    }
    for occ in candidate {
        occ.check_within(text.len())?;
    }
    if !chain_holds(candidate, text.len()) {
        return Ok(false);
    }
    for &occ in candidate {
        if !is_net_occurrence(text, occ)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{(i_2, j_1), ..., (i_c, j_{c-1})}` for a valid cover.
pub fn bnso_set(text: &Word, members: &[Occurrence]) -> Result<Vec<Occurrence>> {
    if !is_onoc(text, members)? {
        return Err(Error::InvalidCover(format!(
            "{} is not an overlapping net occurrence cover",
            format_members(members)
        )));
    }
    Ok(chain_bnsos(members))
}

/// The rectangle of occurrences `(s, e)` with `s <= i - 1` and `e >= j + 1`, each
/// bound clipped to the text. Iterates in `(start, end)` order.
#[derive(Debug, Clone)]
pub struct BridgingSupers {
    starts: std::ops::RangeInclusive<usize>,
    ends: std::ops::RangeInclusive<usize>,
}

impl BridgingSupers {
    pub fn count(&self) -> usize {
        self.starts.clone().count() * self.ends.clone().count()
    }

    pub fn contains(&self, occ: Occurrence) -> bool {
        self.starts.contains(&occ.start) && self.ends.contains(&occ.end)
    }

    pub fn iter(&self) -> impl Iterator<Item = Occurrence> + '_ {
        self.starts.clone().flat_map(move |s| {
            self.ends
                .clone()
                .map(move |e| Occurrence { start: s, end: e })
        })
    }
}

impl IntoIterator for BridgingSupers {
    type Item = Occurrence;
    type IntoIter = Box<dyn Iterator<Item = Occurrence>>;

    fn into_iter(self) -> Self::IntoIter {
        let ends = self.ends;
        Box::new(
            self.starts
                .flat_map(move |s| ends.clone().map(move |e| Occurrence { start: s, end: e })),
        )
    }
}

fn bridging_rectangle(n: usize, bnso: Occurrence) -> BridgingSupers {
    let max_start = bnso.start.saturating_sub(1).max(1);
    let min_end = (bnso.end + 1).min(n);
    BridgingSupers {
        starts: 1..=max_start,
        ends: min_end..=n,
    }
}

pub fn enumerate_bridging_supers(text: &Word, bnso: Occurrence) -> Result<BridgingSupers> {
    bnso.check_within(text.len())?;
    Ok(bridging_rectangle(text.len(), bnso))
}

fn scan_offenders(table: &PairwiseRepeatTable, members: &[Occurrence]) -> Vec<Occurrence> {
    let n = table.text().len();
    let mut offenders: Vec<Occurrence> = chain_bnsos(members)
        .into_iter()
        .flat_map(|b| bridging_rectangle(n, b))
        .filter(|o| table.is_net(*o) && !members.contains(o))
        .collect();
    offenders.sort_unstable();
    offenders.dedup();
    offenders
}

pub fn prove_completeness(text: &Word, members: &[Occurrence]) -> CompletenessReport {
    let cover_valid = matches!(is_onoc(text, members), Ok(true));
    if !cover_valid {
        return CompletenessReport {
            cover_valid,
            bnsos: Vec::new(),
            offending_supers: Vec::new(),
            oracle_agrees: false,
        };
    }
    let table = PairwiseRepeatTable::new(text);
    let offending_supers = scan_offenders(&table, members);
    let oracle = table.net_occurrences();
    let outside: Vec<Occurrence> = oracle
        .iter()
        .copied()
        .filter(|o| !members.contains(o))
        .collect();
    let mut sorted_members = members.to_vec();
    sorted_members.sort_unstable();
    let oracle_agrees = offending_supers == outside
        && offending_supers.is_empty() == (sorted_members == oracle);
    CompletenessReport {
        cover_valid,
        bnsos: chain_bnsos(members),
        offending_supers,
        oracle_agrees,
    }
}

/// Picks, from `(start, end)`-sorted net occurrences, the cover that always
/// extends with the reachable member ending furthest right. Returns `None`
/// when no cover exists.
pub fn greedy_onoc(nets: &[Occurrence], n: usize) -> Option<Vec<Occurrence>> {
    let mut chain = vec![*nets.iter().filter(|o| o.start == 1).max_by_key(|o| o.end)?];
    while chain.last()?.end < n {
        let reach = chain.last()?.end;
        let next = nets
            .iter()
            .filter(|o| o.start <= reach && o.end > reach)
            .max_by_key(|o| (o.end, std::cmp::Reverse(o.start)))?;
        chain.push(*next);
    }
    Some(chain)
}

/// Every cover whose members appear in increasing start order.
pub fn all_onocs(nets: &[Occurrence], n: usize) -> Vec<Vec<Occurrence>> {
    fn extend(
        nets: &[Occurrence],
        n: usize,
        chain: &mut Vec<Occurrence>,
        from: usize,
        out: &mut Vec<Vec<Occurrence>>,
    ) {
        let last = *chain.last().expect("nonempty chain");
        if last.end == n {
            out.push(chain.clone());
        }
        for (k, o) in nets.iter().enumerate().skip(from) {
            if o.start > last.start && o.start <= last.end {
                chain.push(*o);
                extend(nets, n, chain, k + 1, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    for (k, first) in nets.iter().enumerate().filter(|(_, o)| o.start == 1) {
        let mut chain = vec![*first];
        extend(nets, n, &mut chain, k + 1, &mut out);
    }
    out
}

/// Net occurrences outside `cover` that contain no `(i - 1, j + 1)` for any BNSO.
/// Empty whenever the bridging-super lemma holds for this cover.
pub fn lemma_violations(table: &PairwiseRepeatTable, nets: &[Occurrence], cover: &[Occurrence]) -> Vec<Occurrence> {
    let n = table.text().len();
    let rects: Vec<BridgingSupers> = chain_bnsos(cover)
        .into_iter()
        .map(|b| bridging_rectangle(n, b))
        .collect();
    nets.iter()
        .copied()
        .filter(|o| !cover.contains(o))
        .filter(|o| !rects.iter().any(|r| r.contains(*o)))
        .collect()
}
