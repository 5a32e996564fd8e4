//! Occurrences, position sets, and the net-occurrence predicate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::words::{Letter, Word};

/// A 1-based inclusive interval `(start, end)` of a text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
}

#[allow(clippy::len_without_is_empty)]
impl Occurrence {
    pub fn new(start: usize, end: usize) -> Result<Occurrence> {
        if start < 1 || start > end {
            return Err(domain("start", start, format!("1 <= start <= end = {end}")));
        }
        Ok(Occurrence { start, end })
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    /// Errors unless the occurrence lies within a text of length `len`.
    pub fn check_within(&self, len: usize) -> Result<()> {
        if self.start < 1 || self.start > self.end || self.end > len {
            return Err(Error::OutOfBounds {
                start: self.start,
                end: self.end,
                len,
            });
        }
        Ok(())
    }

    /// `self` lies inside `other`.
    pub fn is_sub_of(&self, other: &Occurrence) -> bool {
        other.start <= self.start && self.end <= other.end
    }

    pub fn overlaps(&self, other: &Occurrence) -> bool {
        self.start.max(other.start) <= self.end.min(other.end)
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

/// Strictly increasing set of 1-based positions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PositionSet {
    positions: Vec<usize>,
}

impl PositionSet {
    pub fn new() -> PositionSet {
        PositionSet::default()
    }

    pub fn singleton(p: usize) -> PositionSet {
        PositionSet { positions: vec![p] }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.positions
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.positions.last().copied()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    /// `{p + d : p in self}`.
    pub fn shift(&self, d: usize) -> PositionSet {
        PositionSet {
            positions: self.positions.iter().map(|p| p + d).collect(),
        }
    }

    pub fn union(&self, other: &PositionSet) -> PositionSet {
        let (a, b) = (&self.positions, &other.positions);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PositionSet { positions: out }
    }

    pub fn intersection(&self, other: &PositionSet) -> PositionSet {
        PositionSet {
            positions: self
                .positions
                .iter()
                .copied()
                .filter(|&p| other.contains(p))
                .collect(),
        }
    }

    pub fn difference(&self, other: &PositionSet) -> PositionSet {
        PositionSet {
            positions: self
                .positions
                .iter()
                .copied()
                .filter(|&p| !other.contains(p))
                .collect(),
        }
    }

    pub fn is_disjoint(&self, other: &PositionSet) -> bool {
        self.intersection(other).is_empty()
    }
}

impl FromIterator<usize> for PositionSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> PositionSet {
        let mut positions: Vec<usize> = iter.into_iter().collect();
        positions.sort_unstable();
        positions.dedup();
        PositionSet { positions }
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.positions.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Letters immediately left and right of an occurrence; `None` at a text boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionPair {
    pub left: Option<Letter>,
    pub right: Option<Letter>,
}

/// All seven pairwise predicates between two occurrences. They are not
/// mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Relation {
    pub equal: bool,
    pub sub: bool,
    pub proper_sub: bool,
    pub sup: bool,
    pub proper_sup: bool,
    pub overlap: bool,
    pub disjoint: bool,
}

/// Naive left-to-right scan for every starting position of `pattern` in `text`.
pub fn find_occurrences(pattern: &Word, text: &Word) -> Result<PositionSet> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let (p, t) = (pattern.as_bytes(), text.as_bytes());
    if p.len() > t.len() {
        return Ok(PositionSet::new());
    }
    Ok(PositionSet {
        positions: (0..=t.len() - p.len())
            .filter(|&k| &t[k..k + p.len()] == p)
            .map(|k| k + 1)
            .collect(),
    })
}

/// Number of occurrences of `pattern` in `text`, stopping once `limit` is reached.
pub(crate) fn count_occurrences_upto(pattern: &[u8], text: &[u8], limit: usize) -> usize {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len())
        .filter(|w| *w == pattern)
        .take(limit)
        .count()
}

pub fn extension_characters(text: &Word, occ: Occurrence) -> Result<ExtensionPair> {
    occ.check_within(text.len())?;
    Ok(ExtensionPair {
        left: if occ.start > 1 { text.letter(occ.start - 1) } else { None },
        right: text.letter(occ.end + 1),
    })
}

pub fn occurrence_relation(o1: Occurrence, o2: Occurrence) -> Relation {
    let equal = o1 == o2;
    let sub = o1.is_sub_of(&o2);
    let sup = o2.is_sub_of(&o1);
    let overlap = o1.overlaps(&o2);
    Relation {
        equal,
        sub,
        proper_sub: sub && !equal,
        sup,
        proper_sup: sup && !equal,
        overlap,
        disjoint: !overlap,
    }
}

/// Direct evaluation of the net-occurrence definition: the string is repeated,
/// and its one-letter left and right extensions are unique. An extension that
/// would cross the text boundary counts as unique.
pub fn is_net_occurrence(text: &Word, occ: Occurrence) -> Result<bool> {
    occ.check_within(text.len())?;
    let t = text.as_bytes();
    let (s, e) = (occ.start - 1, occ.end);
    if count_occurrences_upto(&t[s..e], t, 2) < 2 {
        return Ok(false);
    }
    if s > 0 && count_occurrences_upto(&t[s - 1..e], t, 2) != 1 {
        return Ok(false);
    }
    if e < t.len() && count_occurrences_upto(&t[s..e + 1], t, 2) != 1 {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{fib_word, tm_word};

    fn occ(s: usize, e: usize) -> Occurrence {
        Occurrence::new(s, e).unwrap()
    }

    fn set(v: &[usize]) -> PositionSet {
        v.iter().copied().collect()
    }

    #[test]
    fn scanning() {
        let f7 = fib_word(7).unwrap();
        let t5 = tm_word(5).unwrap();
        assert_eq!(find_occurrences(&"abaab".parse().unwrap(), &f7).unwrap(), set(&[1, 6, 9]));
        assert_eq!(find_occurrences(&"abba".parse().unwrap(), &t5).unwrap(), set(&[1, 7, 13]));
        assert!(find_occurrences(&"bb".parse().unwrap(), &f7).unwrap().is_empty());
        assert_eq!(find_occurrences(&Word::new(), &f7).unwrap_err(), Error::EmptyPattern);
        assert!(find_occurrences(&"abba".parse().unwrap(), &"ab".parse().unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn extensions() {
        let f7 = fib_word(7).unwrap();
        let t5 = tm_word(5).unwrap();
        let e = extension_characters(&f7, occ(1, 6)).unwrap();
        assert_eq!((e.left, e.right), (None, Some(Letter::B)));
        let e = extension_characters(&f7, occ(9, 13)).unwrap();
        assert_eq!((e.left, e.right), (Some(Letter::A), None));
        let e = extension_characters(&t5, occ(7, 10)).unwrap();
        assert_eq!((e.left, e.right), (Some(Letter::A), Some(Letter::A)));
        assert!(extension_characters(&f7, occ(9, 14)).is_err());
    }

    #[test]
    fn relations() {
        let r = occurrence_relation(occ(4, 6), occ(1, 6));
        assert!(r.proper_sub && r.sub && r.overlap && !r.sup && !r.equal);
        let r = occurrence_relation(occ(1, 6), occ(4, 9));
        assert!(r.overlap && !r.sub && !r.sup && !r.disjoint);
        let r = occurrence_relation(occ(1, 3), occ(5, 8));
        assert!(r.disjoint && !r.overlap);
        let r = occurrence_relation(occ(2, 5), occ(2, 5));
        assert!(r.equal && r.sub && r.sup && !r.proper_sub && !r.proper_sup);
        let r = occurrence_relation(occ(1, 3), occ(3, 8));
        assert!(r.overlap);
    }

    #[test]
    fn net_occurrence_predicate() {
        let f7 = fib_word(7).unwrap();
        assert!(is_net_occurrence(&f7, occ(1, 6)).unwrap());
        assert!(!is_net_occurrence(&f7, occ(1, 5)).unwrap());
        assert!(is_net_occurrence(&f7, occ(9, 13)).unwrap());
        assert!(is_net_occurrence(&f7, occ(9, 14)).is_err());
        // unique strings are never net occurrences
        assert!(!is_net_occurrence(&f7, occ(1, 13)).unwrap());
    }

    #[test]
    fn position_set_algebra() {
        let a = set(&[1, 4, 9]);
        let b = set(&[4, 5]);
        assert_eq!(a.union(&b), set(&[1, 4, 5, 9]));
        assert_eq!(a.intersection(&b), set(&[4]));
        assert_eq!(a.difference(&b), set(&[1, 9]));
        assert_eq!(a.shift(3), set(&[4, 7, 12]));
        assert!(!a.is_disjoint(&b));
        assert!(a.is_disjoint(&set(&[2, 3])));
        assert_eq!(a.max(), Some(9));
        assert_eq!(set(&[3, 1, 3]).as_slice(), &[1, 3]);
        assert_eq!(a.to_string(), "{1, 4, 9}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn text() -> impl Strategy<Value = Word> {
            "[ab]{1,24}".prop_map(|s| s.parse().unwrap())
        }

        proptest! {
            #[test]
            fn scan_agrees_with_recheck(t in text(), p in "[ab]{1,4}") {
                let p: Word = p.parse().unwrap();
                let found = find_occurrences(&p, &t).unwrap();
                for pos in 1..=t.len() {
                    let matches = pos + p.len() - 1 <= t.len()
                        && t.substring(pos, pos + p.len() - 1).unwrap() == p;
                    prop_assert_eq!(matches, found.contains(pos));
                }
            }

            #[test]
            fn relation_laws(a in 1usize..20, la in 0usize..8, b in 1usize..20, lb in 0usize..8) {
                let (x, y) = (occ(a, a + la), occ(b, b + lb));
                let r = occurrence_relation(x, y);
                let back = occurrence_relation(y, x);
                prop_assert_eq!(r.sub, back.sup);
                prop_assert_eq!(r.proper_sub, back.proper_sup);
                prop_assert!(!r.proper_sub || (r.sub && x != y));
                prop_assert_eq!(r.overlap, !r.disjoint);
                let shared = (a..=a + la).any(|k| (b..=b + lb).contains(&k));
                prop_assert_eq!(r.overlap, shared);
            }

            #[test]
            fn net_occurrences_are_incomparable(t in text()) {
                let n = t.len();
                let nets: Vec<Occurrence> = (1..=n)
                    .flat_map(|s| (s..=n).map(move |e| occ(s, e)))
                    .filter(|&o| is_net_occurrence(&t, o).unwrap())
                    .collect();
                for x in &nets {
                    for y in &nets {
                        let r = occurrence_relation(*x, *y);
                        prop_assert!(!r.proper_sub && !r.proper_sup, "{} vs {} in {}", x, y, t);
                    }
                }
            }
        }
    }
}
