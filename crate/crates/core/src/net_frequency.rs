//! Enumeration of net occurrences and per-string net frequency.
//!
//! Two enumerators are provided and must agree on every input:
//!
//! * [`net_occurrences_bruteforce`] evaluates the definition on every
//!   occurrence `(s, e)` of the text. Whether a substring is repeated is
//!   answered from an all-pairs longest-common-extension table built by
//!   comparing every pair of positions, so no index structure is involved.
//! * [`net_occurrences_indexed`] uses a suffix array. An occurrence starting at
//!   `s` can only be net when its length equals the longest repeated prefix of
//!   the suffix at `s`: any shorter string repeats with its right extension, any
//!   longer one is unique. The left extension is then unique exactly when the
//!   suffix at `s - 1` has no longer repeated prefix.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::longest_repeated_prefixes;
use crate::occurrence::{find_occurrences, Occurrence};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetOccurrenceRecord {
    pub occurrence: Occurrence,
    pub substring: Word,
    pub left: Option<Letter>,
    pub right: Option<Letter>,
}

impl NetOccurrenceRecord {
    fn build(text: &Word, occurrence: Occurrence) -> NetOccurrenceRecord {
        NetOccurrenceRecord {
            occurrence,
            substring: text
                .substring(occurrence.start, occurrence.end)
                .expect("occurrence within text"),
            left: occurrence.start.checked_sub(1).and_then(|p| text.letter(p)),
            right: text.letter(occurrence.end + 1),
        }
    }
}

impl Serialize for NetOccurrenceRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("NetOccurrenceRecord", 5)?;
        st.serialize_field("start", &self.occurrence.start)?;
        st.serialize_field("end", &self.occurrence.end)?;
        st.serialize_field("string", &self.substring)?;
        st.serialize_field("left", &self.left)?;
        st.serialize_field("right", &self.right)?;
        st.end()
    }
}

/// Longest repeated prefix length at every position, computed by comparing
/// every pair of positions. `O(n^2)` time, `O(n)` memory.
#[derive(Debug, Clone)]
pub struct PairwiseRepeatTable {
    text: Word,
    // 0-based: repeat[i] = max over j != i of lce(i, j)
    repeat: Vec<usize>,
}

impl PairwiseRepeatTable {
    pub fn new(text: &Word) -> PairwiseRepeatTable {
        let t = text.as_bytes();
        let n = t.len();
        let mut repeat = vec![0usize; n];
        // row[j] holds lce(i, j) for the current i; next holds lce(i + 1, j)
        let mut next = vec![0u32; n + 1];
        let mut row = vec![0u32; n + 1];
        for i in (0..n).rev() {
            let ci = t[i];
            for j in (i + 1..n).rev() {
                let v = if t[j] == ci { next[j + 1] + 1 } else { 0 };
                row[j] = v;
                let v = v as usize;
                if v > repeat[j] {
                    repeat[j] = v;
                }
                if v > repeat[i] {
                    repeat[i] = v;
                }
            }
            row[n] = 0;
            std::mem::swap(&mut row, &mut next);
        }
        PairwiseRepeatTable {
            text: text.clone(),
            repeat,
        }
    }

    pub fn text(&self) -> &Word {
        &self.text
    }

    /// `text[start..start + len - 1]` occurs at least twice.
    fn repeated(&self, start: usize, len: usize) -> bool {
        self.repeat[start - 1] >= len
    }

    /// The definition, evaluated in O(1) per occurrence.
    pub fn is_net(&self, occ: Occurrence) -> bool {
        let n = self.text.len();
        if occ.start < 1 || occ.start > occ.end || occ.end > n {
            return false;
        }
        let len = occ.len();
        let left_unique = occ.start == 1 || !self.repeated(occ.start - 1, len + 1);
        let right_unique = occ.end == n || !self.repeated(occ.start, len + 1);
        self.repeated(occ.start, len) && left_unique && right_unique
    }

    /// Every net occurrence, sorted by `(start, end)`.
    pub fn net_occurrences(&self) -> Vec<Occurrence> {
        let n = self.text.len();
        let mut out = Vec::new();
        for s in 1..=n {
            for e in s..=n {
                let occ = Occurrence { start: s, end: e };
                // longer strings starting at s are unique as well
                if !self.repeated(s, occ.len()) {
                    break;
                }
                if self.is_net(occ) {
                    out.push(occ);
                }
            }
        }
        out
    }
}

pub fn net_occurrences_bruteforce(text: &Word) -> Result<Vec<NetOccurrenceRecord>> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    let table = PairwiseRepeatTable::new(text);
    Ok(table
        .net_occurrences()
        .into_iter()
        .map(|o| NetOccurrenceRecord::build(text, o))
        .collect())
}

fn indexed_occurrences(text: &Word, repeat: &[usize]) -> Vec<Occurrence> {
    (0..text.len())
        .filter(|&i| repeat[i] > 0 && (i == 0 || repeat[i - 1] <= repeat[i]))
        .map(|i| Occurrence {
            start: i + 1,
            end: i + repeat[i],
        })
        .collect()
}

pub fn net_occurrences_indexed(text: &Word) -> Result<Vec<NetOccurrenceRecord>> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    let repeat = longest_repeated_prefixes(text.as_bytes());
    Ok(indexed_occurrences(text, &repeat)
        .into_iter()
        .map(|o| NetOccurrenceRecord::build(text, o))
        .collect())
}

/// Number of net occurrences of `pattern`; zero when the pattern is unique or absent.
pub fn net_frequency(text: &Word, pattern: &Word) -> Result<usize> {
    let positions = find_occurrences(pattern, text)?;
    if positions.len() < 2 {
        return Ok(0);
    }
    let repeat = longest_repeated_prefixes(text.as_bytes());
    let m = pattern.len();
    Ok(positions
        .iter()
        .filter(|&p| repeat[p - 1] == m && (p == 1 || repeat[p - 2] <= m))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::occurrence::is_net_occurrence;
    use crate::words::{fib_word, tm_word};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn spans(recs: &[NetOccurrenceRecord]) -> Vec<(usize, usize)> {
        recs.iter().map(|r| (r.occurrence.start, r.occurrence.end)).collect()
    }

    /// Every occurrence checked with the naive predicate.
    fn naive(text: &Word) -> Vec<(usize, usize)> {
        let n = text.len();
        (1..=n)
            .flat_map(|s| (s..=n).map(move |e| (s, e)))
            .filter(|&(s, e)| is_net_occurrence(text, Occurrence { start: s, end: e }).unwrap())
            .collect()
    }

    #[test]
    fn fibonacci_seven() {
        let f7 = fib_word(7).unwrap();
        let recs = net_occurrences_bruteforce(&f7).unwrap();
        assert_eq!(spans(&recs), vec![(1, 6), (6, 11), (9, 13)]);
        assert_eq!(recs[0].substring, w("abaaba"));
        assert_eq!(recs[0].left, None);
        assert_eq!(recs[2].right, None);
        assert_eq!(net_occurrences_indexed(&f7).unwrap(), recs);
        assert_eq!(naive(&f7), spans(&recs));
    }

    #[test]
    fn thue_morse_five() {
        let t5 = tm_word(5).unwrap();
        let recs = net_occurrences_bruteforce(&t5).unwrap();
        assert_eq!(
            spans(&recs),
            vec![(1, 4), (3, 5), (4, 6), (5, 8), (7, 10), (9, 12), (11, 13), (12, 14), (13, 16)]
        );
        let strings: Vec<String> = recs.iter().map(|r| r.substring.to_string()).collect();
        assert_eq!(strings, ["abba", "bab", "aba", "baab", "abba", "baab", "aba", "bab", "abba"]);
        assert_eq!(net_occurrences_indexed(&t5).unwrap(), recs);
        assert_eq!(naive(&t5), spans(&recs));
    }

    #[test]
    fn run_of_a() {
        // "aaa" repeats at 1 and 2; both occurrences touch a boundary on the
        // side whose extension would be "aaaa"
        let t = w("aaaa");
        assert_eq!(naive(&t), vec![(1, 3), (2, 4)]);
        assert_eq!(spans(&net_occurrences_bruteforce(&t).unwrap()), vec![(1, 3), (2, 4)]);
        assert_eq!(spans(&net_occurrences_indexed(&t).unwrap()), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(net_occurrences_bruteforce(&Word::new()).unwrap_err(), Error::EmptyText);
        assert_eq!(net_occurrences_indexed(&Word::new()).unwrap_err(), Error::EmptyText);
        assert_eq!(net_frequency(&w("ab"), &Word::new()).unwrap_err(), Error::EmptyPattern);
        assert!(net_occurrences_bruteforce(&w("ab")).unwrap().is_empty());
    }

    #[test]
    fn frequencies() {
        let f7 = fib_word(7).unwrap();
        assert_eq!(net_frequency(&f7, &w("abaaba")).unwrap(), 2);
        assert_eq!(net_frequency(&f7, &w("abaab")).unwrap(), 1);
        assert_eq!(net_frequency(&f7, &w("bb")).unwrap(), 0);
        assert_eq!(net_frequency(&f7, &f7).unwrap(), 0);
    }

    #[test]
    fn exhaustive_short_texts() {
        for n in 1..=10 {
            for bits in 0u32..(1 << n) {
                let t = Word::from_letters(
                    (0..n).map(|k| if bits >> k & 1 == 0 { Letter::A } else { Letter::B }),
                );
                let brute = net_occurrences_bruteforce(&t).unwrap();
                assert_eq!(spans(&brute), naive(&t), "{t}");
                assert_eq!(net_occurrences_indexed(&t).unwrap(), brute, "{t}");
            }
        }
    }

    #[test]
    fn json_shape() {
        let recs = net_occurrences_bruteforce(&fib_word(7).unwrap()).unwrap();
        let v = serde_json::to_value(&recs[0]).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"start": 1, "end": 6, "string": "abaaba", "left": null, "right": "b"})
        );
    }

    proptest! {
        #[test]
        fn engines_agree(t in "[ab]{1,48}") {
            let t: Word = t.parse().unwrap();
            let brute = net_occurrences_bruteforce(&t).unwrap();
            prop_assert_eq!(net_occurrences_indexed(&t).unwrap(), brute.clone());
            // sorted, and frequencies sum to the record count
            prop_assert!(brute.windows(2).all(|p| p[0].occurrence < p[1].occurrence));
            let mut distinct: Vec<&Word> = brute.iter().map(|r| &r.substring).collect();
            distinct.sort();
            distinct.dedup();
            let total: usize = distinct.iter().map(|p| net_frequency(&t, p).unwrap()).sum();
            prop_assert_eq!(total, brute.len());
            for r in &brute {
                for q in &brute {
                    prop_assert!(r.occurrence == q.occurrence
                        || !(r.occurrence.is_sub_of(&q.occurrence) || q.occurrence.is_sub_of(&r.occurrence)));
                }
            }
        }
    }
}
