//! Suffix array and LCP array construction.
//!
//! Prefix doubling with a comparison sort per round, `O(n log^2 n)`, followed by
//! Kasai's linear LCP pass. Positions here are 0-based.

/// Suffix array of `text`: `sa[r]` is the start of the suffix with rank `r`.
pub fn suffix_array(text: &[u8]) -> Vec<usize> {
    let n = text.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<usize> = text.iter().map(|&c| c as usize).collect();
    let mut tmp = vec![0usize; n];
    let mut k = 1;
    loop {
        // rank + 1 so that "past the end" (0) sorts first
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for r in 1..n {
            tmp[sa[r]] = tmp[sa[r - 1]] + usize::from(key(sa[r - 1]) != key(sa[r]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Inverse permutation of the suffix array.
pub fn rank_array(sa: &[usize]) -> Vec<usize> {
    let mut rank = vec![0; sa.len()];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// `lcp[r]` = length of the longest common prefix of suffixes `sa[r - 1]` and `sa[r]`;
/// `lcp[0] = 0`.
pub fn lcp_array(text: &[u8], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i];
        if r > 0 {
            let j = sa[r - 1];
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[r] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// For every 0-based start `i`, the length of the longest prefix of the suffix at `i`
/// that also begins somewhere else in the text.
pub fn longest_repeated_prefixes(text: &[u8]) -> Vec<usize> {
    let sa = suffix_array(text);
    let rank = rank_array(&sa);
    let lcp = lcp_array(text, &sa, &rank);
    let n = text.len();
    (0..n)
        .map(|i| {
            let r = rank[i];
            let below = if r + 1 < n { lcp[r + 1] } else { 0 };
            lcp[r].max(below)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sa(t: &[u8]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..t.len()).collect();
        sa.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
        sa
    }

    #[test]
    fn known_arrays() {
        let t = b"abba";
        let sa = suffix_array(t);
        assert_eq!(sa, vec![3, 0, 2, 1]);
        let lcp = lcp_array(t, &sa, &rank_array(&sa));
        assert_eq!(lcp, vec![0, 1, 0, 1]);
        assert_eq!(longest_repeated_prefixes(t), vec![1, 1, 1, 1]);
        assert!(suffix_array(b"").is_empty());
        assert_eq!(suffix_array(b"a"), vec![0]);
    }

    proptest! {
        #[test]
        fn matches_naive_sort(t in "[ab]{0,64}") {
            let t = t.as_bytes();
            let sa = suffix_array(t);
            prop_assert_eq!(&sa, &naive_sa(t));
            let lcp = lcp_array(t, &sa, &rank_array(&sa));
            for r in 1..t.len() {
                let (a, b) = (&t[sa[r - 1]..], &t[sa[r]..]);
                let h = a.iter().zip(b).take_while(|(x, y)| x == y).count();
                prop_assert_eq!(lcp[r], h);
            }
        }
    }
}
