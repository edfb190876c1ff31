//! Subsequence statistics computed directly from a word, without insertion.

use std::collections::HashMap;

use crate::error::{QpaError, Result};

use super::Word;

/// Default bound on the word length accepted by [`greene_union`].
pub const DEFAULT_GREENE_CAP: usize = 10;

/// Length of the longest weakly increasing subsequence.
///
/// `ending_at[a]` is the longest weakly increasing subsequence seen so far
/// that ends in letter `a + 1`; each letter extends the best run ending at
/// or below it.
pub fn lis_weak(word: &Word) -> usize {
    let d = word.alphabet_size();
    let mut ending_at = vec![0usize; d];
    for &x in word.letters() {
        let x = x as usize - 1;
        let prefix_best = ending_at[..=x].iter().copied().max().unwrap_or(0);
        ending_at[x] = prefix_best + 1;
    }
    ending_at.into_iter().max().unwrap_or(0)
}

/// Largest total size of `j` disjoint weakly increasing subsequences.
///
/// Exhaustive: every index is either skipped or appended to one of the `j`
/// sequences whose current last letter does not exceed it. Sequences are
/// interchangeable, so search states are memoized on the sorted tuple of last
/// letters.
pub fn greene_union(word: &Word, j: usize, cap: usize) -> Result<usize> {
    let n = word.len();
    if n > cap {
        return Err(QpaError::ResourceLimit {
            what: "word length",
            value: n,
            cap,
        });
    }
    if j >= n {
        return Ok(n);
    }
    if j == 0 {
        return Ok(0);
    }
    let mut memo = HashMap::new();
    let lasts = vec![0u32; j];
    Ok(search(word.letters(), 0, lasts, &mut memo))
}

fn search(letters: &[u32], at: usize, lasts: Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), usize>) -> usize {
    if at == letters.len() {
        return 0;
    }
    if let Some(&hit) = memo.get(&(at, lasts.clone())) {
        return hit;
    }
    let x = letters[at];
    let mut best = search(letters, at + 1, lasts.clone(), memo);
    for slot in 0..lasts.len() {
        if lasts[slot] > x || (slot > 0 && lasts[slot] == lasts[slot - 1]) {
            continue;
        }
        let mut next = lasts.clone();
        next[slot] = x;
        next.sort_unstable();
        best = best.max(1 + search(letters, at + 1, next, memo));
    }
    memo.insert((at, lasts), best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u32], d: usize) -> Word {
        Word::new(letters.to_vec(), d).unwrap()
    }

    /// Scans every subsequence.
    fn lis_by_subsets(word: &Word) -> usize {
        let letters = word.letters();
        let n = letters.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect();
                picked.windows(2).all(|p| p[0] <= p[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn lis_examples() {
        assert_eq!(lis_weak(&w(&[1, 1, 1], 1)), 3);
        assert_eq!(lis_weak(&w(&[3, 2, 1], 3)), 1);
        assert_eq!(lis_weak(&w(&[2, 1, 2], 2)), 2);
        assert_eq!(lis_weak(&w(&[], 2)), 0);
    }

    #[test]
    fn lis_matches_subset_scan() {
        for n in 0..=7 {
            for word in Word::all(3, n) {
                assert_eq!(lis_weak(&word), lis_by_subsets(&word), "{word}");
            }
        }
    }

    #[test]
    fn greene_examples() {
        assert_eq!(greene_union(&w(&[2, 1, 2], 2), 2, 10).unwrap(), 3);
        assert_eq!(greene_union(&w(&[1, 1], 1), 1, 10).unwrap(), 2);
        assert_eq!(greene_union(&w(&[3, 2, 1], 3), 5, 10).unwrap(), 3);
        assert_eq!(greene_union(&w(&[3, 2, 1], 3), 2, 10).unwrap(), 2);
    }

    #[test]
    fn greene_single_sequence_is_lis() {
        for word in Word::all(3, 6) {
            assert_eq!(greene_union(&word, 1, 10).unwrap(), lis_weak(&word));
        }
    }

    #[test]
    fn greene_cap() {
        let long = w(&[1; 11], 1);
        assert!(matches!(
            greene_union(&long, 1, DEFAULT_GREENE_CAP),
            Err(QpaError::ResourceLimit { value: 11, .. })
        ));
        assert_eq!(greene_union(&long, 1, 11).unwrap(), 11);
    }
}
