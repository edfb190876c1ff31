use std::fmt;

use crate::error::{QpaError, Result};

/// A finite word over the alphabet `{1, ..., d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
    d: usize,
}

impl Word {
    pub fn new(letters: Vec<u32>, d: usize) -> Result<Self> {
        if let Some(&letter) = letters.iter().find(|&&x| x == 0 || x as usize > d) {
            return Err(QpaError::InvalidLetter { letter, d });
        }
        Ok(Self { letters, d })
    }

    /// Uses the largest letter present as the alphabet size.
    pub fn with_inferred_alphabet(letters: Vec<u32>) -> Result<Self> {
        let d = letters.iter().copied().max().unwrap_or(1) as usize;
        Self::new(letters, d.max(1))
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `h[a - 1]` is the number of occurrences of letter `a`.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.d];
        for &x in &self.letters {
            h[x as usize - 1] += 1;
        }
        h
    }

    /// The subword of letters strictly below `bound`, over the alphabet `[bound - 1]`.
    pub fn letters_below(&self, bound: u32) -> Word {
        Word {
            letters: self.letters.iter().copied().filter(|&x| x < bound).collect(),
            d: (bound.max(2) - 1) as usize,
        }
    }

    /// Every word of length `n` over `[d]`, in lexicographic order.
    pub fn all(d: usize, n: usize) -> impl Iterator<Item = Word> {
        let total = (d as u64).checked_pow(n as u32).expect("word count fits in u64");
        (0..total).map(move |mut index| {
            let mut letters = vec![1u32; n];
            for slot in letters.iter_mut().rev() {
                *slot = (index % d as u64) as u32 + 1;
                index /= d as u64;
            }
            Word { letters, d }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
