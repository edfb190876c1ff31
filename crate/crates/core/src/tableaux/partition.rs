use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{domain, Result};

/// A Young diagram: weakly decreasing positive parts, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// The empty diagram.
    pub fn empty() -> Self {
        Self::default()
    }

    /// A single row of `n` boxes.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    pub(crate) fn from_sorted_unchecked(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` counted from zero; zero past the last row.
    pub fn get(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// The parts padded with zeros to exactly `d` entries.
    pub fn padded(&self, d: usize) -> Result<Vec<usize>> {
        if self.length() > d {
            return Err(domain(format!("{self} has more than {d} rows")));
        }
        let mut parts = self.parts.clone();
        parts.resize(d, 0);
        Ok(parts)
    }

    /// `self - t·e_1`, or `None` when that is no longer a Young diagram.
    pub fn shrink_first_row(&self, t: usize) -> Option<Self> {
        let first = self.get(0).checked_sub(t)?;
        if first < self.get(1) {
            return None;
        }
        let mut parts = self.parts.clone();
        if let Some(p) = parts.first_mut() {
            *p = first;
        }
        Some(Self::from_sorted_unchecked(parts))
    }

    /// Whether every row of `self` fits inside the matching row of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.length() <= other.length() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Rows whose last box can be removed leaving a Young diagram.
    pub fn corners(&self) -> Vec<usize> {
        (0..self.length()).filter(|&i| self.get(i) > self.get(i + 1)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// All partitions of `n` with at most `max_rows` nonzero rows, in reverse
/// lexicographic order (single row first).
pub fn partitions(n: usize, max_rows: usize) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, rows_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted_unchecked(prefix.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, rows_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_rows, &mut Vec::new(), &mut out);
    out
}
