//! Semistandard tableaux in count-matrix form.
//!
//! Row `i` of an SSYT over `[d]` is a weakly increasing run of letters, so it
//! is determined by how many times each letter occurs in it. Storing those
//! counts makes row insertion `O(d^2)` regardless of how many boxes the
//! tableau holds.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{inconsistent, QpaError, Result};

use super::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemistandardTableau {
    d: usize,
    /// `counts[row * d + (letter - 1)]`
    counts: Vec<usize>,
}

impl SemistandardTableau {
    /// The empty tableau over `[d]`.
    pub fn new(d: usize) -> Self {
        assert!(d >= 1, "alphabet must be nonempty");
        Self {
            d,
            counts: vec![0; d * d],
        }
    }

    /// Builds a tableau from its rows, checking every SSYT condition.
    pub fn from_rows(d: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if d == 0 {
            return Err(inconsistent("alphabet size must be positive"));
        }
        let rows: Vec<&Vec<u32>> = rows.iter().filter(|r| !r.is_empty()).collect();
        if rows.len() > d {
            return Err(inconsistent(format!("{} rows cannot be filled from [{d}]", rows.len())));
        }
        let mut tableau = Self::new(d);
        for (i, row) in rows.iter().enumerate() {
            if i > 0 && row.len() > rows[i - 1].len() {
                return Err(inconsistent("row lengths are not weakly decreasing"));
            }
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x as usize > d {
                    return Err(QpaError::InvalidLetter { letter: x, d });
                }
                if j > 0 && row[j - 1] > x {
                    return Err(inconsistent(format!("row {} is not weakly increasing", i + 1)));
                }
                if i > 0 && rows[i - 1][j] >= x {
                    return Err(inconsistent(format!("column {} is not strictly increasing", j + 1)));
                }
                tableau.counts[i * d + x as usize - 1] += 1;
            }
        }
        Ok(tableau)
    }

    /// Builds a tableau from `counts[i][a - 1]`, the number of letters `a` in row `i + 1`.
    pub fn from_counts(d: usize, counts: &[Vec<usize>]) -> Result<Self> {
        if d == 0 || counts.len() > d || counts.iter().any(|r| r.len() != d) {
            return Err(inconsistent("count matrix must have at most d rows of d entries"));
        }
        let mut tableau = Self::new(d);
        for (i, row) in counts.iter().enumerate() {
            tableau.counts[i * d..(i + 1) * d].copy_from_slice(row);
        }
        tableau.validate()?;
        Ok(tableau)
    }

    fn validate(&self) -> Result<()> {
        let d = self.d;
        for i in 0..d {
            if (0..i).any(|a| self.counts[i * d + a] > 0) {
                return Err(inconsistent(format!("row {} holds a letter below {}", i + 1, i + 1)));
            }
        }
        let shape: Vec<usize> = (0..d).map(|i| self.row_length(i)).collect();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(inconsistent("row lengths are not weakly decreasing"));
        }
        // Column strictness: boxes of row i+1 holding letters <= a must sit
        // under boxes of row i holding letters < a.
        for i in 0..d.saturating_sub(1) {
            let mut upper = 0;
            let mut lower = 0;
            for a in 0..d {
                lower += self.counts[(i + 1) * d + a];
                if lower > upper {
                    return Err(inconsistent(format!(
                        "column strictness fails between rows {} and {}",
                        i + 1,
                        i + 2
                    )));
                }
                upper += self.counts[i * d + a];
            }
        }
        Ok(())
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    /// Number of letters `letter` in row `row` (both counted from one).
    pub fn count(&self, row: usize, letter: u32) -> usize {
        assert!(row >= 1 && row <= self.d && letter >= 1 && letter as usize <= self.d);
        self.counts[(row - 1) * self.d + letter as usize - 1]
    }

    /// Length of row `i`, counted from zero.
    fn row_length(&self, i: usize) -> usize {
        self.counts[i * self.d..(i + 1) * self.d].iter().sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::from_sorted_unchecked((0..self.d).map(|i| self.row_length(i)).collect())
    }

    pub fn size(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Column sums: `type[a - 1]` is the number of boxes holding `a`.
    pub fn content(&self) -> Vec<usize> {
        (0..self.d)
            .map(|a| (0..self.d).map(|i| self.counts[i * self.d + a]).sum())
            .collect()
    }

    /// Row-inserts `x`, bumping the leftmost entry strictly greater than it.
    /// Returns the (zero-based) row that gained a box.
    pub fn insert(&mut self, x: u32) -> Result<usize> {
        let d = self.d;
        if x == 0 || x as usize > d {
            return Err(QpaError::InvalidLetter { letter: x, d });
        }
        let mut carried = x as usize - 1;
        for row in 0..d {
            let base = row * d;
            let bumped = (carried + 1..d).find(|&a| self.counts[base + a] > 0);
            self.counts[base + carried] += 1;
            match bumped {
                None => return Ok(row),
                Some(a) => {
                    self.counts[base + a] -= 1;
                    carried = a;
                }
            }
        }
        unreachable!("a bumped letter always lands by row d")
    }

    /// Keeps only the boxes with letters strictly below `bound`.
    pub fn restrict_below(&self, bound: u32) -> Result<Self> {
        if bound == 0 || bound as usize > self.d + 1 {
            return Err(QpaError::InvalidLetter {
                letter: bound,
                d: self.d + 1,
            });
        }
        let keep = bound as usize - 1;
        let mut out = self.clone();
        for i in 0..self.d {
            for a in keep..self.d {
                out.counts[i * self.d + a] = 0;
            }
        }
        Ok(out)
    }

    /// Cell-list view: row `i` lists its letters left to right.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.d)
            .map(|i| {
                let mut row = Vec::with_capacity(self.row_length(i));
                for a in 0..self.d {
                    row.extend(std::iter::repeat_n(a as u32 + 1, self.counts[i * self.d + a]));
                }
                row
            })
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Number of trailing letters `d` in the first row.
    pub fn trailing_top_letters(&self) -> usize {
        self.counts[self.d - 1]
    }
}

/// Returns `T` with `x` row-inserted, leaving the input untouched.
pub fn rsk_insert(tableau: &SemistandardTableau, x: u32) -> Result<SemistandardTableau> {
    let mut out = tableau.clone();
    out.insert(x)?;
    Ok(out)
}

/// The sub-tableau of boxes holding letters strictly below `bound`.
pub fn restrict_below(tableau: &SemistandardTableau, bound: u32) -> Result<SemistandardTableau> {
    tableau.restrict_below(bound)
}

impl fmt::Display for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        if rows.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for SemistandardTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}
