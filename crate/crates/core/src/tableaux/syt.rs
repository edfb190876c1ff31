use std::fmt;

use serde::Serialize;

use crate::error::{inconsistent, Result};

use super::Partition;

/// A standard Young tableau: a filling of a diagram by `1..=n` with rows and
/// columns strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for (i, row) in rows.iter().enumerate() {
            if i > 0 && row.len() > rows[i - 1].len() {
                return Err(inconsistent("row lengths are not weakly decreasing"));
            }
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x > n || seen[x] {
                    return Err(inconsistent(format!("entries are not a permutation of 1..={n}")));
                }
                seen[x] = true;
                if j > 0 && row[j - 1] >= x {
                    return Err(inconsistent("rows must strictly increase"));
                }
                if i > 0 && rows[i - 1][j] >= x {
                    return Err(inconsistent("columns must strictly increase"));
                }
            }
        }
        Ok(Self { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_sorted_unchecked(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
