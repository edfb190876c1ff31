//! Batch RSK on cell lists.
//!
//! This path keeps explicit rows so it can record the standard tableau, and
//! shares no code with the count-matrix insertion in [`super::ssyt`]; the two
//! are checked against each other.

use serde::Serialize;

use crate::error::Result;

use super::{Partition, SemistandardTableau, StandardTableau, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RskOutput {
    pub shape: Partition,
    /// Recording tableau `S`.
    pub recording: StandardTableau,
    /// Insertion tableau `T`.
    pub insertion: SemistandardTableau,
}

/// Runs row insertion over the whole word.
pub fn rsk(word: &Word) -> Result<RskOutput> {
    let mut insertion: Vec<Vec<u32>> = Vec::new();
    let mut recording: Vec<Vec<usize>> = Vec::new();
    for (step, &letter) in word.letters().iter().enumerate() {
        let mut x = letter;
        let mut r = 0;
        loop {
            if r == insertion.len() {
                insertion.push(vec![x]);
                recording.push(vec![step + 1]);
                break;
            }
            let row = &mut insertion[r];
            let pos = row.partition_point(|&y| y <= x);
            if pos == row.len() {
                row.push(x);
                recording[r].push(step + 1);
                break;
            }
            std::mem::swap(&mut row[pos], &mut x);
            r += 1;
        }
    }
    let shape = Partition::from_sorted_unchecked(insertion.iter().map(Vec::len).collect());
    Ok(RskOutput {
        shape,
        recording: StandardTableau::from_rows_unchecked(recording),
        insertion: SemistandardTableau::from_rows(word.alphabet_size(), &insertion)?,
    })
}
