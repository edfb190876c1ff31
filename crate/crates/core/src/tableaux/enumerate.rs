use crate::error::{QpaError, Result};

use super::{Partition, SemistandardTableau, StandardTableau};

/// Limits on exhaustive enumeration; exceeding one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of boxes (or word length) enumerated.
    pub max_boxes: usize,
    /// Largest alphabet size enumerated.
    pub max_alphabet: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_boxes: 10,
            max_alphabet: 4,
        }
    }
}

impl Caps {
    pub fn with_max_boxes(max_boxes: usize) -> Self {
        Self {
            max_boxes,
            ..Self::default()
        }
    }

    pub fn check_boxes(&self, n: usize) -> Result<()> {
        if n > self.max_boxes {
            return Err(QpaError::ResourceLimit {
                what: "n",
                value: n,
                cap: self.max_boxes,
            });
        }
        Ok(())
    }

    pub fn check_alphabet(&self, d: usize) -> Result<()> {
        if d > self.max_alphabet {
            return Err(QpaError::ResourceLimit {
                what: "d",
                value: d,
                cap: self.max_alphabet,
            });
        }
        Ok(())
    }
}

/// Every SSYT of shape `shape` over `[d]`, each exactly once.
///
/// Walks Gelfand-Tsetlin chains `shape = nu(d) ⊇ nu(d-1) ⊇ ... ⊇ nu(0) = ∅`
/// in which consecutive diagrams interlace; the boxes of `nu(a) / nu(a-1)`
/// hold the letter `a`.
pub fn enumerate_ssyt(shape: &Partition, d: usize, caps: &Caps) -> Result<Vec<SemistandardTableau>> {
    caps.check_boxes(shape.size())?;
    caps.check_alphabet(d)?;
    if d == 0 || shape.length() > d {
        return Ok(Vec::new());
    }
    let mut chain = vec![vec![0usize; d]; d + 1];
    chain[d] = shape.padded(d)?;
    let mut out = Vec::new();
    fill_level(d, d, 0, &mut chain, &mut out);
    Ok(out)
}

// Chooses part `i` of nu(level - 1) given nu(level), recursing on `i` then `level`.
fn fill_level(d: usize, level: usize, i: usize, chain: &mut Vec<Vec<usize>>, out: &mut Vec<SemistandardTableau>) {
    if level == 0 {
        let counts: Vec<Vec<usize>> = (0..d)
            .map(|row| (1..=d).map(|a| chain[a][row] - chain[a - 1][row]).collect())
            .collect();
        out.push(SemistandardTableau::from_counts(d, &counts).expect("interlacing chains are SSYTs"));
        return;
    }
    let below = level - 1;
    if i == below {
        // nu(level - 1) has at most level - 1 rows.
        chain[below][below..d].fill(0);
        fill_level(d, below, 0, chain, out);
        return;
    }
    let hi = chain[level][i];
    let lo = chain[level][i + 1];
    for part in lo..=hi {
        chain[below][i] = part;
        fill_level(d, level, i + 1, chain, out);
    }
}

/// Every SYT of shape `shape`, built by placing the largest entry at each removable corner.
pub fn enumerate_syt(shape: &Partition, caps: &Caps) -> Result<Vec<StandardTableau>> {
    caps.check_boxes(shape.size())?;
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    place_largest(shape.clone(), &mut rows, &mut out);
    Ok(out)
}

fn place_largest(shape: Partition, rows: &mut Vec<Vec<usize>>, out: &mut Vec<StandardTableau>) {
    let n = shape.size();
    if n == 0 {
        out.push(StandardTableau::from_rows_unchecked(rows.clone()));
        return;
    }
    for row in shape.corners() {
        let col = shape.get(row) - 1;
        rows[row][col] = n;
        let mut parts = shape.parts().to_vec();
        parts[row] -= 1;
        place_largest(Partition::from_sorted_unchecked(parts), rows, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn ssyt_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_ssyt(&p(&[1]), 2, &caps).unwrap().len(), 2);
        assert_eq!(enumerate_ssyt(&p(&[2, 1]), 3, &caps).unwrap().len(), 8);
        assert_eq!(enumerate_ssyt(&p(&[1, 1, 1]), 2, &caps).unwrap().len(), 0);
        assert_eq!(enumerate_ssyt(&p(&[]), 3, &caps).unwrap().len(), 1);
    }

    #[test]
    fn ssyt_fillings_are_distinct_and_shaped() {
        let shape = p(&[3, 2]);
        let all = enumerate_ssyt(&shape, 3, &Caps::default()).unwrap();
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|t| t.shape() == shape));
        // s_(3,2)(1,1,1) = 15
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn syt_counts() {
        let caps = Caps::default();
        let two_one = enumerate_syt(&p(&[2, 1]), &caps).unwrap();
        assert_eq!(two_one.len(), 2);
        assert!(two_one.contains(&StandardTableau::new(vec![vec![1, 2], vec![3]]).unwrap()));
        assert!(two_one.contains(&StandardTableau::new(vec![vec![1, 3], vec![2]]).unwrap()));
        assert_eq!(enumerate_syt(&p(&[2, 2]), &caps).unwrap().len(), 2);
        assert_eq!(enumerate_syt(&p(&[1, 1, 1, 1]), &caps).unwrap().len(), 1);
        for t in enumerate_syt(&p(&[3, 2, 1]), &caps).unwrap() {
            assert!(StandardTableau::new(t.rows().to_vec()).is_ok());
        }
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps::default();
        assert!(matches!(
            enumerate_syt(&p(&[11]), &caps),
            Err(QpaError::ResourceLimit { cap: 10, .. })
        ));
        assert!(enumerate_ssyt(&p(&[1]), 5, &caps).is_err());
        assert!(enumerate_syt(&p(&[11]), &Caps::with_max_boxes(11)).is_ok());
    }
}
