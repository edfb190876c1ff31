use serde::Serialize;

use crate::error::{inconsistent, Result};

use super::Partition;

/// `b_i = mu_i - lambda_{i+1}` for `i = 1..d-1`, where `mu` is the shape of
/// the non-`d` part of a tableau of shape `lambda`: how far the non-`d`
/// boxes of row `i` extend past the end of row `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Overhangs(Vec<usize>);

impl Overhangs {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `b_i`, counted from one.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl From<Vec<usize>> for Overhangs {
    fn from(values: Vec<usize>) -> Self {
        Self(values)
    }
}

pub fn overhangs(lambda: &Partition, mu: &Partition, d: usize) -> Result<Overhangs> {
    if d < 2 {
        return Err(inconsistent("overhangs need an alphabet of at least two letters"));
    }
    if lambda.length() > d || mu.length() >= d {
        return Err(inconsistent(format!(
            "{mu} inside {lambda} cannot come from an SSYT over [{d}]"
        )));
    }
    if !mu.is_contained_in(lambda) {
        return Err(inconsistent(format!("{mu} is not contained in {lambda}")));
    }
    (0..d - 1)
        .map(|i| {
            mu.get(i)
                .checked_sub(lambda.get(i + 1))
                .ok_or_else(|| inconsistent(format!("row {} of {mu} ends before row {} of {lambda}", i + 1, i + 2)))
        })
        .collect::<Result<Vec<_>>>()
        .map(Overhangs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::QpaError;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn overhang_examples() {
        assert_eq!(overhangs(&p(&[6, 3, 1]), &p(&[5, 2]), 3).unwrap().values(), &[2, 1]);
        assert_eq!(overhangs(&p(&[7]), &p(&[]), 2).unwrap().values(), &[0]);
        assert_eq!(overhangs(&p(&[4, 3, 1]), &p(&[3, 2]), 3).unwrap().values(), &[0, 1]);
    }

    #[test]
    fn negative_overhang_is_inconsistent() {
        assert!(matches!(
            overhangs(&p(&[4, 3]), &p(&[2]), 2),
            Err(QpaError::Inconsistent(_))
        ));
        assert!(overhangs(&p(&[2]), &p(&[3]), 2).is_err());
        assert!(overhangs(&p(&[2, 1]), &p(&[1, 1]), 2).is_err());
    }
}
