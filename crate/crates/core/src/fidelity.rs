//! Output fidelity of the purification channel on a single RSK outcome.
//!
//! Two independent routes are provided: the closed product over the
//! `Delta_i` and overhangs, and a re-derivation that multiplies a ratio of
//! Weyl dimensions by squared Clebsch-Gordan coefficients, one per removed
//! box of the first row. They agree exactly on every tableau.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, inconsistent, Result};
use crate::scalar::{Rational, Scalar};
use crate::tableaux::{overhangs, Overhangs, Partition, SemistandardTableau};

/// `n (n-1) ... (n-k+1)`; the empty product when `k = 0`.
pub fn falling_factorial(n: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j))
}

/// `Delta_i = lambda_1 - lambda_i + i - 2` for `i = 2..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DeltaVector(Vec<usize>);

impl DeltaVector {
    pub fn new(shape: &Partition, d: usize) -> Result<Self> {
        let parts = shape.padded(d)?;
        Ok(Self((2..=d).map(|i| parts[0] - parts[i - 1] + i - 2).collect()))
    }

    /// `Delta_i`, for `2 <= i <= d`.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 2]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityValue<S> {
    pub value: S,
    /// Set when `lambda_1 - lambda_2 < k` and the channel outputs the maximally mixed state.
    pub fallback_used: bool,
}

fn check_alphabet(d: usize) -> Result<()> {
    if d < 2 {
        return Err(domain("fidelity needs an alphabet of at least two letters"));
    }
    Ok(())
}

fn first_row_gap(shape: &Partition) -> usize {
    shape.get(0) - shape.get(1)
}

/// `d^{-k}`: the overlap of `I / d^k` with any pure product state.
pub fn maximally_mixed_overlap<S: Scalar>(d: usize, k: usize) -> S {
    let d = S::from_usize(d);
    (0..k).fold(S::one(), |acc, _| acc / d.clone())
}

/// Fidelity of outcome `(lambda, T)` with `k` target copies.
pub fn fidelity<S: Scalar>(shape: &Partition, tableau: &SemistandardTableau, k: usize) -> Result<FidelityValue<S>> {
    let d = tableau.alphabet_size();
    if tableau.shape() != *shape {
        return Err(inconsistent(format!(
            "tableau has shape {}, expected {shape}",
            tableau.shape()
        )));
    }
    check_alphabet(d)?;
    let mu = tableau.restrict_below(d as u32)?.shape();
    fidelity_from_shapes(shape, &mu, d, k)
}

/// Same as [`fidelity`], given only `lambda` and `mu = shape(T^{<d})`.
pub fn fidelity_from_shapes<S: Scalar>(
    shape: &Partition,
    mu: &Partition,
    d: usize,
    k: usize,
) -> Result<FidelityValue<S>> {
    check_alphabet(d)?;
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    let b = overhangs(shape, mu, d)?;
    if first_row_gap(shape) < k {
        return Ok(FidelityValue {
            value: maximally_mixed_overlap(d, k),
            fallback_used: true,
        });
    }
    let delta = DeltaVector::new(shape, d)?;
    let mut value = S::one();
    for i in 2..=d {
        let di = delta.get(i) as i64;
        let bi = b.get(i - 1) as i64;
        for j in 0..k as i64 {
            value = value * S::from_int(di - bi - j) / S::from_int(di - j);
        }
    }
    Ok(FidelityValue {
        value,
        fallback_used: false,
    })
}

/// `1 - k/(lambda_1 - lambda_2 - k + 1) · sum_i b_i`, unclamped.
pub fn fidelity_lower_bound<S: Scalar>(shape: &Partition, b: &Overhangs, k: usize) -> Result<S> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    let gap = first_row_gap(shape);
    if gap < k {
        return Err(domain(format!("lambda_1 - lambda_2 = {gap} is below k = {k}")));
    }
    let denominator = S::from_usize(gap - k + 1);
    Ok(S::one() - S::from_usize(k) / denominator * S::from_usize(b.total()))
}

/// Dimension of the `U(d)` irrep with highest weight `nu` (exactly `d` parts).
pub fn weyl_dim(nu: &[usize], d: usize) -> Result<BigUint> {
    if nu.len() != d {
        return Err(domain(format!("highest weight must have exactly {d} parts")));
    }
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(domain(format!("{nu:?} is not weakly decreasing")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        for j in i + 1..d {
            num *= nu[i] - nu[j] + j - i;
            den *= j - i;
        }
    }
    Ok(num / den)
}

/// Squared Clebsch-Gordan coefficient for removing the last box of the first
/// row when it holds `d`:
/// `prod_{i<d} (lambda_1 - mu_i + i - 1) / prod_{i=2..d} (lambda_1 - lambda_i + i - 1)`.
///
/// Only `mu_1..mu_{d-1}` are read. Returns zero when `mu_1 = lambda_1`, i.e.
/// the first row holds no `d`.
pub fn cg_coeff_sq(shape: &Partition, mu: &Partition, d: usize) -> Result<Rational> {
    check_alphabet(d)?;
    if first_row_gap(shape) < 1 {
        return Err(domain("the first row must be strictly longer than the second"));
    }
    let lambda = shape.padded(d)?;
    let l1 = lambda[0] as i64;
    if mu.get(0) as i64 > l1 {
        return Err(inconsistent(format!("{mu} is longer than {shape} in the first row")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..d {
        num *= l1 - mu.get(i - 1) as i64 + i as i64 - 1;
    }
    for i in 2..=d {
        den *= l1 - lambda[i - 1] as i64 + i as i64 - 1;
    }
    Ok(Rational::new(num, den))
}

/// Fidelity re-derived as
/// `dim Q(lambda) / dim Q(lambda - k e_1) · prod_{t<k} cg_coeff_sq(lambda - t e_1, mu)`.
pub fn fidelity_via_cg(shape: &Partition, tableau: &SemistandardTableau, k: usize) -> Result<Rational> {
    let d = tableau.alphabet_size();
    check_alphabet(d)?;
    if tableau.shape() != *shape {
        return Err(inconsistent("tableau shape does not match"));
    }
    if k == 0 || first_row_gap(shape) < k {
        return Err(domain(format!("needs 1 <= k <= lambda_1 - lambda_2, got k = {k}")));
    }
    let mu = tableau.restrict_below(d as u32)?.shape();
    let reduced = shape.shrink_first_row(k).expect("gap is at least k");
    let mut value = Rational::new(
        weyl_dim(&shape.padded(d)?, d)?.into(),
        weyl_dim(&reduced.padded(d)?, d)?.into(),
    );
    for t in 0..k {
        let current = shape.shrink_first_row(t).expect("t < k");
        let coeff = cg_coeff_sq(&current, &mu, d)?;
        if coeff.is_zero() {
            return Ok(coeff);
        }
        value *= coeff;
    }
    Ok(value)
}
