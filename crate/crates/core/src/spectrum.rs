//! Eigenvalue spectra of the noisy input state, letter sampling, and the
//! sample-complexity and rate formulas.
//!
//! Only eigenvalues matter: the purification channel is unitarily covariant,
//! so the input may be taken diagonal and a word of i.i.d. letters drawn from
//! the spectrum stands in for weak Schur sampling on `rho^{⊗n}`.

use std::fmt;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::Serialize;

use crate::error::{domain, QpaError, Result};
use crate::scalar::{Rational, Scalar};
use crate::tableaux::Word;

/// Constant term of the `(2032 + 4k)` coefficient in the copy bound.
pub const COPY_BOUND_CONSTANT: i64 = 2032;
/// Coefficient of the concentration bound on the bad event.
pub const CONCENTRATION_CONSTANT: i64 = 2032;

/// Probabilities `p_1 <= ... <= p_d` summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<S> {
    p: Vec<S>,
}

impl<S: Scalar> Spectrum<S> {
    /// Sorts ascending and validates; any input order is accepted.
    pub fn new(mut p: Vec<S>) -> Result<Self> {
        if p.len() < 2 {
            return Err(QpaError::InvalidSpectrum(format!(
                "dimension must be at least 2, got {}",
                p.len()
            )));
        }
        if p.iter().any(|x| x.partial_cmp(&S::zero()).is_none_or(|o| o.is_lt())) {
            return Err(QpaError::InvalidSpectrum("probabilities must be nonnegative".into()));
        }
        p.sort_by(|a, b| a.partial_cmp(b).expect("probabilities are ordered"));
        let total = p.iter().cloned().fold(S::zero(), |acc, x| acc + x);
        if !S::is_unit_mass(&total) {
            return Err(QpaError::InvalidSpectrum(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { p })
    }

    pub fn probabilities(&self) -> &[S] {
        &self.p
    }

    pub fn dimension(&self) -> usize {
        self.p.len()
    }

    /// `p_i`, counted from one.
    pub fn get(&self, i: usize) -> &S {
        &self.p[i - 1]
    }

    pub fn largest(&self) -> &S {
        &self.p[self.p.len() - 1]
    }

    pub fn second_largest(&self) -> &S {
        &self.p[self.p.len() - 2]
    }

    /// `p_d - p_{d-1}`.
    pub fn gap(&self) -> S {
        self.largest().clone() - self.second_largest().clone()
    }

    /// `1 - p_d`, the total weight off the principal eigenvector.
    pub fn noise_weight(&self) -> S {
        S::one() - self.largest().clone()
    }

    /// The gap, or [`QpaError::ZeroGap`] when it vanishes.
    pub fn require_gap(&self) -> Result<S> {
        let g = self.gap();
        if g > S::zero() {
            Ok(g)
        } else {
            Err(QpaError::ZeroGap)
        }
    }

    pub fn to_f64(&self) -> Spectrum<f64> {
        Spectrum {
            p: self.p.iter().map(Scalar::to_f64_lossy).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for Spectrum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<S: Scalar> Serialize for Spectrum<S> {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let parts: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        parts.serialize(s)
    }
}

/// Copies in, copies out and target infidelity for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunParameters<S = f64> {
    pub n: usize,
    pub k: usize,
    pub delta: S,
}

impl<S: Scalar> RunParameters<S> {
    pub fn new(n: usize, k: usize, delta: S) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(domain("n and k must be positive"));
        }
        if !(delta > S::zero() && delta <= S::one()) {
            return Err(domain(format!("delta = {delta} must lie in (0, 1]")));
        }
        Ok(Self { n, k, delta })
    }
}

/// Spectrum of `(1 - eta)|v_d><v_d| + eta I/d`.
pub fn depolarizing<S: Scalar>(d: usize, eta: S) -> Result<Spectrum<S>> {
    if d < 2 {
        return Err(QpaError::InvalidSpectrum(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if !(eta >= S::zero() && eta <= S::one()) {
        return Err(QpaError::InvalidSpectrum(format!("noise rate {eta} outside [0, 1]")));
    }
    let small = eta.clone() / S::from_usize(d);
    let mut p = vec![small.clone(); d];
    p[d - 1] = S::one() - eta + small;
    Spectrum::new(p)
}

/// Draws letters `1..=d` with probabilities `p_1..p_d`.
#[derive(Debug, Clone)]
pub struct LetterSampler {
    index: WeightedIndex<f64>,
}

impl LetterSampler {
    pub fn new(p: &Spectrum<f64>) -> Self {
        Self {
            index: WeightedIndex::new(p.probabilities()).expect("spectrum has positive mass"),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        self.index.sample(rng) as u32 + 1
    }
}

/// `n` i.i.d. letters drawn from `p`.
pub fn sample_word<R: Rng + ?Sized>(p: &Spectrum<f64>, n: usize, rng: &mut R) -> Word {
    let sampler = LetterSampler::new(p);
    let letters = (0..n).map(|_| sampler.sample(rng)).collect();
    Word::new(letters, p.dimension()).expect("sampled letters lie in the alphabet")
}

/// `(1 - p_d) / g^2`.
pub fn coarse_rate<S: Scalar>(p: &Spectrum<S>) -> Result<S> {
    let g = p.require_gap()?;
    Ok(p.noise_weight() / (g.clone() * g))
}

/// Copies sufficient for fidelity `1 - delta` on `k` outputs:
/// `ceil(12k + (2032 + 4k)/delta · (1 - p_d)/g^2)`.
pub fn required_samples<S: Scalar>(p: &Spectrum<S>, k: usize, delta: &S) -> Result<u64> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    if !(*delta > S::zero() && *delta <= S::one()) {
        return Err(domain(format!("delta = {delta} must lie in (0, 1]")));
    }
    let rate = coarse_rate(p)?;
    let k_s = S::from_usize(k);
    let value = S::from_int(12) * k_s.clone()
        + (S::from_int(COPY_BOUND_CONSTANT) + S::from_int(4) * k_s) / delta.clone() * rate;
    value
        .ceil_u64()
        .ok_or_else(|| domain(format!("required copy count {value} does not fit in u64")))
}

/// `sum_{i<d} p_i / (p_d - p_i)^2`, the spectrum-resolved rate.
pub fn fine_grained_rate<S: Scalar>(p: &Spectrum<S>) -> Result<S> {
    p.require_gap()?;
    let top = p.largest().clone();
    let d = p.dimension();
    Ok(p.probabilities()[..d - 1]
        .iter()
        .map(|pi| {
            let gap = top.clone() - pi.clone();
            pi.clone() / (gap.clone() * gap)
        })
        .fold(S::zero(), |acc, x| acc + x))
}

/// Leading-order infidelity `p_1 / ((p_2 - p_1)^2 n)` of the optimal qubit protocol.
pub fn qubit_asymptotic_infidelity<S: Scalar>(p: &Spectrum<S>, n: usize) -> Result<S> {
    if p.dimension() != 2 {
        return Err(domain(format!("qubit rate needs d = 2, got d = {}", p.dimension())));
    }
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let g = p.require_gap()?;
    Ok(p.get(1).clone() / (g.clone() * g * S::from_usize(n)))
}

/// `p_d n + sum_{i<d} p_i/(p_d - p_i)`, the bound on `E[lambda_1]`.
pub fn first_row_bound<S: Scalar>(p: &Spectrum<S>, n: usize) -> Result<S> {
    p.require_gap()?;
    Ok(p.largest().clone() * S::from_usize(n) + first_row_excess_bound(p))
}

/// `sum_{i<d} p_i/(p_d - p_i)`; assumes a positive gap.
pub fn first_row_excess_bound<S: Scalar>(p: &Spectrum<S>) -> S {
    let top = p.largest().clone();
    let d = p.dimension();
    p.probabilities()[..d - 1]
        .iter()
        .map(|pi| pi.clone() / (top.clone() - pi.clone()))
        .fold(S::zero(), |acc, x| acc + x)
}

/// `84 p_{d-1} n + 42 (1 - p_d) n`, the bound on `E[(lambda_2 - p_{d-1} n)^2]`.
pub fn second_row_bound<S: Scalar>(p: &Spectrum<S>, n: usize) -> S {
    let n = S::from_usize(n);
    S::from_int(84) * p.second_largest().clone() * n.clone() + S::from_int(42) * p.noise_weight() * n
}

/// `min(1, 2032/n · (1 - p_d)/g^2)`, the bound on the probability that
/// `lambda_1 - lambda_2 < g n / 2`.
pub fn concentration_bound<S: Scalar>(p: &Spectrum<S>, n: usize) -> Result<S> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let raw = S::from_int(CONCENTRATION_CONSTANT) / S::from_usize(n) * coarse_rate(p)?;
    Ok(S::min_of(S::one(), raw))
}

/// `1 - (2032 + 4k)/n · (1 - p_d)/g^2`, the fidelity guaranteed at `n` copies.
pub fn guaranteed_fidelity<S: Scalar>(p: &Spectrum<S>, n: usize, k: usize) -> Result<S> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let c = S::from_int(COPY_BOUND_CONSTANT) + S::from_int(4) * S::from_usize(k);
    Ok(S::one() - c / S::from_usize(n) * coarse_rate(p)?)
}

/// Whether `lambda_1 - lambda_2 >= g n / 2`.
pub fn gap_event_holds<S: Scalar>(p: &Spectrum<S>, n: usize, lambda1: usize, lambda2: usize) -> bool {
    let lhs = S::from_usize(lambda1 - lambda2) * S::from_int(2);
    lhs >= p.gap() * S::from_usize(n)
}

/// Exact rational spectrum as a convenience for oracle callers.
pub fn rational_spectrum(p: &[(i64, i64)]) -> Result<Spectrum<Rational>> {
    Spectrum::new(p.iter().map(|&(a, b)| Rational::ratio(a, b)).collect())
}
