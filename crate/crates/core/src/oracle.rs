//! Exact expectations under the RSK distribution, by enumeration.
//!
//! Two routes are kept side by side: summing over all `d^n` words, and
//! summing over pairs `(lambda, T)` weighted by `num_syt(lambda) · p^T`. The
//! bijection makes them equal, so each checks the other. All arithmetic is
//! exact.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{QpaError, Result};
use crate::fidelity::fidelity;
use crate::scalar::{Rational, Scalar};
use crate::spectrum::{gap_event_holds, Spectrum};
use crate::tableaux::{enumerate_ssyt, num_syt, partitions, rsk, Caps, Partition, SemistandardTableau, Word};

/// `powers[a][e] = p_{a+1}^e` for `e <= n`.
struct PowerTable(Vec<Vec<Rational>>);

impl PowerTable {
    fn new(p: &Spectrum<Rational>, n: usize) -> Self {
        Self(
            p.probabilities()
                .iter()
                .map(|pa| {
                    let mut row = Vec::with_capacity(n + 1);
                    let mut acc = Rational::one();
                    for _ in 0..=n {
                        row.push(acc.clone());
                        acc *= pa;
                    }
                    row
                })
                .collect(),
        )
    }

    /// `p^h = prod_a p_a^{h_a}`.
    fn weight(&self, histogram: &[usize]) -> Rational {
        histogram
            .iter()
            .zip(&self.0)
            .fold(Rational::one(), |acc, (&h, row)| acc * &row[h])
    }
}

fn check_caps(p: &Spectrum<Rational>, n: usize, caps: &Caps) -> Result<()> {
    caps.check_boxes(n)?;
    caps.check_alphabet(p.dimension())
}

/// Exact law of `(lambda, T)`; the recording tableau is summed out.
#[derive(Debug, Clone)]
pub struct RskDistribution {
    entries: Vec<(Partition, SemistandardTableau, Rational)>,
}

impl RskDistribution {
    /// `(lambda, T, num_syt(lambda) · p^T)` for every SSYT over `[d]` with `n` boxes.
    pub fn entries(&self) -> &[(Partition, SemistandardTableau, Rational)] {
        &self.entries
    }

    pub fn mass_of(&self, tableau: &SemistandardTableau) -> Rational {
        self.entries
            .iter()
            .find(|(_, t, _)| t == tableau)
            .map(|(_, _, m)| m.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_mass(&self) -> Rational {
        self.entries.iter().map(|(_, _, m)| m).sum()
    }

    /// Marginal law of the shape.
    pub fn shape_masses(&self) -> BTreeMap<Partition, Rational> {
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (shape, _, mass) in &self.entries {
            *out.entry(shape.clone()).or_insert_with(Rational::zero) += mass;
        }
        out
    }

    /// `E[f(lambda, T)]`.
    pub fn expect<F>(&self, mut f: F) -> Result<Rational>
    where
        F: FnMut(&Partition, &SemistandardTableau) -> Result<Rational>,
    {
        let mut total = Rational::zero();
        for (shape, tableau, mass) in &self.entries {
            if mass.is_zero() {
                continue;
            }
            total += f(shape, tableau)? * mass;
        }
        Ok(total)
    }
}

pub fn exact_rsk_distribution(p: &Spectrum<Rational>, n: usize, caps: &Caps) -> Result<RskDistribution> {
    check_caps(p, n, caps)?;
    let d = p.dimension();
    let powers = PowerTable::new(p, n);
    let mut entries = Vec::new();
    for shape in partitions(n, d) {
        let syt_count = Rational::from_integer(num_syt(&shape).into());
        for tableau in enumerate_ssyt(&shape, d, caps)? {
            let mass = &syt_count * powers.weight(&tableau.content());
            entries.push((shape.clone(), tableau, mass));
        }
    }
    Ok(RskDistribution { entries })
}

/// Expected fidelity computed by both enumeration routes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactFidelity {
    /// Sum over words `w` of `p^{h(w)} · F(rsk(w))`.
    #[serde(serialize_with = "serialize_rational")]
    pub word_sum: Rational,
    /// Sum over `(lambda, T)` of `num_syt(lambda) · p^T · F(lambda, T)`.
    #[serde(serialize_with = "serialize_rational")]
    pub pair_sum: Rational,
}

impl ExactFidelity {
    pub fn routes_agree(&self) -> bool {
        self.word_sum == self.pair_sum
    }

    /// The common value when the routes agree.
    pub fn value(&self) -> Result<&Rational> {
        if self.routes_agree() {
            Ok(&self.word_sum)
        } else {
            Err(QpaError::Inconsistent(format!(
                "word sum {} differs from tableau sum {}",
                self.word_sum, self.pair_sum
            )))
        }
    }
}

pub(crate) fn serialize_rational<Z: serde::Serializer>(r: &Rational, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
    s.serialize_str(&r.to_string())
}

/// Exact `E[F(lambda, T)]` for `n` copies and `k` outputs.
pub fn exact_expected_fidelity(p: &Spectrum<Rational>, n: usize, k: usize, caps: &Caps) -> Result<ExactFidelity> {
    check_caps(p, n, caps)?;
    let d = p.dimension();
    let powers = PowerTable::new(p, n);

    // Words landing on the same insertion tableau share a histogram and a
    // fidelity, so they are tallied before any rational arithmetic.
    let mut tally: HashMap<(Vec<usize>, SemistandardTableau), u64> = HashMap::new();
    let mut shapes: HashMap<SemistandardTableau, Partition> = HashMap::new();
    for word in Word::all(d, n) {
        let out = rsk(&word)?;
        *tally.entry((word.histogram(), out.insertion.clone())).or_insert(0) += 1;
        shapes.entry(out.insertion).or_insert(out.shape);
    }
    let mut word_sum = Rational::zero();
    for ((histogram, tableau), count) in &tally {
        let weight = powers.weight(histogram);
        if weight.is_zero() {
            continue;
        }
        let f = fidelity::<Rational>(&shapes[tableau], tableau, k)?.value;
        word_sum += weight * f * Rational::from_integer((*count).into());
    }

    let distribution = exact_rsk_distribution(p, n, caps)?;
    let pair_sum = distribution.expect(|shape, tableau| Ok(fidelity::<Rational>(shape, tableau, k)?.value))?;
    Ok(ExactFidelity { word_sum, pair_sum })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowMoments {
    #[serde(serialize_with = "serialize_rational")]
    pub mean_lambda1: Rational,
    /// `E[(lambda_2 - p_{d-1} n)^2]`.
    #[serde(serialize_with = "serialize_rational")]
    pub second_row_moment: Rational,
}

pub fn exact_row_moments(p: &Spectrum<Rational>, n: usize, caps: &Caps) -> Result<RowMoments> {
    let distribution = exact_rsk_distribution(p, n, caps)?;
    let center = p.second_largest() * Rational::from_usize(n);
    let mut mean_lambda1 = Rational::zero();
    let mut second_row_moment = Rational::zero();
    for (shape, mass) in distribution.shape_masses() {
        mean_lambda1 += Rational::from_usize(shape.get(0)) * &mass;
        let x = Rational::from_usize(shape.get(1)) - &center;
        second_row_moment += &x * &x * mass;
    }
    Ok(RowMoments {
        mean_lambda1,
        second_row_moment,
    })
}

/// `Pr[lambda_1 - lambda_2 >= g n / 2]`.
pub fn exact_event_probability(p: &Spectrum<Rational>, n: usize, caps: &Caps) -> Result<Rational> {
    p.require_gap()?;
    let distribution = exact_rsk_distribution(p, n, caps)?;
    Ok(distribution
        .shape_masses()
        .into_iter()
        .filter(|(shape, _)| gap_event_holds(p, n, shape.get(0), shape.get(1)))
        .map(|(_, mass)| mass)
        .sum())
}

/// `E[sum_i b_i]`.
pub fn exact_mean_overhang_sum(p: &Spectrum<Rational>, n: usize, caps: &Caps) -> Result<Rational> {
    let d = p.dimension();
    let distribution = exact_rsk_distribution(p, n, caps)?;
    distribution.expect(|shape, tableau| {
        let mu = tableau.restrict_below(d as u32)?.shape();
        let b = crate::tableaux::overhangs(shape, &mu, d)?;
        Ok(Rational::from_usize(b.total()))
    })
}
