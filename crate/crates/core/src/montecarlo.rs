//! Sampled verification at large `n`.
//!
//! Each trial streams `n` letters through a count-matrix tableau, so memory
//! and per-letter cost depend only on `d`. Trials draw from independent
//! ChaCha streams keyed on `(seed, trial index)` and are reduced in fixed
//! chunks in index order, so results do not depend on the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::fidelity::fidelity_from_shapes;
use crate::scalar::Scalar;
use crate::spectrum::{
    concentration_bound, first_row_bound, gap_event_holds, guaranteed_fidelity, required_samples, second_row_bound,
    LetterSampler, RunParameters, Spectrum,
};
use crate::tableaux::{Partition, SemistandardTableau};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Width, in standard errors, of the one-sided statistical acceptance margin.
pub const ACCEPTANCE_SIGMAS: f64 = 4.0;

const CHUNK: usize = 256;

/// The random stream for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Incremental RSK that also tracks the insertion tableau of the subword of
/// non-`d` letters, whose shape is `mu = shape(T^{<d})`.
#[derive(Debug, Clone)]
pub struct StreamingRsk {
    d: usize,
    tableau: SemistandardTableau,
    below: SemistandardTableau,
    len: usize,
}

impl StreamingRsk {
    pub fn new(d: usize) -> Self {
        assert!(d >= 2);
        Self {
            d,
            tableau: SemistandardTableau::new(d),
            below: SemistandardTableau::new(d - 1),
            len: 0,
        }
    }

    pub fn push(&mut self, letter: u32) -> Result<()> {
        self.tableau.insert(letter)?;
        if (letter as usize) < self.d {
            self.below.insert(letter)?;
        }
        self.len += 1;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn shape(&self) -> Partition {
        self.tableau.shape()
    }

    pub fn restricted_shape(&self) -> Partition {
        self.below.shape()
    }

    pub fn tableau(&self) -> &SemistandardTableau {
        &self.tableau
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub lambda1: usize,
    pub lambda2: usize,
    /// `|mu|`, the number of non-`d` letters.
    pub mu_size: usize,
    /// `sum_i b_i = |mu| - n + lambda_1`.
    pub overhang_sum: usize,
    pub fidelity: f64,
    pub fallback_used: bool,
    /// `lambda_1 - lambda_2 >= g n / 2`.
    pub event_held: bool,
}

/// One sample of the algorithm's output fidelity.
pub fn run_trial<R: Rng + ?Sized>(p: &Spectrum<f64>, n: usize, k: usize, rng: &mut R) -> Result<TrialRecord> {
    let sampler = LetterSampler::new(p);
    run_trial_with(p, &sampler, n, k, rng)
}

fn run_trial_with<R: Rng + ?Sized>(
    p: &Spectrum<f64>,
    sampler: &LetterSampler,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<TrialRecord> {
    let d = p.dimension();
    let mut stream = StreamingRsk::new(d);
    for _ in 0..n {
        stream.push(sampler.sample(rng))?;
    }
    let shape = stream.shape();
    let mu = stream.restricted_shape();
    let f = fidelity_from_shapes::<f64>(&shape, &mu, d, k)?;
    let (lambda1, lambda2) = (shape.get(0), shape.get(1));
    Ok(TrialRecord {
        lambda1,
        lambda2,
        mu_size: mu.size(),
        overhang_sum: mu.size() + lambda1 - n,
        fidelity: f.value,
        fallback_used: f.fallback_used,
        event_held: gap_event_holds(p, n, lambda1, lambda2),
    })
}

/// Mean and centered second moment, mergeable in a fixed order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct RunningStat {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStat {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &RunningStat) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    fn std_error(&self) -> Option<f64> {
        (self.count > 1).then(|| (self.m2.max(0.0) / (self.count - 1) as f64 / self.count as f64).sqrt())
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    fidelity: RunningStat,
    lambda1: RunningStat,
    second_row: RunningStat,
    overhang: RunningStat,
    failures: u64,
    fallbacks: u64,
}

impl Tally {
    fn record(&mut self, r: &TrialRecord, center: f64) {
        self.fidelity.push(r.fidelity);
        self.lambda1.push(r.lambda1 as f64);
        let x = r.lambda2 as f64 - center;
        self.second_row.push(x * x);
        self.overhang.push(r.overhang_sum as f64);
        self.failures += u64::from(!r.event_held);
        self.fallbacks += u64::from(r.fallback_used);
    }

    fn merge(&mut self, other: &Tally) {
        self.fidelity.merge(&other.fidelity);
        self.lambda1.merge(&other.lambda1);
        self.second_row.merge(&other.second_row);
        self.overhang.merge(&other.overhang);
        self.failures += other.failures;
        self.fallbacks += other.fallbacks;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationResult {
    pub trials: usize,
    pub n: usize,
    pub k: usize,
    pub mean_fidelity: f64,
    pub fidelity_std_error: Option<f64>,
    /// 95% normal-approximation half-width; `None` for a single trial. The
    /// approximation is optimistic when nearly every trial has fidelity 1.
    pub ci_halfwidth: Option<f64>,
    /// Fraction of trials with `lambda_1 - lambda_2 < g n / 2`.
    pub event_failure_rate: f64,
    pub event_failure_wilson_low: f64,
    pub event_failure_wilson_high: f64,
    pub mean_lambda1: f64,
    pub lambda1_std_error: Option<f64>,
    /// Sample mean of `(lambda_2 - p_{d-1} n)^2`.
    pub second_row_moment: f64,
    pub second_row_std_error: Option<f64>,
    pub mean_overhang_sum: f64,
    pub fallback_rate: f64,
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (low, high)
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Sample mean of the fidelity over `trials` independent runs.
///
/// `workers = 0` uses every available core. The result is bit-identical for
/// any worker count.
pub fn estimate(
    p: &Spectrum<f64>,
    params: &RunParameters<f64>,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<EstimationResult> {
    if trials == 0 {
        return Err(domain("at least one trial is required"));
    }
    let (n, k) = (params.n, params.k);
    let sampler = LetterSampler::new(p);
    let center = *p.second_largest() * n as f64;
    let chunks = trials.div_ceil(CHUNK);
    let tallies: Vec<Result<Tally>> = with_workers(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut tally = Tally::default();
                for index in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                    let mut rng = trial_rng(seed, index as u64);
                    let record = run_trial_with(p, &sampler, n, k, &mut rng)?;
                    tally.record(&record, center);
                }
                Ok(tally)
            })
            .collect()
    });
    let mut total = Tally::default();
    for tally in tallies {
        total.merge(&tally?);
    }
    let t = trials as f64;
    let (low, high) = wilson_interval(total.failures, trials as u64);
    Ok(EstimationResult {
        trials,
        n,
        k,
        mean_fidelity: total.fidelity.mean.clamp(0.0, 1.0),
        fidelity_std_error: total.fidelity.std_error(),
        ci_halfwidth: total.fidelity.std_error().map(|s| Z_95 * s),
        event_failure_rate: total.failures as f64 / t,
        event_failure_wilson_low: low,
        event_failure_wilson_high: high,
        mean_lambda1: total.lambda1.mean,
        lambda1_std_error: total.lambda1.std_error(),
        second_row_moment: total.second_row.mean,
        second_row_std_error: total.second_row.std_error(),
        mean_overhang_sum: total.overhang.mean,
        fallback_rate: total.fallbacks as f64 / t,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub target_fidelity: f64,
    /// `1 - (2032 + 4k)/n · (1 - p_d)/g^2` at the chosen `n`.
    pub guaranteed_fidelity: f64,
    pub estimate: EstimationResult,
    /// `mean + ci - (1 - delta)`.
    pub slack: f64,
    pub passed: bool,
}

/// Runs at the copy count the theorem prescribes and checks that the
/// estimated fidelity (plus its 95% half-width) reaches `1 - delta`.
pub fn verify_theorem<S: Scalar>(
    p: &Spectrum<S>,
    k: usize,
    delta: &S,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<TheoremReport> {
    let n = usize::try_from(required_samples(p, k, delta)?)
        .map_err(|_| domain("required copy count does not fit in memory"))?;
    let delta_f = delta.to_f64_lossy();
    let floats = p.to_f64();
    let params = RunParameters::new(n, k, delta_f)?;
    let estimate = estimate(&floats, &params, trials, seed, workers)?;
    let target = 1.0 - delta_f;
    let upper = estimate.mean_fidelity + estimate.ci_halfwidth.unwrap_or(0.0);
    Ok(TheoremReport {
        n,
        k,
        delta: delta_f,
        target_fidelity: target,
        guaranteed_fidelity: guaranteed_fidelity(p, n, k)?.to_f64_lossy(),
        slack: upper - target,
        passed: upper >= target,
        estimate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub check: &'static str,
    pub empirical: f64,
    pub bound: f64,
    /// Standard error of `empirical`.
    pub sigma: f64,
    /// `bound + 4 sigma`.
    pub threshold: f64,
    pub passed: bool,
}

impl BoundCheck {
    fn new(check: &'static str, empirical: f64, bound: f64, sigma: f64) -> Self {
        let threshold = bound + ACCEPTANCE_SIGMAS * sigma;
        Self {
            check,
            empirical,
            bound,
            sigma,
            threshold,
            passed: empirical <= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub trials: usize,
    pub checks: Vec<BoundCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Empirical checks of the first-row mean, second-row moment and
/// gap-event bounds at `n` copies.
pub fn check_lemmas<S: Scalar>(
    p: &Spectrum<S>,
    n: usize,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<LemmaReport> {
    p.require_gap()?;
    let floats = p.to_f64();
    let params = RunParameters::new(n, 1, 1.0)?;
    let est = estimate(&floats, &params, trials, seed, workers)?;
    let failure_sigma = (est.event_failure_rate * (1.0 - est.event_failure_rate) / trials as f64).sqrt();
    let checks = vec![
        BoundCheck::new(
            "first_row_mean",
            est.mean_lambda1,
            first_row_bound(p, n)?.to_f64_lossy(),
            est.lambda1_std_error.unwrap_or(0.0),
        ),
        BoundCheck::new(
            "second_row_moment",
            est.second_row_moment,
            second_row_bound(p, n).to_f64_lossy(),
            est.second_row_std_error.unwrap_or(0.0),
        ),
        BoundCheck::new(
            "gap_event_failure",
            est.event_failure_rate,
            concentration_bound(p, n)?.to_f64_lossy(),
            failure_sigma,
        ),
    ];
    Ok(LemmaReport { n, trials, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::sample_word;
    use crate::tableaux::rsk;

    fn spectrum(p: &[f64]) -> Spectrum<f64> {
        Spectrum::new(p.to_vec()).unwrap()
    }

    #[test]
    fn pure_state_trial() {
        let p = spectrum(&[0.0, 1.0]);
        let r = run_trial(&p, 10, 2, &mut trial_rng(0, 0)).unwrap();
        assert_eq!(r.fidelity, 1.0);
        assert_eq!((r.lambda1, r.lambda2), (10, 0));
        assert!(r.event_held);
    }

    #[test]
    fn trials_replay() {
        let p = spectrum(&[0.2, 0.3, 0.5]);
        let a = run_trial(&p, 100, 2, &mut trial_rng(5, 17)).unwrap();
        let b = run_trial(&p, 100, 2, &mut trial_rng(5, 17)).unwrap();
        assert_eq!(a, b);
        let c = run_trial(&p, 100, 2, &mut trial_rng(5, 18)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn trial_matches_batch_rsk_on_replayed_word() {
        let p = spectrum(&[0.3, 0.7]);
        for index in 0..20 {
            let record = run_trial(&p, 50, 1, &mut trial_rng(11, index)).unwrap();
            let word = sample_word(&p, 50, &mut trial_rng(11, index));
            let out = rsk(&word).unwrap();
            let f = crate::fidelity::fidelity::<f64>(&out.shape, &out.insertion, 1).unwrap();
            assert_eq!(record.fidelity, f.value);
            assert_eq!(record.lambda1, out.shape.get(0));
            assert_eq!(record.overhang_sum + 50, record.mu_size + record.lambda1);
        }
    }

    #[test]
    fn single_trial_estimate() {
        let p = spectrum(&[0.3, 0.7]);
        let params = RunParameters::new(20, 1, 0.1).unwrap();
        let est = estimate(&p, &params, 1, 4, 1).unwrap();
        let record = run_trial(&p, 20, 1, &mut trial_rng(4, 0)).unwrap();
        assert_eq!(est.mean_fidelity, record.fidelity);
        assert_eq!(est.ci_halfwidth, None);
        assert!(estimate(&p, &params, 0, 4, 1).is_err());
    }

    #[test]
    fn pure_state_estimate_is_exactly_one() {
        let p = spectrum(&[0.0, 0.0, 1.0]);
        let params = RunParameters::new(30, 3, 0.1).unwrap();
        let est = estimate(&p, &params, 1000, 1, 0).unwrap();
        assert_eq!(est.mean_fidelity, 1.0);
        assert_eq!(est.ci_halfwidth, Some(0.0));
        assert_eq!(est.event_failure_rate, 0.0);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let p = spectrum(&[0.1, 0.3, 0.6]);
        let params = RunParameters::new(200, 2, 0.1).unwrap();
        let one = estimate(&p, &params, 1000, 99, 1).unwrap();
        let four = estimate(&p, &params, 1000, 99, 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn running_stat_merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut seq = RunningStat::default();
        xs.iter().for_each(|&x| seq.push(x));
        let mut merged = RunningStat::default();
        for chunk in xs.chunks(64) {
            let mut part = RunningStat::default();
            chunk.iter().for_each(|&x| part.push(x));
            merged.merge(&part);
        }
        assert!((seq.mean - merged.mean).abs() < 1e-12);
        assert!((seq.m2 - merged.m2).abs() < 1e-8 * seq.m2);
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
    }

    #[test]
    fn guarantee_trivial_cases() {
        let pure = spectrum(&[0.0, 1.0]);
        let report = verify_theorem(&pure, 2, &0.5, 50, 0, 1).unwrap();
        assert_eq!(report.n, 24);
        assert_eq!(report.estimate.mean_fidelity, 1.0);
        assert!(report.passed);
        let p = spectrum(&[0.2, 0.8]);
        let report = verify_theorem(&p, 1, &1.0, 20, 0, 1).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn lemmas_on_pure_state() {
        let pure = spectrum(&[0.0, 1.0]);
        let report = check_lemmas(&pure, 40, 100, 0, 1).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks[0].empirical, 40.0);
        assert_eq!(report.checks[1].empirical, 0.0);
        assert!(check_lemmas(&spectrum(&[0.5, 0.5]), 40, 100, 0, 1).is_err());
    }
}
