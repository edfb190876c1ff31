use qpa::montecarlo::{check_lemmas, estimate, trial_rng, verify_theorem, StreamingRsk, ACCEPTANCE_SIGMAS};
use qpa::oracle::{exact_event_probability, exact_expected_fidelity, exact_row_moments};
use qpa::spectrum::{rational_spectrum, sample_word, RunParameters, Spectrum};
use qpa::tableaux::{rsk, Caps, Word};
use qpa::{Rational, Scalar};
use rand::Rng;

fn within(empirical: f64, exact: &Rational, sigma: Option<f64>) -> bool {
    let slack = ACCEPTANCE_SIGMAS * sigma.unwrap_or(0.0) + 1e-12;
    (empirical - exact.to_f64_lossy()).abs() <= slack
}

#[test]
fn streaming_insertion_matches_batch_rsk() {
    let mut rng = trial_rng(8, 0);
    for _ in 0..10_000 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=200);
        let letters: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d as u32)).collect();
        let mut stream = StreamingRsk::new(d);
        for &x in &letters {
            stream.push(x).unwrap();
        }
        let batch = rsk(&Word::new(letters, d).unwrap()).unwrap();
        let mu = batch.insertion.restrict_below(d as u32).unwrap().shape();
        assert_eq!(stream.shape(), batch.shape);
        assert_eq!(stream.restricted_shape(), mu);
        assert_eq!(stream.tableau().rows(), batch.insertion.rows());
    }
}

#[test]
fn estimates_agree_with_exact_oracle() {
    for p in [
        rational_spectrum(&[(1, 10), (9, 10)]).unwrap(),
        rational_spectrum(&[(3, 10), (7, 10)]).unwrap(),
        rational_spectrum(&[(1, 2), (1, 2)]).unwrap(),
    ] {
        let floats = p.to_f64();
        for n in 1..=8 {
            for k in 1..=2 {
                let params = RunParameters::new(n, k, 1.0).unwrap();
                let est = estimate(&floats, &params, 100_000, 3, 0).unwrap();
                let exact = exact_expected_fidelity(&p, n, k, &Caps::default()).unwrap();
                let exact = exact.value().unwrap();
                assert!(
                    within(est.mean_fidelity, exact, est.fidelity_std_error),
                    "p = {p}, n = {n}, k = {k}: {} vs {}",
                    est.mean_fidelity,
                    exact
                );
            }
            let params = RunParameters::new(n, 1, 1.0).unwrap();
            let est = estimate(&floats, &params, 100_000, 4, 0).unwrap();
            let moments = exact_row_moments(&p, n, &Caps::default()).unwrap();
            assert!(within(est.mean_lambda1, &moments.mean_lambda1, est.lambda1_std_error));
            assert!(within(
                est.second_row_moment,
                &moments.second_row_moment,
                est.second_row_std_error
            ));
            if p.require_gap().is_ok() {
                let failure = Rational::from_int(1) - exact_event_probability(&p, n, &Caps::default()).unwrap();
                let q = failure.to_f64_lossy();
                let sigma = (q * (1.0 - q) / 100_000.0).sqrt();
                assert!((est.event_failure_rate - q).abs() <= ACCEPTANCE_SIGMAS * sigma + 1e-12);
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let p = Spectrum::new(vec![0.1, 0.25, 0.65]).unwrap();
    let params = RunParameters::new(300, 2, 1.0).unwrap();
    let one = estimate(&p, &params, 3_001, 42, 1).unwrap();
    for workers in [2, 3, 4, 0] {
        assert_eq!(estimate(&p, &params, 3_001, 42, workers).unwrap(), one);
    }
}

#[test]
fn sampled_words_follow_the_spectrum() {
    let p = Spectrum::new(vec![0.2, 0.8]).unwrap();
    let word = sample_word(&p, 100_000, &mut trial_rng(1, 1));
    let h = word.histogram();
    let share = h[1] as f64 / 100_000.0;
    assert!((share - 0.8).abs() < ACCEPTANCE_SIGMAS * (0.16f64 / 100_000.0).sqrt());
}

#[test]
fn lemma_checks_on_pure_and_skewed_qubits() {
    let pure = Spectrum::new(vec![0.0, 1.0]).unwrap();
    let report = check_lemmas(&pure, 50, 1_000, 0, 0).unwrap();
    assert!(report.passed());
    assert_eq!(report.checks[0].empirical, 50.0);
    assert_eq!(report.checks[1].empirical, 0.0);

    let p = rational_spectrum(&[(3, 10), (7, 10)]).unwrap();
    let report = check_lemmas(&p, 10, 100_000, 5, 0).unwrap();
    assert!(report.passed(), "{report:?}");
    let exact = exact_row_moments(&p, 10, &Caps::default()).unwrap();
    let first = &report.checks[0];
    assert!((first.empirical - exact.mean_lambda1.to_f64_lossy()).abs() <= first.sigma * ACCEPTANCE_SIGMAS);
    assert!(first.empirical <= 7.75 + ACCEPTANCE_SIGMAS * first.sigma);

    let n = 10_000;
    let report = check_lemmas(&p, n, 10_000, 6, 0).unwrap();
    assert!(report.passed(), "{report:?}");
    let first = &report.checks[0];
    let per_copy = first.empirical / n as f64;
    let sigma = first.sigma / n as f64;
    assert!(per_copy >= 0.7 - ACCEPTANCE_SIGMAS * sigma);
    assert!(per_copy <= 0.7 + 0.75 / n as f64 + ACCEPTANCE_SIGMAS * sigma);
}

#[test]
fn lemma_checks_need_a_gap() {
    let flat = Spectrum::new(vec![0.5, 0.5]).unwrap();
    assert!(check_lemmas(&flat, 10, 10, 0, 1).is_err());
}

#[test]
fn guarantee_holds_on_a_qubit() {
    let p = rational_spectrum(&[(1, 10), (9, 10)]).unwrap();
    let report = verify_theorem(&p, 1, &Rational::new(1.into(), 10.into()), 2_000, 0, 0).unwrap();
    assert_eq!(report.n, 3194);
    assert!(report.passed);
    assert!(report.slack > 0.0);
    assert!(report.estimate.mean_fidelity >= report.guaranteed_fidelity);
}
