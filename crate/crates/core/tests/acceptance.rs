//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigUint;
use qpa::fidelity::{fidelity, fidelity_via_cg, weyl_dim};
use qpa::montecarlo::{estimate, trial_rng, verify_theorem, StreamingRsk};
use qpa::oracle::{exact_expected_fidelity, exact_row_moments};
use qpa::spectrum::{depolarizing, qubit_asymptotic_infidelity, rational_spectrum, RunParameters, Spectrum};
use qpa::tableaux::{
    enumerate_ssyt, enumerate_syt, greene_union, lis_weak, num_syt, partitions, rsk, Caps, Partition, Word,
    DEFAULT_GREENE_CAP,
};
use qpa::{Rational, Scalar};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let spectra = [
        rational_spectrum(&[(1, 10), (9, 10)]).unwrap(),
        rational_spectrum(&[(3, 10), (7, 10)]).unwrap(),
        rational_spectrum(&[(1, 2), (1, 2)]).unwrap(),
        depolarizing(3, ratio(1, 10)).unwrap(),
        depolarizing(3, ratio(3, 10)).unwrap(),
    ];
    let mut cases = 0;
    for p in &spectra {
        for n in 1..=8 {
            for k in 1..=2 {
                let e = exact_expected_fidelity(p, n, k, &Caps::default()).map_err(|e| e.to_string())?;
                ensure(e.routes_agree(), || {
                    format!("p = {p}, n = {n}, k = {k}: {} != {}", e.word_sum, e.pair_sum)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (p, n, k) cases agree exactly"))
}

fn telescoping_identity() -> Outcome {
    let mut cases = 0;
    for d in 2..=3 {
        for n in 1..=8 {
            for shape in partitions(n, d) {
                let gap = shape.get(0) - shape.get(1);
                for t in enumerate_ssyt(&shape, d, &Caps::default()).unwrap() {
                    for k in 1..=gap {
                        let direct = fidelity::<Rational>(&shape, &t, k).map_err(|e| e.to_string())?.value;
                        let via = fidelity_via_cg(&shape, &t, k).map_err(|e| e.to_string())?;
                        ensure(direct == via, || format!("shape {shape}, k = {k}: {direct} != {via}"))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} (shape, tableau, k) cases agree exactly"))
}

fn schensted_greene() -> Outcome {
    let mut words = 0;
    for d in 1..=3 {
        for n in 1..=8 {
            for word in Word::all(d, n) {
                let shape = rsk(&word).unwrap().shape;
                ensure(shape.get(0) == lis_weak(&word), || {
                    format!("first row differs on {word}")
                })?;
                let union = greene_union(&word, 2, DEFAULT_GREENE_CAP).map_err(|e| e.to_string())?;
                ensure(shape.get(0) + shape.get(1) == union, || {
                    format!("two-row union differs on {word}")
                })?;
                words += 1;
            }
        }
    }
    Ok(format!("{words} words checked"))
}

fn counting_identities() -> Outcome {
    let mut shapes = 0;
    for d in 1..=4 {
        for n in 0..=6 {
            for shape in partitions(n, d) {
                let count = enumerate_ssyt(&shape, d, &Caps::default()).unwrap().len();
                let dim = weyl_dim(&shape.padded(d).unwrap(), d).unwrap();
                ensure(BigUint::from(count) == dim, || {
                    format!("SSYT count of {shape}, d = {d}: {count} vs {dim}")
                })?;
                shapes += 1;
            }
        }
    }
    for n in 0..=8 {
        for shape in partitions(n, n.max(1)) {
            let count = enumerate_syt(&shape, &Caps::default()).unwrap().len();
            ensure(BigUint::from(count) == num_syt(&shape), || {
                format!("SYT count of {shape}")
            })?;
            shapes += 1;
        }
    }
    let f = num_syt(&Partition::new(vec![4, 3, 1]).unwrap());
    ensure(f == BigUint::from(70u32), || format!("num_syt((4,3,1)) = {f}"))?;
    Ok(format!("{shapes} shapes checked, num_syt((4,3,1)) = {f}"))
}

fn lemma_bounds_exact() -> Outcome {
    let p = rational_spectrum(&[(3, 10), (7, 10)]).unwrap();
    let m = exact_row_moments(&p, 10, &Caps::default()).map_err(|e| e.to_string())?;
    let first_bound = ratio(31, 4);
    let second_bound = Rational::from_usize(84 * 3 + 42 * 3);
    ensure(m.mean_lambda1 <= first_bound, || {
        format!("E[lambda_1] = {}", m.mean_lambda1)
    })?;
    ensure(m.second_row_moment <= second_bound, || {
        format!("second-row moment = {}", m.second_row_moment)
    })?;
    Ok(format!(
        "E[lambda_1] = {:.6} <= 7.75, E[(lambda_2 - 3)^2] = {:.6} <= 378",
        m.mean_lambda1.to_f64_lossy(),
        m.second_row_moment.to_f64_lossy()
    ))
}

fn guarantee_at_required_copies() -> Outcome {
    let p = depolarizing(3, ratio(3, 10)).unwrap();
    let mut lines = Vec::new();
    let mut failed = false;
    for k in 1..=2 {
        for delta in [ratio(1, 5), ratio(1, 10)] {
            let r = verify_theorem(&p, k, &delta, 10_000, 1, 0).map_err(|e| e.to_string())?;
            failed |= !r.passed;
            lines.push(format!(
                "k = {k}, delta = {delta}, n = {}: mean {:.6} + ci {:.2e} vs {:.2}, slack {:.4}",
                r.n,
                r.estimate.mean_fidelity,
                r.estimate.ci_halfwidth.unwrap_or(0.0),
                r.target_fidelity,
                r.slack
            ));
        }
    }
    let detail = lines.join("; ");
    if failed {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn inverse_n_scaling() -> Outcome {
    let p = Spectrum::new(vec![0.1, 0.9]).unwrap();
    let exact = rational_spectrum(&[(1, 10), (9, 10)]).unwrap();
    let scaled: Vec<f64> = [250, 500, 1000, 2000]
        .iter()
        .map(|&n| {
            let params = RunParameters::new(n, 1, 1.0).unwrap();
            let est = estimate(&p, &params, 100_000, 2, 0).unwrap();
            n as f64 * (1.0 - est.mean_fidelity)
        })
        .collect();
    let reference = qubit_asymptotic_infidelity(&exact, 1).unwrap().to_f64_lossy();
    let detail = format!(
        "n(1 - F) = {:?}, reference p_1/g^2 = {reference}",
        scaled.iter().map(|s| format!("{s:.5}")).collect::<Vec<_>>()
    );
    let steady = scaled
        .windows(2)
        .all(|w| w[0] > 0.0 && w[1] > 0.0 && w[0].max(w[1]) / w[0].min(w[1]) < 2.0);
    if steady {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn streaming_matches_batch() -> Outcome {
    let mut rng = trial_rng(31, 0);
    for case in 0..10_000 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=200);
        let letters: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d as u32)).collect();
        let mut stream = StreamingRsk::new(d);
        for &x in &letters {
            stream.push(x).map_err(|e| e.to_string())?;
        }
        let batch = rsk(&Word::new(letters, d).unwrap()).unwrap();
        let mu = batch.insertion.restrict_below(d as u32).unwrap().shape();
        ensure(stream.shape() == batch.shape && stream.restricted_shape() == mu, || {
            format!("case {case} differs")
        })?;
    }
    let mut words = 0;
    for d in 2..=3 {
        for n in 1..=8 {
            for word in Word::all(d, n) {
                let full = rsk(&word).unwrap().insertion;
                for bound in 1..=d as u32 {
                    let restricted = full.restrict_below(bound).unwrap();
                    let direct = rsk(&word.letters_below(bound)).unwrap().insertion;
                    ensure(restricted.rows() == direct.rows(), || {
                        format!("restriction differs on {word}")
                    })?;
                }
                words += 1;
            }
        }
    }
    Ok(format!(
        "10000 random cases identical, restriction holds on {words} words"
    ))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commands: &[&[&str]] = &[
        &[
            "simulate",
            "--spectrum",
            "depolarizing:d=3,eta=0.3",
            "--n",
            "2000",
            "--trials",
            "10000",
            "--seed",
            "7",
        ],
        &[
            "sweep",
            "--spectrum",
            "0.1,0.9",
            "--n-grid",
            "250,500",
            "--trials",
            "5000",
            "--seed",
            "3",
            "--format",
            "json",
        ],
        &[
            "lemmas",
            "--spectrum",
            "0.3,0.7",
            "--n",
            "100",
            "--trials",
            "5000",
            "--seed",
            "9",
        ],
        &["oracle", "--spectrum", "0.3,0.7", "--n", "6", "--k", "2"],
    ];
    for (i, args) in commands.iter().enumerate() {
        let sampled = args[0] != "oracle";
        let mut outputs = Vec::new();
        for workers in ["1", "4"] {
            let path = dir.path().join(format!("{i}-{workers}.out"));
            let mut command = Command::new(env!("CARGO_BIN_EXE_qpa"));
            command.args(*args);
            if sampled {
                command.args(["--workers", workers]);
            }
            let status = command.arg("--out").arg(&path).status().map_err(|e| e.to_string())?;
            ensure(status.success(), || format!("{} exited with {status}", args[0]))?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || {
            format!("{} output differs across worker counts", args[0])
        })?;
    }
    Ok(format!(
        "{} commands byte-identical for --workers 1 and 4",
        commands.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("telescoping identity", telescoping_identity),
        ("Schensted and Greene", schensted_greene),
        ("counting identities", counting_identities),
        ("row bounds, exact", lemma_bounds_exact),
        ("fidelity guarantee", guarantee_at_required_copies),
        ("1/n scaling", inverse_n_scaling),
        ("streaming vs batch RSK", streaming_matches_batch),
        ("CLI determinism", cli_determinism),
    ];
    let mut all_passed = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                all_passed = false;
                println!("criterion {}: FAIL  {name} ({secs:.1}s) {detail}", i + 1);
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
