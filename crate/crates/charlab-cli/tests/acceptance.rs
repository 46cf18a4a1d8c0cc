//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`). Everything
//! is exact arithmetic; the only tolerances are the runtime budgets.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use charlab::characters::{
    character_poly, denominator_matrix, principal_specialization, so_even_schur_sum,
    sp_dimension_product, weyl_denominator, CharacterSpec, Family, OddColsMode,
};
use charlab::combinat::{count_pp, count_spp, verify_count_identity, CountIdentity};
use charlab::identities::{verify_lemma, verify_theorem, LemmaId, Mode, TheoremId};
use charlab::laurent::det_symbolic;
use charlab::shapes::{odd_columns, subshapes_of_rectangle, SkewDiagram};
use charlab::{HalfExp, Int, Rat, Shape};

fn criterion<F>(number: u32, name: &str, budget_secs: Option<u64>, body: F)
where
    F: FnOnce() + UnwindSafe,
{
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!(
        "acceptance criterion {number} ({name}): {status} in {:.2}s",
        elapsed.as_secs_f64()
    );
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    if let Some(secs) = budget_secs {
        assert!(
            elapsed <= Duration::from_secs(secs),
            "criterion {number} exceeded its {secs}s runtime budget ({elapsed:?})"
        );
    }
}

#[test]
fn criterion_1_weyl_denominators() {
    criterion(1, "Weyl denominators", Some(10), || {
        for family in [Family::Gl, Family::SoOdd, Family::Sp, Family::OEven] {
            for n in 1..=4 {
                let det = det_symbolic(&denominator_matrix(family, n)).unwrap();
                assert_eq!(
                    det,
                    weyl_denominator(family, n),
                    "family {family}, n = {n}"
                );
            }
        }
    });
}

#[test]
fn criterion_2_lemma_suite() {
    criterion(2, "lemma suite", Some(120), || {
        // symbolic, ground sets up to 6 variables
        for n in 1..=3 {
            for which in [LemmaId::One, LemmaId::Two] {
                let report = verify_lemma(which, n, Mode::Symbolic, 1, 0).unwrap();
                assert!(report.is_equal(), "{which:?} N={n} symbolic");
            }
        }
        for n in 0..=2 {
            let report = verify_lemma(LemmaId::Three, n, Mode::Symbolic, 1, 0).unwrap();
            assert!(report.is_equal(), "lemma3 N={n} symbolic");
        }
        // randomized, 20 trials, fixed seed
        for n in 1..=5 {
            for which in [LemmaId::One, LemmaId::Two] {
                let report = verify_lemma(which, n, Mode::Random, 20, 0xC1C0).unwrap();
                assert!(report.is_equal(), "{which:?} N={n} random");
            }
        }
        for n in 0..=5 {
            let report = verify_lemma(LemmaId::Three, n, Mode::Random, 20, 0xC1C0).unwrap();
            assert!(report.is_equal(), "lemma3 N={n} random");
        }
    });
}

#[test]
fn criterion_3_theorem_suite() {
    criterion(3, "theorem suite", Some(300), || {
        let theorems = [
            TheoremId::Thm1,
            TheoremId::Thm2,
            TheoremId::Thm3,
            TheoremId::Thm4,
        ];
        // symbolic for m <= 2, n <= 2 (thm4 m=0 routes through the uniform form)
        for which in theorems {
            for m in 0..=2 {
                for n in 1..=2 {
                    let report = verify_theorem(which, m, n, Mode::Symbolic, 1, 0).unwrap();
                    assert!(report.is_equal(), "{which:?} m={m} n={n} symbolic");
                }
            }
        }
        // randomized for m <= 4, n <= 4
        for which in theorems {
            for m in 0..=4 {
                for n in 1..=4 {
                    let report = verify_theorem(which, m, n, Mode::Random, 5, 0xFAC7).unwrap();
                    assert!(report.is_equal(), "{which:?} m={m} n={n} random");
                }
            }
        }
        // bridge identities symbolically for n <= 3
        for which in [TheoremId::Eq13, TheoremId::Eq14] {
            for m in 0..=2 {
                for n in 1..=3 {
                    let report = verify_theorem(which, m, n, Mode::Symbolic, 1, 0).unwrap();
                    assert!(report.is_equal(), "{which:?} m={m} n={n} symbolic");
                }
            }
        }
    });
}

#[test]
fn criterion_4_count_identities() {
    criterion(4, "count identities", Some(300), || {
        // Eq 5.1 with all three methods agreeing (brute force included)
        for m in 0..=2 {
            for n in 1..=3 {
                let report = verify_count_identity(CountIdentity::Eq51, m, n).unwrap();
                assert!(report.consistent, "5.1 m={m} n={n}: {report:?}");
                for q in &report.quantities {
                    for (method, outcome) in &q.methods {
                        assert!(
                            matches!(outcome, charlab::combinat::MethodOutcome::Value(_)),
                            "5.1 m={m} n={n}: {} {method:?} did not run",
                            q.family
                        );
                    }
                }
            }
        }
        // the worked example: PP(2,2,2) = 20 = 10 * 2
        let report = verify_count_identity(CountIdentity::Eq51, 1, 2).unwrap();
        assert_eq!(report.lhs, Some(Int::from(20)));
        assert_eq!(report.rhs, Some(Int::from(20)));

        // Eqs 5.4, 6.6, 6.7 by character/product methods for m, n <= 4,
        // brute force joining in wherever the enumeration budget permits
        for which in [CountIdentity::Eq54, CountIdentity::Eq66, CountIdentity::Eq67] {
            for m in 0..=4 {
                for n in 1..=4 {
                    let report = verify_count_identity(which, m, n).unwrap();
                    assert!(report.consistent, "{which:?} m={m} n={n}: {report:?}");
                }
            }
        }
    });
}

#[test]
fn criterion_5_specialization_consistency() {
    criterion(5, "specialization consistency", None, || {
        // PP: brute force vs Schur principal specialization
        for a in 0..=6i64 {
            for b in 0..=3usize {
                for c in 0..=3usize {
                    let brute = Int::from(count_pp(a as u32, b, c).unwrap());
                    let character = if b + c == 0 {
                        Int::from(1)
                    } else {
                        let shape = Shape::rectangle(HalfExp::from_int(a), b)
                            .unwrap()
                            .padded(b + c)
                            .unwrap();
                        let spec = CharacterSpec::new(Family::Gl, shape, b + c).unwrap();
                        principal_specialization(&spec, false).unwrap()
                    };
                    assert_eq!(brute, character, "PP({a},{b},{c})");
                }
            }
        }
        // SPP: brute force vs odd orthogonal at all-ones (half-integer
        // shapes for odd heights)
        for a in 0..=6i64 {
            for n in 1..=3usize {
                let brute = Int::from(count_spp(a as u32, n).unwrap());
                let shape = Shape::rectangle(HalfExp::from_doubled(a), n).unwrap();
                let spec = CharacterSpec::new(Family::SoOdd, shape, n).unwrap();
                let character = principal_specialization(&spec, false).unwrap();
                assert_eq!(brute, character, "SPP({a},{n},{n})");
            }
        }
        // so_(m^n)(-1,...,-1) = (-1)^(mn) sp_(m^(n-1))(1,...,1)
        for m in 0..=4i64 {
            for n in 1..=4usize {
                let shape = Shape::rectangle(HalfExp::from_int(m), n).unwrap();
                let spec = CharacterSpec::new(Family::SoOdd, shape, n).unwrap();
                let at_minus_ones =
                    Rat::from_integer(principal_specialization(&spec, true).unwrap());
                let mut expected = sp_dimension_product(m, n as i64 - 1);
                if (m * n as i64) % 2 != 0 {
                    expected = -expected;
                }
                assert_eq!(at_minus_ones, expected, "m={m} n={n}");
            }
        }
    });
}

/// Schur-sum side of the decomposition at the all-ones point: the prefactor
/// specializes to 1, so this is a plain sum of Schur dimensions.
fn schur_sum_at_ones(two_c: i64, n: usize, target: usize) -> Int {
    let rect = Shape::rectangle(HalfExp::from_int(two_c), n).unwrap();
    let mut total = Int::from(0);
    for nu in subshapes_of_rectangle(two_c, n) {
        let skew = SkewDiagram::new(&rect, &nu).unwrap();
        if odd_columns(&skew) != target {
            continue;
        }
        let spec = CharacterSpec::new(Family::Gl, nu.padded(n).unwrap(), n).unwrap();
        total += principal_specialization(&spec, false).unwrap();
    }
    total
}

#[test]
fn criterion_6_bracken_green_decomposition() {
    criterion(6, "Bracken-Green decomposition", None, || {
        // symbolically for 2c <= 3, n <= 3
        for two_c in 1..=3i64 {
            for n in 1..=3usize {
                let c = HalfExp::from_doubled(two_c);
                let zero = so_even_schur_sum(c, n, OddColsMode::Zero).unwrap();
                let twoc = so_even_schur_sum(c, n, OddColsMode::TwoC).unwrap();
                let shape = Shape::rectangle(c, n).unwrap();
                let oeven =
                    character_poly(&CharacterSpec::new(Family::OEven, shape, n).unwrap())
                        .unwrap();
                assert_eq!(&zero + &twoc, oeven, "2c={two_c} n={n}");
            }
        }
        // the 2c = 0 boundary: each Schur-sum side equals its so-even character
        for n in 1..=3usize {
            let zero = so_even_schur_sum(HalfExp::ZERO, n, OddColsMode::Zero).unwrap();
            let shape = Shape::rectangle(HalfExp::ZERO, n).unwrap();
            let so_even =
                character_poly(&CharacterSpec::new(Family::SoEven, shape, n).unwrap()).unwrap();
            assert_eq!(zero, so_even, "2c=0 n={n}");
        }
        // at all-ones for 2c <= 6, n <= 4
        for two_c in 1..=6i64 {
            for n in 1..=4usize {
                let c = HalfExp::from_doubled(two_c);
                let shape = Shape::rectangle(c, n).unwrap();
                let oeven = principal_specialization(
                    &CharacterSpec::new(Family::OEven, shape, n).unwrap(),
                    false,
                )
                .unwrap();
                let sum = schur_sum_at_ones(two_c, n, 0)
                    + schur_sum_at_ones(two_c, n, two_c as usize);
                assert_eq!(oeven, sum, "2c={two_c} n={n} at all-ones");
            }
        }
    });
}

#[test]
fn criterion_7_cli_determinism() {
    criterion(7, "CLI determinism", None, || {
        let cases: Vec<Vec<&str>> = vec![
            vec![
                "verify", "--identity", "thm1", "--m", "2", "--n", "2", "--mode", "random",
                "--trials", "5", "--seed", "123",
            ],
            vec![
                "verify", "--identity", "uniform15", "--m", "3", "--n", "2", "--mode",
                "random", "--trials", "5", "--seed", "9",
            ],
            vec![
                "lemma", "--which", "3", "--N", "2", "--mode", "random", "--trials", "10",
                "--seed", "77",
            ],
            vec!["eval", "--family", "so-odd", "--shape", "2,1", "--vars", "2", "--principal"],
            vec![
                "count", "--family", "spp-star", "--m", "2", "--n", "3", "--methods",
                "character,product",
            ],
        ];
        for args in &cases {
            let runs: Vec<_> = (0..2)
                .map(|_| {
                    Command::new(env!("CARGO_BIN_EXE_charlab"))
                        .args(args)
                        .output()
                        .expect("binary runs")
                })
                .collect();
            assert_eq!(
                runs[0].stdout, runs[1].stdout,
                "stdout differs between reruns for {args:?}"
            );
            assert_eq!(runs[0].status.code(), runs[1].status.code());
            assert!(runs[0].status.success(), "case failed: {args:?}");
        }
    });
}
