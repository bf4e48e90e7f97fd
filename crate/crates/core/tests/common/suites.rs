//! Seeded randomized suites shared by the acceptance target and the
//! property tests.

use fatpoint::bezout::{
    bezout_decompose, check_residual_inequality, confluence_test, reconstruction_holds, ReductionOrder,
};
use fatpoint::interpolation::{verify_multiplicity, CertaintyPolicy, Engine, EngineOptions, FatPointScheme};
use fatpoint::linalg::{rank_fraction_free, rank_mod, DenseMatrix, PrimeField};
use fatpoint::{alpha, alpha_sequence};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use super::*;

pub const CASES: u32 = 200;

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

fn engine(seed: u64) -> Engine {
    Engine::new(EngineOptions {
        policy: CertaintyPolicy::Certified,
        seed,
        ..EngineOptions::default()
    })
    .expect("valid options")
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// (a) Every computed α-sequence (≤ 8 points, m ≤ 5) satisfies the
/// inequalities, checked independently of the library's own audit.
pub fn alpha_sequence_inequalities(cases: u32) -> Result<(), String> {
    runner(0xA1, cases)
        .run(
            &(small_config(8, 4), 1usize..=5, any::<u64>()),
            |((_, cfg), m_max, seed)| {
                let seq = alpha_sequence(&engine(seed), &cfg, m_max).map_err(|e| fail(e.to_string()))?;
                prop_assert!(seq.all_certified());
                alpha_inequalities(seq.values()).map_err(fail)?;
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn random_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=7, 1usize..=7, 1usize..=7).prop_flat_map(|(r, k, c)| {
        // a product of an r×k and a k×c factor has rank ≤ k
        (
            prop::collection::vec(prop::collection::vec(-9i64..=9, k), r),
            prop::collection::vec(prop::collection::vec(-9i64..=9, c), k),
        )
            .prop_map(move |(b, cm)| {
                (0..r)
                    .map(|i| (0..c).map(|j| (0..k).map(|t| b[i][t] * cm[t][j]).sum()).collect())
                    .collect()
            })
    })
}

/// (b) Modular rank never exceeds rational rank; rational rank matches minor
/// bordering.
pub fn modular_rank_bounded(cases: u32) -> Result<(), String> {
    let primes = [3u64, 5, 7, 11, 13, 1_000_003, 2_147_483_647];
    runner(0xB2, cases)
        .run(&(random_matrix(), 0..primes.len()), |(rows, pi)| {
            let field = PrimeField::new(primes[pi]).expect("prime");
            let big = DenseMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
            )
            .expect("rectangular");
            let reduced = DenseMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| v.rem_euclid(primes[pi] as i64) as u64).collect())
                    .collect(),
            )
            .expect("rectangular");
            let rational = rank_fraction_free(&big);
            let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
            prop_assert_eq!(rational, rank_by_minors(&wide));
            prop_assert!(rank_mod(&reduced, field) <= rational);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// (c) Witnesses at `α(mZ)` pass `verify_multiplicity` and the Taylor oracle.
pub fn witnesses_verify(cases: u32) -> Result<(), String> {
    runner(0xC3, cases)
        .run(
            &(small_config(6, 5), 1usize..=4, any::<u64>()),
            |((_, cfg), m, seed)| {
                let e = engine(seed);
                let scheme = FatPointScheme::new(cfg.clone(), m).expect("m ≥ 1");
                let a = alpha(&e, &scheme).map_err(|e| fail(e.to_string()))?.value;
                let w = e
                    .witness(&scheme, a)
                    .map_err(|e| fail(e.to_string()))?
                    .ok_or_else(|| fail(format!("no witness at α = {a}")))?;
                prop_assert!(verify_multiplicity(&w, &scheme).expect("nonzero"));
                prop_assert!(form_vanishes(w.coeffs(), &integer_points(&cfg), m, a));
                let r = e.system_dimension(&scheme, a).map_err(|e| fail(e.to_string()))?;
                prop_assert!(r.dimension >= 1 && r.certified);
                let rw = r.witness.expect("certified positive dimension has a witness");
                prop_assert!(verify_multiplicity(&rw, &scheme).expect("nonzero"));
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// Points, line pairs, coefficients, spare lines, lines through each point.
type BezoutDraw = (Vec<[i64; 3]>, Vec<(usize, usize)>, Vec<i64>, i64, Vec<i64>);

fn bezout_input() -> impl Strategy<Value = BezoutDraw> {
    (
        prop::collection::vec(prop::array::uniform3(-4i64..=4), 2..=7),
        prop::collection::vec((0usize..7, 0usize..7), 1..=8),
        prop::collection::vec(0i64..=3, 1..=8),
        0i64..=4,
        prop::collection::vec(0i64..=2, 0..=7),
    )
}

/// (d) Reconstruction identity, the residual inequality and order
/// independence on realizable divisors.
pub fn bezout_invariants(cases: u32) -> Result<(), String> {
    runner(0xD4, cases)
        .run(
            &(bezout_input(), any::<u64>()),
            |((pts, pairs, coeffs, spare, through), seed)| {
                let Some((d, curves)) = realizable_bezout(&pts, &pairs, &coeffs, spare, &through) else {
                    return Err(TestCaseError::reject("degenerate points"));
                };
                let dec =
                    bezout_decompose(&d, &curves, ReductionOrder::Simultaneous).map_err(|e| fail(e.to_string()))?;
                prop_assert!(reconstruction_holds(&dec, &curves));
                prop_assert!(check_residual_inequality(&dec, &curves));
                prop_assert!(dec.residual.is_effective());
                let single =
                    bezout_decompose(&d, &curves, ReductionOrder::Single { seed }).map_err(|e| fail(e.to_string()))?;
                prop_assert!(reconstruction_holds(&single, &curves));
                prop_assert!(check_residual_inequality(&single, &curves));
                let report = confluence_test(&d, &curves, 5, seed).map_err(|e| fail(e.to_string()))?;
                prop_assert!(report.identical, "counterexamples: {:?}", report.counterexamples);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// (e) Engine dimensions equal the brute-force nullspace dimension for
/// `d ≤ 4`, `m ≤ 2`, `s ≤ 4`, under both policies.
pub fn brute_force_agreement(cases: u32) -> Result<(), String> {
    runner(0xE5, cases)
        .run(
            &(small_config(4, 2), 1usize..=2, 0usize..=4, any::<u64>()),
            |((pts, cfg), m, d, seed)| {
                let expected = brute_force_dimension(&pts, m, d);
                let scheme = FatPointScheme::new(cfg, m).expect("m ≥ 1");
                let certified = engine(seed)
                    .system_dimension(&scheme, d)
                    .map_err(|e| fail(e.to_string()))?;
                prop_assert_eq!(certified.dimension, expected);
                prop_assert!(certified.certified);
                let fast = Engine::new(EngineOptions {
                    policy: CertaintyPolicy::Fast,
                    seed,
                    ..EngineOptions::default()
                })
                .expect("valid options")
                .system_dimension(&scheme, d)
                .map_err(|e| fail(e.to_string()))?;
                prop_assert_eq!(fast.dimension, expected);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}
