//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so every line is printed even when
//! output capture is on. Exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lambert_parity::harness::ENTRY29_TRIPLES;
use lambert_parity::oracle::{
    oracle_divisor_lambert, oracle_divisor_lambert_signed, oracle_expand, oracle_partitions,
};
use lambert_parity::report::ReportRecord;
use lambert_parity::{
    bilateral_sum, check_identity, entry29_rhs, lambert_sum, named_series, phi, pochhammer,
    sign_resolve, BilateralTerm, IdentityId, IdentityReport, LambertSpec, MulAlgorithm, SeriesId,
    Sign, SignedMonomial, Status, TruncatedSeries,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verified(id: IdentityId, order: usize) -> IdentityReport {
    let report = check_identity(id, order).unwrap_or_else(|e| panic!("{id}: {e}"));
    assert!(report.status.passed(), "{id} at order {order}: {report:?}");
    assert_eq!(report.order_checked, order);
    report
}

fn strictly_verified(id: IdentityId, order: usize) -> IdentityReport {
    let report = verified(id, order);
    assert_eq!(report.status, Status::Verified, "{id}");
    report
}

fn parity_through_1999() -> String {
    let start = Instant::now();
    let report = strictly_verified(IdentityId::I10Conj1Parity, 2000);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    let y = named_series(SeriesId::YDef, 2000);
    assert!(y.parity().is_odd());
    assert!((0..2000).step_by(2).all(|n| y.coeff(n) == &BigInt::from(0)));
    format!(
        "Y_DEF odd through q^1999 in {:.2}s",
        report.elapsed.as_secs_f64()
    )
}

fn triple_agreement() -> String {
    strictly_verified(IdentityId::I1YEq2, 1000);
    strictly_verified(IdentityId::I2YEq1, 1000);
    let ys = [SeriesId::YDef, SeriesId::YEq1, SeriesId::YEq2].map(|id| named_series(id, 1000));
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(
                ys[i].compare(&ys[j], 1000).unwrap().is_equal(),
                "routes {i} and {j}"
            );
        }
    }
    "Y_DEF = Y_EQ1 = Y_EQ2 through q^999".into()
}

fn b1_is_a_at_minus_q() -> String {
    strictly_verified(IdentityId::I4Lemma1, 1000);
    let a = named_series(SeriesId::A, 1000);
    assert_eq!(named_series(SeriesId::B1, 1000), a.compose_sign());
    "B1(q) = A(-q) through q^999".into()
}

fn d1_minus_d2_and_signs() -> String {
    let s7 = sign_resolve(IdentityId::I7SEqQPhi, 1000).unwrap();
    let s8 = sign_resolve(IdentityId::I8SumDifference, 1000).unwrap();
    assert_eq!(s7.sign * s8.sign, Sign::Plus);
    assert_eq!((s7.sign, s8.sign), (Sign::Minus, Sign::Minus));
    for id in [IdentityId::I7SEqQPhi, IdentityId::I8SumDifference] {
        let report = verified(id, 1000);
        assert_eq!(report.status, Status::VerifiedWithSignFlip);
        let record = ReportRecord::from_report(&report);
        assert_eq!(record.resolved_sign, Some(-1));
    }
    strictly_verified(IdentityId::I9Lemma2, 1000);
    format!(
        "D1 - D2 = q PHI L3 through q^999; signs {} (witness q^{}) and {} (witness q^{})",
        s7.sign, s7.witness, s8.sign, s8.witness
    )
}

fn oracle_equivalence() -> String {
    for id in [
        SeriesId::YDef,
        SeriesId::Z,
        SeriesId::A,
        SeriesId::B,
        SeriesId::B1,
    ] {
        let expected = oracle_expand(id, 300).unwrap();
        let built = named_series(id, 300);
        let cmp = built.compare(&expected, 300).unwrap();
        assert!(cmp.is_equal(), "{id}: {cmp:?}");
    }
    let y = named_series(SeriesId::YDef, 300);
    let low: Vec<BigInt> = (3..6).map(|n| y.coeff(n).clone()).collect();
    assert_eq!(low, [-1, 0, -2].map(BigInt::from));
    "Y_DEF, Z, A, B, B1 match lattice oracle through q^299; Y_DEF q^3..q^5 = -1, 0, -2".into()
}

fn structural() -> String {
    for id in [
        IdentityId::I3ZEqAPlusB,
        IdentityId::I5D1Decomp,
        IdentityId::I6D2Forms,
    ] {
        strictly_verified(id, 1000);
    }
    "Z = A + B, D1 = Y + Z, D2 = B + B1 = product, Y = D1 - D2 - A + B1 through q^999".into()
}

fn entry29_instances() -> String {
    strictly_verified(IdentityId::I13Entry29Instance, 500);
    assert!(ENTRY29_TRIPLES.len() >= 5);
    for t in ENTRY29_TRIPLES {
        let lhs = bilateral_sum(t.x, t.y, t.base, 500).unwrap();
        let rhs = entry29_rhs(t.x, t.y, t.base, 500).unwrap();
        assert_eq!(lhs, rhs, "{t}");
    }
    let first = ENTRY29_TRIPLES[0];
    assert_eq!(
        (first.x, first.y, first.base),
        (SignedMonomial::minus(1), SignedMonomial::plus(1), 2)
    );
    assert_eq!(
        bilateral_sum(first.x, first.y, 2, 500).unwrap(),
        phi(500).scale(2)
    );
    format!(
        "{} triples agree through q^499, (-q, +q, 2) gives 2 PHI",
        ENTRY29_TRIPLES.len()
    )
}

fn bilateral_halving() -> String {
    let order = 500;
    strictly_verified(IdentityId::I12BilateralHalving, order);
    let term = BilateralTerm::S_TERM;
    let mut two_sided = TruncatedSeries::zero(order);
    let mut one_sided = TruncatedSeries::zero(order);
    for m in 1..=200i64 {
        term.add_term(m, Sign::Plus, &mut two_sided).unwrap();
        term.add_term(1 - m, Sign::Plus, &mut two_sided).unwrap();
        term.add_term(m, Sign::Plus, &mut one_sided).unwrap();
        assert_eq!(two_sided, one_sided.scale(2), "window M = {m}");
    }
    "window [1-M, M] = 2 [1, M] for M = 1..=200".into()
}

fn y_equals_d2_minus_d1() -> String {
    let report = strictly_verified(IdentityId::I11Conj2, 2000);
    assert_eq!(report.annotation(), Some("unproven conjecture"));
    let record = ReportRecord::from_report(&report);
    assert_eq!(record.annotation.as_deref(), Some("unproven conjecture"));
    "Y_DEF = D2 - D1 through q^1999 (unproven conjecture)".into()
}

fn small_series(order: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TruncatedSeries> {
    order.prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n).prop_map(|c| TruncatedSeries::from_i64s(&c).unwrap())
    })
}

fn ring_triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    (1usize..=64).prop_flat_map(|n| {
        let one = || {
            prop::collection::vec(-9i64..=9, n)
                .prop_map(|c| TruncatedSeries::from_i64s(&c).unwrap())
        };
        (one(), one(), one())
    })
}

fn runner_config() -> Config {
    Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    }
}

fn substrate() -> String {
    let mut runner = TestRunner::new(runner_config());
    runner
        .run(&ring_triple(), |(f, g, h)| {
            let n = f.order();
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &TruncatedSeries::one(n), f.clone());
            prop_assert!((&f + &(-&f)).is_zero());
            let m = n.div_ceil(2);
            prop_assert_eq!((&f * &g).truncate(m), &f.truncate(m) * &g.truncate(m));
            prop_assert_eq!(f.mul_with(&g, MulAlgorithm::Karatsuba), &f * &g);
            Ok(())
        })
        .unwrap();

    let mut runner = TestRunner::new(runner_config());
    let unit = (small_series(1..=64), prop::bool::ANY).prop_map(|(mut f, negative)| {
        let mut c = f.coeffs().to_vec();
        c[0] = BigInt::from(if negative { -1 } else { 1 });
        f = TruncatedSeries::from_coeffs(c).unwrap();
        f
    });
    runner
        .run(&unit, |f| {
            let inv = f.invert().unwrap();
            let one = TruncatedSeries::one(f.order());
            prop_assert_eq!(&f * &inv, one.clone());
            prop_assert_eq!(&inv * &f, one);
            Ok(())
        })
        .unwrap();

    let n = 500;
    let partitions = pochhammer(SignedMonomial::plus(1), 1, n)
        .unwrap()
        .invert()
        .unwrap();
    assert_eq!(partitions, oracle_partitions(1, 1, n));
    let even_two_colored = pochhammer(SignedMonomial::plus(2), 2, n)
        .unwrap()
        .pow(2)
        .invert()
        .unwrap();
    assert_eq!(even_two_colored, oracle_partitions(2, 2, n));
    assert_eq!(
        lambert_sum(&LambertSpec::L1, n).unwrap(),
        oracle_divisor_lambert(Sign::Minus, 1, n)
    );
    assert_eq!(
        lambert_sum(&LambertSpec::L3, n).unwrap(),
        -&oracle_divisor_lambert(Sign::Minus, 2, n)
    );
    for t in 1..=3 {
        for (num_sign, den_sign) in [
            (Sign::Plus, Sign::Plus),
            (Sign::Minus, Sign::Minus),
            (Sign::Plus, Sign::Minus),
        ] {
            let spec = LambertSpec {
                scale: 1,
                num_sign,
                num_offset: 0,
                num_step: t,
                den_sign,
                den_offset: 0,
                den_step: t,
            };
            let expected = oracle_divisor_lambert_signed(num_sign, den_sign, t as usize, n);
            assert_eq!(lambert_sum(&spec, n).unwrap(), expected, "{spec:?}");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    let mut operand = || {
        let c: Vec<i64> = (0..4096).map(|_| rng.gen_range(-9..=9)).collect();
        TruncatedSeries::from_i64s(&c).unwrap()
    };
    let (f, g) = (operand(), operand());
    let start = Instant::now();
    let product = f.mul(&g);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "mul took {elapsed:?}");
    assert_eq!(product.order(), 4096);
    format!(
        "ring axioms and invert over 1000 cases each; partition/divisor oracles through q^499; mul@4096 {:.1}ms",
        elapsed.as_secs_f64() * 1e3
    )
}

type Criterion = (&'static str, fn() -> String);

const CRITERIA: [Criterion; 10] = [
    ("parity", parity_through_1999),
    ("triple agreement", triple_agreement),
    ("B1 = A(-q)", b1_is_a_at_minus_q),
    ("D1 - D2 = q PHI L3", d1_minus_d2_and_signs),
    ("oracle equivalence", oracle_equivalence),
    ("structural identities", structural),
    ("bilateral summation instances", entry29_instances),
    ("bilateral halving", bilateral_halving),
    ("Y = D2 - D1 evidence", y_equals_d2_minus_d1),
    ("arithmetic substrate", substrate),
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, criterion)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS {:>2} {name} ({secs:.2}s): {summary}", i + 1),
            Err(payload) => {
                failures += 1;
                let message = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panic");
                println!("FAIL {:>2} {name} ({secs:.2}s): {message}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failures,
        CRITERIA.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
