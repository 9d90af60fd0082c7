mod common;

use common::*;
use nodal_syzygy::arrangement::validate;
use nodal_syzygy::closedform::{
    count_identity, generator_count, predict_from_degrees, verify_arrangement, Mode, OracleChoice,
    Outcome, VerifyOptions,
};
use nodal_syzygy::polyring::Field;
use proptest::prelude::*;

fn engine_only(mode: Mode) -> VerifyOptions {
    VerifyOptions {
        mode,
        oracle: OracleChoice::Groebner,
        ..VerifyOptions::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_arrangements_verify(seed in any::<u64>()) {
        let a = random_validated(seed, fp());
        let r = verify_arrangement(&a, &engine_only(Mode::Verify)).unwrap();
        let failed: Vec<_> = r.failed_checks().iter().map(|c| (c.name.clone(), c.witness.clone())).collect();
        prop_assert_eq!(r.outcome, Outcome::Verified, "{:?}", failed);
        prop_assert_eq!(r.computed_exponents.degrees().last().copied().unwrap(), r.degree as i64 - 1 - i64::from(r.lines >= 3));
    }

    #[test]
    fn exponents_survive_coordinate_changes(seed in any::<u64>()) {
        let a = random_validated(seed, fp());
        let moved = a.substitute(&random_gl3(seed ^ 0x5eed, fp())).unwrap();
        let opts = engine_only(Mode::ExponentsOnly);
        let before = verify_arrangement(&a, &opts).unwrap();
        let after = verify_arrangement(&moved, &opts).unwrap();
        prop_assert_eq!(before.computed_exponents, after.computed_exponents);
        prop_assert_eq!(after.outcome, Outcome::Verified);
    }
}

proptest! {
    #[test]
    fn count_identity_holds(m in 2usize..200) {
        prop_assert!(count_identity(m).pass);
    }

    #[test]
    fn predicted_generator_count(degrees in prop::collection::vec(1u32..=4, 4..=9)) {
        let l = degrees.iter().filter(|&&e| e == 1).count();
        let p = predict_from_degrees(&degrees);
        prop_assert_eq!(p.exponents.len(), generator_count(degrees.len(), l));
        let d: i64 = degrees.iter().map(|&e| e as i64).sum();
        prop_assert!(p.exponents.degrees().iter().all(|&x| x == d - 2 || x == d - 1));
        prop_assert_eq!(p.relation_degrees.len(), degrees.len() - l.min(3));
        if let Some(eps) = p.epsilon {
            prop_assert_eq!(eps.iter().sum::<i64>(), d - 3);
        }
    }
}

#[test]
fn tangent_conics_are_rejected() {
    let a = arr(&["x", "z", "x^2+y^2-z^2", "x^2+2*y^2-z^2"], Field::Rational);
    let r = verify_arrangement(&a, &VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::HypothesesViolated);
    assert!(
        r.hypotheses.iter().any(|h| h.contains("tangency point")),
        "{:?}",
        r.hypotheses
    );
    assert!(r.predicted_exponents.is_none());
}

#[test]
fn five_conics_exponents() {
    let a = arr(
        &[
            "x^2+2*y^2+3*z^2",
            "x^2+4*y^2+9*z^2",
            "x^2+8*y^2+27*z^2",
            "x^2+16*y^2+81*z^2",
            "x^2+32*y^2+243*z^2",
        ],
        fp(),
    );
    assert!(validate(&a).unwrap().overall);
    let r = verify_arrangement(&a, &VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Verified);
    assert_eq!(r.computed_exponents.degrees(), &[8, 8, 8, 8, 9, 9, 9]);
}

#[test]
fn two_lines_with_conics_of_mixed_degree() {
    // m = 4, e = (1, 1, 2, 2): exponents (4, 4, 4, 5)
    let a = arr(
        &["x", "y", "x^2+y^2+z^2", "x^2+2*y^2+3*z^2"],
        Field::Rational,
    );
    let r = verify_arrangement(&a, &VerifyOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.failed_checks());
    assert_eq!(r.computed_exponents.degrees(), &[4, 4, 4, 5]);
}

#[test]
fn unnormalized_lines_still_give_exponents() {
    let a = arr(
        &["x+y+z", "x-y+2*z", "x^2+2*y^2+3*z^2", "x^2+4*y^2+9*z^2"],
        fp(),
    );
    let opts = VerifyOptions {
        normalize: false,
        ..VerifyOptions::default()
    };
    let raw = verify_arrangement(&a, &opts).unwrap();
    let normalized = verify_arrangement(&a, &VerifyOptions::default()).unwrap();
    assert_eq!(raw.computed_exponents, normalized.computed_exponents);
    assert_eq!(raw.betti_computed, normalized.betti_computed);
    assert_eq!(normalized.outcome, Outcome::Verified);
    assert!(normalized
        .checks
        .iter()
        .any(|c| c.name == "relations: each rho_j vanishes"));
    assert!(!raw
        .checks
        .iter()
        .any(|c| c.name == "relations: each rho_j vanishes"));
}

#[test]
fn dense_oracle_alone() {
    let a = arr(&["x", "y", "z", "x^2+y^2+z^2"], Field::Rational);
    let opts = VerifyOptions {
        oracle: OracleChoice::LinearAlgebra,
        ..VerifyOptions::default()
    };
    let r = verify_arrangement(&a, &opts).unwrap();
    assert_eq!(r.computed_exponents.degrees(), &[3, 3, 3]);
    assert!(r.betti_computed.is_none());
    assert_eq!(r.outcome, Outcome::Verified);
}
