#![allow(dead_code)]

use nodal_syzygy::arrangement::{validate, Arrangement};
use nodal_syzygy::polyring::{monomials_of_degree, Field, FieldElement, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u32 = 32003;

pub fn fp() -> Field {
    Field::Prime(P)
}

pub fn arr(texts: &[&str], field: Field) -> Arrangement {
    Arrangement::parse_factors(texts, 3, field).unwrap()
}

pub fn random_form(rng: &mut ChaCha8Rng, degree: u32, field: Field) -> Polynomial {
    Polynomial::from_terms(
        3,
        field,
        monomials_of_degree(3, degree)
            .into_iter()
            .map(|m| (m, field.from_i64(rng.gen_range(-5..=5)))),
    )
}

/// A validated arrangement with `m` in `4..=6` and degrees at most 3.
pub fn random_validated(seed: u64, field: Field) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = rng.gen_range(4..=6);
        let factors: Vec<Polynomial> = (0..m)
            .map(|_| {
                let e = rng.gen_range(1..=3);
                random_form(&mut rng, e, field)
            })
            .collect();
        if factors
            .iter()
            .any(|f| f.is_zero() || f.homogeneous_degree().is_none())
        {
            continue;
        }
        let Ok(a) = Arrangement::new(factors) else {
            continue;
        };
        if validate(&a).unwrap().overall {
            return a;
        }
    }
}

/// Random invertible matrix with small entries.
pub fn random_gl3(seed: u64, field: Field) -> Vec<Vec<FieldElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<FieldElement>> = (0..3)
            .map(|_| {
                (0..3)
                    .map(|_| field.from_i64(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        if nodal_syzygy::arrangement::invert(&m, field).is_some() {
            return m;
        }
    }
}

pub fn diagonal_conics() -> [&'static str; 4] {
    [
        "x^2+2*y^2+3*z^2",
        "x^2+4*y^2+9*z^2",
        "x^2+8*y^2+27*z^2",
        "x^2+16*y^2+81*z^2",
    ]
}

pub fn nodal_cubic_and_conics() -> [&'static str; 4] {
    [
        "x^3+y^3-3*x*y*z",
        "x^2+2*y^2+3*z^2",
        "x^2+4*y^2+9*z^2",
        "x^2+8*y^2+27*z^2",
    ]
}
