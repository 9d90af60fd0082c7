//! The logarithmic 2-forms `omega_j = df ^ df_j / f_j` and their syzygy triples.

use std::collections::HashMap;

use crate::arrangement::Arrangement;
use crate::diffforms::{DifferentialForm, SyzygyTriple};
use crate::groebner::linalg;
use crate::polyring::{monomials_of_degree, FieldElement};

use super::{Check, ClosedFormError};

#[derive(Debug, Clone)]
pub struct OmegaBasis {
    /// `omega_1 .. omega_m`, each computed on its own.
    pub forms: Vec<DifferentialForm>,
    /// `-(omega_1 + .. + omega_{m-1})`, used in place of `omega_m`.
    pub omega_prime: DifferentialForm,
    /// Triples of `omega_1 .. omega_{m-1}`.
    pub triples: Vec<SyzygyTriple>,
    pub checks: Vec<Check>,
}

impl OmegaBasis {
    /// Triples of all `m` forms.
    pub fn all_triples(&self) -> Vec<SyzygyTriple> {
        self.forms
            .iter()
            .map(|w| SyzygyTriple::from_form(w).expect("2-forms in 3 variables"))
            .collect()
    }
}

/// Coordinates of triples of one degree in the monomial basis of `S_degree^3`.
pub fn triple_coordinates(triples: &[SyzygyTriple], degree: u32) -> Vec<Vec<FieldElement>> {
    let Some(first) = triples.first() else {
        return Vec::new();
    };
    let n = first.components().len();
    let field = first.components()[0].field();
    let basis = monomials_of_degree(first.components()[0].num_vars(), degree);
    let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    triples
        .iter()
        .map(|t| {
            let mut row = vec![field.zero(); n * basis.len()];
            for (k, c) in t.components().iter().enumerate() {
                for (m, a) in c.terms() {
                    if let Some(&i) = index.get(m) {
                        row[k * basis.len() + i] = a.clone();
                    }
                }
            }
            row
        })
        .collect()
}

fn first_failure(bad: &[usize]) -> Option<String> {
    bad.first().map(|j| format!("j={}", j + 1))
}

/// Builds `omega_j` by exact division and by the sum over `i != j`, and checks
/// that they agree, that all `omega_j` sum to zero, the contraction identity
/// and the independence of the triples in degree `d - 2`.
pub fn build_omega_basis(a: &Arrangement) -> Result<OmegaBasis, ClosedFormError> {
    if a.num_vars() != 3 {
        return Err(ClosedFormError::VariableCount(a.num_vars()));
    }
    let (n, field) = (a.num_vars(), a.field());
    let m = a.m();
    let f = a.product();
    let d = a.d() as i64;
    let df = DifferentialForm::differential(&f);
    let dfs: Vec<DifferentialForm> = a
        .factors()
        .iter()
        .map(DifferentialForm::differential)
        .collect();

    let mut forms = Vec::with_capacity(m);
    let mut disagree = Vec::new();
    for j in 0..m {
        let fj = &a.factors()[j];
        let by_division = df
            .wedge(&dfs[j])?
            .exact_div_poly(fj)
            .ok_or(ClosedFormError::DivisionFailed(j + 1))?;
        let mut by_sum = DifferentialForm::zero(n, field, 2);
        for i in (0..m).filter(|&i| i != j) {
            let cofactor = f
                .exact_div(&(&a.factors()[i] * fj))
                .ok_or(ClosedFormError::DivisionFailed(j + 1))?;
            by_sum = by_sum.checked_add(&dfs[i].wedge(&dfs[j])?.mul_poly(&cofactor))?;
        }
        if by_sum != by_division {
            disagree.push(j);
        }
        forms.push(by_division);
    }

    let mut total = DifferentialForm::zero(n, field, 2);
    for w in &forms {
        total = total.checked_add(w)?;
    }
    let mut omega_prime = DifferentialForm::zero(n, field, 2);
    for w in &forms[..m - 1] {
        omega_prime = omega_prime.checked_sub(w)?;
    }

    let mut contraction = Vec::new();
    for j in 0..m {
        let fj = &a.factors()[j];
        let ej = a.degrees()[j] as i64;
        let lhs = forms[j].mul_poly(fj).contract_euler();
        let rhs = dfs[j]
            .mul_poly(&f.scale(&field.from_i64(d)))
            .checked_sub(&df.mul_poly(&fj.scale(&field.from_i64(ej))))?;
        if lhs != rhs {
            contraction.push(j);
        }
    }

    let all: Vec<SyzygyTriple> = forms
        .iter()
        .map(SyzygyTriple::from_form)
        .collect::<Result<_, _>>()?;
    let bad_triples: Vec<usize> = (0..m)
        .filter(|&j| !all[j].is_syzygy_of(&f) || all[j].degree() != Some((d - 2) as u32))
        .collect();
    let triples = all[..m - 1].to_vec();
    let rank = linalg::rank(
        field,
        &triple_coordinates(&triples, (d - 2) as u32),
        3 * count(d - 2),
    );

    let checks = vec![
        Check::new(
            "omega: division and sum routes agree",
            disagree.is_empty(),
            first_failure(&disagree),
        ),
        Check::new(
            "omega: sum of all omega_j vanishes",
            total.is_zero(),
            (!total.is_zero()).then(|| total.to_string()),
        ),
        Check::new(
            "omega: contraction identity",
            contraction.is_empty(),
            first_failure(&contraction),
        ),
        Check::new(
            "omega: triples are syzygies of degree d-2",
            bad_triples.is_empty(),
            first_failure(&bad_triples),
        ),
        Check::new(
            "omega: triples independent in degree d-2",
            rank == m - 1,
            (rank != m - 1).then(|| format!("rank {rank}, expected {}", m - 1)),
        ),
    ];
    Ok(OmegaBasis {
        forms,
        omega_prime,
        triples,
        checks,
    })
}

fn count(degree: i64) -> usize {
    crate::polyring::count_monomials(3, degree) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Field;

    #[test]
    fn conic_and_axes() {
        let a = Arrangement::parse_factors(&["x", "y", "z", "x^2+y^2+z^2"], 3, Field::Rational)
            .unwrap();
        let b = build_omega_basis(&a).unwrap();
        assert!(b.checks.iter().all(|c| c.pass), "{:?}", b.checks);
        assert_eq!(b.triples.len(), 3);
        assert!(b.triples.iter().all(|t| t.degree() == Some(3)));
        assert!(!b.forms[3].is_zero());
        assert_eq!(b.omega_prime, b.forms[3]);
    }
}
