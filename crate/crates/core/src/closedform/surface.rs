//! Experimental runs for surface arrangements in four variables.

use serde::Serialize;

use crate::arrangement::{validate, Arrangement, GenericityReport};
use crate::groebner::{graded_kernel_oracle, ExponentVector, OracleTable};
use crate::polyring::{Field, Monomial, Polynomial};

use super::verify::{oracle_checks, run_engine, OracleChoice};
use super::{Check, ClosedFormError};

/// `x^p + 2^j y^p + 3^j z^p + 4^j w^p` for `j = 1..m`.
pub fn surface_family(m: usize, p: u16, field: Field) -> Result<Arrangement, ClosedFormError> {
    let factors = (1..=m as u32)
        .map(|j| {
            Polynomial::from_terms(
                4,
                field,
                (0..4).map(|u| {
                    let mut e = [0u16; 4];
                    e[u] = p;
                    (Monomial::new(&e), field.from_i64((u as i64 + 1).pow(j)))
                }),
            )
        })
        .collect();
    Ok(Arrangement::new(factors)?)
}

/// `(d-3)_{(m-1)(m-2)/2} (d-2)_{4(m-1)} (d-1)_6`.
pub fn surface_formula(m: usize, d: i64) -> ExponentVector {
    let mut v = vec![d - 3; (m - 1) * (m - 2) / 2];
    v.extend(vec![d - 2; 4 * (m - 1)]);
    v.extend(vec![d - 1; 6]);
    ExponentVector::new(v)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `(m-1)(m-2)/2 + 4(m-1) + 6 = binom(m+3, 2)`.
pub fn count_identity(m: usize) -> Check {
    let m = m as u64;
    let (a, b, c) = ((m - 1) * (m - 2) / 2, 4 * (m - 1), 6);
    let total = binomial(m + 3, 2);
    Check::new(
        format!("count identity m={m}"),
        a + b + c == total,
        Some(format!(
            "{a}+{b}+{c} = {} vs binom({}, 2) = {total}",
            a + b + c,
            m + 3
        )),
    )
}

#[derive(Debug, Clone)]
pub struct SurfaceOptions {
    pub oracle: OracleChoice,
    /// Run the normal crossing checks (slow).
    pub full_check: bool,
    /// Highest degree for the dense oracle; `d - 1` when unset.
    pub degree_cap: Option<i64>,
    pub cell_budget: u64,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        SurfaceOptions {
            oracle: OracleChoice::Groebner,
            full_check: false,
            degree_cap: None,
            cell_budget: crate::groebner::DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurfaceReport {
    pub components: usize,
    pub degree: u32,
    pub field: String,
    pub predicted_exponents: ExponentVector,
    /// `None` when only a partial oracle table is available.
    pub computed_exponents: Option<ExponentVector>,
    pub matches_formula: Option<bool>,
    pub checks: Vec<Check>,
    pub genericity: Option<GenericityReport>,
    pub oracle: Option<OracleTable>,
    pub partial: bool,
    pub experimental: bool,
    pub notes: Vec<String>,
}

/// Jacobian syzygy degrees of a surface arrangement against the formula.
pub fn surface_run(
    a: &Arrangement,
    opts: &SurfaceOptions,
) -> Result<SurfaceReport, ClosedFormError> {
    if a.num_vars() != 4 {
        return Err(ClosedFormError::VariableCount(a.num_vars()));
    }
    let f = a.product();
    let d = a.d() as i64;
    let m = a.m();
    let predicted = surface_formula(m, d);
    let cap = opts.degree_cap.unwrap_or(d - 1);

    let genericity = opts.full_check.then(|| validate(a)).transpose()?;
    let (engine, oracle) = rayon::join(
        || {
            opts.oracle
                .engine()
                .then(|| run_engine(&f, false))
                .transpose()
        },
        || {
            opts.oracle
                .dense()
                .then(|| graded_kernel_oracle(&f, cap, opts.cell_budget))
                .transpose()
        },
    );
    let (engine, oracle) = (engine?, oracle?);

    let mut notes = vec!["surface arrangement: results are experimental".to_string()];
    let mut checks = vec![count_identity(m)];
    if let Some(g) = &genericity {
        checks.push(Check::new(
            "hypotheses: normal crossings",
            g.overall,
            g.failures().into_iter().next(),
        ));
    } else {
        notes.push("normal crossing checks not run (full check disabled)".into());
    }
    let partial = oracle.as_ref().is_some_and(|o| o.is_partial());
    let computed = match (&engine, &oracle) {
        (Some(e), _) => Some(e.exponents.clone()),
        (None, Some(o)) if !o.is_partial() && cap >= d - 1 => Some(o.exponents()),
        _ => None,
    };
    if let (Some(e), Some(o)) = (&engine, &oracle) {
        checks.extend(oracle_checks(e, o));
    }
    if partial {
        notes.push("dense oracle ran out of budget: partial dimensions only".into());
    }
    let matches = computed.as_ref().map(|c| c == &predicted);
    if let Some(ok) = matches {
        checks.push(Check::new(
            "exponents match formula",
            ok,
            (!ok).then(|| {
                format!(
                    "formula {predicted}, computed {}",
                    computed.as_ref().unwrap()
                )
            }),
        ));
    }
    Ok(SurfaceReport {
        components: m,
        degree: a.d(),
        field: a.field().label(),
        predicted_exponents: predicted,
        computed_exponents: computed,
        matches_formula: matches,
        checks,
        genericity,
        oracle,
        partial,
        experimental: true,
        notes,
    })
}

/// The family `x^p + 2^j y^p + 3^j z^p + 4^j w^p`, `m` in 5..=7, `p` in 2..=5.
pub fn surface_experiment(
    m: usize,
    p: u16,
    field: Field,
    opts: &SurfaceOptions,
) -> Result<SurfaceReport, ClosedFormError> {
    if !(5..=7).contains(&m) || !(2..=5).contains(&p) {
        return Err(ClosedFormError::OutOfRange(format!(
            "m={m}, p={p}; need m in 5..=7 and p in 2..=5"
        )));
    }
    surface_run(&surface_family(m, p, field)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for m in 5..=7 {
            assert!(count_identity(m).pass);
        }
        assert_eq!(
            count_identity(6).witness.unwrap(),
            "10+20+6 = 36 vs binom(9, 2) = 36"
        );
        assert_eq!(surface_formula(5, 10).notation(), "(7)_6(8)_16(9)_6");
        assert_eq!(surface_formula(5, 15).notation(), "(12)_6(13)_16(14)_6");
    }

    #[test]
    fn out_of_range() {
        assert!(surface_experiment(4, 2, Field::Prime(32003), &SurfaceOptions::default()).is_err());
    }
}
