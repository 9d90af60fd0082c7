//! The generator roster of each case and the relations `rho_j` among it.

use crate::arrangement::Arrangement;
use crate::diffforms::{koszul_forms, DifferentialForm, SyzygyTriple};
use crate::groebner::{syzygy_module, FreeModuleElement, GradedModuleMap, GroebnerBasis};
use crate::polyring::{Polynomial, VAR_NAMES};

use super::omega::OmegaBasis;
use super::predict::Case;
use super::{Check, ClosedFormError};

/// Generators `omega_1 .. omega_{m-1}` followed by the Koszul forms
/// `omega^u = df ^ du` of the axes not taken by lines.
#[derive(Debug, Clone)]
pub struct Roster {
    pub names: Vec<String>,
    pub forms: Vec<DifferentialForm>,
    pub triples: Vec<SyzygyTriple>,
    /// Triple degrees.
    pub degrees: Vec<i64>,
}

impl Roster {
    /// The map `S^roster -> S^3` sending each basis vector to its triple.
    pub fn as_map(&self) -> Result<GradedModuleMap, ClosedFormError> {
        let columns = self
            .triples
            .iter()
            .map(|t| FreeModuleElement::new(t.components().to_vec(), vec![0; t.components().len()]))
            .collect::<Result<Vec<_>, _>>()?;
        let first = &self.triples[0].components()[0];
        Ok(GradedModuleMap::new(
            vec![0; 3],
            self.degrees.clone(),
            columns,
            first.num_vars(),
            first.field(),
        )?)
    }
}

/// Number of leading factors that must be the coordinate lines `x, y, z`.
fn axis_lines(a: &Arrangement) -> Result<usize, ClosedFormError> {
    let k = Case::from_line_count(a.line_count()).axis_lines();
    let ok = (0..k).all(|u| a.factors()[u].monic() == Polynomial::var(u, a.num_vars(), a.field()));
    if ok {
        Ok(k)
    } else {
        Err(ClosedFormError::NotNormalized)
    }
}

pub fn roster(a: &Arrangement, omega: &OmegaBasis) -> Result<Roster, ClosedFormError> {
    let k = axis_lines(a)?;
    let m = a.m();
    let d = a.d() as i64;
    let mut names: Vec<String> = (1..m).map(|j| format!("omega_{j}")).collect();
    let mut forms = omega.forms[..m - 1].to_vec();
    let mut triples = omega.triples.clone();
    let mut degrees = vec![d - 2; m - 1];
    for (u, (form, triple)) in koszul_forms(&a.product()).into_iter().enumerate().skip(k) {
        names.push(format!("omega^{}", VAR_NAMES[u]));
        forms.push(form);
        triples.push(triple);
        degrees.push(d - 1);
    }
    Ok(Roster {
        names,
        forms,
        triples,
        degrees,
    })
}

#[derive(Debug, Clone)]
pub struct Relations {
    pub roster: Roster,
    /// `(j, rho_j)` with `j` the 0-based factor index.
    pub relations: Vec<(usize, FreeModuleElement)>,
    pub matrix: GradedModuleMap,
    pub checks: Vec<Check>,
}

/// `rho_j = f_j omega_j - sum_u (x_u f_{j,u} omega_u  or  f_{j,u} omega^u)`, with
/// `omega_m` replaced by `-(omega_1 + .. + omega_{m-1})`. The first term uses
/// the line `omega_u` when the `u`-th axis is a component. Relations for
/// the axis lines themselves are trivial and skipped.
pub fn build_relations(a: &Arrangement, omega: &OmegaBasis) -> Result<Relations, ClosedFormError> {
    let roster = roster(a, omega)?;
    let k = axis_lines(a)?;
    let (n, field, m) = (a.num_vars(), a.field(), a.m());
    let zero = Polynomial::zero(n, field);

    let mut relations = Vec::new();
    let mut failed = Vec::new();
    for j in k..m {
        let fj = &a.factors()[j];
        let mut coords = vec![zero.clone(); roster.names.len()];
        if j + 1 < m {
            coords[j] = fj.clone();
        } else {
            for c in coords.iter_mut().take(m - 1) {
                *c = -fj;
            }
        }
        for (u, g) in fj.gradient().into_iter().enumerate() {
            if u < k {
                let xu = Polynomial::var(u, n, field);
                coords[u] = &coords[u] - &(&xu * &g);
            } else {
                let slot = m - 1 + u - k;
                coords[slot] = &coords[slot] - &g;
            }
        }
        let mut value = DifferentialForm::zero(n, field, 2);
        for (c, w) in coords.iter().zip(&roster.forms) {
            value = value.checked_add(&w.mul_poly(c))?;
        }
        if !value.is_zero() {
            failed.push(j);
        }
        relations.push((j, FreeModuleElement::new(coords, roster.degrees.clone())?));
    }

    let matrix = GradedModuleMap::from_columns(
        roster.degrees.clone(),
        relations.iter().map(|(_, r)| r.clone()).collect(),
        n,
        field,
    )?;
    let second = syzygy_module(&matrix)?;
    let checks = vec![
        Check::new(
            "relations: each rho_j vanishes",
            failed.is_empty(),
            failed.first().map(|j| format!("rho_{}", j + 1)),
        ),
        Check::new(
            "relations: relation matrix is minimal",
            matrix.is_minimal(),
            None,
        ),
        Check::new(
            "relations: relation matrix has no syzygies",
            second.num_cols() == 0,
            (second.num_cols() > 0).then(|| format!("{} second syzygies", second.num_cols())),
        ),
    ];
    Ok(Relations {
        roster,
        relations,
        matrix,
        checks,
    })
}

/// The `rho_j` and the syzygies of the roster generate the same module.
pub fn relations_generate(rel: &Relations) -> Result<Check, ClosedFormError> {
    let map = rel.roster.as_map()?;
    let syz = syzygy_module(&map)?;
    let (n, field) = (map.num_vars(), map.field());
    let twists = rel.roster.degrees.clone();
    let rho: Vec<FreeModuleElement> = rel.relations.iter().map(|(_, r)| r.clone()).collect();
    let by_rho = GroebnerBasis::compute(&rho, &twists, n, field)?;
    let by_syz = GroebnerBasis::compute(syz.columns(), &twists, n, field)?;
    let mut witness = None;
    for (i, s) in syz.columns().iter().enumerate() {
        if !by_rho.contains(s)? {
            witness = Some(format!("roster syzygy {} not generated by rho", i + 1));
            break;
        }
    }
    if witness.is_none() {
        for (j, r) in &rel.relations {
            if !by_syz.contains(r)? {
                witness = Some(format!("rho_{} is not a roster syzygy", j + 1));
                break;
            }
        }
    }
    Ok(Check::new(
        "relations: rho_j generate the roster syzygies",
        witness.is_none(),
        witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::build_omega_basis;
    use crate::polyring::Field;

    fn run(texts: &[&str]) -> Relations {
        let a = Arrangement::parse_factors(texts, 3, Field::Rational).unwrap();
        build_relations(&a, &build_omega_basis(&a).unwrap()).unwrap()
    }

    #[test]
    fn axes_and_conic() {
        let r = run(&["x", "y", "z", "x^2+y^2+z^2"]);
        assert_eq!(r.relations.len(), 1);
        assert!(r.checks.iter().all(|c| c.pass), "{:?}", r.checks);
        assert_eq!(r.matrix.source_twists(), &[5]);
        assert!(relations_generate(&r).unwrap().pass);
    }

    #[test]
    fn one_line() {
        let r = run(&["x", "x^2+2*y^2+3*z^2", "x^2+4*y^2+9*z^2", "y^2+x*z+z^2"]);
        assert_eq!(
            r.roster.names,
            vec!["omega_1", "omega_2", "omega_3", "omega^y", "omega^z"]
        );
        assert_eq!(r.relations.len(), 3);
        assert!(r.checks.iter().all(|c| c.pass), "{:?}", r.checks);
        assert!(relations_generate(&r).unwrap().pass);
    }

    #[test]
    fn unnormalized_frame_is_refused() {
        let a = Arrangement::parse_factors(
            &["x+y", "x^2+y^2+z^2", "x^2+2*y^2+3*z^2", "x^2+4*y^2+9*z^2"],
            3,
            Field::Rational,
        )
        .unwrap();
        let b = build_omega_basis(&a).unwrap();
        assert!(matches!(
            build_relations(&a, &b),
            Err(ClosedFormError::NotNormalized)
        ));
    }
}
