//! Curve (and surface) arrangements `f = f_1 ... f_m` and the checks that
//! make them nodal with smooth components.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::groebner::{
    is_artinian_quotient, linalg, syzygy_module, GradedModuleMap, GroebnerError,
};
use crate::polyring::{parse, Field, FieldElement, Monomial, ParseError, Polynomial, VAR_NAMES};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArrangementError {
    #[error("need at least 4 components, got {0}")]
    TooFewComponents(usize),
    #[error("factor {0} is not homogeneous of positive degree")]
    NotHomogeneous(usize),
    #[error("factors {0} and {1} are proportional")]
    RepeatedFactor(usize, usize),
    #[error("factors live over different rings")]
    RingMismatch,
    #[error("only 3 or 4 variables are supported, got {0}")]
    VariableCount(usize),
    #[error("variables must be x, y, z (and w), got {0:?}")]
    Variables(Vec<String>),
    #[error("bad characteristic: {0}")]
    Characteristic(String),
    #[error("factor {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("invalid arrangement file: {0}")]
    Json(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// On-disk form: `{"variables": ["x","y","z"], "characteristic": 0, "factors": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub variables: Vec<String>,
    pub characteristic: u64,
    pub factors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    factors: Vec<Polynomial>,
    num_vars: usize,
    field: Field,
}

impl Arrangement {
    pub fn new(factors: Vec<Polynomial>) -> Result<Arrangement, ArrangementError> {
        let first = factors
            .first()
            .ok_or(ArrangementError::TooFewComponents(0))?;
        let (num_vars, field) = (first.num_vars(), first.field());
        if !(3..=4).contains(&num_vars) {
            return Err(ArrangementError::VariableCount(num_vars));
        }
        if factors.len() < 4 {
            return Err(ArrangementError::TooFewComponents(factors.len()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.num_vars() != num_vars || f.field() != field {
                return Err(ArrangementError::RingMismatch);
            }
            if !matches!(f.homogeneous_degree(), Some(e) if e >= 1) {
                return Err(ArrangementError::NotHomogeneous(i));
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if factors[i].monic() == factors[j].monic() {
                    return Err(ArrangementError::RepeatedFactor(i, j));
                }
            }
        }
        Ok(Arrangement {
            factors,
            num_vars,
            field,
        })
    }

    pub fn parse_factors(
        texts: &[&str],
        num_vars: usize,
        field: Field,
    ) -> Result<Arrangement, ArrangementError> {
        let factors = texts
            .iter()
            .enumerate()
            .map(|(index, t)| {
                parse(t, num_vars, field)
                    .map_err(|source| ArrangementError::Parse { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(factors)
    }

    /// Reads the JSON file format; `field` overrides the file's characteristic.
    pub fn from_json(text: &str, field: Option<Field>) -> Result<Arrangement, ArrangementError> {
        let file: ArrangementFile =
            serde_json::from_str(text).map_err(|e| ArrangementError::Json(e.to_string()))?;
        Arrangement::from_file(&file, field)
    }

    pub fn from_file(
        file: &ArrangementFile,
        field: Option<Field>,
    ) -> Result<Arrangement, ArrangementError> {
        let n = file.variables.len();
        if !(3..=4).contains(&n) {
            return Err(ArrangementError::VariableCount(n));
        }
        if file.variables.iter().zip(VAR_NAMES).any(|(v, w)| v != w) {
            return Err(ArrangementError::Variables(file.variables.clone()));
        }
        let field = match field {
            Some(f) => f,
            None if file.characteristic == 0 => Field::Rational,
            None => Field::prime(file.characteristic)
                .map_err(|e| ArrangementError::Characteristic(e.to_string()))?,
        };
        let texts: Vec<&str> = file.factors.iter().map(|s| s.as_str()).collect();
        Arrangement::parse_factors(&texts, n, field)
    }

    pub fn to_file(&self) -> ArrangementFile {
        ArrangementFile {
            variables: VAR_NAMES[..self.num_vars]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            characteristic: self.field.characteristic() as u64,
            factors: self.factors.iter().map(|f| f.to_string()).collect(),
        }
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of components.
    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// Component degrees `e_j`.
    pub fn degrees(&self) -> Vec<u32> {
        self.factors
            .iter()
            .map(|f| f.degree().expect("nonzero factor"))
            .collect()
    }

    /// Total degree `d = sum e_j`.
    pub fn d(&self) -> u32 {
        self.degrees().iter().sum()
    }

    /// Number of linear components.
    pub fn line_count(&self) -> usize {
        self.degrees().iter().filter(|&&e| e == 1).count()
    }

    /// The defining polynomial `f = f_1 ... f_m`.
    pub fn product(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(self.num_vars, self.field), |acc, f| {
                &acc * f
            })
    }

    /// The arrangement after substituting `x_i -> sum_k images[i][k] x_k`.
    pub fn substitute(
        &self,
        images: &[Vec<FieldElement>],
    ) -> Result<Arrangement, ArrangementError> {
        Arrangement::new(
            self.factors
                .iter()
                .map(|f| f.substitute_linear(images))
                .collect(),
        )
    }

    fn reordered(&self, order: &[usize]) -> Arrangement {
        Arrangement {
            factors: order.iter().map(|&i| self.factors[i].clone()).collect(),
            ..self.clone()
        }
    }
}

/// Outcome of one hypothesis check on a set of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetVerdict {
    pub indices: Vec<usize>,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    /// Each component is smooth.
    pub components: Vec<SubsetVerdict>,
    /// No two components share a factor.
    pub coprime: Vec<SubsetVerdict>,
    /// Pairs meet transversally.
    pub pairs: Vec<SubsetVerdict>,
    /// Triples: no common point (3 variables), or transversal (4 variables).
    pub triples: Vec<SubsetVerdict>,
    /// Quadruples have no common point (4 variables only).
    pub quadruples: Vec<SubsetVerdict>,
    pub overall: bool,
    pub experimental: bool,
    pub notes: Vec<String>,
}

impl GenericityReport {
    /// Human-readable descriptions of every failed check.
    pub fn failures(&self) -> Vec<String> {
        let groups = [
            ("component not smooth", &self.components),
            ("common factor", &self.coprime),
            ("non-transversal intersection", &self.pairs),
            (
                if self.quadruples.is_empty() {
                    "triple point"
                } else {
                    "non-transversal triple"
                },
                &self.triples,
            ),
            ("quadruple point", &self.quadruples),
        ];
        let mut out = Vec::new();
        for (what, group) in groups {
            for v in group.iter().filter(|v| !v.pass) {
                let idx: Vec<String> = v.indices.iter().map(|i| (i + 1).to_string()).collect();
                let w = v
                    .witness
                    .clone()
                    .unwrap_or_else(|| "no small-integer witness found".into());
                out.push(format!("{what} [{}]: {w}", idx.join(",")));
            }
        }
        out
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion (matrices here are at most 4 x 4).
fn determinant(rows: &[Vec<Polynomial>]) -> Polynomial {
    let k = rows.len();
    if k == 1 {
        return rows[0][0].clone();
    }
    let (n, field) = (rows[0][0].num_vars(), rows[0][0].field());
    let mut acc = Polynomial::zero(n, field);
    for c in 0..k {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][c] * &determinant(&minor);
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// The ideal whose zero set is where the components in `indices` meet
/// badly: the common zeros of the `f_t` together with the maximal minors of
/// their Jacobian rows (just the `f_t` when there are as many as variables).
fn degeneracy_ideal(a: &Arrangement, indices: &[usize]) -> Vec<Polynomial> {
    let n = a.num_vars;
    let mut gens: Vec<Polynomial> = indices.iter().map(|&i| a.factors[i].clone()).collect();
    let k = indices.len();
    if k < n {
        let jac: Vec<Vec<Polynomial>> = indices.iter().map(|&i| a.factors[i].gradient()).collect();
        for cols in subsets(n, k) {
            let sub: Vec<Vec<Polynomial>> = jac
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let det = determinant(&sub);
            if !det.is_zero() {
                gens.push(det);
            }
        }
    }
    gens
}

/// Searches small integer points for a common zero of `gens`.
pub fn find_witness(gens: &[Polynomial], num_vars: usize, field: Field) -> Option<String> {
    const R: i64 = 3;
    let span = (2 * R + 1) as usize;
    let total = span.pow(num_vars as u32);
    let mut best: Option<((i64, usize), Vec<i64>)> = None;
    for code in 0..total {
        let mut c = code;
        let point: Vec<i64> = (0..num_vars)
            .map(|_| {
                let v = (c % span) as i64 - R;
                c /= span;
                v
            })
            .collect();
        // One representative per projective point: first nonzero coordinate is 1.
        match point.iter().find(|&&v| v != 0) {
            Some(&1) => {}
            _ => continue,
        }
        let coords: Vec<FieldElement> = point.iter().map(|&v| field.from_i64(v)).collect();
        if gens.iter().all(|g| g.evaluate(&coords).is_zero()) {
            // Prefer small, then nonnegative coordinates.
            let weight = (
                point.iter().map(|v| v.abs()).sum::<i64>(),
                point.iter().filter(|&&v| v < 0).count(),
            );
            if best
                .as_ref()
                .is_none_or(|(w, p)| (weight, &point) < (*w, p))
            {
                best = Some((weight, point));
            }
        }
    }
    best.map(|(_, p)| {
        format!(
            "({})",
            p.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(":")
        )
    })
}

fn check(
    a: &Arrangement,
    indices: Vec<usize>,
    label: &str,
) -> Result<SubsetVerdict, GroebnerError> {
    let gens = degeneracy_ideal(a, &indices);
    let (pass, _) = is_artinian_quotient(&gens)?;
    let witness = if pass {
        None
    } else {
        find_witness(&gens, a.num_vars, a.field).map(|p| format!("{label} {p}"))
    };
    Ok(SubsetVerdict {
        indices,
        pass,
        witness,
    })
}

/// Two forms are coprime iff their only syzygy is the Koszul one.
fn coprime(a: &Arrangement, i: usize, j: usize) -> Result<SubsetVerdict, GroebnerError> {
    let (fi, fj) = (&a.factors[i], &a.factors[j]);
    let (ei, ej) = (fi.degree().unwrap() as i64, fj.degree().unwrap() as i64);
    let cols = vec![
        crate::groebner::FreeModuleElement::new(vec![fi.clone()], vec![0])?,
        crate::groebner::FreeModuleElement::new(vec![fj.clone()], vec![0])?,
    ];
    let map = GradedModuleMap::new(vec![0], vec![ei, ej], cols, a.num_vars, a.field)?;
    let syz = syzygy_module(&map)?;
    let pass = syz.source_twists() == [ei + ej];
    let witness = if pass {
        None
    } else {
        Some("a common factor of positive degree".to_string())
    };
    Ok(SubsetVerdict {
        indices: vec![i, j],
        pass,
        witness,
    })
}

/// Checks smoothness of the components and normal crossings. In 4
/// variables this also covers triples and quadruples and is experimental.
pub fn validate(a: &Arrangement) -> Result<GenericityReport, ArrangementError> {
    let m = a.m();
    let surfaces = a.num_vars == 4;
    let run = |k: usize, label: &str| -> Result<Vec<SubsetVerdict>, GroebnerError> {
        subsets(m, k)
            .into_par_iter()
            .map(|s| check(a, s, label))
            .collect()
    };
    let components = run(1, "singular point")?;
    let coprime = subsets(m, 2)
        .into_par_iter()
        .map(|s| coprime(a, s[0], s[1]))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs = run(2, "tangency point")?;
    let triples = run(
        3,
        if surfaces {
            "non-transversal point"
        } else {
            "triple point"
        },
    )?;
    let quadruples = if surfaces {
        run(4, "quadruple point")?
    } else {
        Vec::new()
    };
    let overall = [&components, &coprime, &pairs, &triples, &quadruples]
        .iter()
        .all(|g| g.iter().all(|v| v.pass));
    let mut notes = vec!["smooth components of degree at least 2 are irreducible; no separate irreducibility test is run".to_string()];
    if surfaces {
        notes.push("surface arrangement: genericity checks are experimental".to_string());
    }
    if let Field::Prime(p) = a.field {
        notes.push(format!("checks run over ZZ/{p}: characteristic-p evidence"));
    }
    Ok(GenericityReport {
        components,
        coprime,
        pairs,
        triples,
        quadruples,
        overall,
        experimental: surfaces,
        notes,
    })
}

/// A coordinate change putting the linear components first and onto the
/// coordinate axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    pub arrangement: Arrangement,
    /// Rows are the new coordinates in terms of the old ones.
    pub matrix: Vec<Vec<FieldElement>>,
    /// `order[k]` is the original index of the new `k`-th factor.
    pub order: Vec<usize>,
}

fn identity(n: usize, field: Field) -> Vec<Vec<FieldElement>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

/// Inverse of an invertible square matrix.
pub fn invert(matrix: &[Vec<FieldElement>], field: Field) -> Option<Vec<Vec<FieldElement>>> {
    let n = matrix.len();
    let id = identity(n, field);
    let aug: Vec<Vec<FieldElement>> = matrix
        .iter()
        .zip(&id)
        .map(|(r, e)| r.iter().chain(e).cloned().collect())
        .collect();
    let (rows, pivots) = linalg::row_reduce(field, &aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Moves lines to the front and changes coordinates so the first (up to
/// three) independent lines become `x`, `y`, `z`. Unused coordinates are
/// completed by the earliest standard basis vectors.
pub fn normalize_coordinates(a: &Arrangement) -> Result<Normalization, ArrangementError> {
    let n = a.num_vars;
    let field = a.field;
    let degrees = a.degrees();
    let mut order: Vec<usize> = (0..a.m()).filter(|&i| degrees[i] == 1).collect();
    order.extend((0..a.m()).filter(|&i| degrees[i] != 1));
    let sorted = a.reordered(&order);

    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let row_of = |p: &Polynomial| -> Vec<FieldElement> {
        (0..n).map(|k| p.coefficient(&Monomial::var(k))).collect()
    };
    for f in sorted.factors.iter().take_while(|f| f.degree() == Some(1)) {
        if rows.len() == 3.min(n) {
            break;
        }
        let mut candidate = rows.clone();
        candidate.push(row_of(f));
        if linalg::rank(field, &candidate, n) == candidate.len() {
            rows = candidate;
        }
    }
    for e in identity(n, field) {
        if rows.len() == n {
            break;
        }
        let mut candidate = rows.clone();
        candidate.push(e);
        if linalg::rank(field, &candidate, n) == candidate.len() {
            rows = candidate;
        }
    }
    let inverse = invert(&rows, field).expect("completed matrix is invertible");
    let arrangement = sorted.substitute(&inverse)?;
    Ok(Normalization {
        arrangement,
        matrix: rows,
        order,
    })
}
