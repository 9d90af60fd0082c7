//! The full pipeline: validate, normalize, compute, predict, compare.

use serde::Serialize;

use crate::arrangement::{
    normalize_coordinates, validate, Arrangement, GenericityReport, Normalization, SubsetVerdict,
};
use crate::diffforms::SyzygyTriple;
use crate::groebner::{
    graded_kernel_oracle, linalg, minimal_free_resolution, resolve_image, syzygy_module,
    BettiTable, ExponentVector, GradedModuleMap, GroebnerBasis, GroebnerError, OracleTable,
    Resolution, DEFAULT_CELL_BUDGET,
};
use crate::polyring::{count_monomials, Field, FieldElement, Polynomial};

use super::omega::{build_omega_basis, triple_coordinates, OmegaBasis};
use super::predict::{predict, CasePrediction};
use super::relations::{build_relations, relations_generate, roster, Roster};
use super::{Check, ClosedFormError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Verify,
    ExponentsOnly,
    SurfaceExperiment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleChoice {
    Groebner,
    LinearAlgebra,
    Both,
}

impl OracleChoice {
    pub fn engine(self) -> bool {
        self != OracleChoice::LinearAlgebra
    }

    pub fn dense(self) -> bool {
        self != OracleChoice::Groebner
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub oracle: OracleChoice,
    pub normalize: bool,
    /// Highest degree for the dense oracle; `d` when unset.
    pub degree_cap: Option<i64>,
    pub cell_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Verify,
            oracle: OracleChoice::Both,
            normalize: true,
            degree_cap: None,
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Verified,
    HypothesesViolated,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiPair {
    pub d0: BettiTable,
    pub mf: BettiTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Frame {
    /// Rows are the working coordinates in terms of the input ones.
    pub matrix: Vec<Vec<String>>,
    /// `order[k]` is the input index of the `k`-th working factor.
    pub order: Vec<usize>,
    pub factors: Vec<String>,
    pub normalized_factors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i64,
    pub normalized: Vec<String>,
    pub original: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub case: String,
    pub predicted_exponents: Option<ExponentVector>,
    pub computed_exponents: ExponentVector,
    pub betti_predicted: Option<BettiPair>,
    pub betti_computed: Option<BettiPair>,
    pub checks: Vec<Check>,
    pub frame: Frame,
    pub outcome: Outcome,
    pub field: String,
    pub evidence: String,
    pub mode: Mode,
    pub partial: bool,
    pub degree: u32,
    pub components: usize,
    pub lines: usize,
    pub hypotheses: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<String>,
    pub oracle: Option<OracleTable>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn identity_frame(a: &Arrangement) -> Normalization {
    let n = a.num_vars();
    let f = a.field();
    Normalization {
        arrangement: a.clone(),
        matrix: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { f.one() } else { f.zero() })
                    .collect()
            })
            .collect(),
        order: (0..a.m()).collect(),
    }
}

fn group_check(name: &str, verdicts: &[SubsetVerdict], label: &str) -> Check {
    let bad = verdicts.iter().find(|v| !v.pass);
    Check::new(
        name,
        bad.is_none(),
        bad.map(|v| {
            let idx: Vec<String> = v.indices.iter().map(|i| (i + 1).to_string()).collect();
            match &v.witness {
                Some(w) => format!("{label} [{}]: {w}", idx.join(",")),
                None => format!("{label} [{}]", idx.join(",")),
            }
        }),
    )
}

fn hypothesis_checks(r: &GenericityReport) -> Vec<Check> {
    let mut out = vec![
        group_check("hypotheses: smooth components", &r.components, "component"),
        group_check("hypotheses: pairwise coprime", &r.coprime, "pair"),
        group_check("hypotheses: transversal pairs", &r.pairs, "pair"),
        group_check("hypotheses: no triple points", &r.triples, "triple"),
    ];
    if !r.quadruples.is_empty() {
        out.push(group_check(
            "hypotheses: no quadruple points",
            &r.quadruples,
            "quadruple",
        ));
    }
    out
}

/// Where the Betti tables first differ.
pub fn betti_difference(predicted: &BettiTable, computed: &BettiTable) -> Option<String> {
    let keys: std::collections::BTreeSet<(usize, i64)> = predicted
        .json_entries()
        .iter()
        .chain(computed.json_entries().iter())
        .map(|e| (e.stage, -e.twist))
        .collect();
    keys.into_iter().find_map(|(s, deg)| {
        let (p, c) = (predicted.get(s, deg), computed.get(s, deg));
        (p != c).then(|| format!("stage {s} degree {deg}: predicted {p}, computed {c}"))
    })
}

pub(crate) struct EngineResult {
    pub syz: GradedModuleMap,
    pub exponents: ExponentVector,
    pub gb: GroebnerBasis,
    pub d0: Option<Result<Resolution, GroebnerError>>,
    pub mf: Option<Result<Resolution, GroebnerError>>,
}

/// Jacobian syzygies of `f` by the Gröbner engine, optionally with both resolutions.
pub(crate) fn run_engine(f: &Polynomial, resolve: bool) -> Result<EngineResult, ClosedFormError> {
    let d = f
        .homogeneous_degree()
        .ok_or(GroebnerError::NotHomogeneous)? as i64;
    let n = f.num_vars();
    let grad = f.gradient();
    let syz = syzygy_module(&GradedModuleMap::row(&grad, 1 - d)?)?;
    let exponents = ExponentVector::new(syz.source_twists().to_vec());
    let (gb, (d0, mf)) = rayon::join(
        || GroebnerBasis::compute(syz.columns(), &vec![0; n], n, f.field()),
        || {
            if !resolve {
                return (None, None);
            }
            let (a, b) = rayon::join(
                || resolve_image(&syz, n + 1),
                || minimal_free_resolution(&GradedModuleMap::row(&grad, 0)?, n + 1),
            );
            (Some(a), Some(b))
        },
    );
    Ok(EngineResult {
        syz,
        exponents,
        gb: gb?,
        d0,
        mf,
    })
}

fn betti_of(
    r: &Option<Result<Resolution, GroebnerError>>,
    partial: &mut bool,
) -> Result<Option<BettiTable>, ClosedFormError> {
    match r {
        None => Ok(None),
        Some(Ok(res)) => Ok(Some(res.betti.clone())),
        Some(Err(GroebnerError::ResolutionTooLong { partial: table, .. })) => {
            *partial = true;
            Ok(Some(table.clone()))
        }
        Some(Err(e)) => Err(e.clone().into()),
    }
}

/// Hilbert function and generator degrees of the engine against the oracle.
pub(crate) fn oracle_checks(engine: &EngineResult, oracle: &OracleTable) -> Vec<Check> {
    let mut hilbert = None;
    let mut gens = None;
    for (&e, entry) in &oracle.entries {
        let h = engine.gb.hilbert_function(e) as usize;
        if hilbert.is_none() && h != entry.dimension {
            hilbert = Some(format!(
                "degree {e}: engine {h}, oracle {}",
                entry.dimension
            ));
        }
        let g = engine
            .exponents
            .degrees()
            .iter()
            .filter(|&&x| x == e)
            .count();
        if gens.is_none() && g != entry.generators {
            gens = Some(format!(
                "degree {e}: engine {g}, oracle {}",
                entry.generators
            ));
        }
    }
    let top = oracle.entries.keys().last().copied().unwrap_or(-1);
    vec![
        Check::new(
            format!("oracle: Hilbert function agrees up to degree {top}"),
            hilbert.is_none(),
            hilbert,
        ),
        Check::new(
            format!("oracle: generator degrees agree up to degree {top}"),
            gens.is_none(),
            gens,
        ),
    ]
}

fn field_strings(row: &[FieldElement]) -> Vec<String> {
    row.iter().map(|c| c.to_string()).collect()
}

/// `v` for the normalized polynomial, as a syzygy of the input polynomial.
fn back_to_input(v: &SyzygyTriple, norm: &Normalization) -> Option<SyzygyTriple> {
    let field = norm.arrangement.field();
    let inverse = crate::arrangement::invert(&norm.matrix, field)?;
    let n = v.components().len();
    let moved: Vec<Polynomial> = v
        .components()
        .iter()
        .map(|c| c.substitute_linear(&norm.matrix))
        .collect();
    let comps = (0..n)
        .map(|k| {
            let mut acc = Polynomial::zero(n, field);
            for (i, c) in moved.iter().enumerate() {
                acc = &acc + &c.scale(&inverse[k][i]);
            }
            acc
        })
        .collect();
    Some(SyzygyTriple::new(comps))
}

fn generator_entries(
    roster: &Roster,
    norm: &Normalization,
    input: &Arrangement,
) -> (Vec<GeneratorEntry>, Check) {
    let f = input.product();
    let mut bad = None;
    let entries = roster
        .names
        .iter()
        .zip(&roster.triples)
        .zip(&roster.degrees)
        .map(|((name, t), &degree)| {
            let back = back_to_input(t, norm);
            if bad.is_none() && !back.as_ref().is_some_and(|b| b.is_syzygy_of(&f)) {
                bad = Some(name.clone());
            }
            GeneratorEntry {
                name: name.clone(),
                degree,
                normalized: t.components().iter().map(|c| c.to_string()).collect(),
                original: back
                    .map(|b| b.components().iter().map(|c| c.to_string()).collect())
                    .unwrap_or_default(),
            }
        })
        .collect();
    let check = Check::new(
        "frame: generators map back to input syzygies",
        bad.is_none(),
        bad,
    );
    (entries, check)
}

fn dimension_in(
    degree: i64,
    oracle: Option<&OracleTable>,
    engine: Option<&EngineResult>,
) -> Option<usize> {
    oracle
        .and_then(|o| o.dimension(degree))
        .or_else(|| engine.map(|e| e.gb.hilbert_function(degree) as usize))
}

/// The degree-(d-2) part of the syzygies is spanned by the omega triples.
fn span_check(
    omega: &OmegaBasis,
    engine: Option<&EngineResult>,
    oracle: Option<&OracleTable>,
    d: i64,
    field: Field,
) -> Check {
    let name = "degree d-2 generators span the omega_j triples";
    let deg = (d - 2) as u32;
    let ncols = 3 * count_monomials(3, d - 2) as usize;
    let omegas = triple_coordinates(&omega.triples, deg);
    let r_omega = linalg::rank(field, &omegas, ncols);
    if let Some(e) = engine {
        let low: Vec<SyzygyTriple> = e
            .syz
            .columns()
            .iter()
            .filter(|c| c.degree() == Some(d - 2))
            .map(|c| SyzygyTriple::new(c.coordinates().to_vec()))
            .collect();
        let below = e.exponents.degrees().iter().filter(|&&x| x < d - 2).count();
        let gens = triple_coordinates(&low, deg);
        let r_gens = linalg::rank(field, &gens, ncols);
        let joint = linalg::rank(field, &[gens, omegas].concat(), ncols);
        let pass = below == 0 && r_gens == r_omega && joint == r_omega;
        let witness = (!pass).then(|| {
            format!("{} generators below d-2; ranks: generators {r_gens}, omega {r_omega}, joint {joint}", below)
        });
        return Check::new(name, pass, witness);
    }
    let dim = dimension_in(d - 2, oracle, None);
    let pass = dim == Some(r_omega) && omega.triples.iter().all(|t| t.degree() == Some(deg));
    Check::new(
        name,
        pass,
        (!pass).then(|| format!("dimension {dim:?}, omega rank {r_omega}")),
    )
}

/// Runs every check available for a plane arrangement.
pub fn verify_arrangement(
    a: &Arrangement,
    opts: &VerifyOptions,
) -> Result<VerificationReport, ClosedFormError> {
    if a.num_vars() != 3 {
        return Err(ClosedFormError::VariableCount(a.num_vars()));
    }
    let genericity = validate(a)?;
    let norm = if opts.normalize {
        normalize_coordinates(a)?
    } else {
        identity_frame(a)
    };
    let w = &norm.arrangement;
    let field = w.field();
    let f = w.product();
    let d = w.d() as i64;
    let m = w.m();
    let cap = opts.degree_cap.unwrap_or(d);
    let verify = opts.mode == Mode::Verify;

    let (engine, oracle) = rayon::join(
        || {
            opts.oracle
                .engine()
                .then(|| run_engine(&f, verify))
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

    let mut partial = false;
    let mut notes = genericity.notes.clone();
    if let Some(o) = &oracle {
        if let Some((deg, needed)) = o.exhausted {
            partial = true;
            notes.push(format!(
                "dense oracle stopped at degree {deg}: needs {needed} cells, budget {}",
                opts.cell_budget
            ));
        }
    }
    let computed_exponents = match (&engine, &oracle) {
        (Some(e), _) => e.exponents.clone(),
        (None, Some(o)) => {
            notes.push(format!(
                "exponents from the dense oracle, degrees up to {cap}"
            ));
            if cap < d - 1 {
                partial = true;
                notes.push("degree cap below d-1: generators above the cap are not seen".into());
            }
            o.exponents()
        }
        (None, None) => unreachable!("at least one method runs"),
    };
    let betti_computed = match &engine {
        Some(e) if verify => {
            let d0 = betti_of(&e.d0, &mut partial)?;
            let mf = betti_of(&e.mf, &mut partial)?;
            d0.zip(mf).map(|(d0, mf)| BettiPair { d0, mf })
        }
        _ => None,
    };

    let mut checks = hypothesis_checks(&genericity);
    if let (Some(e), Some(o)) = (&engine, &oracle) {
        checks.extend(oracle_checks(e, o));
    }
    let max = computed_exponents.degrees().last().copied();
    checks.push(Check::new(
        "bound: largest exponent at most d-1",
        max.is_none_or(|x| x < d),
        max.filter(|&x| x > d - 1).map(|x| format!("exponent {x}")),
    ));

    let prediction = predict(w, &genericity).ok();
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let omega = match build_omega_basis(w) {
        Ok(b) => Some(b),
        Err(e) => {
            if prediction.is_some() {
                checks.push(Check::new(
                    "omega: construction",
                    false,
                    Some(e.to_string()),
                ));
            }
            None
        }
    };

    let outcome = match &prediction {
        None => {
            notes.push("theorem not applicable: hypotheses fail".into());
            if let Some(b) = &omega {
                checks.push(span_check(b, engine.as_ref(), oracle.as_ref(), d, field));
            }
            Outcome::HypothesesViolated
        }
        Some(p) => {
            checks.extend(prediction_checks(
                p,
                &computed_exponents,
                betti_computed.as_ref(),
                engine.as_ref(),
                oracle.as_ref(),
                d,
                m,
            ));
            if let Some(b) = &omega {
                checks.extend(b.checks.iter().cloned());
                match roster(w, b) {
                    Ok(r) => {
                        let (entries, frame_check) = generator_entries(&r, &norm, a);
                        generators = entries;
                        checks.push(frame_check);
                        checks.extend(generation_checks(&r, &f, engine.as_ref()));
                        if verify {
                            let rel = build_relations(w, b)?;
                            relations = rel
                                .relations
                                .iter()
                                .map(|(j, v)| format!("rho_{} = {}", j + 1, describe(v, &rel.roster.names)))
                                .collect();
                            checks.extend(rel.checks.iter().cloned());
                            checks.push(relations_generate(&rel)?);
                        }
                    }
                    Err(ClosedFormError::NotNormalized) => notes.push(
                        "lines are not coordinate axes in this frame: roster and relation checks skipped".into(),
                    ),
                    Err(e) => return Err(e),
                }
            }
            if p.boundary {
                notes.push("four lines: smallest all-line case".into());
            }
            if checks.iter().all(|c| c.pass) {
                Outcome::Verified
            } else {
                Outcome::Mismatch
            }
        }
    };
    if generators.iter().any(|g| g.name.starts_with("omega^")) {
        notes.push(
            "relations use omega^x, omega^y, omega^z in the three slots; each is certified by exact evaluation".into(),
        );
    }

    let evidence = match field {
        Field::Rational => "exact over QQ".to_string(),
        Field::Prime(p) => format!("characteristic-p evidence over ZZ/{p}"),
    };
    Ok(VerificationReport {
        case: prediction
            .as_ref()
            .map_or("not applicable".into(), |p| p.case.label().into()),
        predicted_exponents: prediction.as_ref().map(|p| p.exponents.clone()),
        computed_exponents,
        betti_predicted: prediction.as_ref().filter(|_| verify).map(|p| BettiPair {
            d0: p.d0_betti.clone(),
            mf: p.milnor_betti.clone(),
        }),
        betti_computed,
        checks,
        frame: Frame {
            matrix: norm.matrix.iter().map(|r| field_strings(r)).collect(),
            order: norm.order.clone(),
            factors: a.factors().iter().map(|p| p.to_string()).collect(),
            normalized_factors: w.factors().iter().map(|p| p.to_string()).collect(),
        },
        outcome,
        field: field.label(),
        evidence,
        mode: opts.mode,
        partial,
        degree: w.d(),
        components: m,
        lines: w.line_count(),
        hypotheses: genericity.failures(),
        generators,
        relations,
        oracle,
        notes,
    })
}

fn describe(v: &crate::groebner::FreeModuleElement, names: &[String]) -> String {
    let terms: Vec<String> = v
        .coordinates()
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| format!("({c})*{n}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn prediction_checks(
    p: &CasePrediction,
    exponents: &ExponentVector,
    betti: Option<&BettiPair>,
    engine: Option<&EngineResult>,
    oracle: Option<&OracleTable>,
    d: i64,
    m: usize,
) -> Vec<Check> {
    let mut out = vec![
        Check::new(
            "generation (iii): exponents match prediction",
            exponents == &p.exponents,
            (exponents != &p.exponents)
                .then(|| format!("predicted {}, computed {}", p.exponents, exponents)),
        ),
        Check::new(
            "generator count s",
            exponents.len() == p.generator_count,
            (exponents.len() != p.generator_count).then(|| {
                format!(
                    "predicted {}, computed {}",
                    p.generator_count,
                    exponents.len()
                )
            }),
        ),
    ];
    let low: Vec<(i64, Option<usize>)> = (0..=d - 2)
        .map(|e| (e, dimension_in(e, oracle, engine)))
        .collect();
    let bad = low
        .iter()
        .find(|&&(e, dim)| dim != Some(if e == d - 2 { m - 1 } else { 0 }));
    out.push(Check::new(
        "generation (iv): nothing below d-2, dimension m-1 in degree d-2",
        bad.is_none(),
        bad.map(|(e, dim)| format!("degree {e}: dimension {dim:?}")),
    ));
    if let Some(b) = betti {
        let d0 = betti_difference(&p.d0_betti, &b.d0);
        let mf = betti_difference(&p.milnor_betti, &b.mf);
        out.push(Check::new(
            "resolution: D_0 Betti table matches",
            d0.is_none(),
            d0,
        ));
        out.push(Check::new(
            "resolution: M(f) Betti table matches",
            mf.is_none(),
            mf,
        ));
        if let Some(eps) = &p.epsilon {
            let c = b.mf.stage_degrees(3);
            let dd = exponents.degrees();
            let computed: Vec<i64> = (0..c.len())
                .map(|j| {
                    if j + 2 < dd.len() {
                        c[j] - d - dd[j + 2] + 1
                    } else {
                        i64::MIN
                    }
                })
                .collect();
            let sum: i64 = eps.iter().sum();
            let pass = &computed == eps && sum == d - 3;
            out.push(Check::new(
                "resolution: degree bookkeeping",
                pass,
                (!pass).then(|| {
                    format!(
                        "corrections {computed:?}, predicted {eps:?}, sum {sum} vs d-3 = {}",
                        d - 3
                    )
                }),
            ));
        }
    }
    out
}

fn generation_checks(r: &Roster, f: &Polynomial, engine: Option<&EngineResult>) -> Vec<Check> {
    let outside = r
        .names
        .iter()
        .zip(&r.triples)
        .find(|(_, t)| !t.is_syzygy_of(f));
    let mut out = vec![Check::new(
        "generation (i): roster lies in D_0",
        outside.is_none(),
        outside.map(|(n, _)| n.clone()),
    )];
    if let Some(e) = engine {
        let witness = match r.as_map().and_then(|map| {
            Ok(GroebnerBasis::compute(
                map.columns(),
                map.target_twists(),
                map.num_vars(),
                map.field(),
            )?)
        }) {
            Ok(gb) => e
                .syz
                .columns()
                .iter()
                .enumerate()
                .find(|(_, c)| !gb.contains(c).unwrap_or(false))
                .map(|(i, c)| format!("generator {} of degree {:?}", i + 1, c.degree())),
            Err(err) => Some(err.to_string()),
        };
        out.push(Check::new(
            "generation (ii): D_0 generated by roster",
            witness.is_none(),
            witness,
        ));
    }
    out
}
