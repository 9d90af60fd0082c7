//! Polynomial differential forms: wedge product, contraction with the Euler
//! vector field, Koszul forms, and the identification of syzygy vectors with
//! forms of degree `n - 1`.
//!
//! A `q`-form is stored as a map from `q`-subsets of the variables (bitmasks,
//! variables in increasing order) to polynomial coefficients. The grading is
//! `|x_i| = |dx_i| = 1`, so a homogeneous form with degree-`k` coefficients
//! has total degree `k + q`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::polyring::{Field, Monomial, Polynomial, VAR_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("forms live over different rings")]
    RingMismatch,
    #[error("expected a {expected}-form, got a {found}-form")]
    WrongFormDegree { expected: usize, found: usize },
    #[error("expected {expected} components, got {found}")]
    WrongLength { expected: usize, found: usize },
}

type Subset = u8;

/// Sign of `dx_I ^ dx_J` relative to `dx_{I u J}`; zero when `I` and `J` meet.
fn wedge_sign(i: Subset, j: Subset) -> i32 {
    if i & j != 0 {
        return 0;
    }
    let mut inversions = 0;
    for a in 0..8 {
        if i & (1 << a) != 0 {
            // elements of J smaller than a must move past a
            inversions += (j & ((1u8 << a) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    num_vars: usize,
    field: Field,
    form_degree: usize,
    coeffs: BTreeMap<Subset, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(num_vars: usize, field: Field, form_degree: usize) -> DifferentialForm {
        assert!(form_degree <= num_vars);
        DifferentialForm {
            num_vars,
            field,
            form_degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A polynomial viewed as a 0-form.
    pub fn function(p: &Polynomial) -> DifferentialForm {
        let mut out = DifferentialForm::zero(p.num_vars(), p.field(), 0);
        out.insert(0, p.clone());
        out
    }

    /// `dx_{i_1} ^ ... ^ dx_{i_q}` for `vars` in any order (the sign is applied).
    pub fn basis(vars: &[usize], num_vars: usize, field: Field) -> DifferentialForm {
        let mut out = DifferentialForm::function(&Polynomial::one(num_vars, field));
        for &v in vars {
            out = out
                .wedge(&DifferentialForm::dx(v, num_vars, field))
                .expect("same ring");
        }
        out
    }

    pub fn dx(var: usize, num_vars: usize, field: Field) -> DifferentialForm {
        assert!(var < num_vars);
        let mut out = DifferentialForm::zero(num_vars, field, 1);
        out.insert(1 << var, Polynomial::one(num_vars, field));
        out
    }

    /// The differential `df = sum_u f_u du` of a polynomial.
    pub fn differential(f: &Polynomial) -> DifferentialForm {
        let mut out = DifferentialForm::zero(f.num_vars(), f.field(), 1);
        for (v, fv) in f.gradient().into_iter().enumerate() {
            out.insert(1 << v, fv);
        }
        out
    }

    /// `c * dx_subset`, where `subset` lists variable indices in increasing order.
    pub fn monomial_form(subset: &[usize], c: Polynomial) -> DifferentialForm {
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        let mut out = DifferentialForm::zero(c.num_vars(), c.field(), subset.len());
        out.insert(subset.iter().fold(0, |m, &v| m | (1 << v)), c);
        out
    }

    fn insert(&mut self, s: Subset, c: Polynomial) {
        if c.is_zero() {
            self.coeffs.remove(&s);
        } else {
            self.coeffs.insert(s, c);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `dx_subset` (variables in increasing order).
    pub fn coefficient(&self, subset: &[usize]) -> Polynomial {
        let s = subset.iter().fold(0, |m, &v| m | (1 << v));
        self.coeffs
            .get(&s)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.num_vars, self.field))
    }

    /// Nonzero coefficients as (sorted variable list, polynomial) pairs.
    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, &Polynomial)> {
        self.coeffs
            .iter()
            .map(|(s, c)| ((0..8).filter(|i| s & (1 << i) != 0).collect(), c))
    }

    /// Total degree when all coefficients are homogeneous of one degree.
    pub fn total_degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.values().map(|c| c.homogeneous_degree());
        let first = degs.next()??;
        if degs.all(|d| d == Some(first)) {
            Some(first + self.form_degree as u32)
        } else {
            None
        }
    }

    fn check(&self, other: &DifferentialForm) -> Result<(), FormError> {
        if self.num_vars != other.num_vars || self.field != other.field {
            return Err(FormError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DifferentialForm) -> Result<DifferentialForm, FormError> {
        self.check(other)?;
        if self.form_degree != other.form_degree {
            return Err(FormError::WrongFormDegree {
                expected: self.form_degree,
                found: other.form_degree,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            let sum = match out.coeffs.get(s) {
                Some(a) => a + c,
                None => c.clone(),
            };
            out.insert(*s, sum);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DifferentialForm) -> Result<DifferentialForm, FormError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> DifferentialForm {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.num_vars, self.field, self.form_degree);
        for (s, c) in &self.coeffs {
            out.insert(*s, c * p);
        }
        out
    }

    /// Divides every coefficient exactly by `p`, or `None` if some division is inexact.
    pub fn exact_div_poly(&self, p: &Polynomial) -> Option<DifferentialForm> {
        let mut out = DifferentialForm::zero(self.num_vars, self.field, self.form_degree);
        for (s, c) in &self.coeffs {
            out.insert(*s, c.exact_div(p)?);
        }
        Some(out)
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm, FormError> {
        self.check(other)?;
        let q = self.form_degree + other.form_degree;
        let mut out = DifferentialForm::zero(self.num_vars, self.field, q.min(self.num_vars));
        if q > self.num_vars {
            return Ok(out);
        }
        out.form_degree = q;
        let mut acc: BTreeMap<Subset, Polynomial> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let sign = wedge_sign(*i, *j);
                if sign == 0 {
                    continue;
                }
                let prod = a * b;
                let prod = if sign < 0 { -&prod } else { prod };
                let e = acc
                    .entry(i | j)
                    .or_insert_with(|| Polynomial::zero(self.num_vars, self.field));
                *e = &*e + &prod;
            }
        }
        for (s, c) in acc {
            out.insert(s, c);
        }
        Ok(out)
    }

    /// Contraction with the Euler field `sum_u u d/du`; lowers the form degree by one.
    /// The contraction of a 0-form is the zero 0-form.
    pub fn contract_euler(&self) -> DifferentialForm {
        if self.form_degree == 0 {
            return DifferentialForm::zero(self.num_vars, self.field, 0);
        }
        let mut out = DifferentialForm::zero(self.num_vars, self.field, self.form_degree - 1);
        let one = self.field.one();
        for (s, c) in &self.coeffs {
            let mut k = 0;
            for v in 0..self.num_vars {
                if s & (1 << v) == 0 {
                    continue;
                }
                let term = c.mul_term(&Monomial::var(v), &one);
                let term = if k % 2 == 0 { term } else { -&term };
                let rest = s & !(1 << v);
                let sum = match out.coeffs.get(&rest) {
                    Some(a) => a + &term,
                    None => term,
                };
                out.insert(rest, sum);
                k += 1;
            }
        }
        out
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (vars, c)) in self.components().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else {
                let basis: Vec<String> =
                    vars.iter().map(|&v| format!("d{}", VAR_NAMES[v])).collect();
                write!(f, "({c})*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

/// A vector `(a, b, c)` (or length 4) of polynomials, read as a candidate
/// Jacobian syzygy `a f_x + b f_y + c f_z = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyTriple {
    components: Vec<Polynomial>,
}

impl SyzygyTriple {
    pub fn new(components: Vec<Polynomial>) -> SyzygyTriple {
        assert!(components.len() >= 2);
        let (n, k) = (components[0].num_vars(), components[0].field());
        assert!(components
            .iter()
            .all(|c| c.num_vars() == n && c.field() == k));
        SyzygyTriple { components }
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    /// Common degree of the nonzero components, `None` if zero or inhomogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self
            .components
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.homogeneous_degree());
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }

    /// `sum_i v_i * partial_i(f)`.
    pub fn apply_to_gradient(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(f.num_vars(), f.field());
        for (v, fv) in self.components.iter().zip(f.gradient()) {
            acc = &acc + &(v * &fv);
        }
        acc
    }

    pub fn is_syzygy_of(&self, f: &Polynomial) -> bool {
        self.components.len() == f.num_vars() && self.apply_to_gradient(f).is_zero()
    }

    /// The `(n-1)`-form `sum_i (-1)^i v_i dx_0 ^ .. ^ (omit i) ^ .. ^ dx_{n-1}`;
    /// in three variables `a dy^dz - b dx^dz + c dx^dy`.
    pub fn to_form(&self) -> DifferentialForm {
        let n = self.components.len();
        let field = self.components[0].field();
        let full: Subset = ((1u16 << n) - 1) as Subset;
        let mut out = DifferentialForm::zero(n, field, n - 1);
        for (i, v) in self.components.iter().enumerate() {
            let c = if i % 2 == 0 { v.clone() } else { -v };
            out.insert(full & !(1 << i), c);
        }
        out
    }

    /// Inverse of [`SyzygyTriple::to_form`].
    pub fn from_form(form: &DifferentialForm) -> Result<SyzygyTriple, FormError> {
        let n = form.num_vars;
        if form.form_degree + 1 != n {
            return Err(FormError::WrongFormDegree {
                expected: n - 1,
                found: form.form_degree,
            });
        }
        let full: Subset = ((1u16 << n) - 1) as Subset;
        let components = (0..n)
            .map(|i| {
                let c = form
                    .coeffs
                    .get(&(full & !(1 << i)))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(n, form.field));
                if i % 2 == 0 {
                    c
                } else {
                    -&c
                }
            })
            .collect();
        Ok(SyzygyTriple { components })
    }
}

/// The forms `omega^u = df ^ du` and their vectors `kappa^u`, one per variable.
pub fn koszul_forms(f: &Polynomial) -> Vec<(DifferentialForm, SyzygyTriple)> {
    let df = DifferentialForm::differential(f);
    (0..f.num_vars())
        .map(|u| {
            let form = df
                .wedge(&DifferentialForm::dx(u, f.num_vars(), f.field()))
                .expect("same ring");
            let triple = SyzygyTriple::from_form(&form).expect("degree n-1");
            assert!(
                triple.is_syzygy_of(f),
                "Koszul vector failed the syzygy equation"
            );
            (form, triple)
        })
        .collect()
}
