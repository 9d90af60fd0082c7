//! Elements of graded free modules `F = S(-a_1) + ... + S(-a_r)`, homogeneous
//! maps between them, and the sparse term vectors the engine works on.

use std::cmp::Ordering;
use std::fmt;

use crate::polyring::{Field, FieldElement, Monomial, Polynomial};

use super::GroebnerError;

/// A module monomial `m * e_pos`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ModMono {
    pub mono: Monomial,
    pub pos: usize,
}

pub(crate) type Term = (ModMono, FieldElement);

/// Sparse vector, terms sorted descending under a [`ModuleOrder`].
pub(crate) type Vector = Vec<Term>;

/// Term-over-position order on a twisted free module: weighted degree
/// `deg(m) + a_pos`, then degrevlex on `m`, then lower position first.
///
/// With `block > 0`, the positions `< block` form an elimination block: any
/// term there beats every term outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub twists: Vec<i64>,
    pub block: usize,
}

impl ModuleOrder {
    pub fn top(twists: Vec<i64>) -> ModuleOrder {
        ModuleOrder { twists, block: 0 }
    }

    pub fn elimination(twists: Vec<i64>, block: usize) -> ModuleOrder {
        ModuleOrder { twists, block }
    }

    pub fn weighted_degree(&self, m: &ModMono) -> i64 {
        m.mono.degree() as i64 + self.twists[m.pos]
    }

    pub fn cmp(&self, a: &ModMono, b: &ModMono) -> Ordering {
        if self.block > 0 {
            let (ia, ib) = (a.pos < self.block, b.pos < self.block);
            if ia != ib {
                return ia.cmp(&ib);
            }
        }
        self.weighted_degree(a)
            .cmp(&self.weighted_degree(b))
            .then_with(|| a.mono.cmp(&b.mono))
            .then_with(|| b.pos.cmp(&a.pos))
    }
}

/// `a - c * m * b` for sorted `a` and `b`.
pub(crate) fn sub_scaled(
    order: &ModuleOrder,
    a: &[Term],
    c: &FieldElement,
    m: &Monomial,
    b: &[Term],
) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(mm, bc)| {
        (
            ModMono {
                mono: mm.mono.mul(m),
                pos: mm.pos,
            },
            bc,
        )
    });
    let mut next_b = bi.next();
    while let Some((mb, cb)) = next_b {
        if i == a.len() {
            break;
        }
        match order.cmp(&a[i].0, &mb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((mb, -&(c * cb)));
                next_b = bi.next();
            }
            Ordering::Equal => {
                let v = &a[i].1 - &(c * cb);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                next_b = bi.next();
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while let Some((mb, cb)) = next_b {
        out.push((mb, -&(c * cb)));
        next_b = bi.next();
    }
    out
}

pub(crate) fn scale_vector(v: &mut Vector, c: &FieldElement) {
    for t in v.iter_mut() {
        t.1 = &t.1 * c;
    }
}

/// An element of a twisted free module, stored by coordinates.
///
/// `twists[i] = a_i` means the `i`-th basis vector generates `S(-a_i)`, i.e.
/// sits in degree `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModuleElement {
    coordinates: Vec<Polynomial>,
    twists: Vec<i64>,
}

impl FreeModuleElement {
    pub fn new(
        coordinates: Vec<Polynomial>,
        twists: Vec<i64>,
    ) -> Result<FreeModuleElement, GroebnerError> {
        if coordinates.len() != twists.len() || coordinates.is_empty() {
            return Err(GroebnerError::TwistMismatch(format!(
                "{} coordinates against {} twists",
                coordinates.len(),
                twists.len()
            )));
        }
        let (n, k) = (coordinates[0].num_vars(), coordinates[0].field());
        if coordinates
            .iter()
            .any(|c| c.num_vars() != n || c.field() != k)
        {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(FreeModuleElement {
            coordinates,
            twists,
        })
    }

    pub fn zero(twists: Vec<i64>, num_vars: usize, field: Field) -> FreeModuleElement {
        let coordinates = twists
            .iter()
            .map(|_| Polynomial::zero(num_vars, field))
            .collect();
        FreeModuleElement {
            coordinates,
            twists,
        }
    }

    /// The basis vector `e_index`.
    pub fn unit(
        index: usize,
        twists: Vec<i64>,
        num_vars: usize,
        field: Field,
    ) -> FreeModuleElement {
        let mut out = FreeModuleElement::zero(twists, num_vars, field);
        out.coordinates[index] = Polynomial::one(num_vars, field);
        out
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coordinates
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.coordinates.len()
    }

    pub fn num_vars(&self) -> usize {
        self.coordinates[0].num_vars()
    }

    pub fn field(&self) -> Field {
        self.coordinates[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_zero())
    }

    /// `deg(coordinate_i) + twist_i` when this is constant over the nonzero
    /// coordinates (and every coordinate is homogeneous).
    pub fn degree(&self) -> Option<i64> {
        let mut out = None;
        for (c, a) in self.coordinates.iter().zip(&self.twists) {
            if c.is_zero() {
                continue;
            }
            let d = c.homogeneous_degree()? as i64 + a;
            match out {
                None => out = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn same_module(&self, other: &FreeModuleElement) -> Result<(), GroebnerError> {
        if self.twists != other.twists {
            return Err(GroebnerError::TwistMismatch(format!(
                "{:?} vs {:?}",
                self.twists, other.twists
            )));
        }
        if self.num_vars() != other.num_vars() || self.field() != other.field() {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(
        &self,
        other: &FreeModuleElement,
    ) -> Result<FreeModuleElement, GroebnerError> {
        self.same_module(other)?;
        let coordinates = self
            .coordinates
            .iter()
            .zip(&other.coordinates)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FreeModuleElement {
            coordinates,
            twists: self.twists.clone(),
        })
    }

    pub fn checked_sub(
        &self,
        other: &FreeModuleElement,
    ) -> Result<FreeModuleElement, GroebnerError> {
        self.same_module(other)?;
        let coordinates = self
            .coordinates
            .iter()
            .zip(&other.coordinates)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FreeModuleElement {
            coordinates,
            twists: self.twists.clone(),
        })
    }

    pub fn mul_poly(&self, p: &Polynomial) -> FreeModuleElement {
        let coordinates = self.coordinates.iter().map(|c| c * p).collect();
        FreeModuleElement {
            coordinates,
            twists: self.twists.clone(),
        }
    }

    pub(crate) fn to_vector(&self, order: &ModuleOrder) -> Vector {
        let mut v: Vector = self
            .coordinates
            .iter()
            .enumerate()
            .flat_map(|(pos, c)| {
                c.terms()
                    .iter()
                    .map(move |(m, a)| (ModMono { mono: *m, pos }, a.clone()))
            })
            .collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    /// Rebuilds an element from a vector, keeping positions `offset..offset + twists.len()`
    /// (re-indexed from zero) with the given twists.
    pub(crate) fn from_vector(
        v: &[Term],
        offset: usize,
        twists: Vec<i64>,
        num_vars: usize,
        field: Field,
    ) -> FreeModuleElement {
        let mut buckets: Vec<Vec<(Monomial, FieldElement)>> =
            twists.iter().map(|_| Vec::new()).collect();
        for (mm, c) in v {
            if mm.pos >= offset && mm.pos - offset < twists.len() {
                buckets[mm.pos - offset].push((mm.mono, c.clone()));
            }
        }
        let coordinates = buckets
            .into_iter()
            .map(|mut terms| {
                terms.sort_by_key(|t| std::cmp::Reverse(t.0));
                Polynomial::from_sorted_terms(num_vars, field, terms)
            })
            .collect();
        FreeModuleElement {
            coordinates,
            twists,
        }
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A homogeneous map `F_source -> F_target` given by its columns.
///
/// Column `j` is the image of the `j`-th source generator and has degree
/// `source_twists[j]` in the target module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleMap {
    target_twists: Vec<i64>,
    source_twists: Vec<i64>,
    columns: Vec<FreeModuleElement>,
    num_vars: usize,
    field: Field,
}

impl GradedModuleMap {
    pub fn new(
        target_twists: Vec<i64>,
        source_twists: Vec<i64>,
        columns: Vec<FreeModuleElement>,
        num_vars: usize,
        field: Field,
    ) -> Result<GradedModuleMap, GroebnerError> {
        if columns.len() != source_twists.len() {
            return Err(GroebnerError::TwistMismatch(
                "column count differs from source rank".into(),
            ));
        }
        for (col, &s) in columns.iter().zip(&source_twists) {
            if col.twists != target_twists {
                return Err(GroebnerError::TwistMismatch(format!(
                    "column twists {:?} vs target {:?}",
                    col.twists, target_twists
                )));
            }
            if col.num_vars() != num_vars || col.field() != field {
                return Err(GroebnerError::RingMismatch);
            }
            if !col.is_zero() && col.degree() != Some(s) {
                return Err(GroebnerError::NotHomogeneous);
            }
        }
        Ok(GradedModuleMap {
            target_twists,
            source_twists,
            columns,
            num_vars,
            field,
        })
    }

    /// Infers the source twists from the column degrees; zero columns are rejected.
    pub fn from_columns(
        target_twists: Vec<i64>,
        columns: Vec<FreeModuleElement>,
        num_vars: usize,
        field: Field,
    ) -> Result<GradedModuleMap, GroebnerError> {
        let source = columns
            .iter()
            .map(|c| c.degree().ok_or(GroebnerError::NotHomogeneous))
            .collect::<Result<Vec<_>, _>>()?;
        GradedModuleMap::new(target_twists, source, columns, num_vars, field)
    }

    /// A `1 x k` map `(p_1 ... p_k)` from polynomials of one common degree,
    /// with target twist `target_twist`.
    pub fn row(
        entries: &[Polynomial],
        target_twist: i64,
    ) -> Result<GradedModuleMap, GroebnerError> {
        let n = entries[0].num_vars();
        let field = entries[0].field();
        let deg = entries
            .iter()
            .find_map(|p| p.homogeneous_degree())
            .ok_or(GroebnerError::NotHomogeneous)? as i64;
        let columns = entries
            .iter()
            .map(|p| FreeModuleElement::new(vec![p.clone()], vec![target_twist]))
            .collect::<Result<Vec<_>, _>>()?;
        let source = vec![deg + target_twist; entries.len()];
        GradedModuleMap::new(vec![target_twist], source, columns, n, field)
    }

    pub fn num_rows(&self) -> usize {
        self.target_twists.len()
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn target_twists(&self) -> &[i64] {
        &self.target_twists
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source_twists
    }

    pub fn columns(&self) -> &[FreeModuleElement] {
        &self.columns
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.columns[col].coordinates[row]
    }

    /// Image of a source element given by its coordinates.
    pub fn apply(&self, v: &FreeModuleElement) -> Result<FreeModuleElement, GroebnerError> {
        if v.twists != self.source_twists {
            return Err(GroebnerError::TwistMismatch(
                "argument is not in the source module".into(),
            ));
        }
        let mut acc =
            FreeModuleElement::zero(self.target_twists.clone(), self.num_vars, self.field);
        for (col, c) in self.columns.iter().zip(&v.coordinates) {
            if !c.is_zero() {
                acc = acc.checked_add(&col.mul_poly(c))?;
            }
        }
        Ok(acc)
    }

    /// `self . inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &GradedModuleMap) -> Result<GradedModuleMap, GroebnerError> {
        let columns = inner
            .columns
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        GradedModuleMap::new(
            self.target_twists.clone(),
            inner.source_twists.clone(),
            columns,
            self.num_vars,
            self.field,
        )
    }

    /// True when no entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.columns.iter().all(|c| {
            c.coordinates
                .iter()
                .all(|p| p.is_zero() || p.as_constant().is_none())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }
}
