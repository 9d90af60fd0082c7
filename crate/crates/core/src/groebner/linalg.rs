//! Dense exact row reduction over `Q` or `F_p`.
//!
//! Used by the graded kernel oracle and by span comparisons. It shares no
//! code with the Gröbner engine.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{Field, FieldElement};

pub(crate) trait Scalars {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - c * b`
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn lift(&self, a: &FieldElement) -> Self::E;
    fn lower(&self, a: &Self::E) -> FieldElement;
}

pub(crate) struct ModP(pub u64);

impl Scalars for ModP {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> u32 {
        let (mut b, mut e, mut acc) = (*a as u64, self.0 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.0;
            }
            b = b * b % self.0;
            e >>= 1;
        }
        acc as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.0) as u32
    }
    fn sub_mul(&self, a: &u32, c: &u32, b: &u32) -> u32 {
        let prod = *c as u64 * *b as u64 % self.0;
        ((*a as u64 + self.0 - prod) % self.0) as u32
    }
    fn lift(&self, a: &FieldElement) -> u32 {
        match a {
            FieldElement::Residue { value, .. } => *value,
            FieldElement::Rational(_) => panic!("rational entry in a prime-field matrix"),
        }
    }
    fn lower(&self, a: &u32) -> FieldElement {
        FieldElement::Residue {
            value: *a,
            modulus: self.0 as u32,
        }
    }
}

pub(crate) struct Rationals;

impl Scalars for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a - c * b
    }
    fn lift(&self, a: &FieldElement) -> BigRational {
        a.as_rational()
            .expect("prime-field entry in a rational matrix")
            .clone()
    }
    fn lower(&self, a: &BigRational) -> FieldElement {
        FieldElement::Rational(a.clone())
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub(crate) fn rref_in<S: Scalars>(s: &S, rows: &mut Vec<Vec<S::E>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !s.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = s.inv(&rows[r][col]);
        for v in rows[r].iter_mut().skip(col) {
            *v = s.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || s.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for k in col..ncols {
                if !s.is_zero(&pivot_row[k]) {
                    row[k] = s.sub_mul(&row[k], &c, &pivot_row[k]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn kernel_in<S: Scalars>(
    s: &S,
    mut rows: Vec<Vec<S::E>>,
    ncols: usize,
) -> Vec<Vec<S::E>> {
    let pivots = rref_in(s, &mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![s.zero(); ncols];
        v[free] = s.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !s.is_zero(&row[free]) {
                v[p] = s.sub_mul(&s.zero(), &row[free], &s.one());
            }
        }
        basis.push(v);
    }
    basis
}

fn with_scalars<R>(
    field: Field,
    on_p: impl FnOnce(&ModP) -> R,
    on_q: impl FnOnce(&Rationals) -> R,
) -> R {
    match field {
        Field::Prime(p) => on_p(&ModP(p as u64)),
        Field::Rational => on_q(&Rationals),
    }
}

fn lift_rows<S: Scalars>(s: &S, rows: &[Vec<FieldElement>]) -> Vec<Vec<S::E>> {
    rows.iter()
        .map(|r| r.iter().map(|a| s.lift(a)).collect())
        .collect()
}

fn lower_rows<S: Scalars>(s: &S, rows: &[Vec<S::E>]) -> Vec<Vec<FieldElement>> {
    rows.iter()
        .map(|r| r.iter().map(|a| s.lower(a)).collect())
        .collect()
}

/// Rank of the matrix whose rows are `rows` (all of length `ncols`).
pub fn rank(field: Field, rows: &[Vec<FieldElement>], ncols: usize) -> usize {
    with_scalars(
        field,
        |s| rref_in(s, &mut lift_rows(s, rows), ncols).len(),
        |s| rref_in(s, &mut lift_rows(s, rows), ncols).len(),
    )
}

/// Reduced row echelon form (nonzero rows only) and pivot columns.
pub fn row_reduce(
    field: Field,
    rows: &[Vec<FieldElement>],
    ncols: usize,
) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    with_scalars(
        field,
        |s| {
            let mut r = lift_rows(s, rows);
            let piv = rref_in(s, &mut r, ncols);
            (lower_rows(s, &r), piv)
        },
        |s| {
            let mut r = lift_rows(s, rows);
            let piv = rref_in(s, &mut r, ncols);
            (lower_rows(s, &r), piv)
        },
    )
}

/// A basis of `{v : A v = 0}` for the matrix with the given rows.
pub fn kernel(field: Field, rows: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    with_scalars(
        field,
        |s| lower_rows(s, &kernel_in(s, lift_rows(s, rows), ncols)),
        |s| lower_rows(s, &kernel_in(s, lift_rows(s, rows), ncols)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: Field, rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter()
            .map(|r| r.iter().map(|&a| field.from_i64(a)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel_agree_over_both_fields() {
        for field in [Field::Rational, Field::Prime(32003)] {
            let a = m(field, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
            assert_eq!(rank(field, &a, 3), 2);
            let k = kernel(field, &a, 3);
            assert_eq!(k.len(), 1);
            for row in &a {
                let dot = row
                    .iter()
                    .zip(&k[0])
                    .fold(field.zero(), |acc, (x, y)| &acc + &(x * y));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn characteristic_matters() {
        let a = m(Field::Prime(5), &[&[1, 2], &[3, 1]]);
        assert_eq!(rank(Field::Prime(5), &a, 2), 1);
        let a = m(Field::Rational, &[&[1, 2], &[3, 1]]);
        assert_eq!(rank(Field::Rational, &a, 2), 2);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(rank(Field::Rational, &[], 4), 0);
        assert_eq!(kernel(Field::Rational, &[], 2).len(), 2);
        let (r, p) = row_reduce(Field::Rational, &m(Field::Rational, &[&[0, 0], &[0, 3]]), 2);
        assert_eq!(p, vec![1]);
        assert_eq!(r, m(Field::Rational, &[&[0, 1]]));
    }
}
