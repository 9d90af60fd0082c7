//! Sparse multivariate polynomials over an exact field.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::field::{Field, FieldElement};
use super::monomial::{Monomial, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("exponent overflow (exponents are limited to 16 bits)")]
    ExponentOverflow,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial in `num_vars` (3 or 4, though 1..=4 works) variables.
///
/// Terms are stored in descending term order without zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    field: Field,
    terms: Vec<(Monomial, FieldElement)>,
}

/// Outcome of the Euler identity `sum_u u * f_u = deg(f) * f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCheck {
    pub holds: bool,
    pub factor: u32,
    /// The characteristic divides the degree, so both sides vanish.
    pub characteristic_divides_degree: bool,
}

impl Polynomial {
    pub fn zero(num_vars: usize, field: Field) -> Polynomial {
        assert!((1..=MAX_VARS).contains(&num_vars));
        Polynomial {
            num_vars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement, num_vars: usize) -> Polynomial {
        Polynomial::monomial(Monomial::ONE, c, num_vars)
    }

    pub fn from_i64(n: i64, num_vars: usize, field: Field) -> Polynomial {
        Polynomial::constant(field.from_i64(n), num_vars)
    }

    pub fn one(num_vars: usize, field: Field) -> Polynomial {
        Polynomial::from_i64(1, num_vars, field)
    }

    pub fn var(index: usize, num_vars: usize, field: Field) -> Polynomial {
        assert!(index < num_vars);
        Polynomial::monomial(Monomial::var(index), field.one(), num_vars)
    }

    pub fn monomial(m: Monomial, c: FieldElement, num_vars: usize) -> Polynomial {
        let field = c.field();
        let mut p = Polynomial::zero(num_vars, field);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Canonicalizes an arbitrary term list: merges duplicates, drops zeros, sorts.
    pub fn from_terms<I>(num_vars: usize, field: Field, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(c.field(), field);
            match acc.get_mut(&m) {
                Some(slot) => *slot = &*slot + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(num_vars, field, acc)
    }

    fn from_map(num_vars: usize, field: Field, acc: HashMap<Monomial, FieldElement>) -> Polynomial {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Polynomial {
            num_vars,
            field,
            terms,
        }
    }

    /// Builds directly from terms already sorted descending with no zeros or repeats.
    pub(crate) fn from_sorted_terms(
        num_vars: usize,
        field: Field,
        terms: Vec<(Monomial, FieldElement)>,
    ) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            num_vars,
            field,
            terms,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElement)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    /// The constant value, if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    fn same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars || self.field != other.field {
            return Err(PolyError::RingMismatch {
                left: format!("{} in {} vars", self.field, self.num_vars),
                right: format!("{} in {} vars", other.field, other.num_vars),
            });
        }
        Ok(())
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
        match op {
            ArithOp::Add => self.checked_add(other),
            ArithOp::Sub => self.checked_sub(other),
            ArithOp::Mul => self.checked_mul(other),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut acc: HashMap<Monomial, FieldElement> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot = &*slot + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial::from_map(self.num_vars, self.field, acc))
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars, self.field);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms,
        }
    }

    /// `c * m * self`; panics on exponent overflow.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars, self.field);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(self.num_vars, self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Normalizes the leading coefficient to one (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.num_vars, "variable index out of range");
        let terms = self.terms.iter().filter_map(|(m, c)| {
            m.derivative(var)
                .map(|(dm, e)| (dm, c * &self.field.from_i64(e as i64)))
        });
        // Differentiation in one variable keeps degrevlex order among survivors.
        let terms: Vec<_> = terms.filter(|(_, c)| !c.is_zero()).collect();
        Polynomial::from_terms(self.num_vars, self.field, terms)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.num_vars)
            .map(|v| self.partial_derivative(v))
            .collect()
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = &t * &p.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `x_i -> sum_k images[i][k] * x_k` for every variable.
    pub fn substitute_linear(&self, images: &[Vec<FieldElement>]) -> Polynomial {
        assert_eq!(images.len(), self.num_vars);
        let forms: Vec<Polynomial> = images
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    self.num_vars,
                    self.field,
                    row.iter()
                        .enumerate()
                        .map(|(k, c)| (Monomial::var(k), c.clone())),
                )
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = forms
            .iter()
            .map(|_| vec![Polynomial::one(self.num_vars, self.field)])
            .collect();
        let mut acc = Polynomial::zero(self.num_vars, self.field);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), self.num_vars);
            for i in 0..self.num_vars {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &forms[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `self / divisor` when the division is exact, `None` otherwise.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if self.same_ring(divisor).is_err() || divisor.is_zero() {
            return None;
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_sorted_terms(
            self.num_vars,
            self.field,
            quot,
        ))
    }

    /// Checks `sum_u u * f_u = deg(f) * f`.
    pub fn euler_check(&self) -> Result<EulerCheck, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let deg = self.degree().unwrap_or(0);
        let mut lhs = Polynomial::zero(self.num_vars, self.field);
        for v in 0..self.num_vars {
            lhs = &lhs
                + &self
                    .partial_derivative(v)
                    .mul_term(&Monomial::var(v), &self.field.one());
        }
        let rhs = self.scale(&self.field.from_i64(deg as i64));
        let p = self.field.characteristic();
        Ok(EulerCheck {
            holds: lhs == rhs,
            factor: deg,
            characteristic_divides_degree: p != 0 && deg.is_multiple_of(p),
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on ring mismatch or exponent overflow; use the checked form otherwise.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn q(s: &str) -> Polynomial {
        parse(s, 3, Field::Rational).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        assert_eq!(&q("x+y") * &q("x-y"), q("x^2-y^2"));
        assert!((&q("x^3+y") * &q("0")).is_zero());
    }

    #[test]
    fn frobenius_in_characteristic_five() {
        let f5 = Field::prime(5).unwrap();
        let s = parse("x+y", 3, f5).unwrap();
        assert_eq!(s.pow(5).unwrap(), parse("x^5+y^5", 3, f5).unwrap());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = q("x");
        let b = parse("x", 4, Field::Rational).unwrap();
        let c = parse("x", 3, Field::Prime(7)).unwrap();
        assert!(matches!(
            a.arith(&b, ArithOp::Add),
            Err(PolyError::RingMismatch { .. })
        ));
        assert!(matches!(
            a.arith(&c, ArithOp::Mul),
            Err(PolyError::RingMismatch { .. })
        ));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(q("x^3+y^3-3*x*y*z").partial_derivative(2), q("-3*x*y"));
        assert!(q("y^2").partial_derivative(0).is_zero());
        assert_eq!(q("x^2+2*y^2+3*z^2").partial_derivative(0), q("2*x"));
    }

    #[test]
    fn euler_identity_examples() {
        let e = q("x^3+y^3-3*x*y*z").euler_check().unwrap();
        assert!(e.holds && e.factor == 3 && !e.characteristic_divides_degree);
        let e = q("x*y*z*(x^2+y^2+z^2)").euler_check().unwrap();
        assert!(e.holds && e.factor == 5);
        assert_eq!(q("x+y^2").euler_check(), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn euler_check_flags_characteristic_dividing_degree() {
        // F_2 is not an allowed field; F_3 with a cubic shows the same situation.
        let f3 = Field::prime(3).unwrap();
        let e = parse("x^3+y*z^2", 3, f3).unwrap().euler_check().unwrap();
        assert!(e.holds && e.characteristic_divides_degree);
    }

    #[test]
    fn exact_division() {
        let f = q("x*y*z*(x^2+y^2+z^2)");
        assert_eq!(f.exact_div(&q("x*z")).unwrap(), q("y*(x^2+y^2+z^2)"));
        assert!(f.exact_div(&q("x+y")).is_none());
        assert!(q("x^2").exact_div(&q("0")).is_none());
    }

    #[test]
    fn linear_substitution() {
        let f = q("x^2 - y^2");
        // x -> x + y, y -> x - y
        let one = Field::Rational.one();
        let m1 = Field::Rational.from_i64(-1);
        let zero = Field::Rational.zero();
        let images = vec![
            vec![one.clone(), one.clone(), zero.clone()],
            vec![one.clone(), m1, zero.clone()],
            vec![zero.clone(), zero, one],
        ];
        assert_eq!(f.substitute_linear(&images), q("4*x*y"));
    }

    #[test]
    fn coefficient_lookup_and_constant_detection() {
        let f = q("3*x^2 - 5*y*z + 7");
        assert_eq!(
            f.coefficient(&Monomial::new(&[0, 1, 1])),
            Field::Rational.from_i64(-5)
        );
        assert!(f.coefficient(&Monomial::var(0)).is_zero());
        assert_eq!(q("7").as_constant(), Some(Field::Rational.from_i64(7)));
        assert_eq!(f.as_constant(), None);
        assert!(!f.is_homogeneous());
    }
}
