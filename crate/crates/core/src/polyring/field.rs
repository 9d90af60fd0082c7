//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prime used by the fast characteristic-p mode unless another is requested.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime below 2^31")]
    NotAnOddPrime(u64),
}

/// Descriptor of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// The prime field `F_p`; `p` must be an odd prime below 2^31.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p <= 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(FieldError::NotAnOddPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElement::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElement::Residue {
                    value: r.to_u32().expect("residue fits in u32"),
                    modulus: p,
                }
            }
        }
    }

    /// `num/den` in this field, or `None` when the denominator vanishes.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<FieldElement> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(&self.from_bigint(num) * &d.inv())
    }

    /// Text label used in reports.
    pub fn label(&self) -> String {
        match self {
            Field::Rational => "QQ".to_string(),
            Field::Prime(p) => format!("ZZ/{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator (guaranteed
/// by `BigRational`); residues live in `[0, p)`. Mixing elements of different
/// fields is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    /// True for the element printed with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        }
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The value as a rational, if this is a rational element.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Residue { .. } => None,
        }
    }

    /// The value as a machine integer when it is one (residues always are).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(q) if q.is_integer() => q.numer().to_i64(),
            FieldElement::Rational(_) => None,
            FieldElement::Residue { value, .. } => Some(*value as i64),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Residue {
                    value: a,
                    modulus: p,
                },
                FieldElement::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => FieldElement::Residue {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (
                FieldElement::Residue {
                    value: a,
                    modulus: p,
                },
                FieldElement::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => FieldElement::Residue {
                value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Residue {
                    value: a,
                    modulus: p,
                },
                FieldElement::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => FieldElement::Residue {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_descriptor_rejects_composites_and_two() {
        assert!(Field::prime(32003).is_ok());
        assert_eq!(Field::prime(2), Err(FieldError::NotAnOddPrime(2)));
        assert!(Field::prime(32001).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn residues_stay_reduced() {
        let f = Field::Prime(7);
        let a = f.from_i64(-1);
        assert_eq!(
            a,
            FieldElement::Residue {
                value: 6,
                modulus: 7
            }
        );
        assert!((&a + &f.one()).is_zero());
        assert_eq!(&f.from_i64(3) * &f.from_i64(3).inv(), f.one());
        assert_eq!(f.from_i64(3).pow(6), f.one());
    }

    #[test]
    fn rationals_are_in_lowest_terms() {
        let q = Field::Rational;
        let half = q.from_ratio(&BigInt::from(-2), &BigInt::from(-4)).unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert!(q.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
        assert_eq!((&half + &half), q.one());
    }

    #[test]
    fn ratio_in_prime_field_uses_inverse() {
        let f = Field::Prime(5);
        let e = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(e, f.from_i64(3));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_none());
    }
}
