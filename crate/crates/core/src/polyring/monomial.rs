//! Dense exponent vectors for up to four variables, ordered by graded reverse
//! lexicographic order with `x > y > z > w`.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 4;

/// Variable names in index order.
pub const VAR_NAMES: [&str; MAX_VARS] = ["x", "y", "z", "w"];

/// A monomial `x^a y^b z^c w^d`. Unused trailing slots stay zero, so the
/// same type serves three- and four-variable rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
    };

    /// Panics if more than [`MAX_VARS`] exponents are given.
    pub fn new(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(index: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[index] = 1;
        m
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.exps[index]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    /// Product, or `None` if some exponent leaves the 16-bit range.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(out)
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, e: u32) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            let v = (self.exps[i] as u32).checked_mul(e)?;
            out.exps[i] = u16::try_from(v).ok()?;
        }
        Some(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            debug_assert!(self.exps[i] <= other.exps[i]);
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out
    }

    /// Index of the only variable occurring, if this is a pure power `u^k`, `k > 0`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Formal derivative with respect to `index`: the new monomial and the
    /// exponent that becomes the coefficient, or `None` if it vanishes.
    pub fn derivative(&self, index: usize) -> Option<(Monomial, u16)> {
        let e = self.exps[index];
        if e == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[index] -= 1;
        Some((out, e))
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(VAR_NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in the first `num_vars` variables,
/// in descending term order.
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(
        var: usize,
        num_vars: usize,
        left: u32,
        cur: &mut [u16; MAX_VARS],
        out: &mut Vec<Monomial>,
    ) {
        if var + 1 == num_vars {
            cur[var] = left as u16;
            out.push(Monomial { exps: *cur });
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e as u16;
            rec(var + 1, num_vars, left - e, cur, out);
        }
        cur[var] = 0;
    }
    assert!((1..=MAX_VARS).contains(&num_vars));
    let mut out = Vec::new();
    rec(0, num_vars, degree, &mut [0; MAX_VARS], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Number of monomials of degree `degree` in `num_vars` variables; zero for
/// negative degrees.
pub fn count_monomials(num_vars: usize, degree: i64) -> u64 {
    if degree < 0 {
        return 0;
    }
    // binom(degree + n - 1, n - 1)
    let n = num_vars as u64 - 1;
    let mut acc = 1u64;
    for i in 1..=n {
        acc = acc * (degree as u64 + i) / i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_orders_variables_and_degrees() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert!(x > y && y > z);
        // x*z < y^2 in degrevlex
        assert!(x.mul(&z) < y.mul(&y));
        assert!(Monomial::new(&[0, 0, 2]) > x);
    }

    #[test]
    fn enumeration_matches_binomial_count() {
        for n in 1..=4 {
            for d in 0..6 {
                let ms = monomials_of_degree(n, d);
                assert_eq!(ms.len() as u64, count_monomials(n, d as i64));
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
            }
        }
        assert_eq!(count_monomials(3, -1), 0);
    }

    #[test]
    fn overflow_is_detected() {
        let big = Monomial::new(&[u16::MAX, 0, 0]);
        assert!(big.checked_mul(&Monomial::var(0)).is_none());
        assert!(Monomial::var(0).checked_pow(70_000).is_none());
    }

    #[test]
    fn display_uses_explicit_operators() {
        assert_eq!(Monomial::new(&[3, 1, 0, 2]).to_string(), "x^3*y*w^2");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
