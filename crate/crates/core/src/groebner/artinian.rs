//! Finite-dimensionality of `S/I` for homogeneous ideals.

use crate::polyring::{monomials_of_degree, Polynomial};

use super::buchberger::GroebnerBasis;
use super::module::FreeModuleElement;
use super::GroebnerError;

/// Whether `S/(gens)` is finite dimensional, and its dimension if so.
///
/// The quotient is Artinian exactly when the leading-term ideal contains a
/// pure power of every variable; the dimension is then the number of
/// standard monomials.
pub fn is_artinian_quotient(gens: &[Polynomial]) -> Result<(bool, Option<u64>), GroebnerError> {
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok((false, None));
    };
    let (n, field) = (first.num_vars(), first.field());
    let elems = nonzero
        .iter()
        .map(|g| FreeModuleElement::new(vec![(*g).clone()], vec![0]))
        .collect::<Result<Vec<_>, _>>()?;
    let gb = GroebnerBasis::compute(&elems, &[0], n, field)?;
    let leads: Vec<_> = gb.leading_monomials().into_iter().map(|(_, m)| m).collect();
    if leads.iter().any(|m| m.is_one()) {
        return Ok((true, Some(0)));
    }
    let mut bound = 0u32;
    for v in 0..n {
        match leads
            .iter()
            .filter(|m| m.pure_power_of() == Some(v))
            .map(|m| m.exponent(v))
            .min()
        {
            Some(e) => bound += e as u32 - 1,
            None => return Ok((false, None)),
        }
    }
    let mut dim = 0u64;
    for deg in 0..=bound {
        dim += monomials_of_degree(n, deg)
            .iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count() as u64;
    }
    Ok((true, Some(dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, Field};

    fn polys(gens: &[&str]) -> Vec<Polynomial> {
        gens.iter()
            .map(|g| parse(g, 3, Field::Rational).unwrap())
            .collect()
    }

    #[test]
    fn smooth_conic_gradient() {
        assert_eq!(
            is_artinian_quotient(&polys(&["2*x", "2*y", "2*z"])).unwrap(),
            (true, Some(1))
        );
    }

    #[test]
    fn a_line_survives() {
        assert_eq!(
            is_artinian_quotient(&polys(&["x", "y"])).unwrap(),
            (false, None)
        );
        assert_eq!(is_artinian_quotient(&[]).unwrap(), (false, None));
    }

    #[test]
    fn unit_ideal_has_dimension_zero() {
        assert_eq!(
            is_artinian_quotient(&polys(&["3", "x"])).unwrap(),
            (true, Some(0))
        );
    }

    #[test]
    fn nodal_cubic_is_singular() {
        let f = parse("x^3+y^3-3*x*y*z", 3, Field::Rational).unwrap();
        assert!(!is_artinian_quotient(&f.gradient()).unwrap().0);
    }

    #[test]
    fn fermat_cubic_milnor_number() {
        let f = parse("x^3+y^3+z^3", 3, Field::Rational).unwrap();
        assert_eq!(
            is_artinian_quotient(&f.gradient()).unwrap(),
            (true, Some(8))
        );
    }
}
