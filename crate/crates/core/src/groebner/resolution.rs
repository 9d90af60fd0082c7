//! Minimal generating sets and minimal free resolutions of graded modules.

use crate::polyring::count_monomials;

use super::buchberger::{check_inputs, run_engine, GroebnerBasis};
use super::module::{FreeModuleElement, GradedModuleMap, ModuleOrder};
use super::syzygy::syzygy_module;
use super::{BettiTable, ExponentVector, GroebnerError};

/// A minimal generating subset of the submodule spanned by `gens`, ordered
/// by degree, with its degree list. Zero elements are ignored.
pub fn minimal_generators(
    gens: &[FreeModuleElement],
) -> Result<(Vec<FreeModuleElement>, ExponentVector), GroebnerError> {
    let nonzero: Vec<&FreeModuleElement> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok((Vec::new(), ExponentVector::default()));
    };
    let owned: Vec<FreeModuleElement> = nonzero.iter().map(|g| (*g).clone()).collect();
    check_inputs(&owned, first.twists(), first.num_vars(), first.field())?;
    let order = ModuleOrder::top(first.twists().to_vec());
    let out = run_engine(
        &order,
        owned.iter().map(|g| g.to_vector(&order)).collect(),
        None,
    );
    let mut keep = out.minimal_inputs;
    keep.sort_by_key(|&k| (owned[k].degree(), k));
    let chosen: Vec<FreeModuleElement> = keep.into_iter().map(|k| owned[k].clone()).collect();
    let degrees = chosen
        .iter()
        .map(|g| g.degree().expect("nonzero"))
        .collect();
    Ok((chosen, ExponentVector::new(degrees)))
}

fn rebuild(
    map: &GradedModuleMap,
    columns: Vec<FreeModuleElement>,
) -> Result<GradedModuleMap, GroebnerError> {
    let source = columns
        .iter()
        .map(|c| c.degree().expect("nonzero column"))
        .collect();
    GradedModuleMap::new(
        map.target_twists().to_vec(),
        source,
        columns,
        map.num_vars(),
        map.field(),
    )
}

/// Removes redundant columns and cancels unit entries until the map is a
/// minimal presentation of the same cokernel.
pub fn prune_presentation(map: &GradedModuleMap) -> Result<GradedModuleMap, GroebnerError> {
    let mut current = rebuild(map, minimal_generators(map.columns())?.0)?;
    loop {
        let pivot = (0..current.num_cols()).find_map(|c| {
            (0..current.num_rows()).find_map(|r| {
                let e = current.entry(r, c);
                if e.is_zero() {
                    None
                } else {
                    e.as_constant().map(|u| (r, c, u))
                }
            })
        });
        let Some((r, c, u)) = pivot else {
            return Ok(current);
        };
        let u_inv = u.inv();
        let pivot_col = current.columns()[c].clone();
        let mut target = current.target_twists().to_vec();
        target.remove(r);
        let mut columns = Vec::new();
        for (k, col) in current.columns().iter().enumerate() {
            if k == c {
                continue;
            }
            let factor = current.entry(r, k).scale(&u_inv);
            let cleared = if factor.is_zero() {
                col.clone()
            } else {
                col.checked_sub(&pivot_col.mul_poly(&factor))?
            };
            let mut coords = cleared.coordinates().to_vec();
            coords.remove(r);
            let v = FreeModuleElement::new(coords, target.clone())?;
            if !v.is_zero() {
                columns.push(v);
            }
        }
        let reduced = GradedModuleMap::new(
            target.clone(),
            columns
                .iter()
                .map(|c| c.degree().expect("nonzero"))
                .collect(),
            columns,
            current.num_vars(),
            current.field(),
        )?;
        current = rebuild(&reduced, minimal_generators(reduced.columns())?.0)?;
    }
}

/// A minimal free resolution `... -> F_2 -> F_1 -> F_0`; `maps[i]` is
/// `F_{i+1} -> F_i`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub maps: Vec<GradedModuleMap>,
    pub betti: BettiTable,
}

impl Resolution {
    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> Result<bool, GroebnerError> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No map has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.is_minimal())
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }
}

/// Minimal free resolution of `coker(presentation)`, failing once more than
/// `max_length` maps would be needed.
pub fn minimal_free_resolution(
    presentation: &GradedModuleMap,
    max_length: usize,
) -> Result<Resolution, GroebnerError> {
    let first = prune_presentation(presentation)?;
    let mut stages = vec![first.target_twists().to_vec()];
    let mut maps = Vec::new();
    let mut current = first;
    while current.num_cols() > 0 {
        if maps.len() == max_length {
            return Err(GroebnerError::ResolutionTooLong {
                max_length,
                partial: BettiTable::from_stages(&stages),
            });
        }
        stages.push(current.source_twists().to_vec());
        maps.push(current.clone());
        current = syzygy_module(&current)?;
    }
    Ok(Resolution {
        maps,
        betti: BettiTable::from_stages(&stages),
    })
}

/// Minimal free resolution of the submodule spanned by the columns of `map`
/// (stage 0 holds its minimal generators).
pub fn resolve_image(
    map: &GradedModuleMap,
    max_length: usize,
) -> Result<Resolution, GroebnerError> {
    let gens = rebuild(map, minimal_generators(map.columns())?.0)?;
    let relations = syzygy_module(&gens)?;
    let res = minimal_free_resolution(&relations, max_length)?;
    if res.betti.stage_degrees(0) != gens.source_twists() {
        return Err(GroebnerError::Internal(
            "relations of minimal generators were not minimal".into(),
        ));
    }
    Ok(res)
}

/// `dim_k coker(map)_k`, from a Gröbner basis of the image.
pub fn cokernel_hilbert_function(map: &GradedModuleMap, gb: &GroebnerBasis, k: i64) -> i64 {
    let free: u64 = map
        .target_twists()
        .iter()
        .map(|&a| count_monomials(map.num_vars(), k - a))
        .sum();
    free as i64 - gb.hilbert_function(k) as i64
}
