//! Kernels of graded maps via a Gröbner basis of the graph module.

use super::buchberger::run_engine;
use super::module::{FreeModuleElement, GradedModuleMap, ModMono, ModuleOrder, Vector};
use super::resolution::minimal_generators;
use super::GroebnerError;

/// Minimal generators of `ker(map)` as the columns of a map into the source.
pub fn syzygy_module(map: &GradedModuleMap) -> Result<GradedModuleMap, GroebnerError> {
    syzygy_module_truncated(map, None)
}

/// As [`syzygy_module`], but only syzygies of degree `<= cap` are found when
/// a cap is given (the result then generates the kernel up to that degree).
pub fn syzygy_module_truncated(
    map: &GradedModuleMap,
    cap: Option<i64>,
) -> Result<GradedModuleMap, GroebnerError> {
    let rows = map.num_rows();
    let (n, field) = (map.num_vars(), map.field());
    let source = map.source_twists().to_vec();

    // Graph module: column j becomes (M e_j, e_j) in F_target + F_source.
    let mut twists = map.target_twists().to_vec();
    twists.extend_from_slice(&source);
    let order = ModuleOrder::elimination(twists, rows);
    let inputs: Vec<Vector> = map
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut v = col.to_vector(&ModuleOrder::top(map.target_twists().to_vec()));
            v.push((
                ModMono {
                    mono: crate::polyring::Monomial::ONE,
                    pos: rows + j,
                },
                field.one(),
            ));
            v.sort_by(|a, b| order.cmp(&b.0, &a.0));
            v
        })
        .collect();
    let out = run_engine(&order, inputs, cap);

    let mut syz = Vec::new();
    for v in &out.basis {
        if v[0].0.pos < rows {
            continue;
        }
        let s = FreeModuleElement::from_vector(v, rows, source.clone(), n, field);
        if !map.apply(&s)?.is_zero() {
            return Err(GroebnerError::Internal(format!(
                "syzygy {s} does not map to zero"
            )));
        }
        syz.push(s);
    }
    let (gens, _) = minimal_generators(&syz)?;
    let degrees = gens
        .iter()
        .map(|g| g.degree().expect("nonzero syzygy"))
        .collect();
    GradedModuleMap::new(source, degrees, gens, n, field)
}
