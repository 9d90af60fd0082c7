use nodal_syzygy::groebner::{
    cokernel_hilbert_function, graded_kernel_oracle, minimal_free_resolution, syzygy_module,
    FreeModuleElement, GradedModuleMap, GroebnerBasis, DEFAULT_CELL_BUDGET,
};
use nodal_syzygy::polyring::{monomials_of_degree, Field, Polynomial};
use proptest::prelude::*;

const F: Field = Field::Prime(32003);

fn form(degree: u32) -> impl Strategy<Value = Polynomial> {
    let n = monomials_of_degree(3, degree).len();
    prop::collection::vec(-4i64..=4, n).prop_map(move |cs| {
        Polynomial::from_terms(
            3,
            F,
            monomials_of_degree(3, degree)
                .into_iter()
                .zip(cs)
                .map(|(m, c)| (m, F.from_i64(c))),
        )
    })
}

fn nonconstant_form() -> impl Strategy<Value = Polynomial> {
    (2u32..=4)
        .prop_flat_map(form)
        .prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn engine_matches_dense_oracle(f in nonconstant_form()) {
        let d = f.homogeneous_degree().unwrap() as i64;
        let syz = syzygy_module(&GradedModuleMap::row(&f.gradient(), 1 - d).unwrap()).unwrap();
        for col in syz.columns() {
            let comps = col.coordinates();
            let mut acc = Polynomial::zero(3, F);
            for (c, g) in comps.iter().zip(f.gradient()) {
                acc = &acc + &(c * &g);
            }
            prop_assert!(acc.is_zero());
        }
        let gb = GroebnerBasis::compute(syz.columns(), &[0, 0, 0], 3, F).unwrap();
        let oracle = graded_kernel_oracle(&f, d, DEFAULT_CELL_BUDGET).unwrap();
        for (&e, entry) in &oracle.entries {
            prop_assert_eq!(gb.hilbert_function(e) as usize, entry.dimension);
            let g = syz.source_twists().iter().filter(|&&t| t == e).count();
            prop_assert_eq!(g, entry.generators);
        }
    }

    #[test]
    fn resolutions_are_minimal_complexes(
        gens in prop::collection::vec((1u32..=3).prop_flat_map(form), 2..=4)
    ) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let columns: Vec<FreeModuleElement> =
            gens.iter().map(|g| FreeModuleElement::new(vec![g.clone()], vec![0]).unwrap()).collect();
        let map = GradedModuleMap::from_columns(vec![0], columns.clone(), 3, F).unwrap();
        let res = minimal_free_resolution(&map, 4).unwrap();
        prop_assert!(res.is_complex().unwrap());
        prop_assert!(res.is_minimal());
        prop_assert!(res.length() <= 3);
        let gb = GroebnerBasis::compute(&columns, &[0], 3, F).unwrap();
        for k in 0..9 {
            prop_assert_eq!(res.betti.euler_characteristic(3, k), cokernel_hilbert_function(&map, &gb, k));
        }
    }

    #[test]
    fn combinations_reduce_to_zero(
        a in form(2), b in form(2), c in form(1), c2 in form(1), e in form(2), e2 in form(1)
    ) {
        // both generators have degree 2 in S ⊕ S(-1)
        let g1 = FreeModuleElement::new(vec![a, c], vec![0, 1]).unwrap();
        let g2 = FreeModuleElement::new(vec![b, c2], vec![0, 1]).unwrap();
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let gb = GroebnerBasis::compute(&[g1.clone(), g2.clone()], &[0, 1], 3, F).unwrap();
        let combo = g1.mul_poly(&e).checked_add(&g2.mul_poly(&(&e2 * &e2))).unwrap();
        prop_assert!(gb.contains(&combo).unwrap());
        prop_assert!(gb.normal_form(&combo).unwrap().is_zero());
    }
}
