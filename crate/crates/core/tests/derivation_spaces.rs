//! Cross-checks of the derivation-type spaces on trees and a few non-trees.

use proptest::prelude::*;
use zigzag_core::exactlin::Field;
use zigzag_core::linmaps::{
    has_derivation_shape, hh_dims, identity_defect, inner_dim_by_center, inner_space, solve, structured_space,
    Flavor, HochschildDims,
};
use zigzag_core::quiver::{random_tree, Graph};
use zigzag_core::zigzag::{build_algebra, Element};

fn rational(g: &Graph) -> zigzag_core::zigzag::ZigzagAlgebra {
    build_algebra(g, Field::rationals()).unwrap()
}

#[test]
fn dimension_formulas_on_paths_and_stars() {
    for n in 2..=7 {
        for g in [Graph::path(n), Graph::star(n)] {
            let a = rational(&g);
            assert_eq!(solve(&a, Flavor::Derivation).unwrap().dimension(), 3 * n - 2);
            assert_eq!(inner_space(&a).unwrap().dimension(), 3 * n - 3);
            assert_eq!(inner_dim_by_center(&a), 3 * n - 3);
            assert_eq!(solve(&a, Flavor::Anti).unwrap().dimension(), 0);
            assert_eq!(hh_dims(&a).unwrap(), HochschildDims { hh0: n + 1, hh1: 1 });
        }
    }
}

#[test]
fn derivation_bases_have_the_parametrised_shape() {
    let a = rational(&random_tree(9, 5).unwrap());
    let der = solve(&a, Flavor::Derivation).unwrap();
    assert!(der.basis().iter().all(|m| has_derivation_shape(&a, m)));
    assert!(der.span_equal(&structured_space(&a).unwrap()).unwrap());
}

/// Computed for information only: the cycle graphs are outside the tree
/// hypothesis. The center and the parametrisation still behave.
#[test]
fn cycles_are_computed_without_tree_assertions() {
    for n in 3..=5 {
        let a = rational(&Graph::cycle(n));
        let der = solve(&a, Flavor::Derivation).unwrap();
        assert_eq!(a.center().len(), n + 1);
        assert!(der.span_equal(&structured_space(&a).unwrap()).unwrap());
        let hh = hh_dims(&a).unwrap();
        assert_eq!(der.dimension() - inner_space(&a).unwrap().dimension(), hh.hh1);
    }
}

#[test]
fn prime_fields_reproduce_the_tree_dimensions() {
    let g = random_tree(7, 11).unwrap();
    for p in [3, 5, 7] {
        let a = build_algebra(&g, Field::prime(p).unwrap()).unwrap();
        let der = solve(&a, Flavor::Derivation).unwrap();
        let jordan = solve(&a, Flavor::Jordan).unwrap();
        assert_eq!(der.dimension(), 19);
        assert!(jordan.span_equal(&der).unwrap());
        assert_eq!(hh_dims(&a).unwrap().hh1, 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Relabelling the vertices gives an isomorphic algebra, so all
    /// dimensions must agree.
    #[test]
    fn dimensions_are_isomorphism_invariant(n in 2usize..8, seed in any::<u64>(), perm_seed in any::<u64>()) {
        let g = random_tree(n, seed).unwrap();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut s = perm_seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let h = g.relabel(&perm).unwrap();
        let (a, b) = (rational(&g), rational(&h));
        for flavor in [Flavor::Derivation, Flavor::Jordan, Flavor::Anti] {
            prop_assert_eq!(solve(&a, flavor).unwrap().dimension(), solve(&b, flavor).unwrap().dimension());
        }
        prop_assert_eq!(inner_space(&a).unwrap().dimension(), inner_space(&b).unwrap().dimension());
        prop_assert_eq!(a.center().len(), b.center().len());
    }

    /// Checking the identity on basis pairs is enough: random general
    /// elements never break it.
    #[test]
    fn basis_pair_check_is_sufficient(n in 2usize..6, seed in any::<u64>(), xs in proptest::collection::vec(-4i64..=4, 64), ys in proptest::collection::vec(-4i64..=4, 64)) {
        let a = rational(&random_tree(n, seed).unwrap());
        let f = a.field();
        let x = Element::from_coeffs(xs[..a.dim()].iter().map(|&v| f.from_i64(v)).collect());
        let y = Element::from_coeffs(ys[..a.dim()].iter().map(|&v| f.ratio(v, 3).unwrap()).collect());
        for flavor in [Flavor::Derivation, Flavor::Jordan] {
            for map in solve(&a, flavor).unwrap().basis() {
                prop_assert!(identity_defect(&a, map, flavor, &x, &y).unwrap().is_zero());
            }
        }
    }
}
