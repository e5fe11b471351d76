use serde::{Deserialize, Serialize};

use super::{Flavor, LinearMap, MapSpace, SolveError, SpaceKind};
use crate::zigzag::{Element, ZigzagAlgebra};

/// `ad_x : y -> xy - yx`.
pub fn ad(a: &ZigzagAlgebra, x: &Element) -> Result<LinearMap, SolveError> {
    let mut map = LinearMap::zero(a.field(), a.dim());
    for q in 0..a.dim() {
        let b = a.basis_element(q);
        let image = a.multiply(x, &b)?.sub(&a.multiply(&b, x)?);
        for (p, v) in image.coeffs().iter().enumerate() {
            map.add_to(p, q, v);
        }
    }
    Ok(map)
}

fn ad_basis(a: &ZigzagAlgebra, k: usize) -> LinearMap {
    let f = a.field();
    let mut map = LinearMap::zero(f, a.dim());
    for q in 0..a.dim() {
        if let Some(s) = a.basis_product(k, q) {
            map.add_to(s, q, &f.one());
        }
        if let Some(s) = a.basis_product(q, k) {
            map.add_to(s, q, &f.from_i64(-1));
        }
    }
    map
}

/// Span of the inner derivations `ad_{b_k}` over all basis elements.
pub fn inner_space(a: &ZigzagAlgebra) -> Result<MapSpace, SolveError> {
    let maps: Vec<LinearMap> = (0..a.dim()).map(|k| ad_basis(a, k)).collect();
    Ok(MapSpace::from_maps(SpaceKind::Inner, a.dim(), &maps)?)
}

/// `dim A - dim C(A)`, the kernel of `x -> ad_x` being the center.
pub fn inner_dim_by_center(a: &ZigzagAlgebra) -> usize {
    a.dim() - a.center().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HochschildDims {
    pub hh0: usize,
    pub hh1: usize,
}

/// `HH⁰` from the center and `HH¹ = Der / IDer` from already computed
/// spaces. Fails if the inner derivations do not sit inside `der`.
pub fn hh_dims_from(center_dim: usize, der: &MapSpace, inner: &MapSpace) -> Result<HochschildDims, SolveError> {
    if !der.contains(inner)? {
        return Err(SolveError::Invariant(
            "inner derivations are not contained in the derivation space".into(),
        ));
    }
    Ok(HochschildDims {
        hh0: center_dim,
        hh1: der.dimension() - inner.dimension(),
    })
}

pub fn hh_dims(a: &ZigzagAlgebra) -> Result<HochschildDims, SolveError> {
    let der = super::solve(a, Flavor::Derivation)?;
    let inner = inner_space(a)?;
    hh_dims_from(a.center().len(), &der, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::linmaps::satisfies;
    use crate::quiver::Graph;
    use crate::zigzag::{build_algebra, BasisElement};

    fn alg(g: &Graph) -> ZigzagAlgebra {
        build_algebra(g, Field::rationals()).unwrap()
    }

    #[test]
    fn inner_dimensions() {
        assert_eq!(inner_space(&alg(&Graph::path(2))).unwrap().dimension(), 3);
        // |Q0| + |Q1| - 1 = 3 + 4 - 1
        assert_eq!(inner_space(&alg(&Graph::path(3))).unwrap().dimension(), 6);
        assert_eq!(inner_dim_by_center(&alg(&Graph::path(3))), 6);
    }

    #[test]
    fn central_elements_give_zero_maps() {
        let a = alg(&Graph::star(4));
        assert!(ad(&a, &a.one()).unwrap().is_zero());
        for i in 1..=4 {
            let c = a.basis_element(a.index_of(BasisElement::Cyc(i)).unwrap());
            assert!(ad(&a, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn inner_maps_are_derivations() {
        let a = alg(&Graph::star(4));
        for map in inner_space(&a).unwrap().basis() {
            assert!(satisfies(&a, map, Flavor::Derivation));
        }
        assert_eq!(ad(&a, &a.basis_element(5)).unwrap(), ad_basis(&a, 5));
    }

    #[test]
    fn hochschild_dims() {
        assert_eq!(hh_dims(&alg(&Graph::path(2))).unwrap(), HochschildDims { hh0: 3, hh1: 1 });
        assert_eq!(hh_dims(&alg(&Graph::path(7))).unwrap(), HochschildDims { hh0: 8, hh1: 1 });
    }

    #[test]
    fn containment_failure_is_an_invariant_error() {
        let a = alg(&Graph::path(2));
        let inner = inner_space(&a).unwrap();
        let anti = crate::linmaps::solve(&a, Flavor::Anti).unwrap();
        assert!(matches!(hh_dims_from(3, &anti, &inner), Err(SolveError::Invariant(_))));
    }
}
