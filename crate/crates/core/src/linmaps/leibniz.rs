use std::collections::BTreeMap;

use super::{Flavor, LinearMap, MapSpace, SolveError};
use crate::exactlin::{self, Matrix, Scalar};
use crate::zigzag::{Element, ZigzagAlgebra};

/// Which factor's image appears in a term, and on which side of the other
/// basis element it is multiplied.
#[derive(Clone, Copy)]
enum Side {
    /// `Θ(b_x) b_y`
    ImageTimes,
    /// `b_y Θ(b_x)`
    TimesImage,
}

/// One term `±Θ(b_x) b_y` or `±b_y Θ(b_x)` of a flavor's right-hand side.
#[derive(Clone, Copy)]
struct Term {
    image_of: usize,
    other: usize,
    side: Side,
}

/// For the pair `(i, j)`: the products whose images form the left-hand side,
/// and the terms of the right-hand side.
fn identity_terms(a: &ZigzagAlgebra, flavor: Flavor, i: usize, j: usize) -> (Vec<usize>, Vec<Term>) {
    use Side::*;
    let t = |image_of, other, side| Term {
        image_of,
        other,
        side,
    };
    let prod = |x, y| a.basis_product(x, y);
    match flavor {
        Flavor::Derivation => (
            prod(i, j).into_iter().collect(),
            vec![t(i, j, ImageTimes), t(j, i, TimesImage)],
        ),
        Flavor::Anti => (
            prod(i, j).into_iter().collect(),
            vec![t(j, i, ImageTimes), t(i, j, TimesImage)],
        ),
        Flavor::Jordan => (
            prod(i, j).into_iter().chain(prod(j, i)).collect(),
            vec![
                t(i, j, ImageTimes),
                t(i, j, TimesImage),
                t(j, i, TimesImage),
                t(j, i, ImageTimes),
            ],
        ),
    }
}

fn pairs(dim: usize, flavor: Flavor) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |i| {
        // the Jordan identity is symmetric in the pair
        let start = if flavor == Flavor::Jordan { i } else { 0 };
        (start..dim).map(move |j| (i, j))
    })
}

fn check_flavor(a: &ZigzagAlgebra, flavor: Flavor) -> Result<(), SolveError> {
    if flavor == Flavor::Jordan && a.field().characteristic() == 2 {
        return Err(SolveError::CharacteristicTwo);
    }
    Ok(())
}

/// The linear system over the `dim²` unknowns `x_{pq}` (coefficient of `b_p`
/// in `Θ(b_q)`, column `p * dim + q`) expressing the flavor's identity on
/// every pair of basis elements and every output coordinate.
///
/// Bilinearity makes basis pairs sufficient. Zero rows are dropped here;
/// duplicates are left to the elimination kernel.
pub fn leibniz_system(a: &ZigzagAlgebra, flavor: Flavor) -> Result<Matrix, SolveError> {
    check_flavor(a, flavor)?;
    let dim = a.dim();
    let table = a.table();
    let left: Vec<Vec<(usize, usize)>> = (0..dim).map(|i| table.left_products(i)).collect();
    let right: Vec<Vec<(usize, usize)>> = (0..dim).map(|j| table.right_products(j)).collect();
    let var = |p: usize, q: usize| p * dim + q;

    let field = a.field();
    let mut rows = Vec::new();
    for (i, j) in pairs(dim, flavor) {
        let (products, terms) = identity_terms(a, flavor, i, j);
        // output coordinate -> unknown -> coefficient
        let mut eq: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
        let mut bump = |r: usize, v: usize, c: i64| *eq.entry(r).or_default().entry(v).or_default() += c;
        for k in products {
            for r in 0..dim {
                bump(r, var(r, k), 1);
            }
        }
        for term in terms {
            // Θ(b_x) = Σ_p x_{p,x} b_p, so Θ(b_x) b_y hits b_s whenever b_p b_y = b_s
            let hits = match term.side {
                Side::ImageTimes => &right[term.other],
                Side::TimesImage => &left[term.other],
            };
            for &(p, s) in hits {
                bump(s, var(p, term.image_of), -1);
            }
        }
        for coeffs in eq.into_values() {
            let row: Vec<(usize, Scalar)> = coeffs
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(v, c)| (v, field.from_i64(c)))
                .filter(|(_, s)| !s.is_zero())
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    Ok(Matrix::from_sparse(field, dim * dim, rows)?)
}

/// The space of maps satisfying the flavor's identity, as the canonical
/// kernel of [`leibniz_system`]. Every returned basis map is re-checked on
/// all basis pairs.
pub fn solve(a: &ZigzagAlgebra, flavor: Flavor) -> Result<MapSpace, SolveError> {
    let system = leibniz_system(a, flavor)?;
    let kernel = exactlin::nullspace_basis(&system);
    let space = MapSpace::from_vectors(flavor.into(), a.dim(), &kernel)?;
    if let Some(k) = space.basis().iter().position(|m| !satisfies(a, m, flavor)) {
        return Err(SolveError::Invariant(format!(
            "{flavor} basis map {k} fails its identity on a basis pair"
        )));
    }
    Ok(space)
}

/// Exhaustive check of the flavor identity on every pair of basis elements.
pub fn satisfies(a: &ZigzagAlgebra, map: &LinearMap, flavor: Flavor) -> bool {
    let dim = a.dim();
    let columns: Vec<Vec<(usize, Scalar)>> = (0..dim).map(|q| map.column(q)).collect();
    let zero = a.field().zero();
    pairs(dim, flavor).all(|(i, j)| {
        let (products, terms) = identity_terms(a, flavor, i, j);
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut add = |s: usize, v: Scalar| {
            let slot = acc.entry(s).or_insert_with(|| zero.clone());
            *slot = &*slot + &v;
        };
        for k in products {
            for (p, v) in &columns[k] {
                add(*p, v.clone());
            }
        }
        for term in terms {
            for (p, v) in &columns[term.image_of] {
                let hit = match term.side {
                    Side::ImageTimes => a.basis_product(*p, term.other),
                    Side::TimesImage => a.basis_product(term.other, *p),
                };
                if let Some(s) = hit {
                    add(s, -v);
                }
            }
        }
        acc.values().all(Scalar::is_zero)
    })
}

/// `lhs - rhs` of the flavor identity evaluated on arbitrary elements.
pub fn identity_defect(
    a: &ZigzagAlgebra,
    map: &LinearMap,
    flavor: Flavor,
    x: &Element,
    y: &Element,
) -> Result<Element, SolveError> {
    let m = |u: &Element, v: &Element| a.multiply(u, v);
    let (tx, ty) = (map.apply(x), map.apply(y));
    let (lhs, rhs) = match flavor {
        Flavor::Derivation => (map.apply(&m(x, y)?), m(&tx, y)?.add(&m(x, &ty)?)),
        Flavor::Anti => (map.apply(&m(x, y)?), m(&ty, x)?.add(&m(y, &tx)?)),
        Flavor::Jordan => {
            let circ = |u: &Element, v: &Element| -> Result<Element, SolveError> { Ok(m(u, v)?.add(&m(v, u)?)) };
            (map.apply(&circ(x, y)?), circ(&tx, y)?.add(&circ(x, &ty)?))
        }
    };
    Ok(lhs.sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{nullspace_basis, Field};
    use crate::quiver::Graph;
    use crate::zigzag::build_algebra;

    fn alg(g: &Graph) -> ZigzagAlgebra {
        build_algebra(g, Field::rationals()).unwrap()
    }

    #[test]
    fn single_edge_derivation_kernel_has_dimension_four() {
        let a = alg(&Graph::path(2));
        let system = leibniz_system(&a, Flavor::Derivation).unwrap();
        assert_eq!(system.ncols(), 36);
        assert_eq!(nullspace_basis(&system).len(), 4);
    }

    #[test]
    fn single_edge_anti_derivations_vanish() {
        let a = alg(&Graph::path(2));
        assert_eq!(solve(&a, Flavor::Anti).unwrap().dimension(), 0);
    }

    #[test]
    fn zero_map_satisfies_every_row() {
        let a = alg(&Graph::star(4));
        for flavor in [Flavor::Derivation, Flavor::Jordan, Flavor::Anti] {
            let system = leibniz_system(&a, flavor).unwrap();
            let zero = vec![a.field().zero(); system.ncols()];
            assert!(system.mul_vec(&zero).unwrap().iter().all(Scalar::is_zero));
            assert!(satisfies(&a, &LinearMap::zero(a.field(), a.dim()), flavor));
        }
    }

    #[test]
    fn kernel_vectors_solve_the_system_exactly() {
        let a = alg(&Graph::path(3));
        let system = leibniz_system(&a, Flavor::Derivation).unwrap();
        for v in nullspace_basis(&system) {
            assert!(system.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn derivation_dimensions_on_small_trees() {
        assert_eq!(solve(&alg(&Graph::path(4)), Flavor::Derivation).unwrap().dimension(), 10);
        assert_eq!(solve(&alg(&Graph::star(4)), Flavor::Derivation).unwrap().dimension(), 10);
    }

    #[test]
    fn jordan_equals_derivation_on_path_three() {
        let a = alg(&Graph::path(3));
        let jordan = solve(&a, Flavor::Jordan).unwrap();
        let der = solve(&a, Flavor::Derivation).unwrap();
        assert_eq!(jordan.dimension(), 7);
        assert!(jordan.span_equal(&der).unwrap());
    }

    #[test]
    fn jordan_refused_in_characteristic_two() {
        let a = build_algebra(&Graph::path(2), Field::prime(2).unwrap()).unwrap();
        assert_eq!(leibniz_system(&a, Flavor::Jordan).unwrap_err(), SolveError::CharacteristicTwo);
        assert!(solve(&a, Flavor::Derivation).is_ok());
    }

    #[test]
    fn non_derivation_is_rejected() {
        let a = alg(&Graph::path(2));
        let mut map = LinearMap::zero(a.field(), a.dim());
        // Θ(e1) = e1 breaks e1 = e1 e1
        map.add_to(0, 0, &a.field().one());
        assert!(!satisfies(&a, &map, Flavor::Derivation));
    }

    #[test]
    fn basis_pairs_suffice_for_general_elements() {
        let a = alg(&Graph::star(4));
        let f = a.field();
        let der = solve(&a, Flavor::Derivation).unwrap();
        let x = Element::from_coeffs((0..a.dim() as i64).map(|k| f.from_i64(k * k - 7)).collect());
        let y = Element::from_coeffs((0..a.dim() as i64).map(|k| f.ratio(3 - k, 2).unwrap()).collect());
        for map in der.basis() {
            assert!(identity_defect(&a, map, Flavor::Derivation, &x, &y).unwrap().is_zero());
            assert!(identity_defect(&a, map, Flavor::Jordan, &x, &y).unwrap().is_zero());
        }
    }
}
