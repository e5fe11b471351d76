//! The derivation space from its explicit parametrisation.
//!
//! Each arrow `a = (i -> j)` carries two parameters:
//!
//! * `t_a`, the coefficient of `a` in `Θ(e_j)`; the coefficient of `a` in
//!   `Θ(e_i)` is then `-t_a`;
//! * `d_a`, the coefficient of `a` in `Θ(a)`.
//!
//! and the derivation they describe is
//!
//! ```text
//! Θ(e_i)  = Σ_{a ends at i} t_a a  -  Σ_{a starts at i} t_a a
//! Θ(a)    = d_a a + t_ā (c_j - c_i)          for a = (i -> j), ā = (j -> i)
//! Θ(c_i)  = (d_{i->j} + d_{j->i}) c_i        for any neighbour j of i
//! ```
//!
//! The last line only makes sense if the sum `d_{i->j} + d_{j->i}` is the same
//! for every neighbour `j` of `i`; those equalities are the only constraints.
//! Signs were fixed against an exhaustive Leibniz check on the single-edge
//! algebra (see the tests below).

use serde::Serialize;

use super::{LinearMap, MapSpace, SolveError, SpaceKind};
use crate::exactlin::{self, Matrix, Scalar};
use crate::zigzag::{BasisElement, ZigzagAlgebra};

/// Arrow parameters of a derivation, both indexed by quiver arrow order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationParams {
    /// `t_a`: coefficient of arrow `a` in the image of its target idempotent.
    pub arrow_coeffs: Vec<Scalar>,
    /// `d_a`: coefficient of arrow `a` in its own image.
    pub diag_coeffs: Vec<Scalar>,
}

impl DerivationParams {
    pub fn zero(a: &ZigzagAlgebra) -> Self {
        let m = a.quiver().arrow_count();
        Self {
            arrow_coeffs: vec![a.field().zero(); m],
            diag_coeffs: vec![a.field().zero(); m],
        }
    }

    fn cycle_sum(&self, a: &ZigzagAlgebra, i: usize, j: usize) -> Scalar {
        let q = a.quiver();
        let out = q.arrow_index(i, j).expect("edge present");
        let back = q.arrow_index(j, i).expect("edge present");
        &self.diag_coeffs[out] + &self.diag_coeffs[back]
    }

    /// Checks lengths and that each vertex sees a single cycle sum.
    pub fn check(&self, a: &ZigzagAlgebra) -> Result<(), SolveError> {
        let m = a.quiver().arrow_count();
        for len in [self.arrow_coeffs.len(), self.diag_coeffs.len()] {
            if len != m {
                return Err(SolveError::ParamLength { expected: m, found: len });
            }
        }
        for i in 1..=a.vertex_count() {
            let nbrs = a.graph().neighbors(i);
            if let Some((&first, rest)) = nbrs.split_first() {
                let s = self.cycle_sum(a, i, first);
                if rest.iter().any(|&j| self.cycle_sum(a, i, j) != s) {
                    return Err(SolveError::InconsistentParams { vertex: i });
                }
            }
        }
        Ok(())
    }
}

/// The linear map described by `p`.
pub fn materialize(a: &ZigzagAlgebra, p: &DerivationParams) -> Result<LinearMap, SolveError> {
    p.check(a)?;
    let q = a.quiver();
    let mut map = LinearMap::zero(a.field(), a.dim());
    for (k, arrow) in q.arrows().iter().enumerate() {
        let row = a.arrow_basis_index(k);
        let t = &p.arrow_coeffs[k];
        map.add_to(row, a.idem_index(arrow.target), t);
        map.add_to(row, a.idem_index(arrow.source), &-t);

        let t_rev = &p.arrow_coeffs[q.reverse_index(k)];
        map.add_to(row, row, &p.diag_coeffs[k]);
        map.add_to(a.cyc_index(arrow.target), row, t_rev);
        map.add_to(a.cyc_index(arrow.source), row, &-t_rev);
    }
    for i in 1..=a.vertex_count() {
        if let Some(&j) = a.graph().neighbors(i).first() {
            let c = a.cyc_index(i);
            map.add_to(c, c, &p.cycle_sum(a, i, j));
        }
    }
    Ok(map)
}

/// Reads the arrow parameters back off a map. Inverse of [`materialize`] on
/// derivations.
pub fn extract_params(a: &ZigzagAlgebra, map: &LinearMap) -> DerivationParams {
    let q = a.quiver();
    let mut p = DerivationParams::zero(a);
    for (k, arrow) in q.arrows().iter().enumerate() {
        let row = a.arrow_basis_index(k);
        p.arrow_coeffs[k] = map.entry(row, a.idem_index(arrow.target)).clone();
        p.diag_coeffs[k] = map.entry(row, row).clone();
    }
    p
}

/// Cycle-consistency constraints over the `2m` parameters
/// `(t_0..t_{m-1}, d_0..d_{m-1})`: for each vertex, the cycle sum through its
/// first neighbour equals the one through every other neighbour.
fn consistency_constraints(a: &ZigzagAlgebra) -> Matrix {
    let q = a.quiver();
    let m = q.arrow_count();
    let f = a.field();
    let d = |i: usize, j: usize| m + q.arrow_index(i, j).expect("edge present");
    let mut rows = Vec::new();
    for i in 1..=a.vertex_count() {
        let nbrs = a.graph().neighbors(i);
        if let Some((&first, rest)) = nbrs.split_first() {
            for &j in rest {
                rows.push(vec![
                    (d(i, first), f.one()),
                    (d(first, i), f.one()),
                    (d(i, j), f.from_i64(-1)),
                    (d(j, i), f.from_i64(-1)),
                ]);
            }
        }
    }
    Matrix::from_sparse(f, 2 * m, rows).expect("constraint entries share the algebra field")
}

/// The space of maps obtained from all consistent parameter choices.
pub fn structured_space(a: &ZigzagAlgebra) -> Result<MapSpace, SolveError> {
    let m = a.quiver().arrow_count();
    let maps = exactlin::nullspace_basis(&consistency_constraints(a))
        .into_iter()
        .map(|v| {
            let (t, d) = v.split_at(m);
            materialize(
                a,
                &DerivationParams {
                    arrow_coeffs: t.to_vec(),
                    diag_coeffs: d.to_vec(),
                },
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MapSpace::from_maps(SpaceKind::Structured, a.dim(), &maps)?)
}

/// Support pattern of a derivation: `Θ(e_i)` lives on arrows at `i`,
/// `Θ(a)` on `{a, c_source, c_target}`, and `Θ(c_i)` on `c_i`.
pub fn has_derivation_shape(a: &ZigzagAlgebra, map: &LinearMap) -> bool {
    a.basis().iter().enumerate().all(|(q, &b)| {
        map.column(q).iter().all(|&(p, _)| {
            let image = a.basis()[p];
            match b {
                BasisElement::Idem(i) => {
                    matches!(image, BasisElement::Arr(s, t) if s == i || t == i)
                }
                BasisElement::Arr(i, j) => {
                    image == b || image == BasisElement::Cyc(i) || image == BasisElement::Cyc(j)
                }
                BasisElement::Cyc(_) => image == b,
            }
        })
    })
}
