//! The zigzag algebra of a connected simple graph.
//!
//! Basis order is fixed: idempotents `e1..en`, then arrows in quiver order,
//! then the cycles `c1..cn`. Products of basis elements are either zero or a
//! single basis element with coefficient 1, so the multiplication is stored
//! as a table of optional indices.

mod table;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{self, Field, LinalgError, Matrix, Scalar, Vector};
use crate::quiver::{double_quiver, validate, Graph, Quiver};

pub use table::ProductTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("zigzag algebras here need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("element has {found} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisElement {
    /// Trivial path at a vertex.
    Idem(usize),
    /// Arrow `source -> target`.
    Arr(usize, usize),
    /// The length-two cycle class at a vertex.
    Cyc(usize),
}

impl BasisElement {
    pub fn source(self) -> usize {
        match self {
            BasisElement::Idem(i) | BasisElement::Cyc(i) => i,
            BasisElement::Arr(i, _) => i,
        }
    }

    pub fn target(self) -> usize {
        match self {
            BasisElement::Idem(i) | BasisElement::Cyc(i) => i,
            BasisElement::Arr(_, j) => j,
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Idem(i) => write!(f, "e{i}"),
            BasisElement::Arr(i, j) => write!(f, "a({i},{j})"),
            BasisElement::Cyc(i) => write!(f, "c{i}"),
        }
    }
}

/// A general element: one coefficient per basis position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coeffs: Vector,
}

impl Element {
    pub fn from_coeffs(coeffs: Vector) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::from_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::from_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        Element::from_coeffs(self.coeffs.iter().map(|a| a * k).collect())
    }
}

#[derive(Clone, Debug)]
pub struct ZigzagAlgebra {
    graph: Graph,
    quiver: Quiver,
    field: Field,
    basis: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    table: ProductTable,
}

/// Builds `Z(graph)` over `field`.
///
/// The graph must be connected with at least two vertices. Graphs with
/// cycles are accepted.
pub fn build_algebra(graph: &Graph, field: Field) -> Result<ZigzagAlgebra, AlgebraError> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(AlgebraError::TooFewVertices(n));
    }
    if !validate(graph).connected {
        return Err(AlgebraError::Disconnected);
    }
    let quiver = double_quiver(graph);
    let mut basis: Vec<BasisElement> = (1..=n).map(BasisElement::Idem).collect();
    basis.extend(quiver.arrows().iter().map(|a| BasisElement::Arr(a.source, a.target)));
    basis.extend((1..=n).map(BasisElement::Cyc));
    let index: HashMap<BasisElement, usize> = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();

    let mut table = ProductTable::new(basis.len());
    let idem = |i: usize| index[&BasisElement::Idem(i)];
    let cyc = |i: usize| index[&BasisElement::Cyc(i)];
    for i in 1..=n {
        table.define(idem(i), idem(i), idem(i));
        table.define(idem(i), cyc(i), cyc(i));
        table.define(cyc(i), idem(i), cyc(i));
    }
    for a in quiver.arrows() {
        let arr = index[&BasisElement::Arr(a.source, a.target)];
        let rev = index[&BasisElement::Arr(a.target, a.source)];
        table.define(idem(a.source), arr, arr);
        table.define(arr, idem(a.target), arr);
        // every two-cycle at a vertex collapses to the same basis element
        table.define(arr, rev, cyc(a.source));
    }

    Ok(ZigzagAlgebra {
        graph: graph.clone(),
        quiver,
        field,
        basis,
        index,
        table,
    })
}

impl ZigzagAlgebra {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, b: BasisElement) -> Option<usize> {
        self.index.get(&b).copied()
    }

    pub fn idem_index(&self, vertex: usize) -> usize {
        vertex - 1
    }

    pub fn arrow_basis_index(&self, arrow: usize) -> usize {
        self.vertex_count() + arrow
    }

    pub fn cyc_index(&self, vertex: usize) -> usize {
        self.vertex_count() + self.quiver.arrow_count() + vertex - 1
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    /// Product of two basis elements by position.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<usize> {
        self.table.get(i, j)
    }

    pub fn zero(&self) -> Element {
        Element::from_coeffs(vec![self.field.zero(); self.dim()])
    }

    pub fn basis_element(&self, k: usize) -> Element {
        let mut e = self.zero();
        e.coeffs[k] = self.field.one();
        e
    }

    /// `e1 + ... + en`.
    pub fn one(&self) -> Element {
        let mut e = self.zero();
        for i in 1..=self.vertex_count() {
            e.coeffs[self.idem_index(i)] = self.field.one();
        }
        e
    }

    fn check_len(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the basis product table.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        for v in x.coeffs.iter().chain(&y.coeffs) {
            if v.field() != self.field {
                return Err(LinalgError::FieldMismatch {
                    expected: self.field,
                    found: v.field(),
                }
                .into());
            }
        }
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if let Some(k) = self.table.get(i, j) {
                    out.coeffs[k] = &out.coeffs[k] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn check_associativity(&self) -> bool {
        self.table.is_associative()
    }

    /// `e1 + ... + en` is a two-sided identity on every basis element.
    pub fn check_identity(&self) -> bool {
        let one = self.one();
        (0..self.dim()).all(|k| {
            let b = self.basis_element(k);
            self.multiply(&one, &b).as_ref() == Ok(&b) && self.multiply(&b, &one).as_ref() == Ok(&b)
        })
    }

    /// `e_i e_j = δ_ij e_i`.
    pub fn check_orthogonal_idempotents(&self) -> bool {
        let n = self.vertex_count();
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let prod = self.table.get(self.idem_index(i), self.idem_index(j));
                prod == (i == j).then(|| self.idem_index(i))
            })
        })
    }

    /// Canonical basis of the center, read off the kernel of
    /// `x -> (x b_k - b_k x)_k`.
    pub fn center(&self) -> Vec<Element> {
        let dim = self.dim();
        let mut rows = Vec::new();
        for k in 0..dim {
            // row r of the commutator with b_k, over unknowns x_p
            let mut by_output: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
            for p in 0..dim {
                if let Some(r) = self.table.get(p, k) {
                    by_output[r].push((p, self.field.one()));
                }
                if let Some(r) = self.table.get(k, p) {
                    by_output[r].push((p, self.field.from_i64(-1)));
                }
            }
            rows.extend(by_output);
        }
        let system = Matrix::from_sparse(self.field, dim, rows).expect("entries share the algebra field");
        exactlin::nullspace_basis(&system)
            .into_iter()
            .map(Element::from_coeffs)
            .collect()
    }

    /// `{1, c1, ..., cn}`.
    pub fn expected_center_basis(&self) -> Vec<Element> {
        std::iter::once(self.one())
            .chain((1..=self.vertex_count()).map(|i| self.basis_element(self.cyc_index(i))))
            .collect()
    }
}
