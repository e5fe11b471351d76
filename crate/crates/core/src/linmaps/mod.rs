//! Spaces of derivation-like linear endomorphisms of a zigzag algebra.
//!
//! A linear map `Θ` is stored as a `dim x dim` matrix whose column `q` holds
//! the coordinates of `Θ(b_q)`. When a map is flattened to a vector (the
//! unknowns of a Leibniz system), entry `(p, q)` sits at position
//! `p * dim + q`.
//!
//! The derivation space is computed twice, independently: once as the kernel
//! of the linearised Leibniz identity over all basis pairs, and once from the
//! explicit parametrisation by arrow coefficients ([`structured_space`]).
//! Agreement of the two spans is the main correctness check.

mod inner;
mod leibniz;
mod structured;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{self, Field, LinalgError, Scalar, Vector};
use crate::zigzag::{AlgebraError, Element};

pub use inner::{ad, hh_dims, hh_dims_from, inner_dim_by_center, inner_space, HochschildDims};
pub use leibniz::{identity_defect, leibniz_system, satisfies, solve};
pub use structured::{extract_params, has_derivation_shape, materialize, structured_space, DerivationParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(
        "Jordan derivations are not computed in characteristic 2: \
         a∘a = 2a² vanishes identically there"
    )]
    CharacteristicTwo,
    #[error("derivation parameters are inconsistent at vertex {vertex}: cycle sums differ")]
    InconsistentParams { vertex: usize },
    #[error("expected {expected} parameters per family, found {found}")]
    ParamLength { expected: usize, found: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The identity a Leibniz system encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `Θ(ab) = Θ(a)b + aΘ(b)`
    Derivation,
    /// `Θ(a∘b) = Θ(a)∘b + a∘Θ(b)` with `a∘b = ab + ba`
    Jordan,
    /// `Θ(ab) = Θ(b)a + bΘ(a)`
    Anti,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Derivation,
    Jordan,
    Anti,
    Inner,
    Structured,
}

impl From<Flavor> for SpaceKind {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Derivation => SpaceKind::Derivation,
            Flavor::Jordan => SpaceKind::Jordan,
            Flavor::Anti => SpaceKind::Anti,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Derivation => "derivation",
            Flavor::Jordan => "jordan",
            Flavor::Anti => "anti",
        })
    }
}

/// A linear endomorphism of an algebra of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    dim: usize,
    entries: Vector,
}

impl LinearMap {
    pub fn zero(field: Field, dim: usize) -> Self {
        Self {
            dim,
            entries: vec![field.zero(); dim * dim],
        }
    }

    /// From a row-major flattening of length `dim * dim`.
    pub fn from_flat(dim: usize, entries: Vector) -> Result<Self, LinalgError> {
        if entries.len() != dim * dim {
            return Err(LinalgError::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.entries
    }

    /// Coefficient of `b_p` in `Θ(b_q)`.
    pub fn entry(&self, p: usize, q: usize) -> &Scalar {
        &self.entries[p * self.dim + q]
    }

    pub(crate) fn add_to(&mut self, p: usize, q: usize, v: &Scalar) {
        let slot = &mut self.entries[p * self.dim + q];
        *slot = &*slot + v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// `Θ(b_q)` as sparse `(p, coefficient)` pairs.
    pub fn column(&self, q: usize) -> Vec<(usize, Scalar)> {
        (0..self.dim)
            .map(|p| (p, self.entry(p, q)))
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (p, v.clone()))
            .collect()
    }

    pub fn image(&self, q: usize) -> Element {
        Element::from_coeffs((0..self.dim).map(|p| self.entry(p, q).clone()).collect())
    }

    pub fn apply(&self, x: &Element) -> Element {
        let coeffs = x.coeffs();
        Element::from_coeffs(
            (0..self.dim)
                .map(|p| {
                    (0..self.dim).fold(coeffs[0].field().zero(), |acc, q| {
                        &acc + &(self.entry(p, q) * &coeffs[q])
                    })
                })
                .collect(),
        )
    }

    /// Dense `dim x dim` rows, for printing.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.dim).map(<[Scalar]>::to_vec).collect()
    }
}

/// A subspace of linear endomorphisms, kept as the reduced row-echelon basis
/// of the flattened maps so that equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpace {
    kind: SpaceKind,
    algebra_dim: usize,
    basis: Vec<LinearMap>,
}

impl MapSpace {
    pub fn from_vectors(kind: SpaceKind, algebra_dim: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        let basis = exactlin::echelon::canonical_span(vectors)?
            .into_iter()
            .map(|v| LinearMap::from_flat(algebra_dim, v))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            kind,
            algebra_dim,
            basis,
        })
    }

    pub fn from_maps(kind: SpaceKind, algebra_dim: usize, maps: &[LinearMap]) -> Result<Self, LinalgError> {
        let vectors: Vec<Vector> = maps.iter().map(|m| m.entries.clone()).collect();
        Self::from_vectors(kind, algebra_dim, &vectors)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LinearMap] {
        &self.basis
    }

    pub fn flattened(&self) -> Vec<Vector> {
        self.basis.iter().map(|m| m.entries.clone()).collect()
    }

    pub fn span_equal(&self, other: &MapSpace) -> Result<bool, LinalgError> {
        exactlin::span_equal(&self.flattened(), &other.flattened())
    }

    /// Whether every map of `other` lies in this space.
    pub fn contains(&self, other: &MapSpace) -> Result<bool, LinalgError> {
        let mut joint = self.flattened();
        joint.extend(other.flattened());
        Ok(exactlin::span_dim(&joint)? == self.dimension())
    }
}
