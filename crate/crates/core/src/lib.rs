//! Exact computation of derivations, inner derivations, the center and
//! `HH¹` for zigzag algebras of simple graphs.
//!
//! * [`exactlin`]: row reduction, kernels and span comparison over `Q` or `GF(p)`.
//! * [`quiver`]: input graphs, doubled quivers, seeded random trees.
//! * [`zigzag`]: the algebra itself (basis, product table, center).
//! * [`linmaps`]: derivation, Jordan, anti- and inner-derivation spaces.
//! * [`analysis`]: the per-graph report and random-tree sweeps.

pub mod analysis;
pub mod exactlin;
pub mod linmaps;
pub mod quiver;
pub mod zigzag;
