//! Input graphs, their doubled quivers, and seeded random trees.

mod graph;
mod random;

pub use graph::{double_quiver, parse_graph, validate, Arrow, Graph, GraphError, Quiver, Validation};
pub use random::{random_tree, XorShift64Star};
