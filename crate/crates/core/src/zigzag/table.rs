/// Structure constants of an algebra whose basis products are each either
/// zero or a single basis element with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    dim: usize,
    entries: Vec<Option<usize>>,
}

impl ProductTable {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![None; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i * self.dim + j]
    }

    /// Overwrites one entry. Used to audit mutated tables.
    pub fn set(&mut self, i: usize, j: usize, value: Option<usize>) {
        self.entries[i * self.dim + j] = value;
    }

    /// Sets an entry that must not have been set before.
    pub(crate) fn define(&mut self, i: usize, j: usize, k: usize) {
        let slot = &mut self.entries[i * self.dim + j];
        assert!(slot.is_none(), "basis product ({i},{j}) defined twice");
        *slot = Some(k);
    }

    /// First triple `(i, j, k)` in lexicographic order with
    /// `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let left = self.get(i, j);
                for k in 0..self.dim {
                    let lhs = left.and_then(|ij| self.get(ij, k));
                    let rhs = self.get(j, k).and_then(|jk| self.get(i, jk));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Nonzero products with `b_j` on the right: `(p, s)` with `b_p b_j = b_s`.
    pub fn right_products(&self, j: usize) -> Vec<(usize, usize)> {
        (0..self.dim).filter_map(|p| self.get(p, j).map(|s| (p, s))).collect()
    }

    /// Nonzero products with `b_i` on the left: `(p, s)` with `b_i b_p = b_s`.
    pub fn left_products(&self, i: usize) -> Vec<(usize, usize)> {
        (0..self.dim).filter_map(|p| self.get(i, p).map(|s| (p, s))).collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::exactlin::Field;
    use crate::quiver::Graph;
    use crate::zigzag::{build_algebra, BasisElement};

    #[test]
    fn built_tables_are_associative() {
        for g in [Graph::path(2), Graph::path(4), Graph::star(5), Graph::cycle(4)] {
            assert!(build_algebra(&g, Field::rationals()).unwrap().check_associativity());
        }
    }

    /// Patch a12 * a21 to e1 and search exhaustively for a failing triple.
    /// By hand: (a12 a21) a12 = e1 a12 = a12, but a12 (a21 a12) = a12 c2 = 0.
    #[test]
    fn mutated_table_is_caught() {
        let a = build_algebra(&Graph::path(2), Field::rationals()).unwrap();
        let mut t = a.table().clone();
        let a12 = a.index_of(BasisElement::Arr(1, 2)).unwrap();
        let a21 = a.index_of(BasisElement::Arr(2, 1)).unwrap();
        let e1 = a.index_of(BasisElement::Idem(1)).unwrap();
        t.set(a12, a21, Some(e1));
        let mut failing = Vec::new();
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    let lhs = t.get(i, j).and_then(|ij| t.get(ij, k));
                    let rhs = t.get(j, k).and_then(|jk| t.get(i, jk));
                    if lhs != rhs {
                        failing.push((i, j, k));
                    }
                }
            }
        }
        assert!(failing.contains(&(a12, a21, a12)));
        assert_eq!(t.associativity_violation(), failing.first().copied());
        assert!(!t.is_associative());
    }

    #[test]
    fn single_edge_all_216_triples_pass() {
        let a = build_algebra(&Graph::path(2), Field::rationals()).unwrap();
        assert_eq!(a.table().dim().pow(3), 216);
        assert_eq!(a.table().associativity_violation(), None);
    }
}
