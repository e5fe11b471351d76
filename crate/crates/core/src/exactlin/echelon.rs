use std::collections::{BTreeMap, HashSet};

use super::{Field, LinalgError, Matrix, Scalar, SparseRow, Vector};

/// Reduced row-echelon form together with its pivot data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; nonzero rows first, ordered by pivot column.
    pub reduced: Matrix,
    /// Strictly increasing.
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Pivot rows keyed by leading column. Every stored row has leading
/// coefficient 1.
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn new() -> Self {
        Self {
            pivots: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut row: SparseRow) {
        loop {
            let Some((lead, coeff)) = row.first() else {
                return;
            };
            match self.pivots.get(lead) {
                Some(pivot) => {
                    let coeff = coeff.clone();
                    row = sub_scaled(&row, &coeff, pivot);
                }
                None => break,
            }
        }
        normalize(&mut row);
        self.pivots.insert(row[0].0, row);
    }

    /// Back-substitution: clear every pivot column outside its own row.
    /// Rows are processed from the rightmost pivot leftwards, so each row
    /// subtracted is already fully reduced.
    fn into_reduced(mut self) -> Vec<SparseRow> {
        let leads: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for lead in leads {
            let mut row = self.pivots.remove(&lead).expect("pivot present");
            let targets: Vec<(usize, Scalar)> = row
                .iter()
                .skip(1)
                .filter(|(c, _)| self.pivots.contains_key(c))
                .cloned()
                .collect();
            for (c, v) in targets {
                row = sub_scaled(&row, &v, &self.pivots[&c]);
            }
            self.pivots.insert(lead, row);
        }
        self.pivots.into_values().collect()
    }
}

/// `row - factor * pivot`, merging two sorted sparse rows.
fn sub_scaled(row: &SparseRow, factor: &Scalar, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut SparseRow) {
    let Some((_, lead)) = row.first() else {
        return;
    };
    if lead.is_one() {
        return;
    }
    let inv = lead.inverse();
    for (_, v) in row.iter_mut() {
        *v = &*v * &inv;
    }
}

/// Drops zero rows, scales each row to leading coefficient 1, and removes
/// duplicates while keeping first occurrences in order.
fn prepare_rows(rows: &[SparseRow]) -> Vec<SparseRow> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for row in rows {
        if row.is_empty() {
            continue;
        }
        let mut row = row.clone();
        normalize(&mut row);
        if seen.insert(row.clone()) {
            out.push(row);
        }
    }
    out
}

fn echelon_rows(m: &Matrix) -> Vec<SparseRow> {
    let mut echelon = Echelon::new();
    for row in prepare_rows(m.rows()) {
        echelon.insert(row);
    }
    echelon.into_reduced()
}

/// The unique reduced row-echelon form of `m`.
///
/// Mixed-field entries cannot reach this point: [`Matrix`] constructors
/// reject them with [`LinalgError::FieldMismatch`].
pub fn rref(m: &Matrix) -> Rref {
    let mut rows = echelon_rows(m);
    let pivot_cols: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let rank = rows.len();
    rows.resize(m.nrows().max(rank), Vec::new());
    Rref {
        reduced: Matrix::from_parts_unchecked(m.field(), m.ncols(), rows),
        pivot_cols,
        rank,
    }
}

pub fn rank(m: &Matrix) -> usize {
    echelon_rows(m).len()
}

/// Canonical kernel basis: one vector per free column, in increasing free
/// column order, with that free variable set to 1 and the other free
/// variables set to 0.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vector> {
    let field = m.field();
    let rows = echelon_rows(m);
    let mut is_pivot = vec![false; m.ncols()];
    for row in &rows {
        is_pivot[row[0].0] = true;
    }
    // free column -> [(pivot column, value of that pivot variable)]
    let mut dependents: BTreeMap<usize, Vec<(usize, Scalar)>> = (0..m.ncols())
        .filter(|&c| !is_pivot[c])
        .map(|c| (c, Vec::new()))
        .collect();
    for row in &rows {
        let lead = row[0].0;
        for (c, v) in row.iter().skip(1) {
            if let Some(deps) = dependents.get_mut(c) {
                deps.push((lead, -v));
            }
        }
    }
    dependents
        .into_iter()
        .map(|(free, deps)| {
            let mut v = vec![field.zero(); m.ncols()];
            v[free] = field.one();
            for (c, x) in deps {
                v[c] = x;
            }
            v
        })
        .collect()
}

fn common_shape<'a>(
    sets: impl IntoIterator<Item = &'a Vector>,
) -> Result<Option<(Field, usize)>, LinalgError> {
    let mut shape: Option<(Field, usize)> = None;
    for v in sets {
        let Some(first) = v.first() else {
            if let Some((_, len)) = shape {
                if len != 0 {
                    return Err(LinalgError::LengthMismatch {
                        expected: len,
                        found: 0,
                    });
                }
            }
            continue;
        };
        let (field, len) = *shape.get_or_insert((first.field(), v.len()));
        if v.len() != len {
            return Err(LinalgError::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|x| x.field() != field) {
            return Err(LinalgError::FieldMismatch {
                expected: field,
                found: bad.field(),
            });
        }
    }
    Ok(shape)
}

fn stacked(field: Field, ncols: usize, vs: &[Vector]) -> Matrix {
    let rows = vs
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect()
        })
        .collect();
    Matrix::from_parts_unchecked(field, ncols, rows)
}

/// Whether `a` and `b` span the same subspace, decided by comparing the
/// reduced row-echelon forms of the stacked vectors.
pub fn span_equal(a: &[Vector], b: &[Vector]) -> Result<bool, LinalgError> {
    let Some((field, ncols)) = common_shape(a.iter().chain(b))? else {
        return Ok(true);
    };
    Ok(echelon_rows(&stacked(field, ncols, a)) == echelon_rows(&stacked(field, ncols, b)))
}

/// Dimension of the span of `a`.
pub fn span_dim(a: &[Vector]) -> Result<usize, LinalgError> {
    let Some((field, ncols)) = common_shape(a)? else {
        return Ok(0);
    };
    Ok(rank(&stacked(field, ncols, a)))
}

/// Reduced nonzero rows spanning the same space as `a`, as dense vectors.
pub(crate) fn canonical_span(a: &[Vector]) -> Result<Vec<Vector>, LinalgError> {
    let Some((field, ncols)) = common_shape(a)? else {
        return Ok(Vec::new());
    };
    let m = Matrix::from_parts_unchecked(field, ncols, echelon_rows(&stacked(field, ncols, a)));
    Ok(m.to_dense())
}
