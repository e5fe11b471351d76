use std::fmt;

use super::{Field, LinalgError, Scalar};

/// One matrix row: `(column, value)` pairs, strictly increasing columns, no
/// stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// A row-sparse matrix over a single [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self {
            field,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    /// Builds a matrix from dense rows, rejecting ragged rows and entries
    /// from a different field.
    pub fn from_dense(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != ncols {
                return Err(LinalgError::LengthMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            let mut sparse = Vec::new();
            for (c, v) in row.into_iter().enumerate() {
                check_field(field, &v)?;
                if !v.is_zero() {
                    sparse.push((c, v));
                }
            }
            out.push(sparse);
        }
        Ok(Self {
            field,
            ncols,
            rows: out,
        })
    }

    /// Builds a matrix from sparse rows. Entries may arrive in any column
    /// order; repeated columns within a row are summed.
    pub fn from_sparse(field: Field, ncols: usize, rows: Vec<SparseRow>) -> Result<Self, LinalgError> {
        let mut out = Vec::with_capacity(rows.len());
        for mut row in rows {
            for (c, v) in &row {
                check_field(field, v)?;
                if *c >= ncols {
                    return Err(LinalgError::ColumnOutOfRange { col: *c, ncols });
                }
            }
            row.sort_by_key(|(c, _)| *c);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = &*lv + &v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            out.push(merged);
        }
        Ok(Self {
            field,
            ncols,
            rows: out,
        })
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_dense(field, ncols, dense).expect("integer rows share one field and width")
    }

    pub(crate) fn from_parts_unchecked(field: Field, ncols: usize, rows: Vec<SparseRow>) -> Self {
        Self { field, ncols, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.rows[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|i| self.rows[row][i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![self.field.zero(); self.ncols];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.ncols {
            return Err(LinalgError::LengthMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        for x in v {
            check_field(self.field, x)?;
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(self.field.zero(), |acc, (c, a)| &acc + &(a * &v[*c]))
            })
            .collect())
    }

    /// Rows stacked below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if self.ncols != other.ncols {
            return Err(LinalgError::LengthMismatch {
                expected: self.ncols,
                found: other.ncols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self::from_parts_unchecked(self.field, self.ncols, rows))
    }
}

fn check_field(field: Field, v: &Scalar) -> Result<(), LinalgError> {
    if v.field() != field {
        return Err(LinalgError::FieldMismatch {
            expected: field,
            found: v.field(),
        });
    }
    Ok(())
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
