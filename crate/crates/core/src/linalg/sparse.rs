use crate::error::{invalid, Result};

/// Column-compressed integer matrix with small entries, used for boundary operators.
///
/// Within a column, row indices strictly increase and entries are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSignMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    entries: Vec<(u32, i32)>,
}

impl SparseSignMatrix {
    pub fn new(rows: usize) -> Self {
        SparseSignMatrix { rows, col_ptr: vec![0], entries: Vec::new() }
    }

    /// Validating constructor.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, i32)>>) -> Result<Self> {
        let mut m = Self::new(rows);
        for c in cols {
            m.push_column(&c)?;
        }
        Ok(m)
    }

    /// Panics if a column is malformed.
    pub(crate) fn from_sorted_columns(rows: usize, cols: Vec<Vec<(u32, i32)>>) -> Self {
        Self::from_columns(rows, cols).expect("malformed column")
    }

    pub fn push_column(&mut self, col: &[(u32, i32)]) -> Result<()> {
        if col.windows(2).any(|w| w[0].0 >= w[1].0) {
            return invalid("row indices must strictly increase within a column");
        }
        if col.iter().any(|e| e.1 == 0) {
            return invalid("explicit zero entry");
        }
        if col.last().is_some_and(|e| e.0 as usize >= self.rows) {
            return invalid("row index out of range");
        }
        self.entries.extend_from_slice(col);
        self.col_ptr.push(self.entries.len());
        Ok(())
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(diag: &[i32]) -> Self {
        let cols = diag
            .iter()
            .enumerate()
            .map(|(i, &v)| if v == 0 { vec![] } else { vec![(i as u32, v)] })
            .collect();
        Self::from_sorted_columns(diag.len(), cols)
    }

    /// From a dense row-major matrix.
    pub fn from_dense(rows: &[Vec<i32>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return invalid("ragged dense matrix");
        }
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        Self::from_columns(nrows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[(u32, i32)] {
        &self.entries[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(u32, i32)]> {
        (0..self.cols()).map(move |j| self.column(j))
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::new(self.rows);
        for &j in idx {
            m.entries.extend_from_slice(self.column(j));
            m.col_ptr.push(m.entries.len());
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols()]; self.rows];
        for (j, col) in self.columns().enumerate() {
            for &(r, v) in col {
                out[r as usize][j] = v as i64;
            }
        }
        out
    }
}
