use std::fmt;

use super::{lcm, BooleanMatrix, MatrixError};

/// The canonical vector `δ_dim^index`, i.e. column `index` of `I_dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector {
    dim: usize,
    pos: usize,
}

impl DeltaVector {
    /// Builds `δ_dim^index` from a 1-based index.
    pub fn new(dim: usize, index: usize) -> Result<Self, MatrixError> {
        if dim == 0 {
            return Err(MatrixError::EmptyDimension);
        }
        if index == 0 || index > dim {
            return Err(MatrixError::IndexOutOfRange { index, dim });
        }
        Ok(DeltaVector {
            dim,
            pos: index - 1,
        })
    }

    pub(crate) fn from_pos(dim: usize, pos: usize) -> Self {
        debug_assert!(pos < dim);
        DeltaVector { dim, pos }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 1-based index.
    pub fn index(&self) -> usize {
        self.pos + 1
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    /// `δ_a^i ⋉ δ_b^j = δ_{ab}^{(i-1)b + j}`.
    pub fn stp(&self, other: &DeltaVector) -> DeltaVector {
        DeltaVector {
            dim: self.dim * other.dim,
            pos: self.pos * other.dim + other.pos,
        }
    }

    pub fn to_matrix(&self) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.dim,
            col_index: vec![self.pos],
        }
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta {} {}", self.dim, self.pos + 1)
    }
}

/// A matrix whose every column is a unit vector, stored as the row position
/// of the single 1 in each column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicalMatrix {
    rows: usize,
    col_index: Vec<usize>,
}

impl LogicalMatrix {
    /// From 0-based row positions.
    pub fn from_positions(rows: usize, col_index: Vec<usize>) -> Result<Self, MatrixError> {
        if rows == 0 || col_index.is_empty() {
            return Err(MatrixError::EmptyDimension);
        }
        if let Some(&bad) = col_index.iter().find(|&&r| r >= rows) {
            return Err(MatrixError::IndexOutOfRange {
                index: bad + 1,
                dim: rows,
            });
        }
        Ok(LogicalMatrix { rows, col_index })
    }

    /// `δ_rows[i_1, ..., i_n]` with 1-based indices.
    pub fn delta(rows: usize, indices: &[usize]) -> Result<Self, MatrixError> {
        if rows == 0 || indices.is_empty() {
            return Err(MatrixError::EmptyDimension);
        }
        let mut col_index = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > rows {
                return Err(MatrixError::IndexOutOfRange {
                    index: i,
                    dim: rows,
                });
            }
            col_index.push(i - 1);
        }
        Ok(LogicalMatrix { rows, col_index })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity of size 0");
        LogicalMatrix {
            rows: n,
            col_index: (0..n).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.col_index.len()
    }

    /// 0-based row holding the 1 in column `col` (0-based).
    pub fn row_of(&self, col: usize) -> usize {
        self.col_index[col]
    }

    pub fn positions(&self) -> &[usize] {
        &self.col_index
    }

    /// The 1-based `δ` indices, one per column.
    pub fn delta_indices(&self) -> Vec<usize> {
        self.col_index.iter().map(|&r| r + 1).collect()
    }

    pub fn column(&self, col: usize) -> DeltaVector {
        DeltaVector::from_pos(self.rows, self.col_index[col])
    }

    /// `A x` for a delta vector `x`.
    pub fn apply(&self, x: &DeltaVector) -> Result<DeltaVector, MatrixError> {
        if x.dim() != self.cols() {
            return Err(MatrixError::DimensionMismatch {
                op: "apply",
                left: (self.rows, self.cols()),
                right: (x.dim(), 1),
            });
        }
        Ok(self.column(x.pos()))
    }

    /// Ordinary product; for logical matrices this is map composition.
    pub fn mul(&self, other: &LogicalMatrix) -> Result<LogicalMatrix, MatrixError> {
        if self.cols() != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols()),
                right: (other.rows, other.cols()),
            });
        }
        Ok(LogicalMatrix {
            rows: self.rows,
            col_index: other.col_index.iter().map(|&k| self.col_index[k]).collect(),
        })
    }

    /// Left semi-tensor product `(A ⊗ I_{t/n})(B ⊗ I_{t/p})`, `t = lcm(n, p)`.
    ///
    /// Computed by index arithmetic: column `d` of `B ⊗ I_{t/p}` selects a
    /// single column of `A ⊗ I_{t/n}`.
    pub fn stp(&self, other: &LogicalMatrix) -> LogicalMatrix {
        let n = self.cols();
        let p = other.rows;
        let t = lcm(n, p);
        let (fa, fb) = (t / n, t / p);
        let mut col_index = Vec::with_capacity(other.cols() * fb);
        for &b in &other.col_index {
            for r2 in 0..fb {
                // row of (B ⊗ I_fb) in this column, i.e. a column of (A ⊗ I_fa)
                let c = b * fb + r2;
                let (a, r) = (c / fa, c % fa);
                col_index.push(self.col_index[a] * fa + r);
            }
        }
        LogicalMatrix {
            rows: self.rows * fa,
            col_index,
        }
    }

    pub fn kron(&self, other: &LogicalMatrix) -> LogicalMatrix {
        let mut col_index = Vec::with_capacity(self.cols() * other.cols());
        for &a in &self.col_index {
            for &b in &other.col_index {
                col_index.push(a * other.rows + b);
            }
        }
        LogicalMatrix {
            rows: self.rows * other.rows,
            col_index,
        }
    }

    /// Column-wise STP: column `j` is `col_j(A) ⋉ col_j(B)`.
    pub fn khatri_rao(&self, other: &LogicalMatrix) -> Result<LogicalMatrix, MatrixError> {
        if self.cols() != other.cols() {
            return Err(MatrixError::DimensionMismatch {
                op: "khatri_rao",
                left: (self.rows, self.cols()),
                right: (other.rows, other.cols()),
            });
        }
        Ok(LogicalMatrix {
            rows: self.rows * other.rows,
            col_index: self
                .col_index
                .iter()
                .zip(&other.col_index)
                .map(|(&a, &b)| a * other.rows + b)
                .collect(),
        })
    }

    /// Columns `[start, start + len)` as a new logical matrix.
    pub fn column_block(&self, start: usize, len: usize) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.rows,
            col_index: self.col_index[start..start + len].to_vec(),
        }
    }

    pub fn to_boolean(&self) -> BooleanMatrix {
        let mut m = BooleanMatrix::zeros(self.rows, self.cols());
        for (j, &i) in self.col_index.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }
}

impl fmt::Display for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta {} [", self.rows)?;
        for (j, &i) in self.col_index.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

impl TryFrom<&BooleanMatrix> for LogicalMatrix {
    type Error = MatrixError;

    fn try_from(m: &BooleanMatrix) -> Result<Self, Self::Error> {
        let mut col_index = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let ones: Vec<usize> = m.col_ones(j).collect();
            match ones.as_slice() {
                [i] => col_index.push(*i),
                _ => return Err(MatrixError::NotLogical { col: j }),
            }
        }
        LogicalMatrix::from_positions(m.rows(), col_index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: usize, idx: &[usize]) -> LogicalMatrix {
        LogicalMatrix::delta(rows, idx).unwrap()
    }

    #[test]
    fn delta_vector_stp_concatenates_indices() {
        let a = DeltaVector::new(2, 1).unwrap();
        let b = DeltaVector::new(2, 2).unwrap();
        assert_eq!(a.stp(&b), DeltaVector::new(4, 2).unwrap());
        assert_eq!(a.to_matrix().stp(&b.to_matrix()), d(4, &[2]));
    }

    #[test]
    fn delta_rejects_out_of_range() {
        assert!(matches!(
            LogicalMatrix::delta(3, &[1, 4]),
            Err(MatrixError::IndexOutOfRange { index: 4, dim: 3 })
        ));
        assert!(DeltaVector::new(2, 0).is_err());
    }

    #[test]
    fn stp_with_identity_is_identity_action() {
        let a = d(2, &[2, 2]);
        assert_eq!(LogicalMatrix::identity(2).stp(&a), a);
        assert_eq!(a.stp(&LogicalMatrix::identity(2)), a);
    }

    #[test]
    fn stp_of_block_matrix_with_delta_selects_block() {
        // L ⋉ δ_2^2 = second 2x2 block of L
        let l = d(2, &[1, 2, 2, 1]);
        let x = DeltaVector::new(2, 2).unwrap().to_matrix();
        assert_eq!(l.stp(&x), d(2, &[2, 1]));
    }

    #[test]
    fn khatri_rao_examples() {
        assert_eq!(d(2, &[1, 2]).khatri_rao(&d(2, &[1, 1])).unwrap(), d(4, &[1, 3]));
        assert_eq!(d(2, &[1, 2]).khatri_rao(&d(2, &[1, 2])).unwrap(), d(4, &[1, 4]));
        assert!(d(2, &[1, 2]).khatri_rao(&d(2, &[1])).is_err());
    }

    #[test]
    fn kron_with_one_by_one_identity() {
        let h = d(3, &[1, 2, 3, 2]);
        assert_eq!(LogicalMatrix::identity(1).kron(&h), h);
        assert_eq!(
            LogicalMatrix::identity(2).kron(&d(2, &[1, 2])),
            LogicalMatrix::identity(4)
        );
    }

    #[test]
    fn display_round_trips_delta_notation() {
        assert_eq!(d(8, &[7, 6, 7, 5]).to_string(), "delta 8 [7 6 7 5]");
    }

    #[test]
    fn boolean_conversion_requires_unit_columns() {
        let m = d(3, &[3, 1]);
        assert_eq!(LogicalMatrix::try_from(&m.to_boolean()).unwrap(), m);
        let z = BooleanMatrix::zeros(2, 2);
        assert!(LogicalMatrix::try_from(&z).is_err());
    }
}
