use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{lcm, BooleanMatrix, LogicalMatrix, MatrixError};

/// Dense matrix of arbitrary-precision nonnegative integers.
///
/// Used for exact walk counting (`tr(M^s)` grows exponentially for
/// nondeterministic systems) and as the general-purpose operand type of the
/// semi-tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigUint>,
}

impl CountMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CountMatrix {
            rows,
            cols,
            entries: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn from_u64_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().map(|&v| BigUint::from(v)));
        }
        Ok(CountMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: BigUint) {
        self.entries[row * self.cols + col] = v;
    }

    pub fn trace(&self) -> BigUint {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .fold(BigUint::zero(), |acc, v| acc + v)
    }

    pub fn mul(&self, other: &CountMatrix) -> Result<CountMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · B` for a 0/1 matrix `B`; only additions are needed.
    pub fn mul_boolean(&self, b: &BooleanMatrix) -> Result<CountMatrix, MatrixError> {
        if self.cols != b.rows() {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (b.rows(), b.cols()),
            });
        }
        let mut out = Self::zeros(self.rows, b.cols());
        for k in 0..b.rows() {
            for j in b.row_ones(k) {
                for i in 0..self.rows {
                    let a = &self.entries[i * self.cols + k];
                    if !a.is_zero() {
                        out.entries[i * b.cols() + j] += a;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, s: usize) -> Result<CountMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = s;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn kron(&self, other: &CountMatrix) -> CountMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.entries[(i * other.rows + k) * c + j * other.cols + l] =
                            a * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Left semi-tensor product `(A ⊗ I_{t/n})(B ⊗ I_{t/p})`, `t = lcm(n, p)`.
    pub fn stp(&self, other: &CountMatrix) -> CountMatrix {
        let t = lcm(self.cols, other.rows);
        let left = self.kron(&Self::identity(t / self.cols));
        let right = other.kron(&Self::identity(t / other.rows));
        left.mul(&right).expect("inner dimensions agree by construction")
    }

    /// Entries clamped to {0, 1}.
    pub fn booleanize(&self) -> BooleanMatrix {
        let mut m = BooleanMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

impl From<&BooleanMatrix> for CountMatrix {
    fn from(b: &BooleanMatrix) -> Self {
        let mut m = CountMatrix::zeros(b.rows(), b.cols());
        for i in 0..b.rows() {
            for j in b.row_ones(i) {
                m.entries[i * b.cols() + j] = BigUint::one();
            }
        }
        m
    }
}

impl From<&LogicalMatrix> for CountMatrix {
    fn from(l: &LogicalMatrix) -> Self {
        CountMatrix::from(&l.to_boolean())
    }
}

impl BooleanMatrix {
    /// `tr(A^s)` over the integers: the exact number of closed walks of
    /// length `s` in the graph of `A`.
    pub fn int_power_trace(&self, s: usize) -> Result<BigUint, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                op: "int_power_trace",
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        assert!(s >= 1, "int_power_trace exponent must be positive");
        Ok(CountMatrix::from(self).pow(s)?.trace())
    }
}
