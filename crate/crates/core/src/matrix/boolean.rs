use std::fmt;

use super::MatrixError;

const WORD_BITS: usize = u64::BITS as usize;

/// Dense 0/1 matrix, bit-packed per row.
///
/// Bits past `cols` in the last word of each row are always zero, so derived
/// equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BooleanMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD_BITS);
        BooleanMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    /// Convenience constructor from 0/1 integers (nonzero means 1).
    pub fn from_01<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let bools: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| v != 0).collect())
            .collect();
        Self::from_rows(&bools)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.words[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let word = &mut self.words[row * self.stride + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.words[row * self.stride..(row + 1) * self.stride]
    }

    /// Column indices of the ones in `row`, ascending.
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(row)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter { word, base: w * WORD_BITS })
    }

    /// Row indices of the ones in `col`, ascending.
    pub fn col_ones(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows).filter(move |&i| self.get(i, col))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Every column has at most one 1.
    pub fn columns_at_most_one(&self) -> bool {
        let mut seen = vec![0u64; self.stride];
        for i in 0..self.rows {
            for (s, &w) in seen.iter_mut().zip(self.row_words(i)) {
                if *s & w != 0 {
                    return false;
                }
                *s |= w;
            }
        }
        true
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    /// Boolean sum `A +_B B` (elementwise OR).
    pub fn bool_add(&self, other: &Self) -> Result<Self, MatrixError> {
        let mut out = self.clone();
        out.or_assign(other)?;
        Ok(out)
    }

    pub fn or_assign(&mut self, other: &Self) -> Result<(), MatrixError> {
        self.check_same_shape(other, "bool_add")?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        Ok(())
    }

    /// Elementwise `self ≤ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Boolean product `A ×_B B`: row `i` is the OR of the rows of `B`
    /// selected by the ones in row `i` of `A`.
    pub fn bool_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "bool_mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let stride = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.words[i * stride..(i + 1) * stride];
            for k in self.row_ones(i) {
                for (d, s) in dst.iter_mut().zip(other.row_words(k)) {
                    *d |= s;
                }
            }
        }
        Ok(out)
    }

    /// `A^(s)`, the `s`-fold Boolean product, by repeated squaring.
    pub fn bool_power(&self, s: usize) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                op: "bool_power",
                rows: self.rows,
                cols: self.cols,
            });
        }
        assert!(s >= 1, "bool_power exponent must be positive");
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = s;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.bool_mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.bool_mul(&base)?;
        }
        Ok(result.expect("s >= 1"))
    }

    /// `A v` for a Boolean column vector given as a bit per column.
    pub fn mul_vector(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row_ones(i).any(|j| v[j]))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                for k in 0..other.rows {
                    for l in other.row_ones(k) {
                        out.set(i * other.rows + k, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// Columns `[start, start + len)`.
    pub fn column_block(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.cols, "column block out of range");
        let mut out = Self::zeros(self.rows, len);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                if j >= start && j < start + len {
                    out.set(i, j - start, true);
                }
            }
        }
        out
    }

    /// Stacks `blocks` vertically; all must share the column count.
    pub fn vstack(blocks: &[&Self]) -> Result<Self, MatrixError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(MatrixError::DimensionMismatch {
                    op: "vstack",
                    left: (rows, cols),
                    right: (b.rows, b.cols),
                });
            }
            let start = offset * out.stride;
            out.words[start..start + b.words.len()].copy_from_slice(&b.words);
            offset += b.rows;
        }
        Ok(out)
    }

    /// `P A Pᵀ` where new index `a` refers to old index `perm[a]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for (a, &pa) in perm.iter().enumerate() {
            for (b, &pb) in perm.iter().enumerate() {
                if self.get(pa, pb) {
                    out.set(a, b, true);
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BooleanMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
