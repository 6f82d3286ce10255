use std::fmt;

use super::{iter_ones, popcount, words_for, xor_into};
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    /// All-zero `rows x cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from strings of `0`/`1` characters, one per row.
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::input(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for (j, ch) in row.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => {
                        return Err(Error::input(format!(
                            "row {i}: invalid character {:?}",
                            ch as char
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are the given packed words.
    ///
    /// # Panics
    /// Panics if a row slice has the wrong number of words or sets padding bits.
    pub fn from_packed_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [u64]>) -> Self {
        let stride = words_for(cols);
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            assert_eq!(row.len(), stride, "packed row has wrong word count");
            data.extend_from_slice(row);
            count += 1;
        }
        let m = BitMatrix {
            rows: count,
            cols,
            stride,
            data,
        };
        debug_assert!((0..m.rows).all(|i| m.padding_clear(i)));
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        let w = &mut self.data[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.stride);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn row_weight(&self, i: usize) -> usize {
        popcount(self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn padding_clear(&self, i: usize) -> bool {
        let tail = self.cols % 64;
        tail == 0 || self.stride == 0 || self.row(i)[self.stride - 1] >> tail == 0
    }

    /// dst ^= src, both row indices of `self`.
    fn xor_rows(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..src * s + s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..dst * s + s])
        };
        xor_into(b, a);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    /// Forward elimination in place. Returns pivot columns; rows `0..rank`
    /// are the nonzero echelon rows. With `full`, pivot columns are also
    /// cleared above their pivot, giving reduced row-echelon form.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.rows).find(|&i| self.data[i * self.stride + w] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(p, rank);
            let start = if full { 0 } else { rank + 1 };
            for i in start..self.rows {
                if i != rank && self.data[i * self.stride + w] & bit != 0 {
                    self.xor_rows(rank, i);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// Reduced row-echelon form and its strictly increasing pivot columns.
    /// Zero rows, if any, are moved to the bottom.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    /// Keeps only the listed columns, in the order given.
    pub fn restrict_columns(&self, keep: &[usize]) -> Result<BitMatrix> {
        if let Some(&bad) = keep.iter().find(|&&j| j >= self.cols) {
            return Err(Error::input(format!(
                "column {bad} out of range for a matrix with {} columns",
                self.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, keep.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let dst = out.row_mut(i);
            for (new_j, &j) in keep.iter().enumerate() {
                if (row[j / 64] >> (j % 64)) & 1 == 1 {
                    dst[new_j / 64] |= 1 << (new_j % 64);
                }
            }
        }
        Ok(out)
    }

    /// Basis of the left null space `{u : u * self = 0}`, one vector per row.
    pub fn null_space(&self) -> BitMatrix {
        // Row-reduce [self | I]; rows whose left block vanishes carry the
        // null vectors in their right block.
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, self.cols + n);
        for i in 0..n {
            for j in iter_ones(self.row(i)) {
                aug.set(i, j, true);
            }
            aug.set(i, self.cols + i, true);
        }
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == n {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..n).find(|&i| aug.data[i * aug.stride + w] & bit != 0) else {
                continue;
            };
            aug.swap_rows(p, rank);
            for i in rank + 1..n {
                if aug.data[i * aug.stride + w] & bit != 0 {
                    aug.xor_rows(rank, i);
                }
            }
            rank += 1;
        }
        let tags: Vec<usize> = (self.cols..self.cols + n).collect();
        let tail = aug.restrict_columns(&tags).expect("tag columns in range");
        BitMatrix::from_packed_rows(n, (rank..n).map(|i| tail.row(i)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in iter_ones(self.row(i)) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Row vector times matrix: `u * self`, with `u` packed over `rows` bits.
    pub fn left_mul_vec(&self, u: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.stride];
        for i in iter_ones(u) {
            assert!(i < self.rows, "vector longer than matrix row count");
            xor_into(&mut out, self.row(i));
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "dimension mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let prod = other.left_mul_vec(self.row(i));
            out.row_mut(i).copy_from_slice(&prod);
        }
        Ok(out)
    }

    /// Row `i` as a string of `0`/`1` characters.
    pub fn row_string(&self, i: usize) -> String {
        (0..self.cols)
            .map(|j| if self.get(i, j) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row_string(i))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row_string(i))?;
        }
        Ok(())
    }
}
