//! Bit-packed square binary matrices.
//!
//! A matrix of order `n` is stored as `n` machine words, one per row. Row
//! `i` holds the number whose `n`-bit binary expansion spells the row left
//! to right, so column 1 sits at bit `n - 1` and column `n` at bit 0. The
//! derived ordering compares row tuples lexicographically, first row most
//! significant, which is the order every canonicalization routine in this
//! crate relies on.

use std::fmt;
use std::ops::Mul;
use thiserror::Error;

/// Largest supported order; one row must fit in a `u64`.
pub const MAX_ORDER: usize = u64::BITS as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("order {order} is outside the supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },
    #[error("row {row}: code {code} does not fit in {order} bits")]
    RowOverflow { row: usize, code: u64, order: usize },
}

/// Square binary matrix, one row code per word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
}

impl BitMatrix {
    /// Builds a matrix from row codes; the order is the number of rows.
    ///
    /// Fails when there are zero or more than [`MAX_ORDER`] rows, or when a
    /// code needs more bits than the order allows.
    pub fn new(rows: Vec<u64>) -> Result<Self, MatrixError> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(MatrixError::OrderOutOfRange {
                order,
                min: 1,
                max: MAX_ORDER,
            });
        }
        let mask = row_mask(order);
        for (i, &code) in rows.iter().enumerate() {
            if code & !mask != 0 {
                return Err(MatrixError::RowOverflow {
                    row: i + 1,
                    code,
                    order,
                });
            }
        }
        Ok(Self { rows })
    }

    /// Caller guarantees `1 <= rows.len() <= MAX_ORDER` and in-range codes.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_ORDER);
        debug_assert!(rows.iter().all(|&r| r & !row_mask(rows.len()) == 0));
        Self { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Entry at `row`, `col` (0-based).
    pub fn get(&self, row: usize, col: usize) -> bool {
        let n = self.order();
        assert!(row < n && col < n, "entry ({row}, {col}) out of bounds");
        (self.rows[row] >> (n - 1 - col)) & 1 == 1
    }

    /// Number of 1 entries.
    pub fn count_ones(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    /// Identity matrix: row `i` carries `2^(n-1-i)`.
    ///
    /// # Panics
    ///
    /// Panics when `n` is zero or above [`MAX_ORDER`].
    pub fn identity(n: usize) -> Self {
        assert_order(n);
        Self {
            rows: (0..n).map(|i| 1u64 << (n - 1 - i)).collect(),
        }
    }

    /// Cyclic shift permutation matrix: ones on the superdiagonal plus the
    /// lower-left corner. Multiplying by it on the left rotates rows up,
    /// on the right rotates columns right. Order 1 degenerates to the
    /// identity.
    ///
    /// # Panics
    ///
    /// Panics when `n` is zero or above [`MAX_ORDER`].
    pub fn shift_matrix(n: usize) -> Self {
        assert_order(n);
        let rows = (0..n)
            .map(|i| {
                if i + 1 == n {
                    1u64 << (n - 1)
                } else {
                    1u64 << (n - 2 - i)
                }
            })
            .collect();
        Self { rows }
    }

    /// Mirror permutation matrix: ones on the anti-diagonal. It is its own
    /// transpose and its own inverse.
    ///
    /// # Panics
    ///
    /// Panics when `n` is zero or above [`MAX_ORDER`].
    pub fn mirror_matrix(n: usize) -> Self {
        assert_order(n);
        Self {
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// Boolean matrix product: entry `(i, j)` is the OR over `k` of
    /// `a(i, k) AND b(k, j)`. Row `i` of the result is the union of the
    /// rows of `other` selected by the bits of row `i` of `self`.
    ///
    /// # Panics
    ///
    /// Panics when the orders differ.
    pub fn logical_mul(&self, other: &BitMatrix) -> BitMatrix {
        let n = self.order();
        assert_eq!(n, other.order(), "order mismatch in logical product");
        let mut out = vec![0u64; n];
        for (acc, &row) in out.iter_mut().zip(&self.rows) {
            let mut bits = row;
            while bits != 0 {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                *acc |= other.rows[n - 1 - p];
            }
        }
        Self { rows: out }
    }

    /// Raises the matrix to the `e`-th boolean power; `e = 0` gives the
    /// identity.
    pub fn power(&self, e: usize) -> BitMatrix {
        let mut acc = Self::identity(self.order());
        for _ in 0..e {
            acc = acc.logical_mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = vec![0u64; self.order()];
        transpose_rows(&self.rows, &mut out);
        Self { rows: out }
    }

    /// Reflection across the anti-diagonal: reverses every row's bits and
    /// the order of the rows' bit positions in one step. Equals the
    /// product with [`BitMatrix::mirror_matrix`] on the right.
    pub fn mirror(&self) -> BitMatrix {
        let n = self.order();
        Self {
            rows: self.rows.iter().map(|&r| reverse_row(r, n)).collect(),
        }
    }

    /// Quarter-turn clockwise: the transpose with its rows reversed.
    pub fn rotate(&self) -> BitMatrix {
        let mut out = vec![0u64; self.order()];
        rotate_rows(&self.rows, &mut out);
        Self { rows: out }
    }

    /// Cyclic row shift: the first row moves to the bottom `k` times.
    pub fn row_shift(&self, k: usize) -> BitMatrix {
        let mut rows = self.rows.clone();
        rows.rotate_left(k % self.order());
        Self { rows }
    }

    /// Cyclic column shift: the last column moves to the front `l` times,
    /// i.e. every row's low `n` bits rotate right by `l`.
    pub fn col_shift(&self, l: usize) -> BitMatrix {
        let n = self.order();
        let l = l % n;
        Self {
            rows: self
                .rows
                .iter()
                .map(|&r| rotate_row_right(r, l, n))
                .collect(),
        }
    }
}

impl Mul for &BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: &BitMatrix) -> BitMatrix {
        self.logical_mul(rhs)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}:", self.order())?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{row}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        for (i, &row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for col in 0..n {
                let bit = (row >> (n - 1 - col)) & 1;
                write!(f, "{bit}")?;
            }
        }
        Ok(())
    }
}

fn assert_order(n: usize) {
    assert!(
        (1..=MAX_ORDER).contains(&n),
        "order {n} is outside the supported range 1..={MAX_ORDER}"
    );
}

/// Low `n` bits set.
pub(crate) fn row_mask(n: usize) -> u64 {
    debug_assert!((1..=MAX_ORDER).contains(&n));
    if n == MAX_ORDER {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reverses the low `n` bits of a row code.
pub(crate) fn reverse_row(code: u64, n: usize) -> u64 {
    code.reverse_bits() >> (MAX_ORDER - n)
}

/// Rotates the low `n` bits of a row code right by `l`, `l < n`.
pub(crate) fn rotate_row_right(code: u64, l: usize, n: usize) -> u64 {
    debug_assert!(l < n);
    if l == 0 {
        code
    } else {
        ((code >> l) | (code << (n - l))) & row_mask(n)
    }
}

/// Transposes `src` into `dst`; both slices have the same length.
pub(crate) fn transpose_rows(src: &[u64], dst: &mut [u64]) {
    let n = src.len();
    dst.fill(0);
    for (i, &row) in src.iter().enumerate() {
        let mut bits = row;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // entry (i, n-1-p) lands at (n-1-p, i)
            dst[n - 1 - p] |= 1u64 << (n - 1 - i);
        }
    }
}

/// Writes the quarter-turn of `src` into `dst`.
pub(crate) fn rotate_rows(src: &[u64], dst: &mut [u64]) {
    transpose_rows(src, dst);
    dst.reverse();
}

/// Writes the anti-diagonal reflection of `src` into `dst`.
pub(crate) fn mirror_rows(src: &[u64], dst: &mut [u64]) {
    let n = src.len();
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = reverse_row(s, n);
    }
}
