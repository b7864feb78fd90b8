//! Dense linear algebra over the rationals.
//!
//! Every value is an exact `BigRational`, kept in lowest terms with a positive
//! denominator after each operation. Elimination always pivots on the first
//! nonzero entry in column order, so kernels and echelon forms are
//! reproducible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type RationalVector = Vec<Rational>;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `[+-]digits[/digits]`. The denominator must be positive.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed rational {token:?}"));
    }
    let numer = BigInt::from_str(num.strip_prefix('+').unwrap_or(num))
        .map_err(|_| format!("malformed rational {token:?}"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("malformed denominator in {token:?}"));
            }
            let d = BigInt::from_str(d).map_err(|_| format!("malformed rational {token:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {token:?}"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "matrix construction",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().map(|&v| rational(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "matrix construction",
                    left: (n, cols),
                    right: (1, row.len()),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors, all of length `dim`.
    pub fn from_columns(dim: usize, columns: &[RationalVector]) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch {
                    op: "matrix from columns",
                    left: (dim, columns.len()),
                    right: (col.len(), 1),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RationalVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, columns.len());
        for (k, &j) in columns.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(Self {
            rows: self.rows,
            cols,
            entries,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
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
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RationalVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "matrix-vector product",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First negative entry in row-major order, as `(row, col, value)`.
    pub fn first_negative(&self) -> Option<(usize, usize, &Rational)> {
        self.entries
            .iter()
            .position(Signed::is_negative)
            .map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.entries.iter().all(Signed::is_positive)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let idx = row * m.cols + j;
                if !m.entries[idx].is_zero() {
                    m.entries[idx] *= &inv;
                }
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let pivot_val = m.entries[row * m.cols + j].clone();
                    if !pivot_val.is_zero() {
                        m.entries[i * m.cols + j] -= &factor * pivot_val;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Exact rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, col).clone();
            for i in rank + 1..m.rows {
                let below = m.get(i, col).clone();
                if below.is_zero() {
                    continue;
                }
                let factor = below / &pivot;
                for j in col..m.cols {
                    let v = m.entries[rank * m.cols + j].clone();
                    if !v.is_zero() {
                        m.entries[i * m.cols + j] -= &factor * v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel, one vector per free column of the RREF,
    /// with a 1 in that free coordinate.
    pub fn nullspace_basis(&self) -> Vec<RationalVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, free).clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Exact rank of the matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

pub fn nullspace_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    m.nullspace_basis()
}

pub fn matmul(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    a.matmul(b)
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

/// Whitespace-separated rows, one per line, without a header.
impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
