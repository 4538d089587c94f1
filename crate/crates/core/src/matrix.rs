//! Dense square matrices over the extended max-plus scalars.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{ExtendedReal, NegInf};

/// A dense, row-major `n x n` matrix of [`ExtendedReal`].
///
/// Entry `(i, j)` is the weight of the arc `j -> i` in the precedence graph,
/// so `(A ⊗ x)_i = max_j (A_ij + x_j)` encodes `x_i >= A_ij + x_j`.
/// Indices are 0-based throughout the Rust API.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaxPlusMatrix {
    n: usize,
    entries: Vec<ExtendedReal>,
}

impl MaxPlusMatrix {
    pub fn filled(n: usize, value: ExtendedReal) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        MaxPlusMatrix {
            n,
            entries: vec![value; n * n],
        }
    }

    /// The all `-inf` matrix, neutral for ⊕ and absorbing for ⊗.
    pub fn epsilon(n: usize) -> Self {
        Self::filled(n, NegInf)
    }

    /// The max-plus identity: `0` on the diagonal, `-inf` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::epsilon(n);
        for i in 0..n {
            m.set(i, i, ExtendedReal::zero());
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self::filled(n, ExtendedReal::zero())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExtendedReal) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        MaxPlusMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<ExtendedReal>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            entries.extend(values);
        }
        Ok(MaxPlusMatrix { n, entries })
    }

    /// Builds a matrix from textual entries, e.g. `[["0", "."], ["-1/2", "inf"]]`.
    pub fn from_str_rows<S: AsRef<str>, R: AsRef<[S]>>(rows: &[R]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_ref()
                    .iter()
                    .map(|s| s.as_ref().parse::<ExtendedReal>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtendedReal {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut ExtendedReal {
        &mut self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExtendedReal) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[ExtendedReal] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtendedReal]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<ExtendedReal>> {
        self.rows().map(<[ExtendedReal]>::to_vec).collect()
    }

    /// Iterates over `((i, j), entry)` in row-major order.
    pub fn indexed(&self) -> impl Iterator<Item = ((usize, usize), &ExtendedReal)> {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / n, k % n), v))
    }

    pub fn has_pos_inf(&self) -> bool {
        self.entries.iter().any(ExtendedReal::is_pos_inf)
    }

    /// Fails with the first `+inf` entry, if any.
    pub fn ensure_over_rmax(&self) -> Result<()> {
        match self.indexed().find(|(_, v)| v.is_pos_inf()) {
            Some(((row, col), _)) => Err(Error::PosInfEntry { row, col }),
            None => Ok(()),
        }
    }

    fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Entrywise maximum.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.ensure_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.oplus(b))
            .collect();
        Ok(MaxPlusMatrix { n: self.n, entries })
    }

    /// Max-plus product: `(A ⊗ B)_ij = max_k (A_ik + B_kj)`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        self.ensure_same_dim(other)?;
        let n = self.n;
        let mut out = Self::epsilon(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_neg_inf() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_neg_inf() {
                        continue;
                    }
                    let cell = out.get_mut(i, j);
                    if cell.is_pos_inf() {
                        continue;
                    }
                    cell.raise_to(&a.otimes(b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// `true` when every entry of `self` is `>=` the matching entry of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a >= b)
    }

    /// Copies the `size x size` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self.get(row + i, col + j).clone())
    }

    pub(crate) fn put_block(&mut self, row: usize, col: usize, block: &Self) {
        for ((i, j), v) in block.indexed() {
            self.set(row + i, col + j, v.clone());
        }
    }

    /// `self` with its diagonal raised to at least `0`, i.e. `self ⊕ E`.
    pub fn with_unit_diagonal(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.get_mut(i, i).raise_to(&ExtendedReal::zero());
        }
        out
    }
}

impl fmt::Display for MaxPlusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|v| if v.is_neg_inf() { ".".to_string() } else { v.to_string() })
            .collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}
