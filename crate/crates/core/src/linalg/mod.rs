//! Arbitrary-precision integer matrices: Hermite normal form, rank,
//! integer kernels and lattice membership.

mod hnf;
mod lattice;
mod sparse;

pub use hnf::{hnf, is_unimodular, HnfResult};
pub use lattice::{
    integer_kernel_basis, kernel_via_transform, lattice_contains, saturation_index, span_rank,
    span_report, EchelonLattice, Insert, LatticeBasis, SpanReport,
};
pub use sparse::SparseVec;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Fp;
use crate::error::{invalid, Result};

/// Sparse integer matrix stored as sorted nonzero rows.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: (0..rows).map(|_| SparseVec::new()).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i] = SparseVec::from_entries(alloc::vec![(i, BigInt::one())]);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_col().map_or(true, |c| c < cols)));
        ExactMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid!("ragged rows in dense matrix"));
        }
        let data = rows
            .iter()
            .map(|r| SparseVec::from_dense(&r.iter().cloned().map(Into::into).collect::<Vec<BigInt>>()))
            .collect();
        Ok(ExactMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_row_vecs(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        self.data[r].set(c, v);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut cols: Vec<Vec<(usize, BigInt)>> = (0..self.cols).map(|_| Vec::new()).collect();
        for (r, c, v) in self.entries() {
            cols[c].push((r, v.clone()));
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data: cols.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(invalid!("vector of length {} against {} columns", v.len(), self.cols));
        }
        Ok(self.data.iter().map(|r| r.dot_dense(v)).collect())
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> Vec<BigInt> {
        self.data.iter().map(|r| r.dot(v)).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(invalid!("shape mismatch {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row.iter() {
                    acc.add_scaled(a, &other.data[k]);
                }
                acc
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(invalid!("determinant of a {}x{} matrix", self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    /// Determinant reduced modulo the word-sized prime.
    pub fn determinant_mod_p(&self) -> Result<Fp> {
        if self.rows != self.cols {
            return Err(invalid!("determinant of a {}x{} matrix", self.rows, self.cols));
        }
        let mut a: Vec<Vec<Fp>> = self.to_dense().iter().map(|r| r.iter().map(Fp::from_bigint).collect()).collect();
        let n = self.rows;
        let mut det = Fp::ONE;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Fp::ZERO);
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det = det * a[k][k];
            let inv = a[k][k].inv();
            for i in k + 1..n {
                let f = a[i][k] * inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = a[k][j];
                    a[i][j] = a[i][j] - f * t;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for r in self.to_dense() {
            f.write_str("[")?;
            for (i, v) in r.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Rank over the word-sized prime field; never exceeds the rational rank.
pub fn rank_mod_p(m: &ExactMatrix) -> usize {
    let mut rows: Vec<Vec<(usize, Fp)>> = m
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|(c, v)| (c, Fp::from_bigint(v))).filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let mut pivots: alloc::collections::BTreeMap<usize, Vec<(usize, Fp)>> = Default::default();
    for row in rows.drain(..) {
        let mut v = row;
        while let Some(&(c, a)) = v.first() {
            match pivots.get(&c) {
                None => {
                    let inv = a.inv();
                    for e in v.iter_mut() {
                        e.1 = e.1 * inv;
                    }
                    pivots.insert(c, v);
                    break;
                }
                Some(p) => v = axpy_fp(&v, a, p),
            }
        }
    }
    pivots.len()
}

// v - a * p, p monic at its leading column
fn axpy_fp(v: &[(usize, Fp)], a: Fp, p: &[(usize, Fp)]) -> Vec<(usize, Fp)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i]);
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, -(a * p[j].1)));
            j += 1;
        } else {
            let s = v[i].1 - a * p[j].1;
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rational rank. The modular rank is tried first: when it already equals
/// `min(rows, cols)` it is exact; otherwise the Hermite form decides.
pub fn rank(m: &ExactMatrix) -> usize {
    let bound = m.rows().min(m.cols());
    let r = rank_mod_p(m);
    if r == bound {
        return r;
    }
    let h = hnf(m, false);
    debug_assert!(r <= h.rank);
    h.rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn determinant_routes_agree() {
        let m = ExactMatrix::from_dense(&[vec![2, -1, 0], vec![4, 3, 1], vec![-2, 5, 7]]).unwrap();
        let d = m.determinant().unwrap();
        assert_eq!(d, BigInt::from(2 * (21 - 5) + (28 + 2)));
        assert_eq!(m.determinant_mod_p().unwrap(), Fp::from_bigint(&d));
    }

    #[test]
    fn rank_small() {
        let z = ExactMatrix::zeros(3, 4);
        assert_eq!(rank(&z), 0);
        let m = ExactMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]).unwrap();
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&ExactMatrix::identity(5)), 5);
    }

    #[test]
    fn transpose_and_product() {
        let m = ExactMatrix::from_dense(&[vec![1, 0, 2], vec![0, -3, 1]]).unwrap();
        let t = m.transpose();
        assert_eq!(t.to_dense(), ExactMatrix::from_dense(&[vec![1, 0], vec![0, -3], vec![2, 1]]).unwrap().to_dense());
        let p = m.mul(&t).unwrap();
        assert_eq!(p.to_dense(), ExactMatrix::from_dense(&[vec![5, 2], vec![2, 10]]).unwrap().to_dense());
    }
}
