use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Sorts, merges duplicate indices and drops zeros.
    pub fn from_entries(mut entries: Vec<(usize, BigInt)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_sorted_unchecked(entries: Vec<(usize, BigInt)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(v: &[BigInt]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, BigInt::from(*x))).collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: alloc::vec![(i, BigInt::one())] }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn leading(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.entries.iter().map(|(c, v)| (*c, v))
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn get(&self, c: usize) -> BigInt {
        match self.entries.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn get_ref(&self, c: usize) -> Option<&BigInt> {
        self.entries.binary_search_by_key(&c, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    pub fn set(&mut self, c: usize, v: BigInt) {
        match self.entries.binary_search_by_key(&c, |e| e.0) {
            Ok(i) if v.is_zero() => {
                self.entries.remove(i);
            }
            Ok(i) => self.entries[i].1 = v,
            Err(_) if v.is_zero() => {}
            Err(i) => self.entries.insert(i, (c, v)),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut out = alloc::vec![BigInt::zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn dot_dense(&self, v: &[BigInt]) -> BigInt {
        self.entries.iter().map(|(c, a)| a * &v[*c]).sum()
    }

    pub fn dot(&self, other: &SparseVec) -> BigInt {
        let (mut i, mut j) = (0, 0);
        let mut acc = BigInt::zero();
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (&self.entries[i], &other.entries[j]);
            match a.0.cmp(&b.0) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    acc += &a.1 * &b.1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `self += a * other`.
    pub fn add_scaled(&mut self, a: &BigInt, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        *self = SparseVec::lin_comb(&BigInt::one(), self, a, other);
    }

    /// `a * x + b * y`.
    pub fn lin_comb(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(x.entries.len() + y.entries.len());
        let (mut i, mut j) = (0, 0);
        let (xe, ye) = (&x.entries, &y.entries);
        let a_zero = a.is_zero();
        let b_zero = b.is_zero();
        while i < xe.len() || j < ye.len() {
            let take_x = j == ye.len() || (i < xe.len() && xe[i].0 < ye[j].0);
            let take_y = i == xe.len() || (j < ye.len() && ye[j].0 < xe[i].0);
            if take_x {
                if !a_zero {
                    out.push((xe[i].0, a * &xe[i].1));
                }
                i += 1;
            } else if take_y {
                if !b_zero {
                    out.push((ye[j].0, b * &ye[j].1));
                }
                j += 1;
            } else {
                let s = a * &xe[i].1 + b * &ye[j].1;
                if !s.is_zero() {
                    out.push((xe[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale(&mut self, a: &BigInt) {
        if a.is_zero() {
            self.entries.clear();
        } else {
            for e in &mut self.entries {
                e.1 *= a;
            }
        }
    }

    pub fn negate(&mut self) {
        for e in &mut self.entries {
            e.1 = -core::mem::take(&mut e.1);
        }
    }

    /// Nonnegative gcd of all entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading entry positive.
    pub fn make_primitive(&mut self) {
        let g = self.content();
        if g.is_zero() {
            return;
        }
        let neg = self.entries[0].1.is_negative();
        if !g.is_one() {
            for e in &mut self.entries {
                e.1 = &e.1 / &g;
            }
        }
        if neg {
            self.negate();
        }
    }

    /// Restriction to the listed coordinates, reindexed by list position.
    pub fn project(&self, coords: &[usize]) -> SparseVec {
        SparseVec {
            entries: coords
                .iter()
                .enumerate()
                .filter_map(|(k, &c)| self.get_ref(c).map(|v| (k, v.clone())))
                .collect(),
        }
    }

    pub fn into_entries(self) -> Vec<(usize, BigInt)> {
        self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_i64(v)
    }

    #[test]
    fn lin_comb_cancels() {
        let x = sv(&[1, 2, 0, 3]);
        let y = sv(&[0, 1, 5, 1]);
        let z = SparseVec::lin_comb(&BigInt::from(1), &x, &BigInt::from(-2), &y);
        assert_eq!(z, sv(&[1, 0, -10, 1]));
        assert_eq!(z.nnz(), 3);
    }

    #[test]
    fn set_and_get() {
        let mut x = SparseVec::new();
        x.set(4, BigInt::from(7));
        x.set(1, BigInt::from(-1));
        assert_eq!(x.to_dense(5), sv(&[0, -1, 0, 0, 7]).to_dense(5));
        x.set(4, BigInt::zero());
        assert_eq!(x.nnz(), 1);
    }

    #[test]
    fn primitive() {
        let mut x = sv(&[0, -4, 6]);
        x.make_primitive();
        assert_eq!(x, sv(&[0, 2, -3]));
        let merged = SparseVec::from_entries(vec![(2, BigInt::from(1)), (0, BigInt::from(3)), (2, BigInt::from(-1))]);
        assert_eq!(merged, sv(&[3]));
    }
}
