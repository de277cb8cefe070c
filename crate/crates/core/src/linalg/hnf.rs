use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactMatrix, SparseVec};
use crate::arith::Fp;

/// Row Hermite normal form `H = U·M`.
///
/// Rows `0..rank` of `H` carry the pivots, in increasing pivot column; the
/// remaining rows are zero. Pivots are positive and every entry above a
/// pivot lies in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: ExactMatrix,
    /// Present when the transform was requested.
    pub u: Option<ExactMatrix>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl HnfResult {
    pub fn pivot_values(&self) -> impl Iterator<Item = BigInt> + '_ {
        self.pivot_cols.iter().enumerate().map(|(t, &c)| self.h.get(t, c))
    }

    pub fn unit_pivots(&self) -> bool {
        self.pivot_values().all(|p| p.is_one())
    }
}

struct Row {
    h: SparseVec,
    u: SparseVec,
}

impl Row {
    // self -= q * other
    fn sub_mul(&mut self, q: &BigInt, other: &Row, track: bool) {
        let mq = -q;
        self.h.add_scaled(&mq, &other.h);
        if track {
            self.u.add_scaled(&mq, &other.u);
        }
    }

    fn negate(&mut self) {
        self.h.negate();
        self.u.negate();
    }
}

/// Column-by-column Euclidean elimination. Within a column the row with the
/// smallest absolute entry (ties: fewest nonzeros, then lowest index) is the
/// running pivot.
pub fn hnf(m: &ExactMatrix, track_transform: bool) -> HnfResult {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut active: Vec<Row> = m
        .row_vecs()
        .iter()
        .enumerate()
        .map(|(i, r)| Row {
            h: r.clone(),
            u: if track_transform { SparseVec::unit(i) } else { SparseVec::new() },
        })
        .collect();
    let mut done: Vec<Row> = Vec::new();
    let mut pivot_cols = Vec::new();

    // Columns are visited in order; a row whose leading column is c can only
    // interact with rows that also reach c, so we bucket by leading column.
    let mut order: Vec<usize> = (0..active.len()).collect();
    for c in 0..ncols {
        let mut hits: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&r| active[r].h.leading().map_or(false, |(lc, _)| lc == c))
            .collect();
        if hits.is_empty() {
            continue;
        }
        loop {
            let best = *hits
                .iter()
                .min_by(|&&a, &&b| {
                    let (va, vb) = (active[a].h.leading().unwrap().1.abs(), active[b].h.leading().unwrap().1.abs());
                    va.cmp(&vb).then(active[a].h.nnz().cmp(&active[b].h.nnz())).then(a.cmp(&b))
                })
                .unwrap();
            let (pivot_rows, rest): (Vec<usize>, Vec<usize>) = hits.iter().partition(|&&r| r == best);
            if rest.is_empty() {
                hits = pivot_rows;
                break;
            }
            let p = active[best].h.leading().unwrap().1.clone();
            let prow = Row { h: active[best].h.clone(), u: active[best].u.clone() };
            let mut still = alloc::vec![best];
            for r in rest {
                let e = active[r].h.leading().unwrap().1.clone();
                let q = e.div_floor(&p);
                active[r].sub_mul(&q, &prow, track_transform);
                if active[r].h.leading().map_or(false, |(lc, _)| lc == c) {
                    still.push(r);
                }
            }
            hits = still;
        }
        let r = hits[0];
        if active[r].h.leading().unwrap().1.is_negative() {
            active[r].negate();
        }
        order.retain(|&x| x != r);
        let row = Row { h: core::mem::take(&mut active[r].h), u: core::mem::take(&mut active[r].u) };
        let p = row.h.leading().unwrap().1.clone();
        for prev in done.iter_mut() {
            if let Some(e) = prev.h.get_ref(c) {
                let q = e.div_floor(&p);
                if !q.is_zero() {
                    prev.sub_mul(&q, &row, track_transform);
                }
            }
        }
        done.push(row);
        pivot_cols.push(c);
    }
    let rank = done.len();
    for r in order {
        debug_assert!(active[r].h.is_zero());
        done.push(Row { h: core::mem::take(&mut active[r].h), u: core::mem::take(&mut active[r].u) });
    }
    let (hs, us): (Vec<SparseVec>, Vec<SparseVec>) = done.into_iter().map(|r| (r.h, r.u)).unzip();
    debug_assert_eq!(hs.len(), nrows);
    HnfResult {
        h: ExactMatrix::from_rows(ncols, hs),
        u: track_transform.then(|| ExactMatrix::from_rows(nrows, us)),
        pivot_cols,
        rank,
    }
}

/// `|det U| = 1`, exactly for sizes up to 50 and modulo the word prime above.
pub fn is_unimodular(u: &ExactMatrix) -> bool {
    if u.rows() != u.cols() {
        return false;
    }
    if u.rows() <= 50 {
        u.determinant().map_or(false, |d| d.abs().is_one())
    } else {
        u.determinant_mod_p().map_or(false, |d| d == Fp::ONE || d == -Fp::ONE)
    }
}
