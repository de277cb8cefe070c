use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{hnf, ExactMatrix, SparseVec};
use crate::arith::ext_gcd;
use crate::error::{invalid, Result};

/// A Z-basis of a sublattice of `Z^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub dim: usize,
    pub vectors: Vec<SparseVec>,
    /// When set, `vectors[k]` has coordinate `δ_{kj}` at `free_columns[j]`,
    /// so coordinates of any lattice element can be read off directly.
    pub free_columns: Option<Vec<usize>>,
}

impl LatticeBasis {
    pub fn new(dim: usize, vectors: Vec<SparseVec>) -> Result<Self> {
        if vectors.iter().any(|v| v.max_col().map_or(false, |c| c >= dim)) {
            return Err(invalid!("vector longer than ambient dimension {dim}"));
        }
        Ok(LatticeBasis { dim, vectors, free_columns: None })
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<BigInt>> {
        let free = self.free_columns.as_ref()?;
        let coords: Vec<BigInt> = free.iter().map(|&c| v.get(c)).collect();
        let mut w = SparseVec::new();
        for (k, a) in coords.iter().enumerate() {
            w.add_scaled(a, &self.vectors[k]);
        }
        (w == *v).then_some(coords)
    }
}

/// Kernel of `M` over the integers, saturated by construction.
///
/// When the row Hermite form of `M` has only unit pivots the basis is read
/// off directly: one vector per non-pivot column `c`,
/// `e_c − Σ_t H[t][c]·e_{pivot(t)}`. Otherwise the zero rows of the
/// unimodular transform of `Mᵀ` are used.
pub fn integer_kernel_basis(m: &ExactMatrix) -> LatticeBasis {
    let h = hnf(m, false);
    if !h.unit_pivots() {
        return kernel_via_transform(m);
    }
    let mut is_pivot = alloc::vec![false; m.cols()];
    for &c in &h.pivot_cols {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    // column-major view of the nonzero rows of H
    let ht = ExactMatrix::from_rows(m.cols(), h.h.row_vecs()[..h.rank].to_vec()).transpose();
    let vectors = free
        .iter()
        .map(|&c| {
            let mut e: Vec<(usize, BigInt)> = ht.row(c).iter().map(|(t, v)| (h.pivot_cols[t], -v.clone())).collect();
            e.push((c, BigInt::one()));
            SparseVec::from_entries(e)
        })
        .collect();
    LatticeBasis { dim: m.cols(), vectors, free_columns: Some(free) }
}

/// Kernel from the rows of `U` in `U·Mᵀ = H` that hit zero rows of `H`,
/// brought to Hermite form for a canonical answer.
pub fn kernel_via_transform(m: &ExactMatrix) -> LatticeBasis {
    let t = hnf(&m.transpose(), true);
    let u = t.u.expect("transform requested");
    let raw: Vec<SparseVec> = u.row_vecs()[t.rank..].to_vec();
    let k = hnf(&ExactMatrix::from_rows(m.cols(), raw), false);
    let vectors: Vec<SparseVec> = k.h.row_vecs()[..k.rank].to_vec();
    let free = k.unit_pivots().then(|| k.pivot_cols.clone());
    // Unit-pivot Hermite rows of a kernel have identity coordinates only at
    // their pivot columns, which is what `free_columns` promises.
    LatticeBasis { dim: m.cols(), vectors, free_columns: free.filter(|f| has_identity_at(&k.h, f)) }
}

fn has_identity_at(h: &ExactMatrix, cols: &[usize]) -> bool {
    cols.iter().enumerate().all(|(t, &c)| (0..cols.len()).all(|s| h.get(s, c) == BigInt::from((s == t) as i32)))
}

/// Membership of `v` in the Z-span of `b`.
pub fn lattice_contains(b: &LatticeBasis, v: &[BigInt]) -> Result<bool> {
    if v.len() != b.dim {
        return Err(invalid!("vector of length {} against lattice in Z^{}", v.len(), b.dim));
    }
    let v = SparseVec::from_dense(v);
    if b.free_columns.is_some() {
        return Ok(b.coordinates(&v).is_some());
    }
    let h = hnf(&ExactMatrix::from_rows(b.dim, b.vectors.clone()), false);
    let mut r = v;
    for (t, &c) in h.pivot_cols.iter().enumerate() {
        let Some(e) = r.get_ref(c) else { continue };
        let p = h.h.get(t, c);
        let (q, rem) = e.div_rem(&p);
        if !rem.is_zero() {
            return Ok(false);
        }
        r.add_scaled(&-q, h.h.row(t));
    }
    Ok(r.is_zero())
}

/// Outcome of feeding one vector to an [`EchelonLattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insert {
    RankIncreased,
    /// Same rank, strictly larger lattice.
    Refined,
    AlreadyPresent,
}

/// Incremental integer echelon basis: rows keyed by leading column, leading
/// entries positive. Every update is unimodular on the current rows.
#[derive(Clone, Debug, Default)]
pub struct EchelonLattice {
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonLattice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let mut v = v;
        let mut refined = false;
        while let Some((c, b)) = v.leading() {
            let b = b.clone();
            let Some(p) = self.rows.get_mut(&c) else {
                if b.is_negative() {
                    v.negate();
                }
                self.rows.insert(c, v);
                return Insert::RankIncreased;
            };
            let a = p.leading().unwrap().1.clone();
            let (q, rem) = b.div_rem(&a);
            if rem.is_zero() {
                v.add_scaled(&-q, p);
                continue;
            }
            let (g, s, t) = ext_gcd(&a, &b);
            let new_p = SparseVec::lin_comb(&s, p, &t, &v);
            v = SparseVec::lin_comb(&(&a / &g), &v, &-(&b / &g), p);
            *p = new_p;
            refined = true;
        }
        if refined {
            Insert::Refined
        } else {
            Insert::AlreadyPresent
        }
    }

    /// Index of the lattice in `Z^rank` when it is full rank there; in
    /// general the product of the leading entries.
    pub fn pivot_product(&self) -> BigInt {
        self.rows.values().map(|r| r.leading().unwrap().1.clone()).product()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }
}

/// Index of a lattice in its saturation `span_Q(L) ∩ Z^dim`: the gcd of the
/// maximal minors, read as the product of pivots of the Hermite form of the
/// transposed basis.
pub fn saturation_index(dim: usize, basis: &[SparseVec]) -> BigInt {
    if basis.is_empty() {
        return BigInt::one();
    }
    let e = ExactMatrix::from_rows(dim, basis.to_vec()).transpose();
    let h = hnf(&e, false);
    debug_assert_eq!(h.rank, basis.len(), "basis must be independent");
    h.pivot_values().product()
}

/// Rank of the Z-span together with its relation to a reference lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub rank: usize,
    pub reference_rank: Option<usize>,
    /// `[saturation(span) : span]`; 1 means saturated.
    pub saturation_index: BigInt,
    /// Whether the span equals the reference lattice.
    pub equals_reference: Option<bool>,
    /// Positions of input vectors that raised the rank, in input order.
    pub selected: Vec<usize>,
    /// Whether `selected` alone already spans the same lattice.
    pub selected_is_basis: bool,
}

/// Rational rank of the span of `vectors`.
pub fn span_rank(vectors: &[SparseVec]) -> usize {
    let mut e = EchelonLattice::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Span analysis. With a reference basis carrying `free_columns` the vectors
/// are first rewritten in reference coordinates, so equality with the
/// reference reduces to an index-one full-rank echelon.
pub fn span_report(dim: usize, vectors: &[SparseVec], reference: Option<&LatticeBasis>) -> Result<SpanReport> {
    let mut coords: Vec<SparseVec> = Vec::with_capacity(vectors.len());
    let mut inside = true;
    let mut sub_dim = dim;
    match reference {
        Some(b) if b.free_columns.is_some() => {
            let free = b.free_columns.as_ref().unwrap();
            sub_dim = free.len();
            for v in vectors {
                let x = v.project(free);
                if inside && b.coordinates(v).is_none() {
                    inside = false;
                }
                coords.push(x);
            }
        }
        Some(b) => {
            for v in vectors {
                if inside && !lattice_contains(b, &v.to_dense(dim))? {
                    inside = false;
                }
            }
            coords = vectors.to_vec();
        }
        None => coords = vectors.to_vec(),
    }
    let mut e = EchelonLattice::new();
    let mut selected = Vec::new();
    for (k, v) in coords.iter().enumerate() {
        if e.insert(v.clone()) == Insert::RankIncreased {
            selected.push(k);
        }
    }
    let rank = e.rank();
    let basis = e.basis();
    let sat = if rank == sub_dim && reference.map_or(false, |b| b.free_columns.is_some()) {
        e.pivot_product()
    } else {
        saturation_index(sub_dim, &basis)
    };
    let equals_reference = reference.map(|b| {
        if !inside || rank != b.rank() {
            return false;
        }
        if b.free_columns.is_some() {
            e.pivot_product().is_one()
        } else {
            b.vectors.iter().all(|v| {
                let mut probe = e.clone();
                probe.insert(v.clone()) == Insert::AlreadyPresent
            })
        }
    });
    let mut sel = EchelonLattice::new();
    for &k in &selected {
        sel.insert(coords[k].clone());
    }
    let selected_is_basis = same_lattice(&sel, &e);
    Ok(SpanReport {
        rank,
        reference_rank: reference.map(|b| b.rank()),
        saturation_index: sat,
        equals_reference,
        selected,
        selected_is_basis,
    })
}

fn same_lattice(sub: &EchelonLattice, full: &EchelonLattice) -> bool {
    sub.rank() == full.rank()
        && full.basis().into_iter().all(|v| {
            let mut probe = sub.clone();
            probe.insert(v) == Insert::AlreadyPresent
        })
}
