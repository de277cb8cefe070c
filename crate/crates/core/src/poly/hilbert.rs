use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Monomial;

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn mul_one_minus_t_pow(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + d];
    for (k, c) in p.iter().enumerate() {
        out[k] += c;
        out[k + d] -= c;
    }
    out
}

fn add_shifted(a: &mut Vec<BigInt>, b: &[BigInt], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigInt::zero());
    }
    for (k, c) in b.iter().enumerate() {
        a[k + shift] += c;
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1−t)^n` of `R/⟨gens⟩`,
/// `R` the polynomial ring in `n` variables. Coefficient of `t^k` at `k`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<BigInt> {
    let mut out = numerator(minimalize(gens.to_vec()));
    while out.len() > 1 && out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn numerator(gens: Vec<Monomial>) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    let nvars = gens[0].nvars();
    let mut count = vec![0usize; nvars];
    for g in &gens {
        for (v, _) in g.support() {
            count[v] += 1;
        }
    }
    let Some((v, _)) = count.iter().enumerate().filter(|(_, &c)| c > 1).max_by_key(|(v, &c)| (c, core::cmp::Reverse(*v)))
    else {
        // pairwise coprime generators
        let mut p = vec![BigInt::one()];
        for g in &gens {
            p = mul_one_minus_t_pow(&p, g.degree() as usize);
        }
        return p;
    };
    let e = gens.iter().map(|g| g.exp(v)).filter(|&x| x > 0).min().unwrap();
    let pivot = Monomial::var(nvars, v).with_exp(v, e);
    // I + ⟨x^e⟩
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(v) < e).cloned().collect();
    plus.push(pivot);
    // I : x^e
    let colon: Vec<Monomial> = gens.iter().map(|g| g.with_exp(v, g.exp(v).saturating_sub(e))).collect();
    let mut a = numerator(minimalize(plus));
    let b = numerator(minimalize(colon));
    add_shifted(&mut a, &b, e as usize);
    a
}

/// Krull dimension, projective dimension and degree read off a Hilbert
/// numerator over `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimDegree {
    pub krull_dim: usize,
    /// `krull_dim − 1`; `-1` for the empty projective variety.
    pub projective_dim: i64,
    pub degree: BigInt,
    /// Reduced numerator `Q(t)` with `HS = Q(t)/(1−t)^krull_dim`.
    pub numerator: Vec<BigInt>,
}

pub(crate) fn dim_degree_from_numerator(nvars: usize, num: &[BigInt]) -> DimDegree {
    let mut q: Vec<BigInt> = num.to_vec();
    let mut k = 0;
    let all_zero = |q: &[BigInt]| q.iter().all(|c| c.is_zero());
    if all_zero(&q) {
        return DimDegree { krull_dim: 0, projective_dim: -1, degree: BigInt::zero(), numerator: q };
    }
    // divide by (1 − t) while Q(1) = 0
    while q.iter().sum::<BigInt>().is_zero() && k < nvars {
        let mut r = vec![BigInt::zero(); q.len().saturating_sub(1)];
        let mut acc = BigInt::zero();
        for i in 0..r.len() {
            acc += &q[i];
            r[i] = acc.clone();
        }
        q = r;
        k += 1;
    }
    let krull = nvars - k;
    DimDegree { krull_dim: krull, projective_dim: krull as i64 - 1, degree: q.iter().sum(), numerator: q }
}

pub use super::ideal::projective_degree_and_dim;
