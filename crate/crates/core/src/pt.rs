//! The Parke–Taylor matrix, the monomial parametrization by Plücker
//! coordinates, and exact vanishing oracles on the torus and on the
//! moduli space of points on the line.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::perm::{cyclic_adjacencies, enumerate_sigma, pairs, sigma_index, Pair, Permutation};
use crate::poly::{Monomial, Polynomial};
use crate::ratfn::RationalFunction;

/// Polynomial ring with one variable `z_σ` per `σ ∈ Σ_n`, indexed in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRing {
    n: usize,
    sigmas: Vec<Permutation>,
}

impl SigmaRing {
    pub fn new(n: usize) -> Result<Self> {
        Ok(SigmaRing { n, sigmas: enumerate_sigma(n)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.sigmas.len()
    }

    pub fn sigmas(&self) -> &[Permutation] {
        &self.sigmas
    }

    pub fn sigma(&self, k: usize) -> &Permutation {
        &self.sigmas[k]
    }

    pub fn index(&self, sigma: &Permutation) -> Result<usize> {
        if sigma.len() != self.n || !sigma.fixes_one_two() {
            return Err(invalid!("{sigma} is not in the index set for n = {}", self.n));
        }
        Ok(sigma_index(sigma))
    }

    pub fn z(&self, sigma: &Permutation) -> Result<Polynomial> {
        Ok(Polynomial::var(self.nvars(), self.index(sigma)?))
    }

    pub fn z_str(&self, s: &str) -> Result<Polynomial> {
        self.z(&s.parse()?)
    }

    /// `∏ z_σ` over the given multiset.
    pub fn monomial(&self, perms: &[Permutation]) -> Result<Monomial> {
        let mut e = alloc::vec![0u16; self.nvars()];
        for p in perms {
            e[self.index(p)?] += 1;
        }
        Ok(Monomial::from_exponents(&e))
    }

    /// Permutations of a monomial, with multiplicity, in index order.
    pub fn perms_of(&self, m: &Monomial) -> Vec<Permutation> {
        m.support().flat_map(|(v, e)| core::iter::repeat(self.sigmas[v].clone()).take(e as usize)).collect()
    }

    pub fn name(&self, k: usize) -> String {
        alloc::format!("z[{}]", self.sigmas[k])
    }

    /// Parses a sum such as `"z12354*z12435 + z12345*z12453 - 2*z[12543]^2"`.
    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse_with(s, self.nvars(), &|name| {
            let rest = name.strip_prefix('z')?;
            let rest = rest.trim_start_matches('_').trim_start_matches('[').trim_end_matches(']');
            let sigma: Permutation = rest.parse().ok()?;
            self.index(&sigma).ok()
        })
    }
}

/// `A_n`: rows are the pairs `{i<j}` in lexicographic order, columns the
/// index set; entry 1 when `i, j` are cyclically adjacent in `σ`.
pub fn build_matrix(n: usize) -> Result<ExactMatrix> {
    if n < 4 {
        return Err(invalid!("the Parke–Taylor matrix needs n >= 4, got {n}"));
    }
    let sigmas = enumerate_sigma(n)?;
    let cols: Vec<SparseVec> = sigmas.iter().map(|s| column(s, n)).collect();
    Ok(ExactMatrix::from_rows(n * (n - 1) / 2, cols).transpose())
}

/// Indicator vector of the cyclic adjacencies of `σ`, indexed by pair row.
pub fn column(sigma: &Permutation, n: usize) -> SparseVec {
    SparseVec::from_entries(
        cyclic_adjacencies(sigma).entries().iter().map(|p| (p.row_index(n), BigInt::one())).collect(),
    )
}

/// `A_n·u` for an integer vector over the index set.
pub fn apply_matrix(n: usize, u: &SparseVec) -> Result<Vec<BigInt>> {
    let m = build_matrix(n)?;
    Ok(m.mul_sparse(u))
}

/// How `z_σ` pulls back to Plücker coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `z_σ ↦ ∏ 1/p_{σ_i σ_{i+1}}` with every `p` read as the unordered pair:
    /// the toric parametrization.
    Unsigned,
    /// Same, with `p_{ba} = −p_{ab}`: the Grassmannian.
    Antisymmetric,
}

/// Plücker variable index `p_{ij}`, `i < j`.
pub fn plucker_var(n: usize, a: u8, b: u8) -> usize {
    Pair::new(a, b).row_index(n)
}

pub fn plucker_name(n: usize, k: usize) -> String {
    let p = pairs(n)[k];
    alloc::format!("p[{},{}]", p.lo, p.hi)
}

/// `(-1)^{#descents}` read cyclically.
pub fn orientation_sign(sigma: &Permutation) -> i64 {
    let w = sigma.word();
    let n = w.len();
    let d = (0..n).filter(|&i| w[i] > w[(i + 1) % n]).count();
    if d % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The coordinate change `z_σ ↦ ε(σ) z_σ`, `ε` = [`orientation_sign`].
/// It carries relations on the unoriented torus parametrization to
/// relations on the oriented one, and is its own inverse.
pub fn twist(f: &Polynomial, ring: &SigmaRing) -> Polynomial {
    let terms = f.terms().map(|(m, c)| {
        let odd = m.support().filter(|&(v, e)| e % 2 == 1 && orientation_sign(ring.sigma(v)) < 0).count() % 2 == 1;
        (m.clone(), if odd { -c.clone() } else { c.clone() })
    });
    Polynomial::from_terms(f.nvars(), terms)
}

/// Pullback of a z-polynomial as `numerator / denominator` in the
/// `C(n,2)` Plücker variables, with no common monomial factor left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerFraction {
    pub numerator: Polynomial,
    pub denominator: Monomial,
}

pub fn pullback_z(f: &Polynomial, ring: &SigmaRing, orientation: Orientation) -> Result<PluckerFraction> {
    if f.nvars() != ring.nvars() {
        return Err(invalid!("polynomial in {} variables, ring has {}", f.nvars(), ring.nvars()));
    }
    let n = ring.n();
    let np = n * (n - 1) / 2;
    let cols: Vec<SparseVec> = ring.sigmas().iter().map(|s| column(s, n)).collect();
    let signs: Vec<i64> = ring.sigmas().iter().map(orientation_sign).collect();
    let mut dens: Vec<(Vec<u16>, BigRational)> = Vec::new();
    let mut lcm = alloc::vec![0u16; np];
    for (m, c) in f.terms() {
        let mut d = alloc::vec![0u16; np];
        let mut c = c.clone();
        for (v, e) in m.support() {
            for (r, _) in cols[v].iter() {
                d[r] += e;
            }
            if orientation == Orientation::Antisymmetric && signs[v] < 0 && e % 2 == 1 {
                c = -c;
            }
        }
        for (l, x) in lcm.iter_mut().zip(&d) {
            *l = (*l).max(*x);
        }
        dens.push((d, c));
    }
    let mut num = Polynomial::zero(np);
    for (d, c) in dens {
        let e: Vec<u16> = lcm.iter().zip(&d).map(|(l, x)| l - x).collect();
        num.add_term(Monomial::from_exponents(&e), c);
    }
    // strip the common monomial factor
    let mut g: Option<Vec<u16>> = None;
    for m in num.monomials() {
        g = Some(match g {
            None => m.exponents().to_vec(),
            Some(g) => g.iter().zip(m.exponents()).map(|(a, b)| *a.min(b)).collect(),
        });
    }
    let g = g.unwrap_or_else(|| alloc::vec![0; np]);
    let gm = Monomial::from_exponents(&g);
    let numerator = Polynomial::from_terms(np, num.terms().map(|(m, c)| (gm.quotient_of(m), c.clone())));
    let den: Vec<u16> = if numerator.is_zero() { alloc::vec![0; np] } else { lcm.iter().zip(&g).map(|(l, x)| l - x).collect() };
    Ok(PluckerFraction { numerator, denominator: Monomial::from_exponents(&den) })
}

/// Membership in the ideal of the toric variety `T_n`.
pub fn vanishes_on_torus(f: &Polynomial, ring: &SigmaRing) -> Result<bool> {
    Ok(pullback_z(f, ring, Orientation::Unsigned)?.numerator.is_zero())
}

/// The polynomial ring in `x_3, …, x_{n−1}`: the free points of a curve
/// normalized to `p_1 = 0`, `p_2 = 1`, `p_n = ∞`.
pub fn m0n_nvars(n: usize) -> usize {
    n - 3
}

pub fn m0n_name(k: usize) -> String {
    alloc::format!("x[{}]", k + 3)
}

/// `p_a − p_b` in the normalized chart, with `p_{an} = 1`, `p_{na} = −1`.
pub fn m0n_difference(n: usize, a: u8, b: u8) -> Polynomial {
    let nv = m0n_nvars(n);
    let point = |c: u8| -> Polynomial {
        match c {
            1 => Polynomial::zero(nv),
            2 => Polynomial::one(nv),
            c => Polynomial::var(nv, c as usize - 3),
        }
    };
    let nn = n as u8;
    if b == nn {
        Polynomial::one(nv)
    } else if a == nn {
        -&Polynomial::one(nv)
    } else {
        &point(a) - &point(b)
    }
}

/// `φ*(z_σ) = ∏ 1/(p_{σ_i} − p_{σ_{i+1}})` in the normalized chart.
pub fn m0n_parke_taylor(sigma: &Permutation, n: usize) -> Result<RationalFunction> {
    let w = sigma.word();
    let mut r = RationalFunction::one(m0n_nvars(n));
    for i in 0..w.len() {
        let d = m0n_difference(n, w[i], w[(i + 1) % w.len()]);
        r = r.mul(&RationalFunction::reciprocal_of(&d)?);
    }
    Ok(r)
}

/// Pullback of a z-polynomial to the normalized chart.
pub fn m0n_pullback(f: &Polynomial, ring: &SigmaRing) -> Result<RationalFunction> {
    let n = ring.n();
    let mut cache: BTreeMap<usize, RationalFunction> = BTreeMap::new();
    let mut parts = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let mut t = RationalFunction::from_polynomial(Polynomial::constant(m0n_nvars(n), c.clone()));
        for (v, e) in m.support() {
            if !cache.contains_key(&v) {
                cache.insert(v, m0n_parke_taylor(ring.sigma(v), n)?);
            }
            t = t.mul(&cache[&v].pow(e as u32));
        }
        parts.push(t);
    }
    Ok(RationalFunction::sum(m0n_nvars(n), parts.iter()))
}

/// A Z-basis of the degree-`d` forms vanishing on `PT°_n`: integer
/// relations among the pulled-back monomials, each cleared to a polynomial
/// over the common denominator `∏_{a<b<n} (p_a − p_b)^d`.
pub fn vanishing_forms(ring: &SigmaRing, d: u32) -> Result<Vec<Polynomial>> {
    let n = ring.n();
    let nv = m0n_nvars(n);
    let nn = n as u8;
    let dens: Vec<Polynomial> = ring
        .sigmas()
        .iter()
        .map(|s| {
            let w = s.word();
            (0..w.len()).fold(Polynomial::one(nv), |acc, i| &acc * &m0n_difference(n, w[i], w[(i + 1) % w.len()]))
        })
        .collect();
    let mut common = Polynomial::one(nv);
    for a in 1..nn {
        for b in a + 1..nn {
            common = &common * &m0n_difference(n, a, b).pow(d);
        }
    }
    let monos = monomials_of_degree(ring.nvars(), d);
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(monos.len());
    for m in &monos {
        let den = m.support().fold(Polynomial::one(nv), |acc, (v, e)| &acc * &dens[v].pow(e as u32));
        let num = common
            .div_exact(&den, crate::poly::MonomialOrder::DegRevLex)
            .ok_or_else(|| Error::InternalInconsistency(alloc::format!("common denominator misses {m:?}")))?;
        let mut col = Vec::with_capacity(num.len());
        for (pm, c) in num.terms() {
            let next = rows.len();
            let r = *rows.entry(pm.clone()).or_insert(next);
            col.push((r, c.numer().clone()));
        }
        cols.push(col);
    }
    let mut dense_rows: Vec<Vec<(usize, BigInt)>> = alloc::vec![Vec::new(); rows.len()];
    for (j, col) in cols.into_iter().enumerate() {
        for (r, c) in col {
            dense_rows[r].push((j, c));
        }
    }
    let m = ExactMatrix::from_rows(monos.len(), dense_rows.into_iter().map(SparseVec::from_entries).collect());
    let k = crate::linalg::integer_kernel_basis(&m);
    Ok(k
        .vectors
        .iter()
        .map(|v| {
            let terms = v.iter().map(|(j, c)| (monos[j].clone(), BigRational::from_integer(c.clone())));
            Polynomial::from_terms(ring.nvars(), terms)
        })
        .collect())
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(v: usize, left: u16, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if v + 1 == exps.len() {
            exps[v] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[v] = e;
            go(v + 1, left - e, exps, out);
        }
        exps[v] = 0;
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(0, d as u16, &mut alloc::vec![0; nvars], &mut out);
    }
    out
}

/// Exact membership in the ideal of the open Parke–Taylor variety.
pub fn vanishes_on_pt(f: &Polynomial, ring: &SigmaRing) -> Result<bool> {
    Ok(m0n_pullback(f, ring)?.is_zero())
}

/// Where a cross-ratio is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    /// Independent antisymmetric Plücker variables `p_{ij}`.
    Plucker,
    /// Symbols `x_3, …, x_{n−1}` of the normalized chart.
    M0nSymbolic,
    /// Exact values of `p_3, …, p_{n−1}` in the normalized chart.
    M0nNumeric(Vec<BigRational>),
}

/// `[ij|kl] = p_{ik} p_{jl} / (p_{jk} p_{il})`.
pub fn cross_ratio(n: usize, idx: [u8; 4], point: &PointSpec) -> Result<RationalFunction> {
    let [i, j, k, l] = idx;
    let mut seen = [false; 256];
    for &a in &idx {
        if a == 0 || a as usize > n || seen[a as usize] {
            return Err(invalid!("cross-ratio indices {idx:?} must be distinct letters of 1..={n}"));
        }
        seen[a as usize] = true;
    }
    match point {
        PointSpec::Plucker => {
            let np = n * (n - 1) / 2;
            let p = |a: u8, b: u8| {
                let v = Polynomial::var(np, plucker_var(n, a, b));
                if a < b {
                    v
                } else {
                    -&v
                }
            };
            Ok(RationalFunction::from_polynomial(&p(i, k) * &p(j, l))
                .mul(&RationalFunction::reciprocal_of(&p(j, k))?)
                .mul(&RationalFunction::reciprocal_of(&p(i, l))?))
        }
        PointSpec::M0nSymbolic => {
            let d = |a, b| m0n_difference(n, a, b);
            Ok(RationalFunction::from_polynomial(&d(i, k) * &d(j, l))
                .mul(&RationalFunction::reciprocal_of(&d(j, k))?)
                .mul(&RationalFunction::reciprocal_of(&d(i, l))?))
        }
        PointSpec::M0nNumeric(vals) => {
            if vals.len() != m0n_nvars(n) {
                return Err(invalid!("{} coordinates given, the chart has {}", vals.len(), m0n_nvars(n)));
            }
            let mut all = alloc::vec![BigRational::zero(), BigRational::one()];
            all.extend(vals.iter().cloned());
            for a in 0..all.len() {
                for b in 0..a {
                    if all[a] == all[b] {
                        return Err(Error::DegenerateConfiguration(alloc::format!(
                            "points p{} and p{} coincide",
                            b + 1,
                            a + 1
                        )));
                    }
                }
            }
            let d = |a: u8, b: u8| -> Result<BigRational> {
                Ok(m0n_difference(n, a, b).evaluate(vals)?)
            };
            let den = d(j, k)? * d(i, l)?;
            if den.is_zero() {
                return Err(Error::DegenerateConfiguration("cross-ratio denominator vanishes".into()));
            }
            let v = d(i, k)? * d(j, l)? / den;
            Ok(RationalFunction::from_polynomial(Polynomial::constant(m0n_nvars(n), v)))
        }
    }
}

/// Left side minus right side of the telescoping identity
/// `Σ_{i≤j≤n−1} p_{σ_j σ_{j+1}}/(p_{σ_j n} p_{σ_{j+1} n}) = −p_{1σ_i}/(p_{σ_i n} p_{1n})`
/// for `σ ∈ Σ_{n−1}` (indices cyclic, so `σ_n = σ_1 = 1`), after
/// `p_{ab} = p_a − p_b` with all of `p_1, …, p_n` symbolic. Zero exactly when
/// the identity holds.
pub fn telescoping_defect(sigma: &Permutation, i: usize, n: usize) -> Result<RationalFunction> {
    if sigma.len() + 1 != n || !sigma.fixes_one_two() {
        return Err(invalid!("{sigma} is not in the index set for n − 1 = {}", n - 1));
    }
    if !(3..n).contains(&i) {
        return Err(invalid!("position {i} outside 3..={}", n - 1));
    }
    let p = |a: u8, b: u8| &Polynomial::var(n, a as usize - 1) - &Polynomial::var(n, b as usize - 1);
    let w = sigma.word();
    let s = |j: usize| w[(j - 1) % (n - 1)];
    let nn = n as u8;
    let mut parts = Vec::new();
    for j in i..n {
        let (a, b) = (s(j), s(j + 1));
        let t = RationalFunction::from_polynomial(p(a, b))
            .mul(&RationalFunction::reciprocal_of(&p(a, nn))?)
            .mul(&RationalFunction::reciprocal_of(&p(b, nn))?);
        parts.push(t);
    }
    let si = s(i);
    parts.push(
        RationalFunction::from_polynomial(p(1, si))
            .mul(&RationalFunction::reciprocal_of(&p(si, nn))?)
            .mul(&RationalFunction::reciprocal_of(&p(1, nn))?),
    );
    Ok(RationalFunction::sum(n, parts.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn quadrics_vanishing_on_pt() {
        for (n, count) in [(5, 5), (6, 175)] {
            let ring = SigmaRing::new(n).unwrap();
            let forms = vanishing_forms(&ring, 2).unwrap();
            assert_eq!(forms.len(), count);
            for f in forms.iter().step_by(7) {
                assert!(vanishes_on_pt(f, &ring).unwrap());
            }
        }
    }

    #[test]
    fn a5_columns_sum_to_five() {
        let a = build_matrix(5).unwrap();
        assert_eq!((a.rows(), a.cols(), a.nnz()), (10, 6, 30));
        for c in 0..6 {
            let s: BigInt = (0..10).map(|r| a.get(r, c)).sum();
            assert_eq!(s, BigInt::from(5));
        }
        assert!(build_matrix(3).is_err());
    }

    #[test]
    fn a4_has_p12_row() {
        let a = build_matrix(4).unwrap();
        assert_eq!((a.rows(), a.cols()), (6, 2));
        assert_eq!(a.get(0, 0), BigInt::one());
        assert_eq!(a.get(0, 1), BigInt::one());
    }

    #[test]
    fn pullback_of_single_variable() {
        let r = SigmaRing::new(5).unwrap();
        let f = r.z_str("12345").unwrap();
        let pb = pullback_z(&f, &r, Orientation::Unsigned).unwrap();
        assert_eq!(pb.numerator, Polynomial::one(10));
        let expect: Vec<usize> = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)].iter().map(|&(a, b)| plucker_var(5, a, b)).collect();
        let mut e = alloc::vec![0u16; 10];
        for k in expect {
            e[k] = 1;
        }
        assert_eq!(pb.denominator, Monomial::from_exponents(&e));
        let zero = pullback_z(&Polynomial::zero(6), &r, Orientation::Unsigned).unwrap();
        assert!(zero.numerator.is_zero());
    }

    #[test]
    fn cubic_vanishes_both_ways() {
        let r = SigmaRing::new(5).unwrap();
        let f = r.parse("z12345*z12453*z12534 - z12354*z12435*z12543").unwrap();
        assert!(vanishes_on_torus(&f, &r).unwrap());
        assert!(vanishes_on_pt(&f, &r).unwrap());
        let g = r.parse("z12345 - z12354").unwrap();
        assert!(!vanishes_on_torus(&g, &r).unwrap());
        assert!(!vanishes_on_pt(&r.z_str("12345").unwrap(), &r).unwrap());
    }

    #[test]
    fn f2_pulls_back_to_plucker() {
        let r = SigmaRing::new(5).unwrap();
        let f = r.parse("z12354*z12435 + z12345*z12453 + z12354*z12453").unwrap();
        assert!(vanishes_on_pt(&f, &r).unwrap());
        let pb = pullback_z(&f, &r, Orientation::Antisymmetric).unwrap();
        let p = |a, b| Polynomial::var(10, plucker_var(5, a, b));
        let rel = &(&(&p(1, 3) * &p(4, 5)) - &(&p(1, 4) * &p(3, 5))) + &(&p(1, 5) * &p(3, 4));
        assert!(pb.numerator == rel || pb.numerator == -&rel);
    }

    #[test]
    fn telescoping_small() {
        for i in 3..5 {
            assert!(telescoping_defect(&perm("12534"), i, 6).unwrap().is_zero());
        }
        assert!(telescoping_defect(&perm("12534"), 2, 6).is_err());
    }

    #[test]
    fn cross_ratios() {
        let sym = cross_ratio(5, [1, 2, 3, 4], &PointSpec::Plucker).unwrap();
        let swapped = cross_ratio(5, [2, 1, 3, 4], &PointSpec::Plucker).unwrap();
        assert!(sym.mul(&swapped).equals(&RationalFunction::one(10)));
        // p = (0, 1, 2, ∞): p13 p24 / (p23 p14) = (−2)(1)/((−1)(1))
        let v = cross_ratio(4, [1, 2, 3, 4], &PointSpec::M0nNumeric(alloc::vec![BigRational::from_integer(2.into())])).unwrap();
        assert_eq!(v.num, Polynomial::constant(1, BigRational::from_integer(2.into())));
        let bad = cross_ratio(4, [1, 2, 3, 4], &PointSpec::M0nNumeric(alloc::vec![BigRational::one()]));
        assert!(matches!(bad, Err(Error::DegenerateConfiguration(_))));
    }
}
