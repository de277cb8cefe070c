//! The log canonical side: iterated Kapranov coordinates, shuffle sums, the
//! linear map `L_n` onto the z-coordinates and its support sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::perm::{enumerate_sigma, value_inversions, weak_order_leq, InversionSet, Permutation};
use crate::poly::{groebner, Ideal, Monomial, MonomialOrder, Polynomial};
use crate::pt::{m0n_difference, m0n_nvars, m0n_pullback, SigmaRing};
use crate::ratfn::RationalFunction;

/// `(i_1, …, i_{n−3})` with `1 ≤ i_m ≤ m + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KapranovIndex(Vec<u8>);

impl KapranovIndex {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        for (m, &i) in parts.iter().enumerate() {
            if i < 1 || i as usize > m + 2 {
                return Err(invalid!("component {} of {parts:?} must lie in 1..={}", m + 1, m + 2));
            }
        }
        Ok(KapranovIndex(parts))
    }

    pub fn parts(&self) -> &[u8] {
        &self.0
    }

    /// Number of marked points.
    pub fn n(&self) -> usize {
        self.0.len() + 3
    }

    pub fn prefix(&self) -> KapranovIndex {
        KapranovIndex(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn last(&self) -> u8 {
        *self.0.last().expect("nonempty index")
    }

    /// All `(n−2)!` indices, lexicographic.
    pub fn all(n: usize) -> Result<Vec<KapranovIndex>> {
        if n < 4 {
            return Err(invalid!("Kapranov indices need n >= 4, got {n}"));
        }
        let mut out = alloc::vec![Vec::new()];
        for m in 1..=n - 3 {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u8>| {
                    (1..=(m + 1) as u8).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(KapranovIndex).collect())
    }
}

impl fmt::Display for KapranovIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("t")?;
        let wide = self.0.iter().any(|&i| i > 9);
        for (k, i) in self.0.iter().enumerate() {
            if wide && k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KapranovIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coordinates used for the points `p_1, …, p_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `n` free variables `p_1, …, p_n` (variable `k` is `p_{k+1}`).
    Symbolic,
    /// `p_1 = 0`, `p_2 = 1`, `p_n = ∞`, free `x_3, …, x_{n−1}`.
    M0n,
}

impl Chart {
    pub fn nvars(self, n: usize) -> usize {
        match self {
            Chart::Symbolic => n,
            Chart::M0n => m0n_nvars(n),
        }
    }

    /// `p_a − p_b`.
    pub fn difference(self, n: usize, a: u8, b: u8) -> Polynomial {
        match self {
            Chart::Symbolic => &Polynomial::var(n, a as usize - 1) - &Polynomial::var(n, b as usize - 1),
            Chart::M0n => m0n_difference(n, a, b),
        }
    }
}

/// `∏_m (p_1 − p_{i_m+1}) / (p_{m+3} − p_{i_m+1})`.
pub fn kapranov_coordinate(idx: &KapranovIndex, chart: Chart) -> Result<RationalFunction> {
    let n = idx.n();
    let mut r = RationalFunction::one(chart.nvars(n));
    for (m0, &i) in idx.parts().iter().enumerate() {
        let m = m0 as u8 + 1;
        let a = i + 1;
        let num = chart.difference(n, 1, a);
        let den = chart.difference(n, m + 3, a);
        r = r.mul(&RationalFunction::quotient(&num, &den)?);
    }
    Ok(r)
}

/// Every `τ` obtained from `σ ∈ Σ_{n−1}` by inserting `n` into a gap after
/// `letter`, in gap order.
pub fn shuffle_words(letter: u8, sigma: &Permutation) -> Result<Vec<Permutation>> {
    let m = sigma.len();
    let pos = sigma.position_of(letter).ok_or_else(|| invalid!("letter {letter} does not occur in {sigma}"))?;
    if pos < 2 {
        return Err(invalid!("letter {letter} sits at position {pos}; shuffles start after position 2"));
    }
    let new = m as u8 + 1;
    Ok((pos..=m).map(|g| crate::perm::insert_after_letter(sigma, letter, &[new], g)).collect::<Result<Vec<_>>>()?)
}

/// `Σ z_τ` over [`shuffle_words`], over `Σ_{|σ|+1}`.
pub fn shuffle_sum(letter: u8, sigma: &Permutation) -> Result<Polynomial> {
    let ring = SigmaRing::new(sigma.len() + 1)?;
    let mut f = Polynomial::zero(ring.nvars());
    for t in shuffle_words(letter, sigma)? {
        f.add_term(Monomial::var(ring.nvars(), ring.index(&t)?), One::one());
    }
    Ok(f)
}

/// The support `B_idx` of `L_n(t_idx)` together with the inversion set `W`
/// from the recursive description `B = {σ : inv(σ) ⊆ W}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub index: KapranovIndex,
    pub perms: BTreeSet<Permutation>,
    pub inversions: InversionSet,
}

impl SupportSet {
    pub fn polynomial(&self, ring: &SigmaRing) -> Result<Polynomial> {
        let mut f = Polynomial::zero(ring.nvars());
        for p in &self.perms {
            f.add_term(Monomial::var(ring.nvars(), ring.index(p)?), One::one());
        }
        Ok(f)
    }

    pub fn line(&self) -> String {
        let ps: Vec<String> = self.perms.iter().map(|p| alloc::format!("{p}")).collect();
        alloc::format!("{}: {}", self.index, ps.join(" "))
    }
}

fn base_support(idx: &[u8]) -> &'static [&'static str] {
    match idx {
        [1, 1] => &["12345", "12354", "12435", "12453", "12534", "12543"],
        [1, 2] => &["12345", "12354", "12435"],
        [1, 3] => &["12345", "12435", "12453"],
        [2, 1] => &["12345", "12354", "12534"],
        [2, 2] => &["12345", "12354"],
        _ => &["12345"],
    }
}

fn union_inversions<'a>(perms: impl IntoIterator<Item = &'a Permutation>) -> InversionSet {
    perms.into_iter().flat_map(|p| value_inversions(p, false)).collect()
}

/// Support sets of `L_n` for every index, lexicographic by index.
pub fn build_l(n: usize) -> Result<BTreeMap<KapranovIndex, SupportSet>> {
    if n < 5 {
        return Err(invalid!("the linear map is built for n >= 5, got {n}"));
    }
    let mut level: BTreeMap<KapranovIndex, SupportSet> = BTreeMap::new();
    for idx in KapranovIndex::all(5)? {
        let perms: BTreeSet<Permutation> = base_support(idx.parts()).iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let inversions = union_inversions(&perms);
        level.insert(idx.clone(), SupportSet { index: idx, perms, inversions });
    }
    for m in 6..=n {
        let mut next = BTreeMap::new();
        for idx in KapranovIndex::all(m)? {
            let parent = &level[&idx.prefix()];
            let letter = idx.last() + 1;
            let mut perms = BTreeSet::new();
            for s in &parent.perms {
                perms.extend(shuffle_words(letter, s)?);
            }
            // T: pairs (new, i) for letters i standing after `letter` somewhere
            let top = m as u8;
            let mut inversions = parent.inversions.clone();
            for t in &parent.perms {
                let lp = t.position_of(letter).expect("letter present");
                for &c in &t.word()[lp..] {
                    if c != letter {
                        inversions.insert((top, c));
                    }
                }
            }
            next.insert(idx.clone(), SupportSet { index: idx, perms, inversions });
        }
        level = next;
    }
    Ok(level)
}

/// Verdicts on one support set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerIdealReport {
    /// Closed under going down in the right weak order.
    pub downward_closed: bool,
    /// Equal to `{σ : inv(σ) ⊆ W}` for the supplied or derived `W`.
    pub inversion_characterized: bool,
    pub size: usize,
}

/// With `inversions = None`, `W` is the union of the inversion sets of the
/// members, which is the only candidate that can work.
pub fn verify_lower_order_ideal(perms: &BTreeSet<Permutation>, inversions: Option<&InversionSet>) -> Result<LowerIdealReport> {
    let Some(first) = perms.iter().next() else {
        return Ok(LowerIdealReport { downward_closed: true, inversion_characterized: true, size: 0 });
    };
    let n = first.len();
    let all = enumerate_sigma(n)?;
    let mut downward_closed = true;
    'outer: for s in perms {
        for t in &all {
            if !perms.contains(t) && weak_order_leq(t, s)? {
                downward_closed = false;
                break 'outer;
            }
        }
    }
    let derived;
    let w = match inversions {
        Some(w) => w,
        None => {
            derived = union_inversions(perms);
            &derived
        }
    };
    let char_set: BTreeSet<Permutation> = all.into_iter().filter(|t| value_inversions(t, false).is_subset(w)).collect();
    Ok(LowerIdealReport { downward_closed, inversion_characterized: &char_set == perms, size: perms.len() })
}

pub fn verify_support(s: &SupportSet) -> Result<LowerIdealReport> {
    verify_lower_order_ideal(&s.perms, Some(&s.inversions))
}

/// Outcome of comparing `φ*(L(t_a))` with `Φ*(t_a)` projectively.
#[derive(Clone, Debug)]
pub struct LinearIsoReport {
    pub n: usize,
    pub indices: Vec<KapranovIndex>,
    /// `φ*(L(t_a)) / Φ*(t_a)` agrees with the first index's ratio.
    pub agrees: Vec<bool>,
    /// No `φ*(L(t_a))` vanishes.
    pub nonzero: bool,
    /// The common ratio when it is a constant.
    pub scalar: Option<BigRational>,
}

impl LinearIsoReport {
    pub fn holds(&self) -> bool {
        self.nonzero && self.agrees.iter().all(|&b| b)
    }

    /// Pairwise verdict: `φ*(L(t_a))·Φ*(t_b) = φ*(L(t_b))·Φ*(t_a)` holds
    /// exactly when both ratios equal the reference one.
    pub fn pair(&self, a: usize, b: usize) -> bool {
        self.agrees[a] && self.agrees[b]
    }

    pub fn pairs_checked(&self) -> usize {
        let k = self.indices.len();
        k * (k - 1) / 2
    }

    pub fn pairs_passed(&self) -> usize {
        let good = self.agrees.iter().filter(|&&b| b).count();
        let k = self.indices.len();
        if self.agrees.first() == Some(&true) {
            good * (good - 1) / 2
        } else {
            // every pair touching a non-agreeing ratio is unresolved by the reference; count exact pairs
            let mut c = 0;
            for a in 0..k {
                for b in a + 1..k {
                    c += usize::from(self.pair(a, b));
                }
            }
            c
        }
    }
}

pub fn verify_linear_iso(n: usize) -> Result<LinearIsoReport> {
    let supports = build_l(n)?;
    let ring = SigmaRing::new(n)?;
    let mut ratios = Vec::new();
    let mut nonzero = true;
    for s in supports.values() {
        let pulled = m0n_pullback(&s.polynomial(&ring)?, &ring)?;
        if pulled.is_zero() {
            nonzero = false;
        }
        let phi = kapranov_coordinate(&s.index, Chart::M0n)?;
        ratios.push(pulled.mul(&phi.invert()?).reduce());
    }
    let agrees: Vec<bool> = ratios.iter().map(|r| !r.is_zero() && r.equals(&ratios[0])).collect();
    let scalar = ratios[0].constant_ratio(&RationalFunction::one(m0n_nvars(n)));
    Ok(LinearIsoReport { n, indices: supports.keys().cloned().collect(), agrees, nonzero, scalar })
}

/// Variable names of the t-ring, in index order.
pub fn t_names(n: usize) -> Result<Vec<String>> {
    Ok(KapranovIndex::all(n)?.iter().map(|i| alloc::format!("{i}")).collect())
}

/// Kernel of `t_a ↦ Φ*(t_a)` for `n = 5`, by elimination. Variables are the
/// six `t` in lexicographic index order.
pub fn lc_ideal(n: usize, budget: &Budget) -> Result<Ideal> {
    if n != 5 {
        return Err(Error::Unsupported(alloc::format!("the log canonical ideal is computed for n = 5 only, got {n}")));
    }
    let idx = KapranovIndex::all(n)?;
    let nt = idx.len();
    let nx = m0n_nvars(n);
    let coords: Vec<RationalFunction> = idx.iter().map(|i| kapranov_coordinate(i, Chart::M0n)).collect::<Result<_>>()?;
    // common denominator: t_a ∝ num_a · D / den_a
    let mut den = Polynomial::one(nx);
    for c in &coords {
        let d = c.denominator();
        let (_, r) = den.div_rem(&d, MonomialOrder::DegRevLex);
        if !r.is_zero() {
            den = &den * &d;
        }
    }
    // ring: s, x_3.., t_..; t_a − s·N_a
    let total = 1 + nx + nt;
    let xmap: Vec<usize> = (1..=nx).collect();
    let mut gens = Vec::new();
    for (k, c) in coords.iter().enumerate() {
        let scaled = c.mul(&RationalFunction::from_polynomial(den.clone())).reduce();
        if !scaled.denominator().is_constant() {
            return Err(Error::InternalInconsistency(String::from("common denominator does not clear")));
        }
        let c = scaled.denominator().coeff(&Monomial::one(nx));
        let num = scaled.num.scale(&c.recip());
        let g = &Polynomial::var(total, 1 + nx + k) - &(&Polynomial::var(total, 0) * &num.remap(&xmap, total));
        gens.push(g);
    }
    let gb = groebner(&gens, MonomialOrder::Elimination(1 + nx), budget)?;
    let back: Vec<usize> = (0..total).map(|v| v.saturating_sub(1 + nx)).collect();
    let kept: Vec<Polynomial> =
        gb.iter().filter(|g| (0..=nx).all(|v| !g.uses_var(v))).map(|g| g.remap(&back, nt)).collect();
    Ideal::new(nt, kept)
}

/// All compositions of `total` into `parts` nonnegative parts, lexicographic
/// descending.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut r = BigInt::one();
    let mut acc = 0u32;
    for &p in parts {
        for k in 1..=p {
            acc += 1;
            r = r * BigInt::from(acc) / BigInt::from(k);
        }
    }
    r
}

/// `Σ multinomial(c) · table[c]` over compositions `c` of `n − 3` into
/// `n − 3` parts.
pub fn degree_formula(n: usize, table: &BTreeMap<Vec<u32>, BigInt>) -> Result<BigInt> {
    if n < 4 {
        return Err(invalid!("degree formula needs n >= 4, got {n}"));
    }
    let k = n - 3;
    let mut sum = BigInt::zero();
    for c in compositions(k as u32, k) {
        let v = table.get(&c).ok_or_else(|| invalid!("asymmetric multinomial table has no entry for {c:?}"))?;
        sum += multinomial(&c) * v;
    }
    Ok(sum)
}

/// Shipped asymmetric multinomial values for `n = 4, 5, 6`; unlisted
/// compositions are zero.
pub fn asymmetric_table(n: usize) -> Result<BTreeMap<Vec<u32>, BigInt>> {
    let nonzero: &[(&[u32], i64)] = match n {
        4 => &[(&[1], 1)],
        5 => &[(&[2, 0], 1), (&[1, 1], 2)],
        6 => &[(&[1, 1, 1], 6), (&[1, 2, 0], 3), (&[3, 0, 0], 1), (&[2, 0, 1], 2), (&[2, 1, 0], 3)],
        _ => return Err(Error::Unsupported(alloc::format!("no asymmetric multinomial table for n = {n}"))),
    };
    let k = n - 3;
    let mut t: BTreeMap<Vec<u32>, BigInt> = compositions(k as u32, k).into_iter().map(|c| (c, BigInt::zero())).collect();
    for (c, v) in nonzero {
        t.insert(c.to_vec(), BigInt::from(*v));
    }
    Ok(t)
}
