//! Binomials in the z-coordinates, the adjacency criterion, lifting,
//! the quadratic families and the toric ideal.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::linalg::{integer_kernel_basis, span_report, LatticeBasis, SparseVec};
use crate::perm::{all_words, check_delta, cyclic_adjacencies, enumerate_sigma, sigma_index, splice, AdjacencyMultiset, Permutation};
use crate::poly::{saturate_by_product, Ideal, Monomial, Polynomial};
use crate::pt::{build_matrix, SigmaRing};

/// `z^{plus} − z^{minus}` with coprime sides, canonically signed: the side
/// whose serialized monomial is lexicographically smaller is `minus`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    plus: Vec<Permutation>,
    minus: Vec<Permutation>,
}

fn monomial_string(side: &[Permutation]) -> String {
    let mut s = String::new();
    let mut k = 0;
    while k < side.len() {
        let mut e = 1;
        while k + e < side.len() && side[k + e] == side[k] {
            e += 1;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&alloc::format!("z[{}]", side[k]));
        if e > 1 {
            s.push_str(&alloc::format!("^{e}"));
        }
        k += e;
    }
    s
}

impl Binomial {
    /// Cancels common factors and fixes the sign. Both sides must consist of
    /// permutations of one common length.
    pub fn new(plus: Vec<Permutation>, minus: Vec<Permutation>) -> Result<Self> {
        let n = plus.first().or(minus.first()).map_or(0, |p| p.len());
        if plus.iter().chain(&minus).any(|p| p.len() != n || !p.fixes_one_two()) {
            return Err(invalid!("binomial sides must be index-set permutations of one length"));
        }
        let (mut p, mut m) = (plus, minus);
        p.sort();
        m.sort();
        let (mut pi, mut mi) = (Vec::new(), Vec::new());
        let (mut a, mut b) = (0, 0);
        while a < p.len() || b < m.len() {
            if b == m.len() || (a < p.len() && p[a] < m[b]) {
                pi.push(p[a].clone());
                a += 1;
            } else if a == p.len() || m[b] < p[a] {
                mi.push(m[b].clone());
                b += 1;
            } else {
                a += 1;
                b += 1;
            }
        }
        let mut out = Binomial { plus: pi, minus: mi };
        out.canonicalize();
        Ok(out)
    }

    fn canonicalize(&mut self) {
        if monomial_string(&self.plus) < monomial_string(&self.minus) {
            core::mem::swap(&mut self.plus, &mut self.minus);
        }
    }

    pub fn plus(&self) -> &[Permutation] {
        &self.plus
    }

    pub fn minus(&self) -> &[Permutation] {
        &self.minus
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn n(&self) -> usize {
        self.plus.first().or(self.minus.first()).map_or(0, |p| p.len())
    }

    pub fn degree(&self) -> usize {
        self.plus.len().max(self.minus.len())
    }

    /// `u⁺ − u⁻` over the index set.
    pub fn to_vector(&self) -> SparseVec {
        let mut e: Vec<(usize, BigInt)> = Vec::new();
        for p in &self.plus {
            e.push((sigma_index(p), BigInt::one()));
        }
        for p in &self.minus {
            e.push((sigma_index(p), -BigInt::one()));
        }
        SparseVec::from_entries(e)
    }

    pub fn to_polynomial(&self, ring: &SigmaRing) -> Result<Polynomial> {
        let a = Polynomial::monomial(ring.monomial(&self.plus)?, One::one());
        let b = Polynomial::monomial(ring.monomial(&self.minus)?, One::one());
        Ok(&a - &b)
    }

    /// The binomial as a relation among the oriented Parke–Taylor
    /// functions: `z^a − ε z^b` with `ε` the product of the orientation
    /// signs of all factors on both sides.
    pub fn to_pt_polynomial(&self, ring: &SigmaRing) -> Result<Polynomial> {
        Ok(crate::pt::twist(&self.to_polynomial(ring)?, ring))
    }

    /// Reads a polynomial `c·(z^a − z^b)`.
    pub fn from_polynomial(f: &Polynomial, ring: &SigmaRing) -> Result<Self> {
        let t: Vec<(&Monomial, _)> = f.terms().collect();
        if t.len() != 2 || (t[0].1 + t[1].1) != Zero::zero() {
            return Err(invalid!("not a pure difference binomial"));
        }
        let (a, b) = if t[0].1.is_positive() { (t[0].0, t[1].0) } else { (t[1].0, t[0].0) };
        Binomial::new(ring.perms_of(a), ring.perms_of(b))
    }

    /// Serialized as `z[..]*z[..] - z[..]*z[..]`.
    pub fn term_string(&self) -> String {
        alloc::format!("{} - {}", monomial_string(&self.plus), monomial_string(&self.minus))
    }

    /// Bracket notation, one row per permutation.
    pub fn tableau(&self) -> String {
        let side = |s: &[Permutation]| {
            let rows: Vec<String> = s.iter().map(|p| alloc::format!("{p}")).collect();
            alloc::format!("[{}]", rows.join("; "))
        };
        alloc::format!("{} - {}", side(&self.plus), side(&self.minus))
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.term_string())
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tableau())
    }
}

fn union_adjacencies(side: &[Permutation]) -> AdjacencyMultiset {
    side.iter().fold(AdjacencyMultiset::default(), |acc, p| acc.union(&cyclic_adjacencies(p)))
}

/// Both sides have the same cyclic adjacency multiset.
pub fn adjacency_balanced(b: &Binomial) -> Result<bool> {
    if b.plus.len() != b.minus.len() {
        return Err(invalid!("sides of degree {} and {}", b.plus.len(), b.minus.len()));
    }
    Ok(union_adjacencies(&b.plus) == union_adjacencies(&b.minus))
}

/// Raw (uncancelled) sides: equal sides are trivially balanced.
pub fn adjacency_balanced_raw(plus: &[Permutation], minus: &[Permutation]) -> Result<bool> {
    if plus.len() != minus.len() {
        return Err(invalid!("sides of degree {} and {}", plus.len(), minus.len()));
    }
    Ok(union_adjacencies(plus) == union_adjacencies(minus))
}

pub fn binomial_from_vector(u: &SparseVec, n: usize) -> Result<Binomial> {
    let sigmas = enumerate_sigma(n)?;
    if u.max_col().map_or(false, |c| c >= sigmas.len()) {
        return Err(invalid!("vector longer than the {} coordinates for n = {n}", sigmas.len()));
    }
    if u.is_zero() {
        return Err(invalid!("the zero vector has no binomial"));
    }
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for (c, v) in u.iter() {
        let k = v.abs().to_usize().ok_or_else(|| invalid!("exponent {v} too large"))?;
        let side = if v.is_positive() { &mut plus } else { &mut minus };
        side.extend(core::iter::repeat(sigmas[c].clone()).take(k));
    }
    if plus.is_empty() || minus.is_empty() {
        return Err(invalid!("a vector of one sign gives a monomial, not a binomial"));
    }
    Binomial::new(plus, minus)
}

/// Ordered letter pairs `(σ_i, σ_{i+1})` over a side, position `n` wrapping
/// to the first letter.
fn position_pairs(side: &[Permutation], i: usize) -> Vec<(u8, u8)> {
    let mut v: Vec<(u8, u8)> = side
        .iter()
        .map(|s| {
            let n = s.len();
            (s.at(i), if i == n { s.at(1) } else { s.at(i + 1) })
        })
        .collect();
    v.sort();
    v
}

/// Checks that every side has the same ordered pairs at position `i`.
pub(crate) fn check_position_hypothesis(sides: &[&[Permutation]], i: usize) -> Result<()> {
    let Some(first) = sides.first() else { return Ok(()) };
    let n = first.first().map_or(0, |p| p.len());
    if !(2..=n).contains(&i) {
        return Err(invalid!("position {i} outside 2..={n}"));
    }
    let reference = position_pairs(first, i);
    for s in &sides[1..] {
        let other = position_pairs(s, i);
        if other != reference {
            let show = |v: &[(u8, u8)]| v.iter().map(|(a, b)| alloc::format!("{a}{b}")).collect::<Vec<_>>().join(",");
            return Err(Error::PreconditionFailed(alloc::format!(
                "position-{i} adjacencies differ: {{{}}} vs {{{}}}",
                show(&reference),
                show(&other)
            )));
        }
    }
    Ok(())
}

/// Splices `delta` right after position `i` of every permutation.
pub fn lift_binomial(b: &Binomial, i: usize, delta: &[u8]) -> Result<Binomial> {
    if delta.is_empty() {
        return Ok(b.clone());
    }
    let n = b.n();
    check_delta(n, delta)?;
    check_position_hypothesis(&[&b.plus, &b.minus], i)?;
    let lift = |s: &[Permutation]| -> Vec<Permutation> {
        s.iter().map(|p| Permutation::new(splice(p.word(), i, delta)).expect("splice of a permutation")).collect()
    };
    Binomial::new(lift(&b.plus), lift(&b.minus))
}

/// Ways to cut every word on `letters` into `parts` consecutive blocks.
fn split_words(letters: &[u8], parts: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for w in all_words(letters) {
        let m = w.len();
        let mut cuts = alloc::vec![0usize; parts - 1];
        fn rec(w: &[u8], m: usize, cuts: &mut Vec<usize>, k: usize, lo: usize, out: &mut Vec<Vec<Vec<u8>>>) {
            if k == cuts.len() {
                let mut blocks = Vec::new();
                let mut prev = 0;
                for &c in cuts.iter() {
                    blocks.push(w[prev..c].to_vec());
                    prev = c;
                }
                blocks.push(w[prev..].to_vec());
                out.push(blocks);
                return;
            }
            for c in lo..=m {
                cuts[k] = c;
                rec(w, m, cuts, k + 1, c, out);
            }
        }
        if letters.is_empty() {
            out.push(alloc::vec![Vec::new(); parts]);
            break;
        }
        rec(&w, m, &mut cuts, 0, 0, &mut out);
    }
    out
}

fn word(parts: &[&[u8]]) -> Permutation {
    let mut w = alloc::vec![1u8, 2];
    for p in parts {
        w.extend_from_slice(p);
    }
    Permutation::new(w).expect("family words are permutations")
}

/// The quadratic families, deduplicated after canonical signing, in
/// enumeration order (ordered quadruples, then words).
pub fn quadratic_family(n: usize) -> Result<Vec<Binomial>> {
    if n < 6 {
        return Err(invalid!("the quadratic families need n >= 6, got {n}"));
    }
    if n > 12 {
        return Err(invalid!("n = {n} is beyond enumeration range"));
    }
    let letters: Vec<u8> = (3..=n as u8).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |b: Binomial| {
        if seen.insert(b.clone()) {
            out.push(b);
        }
    };
    for quad in all_words(&letters).into_iter().map(|w| [w[0], w[1], w[2], w[3]]).collect::<BTreeSet<_>>() {
        let [i, j, k, l] = quad;
        let rest: Vec<u8> = letters.iter().copied().filter(|c| !quad.contains(c)).collect();
        for blocks in split_words(&rest, 2) {
            let (a, g) = (&blocks[0][..], &blocks[1][..]);
            push(Binomial::new(
                alloc::vec![word(&[a, &[i, j, k, l], g]), word(&[a, &[j, l, i, k], g])],
                alloc::vec![word(&[a, &[i, j, l, k], g]), word(&[a, &[j, k, i, l], g])],
            )?);
        }
        for blocks in split_words(&rest, 3) {
            let (a, b, g) = (&blocks[0][..], &blocks[1][..], &blocks[2][..]);
            if b.is_empty() {
                continue;
            }
            push(Binomial::new(
                alloc::vec![word(&[a, &[i, j], b, &[k, l], g]), word(&[a, &[j, i], b, &[l, k], g])],
                alloc::vec![word(&[a, &[i, j], b, &[l, k], g]), word(&[a, &[j, i], b, &[k, l], g])],
            )?);
        }
    }
    Ok(out)
}

/// Binomials of a Z-basis of `ker A_n`.
pub fn kernel_binomials(n: usize) -> Result<Vec<Binomial>> {
    let k = kernel_lattice(n)?;
    k.vectors.iter().map(|v| binomial_from_vector(v, n)).collect()
}

pub fn kernel_lattice(n: usize) -> Result<LatticeBasis> {
    Ok(integer_kernel_basis(&build_matrix(n)?))
}

/// `(n−2)! − C(n−1,2) + 1`.
pub fn expected_kernel_rank(n: usize) -> usize {
    crate::perm::factorial(n - 2) + 1 - (n - 1) * (n - 2) / 2
}

/// `⟨kernel binomials⟩ : (∏ z_σ)^∞`.
pub fn toric_ideal(n: usize, budget: &Budget) -> Result<Ideal> {
    if n < 5 {
        return Err(invalid!("toric ideals are computed for n >= 5, got {n}"));
    }
    let ring = SigmaRing::new(n)?;
    let gens = kernel_binomials(n)?.iter().map(|b| b.to_polynomial(&ring)).collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(ring.nvars(), gens)?;
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    saturate_by_product(&ideal, &vars, budget)
}

/// Outcome of testing whether the quadratic families generate the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub family_size: usize,
    pub span_rank: usize,
    pub kernel_rank: usize,
    /// `[saturation(span) : span]`.
    pub saturation_index: BigInt,
    /// The families span the full kernel lattice.
    pub verdict: bool,
    /// Family members forming a Z-basis when the verdict holds.
    pub selected_basis: Vec<Binomial>,
    /// Kernel basis vectors outside the family span.
    pub kernel_vectors_outside_span: usize,
    /// Lowest-degree kernel basis binomial outside the span, if any.
    pub witness: Option<Binomial>,
}

pub fn check_conjecture(n: usize) -> Result<ConjectureReport> {
    let family = quadratic_family(n)?;
    let kernel = kernel_lattice(n)?;
    let dim = crate::perm::factorial(n - 2);
    let vecs: Vec<SparseVec> = family.iter().map(|b| b.to_vector()).collect();
    let rep = span_report(dim, &vecs, Some(&kernel))?;
    let verdict = rep.equals_reference == Some(true) && rep.rank == expected_kernel_rank(n);
    let mut witness: Option<Binomial> = None;
    let mut outside = 0;
    if !verdict {
        let mut e = crate::linalg::EchelonLattice::new();
        for v in &vecs {
            e.insert(v.clone());
        }
        for v in &kernel.vectors {
            let mut probe = e.clone();
            if probe.insert(v.clone()) != crate::linalg::Insert::AlreadyPresent {
                outside += 1;
                let b = binomial_from_vector(v, n)?;
                if witness.as_ref().map_or(true, |w| b.degree() < w.degree()) {
                    witness = Some(b);
                }
            }
        }
    }
    let selected_basis =
        if verdict && rep.selected_is_basis { rep.selected.iter().map(|&k| family[k].clone()).collect() } else { Vec::new() };
    Ok(ConjectureReport {
        n,
        family_size: family.len(),
        span_rank: rep.rank,
        kernel_rank: kernel.rank(),
        saturation_index: rep.saturation_index,
        verdict,
        selected_basis,
        kernel_vectors_outside_span: outside,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oriented_binomials_vanish_on_pt() {
        use crate::pt::{vanishes_on_pt, vanishes_on_torus};
        let ring = SigmaRing::new(6).unwrap();
        let mut untwisted_fail = 0;
        for b in kernel_binomials(6).unwrap() {
            let f = b.to_polynomial(&ring).unwrap();
            assert!(vanishes_on_torus(&f, &ring).unwrap());
            assert!(vanishes_on_pt(&b.to_pt_polynomial(&ring).unwrap(), &ring).unwrap());
            untwisted_fail += usize::from(!vanishes_on_pt(&f, &ring).unwrap());
        }
        // the orientation matters from n = 6 on
        assert!(untwisted_fail > 0);
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn cubic() -> Binomial {
        Binomial::new(alloc::vec![p("12345"), p("12453"), p("12534")], alloc::vec![p("12354"), p("12435"), p("12543")]).unwrap()
    }

    #[test]
    fn cubic_is_balanced_and_from_vector() {
        let c = cubic();
        assert!(adjacency_balanced(&c).unwrap());
        let u = SparseVec::from_i64(&[1, -1, -1, 1, 1, -1]);
        assert_eq!(binomial_from_vector(&u, 5).unwrap(), c);
        let mut neg = u.clone();
        neg.negate();
        assert_eq!(binomial_from_vector(&neg, 5).unwrap(), c);
        assert!(binomial_from_vector(&SparseVec::from_i64(&[0, 1]), 5).is_err());
        assert!(binomial_from_vector(&SparseVec::new(), 5).is_err());
    }

    #[test]
    fn lift_cubic() {
        let l = lift_binomial(&cubic(), 2, &[6]).unwrap();
        let e = Binomial::new(
            alloc::vec![p("126345"), p("126453"), p("126534")],
            alloc::vec![p("126354"), p("126435"), p("126543")],
        )
        .unwrap();
        assert_eq!(l, e);
        assert!(adjacency_balanced(&l).unwrap());
        assert_eq!(lift_binomial(&cubic(), 2, &[]).unwrap(), cubic());
        assert!(matches!(lift_binomial(&cubic(), 3, &[6]), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn family_six_contains_proof_binomial() {
        let fam = quadratic_family(6).unwrap();
        let b = Binomial::new(alloc::vec![p("123456"), p("124635")], alloc::vec![p("123465"), p("124536")]).unwrap();
        assert!(fam.contains(&b));
        for f in &fam {
            assert!(adjacency_balanced(f).unwrap());
        }
        assert!(quadratic_family(5).is_err());
    }

    #[test]
    fn kernel_binomial_counts() {
        assert!(kernel_binomials(4).unwrap().is_empty());
        assert_eq!(kernel_binomials(5).unwrap(), alloc::vec![cubic()]);
        assert_eq!(kernel_binomials(6).unwrap().len(), 15);
    }
}
