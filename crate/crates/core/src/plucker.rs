//! Plücker relations of `Gr(2,n)`, their lifts to the z-coordinates and the
//! generators of the open Parke–Taylor ideal.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::perm::{check_delta, splice, Permutation};
use crate::poly::{saturate_by_product, Ideal, Monomial, MonomialOrder, Polynomial};
use crate::pt::{plucker_name, plucker_var, pullback_z, Orientation, SigmaRing};
use crate::toric::{kernel_binomials, Binomial};

/// `p_{ij}p_{kl} − p_{ik}p_{jl} + p_{il}p_{jk}` with `i < j < k < l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PluckerRelation {
    pub n: usize,
    pub idx: [u8; 4],
}

impl PluckerRelation {
    pub fn new(n: usize, idx: [u8; 4]) -> Result<Self> {
        if !(idx[0] >= 1 && idx.windows(2).all(|w| w[0] < w[1]) && idx[3] as usize <= n) {
            return Err(invalid!("Plücker indices {idx:?} must increase strictly inside 1..={n}"));
        }
        Ok(PluckerRelation { n, idx })
    }

    pub fn involves_p12(&self) -> bool {
        self.idx[0] == 1 && self.idx[1] == 2
    }

    /// The trinomial in the `C(n,2)` Plücker variables.
    pub fn trinomial(&self) -> Polynomial {
        let n = self.n;
        let np = n * (n - 1) / 2;
        let [i, j, k, l] = self.idx;
        let q = |a: u8, b: u8, c: u8, d: u8| {
            let mut e = alloc::vec![0u16; np];
            e[plucker_var(n, a, b)] += 1;
            e[plucker_var(n, c, d)] += 1;
            Monomial::from_exponents(&e)
        };
        Polynomial::from_int_terms(np, [(q(i, j, k, l), 1), (q(i, k, j, l), -1), (q(i, l, j, k), 1)])
    }

    /// Letters outside `{1, 2, i, j, k, l}`, ascending.
    pub fn free_letters(&self) -> Vec<u8> {
        (3..=self.n as u8).filter(|c| !self.idx.contains(c)).collect()
    }
}

impl fmt::Display for PluckerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.idx;
        write!(f, "p[{i},{j}]*p[{k},{l}] - p[{i},{k}]*p[{j},{l}] + p[{i},{l}]*p[{j},{k}]")
    }
}

/// All quadruples in lexicographic order; `exclude_12` drops those using
/// both 1 and 2.
pub fn plucker_relations(n: usize, exclude_12: bool) -> Result<Vec<PluckerRelation>> {
    if n < 4 {
        return Err(invalid!("Plücker relations need n >= 4, got {n}"));
    }
    let mut out = Vec::new();
    let m = n as u8;
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for l in k + 1..=m {
                    let r = PluckerRelation { n, idx: [i, j, k, l] };
                    if !(exclude_12 && r.involves_p12()) {
                        out.push(r);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A certified lift: `φ*(F) = sign · cofactor · trinomial` with
/// `cofactor = cofactor_num / cofactor_den`, both monomials in the `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedRelation {
    pub f: Polynomial,
    pub source: PluckerRelation,
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
    pub cofactor_num: Monomial,
    pub cofactor_den: Monomial,
    pub sign: i8,
}

fn mono_string(n: usize, m: &Monomial) -> String {
    if m.is_one() {
        return String::from("1");
    }
    let parts: Vec<String> = m
        .support()
        .map(|(v, e)| if e == 1 { plucker_name(n, v) } else { alloc::format!("{}^{e}", plucker_name(n, v)) })
        .collect();
    parts.join("*")
}

impl LiftedRelation {
    /// The three terms as permutation pairs.
    pub fn terms(&self, ring: &SigmaRing) -> Vec<[Permutation; 2]> {
        self.f
            .monomials()
            .map(|m| {
                let p = ring.perms_of(m);
                [p[0].clone(), p[1].clone()]
            })
            .collect()
    }

    pub fn cofactor_string(&self) -> String {
        let n = self.source.n;
        alloc::format!("{}/({})", mono_string(n, &self.cofactor_num), mono_string(n, &self.cofactor_den))
    }

    /// `F  |  source  |  cofactor  |  sign`.
    pub fn line(&self, ring: &SigmaRing) -> String {
        alloc::format!(
            "{}  |  {}  |  {}  |  {}",
            canonical_z_string(&self.f, ring),
            self.source,
            self.cofactor_string(),
            if self.sign > 0 { "+1" } else { "-1" }
        )
    }
}

/// `z[..]*z[..] + …` in ascending variable order.
pub fn canonical_z_string(f: &Polynomial, ring: &SigmaRing) -> String {
    f.to_canonical_string(&|k| ring.name(k), MonomialOrder::DegRevLex)
}

fn word(parts: &[&[u8]]) -> Permutation {
    let mut w = alloc::vec![1u8, 2];
    for p in parts {
        w.extend_from_slice(p);
    }
    Permutation::new(w).expect("lift words are permutations")
}

/// The three permutation pairs of the case formula.
pub fn lift_pattern(rel: &PluckerRelation, alpha: &[u8], beta: &[u8]) -> Result<[[Permutation; 2]; 3]> {
    if rel.involves_p12() {
        return Err(invalid!("relation {rel} involves p[1,2]"));
    }
    let mut used: Vec<u8> = alpha.iter().chain(beta).copied().collect();
    used.sort_unstable();
    if used != rel.free_letters() {
        return Err(invalid!("alpha and beta must partition the free letters {:?}", rel.free_letters()));
    }
    let [i, j, k, l] = rel.idx;
    let a = alpha;
    Ok(match i {
        1 | 2 if !beta.is_empty() => return Err(invalid!("cases i = 1, 2 take a single word")),
        1 => {
            let (jlk, kjl, jkl, klj) = ([j, l, k], [k, j, l], [j, k, l], [k, l, j]);
            [
                [word(&[a, &jlk]), word(&[a, &kjl])],
                [word(&[a, &jkl]), word(&[a, &klj])],
                [word(&[a, &jlk]), word(&[a, &klj])],
            ]
        }
        2 => {
            let (klj, ljk, lkj, jlk) = ([k, l, j], [l, j, k], [l, k, j], [j, l, k]);
            [
                [word(&[&klj, a]), word(&[&ljk, a])],
                [word(&[&lkj, a]), word(&[&jlk, a])],
                [word(&[&klj, a]), word(&[&jlk, a])],
            ]
        }
        _ => {
            let b = beta;
            let (jlki, kjli, jkli, klji) = ([j, l, k, i], [k, j, l, i], [j, k, l, i], [k, l, j, i]);
            [
                [word(&[a, &jlki, b]), word(&[a, &kjli, b])],
                [word(&[a, &jkli, b]), word(&[a, &klji, b])],
                [word(&[a, &jlki, b]), word(&[a, &klji, b])],
            ]
        }
    })
}

/// Checks `φ*(F) = ±m·T` exactly and returns `(sign, m_num, m_den)`.
pub fn certify(f: &Polynomial, rel: &PluckerRelation, ring: &SigmaRing) -> Result<(i8, Monomial, Monomial)> {
    let pb = pullback_z(f, ring, Orientation::Antisymmetric)?;
    let t = rel.trinomial();
    let fail = || Error::InternalInconsistency(alloc::format!("pullback is not a monomial multiple of {rel}"));
    let q = pb.numerator.div_exact(&t, MonomialOrder::DegRevLex).ok_or_else(fail)?;
    if q.len() != 1 {
        return Err(fail());
    }
    let (m, c) = q.terms().next().map(|(m, c)| (m.clone(), c.clone())).ok_or_else(fail)?;
    if c.abs() != BigRational::one() {
        return Err(fail());
    }
    Ok((if c.is_positive() { 1 } else { -1 }, m, pb.denominator))
}

/// Builds `F_{ijkl,α,β}` and certifies it.
pub fn lift_plucker(rel: &PluckerRelation, alpha: &[u8], beta: &[u8]) -> Result<LiftedRelation> {
    let ring = SigmaRing::new(rel.n)?;
    let pattern = lift_pattern(rel, alpha, beta)?;
    let mut f = Polynomial::zero(ring.nvars());
    for pair in &pattern {
        if pair[0] == pair[1] {
            return Err(Error::InternalInconsistency(alloc::format!("repeated factor in the lift of {rel}")));
        }
        f.add_term(ring.monomial(pair)?, BigRational::one());
    }
    if f.len() != 3 {
        return Err(Error::InternalInconsistency(alloc::format!("lift of {rel} does not have three terms")));
    }
    let (sign, cofactor_num, cofactor_den) = certify(&f, rel, &ring)?;
    Ok(LiftedRelation { f, source: *rel, alpha: alpha.to_vec(), beta: beta.to_vec(), cofactor_num, cofactor_den, sign })
}

/// Pairs each z-term of a certified lift with the index (0, 1, 2) of the
/// trinomial term it pulls back to.
pub fn align_terms(l: &LiftedRelation) -> Result<Vec<(Monomial, usize)>> {
    let n = l.source.n;
    let ring = SigmaRing::new(n)?;
    let t = l.source.trinomial();
    let targets: Vec<Monomial> = t.monomials().cloned().collect();
    let order: Vec<Monomial> = {
        let [i, j, k, ll] = l.source.idx;
        let np = n * (n - 1) / 2;
        let q = |a: u8, b: u8, c: u8, d: u8| {
            let mut e = alloc::vec![0u16; np];
            e[plucker_var(n, a, b)] += 1;
            e[plucker_var(n, c, d)] += 1;
            Monomial::from_exponents(&e)
        };
        alloc::vec![q(i, j, k, ll), q(i, k, j, ll), q(i, ll, j, k)]
    };
    debug_assert!(order.iter().all(|m| targets.contains(m)));
    let mut out = Vec::new();
    for m in l.f.monomials() {
        let mut e: Vec<i32> = l.cofactor_den.exponents().iter().zip(l.cofactor_num.exponents()).map(|(a, b)| *a as i32 - *b as i32).collect();
        for (v, k) in m.support() {
            for (r, _) in crate::pt::column(ring.sigma(v), n).iter() {
                e[r] -= k as i32;
            }
        }
        if e.iter().any(|&x| x < 0) {
            return Err(Error::InternalInconsistency(alloc::format!("term of the lift of {} has no trinomial partner", l.source)));
        }
        let em = Monomial::from_exponents(&e.iter().map(|&x| x as u16).collect::<Vec<_>>());
        let k = order.iter().position(|o| *o == em).ok_or_else(|| {
            Error::InternalInconsistency(alloc::format!("term of the lift of {} has no trinomial partner", l.source))
        })?;
        out.push((m.clone(), k));
    }
    Ok(out)
}

/// Two lifts of one relation agree up to a Laurent monomial modulo the
/// toric ideal: for aligned terms `a_k`, `b_k`, every `a_k b_m − a_m b_k`
/// vanishes on the torus.
pub fn lifts_equivalent_mod_torus(a: &LiftedRelation, b: &LiftedRelation) -> Result<bool> {
    if a.source != b.source {
        return Err(invalid!("lifts of different relations {} and {}", a.source, b.source));
    }
    let ring = SigmaRing::new(a.source.n)?;
    let (aa, bb) = (align_terms(a)?, align_terms(b)?);
    let find = |v: &[(Monomial, usize)], k: usize| v.iter().find(|(_, j)| *j == k).map(|(m, _)| m.clone());
    for k in 0..3 {
        for m in k + 1..3 {
            let (Some(ak), Some(am), Some(bk), Some(bm)) = (find(&aa, k), find(&aa, m), find(&bb, k), find(&bb, m)) else {
                return Ok(false);
            };
            let lhs = Polynomial::monomial(ak.mul(&bm), BigRational::one());
            let rhs = Polynomial::monomial(am.mul(&bk), BigRational::one());
            if !crate::pt::vanishes_on_torus(&(&lhs - &rhs), &ring)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Splices `delta` after position `i` of every permutation of every term,
/// provided all terms show the same ordered pairs at that position.
pub fn lift_relation(f: &Polynomial, ring: &SigmaRing, i: usize, delta: &[u8]) -> Result<Polynomial> {
    if f.nvars() != ring.nvars() {
        return Err(invalid!("polynomial in {} variables, ring has {}", f.nvars(), ring.nvars()));
    }
    if delta.is_empty() {
        return Ok(f.clone());
    }
    let n = ring.n();
    check_delta(n, delta)?;
    let sides: Vec<Vec<Permutation>> = f.monomials().map(|m| ring.perms_of(m)).collect();
    let refs: Vec<&[Permutation]> = sides.iter().map(|s| s.as_slice()).collect();
    crate::toric::check_position_hypothesis(&refs, i)?;
    let big = SigmaRing::new(n + delta.len())?;
    let mut out = Polynomial::zero(big.nvars());
    for (side, (_, c)) in sides.iter().zip(f.terms()) {
        let lifted: Vec<Permutation> =
            side.iter().map(|p| Permutation::new(splice(p.word(), i, delta)).expect("splice of a permutation")).collect();
        out.add_term(big.monomial(&lifted)?, c.clone());
    }
    Ok(out)
}

/// How `(α, β)` is chosen per relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// For `i ≥ 3`: α = free letters below `j`, β = the rest, both
    /// ascending. For `i ∈ {1, 2}`: α = all free letters ascending.
    #[default]
    Ascending,
    /// Explicit words per quadruple, falling back to `Ascending`.
    Table(BTreeMap<[u8; 4], (Vec<u8>, Vec<u8>)>),
}

impl ChoicePolicy {
    pub fn choose(&self, rel: &PluckerRelation) -> (Vec<u8>, Vec<u8>) {
        if let ChoicePolicy::Table(t) = self {
            if let Some(c) = t.get(&rel.idx) {
                return c.clone();
            }
        }
        let free = rel.free_letters();
        if rel.idx[0] <= 2 {
            (free, Vec::new())
        } else {
            free.iter().partition(|&&c| c < rel.idx[1])
        }
    }
}

/// The two halves of the open generating set.
#[derive(Clone, Debug)]
pub struct OpenPtGenerators {
    pub n: usize,
    pub binomials: Vec<Binomial>,
    pub lifts: Vec<LiftedRelation>,
}

impl OpenPtGenerators {
    pub fn polynomials(&self) -> Result<Vec<Polynomial>> {
        let ring = SigmaRing::new(self.n)?;
        let mut out = self.binomials.iter().map(|b| b.to_pt_polynomial(&ring)).collect::<Result<Vec<_>>>()?;
        out.extend(self.lifts.iter().map(|l| l.f.clone()));
        Ok(out)
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(SigmaRing::new(self.n)?.nvars(), self.polynomials()?)
    }
}

pub fn open_pt_parts(n: usize, policy: &ChoicePolicy) -> Result<OpenPtGenerators> {
    if n < 5 {
        return Err(invalid!("open generators are built for n >= 5, got {n}"));
    }
    let binomials = kernel_binomials(n)?;
    let lifts = plucker_relations(n, true)?
        .iter()
        .map(|r| {
            let (a, b) = policy.choose(r);
            lift_plucker(r, &a, &b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OpenPtGenerators { n, binomials, lifts })
}

pub fn open_pt_generators(n: usize, policy: &ChoicePolicy) -> Result<Ideal> {
    open_pt_parts(n, policy)?.ideal()
}

/// `⟨open generators⟩ : (∏ z_σ)^∞`. The quadrics vanishing on `PT°_n`
/// already lie in the saturation; adding them up front shortens it a lot.
pub fn closed_pt_ideal(n: usize, budget: &Budget) -> Result<Ideal> {
    let open = open_pt_generators(n, &ChoicePolicy::default())?;
    let ring = SigmaRing::new(n)?;
    let mut gens = open.generators().to_vec();
    gens.extend(crate::pt::vanishing_forms(&ring, 2)?);
    let seeded = Ideal::new(open.nvars(), gens)?;
    let vars: Vec<usize> = (0..open.nvars()).collect();
    saturate_by_product(&seeded, &vars, budget)
}

/// One audited `(α, β)` choice.
#[derive(Clone, Debug)]
pub struct AuditEntry {
    pub source: PluckerRelation,
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
    pub certified: bool,
}

/// Certifies up to `per_relation` choices of `(α, β)` for every relation.
pub fn audit_lifts(n: usize, per_relation: usize) -> Result<Vec<AuditEntry>> {
    let mut out = Vec::new();
    for rel in plucker_relations(n, true)? {
        let free = rel.free_letters();
        let mut choices: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for w in crate::perm::all_words(&free) {
            if rel.idx[0] <= 2 {
                choices.push((w, Vec::new()));
            } else {
                for cut in 0..=w.len() {
                    choices.push((w[..cut].to_vec(), w[cut..].to_vec()));
                }
            }
            if choices.len() >= per_relation {
                break;
            }
        }
        choices.truncate(per_relation);
        for (a, b) in choices {
            let certified = match lift_plucker(&rel, &a, &b) {
                Ok(_) => true,
                Err(Error::InternalInconsistency(_)) => false,
                Err(e) => return Err(e),
            };
            out.push(AuditEntry { source: rel, alpha: a, beta: b, certified });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pt::vanishes_on_pt;

    #[test]
    fn relation_counts() {
        assert_eq!(plucker_relations(4, false).unwrap().len(), 1);
        assert_eq!(plucker_relations(5, true).unwrap().len(), 2);
        assert_eq!(plucker_relations(6, true).unwrap().len(), 9);
    }

    #[test]
    fn n5_lifts_match() {
        let ring = SigmaRing::new(5).unwrap();
        let f2 = lift_plucker(&PluckerRelation::new(5, [1, 3, 4, 5]).unwrap(), &[], &[]).unwrap();
        assert_eq!(f2.f, ring.parse("z12354*z12435 + z12345*z12453 + z12354*z12453").unwrap());
        let f3 = lift_plucker(&PluckerRelation::new(5, [2, 3, 4, 5]).unwrap(), &[], &[]).unwrap();
        assert_eq!(f3.f, ring.parse("z12354*z12453 + z12453*z12534 + z12354*z12543").unwrap());
        assert!(vanishes_on_pt(&f2.f, &ring).unwrap());
    }

    #[test]
    fn n6_lift_for_3456() {
        let ring = SigmaRing::new(6).unwrap();
        let l = lift_plucker(&PluckerRelation::new(6, [3, 4, 5, 6]).unwrap(), &[], &[]).unwrap();
        assert_eq!(l.f, ring.parse("z124653*z125463 + z124563*z125643 + z124653*z125643").unwrap());
        assert!(l.line(&ring).contains(" | "));
    }

    #[test]
    fn lift_relation_matches_binomial_lift() {
        let ring = SigmaRing::new(5).unwrap();
        let c = ring.parse("z12345*z12453*z12534 - z12354*z12435*z12543").unwrap();
        let lifted = lift_relation(&c, &ring, 2, &[6]).unwrap();
        let big = SigmaRing::new(6).unwrap();
        assert_eq!(lifted, big.parse("z126345*z126453*z126534 - z126354*z126435*z126543").unwrap());
        assert_eq!(lift_relation(&c, &ring, 2, &[]).unwrap(), c);
        assert!(matches!(lift_relation(&c, &ring, 4, &[6]), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn bad_words_rejected() {
        let r = PluckerRelation::new(6, [1, 3, 4, 5]).unwrap();
        assert!(lift_plucker(&r, &[], &[]).is_err());
        assert!(lift_plucker(&r, &[], &[6]).is_err());
        assert!(lift_plucker(&PluckerRelation::new(6, [1, 2, 3, 4]).unwrap(), &[5, 6], &[]).is_err());
    }

    #[test]
    fn alternative_lifts_agree_mod_torus() {
        let r = PluckerRelation::new(6, [2, 3, 4, 5]).unwrap();
        let a = lift_plucker(&r, &[6], &[]).unwrap();
        assert_eq!(align_terms(&a).unwrap().len(), 3);
        let r7 = PluckerRelation::new(7, [3, 4, 5, 7]).unwrap();
        let x = lift_plucker(&r7, &[6], &[]).unwrap();
        let y = lift_plucker(&r7, &[], &[6]).unwrap();
        assert!(lifts_equivalent_mod_torus(&x, &y).unwrap());
    }
}
