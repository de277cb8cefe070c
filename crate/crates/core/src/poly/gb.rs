//! Buchberger's algorithm with the Gebauer–Möller criteria, generic over
//! the coefficient domain.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Polynomial};
use crate::arith::Fp;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Coefficient domain for the engine. Integers are handled fraction-free.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_bigint(v: &BigInt) -> Self;
    fn to_rational(&self) -> BigRational;
    fn mul(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// `(p, q)` with `p·a = q·b`, `p` as small as the domain allows.
    fn cancel(a: &Self, b: &Self) -> (Self, Self);
    fn is_unit_multiplier(p: &Self) -> bool;
    /// Canonical associate of a polynomial with these coefficients (leading
    /// coefficient first).
    fn normalize(coeffs: &mut [&mut Self]);
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn cancel(a: &Self, b: &Self) -> (Self, Self) {
        let g = a.gcd(b);
        let (mut p, mut q) = (b / &g, a / &g);
        if p.is_negative() {
            p = -p;
            q = -q;
        }
        (p, q)
    }
    fn is_unit_multiplier(p: &Self) -> bool {
        p.is_one()
    }
    fn normalize(coeffs: &mut [&mut Self]) {
        let mut g: BigInt = Zero::zero();
        for c in coeffs.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if Zero::is_zero(&g) {
            return;
        }
        if coeffs[0].is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in coeffs.iter_mut() {
                **c = &**c / &g;
            }
        }
    }
}

impl Coefficient for Fp {
    fn zero() -> Self {
        Fp::ZERO
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn from_bigint(v: &BigInt) -> Self {
        Fp::from_bigint(v)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.to_i128()))
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn cancel(a: &Self, b: &Self) -> (Self, Self) {
        (Fp::ONE, *a * b.inv())
    }
    fn is_unit_multiplier(_: &Self) -> bool {
        true
    }
    fn normalize(coeffs: &mut [&mut Self]) {
        if let Some(first) = coeffs.first() {
            let inv = first.inv();
            for c in coeffs.iter_mut() {
                **c = **c * inv;
            }
        }
    }
}

/// Exact field arithmetic; `normalize` keeps the scale so normal forms
/// stay linear.
impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn cancel(a: &Self, b: &Self) -> (Self, Self) {
        (BigRational::one(), a / b)
    }
    fn is_unit_multiplier(_: &Self) -> bool {
        true
    }
    fn normalize(_: &mut [&mut Self]) {}
}

/// Polynomial with terms sorted decreasingly in the engine's order.
#[derive(Clone, Debug)]
pub(crate) struct GPoly<C> {
    pub terms: Vec<(Monomial, C)>,
    pub sugar: u32,
}

impl<C: Coefficient> GPoly<C> {
    fn new(mut terms: Vec<(Monomial, C)>, order: MonomialOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        terms.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = a.1.add(&b.1);
                true
            } else {
                false
            }
        });
        terms.retain(|t| !t.1.is_zero());
        let sugar = terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        GPoly { terms, sugar }
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &C {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self) {
        let mut cs: Vec<&mut C> = self.terms.iter_mut().map(|t| &mut t.1).collect();
        if !cs.is_empty() {
            C::normalize(&mut cs);
        }
    }

    fn is_homogeneous(&self) -> bool {
        self.terms.iter().all(|t| t.0.degree() == self.terms[0].0.degree())
    }
}

/// `p·f[skip_f..] − q·t·g[skip_g..]`, merged in `order`.
fn sub_mul<C: Coefficient>(
    f: &[(Monomial, C)],
    p: &C,
    t_f: Option<&Monomial>,
    g: &[(Monomial, C)],
    q: &C,
    t_g: &Monomial,
    order: MonomialOrder,
) -> Vec<(Monomial, C)> {
    let unit_p = C::is_unit_multiplier(p);
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let fm = |k: usize| -> Monomial {
        match t_f {
            Some(t) => f[k].0.mul(t),
            None => f[k].0.clone(),
        }
    };
    let mut next_f = if i < f.len() { Some(fm(0)) } else { None };
    let mut next_g = if j < g.len() { Some(g[0].0.mul(t_g)) } else { None };
    loop {
        match (&next_f, &next_g) {
            (None, None) => break,
            (Some(a), Some(b)) if order.cmp(a, b) == Ordering::Equal => {
                let c = if unit_p { f[i].1.clone() } else { f[i].1.mul(p) }.sub(&g[j].1.mul(q));
                if !c.is_zero() {
                    out.push((next_f.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                next_f = (i < f.len()).then(|| fm(i));
                next_g = (j < g.len()).then(|| g[j].0.mul(t_g));
            }
            (Some(a), b) if b.as_ref().map_or(true, |b| order.cmp(a, b) == Ordering::Greater) => {
                let c = if unit_p { f[i].1.clone() } else { f[i].1.mul(p) };
                out.push((next_f.take().unwrap(), c));
                i += 1;
                next_f = (i < f.len()).then(|| fm(i));
            }
            _ => {
                let c = C::zero().sub(&g[j].1.mul(q));
                out.push((next_g.take().unwrap(), c));
                j += 1;
                next_g = (j < g.len()).then(|| g[j].0.mul(t_g));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    sugar: u32,
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl Ord for Pair {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.sugar, self.lcm.degree(), self.j, self.i).cmp(&(o.sugar, o.lcm.degree(), o.j, o.i))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Mutable Buchberger state.
pub(crate) struct Engine<'b, C> {
    order: MonomialOrder,
    polys: Vec<GPoly<C>>,
    active: Vec<usize>,
    pairs: BTreeSet<Pair>,
    pending: Vec<GPoly<C>>,
    /// Homogeneous input: inputs are admitted degree by degree after the
    /// S-pairs of the same degree, and the count of inputs surviving
    /// reduction is recorded per degree.
    graded: bool,
    max_degree: Option<u32>,
    budget: &'b Budget,
    pub new_generators: BTreeMap<u32, usize>,
    pairs_done: usize,
}

impl<'b, C: Coefficient> Engine<'b, C> {
    pub fn new(order: MonomialOrder, inputs: Vec<Vec<(Monomial, C)>>, budget: &'b Budget) -> Self {
        let mut pending: Vec<GPoly<C>> =
            inputs.into_iter().map(|t| GPoly::new(t, order)).filter(|p| !p.is_zero()).collect();
        let graded = pending.iter().all(|p| p.is_homogeneous());
        // stable: degree first, then input order
        pending.sort_by_key(|p| p.sugar);
        pending.reverse();
        Engine {
            order,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: BTreeSet::new(),
            pending,
            graded,
            max_degree: None,
            budget,
            new_generators: BTreeMap::new(),
            pairs_done: 0,
        }
    }

    /// Stop after every element of degree `≤ d` is accounted for.
    pub fn truncate(&mut self, d: u32) {
        debug_assert!(self.graded);
        self.max_degree = Some(d);
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        self.active.iter().copied().find(|&k| self.polys[k].lm().divides(m))
    }

    /// Reduce until the leading monomial is irreducible (or zero).
    fn reduce_top(&self, mut f: GPoly<C>) -> GPoly<C> {
        let mut steps = 0usize;
        while !f.is_zero() {
            let Some(k) = self.find_reducer(f.lm()) else { break };
            let g = &self.polys[k];
            let t = g.lm().quotient_of(f.lm());
            let (p, q) = C::cancel(f.lc(), g.lc());
            f.sugar = f.sugar.max(g.sugar + t.degree());
            f.terms = sub_mul(&f.terms[1..], &p, None, &g.terms[1..], &q, &t, self.order);
            steps += 1;
            if steps % 8 == 0 {
                f.normalize();
            }
        }
        f.normalize();
        f
    }

    /// Full normal form against the elements listed in `basis`.
    fn normal_form(&self, f: GPoly<C>, basis: &[usize]) -> GPoly<C> {
        let mut rest = f;
        let mut done: Vec<(Monomial, C)> = Vec::new();
        let mut steps = 0usize;
        while !rest.is_zero() {
            let m = rest.lm().clone();
            match basis.iter().copied().find(|&k| self.polys[k].lm().divides(&m)) {
                Some(k) => {
                    let g = &self.polys[k];
                    let t = g.lm().quotient_of(&m);
                    let (p, q) = C::cancel(rest.lc(), g.lc());
                    if !C::is_unit_multiplier(&p) {
                        for d in done.iter_mut() {
                            d.1 = d.1.mul(&p);
                        }
                    }
                    rest.terms = sub_mul(&rest.terms[1..], &p, None, &g.terms[1..], &q, &t, self.order);
                    steps += 1;
                    if steps % 8 == 0 {
                        let mut all = GPoly { terms: core::mem::take(&mut done), sugar: 0 };
                        let split = all.terms.len();
                        all.terms.append(&mut rest.terms);
                        all.normalize();
                        rest.terms = all.terms.split_off(split);
                        done = all.terms;
                    }
                }
                None => {
                    let t = rest.terms.remove(0);
                    done.push(t);
                }
            }
        }
        let mut out = GPoly { terms: done, sugar: rest.sugar };
        out.normalize();
        out
    }

    fn spoly(&self, pr: &Pair) -> GPoly<C> {
        let (f, g) = (&self.polys[pr.i], &self.polys[pr.j]);
        let tf = f.lm().quotient_of(&pr.lcm);
        let tg = g.lm().quotient_of(&pr.lcm);
        let (p, q) = C::cancel(f.lc(), g.lc());
        let terms = sub_mul(&f.terms[1..], &p, Some(&tf), &g.terms[1..], &q, &tg, self.order);
        GPoly { terms, sugar: pr.sugar }
    }

    fn add(&mut self, h: GPoly<C>) -> Result<()> {
        let t = self.polys.len();
        let hlm = h.lm().clone();
        let hs = h.sugar;
        self.polys.push(h);

        // Gebauer–Möller: new pairs
        let mut cand: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let glm = self.polys[g].lm();
                (g, glm.lcm(&hlm), glm.coprime(&hlm))
            })
            .collect();
        cand.sort_by_key(|c| c.1.degree());
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cand.len() {
            let (g, ref l, cop) = cand[idx];
            let dominated = !cop
                && (cand[idx + 1..].iter().any(|c| c.1.divides(l)) || kept.iter().any(|c| c.1.divides(l)));
            if !dominated {
                kept.push((g, l.clone(), cop));
            }
        }
        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|pr| {
            !(hlm.divides(&pr.lcm)
                && polys[pr.i].lm().lcm(&hlm) != pr.lcm
                && polys[pr.j].lm().lcm(&hlm) != pr.lcm)
        });
        for (g, l, cop) in kept {
            if cop {
                continue;
            }
            let gp = &self.polys[g];
            let sugar = (gp.sugar + l.degree() - gp.lm().degree()).max(hs + l.degree() - hlm.degree());
            if self.max_degree.map_or(false, |d| l.degree() > d) {
                continue;
            }
            self.pairs.insert(Pair { sugar, i: g, j: t, lcm: l });
        }
        let polys = &self.polys;
        self.active.retain(|&g| !hlm.divides(polys[g].lm()));
        self.active.push(t);
        if self.active.len() > self.budget.max_basis {
            return Err(Error::BudgetExceeded(alloc::format!(
                "Gröbner basis grew past {} elements",
                self.budget.max_basis
            )));
        }
        Ok(())
    }

    pub fn run(&mut self) -> Result<()> {
        let mut iter = 0usize;
        loop {
            iter += 1;
            if iter % 64 == 0 && self.budget.should_stop() {
                return Err(Error::BudgetExceeded("stopped by caller".into()));
            }
            let dp = self.pairs.first().map(|p| p.sugar);
            let di = self.pending.last().map(|p| p.sugar);
            let take_input = match (dp, di) {
                (None, None) => break,
                (None, Some(_)) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => !self.graded || b < a,
            };
            if take_input {
                let f = self.pending.pop().unwrap();
                let deg = f.sugar;
                let h = self.reduce_top(f);
                if !h.is_zero() {
                    *self.new_generators.entry(deg).or_insert(0) += 1;
                    self.add(h)?;
                }
            } else {
                let pr = self.pairs.pop_first().unwrap();
                self.pairs_done += 1;
                if self.pairs_done > self.budget.max_pairs {
                    return Err(Error::BudgetExceeded(alloc::format!(
                        "more than {} S-pairs",
                        self.budget.max_pairs
                    )));
                }
                let s = self.spoly(&pr);
                let h = self.reduce_top(s);
                if !h.is_zero() {
                    self.add(h)?;
                }
            }
        }
        Ok(())
    }

    /// Reduced basis: minimal leading monomials, tails fully reduced,
    /// sorted by increasing leading monomial.
    pub fn reduced_basis(&self) -> Vec<GPoly<C>> {
        let mut idx: Vec<usize> = self.active.clone();
        idx.sort_by(|&a, &b| self.order.cmp(self.polys[a].lm(), self.polys[b].lm()));
        let mut out = Vec::with_capacity(idx.len());
        for (k, &i) in idx.iter().enumerate() {
            let others: Vec<usize> = idx.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &j)| j).collect();
            let f = &self.polys[i];
            let head = GPoly { terms: alloc::vec![f.terms[0].clone()], sugar: f.sugar };
            let tail = GPoly { terms: f.terms[1..].to_vec(), sugar: f.sugar };
            let r = self.normal_form_keep_scale(head, tail, &others);
            out.push(r);
        }
        out
    }

    // head + NF(tail), keeping head and tail on a common scale
    fn normal_form_keep_scale(&self, head: GPoly<C>, tail: GPoly<C>, basis: &[usize]) -> GPoly<C> {
        let mut rest = tail;
        let mut done: Vec<(Monomial, C)> = head.terms;
        while !rest.is_zero() {
            let m = rest.lm().clone();
            match basis.iter().copied().find(|&k| self.polys[k].lm().divides(&m)) {
                Some(k) => {
                    let g = &self.polys[k];
                    let t = g.lm().quotient_of(&m);
                    let (p, q) = C::cancel(rest.lc(), g.lc());
                    if !C::is_unit_multiplier(&p) {
                        for d in done.iter_mut() {
                            d.1 = d.1.mul(&p);
                        }
                    }
                    rest.terms = sub_mul(&rest.terms[1..], &p, None, &g.terms[1..], &q, &t, self.order);
                }
                None => {
                    let t = rest.terms.remove(0);
                    done.push(t);
                }
            }
        }
        let mut out = GPoly { terms: done, sugar: rest.sugar };
        out.normalize();
        out
    }

    /// Installs elements assumed to form a Gröbner basis already.
    pub fn load_basis<I: IntoIterator<Item = Vec<(Monomial, C)>>>(&mut self, basis: I) {
        for g in basis {
            let gp = GPoly::new(g, self.order);
            if !gp.is_zero() {
                self.active.push(self.polys.len());
                self.polys.push(gp);
            }
        }
    }

    /// Normal form against the current basis.
    pub fn reduce(&self, f: Vec<(Monomial, C)>) -> GPoly<C> {
        let basis = self.active.clone();
        self.normal_form(GPoly::new(f, self.order), &basis)
    }
}

pub(crate) fn to_integer_terms(f: &Polynomial) -> Vec<(Monomial, BigInt)> {
    let l = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    f.terms().map(|(m, c)| (m.clone(), c.numer() * (&l / c.denom()))).collect()
}

pub(crate) fn from_gpoly<C: Coefficient>(nvars: usize, g: &GPoly<C>) -> Polynomial {
    Polynomial::from_terms(nvars, g.terms.iter().map(|(m, c)| (m.clone(), c.to_rational())))
}

/// Pure difference binomials `x^a − x^b` (or a single monomial): their
/// Gröbner bases keep that shape, so a prime-field run is exact.
pub(crate) fn is_pure_binomial_input(gens: &[Polynomial]) -> bool {
    gens.iter().all(|f| {
        let cs: Vec<&BigRational> = f.terms().map(|t| t.1).collect();
        match cs.len() {
            0 => true,
            1 => cs[0].is_one(),
            2 => cs[0].is_integer() && cs[1].is_integer() && Zero::is_zero(&(cs[0] + cs[1])) && cs[0].abs().is_one(),
            _ => false,
        }
    })
}

fn lifts_to_unit_binomials(basis: &[GPoly<Fp>]) -> bool {
    basis.iter().all(|g| match g.terms.len() {
        1 => g.terms[0].1 == Fp::ONE,
        2 => g.terms[0].1 == Fp::ONE && g.terms[1].1 == -Fp::ONE,
        _ => false,
    })
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
pub fn groebner(gens: &[Polynomial], order: MonomialOrder, budget: &Budget) -> Result<Vec<Polynomial>> {
    let Some(nvars) = gens.first().map(|g| g.nvars()) else { return Ok(Vec::new()) };
    if is_pure_binomial_input(gens) {
        let inputs = gens
            .iter()
            .map(|f| to_integer_terms(f).into_iter().map(|(m, c)| (m, Fp::from_bigint(&c))).collect())
            .collect();
        let mut e: Engine<Fp> = Engine::new(order, inputs, budget);
        e.run()?;
        let basis = e.reduced_basis();
        if lifts_to_unit_binomials(&basis) {
            return Ok(basis.iter().map(|g| from_gpoly(nvars, g)).collect());
        }
    }
    let inputs = gens.iter().map(to_integer_terms).collect();
    let mut e: Engine<BigInt> = Engine::new(order, inputs, budget);
    e.run()?;
    Ok(e.reduced_basis().iter().map(|g| from_gpoly(nvars, g).monic(order)).collect())
}

/// Normal form of `f` modulo a Gröbner basis `gb`; zero iff `f` lies in
/// the ideal. Linear in `f`.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let nvars = f.nvars();
    let budget = Budget::unlimited();
    let mut e: Engine<BigRational> = Engine::new(order, Vec::new(), &budget);
    e.load_basis(gb.iter().map(|g| g.terms().map(|(m, c)| (m.clone(), c.clone())).collect()));
    let r = e.reduce(f.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
    from_gpoly(nvars, &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, v: usize) -> Polynomial {
        Polynomial::var(n, v)
    }

    #[test]
    fn lex_textbook() {
        // {x² − y, y} → {y, x²}
        let f = &x(2, 0).pow(2) - &x(2, 1);
        let g = x(2, 1);
        let gb = groebner(&[f, g], MonomialOrder::Lex, &Budget::default()).unwrap();
        assert_eq!(gb, alloc::vec![x(2, 1), x(2, 0).pow(2)]);
    }

    #[test]
    fn single_polynomial_is_monic() {
        let f = Polynomial::from_int_terms(2, [(Monomial::from_exponents(&[1, 1]), 3), (Monomial::from_exponents(&[0, 2]), 6)]);
        let gb = groebner(&[f.clone()], MonomialOrder::DegRevLex, &Budget::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], f.monic(MonomialOrder::DegRevLex));
    }

    #[test]
    fn twisted_cubic() {
        // 2×2 minors of [[a,b,c],[b,c,d]]
        let v = |i| x(4, i);
        let gens = [&(&v(0) * &v(2)) - &v(1).pow(2), &(&v(1) * &v(3)) - &v(2).pow(2), &(&v(0) * &v(3)) - &(&v(1) * &v(2))];
        let gb = groebner(&gens, MonomialOrder::DegRevLex, &Budget::default()).unwrap();
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(normal_form(g, &gb, MonomialOrder::DegRevLex).is_zero());
        }
        let lex = groebner(&gens, MonomialOrder::Lex, &Budget::default()).unwrap();
        assert!(lex.len() >= 3);
        assert!(normal_form(&(&v(0) * &v(1)), &lex, MonomialOrder::Lex) != Polynomial::zero(4));
    }

    #[test]
    fn rational_and_modular_agree_on_binomials() {
        let v = |i| x(4, i);
        let gens = [&(&v(0) * &v(3)) - &(&v(1) * &v(2)), &v(0).pow(2) - &v(3).pow(2)];
        let order = MonomialOrder::DegRevLex;
        let a = groebner(&gens, order, &Budget::default()).unwrap();
        let inputs = gens.iter().map(to_integer_terms).collect();
        let budget = Budget::default();
        let mut e: Engine<BigInt> = Engine::new(order, inputs, &budget);
        e.run().unwrap();
        let b: Vec<Polynomial> = e.reduced_basis().iter().map(|g| from_gpoly(4, g).monic(order)).collect();
        assert_eq!(a, b);
    }
}
