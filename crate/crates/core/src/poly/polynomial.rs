use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder};
use crate::error::{invalid, Result};

/// Sparse polynomial with exact rational coefficients over `nvars`
/// variables. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Polynomial::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Polynomial::monomial(Monomial::var(nvars, v), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(nvars: usize, terms: I) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn from_int_terms<I: IntoIterator<Item = (Monomial, i64)>>(nvars: usize, terms: I) -> Self {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(m, c)| (m, BigRational::from_integer(c.into()))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.nvars(), self.nvars, "monomial from a different ring");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Maximum total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted decreasingly in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, t: &Monomial) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.mul(t), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer multiple with coprime integer coefficients, leading term
    /// (in `order`) positive. Zero stays zero.
    pub fn primitive(&self, order: MonomialOrder) -> Polynomial {
        let Some((_, lc)) = self.leading(order) else { return self.clone() };
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &l / c.denom())));
        let mut f = BigRational::new(l, g);
        if lc.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Integer coefficients, assuming they are integral.
    pub fn integer_terms(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms.iter().map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer()))).collect()
    }

    /// Replaces `x_v` by `images[v]`; all images live in one target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(invalid!("{} images for {} variables", images.len(), self.nvars));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(invalid!("substitution images live in different rings"));
        }
        let mut cache: BTreeMap<(usize, u16), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, e) in m.support() {
                let p = cache.entry((v, e)).or_insert_with(|| images[v].pow(e as u32));
                t = &t * &*p;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(invalid!("point of length {} for {} variables", point.len(), self.nvars));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                t *= num_traits::pow(point[v].clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Same polynomial in a ring with `extra` variables appended.
    pub fn extend(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Variables re-indexed by `map[old] = new` into a ring of `nvars`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().map(|(m, c)| (m.remap(map, nvars), c.clone())))
    }

    /// Multivariate division by a single divisor: `self = q·g + r`, no term
    /// of `r` divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Polynomial, order: MonomialOrder) -> (Polynomial, Polynomial) {
        let (lm, lc) = g.leading(order).expect("division by zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut q = Polynomial::zero(self.nvars);
        let mut r = Polynomial::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let t = lm.quotient_of(&m);
                let f = c / &lc;
                p = &p - &g.mul_monomial(&t).scale(&f);
                q.add_term(t, f);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        (q, r)
    }

    /// `Some(self / g)` when the division is exact.
    pub fn div_exact(&self, g: &Polynomial, order: MonomialOrder) -> Option<Polynomial> {
        let (q, r) = self.div_rem(g, order);
        r.is_zero().then_some(q)
    }

    /// Canonical text: terms in decreasing `order`, each `num/den*var^e*…`,
    /// joined by `" + "`.
    /// Parses sums of terms `c*v^e*…` where `c` is an integer or `a/b` and
    /// `resolve` maps a variable name to its index.
    pub fn parse_with(s: &str, nvars: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Polynomial> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(Polynomial::zero(nvars));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let (mut start, mut neg, mut depth) = (0, false, 0i32);
        for (i, b) in cleaned.bytes().enumerate() {
            match b {
                b'[' | b'(' => depth += 1,
                b']' | b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && !(i > 0 && cleaned.as_bytes()[i - 1] == b'^') => {
                    if i > start {
                        terms.push((neg, &cleaned[start..i]));
                    } else if i > 0 {
                        return Err(invalid!("empty term in {s:?}"));
                    }
                    neg = b == b'-';
                    start = i + 1;
                }
                _ => {}
            }
        }
        terms.push((neg, &cleaned[start..]));
        let mut out = Polynomial::zero(nvars);
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(invalid!("empty term in {s:?}"));
            }
            let mut c = BigRational::one();
            let mut e = alloc::vec![0u16; nvars];
            for f in t.split('*') {
                let (base, pow) = match f.rsplit_once('^') {
                    Some((b, p)) => (b, p.parse::<u16>().map_err(|_| invalid!("bad exponent in {f:?}"))?),
                    None => (f, 1),
                };
                if let Some(v) = resolve(base) {
                    if v >= nvars {
                        return Err(invalid!("variable {base} out of range"));
                    }
                    e[v] += pow;
                } else {
                    let q: BigRational = match base.split_once('/') {
                        Some((a, b)) => {
                            let (a, b): (BigInt, BigInt) = (
                                a.parse().map_err(|_| invalid!("bad factor {f:?}"))?,
                                b.parse().map_err(|_| invalid!("bad factor {f:?}"))?,
                            );
                            if b.is_zero() {
                                return Err(invalid!("zero denominator in {f:?}"));
                            }
                            BigRational::new(a, b)
                        }
                        None => BigRational::from_integer(base.parse().map_err(|_| invalid!("unknown factor {f:?}"))?),
                    };
                    c *= num_traits::pow(q, pow as usize);
                }
            }
            if neg {
                c = -c;
            }
            out.add_term(Monomial::from_exponents(&e), c);
        }
        Ok(out)
    }

    /// Terms in descending `order`, e.g. `z[a]*z[b] - 2*z[c]^2 + 1/3*z[d]`.
    pub fn to_canonical_string(&self, names: &dyn Fn(usize) -> String, order: MonomialOrder) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || m.is_one() {
                if a.is_integer() {
                    let _ = write!(s, "{}", a.numer());
                } else {
                    let _ = write!(s, "{}/{}", a.numer(), a.denom());
                }
                first = false;
            }
            for (v, e) in m.support() {
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(&names(v));
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}

impl core::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_canonical_string(&|v| alloc::format!("x{v}"), MonomialOrder::DegRevLex))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "product across rings");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, o: Polynomial) -> Polynomial {
        &self + &o
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, o: Polynomial) -> Polynomial {
        &self - &o
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, o: Polynomial) -> Polynomial {
        &self * &o
    }
}
