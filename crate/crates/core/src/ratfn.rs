//! Rational functions whose denominators are kept as products of
//! irreducible-looking factors (in practice linear forms and variables).
//! Sums use the factorwise common denominator, so no polynomial gcd is ever
//! needed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Polynomial};

const NORM: MonomialOrder = MonomialOrder::Lex;

/// `num / ∏ f^e` over the `den` map. Denominator factors are primitive
/// with positive leading coefficient; the numerator absorbs all constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: BTreeMap<Polynomial, u32>,
}

impl RationalFunction {
    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: BTreeMap::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// `1/f`. A zero `f` is a degenerate configuration.
    pub fn reciprocal_of(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::DegenerateConfiguration("division by zero".into()));
        }
        let n = f.nvars();
        if f.is_constant() {
            let c = f.coeff(&crate::poly::Monomial::one(n));
            return Ok(Self::from_polynomial(Polynomial::constant(n, c.recip())));
        }
        let p = f.primitive(NORM);
        // f = c·p
        let (m, c) = f.leading(NORM).unwrap();
        let c = c / p.coeff(m);
        let mut den = BTreeMap::new();
        den.insert(p, 1);
        Ok(RationalFunction { num: Polynomial::constant(n, c.recip()), den })
    }

    /// `a / b` for polynomial `b` that is a product of the factors the caller
    /// intends; `b` itself becomes one factor.
    pub fn quotient(a: &Polynomial, b: &Polynomial) -> Result<Self> {
        let mut r = Self::reciprocal_of(b)?;
        r.num = &r.num * a;
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        RationalFunction { num: &self.num * &o.num, den }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn expand_den(den: &BTreeMap<Polynomial, u32>, nvars: usize) -> Polynomial {
        let mut acc = Polynomial::one(nvars);
        for (f, e) in den {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    pub fn denominator(&self) -> Polynomial {
        Self::expand_den(&self.den, self.nvars())
    }

    /// Sum over a common denominator (factorwise maximum).
    pub fn sum<'a, I: IntoIterator<Item = &'a RationalFunction>>(nvars: usize, items: I) -> Self {
        let items: Vec<&RationalFunction> = items.into_iter().filter(|r| !r.is_zero()).collect();
        let mut den: BTreeMap<Polynomial, u32> = BTreeMap::new();
        for r in &items {
            for (f, e) in &r.den {
                let x = den.entry(f.clone()).or_insert(0);
                *x = (*x).max(*e);
            }
        }
        let mut num = Polynomial::zero(nvars);
        for r in &items {
            let mut missing = BTreeMap::new();
            for (f, e) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    missing.insert(f.clone(), e - have);
                }
            }
            num = &num + &(&r.num * &Self::expand_den(&missing, nvars));
        }
        RationalFunction { num, den }.trim()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::sum(self.nvars(), [self, o])
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    fn trim(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        if num.is_zero() {
            return RationalFunction { num, den };
        }
        for (f, e) in &self.den {
            let mut left = *e;
            while left > 0 {
                match num.div_exact(f, MonomialOrder::DegRevLex) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(f.clone(), left);
            }
        }
        RationalFunction { num, den }
    }

    /// Exact equality of the underlying functions.
    pub fn equals(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    /// `Some(c)` when `self = c·o` for a nonzero constant `c`.
    pub fn constant_ratio(&self, o: &Self) -> Option<BigRational> {
        if o.is_zero() || self.is_zero() {
            return None;
        }
        let r = self.mul(&o.invert().ok()?).reduce();
        (r.den.is_empty() && r.num.is_constant()).then(|| r.num.coeff(&crate::poly::Monomial::one(self.nvars())))
    }

    /// `1/self`; the numerator becomes a single denominator factor.
    pub fn invert(&self) -> Result<Self> {
        let mut r = Self::reciprocal_of(&self.num)?;
        r.num = &r.num * &self.denominator();
        Ok(r)
    }

    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        let num = self.num.substitute(images)?;
        let mut out = Self::from_polynomial(num);
        for (f, e) in &self.den {
            out = out.mul(&Self::reciprocal_of(&f.substitute(images)?)?.pow(*e));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Polynomial {
        Polynomial::var(3, v)
    }

    #[test]
    fn partial_fractions_cancel() {
        // 1/(x0−x1) + 1/(x1−x0) = 0
        let a = RationalFunction::reciprocal_of(&(&x(0) - &x(1))).unwrap();
        let b = RationalFunction::reciprocal_of(&(&x(1) - &x(0))).unwrap();
        assert!(a.add(&b).is_zero());
        assert_eq!(a.den, b.den);
    }

    #[test]
    fn telescoping_pair() {
        // 1/(x0(x0−x1)) − 1/(x1(x0−x1)) = −1/(x0 x1)
        let d = &x(0) - &x(1);
        let a = RationalFunction::reciprocal_of(&x(0)).unwrap().mul(&RationalFunction::reciprocal_of(&d).unwrap());
        let b = RationalFunction::reciprocal_of(&x(1)).unwrap().mul(&RationalFunction::reciprocal_of(&d).unwrap());
        let s = a.sub(&b).reduce();
        let t = RationalFunction::reciprocal_of(&(&x(0) * &x(1))).unwrap();
        assert!(s.equals(&t.scale(&-BigRational::one())));
        assert!(s.den.len() == 2);
    }

    #[test]
    fn ratios() {
        let a = RationalFunction::quotient(&x(0), &(&x(1) + &x(2))).unwrap();
        let b = a.scale(&BigRational::from_integer(3.into()));
        assert_eq!(b.constant_ratio(&a), Some(BigRational::from_integer(3.into())));
        assert_eq!(a.constant_ratio(&RationalFunction::from_polynomial(x(0))), None);
    }
}
