use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::gb::{from_gpoly, is_pure_binomial_input, to_integer_terms, Engine};
use super::hilbert::{dim_degree_from_numerator, hilbert_numerator, DimDegree};
use super::{groebner, normal_form, Monomial, MonomialOrder, Polynomial};
use crate::arith::Fp;
use crate::budget::{monomial_space, Budget};
use crate::error::{invalid, Error, Result};

/// Ideal given by primitive integral generators, with a cached reduced
/// Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
    gb: Option<(MonomialOrder, Vec<Polynomial>)>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(invalid!("generator in {} variables, ideal in {nvars}", g.nvars()));
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.primitive(MonomialOrder::DegRevLex)).collect();
        Ok(Ideal { nvars, gens, gb: None })
    }

    /// Ideal whose generators are already a reduced basis for `order`.
    pub fn from_groebner(nvars: usize, order: MonomialOrder, gb: Vec<Polynomial>) -> Self {
        let gens = gb.iter().map(|g| g.primitive(order)).collect();
        Ideal { nvars, gens, gb: Some((order, gb)) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn cached_basis(&self, order: MonomialOrder) -> Option<&[Polynomial]> {
        match &self.gb {
            Some((o, b)) if *o == order => Some(b),
            _ => None,
        }
    }

    pub fn groebner_basis(&mut self, order: MonomialOrder, budget: &Budget) -> Result<&[Polynomial]> {
        if self.cached_basis(order).is_none() {
            let b = groebner(&self.gens, order, budget)?;
            self.gb = Some((order, b));
        }
        Ok(&self.gb.as_ref().unwrap().1)
    }

    pub fn contains(&mut self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.nvars() != self.nvars {
            return Err(invalid!("polynomial in {} variables, ideal in {}", f.nvars(), self.nvars));
        }
        let order = self.gb.as_ref().map_or(MonomialOrder::DegRevLex, |g| g.0);
        let gb = self.groebner_basis(order, budget)?;
        Ok(normal_form(f, gb, order).is_zero())
    }

    /// Ideal equality through reduced degrevlex bases.
    pub fn same_ideal(&mut self, other: &mut Ideal, budget: &Budget) -> Result<bool> {
        if self.nvars != other.nvars {
            return Ok(false);
        }
        let order = MonomialOrder::DegRevLex;
        let a = self.groebner_basis(order, budget)?.to_vec();
        Ok(a == other.groebner_basis(order, budget)?)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&mut self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `I : f^∞` by elimination: adjoin `t`, add `t·f − 1`, eliminate `t`.
pub fn saturate(ideal: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    let n = ideal.nvars();
    if f.nvars() != n {
        return Err(invalid!("saturating polynomial in {} variables, ideal in {n}", f.nvars()));
    }
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.remap(&shift, n + 1)).collect();
    let tf = &Polynomial::var(n + 1, 0) * &f.remap(&shift, n + 1);
    gens.push(&tf - &Polynomial::one(n + 1));
    let gb = groebner(&gens, MonomialOrder::Elimination(1), budget)?;
    let back: Vec<usize> = core::iter::once(0).chain(0..n).collect();
    let kept: Vec<Polynomial> = gb.iter().filter(|g| !g.uses_var(0)).map(|g| g.remap(&back, n)).collect();
    // the t-free part of an elimination basis is a reduced degrevlex basis
    Ok(Ideal::from_groebner(n, MonomialOrder::DegRevLex, kept))
}

/// `I : (∏_{v ∈ vars} x_v)^∞` for homogeneous `I`, one variable at a time:
/// with `x_v` last in degrevlex, dividing each basis element by its largest
/// power of `x_v` gives a basis of `I : x_v^∞`. Inhomogeneous input falls
/// back to [`saturate`].
pub fn saturate_by_product(ideal: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let n = ideal.nvars();
    if vars.iter().any(|&v| v >= n) {
        return Err(invalid!("variable index out of range"));
    }
    if !ideal.is_homogeneous() {
        let mut f = Polynomial::one(n);
        for &v in vars {
            f = &f * &Polynomial::var(n, v);
        }
        return saturate(ideal, &f, budget);
    }
    let mut cur: Vec<Polynomial> = ideal.generators().to_vec();
    for &v in vars {
        if budget.should_stop() {
            return Err(Error::BudgetExceeded("stopped by caller".into()));
        }
        let gb = groebner(&cur, MonomialOrder::DegRevLexLast(v), budget)?;
        cur = gb.iter().map(|g| divide_out_var(g, v)).collect();
    }
    let gb = groebner(&cur, MonomialOrder::DegRevLex, budget)?;
    Ok(Ideal::from_groebner(n, MonomialOrder::DegRevLex, gb))
}

fn divide_out_var(g: &Polynomial, v: usize) -> Polynomial {
    let k = g.monomials().map(|m| m.exp(v)).min().unwrap_or(0);
    if k == 0 {
        return g.clone();
    }
    Polynomial::from_terms(g.nvars(), g.terms().map(|(m, c)| (m.with_exp(v, m.exp(v) - k), c.clone())))
}

/// Number of minimal generators in each degree of a homogeneous ideal:
/// `dim I_d − dim (R_1·I_{d−1})`, realized by a degree-by-degree Buchberger
/// run that admits the degree-`d` generators only after every degree-`d`
/// S-pair has been reduced. Degrees above `max_degree` are not examined.
pub fn minimal_generators_by_degree(
    ideal: &Ideal,
    max_degree: Option<u32>,
    budget: &Budget,
) -> Result<BTreeMap<u32, usize>> {
    if !ideal.is_homogeneous() {
        return Err(invalid!("minimal generator counts need a homogeneous ideal"));
    }
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .filter(|g| max_degree.map_or(true, |d| g.total_degree().unwrap_or(0) <= d))
        .cloned()
        .collect();
    let Some(top) = gens.iter().filter_map(|g| g.total_degree()).max() else { return Ok(BTreeMap::new()) };
    for d in gens.iter().filter_map(|g| g.total_degree()) {
        let space = monomial_space(ideal.nvars(), d);
        if space > budget.max_monomial_space {
            return Err(Error::BudgetExceeded(alloc::format!(
                "degree {d} has {space} monomials, limit {}",
                budget.max_monomial_space
            )));
        }
    }
    let order = MonomialOrder::DegRevLex;
    let counts = if is_pure_binomial_input(&gens) {
        let inputs = gens
            .iter()
            .map(|f| to_integer_terms(f).into_iter().map(|(m, c)| (m, Fp::from_bigint(&c))).collect())
            .collect();
        let mut e: Engine<Fp> = Engine::new(order, inputs, budget);
        e.truncate(top);
        e.run()?;
        e.new_generators
    } else {
        let inputs = gens.iter().map(to_integer_terms).collect();
        let mut e: Engine<BigInt> = Engine::new(order, inputs, budget);
        e.truncate(top);
        e.run()?;
        e.new_generators
    };
    Ok(counts)
}

/// Dimension and degree of the projective scheme of a homogeneous ideal,
/// from the Hilbert series of its degrevlex initial ideal.
pub fn projective_degree_and_dim(ideal: &mut Ideal, budget: &Budget) -> Result<DimDegree> {
    if !ideal.is_homogeneous() {
        return Err(invalid!("degree and dimension need a homogeneous ideal"));
    }
    let n = ideal.nvars();
    let gb = ideal.groebner_basis(MonomialOrder::DegRevLex, budget)?;
    let lms: Vec<Monomial> =
        gb.iter().filter_map(|g| g.leading(MonomialOrder::DegRevLex).map(|(m, _)| m.clone())).collect();
    Ok(dim_degree_from_numerator(n, &hilbert_numerator(&lms)))
}

/// The five 4×4 sub-Pfaffians of a 5×5 antisymmetric matrix, the `k`-th
/// omitting row and column `k`.
pub fn pfaffians_4x4(m: &[Vec<Polynomial>]) -> Result<Vec<Polynomial>> {
    if m.len() != 5 || m.iter().any(|r| r.len() != 5) {
        return Err(invalid!("expected a 5×5 matrix"));
    }
    for i in 0..5 {
        if !m[i][i].is_zero() {
            return Err(invalid!("nonzero diagonal entry at {i}"));
        }
        for j in 0..i {
            if !(&m[i][j] + &m[j][i]).is_zero() {
                return Err(invalid!("entries ({i},{j}) and ({j},{i}) are not opposite"));
            }
        }
    }
    Ok((0..5)
        .map(|k| {
            let r: Vec<usize> = (0..5).filter(|&i| i != k).collect();
            let (a, b, c, d) = (r[0], r[1], r[2], r[3]);
            &(&(&m[a][b] * &m[c][d]) - &(&m[a][c] * &m[b][d])) + &(&m[a][d] * &m[b][c])
        })
        .collect())
}

/// Whether the sub-Pfaffians of `m` generate `ideal`.
pub fn pfaffian_check(m: &[Vec<Polynomial>], ideal: &mut Ideal, budget: &Budget) -> Result<bool> {
    let pf = pfaffians_4x4(m)?;
    let mut j = Ideal::new(ideal.nvars(), pf)?;
    j.same_ideal(ideal, budget)
}

#[allow(dead_code)]
pub(crate) fn basis_as_polys<C: super::Coefficient>(nvars: usize, basis: &[super::gb::GPoly<C>]) -> Vec<Polynomial> {
    basis.iter().map(|g| from_gpoly(nvars, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn x(n: usize, v: usize) -> Polynomial {
        Polynomial::var(n, v)
    }

    #[test]
    fn saturate_xy_by_x() {
        let i = Ideal::new(2, vec![&x(2, 0) * &x(2, 1)]).unwrap();
        let mut s = saturate(&i, &x(2, 0), &Budget::default()).unwrap();
        let mut y = Ideal::new(2, vec![x(2, 1)]).unwrap();
        assert!(s.same_ideal(&mut y, &Budget::default()).unwrap());
        let mut s2 = saturate_by_product(&i, &[0], &Budget::default()).unwrap();
        assert!(s2.same_ideal(&mut y, &Budget::default()).unwrap());
    }

    #[test]
    fn binomial_saturation_paths_agree() {
        // ⟨x0 x2 − x1 x3, x0 x1 − x2 x3⟩ saturated by all variables
        let v = |i| x(4, i);
        let i = Ideal::new(4, vec![&(&v(0) * &v(2)) - &(&v(1) * &v(3)), &(&v(0).pow(2) * &v(1)) - &(&v(2).pow(2) * &v(3))]).unwrap();
        let b = Budget::default();
        let mut a = saturate_by_product(&i, &[0, 1, 2, 3], &b).unwrap();
        let prod = &(&v(0) * &v(1)) * &(&v(2) * &v(3));
        let mut c = saturate(&i, &prod, &b).unwrap();
        assert!(a.same_ideal(&mut c, &b).unwrap());
    }

    #[test]
    fn min_gens_of_complete_intersection() {
        let v = |i| x(3, i);
        let g = vec![&v(0).pow(2) - &v(1).pow(2), &(&v(0) * &v(1)) * &v(2), &v(0).pow(2) * &v(2)];
        // x0² x2 = x2·(x0² − x1²) + x1² x2, not a consequence; degree 3 has 2 new generators
        let i = Ideal::new(3, g).unwrap();
        let m = minimal_generators_by_degree(&i, None, &Budget::default()).unwrap();
        assert_eq!(m.get(&2), Some(&1));
        assert_eq!(m.get(&3), Some(&2));
        let redundant = Ideal::new(3, vec![v(0).pow(2), v(0).pow(3), &v(0).pow(2) * &v(1)]).unwrap();
        let m = minimal_generators_by_degree(&redundant, None, &Budget::default()).unwrap();
        assert_eq!(m, [(2, 1)].into_iter().collect());
    }

    #[test]
    fn zero_pfaffians() {
        let z = vec![vec![Polynomial::zero(3); 5]; 5];
        let mut i = Ideal::new(3, vec![]).unwrap();
        assert!(pfaffian_check(&z, &mut i, &Budget::default()).unwrap());
        let mut bad = z.clone();
        bad[0][1] = x(3, 0);
        assert!(pfaffians_4x4(&bad).is_err());
    }
}
