use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 28]>;

/// Dense exponent vector over a fixed number of variables, with its total
/// degree and a divisibility mask (bit `v % 64` set when `x_v` occurs).
#[derive(Clone)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
    mask: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; nvars], deg: 0, mask: 0 }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[v] = 1;
        m.deg = 1;
        m.mask = 1 << (v % 64);
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Monomial { exps: exps.iter().copied().collect(), deg: 0, mask: 0 };
        m.refresh();
        m
    }

    fn refresh(&mut self) {
        self.deg = self.exps.iter().map(|&e| e as u32).sum();
        self.mask = self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (v, _)| m | 1 << (v % 64));
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.exps[v]
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (v, e))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), o.nvars());
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + o.deg,
            mask: self.mask | o.mask,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.mask & !o.mask == 0 && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        debug_assert!(self.divides(o));
        let mut m = Monomial { exps: o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(), deg: 0, mask: 0 };
        m.refresh();
        m
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect(), deg: 0, mask: 0 };
        m.refresh();
        m
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        if self.mask & o.mask == 0 {
            return true;
        }
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Remove every power of `x_v`.
    pub fn strip_var(&self, v: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[v] = 0;
        m.refresh();
        m
    }

    pub fn with_exp(&self, v: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.exps[v] = e;
        m.refresh();
        m
    }

    /// Same exponents in a ring with `extra` more variables appended.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut m = self.clone();
        m.exps.extend(core::iter::repeat(0).take(extra));
        m
    }

    /// Exponent vector re-indexed through `map[old] = new`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut e: Exponents = smallvec::smallvec![0; nvars];
        for (v, x) in self.support() {
            e[map[v]] += x;
        }
        Monomial::from_exponents(&e)
    }
}

impl PartialEq for Monomial {
    fn eq(&self, o: &Self) -> bool {
        self.exps == o.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.exps.hash(h)
    }
}

/// Storage order only (lexicographic on exponent vectors); use
/// [`MonomialOrder`] for algebra.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.exps.cmp(&o.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Monomial orders. Variable 0 is the largest variable in every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Degree reverse lexicographic with `x_v` moved to the smallest slot.
    DegRevLexLast(usize),
    /// Product order: degrevlex on variables `0..k`, ties broken by
    /// degrevlex on the rest. Eliminates the first block.
    Elimination(usize),
}

fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn block_grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex_tail(&a.exps, &b.exps)),
            MonomialOrder::DegRevLexLast(v) => a
                .deg
                .cmp(&b.deg)
                .then_with(|| b.exps[v].cmp(&a.exps[v]))
                .then_with(|| revlex_tail(&a.exps, &b.exps)),
            MonomialOrder::Elimination(k) => {
                block_grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| block_grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex | MonomialOrder::Elimination(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::cmp::Ordering::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn orders() {
        let (a, b) = (m(&[1, 0, 2]), m(&[0, 3, 0]));
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Greater);
        // same degree: revlex compares last variable, smaller exponent wins
        assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), Less);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Greater);
        assert_eq!(MonomialOrder::DegRevLexLast(0).cmp(&m(&[1, 1, 0]), &m(&[0, 1, 1])), Less);
        assert_eq!(MonomialOrder::Elimination(1).cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Greater);
    }

    #[test]
    fn arithmetic() {
        let (a, b) = (m(&[1, 2, 0]), m(&[0, 1, 3]));
        assert_eq!(a.lcm(&b), m(&[1, 2, 3]));
        assert!(a.divides(&a.mul(&b)));
        assert_eq!(a.quotient_of(&a.mul(&b)), b);
        assert!(!a.coprime(&b));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 4, 1])));
        assert_eq!(a.mul(&b).degree(), 7);
    }
}
