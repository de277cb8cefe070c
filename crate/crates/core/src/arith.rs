//! Word-sized prime field used for fast rank filters and for binomial
//! Gröbner computations, where no coefficient other than 0 and ±1 can occur.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The largest prime below 2^62.
pub const PRIME: u64 = (1u64 << 62) - 57;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(v: u64) -> Self {
        Fp(v % PRIME)
    }

    pub fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            -Fp::new(v.unsigned_abs())
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(PRIME));
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn to_i128(self) -> i128 {
        if self.0 > PRIME / 2 {
            self.0 as i128 - PRIME as i128
        } else {
            self.0 as i128
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Fp {
        assert!(!self.is_zero(), "inverse of zero");
        self.pow(PRIME - 2)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= PRIME { s - PRIME } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + PRIME - o.0 })
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { PRIME - self.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 * o.0 as u128) % PRIME as u128) as u64)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i128())
    }
}

/// Extended gcd: returns `(g, s, t)` with `g = s*a + t*b`, `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in it {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_laws_on_samples() {
        let a = Fp::from_i64(-7);
        let b = Fp::new(123456789);
        assert_eq!(a + (-a), Fp::ZERO);
        assert_eq!(b * b.inv(), Fp::ONE);
        assert_eq!((a * b).to_i128(), -7 * 123456789);
        assert_eq!(Fp::from_bigint(&BigInt::from(-1)), -Fp::ONE);
    }

    #[test]
    fn ext_gcd_is_bezout() {
        let (g, s, t) = ext_gcd(&BigInt::from(-12), &BigInt::from(18));
        assert_eq!(g, BigInt::from(6));
        assert_eq!(s * BigInt::from(-12) + t * BigInt::from(18), g);
    }
}
