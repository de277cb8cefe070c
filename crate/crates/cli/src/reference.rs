//! Reference data used by the verification suites.

use parke_taylor_core::moduli::t_names;
use parke_taylor_core::poly::Polynomial;
use parke_taylor_core::pt::SigmaRing;
use parke_taylor_core::Result;

/// `A_5`, rows `12, 13, 14, 15, 23, 24, 25, 34, 35, 45`.
pub const A5: [[i64; 6]; 10] = [
    [1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 0, 1],
    [0, 1, 0, 0, 1, 0],
    [1, 0, 1, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 1],
    [0, 1, 1, 1, 1, 0],
    [1, 1, 0, 1, 0, 1],
];

pub const A5_KERNEL: [i64; 6] = [1, -1, -1, 1, 1, -1];

pub const CUBIC_5: &str = "z12345*z12453*z12534 - z12354*z12435*z12543";

/// A reference basis of the n = 6 kernel as binomials.
pub const KERNEL_BASIS_6: [&str; 15] = [
    "z123465*z124536-z123456*z124635",
    "z123546*z124365-z123456*z124635",
    "z123456*z125364-z123546*z125634",
    "z123456*z126453-z123546*z126543",
    "z123456*z125364-z123564*z125436",
    "z123564*z126345-z123465*z126354",
    "z123645*z124356-z123456*z124635",
    "z123465*z125463-z123645*z125643",
    "z123465*z126354-z123645*z126534",
    "z123564*z124563-z123654*z124653",
    "z123654*z125346-z123456*z125364",
    "z123465*z126354-z123654*z126435",
    "z124563*z125346-z124356*z125463",
    "z124563*z126435-z124365*z126453",
    "z126345*z126453*z126534-z126354*z126435*z126543",
];

pub const QUARTIC_6: &str = "z123654*z124536*z125463*z126345 - z123645*z124563*z125436*z126354";

/// Open generators for n = 5: the cubic and two lifts.
pub const OPEN_5: [&str; 3] = [
    "z12354*z12435*z12543-z12345*z12453*z12534",
    "z12354*z12435+z12345*z12453+z12354*z12453",
    "z12354*z12453+z12453*z12534+z12354*z12543",
];

/// The reference quadrics of the closed n = 5 ideal (one appears twice).
pub const CLOSED_5: [&str; 5] = [
    "z12354*z12435+z12345*z12453+z12354*z12453",
    "z12345*z12534+z12345*z12543+z12354*z12543",
    "z12354*z12435+z12345*z12534+z12435*z12534",
    "z12345*z12453+z12345*z12543+z12435*z12543",
    "z12354*z12435+z12345*z12534+z12435*z12534",
];

/// Antisymmetric 5×5 matrix whose 4×4 Pfaffians cut out the closed n = 5 ideal.
pub const M_PT: [[&str; 5]; 5] = [
    ["0", "-z12543", "-z12345", "-z12354-z12534", "z12345"],
    ["z12543", "0", "-z12435+z12543", "-z12543", "z12435+z12453"],
    ["z12345", "z12435-z12543", "0", "-z12534", "-z12435"],
    ["z12354+z12534", "z12543", "z12534", "0", "0"],
    ["-z12345", "-z12435-z12453", "z12435", "0", "0"],
];

pub const LC_5: [&str; 5] = [
    "t11*t12-t12*t13-t11*t22+t11*t23",
    "t12*t21-t21*t22-t12*t23+t21*t23",
    "-t11*t22+t13*t22+t21*t22-t21*t23",
    "-t13*t21+t11*t23",
    "t13*t22-t12*t23",
];

pub const M_LC: [[&str; 5]; 5] = [
    ["0", "0", "t22-t23", "-t11+t13", "-t21+t23"],
    ["0", "0", "-t12+t22-t23", "t13", "t23"],
    ["-t22+t23", "t12-t22+t23", "0", "-t22+t23", "-t22"],
    ["t11-t13", "-t13", "t22-t23", "0", "t23"],
    ["t21-t23", "-t23", "t22", "-t23", "0"],
];

/// Relation quadruple and its reference lift for n = 6.
pub const LIFTS_6: [([u8; 4], &str); 9] = [
    ([1, 3, 4, 5], "z126354*z126435+z126345*z126453+z126354*z126453"),
    ([2, 3, 4, 5], "z123546*z124536+z124536*z125346+z123546*z125436"),
    ([1, 3, 4, 6], "z125364*z125436+z125346*z125463+z125364*z125463"),
    ([2, 3, 4, 6], "z123645*z124635+z124635*z126345+z123645*z126435"),
    ([1, 3, 5, 6], "z124365*z124536+z124356*z124563+z124365*z124563"),
    ([2, 3, 5, 6], "z123654*z125634+z125634*z126354+z123654*z126534"),
    ([1, 4, 5, 6], "z123465*z123546+z123456*z123564+z123465*z123564"),
    ([2, 4, 5, 6], "z124653*z125643+z125643*z126453+z124653*z126543"),
    ([3, 4, 5, 6], "z124653*z125463+z124563*z125643+z124653*z125643"),
];

/// Supports of `L_5`, lexicographic by index.
pub const L5: [(&[u8], &[&str]); 6] = [
    (&[1, 1], &["12345", "12354", "12435", "12453", "12534", "12543"]),
    (&[1, 2], &["12345", "12354", "12435"]),
    (&[1, 3], &["12345", "12435", "12453"]),
    (&[2, 1], &["12345", "12354", "12534"]),
    (&[2, 2], &["12345", "12354"]),
    (&[2, 3], &["12345"]),
];

pub const L6_T212: [&str; 8] = ["123456", "123465", "123645", "123546", "123564", "123654", "125346", "125364"];

pub fn z_polys(ring: &SigmaRing, src: &[&str]) -> Result<Vec<Polynomial>> {
    src.iter().map(|s| ring.parse(s)).collect()
}

/// Parses a polynomial in the n = 5 t-coordinates.
pub fn t_poly(s: &str) -> Result<Polynomial> {
    let names = t_names(5)?;
    Polynomial::parse_with(s, names.len(), &|v| names.iter().position(|x| x == v))
}

pub fn z_matrix(ring: &SigmaRing, m: &[[&str; 5]; 5]) -> Result<Vec<Vec<Polynomial>>> {
    m.iter().map(|r| r.iter().map(|s| ring.parse(s)).collect()).collect()
}

pub fn t_matrix(m: &[[&str; 5]; 5]) -> Result<Vec<Vec<Polynomial>>> {
    m.iter().map(|r| r.iter().map(|s| t_poly(s)).collect()).collect()
}
