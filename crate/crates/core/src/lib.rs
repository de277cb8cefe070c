#![no_std]
extern crate alloc;

pub mod arith;
pub mod budget;
pub mod error;
pub mod linalg;
pub mod moduli;
pub mod perm;
pub mod plucker;
pub mod poly;
pub mod pt;
pub mod ratfn;
pub mod toric;

pub use budget::Budget;
pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
