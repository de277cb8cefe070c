//! Command-line front end: verification suites, report rendering and
//! exchange formats.

pub mod formats;
pub mod reference;
pub mod report;
pub mod suites;
