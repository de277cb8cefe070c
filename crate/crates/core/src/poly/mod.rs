//! Sparse polynomials over the rationals and Gröbner-basis machinery.

mod gb;
mod hilbert;
mod ideal;
mod mono;
mod polynomial;

pub use gb::{groebner, normal_form, Coefficient};
pub use hilbert::{hilbert_numerator, projective_degree_and_dim, DimDegree};
pub use ideal::{minimal_generators_by_degree, pfaffian_check, pfaffians_4x4, saturate, saturate_by_product, Ideal};
pub use mono::{Monomial, MonomialOrder};
pub use polynomial::Polynomial;
