//! Invertible circulant matrices over finite fields: the unit groups of
//! `F_q[x] / (x^n - 1)`, their closed forms, and brute-force oracles.

mod brute;
mod field;
mod groups;
mod ring;

pub use brute::{unit_group_brute, DEFAULT_BRUTE_CAP};
pub use field::FiniteField;
pub use groups::{
    circulant_exponents, circulant_full_group, circulant_group_coprime, circulant_quotient,
    circulant_quotient_coprime, circulant_quotient_prime, circulant_star_group,
    circulant_star_group_prime, p_torsion_counts, quotient_p_torsion_counts,
};
pub use ring::{is_restricted_unit, is_unit, CirculantRing, RingElement};
