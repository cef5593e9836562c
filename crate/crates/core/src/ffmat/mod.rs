//! Finite fields `F_q`, square matrices over them, and the exhaustive
//! rank/trace census that serves as the brute-force oracle for the counting
//! formulas.

mod census;
mod field;
mod matrix;

pub use census::{
    enumerate_census, enumerate_census_against, enumerate_census_serial, RankTraceCensus,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use field::{
    is_prime, make_field, make_field_bounded, prime_factors, prime_power, FqElem, FqField,
    DEFAULT_MAX_FIELD_ORDER, HARD_MAX_FIELD_ORDER,
};
pub use matrix::FqMatrix;
pub(crate) use matrix::rank_in_place;
