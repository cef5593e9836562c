//! Exact q-combinatorics: q-Pochhammer products, Gaussian binomials, rank
//! counts of matrices over `F_q`, the rank/trace difference `f^0 - f^1`, and
//! checks for each classical q-identity the dimension computation rests on.
//!
//! All routines are generic over [`Scalar`](crate::Scalar) and are evaluated
//! at concrete integer (or rational) `q`. Where a check is meant to certify an
//! identity rather than just sample it, its doc comment records the degree
//! bound that makes a finite set of evaluation points sufficient.

mod identities;
mod pochhammer;
mod rank_count;
mod suite;
mod truncated;

pub use identities::{
    alternating_sum_identity, chu_vandermonde_admissible, chu_vandermonde_check,
    chu_vandermonde_sides, euler_congruence_check, hazan_check, hazan_sides,
    pochhammer_shift_check, qbinomial_congruence_check,
};
pub use pochhammer::{gaussian_binomial, q_factorial, q_pochhammer};
pub use rank_count::{count_rank_matrices, g_difference, g_difference_shifted, g_difference_direct, landsberg_rank_count};
pub use suite::{identity_suite, IdentityOutcome};
pub use truncated::TruncatedPoly;

use crate::{Error, Result, Scalar};

pub(crate) fn div_exact<T: Scalar>(num: &T, den: &T, what: impl FnOnce() -> String) -> Result<T> {
    num.exact_div(den).ok_or_else(|| {
        Error::internal(format!("inexact division {num:?} / {den:?} in {}", what()))
    })
}
