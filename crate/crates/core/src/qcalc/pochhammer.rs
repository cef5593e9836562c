use crate::scalar::pow;
use crate::{Result, Scalar};

use super::div_exact;

/// The q-Pochhammer symbol `(a;q)_m = prod_{i=0}^{m-1} (1 - a q^i)`.
///
/// The empty product (`m = 0`) is 1.
pub fn q_pochhammer<T: Scalar>(a: &T, q: &T, m: usize) -> T {
    let mut acc = T::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc = acc * (T::one() - term.clone());
        term = term * q.clone();
    }
    acc
}

/// `(q;q)_m = (1-q)(1-q^2)...(1-q^m)`.
pub fn q_factorial<T: Scalar>(q: &T, m: usize) -> T {
    q_pochhammer(q, q, m)
}

/// Gaussian binomial `[k i]_q = (q;q)_k / ((q;q)_i (q;q)_{k-i})`.
///
/// Vanishes for `i < 0` or `i > k`. The division is checked to be exact, so an
/// error here means `q` is a root of some `1 - q^j` or the scalar type cannot
/// represent the quotient.
pub fn gaussian_binomial<T: Scalar>(k: usize, i: i64, q: &T) -> Result<T> {
    if i < 0 || i as u64 > k as u64 {
        return Ok(T::zero());
    }
    let i = i as usize;
    let den = q_factorial(q, i) * q_factorial(q, k - i);
    div_exact(&q_factorial(q, k), &den, || format!("gaussian_binomial({k}, {i})"))
}

/// `prod_{i=lo}^{hi} (1 - q^i)`, empty when `lo > hi`.
pub(crate) fn one_minus_powers<T: Scalar>(q: &T, lo: usize, hi: usize) -> T {
    (lo..=hi).fold(T::one(), |acc, i| acc * (T::one() - pow(q, i)))
}
