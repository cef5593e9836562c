use num_integer::Integer;

use crate::scalar::{binom2, pow, sign};
use crate::{Error, Result, Scalar};

use super::pochhammer::one_minus_powers;
use super::{count_rank_matrices, div_exact, gaussian_binomial, q_factorial, q_pochhammer, TruncatedPoly};

/// `(aq^k;q)_{n-k} (a;q)_k = (a;q)_n`, the shift identity with its quotient
/// cleared so that it stays meaningful when `(a;q)_k = 0`.
///
/// Both sides are polynomials in `a` of degree `n`; the cleared form is a
/// factor regrouping, so agreement is exact for every `a`.
pub fn pochhammer_shift_check<T: Scalar>(a: &T, q: &T, n: usize, k: usize) -> Result<bool> {
    if k > n {
        return Err(Error::param(format!("shift k = {k} exceeds length n = {n}")));
    }
    let shifted = a.clone() * pow(q, k);
    let lhs = q_pochhammer(&shifted, q, n - k) * q_pochhammer(a, q, k);
    Ok(lhs == q_pochhammer(a, q, n))
}

/// Checks the Chu-Vandermonde preconditions: `b != 0`, `q` invertible and no
/// factor of `(c;q)_i` or `(q;q)_i` vanishing.
pub fn chu_vandermonde_admissible<T: Scalar>(i: usize, b: &T, c: &T, q: &T) -> Result<()> {
    if b.is_zero() {
        return Err(Error::param("Chu-Vandermonde requires b != 0"));
    }
    if q.is_zero() {
        return Err(Error::param("Chu-Vandermonde requires q != 0"));
    }
    for j in 0..i {
        if (T::one() - c.clone() * pow(q, j)).is_zero() {
            return Err(Error::param(format!(
                "factor 1 - c q^{j} of (c;q)_{i} vanishes (c = q^-{j})"
            )));
        }
        if (T::one() - pow(q, j + 1)).is_zero() {
            return Err(Error::param(format!("factor 1 - q^{} of (q;q)_{i} vanishes", j + 1)));
        }
    }
    Ok(())
}

/// Both sides of the q-Chu-Vandermonde sum
/// `sum_{r=0}^i (q^-i;q)_r (b;q)_r / ((c;q)_r (q;q)_r) (c q^i / b)^r = (c/b;q)_i / (c;q)_i`.
///
/// Needs a field scalar ([`crate::Rational`]).
pub fn chu_vandermonde_sides<T: Scalar>(i: usize, b: &T, c: &T, q: &T) -> Result<(T, T)> {
    chu_vandermonde_admissible(i, b, c, q)?;
    let ctx = || format!("chu_vandermonde({i}, {b:?}, {c:?}, {q:?})");
    let q_i = pow(q, i);
    let q_neg_i = div_exact(&T::one(), &q_i, ctx)?;
    let ratio = div_exact(&(c.clone() * q_i), b, ctx)?;
    let mut lhs = T::zero();
    for r in 0..=i {
        let num = q_pochhammer(&q_neg_i, q, r) * q_pochhammer(b, q, r) * pow(&ratio, r);
        let den = q_pochhammer(c, q, r) * q_factorial(q, r);
        lhs = lhs + div_exact(&num, &den, ctx)?;
    }
    let c_over_b = div_exact(c, b, ctx)?;
    let rhs = div_exact(&q_pochhammer(&c_over_b, q, i), &q_pochhammer(c, q, i), ctx)?;
    Ok((lhs, rhs))
}

/// Chu-Vandermonde as a boolean; see [`chu_vandermonde_sides`].
///
/// For fixed `i` and `q`, clearing denominators turns the identity into a
/// polynomial one in `(b, c)` of degree at most `2i` in each variable, so a
/// grid of more than `2i` values per variable settles it at that `q`.
pub fn chu_vandermonde_check<T: Scalar>(i: usize, b: &T, c: &T, q: &T) -> Result<bool> {
    let (lhs, rhs) = chu_vandermonde_sides(i, b, c, q)?;
    Ok(lhs == rhs)
}

/// Both sides of `sum_{r=0}^n a(n,r,q) (q;q)_{t-r} = q^{n^2} (q;q)_{t-n}^2 / (q;q)_{t-2n}`
/// for `t >= 2n`.
pub fn hazan_sides<T: Scalar>(n: usize, t: usize, q: &T) -> Result<(T, T)> {
    if t < 2 * n {
        return Err(Error::param(format!("Hazan identity needs t >= 2n, got t = {t}, n = {n}")));
    }
    let mut lhs = T::zero();
    for r in 0..=n {
        lhs = lhs + count_rank_matrices(n, r as i64, q)? * q_factorial(q, t - r);
    }
    let top = q_factorial(q, t - n);
    let rhs = div_exact(
        &(pow(q, n * n) * top.clone() * top),
        &q_factorial(q, t - 2 * n),
        || format!("hazan({n}, {t})"),
    )?;
    Ok((lhs, rhs))
}

/// Hazan's identity as a boolean.
///
/// Both sides are polynomials in `q` of degree at most `n^2 + t(t+1)/2`;
/// evaluation at integer points samples the identity rather than proving it.
pub fn hazan_check<T: Scalar>(n: usize, t: usize, q: &T) -> Result<bool> {
    let (lhs, rhs) = hazan_sides(n, t, q)?;
    Ok(lhs == rhs)
}

/// `sum_{j=0}^k (-1)^j q^{C(j,2)} [k j]_q (a;q)_{k-j}` paired with its closed
/// form `(-1)^k q^{C(k,2)} a^k`.
///
/// For fixed `q` the difference is a polynomial in `a` of degree at most `k`,
/// so agreement at `k + 1` distinct values of `a` proves it for all `a`.
pub fn alternating_sum_identity<T: Scalar>(k: usize, a: &T, q: &T) -> Result<(T, T)> {
    let mut lhs = T::zero();
    for j in 0..=k {
        lhs = lhs
            + sign::<T>(j)
                * pow(q, binom2(j))
                * gaussian_binomial(k, j as i64, q)?
                * q_pochhammer(a, q, k - j);
    }
    let rhs = sign::<T>(k) * pow(q, binom2(k)) * pow(a, k);
    Ok((lhs, rhs))
}

fn congruent<T: Scalar + Integer>(lhs: &T, rhs: &T, modulus: &T) -> bool {
    (lhs.clone() - rhs.clone()).mod_floor(modulus).is_zero()
}

fn check_truncation(n: usize, factors: usize) -> Result<()> {
    if factors < n + 1 {
        return Err(Error::param(format!(
            "truncation at {factors} factors is too short for degree {n}; need at least {}",
            n + 1
        )));
    }
    Ok(())
}

/// Euler's expansion of `(x;q)_inf`, checked coefficientwise modulo `q^M`.
///
/// With `e_n` the `x^n` coefficient of the first `M` factors, returns whether
/// `e_n (q;q)_n = (-1)^n q^{C(n,2)} (mod q^M)`. Adding a factor changes `e_n`
/// by a multiple of `q^M` and `(q;q)_n` is a unit mod `q^M`, so this is the
/// exact finite shadow of the infinite identity.
pub fn euler_congruence_check<T: Scalar + Integer>(n: usize, factors: usize, q: &T) -> Result<bool> {
    check_truncation(n, factors)?;
    let e = TruncatedPoly::pochhammer_product(&T::one(), q, factors, n);
    let lhs = e.coeff(n) * q_factorial(q, n);
    let rhs = sign::<T>(n) * pow(q, binom2(n));
    Ok(congruent(&lhs, &rhs, &pow(q, factors)))
}

/// The q-binomial theorem `(x;q)_inf sum_j (b;q)_j/(q;q)_j x^j = (bx;q)_inf`,
/// with denominators cleared and checked at `x^n` modulo `q^M`:
/// `sum_j e_{n-j} (b;q)_j prod_{i=j+1}^n (1-q^i) = (q;q)_n f_n`.
pub fn qbinomial_congruence_check<T: Scalar + Integer>(
    n: usize,
    b: &T,
    factors: usize,
    q: &T,
) -> Result<bool> {
    check_truncation(n, factors)?;
    let e = TruncatedPoly::pochhammer_product(&T::one(), q, factors, n);
    let f = TruncatedPoly::pochhammer_product(b, q, factors, n);
    let mut lhs = T::zero();
    for j in 0..=n {
        lhs = lhs + e.coeff(n - j) * q_pochhammer(b, q, j) * one_minus_powers(q, j + 1, n);
    }
    let rhs = q_factorial(q, n) * f.coeff(n);
    Ok(congruent(&lhs, &rhs, &pow(q, factors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ExactInt, Rational};

    fn big(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(big(n), big(d))
    }

    #[test]
    fn shift_examples() {
        for q in [2, 3, 5] {
            for n in 0..7 {
                assert!(pochhammer_shift_check(&big(7), &big(q), n, 0).unwrap());
                for k in 1..=n {
                    assert!(pochhammer_shift_check(&big(1), &big(q), n, k).unwrap());
                    assert_eq!(q_pochhammer(&big(1), &big(q), n), big(0));
                }
            }
        }
        // (4;2)_2 (2;2)_1 = (1-4)(1-8)(1-2) = -21 = (2;2)_3
        assert_eq!(q_pochhammer(&big(4), &big(2), 2) * q_pochhammer(&big(2), &big(2), 1), big(-21));
        assert_eq!(q_pochhammer(&big(2), &big(2), 3), big(-21));
        assert!(pochhammer_shift_check(&big(2), &big(2), 3, 1).unwrap());
        assert!(pochhammer_shift_check(&big(2), &big(2), 1, 3).is_err());
    }

    #[test]
    fn chu_vandermonde_small_cases() {
        let q = rat(2, 1);
        let (lhs, rhs) = chu_vandermonde_sides(0, &rat(5, 3), &rat(-2, 1), &q).unwrap();
        assert_eq!((lhs, rhs), (rat(1, 1), rat(1, 1)));

        for (b, c) in [(rat(2, 1), rat(3, 1)), (rat(-1, 2), rat(7, 5)), (rat(3, 1), rat(-2, 1))] {
            let expected = (rat(1, 1) - c.clone() / b.clone()) / (rat(1, 1) - c.clone());
            let (lhs, rhs) = chu_vandermonde_sides(1, &b, &c, &q).unwrap();
            assert_eq!(lhs, expected);
            assert_eq!(rhs, expected);
        }
    }

    #[test]
    fn chu_vandermonde_three_term_case() {
        // i=2, b=2, c=3, q=2: both sides equal 1/10
        let (lhs, rhs) = chu_vandermonde_sides(2, &rat(2, 1), &rat(3, 1), &rat(2, 1)).unwrap();
        assert_eq!(lhs, rat(1, 10));
        assert_eq!(rhs, rat(1, 10));
    }

    #[test]
    fn chu_vandermonde_rejects_singular_parameters() {
        let q = rat(3, 1);
        assert!(chu_vandermonde_check(2, &rat(0, 1), &rat(2, 1), &q).is_err());
        assert!(chu_vandermonde_check(2, &rat(2, 1), &rat(1, 1), &q).is_err());
        let err = chu_vandermonde_check(3, &rat(2, 1), &rat(1, 9), &q).unwrap_err();
        assert!(err.to_string().contains("1 - c q^2"), "{err}");
        // c = q^-2 only matters once the factor j = 2 is present
        assert!(chu_vandermonde_check(2, &rat(2, 1), &rat(1, 9), &q).unwrap());
    }

    #[test]
    fn hazan_examples() {
        for q in [2, 3, 5] {
            for t in 0..6 {
                let (lhs, rhs) = hazan_sides(0, t, &big(q)).unwrap();
                assert_eq!(lhs, q_factorial(&big(q), t));
                assert_eq!(rhs, lhs);
            }
        }
        // n=1, t=2, q=2: 1 * (q;q)_2 + (q-1)(q;q)_1 = 3 - 1 = 2 = q(1-q)^2
        assert_eq!(hazan_sides(1, 2, &big(2)).unwrap(), (big(2), big(2)));
        assert!(hazan_check(2, 4, &big(3)).unwrap());
        assert!(matches!(hazan_check(2, 3, &big(3)), Err(Error::Parameter(_))));
    }

    #[test]
    fn alternating_examples() {
        for q in [2, 3, 5] {
            for a in -3..4 {
                assert_eq!(alternating_sum_identity(0, &big(a), &big(q)).unwrap(), (big(1), big(1)));
                assert_eq!(alternating_sum_identity(1, &big(a), &big(q)).unwrap(), (big(-a), big(-a)));
            }
        }
        assert_eq!(alternating_sum_identity(2, &big(3), &big(2)).unwrap(), (big(18), big(18)));
    }

    #[test]
    fn euler_examples() {
        for q in [2, 3] {
            for m in 1..5 {
                assert!(euler_congruence_check(0, m, &big(q)).unwrap());
            }
        }
        // e_1 = -7, e_2 = 14 for (1-x)(1-2x)(1-4x)
        assert!(euler_congruence_check(1, 3, &big(2)).unwrap());
        assert!(euler_congruence_check(2, 3, &big(2)).unwrap());
        assert!(euler_congruence_check(2, 2, &big(2)).is_err());
    }

    #[test]
    fn euler_congruence_is_sharp() {
        // 42 = 2 mod 8 but the congruence would fail mod 16 with only 3 factors
        let e = TruncatedPoly::pochhammer_product(&big(1), &big(2), 3, 2);
        let lhs = e.coeff(2) * q_factorial(&big(2), 2);
        assert_eq!(lhs, big(42));
        assert!(!congruent(&lhs, &big(2), &big(16)));
    }

    #[test]
    fn qbinomial_examples() {
        for q in [2, 3] {
            for n in 0..5 {
                assert!(qbinomial_congruence_check(n, &big(1), n + 2, &big(q)).unwrap());
                assert!(qbinomial_congruence_check(0, &big(5), n + 1, &big(q)).unwrap());
            }
        }
        assert!(qbinomial_congruence_check(1, &big(3), 3, &big(2)).unwrap());
    }

    #[test]
    fn identities_hold_over_machine_integers() {
        assert!(hazan_check(2, 5, &3i128).unwrap());
        assert!(euler_congruence_check(3, 5, &2i64).unwrap());
        assert!(qbinomial_congruence_check(3, &-1i64, 6, &3).unwrap());
        let (lhs, rhs) = alternating_sum_identity(4, &9i128, &3).unwrap();
        assert_eq!(lhs, rhs);
    }
}
