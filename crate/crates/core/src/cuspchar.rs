//! Regular characters of `F_{q^m}^x` and the values of cuspidal characters of
//! `GL(m, F_q)` on unipotent elements.
//!
//! Characters of the cyclic group `F_{q^m}^x` are indexed by residues
//! `j mod q^m - 1`; Frobenius acts by `j -> qj`. A character is regular when
//! its Frobenius orbit has full size `m`, and orbits of regular characters
//! parametrise the cuspidal representations. On a unipotent `g` the
//! semisimple part is `1`, the Galois sum collapses to `theta(1) = 1`, and the
//! character value depends only on `t = dim ker(g - 1)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::qcalc::div_exact;
use crate::scalar::{pow, sign};
use crate::{Error, ExactInt, Result, Scalar};

/// Character `theta_j` of `F_{q^m}^x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterIndex {
    j: u64,
    m: u32,
    q: u64,
}

impl CharacterIndex {
    pub fn new(j: u64, m: u32, q: u64) -> Result<Self> {
        let modulus = group_order(m, q)?;
        if j >= modulus {
            return Err(Error::param(format!("character index {j} must be below q^m - 1 = {modulus}")));
        }
        Ok(CharacterIndex { j, m, q })
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// `q^m - 1` as a machine integer.
fn group_order(m: u32, q: u64) -> Result<u64> {
    if q < 2 || m == 0 {
        return Err(Error::param(format!("need q >= 2 and m >= 1, got q = {q}, m = {m}")));
    }
    q.checked_pow(m)
        .map(|v| v - 1)
        .ok_or_else(|| Error::resource("character group", format!("{q}^{m}"), u64::MAX))
}

/// Size of the Frobenius orbit `{j, qj, q^2 j, ...} mod (q^m - 1)`.
pub fn frobenius_orbit_size(c: CharacterIndex) -> u32 {
    let modulus = c.q.pow(c.m) - 1;
    let mut x = c.j;
    for size in 1..=c.m {
        x = ((x as u128 * c.q as u128) % modulus as u128) as u64;
        if x == c.j {
            return size;
        }
    }
    c.m
}

pub fn is_regular_index(c: CharacterIndex) -> bool {
    frobenius_orbit_size(c) == c.m
}

/// Mobius function by trial division.
pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(regular characters, cuspidal representations)` of `GL(m, F_q)`:
/// `sum_{d|m} mu(m/d) (q^d - 1)` and that number divided by `m`.
pub fn regular_character_census(m: u32, q: u64) -> Result<(ExactInt, ExactInt)> {
    if q < 2 || m == 0 {
        return Err(Error::param(format!("need q >= 2 and m >= 1, got q = {q}, m = {m}")));
    }
    let q_big = BigInt::from(q);
    let mut regular = BigInt::zero();
    for d in (1..=m).filter(|d| m % d == 0) {
        let term = pow(&q_big, d as usize) - 1;
        regular += term * mobius((m / d) as u64);
    }
    let cuspidal = div_exact(&regular, &BigInt::from(m), || format!("regular_character_census({m}, {q})"))?;
    Ok((regular, cuspidal))
}

/// Counts regular indices by walking every Frobenius orbit; `budget` caps `q^m - 1`.
pub fn regular_character_count_brute(m: u32, q: u64, budget: u64) -> Result<ExactInt> {
    let modulus = group_order(m, q)?;
    if modulus > budget {
        return Err(Error::resource(
            format!("orbit enumeration for F_{{{q}^{m}}}"),
            format!("{modulus} characters"),
            format!("{budget} characters"),
        ));
    }
    let count = (0..modulus)
        .filter(|&j| is_regular_index(CharacterIndex { j, m, q }))
        .count();
    Ok(BigInt::from(count))
}

/// Unipotent conjugacy data in `GL(m)`: `t = dim ker(g - 1)`, `1 <= t <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnipotentClass {
    m: usize,
    t: usize,
}

impl UnipotentClass {
    pub fn new(m: usize, t: usize) -> Result<Self> {
        if t == 0 || t > m {
            return Err(Error::param(format!("kernel dimension t = {t} must lie in 1..={m}")));
        }
        Ok(UnipotentClass { m, t })
    }

    /// `[[I_n, X], [0, I_n]]` in `GL(2n)` with `rank X = r` fixes a space of
    /// dimension `2n - r`.
    pub fn block(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::param(format!("rank r = {r} exceeds n = {n}")));
        }
        Self::new(2 * n, 2 * n - r)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }
}

/// `(-1)^{m-1} (1-q)(1-q^2)...(1-q^{t-1})`, the same for every cuspidal
/// representation of `GL(m, F_q)`.
pub fn unipotent_char_value<T: Scalar>(c: UnipotentClass, q: &T) -> T {
    let prod = (1..c.t).fold(T::one(), |acc, i| acc * (T::one() - pow(q, i)));
    sign::<T>(c.m - 1) * prod
}

/// Character value on `[[I, X], [0, I]]` with `rank X = r`:
/// `(-1)^{2n-1} (q;q)_{2n-r-1}`.
pub fn block_unipotent_char_value<T: Scalar>(n: usize, r: usize, q: &T) -> Result<T> {
    if r > n {
        return Err(Error::param(format!("rank r = {r} exceeds n = {n}")));
    }
    if n == 0 {
        return Err(Error::param("GL(0) has no cuspidal representations"));
    }
    Ok(sign::<T>(2 * n - 1) * crate::qcalc::q_factorial(q, 2 * n - r - 1))
}
