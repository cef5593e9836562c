use std::fmt;

use crate::{Error, Result};

/// Largest field order [`make_field`] will build lookup tables for.
pub const DEFAULT_MAX_FIELD_ORDER: u64 = 1 << 10;

/// Absolute cap for [`make_field_bounded`]; the tables hold `q^2` entries.
pub const HARD_MAX_FIELD_ORDER: u64 = 1 << 12;

/// An element of an [`FqField`], stored as the integer `sum_i c_i p^i` of its
/// coordinate vector `(c_0, ..., c_{e-1})` in the polynomial basis.
///
/// The integer order on this encoding is the order used for every
/// enumeration. The prime subfield is `0..p`, so `0` and `1` are the additive
/// and multiplicative identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub(crate) u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Finite field `F_q`, `q = p^e`, realised as `F_p[x] / (modulus)`.
///
/// Addition and multiplication go through dense `q x q` tables.
#[derive(Clone)]
pub struct FqField {
    p: u32,
    e: u32,
    q: usize,
    /// `c_0..c_{e-1}` of the monic modulus; the leading 1 is implicit.
    modulus: Vec<u32>,
    generator: FqElem,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    abs_trace: Vec<u16>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus_coeffs())
            .field("generator", &self.coords(self.generator))
            .finish()
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^e` with `p` prime, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let (mut rest, mut e) = (q, 0);
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((p as u32, e))
}

fn digits(mut code: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as usize) as u32);
        code /= p as usize;
    }
    out
}

fn encode(coords: &[u32], p: u32) -> usize {
    coords.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Remainder of `a` (low-to-high coefficients) modulo a monic `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                let sub = (lead as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for d in 1..=e / 2 {
        for code in 0..(p as usize).pow(d as u32) {
            let mut divisor = digits(code, p, d);
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Builds `F_{p^e}` with tables bounded by [`DEFAULT_MAX_FIELD_ORDER`].
pub fn make_field(p: u32, e: u32) -> Result<FqField> {
    make_field_bounded(p, e, DEFAULT_MAX_FIELD_ORDER)
}

/// Builds `F_{p^e}` using the smallest monic irreducible modulus of degree `e`
/// (by coefficient encoding) and the smallest primitive element.
pub fn make_field_bounded(p: u32, e: u32, max_order: u64) -> Result<FqField> {
    if !is_prime(p as u64) {
        return Err(Error::param(format!("characteristic {p} is not prime")));
    }
    if e == 0 {
        return Err(Error::param("extension degree must be at least 1"));
    }
    let q = (p as u64).checked_pow(e).filter(|&q| q <= max_order.min(HARD_MAX_FIELD_ORDER));
    let Some(q) = q else {
        return Err(Error::resource(
            format!("field F_{{{p}^{e}}}"),
            format!("{p}^{e} elements"),
            format!("{max_order} elements"),
        ));
    };
    let q = q as usize;
    let e_len = e as usize;

    // for e = 1 this picks the modulus x, so elements are plain residues
    let modulus = (0..q)
        .map(|code| digits(code, p, e_len))
        .find(|low| {
            let mut full = low.clone();
            full.push(1);
            is_irreducible(&full, p)
        })
        .ok_or_else(|| Error::internal(format!("no irreducible of degree {e} over F_{p}")))?;
    let mut monic = modulus.clone();
    monic.push(1);

    let slow_mul = |a: usize, b: usize| -> usize {
        let (da, db) = (digits(a, p, e_len), digits(b, p, e_len));
        let mut prod = vec![0u32; 2 * e_len - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        encode(&poly_rem(&prod, &monic, p), p)
    };
    let slow_pow = |mut base: usize, mut exp: usize| -> usize {
        let mut acc = 1usize;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = slow_mul(acc, base);
            }
            base = slow_mul(base, base);
            exp >>= 1;
        }
        acc
    };

    let order = q - 1;
    let factors = prime_factors(order as u64);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&l| slow_pow(g, order / l as usize) != 1))
        .ok_or_else(|| Error::internal(format!("no primitive element in F_{q}")))?;

    // exp/log tables from the generator; exp[i] = g^i
    let mut exp = vec![0usize; order];
    let mut log = vec![usize::MAX; q];
    let mut x = 1usize;
    for (i, slot) in exp.iter_mut().enumerate() {
        if log[x] != usize::MAX {
            return Err(Error::internal(format!("generator {generator} has order {i} < {order}")));
        }
        *slot = x;
        log[x] = i;
        x = slow_mul(x, generator);
    }
    if x != 1 {
        return Err(Error::internal(format!("generator {generator} does not have order {order}")));
    }

    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    let coords: Vec<Vec<u32>> = (0..q).map(|a| digits(a, p, e_len)).collect();
    for a in 0..q {
        for b in 0..q {
            let sum: Vec<u32> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&sum, p) as u16;
            if a != 0 && b != 0 {
                mul[a * q + b] = exp[(log[a] + log[b]) % order] as u16;
            }
        }
    }
    let neg: Vec<u16> = (0..q)
        .map(|a| {
            let c: Vec<u32> = coords[a].iter().map(|&x| (p - x) % p).collect();
            encode(&c, p) as u16
        })
        .collect();
    let inv: Vec<u16> = (0..q)
        .map(|a| if a == 0 { 0 } else { exp[(order - log[a]) % order] as u16 })
        .collect();

    let mut field = FqField {
        p,
        e,
        q,
        modulus,
        generator: FqElem(generator as u16),
        add,
        mul,
        neg,
        inv,
        abs_trace: Vec::new(),
    };
    let abs_trace: Vec<u16> = field
        .elements()
        .map(|x| {
            let mut acc = FqElem::ZERO;
            let mut frob = x;
            for _ in 0..e {
                acc = field.add(acc, frob);
                frob = field.pow(frob, p as u64);
            }
            acc.0
        })
        .collect();
    if abs_trace.iter().any(|&t| t as u32 >= p) {
        return Err(Error::internal("absolute trace left the prime subfield"));
    }
    field.abs_trace = abs_trace;
    Ok(field)
}

impl FqField {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    /// Coefficients `c_0..c_e` of the monic modulus, leading 1 included.
    pub fn modulus_coeffs(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as u16).map(FqElem)
    }

    pub fn coords(&self, x: FqElem) -> Vec<u32> {
        digits(x.index(), self.p, self.e as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() != self.e as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::param(format!(
                "{coords:?} is not a coordinate vector of length {} over F_{}",
                self.e, self.p
            )));
        }
        Ok(FqElem(encode(coords, self.p) as u16))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.p as i64) as u16)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        (!a.is_zero()).then(|| FqElem(self.inv[a.index()]))
    }

    pub fn pow(&self, base: FqElem, mut exp: u64) -> FqElem {
        let (mut acc, mut base) = (FqElem::ONE, base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FqElem) -> Option<usize> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut ord = 1;
        while x != FqElem::ONE {
            x = self.mul(x, a);
            ord += 1;
        }
        Some(ord)
    }

    /// `x + x^p + ... + x^{p^{e-1}}`, as a residue in `0..p`.
    #[inline]
    pub fn absolute_trace(&self, x: FqElem) -> u32 {
        self.abs_trace[x.index()] as u32
    }

    /// `(c_0, ..., c_{e-1})` rendered for exports.
    pub fn format_elem(&self, x: FqElem) -> String {
        let parts: Vec<String> = self.coords(x).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.generator(), FqElem::ONE);
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.generator(), FqElem(3));
        assert_eq!(f7.mul(FqElem(3), FqElem(5)), FqElem(1));
        assert_eq!(f7.absolute_trace(FqElem(4)), 4);
    }

    #[test]
    fn four_element_field() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus_coeffs(), vec![1, 1, 1]);
        // x * x = x + 1
        let x = f4.from_coords(&[0, 1]).unwrap();
        assert_eq!(f4.mul(x, x), f4.from_coords(&[1, 1]).unwrap());
        assert_eq!(f4.multiplicative_order(f4.generator()), Some(3));
        // Tr(x) = x + x^2 = 1, Tr(1) = 1 + 1 = 0
        assert_eq!(f4.absolute_trace(x), 1);
        assert_eq!(f4.absolute_trace(FqElem::ONE), 0);
    }

    #[test]
    fn nine_element_field() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus_coeffs(), vec![1, 0, 1]);
        assert_eq!(f9.multiplicative_order(f9.generator()), Some(8));
        for a in f9.elements().skip(1) {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), FqElem::ONE);
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (2, 3), (5, 1), (3, 2)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn absolute_trace_is_onto_and_balanced() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
            let f = make_field(p, e).unwrap();
            let mut hits = vec![0usize; p as usize];
            for x in f.elements() {
                hits[f.absolute_trace(x) as usize] += 1;
            }
            assert!(hits.iter().all(|&h| h == f.order() / p as usize), "{hits:?}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::Parameter(_))));
        assert!(matches!(make_field(2, 0), Err(Error::Parameter(_))));
        assert!(matches!(make_field(2, 11), Err(Error::Resource { .. })));
        assert!(matches!(make_field_bounded(3, 3, 26), Err(Error::Resource { .. })));
    }

    #[test]
    fn prime_power_parsing() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
