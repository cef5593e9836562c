//! Dimension of the twisted Jacquet module `pi_{N, psi_{A_k}}` of a cuspidal
//! representation `pi` of `GL(2n, F_q)`, where `N = M(n, F_q)` is the
//! unipotent radical of the `(n, n)` block parabolic.
//!
//! Four independent routes produce the dimension:
//!
//! - [`dim_closed`]: the product formula
//!   `(-1)^{n-1} (q;q)_{n-1} q^{C(k,2)} (q^k - 1)...(q^{n-1} - 1)`;
//! - [`dim_from_counts`]: the character sum over `N` grouped by rank, with
//!   `f^0 - f^1` supplied by [`g_difference`];
//! - [`dim_from_census`]: the same sum with `f^0 - f^1` read off an
//!   exhaustive [`RankTraceCensus`];
//! - [`dim_complex`]: the character sum evaluated literally in floating point,
//!   one matrix at a time, with `psi_0(x) = exp(2 pi i Tr(x) / p)`.
//!
//! Characters of `N` are one-dimensional, so the multiplicity of `psi_{A_k}`
//! in `pi|_N` equals the dimension.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::cuspchar::block_unipotent_char_value;
use crate::ffmat::{
    enumerate_census, enumerate_census_against, make_field, prime_power, FqElem, FqField,
    FqMatrix, RankTraceCensus, DEFAULT_ENUMERATION_BUDGET,
};
use crate::qcalc::{count_rank_matrices, div_exact, g_difference, q_factorial};
use crate::scalar::{binom2, pow, sign};
use crate::{Error, ExactInt, Result, Scalar};

/// Default cap on the number of terms [`dim_complex`] will sum.
pub const DEFAULT_COMPLEX_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimRequest {
    n: usize,
    k: usize,
    p: u32,
    e: u32,
}

impl DimRequest {
    /// `G = GL(2n, F_q)`, character `psi_{A_k}`; `q` must be a prime power.
    pub fn new(n: usize, k: usize, q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::param(format!("q = {q} is not a prime power")))?;
        Self::with_field(n, k, p, e)
    }

    pub fn with_field(n: usize, k: usize, p: u32, e: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if k > n {
            return Err(Error::param(format!("character rank k = {k} exceeds n = {n}")));
        }
        if prime_power(p as u64) != Some((p, 1)) {
            return Err(Error::param(format!("characteristic p = {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::param("extension degree e must be at least 1"));
        }
        Ok(DimRequest { n, k, p, e })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    fn q_exact(&self) -> ExactInt {
        BigInt::from(self.q())
    }

    pub fn field(&self) -> Result<FqField> {
        make_field(self.p, self.e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Closed,
    Counts,
    Census,
    Complex,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Closed, Method::Counts, Method::Census, Method::Complex];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Counts => "counts",
            Method::Census => "census",
            Method::Complex => "complex",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::param(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DimValue {
    Exact(ExactInt),
    Approx(f64),
}

impl DimValue {
    /// Whether this value equals the exact dimension `expected` (within
    /// `tolerance` for floating values).
    pub fn agrees_with(&self, expected: &ExactInt, tolerance: f64) -> bool {
        match self {
            DimValue::Exact(v) => v == expected,
            DimValue::Approx(x) => expected.to_f64().is_some_and(|e| (x - e).abs() < tolerance),
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exact(v) => write!(f, "{v}"),
            DimValue::Approx(x) => write!(f, "{x:.9}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimReport {
    pub request: DimRequest,
    pub method: Method,
    pub value: DimValue,
    /// `None` unless timing was requested, which keeps output reproducible.
    pub elapsed: Option<Duration>,
}

impl DimReport {
    /// Nonnegative, and zero exactly when `k = 0`.
    pub fn satisfies_invariants(&self) -> bool {
        let k_zero = self.request.k == 0;
        match &self.value {
            DimValue::Exact(v) => {
                if k_zero {
                    v.is_zero()
                } else {
                    v.sign() == Sign::Plus
                }
            }
            DimValue::Approx(x) => {
                if k_zero {
                    x.abs() < 1e-6
                } else {
                    *x > 0.5
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Matrices an exhaustive census may visit.
    pub enumeration: u64,
    /// Terms the floating-point character sum may visit.
    pub complex: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { enumeration: DEFAULT_ENUMERATION_BUDGET, complex: DEFAULT_COMPLEX_BUDGET }
    }
}

/// `(-1)^{n-1} (q;q)_{n-1} q^{C(k,2)} prod_{i=k}^{n-1} (q^i - 1)` over any scalar.
pub fn closed_form<T: Scalar>(n: usize, k: usize, q: &T) -> T {
    let tail = (k..n).fold(T::one(), |acc, i| acc * (pow(q, i) - T::one()));
    sign::<T>(n - 1) * q_factorial(q, n - 1) * pow(q, binom2(k)) * tail
}

/// `(-1)^{2n-1} q^{-n^2} sum_r (q;q)_{2n-r-1} g_{n,r,k}` over any scalar.
///
/// Intermediates grow like `q^{n^2} (q;q)_{2n-1}`, so fixed-width scalars
/// overflow quickly; `i64` is safe only for `n <= 3, q <= 5`.
pub fn counting_formula<T: Scalar>(n: usize, k: usize, q: &T) -> Result<T> {
    let mut sum = T::zero();
    for r in 0..=n {
        sum = sum + q_factorial(q, 2 * n - r - 1) * g_difference(n, r, k, q)?;
    }
    div_exact(&(sign::<T>(2 * n - 1) * sum), &pow(q, n * n), || {
        format!("counting formula n = {n}, k = {k}")
    })
}

pub fn dim_closed(req: &DimRequest) -> ExactInt {
    closed_form(req.n, req.k, &req.q_exact())
}

pub fn dim_from_counts(req: &DimRequest) -> Result<ExactInt> {
    counting_formula(req.n, req.k, &req.q_exact())
}

/// Dimension from raw census counts: `q^{-n^2} sum_r Theta(r) (f^0_r - f^1_r)`,
/// after checking that `f^beta_r` does not depend on `beta != 0`.
pub fn dimension_from_census(census: &RankTraceCensus) -> Result<ExactInt> {
    if let Some((r, beta)) = census.beta_dependence() {
        return Err(Error::internal(format!(
            "census count at rank {r} differs between trace 1 and trace index {beta}"
        )));
    }
    let n = census.n;
    let q = BigInt::from(census.q());
    let mut sum = BigInt::zero();
    for r in 0..=n {
        sum += block_unipotent_char_value(n, r, &q)? * census.difference(r);
    }
    div_exact(&sum, &pow(&q, n * n), || format!("census dimension n = {n}, k = {}", census.k))
}

pub fn dim_from_census(req: &DimRequest, budget: u64) -> Result<ExactInt> {
    let field = req.field()?;
    dimension_from_census(&enumerate_census(req.n, req.k, &field, budget)?)
}

/// [`dim_from_census`] for the character `psi_A` of an arbitrary `A`.
pub fn dim_from_census_against(a: &FqMatrix, field: &FqField, budget: u64) -> Result<ExactInt> {
    if a.size() == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    dimension_from_census(&enumerate_census_against(a, field, budget)?)
}

/// Literal character sum `q^{-n^2} sum_X Theta(u_X) conj(psi_0(tr(A_k X)))`.
pub fn dim_complex(req: &DimRequest, budget: u64) -> Result<f64> {
    let field = req.field()?;
    dim_complex_twisted(req, &field, FqElem::ONE, budget)
}

/// [`dim_complex`] with the additive character `x -> psi_0(lambda x)`.
pub fn dim_complex_twisted(req: &DimRequest, field: &FqField, lambda: FqElem, budget: u64) -> Result<f64> {
    if lambda.is_zero() {
        return Err(Error::param("the additive character must be nontrivial (lambda != 0)"));
    }
    let (n, k) = (req.n, req.k);
    let q = field.order();
    let terms = num_traits::pow(BigInt::from(q), n * n);
    let terms = match terms.to_u64() {
        Some(t) if t <= budget => t,
        _ => {
            return Err(Error::resource(
                format!("complex character sum over M({n}, F_{q})"),
                format!("{terms} terms"),
                format!("{budget} terms"),
            ))
        }
    };
    let q_exact = BigInt::from(q);
    let theta: Vec<f64> = (0..=n)
        .map(|r| {
            block_unipotent_char_value(n, r, &q_exact)
                .map(|v| v.to_f64().expect("character value fits in f64"))
        })
        .collect::<Result<_>>()?;
    let p = field.characteristic() as f64;
    let psi_conj: Vec<Complex64> = field
        .elements()
        .map(|x| {
            let tr = field.absolute_trace(field.mul(lambda, x)) as f64;
            Complex64::from_polar(1.0, -2.0 * PI * tr / p)
        })
        .collect();

    let mut x = FqMatrix::zeros(n);
    let mut scratch = vec![FqElem::ZERO; n * n];
    let mut sum = Complex64::new(0.0, 0.0);
    for code in 0..terms {
        let mut c = code as usize;
        for i in (0..n).rev() {
            for j in (0..n).rev() {
                x.set(i, j, FqElem((c % q) as u16));
                c /= q;
            }
        }
        scratch.copy_from_slice(x.entries());
        let rank = crate::ffmat::rank_in_place(&mut scratch, n, field);
        sum += psi_conj[x.trace_pairing(k, field).index()] * theta[rank];
    }
    Ok(sum.re / (terms as f64))
}

pub fn multiplicity(req: &DimRequest) -> ExactInt {
    dim_closed(req)
}

/// Runs one method and wraps the result in a report.
pub fn compute(req: &DimRequest, method: Method, budgets: &Budgets, timed: bool) -> Result<DimReport> {
    let start = Instant::now();
    let value = match method {
        Method::Closed => DimValue::Exact(dim_closed(req)),
        Method::Counts => DimValue::Exact(dim_from_counts(req)?),
        Method::Census => DimValue::Exact(dim_from_census(req, budgets.enumeration)?),
        Method::Complex => DimValue::Approx(dim_complex(req, budgets.complex)?),
    };
    Ok(DimReport {
        request: *req,
        method,
        value,
        elapsed: timed.then(|| start.elapsed()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRow {
    pub k: usize,
    /// `a(n, k, q)`: characters of `N` in the orbit of `psi_{A_k}`.
    pub orbit_size: ExactInt,
    pub dim: ExactInt,
    pub product: ExactInt,
}

/// `pi|_N` split into orbit isotypic parts; `total = dim pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTable {
    pub n: usize,
    pub q: ExactInt,
    pub rows: Vec<DecompositionRow>,
    pub total: ExactInt,
}

/// `dim pi = prod_{i=1}^{2n-1} (q^i - 1)`.
pub fn cuspidal_dimension<T: Scalar>(n: usize, q: &T) -> T {
    (1..2 * n).fold(T::one(), |acc, i| acc * (pow(q, i) - T::one()))
}

/// Builds the table from closed forms and checks
/// `sum_k a(n,k,q) dim_k = prod_{i=1}^{2n-1} (q^i - 1)`.
pub fn decomposition_table(n: usize, q: &ExactInt) -> Result<DecompositionTable> {
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    if *q < BigInt::from(2) {
        return Err(Error::param(format!("q = {q} must be at least 2")));
    }
    let mut rows = Vec::with_capacity(n + 1);
    let mut total = BigInt::zero();
    for k in 0..=n {
        let orbit_size = count_rank_matrices(n, k as i64, q)?;
        let dim = closed_form(n, k, q);
        let product = &orbit_size * &dim;
        total += &product;
        rows.push(DecompositionRow { k, orbit_size, dim, product });
    }
    let expected = cuspidal_dimension(n, q);
    if total != expected {
        return Err(Error::internal(format!(
            "decomposition total {total} != dim pi = {expected} at n = {n}, q = {q}"
        )));
    }
    Ok(DecompositionTable { n, q: q.clone(), rows, total })
}

/// Checks table rows against exhaustive enumeration: orbit sizes against the
/// census rank totals, dimensions against [`dim_from_census`].
pub fn cross_check_table(table: &DecompositionTable, field: &FqField, budget: u64) -> Result<()> {
    if BigInt::from(field.order()) != table.q {
        return Err(Error::param(format!("field order {} does not match table q = {}", field.order(), table.q)));
    }
    for row in &table.rows {
        let census = enumerate_census(table.n, row.k, field, budget)?;
        if census.rank_total(row.k) != row.orbit_size {
            return Err(Error::internal(format!(
                "orbit size a({}, {}) = {} but census counts {}",
                table.n,
                row.k,
                row.orbit_size,
                census.rank_total(row.k)
            )));
        }
        let dim = dimension_from_census(&census)?;
        if dim != row.dim {
            return Err(Error::internal(format!(
                "row k = {}: closed form {} but census gives {dim}",
                row.k, row.dim
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::make_field;

    fn big(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn req(n: usize, k: usize, q: u64) -> DimRequest {
        DimRequest::new(n, k, q).unwrap()
    }

    #[test]
    fn closed_examples() {
        for q in [2, 3, 4, 5, 7] {
            assert_eq!(dim_closed(&req(1, 1, q)), big(1));
            for n in 1..5 {
                assert_eq!(dim_closed(&req(n, 0, q)), big(0));
            }
        }
        assert_eq!(dim_closed(&req(2, 1, 2)), big(1));
        assert_eq!(dim_closed(&req(2, 2, 2)), big(2));
        assert_eq!(dim_closed(&req(3, 2, 2)), big(18));
        assert_eq!(dim_closed(&req(2, 1, 4)), big(9));
    }

    #[test]
    fn closed_form_is_scalar_generic() {
        assert_eq!(closed_form(3, 2, &2i64), 18);
        assert_eq!(closed_form(3, 2, &2.0f64), 18.0);
        assert_eq!(BigInt::from(closed_form(4, 3, &5i128)), closed_form(4, 3, &big(5)));
    }

    #[test]
    fn counts_examples() {
        assert_eq!(dim_from_counts(&req(1, 1, 3)).unwrap(), big(1));
        assert_eq!(dim_from_counts(&req(2, 2, 2)).unwrap(), big(2));
        for n in 1..5 {
            assert_eq!(dim_from_counts(&req(n, 0, 3)).unwrap(), big(0));
        }
    }

    #[test]
    fn census_examples() {
        assert_eq!(dim_from_census(&req(1, 1, 2), 1000).unwrap(), big(1));
        assert_eq!(dim_from_census(&req(2, 1, 3), 1000).unwrap(), big(4));
        assert_eq!(dim_from_census(&req(3, 2, 2), 1000).unwrap(), big(18));
        assert!(matches!(dim_from_census(&req(3, 2, 2), 511), Err(Error::Resource { .. })));
    }

    #[test]
    fn census_rejects_beta_dependence() {
        let mut census = enumerate_census(2, 1, &make_field(3, 1).unwrap(), 100).unwrap();
        census.counts[1][2] += 1;
        assert!(matches!(dimension_from_census(&census), Err(Error::Internal(_))));
    }

    #[test]
    fn complex_examples() {
        assert!((dim_complex(&req(1, 1, 2), 100).unwrap() - 1.0).abs() < 1e-6);
        assert!((dim_complex(&req(2, 2, 2), 100).unwrap() - 2.0).abs() < 1e-6);
        assert!((dim_complex(&req(2, 1, 4), 1000).unwrap() - 9.0).abs() < 1e-6);
        assert!(dim_complex(&req(2, 1, 4), 255).is_err());
    }

    #[test]
    fn complex_is_independent_of_additive_character() {
        for (n, q) in [(2, 3), (2, 4), (2, 5)] {
            let f = make_field_for(q);
            for k in 0..=n {
                let r = req(n, k, q);
                let expected = dim_closed(&r).to_f64().unwrap();
                for lambda in f.elements().skip(1) {
                    let v = dim_complex_twisted(&r, &f, lambda, 1 << 20).unwrap();
                    assert!((v - expected).abs() < 1e-6, "n={n} k={k} q={q} lambda={lambda:?}: {v}");
                }
            }
        }
    }

    fn make_field_for(q: u64) -> FqField {
        let (p, e) = prime_power(q).unwrap();
        make_field(p, e).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&req(1, 1, 7)), big(1));
        assert_eq!(multiplicity(&req(3, 0, 2)), big(0));
        assert_eq!(multiplicity(&req(2, 2, 3)), big(6));
        assert_eq!(dim_from_census(&req(2, 2, 3), 100).unwrap(), big(6));
    }

    #[test]
    fn decomposition_examples() {
        for q in [2, 3, 5] {
            let t = decomposition_table(1, &big(q)).unwrap();
            assert_eq!(t.rows[0].product, big(0));
            assert_eq!((t.rows[1].orbit_size.clone(), t.rows[1].dim.clone()), (big(q - 1), big(1)));
            assert_eq!(t.total, big(q - 1));
        }
        let t = decomposition_table(2, &big(2)).unwrap();
        let sizes: Vec<_> = t.rows.iter().map(|r| r.orbit_size.clone()).collect();
        let dims: Vec<_> = t.rows.iter().map(|r| r.dim.clone()).collect();
        assert_eq!(sizes, vec![big(1), big(9), big(6)]);
        assert_eq!(dims, vec![big(0), big(1), big(2)]);
        assert_eq!(t.total, big(21));
        assert_eq!(decomposition_table(3, &big(2)).unwrap().total, big(9765));
    }

    #[test]
    fn decomposition_cross_checks_against_census() {
        for (n, q) in [(2, 2), (3, 2), (2, 3)] {
            let t = decomposition_table(n, &big(q as i64)).unwrap();
            cross_check_table(&t, &make_field_for(q), 1 << 20).unwrap();
        }
    }

    #[test]
    fn request_validation() {
        assert!(DimRequest::new(0, 0, 2).is_err());
        assert!(DimRequest::new(2, 3, 2).is_err());
        assert!(DimRequest::new(2, 1, 6).is_err());
        assert!(DimRequest::with_field(2, 1, 4, 1).is_err());
        assert_eq!(DimRequest::with_field(2, 1, 2, 2).unwrap(), req(2, 1, 4));
    }

    #[test]
    fn report_invariants() {
        let budgets = Budgets::default();
        for method in Method::ALL {
            for k in 0..=2 {
                let report = compute(&req(2, k, 3), method, &budgets, false).unwrap();
                assert!(report.satisfies_invariants(), "{report:?}");
                assert!(report.elapsed.is_none());
            }
        }
        assert_eq!("census".parse::<Method>().unwrap(), Method::Census);
        assert!("all".parse::<Method>().is_err());
    }
}
