use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::{Error, ExactInt, Result};

use super::field::{FqElem, FqField};
use super::matrix::{rank_in_place, FqMatrix};

/// Default cap on the number of matrices an exhaustive enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

/// `counts[r][alpha]`: the number of `X` in `M(n, F_q)` with `rank X = r` and
/// `tr(A X) = alpha`, where `A` is the character matrix (usually `A_k`).
///
/// `alpha` is indexed by [`FqElem::index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTraceCensus {
    pub n: usize,
    /// Rank of the character matrix.
    pub k: usize,
    pub p: u32,
    pub e: u32,
    pub counts: Vec<Vec<ExactInt>>,
}

impl RankTraceCensus {
    pub fn q(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    pub fn total(&self) -> ExactInt {
        self.counts.iter().flatten().sum()
    }

    /// Matrices of rank `r` regardless of trace.
    pub fn rank_total(&self, r: usize) -> ExactInt {
        self.counts.get(r).map_or_else(BigInt::zero, |row| row.iter().sum())
    }

    pub fn count(&self, r: usize, alpha: FqElem) -> ExactInt {
        self.counts
            .get(r)
            .and_then(|row| row.get(alpha.index()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `f^0 - f^1` at rank `r`.
    pub fn difference(&self, r: usize) -> ExactInt {
        self.count(r, FqElem::ZERO) - self.count(r, FqElem::ONE)
    }

    /// First `(r, beta)` with `counts[r][beta] != counts[r][1]` for nonzero `beta`.
    pub fn beta_dependence(&self) -> Option<(usize, usize)> {
        self.counts.iter().enumerate().find_map(|(r, row)| {
            row.iter()
                .enumerate()
                .skip(2)
                .find(|(_, c)| *c != &row[1])
                .map(|(beta, _)| (r, beta))
        })
    }

    /// Total matrices on each side, `sum_{r,alpha} counts = q^{n^2}`.
    pub fn expected_total(&self) -> ExactInt {
        num_traits::pow(BigInt::from(self.q()), self.n * self.n)
    }

    /// Adds another census over the same `(n, k, q)`.
    pub fn absorb(&mut self, other: &RankTraceCensus) -> Result<()> {
        if (self.n, self.k, self.q()) != (other.n, other.k, other.q()) {
            return Err(Error::param("cannot merge censuses over different (n, k, q)"));
        }
        for (row, orow) in self.counts.iter_mut().zip(&other.counts) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        Ok(())
    }
}

fn check_budget(n: usize, field: &FqField, budget: u64) -> Result<u64> {
    let required = num_traits::pow(BigInt::from(field.order()), n * n);
    match u64::try_from(&required) {
        Ok(count) if count <= budget => Ok(count),
        _ => Err(Error::resource(
            format!("exhaustive census of M({n}, F_{})", field.order()),
            format!("{required} matrices"),
            format!("{budget} matrices"),
        )),
    }
}

/// Exhaustive census against `A_k`.
pub fn enumerate_census(n: usize, k: usize, field: &FqField, budget: u64) -> Result<RankTraceCensus> {
    if k > n {
        return Err(Error::param(format!("character rank k = {k} exceeds n = {n}")));
    }
    let positions: Vec<(usize, FqElem)> = (0..k).map(|i| (i * n + i, FqElem::ONE)).collect();
    enumerate(n, k, &positions, field, budget)
}

/// Exhaustive census against an arbitrary character matrix `a`.
pub fn enumerate_census_against(a: &FqMatrix, field: &FqField, budget: u64) -> Result<RankTraceCensus> {
    let n = a.size();
    // tr(A X) = sum_{i,j} A_ij X_ji
    let mut positions = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = a.get(i, j);
            if !c.is_zero() {
                positions.push((j * n + i, c));
            }
        }
    }
    enumerate(n, a.rank(field), &positions, field, budget)
}

/// Partitions the matrix space by first row, tallies each block serially in
/// row-major odometer order, and merges by addition.
fn enumerate(
    n: usize,
    k: usize,
    trace_positions: &[(usize, FqElem)],
    field: &FqField,
    budget: u64,
) -> Result<RankTraceCensus> {
    check_budget(n, field, budget)?;
    let q = field.order();
    let empty = RankTraceCensus {
        n,
        k,
        p: field.characteristic(),
        e: field.degree(),
        counts: vec![vec![BigInt::zero(); q]; n + 1],
    };
    if n == 0 {
        let mut census = empty;
        census.counts[0][0] = BigInt::one();
        return Ok(census);
    }

    let first_rows = q.pow(n as u32);
    let tally_block = |row_code: usize| -> Vec<u64> {
        let mut tally = vec![0u64; (n + 1) * q];
        let mut x = vec![FqElem::ZERO; n * n];
        let mut code = row_code;
        for slot in x.iter_mut().take(n) {
            *slot = FqElem((code % q) as u16);
            code /= q;
        }
        let mut scratch = vec![FqElem::ZERO; n * n];
        loop {
            let trace = trace_positions
                .iter()
                .fold(FqElem::ZERO, |acc, &(pos, c)| field.add(acc, field.mul(c, x[pos])));
            scratch.copy_from_slice(&x);
            let rank = rank_in_place(&mut scratch, n, field);
            tally[rank * q + trace.index()] += 1;

            // odometer over rows 1..n, last entry fastest
            let mut pos = n * n;
            loop {
                if pos == n {
                    return tally;
                }
                pos -= 1;
                let next = x[pos].0 as usize + 1;
                if next < q {
                    x[pos] = FqElem(next as u16);
                    break;
                }
                x[pos] = FqElem::ZERO;
            }
        }
    };

    let tally = (0..first_rows)
        .into_par_iter()
        .map(tally_block)
        .reduce(
            || vec![0u64; (n + 1) * q],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let mut census = empty;
    for r in 0..=n {
        for alpha in 0..q {
            census.counts[r][alpha] = BigInt::from(tally[r * q + alpha]);
        }
    }
    Ok(census)
}

/// Serial reference enumeration with no partitioning; used to pin the
/// parallel merge.
pub fn enumerate_census_serial(n: usize, k: usize, field: &FqField, budget: u64) -> Result<RankTraceCensus> {
    check_budget(n, field, budget)?;
    let q = field.order();
    let mut census = RankTraceCensus {
        n,
        k,
        p: field.characteristic(),
        e: field.degree(),
        counts: vec![vec![BigInt::zero(); q]; n + 1],
    };
    let total = q.pow((n * n) as u32);
    for code in 0..total {
        let mut c = code;
        let mut entries = vec![FqElem::ZERO; n * n];
        for slot in entries.iter_mut().rev() {
            *slot = FqElem((c % q) as u16);
            c /= q;
        }
        let x = FqMatrix::from_entries(n, entries)?;
        let r = x.rank(field);
        census.counts[r][x.trace_pairing(k, field).index()] += 1;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::make_field;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn one_by_one_census() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let f = make_field(p, e).unwrap();
            let c = enumerate_census(1, 1, &f, 1000).unwrap();
            assert_eq!(c.count(0, FqElem::ZERO), big(1));
            assert_eq!(c.count(1, FqElem::ZERO), big(0));
            for alpha in f.elements().skip(1) {
                assert_eq!(c.count(1, alpha), big(1));
                assert_eq!(c.count(0, alpha), big(0));
            }
        }
    }

    #[test]
    fn two_by_two_over_f2() {
        let f2 = make_field(2, 1).unwrap();
        let c = enumerate_census(2, 1, &f2, 1000).unwrap();
        assert_eq!(c.count(1, FqElem::ZERO), big(5));
        assert_eq!(c.count(1, FqElem::ONE), big(4));
        let c2 = enumerate_census(2, 2, &f2, 1000).unwrap();
        assert_eq!(c2.rank_total(2), big(6));
        assert_eq!(c2.total(), big(16));
    }

    #[test]
    fn parallel_matches_serial() {
        for (n, p, e) in [(2, 3, 1), (3, 2, 1), (2, 2, 2)] {
            let f = make_field(p, e).unwrap();
            for k in 0..=n {
                let par = enumerate_census(n, k, &f, 1 << 20).unwrap();
                let ser = enumerate_census_serial(n, k, &f, 1 << 20).unwrap();
                assert_eq!(par, ser, "n={n} q={} k={k}", f.order());
            }
        }
    }

    #[test]
    fn against_rank_pattern_matches_direct() {
        let f3 = make_field(3, 1).unwrap();
        for k in 0..=2 {
            let direct = enumerate_census(2, k, &f3, 100).unwrap();
            let a = FqMatrix::rank_pattern(2, k);
            assert_eq!(enumerate_census_against(&a, &f3, 100).unwrap(), direct);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = make_field(2, 1).unwrap();
        let err = enumerate_census(4, 1, &f2, 65_535).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
        assert!(err.to_string().contains("65536 matrices"), "{err}");
        assert!(enumerate_census(4, 1, &f2, 65_536).is_ok());
    }

    #[test]
    fn zero_size_census() {
        let f2 = make_field(2, 1).unwrap();
        let c = enumerate_census(0, 0, &f2, 1).unwrap();
        assert_eq!(c.total(), big(1));
        assert_eq!(c.rank_total(0), big(1));
    }

    #[test]
    fn absorb_adds() {
        let f2 = make_field(2, 1).unwrap();
        let mut a = enumerate_census(2, 1, &f2, 100).unwrap();
        let b = a.clone();
        a.absorb(&b).unwrap();
        assert_eq!(a.total(), big(32));
        let other = enumerate_census(2, 2, &f2, 100).unwrap();
        assert!(a.absorb(&other).is_err());
    }
}
