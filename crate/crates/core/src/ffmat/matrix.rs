use rand::Rng;

use crate::{Error, Result};

use super::field::{FqElem, FqField};

/// Square matrix over an [`FqField`], row-major.
///
/// The field is passed to every operation rather than stored, so matrices are
/// plain values; mixing fields is the caller's responsibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<FqElem>,
}

impl FqMatrix {
    pub fn zeros(n: usize) -> Self {
        FqMatrix { n, entries: vec![FqElem::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::rank_pattern(n, n)
    }

    /// `A_k = diag(I_k, 0)`; `A_0` is the zero matrix.
    pub fn rank_pattern(n: usize, k: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..k.min(n) {
            m.entries[i * n + i] = FqElem::ONE;
        }
        m
    }

    pub fn from_entries(n: usize, entries: Vec<FqElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::param(format!(
                "{} entries do not form a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(FqMatrix { n, entries })
    }

    /// Rows of integers reduced into the prime subfield.
    pub fn from_int_rows(field: &FqField, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::param("matrix rows must all have length n"));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_int(v))).collect();
        Ok(FqMatrix { n, entries })
    }

    pub fn random(field: &FqField, n: usize, rng: &mut impl Rng) -> Self {
        let q = field.order() as u16;
        let entries = (0..n * n).map(|_| FqElem(rng.gen_range(0..q))).collect();
        FqMatrix { n, entries }
    }

    /// Uniform over `GL(n, F_q)` by rejection.
    pub fn random_invertible(field: &FqField, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let m = Self::random(field, n, rng);
            if m.rank(field) == n {
                return m;
            }
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &FqMatrix, field: &FqField) -> FqMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FqElem::ZERO;
                for l in 0..n {
                    acc = field.add(acc, field.mul(self.get(i, l), rhs.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn rank(&self, field: &FqField) -> usize {
        let mut scratch = self.entries.clone();
        rank_in_place(&mut scratch, self.n, field)
    }

    /// `tr(A_k X) = X_11 + ... + X_kk`.
    pub fn trace_pairing(&self, k: usize, field: &FqField) -> FqElem {
        (0..k.min(self.n)).fold(FqElem::ZERO, |acc, i| field.add(acc, self.get(i, i)))
    }

    /// `tr(A X)` for an arbitrary character matrix `A`.
    pub fn trace_against(&self, a: &FqMatrix, field: &FqField) -> FqElem {
        let n = self.n;
        let mut acc = FqElem::ZERO;
        for i in 0..n {
            for j in 0..n {
                acc = field.add(acc, field.mul(a.get(i, j), self.get(j, i)));
            }
        }
        acc
    }

    pub fn inverse(&self, field: &FqField) -> Option<FqMatrix> {
        let n = self.n;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let scale = field.inv(work.get(col, col))?;
            work.scale_row(col, scale, field);
            inv.scale_row(col, scale, field);
            for r in 0..n {
                let f = work.get(r, col);
                if r != col && !f.is_zero() {
                    let c = field.neg(f);
                    work.add_row_multiple(r, col, c, field);
                    inv.add_row_multiple(r, col, c, field);
                }
            }
        }
        Some(inv)
    }

    /// Invertible `(u, v)` with `u * A_r * v = self`, `r = rank(self)`.
    ///
    /// `u` undoes the row reduction of `self` to reduced echelon form `R`;
    /// `v` stacks the nonzero rows of `R` over unit vectors for the non-pivot
    /// columns, so that `R = A_r * v`.
    pub fn rank_factorization(&self, field: &FqField) -> (FqMatrix, FqMatrix) {
        let n = self.n;
        let mut work = self.clone();
        // invariant: self = u * work
        let mut u = Self::identity(n);
        let mut pivots = Vec::new();
        for col in 0..n {
            let row = pivots.len();
            let Some(pivot) = (row..n).find(|&r| !work.get(r, col).is_zero()) else {
                continue;
            };
            work.swap_rows(row, pivot);
            u.swap_cols(row, pivot);
            let lead = work.get(row, col);
            work.scale_row(row, field.inv(lead).expect("nonzero pivot"), field);
            u.scale_col(row, lead, field);
            for r in 0..n {
                let f = work.get(r, col);
                if r != row && !f.is_zero() {
                    work.add_row_multiple(r, row, field.neg(f), field);
                    // undo row_r -= f row_p on the right of u
                    u.add_col_multiple(row, r, f, field);
                }
            }
            pivots.push(col);
        }
        let mut v = Self::zeros(n);
        for (i, _) in pivots.iter().enumerate() {
            for j in 0..n {
                v.set(i, j, work.get(i, j));
            }
        }
        let free = (0..n).filter(|c| !pivots.contains(c));
        for (i, c) in (pivots.len()..n).zip(free) {
            v.set(i, c, FqElem::ONE);
        }
        (u, v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.entries.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.n {
                self.entries.swap(i * self.n + a, i * self.n + b);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: FqElem, field: &FqField) {
        for j in 0..self.n {
            let v = self.get(r, j);
            self.set(r, j, field.mul(v, c));
        }
    }

    fn scale_col(&mut self, col: usize, c: FqElem, field: &FqField) {
        for i in 0..self.n {
            let v = self.get(i, col);
            self.set(i, col, field.mul(v, c));
        }
    }

    /// `row_dst += c * row_src`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: FqElem, field: &FqField) {
        for j in 0..self.n {
            let v = field.add(self.get(dst, j), field.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col_dst += c * col_src`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: FqElem, field: &FqField) {
        for i in 0..self.n {
            let v = field.add(self.get(i, dst), field.mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }
}

/// Rank by Gaussian elimination, destroying `m` (row-major `n x n`).
pub(crate) fn rank_in_place(m: &mut [FqElem], n: usize, field: &FqField) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in col..n {
                m.swap(pivot * n + j, rank * n + j);
            }
        }
        let inv = field.inv(m[rank * n + col]).expect("nonzero pivot");
        for r in rank + 1..n {
            let f = m[r * n + col];
            if f.is_zero() {
                continue;
            }
            let c = field.neg(field.mul(f, inv));
            for j in col..n {
                let v = field.mul(c, m[rank * n + j]);
                m[r * n + j] = field.add(m[r * n + j], v);
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(FqMatrix::zeros(3).rank(&f2), 0);
        assert_eq!(FqMatrix::identity(4).rank(&f2), 4);
        let ones = FqMatrix::from_int_rows(&f2, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(ones.rank(&f2), 1);
        let f3 = make_field(3, 1).unwrap();
        // rows sum to zero mod 3
        let m = FqMatrix::from_int_rows(&f3, &[&[1, 2, 0], &[2, 0, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(m.rank(&f3), 2);
        for k in 0..=4 {
            assert_eq!(FqMatrix::rank_pattern(4, k).rank(&f3), k);
        }
    }

    #[test]
    fn trace_examples() {
        let f5 = make_field(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = FqMatrix::random(&f5, 3, &mut rng);
        assert_eq!(x.trace_pairing(0, &f5), FqElem::ZERO);
        assert_eq!(FqMatrix::identity(3).trace_pairing(3, &f5), f5.from_int(3));
        let m = FqMatrix::from_int_rows(&f5, &[&[4, 1], &[2, 3]]).unwrap();
        assert_eq!(m.trace_pairing(1, &f5), f5.from_int(4));
        for k in 0..=3 {
            let a = FqMatrix::rank_pattern(3, k);
            assert_eq!(x.trace_against(&a, &f5), x.trace_pairing(k, &f5));
        }
    }

    #[test]
    fn rank_factorization_of_nilpotent() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, e).unwrap();
            let x = FqMatrix::from_int_rows(&f, &[&[0, 1], &[0, 0]]).unwrap();
            let (u, v) = x.rank_factorization(&f);
            assert_eq!(u.rank(&f), 2);
            assert_eq!(v.rank(&f), 2);
            assert_eq!(u.mul(&FqMatrix::rank_pattern(2, 1), &f).mul(&v, &f), x);
        }
    }

    #[test]
    fn rank_factorization_of_rank_patterns() {
        let f = make_field(3, 1).unwrap();
        for k in 0..=3 {
            let a = FqMatrix::rank_pattern(3, k);
            let (u, v) = a.rank_factorization(&f);
            assert_eq!(u.mul(&a, &f).mul(&v, &f), a);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f9 = make_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = FqMatrix::random_invertible(&f9, 3, &mut rng);
            let inv = g.inverse(&f9).unwrap();
            assert_eq!(g.mul(&inv, &f9), FqMatrix::identity(3));
        }
        assert!(FqMatrix::zeros(2).inverse(&f9).is_none());
    }

    #[test]
    fn from_entries_checks_shape() {
        assert!(FqMatrix::from_entries(2, vec![FqElem::ZERO; 3]).is_err());
    }
}
