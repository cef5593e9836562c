use std::ops::Mul;

use crate::Scalar;

/// Polynomial in a formal variable `x`, truncated above a fixed degree.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedPoly<T> {
    /// The constant 1 with degree bound `max_degree`.
    pub fn one(max_degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); max_degree + 1];
        coeffs[0] = T::one();
        TruncatedPoly { coeffs }
    }

    /// Coefficients from degree 0 upward; zero-padded or cut to the bound.
    pub fn from_coeffs(mut coeffs: Vec<T>, max_degree: usize) -> Self {
        coeffs.resize(max_degree + 1, T::zero());
        TruncatedPoly { coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Multiply in place by `(1 + c x)`.
    pub fn mul_linear(&mut self, c: &T) {
        for d in (1..self.coeffs.len()).rev() {
            let shifted = self.coeffs[d - 1].clone() * c.clone();
            self.coeffs[d] = self.coeffs[d].clone() + shifted;
        }
    }

    /// `prod_{i=0}^{factors-1} (1 - b q^i x)`, the first `factors` factors of
    /// `(bx;q)_inf`.
    pub fn pochhammer_product(b: &T, q: &T, factors: usize, max_degree: usize) -> Self {
        let mut poly = Self::one(max_degree);
        let mut c = -b.clone();
        for _ in 0..factors {
            poly.mul_linear(&c);
            c = c * q.clone();
        }
        poly
    }
}

impl<T: Scalar> Mul for &TruncatedPoly<T> {
    type Output = TruncatedPoly<T>;

    fn mul(self, rhs: &TruncatedPoly<T>) -> TruncatedPoly<T> {
        let bound = self.max_degree().min(rhs.max_degree());
        let mut out = vec![T::zero(); bound + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(bound + 1) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(bound + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedPoly { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_three_factor_product() {
        // (1-x)(1-2x)(1-4x) = 1 - 7x + 14x^2 - 8x^3
        let p = TruncatedPoly::pochhammer_product(&1i64, &2, 3, 3);
        assert_eq!(p.coeffs(), &[1, -7, 14, -8]);
        let cut = TruncatedPoly::pochhammer_product(&1i64, &2, 3, 1);
        assert_eq!(cut.coeffs(), &[1, -7]);
    }

    #[test]
    fn product_truncates() {
        let a = TruncatedPoly::from_coeffs(vec![1i64, 1], 2);
        let sq = &a * &a;
        assert_eq!(sq.coeffs(), &[1, 2, 1]);
        let cube = &sq * &a;
        assert_eq!(cube.coeffs(), &[1, 3, 3]);
        assert_eq!(cube.coeff(7), 0);
    }

    #[test]
    fn mul_linear_matches_general_product() {
        let mut p = TruncatedPoly::from_coeffs(vec![3i64, -1, 4, 1], 3);
        let q = &p * &TruncatedPoly::from_coeffs(vec![1, 5], 3);
        p.mul_linear(&5);
        assert_eq!(p, q);
    }
}
