use crate::scalar::pow;
use crate::{ExactInt, Rational, Result};

use super::{
    alternating_sum_identity, chu_vandermonde_admissible, chu_vandermonde_check,
    count_rank_matrices, euler_congruence_check, g_difference, gaussian_binomial, hazan_check,
    landsberg_rank_count, pochhammer_shift_check, qbinomial_congruence_check,
};

/// Result of one identity family swept over its parameter grid at a fixed `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub identity: &'static str,
    pub q: i64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Sweep {
    outcome: IdentityOutcome,
}

impl Sweep {
    fn new(identity: &'static str, q: i64) -> Self {
        Sweep {
            outcome: IdentityOutcome { identity, q, cases: 0, failures: Vec::new() },
        }
    }

    fn record(&mut self, inputs: impl FnOnce() -> String, verdict: Result<bool>) {
        self.outcome.cases += 1;
        match verdict {
            Ok(true) => {}
            Ok(false) => self.outcome.failures.push(format!("{} (mismatch)", inputs())),
            Err(e) => self.outcome.failures.push(format!("{} ({e})", inputs())),
        }
    }
}

fn chu_vandermonde_grid(q: i64) -> Vec<Rational> {
    let r = |n: i64, d: i64| Rational::new(ExactInt::from(n), ExactInt::from(d));
    let mut grid = vec![
        r(2, 1), r(-1, 1), r(1, 2), r(3, 2), r(-5, 3), r(7, 5), r(3, 1),
        r(-2, 1), r(1, 3), r(-1, 2), r(q, 1), r(q * q, 1), r(1, q),
    ];
    grid.sort();
    grid.dedup();
    grid
}

/// Sweeps every identity family over its standard grid at each `q` in `q_points`.
///
/// Families and ranges:
/// - `gaussian_symmetry`: `[k i] = [k k-i]` for `k <= 8`
/// - `landsberg`: cleared rank count equals the literal formula, and ranks sum to `q^{n^2}`, `n <= 6`
/// - `g_difference`: direct and reindexed sums agree for `n <= 5`, all `r, k`
/// - `pochhammer_shift`: `a in -2..=3`, `0 <= k <= n <= 6`
/// - `chu_vandermonde`: `i <= 5` over a 13x13 rational grid, singular points skipped
/// - `hazan`: `n <= 5`, `2n <= t <= 2n+3`
/// - `alternating_sum`: `k <= 8`, `a in {-3..3, q, q^2}`
/// - `euler`, `qbinomial` (`b in {2,3,-1}`): `n <= 6`, `n+1 <= M <= n+4`
pub fn identity_suite(q_points: &[i64]) -> Vec<IdentityOutcome> {
    let mut out = Vec::new();
    for &q_int in q_points {
        let q = ExactInt::from(q_int);
        let q_rat = Rational::from_integer(q.clone());

        let mut s = Sweep::new("gaussian_symmetry", q_int);
        for k in 0..=8usize {
            for i in 0..=k {
                let verdict = gaussian_binomial(k, i as i64, &q)
                    .and_then(|lo| Ok(lo == gaussian_binomial(k, (k - i) as i64, &q)?));
                s.record(|| format!("k={k} i={i}"), verdict);
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("landsberg", q_int);
        for n in 0..=6usize {
            let mut total = ExactInt::from(0);
            for r in 0..=n as i64 {
                let verdict = count_rank_matrices(n, r, &q).and_then(|cleared| {
                    total += &cleared;
                    Ok(Rational::from_integer(cleared) == landsberg_rank_count(n, r, &q_rat)?)
                });
                s.record(|| format!("n={n} r={r}"), verdict);
            }
            s.record(|| format!("n={n} total"), Ok(total == pow(&q, n * n)));
        }
        out.push(s.outcome);

        let mut s = Sweep::new("g_difference", q_int);
        for n in 0..=5usize {
            for r in 0..=n {
                for k in 0..=n {
                    s.record(|| format!("n={n} r={r} k={k}"), g_difference(n, r, k, &q).map(|_| true));
                }
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("pochhammer_shift", q_int);
        for a in -2..=3i64 {
            for n in 0..=6usize {
                for k in 0..=n {
                    let verdict = pochhammer_shift_check(&ExactInt::from(a), &q, n, k);
                    s.record(|| format!("a={a} n={n} k={k}"), verdict);
                }
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("chu_vandermonde", q_int);
        let grid = chu_vandermonde_grid(q_int);
        for i in 0..=5usize {
            for b in &grid {
                for c in &grid {
                    if chu_vandermonde_admissible(i, b, c, &q_rat).is_err() {
                        continue;
                    }
                    let verdict = chu_vandermonde_check(i, b, c, &q_rat);
                    s.record(|| format!("i={i} b={b} c={c}"), verdict);
                }
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("hazan", q_int);
        for n in 0..=5usize {
            for t in 2 * n..=2 * n + 3 {
                s.record(|| format!("n={n} t={t}"), hazan_check(n, t, &q));
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("alternating_sum", q_int);
        let mut a_values: Vec<i64> = (-3..=3).collect();
        a_values.extend([q_int, q_int * q_int]);
        for k in 0..=8usize {
            for &a in &a_values {
                let verdict = alternating_sum_identity(k, &ExactInt::from(a), &q).map(|(l, r)| l == r);
                s.record(|| format!("k={k} a={a}"), verdict);
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("euler", q_int);
        for n in 0..=6usize {
            for m in n + 1..=n + 4 {
                s.record(|| format!("n={n} M={m}"), euler_congruence_check(n, m, &q));
            }
        }
        out.push(s.outcome);

        let mut s = Sweep::new("qbinomial", q_int);
        for b in [2i64, 3, -1] {
            for n in 0..=6usize {
                for m in n + 1..=n + 4 {
                    let verdict = qbinomial_congruence_check(n, &ExactInt::from(b), m, &q);
                    s.record(|| format!("b={b} n={n} M={m}"), verdict);
                }
            }
        }
        out.push(s.outcome);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_at_small_q() {
        let outcomes = identity_suite(&[2, 3]);
        assert_eq!(outcomes.len(), 18);
        for o in &outcomes {
            assert!(o.passed(), "{} at q={}: {:?}", o.identity, o.q, o.failures);
            assert!(o.cases > 0, "{} ran no cases", o.identity);
        }
    }

    #[test]
    fn chu_vandermonde_sweep_covers_enough_points() {
        // degree bound 2i in each of b, c; the deduplicated grid has more than 2*5 values
        let outcomes = identity_suite(&[5]);
        let cv = outcomes.iter().find(|o| o.identity == "chu_vandermonde").unwrap();
        assert!(cv.cases > 500, "only {} admissible cases", cv.cases);
    }
}
