//! Exact verification of the signed power-sum gap bound: for integers
//! `N > m > 0` and `p >= 3`, every `m`-term signed sum of powers of `p`
//! stays at distance at least `(p^(N-m) - 1)/(p - 1)` from
//! `(p^N - 1)/(p - 1)`.
//!
//! The minimum is found by exact branch-and-bound over sign/exponent
//! choices; all arithmetic is big-integer, so results are exact at any size.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_bigint::Sign;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub struct PowerGapQuery {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    /// Largest exponent searched (defaults to `n + 1`).
    pub h_bound: u32,
    /// Restrict exponents to `h >= 1` (the strict reading of "positive
    /// integers"); exponent 0 is admitted by default.
    pub positive_exponents: bool,
}

impl PowerGapQuery {
    pub fn new(p: u32, n: u32, m: u32) -> Self {
        Self {
            p,
            n,
            m,
            h_bound: n + 1,
            positive_exponents: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.p < 3 {
            return Err(Error::Domain(format!(
                "p must be >= 3 (the bound needs p > 1 + sqrt(2)), got {}",
                self.p
            )));
        }
        if !(self.m > 0 && self.m < self.n) {
            return Err(Error::Domain(format!(
                "need N > m > 0, got N={}, m={}",
                self.n, self.m
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerGapResult {
    /// Exact minimum of `|target - sum|`.
    pub min_value: BigInt,
    /// `(sign negative?, exponent)` terms attaining the minimum.
    pub witness: Vec<(bool, u32)>,
    /// `(p^(N-m) - 1)/(p - 1)`.
    pub bound: BigInt,
    /// `min_value >= bound`.
    pub holds: bool,
    /// `min_value == bound`.
    pub equality: bool,
}

fn repunit(p: u32, n: u32) -> BigInt {
    // (p^n - 1)/(p - 1) = 1 + p + ... + p^(n-1)
    let p = BigInt::from(p);
    let mut acc = BigInt::from(0);
    let mut pw = BigInt::from(1);
    for _ in 0..n {
        acc += &pw;
        pw *= &p;
    }
    acc
}

struct SearchState {
    powers: Vec<BigInt>,
    best: BigInt,
    witness: Vec<(bool, u32)>,
    current: Vec<(bool, u32)>,
}

/// Exact minimum of `|(p^N - 1)/(p - 1) - sum_i (-1)^(s_i) p^(h_i)|` over
/// all `m`-term signed power sums with exponents in the search window.
pub fn power_gap_min(q: &PowerGapQuery) -> Result<PowerGapResult> {
    q.validate()?;
    let min_exp = u32::from(q.positive_exponents);
    if q.h_bound < min_exp {
        return Err(Error::Domain("empty exponent window".into()));
    }
    let mut powers = Vec::with_capacity(q.h_bound as usize + 1);
    let mut pw = BigInt::from(1);
    for _ in 0..=q.h_bound {
        powers.push(pw.clone());
        pw *= BigInt::from(q.p);
    }
    power_gap_min_range(q, &powers, min_exp)
}

fn power_gap_min_range(
    q: &PowerGapQuery,
    powers: &[BigInt],
    min_exp: u32,
) -> Result<PowerGapResult> {
    let target = repunit(q.p, q.n);
    let bound = repunit(q.p, q.n - q.m);
    let mut st = SearchState {
        powers: powers.to_vec(),
        best: &target + BigInt::from(1) + &powers[q.h_bound as usize] * BigInt::from(q.m),
        witness: Vec::new(),
        current: Vec::new(),
    };
    search_from(&mut st, target, q.m, q.h_bound, min_exp);
    let holds = st.best >= bound;
    let equality = st.best == bound;
    Ok(PowerGapResult {
        min_value: st.best,
        witness: st.witness,
        bound,
        holds,
        equality,
    })
}

fn search_from(st: &mut SearchState, remaining: BigInt, terms_left: u32, max_exp: u32, min_exp: u32) {
    if terms_left == 0 {
        let gap = BigInt::from_biguint(Sign::Plus, remaining.magnitude().clone());
        if gap < st.best {
            st.best = gap;
            st.witness = st.current.clone();
        }
        return;
    }
    let cap = &st.powers[max_exp as usize] * BigInt::from(terms_left);
    let floor = BigInt::from_biguint(Sign::Plus, remaining.magnitude().clone()) - cap;
    if floor >= st.best {
        return;
    }
    for h in (min_exp..=max_exp).rev() {
        for neg in [false, true] {
            let term = if neg {
                -&st.powers[h as usize]
            } else {
                st.powers[h as usize].clone()
            };
            st.current.push((neg, h));
            search_from(st, &remaining - term, terms_left - 1, h, min_exp);
            st.current.pop();
        }
    }
}

/// Evaluate a witness exactly.
pub fn witness_value(p: u32, witness: &[(bool, u32)]) -> BigInt {
    let mut acc = BigInt::from(0);
    for &(neg, h) in witness {
        let term = BigInt::from(p).pow(h);
        if neg {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub min_value: String,
    pub bound: String,
    pub holds: bool,
    pub equality: bool,
    pub witness: Vec<(bool, u32)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub all_hold: bool,
    pub all_attained: bool,
}

/// Run the minimum for all `0 < m < N <= n_max`, `m <= m_max`; every cell
/// must satisfy the bound, with equality attained by the telescoping
/// witness `h_i = N - i`.
pub fn verify_lemma(p: u32, n_max: u32, m_max: u32, positive_exponents: bool) -> Result<SweepReport> {
    if p < 3 {
        return Err(Error::Domain(format!("p must be >= 3, got {p}")));
    }
    let cells: Vec<(u32, u32)> = (2..=n_max)
        .flat_map(|n| (1..n.min(m_max + 1)).map(move |m| (n, m)))
        .collect();
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(n, m)| {
            let mut q = PowerGapQuery::new(p, n, m);
            q.positive_exponents = positive_exponents;
            let r = power_gap_min(&q).expect("validated query");
            SweepRow {
                p,
                n,
                m,
                min_value: r.min_value.to_string(),
                bound: r.bound.to_string(),
                holds: r.holds,
                equality: r.equality,
                witness: r.witness,
            }
        })
        .collect();
    let all_hold = rows.iter().all(|r| r.holds);
    let all_attained = rows.iter().all(|r| r.equality);
    Ok(SweepReport {
        rows,
        all_hold,
        all_attained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle without pruning, for small windows.
    fn exhaustive_min(p: u32, n: u32, m: u32, h_bound: u32) -> BigInt {
        let target = repunit(p, n);
        let mut best: Option<BigInt> = None;
        // odometer over (sign, exponent) per term
        let choices = 2 * (h_bound as usize + 1);
        let mut idx = vec![0usize; m as usize];
        loop {
            let mut sum = BigInt::from(0);
            for &i in &idx {
                let h = (i / 2) as u32;
                let neg = i % 2 == 1;
                let t = BigInt::from(p).pow(h);
                if neg {
                    sum -= t;
                } else {
                    sum += t;
                }
            }
            let gap = (&target - &sum).magnitude().clone();
            let gap = BigInt::from_biguint(Sign::Plus, gap);
            best = Some(match best {
                None => gap,
                Some(b) => b.min(gap),
            });
            // increment odometer
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return best.unwrap();
                }
                idx[k] += 1;
                if idx[k] < choices {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn small_cases_match_exhaustive() {
        for (p, n, m) in [(3, 2, 1), (3, 3, 1), (3, 3, 2), (3, 4, 2), (4, 3, 1), (5, 3, 2)] {
            let q = PowerGapQuery::new(p, n, m);
            let r = power_gap_min(&q).unwrap();
            let want = exhaustive_min(p, n, m, q.h_bound);
            assert_eq!(r.min_value, want, "p={p} N={n} m={m}");
        }
    }

    #[test]
    fn frozen_examples() {
        let r = power_gap_min(&PowerGapQuery::new(3, 2, 1)).unwrap();
        assert_eq!(r.min_value, BigInt::from(1));
        assert_eq!(r.bound, BigInt::from(1));
        assert!(r.equality);
        let r = power_gap_min(&PowerGapQuery::new(3, 3, 1)).unwrap();
        assert_eq!(r.min_value, BigInt::from(4), "|13 - 9| = 4");
        assert_eq!(r.bound, BigInt::from(4));
    }

    #[test]
    fn witness_evaluates_to_min() {
        for (p, n, m) in [(3, 5, 2), (4, 6, 3), (5, 4, 2)] {
            let r = power_gap_min(&PowerGapQuery::new(p, n, m)).unwrap();
            let v = witness_value(p, &r.witness);
            let target = repunit(p, n);
            let gap = (&target - &v).magnitude().clone();
            assert_eq!(BigInt::from_biguint(Sign::Plus, gap), r.min_value);
            assert_eq!(r.witness.len(), m as usize);
        }
    }

    #[test]
    fn telescoping_witness_attains_bound() {
        // sum_{i=1..m} p^(N-i) leaves exactly (p^(N-m)-1)/(p-1)
        for (p, n, m) in [(3u32, 6u32, 3u32), (4, 5, 2), (5, 7, 4)] {
            let witness: Vec<(bool, u32)> = (1..=m).map(|i| (false, n - i)).collect();
            let v = witness_value(p, &witness);
            let target = repunit(p, n);
            assert_eq!(&target - &v, repunit(p, n - m));
        }
    }

    #[test]
    fn rejects_small_p() {
        assert!(power_gap_min(&PowerGapQuery::new(2, 3, 1)).is_err());
        assert!(verify_lemma(2, 5, 2, false).is_err());
    }

    #[test]
    fn rejects_bad_m() {
        assert!(power_gap_min(&PowerGapQuery::new(3, 3, 0)).is_err());
        assert!(power_gap_min(&PowerGapQuery::new(3, 3, 3)).is_err());
    }

    #[test]
    fn sweep_small() {
        let report = verify_lemma(3, 6, 3, false).unwrap();
        assert!(report.all_hold);
        assert!(report.all_attained);
        assert_eq!(
            report.rows.len(),
            (2..=6).map(|n: u32| (n - 1).min(3) as usize).sum::<usize>()
        );
    }

    #[test]
    fn positive_exponent_mode() {
        let mut q = PowerGapQuery::new(3, 4, 2);
        q.positive_exponents = true;
        let r = power_gap_min(&q).unwrap();
        assert!(r.witness.iter().all(|&(_, h)| h >= 1));
        assert!(r.holds);
    }

    #[test]
    fn wider_window_never_lowers_minimum() {
        for (p, n, m) in [(3u32, 5u32, 2u32), (4, 4, 2), (3, 6, 4)] {
            let base = power_gap_min(&PowerGapQuery::new(p, n, m)).unwrap();
            let mut q = PowerGapQuery::new(p, n, m);
            q.h_bound = n + 3;
            let wide = power_gap_min(&q).unwrap();
            assert_eq!(base.min_value, wide.min_value, "p={p} N={n} m={m}");
        }
    }
}
