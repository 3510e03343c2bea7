//! q-Pochhammer symbols, Gaussian binomials and extended binomials.
//!
//! The extended coefficient `[n, m]^+` agrees with the Gaussian binomial for
//! `n >= 0`; for `n < 0` it is
//! `(-1)^(n-m) q^(-((n-m)^2 + (n-m))/2) [-m-1, -n-1]` with `q -> 1/q`.
//! Both families are memoized process-wide; the tables only ever gain
//! entries and a lookup returns the same value a fresh computation would.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactpoly::{BiLaurent, ExactRational, UniLaurent};

type Memo = RwLock<HashMap<(i64, i64), Arc<UniLaurent>>>;

fn memo_lookup(memo: &'static OnceLock<Memo>, key: (i64, i64), f: impl FnOnce() -> UniLaurent) -> Arc<UniLaurent> {
    let table = memo.get_or_init(Default::default);
    if let Some(v) = table.read().expect("memo poisoned").get(&key) {
        return Arc::clone(v);
    }
    let value = Arc::new(f());
    let mut w = table.write().expect("memo poisoned");
    Arc::clone(w.entry(key).or_insert(value))
}

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`, with `(q)_0 = 1`.
pub fn qpoch(n: i64) -> Result<BiLaurent> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut p = UniLaurent::one();
    for k in 1..=n as usize {
        p.mul_one_minus_qk(k);
    }
    Ok(BiLaurent::from_uni(&p, 0, ExactRational::ZERO))
}

fn compute_qbin(n: i64, m: i64) -> UniLaurent {
    if !(n >= m && m >= 0) {
        return UniLaurent::zero();
    }
    let k = m.min(n - m);
    // step i holds [n-k+i, i] = prod_{j=n-k+1}^{n-k+i}(1-q^j) / (q)_i
    let mut p = UniLaurent::one();
    for i in 1..=k {
        p.mul_one_minus_qk((n - k + i) as usize);
        p.div_one_minus_qk(i as usize)
            .expect("Gaussian binomial quotient must be exact");
    }
    p
}

/// Dense Gaussian binomial `[n, m]`; zero unless `n >= m >= 0`.
pub fn qbin_dense(n: i64, m: i64) -> Arc<UniLaurent> {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    if !(n >= m && m >= 0) {
        return Arc::new(UniLaurent::zero());
    }
    if m == 0 || m == n {
        return Arc::new(UniLaurent::one());
    }
    memo_lookup(&MEMO, (n, m.min(n - m)), || compute_qbin(n, m))
}

/// Gaussian binomial `(q)_n / ((q)_{n-m} (q)_m)`; zero unless `n >= m >= 0`.
pub fn qbin(n: i64, m: i64) -> BiLaurent {
    BiLaurent::from_uni(&qbin_dense(n, m), 0, ExactRational::ZERO)
}

/// Whether `[n, m]^+` is nonzero: `m <= n` and (`m >= 0` or `n < 0`).
#[inline]
pub fn qbin_plus_nonzero(n: i64, m: i64) -> bool {
    m <= n && (m >= 0 || n < 0)
}

/// Dense extended binomial `[n, m]^+`.
pub fn qbin_plus_dense(n: i64, m: i64) -> Arc<UniLaurent> {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    if n >= 0 {
        return qbin_dense(n, m);
    }
    if !qbin_plus_nonzero(n, m) {
        return Arc::new(UniLaurent::zero());
    }
    memo_lookup(&MEMO, (n, m), || {
        let k = n - m;
        let shift = -(k * k + k) / 2;
        let base = qbin_dense(-m - 1, -n - 1).as_ref().clone().reflected().shifted(shift);
        if k % 2 == 0 {
            base
        } else {
            base.negated()
        }
    })
}

/// Extended q-binomial `[n, m]^+`, defined for all integers.
pub fn qbin_plus(n: i64, m: i64) -> BiLaurent {
    BiLaurent::from_uni(&qbin_plus_dense(n, m), 0, ExactRational::ZERO)
}

/// Lowest q-exponent of `[n, m]^+` (`None` when it vanishes).
pub fn qbin_plus_min_degree(n: i64, m: i64) -> Option<i64> {
    if n >= 0 {
        return qbin_plus_nonzero(n, m).then_some(0);
    }
    qbin_plus_dense(n, m).min_degree()
}

/// Regenerates `[n, m]^+` on the window `n, m in [lo, hi]` using only the
/// two q-Pascal recurrences and the boundary values `[m, m]^+ = 1`,
/// `[n, 0]^+ = 0` for `n < 0`.
///
/// Subtracting the two recurrences gives, within a fixed row `n`,
/// `(q^m - 1) [n, m]^+ = (q^(n+1-m) - 1) [n, m-1]^+`; each row is
/// propagated outward from its boundary seeds with exact divisions.
/// Entries of the returned map are keyed by `(n, m)`.
pub fn regenerate_extended_table(lo: i64, hi: i64) -> Result<HashMap<(i64, i64), UniLaurent>> {
    fn mul_q_pow_minus_one(p: &UniLaurent, k: i64) -> UniLaurent {
        // p * (q^k - 1)
        if k == 0 {
            return UniLaurent::zero();
        }
        let mut out = p.clone();
        out.mul_one_minus_qk(k.unsigned_abs() as usize);
        if k > 0 {
            out.negated()
        } else {
            // q^k - 1 = q^k (1 - q^{-k})
            out.shifted(k)
        }
    }
    fn div_q_pow_minus_one(p: &UniLaurent, k: i64) -> Result<UniLaurent> {
        assert!(k != 0);
        let mut out = p.clone();
        out.div_one_minus_qk(k.unsigned_abs() as usize)?;
        Ok(if k > 0 { out.negated() } else { out.shifted(-k) })
    }

    let mut table = HashMap::new();
    for n in lo..=hi {
        // seeds: the diagonal entry, plus [n, 0] = 0 for negative rows
        let mut row: HashMap<i64, UniLaurent> = HashMap::new();
        row.insert(n, UniLaurent::one());
        if n < 0 {
            row.insert(0, UniLaurent::zero());
        }
        let seeds: Vec<i64> = row.keys().copied().collect();
        let (mlo, mhi) = (lo.min(n) - 1, hi.max(n) + 1);
        for &s in &seeds {
            // rightward: [n, m] from [n, m-1], needs m != 0
            let mut m = s + 1;
            while m <= mhi && !row.contains_key(&m) && m != 0 {
                let prev = &row[&(m - 1)];
                let num = mul_q_pow_minus_one(prev, n + 1 - m);
                row.insert(m, div_q_pow_minus_one(&num, m)?);
                m += 1;
            }
            // leftward: [n, m-1] from [n, m], needs n + 1 - m != 0
            let mut m = s;
            while m > mlo && !row.contains_key(&(m - 1)) && n + 1 - m != 0 {
                let cur = &row[&m];
                let num = mul_q_pow_minus_one(cur, m);
                row.insert(m - 1, div_q_pow_minus_one(&num, n + 1 - m)?);
                m -= 1;
            }
        }
        for m in lo..=hi {
            let v = row.get(&m).cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("recurrences do not reach ({n}, {m})"))
            })?;
            table.insert((n, m), v);
        }
    }
    Ok(table)
}

/// Integer binomial `C(n, k)` for `n >= k >= 0`, zero otherwise.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if !(n >= k && k >= 0) {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_terms(t: &[(i64, i64)]) -> BiLaurent {
        BiLaurent::from_q_terms(t)
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(0).unwrap(), BiLaurent::one());
        assert_eq!(qpoch(1).unwrap(), q_terms(&[(0, 1), (1, -1)]));
        // (1-q)(1-q^2)(1-q^3) by direct product
        let direct = &(&qpoch(1).unwrap() * &q_terms(&[(0, 1), (2, -1)])) * &q_terms(&[(0, 1), (3, -1)]);
        assert_eq!(qpoch(3).unwrap(), direct);
        assert_eq!(qpoch(-1), Err(Error::NegativeIndex(-1)));
    }

    #[test]
    fn qbin_examples() {
        assert_eq!(qbin(4, 2), q_terms(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)]));
        assert!(qbin(2, 3).is_zero());
        assert!(qbin(-1, -1).is_zero());
        for n in 0..6 {
            assert_eq!(qbin(n, 0), BiLaurent::one());
        }
    }

    #[test]
    fn qbin_times_pochhammers_is_pochhammer() {
        for n in 0..12 {
            for m in 0..=n {
                let lhs = &(&qbin(n, m) * &qpoch(n - m).unwrap()) * &qpoch(m).unwrap();
                assert_eq!(lhs, qpoch(n).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn qbin_plus_examples() {
        for m in -6..7 {
            assert_eq!(qbin_plus(m, m), BiLaurent::one(), "m={m}");
        }
        for n in -6..0 {
            assert!(qbin_plus(n, 0).is_zero());
        }
        assert_eq!(qbin_plus(-1, -2), q_terms(&[(-1, -1)]));
    }

    #[test]
    fn nonzero_predicate_matches_values() {
        for n in -9..10 {
            for m in -9..10 {
                assert_eq!(qbin_plus_nonzero(n, m), !qbin_plus(n, m).is_zero(), "({n},{m})");
            }
        }
    }

    #[test]
    fn q_pascal_both_forms() {
        let qp = |n, m| qbin_plus(n, m);
        for n in -8..=8 {
            for m in -8..=8 {
                let a = &(&BiLaurent::q_pow(m) * &qp(n - 1, m)) + &qp(n - 1, m - 1);
                let b = &qp(n - 1, m) + &(&BiLaurent::q_pow(n - m) * &qp(n - 1, m - 1));
                assert_eq!(a, qp(n, m), "first form ({n},{m})");
                assert_eq!(b, qp(n, m), "second form ({n},{m})");
            }
        }
    }

    #[test]
    fn plain_pascal_fails_at_origin() {
        let a = &(&BiLaurent::q_pow(0) * &qbin(-1, 0)) + &qbin(-1, -1);
        assert_ne!(a, qbin(0, 0));
    }

    // coefficient of z^{-m} in (1 + 1/z)^n = z^{-n} (1 + z)^n, by series expansion
    fn laurent_coefficient_oracle(n: i64, m: i64) -> i64 {
        let terms = 40usize;
        let mut series = vec![0i64; terms];
        series[0] = 1;
        let factor: Vec<i64> = if n >= 0 {
            let mut f = vec![0; terms];
            f[0] = 1;
            f[1] = 1;
            f
        } else {
            (0..terms).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect()
        };
        for _ in 0..n.abs() {
            let mut next = vec![0i64; terms];
            for (i, a) in series.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    if i + j < terms {
                        next[i + j] += a * b;
                    }
                }
            }
            series = next;
        }
        let k = n - m;
        if k < 0 || k as usize >= terms {
            0
        } else {
            series[k as usize]
        }
    }

    #[test]
    fn value_at_q_one_is_laurent_coefficient() {
        for n in -6..=6 {
            for m in -8..=8 {
                let v = qbin_plus(n, m).eval_q1_z1();
                assert_eq!(v, BigInt::from(laurent_coefficient_oracle(n, m)), "({n},{m})");
            }
        }
    }

    #[test]
    fn regeneration_reproduces_table() {
        let table = regenerate_extended_table(-8, 8).unwrap();
        for ((n, m), v) in &table {
            assert_eq!(v, qbin_plus_dense(*n, *m).as_ref(), "({n},{m})");
        }
        assert_eq!(table.len(), 17 * 17);
    }

    #[test]
    fn memo_is_consistent_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| (-7..8).map(|m| qbin_plus_dense(-3, m)).collect::<Vec<_>>()))
            .collect();
        let fresh: Vec<_> = (-7..8).map(|m| compute_fresh(-3, m)).collect();
        for h in handles {
            let got: Vec<UniLaurent> = h.join().unwrap().into_iter().map(|a| (*a).clone()).collect();
            assert_eq!(got, fresh);
        }
    }

    fn compute_fresh(n: i64, m: i64) -> UniLaurent {
        if !qbin_plus_nonzero(n, m) {
            return UniLaurent::zero();
        }
        let k = n - m;
        let b = compute_qbin(-m - 1, -n - 1).reflected().shifted(-(k * k + k) / 2);
        if k % 2 == 0 {
            b
        } else {
            b.negated()
        }
    }

    #[test]
    fn integer_binomial() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }
}
