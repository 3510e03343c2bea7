//! q-supernomial coefficients, the tridiagonal `T_m` matrices and the
//! site-vector to `L`-vector transform.
//!
//! For `L = (L_1, ..., L_k)` the supernomial `S(L, a)` is the sum over
//! compositions `n_1 + ... + n_k = a` of
//! `q^(sum_{i>=2} n_{i-1}(-n_i + L_i + ... + L_k))`
//! times the chain `[L_k, n_k] [L_{k-1} + n_k, n_{k-1}] ... [L_1 + n_2, n_1]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{BiLaurent, ExactRational, UniLaurent};
use crate::fermionic::SiteVector;
use crate::qgauss::{binomial, qbin_dense};

/// Entries `L_1..L_k` of a supernomial index vector (`k >= 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LVector(Vec<i64>);

impl LVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("L-vector must have at least one entry".into()));
        }
        Ok(LVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `L_i` with the 1-based indexing used in formulas.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// First negative entry as `(1-based index, value)`.
    pub fn first_negative(&self) -> Option<(usize, i64)> {
        self.0.iter().enumerate().find(|(_, &v)| v < 0).map(|(i, &v)| (i + 1, v))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// `sum_j j L_j`, the top of the supernomial support.
    pub fn weight(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &l)| (i as i64 + 1) * l).sum()
    }

    fn check_nonnegative(&self) -> Result<()> {
        match self.first_negative() {
            Some((index, value)) => Err(Error::NegativeSupernomialEntry { index, value }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<i64>> for LVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        LVector::new(v)
    }
}

impl From<LVector> for Vec<i64> {
    fn from(l: LVector) -> Self {
        l.0
    }
}

impl fmt::Display for LVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The `m x m` tridiagonal matrix with `2` on the diagonal (except a final
/// `1`) and `-1` next to it. Its inverse has entries `min(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrix {
    m: usize,
    entries: Vec<Vec<i64>>,
}

impl TMatrix {
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: v.len() });
        }
        Ok((0..self.m)
            .map(|j| (0..self.m).map(|i| v[i] * self.entries[i][j]).sum())
            .collect())
    }
}

pub fn t_matrix(m: usize) -> Result<TMatrix> {
    if m < 1 {
        return Err(Error::InvalidParameter("T_m needs m >= 1".into()));
    }
    let mut entries = vec![vec![0; m]; m];
    for i in 0..m {
        entries[i][i] = if i + 1 < m { 2 } else { 1 };
        if i > 0 {
            entries[i][i - 1] = -1;
        }
        if i + 1 < m {
            entries[i][i + 1] = -1;
        }
    }
    Ok(TMatrix { m, entries })
}

/// `L = N' T_{d+1}` with `N' = (N_0, ..., N_{d-1}, N_+ + N_-)`.
pub fn l_vector(n: &SiteVector) -> LVector {
    let prime = n.n_prime();
    let t = t_matrix(prime.len()).expect("N' is never empty");
    LVector(t.left_mul(&prime).expect("sizes agree"))
}

/// Walks every composition of `a` admitted by the binomial chain, calling
/// `leaf(n, exponent)` with `n` in 0-based order.
fn for_each_composition(l: &[i64], a: i64, mut leaf: impl FnMut(&[i64], i64)) {
    let k = l.len();
    // max_prefix[i] = sum_{t<=i} (t+1) l_t: the largest n_0+..+n_i reachable when n_{i+1} = 0
    let mut max_prefix = vec![0i64; k];
    let mut acc = 0;
    for i in 0..k {
        acc += (i as i64 + 1) * l[i];
        max_prefix[i] = acc;
    }
    let mut suffix = vec![0i64; k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1] + l[i];
    }
    let mut n = vec![0i64; k + 1];

    fn rec(
        i: usize,
        rem: i64,
        l: &[i64],
        max_prefix: &[i64],
        suffix: &[i64],
        n: &mut Vec<i64>,
        leaf: &mut dyn FnMut(&[i64], i64),
    ) {
        let top = l[i] + n[i + 1];
        if i == 0 {
            if rem < 0 || rem > top {
                return;
            }
            n[0] = rem;
            let k = l.len();
            let exp: i64 = (1..k).map(|t| n[t - 1] * (suffix[t] - n[t])).sum();
            leaf(&n[..k], exp);
            return;
        }
        for v in 0..=top.min(rem) {
            if rem - v > max_prefix[i - 1] + i as i64 * v {
                continue;
            }
            n[i] = v;
            rec(i - 1, rem - v, l, max_prefix, suffix, n, leaf);
        }
        n[i] = 0;
    }

    if a < 0 || a > max_prefix[k - 1] {
        return;
    }
    rec(k - 1, a, l, &max_prefix, &suffix, &mut n, &mut leaf);
}

/// Dense form of [`qsup`].
pub fn qsup_dense(l: &LVector, a: i64) -> Result<UniLaurent> {
    l.check_nonnegative()?;
    let e = l.entries();
    let mut out = UniLaurent::zero();
    for_each_composition(e, a, |n, exp| {
        let mut term = UniLaurent::one();
        for i in (0..n.len()).rev() {
            let top = e[i] + n.get(i + 1).copied().unwrap_or(0);
            term = term.mul(&qbin_dense(top, n[i]));
        }
        out.add_shifted(&term, exp);
    });
    Ok(out)
}

/// The q-supernomial coefficient `S(L, a)`; zero outside
/// `0 <= a <= sum_j j L_j`.
pub fn qsup(l: &LVector, a: i64) -> Result<BiLaurent> {
    Ok(BiLaurent::from_uni(&qsup_dense(l, a)?, 0, ExactRational::ZERO))
}

/// `S(L, a)` at `q = 1`: the coefficient of `x^a` in
/// `prod_j (1 + x + ... + x^j)^(L_j)`.
pub fn qsup_at1(l: &LVector, a: i64) -> Result<BigInt> {
    l.check_nonnegative()?;
    let e = l.entries();
    let mut total = BigInt::zero();
    for_each_composition(e, a, |n, _| {
        let mut term = BigInt::from(1);
        for i in 0..n.len() {
            let top = e[i] + n.get(i + 1).copied().unwrap_or(0);
            term *= binomial(top, n[i]);
        }
        total += term;
    });
    Ok(total)
}
