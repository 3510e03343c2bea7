use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Dense Laurent polynomial in `q` with integer exponents.
///
/// `coeffs[i]` is the coefficient of `q^(low + i)`. Canonical form has no
/// zero coefficient at either end; the zero polynomial has empty `coeffs`
/// and `low == 0`. This is the working representation for q-binomials and
/// supernomials; it converts to [`BiLaurent`](super::BiLaurent) at API
/// boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniLaurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        Self::from_coeffs(exp, vec![coeff])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = UniLaurent { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (`None` for zero).
    pub fn min_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Iterates `(exponent, coefficient)` over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^shift`.
    pub fn shifted(mut self, shift: i64) -> Self {
        if !self.is_zero() {
            self.low += shift;
        }
        self
    }

    pub fn negated(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn reflected(mut self) -> Self {
        if self.is_zero() {
            return self;
        }
        let high = self.low + self.coeffs.len() as i64 - 1;
        self.coeffs.reverse();
        self.low = -high;
        self
    }

    /// `self += q^shift * other`.
    pub fn add_shifted(&mut self, other: &UniLaurent, shift: i64) {
        if other.is_zero() {
            return;
        }
        let olow = other.low + shift;
        if self.is_zero() {
            self.low = olow;
            self.coeffs = other.coeffs.clone();
            return;
        }
        let new_low = self.low.min(olow);
        let new_high = (self.low + self.coeffs.len() as i64).max(olow + other.coeffs.len() as i64);
        if new_low < self.low {
            let pad = (self.low - new_low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.low = new_low;
        }
        self.coeffs.resize((new_high - self.low) as usize, BigInt::zero());
        let off = (olow - self.low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c;
        }
        self.normalize();
    }

    pub fn mul(&self, other: &UniLaurent) -> UniLaurent {
        self.mul_truncated(other, None)
    }

    /// Product keeping only exponents `<= max_exp` (all of them for `None`).
    pub fn mul_truncated(&self, other: &UniLaurent, max_exp: Option<i64>) -> UniLaurent {
        if self.is_zero() || other.is_zero() {
            return UniLaurent::zero();
        }
        if self.is_one() {
            return other.truncated(max_exp);
        }
        if other.is_one() {
            return self.truncated(max_exp);
        }
        let low = self.low + other.low;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(m) = max_exp {
            if m < low {
                return UniLaurent::zero();
            }
            len = len.min((m - low + 1) as usize);
        }
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniLaurent::from_coeffs(low, out)
    }

    /// Drops terms with exponent `> max_exp`.
    pub fn truncated(&self, max_exp: Option<i64>) -> UniLaurent {
        match (max_exp, self.max_degree()) {
            (Some(m), Some(h)) if h > m => {
                if m < self.low {
                    return UniLaurent::zero();
                }
                let keep = (m - self.low + 1) as usize;
                UniLaurent::from_coeffs(self.low, self.coeffs[..keep].to_vec())
            }
            _ => self.clone(),
        }
    }

    /// Multiplies by `(1 - q^k)`, `k >= 1`.
    pub fn mul_one_minus_qk(&mut self, k: usize) {
        if self.is_zero() {
            return;
        }
        let n = self.coeffs.len();
        self.coeffs.resize(n + k, BigInt::zero());
        for i in (k..n + k).rev() {
            let sub = self.coeffs[i - k].clone();
            self.coeffs[i] -= sub;
        }
        self.normalize();
    }

    /// Divides by `(1 - q^k)`, failing unless the division is exact.
    pub fn div_one_minus_qk(&mut self, k: usize) -> Result<(), Error> {
        if self.is_zero() {
            return Ok(());
        }
        let n = self.coeffs.len();
        if n <= k {
            return Err(Error::InexactDivision);
        }
        // quotient c satisfies c_i = a_i + c_{i-k}; remainder lives in the top k slots
        for i in k..n {
            let add = self.coeffs[i - k].clone();
            self.coeffs[i] += add;
        }
        if self.coeffs[n - k..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        self.coeffs.truncate(n - k);
        self.normalize();
        Ok(())
    }

    /// Multiplies a power series by `1/(1 - q^k)`, keeping exponents
    /// `<= max_exp`. Requires `min_degree >= 0` for a meaningful series.
    pub fn mul_inv_one_minus_qk(&mut self, k: usize, max_exp: i64) {
        if self.is_zero() || max_exp < self.low {
            *self = self.truncated(Some(max_exp));
            return;
        }
        let len = (max_exp - self.low + 1) as usize;
        self.coeffs.resize(len.max(self.coeffs.len()), BigInt::zero());
        self.coeffs.truncate(len);
        for i in k..len {
            let add = self.coeffs[i - k].clone();
            self.coeffs[i] += add;
        }
        self.normalize();
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}
