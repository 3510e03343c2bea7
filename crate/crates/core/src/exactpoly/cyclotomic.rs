use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Element of `Z[x]/(x^p - 1)`: `coeffs[r]` is the coefficient of `x^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicVector {
    p: usize,
    coeffs: Vec<BigInt>,
}

impl CyclotomicVector {
    pub fn new(p: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        if coeffs.len() != p {
            return Err(Error::DimensionMismatch { expected: p, got: coeffs.len() });
        }
        Ok(CyclotomicVector { p, coeffs })
    }

    /// `x^r` with `r` reduced mod `p`.
    pub fn basis(p: usize, r: i64) -> Self {
        assert!(p > 0, "modulus must be positive");
        let mut coeffs = vec![BigInt::zero(); p];
        coeffs[r.rem_euclid(p as i64) as usize] = BigInt::one();
        CyclotomicVector { p, coeffs }
    }

    pub fn unit(p: usize) -> Self {
        Self::basis(p, 0)
    }

    pub fn modulus(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Product in the quotient ring (cyclic convolution).
    pub fn cyclic_mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch { left: self.p, right: other.p });
        }
        let p = self.p;
        let mut out = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Ok(CyclotomicVector { p, coeffs: out })
    }

    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}
