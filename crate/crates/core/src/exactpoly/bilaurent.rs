use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CyclotomicVector, ExactRational, UniLaurent};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `q` (rational exponents) and `z` (integer
/// exponents) with big-integer coefficients.
///
/// Terms are keyed by `(q_exp, z_exp)` and iterate in that lexicographic
/// order. No stored coefficient is zero, so structural equality is equality
/// of polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent {
    terms: BTreeMap<(ExactRational, i64), BigInt>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ExactRational::ZERO, 0, BigInt::one())
    }

    pub fn monomial(q_exp: ExactRational, z_exp: i64, coeff: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(q_exp, z_exp, coeff);
        p
    }

    /// `q^e`.
    pub fn q_pow(e: impl Into<ExactRational>) -> Self {
        Self::monomial(e.into(), 0, BigInt::one())
    }

    /// `z^e`.
    pub fn z_pow(e: i64) -> Self {
        Self::monomial(ExactRational::ZERO, e, BigInt::one())
    }

    /// Builds a polynomial from `(q_exp, z_exp, coeff)` triples, merging
    /// like terms.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (ExactRational, i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (q, z, c) in terms {
            p.add_term(q, z, c.into());
        }
        p
    }

    /// Builds a z-free polynomial from integer q-exponent terms.
    pub fn from_q_terms<C: Into<BigInt> + Clone>(terms: &[(i64, C)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|(e, c)| (ExactRational::from_integer(*e), 0, c.clone())),
        )
    }

    /// Embeds `z^z_exp * q^shift * poly(q)`.
    pub fn from_uni(poly: &UniLaurent, z_exp: i64, shift: ExactRational) -> Self {
        let mut p = Self::zero();
        for (e, c) in poly.terms() {
            p.add_term(shift + ExactRational::from_integer(e), z_exp, c.clone());
        }
        p
    }

    /// Adds `coeff * q^q_exp z^z_exp` in place.
    pub fn add_term(&mut self, q_exp: ExactRational, z_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((q_exp, z_exp)) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(q_exp, z_exp)` order.
    pub fn terms(&self) -> impl Iterator<Item = (ExactRational, i64, &BigInt)> {
        self.terms.iter().map(|(&(q, z), c)| (q, z, c))
    }

    pub fn coeff(&self, q_exp: ExactRational, z_exp: i64) -> BigInt {
        self.terms
            .get(&(q_exp, z_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn min_q_exp(&self) -> Option<ExactRational> {
        self.terms.keys().next().map(|k| k.0)
    }

    pub fn max_q_exp(&self) -> Option<ExactRational> {
        self.terms.keys().next_back().map(|k| k.0)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Multiplies by `q^q_exp z^z_exp`.
    pub fn mul_monomial(&self, q_exp: ExactRational, z_exp: i64) -> Self {
        BiLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&(q, z), c)| ((q + q_exp, z + z_exp), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BiLaurent {
            terms: self
                .terms
                .iter()
                .map(|(key, c)| (*key, c * k))
                .collect(),
        }
    }

    /// Substitutes `z -> z q^c`: each term `q^e z^m` becomes `q^(e + c m) z^m`.
    pub fn substitute_z(&self, c: ExactRational) -> Self {
        let mut out = Self::zero();
        for (&(q, z), coeff) in &self.terms {
            out.add_term(q + c * z, z, coeff.clone());
        }
        out
    }

    /// Value at `q = 1, z = 1`: the sum of all coefficients.
    pub fn eval_q1_z1(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Reduces a z-only polynomial modulo `z^p = 1`.
    pub fn project_cyclotomic(&self, p: usize) -> Result<CyclotomicVector> {
        if p == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        let mut coeffs = vec![BigInt::zero(); p];
        for (&(q, z), c) in &self.terms {
            if !q.is_zero() {
                return Err(Error::NonZeroQExponent);
            }
            let r = z.mod_floor(&(p as i64)) as usize;
            coeffs[r] += c;
        }
        CyclotomicVector::new(p, coeffs)
    }

    /// Drops all terms with `q_exp > max`; `None` keeps everything.
    pub fn truncate_qdeg(&self, max: Option<ExactRational>) -> Self {
        match max {
            None => self.clone(),
            Some(m) => BiLaurent {
                terms: self
                    .terms
                    .iter()
                    .filter(|((q, _), _)| *q <= m)
                    .map(|(k, c)| (*k, c.clone()))
                    .collect(),
            },
        }
    }

    /// Keeps only terms with `|z_exp| <= window`.
    pub fn truncate_z(&self, window: i64) -> Self {
        BiLaurent {
            terms: self
                .terms
                .iter()
                .filter(|((_, z), _)| z.abs() <= window)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Splits into the z-slices `z^m * P_m(q)` whose q-exponents are
    /// integral; `None` if some exponent is not an integer.
    pub fn z_slices(&self) -> Option<BTreeMap<i64, UniLaurent>> {
        let mut out: BTreeMap<i64, UniLaurent> = BTreeMap::new();
        for (&(q, z), c) in &self.terms {
            let e = q.to_integer()?;
            out.entry(z)
                .or_default()
                .add_shifted(&UniLaurent::monomial(e, c.clone()), 0);
        }
        Some(out)
    }

    /// Plain-text rendering such as `1 + 2*q^(1/2)*z^-1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (q, z, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (q.is_zero() && z == 0) {
                factors.push(mag.to_string());
            }
            if !q.is_zero() {
                factors.push(if q == ExactRational::ONE {
                    "q".to_string()
                } else if q.is_integer() && q.numer() > 0 {
                    format!("q^{q}")
                } else {
                    format!("q^({q})")
                });
            }
            if z != 0 {
                factors.push(match z {
                    1 => "z".to_string(),
                    z if z > 0 => format!("z^{z}"),
                    z => format!("z^({z})"),
                });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// LaTeX rendering such as `1 + 2 q^{1/2} z^{-1}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (q, z, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (q.is_zero() && z == 0) {
                factors.push(mag.to_string());
            }
            if !q.is_zero() {
                factors.push(if q == ExactRational::ONE {
                    "q".to_string()
                } else if q.is_integer() {
                    format!("q^{{{q}}}")
                } else {
                    let sign = if q.numer() < 0 { "-" } else { "" };
                    format!("q^{{{sign}\\frac{{{}}}{{{}}}}}", q.numer().abs(), q.denom())
                });
            }
            if z != 0 {
                factors.push(if z == 1 { "z".to_string() } else { format!("z^{{{z}}}") });
            }
            out.push_str(&factors.join(" "));
        }
        out
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(q, z), c) in &rhs.terms {
            out.add_term(q, z, c.clone());
        }
        out
    }
}

impl Add for BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: BiLaurent) -> BiLaurent {
        let (mut big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        for ((q, z), c) in small.terms {
            big.add_term(q, z, c);
        }
        big
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(mut self) -> BiLaurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -self.clone()
    }
}

impl Sub<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Sub for BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: BiLaurent) -> BiLaurent {
        self + (-rhs)
    }
}

impl Mul<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(q1, z1), c1) in &self.terms {
            for (&(q2, z2), c2) in &rhs.terms {
                out.add_term(q1 + q2, z1 + z2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: BiLaurent) -> BiLaurent {
        &self * &rhs
    }
}

/// Sum of two polynomials.
pub fn poly_add(a: &BiLaurent, b: &BiLaurent) -> BiLaurent {
    a + b
}

/// Product of two polynomials.
pub fn poly_mul(a: &BiLaurent, b: &BiLaurent) -> BiLaurent {
    a * b
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    q: String,
    z: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for BiLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            terms: self
                .terms()
                .map(|(q, z, c)| TermRepr {
                    q: q.to_string(),
                    z,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = BiLaurent::zero();
        for t in repr.terms {
            let q: ExactRational = t.q.parse().map_err(D::Error::custom)?;
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid coefficient `{}`", t.c)))?;
            p.add_term(q, t.z, c);
        }
        Ok(p)
    }
}

/// Collects `z^m q^shift P(q)` contributions slice by slice in dense form
/// and converts to a [`BiLaurent`] at the end.
///
/// Slices are keyed by `(z exponent, fractional part of the q-shift)`, so
/// contributions with half-integral shifts never mix with integral ones.
#[derive(Default, Clone, Debug)]
pub struct LaurentAccumulator {
    slices: BTreeMap<(i64, ExactRational), UniLaurent>,
}

impl LaurentAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z_exp: i64, q_shift: ExactRational, poly: &UniLaurent) {
        if poly.is_zero() {
            return;
        }
        let frac = q_shift.fract();
        self.slices
            .entry((z_exp, frac))
            .or_default()
            .add_shifted(poly, q_shift.floor());
    }

    /// Merges another accumulator (used to combine partitioned work).
    pub fn merge(&mut self, other: LaurentAccumulator) {
        for (key, poly) in other.slices {
            self.slices.entry(key).or_default().add_shifted(&poly, 0);
        }
    }

    pub fn finish(self) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for ((z, frac), poly) in self.slices {
            for (e, c) in poly.terms() {
                out.add_term(frac + ExactRational::from_integer(e), z, c.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn q(e: i64) -> BiLaurent {
        BiLaurent::q_pow(e)
    }

    #[test]
    fn add_examples() {
        let a = &BiLaurent::one() + &q(1);
        let b = &(-BiLaurent::one()) + &q(1);
        assert_eq!(&a + &b, BiLaurent::from_q_terms(&[(1, 2)]));
        assert_eq!(&a + &BiLaurent::zero(), a);
        let h = BiLaurent::q_pow(r(1, 2));
        assert_eq!(&h + &h, BiLaurent::from_terms([(r(1, 2), 0, 2)]));
    }

    #[test]
    fn mul_examples() {
        let a = &BiLaurent::one() + &q(1);
        let b = &BiLaurent::one() - &q(1);
        assert_eq!(&a * &b, &BiLaurent::one() - &q(2));
        let x = BiLaurent::from_terms([(r(1, 2), 1, 1)]);
        let y = BiLaurent::from_terms([(r(1, 2), -1, 1)]);
        assert_eq!(&x * &y, q(1));
        assert_eq!(&a * &BiLaurent::one(), a);
    }

    #[test]
    fn substitute_examples() {
        let p = BiLaurent::from_terms([(r(1, 1), 2, 1)]);
        assert_eq!(p.substitute_z(ExactRational::ONE), BiLaurent::from_terms([(r(3, 1), 2, 1)]));
        let zi = BiLaurent::z_pow(-1);
        assert_eq!(
            zi.substitute_z(ExactRational::from_integer(3)),
            BiLaurent::from_terms([(r(-3, 1), -1, 1)])
        );
        assert_eq!(p.substitute_z(ExactRational::ZERO), p);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(BiLaurent::from_q_terms(&[(0, 1), (1, 1), (2, 2)]).eval_q1_z1(), 4.into());
        assert_eq!((&BiLaurent::z_pow(1) - &BiLaurent::z_pow(-1)).eval_q1_z1(), 0.into());
        assert_eq!(BiLaurent::zero().eval_q1_z1(), 0.into());
    }

    #[test]
    fn project_examples() {
        let p = &(&BiLaurent::z_pow(-1) + &BiLaurent::one()) + &BiLaurent::z_pow(1);
        assert_eq!(p.project_cyclotomic(2).unwrap().coeffs(), &[1.into(), 2.into()]);
        assert_eq!(
            BiLaurent::one().project_cyclotomic(3).unwrap().coeffs(),
            &[1.into(), 0.into(), 0.into()]
        );
        assert_eq!(
            BiLaurent::z_pow(3).project_cyclotomic(3).unwrap().coeffs(),
            &[1.into(), 0.into(), 0.into()]
        );
        assert_eq!(q(1).project_cyclotomic(2), Err(Error::NonZeroQExponent));
    }

    #[test]
    fn truncate_examples() {
        let p = BiLaurent::from_q_terms(&[(0, 1), (1, 1), (4, 1)]);
        assert_eq!(
            p.truncate_qdeg(Some(ExactRational::from_integer(2))),
            BiLaurent::from_q_terms(&[(0, 1), (1, 1)])
        );
        assert_eq!(p.truncate_qdeg(None), p);
        assert!(BiLaurent::q_pow(r(3, 2))
            .truncate_qdeg(Some(ExactRational::ONE))
            .is_zero());
    }

    #[test]
    fn json_shape() {
        let p = BiLaurent::from_terms([(r(1, 2), -1, -3), (r(0, 1), 0, 1), (r(2, 1), 1, 5)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"q":"0","z":0,"c":"1"},{"q":"1/2","z":-1,"c":"-3"},{"q":"2","z":1,"c":"5"}]}"#
        );
        let back: BiLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn text_rendering() {
        let p = BiLaurent::from_terms([(r(0, 1), 0, 1), (r(1, 2), -1, -2), (r(1, 1), 1, 1)]);
        assert_eq!(p.to_text(), "1 - 2*q^(1/2)*z^(-1) + q*z");
        assert_eq!(p.to_latex(), "1 - 2 q^{\\frac{1}{2}} z^{-1} + q z");
    }

    #[test]
    fn accumulator_matches_direct_sum() {
        let mut acc = LaurentAccumulator::new();
        let p = UniLaurent::from_coeffs(0, vec![1.into(), 1.into()]);
        acc.add(1, r(1, 2), &p);
        acc.add(1, r(3, 2), &p);
        acc.add(0, r(0, 1), &p);
        let direct = &(&BiLaurent::from_uni(&p, 1, r(1, 2)) + &BiLaurent::from_uni(&p, 1, r(3, 2)))
            + &BiLaurent::from_uni(&p, 0, ExactRational::ZERO);
        assert_eq!(acc.finish(), direct);
    }
}
