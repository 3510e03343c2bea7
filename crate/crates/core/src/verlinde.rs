//! Fusion-ring arithmetic and coinvariant dimensions `d_{p,r}`.
//!
//! The fusion ring of the lattice algebra at level `p` is the group ring of
//! `Z/pZ`; products are cyclic convolutions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{BiLaurent, CyclotomicVector, ExactRational};
use crate::fermionic::SiteVector;
use crate::supernomial::{qsup_at1, LVector};

/// Multiplicities of the representations `r = 0..p-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionVector {
    p: usize,
    dims: Vec<BigInt>,
}

impl FusionVector {
    pub fn new(p: usize, dims: Vec<BigInt>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("p must be positive".into()));
        }
        if dims.len() != p {
            return Err(Error::DimensionMismatch { expected: p, got: dims.len() });
        }
        if let Some(bad) = dims.iter().find(|x| x.is_negative()) {
            return Err(Error::InvalidParameter(format!("negative multiplicity {bad}")));
        }
        Ok(FusionVector { p, dims })
    }

    /// The basis vector of representation `r mod p`.
    pub fn basis(p: usize, r: i64) -> Self {
        let mut dims = vec![BigInt::zero(); p];
        dims[r.rem_euclid(p as i64) as usize] = BigInt::one();
        FusionVector { p, dims }
    }

    /// The unit `e_0`.
    pub fn unit(p: usize) -> Self {
        Self::basis(p, 0)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dims(&self) -> &[BigInt] {
        &self.dims
    }

    /// Multiplicity of representation `r mod p`.
    pub fn get(&self, r: i64) -> &BigInt {
        &self.dims[r.rem_euclid(self.p as i64) as usize]
    }

    pub fn total(&self) -> BigInt {
        self.dims.iter().sum()
    }

    fn from_cyclotomic(c: CyclotomicVector) -> Result<Self> {
        let p = c.modulus();
        Self::new(p, c.into_coeffs())
    }

    fn to_cyclotomic(&self) -> CyclotomicVector {
        CyclotomicVector::new(self.p, self.dims.clone()).expect("lengths agree")
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(BigInt::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FusionRepr {
    p: usize,
    dims: Vec<String>,
}

impl Serialize for FusionVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FusionRepr { p: self.p, dims: self.dims.iter().map(BigInt::to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FusionRepr::deserialize(d)?;
        let dims = repr
            .dims
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| D::Error::custom(format!("invalid integer `{s}`"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FusionVector::new(repr.p, dims).map_err(D::Error::custom)
    }
}

/// Parameters `(i, j)` of an elementary subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementaryPair {
    pub i: i64,
    pub j: i64,
}

impl ElementaryPair {
    pub fn new(i: i64, j: i64) -> Self {
        ElementaryPair { i, j }
    }

    fn check(&self, p: usize) -> Result<()> {
        if !(0..=p as i64).contains(&self.i) {
            return Err(Error::InvalidParameter(format!("pair index i = {} outside [0, {p}]", self.i)));
        }
        Ok(())
    }
}

/// Cyclic convolution of two fusion vectors.
pub fn fuse(a: &FusionVector, b: &FusionVector) -> Result<FusionVector> {
    FusionVector::from_cyclotomic(a.to_cyclotomic().cyclic_mul(&b.to_cyclotomic())?)
}

/// `dims[r] = #{n : 0 <= p n + j + r <= i}`, counted in closed form.
pub fn elementary_dims(p: usize, pair: ElementaryPair) -> Result<FusionVector> {
    pair.check(p)?;
    let pp = p as i64;
    let dims = (0..pp)
        .map(|r| {
            let lo = (-pair.j - r).div_euclid(pp) + i64::from((-pair.j - r).rem_euclid(pp) != 0);
            let hi = (pair.i - pair.j - r).div_euclid(pp);
            BigInt::from((hi - lo + 1).max(0))
        })
        .collect();
    FusionVector::new(p, dims)
}

/// Coefficients of `prod_s (x^(-j_s) + ... + x^(-j_s + i_s))` in
/// `Z[x]/(x^p - 1)`.
pub fn d_vector(p: usize, pairs: &[ElementaryPair]) -> Result<FusionVector> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    let mut prod = BiLaurent::one();
    for pair in pairs {
        pair.check(p)?;
        let mut factor = BiLaurent::zero();
        for t in -pair.j..=pair.i - pair.j {
            factor.add_term(ExactRational::ZERO, t, BigInt::one());
        }
        prod = &prod * &factor;
        // reduce as we go so the product stays at most p terms wide
        let reduced = prod.project_cyclotomic(p)?;
        prod = BiLaurent::zero();
        for (t, c) in reduced.coeffs().iter().enumerate() {
            prod.add_term(ExactRational::ZERO, t as i64, c.clone());
        }
    }
    FusionVector::from_cyclotomic(prod.project_cyclotomic(p)?)
}

fn check_coinvariant_vector(n: &SiteVector) -> Result<LVector> {
    if n.d() as i64 != n.p() - 1 {
        return Err(Error::InvalidParameter(format!("expected d = p - 1 = {}, got {}", n.p() - 1, n.d())));
    }
    if !n.is_monotone() {
        return Err(Error::NotDecomposable("components violate 0 <= N_0 <= ... <= N_+ + N_-".into()));
    }
    let l = n.l_vector();
    if let Some((index, value)) = l.first_negative() {
        return Err(Error::NotDecomposable(format!("L_{index} = {value} < 0")));
    }
    Ok(l)
}

/// Writes `N` as a sum of elementary vectors `N^{i,j}`: `L_i` pairs with
/// index `i`, all of `N_-` carried by the first pair.
pub fn decompose_n(n: &SiteVector) -> Result<Vec<ElementaryPair>> {
    let l = check_coinvariant_vector(n)?;
    let mut pairs = Vec::new();
    for (idx, &count) in l.entries().iter().enumerate() {
        pairs.extend(std::iter::repeat_n(ElementaryPair::new(idx as i64 + 1, 0), count as usize));
    }
    match pairs.first_mut() {
        Some(first) => first.j = n.n_minus(),
        None if n.n_minus() != 0 => pairs.push(ElementaryPair::new(0, n.n_minus())),
        None => {}
    }
    let p = n.p();
    let mut sum = vec![0i64; p as usize + 1];
    for pair in &pairs {
        let e = SiteVector::elementary(p, pair.i, pair.j)?;
        for (s, c) in sum.iter_mut().zip(e.components()) {
            *s += c;
        }
    }
    if sum != n.components() {
        return Err(Error::NotDecomposable(format!("pairs sum to {sum:?}, not {:?}", n.components())));
    }
    Ok(pairs)
}

/// `sum_a S_{q=1}(L, p a + N_- - r)`.
pub fn d_via_supernomial(n: &SiteVector, r: i64) -> Result<BigInt> {
    let l = check_coinvariant_vector(n)?;
    let p = n.p();
    let offset = n.n_minus() - r;
    let top = l.weight();
    let mut total = BigInt::zero();
    let mut a = (-offset).div_euclid(p);
    while p * a + offset <= top {
        total += qsup_at1(&l, p * a + offset)?;
        a += 1;
    }
    Ok(total)
}

/// `2^(L_1) 3^(L_2) ... (p-1)^(L_{p-2}) p^(L_{p-1} - 1) (p+1)^(L_p)` when
/// `L_{p-1} >= 1`, `None` otherwise.
pub fn closed_form_dim(p: usize, l: &LVector) -> Result<Option<BigInt>> {
    if p < 2 || l.len() != p {
        return Err(Error::DimensionMismatch { expected: p, got: l.len() });
    }
    if let Some((index, value)) = l.first_negative() {
        return Err(Error::NegativeSupernomialEntry { index, value });
    }
    if l.get(p - 1) < 1 {
        return Ok(None);
    }
    let mut out = BigInt::one();
    for k in 1..=p {
        let exp = if k == p - 1 { l.get(k) - 1 } else { l.get(k) };
        out *= num_traits::pow(BigInt::from(k as i64 + 1), exp as usize);
    }
    Ok(Some(out))
}
