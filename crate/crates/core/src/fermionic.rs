//! Fermionic lattice sums over the quadratic form `A`.
//!
//! Coordinates are indexed by `I = {+, -, 0, ..., d-1}`, stored in that
//! order. A summand is
//! `z^(u.n) q^(n A n / 2 + v.n) prod_a [K_a + n_a - (nA)_a, n_a]^+`
//! with `K = N + w`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{BiLaurent, ExactRational, LaurentAccumulator, UniLaurent};
use crate::qgauss::{qbin_dense, qbin_plus_dense, qbin_plus_min_degree, qbin_plus_nonzero};
use crate::supernomial::{l_vector, LVector};

/// `N = (N_+, N_-; N_0, ..., N_{d-1})` together with `p` and `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SiteVector {
    p: i64,
    d: usize,
    n_plus: i64,
    n_minus: i64,
    n_h: Vec<i64>,
}

impl SiteVector {
    pub fn new(p: i64, d: usize, n_plus: i64, n_minus: i64, n_h: Vec<i64>) -> Result<Self> {
        check_pd(p, d)?;
        if n_h.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: n_h.len() });
        }
        Ok(SiteVector { p, d, n_plus, n_minus, n_h })
    }

    /// The elementary vector `N^{i,j} = (i - j, j; 1, 2, ..., i, ..., i)`
    /// with `d = p - 1`.
    pub fn elementary(p: i64, i: i64, j: i64) -> Result<Self> {
        if !(0..=p).contains(&i) {
            return Err(Error::InvalidParameter(format!("elementary index i = {i} outside [0, {p}]")));
        }
        let n_h = (1..p).map(|m| m.min(i)).collect();
        SiteVector::new(p, (p - 1) as usize, i - j, j, n_h)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_plus(&self) -> i64 {
        self.n_plus
    }

    pub fn n_minus(&self) -> i64 {
        self.n_minus
    }

    pub fn n_h(&self) -> &[i64] {
        &self.n_h
    }

    /// Components in index order `(+, -, 0, ..., d-1)`.
    pub fn components(&self) -> Vec<i64> {
        let mut v = vec![self.n_plus, self.n_minus];
        v.extend_from_slice(&self.n_h);
        v
    }

    /// `N' = (N_0, ..., N_{d-1}, N_+ + N_-)`.
    pub fn n_prime(&self) -> Vec<i64> {
        let mut v = self.n_h.clone();
        v.push(self.n_plus + self.n_minus);
        v
    }

    pub fn l_vector(&self) -> LVector {
        l_vector(self)
    }

    /// `0 <= N_0 <= ... <= N_{d-1} <= N_+ + N_-`.
    pub fn is_monotone(&self) -> bool {
        let prime = self.n_prime();
        prime.first().is_some_and(|&x| x >= 0) && prime.windows(2).all(|w| w[0] <= w[1])
    }

    /// `2 N_pm - N_{d-1} >= -(2p - d - 2)` for both signs.
    pub fn is_well_balanced(&self) -> bool {
        let last = self.n_h.last().copied().unwrap_or(0);
        let bound = -(2 * self.p - self.d as i64 - 2);
        2 * self.n_plus - last >= bound && 2 * self.n_minus - last >= bound
    }

    /// Same `N_pm`, with `N_d = N_+ + N_-` appended (one more coordinate).
    pub fn padded(&self) -> Result<Self> {
        let mut h = self.n_h.clone();
        h.push(self.n_plus + self.n_minus);
        SiteVector::new(self.p, self.d + 1, self.n_plus, self.n_minus, h)
    }

    /// Replaces `N_pm`, keeping `p`, `d` and the `N_i`.
    pub fn with_pm(&self, n_plus: i64, n_minus: i64) -> Self {
        SiteVector { n_plus, n_minus, ..self.clone() }
    }
}

fn check_pd(p: i64, d: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p = {p} must be at least 2")));
    }
    if d as i64 > 2 * p - 3 {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds 2p - 3 = {}", 2 * p - 3)));
    }
    Ok(())
}

/// The `(d+2) x (d+2)` matrix with `A_{++} = A_{--} = p`,
/// `A_{+-} = d + 1 - p`, `A_{pm,i} = i + 1`, `A_{ij} = 2 (min(i, j) + 1)`.
pub fn build_matrix_a(p: i64, d: usize) -> Result<Vec<Vec<i64>>> {
    check_pd(p, d)?;
    let n = d + 2;
    let mut a = vec![vec![0; n]; n];
    a[0][0] = p;
    a[1][1] = p;
    a[0][1] = d as i64 + 1 - p;
    a[1][0] = a[0][1];
    for i in 0..d {
        for s in 0..2 {
            a[s][2 + i] = i as i64 + 1;
            a[2 + i][s] = i as i64 + 1;
        }
        for j in 0..d {
            a[2 + i][2 + j] = 2 * (i.min(j) as i64 + 1);
        }
    }
    Ok(a)
}

/// Matrix `A` and weight vectors `u, v, w` of a fermionic sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticData {
    a: Vec<Vec<i64>>,
    u: Vec<i64>,
    v: Vec<ExactRational>,
    w: Vec<i64>,
}

impl QuadraticData {
    pub fn new(a: Vec<Vec<i64>>, u: Vec<i64>, v: Vec<ExactRational>, w: Vec<i64>) -> Result<Self> {
        let n = a.len();
        for row in &a {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for (i, row) in a.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if a[j][i] != x {
                    return Err(Error::InvalidParameter(format!("A is not symmetric at ({i}, {j})")));
                }
            }
        }
        for len in [u.len(), v.len(), w.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        Ok(QuadraticData { a, u, v, w })
    }

    /// `A = build_matrix_a(p, d)`, `u = (1, -1, 0, ..., 0)`, `v = w = 0`.
    pub fn standard(p: i64, d: usize) -> Result<Self> {
        Self::with_weights(p, d, ExactRational::ZERO, 0)
    }

    /// `A = build_matrix_a(p, d)`, `u = (1, -1, 0, ..., 0)`, `v = vc u`, `w = wc u`.
    pub fn with_weights(p: i64, d: usize, vc: ExactRational, wc: i64) -> Result<Self> {
        let a = build_matrix_a(p, d)?;
        let u = unit_u(d);
        let v = u.iter().map(|&x| vc * x).collect();
        let w = u.iter().map(|&x| wc * x).collect();
        Self::new(a, u, v, w)
    }

    /// The character data of level `r`: `v = (p/2 - r - 1) u`, `w = r u`.
    pub fn coinvariant(p: i64, d: usize, r: i64) -> Result<Self> {
        let vc = ExactRational::half(p) - ExactRational::from_integer(r + 1);
        Self::with_weights(p, d, vc, r)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn u(&self) -> &[i64] {
        &self.u
    }

    pub fn v(&self) -> &[ExactRational] {
        &self.v
    }

    pub fn w(&self) -> &[i64] {
        &self.w
    }

    /// Same data with `w` replaced.
    pub fn with_w(&self, w: Vec<i64>) -> Result<Self> {
        Self::new(self.a.clone(), self.u.clone(), self.v.clone(), w)
    }
}

fn unit_u(d: usize) -> Vec<i64> {
    let mut u = vec![0; d + 2];
    u[0] = 1;
    u[1] = -1;
    u
}

/// A finite region of lattice vectors: a box, optionally cut down by a
/// linear inequality `c . n <= cap` with nonnegative `c` and by pairs of
/// coordinates that may not both be negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBox {
    bounds: Vec<(i64, i64)>,
    cap: Option<(Vec<i64>, i64)>,
    not_both_negative: Vec<(usize, usize)>,
}

impl LatticeBox {
    pub fn new(bounds: Vec<(i64, i64)>) -> Self {
        LatticeBox { bounds, cap: None, not_both_negative: Vec::new() }
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        Self::new(vec![(lo, hi); dim])
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// Number of points in the bounding box.
    pub fn volume(&self) -> u128 {
        self.bounds.iter().map(|&(lo, hi)| (hi - lo + 1).max(0) as u128).product()
    }

    /// Translates the region by `offset`.
    pub fn shifted(&self, offset: &[i64]) -> Self {
        let bounds = self.bounds.iter().zip(offset).map(|(&(lo, hi), &o)| (lo + o, hi + o)).collect();
        let cap = self.cap.as_ref().map(|(c, k)| {
            let extra: i64 = c.iter().zip(offset).map(|(a, b)| a * b).sum();
            (c.clone(), k + extra)
        });
        let not_both_negative = if offset.iter().all(|&o| o == 0) { self.not_both_negative.clone() } else { Vec::new() };
        LatticeBox { bounds, cap, not_both_negative }
    }

    /// The plain bounding box enlarged by `k` in every direction.
    pub fn widened(&self, k: i64) -> Self {
        Self::new(self.bounds.iter().map(|&(lo, hi)| (lo - k, hi + k)).collect())
    }

    /// Whether `n` lies in the region.
    pub fn contains(&self, n: &[i64]) -> bool {
        n.iter().zip(&self.bounds).all(|(&x, &(lo, hi))| lo <= x && x <= hi)
            && self.cap.as_ref().is_none_or(|(c, k)| c.iter().zip(n).map(|(a, b)| a * b).sum::<i64>() <= *k)
            && self.not_both_negative.iter().all(|&(i, j)| n[i] >= 0 || n[j] >= 0)
    }

    /// Calls `f` on every lattice point of the region, in lexicographic order.
    pub fn for_each(&self, mut f: impl FnMut(&[i64])) {
        let dim = self.dim();
        if self.bounds.iter().any(|&(lo, hi)| lo > hi) {
            return;
        }
        let coeffs = self.cap.as_ref().map(|(c, _)| c.clone()).unwrap_or_else(|| vec![0; dim]);
        let cap = self.cap.as_ref().map(|(_, k)| *k);
        // least possible contribution of coordinates k.. to the cap
        let mut rest_min = vec![0i64; dim + 1];
        for k in (0..dim).rev() {
            rest_min[k] = rest_min[k + 1] + coeffs[k] * self.bounds[k].0;
        }
        let mut n = vec![0i64; dim];
        self.walk(0, 0, &coeffs, cap, &rest_min, &mut n, &mut f);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        k: usize,
        used: i64,
        coeffs: &[i64],
        cap: Option<i64>,
        rest_min: &[i64],
        n: &mut Vec<i64>,
        f: &mut impl FnMut(&[i64]),
    ) {
        if k == n.len() {
            f(n);
            return;
        }
        let (lo, mut hi) = self.bounds[k];
        if let Some(cap) = cap {
            let slack = cap - used - rest_min[k + 1];
            if coeffs[k] > 0 {
                hi = hi.min(slack.div_euclid(coeffs[k]));
            } else if slack < 0 {
                return;
            }
        }
        for x in lo..=hi {
            if x < 0
                && self
                    .not_both_negative
                    .iter()
                    .any(|&(i, j)| (i == k && j < k && n[j] < 0) || (j == k && i < k && n[i] < 0))
            {
                continue;
            }
            n[k] = x;
            self.walk(k + 1, used + coeffs[k] * x, coeffs, cap, rest_min, n, f);
        }
        n[k] = 0;
    }
}

/// A region certified to contain every `n` with a nonzero summand of
/// `chi_fermionic(N, w)` for `A = build_matrix_a(p, d)`.
///
/// Fails with [`Error::NonFinite`] when some `L_i < 0`.
pub fn support_box(n: &SiteVector, w: &[i64]) -> Result<LatticeBox> {
    let d = n.d();
    if w.len() != d + 2 {
        return Err(Error::DimensionMismatch { expected: d + 2, got: w.len() });
    }
    let k: Vec<i64> = n.components().iter().zip(w).map(|(a, b)| a + b).collect();
    let kv = SiteVector::new(n.p(), d, k[0], k[1], k[2..].to_vec())?;
    if let Some((index, value)) = l_vector(&kv).first_negative() {
        return Err(Error::NonFinite { index, value });
    }
    let last = if d > 0 { k[d + 1] } else { 0 };
    let den = 2 * n.p() - d as i64 - 2;
    let lo_of = |ks: i64| (2 * ks - last).div_euclid(den).min(-1) + 1;
    let (lo_p, lo_m) = (lo_of(k[0]), lo_of(k[1]));
    let total = k[0] + k[1];
    let d1 = d as i64 + 1;
    let mut bounds = vec![
        (lo_p, (total - d1 * lo_m).div_euclid(d1)),
        (lo_m, (total - d1 * lo_p).div_euclid(d1)),
    ];
    for i in 0..d as i64 {
        bounds.push((0, (total - d1 * lo_p.min(lo_m)).div_euclid(2 * (i + 1))));
    }
    let mut coeffs = vec![d1, d1];
    coeffs.extend((0..d as i64).map(|i| 2 * (i + 1)));
    Ok(LatticeBox { bounds, cap: Some((coeffs, total)), not_both_negative: vec![(0, 1)] })
}

/// Which binomial enters the summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialKind {
    /// The extended coefficient `[n, m]^+`.
    Extended,
    /// The Gaussian binomial, zero unless `n >= m >= 0`.
    Standard,
}

impl BinomialKind {
    fn nonzero(self, top: i64, bottom: i64) -> bool {
        match self {
            BinomialKind::Extended => qbin_plus_nonzero(top, bottom),
            BinomialKind::Standard => top >= bottom && bottom >= 0,
        }
    }

    fn dense(self, top: i64, bottom: i64) -> std::sync::Arc<UniLaurent> {
        match self {
            BinomialKind::Extended => qbin_plus_dense(top, bottom),
            BinomialKind::Standard => qbin_dense(top, bottom),
        }
    }

    fn min_degree(self, top: i64, bottom: i64) -> Option<i64> {
        match self {
            BinomialKind::Extended => qbin_plus_min_degree(top, bottom),
            BinomialKind::Standard => self.nonzero(top, bottom).then_some(0),
        }
    }
}

/// One nonzero summand: the vector, its binomial tops, `z` and `q` exponents.
pub struct Summand<'a> {
    pub n: &'a [i64],
    pub tops: &'a [i64],
    pub z_exp: i64,
    pub q_exp: ExactRational,
}

/// Visits every `n` of `region` whose binomial factors are all nonzero.
pub fn for_each_summand(
    qd: &QuadraticData,
    n_vec: &[i64],
    region: &LatticeBox,
    kind: BinomialKind,
    mut f: impl FnMut(Summand<'_>),
) -> Result<()> {
    let dim = qd.dim();
    for len in [n_vec.len(), region.dim()] {
        if len != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: len });
        }
    }
    let k: Vec<i64> = n_vec.iter().zip(&qd.w).map(|(a, b)| a + b).collect();
    let mut tops = vec![0i64; dim];
    let mut na = vec![0i64; dim];
    region.for_each(|n| {
        for j in 0..dim {
            na[j] = (0..dim).map(|i| n[i] * qd.a[i][j]).sum();
        }
        for a in 0..dim {
            tops[a] = k[a] + n[a] - na[a];
            if !kind.nonzero(tops[a], n[a]) {
                return;
            }
        }
        let quad: i64 = n.iter().zip(&na).map(|(x, y)| x * y).sum();
        let mut q_exp = ExactRational::half(quad);
        for (x, v) in n.iter().zip(&qd.v) {
            if *x != 0 && !v.is_zero() {
                q_exp += *v * *x;
            }
        }
        let z_exp = n.iter().zip(&qd.u).map(|(x, y)| x * y).sum();
        f(Summand { n, tops: &tops, z_exp, q_exp });
    });
    Ok(())
}

fn sum_region(
    qd: &QuadraticData,
    n_vec: &[i64],
    region: &LatticeBox,
    kind: BinomialKind,
    max_q: Option<ExactRational>,
    zwin: Option<i64>,
) -> Result<BiLaurent> {
    let mut acc = LaurentAccumulator::new();
    let dim = qd.dim();
    let mut mins = vec![0i64; dim];
    for_each_summand(qd, n_vec, region, kind, |s| {
        if zwin.is_some_and(|zw| s.z_exp.abs() > zw) {
            return;
        }
        let budget = match max_q {
            None => None,
            Some(m) => {
                for a in 0..dim {
                    mins[a] = kind.min_degree(s.tops[a], s.n[a]).expect("nonzero factor");
                }
                let floor = (m - s.q_exp).floor();
                let total: i64 = mins.iter().sum();
                if total > floor {
                    return;
                }
                Some((floor, total))
            }
        };
        let mut poly = UniLaurent::one();
        let mut rest_min = budget.map_or(0, |(_, t)| t);
        for a in 0..dim {
            rest_min -= mins[a];
            let cut = budget.map(|(f, _)| f - rest_min);
            poly = poly.mul_truncated(&kind.dense(s.tops[a], s.n[a]), cut);
            if poly.is_zero() {
                return;
            }
        }
        acc.add(s.z_exp, s.q_exp, &poly);
    })?;
    Ok(acc.finish())
}

/// `sum_n z^(u.n) q^(nAn/2 + v.n) prod_a [K_a + n_a - (nA)_a, n_a]^+` over
/// `region`, with `K = N + w`.
pub fn chi_general(qd: &QuadraticData, n_vec: &[i64], region: &LatticeBox) -> Result<BiLaurent> {
    sum_region(qd, n_vec, region, BinomialKind::Extended, None, None)
}

/// [`chi_general`] keeping only q-degrees `<= max_q` and `|z-degree| <= zwin`.
pub fn chi_general_truncated(
    qd: &QuadraticData,
    n_vec: &[i64],
    region: &LatticeBox,
    max_q: Option<ExactRational>,
    zwin: Option<i64>,
) -> Result<BiLaurent> {
    sum_region(qd, n_vec, region, BinomialKind::Extended, max_q, zwin)
}

/// The fermionic sum of `N` with `A = build_matrix_a(p, d)`,
/// `u = (1, -1, 0, ...)`, `v = 0` and top shift `w`, over the certified box.
pub fn chi_fermionic(n: &SiteVector, w: &[i64]) -> Result<BiLaurent> {
    let qd = QuadraticData::standard(n.p(), n.d())?.with_w(w.to_vec())?;
    let region = support_box(n, w)?;
    chi_general(&qd, &n.components(), &region)
}

/// The same sum with Gaussian binomials in place of `[n, m]^+`.
pub fn chi_fermionic_standard(n: &SiteVector) -> Result<BiLaurent> {
    let qd = QuadraticData::standard(n.p(), n.d())?;
    let w = vec![0; n.d() + 2];
    let region = support_box(n, &w)?;
    sum_region(&qd, &n.components(), &region, BinomialKind::Standard, None, None)
}

/// Every `n` of the certified box with a nonzero extended-binomial summand.
pub fn contributing_vectors(n: &SiteVector, region: &LatticeBox) -> Result<Vec<Vec<i64>>> {
    let qd = QuadraticData::standard(n.p(), n.d())?;
    let mut out = Vec::new();
    for_each_summand(&qd, &n.components(), region, BinomialKind::Extended, |s| out.push(s.n.to_vec()))?;
    Ok(out)
}

/// Least value of `nAn/2 + v.n` over `n >= 0` with `max_a n_a = s`, for
/// the coinvariant data of level `0 <= r < p`.
pub fn shell_lower_bound(p: i64, s: i64) -> ExactRational {
    if s == 0 {
        return ExactRational::ZERO;
    }
    let quad = ExactRational::half(p * s * (s - 1));
    quad.min(ExactRational::from_integer(s))
}

/// The Gordon-type series
/// `sum_{n >= 0} z^(u.n) q^(nAn/2 + v.n) prod_a 1/(q)_{n_a}` with
/// `v = (p/2 - r - 1) u`, truncated to q-degree `<= max_deg` and
/// `|z-degree| <= zwin`. The prefactor `z^(-r/p) q^(r(r-p+2)/(2p))` is
/// not included.
pub fn chi_gordon_character(p: i64, d: usize, r: i64, max_deg: i64, zwin: i64) -> Result<BiLaurent> {
    if (d as i64) >= p {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds p - 1 = {}", p - 1)));
    }
    if !(0..p).contains(&r) {
        return Err(Error::InvalidParameter(format!("r = {r} outside [0, {p})")));
    }
    if max_deg < 0 || zwin < 0 {
        return Err(Error::InvalidParameter("cutoffs must be nonnegative".into()));
    }
    let cutoff = ExactRational::from_integer(max_deg);
    let mut shells = 0;
    while shell_lower_bound(p, shells + 1) <= cutoff {
        shells += 1;
    }
    // the first omitted shell, and every later one, lies above the cutoff
    assert!(shell_lower_bound(p, shells + 1) > cutoff);
    assert!(shell_lower_bound(p, shells + 2) >= shell_lower_bound(p, shells + 1));

    let qd = QuadraticData::coinvariant(p, d, r)?.with_w(vec![0; d + 2])?;
    let region = LatticeBox::cube(d + 2, 0, shells);
    let mut acc = LaurentAccumulator::new();
    region.for_each(|n| {
        let z_exp: i64 = n.iter().zip(qd.u()).map(|(x, y)| x * y).sum();
        if z_exp.abs() > zwin {
            return;
        }
        let dim = n.len();
        let quad: i64 = (0..dim).map(|i| (0..dim).map(|j| n[i] * qd.a[i][j] * n[j]).sum::<i64>()).sum();
        let mut q_exp = ExactRational::half(quad);
        for (x, v) in n.iter().zip(qd.v()) {
            q_exp += *v * *x;
        }
        let room = (cutoff - q_exp).floor();
        if room < 0 {
            return;
        }
        let mut series = UniLaurent::one();
        for &na in n {
            for k in 1..=na as usize {
                series.mul_inv_one_minus_qk(k, room);
            }
        }
        acc.add(z_exp, q_exp, &series);
    });
    Ok(acc.finish())
}
