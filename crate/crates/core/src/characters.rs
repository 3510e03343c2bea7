//! Character formulas with exact prefactor bookkeeping.
//!
//! Every character of level `r` carries the prefactor
//! `z^(-r/p) q^(r(r-p+2)/(2p))`; it lives in [`CharacterValue`] shifts so
//! that polynomial parts keep integral z-exponents.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{partition_series, BiLaurent, ExactRational, LaurentAccumulator};
use crate::fermionic::{
    chi_general, chi_general_truncated, chi_gordon_character, support_box, LatticeBox, QuadraticData, SiteVector,
};
use crate::supernomial::{qsup_dense, LVector};

/// `z^z_shift q^q_shift * poly`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterValue {
    pub q_shift: ExactRational,
    pub z_shift: ExactRational,
    pub poly: BiLaurent,
}

impl CharacterValue {
    pub fn new(q_shift: ExactRational, z_shift: ExactRational, poly: BiLaurent) -> Self {
        CharacterValue { q_shift, z_shift, poly }
    }

    /// Moves the integer parts of both shifts into `poly`, leaving shifts
    /// in `[0, 1)`.
    pub fn normalized(&self) -> Self {
        let qf = self.q_shift.floor();
        let zf = self.z_shift.floor();
        CharacterValue {
            q_shift: self.q_shift.fract(),
            z_shift: self.z_shift.fract(),
            poly: self.poly.mul_monomial(ExactRational::from_integer(qf), zf),
        }
    }

    /// Keeps terms of `poly` with q-degree `<= max_q` and
    /// `|z-degree| <= zwin`; shifts are untouched.
    pub fn truncated(&self, max_q: i64, zwin: i64) -> Self {
        CharacterValue {
            poly: self.poly.truncate_qdeg(Some(ExactRational::from_integer(max_q))).truncate_z(zwin),
            ..self.clone()
        }
    }
}

impl PartialEq for CharacterValue {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.q_shift == b.q_shift && a.z_shift == b.z_shift && a.poly == b.poly
    }
}

impl Eq for CharacterValue {}

/// `(q_shift, z_shift) = (r(r-p+2)/(2p), -r/p)`.
pub fn prefactor(p: i64, r: i64) -> (ExactRational, ExactRational) {
    (ExactRational::new(r * (r - p + 2), 2 * p), ExactRational::new(-r, p))
}

fn check_level(p: i64, r: i64) -> Result<()> {
    if p < 1 {
        return Err(Error::InvalidParameter(format!("p = {p} must be positive")));
    }
    if !(0..p).contains(&r) {
        return Err(Error::InvalidParameter(format!("r = {r} outside [0, {p})")));
    }
    Ok(())
}

/// `(p/2)(m^2 + m) - (r+1) m`.
fn level_exponent(p: i64, r: i64, m: i64) -> ExactRational {
    ExactRational::half(p * (m * m + m)) - ExactRational::from_integer((r + 1) * m)
}

/// The irreducible character: `(1/(q)_inf) sum_n z^n q^((p/2)(n^2+n) - n(r+1))`,
/// truncated to q-degree `<= max_deg` and `|n| <= zwin`.
pub fn char_rep(p: i64, r: i64, max_deg: i64, zwin: i64) -> Result<CharacterValue> {
    check_level(p, r)?;
    if max_deg < 0 || zwin < 0 {
        return Err(Error::InvalidParameter("cutoffs must be nonnegative".into()));
    }
    let cutoff = ExactRational::from_integer(max_deg);
    let mut acc = LaurentAccumulator::new();
    for n in -zwin..=zwin {
        let e = level_exponent(p, r, n);
        let room = (cutoff - e).floor();
        if room >= 0 {
            acc.add(n, e, &partition_series(room as usize));
        }
    }
    let (qs, zs) = prefactor(p, r);
    Ok(CharacterValue::new(qs, zs, acc.finish()))
}

/// `sum_m z^m q^((p/2)(m^2+m) - (r+1) m) S(L, p m - r + n_minus)`.
pub fn char_level_sum(p: i64, r: i64, l: &LVector, n_minus: i64) -> Result<BiLaurent> {
    let offset = n_minus - r;
    let top = l.weight();
    let mut acc = LaurentAccumulator::new();
    let mut m = (-offset).div_euclid(p);
    while p * m + offset <= top {
        acc.add(m, level_exponent(p, r, m), &qsup_dense(l, p * m + offset)?);
        m += 1;
    }
    Ok(acc.finish())
}

/// `sum_a z^a q^(p a^2 / 2) S(L, p a + n_minus)`, the supernomial side of
/// the fermionic identity.
pub fn chi_supernomial_side(p: i64, l: &LVector, n_minus: i64) -> Result<BiLaurent> {
    let top = l.weight();
    let mut acc = LaurentAccumulator::new();
    let mut a = (-n_minus).div_euclid(p);
    while p * a + n_minus <= top {
        acc.add(a, ExactRational::half(p * a * a), &qsup_dense(l, p * a + n_minus)?);
        a += 1;
    }
    Ok(acc.finish())
}

fn coinvariant_l(n: &SiteVector) -> Result<LVector> {
    let l = n.l_vector();
    match l.first_negative() {
        Some((index, value)) => Err(Error::NonFinite { index, value }),
        None => Ok(l),
    }
}

/// Supernomial form of the coinvariant character for `d = p - 1`.
pub fn char_coinv_supernomial(p: i64, r: i64, n: &SiteVector) -> Result<CharacterValue> {
    check_level(p, r)?;
    if n.p() != p || n.d() as i64 != p - 1 {
        return Err(Error::InvalidParameter(format!("expected p = {p}, d = {}", p - 1)));
    }
    let l = coinvariant_l(n)?;
    let (qs, zs) = prefactor(p, r);
    Ok(CharacterValue::new(qs, zs, char_level_sum(p, r, &l, n.n_minus())?))
}

fn check_fermionic(p: i64, r: i64, n: &SiteVector, d: usize) -> Result<()> {
    check_level(p, r)?;
    if n.p() != p || n.d() != d {
        return Err(Error::InvalidParameter(format!("site vector has p = {}, d = {}", n.p(), n.d())));
    }
    if d as i64 > p - 1 {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds p - 1")));
    }
    if !n.is_monotone() {
        return Err(Error::InvalidParameter("components violate 0 <= N_0 <= ... <= N_+ + N_-".into()));
    }
    coinvariant_l(n).map(|_| ())
}

/// Fermionic form of the coinvariant character: `A = build_matrix_a(p, d)`,
/// `v = (p/2 - r - 1) u`, binomial tops shifted by `w = r u`. For
/// `d < p - 1` the caller passes `N` with the coordinates equal to
/// `N_+ + N_-` dropped.
pub fn char_coinv_fermionic(p: i64, r: i64, n: &SiteVector, d: usize) -> Result<CharacterValue> {
    check_fermionic(p, r, n, d)?;
    let qd = QuadraticData::coinvariant(p, d, r)?;
    let region = support_box(n, qd.w())?;
    let (qs, zs) = prefactor(p, r);
    Ok(CharacterValue::new(qs, zs, chi_general(&qd, &n.components(), &region)?))
}

/// [`char_coinv_fermionic`] truncated to q-degree `<= max_deg` and
/// `|z-degree| <= zwin`, computed without expanding the discarded part.
pub fn char_coinv_fermionic_truncated(
    p: i64,
    r: i64,
    n: &SiteVector,
    d: usize,
    max_deg: i64,
    zwin: i64,
) -> Result<CharacterValue> {
    check_fermionic(p, r, n, d)?;
    let qd = QuadraticData::coinvariant(p, d, r)?;
    let region = support_box(n, qd.w())?;
    let poly = chi_general_truncated(
        &qd,
        &n.components(),
        &region,
        Some(ExactRational::from_integer(max_deg)),
        Some(zwin),
    )?;
    let (qs, zs) = prefactor(p, r);
    Ok(CharacterValue::new(qs, zs, poly))
}

/// Outcome of a spectral-flow comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCheck {
    pub pass: bool,
    pub lhs: BiLaurent,
    pub rhs: BiLaurent,
}

/// Compares the level-`r` sum at `N_- - p` with
/// `z q^(p-r-1)` times the sum at `N_-` under `z -> z q^p`.
pub fn spectral_flow_check(p: i64, r: i64, n: &SiteVector) -> Result<FlowCheck> {
    check_level(p, r)?;
    let l = coinvariant_l(n)?;
    let lhs = char_level_sum(p, r, &l, n.n_minus() - p)?;
    let rhs = char_level_sum(p, r, &l, n.n_minus())?
        .substitute_z(ExactRational::from_integer(p))
        .mul_monomial(ExactRational::from_integer(p - r - 1), 1);
    Ok(FlowCheck { pass: lhs == rhs, lhs, rhs })
}

/// Character of the representation attached to `(A, N)`: the fermionic sum
/// over `region`, truncated to q-degree `<= max_deg` and `|z-degree| <= zwin`.
pub fn char_brep(qd: &QuadraticData, n: &[i64], region: &LatticeBox, max_deg: i64, zwin: i64) -> Result<BiLaurent> {
    chi_general_truncated(qd, n, region, Some(ExactRational::from_integer(max_deg)), Some(zwin))
}

/// The unbounded (`N -> infinity`) variant of [`char_brep`]: the Gordon-type
/// series of level `r` with the prefactor attached.
pub fn char_brep_gordon(p: i64, d: usize, r: i64, max_deg: i64, zwin: i64) -> Result<CharacterValue> {
    let (qs, zs) = prefactor(p, r);
    Ok(CharacterValue::new(qs, zs, chi_gordon_character(p, d, r, max_deg, zwin)?))
}

/// `eval_{q=z=1}` of the supernomial character polynomial.
pub fn character_dimension(p: i64, r: i64, n: &SiteVector) -> Result<BigInt> {
    Ok(char_coinv_supernomial(p, r, n)?.poly.eval_q1_z1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermionic::chi_fermionic;
    use crate::qgauss::qbin_plus;
    use crate::verlinde::{d_vector, decompose_n};

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn poly(terms: &[(i64, i64, i64)]) -> BiLaurent {
        BiLaurent::from_terms(terms.iter().map(|&(q, z, c)| (ExactRational::from_integer(q), z, c)))
    }

    fn coinvariant_vectors(p: i64, max_entry: i64) -> Vec<SiteVector> {
        let d = (p - 1) as usize;
        let mut out = Vec::new();
        let mut comps = vec![-max_entry; d + 2];
        loop {
            if comps[2..].iter().all(|&x| x >= 0) {
                let n = SiteVector::new(p, d, comps[0], comps[1], comps[2..].to_vec()).unwrap();
                if n.is_monotone() && n.l_vector().is_nonnegative() {
                    out.push(n);
                }
            }
            let mut k = 0;
            while k < comps.len() {
                comps[k] += 1;
                if comps[k] <= max_entry {
                    break;
                }
                comps[k] = -max_entry;
                k += 1;
            }
            if k == comps.len() {
                return out;
            }
        }
    }

    #[test]
    fn normalization_moves_integer_parts() {
        let a = CharacterValue::new(r(3, 2), r(-1, 3), BiLaurent::one());
        let b = CharacterValue::new(r(1, 2), r(2, 3), poly(&[(1, -1, 1)]));
        assert_eq!(a, b);
        assert_ne!(a, CharacterValue::new(r(1, 2), r(2, 3), BiLaurent::one()));
    }

    #[test]
    fn char_rep_examples() {
        let c = char_rep(2, 0, 2, 1).unwrap();
        assert_eq!(c.poly, poly(&[(0, 0, 1), (1, 0, 1), (2, 0, 2), (1, 1, 1), (2, 1, 1), (1, -1, 1), (2, -1, 1)]));
        assert_eq!((c.q_shift, c.z_shift), (ExactRational::ZERO, ExactRational::ZERO));
        assert_eq!(char_rep(1, 0, 1, 0).unwrap().poly, poly(&[(0, 0, 1), (1, 0, 1)]));
        let c = char_rep(3, 1, 0, 0).unwrap();
        assert_eq!((c.q_shift, c.z_shift), (r(0, 1), r(-1, 3)));
        assert_eq!(prefactor(4, 1), (r(-1, 8), r(-1, 4)));
        assert!(char_rep(2, 2, 1, 1).is_err());
    }

    #[test]
    fn char_coinv_supernomial_examples() {
        let n = SiteVector::new(2, 1, 1, 1, vec![1]).unwrap();
        assert_eq!(char_coinv_supernomial(2, 0, &n).unwrap().poly, BiLaurent::one());
        let n = SiteVector::new(2, 1, 0, 0, vec![0]).unwrap();
        assert_eq!(char_coinv_supernomial(2, 0, &n).unwrap().poly, BiLaurent::one());
    }

    #[test]
    fn theorem_char_i_equals_ii() {
        for p in 2..=3 {
            for n in coinvariant_vectors(p, 3) {
                for lvl in 0..p {
                    let f = char_coinv_fermionic(p, lvl, &n, (p - 1) as usize).unwrap();
                    let s = char_coinv_supernomial(p, lvl, &n).unwrap();
                    assert_eq!(f, s, "p={p} r={lvl} N={n:?}");
                }
            }
        }
    }

    #[test]
    fn fermionic_r_zero_is_shifted_chi() {
        for p in 2..=3 {
            for n in coinvariant_vectors(p, 2) {
                let d = (p - 1) as usize;
                let f = char_coinv_fermionic(p, 0, &n, d).unwrap();
                let qd = QuadraticData::coinvariant(p, d, 0).unwrap();
                let direct = chi_general(&qd, &n.components(), &support_box(&n, &vec![0; d + 2]).unwrap()).unwrap();
                assert_eq!(f.poly, direct);
            }
        }
    }

    #[test]
    fn corollary_reduced_d() {
        for p in 2..=3 {
            let full_d = (p - 1) as usize;
            for d in 0..full_d {
                for np in -2..=3 {
                    for nm in -2..=3 {
                        let total = np + nm;
                        if total < 0 {
                            continue;
                        }
                        for last in 0..=total {
                            let h: Vec<i64> = if d == 0 { vec![] } else { (0..d).map(|i| (last * (i as i64 + 1) / d as i64).min(total)).collect() };
                            let short = SiteVector::new(p, d, np, nm, h.clone()).unwrap();
                            if !short.is_monotone() || !short.l_vector().is_nonnegative() {
                                continue;
                            }
                            let mut long = short.clone();
                            while long.d() < full_d {
                                long = long.padded().unwrap();
                            }
                            for lvl in 0..p {
                                assert_eq!(
                                    char_coinv_fermionic(p, lvl, &short, d).unwrap(),
                                    char_coinv_fermionic(p, lvl, &long, full_d).unwrap(),
                                    "p={p} d={d} N={short:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_is_contragredient_fusion_value() {
        for p in 2..=3 {
            for n in coinvariant_vectors(p, 3) {
                let dv = d_vector(p as usize, &decompose_n(&n).unwrap()).unwrap();
                for lvl in 0..p {
                    assert_eq!(character_dimension(p, lvl, &n).unwrap(), *dv.get(-lvl), "N={n:?}");
                }
            }
        }
    }

    #[test]
    fn spectral_flow_examples() {
        let n = SiteVector::new(2, 1, 1, 1, vec![1]).unwrap();
        assert!(spectral_flow_check(2, 0, &n).unwrap().pass);
        for n in coinvariant_vectors(3, 2) {
            assert!(spectral_flow_check(3, 1, &n).unwrap().pass, "N={n:?}");
        }
        let n = SiteVector::new(2, 1, 0, 0, vec![0]).unwrap();
        let check = spectral_flow_check(2, 1, &n).unwrap();
        assert!(check.pass);
    }

    #[test]
    fn supernomial_side_matches_fermionic_at_d0() {
        for total in 0..5 {
            for nm in -2..=total + 2 {
                let n = SiteVector::new(2, 0, total - nm, nm, vec![]).unwrap();
                assert_eq!(
                    chi_fermionic(&n, &[0, 0]).unwrap(),
                    chi_supernomial_side(2, &n.l_vector(), nm).unwrap()
                );
            }
        }
    }

    #[test]
    fn brep_examples() {
        let qd = QuadraticData::coinvariant(2, 0, 0).unwrap().with_w(vec![0, 0]).unwrap();
        let big = SiteVector::new(2, 0, 10, 10, vec![]).unwrap();
        let region = support_box(&big, &[0, 0]).unwrap();
        let b = char_brep(&qd, &big.components(), &region, 4, 2).unwrap();
        let g = chi_gordon_character(2, 0, 0, 4, 2).unwrap();
        assert_eq!(b, g);
        assert_eq!(char_brep_gordon(2, 0, 0, 4, 2).unwrap().poly, g);

        // A = 0, u = 1: sum_n z^n [1 + n, n]^+ over a window, by hand
        let zero = QuadraticData::new(vec![vec![0]], vec![1], vec![ExactRational::ZERO], vec![0]).unwrap();
        let window = LatticeBox::cube(1, -3, 3);
        let got = char_brep(&zero, &[1], &window, 10, 5).unwrap();
        let mut want = BiLaurent::zero();
        for k in -3..=3 {
            want = &want + &qbin_plus(1 + k, k).mul_monomial(ExactRational::ZERO, k);
        }
        assert_eq!(got, want.truncate_qdeg(Some(ExactRational::from_integer(10))).truncate_z(5));
    }

    #[test]
    fn gordon_equals_char_rep_for_all_d() {
        for p in 2..=3 {
            for lvl in 0..p {
                let rep = char_rep(p, lvl, 4, 2).unwrap();
                for d in 0..p as usize {
                    assert_eq!(char_brep_gordon(p, d, lvl, 4, 2).unwrap(), rep, "p={p} r={lvl} d={d}");
                }
            }
        }
    }
}
