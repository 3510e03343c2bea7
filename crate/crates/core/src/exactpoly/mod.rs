//! Exact arithmetic: rational exponents, sparse bivariate Laurent
//! polynomials in `q` and `z`, dense q-polynomials and the cyclic quotient
//! ring `Z[x]/(x^p - 1)`.

mod bilaurent;
mod cyclotomic;
mod dense;
mod rational;

pub use bilaurent::{poly_add, poly_mul, BiLaurent, LaurentAccumulator};
pub use cyclotomic::CyclotomicVector;
pub use dense::UniLaurent;
pub use rational::ExactRational;

use num_bigint::BigInt;

use crate::error::Result;

/// `z -> z q^c` applied termwise.
pub fn substitute_z(p: &BiLaurent, c: ExactRational) -> BiLaurent {
    p.substitute_z(c)
}

/// Sum of all coefficients.
pub fn eval_q1_z1(p: &BiLaurent) -> BigInt {
    p.eval_q1_z1()
}

/// Reduction of a z-only polynomial modulo `z^p = 1`.
pub fn project_cyclotomic(p: &BiLaurent, modulus: usize) -> Result<CyclotomicVector> {
    p.project_cyclotomic(modulus)
}

/// Drops terms above q-degree `max` (`None` is the no-truncation sentinel).
pub fn truncate_qdeg(p: &BiLaurent, max: Option<ExactRational>) -> BiLaurent {
    p.truncate_qdeg(max)
}

/// Dense coefficients of `1/(q)_inf` up to `q^max_deg`.
pub(crate) fn partition_series(max_deg: usize) -> UniLaurent {
    let mut s = UniLaurent::one();
    for k in 1..=max_deg {
        s.mul_inv_one_minus_qk(k, max_deg as i64);
    }
    s
}

/// `1/(q)_inf` truncated at q-degree `max_deg`: the partition generating
/// function `sum_{k <= max_deg} p(k) q^k`.
pub fn pochhammer_inv_series(max_deg: usize) -> BiLaurent {
    BiLaurent::from_uni(&partition_series(max_deg), 0, ExactRational::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Long division of 1 by prod_{k<=d}(1 - q^k), coefficient by coefficient.
    fn inverse_by_long_division(d: usize) -> Vec<i64> {
        let mut denom = vec![0i64; d + 1];
        denom[0] = 1;
        for k in 1..=d {
            for i in (k..=d).rev() {
                denom[i] -= denom[i - k];
            }
        }
        let mut quot = vec![0i64; d + 1];
        let mut rem = vec![0i64; d + 1];
        rem[0] = 1;
        for i in 0..=d {
            quot[i] = rem[i];
            for j in i..=d {
                rem[j] -= quot[i] * denom[j - i];
            }
        }
        quot
    }

    #[test]
    fn partition_series_examples() {
        assert_eq!(pochhammer_inv_series(0), BiLaurent::one());
        assert_eq!(
            pochhammer_inv_series(3),
            BiLaurent::from_q_terms(&[(0, 1), (1, 1), (2, 2), (3, 3)])
        );
        assert_eq!(
            pochhammer_inv_series(5),
            BiLaurent::from_q_terms(&[(0, 1), (1, 1), (2, 2), (3, 3), (4, 5), (5, 7)])
        );
    }

    #[test]
    fn partition_series_matches_long_division() {
        for d in 0..=25 {
            let oracle = inverse_by_long_division(d);
            let got = partition_series(d);
            for (k, c) in oracle.iter().enumerate() {
                assert_eq!(got.coeff(k as i64), BigInt::from(*c), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn partition_series_inverts_pochhammer() {
        let d = 12;
        let mut prod = partition_series(d);
        for k in 1..=d {
            prod.mul_one_minus_qk(k);
        }
        assert_eq!(prod.truncated(Some(d as i64)), UniLaurent::one());
    }

    fn small_poly() -> impl Strategy<Value = BiLaurent> {
        prop::collection::vec((-4i64..5, 1i64..3, -3i64..4, -5i64..6), 0..6).prop_map(|ts| {
            BiLaurent::from_terms(
                ts.into_iter()
                    .map(|(n, d, z, c)| (ExactRational::new(n, d), z, c)),
            )
        })
    }

    fn z_poly() -> impl Strategy<Value = BiLaurent> {
        prop::collection::vec((-6i64..7, -5i64..6), 0..6).prop_map(|ts| {
            BiLaurent::from_terms(ts.into_iter().map(|(z, c)| (ExactRational::ZERO, z, c)))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().all(|(_, _, c)| c != &BigInt::from(0)));
        }

        #[test]
        fn substitution_composes(a in small_poly(), n1 in -5i64..6, n2 in -5i64..6, d in 1i64..4) {
            let c1 = ExactRational::new(n1, d);
            let c2 = ExactRational::new(n2, 2);
            prop_assert_eq!(a.substitute_z(c1).substitute_z(c2), a.substitute_z(c1 + c2));
        }

        #[test]
        fn projection_is_ring_hom(a in z_poly(), b in z_poly(), p in 1usize..6) {
            let lhs = (&a * &b).project_cyclotomic(p).unwrap();
            let rhs = a.project_cyclotomic(p).unwrap()
                .cyclic_mul(&b.project_cyclotomic(p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn json_round_trip(a in small_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: BiLaurent = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
