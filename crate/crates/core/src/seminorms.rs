//! Weighted coefficient seminorms p_k and operator continuity checks.
//!
//! p_k(c)^2 = sum_m |c^m|^2 (m+1)^{2k}, indices from 0, so p_0 is exactly
//! the coefficient-space norm. The family is non-decreasing in k and grades
//! how fast an expansion's tail decays; the ladder operators are continuous
//! with respect to it:
//!
//! ```text
//! p_k(J+ c) <= 2^k p_{k+1}(c)      p_k(J- c) <= p_{k+1}(c)      p_k(J3 c) <= p_{k+1}(c)
//! ```

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};
use crate::su11;
use crate::tensor::{CoeffTensor, MultiIndexIter};

/// Largest admitted seminorm order; (m+1)^{2k} grows fast.
pub const MAX_ORDER: usize = 16;

fn check_order(k: usize, cap: usize) -> Result<()> {
    if k > cap {
        return Err(Error::argument(format!(
            "seminorm order {k} exceeds cap {cap}"
        )));
    }
    Ok(())
}

/// Sum of squares with per-term weight factors, falling back to log-space
/// scaling if the direct accumulation overflows.
fn weighted_norm(terms: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    let direct: f64 = terms.clone().map(|(c, w)| (c * c) * w).sum();
    if direct.is_finite() {
        return direct.sqrt();
    }
    // log-sum-exp over 2 ln|c| + ln w
    let logs: Vec<f64> = terms
        .filter(|&(c, w)| c != 0.0 && w != 0.0)
        .map(|(c, w)| 2.0 * c.abs().ln() + w.ln())
        .collect();
    let peak = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|&l| (l - peak).exp()).sum();
    (0.5 * (peak + sum.ln())).exp()
}

/// p_k(c) = sqrt(sum_m |c^m|^2 (m+1)^{2k}).
pub fn seminorm(c: &CoeffVector, k: usize) -> Result<f64> {
    check_order(k, MAX_ORDER)?;
    Ok(weighted_norm(
        c.coeffs()
            .iter()
            .enumerate()
            .map(move |(m, &cm)| (cm, (m as f64 + 1.0).powi(2 * k as i32))),
    ))
}

/// Per-axis weighted seminorm p_{k_1,...,k_n} on a coefficient tensor.
pub fn seminorm_nd(c: &CoeffTensor, ks: &[usize]) -> Result<f64> {
    if ks.len() != c.spec().dim() {
        return Err(Error::argument(format!(
            "got {} orders for a {}-dimensional tensor",
            ks.len(),
            c.spec().dim()
        )));
    }
    for &k in ks {
        check_order(k, MAX_ORDER)?;
    }
    let shape = c.spec().shape();
    let weights: Vec<f64> = MultiIndexIter::new(&shape)
        .map(|m| {
            m.iter()
                .zip(ks)
                .map(|(&mi, &ki)| (mi as f64 + 1.0).powi(2 * ki as i32))
                .product()
        })
        .collect();
    Ok(weighted_norm(
        c.coeffs()
            .iter()
            .zip(weights)
            .map(|(&cm, w)| (cm, w)),
    ))
}

/// One side-by-side inequality check: holds iff lhs <= rhs (+ rounding slack).
#[derive(Debug, Clone, Copy)]
pub struct IneqCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl IneqCheck {
    fn of(lhs: f64, rhs: f64) -> Self {
        IneqCheck {
            lhs,
            rhs,
            holds: lhs <= rhs * (1.0 + 1e-12) + 1e-300,
        }
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Continuity of the three operators at one seminorm order.
#[derive(Debug, Clone, Copy)]
pub struct ContinuityCheck {
    /// p_k(J+ c) <= 2^k p_{k+1}(c)
    pub raise: IneqCheck,
    /// p_k(J- c) <= p_{k+1}(c)
    pub lower: IneqCheck,
    /// p_k(J3 c) <= p_{k+1}(c)
    pub j3: IneqCheck,
}

impl ContinuityCheck {
    pub fn all_hold(&self) -> bool {
        self.raise.holds && self.lower.holds && self.j3.holds
    }
}

/// Verifies the three continuity inequalities on `c` at order `k` (k <= 15,
/// since the right-hand sides need order k+1).
pub fn continuity_check(c: &CoeffVector, k: usize) -> Result<ContinuityCheck> {
    check_order(k, MAX_ORDER - 1)?;
    let p_next = seminorm(c, k + 1)?;
    let raised = su11::apply_jplus(c).output;
    let lowered = su11::apply_jminus(c).output;
    let rotated = su11::apply_j3(c).output;
    Ok(ContinuityCheck {
        raise: IneqCheck::of(seminorm(&raised, k)?, 2.0f64.powi(k as i32) * p_next),
        lower: IneqCheck::of(seminorm(&lowered, k)?, p_next),
        j3: IneqCheck::of(seminorm(&rotated, k)?, p_next),
    })
}

/// The seminorm values p_0..p_{k_max} of one coefficient vector.
///
/// Diagnostic: a rapidly growing profile signals a slowly decaying tail
/// (every finite vector is admissible; growth rate is the information).
#[derive(Debug, Clone)]
pub struct SeminormProfile {
    pub orders: Vec<usize>,
    pub values: Vec<f64>,
}

pub fn membership_profile(c: &CoeffVector, k_max: usize) -> Result<SeminormProfile> {
    check_order(k_max, MAX_ORDER)?;
    let orders: Vec<usize> = (0..=k_max).collect();
    let values = orders
        .iter()
        .map(|&k| seminorm(c, k))
        .collect::<Result<Vec<f64>>>()?;
    Ok(SeminormProfile { orders, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{BasisSpec1D, BasisSpecND, Interval, RectDomain};

    fn spec(n: usize) -> BasisSpec1D {
        BasisSpec1D::new(Interval::new(3.0, 7.0).unwrap(), n).unwrap()
    }

    #[test]
    fn frozen_values() {
        let c = CoeffVector::new(spec(1), vec![1.0, 1.0]).unwrap();
        // 1*1^2 + 1*2^2 = 5
        assert!((seminorm(&c, 1).unwrap() - 2.236_067_977_499_79).abs() < 1e-15);
        assert_eq!(seminorm(&CoeffVector::zeros(spec(9)), 4).unwrap(), 0.0);
    }

    #[test]
    fn order_zero_is_the_norm() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let s = spec(30);
        let coeffs: Vec<f64> = (0..s.len()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let c = CoeffVector::new(s, coeffs).unwrap();
        assert_eq!(seminorm(&c, 0).unwrap(), c.norm());
    }

    #[test]
    fn order_cap() {
        let c = CoeffVector::unit(spec(4), 1).unwrap();
        assert!(seminorm(&c, 16).is_ok());
        assert!(seminorm(&c, 17).is_err());
        assert!(continuity_check(&c, 15).is_ok());
        assert!(continuity_check(&c, 16).is_err());
    }

    #[test]
    fn monotone_in_order() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let s = spec(20);
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..s.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let c = CoeffVector::new(s, coeffs).unwrap();
            let mut prev = 0.0;
            for k in 0..=8 {
                let p = seminorm(&c, k).unwrap();
                assert!(p >= prev, "k={k}");
                prev = p;
            }
        }
    }

    #[test]
    fn nd_values_and_factorization() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let nd = BasisSpecND::new(RectDomain::new(vec![iv, iv]).unwrap(), vec![3, 4]).unwrap();
        let mut t = CoeffTensor::zeros(nd.clone());
        t.set(&[1, 2], 1.0).unwrap();
        // (1+1)^2 (2+1)^2 under the square root = 2*3
        assert!((seminorm_nd(&t, &[1, 1]).unwrap() - 6.0).abs() < 1e-14);
        assert_eq!(seminorm_nd(&t, &[0, 0]).unwrap(), t.norm());
        assert!(seminorm_nd(&t, &[1]).is_err());

        // separable tensor factorizes into 1D seminorms
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let u: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut prod = CoeffTensor::zeros(nd);
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                prod.set(&[i, j], ui * vj).unwrap();
            }
        }
        let su = BasisSpec1D::new(iv, 3).unwrap();
        let sv = BasisSpec1D::new(iv, 4).unwrap();
        let pu = seminorm(&CoeffVector::new(su, u).unwrap(), 2).unwrap();
        let pv = seminorm(&CoeffVector::new(sv, v).unwrap(), 1).unwrap();
        let joint = seminorm_nd(&prod, &[2, 1]).unwrap();
        assert!((joint - pu * pv).abs() < 1e-12 * (1.0 + joint));
    }

    #[test]
    fn continuity_on_unit_vector() {
        let c = CoeffVector::unit(spec(10), 5).unwrap();
        let check = continuity_check(&c, 2).unwrap();
        assert!(check.all_hold());
        // J+ e_5 = 6 e_6: lhs = 6*7^2, rhs = 4*6^3
        assert!((check.raise.slack() - 570.0).abs() < 1e-9);
        // J- e_5 = 5 e_4: lhs = 5*5^2, rhs = 6^3
        assert!((check.lower.slack() - 91.0).abs() < 1e-9);
        // J3 e_5 = 5.5 e_5: lhs = 5.5*6^2, rhs = 6^3
        assert!((check.j3.slack() - 18.0).abs() < 1e-9);
    }

    #[test]
    fn continuity_on_zero_vector() {
        let z = CoeffVector::zeros(spec(6));
        let check = continuity_check(&z, 3).unwrap();
        assert!(check.all_hold());
        assert_eq!(check.raise.lhs, 0.0);
        assert_eq!(check.raise.rhs, 0.0);
        assert_eq!(check.lower.slack(), 0.0);
    }

    #[test]
    fn continuity_on_random_vectors() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let s = spec(40);
        for _ in 0..100 {
            let coeffs: Vec<f64> = (0..s.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let c = CoeffVector::new(s, coeffs).unwrap();
            for k in 0..=3 {
                assert!(continuity_check(&c, k).unwrap().all_hold());
            }
        }
    }

    #[test]
    fn profiles() {
        let e0 = CoeffVector::unit(spec(5), 0).unwrap();
        let p = membership_profile(&e0, 3).unwrap();
        assert_eq!(p.orders, vec![0, 1, 2, 3]);
        assert!(p.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));

        let s = spec(20);
        let coeffs: Vec<f64> = (0..=20).map(|m| (2.0f64).powi(-(m as i32))).collect();
        let c = CoeffVector::new(s, coeffs).unwrap();
        let p = membership_profile(&c, 2).unwrap();
        assert!(p.values.iter().all(|v| v.is_finite()));
        assert!(p.values[0] < p.values[1] && p.values[1] < p.values[2]);

        let z = CoeffVector::zeros(spec(5));
        let p = membership_profile(&z, 2).unwrap();
        assert!(p.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn huge_coefficients_use_scaled_path() {
        let s = spec(400);
        let mut coeffs = vec![0.0; s.len()];
        coeffs[300] = 1e160;
        coeffs[399] = 1e160;
        let c = CoeffVector::new(s, coeffs).unwrap();
        let p = seminorm(&c, 16).unwrap();
        assert!(p.is_finite() && p > 1e160);
        // dominated by the larger weight times 1e160
        let expect = 1e160 * (400f64).powi(16) * (1.0 + (301f64 / 400f64).powi(32)).sqrt();
        assert!((p / expect - 1.0).abs() < 1e-9);
    }
}
