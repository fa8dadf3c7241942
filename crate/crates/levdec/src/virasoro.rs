//! q-series utilities for the coset Virasoro character
//! chi(q) = phi(q^2)/phi(q), phi the Euler function.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Truncated integer q-series; coefficient index = power of q. Trailing
/// zeros are kept: length is always order + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        QSeries { coeffs }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                if self.coeffs[i].is_zero() || other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                coeffs[i + j] += prod;
            }
        }
        QSeries { coeffs }
    }

    /// Series inverse; constant term must be 1.
    pub fn invert(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonInvertibleConstant);
        }
        let order = self.order();
        let mut inv = vec![BigInt::zero(); order + 1];
        inv[0] = BigInt::one();
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv[n] = -acc;
        }
        Ok(QSeries { coeffs: inv })
    }

    /// Substitute q -> q^k.
    pub fn substitute_power(&self, k: usize) -> QSeries {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k <= order {
                coeffs[i * k] = c.clone();
            }
        }
        QSeries { coeffs }
    }
}

/// Euler function phi(q) = prod_{n>=1} (1 - q^n), truncated.
pub fn euler_phi(order: usize) -> QSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for n in 1..=order.max(1) {
        if n > order {
            break;
        }
        // multiply by (1 - q^n) in place
        for i in (0..=order.saturating_sub(n)).rev() {
            if !coeffs[i].is_zero() {
                let sub = coeffs[i].clone();
                coeffs[i + n] -= sub;
            }
        }
    }
    QSeries { coeffs }
}

/// chi(q) = phi(q^2) / phi(q), truncated.
pub fn coset_character(order: usize) -> QSeries {
    let phi = euler_phi(order);
    let phi2 = phi.substitute_power(2);
    phi2.mul(&phi.invert().expect("phi has constant term 1"))
}

/// Report on chi(q) - 1 - q chi(q): the closure argument needs it free of
/// negative coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegShiftReport {
    pub shifted: QSeries,
    pub first_negative: Option<usize>,
}

pub fn check_nonneg_shift(chi: &QSeries) -> NonnegShiftReport {
    let order = chi.order();
    let mut coeffs = chi.coeffs.clone();
    coeffs[0] -= BigInt::one();
    for i in (1..=order).rev() {
        let sub = chi.coeffs[i - 1].clone();
        coeffs[i] -= sub;
    }
    let first_negative = coeffs.iter().position(|c| c.is_negative());
    NonnegShiftReport {
        shifted: QSeries { coeffs },
        first_negative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euler_phi_small_orders() {
        assert_eq!(euler_phi(0).coeffs, ints(&[1]));
        assert_eq!(euler_phi(6).coeffs, ints(&[1, -1, -1, 0, 0, 1, 0]));
        // phi(q^2) at order 4.
        assert_eq!(
            euler_phi(4).substitute_power(2).coeffs,
            ints(&[1, 0, -1, 0, -1])
        );
    }

    #[test]
    fn coset_character_values() {
        let chi = coset_character(12);
        assert_eq!(chi.coeffs, ints(&[1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15]));
        let chi = coset_character(50);
        assert!(chi.coeffs.iter().all(|c| c > &BigInt::zero()));
    }

    #[test]
    fn nonneg_shift() {
        let chi = coset_character(12);
        let report = check_nonneg_shift(&chi);
        assert_eq!(
            report.shifted.coeffs,
            ints(&[0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 2, 2, 3])
        );
        assert!(report.first_negative.is_none());
        // Degenerate order-0 case.
        let r0 = check_nonneg_shift(&coset_character(0));
        assert_eq!(r0.shifted.coeffs, ints(&[0]));
        // Long run.
        let r = check_nonneg_shift(&coset_character(200));
        assert!(r.first_negative.is_none());
    }

    #[test]
    fn chi_times_phi_is_phi_of_q2() {
        let order = 40;
        let chi = coset_character(order);
        let lhs = chi.mul(&euler_phi(order));
        assert_eq!(lhs, euler_phi(order).substitute_power(2));
    }

    #[test]
    fn chi_coeffs_nondecreasing() {
        let chi = coset_character(200);
        for w in chi.coeffs.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }
}
