//! Truncated formal series with representation-ring coefficients, in one
//! grading variable (degree m) or two (level l, degree m).
//!
//! Truncation is a hard window carried by every series; binary operations
//! insist on equal windows instead of silently extending, since silent
//! window mismatch is the classic bug in this kind of engine.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::glrep::{self, RepRingElem};

/// Series in the degree variable only: coeffs[m], m = 0..=pmax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MSeries {
    pub coeffs: Vec<RepRingElem>,
}

impl MSeries {
    pub fn zero(pmax: usize) -> Self {
        MSeries {
            coeffs: vec![RepRingElem::zero(); pmax + 1],
        }
    }

    pub fn one(d: usize, pmax: usize) -> Self {
        let mut s = MSeries::zero(pmax);
        s.coeffs[0] = RepRingElem::one(d);
        s
    }

    pub fn pmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &MSeries) -> Result<MSeries> {
        if self.pmax() != other.pmax() {
            return Err(Error::WindowMismatch(format!(
                "m-window {} vs {}",
                self.pmax(),
                other.pmax()
            )));
        }
        let pmax = self.pmax();
        let coeffs: Vec<RepRingElem> = (0..=pmax)
            .into_par_iter()
            .map(|m| {
                let mut acc = RepRingElem::zero();
                for k in 0..=m {
                    if self.coeffs[k].is_zero() || other.coeffs[m - k].is_zero() {
                        continue;
                    }
                    let prod = glrep::tensor(&self.coeffs[k], &other.coeffs[m - k])?;
                    acc.add_assign(&prod);
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(MSeries { coeffs })
    }

    /// Multiplicative inverse; the constant term must be the trivial module.
    pub fn invert(&self) -> Result<MSeries> {
        let d = self
            .coeffs[0]
            .rank()
            .ok_or(Error::NonInvertibleConstant)?;
        if self.coeffs[0] != RepRingElem::one(d) {
            return Err(Error::NonInvertibleConstant);
        }
        let pmax = self.pmax();
        let mut inv = MSeries::zero(pmax);
        inv.coeffs[0] = RepRingElem::one(d);
        for m in 1..=pmax {
            let mut acc = RepRingElem::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() || inv.coeffs[m - k].is_zero() {
                    continue;
                }
                let prod = glrep::tensor(&self.coeffs[k], &inv.coeffs[m - k])?;
                acc.add_assign(&prod);
            }
            inv.coeffs[m] = acc.neg();
        }
        Ok(inv)
    }

    pub fn truncated(&self, pmax: usize) -> MSeries {
        MSeries {
            coeffs: self.coeffs[..=pmax.min(self.pmax())]
                .to_vec()
                .into_iter()
                .chain(std::iter::repeat(RepRingElem::zero()).take(pmax.saturating_sub(self.pmax())))
                .collect(),
        }
    }
}

/// Series in (level, degree): coeffs[l][m], l = 0..=lmax, m = 0..=pmax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    pub coeffs: Vec<Vec<RepRingElem>>,
}

impl BiSeries {
    pub fn zero(lmax: usize, pmax: usize) -> Self {
        BiSeries {
            coeffs: vec![vec![RepRingElem::zero(); pmax + 1]; lmax + 1],
        }
    }

    pub fn one(d: usize, lmax: usize, pmax: usize) -> Self {
        let mut s = BiSeries::zero(lmax, pmax);
        s.coeffs[0][0] = RepRingElem::one(d);
        s
    }

    pub fn lmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn pmax(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn get(&self, l: usize, m: usize) -> &RepRingElem {
        &self.coeffs[l][m]
    }

    pub fn set(&mut self, l: usize, m: usize, v: RepRingElem) {
        self.coeffs[l][m] = v;
    }

    fn check_window(&self, other: &BiSeries) -> Result<()> {
        if self.lmax() != other.lmax() || self.pmax() != other.pmax() {
            return Err(Error::WindowMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.lmax(),
                self.pmax(),
                other.lmax(),
                other.pmax()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_window(other)?;
        let mut out = self.clone();
        for l in 0..=self.lmax() {
            for m in 0..=self.pmax() {
                out.coeffs[l][m].add_assign(&other.coeffs[l][m]);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_window(other)?;
        let (lmax, pmax) = (self.lmax(), self.pmax());
        let cells: Vec<(usize, usize)> = (0..=lmax)
            .flat_map(|l| (0..=pmax).map(move |m| (l, m)))
            .collect();
        let computed: Vec<RepRingElem> = cells
            .par_iter()
            .map(|&(l, m)| {
                let mut acc = RepRingElem::zero();
                for k in 0..=l {
                    for j in 0..=m {
                        let a = &self.coeffs[k][j];
                        let b = &other.coeffs[l - k][m - j];
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        acc.add_assign(&glrep::tensor(a, b)?);
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        let mut out = BiSeries::zero(lmax, pmax);
        for (idx, &(l, m)) in cells.iter().enumerate() {
            out.coeffs[l][m] = computed[idx].clone();
        }
        Ok(out)
    }

    /// Inverse with trivial constant term, by coefficient recursion over the
    /// componentwise order.
    pub fn invert(&self) -> Result<BiSeries> {
        let d = self.coeffs[0][0]
            .rank()
            .ok_or(Error::NonInvertibleConstant)?;
        if self.coeffs[0][0] != RepRingElem::one(d) {
            return Err(Error::NonInvertibleConstant);
        }
        let (lmax, pmax) = (self.lmax(), self.pmax());
        let mut inv = BiSeries::zero(lmax, pmax);
        inv.coeffs[0][0] = RepRingElem::one(d);
        for l in 0..=lmax {
            for m in 0..=pmax {
                if l == 0 && m == 0 {
                    continue;
                }
                let mut acc = RepRingElem::zero();
                for k in 0..=l {
                    for j in 0..=m {
                        if k == 0 && j == 0 {
                            continue;
                        }
                        let a = &self.coeffs[k][j];
                        let b = &inv.coeffs[l - k][m - j];
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        acc.add_assign(&glrep::tensor(a, b)?);
                    }
                }
                inv.coeffs[l][m] = acc.neg();
            }
        }
        Ok(inv)
    }

    /// Restriction to a smaller window.
    pub fn truncated(&self, lmax: usize, pmax: usize) -> BiSeries {
        let mut out = BiSeries::zero(lmax, pmax);
        for l in 0..=lmax.min(self.lmax()) {
            for m in 0..=pmax.min(self.pmax()) {
                out.coeffs[l][m] = self.coeffs[l][m].clone();
            }
        }
        out
    }
}

/// z_F(R, t^l0): twisted partition of a level-l0 fermion in the m-graded
/// module R. Exterior powers distribute over the m-grading; the (-t)^i twist
/// puts the sign on the coefficients.
pub fn fermionic_factor(pieces: &[RepRingElem], l0: usize, lmax: usize, pmax: usize) -> Result<BiSeries> {
    graded_factor(pieces, l0, lmax, pmax, true)
}

/// z_B(R, t^l0): partition of a level-l0 boson in R (symmetric powers, no
/// sign twist).
pub fn bosonic_factor(pieces: &[RepRingElem], l0: usize, lmax: usize, pmax: usize) -> Result<BiSeries> {
    graded_factor(pieces, l0, lmax, pmax, false)
}

fn graded_factor(
    pieces: &[RepRingElem],
    l0: usize,
    lmax: usize,
    pmax: usize,
    fermionic: bool,
) -> Result<BiSeries> {
    if l0 < 1 {
        return Err(Error::NegativeArgument("factor level must be >= 1".into()));
    }
    let d = pieces
        .iter()
        .find_map(|p| p.rank())
        .ok_or_else(|| Error::Internal("factor of the zero module".into()))?;
    for p in pieces.iter() {
        if p.has_negative() {
            return Err(Error::VirtualPowerInput);
        }
    }
    let mut acc = BiSeries::one(d, lmax, pmax);
    for (m, piece) in pieces.iter().enumerate() {
        if piece.is_zero() {
            continue;
        }
        let cap_l = lmax / l0;
        let cap_m = if m == 0 { usize::MAX } else { pmax / m };
        let cap = cap_l.min(cap_m);
        if cap == 0 {
            continue;
        }
        let pows = if fermionic {
            glrep::alt_powers(piece, cap)?
        } else {
            glrep::sym_powers(piece, cap)?
        };
        let mut factor = BiSeries::zero(lmax, pmax);
        for (i, p) in pows.into_iter().enumerate() {
            let l = i * l0;
            let deg = i * m;
            if l > lmax || deg > pmax {
                break;
            }
            let signed = if fermionic && i % 2 == 1 { p.neg() } else { p };
            factor.coeffs[l][deg] = signed;
        }
        if factor.coeffs[0][0].is_zero() {
            factor.coeffs[0][0] = RepRingElem::one(d);
        }
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glrep::GlIrrep;

    fn velem(d: usize) -> RepRingElem {
        RepRingElem::from_irrep(GlIrrep::from_labels_charge(d, &[1, 0], -1).unwrap())
    }

    #[test]
    fn mul_by_one_is_identity() {
        let d = 3;
        let mut a = BiSeries::one(d, 3, 3);
        a.coeffs[1][2] = velem(d);
        a.coeffs[2][0] = velem(d).neg();
        let one = BiSeries::one(d, 3, 3);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn geometric_series_inverse() {
        // invert(1 - V t) = sum_k V^{(x)k} t^k.
        let d = 3;
        let lmax = 4;
        let mut a = BiSeries::one(d, lmax, 0);
        a.coeffs[1][0] = velem(d).neg();
        let inv = a.invert().unwrap();
        let mut power = RepRingElem::one(d);
        for l in 0..=lmax {
            assert_eq!(inv.coeffs[l][0], power, "coefficient t^{l}");
            power = glrep::tensor(&power, &velem(d)).unwrap();
        }
        // (1 + Vt)(1 - Vt) = 1 - V^2 t^2.
        let mut b = BiSeries::one(d, 2, 0);
        b.coeffs[1][0] = velem(d);
        let mut c = BiSeries::one(d, 2, 0);
        c.coeffs[1][0] = velem(d).neg();
        let prod = b.mul(&c).unwrap();
        assert!(prod.coeffs[1][0].is_zero());
        let v2 = glrep::tensor(&velem(d), &velem(d)).unwrap();
        assert_eq!(prod.coeffs[2][0], v2.neg());
    }

    #[test]
    fn double_inverse_round_trip() {
        let d = 3;
        let mut a = BiSeries::one(d, 3, 2);
        a.coeffs[1][1] = velem(d);
        a.coeffs[2][1] = velem(d).neg();
        a.coeffs[1][0] = RepRingElem::from_irrep(GlIrrep::form(d, 1));
        assert_eq!(a.invert().unwrap().invert().unwrap(), a);
    }

    #[test]
    fn window_mismatch_rejected() {
        let d = 3;
        let a = BiSeries::one(d, 2, 2);
        let b = BiSeries::one(d, 3, 2);
        assert!(matches!(a.mul(&b), Err(Error::WindowMismatch(_))));
    }

    #[test]
    fn fermion_times_boson_is_one() {
        let d = 3;
        // R graded over m = 0..2 with small genuine pieces.
        let pieces = vec![
            velem(d),
            RepRingElem::from_irrep(GlIrrep::form(d, 1)),
            RepRingElem::zero(),
        ];
        let (lmax, pmax) = (5, 4);
        for l0 in [1usize, 2] {
            let zf = fermionic_factor(&pieces, l0, lmax, pmax).unwrap();
            let zb = bosonic_factor(&pieces, l0, lmax, pmax).unwrap();
            let prod = zf.mul(&zb).unwrap();
            assert_eq!(prod, BiSeries::one(d, lmax, pmax), "l0 = {l0}");
        }
    }

    #[test]
    fn fermionic_sign_convention() {
        // One-dimensional R: z_F = 1 - Rt exactly (higher exterior powers
        // vanish).
        let d = 2;
        let det = RepRingElem::from_irrep(GlIrrep::from_parts(vec![-1, -1]).unwrap());
        let zf = fermionic_factor(&[det.clone()], 1, 3, 0).unwrap();
        assert_eq!(zf.coeffs[0][0], RepRingElem::one(d));
        assert_eq!(zf.coeffs[1][0], det.neg());
        assert!(zf.coeffs[2][0].is_zero());
        assert!(zf.coeffs[3][0].is_zero());
        // Generic module: coefficient of t^i is (-1)^i wedge^i.
        let v = velem(3);
        let zf = fermionic_factor(&[v.clone()], 1, 3, 0).unwrap();
        let alts = glrep::alt_powers(&v, 3).unwrap();
        for i in 0..=3usize {
            let want = if i % 2 == 0 {
                alts[i].clone()
            } else {
                alts[i].neg()
            };
            assert_eq!(zf.coeffs[i][0], want, "t^{i}");
        }
    }

    #[test]
    fn virtual_factor_input_rejected() {
        let d = 3;
        let bad = velem(d).neg();
        assert!(matches!(
            fermionic_factor(&[bad], 1, 2, 2),
            Err(Error::VirtualPowerInput)
        ));
    }

    #[test]
    fn bosonic_factor_sym_chain() {
        // R = (01) at m-degree 0, bosonic at level 2: coefficients are the
        // symmetric powers at t^{2i}.
        let d = 3;
        let vb = RepRingElem::from_irrep(GlIrrep::from_labels_charge(d, &[0, 1], 1).unwrap());
        let zb = bosonic_factor(&[vb.clone()], 2, 6, 0).unwrap();
        let syms = glrep::sym_powers(&vb, 3).unwrap();
        for i in 0..=3usize {
            assert_eq!(zb.coeffs[2 * i][0], syms[i]);
        }
        assert!(zb.coeffs[1][0].is_zero());
        assert!(zb.coeffs[3][0].is_zero());
    }
}
