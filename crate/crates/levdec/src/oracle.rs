//! Brute-force reference implementations used by the test suites.
//!
//! Characters are materialized as explicit Laurent polynomials in d
//! variables (weight |-> multiplicity), built from Gelfand-Tsetlin patterns.
//! Everything here is exponential in the inputs and meant for d <= 4 with
//! small labels; the point is complete independence from the production
//! Littlewood-Richardson / Adams / Freudenthal code paths.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::glrep::{GlIrrep, Mult, RepRingElem};

/// A formal character: Laurent polynomial over weight vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CharPoly {
    pub d: usize,
    pub terms: BTreeMap<Vec<i32>, BigInt>,
}

impl CharPoly {
    pub fn zero(d: usize) -> Self {
        CharPoly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; d], BigInt::one());
        CharPoly { d, terms }
    }

    pub fn add_term(&mut self, w: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(BigInt::zero);
        *e += c;
        let dead: Vec<Vec<i32>> = self
            .terms
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in dead {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &CharPoly) -> CharPoly {
        let mut out = self.clone();
        for (w, c) in other.terms.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = CharPoly::zero(self.d);
        for (w1, c1) in self.terms.iter() {
            for (w2, c2) in other.terms.iter() {
                let w: Vec<i32> = w1.iter().zip(w2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Substitute x -> x^n (the Adams operation on characters).
    pub fn dilate(&self, n: i32) -> CharPoly {
        let mut out = CharPoly::zero(self.d);
        for (w, c) in self.terms.iter() {
            out.add_term(w.iter().map(|&v| v * n).collect(), c.clone());
        }
        out
    }

    pub fn dim(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The multiset of weights, one entry per unit of multiplicity.
    /// Panics on virtual (negative) input.
    fn weight_multiset(&self) -> Vec<Vec<i32>> {
        let mut out = Vec::new();
        for (w, c) in self.terms.iter() {
            let c = i64::try_from(c).expect("oracle weights fit i64");
            assert!(c >= 0, "weight multiset of a virtual character");
            for _ in 0..c {
                out.push(w.clone());
            }
        }
        out
    }

    /// Exterior powers 0..=kmax from the weight multiset.
    pub fn alt_powers(&self, kmax: usize) -> Vec<CharPoly> {
        let weights = self.weight_multiset();
        let mut dp: Vec<CharPoly> = (0..=kmax).map(|_| CharPoly::zero(self.d)).collect();
        dp[0] = CharPoly::one(self.d);
        for w in weights.iter() {
            for k in (1..=kmax).rev() {
                let (head, tail) = dp.split_at_mut(k);
                let prev = &head[k - 1];
                let mut shifted = CharPoly::zero(self.d);
                for (pw, pc) in prev.terms.iter() {
                    let nw: Vec<i32> = pw.iter().zip(w.iter()).map(|(a, b)| a + b).collect();
                    shifted.add_term(nw, pc.clone());
                }
                tail[0] = tail[0].add(&shifted);
            }
        }
        dp
    }

    /// Symmetric powers 0..=kmax from the weight multiset.
    pub fn sym_powers(&self, kmax: usize) -> Vec<CharPoly> {
        let weights = self.weight_multiset();
        let mut dp: Vec<CharPoly> = (0..=kmax).map(|_| CharPoly::zero(self.d)).collect();
        dp[0] = CharPoly::one(self.d);
        for w in weights.iter() {
            for k in 1..=kmax {
                let (head, tail) = dp.split_at_mut(k);
                let prev = &head[k - 1];
                let mut shifted = CharPoly::zero(self.d);
                for (pw, pc) in prev.terms.iter() {
                    let nw: Vec<i32> = pw.iter().zip(w.iter()).map(|(a, b)| a + b).collect();
                    shifted.add_term(nw, pc.clone());
                }
                tail[0] = tail[0].add(&shifted);
            }
        }
        dp
    }

    /// Expand into irreducible characters by peeling lex-leading dominant
    /// monomials (the Schur basis is unitriangular for lex on dominant
    /// exponents).
    pub fn decompose(&self) -> RepRingElem {
        let mut work = self.clone();
        let mut out = RepRingElem::zero();
        while let Some((w, c)) = work
            .terms
            .iter()
            .filter(|(w, _)| w.windows(2).all(|p| p[0] >= p[1]))
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(w, c)| (w.clone(), c.clone()))
        {
            let irrep = GlIrrep::from_parts(w).expect("dominant exponent");
            let ch = char_poly(&irrep);
            for (cw, cc) in ch.terms.iter() {
                work.add_term(cw.clone(), -(cc * &c));
            }
            out.add_term(irrep, c);
        }
        assert!(work.terms.is_empty(), "non-symmetric character");
        out
    }
}

/// Character of an irrep by direct Gelfand-Tsetlin pattern enumeration.
pub fn char_poly(irrep: &GlIrrep) -> CharPoly {
    let d = irrep.rank();
    let top: Vec<i32> = irrep.parts().to_vec();
    let mut out = CharPoly::zero(d);
    // rows[k] has length d - k; weight_i = |row_i| - |row_{i+1}| reading the
    // pattern from the full top row down to a single entry.
    fn rec(top: &[i32], row: Vec<i32>, sums: &mut Vec<i64>, out: &mut CharPoly) {
        sums.push(row.iter().map(|&v| v as i64).sum());
        if row.len() == 1 {
            let d = sums.len();
            let mut w = vec![0i32; d];
            for i in 0..d {
                let hi = sums[i];
                let lo = if i + 1 < d { sums[i + 1] } else { 0 };
                // weight of variable x_{i+1} is |row_i| - |row_{i+1}|, with
                // rows counted from the top; our x order matches part order.
                w[i] = (hi - lo) as i32;
            }
            out.add_term(w, BigInt::one());
            sums.pop();
            return;
        }
        // Enumerate the next row interlacing the current one.
        let n = row.len() - 1;
        let mut next = vec![0i32; n];
        fn gen(
            row: &[i32],
            next: &mut Vec<i32>,
            pos: usize,
            top: &[i32],
            sums: &mut Vec<i64>,
            out: &mut CharPoly,
        ) {
            let n = next.len();
            if pos == n {
                rec(top, next.clone(), sums, out);
                return;
            }
            let hi = row[pos];
            let lo = row[pos + 1];
            let cap_above = if pos == 0 { hi } else { next[pos - 1].min(hi) };
            for v in (lo..=cap_above).rev() {
                next[pos] = v;
                gen(row, next, pos + 1, top, sums, out);
            }
        }
        gen(&row, &mut next, 0, top, sums, out);
        sums.pop();
    }
    let mut sums = Vec::new();
    rec(&top, top.clone(), &mut sums, &mut out);
    out
}

/// Character of a virtual module.
pub fn char_of(r: &RepRingElem) -> CharPoly {
    let d = r.rank().unwrap_or(1);
    let mut out = CharPoly::zero(d);
    for (k, v) in r.iter() {
        let ch = char_poly(k);
        for (w, c) in ch.terms.iter() {
            out.add_term(w.clone(), c * v);
        }
    }
    out
}

/// Oracle weight multiplicity lookup: coefficient of `weight` in the
/// character of `r`.
pub fn weight_mult(r: &RepRingElem, weight: &[i32]) -> Mult {
    char_of(r)
        .terms
        .get(weight)
        .cloned()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glrep;

    fn irrep(d: usize, labels: &[i64], charge: i64) -> GlIrrep {
        GlIrrep::from_labels_charge(d, labels, charge).unwrap()
    }

    #[test]
    fn gt_dimension_matches_weyl() {
        for (d, labels, q) in [
            (3usize, vec![1i64, 1], 0i64),
            (3, vec![2, 1], -4),
            (4, vec![1, 0, 2], 1),
            (2, vec![3], -3),
        ] {
            let r = irrep(d, &labels, q);
            assert_eq!(char_poly(&r).dim(), r.dim());
        }
    }

    #[test]
    fn oracle_tensor_matches_lr() {
        let d = 3;
        let a = irrep(d, &[2, 1], -4);
        let b = irrep(d, &[1, 1], 0);
        let fast = glrep::tensor(
            &RepRingElem::from_irrep(a.clone()),
            &RepRingElem::from_irrep(b.clone()),
        )
        .unwrap();
        let slow = char_poly(&a).mul(&char_poly(&b)).decompose();
        assert_eq!(fast, slow);
    }

    #[test]
    fn oracle_adams_matches_sxp() {
        let d = 3;
        for (labels, q, n) in [
            (vec![1i64, 0], -1i64, 2u32),
            (vec![1, 0], -1, 3),
            (vec![1, 1], 0, 2),
            (vec![2, 0], -2, 3),
            (vec![0, 1], 1, 4),
        ] {
            let r = irrep(d, &labels, q);
            let fast = glrep::adams(&RepRingElem::from_irrep(r.clone()), n).unwrap();
            let slow = char_poly(&r).dilate(n as i32).decompose();
            assert_eq!(fast, slow, "adams {n} on {labels:?}");
        }
    }

    #[test]
    fn oracle_powers_match() {
        let d = 3;
        let r = RepRingElem::from_irrep(irrep(d, &[1, 1], 0));
        let fast_alt = glrep::alt_powers(&r, 3).unwrap();
        let fast_sym = glrep::sym_powers(&r, 3).unwrap();
        let slow_alt = char_of(&r).alt_powers(3);
        let slow_sym = char_of(&r).sym_powers(3);
        for k in 0..=3 {
            assert_eq!(fast_alt[k], slow_alt[k].decompose(), "alt {k}");
            assert_eq!(fast_sym[k], slow_sym[k].decompose(), "sym {k}");
        }
    }
}
