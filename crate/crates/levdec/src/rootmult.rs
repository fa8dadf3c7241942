//! Root multiplicities by the Peterson recursion, and the gl(d)-graded
//! decomposition of the adjoint.
//!
//! Roots are handled in simple-root coordinates. The table is cut off by the
//! degree at the grading node rather than by height: for fixed degree the
//! quadratic form restricted to the remaining coordinates is positive
//! definite for every spec this engine supports (the null directions of
//! affine specs carry nonzero grading degree), so each degree slice of
//! {norm <= 2} is a finite ellipsoid section, enumerated exactly.
//!
//! The recursion is evaluated once per Weyl orbit, at the member of smallest
//! height, and results are keyed on the dominant representative;
//! multiplicities are Weyl invariant, so the per-orbit evaluation covers all
//! enumerated roots.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::glrep::{self, DominantCharacter, RepRingElem};
use crate::weyl::GradingData;

/// Positive-root multiplicities of a bosonic spec up to a grading-degree
/// cutoff.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootTable {
    pub spec_hash: String,
    pub grading_node: i32,
    pub max_degree: usize,
    /// root coordinates -> multiplicity, positive roots only.
    pub mults: HashMap<Vec<i64>, BigInt>,
}

impl RootTable {
    pub fn mult(&self, root: &[i64]) -> BigInt {
        self.mults.get(root).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Integer symmetrized Gram matrix (alpha_i, alpha_j), scaled by the lcm of
/// the symmetrizer denominators.
fn integer_gram(spec: &CartanSpec) -> Result<(Vec<Vec<i64>>, i64)> {
    let n = spec.rank();
    let mut scale = BigInt::one();
    for d in spec.symmetrizer.iter() {
        let den = d.denom().clone();
        let g = num_integer::Integer::gcd(&scale, &den);
        scale = scale / g * den;
    }
    let scale_i = i64::try_from(&scale).map_err(|_| Error::Internal("gram scale".into()))?;
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = spec.gram(i, j) * BigRational::from_integer(scale.clone());
            if !v.is_integer() {
                return Err(Error::Internal("gram not integral after scaling".into()));
            }
            gram[i][j] = i64::try_from(&v.to_integer())
                .map_err(|_| Error::Internal("gram overflow".into()))?;
        }
    }
    Ok((gram, scale_i))
}

fn qform(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let n = gram.len();
    let mut acc = 0i64;
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] != 0 {
                acc += gram[i][j] * a[i] * b[j];
            }
        }
    }
    acc
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Enumerate all nonzero vectors with non-negative coordinates, grading
/// coordinate equal to `m`, and scaled norm <= 2 * scale. The coordinates
/// away from the grading node must carry a positive definite form.
fn enumerate_slice(gram: &[Vec<i64>], scale: i64, g_idx: usize, m: i64) -> Result<Vec<Vec<i64>>> {
    let n = gram.len();
    let block: Vec<usize> = (0..n).filter(|&i| i != g_idx).collect();
    let bn = block.len();

    // Exact LDL^T of the block.
    let mut l = vec![vec![BigRational::zero(); bn]; bn];
    let mut diag = vec![BigRational::zero(); bn];
    for i in 0..bn {
        for j in 0..=i {
            let mut sum = rational(gram[block[i]][block[j]]);
            for k in 0..j {
                sum -= &l[i][k] * &l[j][k] * &diag[k];
            }
            if j == i {
                if sum <= BigRational::zero() {
                    return Err(Error::InvalidCartan(
                        "degree slice of the root form is not positive definite".into(),
                    ));
                }
                diag[i] = sum;
                l[i][i] = BigRational::one();
            } else {
                l[i][j] = sum / &diag[j];
            }
        }
    }

    // Complete the square: with x the block coordinates and y = L^T x + s,
    //   Q(v) = m^2 G_gg - s^T D s + sum_i diag_i y_i^2,
    // where L D s = m G_g,block. y_i depends on x_i and the later
    // coordinates, so the scan runs from the last coordinate backwards.
    let mut s = vec![BigRational::zero(); bn];
    for i in 0..bn {
        let mut acc = rational(m * gram[g_idx][block[i]]);
        for k in 0..i {
            acc -= &l[i][k] * &diag[k] * &s[k];
        }
        s[i] = acc / &diag[i];
    }
    let mut corr = BigRational::zero();
    for i in 0..bn {
        corr += &diag[i] * &s[i] * &s[i];
    }
    let remaining = rational(2 * scale) - rational(m * m * gram[g_idx][g_idx]) + corr;

    let mut out: Vec<Vec<i64>> = Vec::new();
    if remaining < BigRational::zero() {
        return Ok(out);
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        l: &[Vec<BigRational>],
        diag: &[BigRational],
        s: &[BigRational],
        depth: usize,
        x: &mut Vec<i64>,
        remaining: BigRational,
        sink: &mut dyn FnMut(&[i64]),
    ) {
        let bn = x.len();
        if depth == bn {
            sink(x);
            return;
        }
        let i = bn - 1 - depth;
        // y_i = x_i + sum_{k>i} l[k][i] x_k + s_i.
        let mut base = s[i].clone();
        for k in i + 1..bn {
            base += &l[k][i] * rational(x[k]);
        }
        let bound2 = &remaining / &diag[i];
        let mut xi = 0i64;
        loop {
            let y = &base + rational(xi);
            let y2 = &y * &y;
            if y2 > bound2 {
                if y >= BigRational::zero() {
                    break;
                }
            } else {
                let used = &diag[i] * &y2;
                x[i] = xi;
                rec(l, diag, s, depth + 1, x, &remaining - used, sink);
                x[i] = 0;
            }
            xi += 1;
        }
    }
    let mut x = vec![0i64; bn];
    let mut sink = |x: &[i64]| {
        let mut v = vec![0i64; n];
        v[g_idx] = m;
        for (k, &b) in block.iter().enumerate() {
            v[b] = x[k];
        }
        if v.iter().any(|&c| c != 0) {
            out.push(v);
        }
    };
    rec(&l, &diag, &s, 0, &mut x, remaining, &mut sink);
    Ok(out)
}

/// Compute multiplicities of all positive roots with grading degree up to
/// `max_degree` by the Peterson recursion.
pub fn peterson_multiplicities(
    spec: &CartanSpec,
    grading_node: i32,
    max_degree: usize,
) -> Result<RootTable> {
    let _ = GradingData::new(spec, grading_node)?;
    let g_idx = spec.idx(grading_node)?;
    let (gram, scale) = integer_gram(spec)?;
    let n = spec.rank();

    // Points that can carry nonzero root multiplicity: norm <= 2 in the
    // degree window.
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for m in 0..=max_degree as i64 {
        candidates.extend(enumerate_slice(&gram, scale, g_idx, m)?);
    }
    // The Peterson sum runs over all lattice points with a root divisor, so
    // multiples of candidates (norm beyond 2) enter as pair members even
    // though their own multiplicity vanishes. Multiples taller than any
    // candidate can never pair and are dropped.
    let max_height: i64 = candidates
        .iter()
        .map(|c| c.iter().sum::<i64>())
        .max()
        .unwrap_or(0);
    let mut pair_points: HashSet<Vec<i64>> = candidates.iter().cloned().collect();
    for beta in candidates.iter() {
        let deg = beta[g_idx];
        let height: i64 = beta.iter().sum();
        let mut k = 2i64;
        while (deg == 0 || deg * k <= max_degree as i64) && height * k <= max_height {
            pair_points.insert(beta.iter().map(|&v| v * k).collect());
            k += 1;
        }
    }

    let labels_of = |c: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|i| (0..n).map(|j| spec.matrix[i][j] * c[j]).sum())
            .collect()
    };

    // Canonical orbit key. Real-norm points descend towards a simple root
    // (escaping the positive cone means the point is not a root); points of
    // imaginary norm walk to the anti-dominant orbit representative, which
    // exists and is reached monotonically. Junk lattice points that escape
    // get a None key and count as multiplicity zero; they cannot hide any
    // root divisors (multiples of imaginary roots are roots, multiples of
    // real roots leave the norm window).
    let canonical = |start: &[i64]| -> Option<Vec<i64>> {
        let mut c = start.to_vec();
        let real = qform(&gram, &c, &c) == 2 * scale;
        loop {
            if real && c.iter().map(|&v| v.abs()).sum::<i64>() == 1 {
                return Some(c);
            }
            let labels = labels_of(&c);
            let Some(i) = (0..n).find(|&i| labels[i] > 0) else {
                // Anti-dominant.
                return if real { None } else { Some(c) };
            };
            c[i] -= labels[i];
            if c.iter().any(|&v| v < 0) {
                return None;
            }
        }
    };

    // (rho, beta) scaled: sum_i beta_i * gram_ii / 2.
    let rho_pairing = |beta: &[i64]| -> i64 { (0..n).map(|i| beta[i] * gram[i][i] / 2).sum() };

    let mut order: Vec<Vec<i64>> = candidates.clone();
    order.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));

    struct State {
        key_cache: HashMap<Vec<i64>, Option<Vec<i64>>>,
        mults: HashMap<Vec<i64>, BigInt>,
        c_cache: HashMap<Vec<i64>, BigRational>,
    }
    let mut st = State {
        key_cache: HashMap::new(),
        mults: HashMap::new(),
        c_cache: HashMap::new(),
    };
    fn key_of(
        st: &mut State,
        v: &[i64],
        canonical: &dyn Fn(&[i64]) -> Option<Vec<i64>>,
    ) -> Option<Vec<i64>> {
        st.key_cache
            .entry(v.to_vec())
            .or_insert_with(|| canonical(v))
            .clone()
    }
    fn mult_of(
        st: &mut State,
        v: &[i64],
        canonical: &dyn Fn(&[i64]) -> Option<Vec<i64>>,
    ) -> BigInt {
        match key_of(st, v, canonical) {
            Some(key) => st.mults.get(&key).cloned().unwrap_or_else(BigInt::zero),
            None => BigInt::zero(),
        }
    }
    // c(v) = sum over j dividing v of mult(v/j)/j; supported on multiples of
    // roots, not just roots.
    fn c_of(
        st: &mut State,
        v: &[i64],
        canonical: &dyn Fn(&[i64]) -> Option<Vec<i64>>,
    ) -> BigRational {
        if let Some(hit) = st.c_cache.get(v) {
            return hit.clone();
        }
        let height: i64 = v.iter().sum();
        let mut acc = BigRational::zero();
        for j in 1..=height {
            if v.iter().all(|&x| x % j == 0) {
                let sub: Vec<i64> = v.iter().map(|x| x / j).collect();
                let m = mult_of(st, &sub, canonical);
                if !m.is_zero() {
                    acc += BigRational::new(m, BigInt::from(j));
                }
            }
        }
        st.c_cache.insert(v.to_vec(), acc.clone());
        acc
    }

    let mut pair_list: Vec<Vec<i64>> = pair_points.iter().cloned().collect();
    pair_list.sort();

    for beta in order.iter() {
        let key = key_of(&mut st, beta, &canonical);
        let Some(key) = key else { continue };
        if st.mults.contains_key(&key) {
            continue;
        }
        let height: i64 = beta.iter().sum();
        if height == 1 || qform(&gram, beta, beta) == 2 * scale {
            // Simple roots and real-root orbits.
            st.mults.insert(key, BigInt::one());
            continue;
        }
        // Peterson: ((b,b) - 2(rho,b)) c_b = sum_{b'+b''=b} (b',b'') c' c''.
        let lhs = qform(&gram, beta, beta) - 2 * rho_pairing(beta);
        let mut rhs = BigRational::zero();
        for bp in pair_list.iter() {
            let bpp: Vec<i64> = beta.iter().zip(bp.iter()).map(|(a, b)| a - b).collect();
            if bpp.iter().any(|&v| v < 0) || bpp.iter().all(|&v| v == 0) {
                continue;
            }
            if !pair_points.contains(&bpp) {
                continue;
            }
            let pairing = qform(&gram, bp, &bpp);
            if pairing == 0 {
                continue;
            }
            let c1 = c_of(&mut st, bp, &canonical);
            if c1.is_zero() {
                continue;
            }
            let c2 = c_of(&mut st, &bpp, &canonical);
            if c2.is_zero() {
                continue;
            }
            rhs += rational(pairing) * c1 * c2;
        }
        if lhs == 0 {
            if !rhs.is_zero() {
                return Err(Error::Internal(format!(
                    "Peterson: zero denominator with nonzero numerator at {beta:?}"
                )));
            }
            continue;
        }
        let c_beta = rhs / rational(lhs);
        let mut mult = c_beta.clone();
        for k in 2..=height {
            if beta.iter().all(|&v| v % k == 0) {
                let sub: Vec<i64> = beta.iter().map(|v| v / k).collect();
                let msub = mult_of(&mut st, &sub, &canonical);
                if !msub.is_zero() {
                    mult -= BigRational::new(msub, BigInt::from(k));
                }
            }
        }
        if !mult.is_integer() {
            return Err(Error::Internal(format!(
                "Peterson produced non-integral multiplicity at {beta:?}"
            )));
        }
        let mult = mult.to_integer();
        if mult.is_negative() {
            return Err(Error::Internal(format!(
                "Peterson produced negative multiplicity at {beta:?}"
            )));
        }
        st.mults.insert(key, mult);
    }
    let mults = st.mults;
    let mut key_cache = st.key_cache;

    let mut full: HashMap<Vec<i64>, BigInt> = HashMap::new();
    for beta in candidates.iter() {
        let key = key_cache
            .entry(beta.clone())
            .or_insert_with(|| canonical(beta))
            .clone();
        let Some(key) = key else { continue };
        if let Some(m) = mults.get(&key) {
            if !m.is_zero() {
                full.insert(beta.clone(), m.clone());
            }
        }
    }

    Ok(RootTable {
        spec_hash: crate::branching::spec_hash(spec),
        grading_node,
        max_degree,
        mults: full,
    })
}

/// The gl(d) content of the adjoint per grading degree m = 0..=max_degree,
/// in the table label convention. Degree 0 is gl(d) itself (adjoint plus the
/// trace singlet); higher degrees decompose the root spaces by greedy
/// highest-weight subtraction.
pub fn adjoint_gl_grading(
    spec: &CartanSpec,
    table: &RootTable,
    grading_node: i32,
    max_degree: usize,
) -> Result<Vec<RepRingElem>> {
    if max_degree > table.max_degree {
        return Err(Error::InsufficientLevels {
            need: max_degree as i64,
            have: table.max_degree as i64,
        });
    }
    let g = GradingData::new(spec, grading_node)?;
    let g_idx = spec.idx(grading_node)?;
    let d = g.d;
    let chain_idx: Vec<usize> = g
        .chain
        .iter()
        .map(|&node| spec.idx(node))
        .collect::<Result<_>>()?;
    let restricted_labels = |root: &[i64]| -> Vec<i64> {
        chain_idx
            .iter()
            .map(|&i| (0..spec.rank()).map(|j| spec.matrix[i][j] * root[j]).sum())
            .collect()
    };
    // Honest epsilon lift with total sigma, negated (table convention),
    // sorted dominant.
    let lift = |labels: &[i64], sigma: i64, m: usize| -> Result<Vec<i32>> {
        let mut e = vec![0i64; d];
        for k in (0..d - 1).rev() {
            e[k] = e[k + 1] + labels[k];
        }
        let anchor_sum: i64 = e.iter().sum();
        let diff = sigma - anchor_sum;
        if diff % d as i64 != 0 {
            return Err(Error::Internal(format!(
                "adjoint weight lift not integral at degree {m}"
            )));
        }
        let shift = diff / d as i64;
        let mut w: Vec<i32> = e
            .iter()
            .map(|&v| {
                i32::try_from(-(v + shift)).map_err(|_| Error::Internal("lift overflow".into()))
            })
            .collect::<Result<_>>()?;
        w.sort_unstable_by(|a, b| b.cmp(a));
        Ok(w)
    };

    let mut out = Vec::with_capacity(max_degree + 1);
    for m in 0..=max_degree {
        // Dominant-orbit counts: each root contributes one orbit member, so
        // the per-orbit multiplicity is the member count divided by the
        // orbit size (degree slices are whole unions of sl-Weyl orbits).
        let mut counts: std::collections::BTreeMap<Vec<i32>, BigInt> = Default::default();
        let sigma = g.slope * m as i64;
        for (root, mult) in table.mults.iter() {
            if root[g_idx] != m as i64 {
                continue;
            }
            let labels = restricted_labels(root);
            *counts.entry(lift(&labels, sigma, m)?).or_default() += mult.clone();
            if m == 0 {
                let neg: Vec<i64> = labels.iter().map(|&v| -v).collect();
                *counts.entry(lift(&neg, 0, m)?).or_default() += mult.clone();
            }
        }
        if m == 0 {
            *counts.entry(vec![0; d]).or_default() += BigInt::from(d as i64);
        }
        let mut ch = DominantCharacter {
            d,
            weights: Default::default(),
        };
        for (w, count) in counts.into_iter() {
            let orbit = glrep::orbit_size(&w);
            let (q, r) = num_integer::Integer::div_rem(&count, &orbit);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "degree-{m} root slice is not a union of whole sl-orbits at {w:?}"
                )));
            }
            ch.add(w, q);
        }
        out.push(glrep::from_character(&ch)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, BaseSeries};
    use crate::glrep::GlIrrep;

    fn delta_e(spec: &CartanSpec) -> Vec<i64> {
        let marks: &[(i32, i64)] = &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 4),
            (7, 2),
            (8, 3),
        ];
        let mut delta = vec![0i64; spec.rank()];
        for &(node, v) in marks {
            delta[spec.idx(node).unwrap()] = v;
        }
        delta
    }

    #[test]
    fn e9_null_root_multiplicity() {
        let spec = build_cartan(BaseSeries::E8, 1, false).unwrap();
        let table = peterson_multiplicities(&spec, 8, 6).unwrap();
        let delta = delta_e(&spec);
        assert_eq!(table.mult(&delta), BigInt::from(8));
        let delta2: Vec<i64> = delta.iter().map(|v| 2 * v).collect();
        assert_eq!(table.mult(&delta2), BigInt::from(8));
        for i in 0..spec.rank() {
            let mut c = vec![0i64; spec.rank()];
            c[i] = 1;
            assert_eq!(table.mult(&c), BigInt::one());
        }
    }

    #[test]
    fn e10_null_root_multiplicity() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        let table = peterson_multiplicities(&spec, 8, 3).unwrap();
        let delta = delta_e(&spec);
        assert_eq!(table.mult(&delta), BigInt::from(8));
    }

    #[test]
    fn e10_adjoint_low_degrees() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        let table = peterson_multiplicities(&spec, 8, 2).unwrap();
        let adj = adjoint_gl_grading(&spec, &table, 8, 2).unwrap();
        // m = 0: gl(10) = adjoint + singlet.
        let mut want0 = RepRingElem::zero();
        want0.add_term(
            GlIrrep::from_labels_charge(10, &[1, 0, 0, 0, 0, 0, 0, 0, 1], 0).unwrap(),
            BigInt::one(),
        );
        want0.add_term(GlIrrep::trivial(10), BigInt::one());
        assert_eq!(adj[0], want0);
        // m = 1: the 3-form (000000100), charge 3.
        let want1 = RepRingElem::from_irrep(
            GlIrrep::from_labels_charge(10, &[0, 0, 0, 0, 0, 0, 1, 0, 0], 3).unwrap(),
        );
        assert_eq!(adj[1], want1);
        // m = 2: (000100000), charge 6.
        let want2 = RepRingElem::from_irrep(
            GlIrrep::from_labels_charge(10, &[0, 0, 0, 1, 0, 0, 0, 0, 0], 6).unwrap(),
        );
        assert_eq!(adj[2], want2);
    }

    #[test]
    fn weyl_invariance_spot_check() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let table = peterson_multiplicities(&spec, 1, 4).unwrap();
        for (root, mult) in table.mults.iter().take(50) {
            for i in 0..spec.rank() {
                let label: i64 = (0..spec.rank()).map(|j| spec.matrix[i][j] * root[j]).sum();
                let mut refl = root.clone();
                refl[i] -= label;
                if refl.iter().all(|&v| v >= 0) && refl.iter().any(|&v| v != 0) {
                    if let Some(other) = table.mults.get(&refl) {
                        assert_eq!(other, mult);
                    }
                }
            }
        }
    }
}
