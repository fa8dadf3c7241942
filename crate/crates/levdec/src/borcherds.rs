//! Level modules B_l of the Borcherds superalgebra B(g^(n)) from the Koszul
//! duality Z_mu(t) (x) Z_B(t) = 1.
//!
//! Z_mu collects the branchings of the lowest-weight modules R(-p lambda);
//! its inverse equals the fermion-number twisted partition function of the
//! positive-level subalgebra,
//! Z_B = prod_q z_F(B_{2q-1}, t^{2q-1}) (x) z_B(B_{2q}, t^{2q}),
//! which the extractor peels level by level: with B_1..B_{l-1} known, the
//! t^l coefficient of the partial product differs from the target by
//! exactly (-1)^l B_l.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::branching::{branch_cached, BranchCache, BranchResult};
use crate::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::glrep::RepRingElem;
use crate::series::{bosonic_factor, fermionic_factor, BiSeries};

/// Extracted level modules with their audit data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BorcherdsLevels {
    pub spec_hash: String,
    pub grading_node: i32,
    pub max_level: usize,
    pub max_degree: usize,
    /// levels[l][m] for l = 0..=max_level (level 0 kept empty: the duality
    /// covers positive levels only).
    pub levels: Vec<Vec<RepRingElem>>,
}

impl BorcherdsLevels {
    pub fn level(&self, l: usize) -> &[RepRingElem] {
        &self.levels[l]
    }

    /// Truncate to a smaller window.
    pub fn truncated(&self, max_level: usize, max_degree: usize) -> BorcherdsLevels {
        BorcherdsLevels {
            spec_hash: self.spec_hash.clone(),
            grading_node: self.grading_node,
            max_level,
            max_degree,
            levels: self.levels[..=max_level]
                .iter()
                .map(|row| row[..=max_degree].to_vec())
                .collect(),
        }
    }
}

/// The partition function of functions on the minimal orbit:
/// Z_mu(t) = sum_p branch(R(p lambda)) t^p, with lambda the fundamental
/// weight at the node the fermionic node attaches to.
pub fn minimal_orbit_partition(
    spec: &CartanSpec,
    lambda_node: i32,
    grading_node: i32,
    max_level: usize,
    max_degree: usize,
    cache: &BranchCache,
) -> Result<(BiSeries, Vec<BranchResult>)> {
    let idx = spec.idx(lambda_node)?;
    let branches: Vec<BranchResult> = {
        use rayon::prelude::*;
        (0..=max_level)
            .into_par_iter()
            .map(|p| {
                let mut lam = vec![0i64; spec.rank()];
                lam[idx] = p as i64;
                branch_cached(spec, &lam, grading_node, max_degree, cache)
            })
            .collect::<Result<_>>()?
    };
    let mut z = BiSeries::zero(max_level, max_degree);
    for (p, b) in branches.iter().enumerate() {
        for (m, c) in b.content.iter().enumerate() {
            z.set(p, m, c.clone());
        }
    }
    Ok((z, branches))
}

/// Peel the level modules out of Z_mu by the duality.
pub fn extract_levels(
    spec: &CartanSpec,
    z_mu: &BiSeries,
    grading_node: i32,
) -> Result<BorcherdsLevels> {
    let max_level = z_mu.lmax();
    let max_degree = z_mu.pmax();
    let d = z_mu
        .get(0, 0)
        .rank()
        .ok_or(Error::NonInvertibleConstant)?;
    let target = z_mu.invert()?;
    let mut partial = BiSeries::one(d, max_level, max_degree);
    let mut levels: Vec<Vec<RepRingElem>> = vec![vec![RepRingElem::zero(); max_degree + 1]];
    for l in 1..=max_level {
        let mut row: Vec<RepRingElem> = Vec::with_capacity(max_degree + 1);
        for m in 0..=max_degree {
            let mut diff = target.get(l, m).clone();
            diff.sub_assign(partial.get(l, m));
            // z_F contributes -B_l at t^l, z_B contributes +B_l.
            let piece = if l % 2 == 1 { diff.neg() } else { diff };
            if piece.has_negative() {
                log::debug!(
                    "virtual intermediate at level {l}, degree {m}: {}",
                    piece.render()
                );
                return Err(Error::NegativeMultiplicity {
                    context: format!("level extraction at (l, m) = ({l}, {m})"),
                    detail: piece.render(),
                });
            }
            row.push(piece);
        }
        let nonzero = row.iter().any(|c| !c.is_zero());
        if nonzero {
            let factor = if l % 2 == 1 {
                fermionic_factor(&row, l, max_level, max_degree)?
            } else {
                bosonic_factor(&row, l, max_level, max_degree)?
            };
            partial = partial.mul(&factor)?;
        }
        levels.push(row);
    }
    // Audit: the rebuilt twisted partition must equal invert(Z_mu) exactly,
    // i.e. Z_mu (x) rebuilt = 1 through the window.
    if partial != target {
        return Err(Error::Internal(
            "rebuilt Z_B does not match invert(Z_mu) through the window".into(),
        ));
    }
    Ok(BorcherdsLevels {
        spec_hash: crate::branching::spec_hash(spec),
        grading_node,
        max_level,
        max_degree,
        levels,
    })
}

/// Convenience: full pipeline from spec to levels.
pub fn borcherds_levels(
    spec: &CartanSpec,
    lambda_node: i32,
    grading_node: i32,
    max_level: usize,
    max_degree: usize,
    cache: &BranchCache,
) -> Result<BorcherdsLevels> {
    let (z_mu, _) =
        minimal_orbit_partition(spec, lambda_node, grading_node, max_level, max_degree, cache)?;
    extract_levels(spec, &z_mu, grading_node)
}

/// Dimension table of the levels (rows l, columns m), for figure data.
pub fn level_dims(levels: &BorcherdsLevels) -> Vec<Vec<BigInt>> {
    levels
        .levels
        .iter()
        .map(|row| row.iter().map(|c| c.dim()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, BaseSeries};
    use crate::glrep::{self, GlIrrep};

    #[test]
    fn a1pp_level_one_is_the_branching() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let cache = BranchCache::disabled();
        let levels = borcherds_levels(&spec, -1, 1, 3, 3, &cache).unwrap();
        let mut lam = vec![0i64; 3];
        lam[spec.idx(-1).unwrap()] = 1;
        let b1 = crate::branching::branch(&spec, &lam, 1, 3).unwrap();
        assert_eq!(levels.level(1), &b1.content[..]);
    }

    #[test]
    fn a1pp_level_two_peeling_matches_formula() {
        // B_2 = sym^2 B_1 - branch(R(2 lambda)), computed independently.
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let cache = BranchCache::disabled();
        let (lmax, pmax) = (4usize, 4usize);
        let levels = borcherds_levels(&spec, -1, 1, lmax, pmax, &cache).unwrap();
        let mut lam1 = vec![0i64; 3];
        lam1[spec.idx(-1).unwrap()] = 1;
        let b1 = crate::branching::branch(&spec, &lam1, 1, pmax).unwrap();
        let mut lam2 = lam1.clone();
        lam2[spec.idx(-1).unwrap()] = 2;
        let r2 = crate::branching::branch(&spec, &lam2, 1, pmax).unwrap();
        // Graded symmetric square of B_1: for degree m, pairs m1 <= m2 with
        // m1 + m2 = m; equal degrees take sym^2 of the piece.
        for m in 0..=pmax {
            let mut sym2 = RepRingElem::zero();
            for m1 in 0..=m / 2 {
                let m2 = m - m1;
                if m1 == m2 {
                    let s = glrep::sym_powers(&b1.content[m1], 2).unwrap();
                    sym2.add_assign(&s[2]);
                } else {
                    let prod = glrep::tensor(&b1.content[m1], &b1.content[m2]).unwrap();
                    sym2.add_assign(&prod);
                }
            }
            sym2.sub_assign(&r2.content[m]);
            assert_eq!(levels.level(2)[m], sym2, "degree {m}");
        }
    }

    #[test]
    fn a1pp_low_cells_match_table2() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let cache = BranchCache::disabled();
        let levels = borcherds_levels(&spec, -1, 1, 3, 3, &cache).unwrap();
        // B_1 at m = 0 is (10), at m = 1 is (01).
        let v10 = RepRingElem::from_irrep(GlIrrep::from_labels_charge(3, &[1, 0], -1).unwrap());
        let v01 = RepRingElem::from_irrep(GlIrrep::from_labels_charge(3, &[0, 1], 1).unwrap());
        assert_eq!(levels.level(1)[0], v10);
        assert_eq!(levels.level(1)[1], v01);
        // B_2 at m <= 1 vanishes: the symmetric square of the lowest state is
        // exactly the leading module R(-2 lambda) there.
        assert!(levels.level(2)[0].is_zero());
        assert!(levels.level(2)[1].is_zero());
        // B_2 at m = 2 is the singlet-free cell (02): sym^2 of (01).
        let want = RepRingElem::from_irrep(GlIrrep::from_labels_charge(3, &[0, 2], 2).unwrap());
        assert_eq!(levels.level(2)[2], want);
    }

    #[test]
    fn window_monotone() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let cache = BranchCache::disabled();
        let big = borcherds_levels(&spec, -1, 1, 5, 5, &cache).unwrap();
        let small = borcherds_levels(&spec, -1, 1, 3, 4, &cache).unwrap();
        let cut = big.truncated(3, 4);
        assert_eq!(cut.levels, small.levels);
    }
}
