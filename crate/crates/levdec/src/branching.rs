//! gl-covariant Weyl-Kac character formula: branch an irreducible module of
//! g^(n) with dominant extremal weight Lambda into gl(d) irreps graded by the
//! degree m of the grading node, up to a cutoff P.
//!
//! chi_P(Lambda, t) = (sum over gl-dominant shifted images of Lambda,
//! signed, t^degree) (x) (same for Lambda = 0)^{-1}. The denominator depends
//! only on (spec, grading node, P) and is cached in memory; full branch
//! results can be cached on disk as JSON keyed by a content hash.
//!
//! The engine evaluates the formula in highest-weight terms; the paper's
//! lowest-weight modules R(-l lambda) have exactly this gl content with the
//! table-label convention used throughout (minus-lowest-weight labels), so
//! no flip is applied downstream.

use std::path::PathBuf;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::glrep::{GlIrrep, Mult, RepRingElem};
use crate::series::MSeries;
use crate::weyl::{enumerate_gl_dominant, GradingData, ShiftedImage};

/// Result of one branching: content per degree plus the contributing Weyl
/// terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchResult {
    pub spec_hash: String,
    pub lambda: Vec<i64>,
    pub grading_node: i32,
    pub cutoff: usize,
    pub content: Vec<RepRingElem>,
    pub provenance: Vec<ShiftedImage>,
}

impl BranchResult {
    pub fn truncated(&self, cutoff: usize) -> BranchResult {
        BranchResult {
            spec_hash: self.spec_hash.clone(),
            lambda: self.lambda.clone(),
            grading_node: self.grading_node,
            cutoff,
            content: self.content[..=cutoff].to_vec(),
            provenance: self
                .provenance
                .iter()
                .filter(|s| s.degree <= cutoff as i64)
                .cloned()
                .collect(),
        }
    }
}

/// Stable hash of the spec data used in cache keys.
pub fn spec_hash(spec: &CartanSpec) -> String {
    let blob = serde_json::to_vec(&(&spec.nodes, &spec.matrix, &spec.fermionic_node))
        .expect("spec serializes");
    let mut h = Sha256::new();
    h.update(&blob);
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Signed numerator/denominator series of the character formula.
fn signed_series(
    spec: &CartanSpec,
    g: &GradingData,
    lambda: &[i64],
    cutoff: usize,
    charge_offset: i64,
) -> Result<(MSeries, Vec<ShiftedImage>)> {
    let images = enumerate_gl_dominant(spec, lambda, g.grading_node, cutoff as i64)?;
    let mut series = MSeries::zero(cutoff);
    for im in images.iter() {
        let p = im.degree as usize;
        // sl labels in chain order.
        let labels: Vec<i64> = g
            .chain
            .iter()
            .map(|&node| im.image[spec.idx(node).expect("chain node")])
            .collect();
        let charge = g.slope * im.degree - charge_offset;
        let irrep = GlIrrep::from_labels_charge(g.d, &labels, charge)?;
        let sign = Mult::from(im.word.parity());
        series.coeffs[p].add_term(irrep, sign);
    }
    Ok((series, images))
}

/// Charge normalization of a branching: the degree-0 term of the module with
/// extremal weight Lambda carries charge -q0(Lambda), with q0 read off the
/// chain labels anchored at the grading end. For the level-l modules of the
/// pipeline (Lambda = l * Lambda_{leftmost}) this gives q0 = l, making every
/// branched irrep at degree m carry charge slope*m - l.
fn charge_offset(g: &GradingData, spec: &CartanSpec, lambda: &[i64]) -> i64 {
    let mut acc = 0i64;
    let mut running = 0i64;
    // epsilon lift of the restricted labels with last value 0; q0 = sum.
    for k in (0..g.d - 1).rev() {
        running += lambda[spec.idx(g.chain[k]).expect("chain node")];
        acc += running;
    }
    acc
}

static DENOM_CACHE: Lazy<DashMap<(String, i32, usize), Arc<MSeries>>> = Lazy::new(DashMap::new);

fn denominator_inverse(
    spec: &CartanSpec,
    g: &GradingData,
    cutoff: usize,
    hash: &str,
) -> Result<Arc<MSeries>> {
    let key = (hash.to_string(), g.grading_node, cutoff);
    if let Some(hit) = DENOM_CACHE.get(&key) {
        return Ok(hit.clone());
    }
    let zero = vec![0i64; spec.rank()];
    let (den, _) = signed_series(spec, g, &zero, cutoff, 0)?;
    let inv = Arc::new(den.invert()?);
    DENOM_CACHE.insert(key, inv.clone());
    Ok(inv)
}

/// Branch the module with dominant extremal weight `lambda` to degree
/// `cutoff`.
pub fn branch(
    spec: &CartanSpec,
    lambda: &[i64],
    grading_node: i32,
    cutoff: usize,
) -> Result<BranchResult> {
    let g = GradingData::new(spec, grading_node)?;
    let hash = spec_hash(spec);
    let q0 = charge_offset(&g, spec, lambda);
    let (num, provenance) = signed_series(spec, &g, lambda, cutoff, q0)?;
    let den_inv = denominator_inverse(spec, &g, cutoff, &hash)?;
    let content = num.mul(&den_inv)?;
    for (m, c) in content.coeffs.iter().enumerate() {
        if c.has_negative() {
            return Err(Error::NegativeMultiplicity {
                context: format!("branching at degree {m}"),
                detail: c.render(),
            });
        }
    }
    Ok(BranchResult {
        spec_hash: hash,
        lambda: lambda.to_vec(),
        grading_node,
        cutoff,
        content: content.coeffs,
        provenance,
    })
}

/// Disk cache of branch results: one JSON document per key under a
/// content-hash filename, schema versioned. A stored result with a larger
/// cutoff serves smaller requests by truncation.
pub struct BranchCache {
    dir: Option<PathBuf>,
}

const CACHE_SCHEMA: &str = "levdec-branch/1";

#[derive(Serialize, Deserialize)]
struct CacheDoc {
    schema: String,
    result: BranchResult,
}

impl BranchCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        BranchCache { dir }
    }

    pub fn disabled() -> Self {
        BranchCache { dir: None }
    }

    fn path(&self, spec_hash: &str, lambda: &[i64], grading_node: i32) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(spec_hash.as_bytes());
        h.update(serde_json::to_vec(&(lambda, grading_node)).expect("key serializes"));
        Some(dir.join(format!("branch-{}.json", hex_string(&h.finalize()))))
    }

    pub fn lookup(
        &self,
        spec_hash: &str,
        lambda: &[i64],
        grading_node: i32,
        cutoff: usize,
    ) -> Option<BranchResult> {
        let path = self.path(spec_hash, lambda, grading_node)?;
        let text = std::fs::read_to_string(path).ok()?;
        let doc: CacheDoc = match serde_json::from_str(&text) {
            Ok(doc) => doc,
            Err(err) => {
                log::warn!("branch cache entry corrupt ({err}); recomputing");
                return None;
            }
        };
        if doc.schema != CACHE_SCHEMA {
            log::warn!("branch cache schema mismatch; recomputing");
            return None;
        }
        let r = doc.result;
        if r.spec_hash != spec_hash || r.lambda != lambda || r.grading_node != grading_node {
            log::warn!("branch cache key collision; recomputing");
            return None;
        }
        if r.cutoff < cutoff {
            return None;
        }
        Some(if r.cutoff == cutoff { r } else { r.truncated(cutoff) })
    }

    pub fn store(&self, result: &BranchResult) -> Result<()> {
        let Some(path) = self.path(&result.spec_hash, &result.lambda, result.grading_node) else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        // Keep the larger of stored/new cutoffs.
        if let Some(existing) = self.lookup(
            &result.spec_hash,
            &result.lambda,
            result.grading_node,
            result.cutoff,
        ) {
            if existing.cutoff >= result.cutoff {
                return Ok(());
            }
        }
        let doc = CacheDoc {
            schema: CACHE_SCHEMA.to_string(),
            result: result.clone(),
        };
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&doc)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// Cached branch: serve from disk when possible, else compute and store.
pub fn branch_cached(
    spec: &CartanSpec,
    lambda: &[i64],
    grading_node: i32,
    cutoff: usize,
    cache: &BranchCache,
) -> Result<BranchResult> {
    let hash = spec_hash(spec);
    if let Some(hit) = cache.lookup(&hash, lambda, grading_node, cutoff) {
        return Ok(hit);
    }
    let result = branch(spec, lambda, grading_node, cutoff)?;
    cache.store(&result)?;
    Ok(result)
}

/// Total branched dimension per degree (handy for figure data and tests).
pub fn dims_per_degree(result: &BranchResult) -> Vec<num_bigint::BigInt> {
    result
        .content
        .iter()
        .map(|c| c.dim())
        .collect()
}

/// Assert the charge law: every irrep at degree m in the branching of the
/// level-l module has charge slope*m - l.
pub fn check_charge_law(result: &BranchResult, slope: i64, level: i64) -> Result<()> {
    for (m, c) in result.content.iter().enumerate() {
        for (irrep, mult) in c.iter() {
            if mult.is_zero() {
                continue;
            }
            let want = slope * m as i64 - level;
            if irrep.charge() != want {
                return Err(Error::Internal(format!(
                    "charge law violated at degree {m}: {} has charge {}, want {want}",
                    irrep.label_string(),
                    irrep.charge()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, BaseSeries};

    fn lam(spec: &CartanSpec, node: i32, ell: i64) -> Vec<i64> {
        let mut v = vec![0i64; spec.rank()];
        v[spec.idx(node).unwrap()] = ell;
        v
    }

    #[test]
    fn trivial_module_branches_to_one() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let zero = vec![0i64; 3];
        let r = branch(&spec, &zero, 1, 3).unwrap();
        assert_eq!(r.content[0], RepRingElem::one(3));
        for m in 1..=3 {
            assert!(r.content[m].is_zero(), "degree {m}");
        }
    }

    #[test]
    fn a1pp_level1_low_degrees() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let r = branch(&spec, &lam(&spec, -1, 1), 1, 1).unwrap();
        // Table 2 cells (1,0) = (10) and (1,1) = (01).
        let want0 = RepRingElem::from_irrep(GlIrrep::from_labels_charge(3, &[1, 0], -1).unwrap());
        let want1 = RepRingElem::from_irrep(GlIrrep::from_labels_charge(3, &[0, 1], 1).unwrap());
        assert_eq!(r.content[0], want0);
        assert_eq!(r.content[1], want1);
        check_charge_law(&r, 2, 1).unwrap();
    }

    #[test]
    fn e10_level1_degree0() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        let r = branch(&spec, &lam(&spec, -1, 1), 8, 3).unwrap();
        let want = RepRingElem::from_irrep(
            GlIrrep::from_labels_charge(10, &[1, 0, 0, 0, 0, 0, 0, 0, 0], -1).unwrap(),
        );
        assert_eq!(r.content[0], want);
        check_charge_law(&r, 3, 1).unwrap();
        for c in r.content.iter() {
            assert!(!c.has_negative());
        }
    }

    #[test]
    fn window_agreement() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let big = branch(&spec, &lam(&spec, -1, 2), 1, 6).unwrap();
        let small = branch(&spec, &lam(&spec, -1, 2), 1, 4).unwrap();
        assert_eq!(&big.content[..=4], &small.content[..]);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BranchCache::new(Some(dir.path().to_path_buf()));
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        let l = lam(&spec, -1, 1);
        let first = branch_cached(&spec, &l, 1, 4, &cache).unwrap();
        let second = branch_cached(&spec, &l, 1, 4, &cache).unwrap();
        assert_eq!(first, second);
        // Smaller cutoff is served by truncation.
        let third = branch_cached(&spec, &l, 1, 2, &cache).unwrap();
        assert_eq!(third.content[..], first.content[..=2]);
        // Missing key computes fresh.
        let other = branch_cached(&spec, &lam(&spec, -1, 3), 1, 2, &cache).unwrap();
        assert_eq!(other.cutoff, 2);
    }
}
