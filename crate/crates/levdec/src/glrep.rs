//! Exact representation-ring arithmetic for gl(d).
//!
//! A gl(d) irrep is stored as a weakly decreasing integer vector `parts` of
//! length d. Its sl(d) Dynkin labels are the consecutive differences and its
//! gl(1) charge is `-sum(parts)`, normalized so that a 1-form
//! (parts = (0,...,0,-1)) has charge 1. This is the label convention of the
//! published tables: the printed string "(a_1...a_{d-1})" lists the
//! differences, which equal minus the lowest weight of the module the cell
//! describes. All ring operations (Littlewood-Richardson products, exterior
//! and symmetric powers, Adams operations) act directly on these vectors and
//! are equivariant under that identification.
//!
//! Multiplicities are arbitrary-precision integers; Littlewood-Richardson
//! coefficients themselves are accumulated in i64 (they count tableaux and
//! stay far below that range for the shapes this engine meets).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplicity type of the representation ring.
pub type Mult = BigInt;

/// A gl(d) irreducible: weakly decreasing integer parts, length d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GlIrrep {
    parts: Vec<i32>,
}

impl GlIrrep {
    pub fn from_parts(parts: Vec<i32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Internal("empty partition".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Internal(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(GlIrrep { parts })
    }

    /// Build from sl labels plus gl(1) charge. The pair must satisfy the
    /// congruence charge = -sum(k a_k) mod d; anything else does not lift to
    /// a gl(d) weight and is rejected.
    pub fn from_labels_charge(d: usize, labels: &[i64], charge: i64) -> Result<Self> {
        if labels.len() + 1 != d {
            return Err(Error::RankMismatch {
                got: labels.len() + 1,
                want: d,
            });
        }
        if labels.iter().any(|&a| a < 0) {
            return Err(Error::Internal(format!("negative sl label in {labels:?}")));
        }
        let weighted: i64 = labels.iter().enumerate().map(|(k, &a)| (k as i64 + 1) * a).sum();
        let total = -charge - weighted;
        if total.rem_euclid(d as i64) != 0 {
            return Err(Error::Internal(format!(
                "charge {charge} incompatible with labels {labels:?} mod {d}"
            )));
        }
        let anchor = total.div_euclid(d as i64);
        let mut parts = vec![0i32; d];
        let mut acc = anchor;
        parts[d - 1] = i32::try_from(acc).map_err(|_| Error::Internal("part overflow".into()))?;
        for k in (0..d - 1).rev() {
            acc += labels[k];
            parts[k] = i32::try_from(acc).map_err(|_| Error::Internal("part overflow".into()))?;
        }
        Ok(GlIrrep { parts })
    }

    pub fn trivial(d: usize) -> Self {
        GlIrrep { parts: vec![0; d] }
    }

    /// The p-form: p-th antisymmetric power of the charge-1 one-form.
    pub fn form(d: usize, p: usize) -> Self {
        assert!(p <= d, "form degree beyond rank");
        let mut parts = vec![0i32; d];
        for v in parts[d - p..].iter_mut() {
            *v = -1;
        }
        GlIrrep { parts }
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    /// sl(d) Dynkin labels (consecutive differences).
    pub fn labels(&self) -> Vec<i64> {
        self.parts
            .windows(2)
            .map(|w| (w[0] - w[1]) as i64)
            .collect()
    }

    /// gl(1) charge, normalized so a 1-form has charge 1.
    pub fn charge(&self) -> i64 {
        -self.parts.iter().map(|&v| v as i64).sum::<i64>()
    }

    /// Contragredient module: labels reversed, charge negated.
    pub fn conjugate(&self) -> Self {
        let mut parts: Vec<i32> = self.parts.iter().rev().map(|&v| -v).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        GlIrrep { parts }
    }

    /// Tensor with the k-th determinant power: all parts shift by k, labels
    /// unchanged, charge drops by k*d.
    pub fn det_twist(&self, k: i32) -> Self {
        GlIrrep {
            parts: self.parts.iter().map(|&v| v + k).collect(),
        }
    }

    /// Weyl dimension formula.
    pub fn dim(&self) -> BigInt {
        let d = self.parts.len();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..d {
            for j in i + 1..d {
                num *= BigInt::from(self.parts[i] as i64 - self.parts[j] as i64 + (j - i) as i64);
                den *= BigInt::from((j - i) as i64);
            }
        }
        num / den
    }

    /// Table-style label string: "(100000000)"; labels of two or more digits
    /// are comma-separated, as in "(0,10)".
    pub fn label_string(&self) -> String {
        let labels = self.labels();
        let wide = labels.iter().any(|&a| a >= 10);
        let body: Vec<String> = labels.iter().map(|a| a.to_string()).collect();
        if wide {
            format!("({})", body.join(","))
        } else {
            format!("({})", body.concat())
        }
    }
}

impl fmt::Display for GlIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label_string())
    }
}

/// Finitely supported signed-integer combination of irreps (a virtual
/// representation). All terms share the same d. Serialized as a list of
/// (irrep, multiplicity) pairs to keep JSON round trips exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepRingElem {
    terms: BTreeMap<GlIrrep, Mult>,
}

impl Serialize for RepRingElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter())
    }
}

impl<'de> Deserialize<'de> for RepRingElem {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(GlIrrep, Mult)> = Vec::deserialize(deserializer)?;
        Ok(pairs.into_iter().collect())
    }
}

impl RepRingElem {
    pub fn zero() -> Self {
        RepRingElem::default()
    }

    pub fn one(d: usize) -> Self {
        RepRingElem::from_irrep(GlIrrep::trivial(d))
    }

    pub fn from_irrep(irrep: GlIrrep) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(irrep, Mult::one());
        RepRingElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GlIrrep, &Mult)> {
        self.terms.iter()
    }

    pub fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(|k| k.rank())
    }

    pub fn coeff(&self, irrep: &GlIrrep) -> Mult {
        self.terms.get(irrep).cloned().unwrap_or_else(Mult::zero)
    }

    pub fn add_term(&mut self, irrep: GlIrrep, mult: Mult) {
        if mult.is_zero() {
            return;
        }
        if let Some(first) = self.terms.keys().next() {
            debug_assert_eq!(first.rank(), irrep.rank(), "mixed gl ranks in RepRingElem");
        }
        let entry = self.terms.entry(irrep).or_insert_with(Mult::zero);
        *entry += mult;
        if entry.is_zero() {
            // remove the key we just zeroed
            let dead: Vec<GlIrrep> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add_assign(&mut self, other: &RepRingElem) {
        for (k, v) in other.terms.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &RepRingElem) {
        for (k, v) in other.terms.iter() {
            self.add_term(k.clone(), -v.clone());
        }
    }

    pub fn neg(&self) -> RepRingElem {
        RepRingElem {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), -v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, by: &Mult) -> RepRingElem {
        if by.is_zero() {
            return RepRingElem::zero();
        }
        RepRingElem {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * by))
                .collect(),
        }
    }

    pub fn has_negative(&self) -> bool {
        self.terms.values().any(|v| v.is_negative())
    }

    /// Tensor with the k-th determinant power, termwise.
    pub fn det_twist(&self, k: i32) -> RepRingElem {
        self.terms
            .iter()
            .map(|(irrep, mult)| (irrep.det_twist(k), mult.clone()))
            .collect()
    }

    /// Signed virtual dimension.
    pub fn dim(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(k, v)| k.dim() * v)
            .sum()
    }

    /// Render as space-separated "n(labels)" terms, lex-ascending by label
    /// tuple (the order used in the published tables). Multiplicity 1 is
    /// omitted, negatives are prefixed.
    pub fn render(&self) -> String {
        let mut items: Vec<(&GlIrrep, &Mult)> = self.terms.iter().collect();
        items.sort_by_key(|(k, _)| k.labels());
        items
            .iter()
            .map(|(k, v)| {
                if v.is_one() {
                    k.label_string()
                } else {
                    format!("{}{}", v, k.label_string())
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromIterator<(GlIrrep, Mult)> for RepRingElem {
    fn from_iter<T: IntoIterator<Item = (GlIrrep, Mult)>>(iter: T) -> Self {
        let mut out = RepRingElem::zero();
        for (k, v) in iter {
            out.add_term(k, v);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson products
// ---------------------------------------------------------------------------

type LrTable = Vec<(Vec<i32>, i64)>;

static LR_CACHE: Lazy<DashMap<(Vec<i32>, Vec<i32>), Arc<LrTable>>> = Lazy::new(DashMap::new);

/// Number of boxes of a normalized shape.
fn norm_size(p: &[i32]) -> i64 {
    let last = *p.last().unwrap() as i64;
    p.iter().map(|&v| v as i64 - last).sum()
}

/// Expand s_a * s_b over gl(d), d = a.len() = b.len().
/// Returns (shape, lr coefficient) pairs.
pub fn lr_product(a: &[i32], b: &[i32]) -> Arc<LrTable> {
    debug_assert_eq!(a.len(), b.len());
    // Shift-normalize both factors; LR(a + s, b + t) = LR(a, b) + (s + t).
    let sa = *a.last().unwrap();
    let sb = *b.last().unwrap();
    let mut na: Vec<i32> = a.iter().map(|&v| v - sa).collect();
    let mut nb: Vec<i32> = b.iter().map(|&v| v - sb).collect();
    // Strip-place the smaller factor.
    if norm_size(&nb) > norm_size(&na) {
        std::mem::swap(&mut na, &mut nb);
    }
    let shift = sa + sb;
    let key = (na, nb);
    let table = if let Some(hit) = LR_CACHE.get(&key) {
        hit.clone()
    } else {
        let computed = Arc::new(lr_expand(&key.0, &key.1));
        LR_CACHE.insert(key, computed.clone());
        computed
    };
    if shift == 0 {
        return table;
    }
    Arc::new(
        table
            .iter()
            .map(|(shape, c)| (shape.iter().map(|&v| v + shift).collect(), *c))
            .collect(),
    )
}

/// Core LR enumeration: `b` is a genuine partition (trailing zeros allowed),
/// `a` any weakly decreasing integer vector. Adds b's rows to `a` letter by
/// letter as horizontal strips subject to the cumulative lattice condition:
/// the letter-i boxes in rows 1..=r never outnumber the letter-(i-1) boxes in
/// rows 1..=r-1.
fn lr_expand(a: &[i32], b: &[i32]) -> LrTable {
    let _d = a.len();
    let letters: Vec<i32> = b.iter().copied().filter(|&v| v > 0).collect();
    let mut out: HashMap<Vec<i32>, i64> = HashMap::new();
    if letters.is_empty() {
        out.insert(a.to_vec(), 1);
        return finish(out);
    }

    // placed[r] = boxes of the current letter in row r; prev_cum = None for
    // the unconstrained first letter.
    fn place_letter(
        letters: &[i32],
        li: usize,
        shape: &[i32],
        prev_cum: Option<&[i32]>,
        out: &mut HashMap<Vec<i32>, i64>,
    ) {
        let d = shape.len();
        let mut placed = vec![0i32; d];
        fn rows(
            letters: &[i32],
            li: usize,
            row: usize,
            remaining: i32,
            shape: &[i32],
            prev_cum: Option<&[i32]>,
            placed: &mut Vec<i32>,
            out: &mut HashMap<Vec<i32>, i64>,
        ) {
            let d = shape.len();
            if remaining == 0 {
                let new_shape: Vec<i32> = shape
                    .iter()
                    .zip(placed.iter())
                    .map(|(&o, &p)| o + p)
                    .collect();
                let mut cum = vec![0i32; d];
                let mut acc = 0;
                for r in 0..d {
                    acc += placed[r];
                    cum[r] = acc;
                }
                if li + 1 == letters.len() {
                    *out.entry(new_shape).or_insert(0) += 1;
                } else {
                    place_letter(letters, li + 1, &new_shape, Some(&cum), out);
                }
                return;
            }
            if row == d {
                return;
            }
            let strip_cap = if row == 0 {
                remaining
            } else {
                (shape[row - 1] - shape[row]).clamp(0, remaining)
            };
            let lattice_cap = match prev_cum {
                None => remaining,
                Some(cum) => {
                    if row == 0 {
                        0
                    } else {
                        let here: i32 = placed[..row].iter().sum();
                        (cum[row - 1] - here).max(0)
                    }
                }
            };
            let cap = strip_cap.min(lattice_cap);
            for m in (0..=cap).rev() {
                placed[row] = m;
                rows(
                    letters,
                    li,
                    row + 1,
                    remaining - m,
                    shape,
                    prev_cum,
                    placed,
                    out,
                );
            }
            placed[row] = 0;
        }
        rows(letters, li, 0, letters[li], shape, prev_cum, &mut placed, out);
    }

    place_letter(&letters, 0, a, None, &mut out);
    finish(out)
}

fn finish(map: HashMap<Vec<i32>, i64>) -> LrTable {
    let mut v: Vec<(Vec<i32>, i64)> = map.into_iter().collect();
    v.sort();
    v
}

/// Tensor product of virtual modules (bilinear LR extension; charges add).
pub fn tensor(a: &RepRingElem, b: &RepRingElem) -> Result<RepRingElem> {
    if a.is_zero() || b.is_zero() {
        return Ok(RepRingElem::zero());
    }
    let (da, db) = (a.rank().unwrap(), b.rank().unwrap());
    if da != db {
        return Err(Error::MixedRank(da, db));
    }
    let mut out = RepRingElem::zero();
    for (ka, va) in a.iter() {
        for (kb, vb) in b.iter() {
            let m = va * vb;
            for (shape, c) in lr_product(ka.parts(), kb.parts()).iter() {
                out.add_term(GlIrrep { parts: shape.clone() }, &m * *c);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Adams operations (SXP rule on beta-numbers)
// ---------------------------------------------------------------------------

static ADAMS_CACHE: Lazy<DashMap<(Vec<i32>, u32), Arc<RepRingElem>>> = Lazy::new(DashMap::new);

/// Adams operation on a single irrep: dilate every weight by n.
pub fn adams_irrep(irrep: &GlIrrep, n: u32) -> Arc<RepRingElem> {
    assert!(n >= 1);
    if n == 1 {
        return Arc::new(RepRingElem::from_irrep(irrep.clone()));
    }
    let d = irrep.rank();
    let shift = *irrep.parts().last().unwrap();
    let norm: Vec<i32> = irrep.parts().iter().map(|&v| v - shift).collect();
    let key = (norm.clone(), n);
    if let Some(hit) = ADAMS_CACHE.get(&key) {
        return post_shift(hit.clone(), (n as i32) * shift);
    }
    let lam: Vec<i32> = norm.iter().copied().filter(|&v| v > 0).collect();
    let mut out = RepRingElem::zero();
    for (tuple, coeff) in coproduct_tuples(&lam, n as usize, d) {
        if let Some((mu, sign)) = glue_quotient(&tuple, n as usize, d) {
            out.add_term(GlIrrep { parts: mu }, BigInt::from(coeff * sign as i64));
        }
    }
    let arc = Arc::new(out);
    ADAMS_CACHE.insert(key, arc.clone());
    post_shift(arc, (n as i32) * shift)
}

fn post_shift(e: Arc<RepRingElem>, shift: i32) -> Arc<RepRingElem> {
    if shift == 0 {
        return e;
    }
    Arc::new(
        e.iter()
            .map(|(k, v)| {
                let parts: Vec<i32> = k.parts().iter().map(|&p| p + shift).collect();
                (GlIrrep { parts }, v.clone())
            })
            .collect(),
    )
}

/// Adams operation extended linearly to virtual modules.
pub fn adams(r: &RepRingElem, n: u32) -> Result<RepRingElem> {
    if n < 1 {
        return Err(Error::NegativeArgument("adams index must be >= 1".into()));
    }
    let mut out = RepRingElem::zero();
    for (k, v) in r.iter() {
        let img = adams_irrep(k, n);
        for (ik, iv) in img.iter() {
            out.add_term(ik.clone(), iv * v);
        }
    }
    Ok(out)
}

/// All ordered n-tuples of partitions with a nonzero iterated
/// Littlewood-Richardson coproduct coefficient for lambda, with coefficients.
fn coproduct_tuples(lam: &[i32], n: usize, d: usize) -> Vec<(Vec<Vec<i32>>, i64)> {
    if n == 1 {
        return vec![(vec![lam.to_vec()], 1)];
    }
    let mut acc: HashMap<Vec<Vec<i32>>, i64> = HashMap::new();
    for (kappa, beta, c) in cosplit(lam, d).iter() {
        for (mut tuple, c2) in coproduct_tuples(kappa, n - 1, d) {
            tuple.push(beta.clone());
            *acc.entry(tuple).or_insert(0) += c * c2;
        }
    }
    let mut v: Vec<(Vec<Vec<i32>>, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

static COSPLIT_CACHE: Lazy<DashMap<(Vec<i32>, usize), Arc<Vec<(Vec<i32>, Vec<i32>, i64)>>>> =
    Lazy::new(DashMap::new);

/// Enumerate (kappa, beta, c^lambda_{kappa,beta}) over all kappa contained in
/// lambda: LR fillings of lambda/kappa grouped by weight. Shapes are trimmed
/// of trailing zeros.
fn cosplit(lam: &[i32], d: usize) -> Arc<Vec<(Vec<i32>, Vec<i32>, i64)>> {
    let key = (lam.to_vec(), d);
    if let Some(hit) = COSPLIT_CACHE.get(&key) {
        return hit.clone();
    }
    let mut out: HashMap<(Vec<i32>, Vec<i32>), i64> = HashMap::new();
    let mut kappa = vec![0i32; lam.len()];
    enum_contained(lam, 0, &mut kappa, &mut |kappa: &[i32]| {
        for (beta, c) in skew_lr_weights(lam, kappa, d) {
            let trimmed: Vec<i32> = kappa.iter().copied().take_while(|&v| v > 0).collect();
            *out.entry((trimmed, beta)).or_insert(0) += c;
        }
    });
    let mut v: Vec<(Vec<i32>, Vec<i32>, i64)> =
        out.into_iter().map(|((k, b), c)| (k, b, c)).collect();
    v.sort();
    let arc = Arc::new(v);
    COSPLIT_CACHE.insert(key, arc.clone());
    arc
}

fn enum_contained(lam: &[i32], row: usize, kappa: &mut Vec<i32>, f: &mut impl FnMut(&[i32])) {
    if row == lam.len() {
        f(kappa);
        return;
    }
    let hi = if row == 0 {
        lam[0]
    } else {
        kappa[row - 1].min(lam[row])
    };
    for v in (0..=hi).rev() {
        kappa[row] = v;
        enum_contained(lam, row + 1, kappa, f);
    }
    kappa[row] = 0;
}

/// Weights (as partitions, at most d rows) of LR fillings of lam/kappa with
/// their counts c^lam_{kappa, beta}. Fillings are chains of horizontal strips
/// with the cumulative lattice condition; the strip sizes read off beta.
fn skew_lr_weights(lam: &[i32], kappa: &[i32], d: usize) -> Vec<(Vec<i32>, i64)> {
    let size: i32 = lam.iter().zip(kappa.iter()).map(|(&l, &k)| l - k).sum();
    if size == 0 {
        return vec![(Vec::new(), 1)];
    }

    fn strips(
        lam: &[i32],
        shape: &[i32],
        prev_cum: Option<&[i32]>,
        beta: &mut Vec<i32>,
        maxrows: usize,
        out: &mut HashMap<Vec<i32>, i64>,
    ) {
        if shape == lam {
            *out.entry(beta.clone()).or_insert(0) += 1;
            return;
        }
        if beta.len() == maxrows {
            return;
        }
        let size_cap: i32 = beta.last().copied().unwrap_or(i32::MAX);
        let rows = lam.len();
        let mut placed = vec![0i32; rows];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            lam: &[i32],
            shape: &[i32],
            prev_cum: Option<&[i32]>,
            placed: &mut Vec<i32>,
            row: usize,
            total: i32,
            size_cap: i32,
            beta: &mut Vec<i32>,
            maxrows: usize,
            out: &mut HashMap<Vec<i32>, i64>,
        ) {
            if row == lam.len() {
                if total == 0 {
                    return;
                }
                let new_shape: Vec<i32> = shape
                    .iter()
                    .zip(placed.iter())
                    .map(|(&s, &p)| s + p)
                    .collect();
                let mut cum = vec![0i32; lam.len()];
                let mut acc = 0;
                for r in 0..lam.len() {
                    acc += placed[r];
                    cum[r] = acc;
                }
                beta.push(total);
                strips(lam, &new_shape, Some(&cum), beta, maxrows, out);
                beta.pop();
                return;
            }
            let strip_cap = if row == 0 {
                lam[0] - shape[0]
            } else {
                (shape[row - 1].min(lam[row]) - shape[row]).max(0)
            };
            let lattice_cap = match prev_cum {
                None => strip_cap,
                Some(cum) => {
                    if row == 0 {
                        0
                    } else {
                        let here: i32 = placed[..row].iter().sum();
                        (cum[row - 1] - here).max(0)
                    }
                }
            };
            let cap = strip_cap.min(lattice_cap).min(size_cap - total).max(0);
            for m in (0..=cap).rev() {
                placed[row] = m;
                rec(
                    lam,
                    shape,
                    prev_cum,
                    placed,
                    row + 1,
                    total + m,
                    size_cap,
                    beta,
                    maxrows,
                    out,
                );
            }
            placed[row] = 0;
        }
        rec(
            lam, shape, prev_cum, &mut placed, 0, 0, size_cap, beta, maxrows, out,
        );
    }

    let mut out: HashMap<Vec<i32>, i64> = HashMap::new();
    let mut beta = Vec::new();
    let padded: Vec<i32> = (0..lam.len())
        .map(|i| kappa.get(i).copied().unwrap_or(0))
        .collect();
    strips(lam, &padded, None, &mut beta, d, &mut out);
    let mut v: Vec<(Vec<i32>, i64)> = out.into_iter().collect();
    v.sort();
    v
}

/// Glue an ordered n-tuple of partitions into the partition with empty
/// n-core and that n-quotient, over gl(d). Returns None when the result has
/// more than d rows. The sign is the parity of the n-ribbon tiling.
fn glue_quotient(tuple: &[Vec<i32>], n: usize, d: usize) -> Option<(Vec<i32>, i32)> {
    let k = tuple.iter().map(|q| q.len()).max().unwrap_or(0) + 1;
    // Beta numbers: runner r contributes n*(q_i + k - i) + r for i = 1..k
    // (1-indexed), q padded with zeros.
    let mut beta: Vec<i64> = Vec::with_capacity(n * k);
    for (r, q) in tuple.iter().enumerate() {
        for i in 1..=k {
            let qi = if i <= q.len() { q[i - 1] as i64 } else { 0 };
            beta.push((n as i64) * (qi + (k - i) as i64) + r as i64);
        }
    }
    beta.sort_unstable_by(|x, y| y.cmp(x));
    let total = n * k;
    let mut mu: Vec<i64> = beta
        .iter()
        .enumerate()
        .map(|(idx, &b)| b - (total - 1 - idx) as i64)
        .collect();
    while mu.last() == Some(&0) {
        mu.pop();
    }
    if mu.len() > d {
        return None;
    }
    let sign = ribbon_sign(&beta, n as i64)?;
    let mut parts = vec![0i32; d];
    for (i, &v) in mu.iter().enumerate() {
        parts[i] = i32::try_from(v).ok()?;
    }
    Some((parts, sign))
}

/// Parity of any n-ribbon peeling of the shape with the given beta set; None
/// if the n-core is nonempty (cannot happen for glue_quotient input).
fn ribbon_sign(beta: &[i64], n: i64) -> Option<i32> {
    let mut occupied: Vec<i64> = beta.to_vec();
    occupied.sort_unstable();
    let mut sign = 1i32;
    loop {
        let mut moved = false;
        for idx in 0..occupied.len() {
            let b = occupied[idx];
            if b >= n && !occupied.contains(&(b - n)) {
                // Count occupied beads strictly between b - n and b.
                let crossings = occupied
                    .iter()
                    .filter(|&&x| x > b - n && x < b)
                    .count();
                if crossings % 2 == 1 {
                    sign = -sign;
                }
                occupied[idx] = b - n;
                occupied.sort_unstable();
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    // Core must be the vacuum 0..len-1.
    for (i, &b) in occupied.iter().enumerate() {
        if b != i as i64 {
            return None;
        }
    }
    Some(sign)
}

// ---------------------------------------------------------------------------
// Exterior / symmetric powers (Newton recursion over Adams operations)
// ---------------------------------------------------------------------------

/// All exterior powers 0..=kmax of a virtual module.
pub fn alt_powers(v: &RepRingElem, kmax: usize) -> Result<Vec<RepRingElem>> {
    powers(v, kmax, true)
}

/// All symmetric powers 0..=kmax of a virtual module.
pub fn sym_powers(v: &RepRingElem, kmax: usize) -> Result<Vec<RepRingElem>> {
    powers(v, kmax, false)
}

fn powers(v: &RepRingElem, kmax: usize, alternating: bool) -> Result<Vec<RepRingElem>> {
    let d = v.rank().unwrap_or(1);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(RepRingElem::one(d));
    if kmax == 0 {
        return Ok(out);
    }
    let psis: Vec<RepRingElem> = (1..=kmax as u32)
        .map(|i| adams(v, i))
        .collect::<Result<_>>()?;
    for k in 1..=kmax {
        let mut acc = RepRingElem::zero();
        for i in 1..=k {
            let term = tensor(&psis[i - 1], &out[k - i])?;
            if alternating && i % 2 == 0 {
                acc.sub_assign(&term);
            } else {
                acc.add_assign(&term);
            }
        }
        // Divide by k exactly.
        let kk = BigInt::from(k as i64);
        let mut piece = RepRingElem::zero();
        for (irrep, mult) in acc.iter() {
            let (q, r) = num_integer::Integer::div_rem(mult, &kk);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "power recursion produced non-integral multiplicity at k={k}"
                )));
            }
            piece.add_term(irrep.clone(), q);
        }
        out.push(piece);
    }
    Ok(out)
}

/// Single exterior power.
pub fn alt_power(v: &RepRingElem, k: usize) -> Result<RepRingElem> {
    Ok(alt_powers(v, k)?.pop().unwrap())
}

/// Single symmetric power.
pub fn sym_power(v: &RepRingElem, k: usize) -> Result<RepRingElem> {
    Ok(sym_powers(v, k)?.pop().unwrap())
}

// ---------------------------------------------------------------------------
// Dominant characters: Freudenthal and greedy decomposition
// ---------------------------------------------------------------------------

/// A W-invariant character stored on dominant gl(d) weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominantCharacter {
    pub d: usize,
    pub weights: BTreeMap<Vec<i32>, Mult>,
}

impl DominantCharacter {
    pub fn add(&mut self, w: Vec<i32>, m: Mult) {
        if m.is_zero() {
            return;
        }
        let e = self.weights.entry(w).or_insert_with(Mult::zero);
        *e += m;
        let dead: Vec<Vec<i32>> = self
            .weights
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in dead {
            self.weights.remove(&k);
        }
    }

    /// Total dimension via symmetric-group orbit sizes.
    pub fn dim(&self) -> BigInt {
        let mut total = BigInt::zero();
        for (w, m) in self.weights.iter() {
            total += m * orbit_size(w);
        }
        total
    }
}

pub fn orbit_size(w: &[i32]) -> BigInt {
    let mut fact = BigInt::one();
    for i in 2..=w.len() {
        fact *= BigInt::from(i as u64);
    }
    let mut run = 1usize;
    for i in 1..=w.len() {
        if i < w.len() && w[i] == w[i - 1] {
            run += 1;
        } else {
            for j in 2..=run {
                fact /= BigInt::from(j as u64);
            }
            run = 1;
        }
    }
    fact
}

static DOMCHAR_CACHE: Lazy<DashMap<Vec<i32>, Arc<BTreeMap<Vec<i32>, Mult>>>> =
    Lazy::new(DashMap::new);

/// Dominant character of an irrep by Freudenthal's recursion.
pub fn to_character_irrep(irrep: &GlIrrep) -> Arc<BTreeMap<Vec<i32>, Mult>> {
    let shift = *irrep.parts().last().unwrap();
    let lam: Vec<i32> = irrep.parts().iter().map(|&v| v - shift).collect();
    if let Some(hit) = DOMCHAR_CACHE.get(&lam) {
        return shift_weights(hit.clone(), shift);
    }
    let computed = Arc::new(freudenthal(&lam));
    DOMCHAR_CACHE.insert(lam, computed.clone());
    shift_weights(computed, shift)
}

fn shift_weights(
    m: Arc<BTreeMap<Vec<i32>, Mult>>,
    shift: i32,
) -> Arc<BTreeMap<Vec<i32>, Mult>> {
    if shift == 0 {
        return m;
    }
    Arc::new(
        m.iter()
            .map(|(k, v)| (k.iter().map(|&x| x + shift).collect(), v.clone()))
            .collect(),
    )
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn freudenthal(lam: &[i32]) -> BTreeMap<Vec<i32>, Mult> {
    let d = lam.len();
    let rho: Vec<i64> = (0..d).map(|i| (d - 1 - i) as i64).collect();
    let lam64: Vec<i64> = lam.iter().map(|&v| v as i64).collect();
    let lam_rho: Vec<i64> = lam64.iter().zip(rho.iter()).map(|(a, b)| a + b).collect();
    let norm_top = dot(&lam_rho, &lam_rho);

    // Enumerate dominant weights dominated by lam with the same size.
    let mut dominated: Vec<Vec<i32>> = Vec::new();
    let total: i32 = lam.iter().sum();
    let mut cur = vec![0i32; d];
    fn gen(
        lam: &[i32],
        row: usize,
        rem: i64,
        prefix: i64,
        cur: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
    ) {
        let d = lam.len();
        if row == d {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi_dom = lam[..=row.min(d - 1)]
            .iter()
            .map(|&v| v as i64)
            .sum::<i64>()
            - prefix;
        let hi = if row == 0 {
            lam[0] as i64
        } else {
            (cur[row - 1] as i64).min(hi_dom)
        }
        .min(hi_dom);
        // Remaining rows must be able to absorb the rest while decreasing.
        let rows_left = (d - row) as i64;
        for v in (-(lam[0] as i64).abs()..=hi).rev() {
            // lower bound: v * rows_left >= rem is required since entries
            // decrease; v <= hi enforced.
            if v * rows_left < rem {
                break;
            }
            cur[row] = v as i32;
            gen(lam, row + 1, rem - v, prefix + v, cur, out);
        }
        cur[row] = 0;
    }
    gen(lam, 0, total as i64, 0, &mut cur, &mut dominated);

    // Sort by decreasing dominance key T = sum of prefix sums.
    let key = |w: &[i32]| -> i64 {
        let mut acc = 0i64;
        let mut pre = 0i64;
        for &v in w {
            pre += v as i64;
            acc += pre;
        }
        acc
    };
    dominated.sort_by_key(|w| std::cmp::Reverse(key(w)));

    let mut mults: HashMap<Vec<i32>, Mult> = HashMap::new();
    let mut out = BTreeMap::new();
    for w in dominated.iter() {
        if w.as_slice() == lam {
            mults.insert(w.clone(), Mult::one());
            out.insert(w.clone(), Mult::one());
            continue;
        }
        let w64: Vec<i64> = w.iter().map(|&v| v as i64).collect();
        let w_rho: Vec<i64> = w64.iter().zip(rho.iter()).map(|(a, b)| a + b).collect();
        let denom = norm_top - dot(&w_rho, &w_rho);
        if denom == 0 {
            // Unreachable in dominance interior; weight not in the module.
            continue;
        }
        let mut num = Mult::zero();
        for i in 0..d {
            for j in i + 1..d {
                let mut k = 1i64;
                loop {
                    let mut mu: Vec<i32> = w.clone();
                    mu[i] += k as i32;
                    mu[j] -= k as i32;
                    mu.sort_unstable_by(|a, b| b.cmp(a));
                    let Some(m) = mults.get(&mu) else {
                        break;
                    };
                    let pairing = (w64[i] + k) - (w64[j] - k);
                    num += m * BigInt::from(2 * pairing);
                    k += 1;
                }
            }
        }
        let (q, r) = num_integer::Integer::div_rem(&num, &BigInt::from(denom));
        debug_assert!(r.is_zero(), "Freudenthal non-integral at {w:?}");
        if !q.is_zero() {
            mults.insert(w.clone(), q.clone());
            out.insert(w.clone(), q);
        }
    }
    out
}

/// Full dominant character of a virtual module.
pub fn to_character(r: &RepRingElem) -> DominantCharacter {
    let d = r.rank().unwrap_or(1);
    let mut ch = DominantCharacter {
        d,
        weights: BTreeMap::new(),
    };
    for (k, v) in r.iter() {
        for (w, m) in to_character_irrep(k).iter() {
            ch.add(w.clone(), m * v);
        }
    }
    ch
}

/// Decompose a genuine dominant character into irreps by greedy subtraction
/// of highest-weight characters. Errors when a multiplicity goes negative.
pub fn from_character(ch: &DominantCharacter) -> Result<RepRingElem> {
    let mut work: BTreeMap<Vec<i32>, Mult> = ch.weights.clone();
    let key = |w: &[i32]| -> (i64, Vec<i32>) {
        let mut acc = 0i64;
        let mut pre = 0i64;
        for &v in w {
            pre += v as i64;
            acc += pre;
        }
        (acc, w.to_vec())
    };
    let mut out = RepRingElem::zero();
    while let Some(top) = work.keys().max_by_key(|w| key(w)).cloned() {
        let m = work.get(&top).cloned().unwrap();
        if m.is_negative() {
            return Err(Error::NotACharacter(format!("{top:?}")));
        }
        let irrep = GlIrrep::from_parts(top.clone())
            .map_err(|_| Error::NotACharacter(format!("{top:?} not dominant")))?;
        for (w, wm) in to_character_irrep(&irrep).iter() {
            let e = work.entry(w.clone()).or_insert_with(Mult::zero);
            *e -= wm * &m;
            if e.is_zero() {
                work.remove(w);
            }
        }
        out.add_term(irrep, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irrep(d: usize, labels: &[i64], charge: i64) -> GlIrrep {
        GlIrrep::from_labels_charge(d, labels, charge).unwrap()
    }

    #[test]
    fn labels_charge_round_trip() {
        let r = irrep(10, &[1, 0, 0, 0, 0, 0, 0, 0, 0], -1);
        assert_eq!(r.parts(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(r.labels(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(r.charge(), -1);
        let f3 = irrep(10, &[0, 0, 0, 0, 0, 0, 1, 0, 0], 3);
        assert_eq!(f3, GlIrrep::form(10, 3));
        assert!(GlIrrep::from_labels_charge(10, &[1, 0, 0, 0, 0, 0, 0, 0, 0], 0).is_err());
    }

    #[test]
    fn dims() {
        assert_eq!(GlIrrep::trivial(4).dim(), BigInt::from(1));
        assert_eq!(irrep(10, &[1, 0, 0, 0, 0, 0, 0, 0, 0], -1).dim(), BigInt::from(10));
        // d=3 adjoint (1,1) has dimension 8.
        assert_eq!(irrep(3, &[1, 1], 0).dim(), BigInt::from(8));
        assert_eq!(GlIrrep::form(10, 3).dim(), BigInt::from(120));
    }

    #[test]
    fn tensor_unit_and_adjoint() {
        let d = 3;
        let v = RepRingElem::from_irrep(irrep(d, &[1, 0], -1));
        let one = RepRingElem::one(d);
        assert_eq!(tensor(&one, &v).unwrap(), v);
        // (10) x (01) = (11) + (00) with charges adding to 0.
        let vbar = RepRingElem::from_irrep(irrep(d, &[0, 1], 1));
        let prod = tensor(&v, &vbar).unwrap();
        let mut want = RepRingElem::zero();
        want.add_term(irrep(d, &[1, 1], 0), Mult::one());
        want.add_term(GlIrrep::trivial(d), Mult::one());
        assert_eq!(prod, want);
    }

    #[test]
    fn tensor_d10_fund_times_dual() {
        let d = 10;
        let v = RepRingElem::from_irrep(irrep(d, &[1, 0, 0, 0, 0, 0, 0, 0, 0], -1));
        let w = RepRingElem::from_irrep(irrep(d, &[0, 0, 0, 0, 0, 0, 0, 0, 1], 1));
        let prod = tensor(&v, &w).unwrap();
        let mut want = RepRingElem::zero();
        want.add_term(irrep(d, &[1, 0, 0, 0, 0, 0, 0, 0, 1], 0), Mult::one());
        want.add_term(GlIrrep::trivial(d), Mult::one());
        assert_eq!(prod, want);
    }

    #[test]
    fn alt_sym_small() {
        let d = 3;
        let v = RepRingElem::from_irrep(irrep(d, &[1, 0], -1));
        let alts = alt_powers(&v, 3).unwrap();
        assert_eq!(alts[0], RepRingElem::one(d));
        assert_eq!(alts[1], v);
        // wedge^2 (10) = (01) with doubled charge.
        assert_eq!(
            alts[2],
            RepRingElem::from_irrep(irrep(d, &[0, 1], -2))
        );
        // wedge^3 of the 3-dim rep is the determinant line, charge -3.
        let det: Vec<i32> = vec![1, 1, 1];
        assert_eq!(
            alts[3],
            RepRingElem::from_irrep(GlIrrep::from_parts(det).unwrap())
        );
        // sym^2 (01) = (02).
        let vb = RepRingElem::from_irrep(irrep(d, &[0, 1], 1));
        let syms = sym_powers(&vb, 2).unwrap();
        assert_eq!(syms[2], RepRingElem::from_irrep(irrep(d, &[0, 2], 2)));
    }

    #[test]
    fn adams_rank2() {
        // psi^2(fund) = (2) - (11) over gl(2).
        let d = 2;
        let v = RepRingElem::from_irrep(irrep(d, &[1], -1));
        let got = adams(&v, 2).unwrap();
        let mut want = RepRingElem::zero();
        want.add_term(GlIrrep::from_parts(vec![2, 0]).unwrap(), Mult::one());
        want.add_term(GlIrrep::from_parts(vec![1, 1]).unwrap(), -Mult::one());
        assert_eq!(got, want);
        // psi^1 is the identity; psi on the trivial scales nothing.
        assert_eq!(adams(&v, 1).unwrap(), v);
        let one = RepRingElem::one(d);
        assert_eq!(adams(&one, 5).unwrap(), one);
        // psi^n of a determinant power scales the charge.
        let det = RepRingElem::from_irrep(GlIrrep::from_parts(vec![-2, -2]).unwrap());
        let got = adams(&det, 3).unwrap();
        assert_eq!(
            got,
            RepRingElem::from_irrep(GlIrrep::from_parts(vec![-6, -6]).unwrap())
        );
    }

    #[test]
    fn characters_adjoint() {
        let adj = irrep(3, &[1, 1], 0);
        let ch = to_character_irrep(&adj);
        assert_eq!(ch.get(&vec![1, 0, -1]).cloned(), Some(Mult::one()));
        assert_eq!(ch.get(&vec![0, 0, 0]).cloned(), Some(Mult::from(2)));
        assert_eq!(ch.len(), 2);
        let full = to_character(&RepRingElem::from_irrep(adj.clone()));
        assert_eq!(full.dim(), BigInt::from(8));
        let back = from_character(&full).unwrap();
        assert_eq!(back, RepRingElem::from_irrep(adj));
    }

    #[test]
    fn from_character_rejects_non_character() {
        let mut ch = DominantCharacter {
            d: 3,
            weights: BTreeMap::new(),
        };
        // A bare non-extreme weight orbit without its highest weight closure
        // cannot be a character: (1,0,-1) alone forces negative trivial mult.
        ch.add(vec![1, 0, -1], Mult::one());
        ch.add(vec![0, 0, 0], -Mult::one());
        assert!(from_character(&ch).is_err());
    }

    #[test]
    fn conjugate_and_render() {
        let r = irrep(10, &[0, 0, 0, 0, 0, 0, 1, 0, 0], 3);
        let c = r.conjugate();
        assert_eq!(c.labels(), vec![0, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(c.charge(), -3);
        assert_eq!(r.label_string(), "(000000100)");
        let wide = irrep(3, &[0, 10], 10 * 2 - 10).label_string();
        assert_eq!(wide, "(0,10)");
    }

    #[test]
    fn virtual_dim_is_ring_hom() {
        let d = 4;
        let a = RepRingElem::from_irrep(irrep(d, &[1, 0, 1], -4));
        let b = RepRingElem::from_irrep(irrep(d, &[0, 2, 0], 0));
        let prod = tensor(&a, &b).unwrap();
        assert_eq!(prod.dim(), a.dim() * b.dim());
    }
}
