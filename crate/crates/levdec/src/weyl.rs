//! Weyl group machinery: simple reflections, the rho-shifted action, and
//! enumeration of the Weyl elements whose shifted images of a dominant weight
//! are gl-dominant up to a degree cutoff.
//!
//! The enumeration walks coset representatives rather than raw group
//! elements: states are the sl-dominant images x = w(Lambda + rho)
//! themselves. From a state, one fermionic-direction move applies some
//! v in W_sl, then the grading-node reflection, then re-dominantizes. Since
//! the sl nodes form an A_{d-1} chain, the distinct outcomes are indexed by
//! the ways to arrange the grading root's epsilon-profile over the state's
//! epsilon values, which keeps the fanout polynomial where the raw element
//! walk would visit whole S_d cosets. Dedup keys include the accumulated
//! degree because label vectors do not separate Weyl elements for affine
//! (singular) Cartan matrices; the pair (labels, degree) always does.
//!
//! Degrees are monotone along reduced words (every letter of a reduced word
//! reflects at a positive label), which makes the degree-layer pruning
//! complete; the invariant is re-checked on every emitted word.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cartan::CartanSpec;
use crate::error::{Error, Result};

/// A Weyl group element as a reduced word; letters are node ids, applied
/// right to left, so "w_8 w_5" reflects at node 5 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<i32>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord {
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parity(&self) -> i32 {
        if self.letters.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// "w_8w_5w_4" style rendering.
    pub fn display(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| format!("w_{l}"))
            .collect::<Vec<_>>()
            .join("")
    }
}

/// One enumerated Weyl element with its shifted image and degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedImage {
    pub word: WeylWord,
    /// W(Lambda) = w(Lambda + rho) - rho in fundamental labels.
    pub image: Vec<i64>,
    pub degree: i64,
}

/// Reflection s_i on fundamental labels: mu -> mu - mu_i * alpha_i.
pub fn reflect(spec: &CartanSpec, labels: &mut [i64], i: usize) {
    let c = labels[i];
    if c == 0 {
        return;
    }
    for (j, l) in labels.iter_mut().enumerate() {
        *l -= c * spec.matrix[j][i];
    }
}

/// The rho-shifted action W(lambda) = w(lambda + rho) - rho, computed letter
/// by letter (rightmost letter first).
pub fn shifted_action(spec: &CartanSpec, word: &WeylWord, lambda: &[i64]) -> Result<Vec<i64>> {
    if lambda.len() != spec.rank() {
        return Err(Error::RankMismatch {
            got: lambda.len(),
            want: spec.rank(),
        });
    }
    let mut x: Vec<i64> = lambda.iter().map(|&v| v + 1).collect();
    for &letter in word.letters.iter().rev() {
        if !spec.is_bosonic(letter) {
            return Err(Error::NotBosonic(letter));
        }
        let i = spec.idx(letter)?;
        reflect(spec, &mut x, i);
    }
    for v in x.iter_mut() {
        *v -= 1;
    }
    Ok(x)
}

/// Degree of an image relative to lambda: the coefficient of the grading
/// node's simple root in lambda - image. Exact, and only defined when the
/// Cartan matrix is nonsingular; the enumerator tracks degrees
/// incrementally instead, which also covers affine specs.
pub fn degree(spec: &CartanSpec, lambda: &[i64], image: &[i64], grading_node: i32) -> Result<i64> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let diff: Vec<BigRational> = lambda
        .iter()
        .zip(image.iter())
        .map(|(&a, &b)| BigRational::from_integer(BigInt::from(a - b)))
        .collect();
    let coords = spec.fund_to_root(&diff)?;
    let g = spec.idx(grading_node)?;
    for c in coords.iter() {
        if !c.is_integer() {
            return Err(Error::NotInRootLattice);
        }
    }
    let c: BigInt = coords[g].to_integer();
    i64::try_from(&c).map_err(|_| Error::Internal("degree overflow".into()))
}

/// Grading data for the gl-covariant double grading of a bosonic spec: the
/// A_{d-1} chain left after deleting the grading node, the epsilon profile of
/// the grading root, and the charge slope.
#[derive(Debug, Clone)]
pub struct GradingData {
    pub grading_node: i32,
    /// sl chain node ids, ascending; chain[k] = epsilon slot k.
    pub chain: Vec<i32>,
    /// d = chain length + 1.
    pub d: usize,
    /// Top-anchored epsilon profile of the grading root (length d).
    pub profile: Vec<i64>,
    /// Charge slope of the degree grading: sum of the profile.
    pub slope: i64,
    chain_idx: Vec<usize>,
    grading_idx: usize,
}

impl GradingData {
    pub fn new(spec: &CartanSpec, grading_node: i32) -> Result<Self> {
        if spec.fermionic_node.is_some() {
            return Err(Error::InvalidCartan(
                "grading data wants the bosonic spec".into(),
            ));
        }
        let grading_idx = spec.idx(grading_node)?;
        let chain: Vec<i32> = spec
            .nodes
            .iter()
            .copied()
            .filter(|&n| n != grading_node)
            .collect();
        let d = chain.len() + 1;
        let chain_idx: Vec<usize> = chain
            .iter()
            .map(|&n| spec.idx(n))
            .collect::<Result<_>>()?;
        // The remaining diagram must be the A_{d-1} chain in id order.
        for (k, &i) in chain_idx.iter().enumerate() {
            for (l, &j) in chain_idx.iter().enumerate() {
                let want = if k == l {
                    2
                } else if k + 1 == l || l + 1 == k {
                    -1
                } else {
                    0
                };
                if spec.matrix[i][j] != want {
                    return Err(Error::InvalidCartan(format!(
                        "nodes off the grading node do not form an A chain at ({}, {})",
                        chain[k], chain[l]
                    )));
                }
            }
        }
        // Top-anchored profile: profile_1 = 0,
        // profile_{k+1} = profile_k - A[chain_k][g].
        let mut profile = vec![0i64; d];
        for k in 0..d - 1 {
            profile[k + 1] = profile[k] - spec.matrix[chain_idx[k]][grading_idx];
        }
        let slope: i64 = profile.iter().sum();
        Ok(GradingData {
            grading_node,
            chain,
            d,
            profile,
            slope,
            chain_idx,
            grading_idx,
        })
    }

    /// Epsilon values of a label vector (anchor: last value 0).
    fn epsilon(&self, labels: &[i64]) -> Vec<i64> {
        let mut e = vec![0i64; self.d];
        for k in (0..self.d - 1).rev() {
            e[k] = e[k + 1] + labels[self.chain_idx[k]];
        }
        e
    }
}

/// Enumerate the Weyl elements w with p(W(lambda)) <= max_degree whose
/// shifted images are gl-dominant, sorted by (degree, word length, word).
pub fn enumerate_gl_dominant(
    spec: &CartanSpec,
    lambda: &[i64],
    grading_node: i32,
    max_degree: i64,
) -> Result<Vec<ShiftedImage>> {
    if lambda.len() != spec.rank() {
        return Err(Error::RankMismatch {
            got: lambda.len(),
            want: spec.rank(),
        });
    }
    if lambda.iter().any(|&v| v < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    if max_degree < 0 {
        return Err(Error::NegativeArgument("max_degree".into()));
    }
    let g = GradingData::new(spec, grading_node)?;
    let base: Vec<i64> = lambda.iter().map(|&v| v + 1).collect();

    // Distinct arrangements of the profile entries: assignments of epsilon
    // slots to each distinct nonzero profile value.
    let arrangements = profile_arrangements(&g.profile);

    let mut visited: HashSet<(Vec<i64>, i64)> = HashSet::new();
    let mut queue: VecDeque<(Vec<i64>, i64)> = VecDeque::new();
    let mut found: Vec<(Vec<i64>, i64)> = Vec::new();
    visited.insert((base.clone(), 0));
    queue.push_back((base.clone(), 0));
    found.push((base.clone(), 0));

    while let Some((x, deg)) = queue.pop_front() {
        let e = g.epsilon(&x);
        let xg = x[g.grading_idx];
        let canon: i64 = g
            .profile
            .iter()
            .zip(e.iter())
            .map(|(p, v)| p * v)
            .sum();
        for arr in arrangements.iter() {
            let dot: i64 = arr.iter().zip(e.iter()).map(|(p, v)| p * v).sum();
            let zg = xg + dot - canon;
            if zg <= 0 {
                // zg = 0 would contradict regularity of lambda + rho.
                if zg == 0 {
                    return Err(Error::PruningUnsound(format!(
                        "grading label vanished at state {x:?}"
                    )));
                }
                continue;
            }
            let ndeg = deg + zg;
            if ndeg > max_degree {
                continue;
            }
            // Build z's labels from the rearranged epsilon values, reflect at
            // the grading node, dominantize over the sl chain.
            let mut z = x.clone();
            let ez = rearranged_epsilon(&g.profile, arr, &e);
            debug_assert_eq!(
                zg,
                xg + g
                    .profile
                    .iter()
                    .zip(ez.iter())
                    .map(|(p, v)| p * v)
                    .sum::<i64>()
                    - canon,
                "successor labels inconsistent with its grading label"
            );
            for k in 0..g.d - 1 {
                z[g.chain_idx[k]] = ez[k] - ez[k + 1];
            }
            z[g.grading_idx] = zg;
            reflect(spec, &mut z, g.grading_idx);
            sl_dominantize(spec, &g, &mut z)?;
            let key = (z.clone(), ndeg);
            if visited.insert(key) {
                queue.push_back((z.clone(), ndeg));
                found.push((z, ndeg));
            }
        }
    }

    let mut out: Vec<ShiftedImage> = found
        .into_iter()
        .map(|(x, deg)| {
            let word = recover_word(spec, &base, &x)?;
            check_degree_monotone(spec, &g, &base, &word)?;
            let image: Vec<i64> = x.iter().map(|&v| v - 1).collect();
            Ok(ShiftedImage {
                word,
                image,
                degree: deg,
            })
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| {
        (a.degree, a.word.len(), &a.word.letters).cmp(&(b.degree, b.word.len(), &b.word.letters))
    });
    Ok(out)
}

/// All distinct ways to rearrange the profile's entries, as vectors.
fn profile_arrangements(profile: &[i64]) -> Vec<Vec<i64>> {
    let mut sorted = profile.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    permute_distinct(&mut sorted, 0, &mut out);
    out
}

fn permute_distinct(vals: &mut Vec<i64>, from: usize, out: &mut Vec<Vec<i64>>) {
    if from == vals.len() {
        out.push(vals.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in from..vals.len() {
        if seen.contains(&vals[i]) {
            continue;
        }
        seen.push(vals[i]);
        vals.swap(from, i);
        permute_distinct(vals, from + 1, out);
        vals.swap(from, i);
    }
}

/// Epsilon values of v(x) for the v realizing the arrangement: the value at
/// canonical slot k moves onto a slot whose profile entry is arr[k]. Slots
/// within one profile class are interchangeable (they differ by an sl
/// permutation that commutes with the grading reflection), so any fixed
/// assignment inside a class gives the same dominantized successor.
fn rearranged_epsilon(profile: &[i64], arr: &[i64], e: &[i64]) -> Vec<i64> {
    let d = profile.len();
    let mut out = vec![0i64; d];
    let mut values: Vec<i64> = profile.to_vec();
    values.sort_unstable();
    values.dedup();
    for val in values {
        let sources: Vec<i64> = (0..d).filter(|&k| arr[k] == val).map(|k| e[k]).collect();
        let targets: Vec<usize> = (0..d).filter(|&k| profile[k] == val).collect();
        for (slot, value) in targets.into_iter().zip(sources.into_iter()) {
            out[slot] = value;
        }
    }
    out
}

fn sl_dominantize(spec: &CartanSpec, g: &GradingData, x: &mut [i64]) -> Result<()> {
    loop {
        let mut moved = false;
        for &i in g.chain_idx.iter() {
            if x[i] < 0 {
                reflect(spec, x, i);
                moved = true;
            } else if x[i] == 0 {
                return Err(Error::PruningUnsound(format!(
                    "sl label vanished while dominantizing {x:?}"
                )));
            }
        }
        if !moved {
            return Ok(());
        }
    }
}

/// Lexicographically minimal reduced word taking base to x: repeatedly strip
/// the smallest node id with a negative label.
fn recover_word(spec: &CartanSpec, base: &[i64], x: &[i64]) -> Result<WeylWord> {
    let mut cur = x.to_vec();
    let mut letters = Vec::new();
    let cap = 100_000;
    while cur != base {
        let mut pick: Option<(i32, usize)> = None;
        for (idx, &node) in spec.nodes.iter().enumerate() {
            if cur[idx] < 0 && pick.map_or(true, |(n, _)| node < n) {
                pick = Some((node, idx));
            }
        }
        let Some((node, idx)) = pick else {
            return Err(Error::Internal(format!(
                "image {x:?} not reachable from the base weight"
            )));
        };
        letters.push(node);
        reflect(spec, &mut cur, idx);
        if letters.len() > cap {
            return Err(Error::Internal("word recovery did not terminate".into()));
        }
    }
    Ok(WeylWord { letters })
}

/// Degree must be non-decreasing letter by letter along the emitted word;
/// this is the assumption behind the BFS pruning.
fn check_degree_monotone(
    spec: &CartanSpec,
    g: &GradingData,
    base: &[i64],
    word: &WeylWord,
) -> Result<()> {
    let mut x = base.to_vec();
    let mut deg = 0i64;
    for &letter in word.letters.iter().rev() {
        let i = spec.idx(letter)?;
        if letter == g.grading_node {
            let inc = x[i];
            if inc < 0 {
                return Err(Error::PruningUnsound(format!(
                    "degree decreased along {}",
                    word.display()
                )));
            }
            deg += inc;
        }
        reflect(spec, &mut x, i);
    }
    let _ = deg;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, BaseSeries};

    fn e10() -> CartanSpec {
        build_cartan(BaseSeries::E8, 2, false).unwrap()
    }

    fn a1pp() -> CartanSpec {
        build_cartan(BaseSeries::A(1), 2, false).unwrap()
    }

    fn lam(spec: &CartanSpec, node: i32, ell: i64) -> Vec<i64> {
        let mut v = vec![0i64; spec.rank()];
        v[spec.idx(node).unwrap()] = ell;
        v
    }

    #[test]
    fn identity_action() {
        let spec = e10();
        let l = lam(&spec, -1, 3);
        let img = shifted_action(&spec, &WeylWord::identity(), &l).unwrap();
        assert_eq!(img, l);
    }

    #[test]
    fn w8_image_at_ell_3() {
        let spec = e10();
        let l = lam(&spec, -1, 3);
        let w = WeylWord { letters: vec![8] };
        let img = shifted_action(&spec, &w, &l).unwrap();
        // (3,0,0,0,0,0 | 1 | 0,0 | -2) in node order (-1..7, 8).
        assert_eq!(img, vec![3, 0, 0, 0, 0, 0, 1, 0, 0, -2]);
        assert_eq!(degree(&spec, &l, &img, 8).unwrap(), 1);
    }

    #[test]
    fn a1pp_table6_row() {
        let spec = a1pp();
        let l = lam(&spec, -1, 2);
        let w = WeylWord {
            letters: vec![1, 0, -1],
        };
        let img = shifted_action(&spec, &w, &l).unwrap();
        assert_eq!(img, vec![0, 13, -10]);
        assert_eq!(degree(&spec, &l, &img, 1).unwrap(), 9);
    }

    #[test]
    fn max_degree_zero_gives_identity() {
        let spec = e10();
        let l = lam(&spec, -1, 1);
        let rows = enumerate_gl_dominant(&spec, &l, 8, 0).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].word.is_empty());
        assert_eq!(rows[0].degree, 0);
        assert_eq!(rows[0].image, l);
    }

    #[test]
    fn a1pp_scan_degree_7() {
        let spec = a1pp();
        let l = lam(&spec, -1, 1);
        let rows = enumerate_gl_dominant(&spec, &l, 1, 7).unwrap();
        let got: Vec<(String, Vec<i64>, i64)> = rows
            .iter()
            .map(|r| (r.word.display(), r.image.clone(), r.degree))
            .collect();
        let want: Vec<(String, Vec<i64>, i64)> = vec![
            ("1".into(), vec![1, 0, 0], 0),
            ("w_1".into(), vec![1, 2, -2], 1),
            ("w_1w_0".into(), vec![2, 4, -4], 3),
            ("w_1w_0w_1".into(), vec![4, 6, -6], 6),
            ("w_1w_0w_-1".into(), vec![0, 10, -8], 7),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn e10_table5_counts() {
        let spec = e10();
        let l = lam(&spec, -1, 1);
        let rows = enumerate_gl_dominant(&spec, &l, 8, 7).unwrap();
        assert_eq!(rows.len(), 27);
        // Degree histogram of Table 5: 1,1,1,2,3,4,6,9.
        let mut hist = vec![0usize; 8];
        for r in rows.iter() {
            hist[r.degree as usize] += 1;
        }
        assert_eq!(hist, vec![1, 1, 1, 2, 3, 4, 6, 9]);
    }

    #[test]
    fn degree_monotone_and_images_distinct() {
        let spec = a1pp();
        let l = lam(&spec, -1, 2);
        let rows = enumerate_gl_dominant(&spec, &l, 1, 12).unwrap();
        let mut seen = HashSet::new();
        for r in rows.iter() {
            assert!(seen.insert((r.image.clone(), r.degree)));
            let img = shifted_action(&spec, &r.word, &l).unwrap();
            assert_eq!(img, r.image, "word {}", r.word.display());
        }
    }

    #[test]
    fn inner_product_preserved_by_action() {
        use crate::cartan::WeightVector;
        let spec = a1pp();
        let x = vec![3i64, -2, 5];
        let y = vec![1i64, 4, -1];
        let w = WeylWord {
            letters: vec![1, 0, 1, -1],
        };
        // Unshifted action: conjugate through the shifted one with rho
        // bookkeeping: w(x) = shifted(x - rho ... ) is awkward; apply raw
        // reflections directly instead.
        let apply = |v: &[i64]| {
            let mut out = v.to_vec();
            for &letter in w.letters.iter().rev() {
                reflect(&spec, &mut out, spec.idx(letter).unwrap());
            }
            out
        };
        let wx = apply(&x);
        let wy = apply(&y);
        let ip = |a: &[i64], b: &[i64]| {
            spec.inner_product(
                &WeightVector::fundamental_int(a),
                &WeightVector::fundamental_int(b),
            )
            .unwrap()
        };
        assert_eq!(ip(&wx, &wy), ip(&x, &y));
    }
}
