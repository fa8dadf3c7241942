//! Cartan matrices and weight lattices for the extended algebras g^(n) and
//! their super-extensions B^(n+1).
//!
//! Node ids follow the paper's signed convention: nodes 1..r label the simple
//! algebra, node 0 is the affine node, node -1 the hyperbolic node, and so on
//! down to -n+1. A super spec carries one extra fermionic (grey) node with id
//! -n-1, chosen so that bosonic and super specs for the same g^(n) can coexist
//! without id collisions. An explicit id <-> index table is kept; array
//! position is never meaningful on its own.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Supported built-in families for [`build_cartan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseSeries {
    /// A_r, rank r >= 1.
    A(u32),
    /// E_8.
    E8,
}

/// Family metadata carried by built-in specs; drives the series-specific
/// constants of the tensor hierarchy analysis (duality centers, degree shift).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFamily {
    pub base: BaseSeries,
    /// Number of plus signs: g^(n).
    pub n: u32,
}

impl AlgebraFamily {
    /// Rank of the finite part.
    pub fn r(&self) -> u32 {
        match self.base {
            BaseSeries::A(r) => r,
            BaseSeries::E8 => 8,
        }
    }

    /// The grading node used for the gl-covariant double grading: the
    /// exceptional node 8 in the E series, node r in the A series.
    pub fn default_grading_node(&self) -> i32 {
        match self.base {
            BaseSeries::A(r) => r as i32,
            BaseSeries::E8 => 8,
        }
    }

    /// Node carrying the fundamental weight lambda that the fermionic node
    /// attaches to: the leftmost bosonic node -n+1.
    pub fn lambda_node(&self) -> i32 {
        1 - self.n as i32
    }

    /// Twice the m-component of the duality reflection center: 3 for the E
    /// series, 1 for the A series.
    pub fn duality_center_m2(&self) -> i64 {
        match self.base {
            BaseSeries::A(_) => 1,
            BaseSeries::E8 => 3,
        }
    }
}

/// An integer Cartan matrix plus node metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanSpec {
    /// Ordered node ids (ascending).
    pub nodes: Vec<i32>,
    /// `matrix[i][j] = <alpha_j, alpha_i^vee>`, indexed by node position.
    pub matrix: Vec<Vec<i64>>,
    /// Symmetrizer d_i > 0 with d_i A_ij = d_j A_ji, normalized to max 1.
    pub symmetrizer: Vec<BigRational>,
    /// The grey node id, when this is a super-extension.
    pub fermionic_node: Option<i32>,
    /// Family tag for built-in series; `None` for explicit matrices.
    pub family: Option<AlgebraFamily>,
}

impl CartanSpec {
    /// Wrap an explicit integer matrix. Checks the generalized-Cartan-matrix
    /// conditions and computes the symmetrizer.
    pub fn from_matrix(
        nodes: Vec<i32>,
        matrix: Vec<Vec<i64>>,
        fermionic_node: Option<i32>,
        family: Option<AlgebraFamily>,
    ) -> Result<Self> {
        let rank = nodes.len();
        if matrix.len() != rank || matrix.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        {
            let mut sorted = nodes.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != rank {
                return Err(Error::InvalidCartan("duplicate node ids".into()));
            }
        }
        let fermionic_idx = fermionic_node.map(|f| nodes.iter().position(|&x| x == f));
        if let Some(None) = fermionic_idx {
            return Err(Error::UnknownNode(fermionic_node.unwrap()));
        }
        let fermionic_idx = fermionic_idx.flatten();
        for i in 0..rank {
            let want_diag = if Some(i) == fermionic_idx { 0 } else { 2 };
            if matrix[i][i] != want_diag {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry at node {} is {}, expected {}",
                    nodes[i], matrix[i][i], want_diag
                )));
            }
            for j in 0..rank {
                if i != j {
                    if matrix[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "positive off-diagonal entry at ({}, {})",
                            nodes[i], nodes[j]
                        )));
                    }
                    if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "zero pattern not symmetric at ({}, {})",
                            nodes[i], nodes[j]
                        )));
                    }
                }
            }
        }
        let symmetrizer = symmetrize(&matrix)?;
        Ok(CartanSpec {
            nodes,
            matrix,
            symmetrizer,
            fermionic_node,
            family,
        })
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    /// Position of a node id in the storage order. Ranks are tiny; a linear
    /// scan keeps the struct plain data.
    pub fn idx(&self, node: i32) -> Result<usize> {
        self.nodes
            .iter()
            .position(|&x| x == node)
            .ok_or(Error::UnknownNode(node))
    }

    pub fn is_bosonic(&self, node: i32) -> bool {
        self.fermionic_node != Some(node)
    }

    /// Bosonic node ids, ascending.
    pub fn bosonic_nodes(&self) -> Vec<i32> {
        self.nodes
            .iter()
            .copied()
            .filter(|&n| self.is_bosonic(n))
            .collect()
    }

    /// The sub-spec on the bosonic nodes.
    pub fn bosonic_restriction(&self) -> Result<CartanSpec> {
        let keep: Vec<usize> = (0..self.rank())
            .filter(|&i| Some(self.nodes[i]) != self.fermionic_node)
            .collect();
        let nodes: Vec<i32> = keep.iter().map(|&i| self.nodes[i]).collect();
        let matrix: Vec<Vec<i64>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        CartanSpec::from_matrix(nodes, matrix, None, self.family)
    }

    /// Exact integer determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        determinant(&self.matrix)
    }

    /// Rebuild with rows/columns simultaneously permuted; `perm[k]` is the
    /// old position that lands at new position k.
    pub fn permuted(&self, perm: &[usize]) -> Result<CartanSpec> {
        if perm.len() != self.rank() {
            return Err(Error::InvalidCartan("permutation length mismatch".into()));
        }
        let nodes: Vec<i32> = perm.iter().map(|&k| self.nodes[k]).collect();
        let matrix: Vec<Vec<i64>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        CartanSpec::from_matrix(nodes, matrix, self.fermionic_node, self.family)
    }

    /// The Weyl vector in the fundamental-weight basis (all labels 1) over
    /// the given node set.
    pub fn rho(&self) -> WeightVector {
        WeightVector {
            coords: vec![BigRational::one(); self.rank()],
            basis: Basis::Fundamental,
        }
    }

    /// Symmetrized Gram matrix (alpha_i, alpha_j) = d_i A_ij, scaled so that
    /// long simple roots have norm 2 when the symmetrizer hits 1.
    pub fn gram(&self, i: usize, j: usize) -> BigRational {
        &self.symmetrizer[i] * BigRational::from_integer(BigInt::from(self.matrix[i][j]))
    }

    /// Convert root-basis coordinates to fundamental labels: labels = A * c.
    pub fn root_to_fund(&self, coords: &[BigRational]) -> Result<Vec<BigRational>> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                got: coords.len(),
                want: self.rank(),
            });
        }
        Ok((0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| BigRational::from_integer(BigInt::from(self.matrix[i][j])) * &coords[j])
                    .sum()
            })
            .collect())
    }

    /// Solve A * c = labels exactly. Errors when the system is inconsistent
    /// or the matrix is singular (affine specs).
    pub fn fund_to_root(&self, labels: &[BigRational]) -> Result<Vec<BigRational>> {
        if labels.len() != self.rank() {
            return Err(Error::RankMismatch {
                got: labels.len(),
                want: self.rank(),
            });
        }
        let n = self.rank();
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(self.matrix[i][j])))
                    .collect();
                row.push(labels[i].clone());
                row
            })
            .collect();
        // Gaussian elimination with exact rationals.
        let mut pivot_row = 0;
        for col in 0..n {
            let Some(p) = (pivot_row..n).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, p);
            let inv = aug[pivot_row][col].recip();
            for v in aug[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=n {
                        let sub = &aug[pivot_row][c] * &f;
                        aug[r][c] = &aug[r][c] - sub;
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == n {
                break;
            }
        }
        if aug[..pivot_row].len() < n {
            // Singular: consistent systems would still need a canonical
            // representative; refuse instead of guessing.
            for row in aug.iter().skip(pivot_row) {
                if !row[n].is_zero() {
                    return Err(Error::NotInRootLattice);
                }
            }
            return Err(Error::SingularDegree);
        }
        let mut out = vec![BigRational::zero(); n];
        for (r, row) in aug.iter().enumerate().take(n) {
            let col = (0..n).find(|&c| row[c].is_one()).ok_or(Error::Internal(
                "elimination produced no pivot".into(),
            ))?;
            out[col] = row[n].clone();
            let _ = r;
        }
        Ok(out)
    }

    /// Symmetric bilinear form. Accepts any basis combination except
    /// fundamental x fundamental over a singular matrix.
    pub fn inner_product(&self, x: &WeightVector, y: &WeightVector) -> Result<BigRational> {
        use Basis::*;
        let n = self.rank();
        if x.coords.len() != n || y.coords.len() != n {
            return Err(Error::RankMismatch {
                got: x.coords.len().max(y.coords.len()),
                want: n,
            });
        }
        match (x.basis, y.basis) {
            (Root, Root) => {
                let mut acc = BigRational::zero();
                for i in 0..n {
                    for j in 0..n {
                        if self.matrix[i][j] != 0 {
                            acc += self.gram(i, j) * &x.coords[i] * &y.coords[j];
                        }
                    }
                }
                Ok(acc)
            }
            (Root, Fundamental) => {
                // (alpha_i, y) = d_i <y, alpha_i^vee>.
                let mut acc = BigRational::zero();
                for i in 0..n {
                    acc += &self.symmetrizer[i] * &x.coords[i] * &y.coords[i];
                }
                Ok(acc)
            }
            (Fundamental, Root) => self.inner_product(y, x),
            (Fundamental, Fundamental) => {
                let c = self.fund_to_root(&x.coords)?;
                let xr = WeightVector {
                    coords: c,
                    basis: Root,
                };
                self.inner_product(&xr, y)
            }
        }
    }
}

/// Marker for the coordinate system of a [`WeightVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// Coefficients on fundamental weights (Dynkin labels).
    Fundamental,
    /// Coefficients on simple roots.
    Root,
}

/// A weight with exact rational coordinates in a tagged basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector {
    pub coords: Vec<BigRational>,
    pub basis: Basis,
}

impl WeightVector {
    pub fn fundamental_int(labels: &[i64]) -> Self {
        WeightVector {
            coords: labels
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
            basis: Basis::Fundamental,
        }
    }

    pub fn root_int(coords: &[i64]) -> Self {
        WeightVector {
            coords: coords
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
            basis: Basis::Root,
        }
    }
}

/// Build the Cartan matrix of g^(n) (`super_ext` = false) or of the
/// super-extension B^(n+1) used by S(g^(n)) and B(g^(n)) (`super_ext` = true).
pub fn build_cartan(base: BaseSeries, n: u32, super_ext: bool) -> Result<CartanSpec> {
    let r = match base {
        BaseSeries::A(r) => {
            if r < 1 {
                return Err(Error::RankOutOfRange("A series needs r >= 1".into()));
            }
            r as i32
        }
        BaseSeries::E8 => 8,
    };
    // Bosonic nodes -n+1 ..= r.
    let mut nodes: Vec<i32> = (1 - n as i32..=r).collect();
    let mut fermionic = None;
    if super_ext {
        nodes.insert(0, -(n as i32) - 1);
        fermionic = Some(-(n as i32) - 1);
    }
    let rank = nodes.len();
    let pos: HashMap<i32, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = vec![vec![0i64; rank]; rank];
    let bond = |a: i32, b: i32, ab: i64, ba: i64, m: &mut Vec<Vec<i64>>| {
        let (ia, ib) = (pos[&a], pos[&b]);
        m[ia][ib] = ab;
        m[ib][ia] = ba;
    };
    for (i, &node) in nodes.iter().enumerate() {
        m[i][i] = if Some(node) == fermionic { 0 } else { 2 };
    }
    // Finite part.
    match base {
        BaseSeries::A(_) => {
            for a in 1..r {
                bond(a, a + 1, -1, -1, &mut m);
            }
        }
        BaseSeries::E8 => {
            for a in 1..7 {
                bond(a, a + 1, -1, -1, &mut m);
            }
            bond(5, 8, -1, -1, &mut m);
        }
    }
    // Affine node 0 attaches along the highest root.
    if n >= 1 {
        match base {
            BaseSeries::A(1) => bond(0, 1, -2, -2, &mut m),
            BaseSeries::A(rr) => {
                bond(0, 1, -1, -1, &mut m);
                bond(0, rr as i32, -1, -1, &mut m);
            }
            BaseSeries::E8 => bond(0, 1, -1, -1, &mut m),
        }
    }
    // Each further extension node -k+1 attaches by a single line to -k+2.
    for k in 2..=n as i32 {
        bond(-k + 1, -k + 2, -1, -1, &mut m);
    }
    // Grey node attaches by a single line to the leftmost bosonic node.
    if super_ext {
        bond(-(n as i32) - 1, 1 - n as i32, -1, -1, &mut m);
    }
    CartanSpec::from_matrix(nodes, m, fermionic, Some(AlgebraFamily { base, n }))
}

/// Parse an algebra selector like "e10", "e9", "a1++", "a3+".
pub fn parse_algebra(name: &str) -> Result<AlgebraFamily> {
    let s = name.trim().to_ascii_lowercase();
    if let Some(rest) = s.strip_prefix('e') {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let plus = rest[digits.len()..].chars().filter(|&c| c == '+').count() as u32;
        if rest[digits.len()..].chars().any(|c| c != '+') {
            return Err(Error::UnsupportedSeries(name.into()));
        }
        let num: u32 = digits
            .parse()
            .map_err(|_| Error::UnsupportedSeries(name.into()))?;
        let n = match num {
            8 => plus,
            9 => 1 + plus,
            10 => 2 + plus,
            11 => 3 + plus,
            _ => return Err(Error::UnsupportedSeries(name.into())),
        };
        return Ok(AlgebraFamily {
            base: BaseSeries::E8,
            n,
        });
    }
    if let Some(rest) = s.strip_prefix('a') {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let plus = rest[digits.len()..].chars().filter(|&c| c == '+').count() as u32;
        if rest[digits.len()..].chars().any(|c| c != '+') || digits.is_empty() {
            return Err(Error::UnsupportedSeries(name.into()));
        }
        let r: u32 = digits
            .parse()
            .map_err(|_| Error::UnsupportedSeries(name.into()))?;
        return Ok(AlgebraFamily {
            base: BaseSeries::A(r),
            n: plus,
        });
    }
    Err(Error::UnsupportedSeries(name.into()))
}

fn symmetrize(matrix: &[Vec<i64>]) -> Result<Vec<BigRational>> {
    let n = matrix.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || matrix[i][j] == 0 {
                    continue;
                }
                // d_i A_ij = d_j A_ji
                let dj = &di * BigRational::from_integer(BigInt::from(matrix[i][j]))
                    / BigRational::from_integer(BigInt::from(matrix[j][i]));
                if dj <= BigRational::zero() {
                    return Err(Error::NonSymmetrizable);
                }
                match &d[j] {
                    Some(existing) => {
                        if *existing != dj {
                            return Err(Error::NonSymmetrizable);
                        }
                    }
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let mut d: Vec<BigRational> = d.into_iter().map(|v| v.unwrap()).collect();
    let max = d.iter().cloned().max().unwrap_or_else(BigRational::one);
    if !max.is_zero() {
        for v in d.iter_mut() {
            *v = &*v / &max;
        }
    }
    // Verify D A is symmetric.
    for i in 0..n {
        for j in 0..n {
            let lhs = &d[i] * BigRational::from_integer(BigInt::from(matrix[i][j]));
            let rhs = &d[j] * BigRational::from_integer(BigInt::from(matrix[j][i]));
            if lhs != rhs {
                return Err(Error::NonSymmetrizable);
            }
        }
    }
    Ok(d)
}

/// Fraction-free integer determinant.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn e10_matrix_shape() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        assert_eq!(spec.nodes, (-1..=8).collect::<Vec<_>>());
        // Row -1 = (2, -1, 0, ..., 0), E9 block unchanged.
        let i = spec.idx(-1).unwrap();
        let mut row = vec![0i64; 10];
        row[i] = 2;
        row[spec.idx(0).unwrap()] = -1;
        assert_eq!(spec.matrix[i], row);
        let e9 = build_cartan(BaseSeries::E8, 1, false).unwrap();
        for &a in &e9.nodes {
            for &b in &e9.nodes {
                assert_eq!(
                    spec.matrix[spec.idx(a).unwrap()][spec.idx(b).unwrap()],
                    e9.matrix[e9.idx(a).unwrap()][e9.idx(b).unwrap()]
                );
            }
        }
    }

    #[test]
    fn e8_determinant_one() {
        let spec = build_cartan(BaseSeries::E8, 0, false).unwrap();
        assert_eq!(spec.determinant(), BigInt::from(1));
    }

    #[test]
    fn a1_plus_plus_matrix() {
        let spec = build_cartan(BaseSeries::A(1), 2, false).unwrap();
        assert_eq!(spec.nodes, vec![-1, 0, 1]);
        assert_eq!(
            spec.matrix,
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -2, 2]]
        );
        assert_eq!(spec.determinant(), BigInt::from(-2));
    }

    #[test]
    fn super_extension_determinants() {
        // |B^(n+1)| = -|A^(n-1)|.
        let b_e9 = build_cartan(BaseSeries::E8, 1, true).unwrap();
        assert_eq!(b_e9.determinant(), BigInt::from(-1)); // -det(E8)
        let b_e10 = build_cartan(BaseSeries::E8, 2, true).unwrap();
        assert_eq!(b_e10.determinant(), BigInt::from(0)); // -det(E9) = 0
        for n in 1..=3u32 {
            let b = build_cartan(BaseSeries::A(2), n, true).unwrap();
            let a_minus = build_cartan(BaseSeries::A(2), n - 1, false).unwrap();
            assert_eq!(b.determinant(), -a_minus.determinant());
        }
    }

    #[test]
    fn determinant_permutation_invariant() {
        let spec = build_cartan(BaseSeries::E8, 2, true).unwrap();
        let mut perm: Vec<usize> = (0..spec.rank()).collect();
        perm.swap(0, 7);
        perm.swap(2, 10);
        // permuted() revalidates; skip validation path by comparing raw dets.
        let pm: Vec<Vec<i64>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| spec.matrix[i][j]).collect())
            .collect();
        assert_eq!(determinant(&pm), spec.determinant());
    }

    #[test]
    fn super_restriction_matches_bosonic() {
        for (base, n) in [
            (BaseSeries::E8, 1),
            (BaseSeries::E8, 2),
            (BaseSeries::A(1), 2),
            (BaseSeries::A(3), 1),
        ] {
            let sup = build_cartan(base, n, true).unwrap();
            let bos = build_cartan(base, n, false).unwrap();
            let restricted = sup.bosonic_restriction().unwrap();
            assert_eq!(restricted.nodes, bos.nodes);
            assert_eq!(restricted.matrix, bos.matrix);
        }
    }

    #[test]
    fn simple_root_norms() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        for i in 0..spec.rank() {
            let mut c = vec![0i64; spec.rank()];
            c[i] = 1;
            let alpha = WeightVector::root_int(&c);
            assert_eq!(spec.inner_product(&alpha, &alpha).unwrap(), rat(2));
        }
    }

    #[test]
    fn e10_null_root() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        // delta = alpha_0 + theta(E8) with marks 2,3,4,5,6,4,2 on the chain
        // and 3 on the exceptional node.
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
        let mut c = vec![0i64; spec.rank()];
        for &(node, v) in marks {
            c[spec.idx(node).unwrap()] = v;
        }
        let delta = WeightVector::root_int(&c);
        assert!(spec.inner_product(&delta, &delta).unwrap().is_zero());
        // epsilon = delta + alpha_{-1}: (epsilon, delta) = -1.
        let mut ce = c.clone();
        ce[spec.idx(-1).unwrap()] += 1;
        let eps = WeightVector::root_int(&ce);
        assert_eq!(spec.inner_product(&eps, &delta).unwrap(), rat(-1));
    }

    #[test]
    fn basis_round_trip() {
        let spec = build_cartan(BaseSeries::E8, 2, false).unwrap();
        let c: Vec<i64> = vec![3, -1, 4, 1, -5, 9, 2, -6, 5, 3];
        let root = WeightVector::root_int(&c);
        let labels = spec.root_to_fund(&root.coords).unwrap();
        let back = spec.fund_to_root(&labels).unwrap();
        assert_eq!(back, root.coords);
    }

    #[test]
    fn fund_to_root_singular_errors() {
        let e9 = build_cartan(BaseSeries::E8, 1, false).unwrap();
        let labels = vec![rat(1); e9.rank()];
        assert!(matches!(
            e9.fund_to_root(&labels),
            Err(Error::SingularDegree) | Err(Error::NotInRootLattice)
        ));
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = build_cartan(BaseSeries::A(1), 2, true).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: CartanSpec = serde_json::from_str(&text).unwrap();
        // index is rebuilt lazily through from_matrix in real use; compare
        // the serialized fields.
        assert_eq!(back.nodes, spec.nodes);
        assert_eq!(back.matrix, spec.matrix);
        assert_eq!(back.symmetrizer, spec.symmetrizer);
        assert_eq!(back.fermionic_node, spec.fermionic_node);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn parse_algebra_names() {
        let f = parse_algebra("e10").unwrap();
        assert_eq!(f.base, BaseSeries::E8);
        assert_eq!(f.n, 2);
        let f = parse_algebra("a1++").unwrap();
        assert_eq!(f.base, BaseSeries::A(1));
        assert_eq!(f.n, 2);
        let f = parse_algebra("E9").unwrap();
        assert_eq!(f.n, 1);
        assert!(parse_algebra("b3").is_err());
    }
}
