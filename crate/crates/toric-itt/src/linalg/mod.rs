//! Exact sparse linear algebra over the rationals and integers.
//!
//! Rank, kernel bases and column-space intersections run fraction-free by
//! default. The certified-modular fast path (off by default, selected per
//! call) keeps the same exactness contract: it returns only numbers backed
//! by integer certificates and falls back to Bareiss elimination when
//! certification fails.

pub mod bareiss;
pub mod modular;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub use modular::{
    certified_membership, certified_rank_data, CertifiedRank, CertifyRequest, SparseIntMatrix,
};

/// Elimination strategy. `Exact` is the default everywhere; the modular path
/// is an opt-in speed knob whose results are still exactly certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Exact,
    CertifiedModular,
}

/// Exact sparse matrix over Q. Entries are stored without zeros; row and
/// column counts are fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Build from dense columns.
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = Self::new(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((r, c), v.clone());
                }
            }
        }
        m
    }

    /// Build from sparse columns given as (row, value) lists.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, BigRational)>]) -> Self {
        let mut m = Self::new(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                if !v.is_zero() {
                    m.entries.insert((*r, c), v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut m = RationalMatrix::new(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            m.entries.insert((*c, *r), v.clone());
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = RationalMatrix::new(self.rows, self.cols + other.cols);
        for ((r, c), v) in &self.entries {
            m.entries.insert((*r, *c), v.clone());
        }
        for ((r, c), v) in &other.entries {
            m.entries.insert((*r, c + self.cols), v.clone());
        }
        m
    }

    /// Rows restricted to an index subset, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> RationalMatrix {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = RationalMatrix::new(keep.len(), self.cols);
        for ((r, c), v) in &self.entries {
            if let Some(&i) = pos.get(r) {
                m.entries.insert((i, *c), v.clone());
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigRational::zero(); self.rows];
        for ((r, c), a) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] += a * &v[*c];
            }
        }
        out
    }

    fn to_dense_int(&self) -> Vec<Vec<BigInt>> {
        let sim = self.to_sparse_int();
        let mut dense = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in sim.row_data.iter().enumerate() {
            for (c, v) in row {
                dense[r][*c] = v.clone();
            }
        }
        dense
    }

    /// Row-denominator-cleared integer form; preserves rank and right kernel.
    pub fn to_sparse_int(&self) -> SparseIntMatrix {
        SparseIntMatrix::from_rational_rows(
            self.rows,
            self.cols,
            self.entries.iter().map(|(k, v)| (*k, v.clone())),
        )
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss::rank(self.to_dense_int())
    }

    /// Exact rank with an explicit strategy.
    pub fn rank_with(&self, strategy: Strategy) -> usize {
        match strategy {
            Strategy::Exact => self.rank(),
            Strategy::CertifiedModular => {
                let sim = self.to_sparse_int();
                match modular::certified_rank_data(&sim, CertifyRequest::default()) {
                    Some(cert) => cert.rank,
                    None => self.rank(),
                }
            }
        }
    }

    /// Basis of the right null space; A·v = 0 exactly for each vector.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let e = bareiss::echelon(self.to_dense_int());
        let k = bareiss::kernel(&e, self.cols);
        debug_assert!(k.iter().all(|v| self.mul_vec(v).iter().all(Zero::is_zero)));
        k
    }

    pub fn kernel_basis_with(&self, strategy: Strategy) -> Vec<Vec<BigRational>> {
        match strategy {
            Strategy::Exact => self.kernel_basis(),
            Strategy::CertifiedModular => {
                let sim = self.to_sparse_int();
                let req = CertifyRequest {
                    want_right_kernel: true,
                    ..Default::default()
                };
                match modular::certified_rank_data(&sim, req) {
                    Some(cert) => cert.right_kernel.unwrap_or_default(),
                    None => self.kernel_basis(),
                }
            }
        }
    }

    /// Basis of the left null space.
    pub fn left_kernel_with(&self, strategy: Strategy) -> Vec<Vec<BigRational>> {
        self.transpose().kernel_basis_with(strategy)
    }

    /// Dimension and basis of {v in colspace(A) : v_i = 0 for i not in keep},
    /// computed via the kernel of the complementary-row block composed with A.
    pub fn colspace_intersect_coords(
        &self,
        keep: &BTreeSet<usize>,
        strategy: Strategy,
    ) -> (usize, Vec<Vec<BigRational>>) {
        let complement: Vec<usize> = (0..self.rows).filter(|r| !keep.contains(r)).collect();
        let block = self.select_rows(&complement);
        let kernel = block.kernel_basis_with(strategy);
        // compose with A and keep an independent subset
        let candidates: Vec<Vec<BigRational>> =
            kernel.iter().map(|v| self.mul_vec(v)).collect();
        for v in &candidates {
            for &r in &complement {
                debug_assert!(v[r].is_zero());
            }
        }
        let keep_sorted: Vec<usize> = keep.iter().copied().collect();
        let restricted: Vec<Vec<BigRational>> = candidates
            .iter()
            .map(|v| keep_sorted.iter().map(|&r| v[r].clone()).collect())
            .collect();
        let m = RationalMatrix::from_columns(keep_sorted.len(), &restricted);
        let e = bareiss::echelon(m.to_dense_int());
        let basis: Vec<Vec<BigRational>> = e
            .pivot_cols
            .iter()
            .map(|&c| candidates[c].clone())
            .collect();
        (e.rank, basis)
    }
}

/// Dense integer matrix for lattice computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self {
            data: rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in data.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Self { data }
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.data.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let (m, k, n) = (self.rows(), self.cols(), other.cols());
        assert_eq!(k, other.rows());
        let mut out = vec![vec![BigInt::zero(); n]; m];
        for i in 0..m {
            for l in 0..k {
                if self.data[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !other.data[l][j].is_zero() {
                        out[i][j] += &self.data[i][l] * &other.data[l][j];
                    }
                }
            }
        }
        IntegerMatrix { data: out }
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows(), self.cols());
        let n = self.rows();
        if n == 0 {
            return BigInt::one();
        }
        let e = bareiss::echelon(self.data.clone());
        if e.rank < n {
            return BigInt::zero();
        }
        // Bareiss leaves the last pivot equal to the determinant up to the
        // sign of the row swaps; recompute directly for small n instead.
        det_expand(&self.data)
    }
}

fn det_expand(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_expand(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Smith normal form: U·A·V = D with unimodular U, V and elementary
/// divisors d_1 | d_2 | ... on the diagonal.
pub struct SmithNormalForm {
    pub invariants: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Result<SmithNormalForm> {
    let rows = a.rows();
    let cols = a.cols();
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let mut m = a.data.clone();
    let mut u = IntegerMatrix::identity(rows).data;
    let mut v = IntegerMatrix::identity(cols).data;
    let mut t = 0usize;

    while t < rows.min(cols) {
        // find a nonzero entry of minimal absolute value in the submatrix
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !m[r][c].is_zero() {
                    match &best {
                        None => best = Some((r, c)),
                        Some((br, bc)) => {
                            if m[r][c].abs() < m[*br][*bc].abs() {
                                best = Some((r, c));
                            }
                        }
                    }
                }
            }
        }
        let Some((br, bc)) = best else { break };
        m.swap(t, br);
        u.swap(t, br);
        for row in m.iter_mut() {
            row.swap(t, bc);
        }
        for row in v.iter_mut() {
            row.swap(t, bc);
        }

        let mut clean = false;
        while !clean {
            clean = true;
            // reduce column t
            for r in (t + 1)..rows {
                if m[r][t].is_zero() {
                    continue;
                }
                let q = div_round(&m[r][t], &m[t][t]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let s = &q * &m[t][c];
                        m[r][c] -= s;
                    }
                    for c in 0..rows {
                        let s = &q * &u[t][c];
                        u[r][c] -= s;
                    }
                }
                if !m[r][t].is_zero() {
                    // remainder smaller than pivot: swap it up and restart
                    m.swap(t, r);
                    u.swap(t, r);
                    clean = false;
                }
            }
            // reduce row t
            for c in (t + 1)..cols {
                if m[t][c].is_zero() {
                    continue;
                }
                let q = div_round(&m[t][c], &m[t][t]);
                if !q.is_zero() {
                    for r in 0..rows {
                        let s = &q * &m[r][t];
                        m[r][c] -= s;
                    }
                    for r in 0..cols {
                        let s = &q * &v[r][t];
                        v[r][c] -= s;
                    }
                }
                if !m[t][c].is_zero() {
                    for r in 0..rows {
                        let tmp = m[r][t].clone();
                        m[r][t] = m[r][c].clone();
                        m[r][c] = tmp;
                    }
                    for r in 0..cols {
                        let tmp = v[r][t].clone();
                        v[r][t] = v[r][c].clone();
                        v[r][c] = tmp;
                    }
                    clean = false;
                }
            }
            if clean {
                // divisibility fix: pivot must divide the whole submatrix
                'outer: for r in (t + 1)..rows {
                    for c in (t + 1)..cols {
                        if !(&m[r][c] % &m[t][t]).is_zero() {
                            for cc in 0..cols {
                                let s = m[r][cc].clone();
                                m[t][cc] += s;
                            }
                            for cc in 0..rows {
                                let s = u[r][cc].clone();
                                u[t][cc] += s;
                            }
                            clean = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if m[t][t].is_negative() {
            for c in 0..cols {
                m[t][c] = -m[t][c].clone();
            }
            for c in 0..rows {
                u[t][c] = -u[t][c].clone();
            }
        }
        t += 1;
    }

    let invariants: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| m[i][i].clone())
        .filter(|d| !d.is_zero())
        .collect();
    Ok(SmithNormalForm {
        invariants,
        u: IntegerMatrix { data: u },
        v: IntegerMatrix { data: v },
        d: IntegerMatrix { data: m },
    })
}

/// Round-to-nearest integer division, so remainders shrink fast.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    fn from_dense(rows: &[&[i64]]) -> RationalMatrix {
        let mut m = RationalMatrix::new(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, rat(v));
                }
            }
        }
        m
    }

    /// Independent oracle: naive rational Gaussian elimination.
    fn naive_rank(m: &RationalMatrix) -> usize {
        let mut dense: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            if rank == m.rows() {
                break;
            }
            let Some(pr) = (rank..m.rows()).find(|&r| !dense[r][col].is_zero()) else {
                continue;
            };
            dense.swap(rank, pr);
            let inv = dense[rank][col].clone();
            for r in (rank + 1)..m.rows() {
                if dense[r][col].is_zero() {
                    continue;
                }
                let f = &dense[r][col] / &inv;
                for c in col..m.cols() {
                    let s = &f * &dense[rank][c];
                    dense[r][c] -= s;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(5).rank(), 5);
        assert_eq!(from_dense(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rank_matches_naive_oracle() {
        let mats = [
            from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            from_dense(&[&[2, 0, 1, 1], &[0, 3, 1, 0], &[2, 3, 2, 1]]),
            from_dense(&[&[0, 0], &[0, 0]]),
        ];
        for m in &mats {
            assert_eq!(m.rank(), naive_rank(m));
            assert_eq!(m.rank(), m.transpose().rank());
            assert_eq!(m.rank(), m.rank_with(Strategy::CertifiedModular));
        }
    }

    #[test]
    fn rank_nullity() {
        let m = from_dense(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 1, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        for strategy in [Strategy::Exact, Strategy::CertifiedModular] {
            for v in m.kernel_basis_with(strategy) {
                assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(4).kernel_basis().is_empty());
        let k = from_dense(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
    }

    #[test]
    fn colspace_intersect_examples() {
        let id = RationalMatrix::identity(5);
        let keep: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let (dim, basis) = id.colspace_intersect_coords(&keep, Strategy::Exact);
        assert_eq!(dim, 3);
        assert_eq!(basis.len(), 3);

        let col = from_dense(&[&[1], &[1]]);
        let keep: BTreeSet<usize> = [0].into_iter().collect();
        let (dim, _) = col.colspace_intersect_coords(&keep, Strategy::Exact);
        assert_eq!(dim, 0);

        let full: BTreeSet<usize> = (0..3).collect();
        let m = from_dense(&[&[1, 2], &[0, 1], &[1, 0]]);
        let (dim, _) = m.colspace_intersect_coords(&full, Strategy::Exact);
        assert_eq!(dim, m.rank());
    }

    #[test]
    fn snf_identity() {
        let snf = smith_normal_form(&IntegerMatrix::identity(3)).unwrap();
        assert_eq!(snf.invariants, vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_cross_polytope_columns() {
        // columns ±e1, ±e2, ±e3 generate Z^3
        let cols: Vec<Vec<i64>> = vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ];
        let rows: Vec<Vec<i64>> = (0..3).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let a = IntegerMatrix::from_i64(&rows);
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(snf.invariants, vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_rotated_square() {
        // columns (1,1),(1,-1),(-1,-1),(-1,1): index-2 sublattice x+y even
        let rows = vec![vec![1i64, 1, -1, -1], vec![1, -1, -1, 1]];
        let a = IntegerMatrix::from_i64(&rows);
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(snf.invariants, vec![BigInt::one(), BigInt::from(2)]);
    }

    #[test]
    fn snf_transforms_are_unimodular_and_consistent() {
        let cases = vec![
            IntegerMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            IntegerMatrix::from_i64(&[vec![1, 2], vec![3, 4], vec![5, 6]]),
            IntegerMatrix::from_i64(&[vec![0, 0], vec![0, 0]]),
        ];
        for a in cases {
            let snf = smith_normal_form(&a).unwrap();
            let uav = snf.u.mul(&a).mul(&snf.v);
            assert_eq!(uav, snf.d);
            assert_eq!(snf.u.determinant().abs(), BigInt::one());
            assert_eq!(snf.v.determinant().abs(), BigInt::one());
            // divisibility chain
            for w in snf.invariants.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn snf_classic_example() {
        let a = IntegerMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(
            snf.invariants,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
    }
}
