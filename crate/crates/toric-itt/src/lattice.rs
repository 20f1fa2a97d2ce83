//! Exact integral-polytope machinery.
//!
//! Convex hulls with primitive inner facet normals, dilations, lattice-point
//! enumeration by bounding-box scan, containment tests and hypothesis checks.
//! All arithmetic is exact; intermediate determinants use i128 with checked
//! operations so overflow can never pass silently.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A point of the ambient lattice M ≅ Z^n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("coordinate overflow"))
                .collect(),
        )
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("coordinate overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> LatticePoint {
        LatticePoint(
            self.0
                .iter()
                .map(|a| a.checked_mul(k).expect("coordinate overflow"))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Exact pairing ⟨n, m⟩ between a normal and a lattice point.
pub fn pairing(normal: &[i64], point: &LatticePoint) -> i64 {
    let mut acc: i128 = 0;
    for (a, b) in normal.iter().zip(&point.0) {
        acc += (*a as i128) * (*b as i128);
    }
    i64::try_from(acc).expect("pairing overflow")
}

/// A facet ⟨n_Γ, m⟩ + b_Γ ≥ 0 of a full-dimensional lattice polytope, with
/// primitive inner normal and b_Γ = -Min_Δ(n_Γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices of polytope vertices lying on this facet.
    pub vertex_indices: Vec<usize>,
}

impl Facet {
    /// Value of the defining affine form at `m`; zero exactly on the facet.
    pub fn eval(&self, m: &LatticePoint) -> i64 {
        pairing(&self.normal, m)
            .checked_add(self.offset)
            .expect("facet form overflow")
    }
}

/// Whether a point set is a full enumeration or only the (relative) interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    All,
    Interior,
}

/// An ordered (lexicographic) list of lattice points of a dilated polytope.
#[derive(Debug, Clone)]
pub struct PointSet {
    pub points: Vec<LatticePoint>,
    pub kind: PointKind,
    pub dilation: i64,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Position of `m` in the lexicographic order, if present.
    pub fn index_of(&self, m: &LatticePoint) -> Option<usize> {
        self.points.binary_search(m).ok()
    }
}

/// JSON form of a polytope: facets are always derived, never input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeSpec {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

/// A full-dimensional lattice polytope with vertex and inner-normal facet
/// representations. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
}

impl LatticePolytope {
    /// Convex hull of the given points. Returns the minimal vertex set plus
    /// the complete facet list with primitive inner normals.
    ///
    /// Facets are found by exhaustive dual enumeration: every candidate
    /// normal arises as the generalized cross product of n-1 independent
    /// difference vectors of input points, and a candidate is kept when its
    /// minimizing face has affine dimension n-1.
    pub fn hull(points: &[LatticePoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty point set".into()));
        }
        let dim = points[0].dim();
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        let mut pts: Vec<LatticePoint> = points.to_vec();
        pts.sort();
        pts.dedup();

        let found = affine_rank(&pts);
        if found < dim {
            return Err(Error::NotFullDimensional {
                ambient: dim,
                found,
            });
        }

        let mut normals: BTreeSet<Vec<i64>> = BTreeSet::new();
        if dim == 1 {
            normals.insert(vec![1]);
            normals.insert(vec![-1]);
        } else {
            // Every facet contains dim affinely independent input points, so
            // scanning dim-subsets and their difference cross products finds
            // every facet normal (up to sign).
            let idx: Vec<usize> = (0..pts.len()).collect();
            for subset in combinations(&idx, dim) {
                let base = &pts[subset[0]];
                let diffs: Vec<LatticePoint> =
                    subset[1..].iter().map(|&j| pts[j].sub(base)).collect();
                if let Some(u) = cross_product(&diffs, dim) {
                    if let Some(prim) = primitivize(&u) {
                        normals.insert(prim.iter().map(|a| -a).collect());
                        normals.insert(prim);
                    }
                }
            }
        }

        let mut facets = Vec::new();
        for normal in normals {
            let vals: Vec<i64> = pts.iter().map(|p| pairing(&normal, p)).collect();
            let min = *vals.iter().min().unwrap();
            let on: Vec<&LatticePoint> = pts
                .iter()
                .zip(&vals)
                .filter(|(_, &v)| v == min)
                .map(|(p, _)| p)
                .collect();
            let on_owned: Vec<LatticePoint> = on.iter().map(|p| (*p).clone()).collect();
            if affine_rank(&on_owned) == dim - 1 {
                facets.push(Facet {
                    normal,
                    offset: -min,
                    vertex_indices: Vec::new(),
                });
            }
        }
        facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));

        // A point is a vertex iff its active facet normals span R^n.
        let mut vertices = Vec::new();
        for p in &pts {
            let active: Vec<LatticePoint> = facets
                .iter()
                .filter(|f| f.eval(p) == 0)
                .map(|f| LatticePoint(f.normal.clone()))
                .collect();
            if linear_rank(&active) == dim {
                vertices.push(p.clone());
            }
        }
        vertices.sort();

        for f in &mut facets {
            f.vertex_indices = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| f.eval(v) == 0)
                .map(|(i, _)| i)
                .collect();
        }

        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    pub fn from_spec(spec: &PolytopeSpec) -> Result<Self> {
        let pts: Vec<LatticePoint> = spec
            .vertices
            .iter()
            .map(|v| LatticePoint::new(v.clone()))
            .collect();
        for p in &pts {
            if p.dim() != spec.dim {
                return Err(Error::DimensionMismatch {
                    expected: spec.dim,
                    got: p.dim(),
                });
            }
        }
        Self::hull(&pts)
    }

    pub fn to_spec(&self) -> PolytopeSpec {
        PolytopeSpec {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Dilation kΔ: vertices scale by k, facet offsets by k, normals fixed.
    pub fn dilate(&self, k: i64) -> LatticePolytope {
        assert!(k >= 1, "dilation factor must be >= 1");
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset.checked_mul(k).expect("offset overflow"),
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect(),
        }
    }

    /// Translate by an integral vector t.
    pub fn translate(&self, t: &LatticePoint) -> LatticePolytope {
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset - pairing(&f.normal, t),
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect(),
        }
    }

    /// Membership test; `strict` means interior membership.
    pub fn contains(&self, m: &LatticePoint, strict: bool) -> bool {
        self.facets.iter().all(|f| {
            let v = f.eval(m);
            if strict {
                v > 0
            } else {
                v >= 0
            }
        })
    }

    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].0.clone();
        let mut hi = lo.clone();
        for v in &self.vertices {
            for (i, &c) in v.0.iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        (lo, hi)
    }

    /// All lattice points, or the interior ones, in lexicographic order.
    /// Enumeration is a bounding-box scan filtered by the facet inequalities.
    pub fn points(&self, interior: bool) -> PointSet {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'scan: loop {
            let p = LatticePoint(cur.clone());
            if self.contains(&p, interior) {
                out.push(p);
            }
            // lexicographic increment
            for i in (0..self.dim).rev() {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = i64::MIN; // placeholder, fixed below
                    }
                    for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = lo[j];
                    }
                    continue 'scan;
                }
            }
            break;
        }
        out.sort();
        PointSet {
            points: out,
            kind: if interior {
                PointKind::Interior
            } else {
                PointKind::All
            },
            dilation: 1,
        }
    }

    /// Lattice points of the dilated facet kΓ. With `interior` the relative
    /// interior inside the facet's affine hull is taken: the facet equality
    /// holds and every other facet inequality is strict.
    pub fn face_points(&self, facet_index: usize, k: i64, interior: bool) -> PointSet {
        assert!(k >= 1);
        let dilated = self.dilate(k);
        let all = dilated.points(false);
        let f = &dilated.facets[facet_index];
        let points = all
            .points
            .into_iter()
            .filter(|p| {
                if f.eval(p) != 0 {
                    return false;
                }
                if interior {
                    dilated
                        .facets
                        .iter()
                        .enumerate()
                        .all(|(j, g)| j == facet_index || g.eval(p) > 0)
                } else {
                    true
                }
            })
            .collect();
        PointSet {
            points,
            kind: if interior {
                PointKind::Interior
            } else {
                PointKind::All
            },
            dilation: k,
        }
    }

    /// True iff the interior lattice points affinely span R^n.
    pub fn interior_affinely_spanning(&self) -> bool {
        let pts = self.points(true);
        affine_rank(&pts.points) == self.dim
    }

    /// Interior lattice point to translate to the origin, when 0 is not
    /// already interior: the lexicographically first one.
    pub fn normalization_shift(&self) -> Option<LatticePoint> {
        if self.contains(&LatticePoint::zero(self.dim), true) {
            return None;
        }
        self.points(true).points.first().map(|p| p.neg())
    }
}

/// Rank of the linear span of a set of integer vectors.
pub fn linear_rank(vecs: &[LatticePoint]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i128>> = vecs
        .iter()
        .map(|v| v.0.iter().map(|&c| c as i128).collect())
        .collect();
    integer_rank(rows)
}

/// Rank of the affine span (dimension of the affine hull) of a point set.
pub fn affine_rank(points: &[LatticePoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<LatticePoint> = points[1..].iter().map(|p| p.sub(base)).collect();
    linear_rank(&diffs)
}

/// Fraction-free rank of a small dense integer matrix. Desk-scale inputs
/// only; every product is checked.
fn integer_rank(mut m: Vec<Vec<i128>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r][col] != 0);
        let Some(pr) = pivot else { continue };
        m.swap(rank, pr);
        let pv = m[rank][col];
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let t = pv
                    .checked_mul(m[r][c])
                    .and_then(|x| x.checked_sub(m[r][col].checked_mul(m[rank][c])?))
                    .expect("rank elimination overflow");
                m[r][c] = t / prev;
            }
            m[r][col] = 0;
        }
        prev = pv;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Generalized cross product: the vector orthogonal to n-1 vectors in Z^n,
/// by cofactor expansion. Returns None when the inputs are dependent.
fn cross_product(diffs: &[LatticePoint], dim: usize) -> Option<Vec<i64>> {
    if diffs.len() != dim - 1 {
        return None;
    }
    let mut normal = Vec::with_capacity(dim);
    for j in 0..dim {
        // minor obtained by deleting column j
        let minor: Vec<Vec<i128>> = diffs
            .iter()
            .map(|d| {
                d.0.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &x)| x as i128)
                    .collect()
            })
            .collect();
        let det = integer_det(minor);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        normal.push(i64::try_from(sign * det).expect("normal overflow"));
    }
    if normal.iter().all(|&c| c == 0) {
        None
    } else {
        Some(normal)
    }
}

/// Exact determinant by fraction-free elimination.
fn integer_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev: i128 = 1;
    for k in 0..n {
        let pivot = (k..n).find(|&r| m[r][k] != 0);
        let Some(pr) = pivot else { return 0 };
        if pr != k {
            m.swap(k, pr);
            sign = -sign;
        }
        for r in (k + 1)..n {
            for c in (k + 1)..n {
                let t = m[k][k]
                    .checked_mul(m[r][c])
                    .and_then(|x| x.checked_sub(m[r][k].checked_mul(m[k][c])?))
                    .expect("determinant overflow");
                m[r][c] = t / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn primitivize(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0, |acc, &c| gcd(acc, c));
    if g == 0 {
        None
    } else {
        Some(v.iter().map(|&c| c / g).collect())
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Standard simplex conv{0, e_1, ..., e_n}.
pub fn standard_simplex(n: usize) -> LatticePolytope {
    let mut pts = vec![LatticePoint::zero(n)];
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        pts.push(LatticePoint(c));
    }
    LatticePolytope::hull(&pts).expect("standard simplex is full-dimensional")
}

/// Cross-polytope conv{±e_1, ..., ±e_n}.
pub fn cross_polytope(n: usize) -> LatticePolytope {
    let mut pts = Vec::new();
    for i in 0..n {
        for s in [1i64, -1] {
            let mut c = vec![0; n];
            c[i] = s;
            pts.push(LatticePoint(c));
        }
    }
    LatticePolytope::hull(&pts).expect("cross polytope is full-dimensional")
}

/// Cube [-1, 1]^n.
pub fn unit_cube(n: usize) -> LatticePolytope {
    let mut pts = Vec::new();
    for mask in 0..(1u32 << n) {
        let c: Vec<i64> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        pts.push(LatticePoint(c));
    }
    LatticePolytope::hull(&pts).expect("cube is full-dimensional")
}

/// d·Σ_n translated by t: the Newton polytope of degree-d projective
/// hypersurfaces sits at d·Σ_n - (1,...,1).
pub fn dilated_simplex_shifted(n: usize, d: i64, t: &[i64]) -> LatticePolytope {
    let shift = LatticePoint(t.to_vec());
    let pts: Vec<LatticePoint> = standard_simplex(n)
        .vertices()
        .iter()
        .map(|v| v.scale(d).add(&shift))
        .collect();
    LatticePolytope::hull(&pts).expect("dilated simplex is full-dimensional")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint(c.to_vec())
    }

    /// Brute-force dual description of the octahedron over all sign vectors.
    #[test]
    fn hull_octahedron() {
        let p = cross_polytope(3);
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 8);
        let mut expected = BTreeSet::new();
        for sx in [-1i64, 1] {
            for sy in [-1i64, 1] {
                for sz in [-1i64, 1] {
                    expected.insert(vec![sx, sy, sz]);
                }
            }
        }
        let got: BTreeSet<Vec<i64>> = p.facets().iter().map(|f| f.normal.clone()).collect();
        assert_eq!(got, expected);
        for f in p.facets() {
            assert_eq!(f.offset, 1);
            assert_eq!(f.vertex_indices.len(), 3);
        }
    }

    #[test]
    fn hull_standard_simplex() {
        for n in 1..=4 {
            let p = standard_simplex(n);
            assert_eq!(p.vertices().len(), n + 1);
            assert_eq!(p.facets().len(), n + 1);
        }
    }

    #[test]
    fn hull_dedup_and_vertex_minimality() {
        let p = LatticePolytope::hull(&[
            pt(&[0, 0]),
            pt(&[1, 0]),
            pt(&[0, 1]),
            pt(&[1, 1]),
            pt(&[1, 1]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn hull_interior_point_is_not_vertex() {
        let p = LatticePolytope::hull(&[pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[1, 1])])
            .unwrap();
        // (1,1) lies on the hypotenuse but is not a vertex
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn hull_rejects_degenerate() {
        let e = LatticePolytope::hull(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 0])]);
        assert!(matches!(e, Err(Error::NotFullDimensional { .. })));
    }

    #[test]
    fn dilate_scales_offsets() {
        let p = cross_polytope(3);
        let q = p.dilate(2);
        for f in q.facets() {
            assert_eq!(f.offset, 2);
        }
        assert_eq!(p.dilate(1), p);
        // composition
        assert_eq!(p.dilate(2).dilate(3), p.dilate(6));
    }

    #[test]
    fn dilate_commutes_with_translation() {
        let p = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        let q = p.dilate(2);
        let r = dilated_simplex_shifted(3, 10, &[-2, -2, -2]);
        assert_eq!(q, r);
    }

    /// Brute-force box-scan counts for the octahedron.
    #[test]
    fn points_octahedron() {
        let p = cross_polytope(3);
        assert_eq!(p.points(false).len(), 7);
        let interior = p.points(true);
        assert_eq!(interior.points, vec![pt(&[0, 0, 0])]);
        assert_eq!(p.dilate(2).points(true).len(), 7);
    }

    /// Classical Ehrhart binomials for the standard 3-simplex.
    #[test]
    fn points_simplex_ehrhart() {
        let p = standard_simplex(3);
        let binom = |n: i64, k: i64| -> i64 {
            if n < k {
                return 0;
            }
            let mut v = 1i64;
            for i in 0..k {
                v = v * (n - i) / (i + 1);
            }
            v
        };
        for k in 1..=6 {
            let d = p.dilate(k);
            assert_eq!(d.points(false).len() as i64, binom(k + 3, 3), "l({k}Δ)");
            assert_eq!(d.points(true).len() as i64, binom(k - 1, 3), "l*({k}Δ)");
        }
    }

    #[test]
    fn interior_plus_boundary_partition() {
        for p in [cross_polytope(3).dilate(2), standard_simplex(3).dilate(4)] {
            let all = p.points(false);
            let int = p.points(true);
            let boundary: Vec<_> = all
                .points
                .iter()
                .filter(|m| !p.contains(m, true))
                .cloned()
                .collect();
            assert_eq!(int.len() + boundary.len(), all.len());
            for m in &int.points {
                assert!(!boundary.contains(m));
            }
        }
    }

    #[test]
    fn facet_normals_primitive_and_tight() {
        let polys = [
            cross_polytope(3),
            dilated_simplex_shifted(3, 5, &[-1, -1, -1]),
            unit_cube(3),
        ];
        for p in polys {
            let all = p.points(false);
            for f in p.facets() {
                let g = f.normal.iter().fold(0, |a, &c| gcd(a, c));
                assert_eq!(g, 1, "normal not primitive");
                let min = all.points.iter().map(|m| pairing(&f.normal, m)).min();
                assert_eq!(min, Some(-f.offset));
            }
        }
    }

    #[test]
    fn hull_idempotent_on_vertices() {
        let p = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        let q = LatticePolytope::hull(&p.points(false).points).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn face_points_examples() {
        let oct = cross_polytope(3);
        // facet conv{e1,e2,e3} has normal (-1,-1,-1)
        let fi = oct
            .facets()
            .iter()
            .position(|f| f.normal == vec![-1, -1, -1])
            .unwrap();
        assert!(oct.face_points(fi, 1, true).is_empty());
        assert_eq!(oct.face_points(fi, 1, false).len(), 3);

        let quintic = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        // every facet of 5Σ3 is a 5Σ2 with C(4,2)=6 interior points
        for i in 0..quintic.facets().len() {
            assert_eq!(quintic.face_points(i, 1, true).len(), 6);
        }
    }

    #[test]
    fn contains_examples() {
        let oct = cross_polytope(3);
        assert!(oct.contains(&pt(&[0, 0, 0]), true));
        assert!(!oct.contains(&pt(&[1, 0, 0]), true));
        assert!(oct.contains(&pt(&[1, 0, 0]), false));
        assert!(!oct.contains(&pt(&[2, 0, 0]), false));
    }

    #[test]
    fn interior_spanning_examples() {
        assert!(!unit_cube(3).interior_affinely_spanning());
        let quartic =
            LatticePolytope::hull(&[pt(&[-1, -1]), pt(&[3, -1]), pt(&[-1, 3])]).unwrap();
        assert!(quartic.interior_affinely_spanning());
        let quintic = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        assert_eq!(quintic.points(true).len(), 4);
        assert!(quintic.interior_affinely_spanning());
        // quartic 3-fold polytope: single interior point
        let quartic3 = dilated_simplex_shifted(3, 4, &[-1, -1, -1]);
        assert_eq!(quartic3.points(true).len(), 1);
        assert!(!quartic3.interior_affinely_spanning());
    }

    #[test]
    fn normalization_shift() {
        let simplex = standard_simplex(3).dilate(5);
        let shift = simplex.normalization_shift().unwrap();
        let moved = simplex.translate(&shift);
        assert!(moved.contains(&LatticePoint::zero(3), true));
        assert!(cross_polytope(3).normalization_shift().is_none());
    }

    #[test]
    fn white_audit_witness_containment() {
        // the (p,q)=(2,3) case-1 polytope from the final corollary
        let q = LatticePolytope::hull(&[
            pt(&[0, 0, 0]),
            pt(&[1, 0, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 2, 3]),
            pt(&[1, 0, 1]),
            pt(&[2, 2, 3]),
        ])
        .unwrap();
        assert!(q.contains(&pt(&[1, 1, 2]), false));
    }
}
