//! The graded jacobian ring, its interior module, and Hodge-number reports.
//!
//! For a polytope Δ and polynomial f with Newton(f) = Δ, the degree-k piece
//! of the jacobian ideal is spanned by the columns x_0^{k-1} x^v · g_Γ(f)
//! with v running over (k-1)Δ ∩ M, inside the monomial space of kΔ ∩ M.
//! Graded dimensions come from exact ranks; matrices past the size threshold
//! go through the certified modular path, whose results are backed by exact
//! integer certificates.

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope, PointSet};
use crate::laurent::{
    facet_generator, independent_facet_choice, log_derivatives, realize, LaurentPolynomial,
    PolynomialSpec,
};
use crate::linalg::{
    certified_rank_data, CertifyRequest, RationalMatrix, SparseIntMatrix, Strategy,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// Above this entry count (rows·cols) rank computations switch from
/// fraction-free elimination to the certified modular path.
const MODULAR_THRESHOLD: usize = 20_000;

/// Base seed for the trial polynomials of the nondegeneracy certificate.
const CERTIFICATE_SEED_BASE: u64 = 0x7A1C_5EED;

/// Graded dimension record for one degree k.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GradeDims {
    pub k: usize,
    pub l: usize,
    pub l_star: usize,
    pub dim_jacobian: usize,
    pub dim_rf: usize,
    pub dim_w: usize,
    pub dim_rint: usize,
}

/// Cached per-degree data: the jacobian matrix, certified ranks, and the
/// modular elimination when that path produced them.
pub struct GradeData {
    pub k: usize,
    pub matrix: RationalMatrix,
    /// (facet index, shift v) per column, in column order.
    pub col_labels: Vec<(usize, LatticePoint)>,
    pub sparse: SparseIntMatrix,
    pub rank: usize,
    pub boundary_rank: usize,
    pub dims: GradeDims,
    pub cert: Option<crate::linalg::CertifiedRank>,
}

/// Working state for all ring computations on a fixed (Δ, f).
pub struct JacobianContext {
    polytope: LatticePolytope,
    f: LaurentPolynomial,
    k_max: usize,
    log_derivs: Vec<LaurentPolynomial>,
    facet_gens: Vec<LaurentPolynomial>,
    chosen_facets: Vec<usize>,
    points_all: Vec<PointSet>,
    points_int: Vec<PointSet>,
    index_all: Vec<BTreeMap<LatticePoint, usize>>,
    grades: Mutex<BTreeMap<usize, Arc<GradeData>>>,
    left_kernels: Mutex<BTreeMap<usize, Arc<Vec<Vec<BigRational>>>>>,
}

impl JacobianContext {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn f(&self) -> &LaurentPolynomial {
        &self.f
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn log_derivs(&self) -> &[LaurentPolynomial] {
        &self.log_derivs
    }

    pub fn facet_gens(&self) -> &[LaurentPolynomial] {
        &self.facet_gens
    }

    pub fn chosen_facets(&self) -> &[usize] {
        &self.chosen_facets
    }

    /// Lattice points of kΔ (k = 0 gives the origin alone).
    pub fn points(&self, k: usize) -> &PointSet {
        &self.points_all[k]
    }

    pub fn interior_points(&self, k: usize) -> &PointSet {
        &self.points_int[k]
    }

    pub fn index_map(&self, k: usize) -> &BTreeMap<LatticePoint, usize> {
        &self.index_all[k]
    }

    /// Coefficient vector of a degree-1 element over L(Δ) coordinates.
    pub fn vector_in_l1(&self, g: &LaurentPolynomial) -> Vec<BigRational> {
        g.coefficient_vector(&self.index_all[1], self.points_all[1].len())
    }
}

/// Construct the context: caches facet generators, log derivatives and the
/// lattice points of kΔ for k = 0..k_max.
pub fn build_context(
    polytope: &LatticePolytope,
    f: &LaurentPolynomial,
    k_max: usize,
) -> Result<JacobianContext> {
    let n = polytope.dim();
    if k_max < 1 || k_max > n + 2 {
        return Err(Error::InvalidArgument(format!(
            "k_max must lie in 1..={}, got {k_max}",
            n + 2
        )));
    }
    let newton = f.newton_polytope()?;
    if &newton != polytope {
        return Err(Error::NewtonPolytopeMismatch {
            reason: "Newton polytope of f differs from the given polytope".into(),
        });
    }
    let log_derivs = log_derivatives(f);
    let facet_gens: Vec<LaurentPolynomial> = polytope
        .facets()
        .iter()
        .map(|facet| facet_generator(f, facet))
        .collect();
    let chosen_facets = independent_facet_choice(polytope)?;

    let mut points_all = Vec::with_capacity(k_max + 1);
    let mut points_int = Vec::with_capacity(k_max + 1);
    points_all.push(PointSet {
        points: vec![LatticePoint::zero(n)],
        kind: crate::lattice::PointKind::All,
        dilation: 0,
    });
    points_int.push(PointSet {
        points: Vec::new(),
        kind: crate::lattice::PointKind::Interior,
        dilation: 0,
    });
    for k in 1..=k_max {
        let d = polytope.dilate(k as i64);
        points_all.push(d.points(false));
        points_int.push(d.points(true));
    }
    let index_all: Vec<BTreeMap<LatticePoint, usize>> = points_all
        .iter()
        .map(|ps| {
            ps.points
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect()
        })
        .collect();

    Ok(JacobianContext {
        polytope: polytope.clone(),
        f: f.clone(),
        k_max,
        log_derivs,
        facet_gens,
        chosen_facets,
        points_all,
        points_int,
        index_all,
        grades: Mutex::new(BTreeMap::new()),
        left_kernels: Mutex::new(BTreeMap::new()),
    })
}

/// The degree-k jacobian matrix with columns x_0^{k-1} x^v · g_Γ(f), rows
/// indexed by kΔ ∩ M in lexicographic order.
pub fn jacobian_component(ctx: &JacobianContext, k: usize) -> Result<Arc<GradeData>> {
    if k < 1 || k > ctx.k_max {
        return Err(Error::InvalidArgument(format!(
            "grade {k} outside 1..={}",
            ctx.k_max
        )));
    }
    if let Some(g) = ctx.grades.lock().unwrap().get(&k) {
        return Ok(g.clone());
    }
    let data = Arc::new(compute_grade(ctx, k));
    ctx.grades.lock().unwrap().insert(k, data.clone());
    Ok(data)
}

fn pick_strategy(rows: usize, cols: usize) -> Strategy {
    if rows.saturating_mul(cols) > MODULAR_THRESHOLD {
        Strategy::CertifiedModular
    } else {
        Strategy::Exact
    }
}

fn compute_grade(ctx: &JacobianContext, k: usize) -> GradeData {
    let rows = ctx.points_all[k].len();
    let row_index = &ctx.index_all[k];
    let shifts = &ctx.points_all[k - 1];

    let mut columns: Vec<Vec<(usize, BigRational)>> = Vec::new();
    let mut col_labels = Vec::new();
    for v in &shifts.points {
        for (fi, g) in ctx.facet_gens.iter().enumerate() {
            let mut col = Vec::with_capacity(g.num_terms());
            for (m, c) in g.terms() {
                let row = *row_index
                    .get(&m.add(v))
                    .expect("shifted support stays inside kΔ");
                col.push((row, c.clone()));
            }
            columns.push(col);
            col_labels.push((fi, v.clone()));
        }
    }
    let matrix = RationalMatrix::from_sparse_columns(rows, &columns);
    let sparse = matrix.to_sparse_int();

    let interior: Vec<bool> = {
        let int_index = &ctx.points_int[k];
        ctx.points_all[k]
            .points
            .iter()
            .map(|p| int_index.index_of(p).is_some())
            .collect()
    };
    let boundary_rows: Vec<usize> = (0..rows).filter(|&r| !interior[r]).collect();

    let strategy = pick_strategy(rows, matrix.cols());
    let (rank, cert) = match strategy {
        Strategy::Exact => (matrix.rank(), None),
        Strategy::CertifiedModular => {
            let req = CertifyRequest {
                track_transform: true,
                ..Default::default()
            };
            match certified_rank_data(&sparse, req) {
                Some(c) => (c.rank, Some(c)),
                None => (matrix.rank(), None),
            }
        }
    };

    let boundary = matrix.select_rows(&boundary_rows);
    let boundary_rank = match pick_strategy(boundary.rows(), boundary.cols()) {
        Strategy::Exact => boundary.rank(),
        Strategy::CertifiedModular => {
            let s = boundary.to_sparse_int();
            match certified_rank_data(&s, CertifyRequest::default()) {
                Some(c) => c.rank,
                None => boundary.rank(),
            }
        }
    };

    let l = rows;
    let l_star = ctx.points_int[k].len();
    let dim_w = rank - boundary_rank;
    let dims = GradeDims {
        k,
        l,
        l_star,
        dim_jacobian: rank,
        dim_rf: l - rank,
        dim_w,
        dim_rint: l_star - dim_w,
    };
    GradeData {
        k,
        matrix,
        col_labels,
        sparse,
        rank,
        boundary_rank,
        dims,
        cert,
    }
}

/// Jacobian matrix built from the log-derivative generators {F_i} instead of
/// the facet generators; spans the same column space.
pub fn jacobian_component_from_derivatives(
    ctx: &JacobianContext,
    k: usize,
) -> Result<RationalMatrix> {
    if k < 1 || k > ctx.k_max {
        return Err(Error::InvalidArgument(format!(
            "grade {k} outside 1..={}",
            ctx.k_max
        )));
    }
    let rows = ctx.points_all[k].len();
    let row_index = &ctx.index_all[k];
    let mut columns: Vec<Vec<(usize, BigRational)>> = Vec::new();
    for v in &ctx.points_all[k - 1].points {
        for fi in &ctx.log_derivs {
            let col = fi
                .terms()
                .map(|(m, c)| (*row_index.get(&m.add(v)).unwrap(), c.clone()))
                .collect();
            columns.push(col);
        }
    }
    Ok(RationalMatrix::from_sparse_columns(rows, &columns))
}

/// Exact graded dimensions at degree k.
pub fn graded_dims(ctx: &JacobianContext, k: usize) -> Result<GradeDims> {
    let g = jacobian_component(ctx, k)?;
    if k == 1 {
        // J^1 meets the interior trivially when all vertex coefficients are
        // nonzero, so dim R_Int^1 = l*(Δ) always
        debug_assert_eq!(g.dims.dim_rint, ctx.points_int[1].len());
    }
    Ok(g.dims.clone())
}

/// Exact left kernel of the degree-k jacobian matrix (functionals on L(kΔ)
/// vanishing on J^k). Certified witnesses are exact; cached.
pub fn left_kernel_exact(ctx: &JacobianContext, k: usize) -> Result<Arc<Vec<Vec<BigRational>>>> {
    if let Some(v) = ctx.left_kernels.lock().unwrap().get(&k) {
        return Ok(v.clone());
    }
    let g = jacobian_component(ctx, k)?;
    let vectors = if let Some(cert) = &g.cert {
        if let Some(lk) = &cert.left_kernel {
            lk.clone()
        } else {
            let strategy = pick_strategy(g.matrix.rows(), g.matrix.cols());
            g.matrix.left_kernel_with(strategy)
        }
    } else {
        g.matrix.left_kernel_with(Strategy::Exact)
    };
    debug_assert_eq!(vectors.len(), g.matrix.rows() - g.rank);
    let arc = Arc::new(vectors);
    ctx.left_kernels.lock().unwrap().insert(k, arc.clone());
    Ok(arc)
}

/// Left kernel of J^k modulo the certification prime, with the prime. Falls
/// back to reducing the exact left kernel when the grade was computed
/// exactly.
pub fn left_kernel_mod_p(ctx: &JacobianContext, k: usize) -> Result<(u64, Vec<Vec<u64>>)> {
    let g = jacobian_component(ctx, k)?;
    if let Some(cert) = &g.cert {
        if cert.elim.transform.is_some() {
            return Ok((cert.prime, cert.elim.left_kernel_mod_p()));
        }
    }
    // exact path: reduce verified exact functionals mod the first prime that
    // keeps denominators invertible
    let exact = left_kernel_exact(ctx, k)?;
    'primes: for &p in crate::linalg::modular::PRIMES.iter() {
        let pb = BigInt::from(p);
        let mut reduced = Vec::with_capacity(exact.len());
        for y in exact.iter() {
            let mut row = Vec::with_capacity(y.len());
            for v in y {
                use num_integer::Integer as _;
                let den = v.denom().mod_floor(&pb);
                if den.is_zero() {
                    continue 'primes;
                }
                let num = v.numer().mod_floor(&pb);
                let num_u = num_traits::ToPrimitive::to_u64(&num).unwrap();
                let den_u = num_traits::ToPrimitive::to_u64(&den).unwrap();
                let inv = {
                    // Fermat inverse
                    let mut acc = 1u64;
                    let mut base = den_u % p;
                    let mut e = p - 2;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = ((acc as u128 * base as u128) % p as u128) as u64;
                        }
                        base = ((base as u128 * base as u128) % p as u128) as u64;
                        e >>= 1;
                    }
                    acc
                };
                row.push(((num_u as u128 * inv as u128) % p as u128) as u64);
            }
            reduced.push(row);
        }
        return Ok((p, reduced));
    }
    Err(Error::InvalidArgument(
        "no prime avoids the kernel denominators".into(),
    ))
}

/// Dimension of the span of the given degree-1 vectors inside R_f^1, i.e.
/// modulo the column space of J^1.
pub fn dim_mod_j1(ctx: &JacobianContext, vectors: &[Vec<BigRational>]) -> Result<usize> {
    let j1 = jacobian_component(ctx, 1)?;
    if vectors.is_empty() {
        return Ok(0);
    }
    let rows = ctx.points_all[1].len();
    let vecs = RationalMatrix::from_columns(rows, vectors);
    let stacked = j1.matrix.hstack(&vecs);
    Ok(stacked.rank() - j1.rank)
}

/// Greedy subset of the given vectors whose classes mod J^1 are independent.
pub fn select_independent_mod_j1(
    ctx: &JacobianContext,
    vectors: &[Vec<BigRational>],
) -> Result<Vec<usize>> {
    let j1 = jacobian_component(ctx, 1)?;
    let rows = ctx.points_all[1].len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = j1.rank;
    for (i, v) in vectors.iter().enumerate() {
        let cols: Vec<Vec<BigRational>> = chosen
            .iter()
            .map(|&j| vectors[j].clone())
            .chain(std::iter::once(v.clone()))
            .collect();
        let m = j1.matrix.hstack(&RationalMatrix::from_columns(rows, &cols));
        let r = m.rank();
        if r > current {
            chosen.push(i);
            current = r;
        }
    }
    Ok(chosen)
}

/// Which generator family of the interior-relation span an element is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UFamily {
    /// g_{Γ_i}(f)·x^v over the chosen n+1 facets, v interior to (k-1)Δ.
    InteriorShift,
    /// g_Γ(f)·x^v over every facet, v interior to the facet dilate (k-1)Γ.
    FacetShift,
}

#[derive(Debug, Clone)]
pub struct UGenerator {
    pub facet: usize,
    pub shift: LatticePoint,
    pub family: UFamily,
    pub poly: LaurentPolynomial,
}

/// The two generator families of U_{f,k}.
pub fn u_generators(ctx: &JacobianContext, k: usize) -> Result<Vec<UGenerator>> {
    let n = ctx.dim();
    if k < 2 || k > n + 1 {
        return Err(Error::InvalidArgument(format!(
            "u_generators requires 2 <= k <= {}, got {k}",
            n + 1
        )));
    }
    if k > ctx.k_max {
        return Err(Error::InvalidArgument(format!(
            "context built with k_max {} < {k}",
            ctx.k_max
        )));
    }
    let mut out = Vec::new();
    for &fi in &ctx.chosen_facets {
        for v in &ctx.points_int[k - 1].points {
            out.push(UGenerator {
                facet: fi,
                shift: v.clone(),
                family: UFamily::InteriorShift,
                poly: ctx.facet_gens[fi].shift(v),
            });
        }
    }
    for fi in 0..ctx.polytope.facets().len() {
        let face_int = ctx.polytope.face_points(fi, (k - 1) as i64, true);
        for v in &face_int.points {
            out.push(UGenerator {
                facet: fi,
                shift: v.clone(),
                family: UFamily::FacetShift,
                poly: ctx.facet_gens[fi].shift(v),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PropositionReport {
    pub k: usize,
    pub generator_count: usize,
    pub rank_u: usize,
    pub dim_w: usize,
    pub span_equal: bool,
    /// Rank equals count; asserted only at k = 2.
    pub independent: Option<bool>,
}

/// Check that the generator families span exactly J^k ∩ L*(kΔ), and that at
/// k = 2 they are linearly independent.
pub fn verify_proposition(ctx: &JacobianContext, k: usize) -> Result<PropositionReport> {
    if ctx.points_int[1].is_empty() {
        return Err(Error::HypothesisViolated(
            "the proposition requires l*(Δ) > 0".into(),
        ));
    }
    let gens = u_generators(ctx, k)?;
    let dilated = ctx.polytope.dilate(k as i64);
    // containment: every generator is a column of J^k supported in the
    // interior of kΔ, hence lies in J^k ∩ L*(kΔ)
    for g in &gens {
        for (m, _) in g.poly.terms() {
            if !dilated.contains(m, true) {
                return Err(Error::PropositionViolation {
                    k,
                    witness: vec![format!(
                        "generator (facet {}, shift {}) has boundary support at {m}",
                        g.facet, g.shift
                    )],
                });
            }
        }
    }
    let grade = jacobian_component(ctx, k)?;
    let dim_w = grade.dims.dim_w;

    let int_points = &ctx.points_int[k];
    let int_index: BTreeMap<LatticePoint, usize> = int_points
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let columns: Vec<Vec<(usize, BigRational)>> = gens
        .iter()
        .map(|g| {
            g.poly
                .terms()
                .map(|(m, c)| (*int_index.get(m).unwrap(), c.clone()))
                .collect()
        })
        .collect();
    let u_matrix = RationalMatrix::from_sparse_columns(int_points.len(), &columns);
    let rank_u = match pick_strategy(u_matrix.rows(), u_matrix.cols()) {
        Strategy::Exact => u_matrix.rank(),
        Strategy::CertifiedModular => u_matrix.rank_with(Strategy::CertifiedModular),
    };

    let span_equal = rank_u == dim_w;
    if !span_equal {
        // witness extraction is a failure path: exhibit an interior coset
        // vector of J^k not in the span of the generators
        let keep: std::collections::BTreeSet<usize> = ctx.points_all[k]
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| dilated.contains(p, true))
            .map(|(i, _)| i)
            .collect();
        let (_, w_basis) = grade.matrix.colspace_intersect_coords(&keep, Strategy::Exact);
        let keep_sorted: Vec<usize> = keep.iter().copied().collect();
        let mut witness = Vec::new();
        for w in &w_basis {
            let restricted: Vec<BigRational> =
                keep_sorted.iter().map(|&r| w[r].clone()).collect();
            let test = u_matrix.hstack(&RationalMatrix::from_columns(
                int_points.len(),
                &[restricted.clone()],
            ));
            if test.rank() > rank_u {
                witness.push(format!("{restricted:?}"));
                break;
            }
        }
        return Err(Error::PropositionViolation { k, witness });
    }
    let independent = if k == 2 {
        Some(rank_u == gens.len())
    } else {
        None
    };
    Ok(PropositionReport {
        k,
        generator_count: gens.len(),
        rank_u,
        dim_w,
        span_equal,
        independent,
    })
}

/// Closed-form dim R_Int^2 from lattice counts only:
/// l*(2Δ) - (n+1)·l*(Δ) - Σ_Γ l*(Γ).
pub fn batyrev_dim2(polytope: &LatticePolytope) -> i64 {
    let n = polytope.dim() as i64;
    let l2 = polytope.dilate(2).points(true).len() as i64;
    let l1 = polytope.points(true).len() as i64;
    let facet_sum: i64 = (0..polytope.facets().len())
        .map(|fi| polytope.face_points(fi, 1, true).len() as i64)
        .sum();
    l2 - (n + 1) * l1 - facet_sum
}

/// Outcome of the randomized nondegeneracy certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateOutcome {
    CertifiedGeneric,
    DegenerateSuspect,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct NondegeneracyReport {
    pub outcome: CertificateOutcome,
    pub trials: usize,
    /// dim R_f^k for k = 1..n+1 of the polynomial under test.
    pub dims_f: Vec<usize>,
    /// componentwise minimum over the polynomial and all trials.
    pub dims_min: Vec<usize>,
}

/// Compare the graded dimensions of f against seeded random trials. Generic
/// dimensions are minimal, so f is certified when it attains the minimum in
/// every degree and suspect when it exceeds it anywhere.
pub fn nondegeneracy_certificate(
    polytope: &LatticePolytope,
    f: &LaurentPolynomial,
    trials: usize,
) -> Result<NondegeneracyReport> {
    if trials == 0 {
        return Ok(NondegeneracyReport {
            outcome: CertificateOutcome::Inconclusive,
            trials,
            dims_f: Vec::new(),
            dims_min: Vec::new(),
        });
    }
    let n = polytope.dim();
    let k_max = n + 1;
    let dims_of = |poly: &LaurentPolynomial| -> Result<Vec<usize>> {
        let ctx = build_context(polytope, poly, k_max)?;
        (1..=k_max)
            .map(|k| graded_dims(&ctx, k).map(|d| d.dim_rf))
            .collect()
    };
    let dims_f = dims_of(f)?;
    let mut dims_min = dims_f.clone();
    for t in 0..trials {
        let spec = PolynomialSpec::Random {
            seed: CERTIFICATE_SEED_BASE.wrapping_add(t as u64),
            bound: crate::laurent::DEFAULT_COEFF_BOUND,
        };
        let trial = realize(&spec, polytope)?;
        let dims_t = dims_of(&trial)?;
        for (m, v) in dims_min.iter_mut().zip(&dims_t) {
            *m = (*m).min(*v);
        }
    }
    let outcome = if dims_f == dims_min {
        CertificateOutcome::CertifiedGeneric
    } else {
        CertificateOutcome::DegenerateSuspect
    };
    Ok(NondegeneracyReport {
        outcome,
        trials,
        dims_f,
        dims_min,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeReport {
    pub n: usize,
    /// (p, n-1-p, dim R_Int^{n-p}) for p = 0..n-1.
    pub table: Vec<(usize, usize, usize)>,
    /// (k, n+1-k, dim R_Int^k, dim R_Int^{n+1-k}) for k = 1..n.
    pub duality: Vec<(usize, usize, usize, usize)>,
    pub duality_ok: bool,
}

/// Hodge components of minimal weight: h^{p,n-1-p} = dim R_Int^{n-p}, with
/// the Poincaré-duality cross-check dim R_Int^k = dim R_Int^{n+1-k}.
pub fn hodge_report(ctx: &JacobianContext) -> Result<HodgeReport> {
    let n = ctx.dim();
    if ctx.k_max < n + 1 {
        return Err(Error::InvalidArgument(format!(
            "hodge report requires k_max >= {}, context has {}",
            n + 1,
            ctx.k_max
        )));
    }
    let mut rint = BTreeMap::new();
    for k in 1..=n {
        rint.insert(k, graded_dims(ctx, k)?.dim_rint);
    }
    let table: Vec<(usize, usize, usize)> =
        (0..n).map(|p| (p, n - 1 - p, rint[&(n - p)])).collect();
    let mut duality = Vec::new();
    let mut duality_ok = true;
    for k in 1..=n {
        let other = n + 1 - k;
        if other >= 1 && other <= n {
            let (a, b) = (rint[&k], rint[&other]);
            duality.push((k, other, a, b));
            if a != b {
                duality_ok = false;
            }
        }
    }
    Ok(HodgeReport {
        n,
        table,
        duality,
        duality_ok,
    })
}

/// dim T = dim L(Δ)/⟨f, x_i ∂f/∂x_i⟩, the tangent dimension of the moduli
/// quotient at f; asserted equal to dim R_f^1.
pub fn tangent_dim(ctx: &JacobianContext) -> Result<usize> {
    let n = ctx.dim();
    if !ctx
        .polytope
        .contains(&LatticePoint::zero(n), true)
    {
        return Err(Error::HypothesisViolated(
            "tangent space formula requires 0 in the interior of Δ".into(),
        ));
    }
    // direct construction: f and the torus derivatives x_i ∂f/∂x_i
    let rows = ctx.points_all[1].len();
    let index = &ctx.index_all[1];
    let mut columns: Vec<Vec<(usize, BigRational)>> = Vec::new();
    columns.push(
        ctx.f
            .terms()
            .map(|(m, c)| (*index.get(m).unwrap(), c.clone()))
            .collect(),
    );
    for i in 0..n {
        let col: Vec<(usize, BigRational)> = ctx
            .f
            .terms()
            .filter(|(m, _)| m.0[i] != 0)
            .map(|(m, c)| {
                (
                    *index.get(m).unwrap(),
                    c * BigRational::from(BigInt::from(m.0[i])),
                )
            })
            .collect();
        columns.push(col);
    }
    let m = RationalMatrix::from_sparse_columns(rows, &columns);
    let dim = rows - m.rank();
    let from_grades = graded_dims(ctx, 1)?.dim_rf;
    if dim != from_grades {
        return Err(Error::ClassificationInconsistency(format!(
            "tangent dimension {dim} != dim R_f^1 {from_grades}"
        )));
    }
    Ok(dim)
}

/// Coefficient vector of h·x^v in L((k+1)Δ) coordinates as integers, for
/// membership tests against the degree-(k+1) jacobian matrix. The shift v
/// must keep the support inside the target dilate.
pub fn shifted_vector_int(
    ctx: &JacobianContext,
    h: &LaurentPolynomial,
    v: &LatticePoint,
    target_k: usize,
) -> Vec<BigInt> {
    let index = &ctx.index_all[target_k];
    let len = ctx.points_all[target_k].len();
    let mut out = vec![BigInt::zero(); len];
    for (m, c) in h.terms() {
        let row = *index
            .get(&m.add(v))
            .unwrap_or_else(|| panic!("support escapes {target_k}Δ"));
        debug_assert!(c.denom() == &BigInt::from(1));
        out[row] = c.numer().clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cross_polytope, dilated_simplex_shifted, LatticePolytope};
    use crate::laurent::TermSpec;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn octahedron_ctx(seed: u64, k_max: usize) -> JacobianContext {
        let p = cross_polytope(3);
        let f = realize(&PolynomialSpec::Random { seed, bound: 997 }, &p).unwrap();
        build_context(&p, &f, k_max).unwrap()
    }

    fn quartic_ctx(seed: u64, k_max: usize) -> JacobianContext {
        let p = LatticePolytope::hull(&[pt(&[-1, -1]), pt(&[3, -1]), pt(&[-1, 3])]).unwrap();
        let f = realize(&PolynomialSpec::Random { seed, bound: 997 }, &p).unwrap();
        build_context(&p, &f, k_max).unwrap()
    }

    #[test]
    fn build_context_octahedron() {
        let ctx = octahedron_ctx(7, 4);
        assert_eq!(ctx.facet_gens().len(), 8);
        assert_eq!(ctx.points(1).len(), 7);
        assert_eq!(ctx.points(2).len(), 25);
    }

    #[test]
    fn build_context_quintic() {
        let p = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        let f = realize(&PolynomialSpec::Random { seed: 7, bound: 997 }, &p).unwrap();
        let ctx = build_context(&p, &f, 2).unwrap();
        assert_eq!(ctx.points(1).len(), 56);
    }

    #[test]
    fn build_context_rejects_wrong_newton() {
        let p = cross_polytope(3);
        let f = realize(&PolynomialSpec::Random { seed: 5, bound: 10 }, &p).unwrap();
        let g = f.restrict_to_face(&p.facets()[0].clone());
        assert!(build_context(&p, &g, 2).is_err());
    }

    /// Independent elimination oracle cross-check for the k=1 rank.
    #[test]
    fn jacobian_rank_k1_octahedron() {
        let ctx = octahedron_ctx(7, 2);
        let g = jacobian_component(&ctx, 1).unwrap();
        assert_eq!(g.matrix.rows(), 7);
        assert_eq!(g.rank, 4);
        let fd = jacobian_component_from_derivatives(&ctx, 1).unwrap();
        assert_eq!(fd.cols(), 4);
        assert_eq!(fd.rank(), 4);
        // equal column spaces: concatenation has the same rank
        assert_eq!(g.matrix.hstack(&fd).rank(), 4);
    }

    #[test]
    fn graded_dims_octahedron() {
        let ctx = octahedron_ctx(7, 3);
        let d1 = graded_dims(&ctx, 1).unwrap();
        assert_eq!(d1.l, 7);
        assert_eq!(d1.l_star, 1);
        assert_eq!(d1.dim_rf, 3);
        assert_eq!(d1.dim_rint, 1);
        let d2 = graded_dims(&ctx, 2).unwrap();
        assert_eq!(d2.l, 25);
        assert_eq!(d2.l_star, 7);
        assert_eq!(d2.dim_w, 4);
        assert_eq!(d2.dim_rint, 3);
        let d3 = graded_dims(&ctx, 3).unwrap();
        assert_eq!(d3.dim_rint, 1, "duality with R_Int^1");
    }

    #[test]
    fn graded_dims_quartic_curve() {
        let ctx = quartic_ctx(7, 3);
        let d1 = graded_dims(&ctx, 1).unwrap();
        assert_eq!(d1.l, 15);
        assert_eq!(d1.dim_rf, 12);
        assert_eq!(d1.dim_rint, 3, "genus of a smooth plane quartic");
        let d2 = graded_dims(&ctx, 2).unwrap();
        assert_eq!(d2.dim_rint, 3, "duality in n=2");
        assert_eq!(batyrev_dim2(ctx.polytope()), 3);
    }

    #[test]
    fn f_and_g_generators_agree_all_grades() {
        let ctx = octahedron_ctx(11, 3);
        for k in 1..=3 {
            let g = jacobian_component(&ctx, k).unwrap();
            let fd = jacobian_component_from_derivatives(&ctx, k).unwrap();
            let joint = g.matrix.hstack(&fd).rank_with(Strategy::CertifiedModular);
            assert_eq!(joint, g.rank);
            assert_eq!(fd.rank_with(Strategy::CertifiedModular), g.rank);
        }
    }

    #[test]
    fn batyrev_closed_form() {
        assert_eq!(batyrev_dim2(&cross_polytope(3)), 3);
        assert_eq!(
            batyrev_dim2(&dilated_simplex_shifted(3, 5, &[-1, -1, -1])),
            44
        );
    }

    #[test]
    fn u_generators_octahedron_k2() {
        let ctx = octahedron_ctx(7, 3);
        let gens = u_generators(&ctx, 2).unwrap();
        let interior_shift = gens
            .iter()
            .filter(|g| g.family == UFamily::InteriorShift)
            .count();
        let facet_shift = gens.iter().filter(|g| g.family == UFamily::FacetShift).count();
        assert_eq!(interior_shift, 4);
        assert_eq!(facet_shift, 0, "octahedron facets have empty interior");
        let rep = verify_proposition(&ctx, 2).unwrap();
        assert_eq!(rep.rank_u, 4);
        assert_eq!(rep.dim_w, 4);
        assert_eq!(rep.independent, Some(true));
    }

    #[test]
    fn proposition_octahedron_k3() {
        let ctx = octahedron_ctx(7, 3);
        let rep = verify_proposition(&ctx, 3).unwrap();
        assert!(rep.span_equal);
        assert!(rep.generator_count > rep.rank_u, "trivial relations exist");
        assert_eq!(rep.independent, None);
    }

    #[test]
    fn nondegeneracy_random_vs_singular() {
        let p = cross_polytope(3);
        let f = realize(&PolynomialSpec::Random { seed: 7, bound: 997 }, &p).unwrap();
        let rep = nondegeneracy_certificate(&p, &f, 3).unwrap();
        assert_eq!(rep.outcome, CertificateOutcome::CertifiedGeneric);

        // singular at (1,1,1): common torus zero of f and its derivatives
        let mut terms: Vec<TermSpec> = p
            .vertices()
            .iter()
            .map(|v| TermSpec { exp: v.0.clone(), coeff: "1".into() })
            .collect();
        terms.push(TermSpec { exp: vec![0, 0, 0], coeff: "-6".into() });
        let sing = realize(&PolynomialSpec::Explicit { terms }, &p).unwrap();
        let rep = nondegeneracy_certificate(&p, &sing, 5).unwrap();
        assert_eq!(rep.outcome, CertificateOutcome::DegenerateSuspect);
    }

    #[test]
    fn vertex_supported_simplex_is_generic() {
        let p = dilated_simplex_shifted(2, 3, &[-1, -1]);
        let terms: Vec<TermSpec> = p
            .vertices()
            .iter()
            .map(|v| TermSpec { exp: v.0.clone(), coeff: "1".into() })
            .collect();
        let f = realize(&PolynomialSpec::Explicit { terms }, &p).unwrap();
        let rep = nondegeneracy_certificate(&p, &f, 3).unwrap();
        assert_eq!(rep.outcome, CertificateOutcome::CertifiedGeneric);
    }

    #[test]
    fn hodge_octahedron_table() {
        let ctx = octahedron_ctx(7, 4);
        let rep = hodge_report(&ctx).unwrap();
        let dims: Vec<usize> = rep.table.iter().map(|t| t.2).collect();
        assert_eq!(dims, vec![1, 3, 1]);
        assert!(rep.duality_ok);
    }

    #[test]
    fn tangent_dim_examples() {
        let ctx = octahedron_ctx(7, 2);
        assert_eq!(tangent_dim(&ctx).unwrap(), 3);
        let ctx = quartic_ctx(7, 2);
        assert_eq!(tangent_dim(&ctx).unwrap(), 12);
    }

    #[test]
    fn dims_independent_of_seed() {
        let a = octahedron_ctx(7, 3);
        let b = octahedron_ctx(1234, 3);
        for k in 1..=3 {
            assert_eq!(graded_dims(&a, k).unwrap(), graded_dims(&b, k).unwrap());
        }
    }

    #[test]
    fn left_kernel_annihilates_columns() {
        let ctx = octahedron_ctx(7, 2);
        let lk = left_kernel_exact(&ctx, 2).unwrap();
        let g = jacobian_component(&ctx, 2).unwrap();
        assert_eq!(lk.len(), 25 - g.rank);
        for y in lk.iter() {
            let prod = g.matrix.transpose().mul_vec(y);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
    }
}
