//! Sparse Laurent polynomials over exact rationals.
//!
//! Houses the hypersurface polynomial f, its logarithmic derivatives F_i and
//! the facet generators g_Γ(f). The homogenizing variable is tracked as a
//! degree tag rather than an extra exponent coordinate, so the lattice
//! geometry stays n-dimensional.

use crate::error::{Error, Result};
use crate::lattice::{Facet, LatticePoint, LatticePolytope};
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sparse exponent-vector → coefficient map. Zero coefficients are never
/// stored. `x0_degree` is the power of the auxiliary homogenizing variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<LatticePoint, BigRational>,
    pub x0_degree: u32,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            x0_degree: 0,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticePoint, BigRational)>>(
        iter: I,
        x0_degree: u32,
    ) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in iter {
            if !c.is_zero() {
                let e = terms.entry(m).or_insert_with(BigRational::zero);
                *e += c;
            }
        }
        terms.retain(|_, c: &mut BigRational| !c.is_zero());
        Self { terms, x0_degree }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &LatticePoint) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::hull(&self.support())
    }

    pub fn add(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolynomial {
            terms,
            x0_degree: self.x0_degree.max(other.x0_degree),
        }
    }

    pub fn sub(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.add(&other.scalar_mul(&-BigRational::one()))
    }

    pub fn scalar_mul(&self, s: &BigRational) -> LaurentPolynomial {
        if s.is_zero() {
            return LaurentPolynomial {
                terms: BTreeMap::new(),
                x0_degree: self.x0_degree,
            };
        }
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * s))
                .collect(),
            x0_degree: self.x0_degree,
        }
    }

    /// Multiply by the monomial x^w: exponents translate, coefficients stay.
    pub fn shift(&self, w: &LatticePoint) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.add(w), c.clone()))
                .collect(),
            x0_degree: self.x0_degree,
        }
    }

    /// Keep exactly the terms whose exponent lies on the facet Γ.
    pub fn restrict_to_face(&self, facet: &Facet) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| facet.eval(m) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            x0_degree: self.x0_degree,
        }
    }

    /// Coefficient vector with respect to an indexed point list; points of
    /// the support missing from the index map to an error in the caller, so
    /// this asserts full coverage.
    pub fn coefficient_vector(&self, index: &BTreeMap<LatticePoint, usize>, len: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); len];
        for (m, c) in &self.terms {
            let i = *index
                .get(m)
                .unwrap_or_else(|| panic!("support point {m} outside index"));
            v[i] = c.clone();
        }
        v
    }
}

/// Input form of a polynomial: explicit terms or a seeded random draw on the
/// lattice points of the polytope.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PolynomialSpec {
    Explicit { terms: Vec<TermSpec> },
    Random { seed: u64, bound: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    pub exp: Vec<i64>,
    pub coeff: String,
}

/// Default coefficient bound for random polynomials.
pub const DEFAULT_COEFF_BOUND: u64 = 997;

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator: {s}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator: {s}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator: {s}")));
    }
    Ok(BigRational::new(n, d))
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Realize a polynomial specification on the polytope Δ.
///
/// Explicit mode checks support containment and that the Newton polytope of
/// the result is exactly Δ. Random mode draws nonzero integer coefficients
/// in [-bound, bound] for every lattice point of Δ, in lexicographic point
/// order, from a SplitMix64 stream; all vertex coefficients are nonzero by
/// construction so the Newton polytope is always Δ.
pub fn realize(spec: &PolynomialSpec, polytope: &LatticePolytope) -> Result<LaurentPolynomial> {
    match spec {
        PolynomialSpec::Explicit { terms } => {
            let mut map: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
            for t in terms {
                let m = LatticePoint::new(t.exp.clone());
                if m.dim() != polytope.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: polytope.dim(),
                        got: m.dim(),
                    });
                }
                if !polytope.contains(&m, false) {
                    return Err(Error::SupportOutsidePolytope { point: t.exp.clone() });
                }
                let c = parse_rational(&t.coeff)?;
                let e = map.entry(m).or_insert_with(BigRational::zero);
                *e += c;
            }
            map.retain(|_, c| !c.is_zero());
            for v in polytope.vertices() {
                if !map.contains_key(v) {
                    return Err(Error::NewtonPolytopeMismatch {
                        reason: format!("vertex {v} has zero coefficient"),
                    });
                }
            }
            Ok(LaurentPolynomial {
                terms: map,
                x0_degree: 0,
            })
        }
        PolynomialSpec::Random { seed, bound } => {
            let bound = if *bound == 0 { DEFAULT_COEFF_BOUND } else { *bound };
            let mut rng = SplitMix64::new(*seed);
            let pts = polytope.points(false);
            let terms = pts
                .points
                .iter()
                .map(|m| {
                    let c = rng.nonzero_in(bound);
                    (m.clone(), BigRational::from(BigInt::from(c)))
                })
                .collect();
            Ok(LaurentPolynomial {
                terms,
                x0_degree: 0,
            })
        }
    }
}

/// Serialize back to the JSON term list (explicit form), for report output.
pub fn to_term_specs(f: &LaurentPolynomial) -> Vec<TermSpec> {
    f.terms()
        .map(|(m, c)| TermSpec {
            exp: m.0.clone(),
            coeff: format_rational(c),
        })
        .collect()
}

/// Logarithmic derivatives [F_0, ..., F_n] of x_0·f: the coefficient of x^m
/// in F_i is a_m·m_i, and a_m itself for i = 0. Each carries x_0-degree 1.
pub fn log_derivatives(f: &LaurentPolynomial) -> Vec<LaurentPolynomial> {
    let n = f
        .terms
        .keys()
        .next()
        .map(|m| m.dim())
        .unwrap_or(0);
    let mut out = Vec::with_capacity(n + 1);
    out.push(LaurentPolynomial {
        terms: f.terms.clone(),
        x0_degree: 1,
    });
    for i in 0..n {
        let terms: BTreeMap<LatticePoint, BigRational> = f
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] != 0)
            .map(|(m, c)| (m.clone(), c * BigRational::from(BigInt::from(m.0[i]))))
            .collect();
        out.push(LaurentPolynomial {
            terms,
            x0_degree: 1,
        });
    }
    out
}

/// Facet generator g_Γ(f) = Σ a_m (⟨n_Γ, m⟩ + b_Γ) x_0 x^m. Its support is
/// contained in (Δ ∩ M) \ (Γ ∩ M) because the affine form vanishes on Γ.
pub fn facet_generator(f: &LaurentPolynomial, facet: &Facet) -> LaurentPolynomial {
    let terms: BTreeMap<LatticePoint, BigRational> = f
        .terms
        .iter()
        .filter_map(|(m, c)| {
            let w = facet.eval(m);
            if w == 0 {
                None
            } else {
                Some((m.clone(), c * BigRational::from(BigInt::from(w))))
            }
        })
        .collect();
    LaurentPolynomial {
        terms,
        x0_degree: 1,
    }
}

/// The linear-combination form b_Γ F_0 + Σ_j (n_Γ)_j F_j of the facet
/// generator; agrees term-by-term with `facet_generator`.
pub fn facet_generator_from_derivatives(
    derivs: &[LaurentPolynomial],
    facet: &Facet,
) -> LaurentPolynomial {
    let mut acc = derivs[0].scalar_mul(&BigRational::from(BigInt::from(facet.offset)));
    for (j, nj) in facet.normal.iter().enumerate() {
        acc = acc.add(&derivs[j + 1].scalar_mul(&BigRational::from(BigInt::from(*nj))));
    }
    acc
}

/// Rank of the matrix with rows (b_Γ, n_Γ) over all facets. Equals n+1 for
/// every full-dimensional polytope, which is what makes the g_Γ(f) a
/// generating set of the jacobian ideal.
pub fn offset_normal_rank(polytope: &LatticePolytope) -> usize {
    let rows: Vec<LatticePoint> = polytope
        .facets()
        .iter()
        .map(|f| {
            let mut row = vec![f.offset];
            row.extend_from_slice(&f.normal);
            LatticePoint(row)
        })
        .collect();
    crate::lattice::linear_rank(&rows)
}

/// Greedy choice of n+1 facets whose (b, n) rows have rank n+1, scanning in
/// facet-list order and keeping a facet when it grows the rank.
pub fn independent_facet_choice(polytope: &LatticePolytope) -> Result<Vec<usize>> {
    let n = polytope.dim();
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<LatticePoint> = Vec::new();
    for (i, f) in polytope.facets().iter().enumerate() {
        let mut row = vec![f.offset];
        row.extend_from_slice(&f.normal);
        rows.push(LatticePoint(row));
        if crate::lattice::linear_rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
        if chosen.len() == n + 1 {
            return Ok(chosen);
        }
    }
    Err(Error::NoIndependentFacetChoice { needed: n + 1 })
}

/// Signed magnitude of the largest coefficient, for report summaries.
pub fn coeff_height(f: &LaurentPolynomial) -> BigInt {
    f.terms
        .values()
        .map(|c| c.numer().abs().max(c.denom().abs()))
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cross_polytope, dilated_simplex_shifted, LatticePolytope};

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn octahedron_f() -> (LatticePolytope, LaurentPolynomial) {
        let p = cross_polytope(3);
        let spec = PolynomialSpec::Explicit {
            terms: vec![
                TermSpec { exp: vec![1, 0, 0], coeff: "1".into() },
                TermSpec { exp: vec![-1, 0, 0], coeff: "1".into() },
                TermSpec { exp: vec![0, 1, 0], coeff: "1".into() },
                TermSpec { exp: vec![0, -1, 0], coeff: "1".into() },
                TermSpec { exp: vec![0, 0, 1], coeff: "1".into() },
                TermSpec { exp: vec![0, 0, -1], coeff: "1".into() },
                TermSpec { exp: vec![0, 0, 0], coeff: "-4".into() },
            ],
        };
        let f = realize(&spec, &p).unwrap();
        (p, f)
    }

    #[test]
    fn realize_explicit_octahedron() {
        let (_, f) = octahedron_f();
        assert_eq!(f.num_terms(), 7);
    }

    #[test]
    fn realize_rejects_outside_support() {
        let p = cross_polytope(3);
        let spec = PolynomialSpec::Explicit {
            terms: vec![TermSpec { exp: vec![1, 1, 0], coeff: "1".into() }],
        };
        assert!(matches!(
            realize(&spec, &p),
            Err(Error::SupportOutsidePolytope { .. })
        ));
    }

    #[test]
    fn realize_rejects_zero_vertex() {
        let p = LatticePolytope::hull(&[pt(&[-1, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        let spec = PolynomialSpec::Explicit {
            terms: vec![
                TermSpec { exp: vec![-1, 0], coeff: "1".into() },
                TermSpec { exp: vec![0, 1], coeff: "2".into() },
            ],
        };
        assert!(matches!(
            realize(&spec, &p),
            Err(Error::NewtonPolytopeMismatch { .. })
        ));
    }

    #[test]
    fn realize_random_quintic_deterministic() {
        let p = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        let spec = PolynomialSpec::Random { seed: 7, bound: 1000 };
        let f = realize(&spec, &p).unwrap();
        let g = realize(&spec, &p).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.num_terms(), 56);
        for v in p.vertices() {
            assert!(!f.coeff(v).is_zero());
        }
    }

    #[test]
    fn log_derivatives_one_dim() {
        let p = LatticePolytope::hull(&[pt(&[-1]), pt(&[1])]).unwrap();
        let spec = PolynomialSpec::Explicit {
            terms: vec![
                TermSpec { exp: vec![1], coeff: "1".into() },
                TermSpec { exp: vec![-1], coeff: "1".into() },
            ],
        };
        let f = realize(&spec, &p).unwrap();
        let d = log_derivatives(&f);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].coeff(&pt(&[1])), BigRational::from(BigInt::from(1)));
        assert_eq!(d[1].coeff(&pt(&[-1])), BigRational::from(BigInt::from(-1)));
        assert_eq!(d[1].coeff(&pt(&[1])), BigRational::from(BigInt::from(1)));
    }

    #[test]
    fn log_derivative_octahedron_f3() {
        let (_, f) = octahedron_f();
        let d = log_derivatives(&f);
        let f3 = &d[3];
        assert_eq!(f3.num_terms(), 2);
        assert_eq!(f3.coeff(&pt(&[0, 0, 1])), BigRational::from(BigInt::from(1)));
        assert_eq!(f3.coeff(&pt(&[0, 0, -1])), BigRational::from(BigInt::from(-1)));
    }

    /// Term-by-term oracle: coefficient of x^m in F_i is a_m·m_i.
    #[test]
    fn log_derivative_coefficients_random_quintic() {
        let p = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        let f = realize(&PolynomialSpec::Random { seed: 7, bound: 1000 }, &p).unwrap();
        let d = log_derivatives(&f);
        for (m, a) in f.terms() {
            for i in 0..3 {
                let expected = a * BigRational::from(BigInt::from(m.0[i]));
                assert_eq!(d[i + 1].coeff(m), expected);
            }
            assert_eq!(d[0].coeff(m), a.clone());
        }
    }

    #[test]
    fn facet_generator_forms_agree() {
        let (p, f) = octahedron_f();
        let d = log_derivatives(&f);
        for facet in p.facets() {
            let g1 = facet_generator(&f, facet);
            let g2 = facet_generator_from_derivatives(&d, facet);
            assert_eq!(g1, g2);
            // support avoids the facet
            for (m, _) in g1.terms() {
                assert!(facet.eval(m) > 0);
            }
        }
    }

    #[test]
    fn facet_generator_support_off_facet() {
        let (p, f) = octahedron_f();
        let facet = p
            .facets()
            .iter()
            .find(|f| f.normal == vec![-1, -1, -1])
            .unwrap();
        let g = facet_generator(&f, facet);
        // exactly the 4 lattice points of Δ off that facet carry support
        assert_eq!(g.num_terms(), 4);
    }

    /// On a simplex supported at the vertices, g_Γ is a scalar multiple of
    /// the monomial at the opposite vertex.
    #[test]
    fn facet_generator_simplex_monomial() {
        let p = dilated_simplex_shifted(2, 3, &[-1, -1]);
        let terms: Vec<TermSpec> = p
            .vertices()
            .iter()
            .map(|v| TermSpec { exp: v.0.clone(), coeff: "2".into() })
            .collect();
        let f = realize(&PolynomialSpec::Explicit { terms }, &p).unwrap();
        for facet in p.facets() {
            let g = facet_generator(&f, facet);
            assert_eq!(g.num_terms(), 1);
            let (m, _) = g.terms().next().unwrap();
            assert!(facet.eval(m) > 0, "supported at the opposite vertex");
        }
    }

    #[test]
    fn restrict_to_face_examples() {
        let (p, f) = octahedron_f();
        let facet = p
            .facets()
            .iter()
            .find(|f| f.normal == vec![-1, -1, -1])
            .unwrap();
        let r = f.restrict_to_face(facet);
        assert_eq!(r.num_terms(), 3);
        assert_eq!(r.restrict_to_face(facet), r);

        let quintic = dilated_simplex_shifted(3, 5, &[-1, -1, -1]);
        let g = realize(&PolynomialSpec::Random { seed: 3, bound: 50 }, &quintic).unwrap();
        for facet in quintic.facets() {
            let r = g.restrict_to_face(facet);
            let expected: Vec<LatticePoint> = g
                .support()
                .into_iter()
                .filter(|m| facet.eval(m) == 0)
                .collect();
            assert_eq!(r.support(), expected);
        }
    }

    #[test]
    fn shift_round_trip() {
        let (_, f) = octahedron_f();
        let w = pt(&[2, -1, 3]);
        assert_eq!(f.shift(&w).shift(&w.neg()), f);
        let n1 = f.newton_polytope().unwrap();
        let n2 = f.shift(&w).newton_polytope().unwrap();
        assert_eq!(n1.translate(&w), n2);
    }

    #[test]
    fn shift_support_containment_quartic() {
        let quartic =
            LatticePolytope::hull(&[pt(&[-1, -1]), pt(&[3, -1]), pt(&[-1, 3])]).unwrap();
        let f = realize(&PolynomialSpec::Random { seed: 11, bound: 100 }, &quartic).unwrap();
        // facet with normal (1,0) is the left edge x = -1
        let facet = quartic
            .facets()
            .iter()
            .find(|f| f.normal == vec![1, 0])
            .unwrap();
        let g = facet_generator(&f, facet);
        let w = pt(&[-1, 0]);
        let shifted = g.shift(&w);
        let ok = shifted.support().iter().all(|m| quartic.contains(m, false));
        let direct = g
            .support()
            .iter()
            .all(|m| quartic.contains(&m.add(&w), false));
        assert_eq!(ok, direct);
        assert!(ok, "support slides within the polytope for this facet");
    }

    #[test]
    fn arithmetic_exact() {
        let (_, f) = octahedron_f();
        let g = f.shift(&pt(&[1, 0, 0]));
        assert_eq!(f.add(&g).sub(&g), f);
    }

    #[test]
    fn offset_normal_rank_full() {
        for p in [
            cross_polytope(3),
            dilated_simplex_shifted(3, 5, &[-1, -1, -1]),
        ] {
            assert_eq!(offset_normal_rank(&p), 4);
        }
    }

    #[test]
    fn independent_facets_exist() {
        let p = cross_polytope(3);
        let chosen = independent_facet_choice(&p).unwrap();
        assert_eq!(chosen.len(), 4);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-7").unwrap(), BigRational::from(BigInt::from(-7)));
        assert!(parse_rational("1/0").is_err());
    }
}
