//! Picard lattices of the K3 family of a reflexive polytope: the rank of L₀,
//! Picard numbers, intersection matrices of restricted toric divisors, and
//! discriminant forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, det_exact, snf, IntMatrix, RatVector};
use crate::polytope::{dot, segment_interior_points, Point3, Polytope3};
use crate::toric::{one_simplices, DivisorBasis, OneSimplexSet};

/// Even nondegenerate lattice given by its Gram matrix, with rank,
/// signature and determinant cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntMatrix,
    signature: (usize, usize),
    det: BigInt,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if let Some(i) = (0..gram.rows()).find(|&i| gram[(i, i)].is_odd()) {
            return Err(Error::NotEven(gram[(i, i)].to_i64().unwrap_or(1)));
        }
        let det = det_exact(&gram)?;
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let signature = linalg::signature(&gram)?;
        Ok(Self {
            gram,
            signature,
            det,
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The rank-zero lattice.
    pub fn zero() -> Self {
        Self {
            gram: IntMatrix::zeros(0, 0),
            signature: (0, 0),
            det: BigInt::one(),
        }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature.0 == 1
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature.0 == 0
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        GramLattice {
            gram: IntMatrix::block_diag(&[self.gram.clone(), other.gram.clone()]),
            signature: (
                self.signature.0 + other.signature.0,
                self.signature.1 + other.signature.1,
            ),
            det: &self.det * &other.det,
        }
    }

    /// SNF invariant factors of the Gram matrix that exceed 1.
    pub fn discriminant_factors(&self) -> Vec<BigInt> {
        linalg::invariant_factors(&self.gram)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn discriminant_form(&self) -> DiscriminantForm {
        discriminant_form(self)
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

/// Groups up to this order have every element's q-value enumerated.
pub const ENUMERATION_LIMIT: u64 = 4096;

/// Discriminant group `L*/L ≅ ⊕ Z/dᵢ` with its quadratic form in `Q/2Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub invariant_factors: Vec<BigInt>,
    /// Representatives in `L*`, in lattice coordinates, one per factor.
    pub generators: Vec<RatVector>,
    /// `q` of each generator, in `[0, 2)`.
    pub generator_q: Vec<BigRational>,
    /// `b(gᵢ, gⱼ)` for all generator pairs, unreduced.
    pairing: Vec<Vec<BigRational>>,
    /// Every element as coefficients on the generators with its q-value,
    /// present when the group has at most `ENUMERATION_LIMIT` elements.
    pub values: Option<Vec<(Vec<u64>, BigRational)>>,
}

impl DiscriminantForm {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Sorted multiset of q-values over all group elements.
    pub fn q_multiset(&self) -> Option<Vec<BigRational>> {
        self.values.as_ref().map(|v| {
            let mut q: Vec<BigRational> = v.iter().map(|(_, x)| x.clone()).collect();
            q.sort();
            q
        })
    }

    /// Multiset of `-q` reduced into `[0, 2)`.
    pub fn negated_q_multiset(&self) -> Option<Vec<BigRational>> {
        self.q_multiset().map(|v| {
            let mut n: Vec<BigRational> = v.into_iter().map(|x| mod2(&-x)).collect();
            n.sort();
            n
        })
    }

    /// `q` of the element with the given generator coefficients.
    pub fn q_of(&self, coeffs: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..coeffs.len() {
            if coeffs[i] == 0 {
                continue;
            }
            let ci = BigRational::from_integer(coeffs[i].into());
            acc += &ci * &ci * &self.pairing[i][i];
            for j in i + 1..coeffs.len() {
                let cj = BigRational::from_integer(coeffs[j].into());
                acc += BigRational::from_integer(2.into()) * &ci * cj * &self.pairing[i][j];
            }
        }
        mod2(&acc)
    }
}

/// Reduces a rational into `[0, 2)`.
pub fn mod2(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let k = (x / &two).floor();
    x - two * k
}

pub fn discriminant_form(l: &GramLattice) -> DiscriminantForm {
    let g = l.gram();
    let (d, _u, v) = snf(g);
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for i in 0..g.rows() {
        let di = d[(i, i)].clone();
        if di.is_one() {
            continue;
        }
        generators.push(RatVector::from_ints(&v.col(i), &di));
        factors.push(di);
    }
    let pairing: Vec<Vec<BigRational>> = generators
        .iter()
        .map(|a| generators.iter().map(|b| a.pair(g, b)).collect())
        .collect();
    let generator_q = (0..generators.len()).map(|i| mod2(&pairing[i][i])).collect();
    let mut form = DiscriminantForm {
        invariant_factors: factors,
        generators,
        generator_q,
        pairing,
        values: None,
    };
    let order = form.order();
    if order <= BigInt::from(ENUMERATION_LIMIT) {
        let dims: Vec<u64> = form
            .invariant_factors
            .iter()
            .map(|x| x.to_u64().expect("bounded by limit"))
            .collect();
        let mut values = Vec::new();
        let mut c = vec![0u64; dims.len()];
        loop {
            values.push((c.clone(), form.q_of(&c)));
            let mut k = 0;
            while k < dims.len() {
                c[k] += 1;
                if c[k] < dims[k] {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == dims.len() {
                break;
            }
        }
        form.values = Some(values);
    }
    form
}

/// Square-free `|det|` rules out proper overlattices, which for an even
/// hyperbolic lattice of rank at most 20 gives a primitive embedding into
/// the K3 lattice. `false` only means the test is inconclusive.
pub fn primitive_by_squarefree(l: &GramLattice) -> bool {
    linalg::is_squarefree(l.det())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeContribution {
    pub edge: [Point3; 2],
    pub dual_edge: [Point3; 2],
    pub lstar: usize,
    pub lstar_dual: usize,
}

impl EdgeContribution {
    /// Contribution of an edge given by endpoints together with its dual
    /// edge; checks the endpoints pair to -1 crosswise.
    pub fn from_segments(edge: [Point3; 2], dual_edge: [Point3; 2]) -> Result<Self> {
        let paired = edge
            .iter()
            .all(|x| dual_edge.iter().all(|y| dot(x, y) == -1));
        if !paired || edge[0] == edge[1] || dual_edge[0] == dual_edge[1] {
            return Err(Error::NotAFace);
        }
        Ok(Self {
            edge,
            dual_edge,
            lstar: segment_interior_points(&edge[0], &edge[1]),
            lstar_dual: segment_interior_points(&dual_edge[0], &dual_edge[1]),
        })
    }

    pub fn product(&self) -> usize {
        self.lstar * self.lstar_dual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L0Report {
    pub contributions: Vec<EdgeContribution>,
    pub total: usize,
}

/// `rk L₀ = Σ_Γ l*(Γ)·l*(Γ*)` over the edges of `p`.
pub fn rk_l0(p: &Polytope3) -> Result<L0Report> {
    let dual = p.polar_dual()?;
    let mut contributions = Vec::new();
    for (i, e) in p.edges().iter().enumerate() {
        let face = p.edge_face(i);
        let df = p.dual_face_in(&dual, face)?;
        debug_assert_eq!(df.dim, 1);
        contributions.push(EdgeContribution {
            edge: [p.vertices()[e.ends[0]], p.vertices()[e.ends[1]]],
            dual_edge: [df.vertices[0], df.vertices[1]],
            lstar: face.interior_count,
            lstar_dual: df.interior_count,
        });
    }
    let total = contributions.iter().map(EdgeContribution::product).sum();
    Ok(L0Report {
        contributions,
        total,
    })
}

/// `ρ = s - 3 + rk L₀`.
pub fn picard_number(p: &Polytope3) -> Result<usize> {
    let s = one_simplices(p)?.len();
    Ok(s - 3 + rk_l0(p)?.total)
}

/// `ρ(Δ) + ρ(Δ*) = 20 + rk L₀`.
pub fn sum_check(p: &Polytope3) -> Result<bool> {
    let dual = p.polar_dual()?;
    Ok(picard_number(p)? + picard_number(&dual)? == 20 + rk_l0(p)?.total)
}

/// Intersection numbers of all restricted toric divisors, in the order of
/// `set`. Only valid when rk L₀ = 0.
///
/// Self-intersection is `2·l*(vᵢ*) - 2` for a vertex `vᵢ` of Δ* (`vᵢ*` the
/// dual facet of Δ) and -2 otherwise. Distinct divisors meet only when both
/// rays lie on a common edge Γ* of Δ*: if both are vertices and Γ* has no
/// interior points the number is `l*(Γ) + 1`, otherwise 1 for neighbouring
/// points and 0 for the rest.
pub fn intersection_matrix(set: &OneSimplexSet) -> Result<IntMatrix> {
    let p = set.source();
    let l0 = rk_l0(p)?.total;
    if l0 != 0 {
        return Err(Error::NonzeroL0(l0));
    }
    let dual = p.polar_dual()?;
    let v = set.vectors();
    let s = v.len();
    let mut g = IntMatrix::zeros(s, s);

    for i in 0..s {
        g[(i, i)] = if dual.is_vertex(&v[i]) {
            let vf = dual.find_face(&[v[i]]).ok_or(Error::NotAFace)?;
            let facet = dual.dual_face_in(p, vf)?;
            BigInt::from(2 * facet.interior_count as i64 - 2)
        } else {
            BigInt::from(-2)
        };
    }

    for (k, _) in dual.edges().iter().enumerate() {
        let edge = dual.edge_face(k);
        let pts = crate::polytope::segment_lattice_points(&edge.vertices[0], &edge.vertices[1]);
        let idx: Vec<Option<usize>> = pts.iter().map(|x| set.position(x)).collect();
        let dual_edge_lstar = dual.dual_face_in(p, edge)?.interior_count;
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                let (Some(i), Some(j)) = (idx[a], idx[b]) else { continue };
                let both_vertices = a == 0 && b == pts.len() - 1;
                let val = if both_vertices && edge.interior_count == 0 {
                    dual_edge_lstar as i64 + 1
                } else if b == a + 1 {
                    1
                } else {
                    0
                };
                g[(i, j)] = BigInt::from(val);
                g[(j, i)] = BigInt::from(val);
            }
        }
    }
    Ok(g)
}

/// Gram matrix of the restricted independent divisors of `basis`.
pub fn restricted_gram(set: &OneSimplexSet, basis: &DivisorBasis) -> Result<GramLattice> {
    let full = intersection_matrix(set)?;
    GramLattice::new(full.select(&basis.independent, &basis.independent))
}

/// Principal divisors must have zero intersection with everything: the full
/// intersection matrix annihilates each row of the relation matrix.
pub fn annihilates_principal(set: &OneSimplexSet, full: &IntMatrix) -> bool {
    let r = set.relation_matrix();
    (0..3).all(|j| full.mul_vec(r.row(j)).iter().all(Zero::is_zero))
}
