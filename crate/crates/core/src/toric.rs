//! One-simplices of the fan of a reflexive polytope and the linear relations
//! among the corresponding toric divisors.
//!
//! For one-simplices `v₁ … v_s` the divisors satisfy `Σᵢ (e_j, vᵢ) Dᵢ ~ 0`
//! for `j = 1, 2, 3`. Removing three divisors whose 3x3 coefficient minor is
//! unimodular leaves a Z-basis of the Picard group of the toric threefold.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, det_exact, hnf, in_row_span, IntMatrix};
use crate::polytope::{is_primitive, Point3, Polytope3};

/// Ordered primitive generators of the rays of the fan of `source`.
#[derive(Clone, Debug)]
pub struct OneSimplexSet {
    vectors: Vec<Point3>,
    source: Polytope3,
}

impl OneSimplexSet {
    pub fn vectors(&self) -> &[Point3] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn source(&self) -> &Polytope3 {
        &self.source
    }

    pub fn position(&self, v: &Point3) -> Option<usize> {
        self.vectors.iter().position(|x| x == v)
    }

    /// The 3 x s coefficient matrix of the divisor relations; row `j` holds
    /// `(e_j, vᵢ)`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..3).map(|j| self.vectors.iter().map(|v| v[j]).collect()).collect();
        IntMatrix::from_rows(&rows).expect("rectangular by construction")
    }

    /// The same set in a caller-supplied order (e.g. a published labelling).
    pub fn reordered(&self, order: &[Point3]) -> Result<Self> {
        let mut a = self.vectors.clone();
        let mut b = order.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            let missing: Vec<&Point3> = a.iter().filter(|x| !b.contains(x)).collect();
            let extra: Vec<&Point3> = b.iter().filter(|x| !a.contains(x)).collect();
            return Err(Error::SetMismatch(format!(
                "computed but not listed {missing:?}, listed but not computed {extra:?}"
            )));
        }
        Ok(Self {
            vectors: order.to_vec(),
            source: self.source.clone(),
        })
    }
}

/// Lattice points on the edges of the polar dual of `p`, sorted.
pub fn one_simplices(p: &Polytope3) -> Result<OneSimplexSet> {
    let dual = p.polar_dual()?;
    let vectors = dual.edge_lattice_points();
    // boundary points of a reflexive polytope sit at lattice distance 1
    assert!(vectors.iter().all(is_primitive), "edge point of a reflexive polytope is not primitive");
    Ok(OneSimplexSet {
        vectors,
        source: p.clone(),
    })
}

/// `D_lhs ~ Σ c · D_i` with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: usize,
    pub rhs: Vec<(usize, BigRational)>,
}

impl Relation {
    pub fn integral(lhs: usize, rhs: &[(usize, i64)]) -> Self {
        Self {
            lhs,
            rhs: rhs
                .iter()
                .map(|&(i, c)| (i, BigRational::from_integer(c.into())))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.rhs.iter().all(|(_, c)| c.is_integer())
    }

    /// Coefficient vector `a` of the relation `Σ aᵢ Dᵢ ~ 0`, if integral.
    pub fn combination(&self, s: usize) -> Option<Vec<BigInt>> {
        if self.lhs >= s || !self.is_integral() {
            return None;
        }
        let mut a = vec![BigInt::zero(); s];
        a[self.lhs] += 1;
        for (i, c) in &self.rhs {
            if *i >= s {
                return None;
            }
            a[*i] -= c.to_integer();
        }
        Some(a)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{} ~", self.lhs + 1)?;
        let mut first = true;
        for (i, c) in self.rhs.iter().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() { String::new() } else { linalg::format_rational(&mag) };
            if first {
                write!(f, " {sign}{coef}D{}", i + 1)?;
            } else {
                write!(f, " {sign} {coef}D{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, " 0")?;
        }
        Ok(())
    }
}

/// A choice of three dependent divisors and the expressions of each in terms
/// of the remaining `s - 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBasis {
    pub dependent: Vec<usize>,
    pub independent: Vec<usize>,
    pub relations: Vec<Relation>,
    /// `|det|` of the dependent 3x3 minor: the index of the span of the
    /// independent divisors in the Picard group. 1 means a genuine Z-basis.
    pub index: BigInt,
}

impl DivisorBasis {
    pub fn is_unimodular(&self) -> bool {
        self.index.is_one()
    }
}

/// Default basis: the lexicographically first dependent triple whose minor
/// is ±1, or failing that the first triple of smallest nonzero `|minor|`.
pub fn divisor_relations(set: &OneSimplexSet) -> Result<DivisorBasis> {
    let r = set.relation_matrix();
    let rank = linalg::rank(&r);
    if rank < 3 {
        return Err(Error::RankDeficient(rank));
    }
    let mut best: Option<([usize; 3], BigInt)> = None;
    for t in combinations3(set.len()) {
        let d = det_exact(&r.select(&[0, 1, 2], &t)).expect("square").abs();
        if d.is_zero() {
            continue;
        }
        if d.is_one() {
            best = Some((t, d));
            break;
        }
        if best.as_ref().is_none_or(|(_, b)| d < *b) {
            best = Some((t, d));
        }
    }
    let (t, _) = best.expect("rank 3 guarantees a nonsingular minor");
    divisor_relations_with(set, &t)
}

/// Basis with an explicit dependent set (0-based indices).
pub fn divisor_relations_with(set: &OneSimplexSet, dependent: &[usize]) -> Result<DivisorBasis> {
    let s = set.len();
    if let Some(&bad) = dependent.iter().find(|&&i| i >= s) {
        return Err(Error::BadIndex(bad));
    }
    let mut dep = dependent.to_vec();
    dep.sort_unstable();
    dep.dedup();
    if dep.len() != 3 || dependent.len() != 3 {
        return Err(Error::SingularDependentSet(dependent.to_vec()));
    }
    let r = set.relation_matrix();
    let minor = r.select(&[0, 1, 2], &dep);
    let det = det_exact(&minor)?;
    if det.is_zero() {
        return Err(Error::SingularDependentSet(dep));
    }
    let independent: Vec<usize> = (0..s).filter(|i| !dep.contains(i)).collect();
    // D_dep = -minor⁻¹ · R_ind · D_ind, one independent column at a time
    let mut coeffs: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); 3];
    for &k in &independent {
        let col: Vec<BigInt> = r.col(k).into_iter().map(|x| -x).collect();
        let x = linalg::solve_rational(&minor, &col)?;
        for (t, xt) in x.into_iter().enumerate() {
            if !xt.is_zero() {
                coeffs[t].push((k, xt));
            }
        }
    }
    let relations = dep
        .iter()
        .zip(coeffs)
        .map(|(&lhs, rhs)| Relation { lhs, rhs })
        .collect();
    Ok(DivisorBasis {
        dependent: dep,
        independent,
        relations,
        index: det.abs(),
    })
}

/// Whether the relation holds in the divisor class group, i.e. its
/// coefficient vector is `((m, v₁), …, (m, v_s))` for some integral `m`.
pub fn verify_relation(set: &OneSimplexSet, rel: &Relation) -> bool {
    let Some(a) = rel.combination(set.len()) else {
        return false;
    };
    let (h, _) = hnf(&set.relation_matrix());
    in_row_span(&h, &a)
}

/// Parses 1-based indices like `"1,4,5"` into 0-based ones.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(|| Error::Parse(format!("bad divisor index {t:?}")))
        })
        .collect()
}

/// All increasing index triples below `n`, in lexicographic order.
fn combinations3(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q12_dual_vectors() -> Vec<Point3> {
        vec![[1, 1, -2], [1, -2, 1], [2, -3, 2], [-1, 0, 1], [-1, 0, 0], [1, 0, -1], [1, -1, 0]]
    }

    fn q12_dual_set() -> OneSimplexSet {
        // Δ* of the Q12 pair is the hull of the 19-point list; its fan rays
        // are the 7 v-vectors
        let m: Vec<Point3> = vec![
            [1, 2, 2], [0, 1, 1], [-8, -11, -9], [1, -2, 0], [1, 1, 0], [-4, -5, -4],
            [-7, -10, -8], [-6, -9, -7], [-5, -8, -6], [-4, -7, -5], [-3, -6, -4],
            [-2, -5, -3], [-1, -4, -2], [0, -3, -1], [1, 0, 1], [-5, -7, -6], [-2, -3, -3],
            [1, -1, 0], [1, 0, 0],
        ];
        let p = Polytope3::hull(&m).unwrap();
        one_simplices(&p).unwrap().reordered(&q12_dual_vectors()).unwrap()
    }

    #[test]
    fn cube_fan_is_octahedron_vertices() {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push([x, y, z]);
                }
            }
        }
        let s = one_simplices(&Polytope3::hull(&pts).unwrap()).unwrap();
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn projective_space_single_class() {
        // fan of P³: the simplex with vertices e1, e2, e3, -e1-e2-e3 is Δ*,
        // so Δ is its polar dual
        let dual = Polytope3::hull(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]).unwrap();
        let delta = dual.polar_dual().unwrap();
        let s = one_simplices(&delta).unwrap();
        assert_eq!(s.len(), 4);
        let b = divisor_relations(&s).unwrap();
        assert_eq!(b.independent.len(), 1);
        assert!(b.is_unimodular());
        // each dependent divisor is equivalent to the independent one
        for r in &b.relations {
            assert_eq!(r.rhs, vec![(b.independent[0], BigRational::one())]);
            assert!(verify_relation(&s, r));
        }
    }

    #[test]
    fn published_q12_dual_relations() {
        let s = q12_dual_set();
        // D'1 ~ 2D'2 + 3D'3 + D'7 ; D'4 ~ 3D'2 + 4D'3 + D'6 + 2D'7 ; D'5 ~ D'3
        let rels = [
            Relation::integral(0, &[(1, 2), (2, 3), (6, 1)]),
            Relation::integral(3, &[(1, 3), (2, 4), (5, 1), (6, 2)]),
            Relation::integral(4, &[(2, 1)]),
        ];
        for r in &rels {
            assert!(verify_relation(&s, r), "{r}");
        }
        assert!(!verify_relation(&s, &Relation::integral(4, &[(1, 1)])));
        let b = divisor_relations_with(&s, &[0, 3, 4]).unwrap();
        assert_eq!(b.independent, vec![1, 2, 5, 6]);
        assert!(b.is_unimodular());
        assert_eq!(b.relations, rels.to_vec());
    }

    #[test]
    fn empty_relation_on_trivial_system() {
        let s = q12_dual_set();
        let r = Relation { lhs: 0, rhs: vec![(0, BigRational::one())] };
        assert!(verify_relation(&s, &r));
    }

    #[test]
    fn bad_dependent_sets() {
        let s = q12_dual_set();
        assert_eq!(divisor_relations_with(&s, &[0, 1, 9]).unwrap_err(), Error::BadIndex(9));
        assert!(matches!(
            divisor_relations_with(&s, &[0, 0, 1]),
            Err(Error::SingularDependentSet(_))
        ));
        // v4 = (-1,0,1), v5 = (-1,0,0), v6 = (1,0,-1): v4 = -v6, singular
        assert!(matches!(
            divisor_relations_with(&s, &[3, 4, 5]),
            Err(Error::SingularDependentSet(_))
        ));
    }

    #[test]
    fn relation_display() {
        let r = Relation::integral(0, &[(1, 2), (2, -3), (6, 1)]);
        assert_eq!(r.to_string(), "D1 ~ 2D2 - 3D3 + D7");
        assert_eq!(parse_index_list("1, 4,5").unwrap(), vec![0, 3, 4]);
        assert!(parse_index_list("0,1,2").is_err());
    }

    #[test]
    fn reorder_rejects_other_sets() {
        let s = q12_dual_set();
        let mut v = q12_dual_vectors();
        v[0] = [5, 5, 5];
        assert!(matches!(s.reordered(&v), Err(Error::SetMismatch(_))));
    }
}
