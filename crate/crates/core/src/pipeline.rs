//! The built-in dataset of six polar-dual polytope pairs, one-sided and
//! paired analysis reports, and unimodular isometries between polytopes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{
    embed_named, gram_of, identify, invariants, mirror_check, orthogonal_complement, Invariants, MirrorCheck,
    NamedLattice, Tier, Verdict, DEFAULT_SEARCH_BOUND,
};
use crate::error::{Error, Result};
use crate::linalg::{det_exact, format_rational, solve_rational, IntMatrix};
use crate::picard::{
    annihilates_principal, intersection_matrix, primitive_by_squarefree, rk_l0, GramLattice, L0Report,
};
use crate::polytope::{Point3, Polytope3};
use crate::toric::{divisor_relations, divisor_relations_with, one_simplices, DivisorBasis, OneSimplexSet};

/// Values every computation on a case is compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub s: usize,
    pub s_dual: usize,
    pub rk_l0: usize,
    pub rho: usize,
    pub rho_dual: usize,
    pub det: i64,
    pub det_dual: i64,
    pub pic: NamedLattice,
    pub pic_dual: NamedLattice,
    /// `X` with `Pic(Δ*) = U ⊕ X`.
    pub pic_dual_tail: NamedLattice,
}

/// A published point that is not on an edge, with its replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    /// 0-based position in the one-simplex list of Δ.
    pub index: usize,
    pub printed: Point3,
    pub corrected: Point3,
}

/// Integral combination of divisors, 1-based: `[(i, c), …]` is `Σ c·D_i`.
pub type Combination = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasePair {
    pub name: String,
    pub key: String,
    /// One-simplices of Δ: the edge lattice points of Δ*.
    pub delta_vectors: Vec<Point3>,
    /// One-simplices of Δ*: the edge lattice points of Δ.
    pub dual_vectors: Vec<Point3>,
    pub expected: Expected,
    /// Published dependent triples (Δ side, Δ* side), 1-based.
    pub dependent_sets: ([usize; 3], [usize; 3]),
    /// Published change of generators on the Δ* side.
    pub dual_retake: Option<Vec<Combination>>,
    pub erratum: Option<Erratum>,
}

impl CasePair {
    /// The one-simplex list of Δ with any erratum applied.
    pub fn corrected_delta_vectors(&self) -> Vec<Point3> {
        let mut v = self.delta_vectors.clone();
        if let Some(e) = &self.erratum {
            v[e.index] = e.corrected;
        }
        v
    }

    /// Δ as the hull of the edge points of Δ (every vertex is one of them).
    pub fn delta(&self) -> Result<Polytope3> {
        Ok(Polytope3::hull(&self.dual_vectors)?.with_name(format!("{} delta", self.key)))
    }

    pub fn delta_dual(&self) -> Result<Polytope3> {
        Ok(Polytope3::hull(&self.delta_vectors)?.with_name(format!("{} delta*", self.key)))
    }
}

fn named(s: &str) -> NamedLattice {
    s.parse().expect("built-in lattice names parse")
}

#[allow(clippy::too_many_arguments)]
fn case(
    name: &str,
    m: &[Point3],
    v: &[Point3],
    (s, s_dual, rho, rho_dual): (usize, usize, usize, usize),
    (det, det_dual): (i64, i64),
    (pic, pic_dual, tail): (&str, &str, &str),
    deps: ([usize; 3], [usize; 3]),
    retake: Option<Vec<Combination>>,
) -> CasePair {
    CasePair {
        name: name.to_string(),
        key: name.split('/').next().unwrap_or(name).to_string(),
        delta_vectors: m.to_vec(),
        dual_vectors: v.to_vec(),
        expected: Expected {
            s,
            s_dual,
            rk_l0: 0,
            rho,
            rho_dual,
            det,
            det_dual,
            pic: named(pic),
            pic_dual: named(pic_dual),
            pic_dual_tail: named(tail),
        },
        dependent_sets: deps,
        dual_retake: retake,
        erratum: None,
    }
}

/// The six pairs, lists in their published order.
pub fn dataset() -> Vec<CasePair> {
    let q12 = case(
        "Q12/E18",
        &[
            [1, 2, 2], [0, 1, 1], [-8, -11, -9], [1, -2, 0], [1, 1, 0], [-4, -5, -4], [-7, -10, -8],
            [-6, -9, -7], [-5, -8, -6], [-4, -7, -5], [-3, -6, -4], [-2, -5, -3], [-1, -4, -2],
            [0, -3, -1], [1, 0, 1], [-5, -7, -6], [-2, -3, -3], [1, -1, 0], [1, 0, 0],
        ],
        &[[1, 1, -2], [1, -2, 1], [2, -3, 2], [-1, 0, 1], [-1, 0, 0], [1, 0, -1], [1, -1, 0]],
        (19, 7, 16, 4),
        (-3, -3),
        ("U+E6+E8", "U+A2", "A2"),
        ([1, 2, 6], [1, 4, 5]),
        Some(vec![vec![(2, 1), (3, 1)], vec![(3, 1)], vec![(6, 1)], vec![(3, 1), (7, 1)]]),
    );
    let z10 = case(
        "Z10/E19",
        &[
            [1, -1, 2], [0, -1, 1], [0, 0, 1], [4, 2, -1], [-6, 2, -11], [2, 0, 1], [3, 1, 0],
            [-2, 0, -3], [-4, 1, -7], [2, 1, 0], [-3, 1, -5], [3, 2, -2], [2, 2, -3], [1, 2, -4],
            [0, 2, -5], [-1, 2, -6], [-2, 2, -7], [-3, 2, -8], [-4, 2, -9], [-5, 2, -10],
        ],
        &[[1, -3, -1], [2, 0, -1], [1, 0, -1], [0, -1, -1], [-1, 2, 1], [0, 1, 0]],
        (20, 6, 17, 3),
        (2, 2),
        ("U+E7+E8", "U+A1", "A1"),
        ([1, 2, 3], [1, 2, 5]),
        Some(vec![vec![(3, 1), (4, 1)], vec![(4, 1)], vec![(6, 1), (4, -1)]]),
    );
    let e20 = case(
        "E20/E20",
        &[
            [-1, -1, 2], [-1, -1, -1], [-1, 11, 2], [1, -1, 0], [-1, -1, 1], [-1, -1, 0], [-1, 3, 0],
            [-1, 7, 1], [0, -1, 1], [0, 5, 1], [-1, 0, 2], [-1, 1, 2], [-1, 2, 2], [-1, 3, 2],
            [-1, 4, 2], [-1, 5, 2], [-1, 6, 2], [-1, 7, 2], [-1, 8, 2], [-1, 9, 2], [-1, 10, 2],
        ],
        &[[0, 1, 0], [1, 0, 0], [-1, 0, -1], [-2, -1, 4], [-1, 0, 2]],
        (21, 5, 18, 2),
        (-1, -1),
        ("U+E8+E8", "U", "0"),
        ([10, 13, 14], [1, 2, 3]),
        None,
    );
    let q20 = case(
        "Q20/Z17",
        &[
            [0, 1, 1], [1, 2, 2], [1, 1, 2], [0, -1, 0], [-6, -7, -9], [1, 0, -2], [1, 0, 1],
            [1, 1, 0], [-2, -3, -3], [-4, -5, -6], [1, 0, -1], [1, 0, 0], [-5, -6, -8], [-4, -5, -7],
            [-3, -4, -6], [-2, -3, -5], [-1, -2, -4], [0, -1, -3], [-3, -3, -4],
        ],
        &[[1, -2, 1], [-1, 1, 0], [2, 1, -2], [1, 0, -1], [0, 1, -1], [-1, 0, 0], [1, -1, 0]],
        (19, 7, 16, 4),
        (-7, -7),
        ("U+A6+E8", "U+C86", "C86"),
        ([1, 2, 3], [1, 2, 6]),
        Some(vec![
            vec![(3, 1)],
            vec![(3, 1), (4, 1)],
            vec![(3, 2), (4, 1), (5, -1)],
            vec![(7, 1), (3, -1)],
        ]),
    );
    let e25 = case(
        "E25/Z19",
        &[
            [-1, 2, 0], [-1, -1, 9], [-1, -1, -1], [-1, 2, -1], [1, -1, -1], [-1, 1, 3], [-1, 0, 6],
            [-1, -1, 8], [-1, -1, 7], [-1, -1, 6], [-1, -1, 5], [-1, -1, 4], [-1, -1, 3], [-1, -1, 2],
            [-1, -1, 1], [-1, -1, 0], [-1, 0, -1], [-1, 1, -1], [0, -1, 4], [0, -1, -1],
        ],
        &[[0, 1, 0], [0, 0, 1], [-3, -2, 0], [-5, -3, -1], [1, 0, 0], [-1, -1, 0]],
        (20, 6, 17, 3),
        (2, 2),
        ("U+E7+E8", "U+A1", "A1"),
        ([1, 4, 5], [1, 2, 3]),
        Some(vec![vec![(4, 1)], vec![(5, 1), (4, -8)], vec![(6, 1), (4, -1)]]),
    );
    let mut q18 = case(
        "Q18/E30",
        &[
            [1, -1, -1], [-1, -1, -1], [-1, -1, 8], [1, -1, 0], [-1, 2, -1], [0, -1, -1], [-1, -1, 0],
            [-1, -1, 1], [-1, -1, 2], [-1, -1, 3], [-1, -1, 4], [-1, -1, 5], [-1, -1, 6], [-1, -1, 7],
            [0, -1, 4], [-1, 0, -1], [-1, 1, -1], [-1, 0, 5], [-1, 0, 2],
        ],
        &[[0, 0, 1], [1, 0, 0], [-4, -3, -1], [-3, -2, 0], [0, 1, 0], [-2, -1, 0], [-1, 0, 0]],
        (19, 7, 16, 4),
        (-3, -3),
        ("U+E6+E8", "U+A2", "A2"),
        ([1, 4, 5], [1, 2, 5]),
        Some(vec![vec![(3, 1)], vec![(4, 1), (3, 1)], vec![(6, 1), (3, -1)], vec![(7, 1)]]),
    );
    q18.erratum = Some(Erratum {
        index: 18,
        printed: [-1, 0, 2],
        corrected: [-1, 1, 2],
    });
    vec![q12, z10, e20, q20, e25, q18]
}

pub fn find_case(name: &str) -> Option<CasePair> {
    let want = name.to_ascii_lowercase().replace(['_', ','], "");
    dataset().into_iter().find(|c| {
        c.name.to_ascii_lowercase() == want || c.key.to_ascii_lowercase() == want
    })
}

/// Restricted-divisor lattice of one side.
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub basis: DivisorBasis,
    pub lattice: GramLattice,
    pub invariants: Invariants,
    pub primitive: bool,
}

#[derive(Clone, Debug)]
pub struct SideReport {
    pub polytope: Polytope3,
    pub one_simplices: OneSimplexSet,
    pub l0: L0Report,
    pub rho: usize,
    /// Present when rk L₀ = 0.
    pub lattice: Option<LatticeReport>,
}

impl SideReport {
    pub fn s(&self) -> usize {
        self.one_simplices.len()
    }
}

/// One-sided report with the default divisor basis.
pub fn analyze(p: &Polytope3) -> Result<SideReport> {
    let set = one_simplices(p)?;
    analyze_with(p, set, None)
}

/// One-sided report with the one-simplices in a given order and an optional
/// dependent set (0-based in that order).
pub fn analyze_with(p: &Polytope3, set: OneSimplexSet, dependent: Option<&[usize]>) -> Result<SideReport> {
    let l0 = rk_l0(p)?;
    let rho = set.len() - 3 + l0.total;
    let lattice = if l0.total == 0 {
        let basis = match dependent {
            Some(d) => divisor_relations_with(&set, d)?,
            None => divisor_relations(&set)?,
        };
        let full = intersection_matrix(&set)?;
        let lattice = GramLattice::new(full.select(&basis.independent, &basis.independent))?;
        Some(LatticeReport {
            invariants: invariants(&lattice),
            primitive: primitive_by_squarefree(&lattice) && lattice.is_hyperbolic(),
            basis,
            lattice,
        })
    } else {
        None
    };
    Ok(SideReport {
        polytope: p.clone(),
        one_simplices: set,
        l0,
        rho,
        lattice,
    })
}

#[derive(Clone, Debug)]
pub struct MirrorReport {
    pub case: String,
    /// Absent when the computation failed before the analysis.
    pub delta: Option<SideReport>,
    pub dual: Option<SideReport>,
    pub duality: bool,
    pub sum_check: bool,
    /// `Pic(Δ)` against `U ⊕ Pic(Δ*)`.
    pub mirror: Option<MirrorCheck>,
    /// `Pic(Δ*)` against `U ⊕ Pic(Δ)`.
    pub mirror_reverse: Option<MirrorCheck>,
    pub dual_identification: Option<Verdict>,
    pub delta_identification: Option<Verdict>,
    /// Complement of `U ⊕ U ⊕ X` in the K3 lattice.
    pub complement: Option<Invariants>,
    pub complement_matches: bool,
    /// Determinants with the published dependent sets, and the index of
    /// their span.
    pub paper_basis_dets: Option<((BigInt, BigInt), (BigInt, BigInt))>,
    pub retake_gram: Option<IntMatrix>,
    pub notes: Vec<String>,
    pub discrepancies: Vec<String>,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn det_of(side: &SideReport) -> Option<BigInt> {
    side.lattice.as_ref().map(|l| l.lattice.det().clone())
}

/// Gram of integral combinations under a full intersection matrix.
pub fn combination_gram(full: &IntMatrix, combos: &[Combination]) -> Result<IntMatrix> {
    let s = full.rows();
    let mut w = IntMatrix::zeros(combos.len(), s);
    for (k, c) in combos.iter().enumerate() {
        for &(i, x) in c {
            if i == 0 || i > s {
                return Err(Error::BadIndex(i));
            }
            w[(k, i - 1)] += BigInt::from(x);
        }
    }
    Ok(full.congruent(&w.transpose()))
}

pub fn verify_pair(c: &CasePair) -> MirrorReport {
    verify_pair_inner(c).unwrap_or_else(|e| MirrorReport {
        case: c.name.clone(),
        delta: None,
        dual: None,
        duality: false,
        sum_check: false,
        mirror: None,
        mirror_reverse: None,
        dual_identification: None,
        delta_identification: None,
        complement: None,
        complement_matches: false,
        paper_basis_dets: None,
        retake_gram: None,
        notes: Vec::new(),
        discrepancies: vec![format!("computation failed: {e}")],
    })
}

fn verify_pair_inner(c: &CasePair) -> Result<MirrorReport> {
    let e = &c.expected;
    let mut notes = Vec::new();
    let mut bad = Vec::new();

    let delta = c.delta()?;
    let dual = c.delta_dual()?;
    let duality = delta.polar_dual().map(|d| d == dual).unwrap_or(false)
        && dual.polar_dual().map(|d| d == delta).unwrap_or(false);
    if !duality {
        bad.push("hulls of the two lists are not polar dual".into());
    }

    if let Some(er) = &c.erratum {
        notes.push(format!(
            "listed point {} {:?} is not an edge point; using {:?}",
            er.index + 1,
            er.printed,
            er.corrected
        ));
    }
    let delta_list = c.corrected_delta_vectors();
    let set = one_simplices(&delta)?;
    let set = match set.reordered(&delta_list) {
        Ok(s) => s,
        Err(err) => {
            bad.push(format!("one-simplices of delta differ from the list: {err}"));
            set
        }
    };
    let dual_set = one_simplices(&dual)?;
    let dual_set = match dual_set.reordered(&c.dual_vectors) {
        Ok(s) => s,
        Err(err) => {
            bad.push(format!("one-simplices of delta* differ from the list: {err}"));
            dual_set
        }
    };

    let d_side = analyze_with(&delta, set.clone(), None)?;
    let s_side = analyze_with(&dual, dual_set.clone(), None)?;

    let mut check = |what: &str, got: String, want: String| {
        if got != want {
            bad.push(format!("{what}: computed {got}, expected {want}"));
        }
    };
    check("s", d_side.s().to_string(), e.s.to_string());
    check("s*", s_side.s().to_string(), e.s_dual.to_string());
    check("rk L0", d_side.l0.total.to_string(), e.rk_l0.to_string());
    check("rk L0 of delta*", s_side.l0.total.to_string(), e.rk_l0.to_string());
    check("rho", d_side.rho.to_string(), e.rho.to_string());
    check("rho*", s_side.rho.to_string(), e.rho_dual.to_string());
    let fmt_det = |d: Option<BigInt>| d.map_or("none".to_string(), |x| x.to_string());
    check("det", fmt_det(det_of(&d_side)), e.det.to_string());
    check("det*", fmt_det(det_of(&s_side)), e.det_dual.to_string());

    let sum_check = d_side.rho + s_side.rho == 20 + d_side.l0.total;
    if !sum_check {
        bad.push("rho + rho* != 20 + rk L0".into());
    }

    let mut mirror = None;
    let mut mirror_reverse = None;
    let mut dual_identification = None;
    let mut delta_identification = None;
    let mut complement = None;
    let mut complement_matches = false;
    let mut paper_basis_dets = None;
    let mut retake_gram = None;

    if let (Some(pic), Some(pic_dual)) = (&d_side.lattice, &s_side.lattice) {
        for (name, side) in [("delta", pic), ("delta*", pic_dual)] {
            if !side.primitive {
                bad.push(format!("primitivity of the {name} lattice not established"));
            }
        }
        let u = gram_of(&named("U"));
        let m = mirror_check(&pic.lattice, &u.direct_sum(&pic_dual.lattice));
        let mr = mirror_check(&pic_dual.lattice, &u.direct_sum(&pic.lattice));
        if !m.holds() {
            bad.push(format!("mirror criterion fails: {m:?}"));
        }
        if m.holds() != mr.holds() {
            bad.push("mirror criterion is not symmetric".into());
        }
        mirror = Some(m);
        mirror_reverse = Some(mr);

        let vd = identify(&pic_dual.lattice, std::slice::from_ref(&e.pic_dual), DEFAULT_SEARCH_BOUND)
            .remove(0);
        if vd.tier != Tier::Congruence {
            bad.push(format!("Pic(delta*) vs {}: {}", e.pic_dual, vd.tier));
        }
        dual_identification = Some(vd);
        let vp = identify(&pic.lattice, std::slice::from_ref(&e.pic), DEFAULT_SEARCH_BOUND).remove(0);
        if vp.tier < Tier::Invariants {
            bad.push(format!("Pic(delta) vs {}: {}", e.pic, vp.tier));
        }
        delta_identification = Some(vp);

        let sub = named("U+U").plus(&e.pic_dual_tail);
        match embed_named(&NamedLattice::k3(), &sub).and_then(|w| orthogonal_complement(&w)) {
            Ok(cl) => {
                let ci = invariants(&cl);
                complement_matches = ci == invariants(&gram_of(&e.pic)) && ci == pic.invariants;
                if !complement_matches {
                    bad.push(format!("complement of {sub} in K3 does not match Pic(delta)"));
                }
                complement = Some(ci);
            }
            Err(err) => bad.push(format!("embedding {sub} into K3 failed: {err}")),
        }

        // published dependent sets, with the determinant scaling by index²
        let (pd, ps) = c.dependent_sets;
        let zero_based = |t: [usize; 3]| t.map(|i| i - 1);
        let paper = analyze_with(&delta, set.clone(), Some(&zero_based(pd)))
            .and_then(|a| Ok((a, analyze_with(&dual, dual_set.clone(), Some(&zero_based(ps)))?)));
        match paper {
            Ok((a, b)) => {
                let (la, lb) = (a.lattice.expect("rk L0 = 0"), b.lattice.expect("rk L0 = 0"));
                for (name, l, dflt) in [("delta", &la, pic), ("delta*", &lb, pic_dual)] {
                    let scaled = &l.basis.index * &l.basis.index * dflt.lattice.det();
                    if *l.lattice.det() != scaled {
                        bad.push(format!("published basis on {name} side: det {} is not index² · {}", l.lattice.det(), dflt.lattice.det()));
                    }
                    if !l.basis.is_unimodular() {
                        notes.push(format!(
                            "published dependent set on the {name} side has index {} (det {})",
                            l.basis.index,
                            l.lattice.det()
                        ));
                    }
                }
                paper_basis_dets = Some((
                    (la.lattice.det().clone(), la.basis.index.clone()),
                    (lb.lattice.det().clone(), lb.basis.index.clone()),
                ));
            }
            Err(err) => bad.push(format!("published dependent sets: {err}")),
        }

        if let Some(rt) = &c.dual_retake {
            match intersection_matrix(&dual_set).and_then(|f| combination_gram(&f, rt)) {
                Ok(g) => {
                    if g != e.pic_dual.gram_matrix() {
                        notes.push(format!("published change of generators gives {:?}, not {}", g.to_i64_rows().unwrap_or_default(), e.pic_dual));
                    }
                    retake_gram = Some(g);
                }
                Err(err) => notes.push(format!("published change of generators not applicable: {err}")),
            }
        }

        for (name, st) in [("delta", &set), ("delta*", &dual_set)] {
            let full = intersection_matrix(st)?;
            if !annihilates_principal(st, &full) {
                bad.push(format!("{name} intersection matrix does not kill principal divisors"));
            }
        }
    } else {
        bad.push("no lattice computed (rk L0 > 0)".into());
    }

    Ok(MirrorReport {
        case: c.name.clone(),
        delta: Some(d_side),
        dual: Some(s_side),
        duality,
        sum_check,
        mirror,
        mirror_reverse,
        dual_identification,
        delta_identification,
        complement,
        complement_matches,
        paper_basis_dets,
        retake_gram,
        notes,
        discrepancies: bad,
    })
}

/// Pair report for arbitrary polytopes, without expected values. `dual`
/// defaults to the polar dual of `delta`.
pub fn pair_report(delta: &Polytope3, dual: Option<&Polytope3>) -> Result<MirrorReport> {
    let computed = delta.polar_dual()?;
    let dual = dual.unwrap_or(&computed);
    let duality = computed == *dual;
    let d_side = analyze(delta)?;
    let s_side = analyze(dual)?;
    let mut bad = Vec::new();
    if !duality {
        bad.push("second polytope is not the polar dual of the first".to_string());
    }
    let sum_check = d_side.rho + s_side.rho == 20 + d_side.l0.total;
    if !sum_check {
        bad.push("rho + rho* != 20 + rk L0".into());
    }
    let (mut mirror, mut mirror_reverse) = (None, None);
    match (&d_side.lattice, &s_side.lattice) {
        (Some(a), Some(b)) => {
            let u = gram_of(&named("U"));
            let m = mirror_check(&a.lattice, &u.direct_sum(&b.lattice));
            if !m.holds() {
                bad.push(format!("mirror criterion fails: {m:?}"));
            }
            mirror_reverse = Some(mirror_check(&b.lattice, &u.direct_sum(&a.lattice)));
            mirror = Some(m);
        }
        _ => bad.push(format!("rk L0 = {}: no lattices to compare", d_side.l0.total)),
    }
    let name = |p: &Polytope3| p.name().unwrap_or("polytope").to_string();
    Ok(MirrorReport {
        case: format!("{}/{}", name(delta), name(dual)),
        delta: Some(d_side),
        dual: Some(s_side),
        duality,
        sum_check,
        mirror,
        mirror_reverse,
        dual_identification: None,
        delta_identification: None,
        complement: None,
        complement_matches: false,
        paper_basis_dets: None,
        retake_gram: None,
        notes: Vec::new(),
        discrepancies: bad,
    })
}

/// Verifies all cases in parallel, reports in dataset order.
pub fn verify_all(cases: &[CasePair]) -> Vec<MirrorReport> {
    cases.par_iter().map(verify_pair).collect()
}

/// Whether `x ↦ x·M` maps the vertices of `a` bijectively onto those of `b`.
pub fn polytope_isometry_check(a: &Polytope3, b: &Polytope3, m: &IntMatrix) -> Result<bool> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Dimension(format!("{}x{} matrix", m.rows(), m.cols())));
    }
    let d = det_exact(m)?;
    if !d.abs().is_one() {
        return Err(Error::NotUnimodular(d.to_string()));
    }
    let rows = m.to_i64_rows().ok_or_else(|| Error::NotUnimodular("entries too large".into()))?;
    let mm = [
        [rows[0][0], rows[0][1], rows[0][2]],
        [rows[1][0], rows[1][1], rows[1][2]],
        [rows[2][0], rows[2][1], rows[2][2]],
    ];
    let mut image = a.transformed_vertices(&mm);
    image.sort_unstable();
    Ok(image == b.vertices())
}

/// Searches for `M ∈ GL₃(Z)` with `vert(a)·M = vert(b)`: a fixed independent
/// vertex triple of `a` is sent to every ordered independent vertex triple
/// of `b` in turn.
pub fn polytope_isometry_search(a: &Polytope3, b: &Polytope3) -> Option<IntMatrix> {
    if a.vertices().len() != b.vertices().len() || a.lattice_points().len() != b.lattice_points().len() {
        return None;
    }
    let va = a.vertices();
    let vb = b.vertices();
    let n = va.len();
    let triple = |v: &[Point3], i: usize, j: usize, k: usize| {
        IntMatrix::from_rows(&[v[i].to_vec(), v[j].to_vec(), v[k].to_vec()]).expect("3x3")
    };
    let base = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .map(|(i, j, k)| triple(va, i, j, k))
        .find(|t| !det_exact(t).expect("square").is_zero())?;
    let base_det = det_exact(&base).expect("square");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let target = triple(vb, i, j, k);
                let td = det_exact(&target).expect("square");
                if td.abs() != base_det.abs() {
                    continue;
                }
                // base · M = target, solved column by column
                let mut m = IntMatrix::zeros(3, 3);
                let mut integral = true;
                for c in 0..3 {
                    let x = solve_rational(&base, &target.col(c)).expect("nonsingular");
                    for (r, xr) in x.into_iter().enumerate() {
                        if !xr.is_integer() {
                            integral = false;
                        }
                        m[(r, c)] = xr.to_integer();
                    }
                }
                if integral && polytope_isometry_check(a, b, &m).unwrap_or(false) {
                    return Some(m);
                }
            }
        }
    }
    None
}

/// `[[-1,0,1],[1,1,-2],[2,-3,2]]`, sending Δ of Q18 onto Δ of Q12.
pub fn isometry_q18_q12() -> IntMatrix {
    IntMatrix::from_rows(&[[-1, 0, 1], [1, 1, -2], [2, -3, 2]]).expect("3x3")
}

/// `[[-1,2,1],[1,-3,-1],[2,0,-1]]`, sending Δ of E25 onto Δ of Z10.
pub fn isometry_e25_z10() -> IntMatrix {
    IntMatrix::from_rows(&[[-1, 2, 1], [1, -3, -1], [2, 0, -1]]).expect("3x3")
}

fn opt_det(s: Option<&SideReport>) -> String {
    s.and_then(det_of).map_or("-".into(), |d| d.to_string())
}

fn opt_count(s: Option<&SideReport>, f: impl Fn(&SideReport) -> usize) -> String {
    s.map_or("-".into(), |s| f(s).to_string())
}

fn tier_label(v: &Option<Verdict>) -> String {
    v.as_ref().map_or("-".into(), |v| v.tier.to_string())
}

/// Plain-text one-sided report.
pub fn render_side(s: &SideReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", s.polytope);
    let _ = writeln!(out, "s = {}", s.s());
    let _ = writeln!(out, "rk L0 = {}", s.l0.total);
    for c in s.l0.contributions.iter().filter(|c| c.product() > 0) {
        let _ = writeln!(
            out,
            "  edge {:?}-{:?}: l* = {}, dual edge {:?}-{:?}: l* = {}",
            c.edge[0], c.edge[1], c.lstar, c.dual_edge[0], c.dual_edge[1], c.lstar_dual
        );
    }
    let _ = writeln!(out, "rho = {}", s.rho);
    match &s.lattice {
        Some(l) => {
            let dep: Vec<String> = l.basis.dependent.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(out, "dependent divisors = {{{}}} (index {})", dep.join(","), l.basis.index);
            for r in &l.basis.relations {
                let _ = writeln!(out, "  {r}");
            }
            let _ = write!(out, "gram =\n{}", l.lattice.gram());
            let i = &l.invariants;
            let _ = writeln!(out, "det = {}", l.lattice.det());
            let _ = writeln!(out, "signature = ({}, {})", i.signature.0, i.signature.1);
            let f: Vec<String> = i.invariant_factors.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "discriminant group = [{}]", f.join(", "));
            if let Some(q) = &i.q_multiset {
                let q: Vec<String> = q.iter().map(format_rational).collect();
                let _ = writeln!(out, "q values = [{}]", q.join(", "));
            }
            let _ = writeln!(out, "primitive = {}", l.primitive);
        }
        None => {
            let _ = writeln!(out, "no intersection matrix (rk L0 > 0)");
        }
    }
    out
}

/// Aligned summary table, one row per case.
pub fn render_table(reports: &[MirrorReport]) -> String {
    let header = [
        "case", "s", "s*", "rkL0", "rho", "rho*", "det", "det*", "Pic(delta*)", "ident*", "Pic(delta)", "mirror",
        "status",
    ];
    let cases = dataset();
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in reports {
        let exp = cases.iter().find(|c| c.name == r.case).map(|c| c.expected.clone());
        rows.push(vec![
            r.case.clone(),
            opt_count(r.delta.as_ref(), SideReport::s),
            opt_count(r.dual.as_ref(), SideReport::s),
            opt_count(r.delta.as_ref(), |s| s.l0.total),
            opt_count(r.delta.as_ref(), |s| s.rho),
            opt_count(r.dual.as_ref(), |s| s.rho),
            opt_det(r.delta.as_ref()),
            opt_det(r.dual.as_ref()),
            exp.as_ref().map_or("-".into(), |e| e.pic_dual.to_string()),
            tier_label(&r.dual_identification),
            exp.as_ref().map_or("-".into(), |e| e.pic.to_string()),
            r.mirror.as_ref().map_or("-".into(), |m| if m.holds() { "yes" } else { "no" }.into()),
            if r.passed() { "ok" } else { "MISMATCH" }.into(),
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(x, w)| format!("{x:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    for r in reports {
        for n in &r.notes {
            let _ = writeln!(out, "note {}: {n}", r.case);
        }
        for d in &r.discrepancies {
            let _ = writeln!(out, "mismatch {}: {d}", r.case);
        }
    }
    out
}

fn int_rows(m: &IntMatrix) -> Value {
    json!(m
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| json!(x.to_string().parse::<i64>().unwrap_or(0))).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn invariants_json(i: &Invariants) -> Value {
    json!({
        "rank": i.rank,
        "signature": [i.signature.0, i.signature.1],
        "abs_det": i.abs_det.to_string(),
        "invariant_factors": i.invariant_factors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "q_values": i.q_multiset.as_ref().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()),
    })
}

pub fn side_json(s: &SideReport) -> Value {
    let lattice = s.lattice.as_ref().map(|l| {
        json!({
            "dependent": l.basis.dependent.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "relations": l.basis.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "index": l.basis.index.to_string(),
            "gram": int_rows(l.lattice.gram()),
            "det": l.lattice.det().to_string(),
            "invariants": invariants_json(&l.invariants),
            "primitive": l.primitive,
        })
    });
    json!({
        "name": s.polytope.name(),
        "vertices": s.polytope.vertices(),
        "s": s.s(),
        "one_simplices": s.one_simplices.vectors(),
        "rk_l0": s.l0.total,
        "l0_edges": s.l0.contributions.iter().filter(|c| c.product() > 0).map(|c| json!({
            "edge": c.edge, "dual_edge": c.dual_edge, "lstar": c.lstar, "lstar_dual": c.lstar_dual,
        })).collect::<Vec<_>>(),
        "rho": s.rho,
        "lattice": lattice,
    })
}

fn verdict_json(v: &Option<Verdict>) -> Value {
    v.as_ref().map_or(Value::Null, |v| {
        json!({
            "candidate": v.candidate.to_string(),
            "tier": v.tier.to_string(),
            "witness": v.witness.as_ref().map(int_rows),
        })
    })
}

pub fn report_json(r: &MirrorReport) -> Value {
    json!({
        "case": r.case,
        "delta": r.delta.as_ref().map(side_json),
        "delta_dual": r.dual.as_ref().map(side_json),
        "polar_duality": r.duality,
        "sum_check": r.sum_check,
        "mirror": r.mirror.as_ref().map(|m| m.holds()),
        "mirror_reverse": r.mirror_reverse.as_ref().map(|m| m.holds()),
        "dual_identification": verdict_json(&r.dual_identification),
        "delta_identification": verdict_json(&r.delta_identification),
        "k3_complement": r.complement.as_ref().map(invariants_json),
        "k3_complement_matches": r.complement_matches,
        "retake_gram": r.retake_gram.as_ref().map(int_rows),
        "notes": r.notes,
        "discrepancies": r.discrepancies,
        "passed": r.passed(),
    })
}

pub fn dataset_json(c: &CasePair) -> Value {
    json!({
        "name": c.name,
        "delta_vectors": c.delta_vectors,
        "dual_vectors": c.dual_vectors,
        "erratum": c.erratum.as_ref().map(|e| json!({"index": e.index + 1, "printed": e.printed, "corrected": e.corrected})),
        "expected": {
            "s": c.expected.s, "s_dual": c.expected.s_dual, "rk_l0": c.expected.rk_l0,
            "rho": c.expected.rho, "rho_dual": c.expected.rho_dual,
            "det": c.expected.det, "det_dual": c.expected.det_dual,
            "pic": c.expected.pic.to_string(), "pic_dual": c.expected.pic_dual.to_string(),
        },
        "dependent_sets": [c.dependent_sets.0, c.dependent_sets.1],
    })
}
