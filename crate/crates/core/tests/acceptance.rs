//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL` line. All comparisons are exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use k3mirror_core::catalog::{
    embed_in_e8, embed_named, gram_of, identify, invariants, mirror_check, orthogonal_complement, roots_of,
    NamedLattice, Tier, DEFAULT_SEARCH_BOUND,
};
use k3mirror_core::linalg::{det_exact, hnf, is_saturated, snf, IntMatrix};
use k3mirror_core::picard::{intersection_matrix, picard_number, rk_l0, sum_check, EdgeContribution};
use k3mirror_core::pipeline::{
    analyze_with, dataset, isometry_e25_z10, isometry_q18_q12, polytope_isometry_check, polytope_isometry_search,
    CasePair,
};
use k3mirror_core::toric::{divisor_relations_with, one_simplices, verify_relation, Relation};
use k3mirror_core::{Point3, Polytope3};

fn report(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn lattice(s: &str) -> NamedLattice {
    s.parse().unwrap()
}

fn set_of(v: &[Point3]) -> BTreeSet<Point3> {
    v.iter().copied().collect()
}

fn find(name: &str) -> CasePair {
    dataset().into_iter().find(|c| c.key == name).unwrap()
}

/// Intersection matrix of the one-simplices in the published order.
fn published_full(c: &CasePair, delta_side: bool) -> (IntMatrix, k3mirror_core::OneSimplexSet) {
    let (p, list) = if delta_side {
        (c.delta().unwrap(), c.corrected_delta_vectors())
    } else {
        (c.delta_dual().unwrap(), c.dual_vectors.clone())
    };
    let set = one_simplices(&p).unwrap().reordered(&list).unwrap();
    (intersection_matrix(&set).unwrap(), set)
}

fn zero_based(t: [usize; 3]) -> [usize; 3] {
    t.map(|i| i - 1)
}

#[test]
fn criterion_01_polytope_reconstruction() {
    let mut failures = Vec::new();
    for c in dataset() {
        let delta = c.delta().unwrap();
        let dual = c.delta_dual().unwrap();
        if !delta.is_reflexive() || !dual.is_reflexive() {
            failures.push(format!("{}: not reflexive", c.name));
            continue;
        }
        let m = set_of(&delta.polar_dual().unwrap().edge_lattice_points());
        let v = set_of(&dual.polar_dual().unwrap().edge_lattice_points());
        let listed_m = set_of(&c.delta_vectors);
        if m != listed_m {
            let extra: Vec<_> = listed_m.difference(&m).collect();
            let missing: Vec<_> = m.difference(&listed_m).collect();
            failures.push(format!("{}: listed m not on edges {extra:?}, edge points not listed {missing:?}", c.name));
        }
        if v != set_of(&c.dual_vectors) {
            failures.push(format!("{}: v list differs", c.name));
        }
    }
    report(1, failures.is_empty(), &if failures.is_empty() { "all six pairs".into() } else { failures.join("; ") });
}

#[test]
fn criterion_02_rank_l0() {
    let mut ok = true;
    for c in dataset() {
        let a = rk_l0(&c.delta().unwrap()).unwrap().total;
        let b = rk_l0(&c.delta_dual().unwrap()).unwrap().total;
        ok &= a == 0 && b == 0;
    }
    let z13 = EdgeContribution::from_segments([[0, 0, 1], [-2, -6, -9]], [[8, -1, -1], [-1, 2, -1]]).unwrap();
    ok &= (z13.lstar, z13.lstar_dual, z13.product()) == (1, 2, 2);
    report(2, ok, "rk L0 = 0 on all twelve polytopes, Z13 edge gives 1x2 = 2");
}

#[test]
fn criterion_03_picard_numbers() {
    let want = [(19, 7, 16, 4), (20, 6, 17, 3), (21, 5, 18, 2), (19, 7, 16, 4), (20, 6, 17, 3), (19, 7, 16, 4)];
    let mut got = Vec::new();
    let mut sums = true;
    for c in dataset() {
        let d = c.delta().unwrap();
        let ds = c.delta_dual().unwrap();
        got.push((
            one_simplices(&d).unwrap().len(),
            one_simplices(&ds).unwrap().len(),
            picard_number(&d).unwrap(),
            picard_number(&ds).unwrap(),
        ));
        sums &= sum_check(&d).unwrap() && sum_check(&ds).unwrap();
    }
    report(3, got == want && sums, &format!("(s, s*, rho, rho*) = {got:?}, sum check {sums}"));
}

fn rel(lhs: usize, rhs: &[(usize, i64)]) -> Relation {
    // published relations are 1-based
    let r: Vec<(usize, i64)> = rhs.iter().map(|&(i, c)| (i - 1, c)).collect();
    Relation::integral(lhs - 1, &r)
}

#[test]
fn criterion_04_divisor_relations() {
    let q12 = find("Q12");
    let (_, delta_set) = published_full(&q12, true);
    let (_, dual_set) = published_full(&q12, false);
    let delta_rels = vec![
        rel(1, &[(4, -9), (5, 3), (7, -1), (8, -2), (9, -3), (10, -4), (11, -5), (12, -6), (13, -7), (14, -8), (15, -5), (16, 1), (17, 2), (18, -5), (19, -1)]),
        rel(2, &[(3, 1), (4, 10), (5, -2), (7, 2), (8, 3), (9, 4), (10, 5), (11, 6), (12, 7), (13, 8), (14, 9), (15, 5), (17, -1), (18, 6), (19, 2)]),
        rel(6, &[(3, -2), (4, -2), (5, 1), (7, -2), (8, -2), (9, -2), (10, -2), (11, -2), (12, -2), (13, -2), (14, -2), (15, -1), (16, -1), (18, -1)]),
    ];
    let dual_rels = vec![
        rel(1, &[(2, 2), (3, 3), (7, 1)]),
        rel(4, &[(2, 3), (3, 4), (6, 1), (7, 2)]),
        rel(5, &[(3, 1)]),
    ];
    let mut ok = delta_rels.iter().all(|r| verify_relation(&delta_set, r))
        && dual_rels.iter().all(|r| verify_relation(&dual_set, r));
    // the solver reproduces the published relations from the published sets
    ok &= divisor_relations_with(&delta_set, &zero_based([1, 2, 6])).unwrap().relations == delta_rels;
    ok &= divisor_relations_with(&dual_set, &zero_based([1, 4, 5])).unwrap().relations == dual_rels;
    // a perturbed relation is rejected
    ok &= !verify_relation(&dual_set, &rel(5, &[(2, 1)]));

    let mut full_rank = Vec::new();
    for c in dataset() {
        let (_, a) = published_full(&c, true);
        let (_, b) = published_full(&c, false);
        let (da, db) = c.dependent_sets;
        full_rank.push(
            divisor_relations_with(&a, &zero_based(da)).is_ok() && divisor_relations_with(&b, &zero_based(db)).is_ok(),
        );
    }
    ok &= full_rank.iter().all(|&x| x);
    report(4, ok, &format!("Q12 relations verified both sides; published dependent sets full rank {full_rank:?}"));
}

const Q12_DUAL_GRAM: [[i64; 4]; 4] = [[-2, 1, 0, 1], [1, 0, 0, 0], [0, 0, -2, 1], [1, 0, 1, -2]];

const Q12_GRAM: [[i64; 16]; 16] = [
    [-2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
    [1, 0, 0, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 1, -2, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 1],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2],
];

/// Whether `a = Pᵀ b P` for a permutation `P`, by backtracking on rows.
fn permutation_equivalent(a: &IntMatrix, b: &IntMatrix) -> bool {
    fn go(a: &IntMatrix, b: &IntMatrix, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        if k == a.rows() {
            return true;
        }
        for j in 0..b.rows() {
            if used[j] {
                continue;
            }
            if (0..k).all(|i| a[(i, k)] == b[(perm[i], j)]) && a[(k, k)] == b[(j, j)] {
                perm.push(j);
                used[j] = true;
                if go(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
        }
        false
    }
    a.rows() == b.rows() && go(a, b, &mut Vec::new(), &mut vec![false; b.rows()])
}

#[test]
fn criterion_05_gram_matrices() {
    let q12 = find("Q12");
    let (full_dual, _) = published_full(&q12, false);
    let dual = full_dual.select(&[1, 2, 5, 6], &[1, 2, 5, 6]);
    let mut ok = dual == IntMatrix::from_rows(&Q12_DUAL_GRAM).unwrap();

    let (full, _) = published_full(&q12, true);
    let basis: Vec<usize> = (0..19).filter(|i| ![0, 1, 5].contains(i)).collect();
    let g = full.select(&basis, &basis);
    let printed = IntMatrix::from_rows(&Q12_GRAM).unwrap();
    ok &= permutation_equivalent(&g, &printed);
    ok &= det_exact(&g).unwrap() == BigInt::from(-3) && det_exact(&printed).unwrap() == BigInt::from(-3);
    let exact_order = g == printed;

    let mut dets = Vec::new();
    for c in dataset() {
        let a = analyze_with(&c.delta().unwrap(), one_simplices(&c.delta().unwrap()).unwrap(), None).unwrap();
        let b = analyze_with(&c.delta_dual().unwrap(), one_simplices(&c.delta_dual().unwrap()).unwrap(), None).unwrap();
        let d = |s: &k3mirror_core::pipeline::SideReport| s.lattice.as_ref().unwrap().lattice.det().clone();
        dets.push((d(&a), d(&b)));
    }
    let want: Vec<(BigInt, BigInt)> = [-3, 2, -1, -7, 2, -3].iter().map(|&x| (BigInt::from(x), BigInt::from(x))).collect();
    ok &= dets == want;
    let shown: Vec<String> = dets.iter().map(|(a, b)| format!("{a}/{b}")).collect();
    report(5, ok, &format!("Q12 4x4 exact, 16x16 permutation-equivalent (identity order {exact_order}), dets {}", shown.join(" ")));
}

#[test]
fn criterion_06_identifications() {
    let names = ["U+A2", "U+A1", "U", "U+C86", "U+A1", "U+A2"];
    let mut tiers = Vec::new();
    let mut ok = true;
    for (c, name) in dataset().iter().zip(names) {
        let ds = c.delta_dual().unwrap();
        let side = analyze_with(&ds, one_simplices(&ds).unwrap(), None).unwrap();
        let l = side.lattice.unwrap().lattice;
        let target = lattice(name);
        let v = identify(&l, std::slice::from_ref(&target), DEFAULT_SEARCH_BOUND).remove(0);
        let witnessed = v
            .witness
            .as_ref()
            .map(|p| det_exact(p).unwrap().abs().is_one() && l.gram().congruent(p) == target.gram_matrix())
            .unwrap_or(false);
        ok &= v.tier == Tier::Congruence && witnessed;
        tiers.push(format!("{}:{}", c.key, v.tier));
    }
    report(6, ok, &tiers.join(" "));
}

#[test]
fn criterion_07_mirror_criterion() {
    let u = gram_of(&lattice("U"));
    let mut ok = true;
    for c in dataset() {
        let d = c.delta().unwrap();
        let ds = c.delta_dual().unwrap();
        let pic = analyze_with(&d, one_simplices(&d).unwrap(), None).unwrap().lattice.unwrap().lattice;
        let pic_dual = analyze_with(&ds, one_simplices(&ds).unwrap(), None).unwrap().lattice.unwrap().lattice;
        let m = mirror_check(&pic, &u.direct_sum(&pic_dual));
        ok &= m.factors_agree && m.forms_negated && m.signatures_complement;
    }
    report(7, ok, "factors agree, q multisets negated, signatures sum to (3,19) on all six pairs");
}

#[test]
fn criterion_08_k3_complements() {
    let subs = ["A2", "A1", "0", "C86", "A1", "A2"];
    let targets = ["U+E6+E8", "U+E7+E8", "U+E8+E8", "U+A6+E8", "U+E7+E8", "U+E6+E8"];
    let mut ok = true;
    for (x, t) in subs.iter().zip(targets) {
        let sub = lattice("U+U").plus(&lattice(x));
        let w = embed_named(&NamedLattice::k3(), &sub).unwrap();
        ok &= w.is_consistent();
        let c = orthogonal_complement(&w).unwrap();
        ok &= invariants(&c) == invariants(&gram_of(&lattice(t)));
    }
    report(8, ok, "complements of U+U+X in the K3 lattice match U+E6+E8, U+E7+E8, U+E8+E8, U+A6+E8 invariants");
}

#[test]
fn criterion_09_nishiyama_oracle() {
    let cases = [("A1", 2, 126, "E7"), ("A2", 3, 72, "E6"), ("A6", 7, 2, "C86")];
    let mut ok = true;
    let mut seen = Vec::new();
    for (sub, det, roots, target) in cases {
        let w = embed_in_e8(&lattice(sub)).unwrap();
        let c = orthogonal_complement(&w).unwrap();
        let r = roots_of(&c).unwrap().len();
        let ti = invariants(&gram_of(&lattice(target)));
        let ci = invariants(&c);
        ok &= w.is_primitive() && c.det().abs() == BigInt::from(det) && r == roots;
        ok &= ci.invariant_factors == ti.invariant_factors && ci.q_multiset == ti.q_multiset;
        seen.push(format!("{sub}: |det| {} roots {r}", c.det().abs()));
    }
    report(9, ok, &seen.join(", "));
}

#[test]
fn criterion_10_polytope_isometries() {
    let q12 = find("Q12").delta().unwrap();
    let q18 = find("Q18").delta().unwrap();
    let z10 = find("Z10").delta().unwrap();
    let e25 = find("E25").delta().unwrap();
    let mut ok = polytope_isometry_check(&q18, &q12, &isometry_q18_q12()).unwrap()
        && polytope_isometry_check(&e25, &z10, &isometry_e25_z10()).unwrap();
    for (a, b) in [(&q18, &q12), (&e25, &z10)] {
        let found = polytope_isometry_search(a, b);
        ok &= found.map(|m| polytope_isometry_check(a, b, &m).unwrap()).unwrap_or(false);
    }
    report(10, ok, "M1: Q18 -> Q12 and M2: E25 -> Z10 verified; search finds witnesses for both");
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=10, 1usize..=10).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_rows(&rows).unwrap()
        })
    })
}

fn is_diagonal_chain(d: &IntMatrix) -> bool {
    let n = d.rows().min(d.cols());
    let off = (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d[(i, j)] == BigInt::from(0)));
    let chain = (1..n).all(|i| {
        let (a, b) = (&d[(i - 1, i - 1)], &d[(i, i)]);
        if a == &BigInt::from(0) {
            b == &BigInt::from(0)
        } else {
            (b % a) == BigInt::from(0)
        }
    });
    off && chain && (0..n).all(|i| !d[(i, i)].is_negative())
}

#[test]
fn criterion_11_property_suites() {
    let mut notes = Vec::new();

    // basis independence over genuine Z-bases, index² scaling otherwise
    let mut basis_ok = true;
    for c in dataset() {
        for (delta_side, dep) in [(true, c.dependent_sets.0), (false, c.dependent_sets.1)] {
            let (full, set) = published_full(&c, delta_side);
            let default = k3mirror_core::toric::divisor_relations(&set).unwrap();
            let g0 = full.select(&default.independent, &default.independent);
            let inv0 = invariants(&k3mirror_core::GramLattice::new(g0).unwrap());
            let b = divisor_relations_with(&set, &zero_based(dep)).unwrap();
            let g = k3mirror_core::GramLattice::new(full.select(&b.independent, &b.independent)).unwrap();
            if b.is_unimodular() {
                basis_ok &= invariants(&g) == inv0;
            } else {
                basis_ok &= g.signature() == inv0.signature && g.det().abs() == &b.index * &b.index * &inv0.abs_det;
                notes.push(format!("{} published set has index {}", c.key, b.index));
            }
        }
    }

    // saturation and |det| conservation of complements
    let mut comp_ok = true;
    for x in ["A1", "A2", "A6", "A3", "D4", "E6", "E7", "A7"] {
        let w = embed_in_e8(&lattice(x)).unwrap();
        let c = orthogonal_complement(&w).unwrap();
        comp_ok &= w.is_consistent() && is_saturated(&w.complement_basis);
        comp_ok &= c.det().abs() == w.sub_gram().unwrap().det().abs();
        comp_ok &= c.rank() + w.sub_basis.rows() == 8;
    }
    for x in ["A2", "A1", "0", "C86"] {
        let w = embed_named(&NamedLattice::k3(), &lattice("U+U").plus(&lattice(x))).unwrap();
        let c = orthogonal_complement(&w).unwrap();
        comp_ok &= is_saturated(&w.complement_basis) && c.det().abs() == w.sub_gram().unwrap().det().abs();
    }

    // duality involution on all built-ins
    let mut involution = true;
    for c in dataset() {
        for p in [c.delta().unwrap(), c.delta_dual().unwrap()] {
            involution &= p.polar_dual().unwrap().polar_dual().unwrap() == p;
        }
    }
    let cube: Vec<Point3> = (0..8).map(|i| [1 - 2 * (i & 1), 1 - (i & 2), 1 - (i & 4) / 2]).collect();
    let cube = Polytope3::hull(&cube).unwrap();
    involution &= cube.polar_dual().unwrap().polar_dual().unwrap() == cube;

    // randomized HNF / SNF round trips
    let mut runner = TestRunner::new(Config { cases: 128, ..Config::default() });
    let round_trips = runner
        .run(&small_matrix(), |a| {
            let (h, u) = hnf(&a);
            prop_assert_eq!(&u * &a, h);
            prop_assert!(det_exact(&u).unwrap().abs().is_one());
            let (d, p, q) = snf(&a);
            prop_assert_eq!(&(&p * &a) * &q, d.clone());
            prop_assert!(det_exact(&p).unwrap().abs().is_one() && det_exact(&q).unwrap().abs().is_one());
            prop_assert!(is_diagonal_chain(&d));
            Ok(())
        })
        .is_ok();

    let ok = basis_ok && comp_ok && involution && round_trips;
    report(
        11,
        ok,
        &format!(
            "basis independence {basis_ok}, complements {comp_ok}, involution {involution}, 128 HNF/SNF round trips {round_trips}; {}",
            notes.join(", ")
        ),
    );
}
