use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3mirror_core::catalog::{identify, NamedLattice, Tier};
use k3mirror_core::linalg::{det_exact, hnf, integer_kernel, invariant_factors, is_saturated, snf, IntMatrix, RatVector};
use k3mirror_core::picard::{mod2, GramLattice};

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(lo..=hi, rows * cols).prop_map(move |v| {
        let r: Vec<Vec<i64>> = v.chunks(cols).map(|x| x.to_vec()).collect();
        IntMatrix::from_rows(&r).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=10, 1usize..=10).prop_flat_map(|(r, c)| matrix(r, c, -20, 20))
}

/// Unimodular matrix as a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k, swap) in ops {
            if i == j {
                continue;
            }
            if swap {
                u.swap_rows(i, j);
            } else {
                u.add_row_multiple(i, j, &BigInt::from(k));
            }
        }
        u
    })
}

/// Even symmetric matrix `MᵀDM` style: random symmetric with even diagonal.
fn even_symmetric(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-6i64..=6, n * n).prop_map(move |v| {
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = if i == j { 2 * v[i * n + j] } else { v[i * n + j] };
                g[(i, j)] = BigInt::from(x);
                g[(j, i)] = BigInt::from(x);
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn hnf_round_trip(a in any_matrix()) {
        let (h, u) = hnf(&a);
        prop_assert_eq!(&u * &a, h.clone());
        prop_assert!(det_exact(&u).unwrap().abs().is_one());
        // echelon: pivot columns strictly increase
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            if let Some(p) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                prop_assert!(h[(i, p)].is_positive());
                prop_assert!(last.is_none_or(|l| p > l));
                for r in 0..i {
                    prop_assert!(!h[(r, p)].is_negative() && h[(r, p)] < h[(i, p)]);
                }
                last = Some(p);
            }
        }
    }

    #[test]
    fn snf_round_trip(a in any_matrix()) {
        let (d, u, v) = snf(&a);
        prop_assert_eq!(&(&u * &a) * &v, d.clone());
        prop_assert!(det_exact(&u).unwrap().abs().is_one());
        prop_assert!(det_exact(&v).unwrap().abs().is_one());
        for i in 1..d.rows().min(d.cols()) {
            let (x, y) = (&d[(i - 1, i - 1)], &d[(i, i)]);
            let divides = if x.is_zero() { y.is_zero() } else { (y % x).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn snf_invariant_under_unimodular_change(
        (a, p, q) in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| (matrix(r, c, -9, 9), unimodular(r), unimodular(c)))
    ) {
        let b = &(&p * &a) * &q;
        prop_assert_eq!(invariant_factors(&a), invariant_factors(&b));
    }

    #[test]
    fn det_is_product_of_invariant_factors(g in (1usize..=6).prop_flat_map(even_symmetric)) {
        let d = det_exact(&g).unwrap();
        prop_assume!(!d.is_zero());
        let prod: BigInt = invariant_factors(&g).iter().product();
        prop_assert_eq!(d.abs(), prod);
    }

    #[test]
    fn kernel_is_saturated(a in (1usize..=5, 2usize..=8).prop_flat_map(|(r, c)| matrix(r, c, -6, 6))) {
        let k = integer_kernel(&a);
        if k.rows() > 0 {
            prop_assert!(is_saturated(&k));
            for row in k.row_vecs() {
                prop_assert!(a.mul_vec(&row).iter().all(Zero::is_zero));
            }
        }
        prop_assert_eq!(k.rows() + k3mirror_core::linalg::rank(&a), a.cols());
    }

    #[test]
    fn q_values_ignore_lattice_shifts(
        (g, shifts) in (1usize..=4).prop_flat_map(|n| (even_symmetric(n), proptest::collection::vec(-5i64..=5, n * n)))
    ) {
        let Ok(l) = GramLattice::new(g.clone()) else { return Ok(()); };
        let f = l.discriminant_form();
        let n = l.rank();
        for (k, gen) in f.generators.iter().enumerate() {
            let shift: Vec<BigRational> = (0..n)
                .map(|i| BigRational::from_integer(BigInt::from(shifts[(k * n + i) % shifts.len()])))
                .collect();
            let moved = RatVector(gen.0.iter().zip(&shift).map(|(a, b)| a + b).collect());
            prop_assert_eq!(mod2(&moved.pair(&g, &moved)), f.generator_q[k].clone());
        }
        let order: BigInt = f.invariant_factors.iter().product();
        prop_assert_eq!(order, l.det().abs());
    }
}

#[test]
fn congruence_implies_invariant_match() {
    let candidates: Vec<NamedLattice> = ["U", "U+A1", "U+A2", "A1+A1", "A2", "C86", "U+A1+A1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let grams = [
        IntMatrix::from_rows(&[[2, 1], [1, 0]]).unwrap(),
        IntMatrix::from_rows(&[[-2, 1], [1, -2]]).unwrap(),
        IntMatrix::from_rows(&[[-2, 3], [3, -6]]).unwrap(),
        IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 1], [0, 1, -2]]).unwrap(),
    ];
    for g in grams {
        let l = GramLattice::new(g.clone()).unwrap();
        for v in identify(&l, &candidates, 6) {
            if v.tier == Tier::Congruence {
                let p = v.witness.as_ref().unwrap();
                assert_eq!(g.congruent(p), v.candidate.gram_matrix());
                assert!(det_exact(p).unwrap().abs().is_one());
            }
            if v.tier == Tier::NoMatch {
                assert!(v.witness.is_none());
            }
        }
    }
    // [[-2,3],[3,-6]] has det 3 and is even negative definite: it is A2
    let l = GramLattice::from_rows(&[[-2, 3], [3, -6]]).unwrap();
    assert_eq!(identify(&l, &["A2".parse().unwrap()], 6)[0].tier, Tier::Congruence);
}

#[test]
fn snf_examples() {
    let d = IntMatrix::from_rows(&[[2, 0], [0, 4]]).unwrap();
    assert_eq!(snf(&d).0, d);
    let a2 = IntMatrix::from_rows(&[[-2, 1], [1, -2]]).unwrap();
    assert_eq!(invariant_factors(&a2), vec![BigInt::one(), BigInt::from(3)]);
}
