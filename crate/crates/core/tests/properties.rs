use charpoly::coxeter::{coxeter_charpoly, recover_coxeter, CoxeterMatrix, Order};
use charpoly::fixtures::{random_projection_pair, random_tuple, random_unitary, seeded_rng};
use charpoly::pencil::{build_star_pencil, charpoly_det, power_trace_coefficients, PolyMatrix};
use charpoly::projpair::{
    halmos_invariants, involution_to_projection, projection_to_involution, ProjectionPair,
};
use charpoly::{CMatrix, Complex64, MultiPoly};
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `c_m` as `det(M) / m!` where `M` has `p_1` on the diagonal, `m-1, ..., 1`
/// on the superdiagonal and `p_{i-j+1}` below.
fn literal_power_trace_det(traces: &[MultiPoly], m: usize, nvars: usize) -> MultiPoly {
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            entries.push(if j == i + 1 {
                MultiPoly::constant(nvars, c((m - 1 - i) as f64))
            } else if i >= j {
                traces[i - j].clone()
            } else {
                MultiPoly::zero(nvars)
            });
        }
    }
    let det = PolyMatrix::new(m, entries).unwrap().determinant();
    let factorial: f64 = (1..=m).map(|x| x as f64).product();
    det.scale(c(1.0 / factorial))
}

fn power_traces(star: &PolyMatrix, upto: usize) -> Vec<MultiPoly> {
    let mut out = vec![star.trace()];
    let mut power = star.clone();
    for _ in 1..upto {
        power = power.matmul(star);
        out.push(power.trace());
    }
    out
}

fn order_strategy() -> impl Strategy<Value = Order> {
    prop_oneof![(2u64..=9).prop_map(Order::Finite), Just(Order::Infinite)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn literal_determinant_matches_recursion(seed in any::<u64>(), k in 2usize..=4, n in 1usize..=2) {
        let t = random_tuple(k, n, &mut seeded_rng(seed));
        let star = build_star_pencil(&t);
        let traces = power_traces(&star, k);
        let rec = power_trace_coefficients(&t).unwrap();
        for (m, expected) in rec.iter().enumerate().skip(1) {
            let lit = literal_power_trace_det(&traces, m, t.nvars());
            prop_assert!(lit.canonical_equal(expected, 1e-10).unwrap(), "m = {}", m);
        }
    }

    #[test]
    fn expansion_agrees_with_numeric_determinant(seed in any::<u64>(), k in 1usize..=5, n in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let t = random_tuple(k, n, &mut rng);
        let q = charpoly_det(&t).unwrap();
        let point: Vec<Complex64> = (0..=n).map(|_| charpoly::fixtures::unit_disc(&mut rng)).collect();
        let mut m = CMatrix::identity(k).scale(point[0]);
        for (a, z) in t.matrices().iter().zip(&point[1..]) {
            m = &m + &a.scale(*z);
        }
        let direct = m.determinant().unwrap();
        prop_assert!((q.evaluate(&point).unwrap() - direct).norm() <= 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn homogeneous_and_monic(seed in any::<u64>(), k in 1usize..=5, n in 1usize..=3) {
        let t = random_tuple(k, n, &mut seeded_rng(seed));
        let q = charpoly_det(&t).unwrap();
        prop_assert!(q.terms().all(|(m, _)| m.degree() == k as u32));
        let mut top = vec![0u32; n + 1];
        top[0] = k as u32;
        prop_assert!((q.coeff(&top) - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn unitary_invariance(seed in any::<u64>(), k in 1usize..=5, n in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let t = random_tuple(k, n, &mut rng);
        let u = random_unitary(k, &mut rng);
        let a = charpoly_det(&t).unwrap();
        let b = charpoly_det(&t.conjugate_by(&u)).unwrap();
        prop_assert!(a.canonical_equal(&b, 1e-9).unwrap());
    }

    #[test]
    fn swapping_projections_swaps_variables(seed in any::<u64>(), k in 1usize..=6) {
        let pp = random_projection_pair(k, &mut seeded_rng(seed));
        let swapped = ProjectionPair::new(pp.q().clone(), pp.p().clone()).unwrap();
        let lhs = swapped.charpoly().unwrap();
        let rhs = pp.charpoly().unwrap().permute_vars(&[0, 2, 1]).unwrap();
        prop_assert!(lhs.canonical_equal(&rhs, 1e-9).unwrap());
    }

    #[test]
    fn invariants_account_for_dimension(seed in any::<u64>(), k in 1usize..=7) {
        let pp = random_projection_pair(k, &mut seeded_rng(seed));
        let inv = halmos_invariants(&pp).unwrap();
        prop_assert_eq!(inv.k1 + inv.k2 + inv.k3 + inv.k4 + 2 * inv.m0, k);
        prop_assert_eq!(inv.h_spectrum.len(), inv.m0);
        prop_assert!(inv.h_spectrum.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn involution_round_trip(seed in any::<u64>(), k in 1usize..=6) {
        let pp = random_projection_pair(k, &mut seeded_rng(seed));
        let r = projection_to_involution(pp.p()).unwrap();
        prop_assert!((&(&r * &r) - &CMatrix::identity(k)).frobenius() < 1e-10);
        let back = involution_to_projection(&r).unwrap();
        prop_assert!((&back - pp.p()).frobenius() < 1e-12);
    }

    #[test]
    fn rank_three_coxeter_round_trip(a in order_strategy(), b in order_strategy(), d in order_strategy()) {
        let cm = CoxeterMatrix::from_upper(3, &[a, b, d]).unwrap();
        let q = coxeter_charpoly(&cm).unwrap();
        prop_assert_eq!(recover_coxeter(&q).unwrap(), cm);
    }

    #[test]
    fn coxeter_json_round_trip(a in order_strategy(), b in order_strategy(), d in order_strategy()) {
        let cm = CoxeterMatrix::from_upper(3, &[a, b, d]).unwrap();
        let text = serde_json::to_string(&cm).unwrap();
        prop_assert_eq!(serde_json::from_str::<CoxeterMatrix>(&text).unwrap(), cm);
    }
}
