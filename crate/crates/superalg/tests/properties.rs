use std::sync::Arc;

use proptest::prelude::*;

use superalg::analysis::Analysis;
use superalg::construct;
use superalg::fp::{Fp, FpMatrix};
use superalg::module::AlgModule;
use superalg::poly::FpPoly;

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rref_is_idempotent(p in prime(), dat in prop::collection::vec(0..7u64, 30)) {
        let dat: Vec<u64> = dat.into_iter().map(|x| x % p).collect();
        let m = FpMatrix::from_flat(Fp::new(p), 5, 6, dat);
        let (r1, piv1) = m.rref();
        let (r2, piv2) = r1.rref();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(piv1, piv2);
    }

    #[test]
    fn solve_recovers_a_solution(
        p in prime(),
        a_dat in prop::collection::vec(0..7u64, 30),
        x_dat in prop::collection::vec(0..7u64, 6),
    ) {
        let fp = Fp::new(p);
        let a_dat: Vec<u64> = a_dat.into_iter().map(|v| v % p).collect();
        let a = FpMatrix::from_flat(fp, 5, 6, a_dat);
        let x: Vec<u64> = x_dat.into_iter().map(|v| v % p).collect();
        let b = a.apply(&x);
        let sol = a.solve(&FpMatrix::col_vec(fp, &b)).expect("consistent system");
        prop_assert_eq!(a.apply(&sol.col(0)), b);
    }

    #[test]
    fn rank_nullity_adds_up(p in prime(), dat in prop::collection::vec(0..7u64, 42)) {
        let dat: Vec<u64> = dat.into_iter().map(|x| x % p).collect();
        let m = FpMatrix::from_flat(Fp::new(p), 6, 7, dat);
        prop_assert_eq!(m.rank() + m.nullspace().cols(), 7);
    }

    #[test]
    fn minpoly_divides_charpoly(p in prime(), dat in prop::collection::vec(0..7u64, 36)) {
        let dat: Vec<u64> = dat.into_iter().map(|x| x % p).collect();
        let m = FpMatrix::from_flat(Fp::new(p), 6, 6, dat);
        let mp = m.minpoly();
        let cp = m.charpoly();
        prop_assert!(cp.rem(&mp).is_zero());
    }

    #[test]
    fn factoring_round_trips(p in prime(), coeffs in prop::collection::vec(0..7u64, 1..9)) {
        let fp = Fp::new(p);
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        let f = FpPoly::new(fp, coeffs);
        prop_assume!(!f.is_zero());
        let (unit, factors) = f.factor();
        let mut acc = FpPoly::new(fp, vec![unit]);
        for (g, e) in &factors {
            prop_assert!(g.is_monic());
            acc = acc.mul(&g.pow(*e));
        }
        prop_assert_eq!(acc, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprint_survives_basis_change(q_dat in prop::collection::vec(0..3u64, 81)) {
        let fp = Fp::new(3);
        let q = FpMatrix::from_flat(fp, 9, 9, q_dat);
        prop_assume!(q.rank() == 9);
        let a = construct::smash_function_algebra(
            &construct::truncated_polynomial(fp, 3),
            3,
            &[0, 1, 2],
        )
        .unwrap();
        let b = a.change_basis(&q);
        let mut an_a = Analysis::new(Arc::new(a), 5);
        let mut an_b = Analysis::new(Arc::new(b), 5);
        prop_assert_eq!(an_a.fingerprint(), an_b.fingerprint());
    }

    #[test]
    fn character_twist_round_trips(k in 0usize..3) {
        // Z_3 characters over GF(7): g maps to a cube root of unity
        let fp = Fp::new(7);
        let alg = Arc::new(construct::cyclic_group_algebra(fp, 3));
        let zeta = fp.pow(2, k as u64); // 2^3 = 1 mod 7
        let gamma: Vec<u64> = (0..3).map(|j| fp.pow(zeta, j as u64)).collect();
        let m = AlgModule::regular(&alg);
        let twisted = m.tensor_with_character(&gamma).unwrap();
        let gamma_inv = AlgModule::character_inverse(&alg, &gamma).unwrap();
        let back = twisted.tensor_with_character(&gamma_inv).unwrap();
        for i in 0..alg.dim() {
            prop_assert_eq!(back.action(i), m.action(i));
        }
    }

    #[test]
    fn wedderburn_bookkeeping(m in 1usize..7) {
        // kZ_m over GF(7) with gcd(m, 7) = 1 is semisimple
        let fp = Fp::new(7);
        let alg = Arc::new(construct::cyclic_group_algebra(fp, m));
        let mut an = Analysis::new(alg.clone(), 5);
        prop_assert_eq!(an.radical().dim(), 0);
        let total: usize = an
            .simples()
            .iter()
            .map(|s| {
                let d = s.module.dim();
                let e = s.endo_degree;
                assert_eq!(d % e, 0);
                (d / e) * d
            })
            .sum();
        prop_assert_eq!(total, m);
    }
}
