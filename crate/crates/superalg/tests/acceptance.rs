//! End-to-end acceptance suite. Each test is one numbered gate over a worked
//! scenario the library must reproduce exactly, and each ends with a single
//! PASS line (visible under `--nocapture`) carrying its elapsed time. Budgets
//! are asserted, so a regression in speed fails the same as one in substance.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superalg::construct::{self, Envelope};
use superalg::lie::{CriterionFailure, ElementClass};
use superalg::resolution::{complexity_estimate, min_resolution, ComplexityClass};
use superalg::{analysis, hopf};
use superalg::{AlgModule, Analysis, Fp, FpMatrix, FpPoly, RestrictedLieSuper, StructAlgebra};

const SEED: u64 = 0x5EED;

fn an(alg: Arc<StructAlgebra>) -> Analysis {
    Analysis::new(alg, SEED)
}

/// Solvable mixed example over GF(3): even part spanned by a p-nilpotent x
/// and torus elements t, t1, odd line y, with [t1, x] = x + t, [t1, y] = 2y,
/// [y, y] = x + t.
fn mixed_lie() -> RestrictedLieSuper {
    let fp = Fp::new(3);
    let labels = ["x", "t", "t1", "y"].map(String::from).to_vec();
    let mut lie = RestrictedLieSuper::new(fp, 3, 1, labels);
    lie.set_bracket(2, 0, &[1, 1, 0, 0]);
    lie.set_bracket(2, 3, &[0, 0, 0, 2]);
    lie.set_bracket(3, 3, &[1, 1, 0, 0]);
    lie.set_pmap(1, &[0, 1, 0, 0]);
    lie.set_pmap(2, &[0, 0, 1, 0]);
    lie
}

fn odd_line(fp: Fp) -> RestrictedLieSuper {
    RestrictedLieSuper::new(fp, 0, 1, vec!["y".into()])
}

fn exterior_pair(fp: Fp) -> RestrictedLieSuper {
    RestrictedLieSuper::new(fp, 0, 2, vec!["y1".into(), "y2".into()])
}

/// One even torus element t with [y,y] = t. Its envelope is commutative.
fn q_line(fp: Fp) -> RestrictedLieSuper {
    let mut lie = RestrictedLieSuper::new(fp, 1, 1, vec!["t".into(), "y".into()]);
    lie.set_bracket(1, 1, &[1, 0]);
    lie.set_pmap(0, &[1, 0]);
    lie
}

fn envelope_of(lie: &RestrictedLieSuper) -> Envelope {
    lie.validate().expect("input Lie algebra must validate");
    construct::envelope(lie).expect("envelope construction")
}

fn finish(t0: Instant, budget: Duration, what: &str) {
    let elapsed = t0.elapsed();
    assert!(
        elapsed < budget,
        "{what} took {elapsed:.2?}, over the {budget:.0?} budget"
    );
    println!("PASS ({elapsed:.2?}) {what}");
}

#[test]
fn a01_covers_over_the_truncated_line_times_an_odd_line_grow_linearly() {
    let t0 = Instant::now();
    let fp = Fp::new(3);
    let poly = construct::truncated_polynomial(fp, 3);
    let ext = envelope_of(&odd_line(fp));
    let a = Arc::new(construct::tensor_algebra_product(&poly, &ext.algebra));
    assert_eq!(a.dim(), 6);

    let mut an = an(a.clone());
    let trivial = AlgModule::trivial(&a).unwrap();
    let res = min_resolution(&mut an, &trivial, 11);
    let want: Vec<usize> = (1..=11).map(|i| 6 * i).collect();
    assert_eq!(res.cover_dims, want, "every cover is a free module of rank n+1");
    assert_eq!(complexity_estimate(&res.cover_dims).class, ComplexityClass::Two);
    finish(
        t0,
        Duration::from_secs(5),
        "trivial-module covers over GF(3)[x,y]/(x^3, y^2) have dims 6,12,...,66 and complexity 2",
    );
}

#[test]
fn a02_truncated_lines_have_constant_covers_and_complexity_one() {
    let t0 = Instant::now();
    for p in [3u64, 5] {
        let fp = Fp::new(p);
        let a = Arc::new(construct::truncated_polynomial(fp, p as usize));
        let mut an = an(a.clone());
        let trivial = AlgModule::trivial(&a).unwrap();
        let res = min_resolution(&mut an, &trivial, 9);
        assert!(
            res.cover_dims.iter().all(|&d| d == p as usize),
            "covers over GF({p})[x]/(x^{p}) must all have dim {p}, got {:?}",
            res.cover_dims
        );
        assert_eq!(complexity_estimate(&res.cover_dims).class, ComplexityClass::One);
    }
    finish(
        t0,
        Duration::from_secs(1),
        "trivial-module covers over GF(p)[x]/(x^p) stay constant, complexity 1, for p = 3 and 5",
    );
}

#[test]
fn a03_the_mixed_solvable_envelope_splits_into_three_matching_blocks() {
    let t0 = Instant::now();
    let env = envelope_of(&mixed_lie());
    let u = env.algebra.clone();
    assert_eq!(u.dim(), 54);

    let t_ix = env.generator_monomials[1];
    let t2_ix = env
        .exponents
        .iter()
        .position(|e| e == &[0, 2, 0, 0])
        .expect("t^2 monomial");
    let coords = |pairs: &[(usize, u64)]| {
        let mut v = vec![0u64; u.dim()];
        for &(i, c) in pairs {
            v[i] = c;
        }
        v
    };
    let principal = coords(&[(0, 1), (t2_ix, 2)]);
    let mut want = vec![
        principal.clone(),
        coords(&[(t_ix, 1), (t2_ix, 2)]),
        coords(&[(t_ix, 2), (t2_ix, 2)]),
    ];
    want.sort();

    let mut uan = an(u.clone());
    let mut got = uan.central_idempotents().clone();
    got.sort();
    assert_eq!(got, want, "central idempotents must be 1 - t^2, t + 2t^2, 2t + 2t^2");

    let blocks = uan.blocks().clone();
    assert_eq!(blocks.len(), 3);
    assert!(blocks.iter().all(|b| b.algebra.dim() == 18));
    let p_ix = blocks
        .iter()
        .position(|b| b.idempotent == principal)
        .expect("principal block");

    let quo = construct::hopf_quotient(&u, &[u.basis_vector(t_ix)]).unwrap();
    let quo_print = an(Arc::new(quo)).fingerprint();
    let blk_print = an(blocks[p_ix].algebra.clone()).fingerprint();
    assert_eq!(quo_print, blk_print, "u/(t) must match the principal block");

    for (i, b) in blocks.iter().enumerate() {
        if i == p_ix {
            continue;
        }
        let bos = construct::bosonize(&b.algebra).unwrap();
        let shape = an(Arc::new(bos))
            .recognize_matrix_algebra()
            .expect("bosonized non-principal block must be a matrix algebra");
        assert_eq!((shape.matrix_size, shape.field_degree), (6, 1));
    }

    assert!(uan.is_nakayama().holds);
    finish(
        t0,
        Duration::from_secs(60),
        "the 54-dim mixed envelope has blocks 18+18+18, u/(t) = principal block, \
         bosonized non-principal blocks = M6(GF(3)), and is Nakayama",
    );
}

#[test]
fn a04_the_finite_type_criterion_accepts_and_rejects_correctly() {
    let t0 = Instant::now();

    let lie = mixed_lie();
    lie.validate().unwrap();
    let out = lie.rep_finite_criterion().unwrap();
    assert!(out.holds);
    let w = out.witness.expect("a holding criterion must carry a witness");
    assert!(!w.clauses.is_empty());
    assert!(
        w.clauses.iter().all(|(_, ok)| *ok),
        "every witness clause must hold: {:?}",
        w.clauses
    );
    assert_eq!(lie.element_class(&w.x0), ElementClass::PNilpotent);
    assert_eq!(lie.element_class(&w.t0), ElementClass::Toral);

    let wide = exterior_pair(Fp::new(3));
    wide.validate().unwrap();
    let out = wide.rep_finite_criterion().unwrap();
    assert!(!out.holds);
    assert_eq!(out.failure, Some(CriterionFailure::OddPartTooBig(2)));

    let mut flat = RestrictedLieSuper::new(Fp::new(3), 2, 0, vec!["x1".into(), "x2".into()]);
    flat.set_pmap(0, &[0, 0]);
    flat.set_pmap(1, &[0, 0]);
    flat.validate().unwrap();
    let out = flat.rep_finite_criterion().unwrap();
    assert!(!out.holds);
    assert_eq!(out.failure, Some(CriterionFailure::NoSuitableX0));

    finish(
        t0,
        Duration::from_secs(10),
        "finite-type criterion: holds with an all-true witness on the mixed example, \
         fails on a 2-dim odd part and on a 2-dim nil even part",
    );
}

#[test]
fn a05_dual_divided_power_primitives_sit_on_frobenius_powers() {
    let t0 = Instant::now();
    for (p, n) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let fp = Fp::new(p);
        let dp = construct::divided_power_hopf(fp, n);
        let dual = construct::dual_hopf(&dp).unwrap();
        let prim = hopf::primitives(&dual).unwrap();
        assert_eq!(
            prim.dim(),
            n as usize,
            "primitive space of the dual must have dim {n} at p = {p}"
        );
        for i in 0..n {
            let mut v = vec![0u64; dual.dim()];
            v[p.pow(i) as usize] = 1;
            assert!(prim.contains(&v), "x^(p^{i}) must be primitive at p = {p}, n = {n}");
        }
    }
    finish(
        t0,
        Duration::from_secs(5),
        "primitives of the dual divided-power algebra are spanned by x^(p^i) \
         for (p, n) in (3,1), (3,2), (5,1)",
    );
}

#[test]
fn a06_the_graded_smash_block_is_a_serial_three_cycle() {
    let t0 = Instant::now();
    let fp = Fp::new(3);
    let jets = construct::truncated_polynomial(fp, 6);
    let b = construct::smash_function_algebra(&jets, 3, &[0, 1, 2, 0, 1, 2]).unwrap();
    let mut ban = an(Arc::new(b));

    let simples = ban.simples();
    assert_eq!(simples.len(), 3);
    assert!(simples.iter().all(|s| s.module.dim() == 1));
    assert_eq!(ban.loewy_length(), 6);

    let quiver = ban.ext_quiver().clone();
    assert_eq!(quiver.vertices.len(), 3);
    assert_eq!(quiver.arrows.len(), 3);
    assert!(quiver.arrows.iter().all(|&(_, _, m)| m == 1));
    let mut next = [usize::MAX; 3];
    for &(s, t, _) in &quiver.arrows {
        assert_eq!(next[s], usize::MAX, "one arrow out of each vertex");
        next[s] = t;
    }
    let mut v = next[0];
    let mut seen = 1;
    while v != 0 {
        v = next[v];
        seen += 1;
        assert!(seen <= 3);
    }
    assert_eq!(seen, 3, "the arrows must close up into a single 3-cycle");

    assert!(ban.is_nakayama().holds);
    finish(
        t0,
        Duration::from_secs(5),
        "the Z/3-graded smash of GF(3)[x]/(x^6) has 3 simples of dim 1, Loewy length 6, \
         a 3-cycle quiver, and is Nakayama",
    );
}

#[test]
fn a07_the_stable_quiver_of_the_serial_block_is_a_tube() {
    let t0 = Instant::now();
    let fp = Fp::new(3);
    let jets = construct::truncated_polynomial(fp, 6);
    let b = construct::smash_function_algebra(&jets, 3, &[0, 1, 2, 0, 1, 2]).unwrap();
    let mut ban = an(Arc::new(b));

    let ar = ban.ar_quiver().unwrap();
    assert_eq!((ar.simples, ar.loewy), (3, 6));
    assert_eq!(ar.shape(), "ZA5/(tau^3)");
    assert_eq!(ar.vertex_count(), 15);
    let dot = ar.to_dot("stable");
    assert_eq!(dot.matches("[label=\"(").count(), 15, "all 15 vertices drawn");
    assert_eq!(dot.matches("style=dashed").count(), 15, "one tau edge per vertex");
    finish(
        t0,
        Duration::from_secs(5),
        "the stable quiver of that block is the tube ZA5/(tau^3) with 15 vertices",
    );
}

#[test]
fn a08_nakayama_survives_bosonization_and_coprime_smashes() {
    let t0 = Instant::now();
    let fp = Fp::new(3);

    let supers: Vec<Arc<StructAlgebra>> = vec![
        envelope_of(&mixed_lie()).algebra,
        envelope_of(&odd_line(fp)).algebra,
        envelope_of(&exterior_pair(fp)).algebra,
        envelope_of(&q_line(fp)).algebra,
        Arc::new(construct::tensor_algebra_product(
            &construct::truncated_polynomial(fp, 3),
            &envelope_of(&odd_line(fp)).algebra,
        )),
    ];
    assert!(supers.len() >= 5);
    let mut verdicts = Vec::new();
    for a in &supers {
        let before = an(a.clone()).is_nakayama().holds;
        let bos = Arc::new(construct::bosonize(a).unwrap());
        let after = an(bos).is_nakayama().holds;
        assert_eq!(before, after, "bosonization flipped Nakayama on a {}-dim algebra", a.dim());
        verdicts.push(before);
    }
    assert!(verdicts.contains(&true) && verdicts.contains(&false));

    let line = construct::truncated_polynomial(fp, 6);
    let mut scale = FpMatrix::zeros(fp, 6, 6);
    for i in 0..6 {
        scale.set(i, i, fp.pow(2, i as u64));
    }
    let mat = construct::matrix_algebra(fp, 2);
    let mut conj = FpMatrix::identity(fp, 4);
    conj.set(1, 1, 2);
    conj.set(2, 2, 2);
    let square = construct::tensor_algebra_product(
        &construct::truncated_polynomial(fp, 3),
        &construct::truncated_polynomial(fp, 3),
    );
    let mut swap = FpMatrix::zeros(fp, 9, 9);
    for i in 0..3 {
        for k in 0..3 {
            swap.set(3 * k + i, 3 * i + k, 1);
        }
    }

    let pairs: Vec<(StructAlgebra, usize, FpMatrix)> =
        vec![(line, 2, scale), (mat, 2, conj), (square, 2, swap)];
    assert!(pairs.len() >= 3);
    let mut verdicts = Vec::new();
    for (a, m, sigma) in pairs {
        let smashed = construct::smash_group(&a, m, &sigma).unwrap();
        let before = an(Arc::new(a)).is_nakayama().holds;
        let after = an(Arc::new(smashed)).is_nakayama().holds;
        assert_eq!(before, after, "a coprime smash flipped Nakayama");
        verdicts.push(before);
    }
    assert!(verdicts.contains(&true) && verdicts.contains(&false));

    finish(
        t0,
        Duration::from_secs(120),
        "is_nakayama agrees across bosonization on 5 super algebras and across \
         smashing with a coprime cyclic group on 3 algebras",
    );
}

#[test]
fn a09_structural_soundness_holds_across_the_construction_suite() {
    let t0 = Instant::now();
    let fp = Fp::new(3);

    let env = envelope_of(&mixed_lie());
    let u = env.algebra.clone();
    let t_gen = u.basis_vector(env.generator_monomials[1]);
    let jets = construct::truncated_polynomial(fp, 6);
    let t3 = construct::truncated_polynomial(fp, 3);
    let dp = construct::divided_power_hopf(fp, 2);

    let suite: Vec<Arc<StructAlgebra>> = vec![
        Arc::new(t3.clone()),
        Arc::new(construct::truncated_polynomial(Fp::new(5), 5)),
        Arc::new(construct::function_algebra(fp, 4)),
        Arc::new(construct::cyclic_group_algebra(fp, 4)),
        Arc::new(construct::cyclic_group_algebra(fp, 9)),
        Arc::new(construct::matrix_algebra(fp, 2)),
        Arc::new(construct::dual_hopf(&dp).unwrap()),
        Arc::new(dp),
        u.clone(),
        Arc::new(construct::hopf_quotient(&u, &[t_gen]).unwrap()),
        Arc::new(construct::smash_function_algebra(&jets, 3, &[0, 1, 2, 0, 1, 2]).unwrap()),
        Arc::new(construct::bosonize(&envelope_of(&q_line(fp)).algebra).unwrap()),
        Arc::new(construct::tensor_algebra_product(&t3, &t3)),
    ];

    let mut hopf_checked = 0;
    for a in &suite {
        let fp = a.fp();
        let mut aan = an(a.clone());

        let series = aan.radical_series_dims();
        assert_eq!(*series.last().unwrap(), 0, "radical must be nilpotent");
        let rad = aan.radical().clone();
        let (quo, _) = analysis::quotient_algebra(a, &rad);
        let mut qan = an(Arc::new(quo));
        assert_eq!(qan.radical().dim(), 0, "a/rad(a) must be semisimple");

        for family in [aan.central_idempotents().clone(), aan.pims().idempotents.clone()] {
            let mut sum = vec![0u64; a.dim()];
            for (i, e) in family.iter().enumerate() {
                for (j, f) in family.iter().enumerate() {
                    let prod = a.multiply(e, f);
                    if i == j {
                        assert_eq!(&prod, e, "idempotents must square to themselves");
                    } else {
                        assert!(prod.iter().all(|&c| c == 0), "idempotents must be orthogonal");
                    }
                }
                for (s, &c) in sum.iter_mut().zip(e) {
                    *s = fp.add(*s, c);
                }
            }
            assert_eq!(sum, a.unit().to_vec(), "idempotents must sum to 1");
        }

        if a.hopf().is_some() {
            hopf::check_hopf(a).unwrap();
            hopf_checked += 1;
        }
    }
    assert!(hopf_checked >= 5, "the suite must exercise several Hopf objects");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let fp = Fp::new(p);
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let m = FpMatrix::from_flat(fp, r, c, (0..r * c).map(|_| rng.gen_range(0..p)).collect());
        assert_eq!(m.rank() + m.nullspace().cols(), c);
    }
    for _ in 0..1000 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let fp = Fp::new(p);
        let deg = rng.gen_range(1..=8usize);
        let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let f = FpPoly::new(fp, coeffs);
        let (unit, factors) = f.factor();
        let mut g = FpPoly::new(fp, vec![unit]);
        for (q, e) in &factors {
            g = g.mul(&q.pow(*e));
        }
        assert_eq!(g, f, "factoring must round-trip");
    }

    finish(
        t0,
        Duration::from_secs(300),
        "radical nilpotency, semisimple quotients, idempotent bookkeeping, Hopf axioms, \
         1000 rank-nullity and 1000 factoring round-trips all hold",
    );
}

#[test]
fn a10_the_two_variable_truncated_square_has_complexity_two() {
    let t0 = Instant::now();
    let fp = Fp::new(3);
    let t3 = construct::truncated_polynomial(fp, 3);
    let a = Arc::new(construct::tensor_algebra_product(&t3, &t3));
    assert_eq!(a.dim(), 9);

    let mut an = an(a.clone());
    let trivial = AlgModule::trivial(&a).unwrap();
    let res = min_resolution(&mut an, &trivial, 12);
    let want: Vec<usize> = (1..=12).map(|i| 9 * i).collect();
    assert_eq!(res.cover_dims, want);
    let est = complexity_estimate(&res.cover_dims);
    assert_eq!(est.class, ComplexityClass::Two);
    assert_eq!(est.window.len(), 12, "the verdict must record its finite window");
    finish(
        t0,
        Duration::from_secs(30),
        "GF(3)[x1,x2]/(x1^3, x2^3) gets complexity exactly 2, read from a recorded \
         12-cover window",
    );
}
