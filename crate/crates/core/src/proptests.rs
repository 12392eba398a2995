use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebras::{b_matrix, braid_generators, braid_inverse, conjugate, AlgebraKind, GeneratorSystem};
use crate::fatgraph::{FatGraph, StandardKind};
use crate::foliation::{face_conditions_hold, shear_from_measure, tropical_flip, FreewayMeasure};
use crate::geodesic::{chebyshev_trace, holonomy_trace, numeric_trace, random_assignment, random_closed_word, PathWord};
use crate::moves::flip;
use crate::poisson::{bracket, wp_matrix, PoissonMatrix};
use crate::ring::{ExpVector, HalfInt, LaurentElem, QCoeff, QExp, TorusElem, Var};

fn graphs() -> Vec<FatGraph> {
    let mut v = vec![FatGraph::standard(StandardKind::AnnulusOneMarked, 0).unwrap()];
    for n in 3..=6 {
        v.push(FatGraph::standard(StandardKind::A, n).unwrap());
    }
    for n in 2..=5 {
        v.push(FatGraph::standard(StandardKind::D, n).unwrap());
    }
    v
}

fn pick(seed: u64) -> (FatGraph, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gs = graphs();
    let g = gs[rng.gen_range(0..gs.len())].clone();
    (g, rng)
}

fn rand_exp(rng: &mut ChaCha8Rng, vars: usize) -> ExpVector {
    ExpVector::from_pairs((0..vars).map(|i| (Var(i as u32), HalfInt::from_twice(rng.gen_range(-3..=3)))))
}

fn rand_laurent(rng: &mut ChaCha8Rng, vars: usize) -> LaurentElem {
    let mut a = LaurentElem::zero();
    for _ in 0..rng.gen_range(0..4) {
        a.add_term(rand_exp(rng, vars), BigInt::from(rng.gen_range(-3..=3)));
    }
    a
}

fn rand_torus(rng: &mut ChaCha8Rng, ctx: &Arc<PoissonMatrix>) -> TorusElem {
    let mut a = TorusElem::zero(ctx);
    for _ in 0..rng.gen_range(0..4) {
        let c = QCoeff::mono(QExp::from_quarters(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(-2..=2)));
        a.add_term(rand_exp(rng, ctx.dim()), &c);
    }
    a
}

fn word(g: &FatGraph, rng: &mut ChaCha8Rng) -> Option<PathWord> {
    random_closed_word(g, rng, 12, 200)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn laurent_ring_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (rand_laurent(&mut rng, 3), rand_laurent(&mut rng, 3), rand_laurent(&mut rng, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &b).terms().all(|(_, c)| c != &BigInt::from(0)));
        let at: HashMap<Var, f64> = (0..3).map(|i| (Var(i), rng.gen_range(-1.0..1.0))).collect();
        let (x, y) = (a.evaluate(&at).unwrap(), b.evaluate(&at).unwrap());
        let xy = (&a * &b).evaluate(&at).unwrap();
        prop_assert!((xy - x * y).abs() <= 1e-9 * (1.0 + xy.abs()));
    }

    #[test]
    fn torus_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = Arc::new(wp_matrix(&FatGraph::standard(StandardKind::D, 3).unwrap()));
        let (a, b, c) = (rand_torus(&mut rng, &ctx), rand_torus(&mut rng, &ctx), rand_torus(&mut rng, &ctx));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).classical_limit(), &a.classical_limit() * &b.classical_limit());
        prop_assert_eq!(a.hermitian_conjugate().hermitian_conjugate(), a.clone());
        prop_assert_eq!((&a * &b).hermitian_conjugate(), &b.hermitian_conjugate() * &a.hermitian_conjugate());
    }

    #[test]
    fn qcoeff_and_halfint(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = QCoeff::zero();
        for _ in 0..4 {
            c.add_term(QExp::from_quarters(rng.gen_range(-8..=8)), &BigInt::from(rng.gen_range(-3..=3)));
        }
        prop_assert_eq!(c.conj().conj(), c.clone());
        prop_assert!(c.terms().all(|(_, k)| k != &BigInt::from(0)));
        prop_assert_eq!(c.mul(&QCoeff::one()), c.clone());
        let (x, y) = (HalfInt::from_twice(rng.gen_range(-20..20)), HalfInt::from_twice(rng.gen_range(-20..20)));
        prop_assert_eq!((x + y).twice(), x.twice() + y.twice());
        prop_assert_eq!((-x).twice(), -x.twice());
        prop_assert_eq!((x + y).is_integer(), (x.twice() + y.twice()) % 2 == 0);
    }

    #[test]
    fn traces_positive_and_consistent(seed in any::<u64>()) {
        let (g, mut rng) = pick(seed);
        if let Some(w) = word(&g, &mut rng) {
            let t = holonomy_trace(&w);
            prop_assert!(t.is_positive(), "{}", t);
            let at = random_assignment(&g, &mut rng, 1.0);
            let x = numeric_trace(&w, &at).unwrap();
            prop_assert!((x - t.evaluate(&at).unwrap()).abs() <= 1e-9 * x.abs().max(1.0));
            let t3 = holonomy_trace(&w.repeat(3));
            prop_assert_eq!(t3, chebyshev_trace(&t, 3));
        }
    }

    #[test]
    fn poisson_structure(seed in any::<u64>()) {
        let (g, mut rng) = pick(seed);
        let pm = wp_matrix(&g);
        prop_assert!(pm.is_antisymmetric());
        prop_assert!(pm.rows().iter().flatten().all(|x| x.abs() <= 2));
        prop_assert_eq!(pm.corank(), g.trace_faces().len());
        if let (Some(a), Some(b)) = (word(&g, &mut rng), word(&g, &mut rng)) {
            let (f, h) = (holonomy_trace(&a), holonomy_trace(&b));
            prop_assert_eq!(bracket(&f, &h, &pm).unwrap(), -&bracket(&h, &f, &pm).unwrap());
        }
    }

    #[test]
    fn flips_preserve_traces(seed in any::<u64>()) {
        let (g, mut rng) = pick(seed);
        let edges: Vec<Var> = g.vars().collect();
        let e = edges[rng.gen_range(0..edges.len())];
        let Ok(fr) = flip(&g, g.name(e)) else { return Ok(()) };
        let at = random_assignment(&g, &mut rng, 1.0);
        let moved = fr.rule.apply(&at);
        let r = num_rational::BigRational::new(rng.gen_range(1..20).into(), rng.gen_range(1..20).into());
        prop_assert!(fr.poisson_preserved_at(&r));
        let back = flip(&fr.graph, g.name(e)).unwrap().rule.apply(&moved);
        for v in g.vars() {
            prop_assert!((back[&v] - at[&v]).abs() < 1e-9);
        }
        if let Some(w) = word(&g, &mut rng) {
            if let Ok(tw) = fr.transport(&w) {
                let (x, y) = (numeric_trace(&w, &at).unwrap(), numeric_trace(&tw, &moved).unwrap());
                prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{} vs {}", x, y);
            }
        }
    }

    #[test]
    fn tropical_flips(seed in any::<u64>()) {
        let (g, mut rng) = pick(seed);
        let mu = FreewayMeasure { mu: g.vars().map(|v| (v, crate::foliation::q(rng.gen_range(-5..=5)))).collect() };
        let mut zs = shear_from_measure(&g, &mu);
        prop_assert!(face_conditions_hold(&g, &zs));
        for (v, z) in &zs.zeta {
            prop_assert!((z * crate::foliation::q(2)).is_integer());
            let _ = v;
        }
        let mut cur = g.clone();
        for _ in 0..10 {
            let edges: Vec<Var> = cur.vars().collect();
            let e = edges[rng.gen_range(0..edges.len())];
            let Ok((fr, next)) = tropical_flip(&cur, &zs, e) else { continue };
            prop_assert!(face_conditions_hold(&fr.graph, &next));
            let (_, back) = tropical_flip(&fr.graph, &next, e).unwrap();
            prop_assert_eq!(&back, &zs);
            cur = fr.graph;
            zs = next;
        }
    }

    #[test]
    fn closed_curve_shears_integral_inside(seed in any::<u64>()) {
        let (g, mut rng) = pick(seed);
        if let Some(w) = word(&g, &mut rng) {
            let zs = shear_from_measure(&g, &FreewayMeasure::from_darts([(w.darts().as_slice(), 1)]));
            for (v, z) in &zs.zeta {
                if !g.is_pending(*v) {
                    prop_assert!(z.is_integer(), "{} = {}", g.name(*v), z);
                }
            }
            prop_assert!(face_conditions_hold(&g, &zs));
        }
    }

    #[test]
    fn numeric_braid_steps(seed in any::<u64>(), n in 3usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = GeneratorSystem::new(AlgebraKind::A, n).unwrap();
        let m = sys.numeric(&random_assignment(&sys.graph, &mut rng, 1.0)).unwrap();
        let i = rng.gen_range(1..n);
        let t = braid_generators(i, &m).unwrap();
        prop_assert!(braid_inverse(i, &t).unwrap().m.rel_diff(&m.m) < 1e-9);
        prop_assert!(conjugate(&b_matrix(i, &m).unwrap(), &m.m).rel_diff(&t.m) < 1e-9);
    }

    #[test]
    fn graph_text_round_trip(seed in any::<u64>()) {
        let (g, _) = pick(seed);
        let h = FatGraph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(h.to_text(), g.to_text());
        let sig = g.signature();
        prop_assert_eq!(sig.edge_count(), g.n_edges() as i64);
    }
}
