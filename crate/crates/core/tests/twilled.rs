use lcakit::algebra::{LieConformalAlgebra, Representation};
use lcakit::catalog::{current_sl2, virasoro, virasoro_module};
use lcakit::cochain::nr_bracket;
use lcakit::module::{FreeModule, ModuleMap};
use lcakit::poly::{int, MultiPoly};
use lcakit::random;
use lcakit::table::Table;
use lcakit::twilled::{
    koszul_chi, semidirect_context, twisted_semidirect_product, Bidegree, Block, DirectSum,
    StructureKind,
};
use lcakit::value::LambdaValue;

/// Vir ⋉_φ Vir with φ = −[·_λ·].
fn quasi_vir() -> (DirectSum, Table) {
    let vir = virasoro();
    let adj = Representation::adjoint(&vir);
    let alg = twisted_semidirect_product(&adj, &vir.bracket.neg()).unwrap();
    (semidirect_context(&adj), alg.bracket)
}

/// Cur(sl₂) split as span{e, f} ⊕ span{h}; only the second summand is a subalgebra.
fn split_sl2() -> (DirectSum, Table) {
    let ds = DirectSum::new(
        &FreeModule::new("P", &["e", "f"]).unwrap(),
        &FreeModule::new("Q", &["h"]).unwrap(),
    );
    (ds, current_sl2().bracket)
}

fn h_to_e() -> ModuleMap {
    ModuleMap::from_images(2, &[LambdaValue::generator(2, 0)]).unwrap()
}

/// Quasi-twilled structures with φ̂₁, μ̂₁ and μ̂₂ all nonzero.
fn rich_corpus() -> Vec<(DirectSum, Table)> {
    let (ds, pi) = quasi_vir();
    let a = ds.twist(&pi, &ModuleMap::identity(1)).unwrap();
    let (ds2, pi2) = split_sl2();
    let b = ds2.twist(&pi2, &h_to_e()).unwrap();
    vec![(ds, a), (ds2, b)]
}

fn corpus() -> Vec<(DirectSum, Table)> {
    let rep = virasoro_module(&int(1), &int(0));
    let mut out = vec![(
        semidirect_context(&rep),
        rep.semidirect_product().unwrap().bracket,
    )];
    out.push(quasi_vir());
    out.push(split_sl2());
    out.extend(rich_corpus());
    out
}

#[test]
fn decomposition_reassembles() {
    for (ds, pi) in corpus() {
        let dec = ds.decompose(&pi).unwrap();
        assert_eq!(dec.reassemble(), pi);
        assert_eq!(ds.bidegree_of(&dec.phi1), expect_or_zero(&dec.phi1, 2, -1));
        assert_eq!(ds.bidegree_of(&dec.mu1), expect_or_zero(&dec.mu1, 1, 0));
        assert_eq!(ds.bidegree_of(&dec.mu2), expect_or_zero(&dec.mu2, 0, 1));
        assert_eq!(ds.bidegree_of(&dec.phi2), expect_or_zero(&dec.phi2, -1, 2));
    }
    let mut rng = random::seeded(3);
    let ds = split_sl2().0;
    for _ in 0..10 {
        let pi = random::cochain(&mut rng, 3, 3, 2, 2);
        assert_eq!(ds.decompose(&pi).unwrap().reassemble(), pi);
    }
}

fn expect_or_zero(t: &Table, k: i64, l: i64) -> Bidegree {
    if t.is_zero() {
        Bidegree::Zero
    } else {
        Bidegree::Homogeneous(k, l)
    }
}

#[test]
fn classification_of_corpus() {
    let c = corpus();
    let kinds: Vec<StructureKind> = c
        .iter()
        .map(|(ds, pi)| ds.classify(pi).unwrap().kind)
        .collect();
    assert_eq!(
        kinds,
        vec![
            StructureKind::Twilled,
            StructureKind::QuasiTwilled,
            StructureKind::QuasiTwilled,
            StructureKind::QuasiTwilled,
            StructureKind::QuasiTwilled,
        ]
    );
    for (ds, pi) in rich_corpus() {
        let dec = ds.decompose(&pi).unwrap();
        assert!(!dec.phi1.is_zero() && !dec.mu1.is_zero() && !dec.mu2.is_zero());
    }
}

#[test]
fn five_residuals_add_up_to_half_the_square() {
    let mut rng = random::seeded(5);
    let ds = split_sl2().0;
    for _ in 0..5 {
        let pi = random::cochain(&mut rng, 3, 3, 2, 1);
        let cls = ds.classify(&pi).unwrap();
        let sum = cls
            .residuals
            .iter()
            .fold(Table::zero(vec![3; 3], 3), |acc, (_, t)| acc.add(t));
        assert_eq!(sum.scale(&int(2)), nr_bracket(&pi, &pi));
        if !nr_bracket(&pi, &pi).is_zero() {
            assert_eq!(cls.kind, StructureKind::NotLie);
            assert!(!cls.report.passed());
        }
    }
}

#[test]
fn jacobi_failure_is_not_lie() {
    // [e, f] = h, [h, e] = 2e, [h, f] = −f is skew but violates Jacobi.
    let s = |n: i64| int(n);
    let bad = lcakit::catalog::current_algebra(
        "B",
        &["e", "f", "h"],
        &[
            ((0, 1), vec![s(0), s(0), s(1)]),
            ((2, 0), vec![s(2), s(0), s(0)]),
            ((2, 1), vec![s(0), s(-1), s(0)]),
        ],
    );
    assert!(!bad.is_lie());
    let (ds, _) = split_sl2();
    let cls = ds.classify(&bad.bracket).unwrap();
    assert_eq!(cls.kind, StructureKind::NotLie);
    assert!(!cls.report.passed());
}

#[test]
fn lift_rejects_maps_that_are_not_skew() {
    let bad = lcakit::catalog::virasoro_with_weight(&int(3));
    let ds = DirectSum::new(&bad.module, &FreeModule::new("M", &["v"]).unwrap());
    assert!(matches!(
        ds.lift(&bad.bracket, 2, 0, Block::A1),
        Err(lcakit::Error::NotSkewInBlocks(_))
    ));
}

#[test]
fn module_axiom_is_the_square_of_the_lifted_structure() {
    let vir = virasoro();
    let ds = DirectSum::new(&vir.module, &FreeModule::new("M", &["v"]).unwrap());
    let alpha = ds.lift(&vir.bracket, 2, 0, Block::A1).unwrap();
    for (act, is_module) in [
        (MultiPoly::d() + MultiPoly::lambda(1), true),
        (
            MultiPoly::d() + MultiPoly::lambda(1).scale(&int(3)) + MultiPoly::from_int(2),
            true,
        ),
        (MultiPoly::from_int(1), false),
    ] {
        let action = Table::from_fn(vec![1, 1], 1, |_| LambdaValue::single(1, 0, act.clone()));
        let beta = ds.lift(&action, 1, 1, Block::A2).unwrap();
        let pi = alpha.add(&beta);
        let rep = Representation::new(vir.clone(), ds.a2.clone(), action).unwrap();
        assert_eq!(rep.check_module().passed(), is_module);
        assert_eq!(nr_bracket(&pi, &pi).is_zero(), is_module);
    }
}

#[test]
fn mixed_blocks_are_not_homogeneous() {
    let rep = virasoro_module(&int(1), &int(0));
    let ds = semidirect_context(&rep);
    let mu = rep.semidirect_product().unwrap().bracket;
    let hh = ds.lift_map(&ModuleMap::identity(1)).unwrap();
    let mu2 = nr_bracket(&mu, &hh);
    assert_eq!(ds.bidegree_of(&mu2), Bidegree::Homogeneous(0, 1));
    assert_eq!(ds.bidegree_of(&mu.add(&mu2)), Bidegree::NonHomogeneous);
}

#[test]
fn lifted_minus_one_maps_commute() {
    // [f̂, ĝ]_NR = 0 for ‖f‖ = −1|l, ‖g‖ = −1|k, and likewise for l|−1, k|−1.
    let mut rng = random::seeded(9);
    let (ds, _) = split_sl2();
    for _ in 0..4 {
        let f = random::cochain(&mut rng, 1, 2, 1, 2);
        let g = random::cochain(&mut rng, 1, 2, 2, 1);
        let fh = ds.lift(&f, 0, 1, Block::A1).unwrap();
        let gh = ds.lift(&g, 0, 2, Block::A1).unwrap();
        assert!(nr_bracket(&fh, &gh).is_zero());
        assert!(nr_bracket(&fh, &fh).is_zero());
        let p = random::cochain(&mut rng, 2, 1, 1, 2);
        let q = random::cochain(&mut rng, 2, 1, 2, 1);
        let ph = ds.lift(&p, 1, 0, Block::A2).unwrap();
        let qh = ds.lift(&q, 2, 0, Block::A2).unwrap();
        assert!(nr_bracket(&ph, &qh).is_zero());
    }
}

#[test]
fn bidegrees_add_under_the_bracket() {
    let mut rng = random::seeded(21);
    let (ds, _) = split_sl2();
    // (k, l, target) → bidegree
    let shapes: [(usize, usize, Block, (i64, i64)); 5] = [
        (0, 1, Block::A1, (-1, 1)),
        (1, 0, Block::A2, (1, -1)),
        (2, 0, Block::A1, (1, 0)),
        (1, 1, Block::A2, (1, 0)),
        (0, 2, Block::A2, (0, 1)),
    ];
    let mut nonzero = 0;
    for _ in 0..3 {
        for &(k1, l1, t1, b1) in &shapes {
            for &(k2, l2, t2, b2) in &shapes {
                let f = ds
                    .lift(&random_block(&mut rng, &ds, k1, l1, t1), k1, l1, t1)
                    .unwrap();
                let g = ds
                    .lift(&random_block(&mut rng, &ds, k2, l2, t2), k2, l2, t2)
                    .unwrap();
                match ds.bidegree_of(&nr_bracket(&f, &g)) {
                    Bidegree::Zero => {}
                    Bidegree::Homogeneous(k, l) => {
                        nonzero += 1;
                        assert_eq!((k, l), (b1.0 + b2.0, b1.1 + b2.1));
                    }
                    Bidegree::NonHomogeneous => {
                        panic!("bracket of homogeneous cochains is homogeneous")
                    }
                }
            }
        }
    }
    assert!(nonzero > 10);
}

/// A random map A₁^k ⊗ A₂^l → target, skew within each block.
fn random_block<R: rand::Rng>(
    rng: &mut R,
    ds: &DirectSum,
    k: usize,
    l: usize,
    target: Block,
) -> Table {
    let tr = match target {
        Block::A1 => ds.r1(),
        Block::A2 => ds.r2(),
    };
    let mut ranks = vec![ds.r1(); k];
    ranks.extend(std::iter::repeat(ds.r2()).take(l));
    let raw = random::table(rng, ranks, tr, 1);
    // Symmetrize through the lift: lifting the block-antisymmetrization of raw.
    let n = k + l;
    let total = ds.rank();
    let mut full = Table::zero(vec![total; n], total);
    let off = if target == Block::A1 { 0 } else { ds.r1() };
    for (idx, v) in raw.entries() {
        let fi: Vec<usize> = idx
            .iter()
            .enumerate()
            .map(|(j, &i)| if j < k { i } else { i + ds.r1() })
            .collect();
        full.set(&fi, v.embed(total, off));
    }
    let sym = lcakit::cochain::skew_symmetrize(&full);
    ds.restrict(&sym, k, l, target)
}

#[test]
fn twist_routes_agree_and_invert() {
    let mut rng = random::seeded(13);
    for (ds, pi) in corpus() {
        assert_eq!(
            ds.twist(&pi, &ModuleMap::zero(ds.r2(), ds.r1())).unwrap(),
            pi
        );
        for _ in 0..3 {
            let h = random::module_map(&mut rng, ds.r2(), ds.r1(), 1);
            let t = ds.twist(&pi, &h).unwrap();
            let back = ds.twist(&t, &h.scale(&int(-1))).unwrap();
            assert_eq!(back, pi);
            // twisting preserves the Lie property
            assert!(nr_bracket(&t, &t).is_zero());
            let dec = ds.decompose(&pi).unwrap();
            let comps = ds.twist_components(&dec, &h).unwrap();
            assert_eq!(comps.reassemble(), t);
            assert_eq!(comps.phi1, dec.phi1);
        }
    }
}

#[test]
fn twisting_a_twilled_structure() {
    let rep = virasoro_module(&int(1), &int(3));
    let ds = semidirect_context(&rep);
    let pi = rep.semidirect_product().unwrap().bracket;
    let dec = ds.decompose(&pi).unwrap();
    let mut rng = random::seeded(17);
    for _ in 0..3 {
        let h = random::module_map(&mut rng, 1, 1, 2);
        let hh = ds.lift_map(&h).unwrap();
        let c = ds.twist_components(&dec, &h).unwrap();
        assert!(c.phi1.is_zero());
        assert_eq!(c.mu1, dec.mu1);
        assert_eq!(c.mu2, dec.mu2.add(&nr_bracket(&dec.mu1, &hh)));
        let half = lcakit::poly::rat(1, 2);
        let want = nr_bracket(&dec.mu2, &hh)
            .add(&nr_bracket(&nr_bracket(&dec.mu1, &hh), &hh).scale(&half));
        assert_eq!(c.phi2, want);
    }
}

#[test]
fn higher_jacobi_vanishes_up_to_four_inputs() {
    let mut rng = random::seeded(23);
    for (ds, pi) in rich_corpus() {
        let dec = ds.decompose(&pi).unwrap();
        let linf = ds.linf(&dec).unwrap();
        for n in 1..=4 {
            for trial in 0..3 {
                let ins: Vec<Table> = (0..n)
                    .map(|i| {
                        let arity = if ds.r2() == 1 || (i + trial) % 2 == 0 {
                            1
                        } else {
                            2
                        };
                        random::cochain(&mut rng, ds.r2(), ds.r1(), arity, 2)
                    })
                    .collect();
                let refs: Vec<&Table> = ins.iter().collect();
                assert!(linf.higher_jacobi(&refs).unwrap().is_zero(), "n = {n}");
            }
        }
    }
}

#[test]
fn binary_bracket_is_graded_skew() {
    let mut rng = random::seeded(29);
    for (ds, pi) in rich_corpus() {
        let dec = ds.decompose(&pi).unwrap();
        let linf = ds.linf(&dec).unwrap();
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            if ds.r2() == 1 && (m > 1 || n > 1) {
                continue;
            }
            let a = random::cochain(&mut rng, ds.r2(), ds.r1(), m, 2);
            let b = random::cochain(&mut rng, ds.r2(), ds.r1(), n, 2);
            let ab = linf.l2(&a, &b).unwrap();
            let ba = linf.l2(&b, &a).unwrap();
            assert_eq!(ba, ab.scale(&int(koszul_chi(&[1, 0], &[m, n]))));
        }
    }
}

#[test]
fn three_bracket_vanishes_on_twilled_input() {
    let rep = virasoro_module(&int(1), &int(0));
    let ds = semidirect_context(&rep);
    let dec = ds
        .decompose(&rep.semidirect_product().unwrap().bracket)
        .unwrap();
    let linf = ds.linf(&dec).unwrap();
    let f = ds.map_cochain(&h_scalar(2)).unwrap();
    assert!(linf.l3(&f, &f, &f).unwrap().is_zero());
    assert!(linf.l1(&f).unwrap().is_zero());
}

fn h_scalar(c: i64) -> ModuleMap {
    ModuleMap::scalar(1, &int(c))
}

#[test]
fn half_square_is_the_rota_baxter_defect() {
    // ½[T̂,T̂]_μ̂(m, n) = [T m_λ T n] − T(ρ(Tm)_λ n − ρ(Tn)_{−λ−∂} m)
    let mut rng = random::seeded(31);
    for (delta, alpha) in [(1, 0), (2, 0), (0, 1)] {
        let rep = virasoro_module(&int(delta), &int(alpha));
        let ds = semidirect_context(&rep);
        let dec = ds
            .decompose(&rep.semidirect_product().unwrap().bracket)
            .unwrap();
        let linf = ds.linf(&dec).unwrap();
        for _ in 0..3 {
            let t = random::module_map(&mut rng, 1, 1, 1);
            let f = ds.map_cochain(&t).unwrap();
            let half = linf.l2(&f, &f).unwrap().scale(&lcakit::poly::rat(1, 2));
            let v = rep.space.generator(0);
            let tv = t.apply(&v).unwrap();
            let x1 = MultiPoly::lambda(1);
            let lhs = rep.algebra.bracket_at(&x1, &tv, &tv);
            let inner = rep.act(&x1, &tv, &v) - rep.act(&MultiPoly::dagger(1), &tv, &v);
            let rhs = t.apply(&inner).unwrap();
            assert_eq!(half.get(&[0, 0]), &(lhs - rhs));
        }
    }
}

#[test]
fn maurer_cartan_matches_shape_after_twisting() {
    let mut rng = random::seeded(37);
    for (ds, pi) in [quasi_vir(), split_sl2()] {
        let dec = ds.decompose(&pi).unwrap();
        let mut seen = [false, false];
        let mut maps = vec![ModuleMap::zero(ds.r2(), ds.r1())];
        if ds.r1() == 1 {
            maps.push(ModuleMap::identity(1));
            maps.push(h_scalar(2));
        } else {
            maps.push(h_to_e());
        }
        for _ in 0..4 {
            maps.push(random::module_map(&mut rng, ds.r2(), ds.r1(), 1));
        }
        for h in maps {
            let mc = ds.mc_check(&dec, &h).unwrap().passed();
            seen[usize::from(mc)] = true;
            let kind = ds.classify(&ds.twist(&pi, &h).unwrap()).unwrap().kind;
            let quasi = matches!(kind, StructureKind::Twilled | StructureKind::QuasiTwilled);
            assert_eq!(mc, quasi);
            if mc {
                let alg: LieConformalAlgebra = ds.induced_bracket_on_a2(&dec, &h).unwrap();
                assert!(alg.is_lie());
            } else {
                assert!(ds.induced_bracket_on_a2(&dec, &h).is_err());
            }
        }
        assert_eq!(seen, [true, true]);
    }
}

#[test]
fn induced_bracket_of_zero_map_is_the_subalgebra_bracket() {
    let (ds, pi) = split_sl2();
    let dec = ds.decompose(&pi).unwrap();
    let alg = ds
        .induced_bracket_on_a2(&dec, &ModuleMap::zero(1, 2))
        .unwrap();
    assert_eq!(alg.bracket, ds.restrict(&pi, 0, 2, Block::A2));
}
