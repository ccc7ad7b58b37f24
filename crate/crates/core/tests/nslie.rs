use lcakit::catalog::{current_sl2, virasoro};
use lcakit::nslie::{
    check_nslie_morphism, check_rb_morphism, nslie_from_conformal_ns, nslie_from_nijenhuis,
    nslie_from_twisted_rb, subadjacent, validate_conformal_ns, validate_nslie,
    ConformalNSStructure, NSLieStructure, TwistedOperator,
};
use lcakit::operators::{induced_structures_from_rb, nijenhuis_deformed, nijenhuis_twisting_data};
use lcakit::poly::int;
use lcakit::{
    Error, FreeModule, LambdaValue, LieConformalAlgebra, ModuleMap, MultiPoly, Representation,
    Scalar, Table,
};
use proptest::prelude::*;

fn weight2() -> MultiPoly {
    MultiPoly::d() + MultiPoly::lambda(1).scale(&int(2))
}

fn diag(entries: &[i64]) -> ModuleMap {
    let n = entries.len();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        MultiPoly::constant(int(entries[i]))
                    } else {
                        MultiPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    ModuleMap::new(n, n, matrix).unwrap()
}

type Mat = [[i64; 2]; 2];

fn mul(x: &Mat, y: &Mat) -> Mat {
    let mut z = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            z[i][j] = (0..2).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    z
}

fn sub(x: &Mat, y: &Mat) -> Mat {
    [
        [x[0][0] - y[0][0], x[0][1] - y[0][1]],
        [x[1][0] - y[1][0], x[1][1] - y[1][1]],
    ]
}

/// Matrix unit E_{ij} for generator index 2i + j.
fn unit(g: usize) -> Mat {
    let mut m = [[0; 2]; 2];
    m[g / 2][g % 2] = 1;
    m
}

fn value(m: &Mat) -> LambdaValue {
    LambdaValue::from_coeffs(
        (0..4)
            .map(|g| MultiPoly::constant(int(m[g / 2][g % 2])))
            .collect(),
    )
}

fn m2_module() -> FreeModule {
    FreeModule::new("Cur", &["e11", "e12", "e21", "e22"]).unwrap()
}

fn m2_table(f: impl Fn(&Mat, &Mat) -> Mat) -> Table {
    Table::from_fn(vec![4, 4], 4, |idx| value(&f(&unit(idx[0]), &unit(idx[1]))))
}

/// Cur(gl₂) with the commutator bracket.
fn cur_gl2() -> LieConformalAlgebra {
    LieConformalAlgebra::new(m2_module(), m2_table(|x, y| sub(&mul(x, y), &mul(y, x)))).unwrap()
}

fn left_mult(a: &Mat) -> ModuleMap {
    let images: Vec<LambdaValue> = (0..4).map(|g| value(&mul(a, &unit(g)))).collect();
    ModuleMap::from_images(4, &images).unwrap()
}

/// x ≻ y = (ax)y, x ≺ y = x(ay), x ⋎ y = −a(xy) on Cur(M₂).
fn left_mult_ns(a: Mat) -> ConformalNSStructure {
    ConformalNSStructure::new(
        m2_module(),
        m2_table(|x, y| mul(&mul(&a, x), y)),
        m2_table(|x, y| mul(x, &mul(&a, y))),
        m2_table(|x, y| sub(&[[0; 2]; 2], &mul(&a, &mul(x, y)))),
    )
    .unwrap()
}

#[test]
fn scalar_nijenhuis_on_virasoro() {
    let vir = virasoro();
    for c in [-2, 0, 1, 3] {
        let s = nslie_from_nijenhuis(&ModuleMap::scalar(1, &int(c)), &vir, None, None).unwrap();
        assert_eq!(
            s.circ.get(&[0, 0]),
            &LambdaValue::single(1, 0, weight2().scale(&int(c)))
        );
        assert_eq!(
            s.vee.get(&[0, 0]),
            &LambdaValue::single(1, 0, weight2().scale(&int(-c)))
        );
        assert!(validate_nslie(&s).passed());
        let sub = subadjacent(&s).unwrap();
        assert!(sub.report.passed(), "{}", sub.report.summary());
        assert_eq!(sub.algebra.bracket, vir.bracket.scale(&int(c)));
    }
}

#[test]
fn identity_with_minus_bracket_gives_bracket_and_minus_bracket() {
    for alg in [virasoro(), current_sl2()] {
        let adj = Representation::adjoint(&alg);
        let s = nslie_from_twisted_rb(&ModuleMap::identity(alg.rank()), &adj, &alg.bracket.neg())
            .unwrap();
        assert_eq!(s.circ, alg.bracket);
        assert_eq!(s.vee, alg.bracket.neg());
        assert_eq!(s.subadjacent_bracket(), alg.bracket);
    }
}

#[test]
fn nijenhuis_route_matches_twisted_rb_route() {
    let sl2 = current_sl2();
    let ns = [
        (virasoro(), ModuleMap::scalar(1, &int(2))),
        (sl2.clone(), diag(&[1, 0, 1])),
        (sl2.clone(), diag(&[1, 2, 1])),
        (sl2, diag(&[3, 3, 3])),
    ];
    for (alg, n) in ns {
        let direct = nslie_from_nijenhuis(&n, &alg, None, None).unwrap();
        let (rep, phi) = nijenhuis_twisting_data(&n, &alg).unwrap();
        let via_rb = nslie_from_twisted_rb(&ModuleMap::identity(alg.rank()), &rep, &phi).unwrap();
        assert_eq!(direct, via_rb);
        let sub = subadjacent(&direct).unwrap();
        assert!(sub.report.passed(), "{}", sub.report.summary());
        assert_eq!(
            sub.algebra.bracket,
            nijenhuis_deformed(&alg, &n).unwrap().bracket
        );
    }
}

#[test]
fn subadjacent_bracket_is_the_induced_bracket() {
    let sl2 = current_sl2();
    let cases = [
        (virasoro(), ModuleMap::identity(1)),
        (sl2.clone(), diag(&[1, 0, 1])),
        (sl2, diag(&[0, 1, 0])),
    ];
    for (alg, n) in cases {
        let (rep, phi) = nijenhuis_twisting_data(&n, &alg).unwrap();
        let t = ModuleMap::identity(alg.rank());
        let s = nslie_from_twisted_rb(&t, &rep, &phi).unwrap();
        let induced = induced_structures_from_rb(&t, &rep, Some(&phi)).unwrap();
        assert_eq!(s.subadjacent_bracket(), induced.m_algebra.bracket);
    }
}

#[test]
fn higher_power_structures_are_ns_lie() {
    let sl2 = current_sl2();
    let n = diag(&[1, 2, 1]);
    for k in 0..=2 {
        for l in 0..=2 {
            let s = nslie_from_nijenhuis(&n, &sl2, Some(k), Some(l)).unwrap();
            let v = validate_nslie(&s);
            assert!(v.passed(), "k={k} l={l}: {}", v.summary());
        }
    }
    let e = nslie_from_nijenhuis(&n, &sl2, Some(4), None).unwrap_err();
    assert_eq!(
        e,
        Error::PowerOutOfRange {
            requested: 4,
            max: 3
        }
    );
}

#[test]
fn constructions_reject_invalid_operators() {
    let vir = virasoro();
    let dl = ModuleMap::new(1, 1, vec![vec![MultiPoly::d()]]).unwrap();
    assert!(matches!(
        nslie_from_nijenhuis(&dl, &vir, None, None),
        Err(Error::NotNijenhuis(_))
    ));
    let adj = Representation::adjoint(&vir);
    let two = ModuleMap::scalar(1, &int(2));
    assert!(matches!(
        nslie_from_twisted_rb(&two, &adj, &vir.bracket.neg()),
        Err(Error::NotRotaBaxter(_))
    ));
}

#[test]
fn non_ns_lie_data_is_rejected() {
    let vir = virasoro();
    // ∘ = bracket, ∨ = 0 fails the first axiom
    let s = NSLieStructure::new(
        vir.module.clone(),
        vir.bracket.clone(),
        Table::zero(vec![1, 1], 1),
    )
    .unwrap();
    let v = validate_nslie(&s);
    assert!(!v.passed_named("ns1"));
    assert!(matches!(subadjacent(&s), Err(Error::NotNSLie(_))));
    // a non-skew ∨ is caught by the skew-symmetry check
    let vee = Table::from_fn(vec![1, 1], 1, |_| LambdaValue::single(1, 0, MultiPoly::d()));
    let s = NSLieStructure::new(vir.module.clone(), Table::zero(vec![1, 1], 1), vee).unwrap();
    assert!(!validate_nslie(&s).passed_named("vee-skew-symmetry"));
}

#[test]
fn left_multiplication_ns_algebra() {
    let a = [[2, 1], [0, -1]];
    let ns = left_mult_ns(a);
    let v = validate_conformal_ns(&ns);
    assert!(v.passed(), "{}", v.summary());
    let s = nslie_from_conformal_ns(&ns).unwrap();
    let gl2 = cur_gl2();
    let n = left_mult(&a);
    assert_eq!(s, nslie_from_nijenhuis(&n, &gl2, None, None).unwrap());
    // [x, y]_sub = xay − yax
    let want = m2_table(|x, y| sub(&mul(&mul(x, &a), y), &mul(&mul(y, &a), x)));
    assert_eq!(s.subadjacent_bracket(), want);
    assert!(subadjacent(&s).unwrap().report.passed());
}

#[test]
fn rank_one_ns_algebras() {
    let m = FreeModule::new("C", &["x"]).unwrap();
    let one = Table::from_fn(vec![1, 1], 1, |_| LambdaValue::generator(1, 0));
    let zero = Table::zero(vec![1, 1], 1);
    let ns = ConformalNSStructure::new(m.clone(), one.clone(), zero.clone(), zero.clone()).unwrap();
    assert!(validate_conformal_ns(&ns).passed());
    let ns = ConformalNSStructure::new(m, one.clone(), one, zero).unwrap();
    let v = validate_conformal_ns(&ns);
    assert!(!v.passed_named("ns11"));
    assert!(matches!(
        nslie_from_conformal_ns(&ns),
        Err(Error::NotConformalNS(_))
    ));
}

fn sl2_scaling() -> ModuleMap {
    let half = Scalar::new(1.into(), 2.into());
    let matrix = vec![
        vec![
            MultiPoly::constant(int(2)),
            MultiPoly::zero(),
            MultiPoly::zero(),
        ],
        vec![
            MultiPoly::zero(),
            MultiPoly::constant(half),
            MultiPoly::zero(),
        ],
        vec![
            MultiPoly::zero(),
            MultiPoly::zero(),
            MultiPoly::constant(int(1)),
        ],
    ];
    ModuleMap::new(3, 3, matrix).unwrap()
}

#[test]
fn automorphism_is_a_rota_baxter_morphism() {
    let sl2 = current_sl2();
    let op = TwistedOperator {
        t: ModuleMap::identity(3),
        rep: Representation::adjoint(&sl2),
        phi: sl2.bracket.neg(),
    };
    let g = sl2_scaling();
    let r = check_rb_morphism(&g, &g, &op, &op).unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert!(r.passed_named("induced.circ-morphism"));
    assert!(r.passed_named("induced.vee-morphism"));
    let two = ModuleMap::scalar(3, &int(2));
    let r = check_rb_morphism(&two, &two, &op, &op).unwrap();
    assert!(!r.passed_named("actions-intertwine"));
    assert!(!r.passed_named("cocycles-match"));
}

#[test]
fn nslie_morphism_check() {
    let sl2 = current_sl2();
    let s = nslie_from_nijenhuis(&ModuleMap::identity(3), &sl2, None, None).unwrap();
    assert!(check_nslie_morphism(&sl2_scaling(), &s, &s)
        .unwrap()
        .passed());
    let swap = diag(&[1, 1, -1]);
    assert!(!check_nslie_morphism(&swap, &s, &s).unwrap().passed());
    let wrong = ModuleMap::identity(2);
    assert!(matches!(
        check_nslie_morphism(&wrong, &s, &s),
        Err(Error::ModuleMismatch(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn left_multiplication_is_always_ns(a in proptest::array::uniform2(proptest::array::uniform2(-2i64..=2))) {
        let ns = left_mult_ns(a);
        prop_assert!(validate_conformal_ns(&ns).passed());
        let s = nslie_from_conformal_ns(&ns).unwrap();
        prop_assert_eq!(s, nslie_from_nijenhuis(&left_mult(&a), &cur_gl2(), None, None).unwrap());
    }

    #[test]
    fn scalar_structures_on_virasoro(c in -4i64..=4, d in -4i64..=4) {
        // ∘ = c·br, ∨ = d·br is NS-Lie iff c(c + d) = 0
        let vir = virasoro();
        let s = NSLieStructure::new(vir.module.clone(), vir.bracket.scale(&int(c)), vir.bracket.scale(&int(d))).unwrap();
        prop_assert_eq!(validate_nslie(&s).passed(), c * (c + d) == 0);
    }
}

#[test]
fn current_algebra_fixture_is_lie() {
    assert!(cur_gl2().is_lie());
}
