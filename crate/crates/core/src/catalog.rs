//! Standard small examples: the Virasoro algebra, its modules M_{Δ,α},
//! current algebras and abelian algebras.

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::module::FreeModule;
use crate::poly::{MultiPoly, Scalar};
use crate::table::Table;
use crate::value::LambdaValue;

fn x1() -> MultiPoly {
    MultiPoly::lambda(1)
}

/// Rank one with [L_λ L] = (∂ + cλ)L; a Lie conformal algebra exactly when c = 2.
pub fn virasoro_with_weight(c: &Scalar) -> LieConformalAlgebra {
    let m = FreeModule::new("Vir", &["L"]).expect("valid module");
    let v = LambdaValue::single(1, 0, MultiPoly::d() + x1().scale(c));
    LieConformalAlgebra::from_entries(m, &[((0, 0), v)]).expect("rank one table")
}

/// [L_λ L] = (∂ + 2λ)L
pub fn virasoro() -> LieConformalAlgebra {
    virasoro_with_weight(&Scalar::from_integer(2.into()))
}

/// M_{Δ,α} = ℚ[∂]v with ρ(L)_λ v = (∂ + Δλ + α)v.
pub fn virasoro_module(delta: &Scalar, alpha: &Scalar) -> Representation {
    let space = FreeModule::new("M", &["v"]).expect("valid module");
    let act = LambdaValue::single(
        1,
        0,
        MultiPoly::d() + x1().scale(delta) + MultiPoly::constant(alpha.clone()),
    );
    Representation::from_entries(virasoro(), space, &[((0, 0), act)]).expect("rank one table")
}

/// Current algebra Cur(g) for a Lie algebra with structure constants
/// `[gᵢ, gⱼ] = Σ c_{ij}^k g_k`: [a_λ b] = [a, b].
pub fn current_algebra(
    name: &str,
    generators: &[&str],
    structure: &[((usize, usize), Vec<Scalar>)],
) -> LieConformalAlgebra {
    let m = FreeModule::new(name, generators).expect("valid module");
    let r = m.rank();
    let mut t = Table::zero(vec![r, r], r);
    for ((i, j), coeffs) in structure {
        let v = LambdaValue::from_coeffs(
            coeffs
                .iter()
                .map(|c| MultiPoly::constant(c.clone()))
                .collect(),
        );
        t.set(&[*i, *j], v.clone());
        t.set(&[*j, *i], -v);
    }
    LieConformalAlgebra::new(m, t).expect("square table")
}

/// Cur(sl₂) on e, f, h with [e, f] = h, [h, e] = 2e, [h, f] = −2f.
pub fn current_sl2() -> LieConformalAlgebra {
    let s = |n: i64| Scalar::from_integer(n.into());
    current_algebra(
        "Cur",
        &["e", "f", "h"],
        &[
            ((0, 1), vec![s(0), s(0), s(1)]),
            ((2, 0), vec![s(2), s(0), s(0)]),
            ((2, 1), vec![s(0), s(-2), s(0)]),
        ],
    )
}

pub fn abelian(name: &str, rank: usize) -> LieConformalAlgebra {
    let names: Vec<String> = (1..=rank).map(|i| format!("g{i}")).collect();
    LieConformalAlgebra::abelian(FreeModule::from_names(name, names).expect("valid module"))
}
