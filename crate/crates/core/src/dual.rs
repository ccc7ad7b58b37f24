//! Conformal duals of free modules.
//!
//! For M free on g₁, …, g_n the conformal dual M^{*c} is free on dual
//! generators gⁱ with pairing gⁱ_μ(∂^d g_j) = δᵢⱼ μ^d and ∂-action
//! (∂f)_μ = −μ f_μ. The dual action is determined by
//! (ρ*(a)_λ f)_μ(v) = −f_{μ−λ}(ρ(a)_λ v).

use crate::algebra::Representation;
use crate::error::{Error, Result};
use crate::module::FreeModule;
use crate::poly::MultiPoly;
use crate::report::Check;
use crate::table::Table;
use crate::value::LambdaValue;

pub fn dual_module(m: &FreeModule) -> FreeModule {
    FreeModule {
        name: format!("{}*", m.name),
        generators: m.generators.iter().map(|g| format!("{g}*")).collect(),
    }
}

/// f_μ(v) for f in the dual (coefficients may carry λ's) and v in M, with μ
/// given as a polynomial.
pub fn pairing(f: &LambdaValue, v: &LambdaValue, mu: &MultiPoly) -> MultiPoly {
    assert_eq!(f.rank(), v.rank(), "pairing of modules of different rank");
    let neg_mu = -mu;
    let mut acc = MultiPoly::zero();
    for (p, q) in f.coeffs().iter().zip(v.coeffs()) {
        if p.is_zero() || q.is_zero() {
            continue;
        }
        // (p(∂) gⁱ)_μ = p(−μ) gⁱ_μ and gⁱ_μ(q(∂) gᵢ) = q(μ)
        acc += &(p.compose(&[Some(&neg_mu)]) * q.compose(&[Some(mu)]));
    }
    acc
}

/// The action on M^{*c}: ρ*(a)_λ gᵐ = Σⱼ −P_{mj}(λ, −∂−λ) gʲ, where
/// ρ(a)_λ gⱼ = Σₗ P_{lj}(λ, ∂) gₗ. The result is checked against the
/// defining pairing identity.
pub fn conformal_dual(rep: &Representation) -> Result<Representation> {
    let ra = rep.algebra.rank();
    let n = rep.space.rank();
    let shifted = -(MultiPoly::d() + MultiPoly::lambda(1));
    let action = Table::from_fn(vec![ra, n], n, |idx| {
        let (a, m) = (idx[0], idx[1]);
        let coeffs = (0..n)
            .map(|j| {
                let p = rep.action.get(&[a, j]).coeff(m);
                -p.compose(&[Some(&shifted)])
            })
            .collect();
        LambdaValue::from_coeffs(coeffs)
    });
    let dual = Representation {
        algebra: rep.algebra.clone(),
        space: dual_module(&rep.space),
        action,
    };
    let check = check_dual_pairing(rep, &dual);
    if !check.passed {
        return Err(Error::DualizationFailure(
            check
                .witnesses
                .first()
                .map(|w| w.rendered.clone())
                .unwrap_or_default(),
        ));
    }
    Ok(dual)
}

/// (ρ*(a)_λ gᵐ)_μ(gⱼ) + gᵐ_{μ−λ}(ρ(a)_λ gⱼ) = 0 on all generators, with μ = λ₂.
pub fn check_dual_pairing(rep: &Representation, dual: &Representation) -> Check {
    let ra = rep.algebra.rank();
    let n = rep.space.rank();
    let lam = MultiPoly::lambda(1);
    let mu = MultiPoly::lambda(2);
    let mut c = Check::new("dual-pairing", "conformal dual pairing");
    for a in 0..ra {
        for m in 0..n {
            for j in 0..n {
                let ga = rep.algebra.module.generator(a);
                let fm = dual.space.generator(m);
                let gj = rep.space.generator(j);
                let lhs = pairing(&dual.act(&lam, &ga, &fm), &gj, &mu);
                let rhs = -pairing(&fm, &rep.act(&lam, &ga, &gj), &(&mu - &lam));
                let diff = LambdaValue::from_coeffs(vec![lhs - rhs]);
                c.record(
                    vec![
                        rep.algebra.names()[a].clone(),
                        dual.space.generators[m].clone(),
                        rep.space.generators[j].clone(),
                    ],
                    diff,
                    &["1".to_string()],
                );
            }
        }
    }
    c
}
