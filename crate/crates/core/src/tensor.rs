//! Tensor squares and cubes of a free ℚ[∂]-module, the conformal classical
//! Yang-Baxter equation and the map r♯.
//!
//! A coefficient attached to a tuple of generators is a polynomial in λ₁, λ₂,
//! λ₃, where λᵢ stands for ∂ acting on the i-th tensor factor.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::dual::conformal_dual;
use crate::error::{Error, Result};
use crate::module::ModuleMap;
use crate::operators::check_relative_rb;
use crate::poly::{Monomial, MultiPoly, Scalar};
use crate::report::{AxiomReport, Check};
use crate::value::LambdaValue;

fn factor(i: usize) -> MultiPoly {
    MultiPoly::lambda(i)
}

fn render_poly(p: &MultiPoly) -> String {
    let s = p.to_string();
    s.replace('x', "d")
}

/// Σ c ∂^{d₁}gᵢ ⊗ ∂^{d₂}gⱼ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorSquare {
    pub rank: usize,
    pub coeffs: BTreeMap<(usize, usize), MultiPoly>,
}

impl TensorSquare {
    pub fn zero(rank: usize) -> Self {
        TensorSquare {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    /// Add c ∂^{d1}g_i ⊗ ∂^{d2}g_j.
    pub fn add_term(&mut self, i: usize, d1: u32, j: usize, d2: u32, c: Scalar) {
        assert!(
            i < self.rank && j < self.rank,
            "generator index out of range"
        );
        let m = MultiPoly::monomial(Monomial::from_exponents(&[0, d1, d2]), c);
        self.add_coeff(i, j, &m);
    }

    pub fn add_coeff(&mut self, i: usize, j: usize, p: &MultiPoly) {
        let e = self.coeffs.entry((i, j)).or_insert_with(MultiPoly::zero);
        *e += p;
        if e.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// r²¹ = Σ bᵢ ⊗ aᵢ.
    pub fn transpose(&self) -> TensorSquare {
        let mut out = TensorSquare::zero(self.rank);
        for ((i, j), p) in &self.coeffs {
            out.add_coeff(*j, *i, &p.rename(swap12));
        }
        out
    }

    /// r = −r²¹
    pub fn is_skew(&self) -> bool {
        let mut s = self.clone();
        for ((i, j), p) in &self.transpose().coeffs {
            s.add_coeff(*i, *j, p);
        }
        s.is_zero()
    }

    /// (gᵢ, d₁, gⱼ, d₂, c) for every term.
    pub fn terms(&self) -> Vec<(usize, u32, usize, u32, Scalar)> {
        let mut out = Vec::new();
        for ((i, j), p) in &self.coeffs {
            for (m, c) in p.terms() {
                out.push((*i, m.exponent(1), *j, m.exponent(2), c.clone()));
            }
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        for ((i, j), p) in &self.coeffs {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let _ = write!(s, "({}) {}⊗{}", render_poly(p), names[*i], names[*j]);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

fn swap12(i: usize) -> usize {
    match i {
        1 => 2,
        2 => 1,
        k => k,
    }
}

/// Σ c ∂^{d₁}gᵢ ⊗ ∂^{d₂}gⱼ ⊗ ∂^{d₃}g_k.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorCube {
    pub rank: usize,
    pub coeffs: BTreeMap<(usize, usize, usize), MultiPoly>,
}

impl TensorCube {
    pub fn zero(rank: usize) -> Self {
        TensorCube {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_coeff(&mut self, key: (usize, usize, usize), p: &MultiPoly) {
        let e = self.coeffs.entry(key).or_insert_with(MultiPoly::zero);
        *e += p;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Canonical representative modulo the image of ∂⊗1⊗1 + 1⊗∂⊗1 + 1⊗1⊗∂,
    /// obtained by ∂₃ ↦ −∂₁ − ∂₂.
    pub fn reduce_mod_partial(&self) -> TensorCube {
        let sub = -(factor(1) + factor(2));
        let mut out = TensorCube::zero(self.rank);
        for (k, p) in &self.coeffs {
            out.add_coeff(*k, &p.compose(&[None, None, None, Some(&sub)]));
        }
        out
    }
}

/// x_μ y for two elements with the bracket's ∂ sent to factor `d` and μ to
/// factor `mu`.
fn bracket_on_factors(
    alg: &LieConformalAlgebra,
    x: &LambdaValue,
    y: &LambdaValue,
    d: usize,
    mu: usize,
) -> Vec<MultiPoly> {
    let b = alg.bracket_at(&MultiPoly::lambda(1), x, y);
    let (fd, fm) = (factor(d), factor(mu));
    b.coeffs()
        .iter()
        .map(|p| p.compose(&[Some(&fd), Some(&fm)]))
        .collect()
}

fn power_element(rank: usize, g: usize, d: u32) -> LambdaValue {
    LambdaValue::generator(rank, g).partial_pow(d)
}

/// ⟦r, r⟧ before reduction: the three-term sum with μ read as ∂ on the
/// indicated factor.
pub fn ccybe_cube(r: &TensorSquare, alg: &LieConformalAlgebra) -> Result<TensorCube> {
    if r.rank != alg.rank() {
        return Err(Error::ModuleMismatch(format!(
            "tensor is not over {}",
            alg.module.name
        )));
    }
    let n = alg.rank();
    let terms = r.terms();
    let mono = |f: usize, e: u32| factor(f).pow(e);
    let mut out = TensorCube::zero(n);
    for (ai, p1, bi, q1, c1) in &terms {
        for (aj, p2, bj, q2, c2) in &terms {
            let c = MultiPoly::constant(c1 * c2);
            let x_ai = power_element(n, *ai, *p1);
            let x_aj = power_element(n, *aj, *p2);
            let x_bi = power_element(n, *bi, *q1);
            let x_bj = power_element(n, *bj, *q2);
            // [a_i μ a_j] ⊗ b_i ⊗ b_j, μ = 1⊗∂⊗1
            let outer = &(&c * &mono(2, *q1)) * &mono(3, *q2);
            for (g, p) in bracket_on_factors(alg, &x_ai, &x_aj, 1, 2)
                .iter()
                .enumerate()
            {
                out.add_coeff((g, *bi, *bj), &(p * &outer));
            }
            // −a_i ⊗ [a_j μ b_i] ⊗ b_j, μ = 1⊗1⊗∂
            let outer = &(&c * &mono(1, *p1)) * &mono(3, *q2);
            for (g, p) in bracket_on_factors(alg, &x_aj, &x_bi, 2, 3)
                .iter()
                .enumerate()
            {
                out.add_coeff((*ai, g, *bj), &-(p * &outer));
            }
            // −a_i ⊗ a_j ⊗ [b_j μ b_i], μ = 1⊗∂⊗1
            let outer = &(&c * &mono(1, *p1)) * &mono(2, *p2);
            for (g, p) in bracket_on_factors(alg, &x_bj, &x_bi, 3, 2)
                .iter()
                .enumerate()
            {
                out.add_coeff((*ai, *aj, g), &-(p * &outer));
            }
        }
    }
    Ok(out)
}

/// ⟦r, r⟧ ≡ 0 modulo ∂^{⊗3}.
pub fn ccybe_check(r: &TensorSquare, alg: &LieConformalAlgebra) -> Result<AxiomReport> {
    let reduced = ccybe_cube(r, alg)?.reduce_mod_partial();
    let names = alg.names();
    let mut c = Check::new("ccybe", "conformal classical yang-baxter equation");
    for ((i, j, k), p) in &reduced.coeffs {
        let label = format!("{}⊗{}⊗{}", names[*i], names[*j], names[*k]);
        c.record(
            vec![names[*i].clone(), names[*j].clone(), names[*k].clone()],
            LambdaValue::from_coeffs(vec![p.clone()]),
            &[label],
        );
    }
    let mut c = c.with_note(format!(
        "di is d on tensor factor i; r skew-symmetric: {}",
        r.is_skew()
    ));
    for w in &mut c.witnesses {
        w.rendered = format!(
            "({}) {}",
            render_poly(&w.difference.coeffs()[0]),
            w.tuple.join("⊗")
        );
    }
    let mut report = AxiomReport::new();
    report.push(c);
    Ok(report)
}

/// r♯₀: A^{*c} → A, gᵐ ↦ Σ c (−∂)^{d₁}∂^{d₂} gⱼ over the terms c ∂^{d₁}gₘ ⊗ ∂^{d₂}gⱼ.
pub fn r_sharp(r: &TensorSquare) -> ModuleMap {
    let n = r.rank;
    let mut matrix = vec![vec![MultiPoly::zero(); n]; n];
    let minus_d = -MultiPoly::d();
    let d = MultiPoly::d();
    for ((m, j), p) in &r.coeffs {
        matrix[*j][*m] += &p.compose(&[None, Some(&minus_d), Some(&d)]);
    }
    ModuleMap::new(n, n, matrix).expect("square matrix")
}

/// For skew r: the CCYBE verdict and the relative Rota-Baxter verdict of r♯₀
/// over the coadjoint module, with a check that the two agree.
pub fn r_sharp_equivalence(r: &TensorSquare, alg: &LieConformalAlgebra) -> Result<AxiomReport> {
    if !r.is_skew() {
        return Err(Error::NotSkew);
    }
    let coadjoint = conformal_dual(&Representation::adjoint(alg))?;
    let rb = check_relative_rb(&r_sharp(r), &coadjoint)?;
    let cc = ccybe_check(r, alg)?;
    let agree = rb.passed() == cc.passed();
    let mut report = AxiomReport::new();
    report.extend(cc);
    report.extend(rb);
    report.push(Check::verdict(
        "agreement",
        "yang-baxter and rota-baxter verdicts",
        agree,
        None,
    ));
    Ok(report)
}
