//! Cochains with coefficients in a module, the coboundary operator and the
//! Nijenhuis–Richardson bracket.
//!
//! A k-cochain is a [`Table`] with k slots over the algebra and values in the
//! module, polynomial in λ₁, …, λ_{k−1}. A 0-cochain is a table with no slots
//! holding one module element, taken modulo ∂M.

use std::collections::BTreeMap;

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::module::FreeModule;
use crate::perm::{factorial, permutations, unshuffles};
use crate::poly::{int, Monomial, MultiPoly, Scalar};
use crate::report::{AxiomReport, Check};
use crate::table::{tuples, Table};
use crate::value::LambdaValue;

pub const DEFAULT_MAX_ARITY: usize = 5;

fn lambdas(k: usize) -> Vec<MultiPoly> {
    (1..=k).map(MultiPoly::lambda).collect()
}

fn sign(s: i64) -> Scalar {
    int(s)
}

fn parity(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The 0-cochain m̄ as a table without slots.
pub fn zero_cochain(m: LambdaValue) -> Table {
    let r = m.rank();
    let mut t = Table::zero(vec![], r);
    t.set(&[], m);
    t
}

/// Check the simultaneous-permutation skew-symmetry of a cochain on all
/// generator tuples and all permutations.
pub fn validate_cochain(f: &Table, source: &FreeModule, target: &FreeModule) -> AxiomReport {
    let mut rep = AxiomReport::new();
    let k = f.arity();
    let mut shape = Check::new("shape", "cochain shape");
    if f.slot_ranks().iter().any(|&r| r != source.rank()) || f.target_rank() != target.rank() {
        shape.fail("table shape does not match the source and target modules");
        rep.push(shape);
        return rep;
    }
    let stray = f
        .values()
        .iter()
        .any(|v| v.max_var_index() > k.saturating_sub(1));
    if stray {
        shape.fail(format!("values may only use x1..x{}", k.saturating_sub(1)));
    }
    rep.push(shape);
    let mut skew = Check::new(
        "cochain-skew-symmetry",
        "skew-symmetry under simultaneous permutations",
    );
    if k >= 2 {
        for sigma in permutations(k).into_iter().skip(1) {
            let moved = f.permuted(&sigma.0).scale(&sign(sigma.sign()));
            for (idx, v) in f.entries() {
                let d = v - moved.get(&idx);
                skew.record(
                    idx.iter().map(|&i| source.generators[i].clone()).collect(),
                    d,
                    &target.generators,
                );
            }
        }
    }
    rep.push(skew);
    rep
}

pub fn is_valid_cochain(f: &Table) -> bool {
    let k = f.arity();
    if f.values()
        .iter()
        .any(|v| v.max_var_index() > k.saturating_sub(1))
    {
        return false;
    }
    if k < 2 {
        return true;
    }
    permutations(k)
        .into_iter()
        .skip(1)
        .all(|sigma| f.permuted(&sigma.0).scale(&sign(sigma.sign())) == *f)
}

/// Average over the symmetric group with signs: projects any table onto the
/// space of skew-symmetric cochains.
pub fn skew_symmetrize(f: &Table) -> Table {
    let k = f.arity();
    if k < 2 {
        return f.clone();
    }
    let mut acc = Table::zero(f.slot_ranks().to_vec(), f.target_rank());
    for sigma in permutations(k) {
        acc = acc.add(&f.permuted(&sigma.0).scale(&sign(sigma.sign())));
    }
    acc.scale(&Scalar::new(1.into(), (factorial(k) as i64).into()))
}

/// The cochain complex C*(A, M) of a module.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub rep: Representation,
    pub max_arity: usize,
}

impl CochainComplex {
    pub fn new(rep: Representation) -> Self {
        CochainComplex {
            rep,
            max_arity: DEFAULT_MAX_ARITY,
        }
    }

    pub fn adjoint(algebra: &LieConformalAlgebra) -> Self {
        Self::new(Representation::adjoint(algebra))
    }

    pub fn with_max_arity(mut self, max_arity: usize) -> Self {
        self.max_arity = max_arity;
        self
    }

    fn algebra(&self) -> &LieConformalAlgebra {
        &self.rep.algebra
    }

    fn check_cochain(&self, f: &Table) -> Result<()> {
        let ra = self.algebra().rank();
        if f.slot_ranks().iter().any(|&r| r != ra) || f.target_rank() != self.rep.space.rank() {
            return Err(Error::ModuleMismatch(format!(
                "cochain is not in C*({}, {})",
                self.algebra().module.name,
                self.rep.space.name
            )));
        }
        Ok(())
    }

    /// **d**f, computed term by term from the four-sum formula.
    pub fn coboundary(&self, f: &Table) -> Result<Table> {
        self.check_cochain(f)?;
        let k = f.arity();
        if k + 1 > self.max_arity {
            return Err(Error::ArityOverflow {
                requested: k + 1,
                max: self.max_arity,
            });
        }
        let ra = self.algebra().rank();
        let rm = self.rep.space.rank();
        if k == 0 {
            // (d m̄)(a) = ρ(a)_{−∂} m
            let m = f.get(&[]).clone();
            let minus_d = -MultiPoly::d();
            return Ok(Table::from_fn(vec![ra], rm, |idx| {
                self.rep
                    .act(&minus_d, &self.algebra().module.generator(idx[0]), &m)
            }));
        }
        let lam = lambdas(k);
        let dagger = MultiPoly::dagger(k);
        let gen = |i: usize| self.algebra().module.generator(i);
        Ok(Table::from_fn(vec![ra; k + 1], rm, |idx| {
            let a: Vec<LambdaValue> = idx.iter().map(|&i| gen(i)).collect();
            let mut out = LambdaValue::zero(rm);
            for i in 0..k {
                // (−1)^{i+1} ρ(a_i)_{λ_i} f(…â_i…)
                let args: Vec<&LambdaValue> = (0..=k).filter(|&j| j != i).map(|j| &a[j]).collect();
                let ls: Vec<MultiPoly> =
                    (0..k).filter(|&j| j != i).map(|j| lam[j].clone()).collect();
                let inner = f.eval(&ls, &args);
                let t = self.rep.act(&lam[i], &a[i], &inner);
                if parity(i) > 0 {
                    out += &t;
                } else {
                    out -= &t;
                }
                // (−1)^i f(…â_i…, [a_i λ_i a_{k+1}])
                let br = self.algebra().bracket_at(&lam[i], &a[i], &a[k]);
                let mut args: Vec<&LambdaValue> =
                    (0..k).filter(|&j| j != i).map(|j| &a[j]).collect();
                args.push(&br);
                let t = f.eval(&ls, &args);
                if parity(i + 1) > 0 {
                    out += &t;
                } else {
                    out -= &t;
                }
            }
            for i in 0..k {
                for j in i + 1..k {
                    // (−1)^{k+i+j+1} f_{…, λ†}(…, [a_i λ_i a_j]) with 1-based i, j
                    let br = self.algebra().bracket_at(&lam[i], &a[i], &a[j]);
                    let mut args: Vec<&LambdaValue> = (0..=k)
                        .filter(|&l| l != i && l != j)
                        .map(|l| &a[l])
                        .collect();
                    args.push(&br);
                    let mut ls: Vec<MultiPoly> = (0..k)
                        .filter(|&l| l != i && l != j)
                        .map(|l| lam[l].clone())
                        .collect();
                    ls.push(dagger.clone());
                    let t = f.eval(&ls, &args);
                    if parity(k + (i + 1) + (j + 1) + 1) > 0 {
                        out += &t;
                    } else {
                        out -= &t;
                    }
                }
            }
            // (−1)^k ρ(a_{k+1})_{λ†} f(a_1, …, a_k)
            let args: Vec<&LambdaValue> = a[..k].iter().collect();
            let inner = f.eval(&lam[..k - 1], &args);
            let t = self.rep.act(&dagger, &a[k], &inner);
            if parity(k) > 0 {
                out += &t;
            } else {
                out -= &t;
            }
            out
        }))
    }

    /// **d**f computed instead as (−1)^{k−1}[π̂ + ρ̂, f̂]_NR on A ⊕ M and
    /// restricted back to C^{k+1}(A, M).
    pub fn coboundary_via_nr(&self, f: &Table) -> Result<Table> {
        self.check_cochain(f)?;
        let k = f.arity();
        if k == 0 {
            return self.coboundary(f);
        }
        let semi = self.rep.semidirect_unchecked();
        let ra = self.algebra().rank();
        let rm = self.rep.space.rank();
        let n = ra + rm;
        let lifted = Table::from_fn(vec![n; k], n, |idx| {
            if idx.iter().all(|&i| i < ra) {
                f.get(idx).embed(n, ra)
            } else {
                LambdaValue::zero(n)
            }
        });
        let br = nr_bracket(&semi.bracket, &lifted).scale(&int(parity(k - 1)));
        Ok(Table::from_fn(vec![ra; k + 1], rm, |idx| {
            br.get(idx).project(ra, rm)
        }))
    }

    pub fn is_cocycle(&self, f: &Table) -> Result<AxiomReport> {
        let df = self.coboundary(f)?;
        let mut c = Check::new("cocycle", "cocycle condition");
        let names = &self.algebra().module.generators;
        for (idx, v) in df.entries() {
            c.record(
                idx.iter().map(|&i| names[i].clone()).collect(),
                v.clone(),
                &self.rep.space.generators,
            );
        }
        let mut rep = AxiomReport::new();
        rep.push(c);
        Ok(rep)
    }

    /// Spanning set of valid (k)-cochains of degree ≤ `bound` in λ's and ∂.
    pub fn cochain_basis(&self, k: usize, bound: u32) -> Vec<Table> {
        let ra = self.algebra().rank();
        let rm = self.rep.space.rank();
        if k == 0 {
            return (0..rm)
                .map(|t| zero_cochain(self.rep.space.generator(t)))
                .collect();
        }
        let monos = monomials(k, bound);
        let mut out = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for idx in tuples(&vec![ra; k]) {
            for t in 0..rm {
                for m in &monos {
                    let mut e = Table::zero(vec![ra; k], rm);
                    e.set(
                        &idx,
                        LambdaValue::single(rm, t, MultiPoly::monomial(m.clone(), int(1))),
                    );
                    let s = skew_symmetrize(&e);
                    if !s.is_zero() && seen.insert(format!("{s:?}")) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Decide whether the cocycle `f` is **d**g for some g with all degrees
    /// ≤ `bound`; returns such a g when one exists.
    pub fn is_coboundary_bounded(&self, f: &Table, bound: u32) -> Result<CoboundarySearch> {
        self.check_cochain(f)?;
        let k = f.arity();
        if k == 0 {
            return Ok(if f.is_zero() {
                CoboundarySearch::Preimage(Table::zero(vec![], self.rep.space.rank()))
            } else {
                CoboundarySearch::NoneWithinBound
            });
        }
        let basis = self.cochain_basis(k - 1, bound);
        let mut ech = Echelon::new();
        for (id, b) in basis.iter().enumerate() {
            let db = self.coboundary(b)?;
            ech.insert(&table_vector(&db), id);
        }
        match ech.solve(&table_vector(f)) {
            None => Ok(CoboundarySearch::NoneWithinBound),
            Some(combo) => {
                let ra = self.algebra().rank();
                let mut g = Table::zero(vec![ra; k - 1], self.rep.space.rank());
                for (id, c) in combo {
                    g = g.add(&basis[id].scale(&c));
                }
                Ok(CoboundarySearch::Preimage(g))
            }
        }
    }

    /// Default degree bound for the coboundary search: max degree of f plus 2.
    pub fn default_bound(f: &Table) -> u32 {
        f.degree() as u32 + 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundarySearch {
    Preimage(Table),
    NoneWithinBound,
}

/// All monomials in ∂, λ₁, …, λ_{k−1} of total degree ≤ bound.
fn monomials(k: usize, bound: u32) -> Vec<Monomial> {
    let nvars = k; // ∂ plus k−1 lambdas
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(pos + 1, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(0, bound, &mut exps, &mut out);
    out
}

/// Flatten a table into a sparse vector keyed by (tuple, generator, monomial).
pub fn table_vector(t: &Table) -> SparseVec<(usize, usize, Monomial)> {
    let mut v = BTreeMap::new();
    for (pos, val) in t.values().iter().enumerate() {
        for (g, p) in val.coeffs().iter().enumerate() {
            for (m, c) in p.terms() {
                v.insert((pos, g, m.clone()), c.clone());
            }
        }
    }
    v
}

/// f ⋄ g for f ∈ C^m(A, A), g ∈ C^n(A, A), summing over (n, m−1)-unshuffles.
pub fn diamond(f: &Table, g: &Table) -> Table {
    let m = f.arity();
    let n = g.arity();
    assert!(m >= 1 && n >= 1, "diamond needs positive arities");
    let r = f.target_rank();
    assert!(f.slot_ranks().iter().chain(g.slot_ranks()).all(|&s| s == r) && g.target_rank() == r);
    let total = m + n - 1;
    let shuffles = unshuffles(n, m - 1);
    let lam = lambdas(total);
    let gens: Vec<LambdaValue> = (0..r).map(|i| LambdaValue::generator(r, i)).collect();
    Table::from_fn(vec![r; total], r, |idx| {
        let mut out = LambdaValue::zero(r);
        for u in &shuffles {
            let s = &u.sigma.0;
            let g_args: Vec<&LambdaValue> = s[..n].iter().map(|&p| &gens[idx[p]]).collect();
            let g_ls: Vec<MultiPoly> = s[..n - 1].iter().map(|&p| lam[p].clone()).collect();
            let inner = g.eval(&g_ls, &g_args);
            if inner.is_zero() {
                continue;
            }
            let mut f_args: Vec<&LambdaValue> = vec![&inner];
            f_args.extend(s[n..].iter().map(|&p| &gens[idx[p]]));
            let mut f_ls: Vec<MultiPoly> = Vec::with_capacity(m.saturating_sub(1));
            if m >= 2 {
                f_ls.push(
                    s[..n]
                        .iter()
                        .fold(MultiPoly::zero(), |acc, &p| acc + lam[p].clone()),
                );
                f_ls.extend(s[n..total - 1].iter().map(|&p| lam[p].clone()));
            }
            let t = f.eval(&f_ls, &f_args);
            if u.sign > 0 {
                out += &t;
            } else {
                out -= &t;
            }
        }
        out.dagger(total)
    })
}

/// [f, g]_NR = f ⋄ g − (−1)^{(m−1)(n−1)} g ⋄ f.
pub fn nr_bracket(f: &Table, g: &Table) -> Table {
    let m = f.arity();
    let n = g.arity();
    let fg = diamond(f, g);
    let gf = diamond(g, f);
    if parity((m - 1) * (n - 1)) > 0 {
        fg.sub(&gf)
    } else {
        fg.add(&gf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FreeModule;

    fn vir() -> LieConformalAlgebra {
        let m = FreeModule::new("Vir", &["L"]).unwrap();
        let v = LambdaValue::single(1, 0, MultiPoly::d() + MultiPoly::lambda(1).scale(&int(2)));
        LieConformalAlgebra::from_entries(m, &[((0, 0), v)]).unwrap()
    }

    #[test]
    fn zero_cochain_coboundary() {
        // (d L̄)(L) = ρ(L)_{−∂} L = (∂ − 2∂)L = −∂L
        let cx = CochainComplex::adjoint(&vir());
        let df = cx
            .coboundary(&zero_cochain(LambdaValue::generator(1, 0)))
            .unwrap();
        assert_eq!(df.get(&[0]), &LambdaValue::single(1, 0, -MultiPoly::d()));
        // ∂L̄ = 0 in M/∂M
        let d2 = cx
            .coboundary(&zero_cochain(LambdaValue::single(1, 0, MultiPoly::d())))
            .unwrap();
        assert!(d2.is_zero());
    }

    #[test]
    fn identity_cochain_coboundary_is_the_bracket() {
        let alg = vir();
        let cx = CochainComplex::adjoint(&alg);
        let id = Table::from_fn(vec![1], 1, |_| LambdaValue::generator(1, 0));
        let df = cx.coboundary(&id).unwrap();
        assert_eq!(&df, &alg.bracket);
    }

    #[test]
    fn bracket_is_a_valid_cochain() {
        let alg = vir();
        assert!(validate_cochain(&alg.bracket, &alg.module, &alg.module).passed());
        let bad = Table::from_fn(vec![1, 1], 1, |_| {
            LambdaValue::single(1, 0, MultiPoly::lambda(1))
        });
        // λ·L vs −(−λ−∂)L = (λ+∂)L: fails
        let rep = validate_cochain(&bad, &alg.module, &alg.module);
        assert!(!rep.passed());
        assert_eq!(
            rep.get("cochain-skew-symmetry").unwrap().witnesses[0].difference,
            LambdaValue::single(1, 0, -MultiPoly::d())
        );
    }

    #[test]
    fn nr_square_of_virasoro_vanishes() {
        let alg = vir();
        assert!(nr_bracket(&alg.bracket, &alg.bracket).is_zero());
    }

    #[test]
    fn nr_route_agrees_on_identity() {
        let cx = CochainComplex::adjoint(&vir());
        let id = Table::from_fn(vec![1], 1, |_| LambdaValue::generator(1, 0));
        assert_eq!(
            cx.coboundary(&id).unwrap(),
            cx.coboundary_via_nr(&id).unwrap()
        );
    }
}
