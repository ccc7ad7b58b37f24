//! The cochain complex (C*(M, A), d_T) of a φ-twisted Rota-Baxter operator
//! T: M → A, first-order deformations, and Nijenhuis elements.
//!
//! d_T is the coboundary of M^{T,φ} with coefficients in (A, ρ^T). It is also
//! computed from the expanded formula in T, ρ, φ and from the twisted
//! L∞-algebra, and the three must agree.

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::cochain::{zero_cochain, CochainComplex};
use crate::error::{Error, Result};
use crate::module::ModuleMap;
use crate::operators::{induced_structures_from_rb, TwistedLInfinity};
use crate::poly::{MultiPoly, Var};
use crate::report::{AxiomReport, Check};
use crate::table::Table;
use crate::value::LambdaValue;

fn lam() -> MultiPoly {
    MultiPoly::lambda(1)
}

fn dag() -> MultiPoly {
    MultiPoly::dagger(1)
}

fn minus_d() -> MultiPoly {
    -MultiPoly::d()
}

fn parity(n: usize) -> bool {
    n % 2 == 0
}

fn add_signed(out: &mut LambdaValue, v: &LambdaValue, positive: bool) {
    if positive {
        *out += v;
    } else {
        *out -= v;
    }
}

/// T_t = T + t𝔗.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderDeformation {
    pub base: ModuleMap,
    pub direction: ModuleMap,
}

/// A pair (order 0, order 1) standing for x₀ + t x₁ modulo t².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual<T> {
    pub value: T,
    pub first: T,
}

impl Dual<ModuleMap> {
    /// (f₀ + t f₁)(g₀ + t g₁) = f₀g₀ + t(f₁g₀ + f₀g₁).
    pub fn compose(&self, other: &Dual<ModuleMap>) -> Result<Dual<ModuleMap>> {
        Ok(Dual {
            value: self.value.compose(&other.value)?,
            first: self
                .first
                .compose(&other.value)?
                .add(&self.value.compose(&other.first)?)?,
        })
    }

    pub fn apply(&self, x: &LambdaValue) -> Dual<LambdaValue> {
        Dual {
            value: self.value.apply_unchecked(x),
            first: self.first.apply_unchecked(x),
        }
    }
}

impl Dual<LambdaValue> {
    fn sub(&self, other: &Dual<LambdaValue>) -> Dual<LambdaValue> {
        Dual {
            value: &self.value - &other.value,
            first: &self.first - &other.first,
        }
    }
}

/// T with its representation and twisting cocycle, and the structures d_T is
/// built from.
#[derive(Clone, Debug)]
pub struct RBCohomology {
    pub t: ModuleMap,
    pub rep: Representation,
    pub phi: Table,
    /// M^{T,φ}
    pub m_algebra: LieConformalAlgebra,
    /// (A, ρ^T) as a module over M^{T,φ}.
    pub rho_t: Representation,
    complex: CochainComplex,
    linf: TwistedLInfinity,
}

impl RBCohomology {
    /// Fails with NotRotaBaxter unless T is a φ-twisted Rota-Baxter operator.
    pub fn new(t: &ModuleMap, rep: &Representation, phi: &Table) -> Result<Self> {
        let induced = induced_structures_from_rb(t, rep, Some(phi))?;
        let linf = TwistedLInfinity::new(t, rep, phi)?;
        Ok(RBCohomology {
            t: t.clone(),
            rep: rep.clone(),
            phi: phi.clone(),
            m_algebra: induced.m_algebra,
            complex: CochainComplex::new(induced.rho_t.clone()),
            rho_t: induced.rho_t,
            linf,
        })
    }

    pub fn with_max_arity(mut self, max_arity: usize) -> Self {
        self.complex = self.complex.with_max_arity(max_arity);
        self
    }

    fn ra(&self) -> usize {
        self.rep.algebra.rank()
    }

    fn rm(&self) -> usize {
        self.rep.space.rank()
    }

    fn check_cochain(&self, f: &Table) -> Result<()> {
        if f.slot_ranks().iter().any(|&r| r != self.rm()) || f.target_rank() != self.ra() {
            return Err(Error::ModuleMismatch(format!(
                "cochain is not in C*({}, {})",
                self.rep.space.name, self.rep.algebra.module.name
            )));
        }
        Ok(())
    }

    /// ā as an element of C⁰(M, A).
    pub fn zero_cochain(&self, a: &LambdaValue) -> Result<Table> {
        if a.rank() != self.ra() {
            return Err(Error::ModuleMismatch(
                "0-cochain must be an element of the algebra".into(),
            ));
        }
        Ok(zero_cochain(a.clone()))
    }

    /// l_{−∂}(a, m) = ρ(a)_{−λ−∂} m at λ = −∂.
    fn l_minus_d(&self, a: &LambdaValue, m: &LambdaValue) -> LambdaValue {
        self.rep
            .act(&dag(), a, m)
            .substitute(Var::Lambda(1), &minus_d())
            .expect("−∂ does not contain λ₁")
    }

    /// φ_{−∂}(x, a)
    fn phi_minus_d(&self, x: &LambdaValue, a: &LambdaValue) -> LambdaValue {
        self.phi.eval(&[minus_d()], &[x, a])
    }

    /// [x_{−∂} a]
    fn bracket_minus_d(&self, x: &LambdaValue, a: &LambdaValue) -> LambdaValue {
        self.rep.algebra.bracket_at(&minus_d(), x, a)
    }

    /// (d_T ā)(m) = [Tm_{−∂} a] + T(l_{−∂}(a, m) − φ_{−∂}(Tm, a)).
    fn d_t_zero(&self, a: &LambdaValue) -> Table {
        Table::from_fn(vec![self.rm()], self.ra(), |idx| {
            let m = self.rep.space.generator(idx[0]);
            let tm = self.t.apply_unchecked(&m);
            let inner = self.l_minus_d(a, &m) - self.phi_minus_d(&tm, a);
            self.bracket_minus_d(&tm, a) + self.t.apply_unchecked(&inner)
        })
    }

    /// d_T f as the coboundary of M^{T,φ} with coefficients in (A, ρ^T); for
    /// k = 0 the explicit formula is used and compared with it.
    pub fn d_t(&self, f: &Table) -> Result<Table> {
        self.check_cochain(f)?;
        let via_complex = self.complex.coboundary(f)?;
        if f.arity() == 0 {
            let explicit = self.d_t_zero(f.get(&[]));
            if explicit != via_complex {
                return Err(Error::InternalInconsistency(
                    "d_T on a 0-cochain differs from the coboundary of rho^T".into(),
                ));
            }
        }
        Ok(via_complex)
    }

    /// [m_λ n]^{T,φ}, optionally without the φ term.
    fn m_bracket(
        &self,
        lambda: &MultiPoly,
        m: &LambdaValue,
        n: &LambdaValue,
        with_phi: bool,
    ) -> LambdaValue {
        let back = dag().compose(&[None, Some(lambda)]);
        let (tm, tn) = (self.t.apply_unchecked(m), self.t.apply_unchecked(n));
        let mut out = self.rep.act(lambda, &tm, n) - self.rep.act(&back, &tn, m);
        if with_phi {
            out += &self.phi.eval(std::slice::from_ref(lambda), &[&tm, &tn]);
        }
        out
    }

    /// ρ^T(m)_Λ x = [Tm_Λ x] + T(ρ(x)_{−Λ−∂} m) − T(φ_Λ(Tm, x)), optionally
    /// without the φ term.
    fn rho_t_at(
        &self,
        lambda: &MultiPoly,
        m: &LambdaValue,
        x: &LambdaValue,
        with_phi: bool,
    ) -> LambdaValue {
        let back = dag().compose(&[None, Some(lambda)]);
        let tm = self.t.apply_unchecked(m);
        let mut inner = self.rep.act(&back, x, m);
        if with_phi {
            inner -= &self.phi.eval(std::slice::from_ref(lambda), &[&tm, x]);
        }
        self.rep.algebra.bracket_at(lambda, &tm, x) + self.t.apply_unchecked(&inner)
    }

    /// d_T f from the expanded formula in T, ρ, φ and the bracket of A. With
    /// `with_phi = false` every φ term is dropped.
    pub fn d_t_expanded(&self, f: &Table, with_phi: bool) -> Result<Table> {
        self.check_cochain(f)?;
        let k = f.arity();
        if k + 1 > self.complex.max_arity {
            return Err(Error::ArityOverflow {
                requested: k + 1,
                max: self.complex.max_arity,
            });
        }
        if k == 0 {
            let a = f.get(&[]);
            return Ok(Table::from_fn(vec![self.rm()], self.ra(), |idx| {
                self.rho_t_at(&minus_d(), &self.rep.space.generator(idx[0]), a, with_phi)
            }));
        }
        let lam: Vec<MultiPoly> = (1..=k).map(MultiPoly::lambda).collect();
        let dagger = MultiPoly::dagger(k);
        Ok(Table::from_fn(vec![self.rm(); k + 1], self.ra(), |idx| {
            let m: Vec<LambdaValue> = idx.iter().map(|&i| self.rep.space.generator(i)).collect();
            let mut out = LambdaValue::zero(self.ra());
            for i in 0..k {
                let args: Vec<&LambdaValue> = (0..=k).filter(|&j| j != i).map(|j| &m[j]).collect();
                let ls: Vec<MultiPoly> =
                    (0..k).filter(|&j| j != i).map(|j| lam[j].clone()).collect();
                let inner = f.eval(&ls, &args);
                add_signed(
                    &mut out,
                    &self.rho_t_at(&lam[i], &m[i], &inner, with_phi),
                    parity(i),
                );

                let br = self.m_bracket(&lam[i], &m[i], &m[k], with_phi);
                let mut args: Vec<&LambdaValue> =
                    (0..k).filter(|&j| j != i).map(|j| &m[j]).collect();
                args.push(&br);
                add_signed(&mut out, &f.eval(&ls, &args), !parity(i));
            }
            for i in 0..k {
                for j in i + 1..k {
                    let br = self.m_bracket(&lam[i], &m[i], &m[j], with_phi);
                    let mut args: Vec<&LambdaValue> = (0..=k)
                        .filter(|&l| l != i && l != j)
                        .map(|l| &m[l])
                        .collect();
                    args.push(&br);
                    let mut ls: Vec<MultiPoly> = (0..k)
                        .filter(|&l| l != i && l != j)
                        .map(|l| lam[l].clone())
                        .collect();
                    ls.push(dagger.clone());
                    add_signed(&mut out, &f.eval(&ls, &args), parity(k + i + j + 3));
                }
            }
            let args: Vec<&LambdaValue> = m[..k].iter().collect();
            let inner = f.eval(&lam[..k - 1], &args);
            add_signed(
                &mut out,
                &self.rho_t_at(&dagger, &m[k], &inner, with_phi),
                parity(k),
            );
            out
        }))
    }

    /// (−1)^{k+1} l₁ᵀ(f) for f ∈ C^k(M, A), k ≥ 1, with l₁ᵀ computed through
    /// Nijenhuis-Richardson brackets on A ⊕ M.
    pub fn d_t_via_linf(&self, f: &Table) -> Result<Table> {
        self.check_cochain(f)?;
        let k = f.arity();
        if k == 0 {
            return Err(Error::InvalidCochain(
                "the L-infinity route needs arity at least 1".into(),
            ));
        }
        let out = self.linf.l1(f)?;
        Ok(if parity(k) { out.neg() } else { out })
    }

    /// Condition for T + t𝔗 to be a φ-twisted Rota-Baxter operator modulo t²:
    /// [Tm_λ 𝔗n] + [𝔗m_λ Tn] − 𝔗([m_λ n]^{T,φ})
    /// − T(ρ(𝔗m)_λ n − ρ(𝔗n)_{−λ−∂} m + φ_λ(𝔗m, Tn) + φ_λ(Tm, 𝔗n)).
    fn first_order_defect(&self, dir: &ModuleMap) -> Table {
        let rm = self.rm();
        Table::from_fn(vec![rm, rm], self.ra(), |idx| {
            let (m, n) = (
                self.rep.space.generator(idx[0]),
                self.rep.space.generator(idx[1]),
            );
            let (tm, tn) = (self.t.apply_unchecked(&m), self.t.apply_unchecked(&n));
            let (dm, dn) = (dir.apply_unchecked(&m), dir.apply_unchecked(&n));
            let alg = &self.rep.algebra;
            let lhs = alg.bracket_at(&lam(), &tm, &dn) + alg.bracket_at(&lam(), &dm, &tn);
            let inner = self.rep.act(&lam(), &dm, &n) - self.rep.act(&dag(), &dn, &m)
                + self.phi.eval(&[lam()], &[&dm, &tn])
                + self.phi.eval(&[lam()], &[&tm, &dn]);
            lhs - dir.apply_unchecked(&self.m_bracket(&lam(), &m, &n, true))
                - self.t.apply_unchecked(&inner)
        })
    }

    fn map_as_cochain(&self, dir: &ModuleMap) -> Result<Table> {
        if dir.source_rank() != self.rm() || dir.target_rank() != self.ra() {
            return Err(Error::ModuleMismatch(format!(
                "expected a map {} -> {}",
                self.rep.space.name, self.rep.algebra.module.name
            )));
        }
        Ok(Table::from_fn(vec![self.rm()], self.ra(), |idx| {
            dir.image(idx[0])
        }))
    }

    fn table_check(&self, name: &str, tag: &str, t: &Table) -> Check {
        let mut c = Check::new(name, tag);
        let names = &self.rep.space.generators;
        for (idx, v) in t.entries() {
            c.record(
                idx.iter().map(|&i| names[i].clone()).collect(),
                v.clone(),
                self.rep.algebra.names(),
            );
        }
        c
    }

    /// 𝔗 generates an infinitesimal deformation: the first-order condition and
    /// d_T(𝔗) = 0, computed separately.
    pub fn is_deformation_cocycle(&self, dir: &ModuleMap) -> Result<AxiomReport> {
        let cochain = self.map_as_cochain(dir)?;
        let direct = self.first_order_defect(dir);
        let dt = self.d_t(&cochain)?;
        if direct != dt {
            return Err(Error::InternalInconsistency(
                "first-order deformation condition and d_T differ".into(),
            ));
        }
        let mut report = AxiomReport::new();
        report.push(self.table_check(
            "first-order-rota-baxter",
            "infinitesimal deformation condition",
            &direct,
        ));
        report.push(self.table_check("cocycle", "d_T cocycle condition", &dt));
        Ok(report)
    }

    /// ρ(x)_λ φ_{−∂}(Tm, a) = φ_{−∂}(T(ρ(x)_λ m), a) and
    /// l_{−∂}(a, φ_λ(x, y)) = φ_{−∂}(Tφ_λ(x, y), a) − φ_λ(x, [y_{−∂} a]) − φ_λ([x_{−∂} a], y)
    /// on all generators x, y of A and m of M.
    pub fn check_nijenhuis_element(&self, a: &LambdaValue) -> Result<AxiomReport> {
        if a.rank() != self.ra() {
            return Err(Error::ModuleMismatch(
                "candidate must be an element of the algebra".into(),
            ));
        }
        let (ra, rm) = (self.ra(), self.rm());
        let an = self.rep.algebra.names();
        let mn = &self.rep.space.generators;
        let mut first = Check::new("action-condition", "nijenhuis element action condition");
        let mut second = Check::new("cocycle-condition", "nijenhuis element cocycle condition");
        for i in 0..ra {
            let x = self.rep.algebra.module.generator(i);
            for j in 0..rm {
                let m = self.rep.space.generator(j);
                let tm = self.t.apply_unchecked(&m);
                let lhs = self.rep.act(&lam(), &x, &self.phi_minus_d(&tm, a));
                let moved = self.t.apply_unchecked(&self.rep.act(&lam(), &x, &m));
                let d = lhs - self.phi_minus_d(&moved, a);
                first.record(vec![an[i].clone(), mn[j].clone()], d, mn);
            }
            for j in 0..ra {
                let y = self.rep.algebra.module.generator(j);
                let p = self.phi.get(&[i, j]);
                let d = self.l_minus_d(a, p) - self.phi_minus_d(&self.t.apply_unchecked(p), a)
                    + self.phi.eval(&[lam()], &[&x, &self.bracket_minus_d(&y, a)])
                    + self.phi.eval(&[lam()], &[&self.bracket_minus_d(&x, a), &y]);
                second.record(vec![an[i].clone(), an[j].clone()], d, mn);
            }
        }
        let mut report = AxiomReport::new();
        report.push(first);
        report.push(second);
        Ok(report)
    }

    /// χ_t(x) = x − t[x_{−∂} a] and ψ_t(m) = m + t l_{−∂}(a, m) − tφ_{−∂}(Tm, a).
    pub fn equivalence_maps(&self, a: &LambdaValue) -> Result<(Dual<ModuleMap>, Dual<ModuleMap>)> {
        let (ra, rm) = (self.ra(), self.rm());
        let chi1: Vec<LambdaValue> = (0..ra)
            .map(|i| -self.bracket_minus_d(&self.rep.algebra.module.generator(i), a))
            .collect();
        let psi1: Vec<LambdaValue> = (0..rm)
            .map(|j| {
                let m = self.rep.space.generator(j);
                self.l_minus_d(a, &m) - self.phi_minus_d(&self.t.apply_unchecked(&m), a)
            })
            .collect();
        let chi = Dual {
            value: ModuleMap::identity(ra),
            first: ModuleMap::from_images(ra, &chi1)?,
        };
        let psi = Dual {
            value: ModuleMap::identity(rm),
            first: ModuleMap::from_images(rm, &psi1)?,
        };
        Ok((chi, psi))
    }

    /// The three conditions for (χ_t, ψ_t) to identify T + t𝔗 with T + t𝔗′
    /// modulo t².
    pub fn check_equivalence(
        &self,
        a: &LambdaValue,
        dir: &ModuleMap,
        dir_prime: &ModuleMap,
    ) -> Result<AxiomReport> {
        self.map_as_cochain(dir)?;
        self.map_as_cochain(dir_prime)?;
        let (chi, psi) = self.equivalence_maps(a)?;
        let t_t = Dual {
            value: self.t.clone(),
            first: dir.clone(),
        };
        let t_prime = Dual {
            value: self.t.clone(),
            first: dir_prime.clone(),
        };
        let (ra, rm) = (self.ra(), self.rm());
        let an = self.rep.algebra.names();
        let mn = &self.rep.space.generators;
        let dual_check =
            |c: &mut Check, tuple: Vec<String>, d: Dual<LambdaValue>, names: &[String]| {
                c.record(tuple.clone(), d.value, names);
                c.record(tuple, d.first, names);
            };

        let mut maps = Check::new("equivalence.operators", "chi T_t = T'_t psi mod t^2");
        let left = chi.compose(&t_t)?;
        let right = t_prime.compose(&psi)?;
        for j in 0..rm {
            let m = self.rep.space.generator(j);
            dual_check(
                &mut maps,
                vec![mn[j].clone()],
                left.apply(&m).sub(&right.apply(&m)),
                an,
            );
        }

        let mut actions = Check::new(
            "equivalence.actions",
            "psi_t intertwines the actions mod t^2",
        );
        let mut cocycles = Check::new(
            "equivalence.cocycles",
            "psi_t phi = phi(chi_t, chi_t) mod t^2",
        );
        for i in 0..ra {
            let x = self.rep.algebra.module.generator(i);
            let cx = chi.apply(&x);
            for j in 0..rm {
                let m = self.rep.space.generator(j);
                let pm = psi.apply(&m);
                let lhs = Dual {
                    value: self.rep.act(&lam(), &cx.value, &pm.value),
                    first: self.rep.act(&lam(), &cx.first, &pm.value)
                        + self.rep.act(&lam(), &cx.value, &pm.first),
                };
                let rhs = psi.apply(&self.rep.act(&lam(), &x, &m));
                dual_check(
                    &mut actions,
                    vec![an[i].clone(), mn[j].clone()],
                    lhs.sub(&rhs),
                    mn,
                );
            }
            for j in 0..ra {
                let y = self.rep.algebra.module.generator(j);
                let cy = chi.apply(&y);
                let lhs = psi.apply(self.phi.get(&[i, j]));
                let rhs = Dual {
                    value: self.phi.eval(&[lam()], &[&cx.value, &cy.value]),
                    first: self.phi.eval(&[lam()], &[&cx.first, &cy.value])
                        + self.phi.eval(&[lam()], &[&cx.value, &cy.first]),
                };
                dual_check(
                    &mut cocycles,
                    vec![an[i].clone(), an[j].clone()],
                    lhs.sub(&rhs),
                    mn,
                );
            }
        }
        let mut report = AxiomReport::new();
        report.push(maps);
        report.push(actions);
        report.push(cocycles);
        Ok(report)
    }

    /// For a Nijenhuis element ā, the deformation T + t d_T(ā) together with
    /// the report showing it is a cocycle and equivalent to T.
    pub fn trivial_deformation_from(&self, a: &LambdaValue) -> Result<TrivialDeformation> {
        let nij = self.check_nijenhuis_element(a)?;
        if !nij.passed() {
            return Err(Error::NotNijenhuisElement(nij.summary()));
        }
        let dt = self.d_t(&self.zero_cochain(a)?)?;
        let images: Vec<LambdaValue> = (0..self.rm()).map(|j| dt.get(&[j]).clone()).collect();
        let direction = ModuleMap::from_images(self.ra(), &images)?;
        let mut report = self.is_deformation_cocycle(&direction)?;
        let zero = ModuleMap::zero(self.rm(), self.ra());
        report.extend(self.check_equivalence(a, &direction, &zero)?);
        Ok(TrivialDeformation {
            deformation: FirstOrderDeformation {
                base: self.t.clone(),
                direction,
            },
            report,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TrivialDeformation {
    pub deformation: FirstOrderDeformation,
    pub report: AxiomReport,
}
