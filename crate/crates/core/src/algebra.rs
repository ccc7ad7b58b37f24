//! Lie conformal algebras and their modules, given by generator tables.

use crate::error::{Error, Result};
use crate::module::{FreeModule, ModuleMap};
use crate::poly::MultiPoly;
use crate::report::{AxiomReport, Check};
use crate::table::Table;
use crate::value::{LambdaValue, ModuleElement};

/// A λ-bracket on a free ℚ[∂]-module, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieConformalAlgebra {
    pub module: FreeModule,
    pub bracket: Table,
}

fn x1() -> MultiPoly {
    MultiPoly::lambda(1)
}

fn x2() -> MultiPoly {
    MultiPoly::lambda(2)
}

impl LieConformalAlgebra {
    pub fn new(module: FreeModule, bracket: Table) -> Result<Self> {
        let r = module.rank();
        if bracket.slot_ranks() != [r, r] || bracket.target_rank() != r {
            return Err(Error::ModuleMismatch(format!(
                "bracket table shape does not match module {}",
                module.name
            )));
        }
        Ok(LieConformalAlgebra { module, bracket })
    }

    /// Bracket from generator-index pairs; missing pairs are zero.
    pub fn from_entries(
        module: FreeModule,
        entries: &[((usize, usize), LambdaValue)],
    ) -> Result<Self> {
        let r = module.rank();
        let mut t = Table::zero(vec![r, r], r);
        for ((i, j), v) in entries {
            t.set(&[*i, *j], v.clone());
        }
        Self::new(module, t)
    }

    pub fn abelian(module: FreeModule) -> Self {
        let r = module.rank();
        LieConformalAlgebra {
            module,
            bracket: Table::zero(vec![r, r], r),
        }
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn names(&self) -> &[String] {
        &self.module.generators
    }

    /// [x_λ y] with λ = λ₁.
    pub fn eval_bracket(&self, x: &ModuleElement, y: &ModuleElement) -> Result<LambdaValue> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.bracket.eval(&[x1()], &[x, y]))
    }

    /// [x_Λ y] for an arbitrary Λ.
    pub fn bracket_at(&self, lambda: &MultiPoly, x: &LambdaValue, y: &LambdaValue) -> LambdaValue {
        self.bracket.eval(std::slice::from_ref(lambda), &[x, y])
    }

    fn check_element(&self, x: &LambdaValue) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::ModuleMismatch(format!(
                "element of rank {} is not in {}",
                x.rank(),
                self.module.name
            )));
        }
        Ok(())
    }

    /// [a_λ b] + [b_{−λ−∂} a]
    pub fn skew_defect(&self, a: &LambdaValue, b: &LambdaValue) -> LambdaValue {
        self.bracket_at(&x1(), a, b) + self.bracket_at(&MultiPoly::dagger(1), b, a)
    }

    /// [a_λ[b_μ c]] − [[a_λ b]_{λ+μ} c] − [b_μ[a_λ c]], λ = λ₁, μ = λ₂.
    pub fn jacobiator(&self, a: &LambdaValue, b: &LambdaValue, c: &LambdaValue) -> LambdaValue {
        let bc = self.bracket_at(&x2(), b, c);
        let t1 = self.bracket_at(&x1(), a, &bc);
        let ab = self.bracket_at(&x1(), a, b);
        let t2 = self.bracket_at(&(x1() + x2()), &ab, c);
        let ac = self.bracket_at(&x1(), a, c);
        let t3 = self.bracket_at(&x2(), b, &ac);
        t1 - t2 - t3
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let r = self.rank();
        let names = self.names();
        let mut skew = Check::new("skew-symmetry", "skew-symmetry");
        for i in 0..r {
            for j in 0..r {
                let d = self.skew_defect(&self.module.generator(i), &self.module.generator(j));
                skew.record(vec![names[i].clone(), names[j].clone()], d, names);
            }
        }
        let mut jac = Check::new("jacobi", "jacobi identity");
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let d = self.jacobiator(
                        &self.module.generator(i),
                        &self.module.generator(j),
                        &self.module.generator(k),
                    );
                    jac.record(
                        vec![names[i].clone(), names[j].clone(), names[k].clone()],
                        d,
                        names,
                    );
                }
            }
        }
        let mut rep = AxiomReport::new();
        rep.push(skew);
        rep.push(jac);
        rep
    }

    pub fn is_lie(&self) -> bool {
        self.check_axioms().passed()
    }

    /// The bracket transported by an arbitrary 2-slot table on the same module.
    pub fn with_bracket(&self, bracket: Table) -> LieConformalAlgebra {
        LieConformalAlgebra {
            module: self.module.clone(),
            bracket,
        }
    }

    /// Is `f` a homomorphism from `self` to `target`: f([x_λ y]) = [f(x)_λ f(y)]?
    pub fn check_homomorphism(
        &self,
        f: &ModuleMap,
        target: &LieConformalAlgebra,
        name: &str,
    ) -> Check {
        let mut c = Check::new(name, "homomorphism");
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let gi = self.module.generator(i);
                let gj = self.module.generator(j);
                let lhs = f.apply_unchecked(&self.bracket_at(&x1(), &gi, &gj));
                let rhs =
                    target.bracket_at(&x1(), &f.apply_unchecked(&gi), &f.apply_unchecked(&gj));
                c.record(
                    vec![self.names()[i].clone(), self.names()[j].clone()],
                    lhs - rhs,
                    target.names(),
                );
            }
        }
        c
    }
}

/// A module (M; ρ) over a Lie conformal algebra, given by ρ(gᵢ)_λ mⱼ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub algebra: LieConformalAlgebra,
    pub space: FreeModule,
    pub action: Table,
}

impl Representation {
    pub fn new(algebra: LieConformalAlgebra, space: FreeModule, action: Table) -> Result<Self> {
        if action.slot_ranks() != [algebra.rank(), space.rank()]
            || action.target_rank() != space.rank()
        {
            return Err(Error::ModuleMismatch(format!(
                "action table shape does not match {} acting on {}",
                algebra.module.name, space.name
            )));
        }
        Ok(Representation {
            algebra,
            space,
            action,
        })
    }

    pub fn from_entries(
        algebra: LieConformalAlgebra,
        space: FreeModule,
        entries: &[((usize, usize), LambdaValue)],
    ) -> Result<Self> {
        let mut t = Table::zero(vec![algebra.rank(), space.rank()], space.rank());
        for ((i, j), v) in entries {
            t.set(&[*i, *j], v.clone());
        }
        Self::new(algebra, space, t)
    }

    pub fn adjoint(algebra: &LieConformalAlgebra) -> Self {
        Representation {
            algebra: algebra.clone(),
            space: algebra.module.clone(),
            action: algebra.bracket.clone(),
        }
    }

    pub fn trivial(algebra: &LieConformalAlgebra, space: FreeModule) -> Self {
        let action = Table::zero(vec![algebra.rank(), space.rank()], space.rank());
        Representation {
            algebra: algebra.clone(),
            space,
            action,
        }
    }

    /// ρ(a)_Λ m
    pub fn act(&self, lambda: &MultiPoly, a: &LambdaValue, m: &LambdaValue) -> LambdaValue {
        self.action.eval(std::slice::from_ref(lambda), &[a, m])
    }

    /// ρ(a)_λ ρ(b)_μ m − ρ(b)_μ ρ(a)_λ m − ρ([a_λ b])_{λ+μ} m
    pub fn module_defect(&self, a: &LambdaValue, b: &LambdaValue, m: &LambdaValue) -> LambdaValue {
        let bm = self.act(&x2(), b, m);
        let t1 = self.act(&x1(), a, &bm);
        let am = self.act(&x1(), a, m);
        let t2 = self.act(&x2(), b, &am);
        let ab = self.algebra.bracket_at(&x1(), a, b);
        let t3 = self.act(&(x1() + x2()), &ab, m);
        t1 - t2 - t3
    }

    pub fn check_module(&self) -> AxiomReport {
        let ra = self.algebra.rank();
        let rm = self.space.rank();
        let an = self.algebra.names();
        let mn = &self.space.generators;
        let mut c = Check::new("module", "representation identity");
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rm {
                    let d = self.module_defect(
                        &self.algebra.module.generator(i),
                        &self.algebra.module.generator(j),
                        &self.space.generator(k),
                    );
                    c.record(vec![an[i].clone(), an[j].clone(), mn[k].clone()], d, mn);
                }
            }
        }
        let mut rep = AxiomReport::new();
        rep.push(c);
        rep
    }

    /// A ⋉ M with bracket ([a_λ b], ρ(a)_λ n − ρ(b)_{−λ−∂} m).
    pub fn semidirect_product(&self) -> Result<LieConformalAlgebra> {
        if !self.check_module().passed() {
            return Err(Error::InvalidRepresentation(format!(
                "{} is not a module over {}",
                self.space.name, self.algebra.module.name
            )));
        }
        Ok(self.semidirect_unchecked())
    }

    pub(crate) fn semidirect_unchecked(&self) -> LieConformalAlgebra {
        let module = FreeModule::direct_sum(&self.algebra.module, &self.space);
        let ra = self.algebra.rank();
        let rm = self.space.rank();
        let n = ra + rm;
        let bracket = Table::from_fn(vec![n, n], n, |idx| {
            let (i, j) = (idx[0], idx[1]);
            match (i < ra, j < ra) {
                (true, true) => self.algebra.bracket.get(&[i, j]).embed(n, 0),
                (true, false) => self.action.get(&[i, j - ra]).embed(n, ra),
                (false, true) => {
                    let m = self.space.generator(i - ra);
                    let b = self.algebra.module.generator(j);
                    (-self.act(&MultiPoly::dagger(1), &b, &m)).embed(n, ra)
                }
                (false, false) => LambdaValue::zero(n),
            }
        });
        LieConformalAlgebra { module, bracket }
    }
}
