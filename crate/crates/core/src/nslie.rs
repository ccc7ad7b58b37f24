//! NS-Lie conformal algebras (∘_λ, ∨_λ) and conformal NS-algebras
//! (≻_λ, ≺_λ, ⋎_λ), with the constructions relating them to twisted
//! Rota-Baxter and Nijenhuis operators.

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::cochain::CochainComplex;
use crate::error::{Error, Result};
use crate::module::{FreeModule, ModuleMap};
use crate::operators::{
    check_nijenhuis, check_twisted_rb, nijenhuis_deformed, MAX_NIJENHUIS_POWER,
};
use crate::poly::MultiPoly;
use crate::report::{AxiomReport, Check};
use crate::table::Table;
use crate::value::LambdaValue;

fn l1() -> MultiPoly {
    MultiPoly::lambda(1)
}

fn l2() -> MultiPoly {
    MultiPoly::lambda(2)
}

fn l12() -> MultiPoly {
    l1() + l2()
}

fn dag() -> MultiPoly {
    MultiPoly::dagger(1)
}

/// −λ − μ − ∂
fn dag2() -> MultiPoly {
    MultiPoly::dagger(2)
}

fn at(t: &Table, lambda: &MultiPoly, a: &LambdaValue, b: &LambdaValue) -> LambdaValue {
    t.eval(std::slice::from_ref(lambda), &[a, b])
}

fn check_square(t: &Table, m: &FreeModule, what: &str) -> Result<()> {
    let r = m.rank();
    if t.slot_ranks() != [r, r] || t.target_rank() != r {
        return Err(Error::ModuleMismatch(format!(
            "{what} table does not match {}",
            m.name
        )));
    }
    Ok(())
}

/// Run `f` over every generator triple and record the results in one check.
fn triple_check(
    m: &FreeModule,
    name: &str,
    tag: &str,
    f: impl Fn(&LambdaValue, &LambdaValue, &LambdaValue) -> LambdaValue,
) -> Check {
    let r = m.rank();
    let names = &m.generators;
    let mut c = Check::new(name, tag);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let d = f(&m.generator(i), &m.generator(j), &m.generator(k));
                c.record(
                    vec![names[i].clone(), names[j].clone(), names[k].clone()],
                    d,
                    names,
                );
            }
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSLieStructure {
    pub module: FreeModule,
    pub circ: Table,
    pub vee: Table,
}

impl NSLieStructure {
    pub fn new(module: FreeModule, circ: Table, vee: Table) -> Result<Self> {
        check_square(&circ, &module, "circ")?;
        check_square(&vee, &module, "vee")?;
        Ok(NSLieStructure { module, circ, vee })
    }

    pub fn circ_at(&self, lambda: &MultiPoly, a: &LambdaValue, b: &LambdaValue) -> LambdaValue {
        at(&self.circ, lambda, a, b)
    }

    pub fn vee_at(&self, lambda: &MultiPoly, a: &LambdaValue, b: &LambdaValue) -> LambdaValue {
        at(&self.vee, lambda, a, b)
    }

    /// a ∘_Λ b − b ∘_{−Λ−∂} a + a ∨_Λ b, for Λ = λ₁ or λ₂.
    fn bracket_at(&self, lambda: &MultiPoly, a: &LambdaValue, b: &LambdaValue) -> LambdaValue {
        let back = MultiPoly::dagger(1).compose(&[None, Some(lambda)]);
        self.circ_at(lambda, a, b) - self.circ_at(&back, b, a) + self.vee_at(lambda, a, b)
    }

    /// The sub-adjacent bracket table.
    pub fn subadjacent_bracket(&self) -> Table {
        let r = self.module.rank();
        Table::from_fn(vec![r, r], r, |idx| {
            self.bracket_at(
                &l1(),
                &self.module.generator(idx[0]),
                &self.module.generator(idx[1]),
            )
        })
    }

    /// (a∘_λ b)∘_{λ+μ} c − a∘_λ(b∘_μ c) − (b∘_μ a)∘_{λ+μ} c + b∘_μ(a∘_λ c) + (a∨_λ b)∘_{λ+μ} c
    pub fn ns1(&self, a: &LambdaValue, b: &LambdaValue, c: &LambdaValue) -> LambdaValue {
        let ab = self.circ_at(&l1(), a, b);
        let bc = self.circ_at(&l2(), b, c);
        let ba = self.circ_at(&l2(), b, a);
        let ac = self.circ_at(&l1(), a, c);
        let avb = self.vee_at(&l1(), a, b);
        self.circ_at(&l12(), &ab, c) - self.circ_at(&l1(), a, &bc) - self.circ_at(&l12(), &ba, c)
            + self.circ_at(&l2(), b, &ac)
            + self.circ_at(&l12(), &avb, c)
    }

    /// a∨_λ[b_μ c] − [a_λ b]∨_{λ+μ} c − b∨_μ[a_λ c] + a∘_λ(b∨_μ c) − b∘_μ(a∨_λ c)
    /// + c∘_{−λ−μ−∂}(a∨_λ b)
    pub fn ns2(&self, a: &LambdaValue, b: &LambdaValue, c: &LambdaValue) -> LambdaValue {
        let bc = self.bracket_at(&l2(), b, c);
        let ab = self.bracket_at(&l1(), a, b);
        let ac = self.bracket_at(&l1(), a, c);
        let bvc = self.vee_at(&l2(), b, c);
        let avc = self.vee_at(&l1(), a, c);
        let avb = self.vee_at(&l1(), a, b);
        self.vee_at(&l1(), a, &bc) - self.vee_at(&l12(), &ab, c) - self.vee_at(&l2(), b, &ac)
            + self.circ_at(&l1(), a, &bvc)
            - self.circ_at(&l2(), b, &avc)
            + self.circ_at(&dag2(), c, &avb)
    }
}

/// Skew-symmetry of ∨ and the two NS-Lie axioms on generator triples.
pub fn validate_nslie(s: &NSLieStructure) -> AxiomReport {
    let r = s.module.rank();
    let names = &s.module.generators;
    let mut skew = Check::new("vee-skew-symmetry", "skew-symmetry of vee");
    for i in 0..r {
        for j in 0..r {
            let (a, b) = (s.module.generator(i), s.module.generator(j));
            let d = s.vee_at(&l1(), &a, &b) + s.vee_at(&dag(), &b, &a);
            skew.record(vec![names[i].clone(), names[j].clone()], d, names);
        }
    }
    let mut report = AxiomReport::new();
    report.push(skew);
    report.push(triple_check(
        &s.module,
        "ns1",
        "first ns-lie axiom",
        |a, b, c| s.ns1(a, b, c),
    ));
    report.push(triple_check(
        &s.module,
        "ns2",
        "second ns-lie axiom",
        |a, b, c| s.ns2(a, b, c),
    ));
    report
}

/// The sub-adjacent Lie conformal algebra with its module ρ(a)_λ x = a ∘_λ x.
#[derive(Clone, Debug)]
pub struct Subadjacent {
    pub algebra: LieConformalAlgebra,
    pub rep: Representation,
    /// Lie axioms, module axiom, ∨ as a 2-cocycle and Id as a ∨-twisted
    /// Rota-Baxter operator.
    pub report: AxiomReport,
}

pub fn subadjacent(s: &NSLieStructure) -> Result<Subadjacent> {
    let v = validate_nslie(s);
    if !v.passed() {
        return Err(Error::NotNSLie(v.summary()));
    }
    let algebra = LieConformalAlgebra::new(s.module.clone(), s.subadjacent_bracket())?;
    let rep = Representation::new(algebra.clone(), s.module.clone(), s.circ.clone())?;
    let mut report = algebra.check_axioms().prefixed("subadjacent");
    report.extend(rep.check_module());
    let cocycle = CochainComplex::new(rep.clone()).is_cocycle(&s.vee)?;
    let closed = cocycle.passed();
    report.extend(cocycle.prefixed("vee"));
    if closed && report.passed() {
        let rb = check_twisted_rb(&ModuleMap::identity(s.module.rank()), &rep, &s.vee)?;
        report.extend(rb.prefixed("identity"));
    } else {
        report.push(Check::verdict(
            "identity.twisted-rota-baxter",
            "twisted rota-baxter identity",
            false,
            Some("skipped: sub-adjacent data is not a module with a cocycle".into()),
        ));
    }
    Ok(Subadjacent {
        algebra,
        rep,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalNSStructure {
    pub module: FreeModule,
    pub succ: Table,
    pub prec: Table,
    pub curly: Table,
}

impl ConformalNSStructure {
    pub fn new(module: FreeModule, succ: Table, prec: Table, curly: Table) -> Result<Self> {
        check_square(&succ, &module, "succ")?;
        check_square(&prec, &module, "prec")?;
        check_square(&curly, &module, "curly")?;
        Ok(ConformalNSStructure {
            module,
            succ,
            prec,
            curly,
        })
    }

    fn times(&self, lambda: &MultiPoly, x: &LambdaValue, y: &LambdaValue) -> LambdaValue {
        at(&self.succ, lambda, x, y) + at(&self.prec, lambda, x, y) + at(&self.curly, lambda, x, y)
    }
}

/// The four conformal NS-algebra axioms with x ×_λ y = x≻_λ y + x≺_λ y + x⋎_λ y
/// expanded in place.
pub fn validate_conformal_ns(s: &ConformalNSStructure) -> AxiomReport {
    let (sc, pr, cu) = (&s.succ, &s.prec, &s.curly);
    let mut report = AxiomReport::new();
    report.push(triple_check(
        &s.module,
        "ns11",
        "succ associativity",
        |x, y, z| at(sc, &l1(), x, &at(sc, &l2(), y, z)) - at(sc, &l12(), &s.times(&l1(), x, y), z),
    ));
    report.push(triple_check(
        &s.module,
        "ns22",
        "prec associativity",
        |x, y, z| at(pr, &l1(), x, &s.times(&l2(), y, z)) - at(pr, &l12(), &at(pr, &l1(), x, y), z),
    ));
    report.push(triple_check(
        &s.module,
        "ns33",
        "succ-prec compatibility",
        |x, y, z| at(sc, &l1(), x, &at(pr, &l2(), y, z)) - at(pr, &l12(), &at(sc, &l1(), x, y), z),
    ));
    report.push(triple_check(
        &s.module,
        "ns44",
        "curly compatibility",
        |x, y, z| {
            at(sc, &l1(), x, &at(cu, &l2(), y, z))
                - at(cu, &l12(), &s.times(&l1(), x, y), z)
                - at(pr, &l12(), &at(cu, &l1(), x, y), z)
                + at(cu, &l1(), x, &s.times(&l2(), y, z))
        },
    ));
    report
}

/// x∘_λ y = x≻_λ y − y≺_{−λ−∂} x, x∨_λ y = x⋎_λ y − y⋎_{−λ−∂} x.
pub fn nslie_from_conformal_ns(s: &ConformalNSStructure) -> Result<NSLieStructure> {
    let v = validate_conformal_ns(s);
    if !v.passed() {
        return Err(Error::NotConformalNS(v.summary()));
    }
    let r = s.module.rank();
    let g = |i| s.module.generator(i);
    let circ = Table::from_fn(vec![r, r], r, |idx| {
        s.succ.get(idx).clone() - at(&s.prec, &dag(), &g(idx[1]), &g(idx[0]))
    });
    let vee = Table::from_fn(vec![r, r], r, |idx| {
        s.curly.get(idx).clone() - at(&s.curly, &dag(), &g(idx[1]), &g(idx[0]))
    });
    NSLieStructure::new(s.module.clone(), circ, vee)
}

/// u∘_λ v = ρ(Tu)_λ v, u∨_λ v = φ_λ(Tu, Tv) on M.
pub fn nslie_from_twisted_rb(
    t: &ModuleMap,
    rep: &Representation,
    phi: &Table,
) -> Result<NSLieStructure> {
    let rb = check_twisted_rb(t, rep, phi)?;
    if !rb.passed() {
        return Err(Error::NotRotaBaxter(rb.summary()));
    }
    let r = rep.space.rank();
    let g = |i| t.apply(&rep.space.generator(i)).expect("checked shape");
    let circ = Table::from_fn(vec![r, r], r, |idx| {
        rep.act(&l1(), &g(idx[0]), &rep.space.generator(idx[1]))
    });
    let vee = Table::from_fn(vec![r, r], r, |idx| at(phi, &l1(), &g(idx[0]), &g(idx[1])));
    NSLieStructure::new(rep.space.clone(), circ, vee)
}

/// a∘_λ b = [N^k a_λ b]_{N^l}, a∨_λ b = −N^k[a_λ b]_{N^l}; (k, l) = (1, 0)
/// gives [Na_λ b] and −N[a_λ b].
pub fn nslie_from_nijenhuis(
    n: &ModuleMap,
    alg: &LieConformalAlgebra,
    k: Option<u32>,
    l: Option<u32>,
) -> Result<NSLieStructure> {
    let (k, l) = (k.unwrap_or(1), l.unwrap_or(0));
    for p in [k, l] {
        if p > MAX_NIJENHUIS_POWER {
            return Err(Error::PowerOutOfRange {
                requested: p,
                max: MAX_NIJENHUIS_POWER,
            });
        }
    }
    let rep = check_nijenhuis(n, alg)?;
    if !rep.passed() {
        return Err(Error::NotNijenhuis(rep.summary()));
    }
    let nk = n.pow(k)?;
    let base = nijenhuis_deformed(alg, &n.pow(l)?)?;
    let r = alg.rank();
    let g = |i| alg.module.generator(i);
    let circ = Table::from_fn(vec![r, r], r, |idx| {
        base.bracket_at(&l1(), &nk.apply_unchecked(&g(idx[0])), &g(idx[1]))
    });
    let vee = Table::from_fn(vec![r, r], r, |idx| {
        -nk.apply_unchecked(base.bracket.get(idx))
    });
    NSLieStructure::new(alg.module.clone(), circ, vee)
}

/// ψ(a∘_λ b) = ψ(a)∘′_λ ψ(b) and ψ(a∨_λ b) = ψ(a)∨′_λ ψ(b) on generators.
pub fn check_nslie_morphism(
    psi: &ModuleMap,
    s1: &NSLieStructure,
    s2: &NSLieStructure,
) -> Result<AxiomReport> {
    if psi.source_rank() != s1.module.rank() || psi.target_rank() != s2.module.rank() {
        return Err(Error::ModuleMismatch(format!(
            "expected a map {} -> {}",
            s1.module.name, s2.module.name
        )));
    }
    let r = s1.module.rank();
    let names = &s1.module.generators;
    let mut circ = Check::new("circ-morphism", "morphism of circ");
    let mut vee = Check::new("vee-morphism", "morphism of vee");
    for i in 0..r {
        for j in 0..r {
            let (a, b) = (s1.module.generator(i), s1.module.generator(j));
            let (pa, pb) = (psi.apply_unchecked(&a), psi.apply_unchecked(&b));
            let tuple = vec![names[i].clone(), names[j].clone()];
            circ.record(
                tuple.clone(),
                psi.apply_unchecked(s1.circ.get(&[i, j])) - s2.circ_at(&l1(), &pa, &pb),
                &s2.module.generators,
            );
            vee.record(
                tuple,
                psi.apply_unchecked(s1.vee.get(&[i, j])) - s2.vee_at(&l1(), &pa, &pb),
                &s2.module.generators,
            );
        }
    }
    let mut report = AxiomReport::new();
    report.push(circ);
    report.push(vee);
    Ok(report)
}

/// A twisted Rota-Baxter operator T: M → A with its module and cocycle.
#[derive(Clone, Debug)]
pub struct TwistedOperator {
    pub t: ModuleMap,
    pub rep: Representation,
    pub phi: Table,
}

/// The conditions for (χ, ψ) to be a morphism T → T′: χ a homomorphism,
/// χ∘T = T′∘ψ, ρ′(χa)_λ ψm = ψ(ρ(a)_λ m) and ψφ_λ(a, b) = φ′_λ(χa, χb). When
/// they hold, ψ is also checked to be a morphism of the induced NS-Lie
/// structures.
pub fn check_rb_morphism(
    chi: &ModuleMap,
    psi: &ModuleMap,
    from: &TwistedOperator,
    to: &TwistedOperator,
) -> Result<AxiomReport> {
    let (a, m) = (&from.rep.algebra, &from.rep.space);
    let (a2, m2) = (&to.rep.algebra, &to.rep.space);
    if chi.source_rank() != a.rank() || chi.target_rank() != a2.rank() {
        return Err(Error::ModuleMismatch("chi has the wrong shape".into()));
    }
    if psi.source_rank() != m.rank() || psi.target_rank() != m2.rank() {
        return Err(Error::ModuleMismatch("psi has the wrong shape".into()));
    }
    let mut report = AxiomReport::new();
    report.push(a.check_homomorphism(chi, a2, "chi-homomorphism"));
    let mut commute = Check::new("operators-commute", "chi T = T' psi");
    for j in 0..m.rank() {
        let g = m.generator(j);
        let d = chi.apply_unchecked(&from.t.apply_unchecked(&g))
            - to.t.apply_unchecked(&psi.apply_unchecked(&g));
        commute.record(vec![m.generators[j].clone()], d, a2.names());
    }
    report.push(commute);
    let mut action = Check::new("actions-intertwine", "psi intertwines the actions");
    let mut cocycles = Check::new("cocycles-match", "psi phi = phi' (chi, chi)");
    for i in 0..a.rank() {
        let x = a.module.generator(i);
        for j in 0..m.rank() {
            let g = m.generator(j);
            let d = to
                .rep
                .act(&l1(), &chi.apply_unchecked(&x), &psi.apply_unchecked(&g))
                - psi.apply_unchecked(&from.rep.act(&l1(), &x, &g));
            action.record(
                vec![a.names()[i].clone(), m.generators[j].clone()],
                d,
                &m2.generators,
            );
        }
        for j in 0..a.rank() {
            let y = a.module.generator(j);
            let d = psi.apply_unchecked(from.phi.get(&[i, j]))
                - at(
                    &to.phi,
                    &l1(),
                    &chi.apply_unchecked(&x),
                    &chi.apply_unchecked(&y),
                );
            cocycles.record(
                vec![a.names()[i].clone(), a.names()[j].clone()],
                d,
                &m2.generators,
            );
        }
    }
    report.push(action);
    report.push(cocycles);
    if report.passed() {
        let s1 = nslie_from_twisted_rb(&from.t, &from.rep, &from.phi)?;
        let s2 = nslie_from_twisted_rb(&to.t, &to.rep, &to.phi)?;
        report.extend(check_nslie_morphism(psi, &s1, &s2)?.prefixed("induced"));
    }
    Ok(report)
}
