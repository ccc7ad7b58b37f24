//! Relative and twisted Rota-Baxter operators, Nijenhuis and Reynolds
//! operators, and the structures they induce.

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::error::{Error, Result};
use crate::module::{FreeModule, ModuleMap};
use crate::poly::{int, rat, MultiPoly};
use crate::report::{AxiomReport, Check};
use crate::table::Table;
use crate::twilled::{
    semidirect_context, twisted_semidirect_product, DirectSum, StructureDecomposition,
    StructureKind,
};
use crate::value::LambdaValue;

/// Largest power accepted by [`nijenhuis_power_properties`].
pub const MAX_NIJENHUIS_POWER: u32 = 3;

fn lam() -> MultiPoly {
    MultiPoly::lambda(1)
}

fn dag() -> MultiPoly {
    MultiPoly::dagger(1)
}

fn check_shape(t: &ModuleMap, rep: &Representation) -> Result<()> {
    if t.source_rank() != rep.space.rank() || t.target_rank() != rep.algebra.rank() {
        return Err(Error::ModuleMismatch(format!(
            "expected a map {} -> {}",
            rep.space.name, rep.algebra.module.name
        )));
    }
    Ok(())
}

fn check_phi(phi: &Table, rep: &Representation) -> Result<()> {
    let ra = rep.algebra.rank();
    if phi.slot_ranks() != [ra, ra] || phi.target_rank() != rep.space.rank() {
        return Err(Error::ModuleMismatch(format!(
            "twisting cochain must be a 2-cochain on {} with values in {}",
            rep.algebra.module.name, rep.space.name
        )));
    }
    Ok(())
}

fn check_endo(n: &ModuleMap, alg: &LieConformalAlgebra) -> Result<()> {
    if n.source_rank() != alg.rank() || n.target_rank() != alg.rank() {
        return Err(Error::ModuleMismatch(format!(
            "expected an endomorphism of {}",
            alg.module.name
        )));
    }
    Ok(())
}

fn pair_names(names: &[String], i: usize, j: usize) -> Vec<String> {
    vec![names[i].clone(), names[j].clone()]
}

/// [m_λ n]^{T,φ} = ρ(Tm)_λ n − ρ(Tn)_{−λ−∂} m + φ_λ(Tm, Tn) for arbitrary elements.
fn induced_m_bracket(
    t: &ModuleMap,
    rep: &Representation,
    phi: Option<&Table>,
    m: &LambdaValue,
    n: &LambdaValue,
) -> LambdaValue {
    let tm = t.apply_unchecked(m);
    let tn = t.apply_unchecked(n);
    let mut out = rep.act(&lam(), &tm, n) - rep.act(&dag(), &tn, m);
    if let Some(phi) = phi {
        out += &phi.eval(&[lam()], &[&tm, &tn]);
    }
    out
}

/// [Tm_λ Tn] − T([m_λ n]^{T,φ}) on generator pairs, as a table on M with
/// values in A.
pub fn rb_defect(t: &ModuleMap, rep: &Representation, phi: Option<&Table>) -> Result<Table> {
    check_shape(t, rep)?;
    if let Some(phi) = phi {
        check_phi(phi, rep)?;
    }
    let rm = rep.space.rank();
    Ok(Table::from_fn(vec![rm, rm], rep.algebra.rank(), |idx| {
        let m = rep.space.generator(idx[0]);
        let n = rep.space.generator(idx[1]);
        let lhs = rep
            .algebra
            .bracket_at(&lam(), &t.apply_unchecked(&m), &t.apply_unchecked(&n));
        lhs - t.apply_unchecked(&induced_m_bracket(t, rep, phi, &m, &n))
    }))
}

fn defect_check(name: &str, tag: &str, defect: &Table, rep: &Representation) -> Check {
    let mut c = Check::new(name, tag);
    for (idx, v) in defect.entries() {
        c.record(
            pair_names(&rep.space.generators, idx[0], idx[1]),
            v.clone(),
            rep.algebra.names(),
        );
    }
    c
}

/// [T(m)_λ T(n)] = T(ρ(Tm)_λ n − ρ(Tn)_{−λ−∂} m) on all generator pairs of M.
pub fn check_relative_rb(t: &ModuleMap, rep: &Representation) -> Result<AxiomReport> {
    let defect = rb_defect(t, rep, None)?;
    let mut report = AxiomReport::new();
    report.push(defect_check(
        "relative-rota-baxter",
        "relative rota-baxter identity",
        &defect,
        rep,
    ));
    Ok(report)
}

/// The φ-twisted identity, cross-checked against closure of the graph of T in
/// A ⋉_φ M and against the Maurer-Cartan equation of the associated L∞-algebra.
pub fn check_twisted_rb(t: &ModuleMap, rep: &Representation, phi: &Table) -> Result<AxiomReport> {
    check_phi(phi, rep)?;
    let defect = rb_defect(t, rep, Some(phi))?;
    let identity = defect_check(
        "twisted-rota-baxter",
        "twisted rota-baxter identity",
        &defect,
        rep,
    );

    let big = twisted_semidirect_product(rep, phi)?;
    let graph = graph_residual(t, rep, &big);
    let ds = semidirect_context(rep);
    let dec = ds.decompose(&big.bracket)?;
    let mc = ds.mc_residual(&dec, t)?;
    if graph != defect || mc != defect {
        return Err(Error::InternalInconsistency(
            "twisted rota-baxter defect, graph closure and maurer-cartan residual differ".into(),
        ));
    }
    let mut report = AxiomReport::new();
    report.push(identity);
    report.push(defect_check(
        "graph-closure",
        "graph is a subalgebra",
        &graph,
        rep,
    ));
    report.push(defect_check(
        "maurer-cartan",
        "maurer-cartan equation",
        &mc,
        rep,
    ));
    Ok(report)
}

/// For generators m, n the bracket of (Tm, m) and (Tn, n) in A ⋉_φ M is
/// (x, y); the graph is closed exactly when x − T(y) vanishes.
fn graph_residual(t: &ModuleMap, rep: &Representation, big: &LieConformalAlgebra) -> Table {
    let (ra, rm) = (rep.algebra.rank(), rep.space.rank());
    let n = ra + rm;
    let lift = |i: usize| {
        let m = rep.space.generator(i);
        t.apply_unchecked(&m).embed(n, 0) + m.embed(n, ra)
    };
    Table::from_fn(vec![rm, rm], ra, |idx| {
        let z = big.bracket_at(&lam(), &lift(idx[0]), &lift(idx[1]));
        z.project(0, ra) - t.apply_unchecked(&z.project(ra, rm))
    })
}

fn twisting_cochain_or_zero(rep: &Representation, phi: Option<&Table>) -> Table {
    match phi {
        Some(p) => p.clone(),
        None => {
            let ra = rep.algebra.rank();
            Table::zero(vec![ra, ra], rep.space.rank())
        }
    }
}

/// Everything a (twisted) Rota-Baxter operator T: M → A induces.
#[derive(Clone, Debug)]
pub struct InducedStructures {
    /// M with [m_λ n]^{T,φ}.
    pub m_algebra: LieConformalAlgebra,
    /// ρ^T(m)_λ a = [Tm_λ a] + T(ρ(a)_{−λ−∂} m) − T(φ_λ(Tm, a)).
    pub rho_t: Representation,
    /// The bracket on A ⊕ M obtained by twisting A ⋉_φ M by T.
    pub big: LieConformalAlgebra,
    pub kind: StructureKind,
    pub report: AxiomReport,
}

pub fn induced_structures_from_rb(
    t: &ModuleMap,
    rep: &Representation,
    phi: Option<&Table>,
) -> Result<InducedStructures> {
    let phi = twisting_cochain_or_zero(rep, phi);
    let rb = check_twisted_rb(t, rep, &phi)?;
    if !rb.passed() {
        return Err(Error::NotRotaBaxter(rb.summary()));
    }
    let (ra, rm) = (rep.algebra.rank(), rep.space.rank());
    let m_bracket = Table::from_fn(vec![rm, rm], rm, |idx| {
        induced_m_bracket(
            t,
            rep,
            Some(&phi),
            &rep.space.generator(idx[0]),
            &rep.space.generator(idx[1]),
        )
    });
    let m_algebra = LieConformalAlgebra::new(rep.space.clone(), m_bracket)?;

    let action = Table::from_fn(vec![rm, ra], ra, |idx| {
        let m = rep.space.generator(idx[0]);
        let a = rep.algebra.module.generator(idx[1]);
        let tm = t.apply_unchecked(&m);
        let inner = rep.act(&dag(), &a, &m) - phi.eval(&[lam()], &[&tm, &a]);
        rep.algebra.bracket_at(&lam(), &tm, &a) + t.apply_unchecked(&inner)
    });
    let rho_t = Representation::new(m_algebra.clone(), rep.algebra.module.clone(), action)?;

    let base = twisted_semidirect_product(rep, &phi)?;
    let n = ra + rm;
    let big_bracket = Table::from_fn(vec![n, n], n, |idx| {
        let x = base.module.generator(idx[0]);
        let y = base.module.generator(idx[1]);
        let (a, m) = (x.project(0, ra), x.project(ra, rm));
        let (b, nn) = (y.project(0, ra), y.project(ra, rm));
        let (tm, tn) = (t.apply_unchecked(&m), t.apply_unchecked(&nn));
        let a_part = rep.algebra.bracket_at(&lam(), &a, &b)
            - t.apply_unchecked(&phi.eval(&[lam()], &[&a, &b]))
            + rho_t.act(&lam(), &m, &b)
            - rho_t.act(&dag(), &nn, &a);
        let m_part = induced_m_bracket(t, rep, Some(&phi), &m, &nn) + rep.act(&lam(), &a, &nn)
            - rep.act(&dag(), &b, &m)
            + phi.eval(&[lam()], &[&tm, &b])
            + phi.eval(&[lam()], &[&a, &tn])
            + phi.eval(&[lam()], &[&a, &b]);
        a_part.embed(n, 0) + m_part.embed(n, ra)
    });
    let ds = semidirect_context(rep);
    let twisted = ds.twist(&base.bracket, t)?;
    if twisted != big_bracket {
        return Err(Error::InternalInconsistency(
            "explicit bracket on the sum differs from the twisted structure".into(),
        ));
    }
    let big = LieConformalAlgebra::new(base.module.clone(), big_bracket)?;

    let mut report = AxiomReport::new();
    report.extend(m_algebra.check_axioms().prefixed("m-bracket"));
    report.push(m_algebra.check_homomorphism(t, &rep.algebra, "homomorphism"));
    report.extend(rho_t.check_module().prefixed("rho-t"));
    report.extend(big.check_axioms().prefixed("sum-bracket"));
    let cls = ds.classify(&big.bracket)?;
    let base_dec = ds.decompose(&base.bracket)?;
    report.push(Check::verdict(
        "sum-bracket.phi2-vanishes",
        "twisted structure",
        cls.decomposition.phi2.is_zero(),
        None,
    ));
    report.push(Check::verdict(
        "sum-bracket.phi1-unchanged",
        "twisted structure",
        cls.decomposition.phi1 == base_dec.phi1,
        None,
    ));
    Ok(InducedStructures {
        m_algebra,
        rho_t,
        big,
        kind: cls.kind,
        report,
    })
}

/// A^N acting on A by ρ(a)_λ x = [Na_λ x], with φ_λ(a, b) = −N[a_λ b]; the
/// identity A → A^N is then a φ-twisted Rota-Baxter operator.
pub fn nijenhuis_twisting_data(
    n: &ModuleMap,
    alg: &LieConformalAlgebra,
) -> Result<(Representation, Table)> {
    let deformed = nijenhuis_deformed(alg, n)?;
    let r = alg.rank();
    let action = Table::from_fn(vec![r, r], r, |idx| {
        alg.bracket_at(
            &lam(),
            &n.apply_unchecked(&alg.module.generator(idx[0])),
            &alg.module.generator(idx[1]),
        )
    });
    let phi = Table::from_fn(vec![r, r], r, |idx| {
        -n.apply_unchecked(alg.bracket.get(idx))
    });
    let rep = Representation::new(deformed, alg.module.clone(), action)?;
    Ok((rep, phi))
}

/// [a_λ b]_N = [Na_λ b] + [a_λ Nb] − N[a_λ b].
pub fn nijenhuis_deformed(alg: &LieConformalAlgebra, n: &ModuleMap) -> Result<LieConformalAlgebra> {
    check_endo(n, alg)?;
    let r = alg.rank();
    let bracket = Table::from_fn(vec![r, r], r, |idx| {
        let a = alg.module.generator(idx[0]);
        let b = alg.module.generator(idx[1]);
        alg.bracket_at(&lam(), &n.apply_unchecked(&a), &b)
            + alg.bracket_at(&lam(), &a, &n.apply_unchecked(&b))
            - n.apply_unchecked(alg.bracket.get(idx))
    });
    let module = FreeModule {
        name: format!("{}^N", alg.module.name),
        generators: alg.module.generators.clone(),
    };
    LieConformalAlgebra::new(module, bracket)
}

fn nijenhuis_identity(alg: &LieConformalAlgebra, n: &ModuleMap, name: &str) -> Result<Check> {
    let deformed = nijenhuis_deformed(alg, n)?;
    let mut c = Check::new(name, "nijenhuis identity");
    for (idx, v) in deformed.bracket.entries() {
        let a = n.apply_unchecked(&alg.module.generator(idx[0]));
        let b = n.apply_unchecked(&alg.module.generator(idx[1]));
        let d = alg.bracket_at(&lam(), &a, &b) - n.apply_unchecked(v);
        c.record(pair_names(alg.names(), idx[0], idx[1]), d, alg.names());
    }
    Ok(c)
}

/// [Na_λ Nb] = N([Na_λ b] + [a_λ Nb] − N[a_λ b]); on success the deformed
/// bracket is checked to be Lie and N a homomorphism A^N → A.
pub fn check_nijenhuis(n: &ModuleMap, alg: &LieConformalAlgebra) -> Result<AxiomReport> {
    let c = nijenhuis_identity(alg, n, "nijenhuis")?;
    let passed = c.passed;
    let mut report = AxiomReport::new();
    report.push(c);
    if passed {
        let deformed = nijenhuis_deformed(alg, n)?;
        report.extend(deformed.check_axioms().prefixed("deformed-bracket"));
        report.push(deformed.check_homomorphism(n, alg, "homomorphism"));
    }
    Ok(report)
}

/// J(μ+ν) − J(μ) − J(ν) on generator triples: all combinations of two Lie
/// brackets are Lie exactly when this vanishes.
fn mixed_jacobiator(mu: &LieConformalAlgebra, nu: &LieConformalAlgebra, name: &str) -> Check {
    let sum = mu.with_bracket(mu.bracket.add(&nu.bracket));
    let names = mu.names();
    let r = mu.rank();
    let mut c = Check::new(name, "compatible brackets");
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let g = |x| mu.module.generator(x);
                let d = sum.jacobiator(&g(i), &g(j), &g(k))
                    - mu.jacobiator(&g(i), &g(j), &g(k))
                    - nu.jacobiator(&g(i), &g(j), &g(k));
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

/// The five properties of powers of a Nijenhuis operator: the N^k-deformed
/// bracket is Lie, N^l is Nijenhuis for it, iterated deformation composes,
/// the N^k and N^l brackets are compatible, and N^l is a homomorphism from
/// the N^{k+l} bracket to the N^k bracket.
pub fn nijenhuis_power_properties(
    n: &ModuleMap,
    alg: &LieConformalAlgebra,
    k: u32,
    l: u32,
) -> Result<AxiomReport> {
    for p in [k, l] {
        if p > MAX_NIJENHUIS_POWER {
            return Err(Error::PowerOutOfRange {
                requested: p,
                max: MAX_NIJENHUIS_POWER,
            });
        }
    }
    let base = check_nijenhuis(n, alg)?;
    if !base.passed() {
        return Err(Error::NotNijenhuis(base.summary()));
    }
    let nk = n.pow(k)?;
    let nl = n.pow(l)?;
    let nkl = n.pow(k + l)?;
    let bk = nijenhuis_deformed(alg, &nk)?;
    let bl = nijenhuis_deformed(alg, &nl)?;
    let bkl = nijenhuis_deformed(alg, &nkl)?;
    let mut report = AxiomReport::new();
    report.extend(bk.check_axioms().prefixed("deformed-lie"));
    report.push(nijenhuis_identity(&bk, &nl, "power-nijenhuis")?);
    let iterated = nijenhuis_deformed(&bk, &nl)?;
    let mut comp = Check::new("iterated-deformation", "iterated deformation");
    for (idx, v) in iterated.bracket.entries() {
        comp.record(
            pair_names(alg.names(), idx[0], idx[1]),
            v - bkl.bracket.get(&idx),
            alg.names(),
        );
    }
    report.push(comp);
    report.push(mixed_jacobiator(&bk, &bl, "compatibility"));
    report.push(bkl.check_homomorphism(&nl, &bk, "power-homomorphism"));
    Ok(report)
}

/// [Ra_λ b] + [a_λ Rb] − [Ra_λ Rb].
pub fn reynolds_deformed(alg: &LieConformalAlgebra, r: &ModuleMap) -> Result<LieConformalAlgebra> {
    check_endo(r, alg)?;
    let k = alg.rank();
    let bracket = Table::from_fn(vec![k, k], k, |idx| {
        let a = alg.module.generator(idx[0]);
        let b = alg.module.generator(idx[1]);
        let (ra, rb) = (r.apply_unchecked(&a), r.apply_unchecked(&b));
        alg.bracket_at(&lam(), &ra, &b) + alg.bracket_at(&lam(), &a, &rb)
            - alg.bracket_at(&lam(), &ra, &rb)
    });
    let module = FreeModule {
        name: format!("{}^R", alg.module.name),
        generators: alg.module.generators.clone(),
    };
    LieConformalAlgebra::new(module, bracket)
}

/// d([a_λ b]) = [d(a)_λ b] + [a_λ d(b)].
pub fn check_derivation(d: &ModuleMap, alg: &LieConformalAlgebra) -> Result<Check> {
    check_endo(d, alg)?;
    let mut c = Check::new("derivation", "1-cocycle identity");
    for (idx, v) in alg.bracket.entries() {
        let a = alg.module.generator(idx[0]);
        let b = alg.module.generator(idx[1]);
        let diff = d.apply_unchecked(v)
            - alg.bracket_at(&lam(), &d.apply_unchecked(&a), &b)
            - alg.bracket_at(&lam(), &a, &d.apply_unchecked(&b));
        c.record(pair_names(alg.names(), idx[0], idx[1]), diff, alg.names());
    }
    Ok(c)
}

/// [Ra_λ Rb] = R([Ra_λ b] + [a_λ Rb] − [Ra_λ Rb]). On success the deformed
/// bracket is checked to be Lie and R a homomorphism A^R → A; when R is
/// invertible over ℚ[∂], R⁻¹ − Id is checked to be a derivation.
pub fn check_reynolds(r: &ModuleMap, alg: &LieConformalAlgebra) -> Result<AxiomReport> {
    let deformed = reynolds_deformed(alg, r)?;
    let mut c = Check::new("reynolds", "reynolds identity");
    for (idx, v) in deformed.bracket.entries() {
        let a = r.apply_unchecked(&alg.module.generator(idx[0]));
        let b = r.apply_unchecked(&alg.module.generator(idx[1]));
        let d = alg.bracket_at(&lam(), &a, &b) - r.apply_unchecked(v);
        c.record(pair_names(alg.names(), idx[0], idx[1]), d, alg.names());
    }
    let inverse = r.inverse()?;
    let trivial = inverse.is_some() || r.is_zero();
    c = c.with_note(format!(
        "invertible over Q[d]: {}; {}",
        inverse.is_some(),
        if trivial { "trivial" } else { "nontrivial" }
    ));
    let passed = c.passed;
    let mut report = AxiomReport::new();
    report.push(c);
    if passed {
        report.extend(deformed.check_axioms().prefixed("deformed-bracket"));
        report.push(deformed.check_homomorphism(r, alg, "homomorphism"));
        if let Some(inv) = inverse {
            let dual = inv.sub(&ModuleMap::identity(alg.rank()))?;
            let mut d = check_derivation(&dual, alg)?;
            d.name = "inverse-minus-identity".into();
            report.push(d);
        }
    }
    Ok(report)
}

/// rank × (largest ∂-degree of d) + 2, raised to the rank when smaller: a
/// nilpotent endomorphism of a rank-r free module satisfies d^r = 0.
pub fn default_series_bound(d: &ModuleMap) -> usize {
    let r = d.source_rank();
    (r * d.degree() as usize + 2).max(r)
}

/// Σ_{n<B} (−1)^n dⁿ for a derivation d with d^B = 0.
pub fn reynolds_from_cocycle_series(
    d: &ModuleMap,
    alg: &LieConformalAlgebra,
    bound: Option<usize>,
) -> Result<ModuleMap> {
    let der = check_derivation(d, alg)?;
    if !der.passed {
        let w = der
            .witnesses
            .first()
            .map(|w| w.rendered.clone())
            .unwrap_or_default();
        return Err(Error::NotCocycle(w));
    }
    let bound = bound.unwrap_or_else(|| default_series_bound(d));
    let rank = alg.rank();
    let mut sum = ModuleMap::zero(rank, rank);
    let mut power = ModuleMap::identity(rank);
    for n in 0..bound {
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        sum = sum.add(&power.scale(&sign))?;
        power = d.compose(&power)?;
    }
    if let Some(j) = (0..rank).find(|&j| !power.image(j).is_zero()) {
        return Err(Error::NotNilpotentWithinBound {
            bound,
            generator: alg.names()[j].clone(),
        });
    }
    Ok(sum)
}

/// The L∞-algebra on C*(M, A) twisted by a φ-twisted Rota-Baxter operator T:
/// l₁ᵀ(f) = l₂(T, f) + ½l₃(T, T, f), l₂ᵀ(f, g) = l₂(f, g) + l₃(T, f, g),
/// l₃ᵀ = l₃.
#[derive(Clone, Debug)]
pub struct TwistedLInfinity {
    rep: Representation,
    phi: Table,
    t: ModuleMap,
    t_cochain: Table,
    ds: DirectSum,
    dec: StructureDecomposition,
}

impl TwistedLInfinity {
    pub fn new(t: &ModuleMap, rep: &Representation, phi: &Table) -> Result<Self> {
        let rb = check_twisted_rb(t, rep, phi)?;
        if !rb.passed() {
            return Err(Error::NotRotaBaxter(rb.summary()));
        }
        let ds = semidirect_context(rep);
        let big = twisted_semidirect_product(rep, phi)?;
        let dec = ds.decompose(&big.bracket)?;
        let t_cochain = ds.map_cochain(t)?;
        Ok(TwistedLInfinity {
            rep: rep.clone(),
            phi: phi.clone(),
            t: t.clone(),
            t_cochain,
            ds,
            dec,
        })
    }

    pub fn l1(&self, f: &Table) -> Result<Table> {
        let linf = self.ds.linf(&self.dec)?;
        let t = &self.t_cochain;
        Ok(linf.l2(t, f)?.add(&linf.l3(t, t, f)?.scale(&rat(1, 2))))
    }

    pub fn l2(&self, f: &Table, g: &Table) -> Result<Table> {
        let linf = self.ds.linf(&self.dec)?;
        Ok(linf.l2(f, g)?.add(&linf.l3(&self.t_cochain, f, g)?))
    }

    pub fn l3(&self, f: &Table, g: &Table, h: &Table) -> Result<Table> {
        self.ds.linf(&self.dec)?.l3(f, g, h)
    }

    /// l₁ᵀ(T′) + ½l₂ᵀ(T′, T′) + ⅙l₃ᵀ(T′, T′, T′), whose vanishing must match
    /// whether T + T′ is a φ-twisted Rota-Baxter operator.
    pub fn mc_of_sum(&self, t_prime: &ModuleMap) -> Result<AxiomReport> {
        let f = self.ds.map_cochain(t_prime)?;
        let residual = self
            .l1(&f)?
            .add(&self.l2(&f, &f)?.scale(&rat(1, 2)))
            .add(&self.l3(&f, &f, &f)?.scale(&rat(1, 6)));
        let sum = self.t.add(t_prime)?;
        let direct = rb_defect(&sum, &self.rep, Some(&self.phi))?;
        if residual != direct {
            return Err(Error::InternalInconsistency(
                "maurer-cartan residual of the twisted L-infinity algebra differs from the defect of the sum".into(),
            ));
        }
        let mut report = AxiomReport::new();
        report.push(defect_check(
            "maurer-cartan-of-sum",
            "twisted maurer-cartan equation",
            &residual,
            &self.rep,
        ));
        let mut rb = check_twisted_rb(&sum, &self.rep, &self.phi)?;
        for c in &mut rb.checks {
            c.name = format!("sum.{}", c.name);
        }
        report.extend(rb);
        Ok(report)
    }
}
