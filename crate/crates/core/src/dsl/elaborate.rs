//! From syntax trees to engine objects. Static mistakes (wrong kinds, unknown
//! generators, out-of-range variables) are errors; constructions the engine
//! rejects become failing report entries and poison whatever depends on them.

use std::collections::HashMap;

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::dual::conformal_dual;
use crate::module::{FreeModule, ModuleMap};
use crate::nslie::{nslie_from_nijenhuis, nslie_from_twisted_rb, NSLieStructure};
use crate::poly::{MultiPoly, Var};
use crate::table::Table;
use crate::tensor::TensorSquare;
use crate::twilled::{twisted_semidirect_product, DirectSum};
use crate::value::LambdaValue;

use super::ast::*;
use super::error::{DslError, DslResult, Span};
use super::printer::{directive_text, print_decl};

#[derive(Clone, Debug, Default)]
pub struct ElabOptions {
    /// Reject any literal polynomial of higher total degree.
    pub max_degree: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Object {
    Algebra(LieConformalAlgebra),
    Module {
        rep: Representation,
        algebra: String,
    },
    Map {
        map: ModuleMap,
        source: String,
        target: String,
    },
    Cochain {
        table: Table,
        source: String,
        target: String,
    },
    Tensor {
        tensor: TensorSquare,
        algebra: String,
    },
    NSLie(NSLieStructure),
    /// The engine rejected the construction.
    Invalid(String),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "an algebra",
            Object::Module { .. } => "a module",
            Object::Map { .. } => "a map",
            Object::Cochain { .. } => "a cochain",
            Object::Tensor { .. } => "a tensor",
            Object::NSLie(_) => "an NS-Lie structure",
            Object::Invalid(_) => "an invalid object",
        }
    }
}

/// A resolved directive, holding everything its checks need.
#[derive(Clone, Debug)]
pub enum Task {
    Lie(LieConformalAlgebra),
    Module(Representation),
    RotaBaxter {
        t: ModuleMap,
        rep: Representation,
        phi: Option<Table>,
    },
    Nijenhuis {
        n: ModuleMap,
        alg: LieConformalAlgebra,
        powers: Option<(u32, u32)>,
    },
    Reynolds {
        r: ModuleMap,
        alg: LieConformalAlgebra,
    },
    Ccybe {
        r: TensorSquare,
        alg: LieConformalAlgebra,
    },
    NSLie(NSLieStructure),
    Twist {
        sum: DirectSum,
        pi: Table,
        h: ModuleMap,
    },
    Classify {
        sum: DirectSum,
        pi: Table,
    },
    Cohomology {
        t: ModuleMap,
        rep: Representation,
        phi: Table,
        max_arity: usize,
        element: Option<LambdaValue>,
    },
    /// An argument could not be constructed.
    Unavailable(String),
}

#[derive(Clone, Debug)]
pub struct PlannedDirective {
    pub text: String,
    pub span: Span,
    pub task: Task,
}

/// A declaration the engine rejected.
#[derive(Clone, Debug)]
pub struct FailedConstruction {
    pub text: String,
    pub span: Span,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub objects: HashMap<String, Object>,
    pub failed: Vec<FailedConstruction>,
    pub directives: Vec<PlannedDirective>,
}

enum Fail {
    Static(DslError),
    Rejected(String),
}

impl From<DslError> for Fail {
    fn from(e: DslError) -> Self {
        Fail::Static(e)
    }
}

impl From<crate::Error> for Fail {
    fn from(e: crate::Error) -> Self {
        Fail::Rejected(e.to_string())
    }
}

type FResult<T> = std::result::Result<T, Fail>;

pub fn elaborate(file: &SourceFile, options: &ElabOptions) -> DslResult<Program> {
    let mut el = Elaborator {
        program: Program::default(),
        options: options.clone(),
    };
    for item in &file.items {
        el.item(item)?;
    }
    Ok(el.program)
}

struct Elaborator {
    program: Program,
    options: ElabOptions,
}

/// How many λ variables a value may use, and whether ∂ is allowed.
#[derive(Clone, Copy)]
struct Vars {
    lambdas: usize,
    partial: bool,
}

fn names_of(gens: &[Ident]) -> Vec<String> {
    gens.iter().map(|g| g.name.clone()).collect()
}

fn var_name(i: usize) -> String {
    if i == 0 {
        "d".into()
    } else {
        format!("x{i}")
    }
}

/// v(λ) ↦ −v(−λ−∂), the value of the swapped pair under skew-symmetry.
fn skew_partner(v: &LambdaValue) -> LambdaValue {
    let flipped = -MultiPoly::lambda(1) - MultiPoly::d();
    -v.compose(&[None, Some(&flipped)])
}

impl Elaborator {
    fn lookup(&self, id: &Ident) -> &Object {
        // scoping was checked by the parser
        &self.program.objects[&id.name]
    }

    fn rejected_dependency(&self, id: &Ident) -> Option<String> {
        match self.lookup(id) {
            Object::Invalid(_) => Some(format!("`{}` could not be constructed", id.name)),
            _ => None,
        }
    }

    fn wrong_kind(&self, id: &Ident, expected: &str) -> Fail {
        match self.rejected_dependency(id) {
            Some(r) => Fail::Rejected(r),
            None => Fail::Static(DslError::elab(
                id.span,
                format!(
                    "`{}` is {}, expected {expected}",
                    id.name,
                    self.lookup(id).kind()
                ),
            )),
        }
    }

    fn algebra(&self, id: &Ident) -> FResult<&LieConformalAlgebra> {
        match self.lookup(id) {
            Object::Algebra(a) => Ok(a),
            _ => Err(self.wrong_kind(id, "an algebra")),
        }
    }

    fn space(&self, id: &Ident) -> FResult<FreeModule> {
        match self.lookup(id) {
            Object::Algebra(a) => Ok(a.module.clone()),
            Object::Module { rep, .. } => Ok(rep.space.clone()),
            _ => Err(self.wrong_kind(id, "an algebra or module")),
        }
    }

    fn map(&self, id: &Ident) -> FResult<(&ModuleMap, &str, &str)> {
        match self.lookup(id) {
            Object::Map {
                map,
                source,
                target,
            } => Ok((map, source, target)),
            _ => Err(self.wrong_kind(id, "a map")),
        }
    }

    fn generator(&self, module: &FreeModule, g: &Ident) -> DslResult<usize> {
        module
            .index_of(&g.name)
            .ok_or_else(|| DslError::UndeclaredName {
                name: g.name.clone(),
                span: g.span,
            })
    }

    fn check_poly(&self, p: &MultiPoly, vars: Vars, span: Span) -> DslResult<()> {
        for i in 0..=p.max_var_index() {
            if !p.contains_var(Var::from_index(i)) {
                continue;
            }
            let ok = if i == 0 {
                vars.partial
            } else {
                i <= vars.lambdas
            };
            if !ok {
                let allowed: Vec<String> = (usize::from(!vars.partial)..=vars.lambdas)
                    .map(var_name)
                    .collect();
                let allowed = if allowed.is_empty() {
                    "only constants are allowed here".to_string()
                } else {
                    format!("available variables: {}", allowed.join(", "))
                };
                return Err(DslError::ArityMismatch {
                    span,
                    message: format!("`{}` is not available here; {allowed}", var_name(i)),
                });
            }
        }
        if let Some(cap) = self.options.max_degree {
            if p.degree() > cap {
                return Err(DslError::elab(
                    span,
                    format!("degree {} exceeds LCAKIT_MAX_DEGREE={cap}", p.degree()),
                ));
            }
        }
        Ok(())
    }

    fn value(
        &self,
        v: &Value,
        target: &FreeModule,
        vars: Vars,
        span: Span,
    ) -> DslResult<LambdaValue> {
        let mut out = LambdaValue::zero(target.rank());
        for t in &v.terms {
            let i = self.generator(target, &t.generator)?;
            self.check_poly(&t.coeff, vars, span)?;
            *out.coeff_mut(i) += &t.coeff;
        }
        Ok(out)
    }

    fn arity(&self, e: &Entry, k: usize) -> DslResult<()> {
        if e.args.len() != k {
            return Err(DslError::ArityMismatch {
                span: e.span,
                message: format!("expected {k} argument(s), found {}", e.args.len()),
            });
        }
        Ok(())
    }

    /// Fill a table from entries; with `skew`, a missing (b, a) entry is
    /// completed from (a, b) by skew-symmetry.
    fn table(
        &self,
        entries: &[Entry],
        slots: &[&FreeModule],
        target: &FreeModule,
        skew: bool,
    ) -> DslResult<Table> {
        let k = slots.len();
        let ranks: Vec<usize> = slots.iter().map(|m| m.rank()).collect();
        let mut t = Table::zero(ranks, target.rank());
        let vars = Vars {
            lambdas: k.saturating_sub(1),
            partial: true,
        };
        let mut given = Vec::new();
        for e in entries {
            self.arity(e, k)?;
            let idx = e
                .args
                .iter()
                .zip(slots)
                .map(|(a, m)| self.generator(m, a))
                .collect::<DslResult<Vec<_>>>()?;
            t.set(&idx, self.value(&e.value, target, vars, e.span)?);
            given.push(idx);
        }
        if skew && k == 2 {
            for idx in &given {
                let swapped = vec![idx[1], idx[0]];
                if !given.contains(&swapped) {
                    let v = skew_partner(t.get(idx));
                    t.set(&swapped, v);
                }
            }
        }
        Ok(t)
    }

    fn item(&mut self, item: &Item) -> DslResult<()> {
        let outcome = match &item.decl {
            Decl::Directive(d) => {
                let task = match self.directive(d) {
                    Ok(t) => t,
                    Err(Fail::Static(e)) => return Err(e),
                    Err(Fail::Rejected(r)) => Task::Unavailable(r),
                };
                self.program.directives.push(PlannedDirective {
                    text: directive_text(d),
                    span: item.span,
                    task,
                });
                return Ok(());
            }
            decl => self.declaration(decl),
        };
        let name = item
            .decl
            .name()
            .expect("declarations are named")
            .name
            .clone();
        let object = match outcome {
            Ok(o) => o,
            Err(Fail::Static(e)) => return Err(e),
            Err(Fail::Rejected(reason)) => {
                self.program.failed.push(FailedConstruction {
                    text: first_line(&print_decl(&item.decl)),
                    span: item.span,
                    reason: reason.clone(),
                });
                Object::Invalid(reason)
            }
        };
        self.program.objects.insert(name, object);
        Ok(())
    }

    fn declaration(&self, decl: &Decl) -> FResult<Object> {
        Ok(match decl {
            Decl::Algebra { name, body } => match body {
                AlgebraBody::Explicit {
                    generators,
                    entries,
                } => {
                    let module = FreeModule::from_names(name.name.clone(), names_of(generators))?;
                    let bracket = self.table(entries, &[&module, &module], &module, true)?;
                    Object::Algebra(LieConformalAlgebra::new(module, bracket)?)
                }
                AlgebraBody::Semidirect { module, twist } => {
                    let rep = self.module(module)?;
                    let alg = match twist {
                        None => rep.semidirect_product()?,
                        Some(phi) => {
                            let table =
                                self.cochain(phi, &rep.algebra.module.name, &rep.space.name, 2)?;
                            twisted_semidirect_product(&rep, &table)?
                        }
                    };
                    let mut alg = alg;
                    alg.module.name = name.name.clone();
                    Object::Algebra(alg)
                }
            },
            Decl::Module {
                name,
                over,
                generators,
                entries,
            } => {
                let alg = self.algebra(over)?.clone();
                let space = FreeModule::from_names(name.name.clone(), names_of(generators))?;
                let action = self.table(entries, &[&alg.module, &space], &space, false)?;
                Object::Module {
                    rep: Representation::new(alg, space, action)?,
                    algebra: over.name.clone(),
                }
            }
            Decl::Rep { body, .. } => match body {
                RepBody::Adjoint(a) => Object::Module {
                    rep: Representation::adjoint(self.algebra(a)?),
                    algebra: a.name.clone(),
                },
                RepBody::Dual(m) => {
                    let rep = self.module(m)?;
                    let algebra = self.module_algebra(m).to_string();
                    Object::Module {
                        rep: conformal_dual(&rep)?,
                        algebra,
                    }
                }
            },
            Decl::Map {
                source,
                target,
                entries,
                ..
            } => {
                let (src, tgt) = (self.space(source)?, self.space(target)?);
                let table = self.table(entries, &[&src], &tgt, false)?;
                let images: Vec<_> = (0..src.rank()).map(|j| table.get(&[j]).clone()).collect();
                Object::Map {
                    map: ModuleMap::from_images(tgt.rank(), &images)?,
                    source: source.name.clone(),
                    target: target.name.clone(),
                }
            }
            Decl::Cochain {
                name,
                source,
                arity,
                target,
                entries,
            } => {
                if *arity == 0 {
                    return Err(Fail::Static(DslError::ArityMismatch {
                        span: name.span,
                        message: "cochains are declared with arity at least 1".into(),
                    }));
                }
                let (src, tgt) = (self.space(source)?, self.space(target)?);
                let slots = vec![&src; *arity];
                Object::Cochain {
                    table: self.table(entries, &slots, &tgt, true)?,
                    source: source.name.clone(),
                    target: target.name.clone(),
                }
            }
            Decl::Tensor { over, entries, .. } => {
                let alg = self.algebra(over)?;
                let mut r = TensorSquare::zero(alg.rank());
                for e in entries {
                    if e.args.len() != 2 {
                        return Err(Fail::Static(DslError::ArityMismatch {
                            span: e.span,
                            message: format!(
                                "tensor entries take 2 generators, found {}",
                                e.args.len()
                            ),
                        }));
                    }
                    let i = self.generator(&alg.module, &e.args[0])?;
                    let j = self.generator(&alg.module, &e.args[1])?;
                    self.check_poly(
                        &e.coeff,
                        Vars {
                            lambdas: 2,
                            partial: false,
                        },
                        e.span,
                    )?;
                    r.add_coeff(i, j, &e.coeff);
                }
                Object::Tensor {
                    tensor: r,
                    algebra: over.name.clone(),
                }
            }
            Decl::NSLie { name, body } => Object::NSLie(match body {
                NSLieBody::Explicit {
                    generators,
                    entries,
                } => {
                    let module = FreeModule::from_names(name.name.clone(), names_of(generators))?;
                    let pick = |head: &str| -> Vec<Entry> {
                        entries
                            .iter()
                            .filter(|e| e.head.as_ref().is_some_and(|h| h.name == head))
                            .cloned()
                            .collect()
                    };
                    let circ = self.table(&pick("circ"), &[&module, &module], &module, false)?;
                    let vee = self.table(&pick("vee"), &[&module, &module], &module, true)?;
                    NSLieStructure::new(module, circ, vee)?
                }
                NSLieBody::Nijenhuis { map, powers } => {
                    let (n, alg) = self.endomorphism(map)?;
                    nslie_from_nijenhuis(n, alg, powers.map(|p| p.0), powers.map(|p| p.1))?
                }
                NSLieBody::RotaBaxter { map, twist } => {
                    let (t, rep, phi) = self.operator(map, twist.as_ref())?;
                    nslie_from_twisted_rb(&t, &rep, &phi)?
                }
            }),
            Decl::Directive(_) => unreachable!("directives are handled by the caller"),
        })
    }

    fn module(&self, id: &Ident) -> FResult<Representation> {
        match self.lookup(id) {
            Object::Module { rep, .. } => Ok(rep.clone()),
            _ => Err(self.wrong_kind(id, "a module")),
        }
    }

    fn module_algebra(&self, id: &Ident) -> &str {
        match self.lookup(id) {
            Object::Module { algebra, .. } => algebra,
            _ => unreachable!("checked by module()"),
        }
    }

    /// A cochain from `source`^arity to `target`.
    fn cochain(&self, id: &Ident, source: &str, target: &str, arity: usize) -> FResult<Table> {
        match self.lookup(id) {
            Object::Cochain {
                table,
                source: s,
                target: t,
            } => {
                let s_space = self.space_name(s);
                let t_space = self.space_name(t);
                if s_space != source || t_space != target || table.arity() != arity {
                    return Err(Fail::Static(DslError::elab(
                        id.span,
                        format!(
                            "`{}` must be a cochain {source}^{arity} -> {target}",
                            id.name
                        ),
                    )));
                }
                Ok(table.clone())
            }
            _ => Err(self.wrong_kind(id, "a cochain")),
        }
    }

    /// The name of the free module underlying a declared algebra or module.
    fn space_name(&self, name: &str) -> String {
        match &self.program.objects[name] {
            Object::Algebra(a) => a.module.name.clone(),
            Object::Module { rep, .. } => rep.space.name.clone(),
            _ => name.to_string(),
        }
    }

    fn endomorphism(&self, id: &Ident) -> FResult<(&ModuleMap, &LieConformalAlgebra)> {
        let (n, source, target) = self.map(id)?;
        let alg = match self.program.objects.get(target) {
            Some(Object::Algebra(a)) if source == target => a,
            Some(Object::Invalid(_)) => {
                return Err(Fail::Rejected(format!(
                    "`{target}` could not be constructed"
                )))
            }
            _ => {
                return Err(Fail::Static(DslError::elab(
                    id.span,
                    format!("`{}` must map an algebra to itself", id.name),
                )))
            }
        };
        Ok((n, alg))
    }

    /// T: M → A with M a module over A (or A itself, acting by the adjoint
    /// action) and an optional twisting cochain A² → M, zero when absent.
    fn operator(
        &self,
        id: &Ident,
        twist: Option<&Ident>,
    ) -> FResult<(ModuleMap, Representation, Table)> {
        let (t, source, target) = self.map(id)?;
        for name in [source, target] {
            if let Object::Invalid(_) = self.program.objects[name] {
                return Err(Fail::Rejected(format!("`{name}` could not be constructed")));
            }
        }
        let bad = || {
            Fail::Static(DslError::elab(
                id.span,
                format!("`{}` must map a module over an algebra A to A", id.name),
            ))
        };
        let rep = match (&self.program.objects[source], &self.program.objects[target]) {
            (Object::Algebra(a), Object::Algebra(_)) if source == target => {
                Representation::adjoint(a)
            }
            (Object::Module { rep, algebra }, Object::Algebra(_)) if algebra == target => {
                rep.clone()
            }
            _ => return Err(bad()),
        };
        let phi = match twist {
            Some(c) => self.cochain(c, &rep.algebra.module.name, &rep.space.name, 2)?,
            None => {
                let ra = rep.algebra.rank();
                Table::zero(vec![ra, ra], rep.space.rank())
            }
        };
        Ok((t.clone(), rep, phi))
    }

    /// Generator indices of `x` belonging to the summand `m`: each generator g
    /// of `m` matches `m::g`, `m'::g` or `g`, skipping indices already taken.
    fn block_of_space(
        &self,
        x: &FreeModule,
        m: &FreeModule,
        taken: &[usize],
        span: Span,
    ) -> DslResult<Vec<usize>> {
        m.generators
            .iter()
            .map(|g| {
                [
                    format!("{}::{g}", m.name),
                    format!("{}'::{g}", m.name),
                    g.clone(),
                ]
                .iter()
                .filter_map(|c| x.index_of(c))
                .find(|i| !taken.contains(i))
                .ok_or_else(|| {
                    DslError::elab(
                        span,
                        format!(
                            "no generator of `{}` corresponds to {}::{g}",
                            x.name, m.name
                        ),
                    )
                })
            })
            .collect()
    }

    fn block(
        &self,
        x: &FreeModule,
        b: &Block,
        taken: &[usize],
    ) -> FResult<(FreeModule, Vec<usize>)> {
        match b {
            Block::Generators(gens) => {
                let idx = gens
                    .iter()
                    .map(|g| self.generator(x, g))
                    .collect::<DslResult<Vec<_>>>()?;
                let names = gens.iter().map(|g| g.name.clone()).collect();
                Ok((FreeModule::from_names(format!("{}1", x.name), names)?, idx))
            }
            Block::Named(n) => {
                let m = self.space(n)?;
                let idx = self.block_of_space(x, &m, taken, n.span)?;
                Ok((m, idx))
            }
        }
    }

    /// The direct-sum context for a two-block split of `x`, with the bracket
    /// reordered so that the first block comes first.
    fn split(
        &self,
        alg: &LieConformalAlgebra,
        b1: (FreeModule, Vec<usize>),
        b2: (FreeModule, Vec<usize>),
        span: Span,
    ) -> FResult<(DirectSum, Table, Vec<usize>)> {
        let n = alg.rank();
        let perm: Vec<usize> = b1.1.iter().chain(&b2.1).copied().collect();
        let mut seen = vec![false; n];
        for &i in &perm {
            if seen[i] {
                return Err(Fail::Static(DslError::elab(
                    span,
                    format!(
                        "generator {} appears in both blocks",
                        alg.module.generators[i]
                    ),
                )));
            }
            seen[i] = true;
        }
        if perm.len() != n {
            return Err(Fail::Static(DslError::elab(
                span,
                format!(
                    "the blocks do not cover the generators of `{}`",
                    alg.module.name
                ),
            )));
        }
        let reorder = |v: &LambdaValue| {
            LambdaValue::from_coeffs(perm.iter().map(|&p| v.coeff(p).clone()).collect())
        };
        let pi = Table::from_fn(vec![n, n], n, |idx| {
            reorder(alg.bracket.get(&[perm[idx[0]], perm[idx[1]]]))
        });
        let sum = FreeModule {
            name: alg.module.name.clone(),
            generators: perm
                .iter()
                .map(|&p| alg.module.generators[p].clone())
                .collect(),
        };
        let a1 = FreeModule::from_names(
            b1.0.name,
            b1.1.iter()
                .map(|&i| alg.module.generators[i].clone())
                .collect(),
        )?;
        let a2 = FreeModule::from_names(
            b2.0.name,
            b2.1.iter()
                .map(|&i| alg.module.generators[i].clone())
                .collect(),
        )?;
        Ok((DirectSum { a1, a2, sum }, pi, perm))
    }

    fn directive(&self, d: &Directive) -> FResult<Task> {
        Ok(match d {
            Directive::CheckLie(a) => Task::Lie(self.algebra(a)?.clone()),
            Directive::CheckModule(m) => Task::Module(self.module(m)?),
            Directive::CheckRb(t) => {
                let (t, rep, _) = self.operator(t, None)?;
                Task::RotaBaxter { t, rep, phi: None }
            }
            Directive::CheckTwistedRb { map, cochain } => {
                let (t, rep, phi) = self.operator(map, Some(cochain))?;
                Task::RotaBaxter {
                    t,
                    rep,
                    phi: Some(phi),
                }
            }
            Directive::CheckNijenhuis { map, powers } => {
                let (n, alg) = self.endomorphism(map)?;
                Task::Nijenhuis {
                    n: n.clone(),
                    alg: alg.clone(),
                    powers: *powers,
                }
            }
            Directive::CheckReynolds(r) => {
                let (r, alg) = self.endomorphism(r)?;
                Task::Reynolds {
                    r: r.clone(),
                    alg: alg.clone(),
                }
            }
            Directive::CheckCcybe(r) => match self.lookup(r) {
                Object::Tensor { tensor, algebra } => match &self.program.objects[algebra] {
                    Object::Algebra(alg) => Task::Ccybe {
                        r: tensor.clone(),
                        alg: alg.clone(),
                    },
                    _ => {
                        return Err(Fail::Rejected(format!(
                            "`{algebra}` could not be constructed"
                        )))
                    }
                },
                _ => return Err(self.wrong_kind(r, "a tensor")),
            },
            Directive::CheckNSLie(s) => match self.lookup(s) {
                Object::NSLie(s) => Task::NSLie(s.clone()),
                _ => return Err(self.wrong_kind(s, "an NS-Lie structure")),
            },
            Directive::Classify { algebra, blocks } => {
                let alg = self.algebra(algebra)?;
                let b1 = self.block(&alg.module, &blocks.0, &[])?;
                let b2 = self.block(&alg.module, &blocks.1, &b1.1)?;
                let (sum, pi, _) = self.split(alg, b1, b2, algebra.span)?;
                Task::Classify { sum, pi }
            }
            Directive::Twist {
                algebra,
                blocks,
                map,
            } => {
                let alg = self.algebra(algebra)?;
                let (h, source, target) = self.map(map)?;
                match blocks {
                    None => {
                        let (tgt, src) = (
                            self.space(&ident(target, map.span))?,
                            self.space(&ident(source, map.span))?,
                        );
                        let i1 = self.block_of_space(&alg.module, &tgt, &[], algebra.span)?;
                        let i2 = self.block_of_space(&alg.module, &src, &i1, algebra.span)?;
                        let (sum, pi, _) = self.split(alg, (tgt, i1), (src, i2), algebra.span)?;
                        Task::Twist {
                            sum,
                            pi,
                            h: h.clone(),
                        }
                    }
                    Some((p, q)) => {
                        if source != algebra.name || target != algebra.name {
                            return Err(Fail::Static(DslError::elab(
                                map.span,
                                format!(
                                    "with explicit blocks `{}` must map `{}` to itself",
                                    map.name, algebra.name
                                ),
                            )));
                        }
                        let b1 = self.block(&alg.module, p, &[])?;
                        let b2 = self.block(&alg.module, q, &b1.1)?;
                        let (i1, i2) = (b1.1.clone(), b2.1.clone());
                        let (sum, pi, _) = self.split(alg, b1, b2, algebra.span)?;
                        let h = off_diagonal(h, &i1, &i2).ok_or_else(|| {
                            Fail::Static(DslError::elab(
                                map.span,
                                format!("`{}` must vanish on the first block and map the second block into the first", map.name),
                            ))
                        })?;
                        Task::Twist { sum, pi, h }
                    }
                }
            }
            Directive::Cohomology {
                map,
                twist,
                max_arity,
                element,
            } => {
                let (t, rep, phi) = self.operator(map, twist.as_ref())?;
                let element = match element {
                    Some(v) => Some(self.value(
                        v,
                        &rep.algebra.module,
                        Vars {
                            lambdas: 0,
                            partial: true,
                        },
                        map.span,
                    )?),
                    None => None,
                };
                Task::Cohomology {
                    t,
                    rep,
                    phi,
                    max_arity: *max_arity,
                    element,
                }
            }
        })
    }
}

fn ident(name: &str, span: Span) -> Ident {
    Ident {
        name: name.to_string(),
        span,
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .next()
        .unwrap_or_default()
        .trim_end_matches(" {")
        .to_string()
}

/// The block of `h` from the generators `i2` to the generators `i1`, provided
/// every other block vanishes.
fn off_diagonal(h: &ModuleMap, i1: &[usize], i2: &[usize]) -> Option<ModuleMap> {
    if i1.iter().any(|&j| !h.image(j).is_zero()) {
        return None;
    }
    let mut images = Vec::new();
    for &j in i2 {
        let img = h.image(j);
        if i2.iter().any(|&i| !img.coeff(i).is_zero()) {
            return None;
        }
        images.push(LambdaValue::from_coeffs(
            i1.iter().map(|&i| img.coeff(i).clone()).collect(),
        ));
    }
    ModuleMap::from_images(i1.len(), &images).ok()
}
