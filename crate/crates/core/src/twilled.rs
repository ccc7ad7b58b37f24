//! Direct sums A = A₁ ⊕ A₂: lifts, bidegrees, the decomposition of a
//! 2-cochain into φ̂₁ + μ̂₁ + μ̂₂ + φ̂₂, twisting by a module map H: A₂ → A₁,
//! and the L∞ brackets on C*(A₂, A₁) of a quasi-twilled structure.
//!
//! Generators of the sum are ordered A₁ first, so block membership is an
//! index comparison. Cochains on the sum are [`Table`]s of full rank.

use crate::algebra::{LieConformalAlgebra, Representation};
use crate::cochain::{is_valid_cochain, nr_bracket, CochainComplex};
use crate::error::{Error, Result};
use crate::module::{FreeModule, ModuleMap};
use crate::perm::{unshuffles, Perm};
use crate::poly::{int, rat, MultiPoly, Scalar};
use crate::report::{AxiomReport, Check};
use crate::table::Table;
use crate::value::LambdaValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    A1,
    A2,
}

/// k|l with k + l + 1 = arity. A zero cochain has every bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bidegree {
    Zero,
    Homogeneous(i64, i64),
    NonHomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSum {
    pub a1: FreeModule,
    pub a2: FreeModule,
    pub sum: FreeModule,
}

/// Π = φ̂₁ + μ̂₁ + μ̂₂ + φ̂₂ of bidegrees 2|−1, 1|0, 0|1, −1|2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDecomposition {
    pub phi1: Table,
    pub mu1: Table,
    pub mu2: Table,
    pub phi2: Table,
}

impl StructureDecomposition {
    pub fn reassemble(&self) -> Table {
        self.phi1.add(&self.mu1).add(&self.mu2).add(&self.phi2)
    }

    pub fn is_quasi_twilled(&self) -> bool {
        self.phi2.is_zero()
    }

    pub fn is_twilled(&self) -> bool {
        self.phi1.is_zero() && self.phi2.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Twilled,
    QuasiTwilled,
    General,
    NotLie,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: StructureKind,
    pub decomposition: StructureDecomposition,
    /// The five block equations equivalent to [Π, Π]_NR = 0, as named residuals.
    pub residuals: Vec<(String, Table)>,
    pub report: AxiomReport,
}

fn half() -> Scalar {
    rat(1, 2)
}

fn sixth() -> Scalar {
    rat(1, 6)
}

fn parity(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

impl DirectSum {
    pub fn new(a1: &FreeModule, a2: &FreeModule) -> Self {
        DirectSum {
            a1: a1.clone(),
            a2: a2.clone(),
            sum: FreeModule::direct_sum(a1, a2),
        }
    }

    pub fn r1(&self) -> usize {
        self.a1.rank()
    }

    pub fn r2(&self) -> usize {
        self.a2.rank()
    }

    pub fn rank(&self) -> usize {
        self.r1() + self.r2()
    }

    pub fn block(&self, generator: usize) -> Block {
        if generator < self.r1() {
            Block::A1
        } else {
            Block::A2
        }
    }

    fn block_range(&self, b: Block) -> (usize, usize) {
        match b {
            Block::A1 => (0, self.r1()),
            Block::A2 => (self.r1(), self.r2()),
        }
    }

    fn block_part(&self, v: &LambdaValue, b: Block) -> LambdaValue {
        let (off, len) = self.block_range(b);
        v.project(off, len).embed(self.rank(), off)
    }

    pub fn p1(&self) -> ModuleMap {
        self.projection(Block::A1)
    }

    pub fn p2(&self) -> ModuleMap {
        self.projection(Block::A2)
    }

    fn projection(&self, b: Block) -> ModuleMap {
        let images: Vec<LambdaValue> = (0..self.rank())
            .map(|i| {
                if self.block(i) == b {
                    self.sum.generator(i)
                } else {
                    self.sum.zero()
                }
            })
            .collect();
        ModuleMap::from_images(self.rank(), &images).expect("square")
    }

    /// A map on the sum assembled from its four blocks (target × source).
    pub fn block_map(
        &self,
        m11: &ModuleMap,
        m12: &ModuleMap,
        m21: &ModuleMap,
        m22: &ModuleMap,
    ) -> Result<ModuleMap> {
        let (r1, r2) = (self.r1(), self.r2());
        let shapes = [(m11, r1, r1), (m12, r2, r1), (m21, r1, r2), (m22, r2, r2)];
        for (m, s, t) in shapes {
            if m.source_rank() != s || m.target_rank() != t {
                return Err(Error::ModuleMismatch(
                    "block map has the wrong shape".into(),
                ));
            }
        }
        let images: Vec<LambdaValue> = (0..self.rank())
            .map(|j| {
                if j < r1 {
                    m11.image(j).embed(self.rank(), 0) + m21.image(j).embed(self.rank(), r1)
                } else {
                    m12.image(j - r1).embed(self.rank(), 0)
                        + m22.image(j - r1).embed(self.rank(), r1)
                }
            })
            .collect();
        ModuleMap::from_images(self.rank(), &images)
    }

    fn check_h(&self, h: &ModuleMap) -> Result<()> {
        if h.source_rank() != self.r2() || h.target_rank() != self.r1() {
            return Err(Error::ModuleMismatch(format!(
                "expected a map {} -> {}",
                self.a2.name, self.a1.name
            )));
        }
        Ok(())
    }

    fn check_on_sum(&self, f: &Table) -> Result<()> {
        let n = self.rank();
        if f.slot_ranks().iter().any(|&r| r != n) || f.target_rank() != n {
            return Err(Error::ModuleMismatch(format!(
                "cochain is not on {}",
                self.sum.name
            )));
        }
        Ok(())
    }

    /// Ĥ(a, v) = (H(v), 0), the 1-cochain of bidegree −1|1.
    pub fn lift_map(&self, h: &ModuleMap) -> Result<Table> {
        self.check_h(h)?;
        let (r1, n) = (self.r1(), self.rank());
        Ok(Table::from_fn(vec![n], n, |idx| {
            if idx[0] < r1 {
                LambdaValue::zero(n)
            } else {
                h.image(idx[0] - r1).embed(n, 0)
            }
        }))
    }

    /// The lift f̂ of f: A₁^{⊗k} ⊗ A₂^{⊗l} → A_target. On a tuple with exactly
    /// k entries from A₁, the unique unshuffle bringing them to the front is
    /// applied, with its sign, and λ_{k+l} is replaced by λ†.
    pub fn lift(&self, f: &Table, k: usize, l: usize, target: Block) -> Result<Table> {
        let n = k + l;
        let (r1, r2) = (self.r1(), self.r2());
        let mut expected = vec![r1; k];
        expected.extend(std::iter::repeat(r2).take(l));
        let (toff, tlen) = self.block_range(target);
        if n == 0 || f.slot_ranks() != expected.as_slice() || f.target_rank() != tlen {
            return Err(Error::ModuleMismatch(
                "lift input has the wrong shape".into(),
            ));
        }
        let total = self.rank();
        let out = Table::from_fn(vec![total; n], total, |idx| {
            let ones: Vec<usize> = (0..n).filter(|&p| idx[p] < r1).collect();
            if ones.len() != k {
                return LambdaValue::zero(total);
            }
            let mut sigma = ones;
            sigma.extend((0..n).filter(|&p| idx[p] >= r1));
            let local: Vec<usize> = sigma
                .iter()
                .enumerate()
                .map(|(j, &p)| if j < k { idx[p] } else { idx[p] - r1 })
                .collect();
            let ls: Vec<MultiPoly> = sigma[..n - 1]
                .iter()
                .map(|&p| MultiPoly::lambda(p + 1))
                .collect();
            let map: Vec<Option<&MultiPoly>> =
                std::iter::once(None).chain(ls.iter().map(Some)).collect();
            let v = f.get(&local).compose(&map).dagger(n);
            let v = v.scale(&int(Perm(sigma).sign()));
            v.embed(total, toff)
        });
        if !is_valid_cochain(&out) {
            return Err(Error::NotSkewInBlocks(
                "the lifted cochain is not skew-symmetric".into(),
            ));
        }
        Ok(out)
    }

    /// Inverse of [`lift`](Self::lift): the values of f on A₁^k × A₂^l in the
    /// `target` block.
    pub fn restrict(&self, f: &Table, k: usize, l: usize, target: Block) -> Table {
        let (r1, r2) = (self.r1(), self.r2());
        let mut ranks = vec![r1; k];
        ranks.extend(std::iter::repeat(r2).take(l));
        let (toff, tlen) = self.block_range(target);
        Table::from_fn(ranks, tlen, |idx| {
            let full: Vec<usize> = idx
                .iter()
                .enumerate()
                .map(|(j, &i)| if j < k { i } else { i + r1 })
                .collect();
            f.get(&full).project(toff, tlen)
        })
    }

    fn component_bidegree(&self, n: usize, ones: usize, out: Block) -> (i64, i64) {
        let (p, n) = (ones as i64, n as i64);
        match out {
            Block::A1 => (p - 1, n - p),
            Block::A2 => (p, n - p - 1),
        }
    }

    pub fn bidegree_of(&self, f: &Table) -> Bidegree {
        let n = f.arity();
        let r1 = self.r1();
        let mut found: Option<(i64, i64)> = None;
        for (idx, v) in f.entries() {
            let ones = idx.iter().filter(|&&i| i < r1).count();
            for b in [Block::A1, Block::A2] {
                if self.block_part(v, b).is_zero() {
                    continue;
                }
                let kl = self.component_bidegree(n, ones, b);
                match found {
                    None => found = Some(kl),
                    Some(prev) if prev != kl => return Bidegree::NonHomogeneous,
                    _ => {}
                }
            }
        }
        match found {
            None => Bidegree::Zero,
            Some((k, l)) => Bidegree::Homogeneous(k, l),
        }
    }

    /// The bidegree k|l part of a cochain on the sum.
    pub fn homogeneous_part(&self, f: &Table, k: i64, l: i64) -> Table {
        let n = f.arity();
        let r1 = self.r1();
        Table::from_fn(f.slot_ranks().to_vec(), f.target_rank(), |idx| {
            let ones = idx.iter().filter(|&&i| i < r1).count();
            let v = f.get(idx);
            let mut out = LambdaValue::zero(f.target_rank());
            for b in [Block::A1, Block::A2] {
                if self.component_bidegree(n, ones, b) == (k, l) {
                    out += &self.block_part(v, b);
                }
            }
            out
        })
    }

    pub fn decompose(&self, pi: &Table) -> Result<StructureDecomposition> {
        self.check_on_sum(pi)?;
        if pi.arity() != 2 {
            return Err(Error::InvalidCochain(
                "structure must be a 2-cochain".into(),
            ));
        }
        Ok(StructureDecomposition {
            phi1: self.homogeneous_part(pi, 2, -1),
            mu1: self.homogeneous_part(pi, 1, 0),
            mu2: self.homogeneous_part(pi, 0, 1),
            phi2: self.homogeneous_part(pi, -1, 2),
        })
    }

    pub fn classify(&self, pi: &Table) -> Result<Classification> {
        let dec = self.decompose(pi)?;
        let StructureDecomposition {
            phi1,
            mu1,
            mu2,
            phi2,
        } = &dec;
        let residuals = vec![
            ("[mu1,phi1]".to_string(), nr_bracket(mu1, phi1)),
            (
                "1/2[mu1,mu1]+[mu2,phi1]".to_string(),
                nr_bracket(mu1, mu1)
                    .scale(&half())
                    .add(&nr_bracket(mu2, phi1)),
            ),
            (
                "[mu1,mu2]+[phi1,phi2]".to_string(),
                nr_bracket(mu1, mu2).add(&nr_bracket(phi1, phi2)),
            ),
            (
                "1/2[mu2,mu2]+[mu1,phi2]".to_string(),
                nr_bracket(mu2, mu2)
                    .scale(&half())
                    .add(&nr_bracket(mu1, phi2)),
            ),
            ("[mu2,phi2]".to_string(), nr_bracket(mu2, phi2)),
        ];
        let mut report = AxiomReport::new();
        for (name, t) in &residuals {
            let mut c = Check::new(name.clone(), "structure equation");
            for (idx, v) in t.entries() {
                c.record(self.names(&idx), v.clone(), &self.sum.generators);
            }
            report.push(c);
        }
        let is_lie = residuals.iter().all(|(_, t)| t.is_zero());
        let kind = if !is_lie {
            StructureKind::NotLie
        } else if dec.is_twilled() {
            StructureKind::Twilled
        } else if dec.is_quasi_twilled() {
            StructureKind::QuasiTwilled
        } else {
            StructureKind::General
        };
        Ok(Classification {
            kind,
            decomposition: dec,
            residuals,
            report,
        })
    }

    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter()
            .map(|&i| self.sum.generators[i].clone())
            .collect()
    }

    /// Π^H = e^{X_Ĥ}(Π), computed both as the bracket series and as the
    /// conjugation e^{−Ĥ} ∘ Π_λ ∘ (e^Ĥ ⊗ e^Ĥ); the two must agree.
    pub fn twist(&self, pi: &Table, h: &ModuleMap) -> Result<Table> {
        self.check_on_sum(pi)?;
        let hh = self.lift_map(h)?;
        let series = twist_series(pi, &hh);
        let conj = self.twist_by_conjugation(pi, h)?;
        if series != conj {
            return Err(Error::InternalInconsistency(
                "bracket series and conjugation disagree on the twisted structure".into(),
            ));
        }
        Ok(series)
    }

    fn twist_by_conjugation(&self, pi: &Table, h: &ModuleMap) -> Result<Table> {
        self.check_h(h)?;
        if pi.arity() != 2 {
            return Err(Error::InvalidCochain(
                "structure must be a 2-cochain".into(),
            ));
        }
        let n = self.rank();
        let r1 = self.r1();
        let hat = |v: &LambdaValue| h.apply_unchecked(&v.project(r1, self.r2())).embed(n, 0);
        let lam = [MultiPoly::lambda(1)];
        Ok(Table::from_fn(vec![n, n], n, |idx| {
            let x = self.sum.generator(idx[0]);
            let x = &hat(&x) + &x;
            let y = self.sum.generator(idx[1]);
            let y = &hat(&y) + &y;
            let out = pi.eval(&lam, &[&x, &y]);
            &out - &hat(&out)
        }))
    }

    /// The four components of Π^H from the components of Π.
    pub fn twist_components(
        &self,
        dec: &StructureDecomposition,
        h: &ModuleMap,
    ) -> Result<StructureDecomposition> {
        let hh = self.lift_map(h)?;
        for t in [&dec.phi1, &dec.mu1, &dec.mu2, &dec.phi2] {
            self.check_on_sum(t)?;
        }
        let x = |t: &Table| nr_bracket(t, &hh);
        let phi1_h = x(&dec.phi1);
        let phi1_hh = x(&phi1_h);
        let phi1_hhh = x(&phi1_hh);
        let mu1_h = x(&dec.mu1);
        let mu1_hh = x(&mu1_h);
        Ok(StructureDecomposition {
            phi1: dec.phi1.clone(),
            mu1: dec.mu1.add(&phi1_h),
            mu2: dec.mu2.add(&mu1_h).add(&phi1_hh.scale(&half())),
            phi2: dec
                .phi2
                .add(&x(&dec.mu2))
                .add(&mu1_hh.scale(&half()))
                .add(&phi1_hhh.scale(&sixth())),
        })
    }

    /// L∞ brackets on C*(A₂, A₁) for a quasi-twilled decomposition.
    pub fn linf<'a>(&'a self, dec: &'a StructureDecomposition) -> Result<LInfinity<'a>> {
        if !dec.is_quasi_twilled() {
            return Err(Error::NotQuasiTwilled("phi2 is nonzero".into()));
        }
        Ok(LInfinity { sum: self, dec })
    }

    /// d_{μ̂₂}Ĥ + ½[Ĥ,Ĥ]_{μ̂₁} + ⅙[Ĥ,Ĥ,Ĥ]_{φ̂₁} on A₂ generators, cross-checked
    /// against the φ̂₂ component of the twisted structure.
    pub fn mc_check(&self, dec: &StructureDecomposition, h: &ModuleMap) -> Result<AxiomReport> {
        let residual = self.mc_residual(dec, h)?;
        let twisted = self.twist_components(dec, h)?;
        let phi2_h = self.restrict(&twisted.phi2, 0, 2, Block::A1);
        if phi2_h != residual {
            return Err(Error::InternalInconsistency(
                "Maurer-Cartan residual differs from the twisted phi2".into(),
            ));
        }
        let mut c = Check::new("maurer-cartan", "maurer-cartan equation");
        for (idx, v) in residual.entries() {
            let names = idx.iter().map(|&i| self.a2.generators[i].clone()).collect();
            c.record(names, v.clone(), &self.a1.generators);
        }
        let mut rep = AxiomReport::new();
        rep.push(c);
        Ok(rep)
    }

    /// The MC residual as a 2-cochain in C²(A₂, A₁).
    pub fn mc_residual(&self, dec: &StructureDecomposition, h: &ModuleMap) -> Result<Table> {
        let linf = self.linf(dec)?;
        let f = self.map_cochain(h)?;
        let l1 = linf.l1(&f)?;
        let l2 = linf.l2(&f, &f)?;
        let l3 = linf.l3(&f, &f, &f)?;
        Ok(l1.add(&l2.scale(&half())).add(&l3.scale(&sixth())))
    }

    /// H as an element of C¹(A₂, A₁).
    pub fn map_cochain(&self, h: &ModuleMap) -> Result<Table> {
        self.check_h(h)?;
        Ok(Table::from_fn(vec![self.r2()], self.r1(), |idx| {
            h.image(idx[0])
        }))
    }

    /// [u_λ v]_H = ρ₁(Hu)_λ v − ρ₁(Hv)_{−λ−∂} u + [u_λ v]₂ + φ₁_λ(Hu, Hv), the
    /// A₂-part of μ̂₂^H, for an MC element H.
    pub fn induced_bracket_on_a2(
        &self,
        dec: &StructureDecomposition,
        h: &ModuleMap,
    ) -> Result<LieConformalAlgebra> {
        let rep = self.mc_check(dec, h)?;
        if !rep.passed() {
            return Err(Error::NotMaurerCartan(rep.summary()));
        }
        let twisted = self.twist_components(dec, h)?;
        let bracket = self.restrict(&twisted.mu2, 0, 2, Block::A2);
        LieConformalAlgebra::new(self.a2.clone(), bracket)
    }
}

/// Π + [Π,Ĥ] + ½[[Π,Ĥ],Ĥ] + ⅙[[[Π,Ĥ],Ĥ],Ĥ]; higher terms vanish since
/// Ĥ has bidegree −1|1.
pub fn twist_series(pi: &Table, hh: &Table) -> Table {
    let x1 = nr_bracket(pi, hh);
    let x2 = nr_bracket(&x1, hh);
    let x3 = nr_bracket(&x2, hh);
    pi.add(&x1).add(&x2.scale(&half())).add(&x3.scale(&sixth()))
}

/// The L∞ structure l₁ = d_{μ̂₂}, l₂ = [·,·]_{μ̂₁}, l₃ = [·,·,·]_{φ̂₁} on
/// C*(A₂, A₁), with an element of C^m(A₂, A₁) in degree m.
pub struct LInfinity<'a> {
    sum: &'a DirectSum,
    dec: &'a StructureDecomposition,
}

impl LInfinity<'_> {
    fn check(&self, f: &Table) -> Result<()> {
        if f.arity() == 0
            || f.slot_ranks().iter().any(|&r| r != self.sum.r2())
            || f.target_rank() != self.sum.r1()
        {
            return Err(Error::ModuleMismatch(format!(
                "expected a cochain in C*({}, {})",
                self.sum.a2.name, self.sum.a1.name
            )));
        }
        Ok(())
    }

    fn hat(&self, f: &Table) -> Result<Table> {
        self.check(f)?;
        self.sum.lift(f, 0, f.arity(), Block::A1)
    }

    fn back(&self, t: &Table) -> Result<Table> {
        match self.sum.bidegree_of(t) {
            Bidegree::Zero | Bidegree::Homogeneous(-1, _) => {
                Ok(self.sum.restrict(t, 0, t.arity(), Block::A1))
            }
            other => Err(Error::InternalInconsistency(format!(
                "bracket left C*(A2, A1): bidegree {other:?}"
            ))),
        }
    }

    /// d_{μ̂₂} f = [μ̂₂, f̂]_NR
    pub fn l1(&self, f: &Table) -> Result<Table> {
        self.back(&nr_bracket(&self.dec.mu2, &self.hat(f)?))
    }

    /// (−1)^{m−1} [[μ̂₁, f̂₁]_NR, f̂₂]_NR
    pub fn l2(&self, f1: &Table, f2: &Table) -> Result<Table> {
        let inner = nr_bracket(&self.dec.mu1, &self.hat(f1)?);
        let t = nr_bracket(&inner, &self.hat(f2)?);
        self.back(&t.scale(&int(parity(f1.arity() - 1))))
    }

    /// (−1)^{n−1} [[[φ̂₁, f̂₁]_NR, f̂₂]_NR, f̂₃]_NR with n the arity of f₂.
    pub fn l3(&self, f1: &Table, f2: &Table, f3: &Table) -> Result<Table> {
        let a = nr_bracket(&self.dec.phi1, &self.hat(f1)?);
        let b = nr_bracket(&a, &self.hat(f2)?);
        let t = nr_bracket(&b, &self.hat(f3)?);
        self.back(&t.scale(&int(parity(f2.arity() - 1))))
    }

    /// l_k on `args`; zero for k ≥ 4.
    pub fn bracket(&self, args: &[&Table]) -> Result<Table> {
        match args {
            [a] => self.l1(a),
            [a, b] => self.l2(a, b),
            [a, b, c] => self.l3(a, b, c),
            _ => {
                for a in args {
                    self.check(a)?;
                }
                let arity: usize = args.iter().map(|a| a.arity()).sum::<usize>() + 2 - args.len();
                Ok(Table::zero(vec![self.sum.r2(); arity], self.sum.r1()))
            }
        }
    }

    /// Σ_{i+j=n+1} (−1)^{i(j−1)} Σ_σ χ(σ) l_j(l_i(v_σ(1), …), …) over
    /// (i, n−i)-unshuffles, with χ the antisymmetric Koszul sign.
    pub fn higher_jacobi(&self, inputs: &[&Table]) -> Result<Table> {
        let n = inputs.len();
        let degrees: Vec<usize> = inputs.iter().map(|t| t.arity()).collect();
        let mut acc: Option<Table> = None;
        for i in 1..=n.min(3) {
            let j = n + 1 - i;
            if j > 3 {
                continue;
            }
            for u in unshuffles(i, n - i) {
                let head: Vec<&Table> = u.head().iter().map(|&p| inputs[p]).collect();
                let inner = self.bracket(&head)?;
                let mut outer_args = vec![&inner];
                outer_args.extend(u.tail().iter().map(|&p| inputs[p]));
                let term = self.bracket(&outer_args)?;
                let s = parity(i * (j - 1)) * koszul_chi(&u.sigma.0, &degrees);
                let term = term.scale(&int(s));
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
        }
        acc.ok_or_else(|| Error::InvalidCochain("higher Jacobi needs at least one input".into()))
    }
}

/// Antisymmetric Koszul sign of listing v_{σ(1)}, …, v_{σ(n)}: each inversion
/// of a pair of degrees p, q contributes −(−1)^{pq}.
pub fn koszul_chi(sigma: &[usize], degrees: &[usize]) -> i64 {
    let mut s = 1;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma[a] > sigma[b] {
                s *= -parity(degrees[sigma[a]] * degrees[sigma[b]]);
            }
        }
    }
    s
}

/// A ⋉_φ M: ([a_λ b], ρ(a)_λ n − ρ(b)_{−λ−∂} m + φ_λ(a, b)) for a 2-cocycle φ.
pub fn twisted_semidirect_product(
    rep: &Representation,
    phi: &Table,
) -> Result<LieConformalAlgebra> {
    let complex = CochainComplex::new(rep.clone());
    let cocycle = complex.is_cocycle(phi)?;
    if phi.arity() != 2 {
        return Err(Error::InvalidCochain(
            "twisting cochain must have arity 2".into(),
        ));
    }
    if !is_valid_cochain(phi) {
        return Err(Error::InvalidCochain(
            "twisting cochain is not skew-symmetric".into(),
        ));
    }
    if !cocycle.passed() {
        return Err(Error::NotACocycle(cocycle.summary()));
    }
    let semi = rep.semidirect_product()?;
    let ra = rep.algebra.rank();
    let n = semi.rank();
    let bracket = Table::from_fn(vec![n, n], n, |idx| {
        let base = semi.bracket.get(idx).clone();
        if idx[0] < ra && idx[1] < ra {
            base + phi.get(idx).embed(n, ra)
        } else {
            base
        }
    });
    LieConformalAlgebra::new(semi.module, bracket)
}

/// The direct-sum context matching [`Representation::semidirect_product`].
pub fn semidirect_context(rep: &Representation) -> DirectSum {
    DirectSum::new(&rep.algebra.module, &rep.space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{virasoro, virasoro_module};
    use crate::poly::int;

    fn m10() -> Representation {
        virasoro_module(&int(1), &int(0))
    }

    fn cl(c: i64) -> ModuleMap {
        ModuleMap::from_images(1, &[LambdaValue::single(1, 0, MultiPoly::constant(int(c)))])
            .unwrap()
    }

    #[test]
    fn semidirect_is_twilled_and_mu1() {
        let rep = m10();
        let ds = semidirect_context(&rep);
        let pi = rep.semidirect_product().unwrap().bracket;
        assert_eq!(ds.bidegree_of(&pi), Bidegree::Homogeneous(1, 0));
        let cls = ds.classify(&pi).unwrap();
        assert_eq!(cls.kind, StructureKind::Twilled);
        assert_eq!(cls.decomposition.mu1, pi);
        assert!(cls.decomposition.mu2.is_zero());
    }

    #[test]
    fn lifted_map_has_bidegree_minus_one_one() {
        let ds = semidirect_context(&m10());
        let hh = ds.lift_map(&cl(3)).unwrap();
        assert_eq!(ds.bidegree_of(&hh), Bidegree::Homogeneous(-1, 1));
    }

    #[test]
    fn lift_of_action_matches_semidirect_block() {
        let rep = m10();
        let ds = semidirect_context(&rep);
        let beta = ds.lift(&rep.action, 1, 1, Block::A2).unwrap();
        let alpha = ds.lift(&rep.algebra.bracket, 2, 0, Block::A1).unwrap();
        assert_eq!(alpha.add(&beta), rep.semidirect_product().unwrap().bracket);
    }

    #[test]
    fn twist_by_cl_gives_induced_bracket() {
        // [v_λ v]^T = c(∂ + 2λ)v on M_{1,0}
        let rep = m10();
        let ds = semidirect_context(&rep);
        let pi = rep.semidirect_product().unwrap().bracket;
        let dec = ds.decompose(&pi).unwrap();
        assert!(ds.mc_check(&dec, &cl(3)).unwrap().passed());
        let br = ds.induced_bracket_on_a2(&dec, &cl(3)).unwrap();
        let want = LambdaValue::single(
            1,
            0,
            (MultiPoly::d() + MultiPoly::lambda(1).scale(&int(2))).scale(&int(3)),
        );
        assert_eq!(br.bracket.get(&[0, 0]), &want);
        assert!(br.is_lie());
        let twisted = ds.twist(&pi, &cl(3)).unwrap();
        assert_eq!(ds.classify(&twisted).unwrap().kind, StructureKind::Twilled);
    }

    #[test]
    fn non_operator_fails_mc() {
        let rep = virasoro_module(&int(2), &int(0));
        let ds = semidirect_context(&rep);
        let dec = ds
            .decompose(&rep.semidirect_product().unwrap().bracket)
            .unwrap();
        let r = ds.mc_check(&dec, &cl(1)).unwrap();
        assert!(!r.passed());
        // c²(1 − Δ)(∂ + 2λ)L with Δ = 2, c = 1
        let w = &r.checks[0].witnesses[0].difference;
        assert_eq!(
            w,
            &LambdaValue::single(
                1,
                0,
                -(MultiPoly::d() + MultiPoly::lambda(1).scale(&int(2)))
            )
        );
    }

    #[test]
    fn phi_twisted_semidirect_is_quasi_twilled() {
        let vir = virasoro();
        let adj = Representation::adjoint(&vir);
        let phi = vir.bracket.neg();
        let alg = twisted_semidirect_product(&adj, &phi).unwrap();
        assert!(alg.is_lie());
        let ds = semidirect_context(&adj);
        let cls = ds.classify(&alg.bracket).unwrap();
        assert_eq!(cls.kind, StructureKind::QuasiTwilled);
        let id = ModuleMap::identity(1);
        let br = ds.induced_bracket_on_a2(&cls.decomposition, &id).unwrap();
        let want = LambdaValue::single(1, 0, MultiPoly::d() + MultiPoly::lambda(1).scale(&int(2)));
        assert_eq!(br.bracket.get(&[0, 0]), &want);
    }

    #[test]
    fn koszul_sign_of_swap() {
        assert_eq!(koszul_chi(&[1, 0], &[1, 1]), 1);
        assert_eq!(koszul_chi(&[1, 0], &[1, 2]), -1);
    }
}
