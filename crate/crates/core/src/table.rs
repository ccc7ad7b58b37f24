//! Multilinear tables on generators, extended by conformal sesquilinearity.
//!
//! A table with slots of ranks (r₁, …, r_k) stores one λ-valued element per
//! generator tuple, as a polynomial in λ₁, …, λ_{k−1} and ∂. Evaluating it on
//! arbitrary elements uses
//!
//! * f(…, ∂aᵢ, …) = −λᵢ f(…) for the first k−1 slots,
//! * f(…, ∂a_k) = (λ₁ + … + λ_{k−1} + ∂) f(…) for the last slot.
//!
//! λ-brackets, module actions and k-cochains are all tables.

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Scalar, Var};
use crate::value::LambdaValue;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    slot_ranks: Vec<usize>,
    target_rank: usize,
    values: Vec<LambdaValue>,
}

impl Table {
    pub fn zero(slot_ranks: Vec<usize>, target_rank: usize) -> Self {
        let n = slot_ranks.iter().product();
        Table {
            slot_ranks,
            target_rank,
            values: vec![LambdaValue::zero(target_rank); n],
        }
    }

    pub fn from_fn(
        slot_ranks: Vec<usize>,
        target_rank: usize,
        mut f: impl FnMut(&[usize]) -> LambdaValue,
    ) -> Self {
        let mut t = Self::zero(slot_ranks, target_rank);
        for (pos, idx) in t.tuples().into_iter().enumerate() {
            let v = f(&idx);
            assert_eq!(v.rank(), target_rank, "table entry has wrong rank");
            t.values[pos] = v;
        }
        t
    }

    pub fn try_from_fn(
        slot_ranks: Vec<usize>,
        target_rank: usize,
        mut f: impl FnMut(&[usize]) -> Result<LambdaValue>,
    ) -> Result<Self> {
        let mut t = Self::zero(slot_ranks, target_rank);
        for (pos, idx) in t.tuples().into_iter().enumerate() {
            let v = f(&idx)?;
            if v.rank() != target_rank {
                return Err(Error::ModuleMismatch("table entry has wrong rank".into()));
            }
            t.values[pos] = v;
        }
        Ok(t)
    }

    pub fn arity(&self) -> usize {
        self.slot_ranks.len()
    }

    pub fn slot_ranks(&self) -> &[usize] {
        &self.slot_ranks
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    fn position(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.slot_ranks.len());
        let mut pos = 0;
        for (&i, &r) in idx.iter().zip(&self.slot_ranks) {
            debug_assert!(i < r);
            pos = pos * r + i;
        }
        pos
    }

    pub fn get(&self, idx: &[usize]) -> &LambdaValue {
        &self.values[self.position(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: LambdaValue) {
        assert_eq!(v.rank(), self.target_rank, "table entry has wrong rank");
        let p = self.position(idx);
        self.values[p] = v;
    }

    pub fn values(&self) -> &[LambdaValue] {
        &self.values
    }

    /// All generator tuples in row-major order.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        tuples(&self.slot_ranks)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &LambdaValue)> {
        self.tuples().into_iter().zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(LambdaValue::is_zero)
    }

    pub fn same_shape(&self, other: &Table) -> bool {
        self.slot_ranks == other.slot_ranks && self.target_rank == other.target_rank
    }

    pub fn map_values(&self, f: impl Fn(&LambdaValue) -> LambdaValue) -> Table {
        Table {
            slot_ranks: self.slot_ranks.clone(),
            target_rank: self.target_rank,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &Table,
        f: impl Fn(&LambdaValue, &LambdaValue) -> LambdaValue,
    ) -> Table {
        assert!(self.same_shape(other), "tables have different shapes");
        Table {
            slot_ranks: self.slot_ranks.clone(),
            target_rank: self.target_rank,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Table) -> Table {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Table) -> Table {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Table {
        self.map_values(|v| v.scale(c))
    }

    pub fn neg(&self) -> Table {
        self.map_values(|v| -v)
    }

    pub fn degree(&self) -> u64 {
        self.values
            .iter()
            .map(LambdaValue::degree)
            .max()
            .unwrap_or(0)
    }

    /// Evaluate on arbitrary elements with the λ-slots set to `lambdas`.
    ///
    /// `lambdas[i]` may be any polynomial, including ones that contain ∂ (the
    /// ∂ then acts on the output, which is how λ† arguments are evaluated).
    /// Argument coefficients may depend on λ's of an enclosing expression.
    pub fn eval(&self, lambdas: &[MultiPoly], args: &[&LambdaValue]) -> LambdaValue {
        let k = self.arity();
        assert_eq!(lambdas.len() + 1, k.max(1), "wrong number of lambdas");
        assert_eq!(args.len(), k, "wrong number of arguments");
        for (a, &r) in args.iter().zip(&self.slot_ranks) {
            assert_eq!(a.rank(), r, "argument rank does not match slot");
        }
        // ∂ on an argument becomes −Λᵢ, or ΣΛ + ∂ in the last slot
        let total = lambdas
            .iter()
            .fold(MultiPoly::d(), |acc, l| acc + l.clone());
        let converted: Vec<Vec<MultiPoly>> = args
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let repl = if i + 1 < k {
                    -&lambdas[i]
                } else {
                    total.clone()
                };
                let trivial = i + 1 == k && lambdas.is_empty();
                a.coeffs()
                    .iter()
                    .map(|p| {
                        if trivial || p.is_zero() || !p.contains_var(Var::Partial) {
                            p.clone()
                        } else {
                            p.compose(&[Some(&repl)])
                        }
                    })
                    .collect()
            })
            .collect();

        let identity_lambdas = lambdas
            .iter()
            .enumerate()
            .all(|(j, l)| *l == MultiPoly::lambda(j + 1));
        let mut map: Vec<Option<&MultiPoly>> = vec![None];
        map.extend(lambdas.iter().map(Some));

        let mut out = LambdaValue::zero(self.target_rank);
        let mut idx = vec![0usize; k];
        self.accumulate(
            0,
            &mut idx,
            MultiPoly::one(),
            &converted,
            &map,
            identity_lambdas,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn accumulate(
        &self,
        slot: usize,
        idx: &mut Vec<usize>,
        factor: MultiPoly,
        converted: &[Vec<MultiPoly>],
        map: &[Option<&MultiPoly>],
        identity_lambdas: bool,
        out: &mut LambdaValue,
    ) {
        if slot == idx.len() {
            let entry = self.get(idx);
            if entry.is_zero() {
                return;
            }
            for (t, p) in entry.coeffs().iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let q = if identity_lambdas {
                    p.clone()
                } else {
                    p.compose(map)
                };
                *out.coeff_mut(t) += &(&q * &factor);
            }
            return;
        }
        for (g, c) in converted[slot].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx[slot] = g;
            let next = &factor * c;
            self.accumulate(slot + 1, idx, next, converted, map, identity_lambdas, out);
        }
    }

    /// Evaluate on generators with permuted λ's, the way the skew-symmetry
    /// condition reads: f_{λ_{σ(1)}, …}(g_{σ(1)}, …) with λ_k ↦ λ†_k.
    pub fn permuted(&self, sigma: &[usize]) -> Table {
        let k = self.arity();
        assert!(self.slot_ranks.iter().all(|&r| r == self.slot_ranks[0]));
        Table::from_fn(self.slot_ranks.clone(), self.target_rank, |idx| {
            let permuted_idx: Vec<usize> = sigma.iter().map(|&s| idx[s]).collect();
            let lambdas: Vec<MultiPoly> = sigma[..k - 1]
                .iter()
                .map(|&s| MultiPoly::lambda(s + 1))
                .collect();
            let v = self.get(&permuted_idx).compose(
                &std::iter::once(None)
                    .chain(lambdas.iter().map(Some))
                    .collect::<Vec<_>>(),
            );
            v.dagger(k)
        })
    }
}

/// All index tuples for the given ranks, row-major.
pub fn tuples(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(ranks.len())];
    for &r in ranks {
        let mut next = Vec::with_capacity(out.len() * r);
        for t in &out {
            for i in 0..r {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}
