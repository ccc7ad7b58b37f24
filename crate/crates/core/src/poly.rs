//! Exact multivariate polynomials over ℚ in the formal symbols ∂ and λ₁, λ₂, ….
//!
//! Every identity the toolkit checks is ultimately an equality of these
//! polynomials. Variables are addressed by a dense index: `0` is ∂ and `i ≥ 1`
//! is λᵢ. Monomials are ordered degree-lexicographically with
//! λ₁ < λ₂ < … < ∂, and polynomials print from the largest monomial down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational coefficient, always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Partial,
    /// λᵢ with i ≥ 1.
    Lambda(usize),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::Partial => 0,
            Var::Lambda(i) => {
                assert!(i >= 1, "lambda indices start at 1");
                i
            }
        }
    }

    pub fn from_index(i: usize) -> Var {
        if i == 0 {
            Var::Partial
        } else {
            Var::Lambda(i)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Partial => write!(f, "d"),
            Var::Lambda(i) => write!(f, "x{i}"),
        }
    }
}

/// Exponent vector indexed by variable index; trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 6]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(v: Var, power: u32) -> Self {
        let mut e = vec![0; v.index() + 1];
        e[v.index()] = power;
        Self::from_exponents(&e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let n = self.0.len().max(other.0.len());
        let mut v: SmallVec<[u32; 6]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let e = self
                .exponent(i)
                .checked_add(other.exponent(i))
                .ok_or(Error::DegreeOverflow)?;
            v.push(e);
        }
        Ok(Monomial(v))
    }

    /// Same monomial with the exponent of `i` removed (set to zero).
    fn without(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        if i < v.len() {
            v[i] = 0;
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponent(0).cmp(&other.exponent(0)))
            .then_with(|| {
                let n = self.0.len().max(other.0.len());
                for i in (1..n).rev() {
                    match self.exponent(i).cmp(&other.exponent(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Scalar::one())
    }

    /// ∂
    pub fn d() -> Self {
        Self::var(Var::Partial)
    }

    /// λᵢ
    pub fn lambda(i: usize) -> Self {
        Self::var(Var::Lambda(i))
    }

    /// Sum of λ_i for i in `indices`.
    pub fn lambda_sum(indices: impl IntoIterator<Item = usize>) -> Self {
        indices
            .into_iter()
            .fold(Self::zero(), |acc, i| acc + Self::lambda(i))
    }

    /// −λ₁ − … − λ_n − ∂, the value substituted for the implicit last λ.
    pub fn dagger(n: usize) -> Self {
        -(Self::lambda_sum(1..=n) + Self::d())
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        let i = v.index();
        self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0)
    }

    /// Highest variable index that occurs (0 if only ∂ or constants).
    pub fn max_var_index(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.exponents().len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        let i = v.index();
        self.terms.keys().any(|m| m.exponent(i) > 0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replace every occurrence of `v` by `r`.
    pub fn substitute(&self, v: Var, r: &MultiPoly) -> Result<Self> {
        if r.contains_var(v) {
            return Err(Error::CyclicSubstitution { var: v });
        }
        let mut map: Vec<Option<&MultiPoly>> = vec![None; v.index() + 1];
        map[v.index()] = Some(r);
        Ok(self.compose(&map))
    }

    /// Simultaneous substitution: variable `i` is replaced by `map[i]` when that
    /// entry is `Some`, and kept otherwise. Replacements may mention any
    /// variable, including the ones being replaced.
    pub fn compose(&self, map: &[Option<&MultiPoly>]) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if map.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); map.len()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::with_capacity(m.exponents().len());
            let mut factor = Self::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                match map.get(i).copied().flatten() {
                    Some(r) if e > 0 => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(Self::one());
                        }
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * r;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                        kept.push(0);
                    }
                    _ => kept.push(e),
                }
            }
            let rest = Monomial::from_exponents(&kept);
            for (m2, c2) in factor.terms {
                out.add_term(
                    m2.checked_mul(&rest)
                        .expect("exponent overflow in substitution"),
                    c2,
                );
            }
        }
        out
    }

    /// Rename variables: variable `i` becomes variable `map(i)`.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut exps: Vec<u32> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map(i);
                if exps.len() <= j {
                    exps.resize(j + 1, 0);
                }
                exps[j] += e;
            }
            out.add_term(Monomial::from_exponents(&exps), c.clone());
        }
        out
    }

    /// Coefficients with respect to powers of variable `v`: `p = Σ_k v^k · out[k]`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let mut out: Vec<MultiPoly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i) as usize;
            if out.len() <= e {
                out.resize(e + 1, MultiPoly::zero());
            }
            out[e].add_term(m.without(i), c.clone());
        }
        out
    }

    /// Exact division by a nonzero rational.
    pub fn div_scalar(&self, c: &Scalar) -> Self {
        assert!(!c.is_zero(), "division by zero");
        self.scale(&(Scalar::one() / c))
    }
}

fn write_scalar(f: &mut fmt::Formatter<'_>, c: &Scalar) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", Var::from_index(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write_scalar(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_scalar(f, &abs)?;
                    write!(f, "*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("exponent overflow")
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// Univariate polynomial in ∂, used as a module-map matrix entry.
pub fn poly_in_d(coeffs: &[i64]) -> MultiPoly {
    MultiPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (Monomial::var(Var::Partial, k as u32), int(c))),
    )
}
