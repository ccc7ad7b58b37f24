//! Module-valued polynomials: elements of ℚ[λ₁, …, λ_{k−1}] ⊗ M for a free
//! ℚ[∂]-module M.
//!
//! A value is one polynomial per generator of M. Inside a coefficient the
//! variable ∂ stands for the action of ∂ on M, so `(d + 2*x1) L` is
//! ∂L + 2λ₁L. Because ∂ and the λ's commute, the λ† rule
//! λ_k ↦ −λ₁ − … − λ_{k−1} − ∂ is ordinary polynomial substitution.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::poly::{MultiPoly, Scalar, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaValue {
    coeffs: Vec<MultiPoly>,
}

/// An element Σ pᵢ(∂)gᵢ of a free module: a value with no λ dependence.
pub type ModuleElement = LambdaValue;

impl LambdaValue {
    pub fn zero(rank: usize) -> Self {
        LambdaValue {
            coeffs: vec![MultiPoly::zero(); rank],
        }
    }

    /// The generator gᵢ.
    pub fn generator(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coeffs[i] = MultiPoly::one();
        v
    }

    /// p · gᵢ
    pub fn single(rank: usize, i: usize, p: MultiPoly) -> Self {
        let mut v = Self::zero(rank);
        v.coeffs[i] = p;
        v
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        LambdaValue { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i]
    }

    pub fn coeff_mut(&mut self, i: usize) -> &mut MultiPoly {
        &mut self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MultiPoly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiply every coefficient by `p`.
    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        self.map(|q| q * p)
    }

    /// Apply ∂ (the module action) `n` times.
    pub fn partial_pow(&self, n: u32) -> Self {
        self.mul_poly(&MultiPoly::d().pow(n))
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        LambdaValue {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Simultaneous substitution in every coefficient; see [`MultiPoly::compose`].
    pub fn compose(&self, map: &[Option<&MultiPoly>]) -> Self {
        self.map(|p| p.compose(map))
    }

    pub fn substitute(&self, v: Var, r: &MultiPoly) -> crate::error::Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| p.substitute(v, r))
            .collect::<crate::error::Result<Vec<_>>>()?;
        Ok(LambdaValue { coeffs })
    }

    /// λ_k ↦ −λ₁ − … − λ_{k−1} − ∂.
    pub fn dagger(&self, k: usize) -> Self {
        self.substitute(Var::Lambda(k), &MultiPoly::dagger(k - 1))
            .expect("dagger replacement never contains its own variable")
    }

    pub fn rename(&self, f: impl Fn(usize) -> usize + Copy) -> Self {
        self.map(|p| p.rename(f))
    }

    /// Representative modulo ∂M: keep only the ∂⁰ part of each coefficient.
    pub fn reduce_mod_partial(&self) -> Self {
        self.map(|p| p.compose(&[Some(&MultiPoly::zero())]))
    }

    pub fn degree(&self) -> u64 {
        self.coeffs.iter().map(MultiPoly::degree).max().unwrap_or(0)
    }

    pub fn max_var_index(&self) -> usize {
        self.coeffs
            .iter()
            .map(MultiPoly::max_var_index)
            .max()
            .unwrap_or(0)
    }

    /// Extend with zero coefficients for extra generators, or embed into a
    /// larger module at the given generator offset.
    pub fn embed(&self, rank: usize, offset: usize) -> Self {
        let mut v = Self::zero(rank);
        for (i, p) in self.coeffs.iter().enumerate() {
            v.coeffs[offset + i] = p.clone();
        }
        v
    }

    /// The coefficients for generators `offset..offset+len`.
    pub fn project(&self, offset: usize, len: usize) -> Self {
        LambdaValue {
            coeffs: self.coeffs[offset..offset + len].to_vec(),
        }
    }

    /// Render with the given generator names, e.g. `(d + 2*x1) L`.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (p, name) in self.coeffs.iter().zip(names) {
            if p.is_zero() {
                continue;
            }
            if p.num_terms() == 1 {
                let s = p.to_string();
                if s == "1" {
                    parts.push(name.clone());
                } else {
                    parts.push(format!("{s} {name}"));
                }
            } else {
                parts.push(format!("({p}) {name}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LambdaValue, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        D(self, names)
    }
}

impl AddAssign<&LambdaValue> for LambdaValue {
    fn add_assign(&mut self, rhs: &LambdaValue) {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&LambdaValue> for LambdaValue {
    fn sub_assign(&mut self, rhs: &LambdaValue) {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Add<&LambdaValue> for &LambdaValue {
    type Output = LambdaValue;
    fn add(self, rhs: &LambdaValue) -> LambdaValue {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LambdaValue {
    type Output = LambdaValue;
    fn add(mut self, rhs: LambdaValue) -> LambdaValue {
        self += &rhs;
        self
    }
}

impl Sub<&LambdaValue> for &LambdaValue {
    type Output = LambdaValue;
    fn sub(self, rhs: &LambdaValue) -> LambdaValue {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LambdaValue {
    type Output = LambdaValue;
    fn sub(mut self, rhs: LambdaValue) -> LambdaValue {
        self -= &rhs;
        self
    }
}

impl Neg for LambdaValue {
    type Output = LambdaValue;
    fn neg(self) -> LambdaValue {
        LambdaValue {
            coeffs: self.coeffs.into_iter().map(|p| -p).collect(),
        }
    }
}

impl Neg for &LambdaValue {
    type Output = LambdaValue;
    fn neg(self) -> LambdaValue {
        -self.clone()
    }
}
