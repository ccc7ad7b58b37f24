//! Free ℚ[∂]-modules of finite rank and the ℚ[∂]-linear maps between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Scalar, Var};
use crate::value::{LambdaValue, ModuleElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub name: String,
    pub generators: Vec<String>,
}

impl FreeModule {
    pub fn new(name: impl Into<String>, generators: &[&str]) -> Result<Self> {
        Self::from_names(name, generators.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(name: impl Into<String>, generators: Vec<String>) -> Result<Self> {
        let name = name.into();
        if generators.is_empty() {
            return Err(Error::ModuleMismatch(format!(
                "module {name} has no generators"
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::ModuleMismatch(format!(
                    "generator {g} repeated in module {name}"
                )));
            }
        }
        Ok(FreeModule { name, generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, generator: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == generator)
    }

    pub fn generator(&self, i: usize) -> ModuleElement {
        LambdaValue::generator(self.rank(), i)
    }

    pub fn zero(&self) -> ModuleElement {
        LambdaValue::zero(self.rank())
    }

    /// A₁ ⊕ A₂ with generators renamed `A1::g`, `A2::v`. When both summands
    /// share a name the second one is primed.
    pub fn direct_sum(a1: &FreeModule, a2: &FreeModule) -> FreeModule {
        let second = if a1.name == a2.name {
            format!("{}'", a2.name)
        } else {
            a2.name.clone()
        };
        let mut generators: Vec<String> = a1
            .generators
            .iter()
            .map(|g| format!("{}::{}", a1.name, g))
            .collect();
        generators.extend(a2.generators.iter().map(|g| format!("{second}::{g}")));
        FreeModule {
            name: format!("{}+{}", a1.name, second),
            generators,
        }
    }

    pub fn render(&self, v: &LambdaValue) -> String {
        v.render(&self.generators)
    }
}

/// A ℚ[∂]-linear map of free modules given by a (target × source) matrix of
/// polynomials in ∂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    source_rank: usize,
    target_rank: usize,
    matrix: Vec<Vec<MultiPoly>>,
}

impl ModuleMap {
    pub fn new(
        source_rank: usize,
        target_rank: usize,
        matrix: Vec<Vec<MultiPoly>>,
    ) -> Result<Self> {
        if matrix.len() != target_rank || matrix.iter().any(|row| row.len() != source_rank) {
            return Err(Error::ModuleMismatch(
                "matrix shape does not match ranks".into(),
            ));
        }
        for p in matrix.iter().flatten() {
            if p.max_var_index() > 0 {
                return Err(Error::ModuleMismatch(
                    "module map entries must be polynomials in d only".into(),
                ));
            }
        }
        Ok(ModuleMap {
            source_rank,
            target_rank,
            matrix,
        })
    }

    /// The map sending source generator j to `images[j]`.
    pub fn from_images(target_rank: usize, images: &[ModuleElement]) -> Result<Self> {
        let source_rank = images.len();
        let mut matrix = vec![vec![MultiPoly::zero(); source_rank]; target_rank];
        for (j, img) in images.iter().enumerate() {
            if img.rank() != target_rank {
                return Err(Error::ModuleMismatch("image has wrong rank".into()));
            }
            for (i, row) in matrix.iter_mut().enumerate() {
                row[j] = img.coeff(i).clone();
            }
        }
        Self::new(source_rank, target_rank, matrix)
    }

    pub fn zero(source_rank: usize, target_rank: usize) -> Self {
        ModuleMap {
            source_rank,
            target_rank,
            matrix: vec![vec![MultiPoly::zero(); source_rank]; target_rank],
        }
    }

    pub fn identity(rank: usize) -> Self {
        Self::scalar(rank, &Scalar::from_integer(1.into()))
    }

    pub fn scalar(rank: usize, c: &Scalar) -> Self {
        let mut m = Self::zero(rank, rank);
        for i in 0..rank {
            m.matrix[i][i] = MultiPoly::constant(c.clone());
        }
        m
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    pub fn image(&self, j: usize) -> ModuleElement {
        LambdaValue::from_coeffs(
            (0..self.target_rank)
                .map(|i| self.matrix[i][j].clone())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(MultiPoly::is_zero)
    }

    /// Apply to a module element or λ-valued element; coefficients may depend on λ's.
    pub fn apply(&self, x: &LambdaValue) -> Result<LambdaValue> {
        if x.rank() != self.source_rank {
            return Err(Error::ModuleMismatch(format!(
                "map expects rank {}, got rank {}",
                self.source_rank,
                x.rank()
            )));
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &LambdaValue) -> LambdaValue {
        let mut out = LambdaValue::zero(self.target_rank);
        for (j, p) in x.coeffs().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for i in 0..self.target_rank {
                let m = &self.matrix[i][j];
                if !m.is_zero() {
                    *out.coeff_mut(i) += &(m * p);
                }
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target_rank != self.source_rank {
            return Err(Error::ModuleMismatch("cannot compose maps".into()));
        }
        let images: Vec<_> = (0..other.source_rank)
            .map(|j| self.apply_unchecked(&other.image(j)))
            .collect();
        ModuleMap::from_images(self.target_rank, &images)
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_same_shape(other)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(ModuleMap { matrix, ..*self })
    }

    pub fn sub(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|p| p.scale(c)).collect())
                .collect(),
            ..*self
        }
    }

    pub fn pow(&self, n: u32) -> Result<ModuleMap> {
        if self.source_rank != self.target_rank {
            return Err(Error::ModuleMismatch("power of a non-endomorphism".into()));
        }
        let mut acc = ModuleMap::identity(self.source_rank);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    fn check_same_shape(&self, other: &ModuleMap) -> Result<()> {
        if self.source_rank != other.source_rank || self.target_rank != other.target_rank {
            return Err(Error::ModuleMismatch("maps have different shapes".into()));
        }
        Ok(())
    }

    /// Largest ∂-degree among the entries.
    pub fn degree(&self) -> u32 {
        self.matrix
            .iter()
            .flatten()
            .map(|p| p.degree_in(Var::Partial))
            .max()
            .unwrap_or(0)
    }

    pub fn determinant(&self) -> Result<MultiPoly> {
        if self.source_rank != self.target_rank {
            return Err(Error::ModuleMismatch(
                "determinant of a non-square map".into(),
            ));
        }
        Ok(det(&self.matrix))
    }

    /// Inverse over ℚ[∂], available exactly when the determinant is a nonzero constant.
    pub fn inverse(&self) -> Result<Option<ModuleMap>> {
        let d = self.determinant()?;
        if d.is_zero() || !d.is_constant() {
            return Ok(None);
        }
        let inv_det = Scalar::from_integer(1.into()) / d.constant_term();
        let n = self.source_rank;
        let mut matrix = vec![vec![MultiPoly::zero(); n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // adjugate: (i,j) entry is the (j,i) cofactor
                let minor = minor(&self.matrix, j, i);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *entry = det(&minor).scale(&(inv_det.clone() * Scalar::from_integer(sign.into())));
            }
        }
        Ok(Some(ModuleMap {
            source_rank: n,
            target_rank: n,
            matrix,
        }))
    }

    /// Render as `g ↦ image` lines.
    pub fn render(&self, source: &FreeModule, target: &FreeModule) -> String {
        (0..self.source_rank)
            .map(|j| {
                format!(
                    "{} -> {}",
                    source.generators[j],
                    target.render(&self.image(j))
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn minor(m: &[Vec<MultiPoly>], row: usize, col: usize) -> Vec<Vec<MultiPoly>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MultiPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let term = &m[0][j] * &det(&minor(m, 0, j));
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
