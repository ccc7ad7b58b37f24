//! Syntax trees. Equality ignores source spans, so a reparsed printout
//! compares equal to the original tree.

use crate::poly::MultiPoly;

use super::error::Span;

#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

/// `coeff generator`, with the coefficient a polynomial in `d` and `x1, x2, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: MultiPoly,
    pub generator: Ident,
}

/// A sum of terms; the empty sum is written `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Value {
    pub terms: Vec<Term>,
}

/// `head(a, b) = value;` or `[a, b] = value;` (head `None`).
#[derive(Clone, Debug)]
pub struct Entry {
    pub head: Option<Ident>,
    pub args: Vec<Ident>,
    pub value: Value,
    pub span: Span,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.args == other.args && self.value == other.value
    }
}

impl Eq for Entry {}

/// `(a, b) = poly;` where `x1`, `x2` stand for ∂ on the first and second factor.
#[derive(Clone, Debug)]
pub struct TensorEntry {
    pub args: Vec<Ident>,
    pub coeff: MultiPoly,
    pub span: Span,
}

impl PartialEq for TensorEntry {
    fn eq(&self, other: &Self) -> bool {
        self.args == other.args && self.coeff == other.coeff
    }
}

impl Eq for TensorEntry {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraBody {
    Explicit {
        generators: Vec<Ident>,
        entries: Vec<Entry>,
    },
    /// `semidirect M` or `semidirect M twisted phi`.
    Semidirect { module: Ident, twist: Option<Ident> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepBody {
    Adjoint(Ident),
    Dual(Ident),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NSLieBody {
    /// `circ(a, b) = …; vee(a, b) = …;`
    Explicit {
        generators: Vec<Ident>,
        entries: Vec<Entry>,
    },
    Nijenhuis {
        map: Ident,
        powers: Option<(u32, u32)>,
    },
    RotaBaxter {
        map: Ident,
        twist: Option<Ident>,
    },
}

/// One side of a two-block decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Named(Ident),
    Generators(Vec<Ident>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    CheckLie(Ident),
    CheckModule(Ident),
    CheckRb(Ident),
    CheckTwistedRb {
        map: Ident,
        cochain: Ident,
    },
    CheckNijenhuis {
        map: Ident,
        powers: Option<(u32, u32)>,
    },
    CheckReynolds(Ident),
    CheckCcybe(Ident),
    CheckNSLie(Ident),
    Twist {
        algebra: Ident,
        blocks: Option<(Block, Block)>,
        map: Ident,
    },
    Classify {
        algebra: Ident,
        blocks: (Block, Block),
    },
    Cohomology {
        map: Ident,
        twist: Option<Ident>,
        max_arity: usize,
        element: Option<Value>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Algebra {
        name: Ident,
        body: AlgebraBody,
    },
    Module {
        name: Ident,
        over: Ident,
        generators: Vec<Ident>,
        entries: Vec<Entry>,
    },
    Rep {
        name: Ident,
        body: RepBody,
    },
    Map {
        name: Ident,
        source: Ident,
        target: Ident,
        entries: Vec<Entry>,
    },
    Cochain {
        name: Ident,
        source: Ident,
        arity: usize,
        target: Ident,
        entries: Vec<Entry>,
    },
    Tensor {
        name: Ident,
        over: Ident,
        entries: Vec<TensorEntry>,
    },
    NSLie {
        name: Ident,
        body: NSLieBody,
    },
    Directive(Directive),
}

impl Decl {
    /// The declared name; directives declare nothing.
    pub fn name(&self) -> Option<&Ident> {
        match self {
            Decl::Algebra { name, .. }
            | Decl::Module { name, .. }
            | Decl::Rep { name, .. }
            | Decl::Map { name, .. }
            | Decl::Cochain { name, .. }
            | Decl::Tensor { name, .. }
            | Decl::NSLie { name, .. } => Some(name),
            Decl::Directive(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Item {
    pub decl: Decl,
    pub span: Span,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.decl == other.decl
    }
}

impl Eq for Item {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

impl SourceFile {
    pub fn directives(&self) -> impl Iterator<Item = (&Directive, Span)> {
        self.items.iter().filter_map(|it| match &it.decl {
            Decl::Directive(d) => Some((d, it.span)),
            _ => None,
        })
    }
}
