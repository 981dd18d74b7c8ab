use num_bigint::BigInt;

use covertorus_core::lattice::Rat;

/// Byte range in the source text. Spans never take part in equality, so
/// two trees compare equal when they say the same thing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl std::hash::Hash for Span {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident { name: name.into(), span: Span::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ast {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Const(Ident),
    Torus { name: Ident, arity: usize, rows: Vec<EqLine> },
    Point { name: Ident, expr: PointExpr },
    Tuple { name: Ident, items: Vec<PointExpr> },
    Linear { name: Ident, arity: usize, rows: Vec<LinearRow> },
    Cell { name: Ident, scale: BigInt, arity: Option<usize>, linear: Option<LinearRef>, torus: Option<TorusRef> },
    Param { name: Ident, value: BigInt },
}

impl Decl {
    pub fn name(&self) -> &Ident {
        match self {
            Decl::Const(name) => name,
            Decl::Torus { name, .. }
            | Decl::Point { name, .. }
            | Decl::Tuple { name, .. }
            | Decl::Linear { name, .. }
            | Decl::Cell { name, .. }
            | Decl::Param { name, .. } => name,
        }
    }
}

/// `x_i ^ e` inside a monomial. `exponent` is `None` when the caret was
/// omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Power {
    pub var: usize,
    pub exponent: Option<BigInt>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqLine {
    pub monomial: Vec<Power>,
    pub value: Vec<Factor>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `u(q)`, the root of unity `exp(q κ)`.
    Unit(Rat, Span),
    Named(Ident, Option<Rat>),
}

/// A signed sum of terms. An empty sum is written `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointExpr {
    pub terms: Vec<PointTerm>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTerm {
    pub negative: bool,
    pub coef: Option<Rat>,
    pub atom: Ident,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRow {
    pub coeffs: Vec<Rat>,
    pub rhs: PointExpr,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearRef {
    Named(Ident),
    Inline(Vec<LinearRow>, Span),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusRef {
    Named(Ident),
    Inline(Vec<EqLine>, Span),
}
