//! Resolution of parsed declarations into domain objects, and the reverse
//! rendering used for every printed result.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use covertorus_core::cover::{exp_point, Basis, BasisRegistry, CoverPoint, FieldPoint};
use covertorus_core::lattice::Rat;
use covertorus_core::linear::LinearSet;
use covertorus_core::pqf::{Cell, PqfSet};
use covertorus_core::torus::{TorusPresentation, TorusRow};

use crate::syntax::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Torus(TorusPresentation),
    Point(CoverPoint),
    Tuple(Vec<CoverPoint>),
    Linear(LinearSet),
    Set(PqfSet),
    Param(BigInt),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Torus(_) => "torus",
            Object::Point(_) => "point",
            Object::Tuple(_) => "tuple",
            Object::Linear(_) => "linear set",
            Object::Set(_) => "set",
            Object::Param(_) => "parameter",
        }
    }
}

/// Declared objects in declaration order, with the constant names they use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub registry: BasisRegistry,
    objects: Vec<(String, Object)>,
    index: HashMap<String, usize>,
}

fn numbered(name: &str, prefix: char) -> Option<u32> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    digits.parse().ok()
}

fn is_reserved(name: &str) -> bool {
    name == "k" || name == "u" || numbered(name, 'e').is_some() || numbered(name, 'x').is_some()
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.index.get(name).map(|&i| &self.objects[i].1)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &Object)> {
        self.objects.iter().map(|(n, o)| (n.as_str(), o))
    }

    /// Adds or replaces an object.
    pub fn insert(&mut self, name: impl Into<String>, obj: Object) {
        let name = name.into();
        match self.index.get(&name) {
            Some(&i) => self.objects[i].1 = obj,
            None => {
                self.index.insert(name.clone(), self.objects.len());
                self.objects.push((name, obj));
            }
        }
    }

    pub fn from_source(src: &str) -> Result<Env, Diagnostic> {
        let ast = parse(src)?;
        Env::resolve(&ast)
    }

    pub fn resolve(ast: &Ast) -> Result<Env, Diagnostic> {
        let mut env = Env::new();
        // Non-numbered constants come after every `g<i>` the file mentions.
        let mut next = max_numbered_constant(ast).map_or(1, |m| m + 1);
        for decl in &ast.decls {
            let name = decl.name();
            if let Decl::Const(id) = decl {
                if is_reserved(&id.name) || env.get(&id.name).is_some() {
                    return Err(Diagnostic::error(format!("`{}` cannot name a constant", id.name), id.span));
                }
                let index = numbered(&id.name, 'g').unwrap_or_else(|| {
                    next += 1;
                    next - 1
                });
                if !env.registry.declare(&id.name, index) {
                    return Err(Diagnostic::error(format!("constant `{}` declared twice", id.name), id.span));
                }
                continue;
            }
            if is_reserved(&name.name) || env.registry.lookup(&name.name).is_some() || numbered(&name.name, 'g').is_some() {
                return Err(Diagnostic::error(format!("`{}` is reserved for constants and coordinates", name.name), name.span));
            }
            let is_cell = matches!(decl, Decl::Cell { .. });
            match env.get(&name.name) {
                Some(Object::Set(_)) if is_cell => {}
                Some(_) => return Err(Diagnostic::error(format!("`{}` is already declared", name.name), name.span)),
                None => {}
            }
            let obj = env.resolve_decl(decl)?;
            match (obj, env.get(&name.name)) {
                (Object::Set(extra), Some(Object::Set(existing))) => {
                    if existing.arity() != extra.arity() {
                        return Err(Diagnostic::error("cells of one set must share an arity", name.span));
                    }
                    let cells = existing.cells().iter().chain(extra.cells()).cloned().collect();
                    let union = PqfSet::new(existing.arity(), cells).expect("arities checked");
                    env.insert(name.name.clone(), Object::Set(union));
                }
                (obj, _) => env.insert(name.name.clone(), obj),
            }
        }
        Ok(env)
    }

    fn resolve_decl(&self, decl: &Decl) -> Result<Object, Diagnostic> {
        Ok(match decl {
            Decl::Const(_) => unreachable!(),
            Decl::Torus { name, arity, rows } => Object::Torus(self.torus(*arity, rows, name.span)?),
            Decl::Point { expr, .. } => Object::Point(self.point(expr)?),
            Decl::Tuple { items, .. } => Object::Tuple(self.tuple(items)?),
            Decl::Linear { arity, rows, .. } => Object::Linear(self.linear(*arity, rows)?),
            Decl::Cell { name, scale, arity, linear, torus } => {
                let n = match (arity, linear, torus) {
                    (Some(n), _, _) => *n,
                    (None, Some(LinearRef::Named(id)), _) => self.linear_named(id)?.arity(),
                    (None, _, Some(TorusRef::Named(id))) => self.torus_named(id)?.arity(),
                    (None, Some(LinearRef::Inline(rows, _)), _) if !rows.is_empty() => rows[0].coeffs.len(),
                    _ => return Err(Diagnostic::error("cannot infer the arity of this cell; add `n=`", name.span)),
                };
                let l = match linear {
                    Some(LinearRef::Named(id)) => self.linear_named(id)?.clone(),
                    Some(LinearRef::Inline(rows, _)) => self.linear(n, rows)?,
                    None => LinearSet::full(n),
                };
                let t = match torus {
                    Some(TorusRef::Named(id)) => self.torus_named(id)?.clone(),
                    Some(TorusRef::Inline(rows, span)) => self.torus(n, rows, *span)?,
                    None => TorusPresentation::full(n),
                };
                let m = scale.to_u32().ok_or_else(|| Diagnostic::error("cell scale is too large", name.span))?;
                let cell = Cell::new(m, l, t).map_err(|e| Diagnostic::error(e.to_string(), name.span))?;
                Object::Set(PqfSet::new(n, vec![cell]).expect("single cell"))
            }
            Decl::Param { value, .. } => Object::Param(value.clone()),
        })
    }

    fn linear_named(&self, id: &Ident) -> Result<&LinearSet, Diagnostic> {
        match self.get(&id.name) {
            Some(Object::Linear(l)) => Ok(l),
            Some(o) => Err(Diagnostic::error(format!("`{}` is a {}, not a linear set", id.name, o.kind()), id.span)),
            None => Err(Diagnostic::error(format!("undeclared linear set `{}`", id.name), id.span)),
        }
    }

    fn torus_named(&self, id: &Ident) -> Result<&TorusPresentation, Diagnostic> {
        match self.get(&id.name) {
            Some(Object::Torus(t)) => Ok(t),
            Some(o) => Err(Diagnostic::error(format!("`{}` is a {}, not a torus", id.name, o.kind()), id.span)),
            None => Err(Diagnostic::error(format!("undeclared torus `{}`", id.name), id.span)),
        }
    }

    /// `k`, `e<i>`, constants and declared points.
    fn atom(&self, id: &Ident) -> Result<CoverPoint, Diagnostic> {
        if id.name == "k" {
            return Ok(CoverPoint::kappa());
        }
        if let Some(i) = numbered(&id.name, 'e') {
            return Ok(CoverPoint::generic(i));
        }
        if let Some(b) = self.registry.lookup(&id.name) {
            return Ok(CoverPoint::basis(b));
        }
        if let Some(i) = numbered(&id.name, 'g') {
            return Ok(CoverPoint::constant(i));
        }
        match self.get(&id.name) {
            Some(Object::Point(p)) => Ok(p.clone()),
            Some(o) => Err(Diagnostic::error(format!("`{}` is a {}, not a point", id.name, o.kind()), id.span)),
            None => Err(Diagnostic::error(format!("undeclared name `{}`", id.name), id.span)),
        }
    }

    pub fn point(&self, e: &PointExpr) -> Result<CoverPoint, Diagnostic> {
        let mut p = CoverPoint::zero();
        for t in &e.terms {
            let mut q = t.coef.clone().unwrap_or_else(Rat::one);
            if t.negative {
                q = -q;
            }
            p += &self.atom(&t.atom)?.scaled(&q);
        }
        Ok(p)
    }

    pub fn tuple(&self, items: &[PointExpr]) -> Result<Vec<CoverPoint>, Diagnostic> {
        items.iter().map(|e| self.point(e)).collect()
    }

    fn torus(&self, arity: usize, rows: &[EqLine], span: Span) -> Result<TorusPresentation, Diagnostic> {
        if arity == 0 {
            return Err(Diagnostic::error("a torus needs at least one coordinate", span));
        }
        let mut out = Vec::new();
        for row in rows {
            let mut z = vec![BigInt::zero(); arity];
            for p in &row.monomial {
                if p.var > arity {
                    return Err(Diagnostic::error(format!("x{} exceeds the arity {}", p.var, arity), p.span));
                }
                z[p.var - 1] += p.exponent.clone().unwrap_or_else(BigInt::one);
            }
            let mut rep = CoverPoint::zero();
            for f in &row.value {
                match f {
                    Factor::Unit(q, _) => rep += &CoverPoint::kappa_multiple(q.clone()),
                    Factor::Named(id, e) => {
                        let p = self.atom(id)?;
                        rep += &p.scaled(&e.clone().unwrap_or_else(Rat::one));
                    }
                }
            }
            out.push(TorusRow::new(z, exp_point(&rep)));
        }
        TorusPresentation::new(arity, out).map_err(|e| Diagnostic::error(e.to_string(), span))
    }

    fn linear(&self, arity: usize, rows: &[LinearRow]) -> Result<LinearSet, Diagnostic> {
        let mut cons = Vec::new();
        for row in rows {
            if row.coeffs.len() != arity {
                return Err(Diagnostic::error(
                    format!("expected {} coefficients, found {}", arity, row.coeffs.len()),
                    row.span,
                ));
            }
            cons.push((row.coeffs.clone(), self.point(&row.rhs)?));
        }
        Ok(LinearSet::new(arity, cons))
    }

    /// Declarations reproducing this environment, constants first.
    pub fn to_ast(&self) -> Ast {
        let r = Renderer::new(&self.registry);
        let mut decls = r.const_decls();
        for (name, obj) in &self.objects {
            decls.extend(r.object(name, obj));
        }
        Ast { decls }
    }
}

fn max_numbered_constant(ast: &Ast) -> Option<u32> {
    let text = ast.to_string();
    let mut best = None;
    for word in text.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\'')) {
        if let Some(i) = numbered(word, 'g') {
            best = best.max(Some(i));
        }
    }
    best
}

/// Builds syntax trees for domain objects, naming constants through a
/// registry.
pub struct Renderer<'a> {
    registry: &'a BasisRegistry,
}

impl<'a> Renderer<'a> {
    pub fn new(registry: &'a BasisRegistry) -> Self {
        Renderer { registry }
    }

    pub fn const_decls(&self) -> Vec<Decl> {
        let mut out = Vec::new();
        let mut i = 0;
        while let Some(max) = self.registry.max_index() {
            if i > max {
                break;
            }
            let name = self.registry.name_of(i);
            if self.registry.lookup(&name).is_some() && numbered(&name, 'g').is_none() {
                out.push(Decl::Const(Ident::new(name)));
            }
            i += 1;
        }
        out
    }

    fn atom_name(&self, b: Basis) -> String {
        match b {
            Basis::Kappa => "k".into(),
            Basis::Generic(i) => format!("e{}", i),
            Basis::Constant(i) => self.registry.name_of(i),
        }
    }

    pub fn point(&self, p: &CoverPoint) -> PointExpr {
        let terms = p
            .terms()
            .map(|(b, q)| PointTerm {
                negative: q.is_negative(),
                coef: (!q.abs().is_one()).then(|| q.abs()),
                atom: Ident::new(self.atom_name(b)),
            })
            .collect();
        PointExpr { terms, span: Span::default() }
    }

    pub fn tuple(&self, v: &[CoverPoint]) -> Vec<PointExpr> {
        v.iter().map(|p| self.point(p)).collect()
    }

    pub fn factors(&self, c: &FieldPoint) -> Vec<Factor> {
        let rep = c.rep();
        let mut out = Vec::new();
        let kappa = rep.kappa_coeff();
        if !kappa.is_zero() || rep.is_zero() {
            out.push(Factor::Unit(kappa, Span::default()));
        }
        for (b, q) in rep.terms().filter(|(b, _)| *b != Basis::Kappa) {
            let exp = (!q.is_one()).then(|| q.clone());
            out.push(Factor::Named(Ident::new(self.atom_name(b)), exp));
        }
        out
    }

    pub fn eq_line(&self, row: &TorusRow) -> EqLine {
        let mut monomial: Vec<Power> = row
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(|(i, z)| Power { var: i + 1, exponent: (!z.is_one()).then(|| z.clone()), span: Span::default() })
            .collect();
        if monomial.is_empty() {
            monomial.push(Power { var: 1, exponent: Some(BigInt::zero()), span: Span::default() });
        }
        EqLine { monomial, value: self.factors(&row.value), span: Span::default() }
    }

    pub fn torus(&self, name: &str, t: &TorusPresentation) -> Decl {
        Decl::Torus { name: Ident::new(name), arity: t.arity(), rows: t.rows().iter().map(|r| self.eq_line(r)).collect() }
    }

    fn linear_rows(&self, l: &LinearSet) -> Vec<LinearRow> {
        if l.is_empty() {
            let coeffs = vec![Rat::zero(); l.arity()];
            return vec![LinearRow { coeffs, rhs: self.point(&CoverPoint::kappa()), span: Span::default() }];
        }
        l.constraints()
            .map(|(q, b)| LinearRow { coeffs: q.to_vec(), rhs: self.point(b), span: Span::default() })
            .collect()
    }

    pub fn linear(&self, name: &str, l: &LinearSet) -> Decl {
        Decl::Linear { name: Ident::new(name), arity: l.arity(), rows: self.linear_rows(l) }
    }

    pub fn set(&self, name: &str, s: &PqfSet) -> Vec<Decl> {
        s.cells()
            .iter()
            .map(|c| Decl::Cell {
                name: Ident::new(name),
                scale: BigInt::from(c.scale),
                arity: Some(c.arity()),
                linear: Some(LinearRef::Inline(self.linear_rows(&c.linear), Span::default())),
                torus: Some(TorusRef::Inline(c.torus.rows().iter().map(|r| self.eq_line(r)).collect(), Span::default())),
            })
            .collect()
    }

    pub fn object(&self, name: &str, obj: &Object) -> Vec<Decl> {
        let id = Ident::new(name);
        match obj {
            Object::Torus(t) => vec![self.torus(name, t)],
            Object::Point(p) => vec![Decl::Point { name: id, expr: self.point(p) }],
            Object::Tuple(v) => vec![Decl::Tuple { name: id, items: self.tuple(v) }],
            Object::Linear(l) => vec![self.linear(name, l)],
            Object::Set(s) => self.set(name, s),
            Object::Param(v) => vec![Decl::Param { name: id, value: v.clone() }],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn torus_example() {
        let env = Env::from_source("torus T n=2  eq x1^2*x2^3 = u(1/2)").unwrap();
        let Some(Object::Torus(t)) = env.get("T") else { panic!() };
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.rows()[0].exponents, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(t.rows()[0].value, FieldPoint::unit_root(q(1, 2)));
    }

    #[test]
    fn point_example() {
        let env = Env::from_source("point a = 1/2*k + e1").unwrap();
        let expect = CoverPoint::kappa_multiple(q(1, 2)) + CoverPoint::generic(1);
        assert_eq!(env.get("a"), Some(&Object::Point(expect)));
    }

    #[test]
    fn constants_follow_numbered_ones() {
        let env = Env::from_source("const c\npoint a = c + g3").unwrap();
        let expect = CoverPoint::constant(4) + CoverPoint::constant(3);
        assert_eq!(env.get("a"), Some(&Object::Point(expect)));
        let back = env.to_ast().to_string();
        assert!(back.starts_with("const c\n"), "{}", back);
        assert_eq!(Env::from_source(&back).unwrap(), env);
    }

    #[test]
    fn cells_union_by_name() {
        let src = "linear D n=2 { 1 -1 = 0; }\ncell S m=1 linear D\ncell S m=1 n=2 linear { 1 0 = k; 0 1 = 0; }";
        let env = Env::from_source(src).unwrap();
        let Some(Object::Set(s)) = env.get("S") else { panic!() };
        assert_eq!(s.cells().len(), 2);
        assert!(s.member(&[CoverPoint::kappa(), CoverPoint::zero()]).unwrap());
    }

    #[test]
    fn resolution_errors_carry_spans() {
        let src = "point a = b";
        let d = Env::from_source(src).unwrap_err();
        assert_eq!(&src[d.span.start..d.span.end], "b");
        let src = "torus T n=1 eq x2 = u(0)";
        let d = Env::from_source(src).unwrap_err();
        assert_eq!(&src[d.span.start..d.span.end], "x2");
        assert!(Env::from_source("const e1").is_err());
        assert!(Env::from_source("point a = e1\npoint a = e2").is_err());
    }

    #[test]
    fn rendering_round_trips() {
        let src = "torus T n=3\n  eq x1^-1*x3 = u(2/3)*g1^-1/2*e2\ntuple t = (0, -k + 3/2*e1)\nlinear L n=2 { 1/2 1 = e1; }\nparam m = 3\n";
        let env = Env::from_source(src).unwrap();
        let again = Env::from_source(&env.to_ast().to_string()).unwrap();
        assert_eq!(again, env);
    }
}
