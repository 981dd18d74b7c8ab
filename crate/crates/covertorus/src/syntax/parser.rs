use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use covertorus_core::lattice::Rat;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::Diagnostic;

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const KEYWORDS: [&str; 7] = ["const", "torus", "point", "tuple", "linear", "cell", "param"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        &self.toks[(self.pos + ahead).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        Diagnostic::error(format!("expected {}, found {}", wanted, self.peek().describe()), self.span())
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek() == &tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        if self.at_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{}`", kw)))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn int(&mut self) -> PResult<(BigInt, Span)> {
        let start = self.span();
        let negative = self.eat(&Tok::Minus);
        match self.peek().clone() {
            Tok::Int(n) => {
                let end = self.bump().span;
                Ok((if negative { -n } else { n }, start.to(end)))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn small(&mut self, what: &str) -> PResult<usize> {
        let (n, span) = self.int()?;
        n.to_usize().ok_or_else(|| Diagnostic::error(format!("{} must be a small non-negative integer", what), span))
    }

    /// `-? int ("/" int)?`
    fn rat(&mut self) -> PResult<(Rat, Span)> {
        let (num, span) = self.int()?;
        if !self.eat(&Tok::Slash) {
            return Ok((Rat::from_integer(num), span));
        }
        let (den, dspan) = self.int()?;
        if den.is_zero() {
            return Err(Diagnostic::error("zero denominator", dspan));
        }
        if den.is_negative() {
            return Err(Diagnostic::error("denominator must be positive", dspan));
        }
        Ok((Rat::new(num, den), span.to(dspan)))
    }

    /// `key=<int>`, the `=` glued to the key.
    fn setting(&mut self, key: &str) -> PResult<usize> {
        self.keyword(key)?;
        self.expect(Tok::Equals)?;
        self.small(key)
    }

    fn file(&mut self) -> PResult<Ast> {
        let mut decls = Vec::new();
        while self.peek() != &Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(Ast { decls })
    }

    fn decl(&mut self) -> PResult<Decl> {
        let kw = match self.peek() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected("a declaration")),
        };
        self.bump();
        match kw.as_str() {
            "const" => Ok(Decl::Const(self.ident("a constant name")?)),
            "torus" => {
                let name = self.ident("a torus name")?;
                let arity = self.setting("n")?;
                let rows = self.eq_lines()?;
                Ok(Decl::Torus { name, arity, rows })
            }
            "point" => {
                let name = self.ident("a point name")?;
                self.expect(Tok::Equals)?;
                Ok(Decl::Point { name, expr: self.point_expr()? })
            }
            "tuple" => {
                let name = self.ident("a tuple name")?;
                self.expect(Tok::Equals)?;
                Ok(Decl::Tuple { name, items: self.tuple_body()? })
            }
            "linear" => {
                let name = self.ident("a linear set name")?;
                let arity = self.setting("n")?;
                let (rows, _) = self.linear_block()?;
                Ok(Decl::Linear { name, arity, rows })
            }
            "cell" => self.cell(),
            "param" => {
                let name = self.ident("a parameter name")?;
                self.expect(Tok::Equals)?;
                Ok(Decl::Param { name, value: self.int()?.0 })
            }
            _ => unreachable!(),
        }
    }

    fn cell(&mut self) -> PResult<Decl> {
        let name = self.ident("a set name")?;
        self.keyword("m")?;
        self.expect(Tok::Equals)?;
        let (scale, span) = self.int()?;
        if !scale.is_positive() {
            return Err(Diagnostic::error("cell scale must be positive", span));
        }
        let arity = if self.at_keyword("n") && self.peek_at(1) == &Tok::Equals { Some(self.setting("n")?) } else { None };
        let mut linear = None;
        if self.at_keyword("linear") {
            self.bump();
            linear = Some(if self.peek() == &Tok::LBrace {
                let (rows, span) = self.linear_block()?;
                LinearRef::Inline(rows, span)
            } else {
                LinearRef::Named(self.ident("a linear set name or `{`")?)
            });
        }
        let mut torus = None;
        if self.at_keyword("torus") {
            self.bump();
            torus = Some(if self.peek() == &Tok::LBrace {
                let open = self.bump().span;
                let rows = self.eq_lines()?;
                let close = self.expect(Tok::RBrace)?;
                TorusRef::Inline(rows, open.to(close))
            } else {
                TorusRef::Named(self.ident("a torus name or `{`")?)
            });
        }
        Ok(Decl::Cell { name, scale, arity, linear, torus })
    }

    fn eq_lines(&mut self) -> PResult<Vec<EqLine>> {
        let mut rows = Vec::new();
        while self.at_keyword("eq") {
            let start = self.bump().span;
            let monomial = self.monomial()?;
            self.expect(Tok::Equals)?;
            let value = self.const_expr()?;
            rows.push(EqLine { monomial, value, span: start.to(self.prev_span()) });
        }
        Ok(rows)
    }

    fn monomial(&mut self) -> PResult<Vec<Power>> {
        let mut out = vec![self.power()?];
        while self.eat(&Tok::Star) {
            out.push(self.power()?);
        }
        Ok(out)
    }

    fn power(&mut self) -> PResult<Power> {
        let id = self.ident("a variable `x<i>`")?;
        let var = id
            .name
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1 && !id.name[1..].starts_with('0'))
            .ok_or_else(|| Diagnostic::error(format!("`{}` is not a variable `x<i>`", id.name), id.span))?;
        if self.peek() != &Tok::Caret {
            return Ok(Power { var, exponent: None, span: id.span });
        }
        let caret = self.bump().span;
        match (self.peek(), self.peek_at(1)) {
            (Tok::Int(_), _) | (Tok::Minus, Tok::Int(_)) => {
                let (e, span) = self.int()?;
                Ok(Power { var, exponent: Some(e), span: id.span.to(span) })
            }
            _ => Err(Diagnostic::error("dangling `^`: expected an integer exponent", caret)),
        }
    }

    fn const_expr(&mut self) -> PResult<Vec<Factor>> {
        let mut out = vec![self.factor()?];
        while self.eat(&Tok::Star) {
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> PResult<Factor> {
        let id = self.ident("`u(<rat>)` or a name")?;
        if id.name == "u" && self.peek() == &Tok::LParen {
            self.bump();
            let (q, _) = self.rat()?;
            let close = self.expect(Tok::RParen)?;
            return Ok(Factor::Unit(q, id.span.to(close)));
        }
        if self.peek() != &Tok::Caret {
            return Ok(Factor::Named(id, None));
        }
        let caret = self.bump().span;
        match (self.peek(), self.peek_at(1)) {
            (Tok::Int(_), _) | (Tok::Minus, Tok::Int(_)) => Ok(Factor::Named(id, Some(self.rat()?.0))),
            _ => Err(Diagnostic::error("dangling `^`: expected a rational exponent", caret)),
        }
    }

    /// `pterm (("+" | "-") pterm)*` with an optional leading sign, or `0`.
    fn point_expr(&mut self) -> PResult<PointExpr> {
        let start = self.span();
        if self.peek() == &Tok::Int(BigInt::zero()) && !matches!(self.peek_at(1), Tok::Slash | Tok::Star) {
            self.bump();
            return Ok(PointExpr { terms: Vec::new(), span: start });
        }
        let mut terms = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            terms.push(self.point_term(negative)?);
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(PointExpr { terms, span: start.to(self.prev_span()) })
    }

    fn point_term(&mut self, negative: bool) -> PResult<PointTerm> {
        let coef = if matches!(self.peek(), Tok::Int(_)) {
            let (q, span) = self.rat()?;
            if !self.eat(&Tok::Star) {
                return Err(Diagnostic::error("a coefficient must be followed by `*`", span));
            }
            if q.is_negative() {
                return Err(Diagnostic::error("use `-` between terms for negative coefficients", span));
            }
            Some(q)
        } else {
            None
        };
        let atom = self.ident("`k`, `e<i>` or a name")?;
        Ok(PointTerm { negative, coef, atom })
    }

    fn tuple_body(&mut self) -> PResult<Vec<PointExpr>> {
        self.expect(Tok::LParen)?;
        let mut items = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(items);
        }
        loop {
            items.push(self.point_expr()?);
            if self.eat(&Tok::RParen) {
                return Ok(items);
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.unexpected("`,` or `)`"));
            }
        }
    }

    fn linear_block(&mut self) -> PResult<(Vec<LinearRow>, Span)> {
        let open = self.expect(Tok::LBrace)?;
        let mut rows = Vec::new();
        loop {
            if self.peek() == &Tok::RBrace {
                let close = self.bump().span;
                return Ok((rows, open.to(close)));
            }
            let start = self.span();
            let mut coeffs = Vec::new();
            while self.peek() != &Tok::Equals {
                if !matches!(self.peek(), Tok::Int(_) | Tok::Minus) {
                    return Err(self.unexpected("a rational coefficient or `=`"));
                }
                coeffs.push(self.rat()?.0);
            }
            self.bump();
            let rhs = self.point_expr()?;
            rows.push(LinearRow { coeffs, rhs, span: start.to(self.prev_span()) });
            if !self.eat(&Tok::Semi) && self.peek() != &Tok::RBrace {
                return Err(self.unexpected("`;` or `}`"));
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Ast, Diagnostic> {
    let toks = lex(src)?;
    Parser { toks, pos: 0 }.file()
}

/// A tuple literal such as `(e1, 1/2*k)`; the parentheses may be omitted.
pub fn parse_tuple(src: &str) -> Result<Vec<PointExpr>, Diagnostic> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let items = if p.peek() == &Tok::LParen {
        p.tuple_body()?
    } else {
        let mut items = vec![p.point_expr()?];
        while p.eat(&Tok::Comma) {
            items.push(p.point_expr()?);
        }
        items
    };
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of tuple"));
    }
    Ok(items)
}
