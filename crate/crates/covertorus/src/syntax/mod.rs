//! The input language: declarations of constants, tori, points, tuples,
//! linear sets and cells.

pub mod ast;
mod lexer;
mod parser;
mod printer;

use std::fmt;

pub use ast::*;
pub use parser::{parse, parse_tuple};
pub use printer::{write_point, write_tuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, span: Span) -> Self {
        Diagnostic { severity: Severity::Error, message: message.into(), span }
    }

    /// `file:line:col: error: message`, then the offending line with the
    /// span underlined.
    pub fn render(&self, src: &str, file: &str) -> String {
        let (line, col) = line_col(src, self.span.start);
        let text = src.lines().nth(line - 1).unwrap_or("");
        let width = self.span.end.saturating_sub(self.span.start).max(1).min(text.len().saturating_sub(col - 1).max(1));
        format!(
            "{}:{}:{}: {}: {}\n  {}\n  {}{}\n",
            file,
            line,
            col,
            self.severity,
            self.message,
            text,
            " ".repeat(col - 1),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// 1-based line and column of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_declaration() {
        let ast = parse("torus T n=2  eq x1^2*x2^3 = u(1/2)").unwrap();
        let Decl::Torus { name, arity, rows } = &ast.decls[0] else { panic!() };
        assert_eq!((name.name.as_str(), *arity, rows.len()), ("T", 2, 1));
        assert_eq!(rows[0].monomial.len(), 2);
        assert_eq!(ast.to_string(), "torus T n=2\n  eq x1^2*x2^3 = u(1/2)\n");
    }

    #[test]
    fn dangling_caret() {
        let src = "torus T n=1\neq x1^ = u(1)";
        let d = parse(src).unwrap_err();
        assert_eq!(&src[d.span.start..d.span.end], "^");
        assert!(d.render(src, "in").starts_with("in:2:6: error: dangling"));
    }

    #[test]
    fn point_terms() {
        let ast = parse("point a = -1/2*k + e1 - 3*c").unwrap();
        assert_eq!(ast.to_string(), "point a = -1/2*k + e1 - 3*c\n");
        assert!(parse("point a = 1/2 k").is_err());
        assert!(parse("point a = 1/0*k").is_err());
        assert_eq!(parse("point z = 0").unwrap().to_string(), "point z = 0\n");
    }

    #[test]
    fn tuple_literals() {
        assert_eq!(parse_tuple("(e1, e2)").unwrap().len(), 2);
        assert_eq!(parse_tuple("e1, 0, k").unwrap().len(), 3);
        assert_eq!(parse_tuple("()").unwrap().len(), 0);
        assert!(parse_tuple("(e1,").is_err());
    }

    #[test]
    fn spans_are_ignored_by_equality() {
        let a = parse("point a = e1").unwrap();
        let b = parse("point   a =    e1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cells_print_inline() {
        let src = "cell S m=2 n=1 linear { 1 = e1; } torus { eq x1 = u(0) }\n";
        let ast = parse(src).unwrap();
        assert_eq!(ast.to_string(), src);
        assert_eq!(parse(&ast.to_string()).unwrap(), ast);
    }
}
