use std::fmt::{self, Write};

use super::ast::*;

fn write_monomial(out: &mut String, m: &[Power]) {
    for (i, p) in m.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        let _ = write!(out, "x{}", p.var);
        if let Some(e) = &p.exponent {
            let _ = write!(out, "^{}", e);
        }
    }
}

fn write_factors(out: &mut String, fs: &[Factor]) {
    for (i, f) in fs.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        match f {
            Factor::Unit(q, _) => {
                let _ = write!(out, "u({})", q);
            }
            Factor::Named(id, None) => out.push_str(&id.name),
            Factor::Named(id, Some(q)) => {
                let _ = write!(out, "{}^{}", id.name, q);
            }
        }
    }
}

pub fn write_eq(out: &mut String, row: &EqLine) {
    out.push_str("eq ");
    write_monomial(out, &row.monomial);
    out.push_str(" = ");
    write_factors(out, &row.value);
}

pub fn write_point(out: &mut String, p: &PointExpr) {
    if p.terms.is_empty() {
        out.push('0');
        return;
    }
    for (i, t) in p.terms.iter().enumerate() {
        match (i, t.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if let Some(q) = &t.coef {
            let _ = write!(out, "{}*", q);
        }
        out.push_str(&t.atom.name);
    }
}

pub fn write_tuple(out: &mut String, items: &[PointExpr]) {
    out.push('(');
    for (i, p) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_point(out, p);
    }
    out.push(')');
}

fn write_linear_rows(out: &mut String, rows: &[LinearRow], indent: Option<&str>) {
    out.push('{');
    for row in rows {
        match indent {
            Some(pad) => {
                out.push('\n');
                out.push_str(pad);
            }
            None => out.push(' '),
        }
        for q in &row.coeffs {
            let _ = write!(out, "{} ", q);
        }
        out.push_str("= ");
        write_point(out, &row.rhs);
        out.push(';');
    }
    match indent {
        Some(_) if !rows.is_empty() => out.push('\n'),
        _ => out.push(' '),
    }
    out.push('}');
}

pub fn write_decl(out: &mut String, d: &Decl) {
    match d {
        Decl::Const(name) => {
            let _ = write!(out, "const {}", name.name);
        }
        Decl::Torus { name, arity, rows } => {
            let _ = write!(out, "torus {} n={}", name.name, arity);
            for row in rows {
                out.push_str("\n  ");
                write_eq(out, row);
            }
        }
        Decl::Point { name, expr } => {
            let _ = write!(out, "point {} = ", name.name);
            write_point(out, expr);
        }
        Decl::Tuple { name, items } => {
            let _ = write!(out, "tuple {} = ", name.name);
            write_tuple(out, items);
        }
        Decl::Linear { name, arity, rows } => {
            let _ = write!(out, "linear {} n={} ", name.name, arity);
            write_linear_rows(out, rows, Some("  "));
        }
        Decl::Cell { name, scale, arity, linear, torus } => {
            let _ = write!(out, "cell {} m={}", name.name, scale);
            if let Some(n) = arity {
                let _ = write!(out, " n={}", n);
            }
            match linear {
                Some(LinearRef::Named(id)) => {
                    let _ = write!(out, " linear {}", id.name);
                }
                Some(LinearRef::Inline(rows, _)) => {
                    out.push_str(" linear ");
                    write_linear_rows(out, rows, None);
                }
                None => {}
            }
            match torus {
                Some(TorusRef::Named(id)) => {
                    let _ = write!(out, " torus {}", id.name);
                }
                Some(TorusRef::Inline(rows, _)) => {
                    out.push_str(" torus {");
                    for row in rows {
                        out.push(' ');
                        write_eq(out, row);
                    }
                    out.push_str(" }");
                }
                None => {}
            }
        }
        Decl::Param { name, value } => {
            let _ = write!(out, "param {} = {}", name.name, value);
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for d in &self.decls {
            write_decl(&mut out, d);
            out.push('\n');
        }
        f.write_str(&out)
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_decl(&mut out, self);
        f.write_str(&out)
    }
}

impl fmt::Display for PointExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_point(&mut out, self);
        f.write_str(&out)
    }
}

