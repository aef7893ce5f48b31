//! Syntax trees for the quantity-expression language and the statements of
//! a unit file.

use qspace::scalars::Rational;

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    NumberLit(Rational, Span),
    Name(String, Span),
    /// A rational coefficient applied to a sub-expression.
    Scale(Rational, Box<Ast>, Span),
    Mul(Box<Ast>, Box<Ast>, Span),
    Div(Box<Ast>, Box<Ast>, Span),
    /// Integer power; the exponent is a literal, possibly negative.
    Pow(Box<Ast>, i64, Span),
    Add(Box<Ast>, Box<Ast>, Span),
    Sub(Box<Ast>, Box<Ast>, Span),
    Paren(Box<Ast>, Span),
}

impl Ast {
    pub fn span(&self) -> Span {
        match self {
            Ast::NumberLit(_, s)
            | Ast::Name(_, s)
            | Ast::Scale(_, _, s)
            | Ast::Mul(_, _, s)
            | Ast::Div(_, _, s)
            | Ast::Pow(_, _, s)
            | Ast::Add(_, _, s)
            | Ast::Sub(_, _, s)
            | Ast::Paren(_, s) => *s,
        }
    }
}

/// One line of a unit file.
#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Basis { names: Vec<String>, span: Span },
    Unit { name: String, expr: Ast, span: Span },
    Let { name: String, expr: Ast, span: Span },
    Check { expr: Ast, span: Span },
    Assert { left: Ast, right: Ast, span: Span },
    Convert { expr: Ast, target: Ast, span: Span },
}
