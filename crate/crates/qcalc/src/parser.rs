//! Recursive-descent parser for quantity expressions and unit files.
//!
//! Expression grammar:
//!
//! ```text
//! expr    := ['-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/')? factor)*     juxtaposition multiplies
//! factor  := primary ('^' int)*              '^' binds tighter
//! primary := number | name | '(' expr ')'
//! ```
//!
//! A leading rational coefficient of a term becomes a scaling node, and a
//! literal-over-literal division folds into one rational, so `3/2 m s^-2`
//! parses as the scaling of `m s^-2` by 3/2.

use std::fmt;

use qspace::scalars::Rational;
use thiserror::Error;

use crate::ast::{Ast, Span, Statement};
use crate::lexer::{lex_line, Lexed, Token};

#[derive(Debug, Error, Clone, PartialEq)]
pub struct ParseError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(span: Span, expected: Vec<&str>, found: &str) -> Self {
        ParseError {
            span,
            expected: expected.into_iter().map(String::from).collect(),
            found: found.to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.span.line,
            self.span.col,
            self.expected.join(" or "),
            self.found
        )
    }
}

struct Parser {
    tokens: Vec<Lexed>,
    pos: usize,
    line: usize,
    line_len: usize,
}

impl Parser {
    fn new(tokens: Vec<Lexed>, line: usize, line_len: usize) -> Self {
        Parser {
            tokens,
            pos: 0,
            line,
            line_len,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|l| &l.token)
    }

    fn span(&self) -> Span {
        self.tokens.get(self.pos).map_or(
            Span {
                line: self.line,
                col: self.line_len + 1,
            },
            |l| l.span,
        )
    }

    fn next(&mut self) -> Option<Lexed> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&str>) -> ParseError {
        let found = self
            .peek()
            .map_or("end of line".to_string(), |t| t.to_string());
        ParseError::new(self.span(), expected, &found)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error(vec!["end of line"]))
        }
    }

    fn parse_expr(&mut self) -> Result<Ast, ParseError> {
        let negated = if matches!(self.peek(), Some(Token::Minus)) {
            let span = self.span();
            self.pos += 1;
            Some(span)
        } else {
            None
        };
        let mut acc = self.parse_term()?;
        if let Some(span) = negated {
            acc = match acc {
                Ast::NumberLit(q, s) => Ast::NumberLit(-&q, s),
                Ast::Scale(q, inner, s) => Ast::Scale(-&q, inner, s),
                other => Ast::Scale(Rational::from_integer(-1), Box::new(other), span),
            };
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    let span = self.span();
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Ast::Add(Box::new(acc), Box::new(rhs), span);
                }
                Some(Token::Minus) => {
                    let span = self.span();
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Ast::Sub(Box::new(acc), Box::new(rhs), span);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    let span = self.span();
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    acc = multiply(acc, rhs, span);
                }
                Some(Token::Slash) => {
                    let span = self.span();
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    acc = divide(acc, rhs, span);
                }
                // Juxtaposition: a factor may start right away.
                Some(Token::Number(_)) | Some(Token::Name(_)) | Some(Token::LParen) => {
                    let span = self.span();
                    let rhs = self.parse_factor()?;
                    acc = multiply(acc, rhs, span);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.parse_primary()?;
        while matches!(self.peek(), Some(Token::Caret)) {
            let span = self.span();
            self.pos += 1;
            let exponent = self.parse_int_literal()?;
            acc = Ast::Pow(Box::new(acc), exponent, span);
        }
        Ok(acc)
    }

    fn parse_int_literal(&mut self) -> Result<i64, ParseError> {
        let negative = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let span = self.span();
        match self.next() {
            Some(Lexed {
                token: Token::Number(n),
                ..
            }) => {
                use qspace::num_bigint::BigInt;
                if n.denominator() != &BigInt::from(1) {
                    return Err(ParseError::new(
                        span,
                        vec!["an integer exponent"],
                        &n.to_string(),
                    ));
                }
                let value: i64 = n.numerator().try_into().map_err(|_| {
                    ParseError::new(
                        span,
                        vec!["an exponent that fits in 64 bits"],
                        &n.to_string(),
                    )
                })?;
                Ok(if negative { -value } else { value })
            }
            other => Err(ParseError::new(
                span,
                vec!["an integer exponent"],
                &other.map_or("end of line".to_string(), |l| l.token.to_string()),
            )),
        }
    }

    fn parse_primary(&mut self) -> Result<Ast, ParseError> {
        let span = self.span();
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(Ast::NumberLit(n, span))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                Ok(Ast::Name(name, span))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                match self.next() {
                    Some(Lexed {
                        token: Token::RParen,
                        ..
                    }) => Ok(Ast::Paren(Box::new(inner), span)),
                    _ => Err(self.error_at_prev(vec!["')'"])),
                }
            }
            _ => Err(self.error(vec!["a number", "a name", "'('"])),
        }
    }

    fn error_at_prev(&self, expected: Vec<&str>) -> ParseError {
        let found = self
            .tokens
            .get(self.pos.saturating_sub(1))
            .map_or("end of line".to_string(), |l| l.token.to_string());
        ParseError::new(self.span(), expected, &found)
    }

    fn parse_name(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        let span = self.span();
        match self.next() {
            Some(Lexed {
                token: Token::Name(name),
                ..
            }) => Ok((name, span)),
            other => Err(ParseError::new(
                span,
                vec![what],
                &other.map_or("end of line".to_string(), |l| l.token.to_string()),
            )),
        }
    }

    fn expect(&mut self, token: &Token, label: &str) -> Result<(), ParseError> {
        if self.peek() == Some(token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(vec![label]))
        }
    }
}

/// Folds a multiplication, lifting a leading rational into a scaling node.
fn multiply(lhs: Ast, rhs: Ast, span: Span) -> Ast {
    match lhs {
        Ast::NumberLit(q, s) => Ast::Scale(q, Box::new(rhs), s),
        Ast::Scale(q, inner, s) => Ast::Scale(q, Box::new(Ast::Mul(inner, Box::new(rhs), span)), s),
        other => Ast::Mul(Box::new(other), Box::new(rhs), span),
    }
}

/// Folds a division; literal-over-literal with a non-zero divisor becomes
/// one rational so fractions read as coefficients.
fn divide(lhs: Ast, rhs: Ast, span: Span) -> Ast {
    match (lhs, rhs) {
        (Ast::NumberLit(a, s), Ast::NumberLit(b, _)) if !b.is_zero() => {
            Ast::NumberLit(a.checked_div(&b).expect("non-zero divisor"), s)
        }
        (Ast::Scale(q, inner, s), rhs) => {
            Ast::Scale(q, Box::new(Ast::Div(inner, Box::new(rhs), span)), s)
        }
        (lhs, rhs) => Ast::Div(Box::new(lhs), Box::new(rhs), span),
    }
}

/// Parses a standalone expression (one line).
pub fn parse_expression(text: &str) -> Result<Ast, ParseError> {
    let tokens = lex_line(text, 1)?;
    let mut p = Parser::new(tokens, 1, text.len());
    let ast = p.parse_expr()?;
    p.expect_end()?;
    Ok(ast)
}

/// Parses a unit file: one statement per line, `#` comments, blank lines
/// ignored. The basis declaration must come first and appear exactly once.
pub fn parse_file(text: &str) -> Result<Vec<Statement>, ParseError> {
    let mut statements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = lex_line(raw, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let mut p = Parser::new(tokens, line_no, raw.len());
        let (keyword, span) = p.parse_name("a statement keyword")?;
        let statement = match keyword.as_str() {
            "basis" => {
                let mut names = Vec::new();
                while p.peek().is_some() {
                    names.push(p.parse_name("a basis symbol")?.0);
                }
                Statement::Basis { names, span }
            }
            "unit" => {
                let (name, _) = p.parse_name("a unit name")?;
                p.expect(&Token::Assign, "'='")?;
                let expr = p.parse_expr()?;
                p.expect_end()?;
                Statement::Unit { name, expr, span }
            }
            "let" => {
                let (name, _) = p.parse_name("a binding name")?;
                p.expect(&Token::Assign, "'='")?;
                let expr = p.parse_expr()?;
                p.expect_end()?;
                Statement::Let { name, expr, span }
            }
            "check" => {
                let expr = p.parse_expr()?;
                p.expect_end()?;
                Statement::Check { expr, span }
            }
            "assert" => {
                let left = p.parse_expr()?;
                p.expect(&Token::EqEq, "'=='")?;
                let right = p.parse_expr()?;
                p.expect_end()?;
                Statement::Assert { left, right, span }
            }
            "convert" => {
                let expr = p.parse_expr()?;
                p.expect(&Token::Arrow, "'->'")?;
                let target = p.parse_expr()?;
                p.expect_end()?;
                Statement::Convert { expr, target, span }
            }
            other => {
                return Err(ParseError::new(
                    span,
                    vec!["basis", "unit", "let", "check", "assert", "convert"],
                    &format!("{other:?}"),
                ))
            }
        };
        statements.push(statement);
    }
    match statements.first() {
        Some(Statement::Basis { .. }) => {}
        Some(other) => {
            let span = match other {
                Statement::Unit { span, .. }
                | Statement::Let { span, .. }
                | Statement::Check { span, .. }
                | Statement::Assert { span, .. }
                | Statement::Convert { span, .. }
                | Statement::Basis { span, .. } => *span,
            };
            return Err(ParseError::new(
                span,
                vec!["a basis declaration before any other statement"],
                "another statement",
            ));
        }
        None => {
            return Err(ParseError::new(
                Span { line: 1, col: 1 },
                vec!["a basis declaration"],
                "an empty file",
            ))
        }
    }
    if statements
        .iter()
        .skip(1)
        .any(|s| matches!(s, Statement::Basis { .. }))
    {
        let span = statements
            .iter()
            .skip(1)
            .find_map(|s| match s {
                Statement::Basis { span, .. } => Some(*span),
                _ => None,
            })
            .unwrap();
        return Err(ParseError::new(
            span,
            vec!["no second basis declaration"],
            "basis",
        ));
    }
    Ok(statements)
}
