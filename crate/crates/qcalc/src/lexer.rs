//! Line-oriented lexer for unit files and quantity expressions.

use std::fmt;

use qspace::scalars::Rational;

use crate::ast::Span;
use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Number(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    /// `=` in a definition.
    Assign,
    /// `==` in an assertion.
    EqEq,
    /// `->` in a conversion.
    Arrow,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "number {n}"),
            Token::Name(n) => write!(f, "name {n:?}"),
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Slash => write!(f, "'/'"),
            Token::Caret => write!(f, "'^'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::Assign => write!(f, "'='"),
            Token::EqEq => write!(f, "'=='"),
            Token::Arrow => write!(f, "'->'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lexed {
    pub token: Token,
    pub span: Span,
}

/// Tokenizes one line; `#` starts a comment running to the end of the line.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Lexed>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        let span = Span { line, col };
        match bytes[i] {
            b'#' => break,
            b if b.is_ascii_whitespace() => {
                i += 1;
            }
            b'+' => {
                out.push(Lexed {
                    token: Token::Plus,
                    span,
                });
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push(Lexed {
                        token: Token::Arrow,
                        span,
                    });
                    i += 2;
                } else {
                    out.push(Lexed {
                        token: Token::Minus,
                        span,
                    });
                    i += 1;
                }
            }
            b'*' => {
                out.push(Lexed {
                    token: Token::Star,
                    span,
                });
                i += 1;
            }
            b'/' => {
                out.push(Lexed {
                    token: Token::Slash,
                    span,
                });
                i += 1;
            }
            b'^' => {
                out.push(Lexed {
                    token: Token::Caret,
                    span,
                });
                i += 1;
            }
            b'(' => {
                out.push(Lexed {
                    token: Token::LParen,
                    span,
                });
                i += 1;
            }
            b')' => {
                out.push(Lexed {
                    token: Token::RParen,
                    span,
                });
                i += 1;
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push(Lexed {
                        token: Token::EqEq,
                        span,
                    });
                    i += 2;
                } else {
                    out.push(Lexed {
                        token: Token::Assign,
                        span,
                    });
                    i += 1;
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::new(
                            span,
                            vec!["digits after the decimal point"],
                            "end of number",
                        ));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let literal = &text[start..i];
                let value: Rational = literal
                    .parse()
                    .map_err(|_| ParseError::new(span, vec!["a number"], literal))?;
                out.push(Lexed {
                    token: Token::Number(value),
                    span,
                });
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Lexed {
                    token: Token::Name(text[start..i].to_string()),
                    span,
                });
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    span,
                    vec!["a number", "a name", "an operator"],
                    &format!("{ch:?}"),
                ));
            }
        }
    }
    Ok(out)
}
