//! Statement evaluation with dimensional-homogeneity enforcement.

use std::collections::BTreeMap;

use qspace::quantity::{Quantity, QuantityError, QuantitySpace};
use qspace::registry::{convert, RegistryError, UnitRegistry};
use thiserror::Error;

use crate::ast::{Ast, Span, Statement};

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{}:{}: {kind}", span.line, span.col)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: Span,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalErrorKind {
    #[error("dimension mismatch: {} vs {}", tuple(.left), tuple(.right))]
    DimensionMismatch { left: Vec<i64>, right: Vec<i64> },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("division by a zero quantity")]
    NotInvertible,
    #[error("{0}")]
    Registry(RegistryError),
    #[error("{0}")]
    Quantity(QuantityError),
}

fn tuple(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

/// The result of applying one statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Declarations produce no output.
    Silent,
    /// A successful check, assert or conversion line.
    Line(String),
    /// A failed assertion: printed, and the run exits non-zero.
    FailLine(String),
}

/// Evaluation context: a unit registry plus let-bindings, applied in
/// statement order so later statements see earlier definitions.
pub struct Session {
    registry: UnitRegistry,
    lets: BTreeMap<String, Quantity>,
}

impl Session {
    pub fn new(basis: &[String]) -> Result<Self, QuantityError> {
        let space = QuantitySpace::new(basis.iter().cloned())?;
        Ok(Session {
            registry: UnitRegistry::new(space),
            lets: BTreeMap::new(),
        })
    }

    /// A context with no basis: names resolve to nothing, numbers work.
    pub fn dimensionless() -> Self {
        Session {
            registry: UnitRegistry::new(QuantitySpace::dimensionless()),
            lets: BTreeMap::new(),
        }
    }

    pub fn registry(&self) -> &UnitRegistry {
        &self.registry
    }

    pub fn space(&self) -> &QuantitySpace {
        self.registry.space()
    }

    pub fn lookup(&self, name: &str) -> Option<Quantity> {
        self.lets
            .get(name)
            .cloned()
            .or_else(|| self.registry.resolve(name))
    }

    pub fn eval_expr(&self, ast: &Ast) -> Result<Quantity, EvalError> {
        let fail = |kind, span| Err(EvalError { kind, span });
        match ast {
            Ast::NumberLit(q, _) => Ok(self.space().one().scale(q)),
            Ast::Name(name, span) => self
                .lookup(name)
                .map_or_else(|| fail(EvalErrorKind::UnknownName(name.clone()), *span), Ok),
            Ast::Scale(q, inner, _) => Ok(self.eval_expr(inner)?.scale(q)),
            Ast::Mul(l, r, span) => {
                let (l, r) = (self.eval_expr(l)?, self.eval_expr(r)?);
                l.mul(&r).map_err(|e| EvalError {
                    kind: EvalErrorKind::Quantity(e),
                    span: *span,
                })
            }
            Ast::Div(l, r, span) => {
                let lq = self.eval_expr(l)?;
                let rq = self.eval_expr(r)?;
                if rq.is_zero() {
                    return fail(EvalErrorKind::NotInvertible, r.span());
                }
                lq.mul(&rq.inv().expect("non-zero divisor"))
                    .map_err(|e| EvalError {
                        kind: EvalErrorKind::Quantity(e),
                        span: *span,
                    })
            }
            Ast::Pow(base, k, span) => {
                let b = self.eval_expr(base)?;
                b.pow(*k).map_err(|e| {
                    let kind = match e {
                        QuantityError::NotInvertible => EvalErrorKind::NotInvertible,
                        other => EvalErrorKind::Quantity(other),
                    };
                    EvalError { kind, span: *span }
                })
            }
            Ast::Add(l, r, span) | Ast::Sub(l, r, span) => {
                let lq = self.eval_expr(l)?;
                let rq = self.eval_expr(r)?;
                if lq.dims() != rq.dims() {
                    return fail(
                        EvalErrorKind::DimensionMismatch {
                            left: lq.dims().exponents().to_vec(),
                            right: rq.dims().exponents().to_vec(),
                        },
                        *span,
                    );
                }
                let sum = if matches!(ast, Ast::Add(..)) {
                    lq.add(&rq)
                } else {
                    lq.sub(&rq)
                };
                sum.map_err(|e| EvalError {
                    kind: EvalErrorKind::Quantity(e),
                    span: *span,
                })
            }
            Ast::Paren(inner, _) => self.eval_expr(inner),
        }
    }

    /// Applies one statement, updating definitions and producing the
    /// statement's output line, if any.
    pub fn apply(&mut self, statement: &Statement) -> Result<Outcome, EvalError> {
        match statement {
            Statement::Basis { span, .. } => Err(EvalError {
                kind: EvalErrorKind::Registry(RegistryError::DuplicateName("basis".into())),
                span: *span,
            }),
            Statement::Unit { name, expr, span } => {
                let value = self.eval_expr(expr)?;
                if self.lets.contains_key(name.as_str()) {
                    return Err(EvalError {
                        kind: EvalErrorKind::Registry(RegistryError::DuplicateName(name.clone())),
                        span: *span,
                    });
                }
                self.registry = self.registry.register(name, value).map_err(|e| EvalError {
                    kind: EvalErrorKind::Registry(e),
                    span: *span,
                })?;
                Ok(Outcome::Silent)
            }
            Statement::Let { name, expr, span } => {
                let value = self.eval_expr(expr)?;
                match self.lookup(name) {
                    Some(existing) if existing == value => {}
                    Some(_) => {
                        return Err(EvalError {
                            kind: EvalErrorKind::Registry(RegistryError::DuplicateName(
                                name.clone(),
                            )),
                            span: *span,
                        })
                    }
                    None => {
                        self.lets.insert(name.clone(), value);
                    }
                }
                Ok(Outcome::Silent)
            }
            Statement::Check { expr, .. } => {
                let value = self.eval_expr(expr)?;
                Ok(Outcome::Line(format!("OK {}", value.laurent_form())))
            }
            Statement::Assert { left, right, .. } => {
                let lq = self.eval_expr(left)?;
                let rq = self.eval_expr(right)?;
                if lq == rq {
                    Ok(Outcome::Line("PASS".into()))
                } else if lq.dims() != rq.dims() {
                    Ok(Outcome::FailLine(format!(
                        "FAIL dimension mismatch: {} vs {}",
                        tuple(lq.dims().exponents()),
                        tuple(rq.dims().exponents())
                    )))
                } else {
                    Ok(Outcome::FailLine(format!(
                        "FAIL {} != {}",
                        lq.laurent_form(),
                        rq.laurent_form()
                    )))
                }
            }
            Statement::Convert { expr, target, span } => {
                let value = self.eval_expr(expr)?;
                let unit = self.eval_expr(target)?;
                let ratio = convert(&value, &unit).map_err(|e| EvalError {
                    kind: EvalErrorKind::Registry(e),
                    span: *span,
                })?;
                Ok(Outcome::Line(ratio.to_string()))
            }
        }
    }

    /// Loads the declarations of a parsed unit file (basis consumed by the
    /// caller); check/assert/convert statements are skipped.
    pub fn load_declarations(&mut self, statements: &[Statement]) -> Result<(), EvalError> {
        for statement in statements {
            match statement {
                Statement::Unit { .. } | Statement::Let { .. } => {
                    self.apply(statement)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Let-bound names in declaration order of their first definition.
    pub fn let_names(&self) -> impl Iterator<Item = &str> {
        self.lets.keys().map(String::as_str)
    }
}
