//! Quantities over a finite basis: exact measures paired with integer
//! exponent vectors, with scaling, multiplication, dimension-guarded
//! addition, ordering and canonical rendering.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::dimensions::{DimVector, DimensionError};
use crate::scalars::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantityError {
    #[error("quantities belong to different spaces")]
    SpaceMismatch,
    #[error("exponent tuple has rank {got}, space has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("cannot add quantities of dimensions {left:?} and {right:?}")]
    IncommensurableAddition { left: Vec<i64>, right: Vec<i64> },
    #[error("cannot compare quantities of dimensions {left:?} and {right:?}")]
    Incomparable { left: Vec<i64>, right: Vec<i64> },
    #[error("zero quantities are not invertible")]
    NotInvertible,
    #[error("duplicate basis symbol {0:?}")]
    DuplicateName(String),
    #[error("basis symbols must be non-empty")]
    EmptyName,
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

#[derive(PartialEq, Eq, Hash)]
struct SpaceInner {
    basis: Vec<String>,
}

/// A quantity space presented by its ordered basis symbols. Rank 0 is the
/// dimensionless-only space. Identity is by value: two spaces are the same
/// exactly when their symbol lists coincide.
#[derive(Clone, Eq)]
pub struct QuantitySpace {
    inner: Arc<SpaceInner>,
}

impl PartialEq for QuantitySpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl std::hash::Hash for QuantitySpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.hash(state);
    }
}

impl QuantitySpace {
    pub fn new<I, S>(names: I) -> Result<Self, QuantityError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let basis: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in basis.iter().enumerate() {
            if name.is_empty() {
                return Err(QuantityError::EmptyName);
            }
            if basis[..i].contains(name) {
                return Err(QuantityError::DuplicateName(name.clone()));
            }
        }
        Ok(QuantitySpace {
            inner: Arc::new(SpaceInner { basis }),
        })
    }

    pub fn dimensionless() -> Self {
        Self::new(Vec::<String>::new()).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn basis_symbols(&self) -> &[String] {
        &self.inner.basis
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.inner.basis.iter().position(|s| s == name)
    }

    /// The multiplicative identity: measure 1, all exponents 0.
    pub fn one(&self) -> Quantity {
        Quantity {
            space: self.clone(),
            measure: Rational::one(),
            dims: DimVector::zero(self.rank()),
        }
    }

    /// The basis quantity `1 * b_i`.
    pub fn basis_quantity(&self, i: usize) -> Quantity {
        assert!(i < self.rank(), "basis index out of range");
        Quantity {
            space: self.clone(),
            measure: Rational::one(),
            dims: DimVector::basis(self.rank(), i),
        }
    }

    /// Assembles a quantity from its expansion data.
    pub fn quantity(&self, measure: Rational, dims: DimVector) -> Result<Quantity, QuantityError> {
        if dims.rank() != self.rank() {
            return Err(QuantityError::RankMismatch {
                expected: self.rank(),
                got: dims.rank(),
            });
        }
        Ok(Quantity {
            space: self.clone(),
            measure,
            dims,
        })
    }

    /// The measure-one unit of the given dimension. The image of this map
    /// over all exponent tuples is closed under multiplication and hits
    /// every dimension exactly once.
    pub fn coherent_unit(&self, dims: &DimVector) -> Result<Quantity, QuantityError> {
        self.quantity(Rational::one(), dims.clone())
    }

    /// The zero quantity of the given dimension.
    pub fn zero(&self, dims: &DimVector) -> Result<Quantity, QuantityError> {
        self.quantity(Rational::zero(), dims.clone())
    }
}

impl fmt::Debug for QuantitySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantitySpace{:?}", self.inner.basis)
    }
}

/// A quantity in expanded form: the unique pair of an exact measure and an
/// integer exponent tuple over the space's basis. Equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct Quantity {
    space: QuantitySpace,
    measure: Rational,
    dims: DimVector,
}

impl Quantity {
    pub fn space(&self) -> &QuantitySpace {
        &self.space
    }

    pub fn measure(&self) -> &Rational {
        &self.measure
    }

    /// The dimension of the quantity as its exponent tuple.
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// A quantity is zero exactly when its measure is zero.
    pub fn is_zero(&self) -> bool {
        self.measure.is_zero()
    }

    fn check_space(&self, other: &Quantity) -> Result<(), QuantityError> {
        if self.space != other.space {
            return Err(QuantityError::SpaceMismatch);
        }
        Ok(())
    }

    /// Scalar action: multiplies the measure, keeps the dimension.
    pub fn scale(&self, lambda: &Rational) -> Quantity {
        Quantity {
            space: self.space.clone(),
            measure: lambda * &self.measure,
            dims: self.dims.clone(),
        }
    }

    /// Monoid multiplication: measures multiply, exponents add.
    pub fn mul(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        self.check_space(other)?;
        Ok(Quantity {
            space: self.space.clone(),
            measure: &self.measure * &other.measure,
            dims: self.dims.mul(&other.dims)?,
        })
    }

    /// Integer power. `x^0` is the identity for every `x`; negative powers
    /// require a non-zero quantity.
    pub fn pow(&self, k: i64) -> Result<Quantity, QuantityError> {
        if k == 0 {
            return Ok(self.space.one());
        }
        if k < 0 && self.is_zero() {
            return Err(QuantityError::NotInvertible);
        }
        let measure = self
            .measure
            .pow(k)
            .map_err(|_| QuantityError::Dimension(DimensionError::ExponentOverflow))?;
        Ok(Quantity {
            space: self.space.clone(),
            measure,
            dims: self.dims.pow(k)?,
        })
    }

    pub fn inv(&self) -> Result<Quantity, QuantityError> {
        self.pow(-1)
    }

    /// True exactly when the two quantities have equal exponent tuples.
    pub fn commensurable(&self, other: &Quantity) -> Result<bool, QuantityError> {
        self.check_space(other)?;
        Ok(self.dims == other.dims)
    }

    /// Dimension-guarded sum; rejects unequal exponent tuples.
    pub fn add(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        self.check_space(other)?;
        if self.dims != other.dims {
            return Err(QuantityError::IncommensurableAddition {
                left: self.dims.exponents().to_vec(),
                right: other.dims.exponents().to_vec(),
            });
        }
        Ok(Quantity {
            space: self.space.clone(),
            measure: &self.measure + &other.measure,
            dims: self.dims.clone(),
        })
    }

    pub fn sub(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        self.add(&other.neg())
    }

    /// Additive inverse: scaling by -1.
    pub fn neg(&self) -> Quantity {
        self.scale(&Rational::from_integer(-1))
    }

    /// Total order within a dimension, taking the measure-one coherent unit
    /// of that dimension as positive; incommensurable pairs are incomparable.
    pub fn compare(&self, other: &Quantity) -> Result<Ordering, QuantityError> {
        self.check_space(other)?;
        if self.dims != other.dims {
            return Err(QuantityError::Incomparable {
                left: self.dims.exponents().to_vec(),
                right: other.dims.exponents().to_vec(),
            });
        }
        Ok(self.measure.cmp(&other.measure))
    }

    /// Canonical rendering: measure, then basis symbols with non-zero
    /// exponents in basis order, exponent 1 elided. A quantity of the
    /// identity dimension renders as its bare measure.
    pub fn laurent_form(&self) -> String {
        let mut out = self.measure.to_string();
        for (symbol, &e) in self.space.basis_symbols().iter().zip(self.dims.exponents()) {
            match e {
                0 => {}
                1 => {
                    out.push(' ');
                    out.push_str(symbol);
                }
                _ => {
                    out.push(' ');
                    out.push_str(symbol);
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.laurent_form())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.laurent_form())
    }
}
