//! Named unit quantities over a basis, unimodular change of basis, and
//! conversion of a quantity into a multiple of a target unit.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dimensions::{DimVector, DimensionError, IntMatrix};
use crate::quantity::{Quantity, QuantityError, QuantitySpace};
use crate::scalars::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("a unit quantity must be non-zero")]
    ZeroUnit,
    #[error("name {0:?} is already defined")]
    DuplicateName(String),
    #[error("quantity belongs to a different space")]
    SpaceMismatch,
    #[error("cannot convert between dimensions {left:?} and {right:?}")]
    IncommensurableConversion { left: Vec<i64>, right: Vec<i64> },
    #[error("basis-change exponent matrix has determinant {0}, need ±1")]
    NotUnimodular(i64),
    #[error("expected {expected} basis definitions, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error(transparent)]
    Quantity(#[from] QuantityError),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

/// An immutable map from names to non-zero unit quantities over one space.
/// Basis symbols resolve to the quantities `1 * b_i` without registration.
#[derive(Clone)]
pub struct UnitRegistry {
    space: QuantitySpace,
    units: BTreeMap<String, Quantity>,
}

impl UnitRegistry {
    pub fn new(space: QuantitySpace) -> Self {
        UnitRegistry {
            space,
            units: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &QuantitySpace {
        &self.space
    }

    /// Returns a new registry with `name` bound to `unit`. Rebinding is
    /// allowed only when the value is identical.
    pub fn register(&self, name: &str, unit: Quantity) -> Result<UnitRegistry, RegistryError> {
        if unit.space() != &self.space {
            return Err(RegistryError::SpaceMismatch);
        }
        if unit.is_zero() {
            return Err(RegistryError::ZeroUnit);
        }
        if let Some(existing) = self.resolve(name) {
            if existing == unit {
                return Ok(self.clone());
            }
            return Err(RegistryError::DuplicateName(name.to_string()));
        }
        let mut units = self.units.clone();
        units.insert(name.to_string(), unit);
        Ok(UnitRegistry {
            space: self.space.clone(),
            units,
        })
    }

    pub fn resolve(&self, name: &str) -> Option<Quantity> {
        if let Some(q) = self.units.get(name) {
            return Some(q.clone());
        }
        self.space
            .symbol_index(name)
            .map(|i| self.space.basis_quantity(i))
    }

    pub fn unit_names(&self) -> impl Iterator<Item = &str> {
        self.units.keys().map(String::as_str)
    }
}

/// Returns the unique scalar `rho` with `x = rho * unit`.
pub fn convert(x: &Quantity, unit: &Quantity) -> Result<Rational, RegistryError> {
    if x.space() != unit.space() {
        return Err(RegistryError::SpaceMismatch);
    }
    if unit.is_zero() {
        return Err(RegistryError::ZeroUnit);
    }
    if x.dims() != unit.dims() {
        return Err(RegistryError::IncommensurableConversion {
            left: x.dims().exponents().to_vec(),
            right: unit.dims().exponents().to_vec(),
        });
    }
    Ok(x.measure()
        .checked_div(unit.measure())
        .expect("unit measure is non-zero"))
}

/// A change of basis `b'_j = mu_j * prod_i b_i^{a[j][i]}` with `a`
/// unimodular, together with the exact rebasing transform.
pub struct BasisChange {
    source: QuantitySpace,
    target: QuantitySpace,
    /// Row j holds the exponents of the new basis element j over the old basis.
    matrix: IntMatrix,
    /// Inverse of the transposed exponent matrix; solves for new exponents.
    solve: IntMatrix,
    scalars: Vec<Rational>,
}

impl BasisChange {
    pub fn source(&self) -> &QuantitySpace {
        &self.source
    }

    pub fn target(&self) -> &QuantitySpace {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn scalars(&self) -> &[Rational] {
        &self.scalars
    }

    /// Re-expresses `x` over the new basis. The exponent solve is exact;
    /// unimodularity guarantees an integer solution.
    pub fn rebase(&self, x: &Quantity) -> Result<Quantity, RegistryError> {
        if x.space() != &self.source {
            return Err(RegistryError::SpaceMismatch);
        }
        let new_exponents = self.solve.apply_col(x.dims().exponents())?;
        let mut measure = x.measure().clone();
        for (mu, &k) in self.scalars.iter().zip(&new_exponents) {
            if k != 0 {
                measure = &measure * &mu.pow(-k).expect("basis scalars are non-zero");
            }
        }
        Ok(self
            .target
            .quantity(measure, DimVector::new(new_exponents))?)
    }

    /// The change expressing the old basis over the new one; rebasing
    /// through both is the identity.
    pub fn inverse(&self) -> Result<BasisChange, RegistryError> {
        let defs: Vec<(String, Quantity)> = self
            .source
            .basis_symbols()
            .iter()
            .enumerate()
            .map(|(i, name)| Ok((name.clone(), self.rebase(&self.source.basis_quantity(i))?)))
            .collect::<Result<_, RegistryError>>()?;
        change_basis(&self.target, &defs)
    }
}

/// Builds the change of basis defined by `new_defs`: exactly one non-zero
/// quantity per new basis element, with a unimodular exponent matrix.
pub fn change_basis(
    space: &QuantitySpace,
    new_defs: &[(String, Quantity)],
) -> Result<BasisChange, RegistryError> {
    let n = space.rank();
    if new_defs.len() != n {
        return Err(RegistryError::WrongCount {
            expected: n,
            got: new_defs.len(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut scalars = Vec::with_capacity(n);
    for (_, q) in new_defs {
        if q.space() != space {
            return Err(RegistryError::SpaceMismatch);
        }
        if q.is_zero() {
            return Err(RegistryError::ZeroUnit);
        }
        rows.push(q.dims().exponents().to_vec());
        scalars.push(q.measure().clone());
    }
    let matrix = IntMatrix::from_rows(&rows);
    if n > 0 {
        let det = matrix.determinant()?;
        if det.abs() != 1 {
            return Err(RegistryError::NotUnimodular(det));
        }
    }
    let solve = matrix.transpose().inverse_unimodular()?;
    let target = QuantitySpace::new(new_defs.iter().map(|(name, _)| name.clone()))?;
    Ok(BasisChange {
        source: space.clone(),
        target,
        matrix,
        solve,
        scalars,
    })
}
