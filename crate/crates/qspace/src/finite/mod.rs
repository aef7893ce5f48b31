//! Brute-force laboratory: small scalable monoids given by explicit
//! multiplication and scaling tables over a modular ring, with exhaustive
//! checkers for the axioms, orbit structure, congruence quotients and
//! products. These models back the abstract algebra as an oracle.

mod congruence;
mod orbits;
mod products;
mod verify;

pub use congruence::{
    commensurability_classes, congruence_quotient, quotient_homomorphism_witness, CongruenceKind,
    QuotientModel,
};
pub use orbits::{
    orbit_module_check, orbit_partition, ClassModuleInfo, OrbitModuleReport, OrbitPartition,
};
pub use products::{direct_product, tensor_product, verify_tensor_associativity, TensorProduct};
pub use verify::{
    check_axioms, check_axioms_seq, verify_model, verify_model_seq, verify_models,
    verify_models_seq, CheckItem, CheckReport, Violation,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteModelError {
    #[error("invalid monoid table: {0}")]
    InvalidMonoidTable(String),
    #[error("invalid scalable-monoid table: {0}")]
    InvalidTable(String),
    #[error("ring modulus mismatch: {left} vs {right}")]
    RingMismatch { left: u64, right: u64 },
    #[error("submonoid is not central: element {member} does not commute with {witness}")]
    NotCentral { member: usize, witness: usize },
    #[error("not a submonoid: {0}")]
    NotSubmonoid(String),
    #[error("not a scalable submonoid: {0}")]
    NotScalableSubmonoid(String),
    #[error("relation is not a congruence: {0}")]
    CongruenceFailure(String),
    #[error("isomorphism check failed: {0}")]
    IsomorphismFailure(String),
}

/// A finite monoid as an explicit Cayley table. Associativity and the
/// identity laws are validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    mul: Vec<usize>,
    identity: usize,
}

impl FiniteMonoid {
    pub fn new(size: usize, mul: Vec<usize>, identity: usize) -> Result<Self, FiniteModelError> {
        if size == 0 || identity >= size || mul.len() != size * size {
            return Err(FiniteModelError::InvalidMonoidTable(
                "table shape does not match the carrier".into(),
            ));
        }
        if let Some(bad) = mul.iter().position(|&v| v >= size) {
            return Err(FiniteModelError::InvalidMonoidTable(format!(
                "entry {bad} is out of range"
            )));
        }
        let m = FiniteMonoid {
            size,
            mul,
            identity,
        };
        for x in 0..size {
            if m.mul(m.identity, x) != x || m.mul(x, m.identity) != x {
                return Err(FiniteModelError::InvalidMonoidTable(format!(
                    "identity law fails at {x}"
                )));
            }
            for y in 0..size {
                for z in 0..size {
                    if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                        return Err(FiniteModelError::InvalidMonoidTable(format!(
                            "associativity fails at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The cyclic group of order `k`, written multiplicatively.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let mut mul = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = (a + b) % k;
            }
        }
        FiniteMonoid {
            size: k,
            mul,
            identity: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }
}

/// A finite scalable monoid: a carrier with a multiplication table and a
/// scaling table for the ring of integers modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteScalableMonoid {
    carrier: usize,
    modulus: u64,
    mul: Vec<usize>,
    scale: Vec<usize>,
    identity: usize,
}

impl FiniteScalableMonoid {
    /// The ring-monoid construction: carrier Z_n x M with componentwise
    /// products and scaling acting on the ring component only. Element
    /// (a, x) is indexed as `a * |M| + x`.
    pub fn ring_monoid(modulus: u64, monoid: &FiniteMonoid) -> Result<Self, FiniteModelError> {
        if modulus < 2 {
            return Err(FiniteModelError::InvalidTable(format!(
                "ring modulus must be at least 2, got {modulus}"
            )));
        }
        let n = modulus as usize;
        let m = monoid.size();
        let carrier = n * m;
        let idx = |a: usize, x: usize| a * m + x;
        let mut mul = vec![0; carrier * carrier];
        for a in 0..n {
            for x in 0..m {
                for b in 0..n {
                    for y in 0..m {
                        mul[idx(a, x) * carrier + idx(b, y)] = idx((a * b) % n, monoid.mul(x, y));
                    }
                }
            }
        }
        let mut scale = vec![0; n * carrier];
        for lambda in 0..n {
            for a in 0..n {
                for x in 0..m {
                    scale[lambda * carrier + idx(a, x)] = idx((lambda * a) % n, x);
                }
            }
        }
        Ok(FiniteScalableMonoid {
            carrier,
            modulus,
            mul,
            scale,
            identity: idx(1, monoid.identity()),
        })
    }

    /// A monoid with the trivial scaling action `lambda * x = x`.
    pub fn trivial(modulus: u64, monoid: &FiniteMonoid) -> Result<Self, FiniteModelError> {
        if modulus < 2 {
            return Err(FiniteModelError::InvalidTable(format!(
                "ring modulus must be at least 2, got {modulus}"
            )));
        }
        let carrier = monoid.size();
        let mut scale = vec![0; modulus as usize * carrier];
        for lambda in 0..modulus as usize {
            for x in 0..carrier {
                scale[lambda * carrier + x] = x;
            }
        }
        Ok(FiniteScalableMonoid {
            carrier,
            modulus,
            mul: (0..carrier * carrier)
                .map(|i| monoid.mul(i / carrier, i % carrier))
                .collect(),
            scale,
            identity: monoid.identity(),
        })
    }

    /// Builds from raw tables, checking shape and all structural laws.
    pub fn from_tables(
        carrier: usize,
        modulus: u64,
        mul: Vec<usize>,
        scale: Vec<usize>,
        identity: usize,
    ) -> Result<Self, FiniteModelError> {
        let m = Self::from_tables_unchecked(carrier, modulus, mul, scale, identity)?;
        let report = verify::check_axioms_seq(&m);
        if let Some(v) = report.first_violation() {
            return Err(FiniteModelError::InvalidTable(v));
        }
        Ok(m)
    }

    /// Builds from raw tables with shape checks only; the laws may fail.
    /// Used for deliberately corrupted models in negative tests.
    pub fn from_tables_unchecked(
        carrier: usize,
        modulus: u64,
        mul: Vec<usize>,
        scale: Vec<usize>,
        identity: usize,
    ) -> Result<Self, FiniteModelError> {
        if carrier == 0
            || modulus < 2
            || identity >= carrier
            || mul.len() != carrier * carrier
            || scale.len() != modulus as usize * carrier
        {
            return Err(FiniteModelError::InvalidTable(
                "table shape does not match the carrier".into(),
            ));
        }
        if mul.iter().chain(scale.iter()).any(|&v| v >= carrier) {
            return Err(FiniteModelError::InvalidTable("entry out of range".into()));
        }
        Ok(FiniteScalableMonoid {
            carrier,
            modulus,
            mul,
            scale,
            identity,
        })
    }

    /// Copy with one scaling entry overwritten; the result is unvalidated.
    pub fn with_scale_entry(&self, lambda: u64, x: usize, value: usize) -> Self {
        let mut out = self.clone();
        out.scale[lambda as usize * self.carrier + x] = value;
        out
    }

    /// Copy with one multiplication entry overwritten; unvalidated.
    pub fn with_mul_entry(&self, x: usize, y: usize, value: usize) -> Self {
        let mut out = self.clone();
        out.mul[x * self.carrier + y] = value;
        out
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.carrier + y]
    }

    #[inline]
    pub fn scale(&self, lambda: u64, x: usize) -> usize {
        self.scale[lambda as usize * self.carrier + x]
    }

    /// The orbit of `x` under scaling, as a sorted deduplicated set.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.carrier];
        for lambda in 0..self.modulus {
            seen[self.scale(lambda, x)] = true;
        }
        (0..self.carrier).filter(|&i| seen[i]).collect()
    }

    pub fn ring_add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn ring_mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.modulus
    }
}

/// The CI inventory: ring-monoids of every modular ring in {2,3,4} with
/// every cyclic monoid in {1,2,3}.
pub fn standard_inventory() -> Vec<(String, FiniteScalableMonoid)> {
    let mut out = Vec::new();
    for n in [2u64, 3, 4] {
        for k in [1usize, 2, 3] {
            let model = FiniteScalableMonoid::ring_monoid(n, &FiniteMonoid::cyclic(k))
                .expect("inventory model is valid");
            out.push((format!("Z{n}xC{k}"), model));
        }
    }
    out
}
