//! Exact scalar arithmetic: arbitrary-precision rationals and modular rings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} has no inverse modulo {modulus}")]
    NoInverse { value: u64, modulus: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("exponent {0} is too large for exact exponentiation")]
    ExponentTooLarge(i64),
}

/// An exact rational number, always stored in lowest terms with a
/// positive denominator. Zero is canonically `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: BigInt,
    denom: BigInt,
}

impl Rational {
    /// Builds `numer/denom`, reducing to canonical form.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let numer = numer.into();
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(numer, denom))
    }

    fn reduced(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(!denom.is_zero());
        if numer.is_zero() {
            return Rational {
                numer: BigInt::zero(),
                denom: BigInt::one(),
            };
        }
        let g = numer.gcd(&denom);
        let (mut numer, mut denom) = (numer / &g, denom / g);
        if denom.is_negative() {
            numer = -numer;
            denom = -denom;
        }
        Rational { numer, denom }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            numer: n.into(),
            denom: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numer
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(self.denom.clone(), self.numer.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(
            &self.numer * &rhs.denom,
            &self.denom * &rhs.numer,
        ))
    }

    /// Integer power; negative exponents require a non-zero base.
    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        if k == 0 {
            return Ok(Self::one());
        }
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| ScalarError::ExponentTooLarge(k))?;
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok(Self::reduced(base.numer.pow(e), base.denom.pow(e)))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational::reduced(
            &self.numer * &rhs.denom + &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational::reduced(
            &self.numer * &rhs.denom - &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::reduced(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            numer: -self.numer.clone(),
            denom: self.denom.clone(),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    /// Accepts `a`, `a/b` and decimal `a.b`, all parsed exactly.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let bad = || ScalarError::ParseRational(s.to_string());
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let digits = |t: &str| -> Result<BigInt, ScalarError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(t).map_err(|_| bad())
        };
        let value = if let Some((a, b)) = body.split_once('/') {
            let denom = digits(b)?;
            if denom.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Rational::reduced(digits(a)?, denom)
        } else if let Some((a, b)) = body.split_once('.') {
            let scale = BigInt::from(10u32).pow(b.len() as u32);
            let whole = digits(a)?;
            let frac = digits(b)?;
            Rational::reduced(whole * &scale + frac, scale)
        } else {
            Rational::from_integer(digits(body)?)
        };
        Ok(if sign < 0 { -&value } else { value })
    }
}

/// An element of the modular ring of integers mod `n`, `n >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModularElement {
    modulus: u64,
    value: u64,
}

impl ModularElement {
    pub fn new(modulus: u64, value: i64) -> Result<Self, ScalarError> {
        if modulus < 2 || modulus > i64::MAX as u64 {
            return Err(ScalarError::InvalidModulus(modulus));
        }
        let m = modulus as i64;
        Ok(ModularElement {
            modulus,
            value: value.rem_euclid(m) as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn check(self, rhs: Self) -> Result<(), ScalarError> {
        if self.modulus != rhs.modulus {
            return Err(ScalarError::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(())
    }

    pub fn add(self, rhs: Self) -> Result<Self, ScalarError> {
        self.check(rhs)?;
        Ok(ModularElement {
            modulus: self.modulus,
            value: (self.value + rhs.value) % self.modulus,
        })
    }

    pub fn mul(self, rhs: Self) -> Result<Self, ScalarError> {
        self.check(rhs)?;
        Ok(ModularElement {
            modulus: self.modulus,
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
        })
    }

    pub fn neg(self) -> Self {
        ModularElement {
            modulus: self.modulus,
            value: (self.modulus - self.value) % self.modulus,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm;
    /// exists exactly when gcd(value, modulus) = 1.
    pub fn inv(self) -> Result<Self, ScalarError> {
        let (mut r0, mut r1) = (self.modulus as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(ScalarError::NoInverse {
                value: self.value,
                modulus: self.modulus,
            });
        }
        Ok(ModularElement {
            modulus: self.modulus,
            value: t0.rem_euclid(self.modulus as i64) as u64,
        })
    }
}

impl fmt::Display for ModularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Debug for ModularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
