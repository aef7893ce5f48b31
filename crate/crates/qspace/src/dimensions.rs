//! The free abelian group of dimension exponent vectors, plus the integer
//! lattice toolkit behind basis changes and natural-unit quotients: Smith
//! normal form, unimodular completion and lattice quotients.
//!
//! All arithmetic is checked 64-bit; overflow is reported, never wrapped.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimensionError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,
    #[error("lattice is not saturated; invariant factors {0:?}")]
    NotSaturated(Vec<i64>),
    #[error("vectors are not linearly independent over the integers")]
    NotIndependent,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
    #[error("matrix is empty")]
    EmptyMatrix,
}

fn add(a: i64, b: i64) -> Result<i64, DimensionError> {
    a.checked_add(b).ok_or(DimensionError::ExponentOverflow)
}

fn mul(a: i64, b: i64) -> Result<i64, DimensionError> {
    a.checked_mul(b).ok_or(DimensionError::ExponentOverflow)
}

/// An element of the dimension group: a tuple of signed integer exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        DimVector(exponents)
    }

    /// The group identity: the all-zero vector.
    pub fn zero(rank: usize) -> Self {
        DimVector(vec![0; rank])
    }

    /// The vector with a single 1 in position `i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DimVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check_rank(&self, other: &Self) -> Result<(), DimensionError> {
        if self.rank() != other.rank() {
            return Err(DimensionError::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        Ok(())
    }

    /// Group operation: componentwise sum of exponents.
    pub fn mul(&self, other: &Self) -> Result<Self, DimensionError> {
        self.check_rank(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| add(a, b))
            .collect::<Result<_, _>>()
            .map(DimVector)
    }

    /// Group inverse: componentwise negation.
    pub fn inv(&self) -> Result<Self, DimensionError> {
        self.0
            .iter()
            .map(|&a| a.checked_neg().ok_or(DimensionError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(DimVector)
    }

    /// The k-fold group power: componentwise multiplication by `k`.
    pub fn pow(&self, k: i64) -> Result<Self, DimensionError> {
        self.0
            .iter()
            .map(|&a| mul(a, k))
            .collect::<Result<_, _>>()
            .map(DimVector)
    }

    /// Equality as a guarded operation: errors when the ranks differ.
    pub fn try_eq(&self, other: &Self) -> Result<bool, DimensionError> {
        self.check_rank(other)?;
        Ok(self.0 == other.0)
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix of checked 64-bit integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix, DimensionError> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = add(acc, mul(self[(i, k)], other[(k, j)])?)?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Row-vector product `v * self`.
    pub fn apply_row(&self, v: &[i64]) -> Result<Vec<i64>, DimensionError> {
        assert_eq!(v.len(), self.rows, "vector length differs from row count");
        let mut out = vec![0i64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = add(out[j], mul(vi, self[(i, j)])?)?;
            }
        }
        Ok(out)
    }

    /// Column-vector product `self * v`.
    pub fn apply_col(&self, v: &[i64]) -> Result<Vec<i64>, DimensionError> {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length differs from column count"
        );
        let mut out = vec![0i64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0i64;
            for (j, &vj) in v.iter().enumerate() {
                acc = add(acc, mul(self[(i, j)], vj)?)?;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64, DimensionError> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |a: &[i128], i: usize, j: usize| a[i * n + j];
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                match (k + 1..n).find(|&i| at(&a, i, k) != 0) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, i, j)
                        .checked_mul(at(&a, k, k))
                        .and_then(|p| p.checked_sub(at(&a, i, k).checked_mul(at(&a, k, j))?))
                        .ok_or(DimensionError::ExponentOverflow)?;
                    // Bareiss: division by the previous pivot is exact.
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = at(&a, k, k);
        }
        let det = sign * at(&a, n - 1, n - 1);
        i64::try_from(det).map_err(|_| DimensionError::ExponentOverflow)
    }

    /// Exact inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, DimensionError> {
        let det = self.determinant()?;
        if det.abs() != 1 {
            return Err(DimensionError::NotUnimodular(det));
        }
        let n = self.rows;
        let mut inv = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                // Cofactor C_ji for the (i, j) entry of the adjugate.
                let minor = self.minor(j, i)?;
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                inv[(i, j)] = mul(mul(sign, minor)?, det)?;
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Result<i64, DimensionError> {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                data.push(self[(i, j)]);
            }
        }
        IntMatrix::new(n - 1, n - 1, data).determinant()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: i64) -> Result<(), DimensionError> {
        for j in 0..self.cols {
            self[(target, j)] = add(self[(target, j)], mul(c, self[(source, j)])?)?;
        }
        Ok(())
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: i64) -> Result<(), DimensionError> {
        for i in 0..self.rows {
            self[(i, target)] = add(self[(i, target)], mul(c, self[(i, source)])?)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// The decomposition `u * a * v = s` with `u`, `v` unimodular and `s`
/// diagonal with a non-negative divisibility chain.
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Exact inverse of `v`, maintained alongside the column operations.
    pub v_inv: IntMatrix,
}

impl SmithNormalForm {
    /// The diagonal of `s`.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)])
            .collect()
    }

    /// Number of non-zero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&d| d != 0).count()
    }

    /// Diagonal entries greater than one, in chain order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&d| d > 1).collect()
    }
}

/// Smallest-magnitude non-zero entry of the trailing block at `(k, k)`,
/// ties broken by lowest row then column index.
fn select_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let v = s[(i, j)].abs();
            if v != 0 && best.map_or(true, |(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Computes the Smith normal form of `a`.
///
/// Elementary row operations are mirrored on `u`, column operations on `v`
/// and inverted on `v_inv`, so `u * a * v = s` and `v * v_inv = I` hold
/// exactly on return.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithNormalForm, DimensionError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(DimensionError::EmptyMatrix);
    }
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let mut v_inv = IntMatrix::identity(a.cols());

    let n = a.rows().min(a.cols());
    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = select_pivot(&s, k) else {
            break;
        };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        let pivot = s[(k, k)];
        let mut dirty = false;

        for i in k + 1..s.rows() {
            if s[(i, k)] != 0 {
                let q = s[(i, k)] / pivot;
                if q != 0 {
                    s.add_row(i, k, -q)?;
                    u.add_row(i, k, -q)?;
                }
                dirty |= s[(i, k)] != 0;
            }
        }
        for j in k + 1..s.cols() {
            if s[(k, j)] != 0 {
                let q = s[(k, j)] / pivot;
                if q != 0 {
                    s.add_col(j, k, -q)?;
                    v.add_col(j, k, -q)?;
                    v_inv.add_row(k, j, q)?;
                }
                dirty |= s[(k, j)] != 0;
            }
        }
        if dirty {
            continue; // leftover remainders become the next, smaller pivot
        }

        // Divisibility fix-up: fold in a row holding a non-divisible entry.
        let offender = (k + 1..s.rows())
            .flat_map(|i| (k + 1..s.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| s[(i, j)] % pivot != 0);
        if let Some((i, _)) = offender {
            s.add_row(k, i, 1)?;
            u.add_row(k, i, 1)?;
            continue;
        }

        if s[(k, k)] < 0 {
            s.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    Ok(SmithNormalForm { u, s, v, v_inv })
}

/// Extends `vectors` to a full unimodular basis of the ambient rank-`n`
/// lattice. The first `vectors.len()` rows of the result are the inputs;
/// this exists exactly when the spanned sublattice is saturated.
pub fn unimodular_complete(vectors: &[DimVector], n: usize) -> Result<IntMatrix, DimensionError> {
    for v in vectors {
        if v.rank() != n {
            return Err(DimensionError::RankMismatch {
                expected: n,
                got: v.rank(),
            });
        }
    }
    let r = vectors.len();
    if r == 0 {
        return Ok(IntMatrix::identity(n));
    }
    if r > n {
        return Err(DimensionError::NotIndependent);
    }
    let g = IntMatrix::from_rows(
        &vectors
            .iter()
            .map(|v| v.exponents().to_vec())
            .collect::<Vec<_>>(),
    );
    let snf = smith_normal_form(&g)?;
    if snf.rank() < r {
        return Err(DimensionError::NotIndependent);
    }
    let factors = snf.invariant_factors();
    if !factors.is_empty() {
        return Err(DimensionError::NotSaturated(factors));
    }

    // With u*g*v = [I 0], the first r rows of v_inv span the same lattice
    // as g, so swapping them out for g keeps the determinant at ±1.
    let mut rows = Vec::with_capacity(n);
    for v in vectors {
        rows.push(v.exponents().to_vec());
    }
    for i in r..n {
        rows.push(snf.v_inv.row(i).to_vec());
    }
    let m = IntMatrix::from_rows(&rows);
    debug_assert_eq!(m.determinant()?.abs(), 1);
    Ok(m)
}

/// Structure of the quotient of the ambient exponent lattice by the
/// sublattice spanned by a set of generators.
pub struct LatticeQuotient {
    ambient_rank: usize,
    free_rank: usize,
    invariant_factors: Vec<i64>,
    /// Maps an ambient row vector to quotient coordinates: free coordinates
    /// first, then one torsion coordinate per invariant factor.
    projection: IntMatrix,
}

/// Coordinates of an ambient vector in the quotient decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCoords {
    pub free: Vec<i64>,
    /// Residues modulo the corresponding invariant factors.
    pub torsion: Vec<i64>,
}

impl LatticeQuotient {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn coords(&self, v: &DimVector) -> Result<QuotientCoords, DimensionError> {
        if v.rank() != self.ambient_rank {
            return Err(DimensionError::RankMismatch {
                expected: self.ambient_rank,
                got: v.rank(),
            });
        }
        let image = self.projection.apply_row(v.exponents())?;
        let (free, tors) = image.split_at(self.free_rank);
        let torsion = tors
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&t, &d)| t.rem_euclid(d))
            .collect();
        Ok(QuotientCoords {
            free: free.to_vec(),
            torsion,
        })
    }
}

/// Classifies the quotient of the rank-`n` exponent lattice by the span of
/// `generators` as a free part plus cyclic invariant factors.
pub fn lattice_quotient(
    generators: &[DimVector],
    n: usize,
) -> Result<LatticeQuotient, DimensionError> {
    for v in generators {
        if v.rank() != n {
            return Err(DimensionError::RankMismatch {
                expected: n,
                got: v.rank(),
            });
        }
    }
    if generators.is_empty() || n == 0 {
        return Ok(LatticeQuotient {
            ambient_rank: n,
            free_rank: n,
            invariant_factors: Vec::new(),
            projection: IntMatrix::identity(n),
        });
    }
    let g = IntMatrix::from_rows(
        &generators
            .iter()
            .map(|v| v.exponents().to_vec())
            .collect::<Vec<_>>(),
    );
    let snf = smith_normal_form(&g)?;
    let diag = snf.diagonal();
    let rank = snf.rank();
    let free_rank = n - rank;
    let invariant_factors = snf.invariant_factors();

    // In the coordinates k -> k * v the sublattice becomes the span of
    // d_i * e_i, so the quotient reads off columns of v: the columns past
    // the rank are free, the columns with d_i > 1 are torsion.
    let mut cols: Vec<usize> = (rank..n).collect();
    cols.extend((0..rank).filter(|&i| diag[i] > 1));
    let mut projection = IntMatrix::zero(n, cols.len());
    for i in 0..n {
        for (jj, &j) in cols.iter().enumerate() {
            projection[(i, jj)] = snf.v[(i, j)];
        }
    }
    Ok(LatticeQuotient {
        ambient_rank: n,
        free_rank,
        invariant_factors,
        projection,
    })
}
