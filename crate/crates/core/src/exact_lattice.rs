//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels and the isomorphism type of finitely generated abelian quotients.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::decimal;
use crate::vector::{self, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("ragged rows: row {row} has length {len}, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid invariant factors: {0}")]
    InvalidInvariantFactors(String),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LatticeError> {
        if data.len() != rows * cols {
            return Err(LatticeError::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed only when `rows` is empty.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LatticeError::RaggedRows {
                    row: i,
                    len: r.len(),
                    expected: cols,
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(columns: &[IntVector], rows: usize) -> Result<Self, LatticeError> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<IntVector> = rows.iter().map(|r| vector::ivec(r)).collect();
        Self::from_rows(&rows, 0).expect("rows must have equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Submatrix keeping the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let cols: Vec<IntVector> = keep.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(&cols, self.rows).expect("columns share a length")
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows).map(|i| vector::dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn rank(&self) -> usize {
        vector::rank(&self.row_vectors())
    }

    /// Determinant of a square matrix (Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.row_vectors();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
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

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = factor * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = factor * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.get(k, j);
                    out.data[i * rhs.cols + j] += v;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        decimal::vectors::serialize(&self.row_vectors(), s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = decimal::vectors::deserialize(d)?;
        IntMatrix::from_rows(&rows, 0).map_err(serde::de::Error::custom)
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots on the entry of least absolute value in the remaining block.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(&pivot);
                let neg_q = -q;
                d.add_row_multiple(i, t, &neg_q);
                u.add_row_multiple(i, t, &neg_q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(&pivot);
                let neg_q = -q;
                d.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns a basis in echelon form: pivots positive, entries above a pivot
/// reduced into `[0, pivot)`; zero rows are dropped. Two generating sets of
/// the same lattice give identical output.
pub fn hermite_normal_form(rows: &[IntVector]) -> Vec<IntVector> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<IntVector> = rows.iter().filter(|r| !vector::is_zero(r)).cloned().collect();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        // Euclid on column `col` among rows r.. until a single nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| m[i][col].abs() < m[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[r][col]);
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x -= &q * y;
                }
                done &= m[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            m[r] = vector::neg(&m[r]);
        }
        let pivot = m[r][col].clone();
        let row_r = m[r].clone();
        for i in 0..r {
            let q = m[i][col].div_floor(&pivot);
            if !q.is_zero() {
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Basis of the integer kernel `{ x : a x = 0 }`, one vector per column of the
/// output matrix, in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let vectors = kernel_vectors(a);
    IntMatrix::from_columns(&vectors, a.cols).expect("kernel vectors share a length")
}

/// [`kernel_basis`] as a list of vectors.
pub fn kernel_vectors(a: &IntMatrix) -> Vec<IntVector> {
    if a.cols == 0 {
        return Vec::new();
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let raw: Vec<IntVector> = (r..a.cols).map(|j| snf.v.column(j)).collect();
    hermite_normal_form(&raw)
}

/// Saturated basis (HNF) of `span(vectors) ∩ Z^len`.
pub fn saturate(vectors: &[IntVector], len: usize) -> Vec<IntVector> {
    if vectors.iter().all(|v| vector::is_zero(v)) {
        return Vec::new();
    }
    let a = IntMatrix::from_rows(vectors, len).expect("vectors share a length");
    let perp = kernel_vectors(&a);
    if perp.is_empty() {
        return (0..len).map(|i| vector::unit_vector(len, i)).collect();
    }
    kernel_vectors(&IntMatrix::from_rows(&perp, len).expect("perp vectors share a length"))
}

/// Isomorphism type `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_s` with `d_1 | d_2 | …`, each `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Result<Self, LatticeError> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(LatticeError::InvalidInvariantFactors(format!(
                    "factor {d} at position {i} is below 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&invariant_factors[i - 1]) {
                return Err(LatticeError::InvalidInvariantFactors(format!(
                    "{} does not divide {d}",
                    invariant_factors[i - 1]
                )));
            }
        }
        Ok(Self {
            invariant_factors,
            free_rank,
        })
    }

    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order; `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Least positive `e` with `e·g = 0` for all `g`; `None` when infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Wire form: invariant factors as JSON integers when they fit in a `u64`,
/// decimal strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupWire {
    invariant_factors: Vec<FactorWire>,
    free_rank: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FactorWire {
    Small(u64),
    Big(decimal::Decimal),
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let invariant_factors = self
            .invariant_factors
            .iter()
            .map(|d| match u64::try_from(d) {
                Ok(x) => FactorWire::Small(x),
                Err(_) => FactorWire::Big(decimal::Decimal(d.clone())),
            })
            .collect();
        GroupWire {
            invariant_factors,
            free_rank: self.free_rank,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = GroupWire::deserialize(d)?;
        let factors = wire
            .invariant_factors
            .into_iter()
            .map(|f| match f {
                FactorWire::Small(x) => BigInt::from(x),
                FactorWire::Big(x) => x.0,
            })
            .collect();
        FiniteAbelianGroup::new(factors, wire.free_rank).map_err(serde::de::Error::custom)
    }
}

/// `Z^ambient_rank / span(columns of generators)`.
pub fn quotient_group(
    ambient_rank: usize,
    sublattice_generators: &IntMatrix,
) -> Result<FiniteAbelianGroup, LatticeError> {
    if sublattice_generators.rows != ambient_rank {
        return Err(LatticeError::Dimension(format!(
            "generator matrix has {} rows, ambient rank is {ambient_rank}",
            sublattice_generators.rows
        )));
    }
    let snf = smith_normal_form(sublattice_generators);
    let diagonal = snf.diagonal();
    let free_rank = ambient_rank - diagonal.len();
    let factors = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    FiniteAbelianGroup::new(factors, free_rank)
}
