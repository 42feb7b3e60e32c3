//! Max-min (fuzzy) matrix and vector algebra.
//!
//! Composition replaces multiplication by `min` and addition by `max`:
//! `(A ∘ B)[i][j] = max_k min(A[i][k], B[k][j])`. Every result entry is drawn
//! from `{0, 1}` and the entries of the operands.

use std::fmt;
use std::ops::Index;

use thiserror::Error;

use crate::possibility::Possibility;
use crate::state_set::StateSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix data has {len} entries, expected {dim}x{dim}")]
    NotSquare { dim: usize, len: usize },
}

fn check_dims(left: usize, right: usize) -> Result<(), AlgebraError> {
    if left == right {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { left, right })
    }
}

/// A state-indexed vector of possibility degrees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PossibilityVector(Vec<Possibility>);

impl PossibilityVector {
    pub fn new(entries: Vec<Possibility>) -> Self {
        PossibilityVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        PossibilityVector(vec![Possibility::ZERO; dim])
    }

    pub fn ones(dim: usize) -> Self {
        PossibilityVector(vec![Possibility::ONE; dim])
    }

    /// The characteristic (0/1) vector of a state set.
    pub fn characteristic(set: &StateSet) -> Self {
        PossibilityVector(set.as_slice().iter().map(|&b| b.into()).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Possibility] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Possibility> + '_ {
        self.0.iter().copied()
    }

    pub fn set(&mut self, i: usize, value: Possibility) {
        self.0[i] = value;
    }

    /// Entrywise `≤`.
    pub fn le(&self, other: &PossibilityVector) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Index<usize> for PossibilityVector {
    type Output = Possibility;

    fn index(&self, i: usize) -> &Possibility {
        &self.0[i]
    }
}

impl fmt::Debug for PossibilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A dense square matrix over `[0, 1]`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FuzzyMatrix {
    dim: usize,
    data: Vec<Possibility>,
}

impl FuzzyMatrix {
    pub fn from_rows(rows: Vec<Vec<Possibility>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            check_dims(dim, row.len())?;
            data.extend(row);
        }
        Ok(FuzzyMatrix { dim, data })
    }

    pub fn from_vec(dim: usize, data: Vec<Possibility>) -> Result<Self, AlgebraError> {
        if data.len() != dim * dim {
            return Err(AlgebraError::NotSquare {
                dim,
                len: data.len(),
            });
        }
        Ok(FuzzyMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        FuzzyMatrix {
            dim,
            data: vec![Possibility::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = FuzzyMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Possibility::ONE);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Possibility {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Possibility) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Possibility] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn entries(&self) -> impl Iterator<Item = Possibility> + '_ {
        self.data.iter().copied()
    }

    pub fn diagonal(&self) -> PossibilityVector {
        PossibilityVector((0..self.dim).map(|i| self.get(i, i)).collect())
    }

    /// Keeps only the entries whose row and column both lie in `keep`.
    pub fn restrict(&self, keep: &StateSet) -> FuzzyMatrix {
        let mut out = FuzzyMatrix::zeros(self.dim);
        for i in keep.iter() {
            for j in keep.iter() {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Entrywise `≤`.
    pub fn le(&self, other: &FuzzyMatrix) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for FuzzyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.dim {
            list.entry(&self.row(i));
        }
        list.finish()
    }
}

/// Max-min composition `A ∘ B`.
pub fn compose(a: &FuzzyMatrix, b: &FuzzyMatrix) -> Result<FuzzyMatrix, AlgebraError> {
    check_dims(a.dim, b.dim)?;
    Ok(compose_unchecked(a, b))
}

fn compose_unchecked(a: &FuzzyMatrix, b: &FuzzyMatrix) -> FuzzyMatrix {
    let n = a.dim;
    let mut out = FuzzyMatrix::zeros(n);
    for i in 0..n {
        let out_row = &mut out.data[i * n..(i + 1) * n];
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (o, &bkj) in out_row.iter_mut().zip(b.row(k)) {
                let m = aik.min(bkj);
                if m > *o {
                    *o = m;
                }
            }
        }
    }
    out
}

/// Max-min matrix-vector product `A ∘ v`.
pub fn apply(a: &FuzzyMatrix, v: &PossibilityVector) -> Result<PossibilityVector, AlgebraError> {
    check_dims(a.dim, v.dim())?;
    Ok(PossibilityVector(
        (0..a.dim)
            .map(|i| {
                a.row(i)
                    .iter()
                    .zip(v.iter())
                    .map(|(&x, y)| x.min(y))
                    .max()
                    .unwrap_or(Possibility::ZERO)
            })
            .collect(),
    ))
}

/// Entrywise maximum.
pub fn join(a: &FuzzyMatrix, b: &FuzzyMatrix) -> Result<FuzzyMatrix, AlgebraError> {
    check_dims(a.dim, b.dim)?;
    Ok(join_unchecked(a, b))
}

fn join_unchecked(a: &FuzzyMatrix, b: &FuzzyMatrix) -> FuzzyMatrix {
    FuzzyMatrix {
        dim: a.dim,
        data: a.data.iter().zip(&b.data).map(|(x, y)| *x.max(y)).collect(),
    }
}

/// `(I ∨ A)^(2^k)` for the smallest `k` with `2^k ≥ dim - 1`, stopping early
/// once squaring no longer changes the matrix. The result is `I ∨ A ∨ … ∨ A^(dim-1)`,
/// which already equals the reflexive-transitive closure.
fn star_by_squaring(a: &FuzzyMatrix) -> FuzzyMatrix {
    let n = a.dim;
    let mut r = join_unchecked(&FuzzyMatrix::identity(n), a);
    let mut covered = 1usize;
    while covered + 1 < n {
        let next = compose_unchecked(&r, &r);
        if next == r {
            break;
        }
        r = next;
        covered *= 2;
    }
    r
}

/// `A⁺ = A ∨ A² ∨ … ∨ A^N` with `N = dim`.
///
/// Computed as `A ∘ (I ∨ A)^(2^k)`, which covers every power from 1 to `N`
/// after `⌈log₂ N⌉` squarings.
pub fn transitive_closure(a: &FuzzyMatrix) -> FuzzyMatrix {
    if a.dim == 0 {
        return a.clone();
    }
    compose_unchecked(a, &star_by_squaring(a))
}

/// `A⁺` by accumulating `A ∨ A² ∨ … ∨ A^N` power by power.
pub fn transitive_closure_naive(a: &FuzzyMatrix) -> FuzzyMatrix {
    let mut power = a.clone();
    let mut acc = a.clone();
    for _ in 1..a.dim {
        power = compose_unchecked(&power, a);
        acc = join_unchecked(&acc, &power);
    }
    acc
}

/// `A* = I ∨ A⁺`.
pub fn reflexive_transitive_closure(a: &FuzzyMatrix) -> FuzzyMatrix {
    if a.dim == 0 {
        return a.clone();
    }
    star_by_squaring(a)
}

/// `A^{≤n} = I ∨ A ∨ … ∨ A^n`.
pub fn bounded_closure(a: &FuzzyMatrix, n: usize) -> FuzzyMatrix {
    let dim = a.dim;
    if n >= dim {
        return reflexive_transitive_closure(a);
    }
    // (I ∨ A)^n == I ∨ A ∨ … ∨ A^n because join is idempotent and composition distributes over it
    let mut result = FuzzyMatrix::identity(dim);
    let mut base = join_unchecked(&FuzzyMatrix::identity(dim), a);
    let mut remaining = n;
    while remaining > 0 {
        if remaining & 1 == 1 {
            result = compose_unchecked(&result, &base);
        }
        remaining >>= 1;
        if remaining > 0 {
            base = compose_unchecked(&base, &base);
        }
    }
    result
}
