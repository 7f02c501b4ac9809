//! Right multiplication by `S_a` on Cl(n), its matrix, and the splitting of
//! Cl(n) into the `±λ` eigenspaces.
//!
//! In the blade-index basis the matrix of `x ↦ x S` is exactly the signed
//! adjacency matrix `A_n` built by the block recursion
//! `A_n = [[A_{n-1}, I], [I, -A_{n-1}]]`.

use crate::clifford::{build_s, check_dim, Multivector, Scalar, Sign};
use crate::error::{Error, Result};
use crate::linalg::IndependentSet;
use crate::weights::WeightVector;

/// Default cap on `n` for dense `2^n × 2^n` matrices.
pub const MATRIX_DIM_CAP: u32 = 12;

/// Eigen-residual tolerance (max-norm).
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-9;
/// Idempotent defect tolerance (max-norm).
pub const IDEMPOTENT_TOL: f64 = 1e-12;
/// Relative pivot threshold for elimination.
pub const PIVOT_TOL: f64 = 1e-10;

/// Dense `2^n × 2^n` matrix; `entry(r, c)` is the coefficient of `e_r` in
/// `e_c · S_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    n: u32,
    entries: Vec<T>,
}

impl<T: Scalar> OperatorMatrix<T> {
    fn check_cap(n: u32) -> Result<()> {
        check_dim(n)?;
        if n > MATRIX_DIM_CAP {
            return Err(Error::DimensionCapExceeded {
                n,
                cap: MATRIX_DIM_CAP,
            });
        }
        Ok(())
    }

    /// Builds the matrix column by column from the products `e_c · S_a`.
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        let s = build_s(weights)?;
        let n = s.dim();
        Self::check_cap(n)?;
        let size = 1usize << n;
        let mut entries = vec![T::ZERO; size * size];
        for c in 0..size {
            let column = Multivector::basis(n, c as u32, T::ONE)?.product(&s)?;
            for (r, value) in column.terms() {
                entries[r as usize * size + c] = value;
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> T {
        self.entries[r * self.size() + c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.size())
    }

    pub fn is_symmetric(&self) -> bool {
        let size = self.size();
        (0..size).all(|r| (r + 1..size).all(|c| self.entry(r, c) == self.entry(c, r)))
    }

    pub fn trace(&self) -> Result<T> {
        (0..self.size()).try_fold(T::ZERO, |acc, i| {
            acc.checked_add(self.entry(i, i)).ok_or(Error::Overflow)
        })
    }

    /// Nonzero count of each column.
    pub fn column_support(&self) -> Vec<usize> {
        let size = self.size();
        (0..size)
            .map(|c| (0..size).filter(|&r| !self.entry(r, c).is_zero()).count())
            .collect()
    }

    /// `M²`, skipping zero entries of the left factor.
    pub fn square(&self) -> Result<Self> {
        let size = self.size();
        let mut out = vec![T::ZERO; size * size];
        for r in 0..size {
            for k in 0..size {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..size {
                    let b = self.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                    let slot = &mut out[r * size + c];
                    *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(Self {
            n: self.n,
            entries: out,
        })
    }

    /// Whether the matrix is `k · I`.
    pub fn is_scalar_identity(&self, k: T) -> bool {
        let size = self.size();
        self.entries.iter().enumerate().all(|(idx, &v)| {
            let expected = if idx / size == idx % size { k } else { T::ZERO };
            v == expected
        })
    }
}

/// Matrix of `M_{S_a}` for the given weights.
pub fn operator_matrix(weights: &WeightVector) -> Result<OperatorMatrix<f64>> {
    OperatorMatrix::from_weights(weights.as_slice())
}

/// Exact integer matrix of `M_{S_a}`.
pub fn operator_matrix_exact(weights: &[i64]) -> Result<OperatorMatrix<i64>> {
    OperatorMatrix::from_weights(weights)
}

/// `A_n` from its block recursion, independent of the Clifford product.
pub fn huang_matrix(n: u32) -> Result<OperatorMatrix<i64>> {
    OperatorMatrix::<i64>::check_cap(n)?;
    let mut prev = vec![0i64, 1, 1, 0];
    for k in 2..=n {
        let half = 1usize << (k - 1);
        let size = half * 2;
        let mut next = vec![0i64; size * size];
        for r in 0..half {
            for c in 0..half {
                let a = prev[r * half + c];
                next[r * size + c] = a;
                next[(r + half) * size + c + half] = -a;
            }
            next[r * size + r + half] = 1;
            next[(r + half) * size + r] = 1;
        }
        prev = next;
    }
    Ok(OperatorMatrix { n, entries: prev })
}

/// `α± = ±λ + S_a`.
pub fn alpha(weights: &WeightVector, sign: Sign) -> Result<Multivector<f64>> {
    weights.require_nonzero()?;
    let mut a = weights.s_element()?;
    a.set(0, sign.as_f64() * weights.lambda());
    Ok(a)
}

/// The idempotent `P± = (λ ± S_a) / (2λ)` projecting onto the `±λ`
/// eigenspace. `P+ = α+/(2λ)` and `P- = -α-/(2λ)`, so `P+ + P- = 1`.
pub fn idempotent(weights: &WeightVector, sign: Sign) -> Result<Multivector<f64>> {
    let a = alpha(weights, sign)?;
    let k = sign.as_f64() / (2.0 * weights.lambda());
    a.scale(k)
}

/// `‖x S_a − μ x‖∞`
pub fn eigen_residual(
    x: &Multivector<f64>,
    weights: &WeightVector,
    eigenvalue: f64,
) -> Result<f64> {
    let xs = x.product(&weights.s_element()?)?;
    Ok(xs.max_abs_diff(&x.scale(eigenvalue)?))
}

/// A basis of the left ideal `Cl(n) α±`, which is the `±λ` eigenspace of
/// `M_{S_a}`.
///
/// Candidates are `e_c α±` in blade order; a maximal independent subset is
/// kept. The result always has `2^(n-1)` members, otherwise the pivot
/// threshold is misconfigured and an error is returned.
pub fn eigenspace_basis(
    weights: &WeightVector,
    sign: Sign,
    pivot_tol: f64,
) -> Result<Vec<Multivector<f64>>> {
    let a = alpha(weights, sign)?;
    let n = weights.dim();
    let target = 1usize << (n - 1);
    let mut set = IndependentSet::new(pivot_tol);
    let mut basis = Vec::with_capacity(target);
    for c in 0..1u32 << n {
        let candidate = Multivector::basis(n, c, 1.0)?.product(&a)?;
        if set.insert(candidate.coeffs()) {
            basis.push(candidate);
            if basis.len() == target {
                return Ok(basis);
            }
        }
    }
    Err(Error::NumericalRank(format!(
        "eigenspace basis has {} vectors, expected {target}",
        basis.len()
    )))
}
