//! Arithmetic in the positive-definite Clifford algebra Cl(n).
//!
//! Generator `e_i` (1-based) occupies bit `i - 1` of a blade mask, so the
//! blade `e_{i_1} ... e_{i_k}` with `i_1 < ... < i_k` has index
//! `2^(i_1 - 1) + ... + 2^(i_k - 1)`. The same integer names a vertex of the
//! cube `Q^n`, which is what ties the algebra to the graph.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Largest supported number of generators for dense multivectors.
pub const MAX_DIM: u32 = 20;

pub(crate) fn check_dim(n: u32) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidDimension { n, cap: MAX_DIM });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_i64() as f64
    }

    /// Applies the sign to a scalar.
    pub fn apply<T: Scalar>(self, value: T) -> Option<T> {
        match self {
            Sign::Plus => Some(value),
            Sign::Minus => value.checked_neg(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Coefficient type of a multivector.
///
/// `i64` is the exact backing: every operation is checked and overflow is an
/// error. `f64` never fails.
pub trait Scalar: Copy + PartialEq + fmt::Debug + Send + Sync + 'static {
    const ZERO: Self;
    const ONE: Self;

    fn checked_add(self, rhs: Self) -> Option<Self>;
    fn checked_sub(self, rhs: Self) -> Option<Self>;
    fn checked_mul(self, rhs: Self) -> Option<Self>;
    fn checked_neg(self) -> Option<Self>;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl Scalar for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;

    fn checked_add(self, rhs: Self) -> Option<Self> {
        i64::checked_add(self, rhs)
    }
    fn checked_sub(self, rhs: Self) -> Option<Self> {
        i64::checked_sub(self, rhs)
    }
    fn checked_mul(self, rhs: Self) -> Option<Self> {
        i64::checked_mul(self, rhs)
    }
    fn checked_neg(self) -> Option<Self> {
        i64::checked_neg(self)
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn checked_mul(self, rhs: Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn checked_neg(self) -> Option<Self> {
        Some(-self)
    }
}

/// A signed basis element `±e_A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade {
    pub mask: u32,
    pub sign: Sign,
}

impl Blade {
    pub fn new(mask: u32, sign: Sign) -> Self {
        Self { mask, sign }
    }

    pub fn positive(mask: u32) -> Self {
        Self::new(mask, Sign::Plus)
    }

    /// Generator `e_i`, 1-based.
    pub fn generator(i: u32) -> Self {
        Self::positive(1 << (i - 1))
    }

    pub fn grade(self) -> u32 {
        self.mask.count_ones()
    }
}

/// Parity of the transpositions needed to bring `e_a e_b` into canonical
/// order: every generator `j` of `b` must move past each generator of `a`
/// with a larger index.
pub fn reorder_parity(a: u32, b: u32) -> bool {
    let mut parity = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        parity ^= (a >> j >> 1).count_ones() & 1;
        rest &= rest - 1;
    }
    parity == 1
}

fn check_mask(mask: u32, n: u32) -> Result<()> {
    if n < 32 && mask >> n != 0 {
        return Err(Error::MaskOutOfRange { mask, n });
    }
    Ok(())
}

/// Product of two blades in Cl(n).
pub fn blade_product(a: Blade, b: Blade, n: u32) -> Result<Blade> {
    check_dim(n)?;
    check_mask(a.mask, n)?;
    check_mask(b.mask, n)?;
    Ok(Blade {
        mask: a.mask ^ b.mask,
        sign: a.sign * b.sign * Sign::from_parity(reorder_parity(a.mask, b.mask)),
    })
}

/// An element of Cl(n) stored as its dense coefficient vector, entry `v`
/// being the coefficient of `e_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<T> {
    dim: u32,
    coeffs: Vec<T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            coeffs: vec![T::ZERO; 1 << dim],
        })
    }

    pub fn scalar(dim: u32, value: T) -> Result<Self> {
        let mut x = Self::zero(dim)?;
        x.coeffs[0] = value;
        Ok(x)
    }

    pub fn one(dim: u32) -> Result<Self> {
        Self::scalar(dim, T::ONE)
    }

    /// `value * e_mask`
    pub fn basis(dim: u32, mask: u32, value: T) -> Result<Self> {
        let mut x = Self::zero(dim)?;
        check_mask(mask, dim)?;
        x.coeffs[mask as usize] = value;
        Ok(x)
    }

    pub fn from_coeffs(dim: u32, coeffs: Vec<T>) -> Result<Self> {
        check_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::Config(format!(
                "expected {} coefficients for n = {dim}, got {}",
                1u64 << dim,
                coeffs.len()
            )));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn get(&self, mask: u32) -> T {
        self.coeffs[mask as usize]
    }

    pub fn set(&mut self, mask: u32, value: T) {
        self.coeffs[mask as usize] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Indices and values of the nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (u32, T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, &c)| (v as u32, c))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Geometric product `self * other`, the bilinear extension of
    /// [`blade_product`]. Zero coefficients are skipped, so sparse operands
    /// are cheap.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = vec![T::ZERO; self.coeffs.len()];
        let rhs: Vec<(u32, T)> = other.terms().collect();
        for (a, ca) in self.terms() {
            for &(b, cb) in &rhs {
                let term = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                let term = Sign::from_parity(reorder_parity(a, b))
                    .apply(term)
                    .ok_or(Error::Overflow)?;
                let slot = &mut out[(a ^ b) as usize];
                *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self {
            dim: self.dim,
            coeffs: out,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> Option<T>) -> Result<Self> {
        self.check_same_dim(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, T::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, T::checked_sub)
    }

    pub fn scale(&self, k: T) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }

    /// The grade involution `φ`: negates every odd-grade coefficient.
    pub fn involution(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                Sign::from_parity(v.count_ones() % 2 == 1)
                    .apply(c)
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }
}

impl Multivector<i64> {
    pub fn to_f64(&self) -> Multivector<f64> {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|&c| c as f64).collect(),
        }
    }
}

impl Multivector<f64> {
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `max_v |self_v - other_v|`; infinite on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `S_a = a_1 e_1 + ... + a_n e_n`; unit weights give `S`.
pub fn build_s<T: Scalar>(weights: &[T]) -> Result<Multivector<T>> {
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let n = u32::try_from(weights.len()).map_err(|_| Error::InvalidDimension {
        n: u32::MAX,
        cap: MAX_DIM,
    })?;
    let mut s = Multivector::zero(n)?;
    for (i, &a) in weights.iter().enumerate() {
        s.set(1 << i, a);
    }
    Ok(s)
}
