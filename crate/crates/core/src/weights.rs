use serde::Serialize;

use crate::clifford::{build_s, check_dim, Multivector};
use crate::error::{Error, Result};

/// Non-negative edge weights `a_1..a_n`, one per cube direction, with the
/// derived norm `m = Σ a_i²` and `λ = √m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    a: Vec<f64>,
    #[serde(skip)]
    m: f64,
    #[serde(skip)]
    lambda: f64,
}

impl WeightVector {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyWeights);
        }
        check_dim(a.len() as u32)?;
        if let Some((index, &value)) = a
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidWeight {
                index: index + 1,
                value,
            });
        }
        let m: f64 = a.iter().map(|x| x * x).sum();
        Ok(Self {
            lambda: m.sqrt(),
            m,
            a,
        })
    }

    /// All weights equal to one.
    pub fn unit(n: u32) -> Result<Self> {
        check_dim(n)?;
        Self::new(vec![1.0; n as usize])
    }

    /// Weights for an `n`-cube; checks the length.
    pub fn for_dim(n: u32, a: Vec<f64>) -> Result<Self> {
        if a.len() != n as usize {
            return Err(Error::WeightCount {
                expected: n as usize,
                got: a.len(),
            });
        }
        Self::new(a)
    }

    pub fn dim(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    /// Weight of direction `i`, 1-based.
    pub fn get(&self, i: u32) -> f64 {
        self.a[(i - 1) as usize]
    }

    /// `Σ a_i²`
    pub fn norm_squared(&self) -> f64 {
        self.m
    }

    /// `√(Σ a_i²)`
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_unit(&self) -> bool {
        self.a.iter().all(|&x| x == 1.0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0.0)
    }

    /// The weights as exact integers, when every weight is integral.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.a
            .iter()
            .map(|&x| (x.fract() == 0.0 && x <= i64::MAX as f64).then_some(x as i64))
            .collect()
    }

    /// Multiplies every weight by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.a.iter().map(|x| x * c).collect())
    }

    /// The element `S_a`.
    pub fn s_element(&self) -> Result<Multivector<f64>> {
        build_s(&self.a)
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.m > 0.0 {
            Ok(())
        } else {
            Err(Error::ZeroForm)
        }
    }
}
