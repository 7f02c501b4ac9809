use crate::clifford::{reorder_parity, Multivector, Sign};
use crate::cube::InducedSubgraph;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::spectral::eigen_residual;
use crate::weights::WeightVector;

use super::{check_size, Tolerances};

/// Witness that some vertex of `H` has weighted degree at least `λ`.
///
/// `x` is a `+λ` eigenvector of right multiplication by `S_a`, supported on
/// the vertex set of `H`, scaled to unit max-norm. Comparing the coefficient
/// of `e_{v0}` on both sides of `x S_a = λ x` at the largest coefficient
/// `v0` bounds `λ` by the weighted degree of `v0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub subgraph: InducedSubgraph,
    pub weights: WeightVector,
    pub x: Multivector<f64>,
    pub v0: u32,
    pub lambda: f64,
    pub residual: f64,
    pub v0_weighted_degree: f64,
    pub holds: bool,
}

/// The three sides of `λ|x_{v0}| <= Σ_i a_i |x_{v0(i)}| <= deg_a(v0) |x_{v0}|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityChain {
    pub scaled_peak: f64,
    pub neighbor_sum: f64,
    pub degree_bound: f64,
}

impl InequalityChain {
    pub fn holds(&self, tol: f64) -> bool {
        self.scaled_peak <= self.neighbor_sum + tol && self.neighbor_sum <= self.degree_bound + tol
    }
}

impl Certificate {
    pub fn inequality_chain(&self) -> InequalityChain {
        let peak = self.x.get(self.v0).abs();
        let n = self.subgraph.n();
        let neighbor_sum = (0..n)
            .map(|i| self.weights.as_slice()[i as usize] * self.x.get(self.v0 ^ (1 << i)).abs())
            .sum();
        InequalityChain {
            scaled_peak: self.lambda * peak,
            neighbor_sum,
            degree_bound: self.v0_weighted_degree * peak,
        }
    }

    /// Members of `H` and their coefficients.
    pub fn support(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.subgraph.vertices().map(|v| (v, self.x.get(v)))
    }
}

/// Rows: coefficient of `e_v` in `x S_a − λ x`, for every vertex `v`.
/// Columns: the unknowns `x_w`, `w ∈ W`.
fn constraint_matrix(n: u32, members: &[u32], weights: &WeightVector) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(1 << n, members.len());
    for (col, &w) in members.iter().enumerate() {
        m.set(w as usize, col, -weights.lambda());
        for i in 0..n {
            let a = weights.as_slice()[i as usize];
            if a == 0.0 {
                continue;
            }
            let generator = 1u32 << i;
            let sign = Sign::from_parity(reorder_parity(w, generator));
            m.set((w ^ generator) as usize, col, sign.as_f64() * a);
        }
    }
    m
}

/// Solves for a nonzero `x` supported on `W` with `x S_a = λ x` and reads
/// off the certificate.
///
/// The kernel is nontrivial because `W` has one more element than the
/// `λ`-eigenspace has codimension; failure to find it means the pivot
/// tolerance is misconfigured.
pub fn extract_certificate(
    subgraph: &InducedSubgraph,
    weights: &WeightVector,
    tol: &Tolerances,
) -> Result<Certificate> {
    check_size(subgraph)?;
    let n = subgraph.n();
    if weights.dim() != n {
        return Err(Error::WeightCount {
            expected: n as usize,
            got: weights.dim() as usize,
        });
    }
    weights.require_nonzero()?;

    let members: Vec<u32> = subgraph.vertices().collect();
    let kernel = constraint_matrix(n, &members, weights)
        .first_kernel_vector(tol.pivot)
        .ok_or_else(|| {
            Error::NumericalRank(format!(
                "no kernel vector at pivot tolerance {:e}",
                tol.pivot
            ))
        })?;

    // smallest index among the largest magnitudes
    let (peak_col, peak) = kernel
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, x)| {
            if x.abs() > bv {
                (i, x.abs())
            } else {
                (bi, bv)
            }
        });
    if peak == 0.0 {
        return Err(Error::NumericalRank("kernel vector is zero".into()));
    }
    // division keeps every |x_v| <= 1 = |x_{v0}| exactly
    let sign = match kernel.iter().find(|x| x.abs() / peak > tol.pivot) {
        Some(first) if *first < 0.0 => -1.0,
        _ => 1.0,
    };
    let mut x = Multivector::zero(n)?;
    for (&w, &value) in members.iter().zip(&kernel) {
        x.set(w, sign * (value / peak));
    }
    let v0 = members[peak_col];

    let lambda = weights.lambda();
    let residual = eigen_residual(&x, weights, lambda)?;
    if residual > tol.residual {
        return Err(Error::NumericalRank(format!(
            "eigen-residual {residual:e} exceeds {:e}",
            tol.residual
        )));
    }
    let v0_weighted_degree = subgraph.weighted_degree(v0, weights)?;
    Ok(Certificate {
        subgraph: subgraph.clone(),
        weights: weights.clone(),
        x,
        v0,
        lambda,
        residual,
        v0_weighted_degree,
        holds: v0_weighted_degree >= lambda - tol.degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(n: u32, vertices: &[u32], weights: Vec<f64>) -> Certificate {
        let h = InducedSubgraph::from_vertices(n, vertices.iter().copied()).unwrap();
        let w = WeightVector::new(weights).unwrap();
        extract_certificate(&h, &w, &Tolerances::default()).unwrap()
    }

    #[test]
    fn unweighted_n2_matches_hand_solution() {
        // x ∝ √2 + e1 + e2
        let c = cert(2, &[0, 1, 2], vec![1.0, 1.0]);
        let r = 0.5f64.sqrt();
        assert_eq!(c.v0, 0);
        assert!((c.x.get(0) - 1.0).abs() <= 1e-9);
        assert!((c.x.get(1) - r).abs() <= 1e-9);
        assert!((c.x.get(2) - r).abs() <= 1e-9);
        assert_eq!(c.x.get(3), 0.0);
        assert_eq!(c.v0_weighted_degree, 2.0);
        assert!((c.lambda - 2f64.sqrt()).abs() <= 1e-15);
        assert!(c.holds);
        assert!(c.residual <= 1e-9);
    }

    #[test]
    fn weighted_n2_matches_hand_solution() {
        // x ∝ 5 + 3e1 + 4e2
        let c = cert(2, &[0, 1, 2], vec![3.0, 4.0]);
        assert_eq!(c.v0, 0);
        assert!((c.x.get(1) - 0.6).abs() <= 1e-9);
        assert!((c.x.get(2) - 0.8).abs() <= 1e-9);
        assert_eq!(c.v0_weighted_degree, 7.0);
        assert_eq!(c.lambda, 5.0);
        assert!(c.holds);
        let chain = c.inequality_chain();
        assert!((chain.scaled_peak - 5.0).abs() <= 1e-9);
        assert!((chain.neighbor_sum - 5.0).abs() <= 1e-9);
        assert!((chain.degree_bound - 7.0).abs() <= 1e-9);
        assert!(chain.holds(1e-9));
    }

    #[test]
    fn whole_q1() {
        let c = cert(1, &[0, 1], vec![1.0]);
        assert!((c.x.get(0) - c.x.get(1)).abs() <= 1e-9);
        assert_eq!(c.x.get(c.v0), 1.0);
        assert_eq!(c.v0_weighted_degree, 1.0);
        assert!(c.holds);
    }

    #[test]
    fn preconditions() {
        let tol = Tolerances::default();
        let h = InducedSubgraph::from_vertices(2, [0, 1]).unwrap();
        assert!(matches!(
            extract_certificate(&h, &WeightVector::unit(2).unwrap(), &tol),
            Err(Error::WrongSubsetSize { .. })
        ));
        let h = InducedSubgraph::from_vertices(2, [0, 1, 3]).unwrap();
        assert_eq!(
            extract_certificate(&h, &WeightVector::new(vec![0.0, 0.0]).unwrap(), &tol),
            Err(Error::ZeroForm)
        );
    }

    #[test]
    fn certificate_invariants_on_all_n3_subsets() {
        let tol = Tolerances::default();
        let unit = WeightVector::unit(3).unwrap();
        let weighted = WeightVector::new(vec![0.5, 2.0, 1.25]).unwrap();
        for word in 0u64..256 {
            if word.count_ones() != 5 {
                continue;
            }
            let h = InducedSubgraph::from_word(3, word).unwrap();
            for w in [&unit, &weighted] {
                let c = extract_certificate(&h, w, &tol).unwrap();
                assert!(c.holds);
                assert!(c.residual <= 1e-9);
                assert!(c.inequality_chain().holds(1e-9));
                let peak = c.x.get(c.v0).abs();
                assert_eq!(peak, 1.0);
                for v in 0..8 {
                    assert!(c.x.get(v).abs() <= peak);
                    if !h.contains(v) {
                        assert_eq!(c.x.get(v), 0.0);
                    }
                }
            }
        }
    }
}
