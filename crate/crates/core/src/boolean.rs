//! Sensitivity and real polynomial degree of Boolean functions, and a
//! brute-force check of `s(f)² >= deg(f)`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::check_dim;
use crate::cube::parse_hex_words;
use crate::error::{Error, Result};
use crate::parallel::map_chunks;

/// Largest arity enumerated exhaustively (`2^(2^n)` functions).
pub const EXHAUSTIVE_ARITY_CAP: u32 = 3;
/// Largest arity accepted by the sampling mode.
pub const SAMPLE_ARITY_CAP: u32 = 16;

/// A function `{0,1}^n -> {0,1}` stored as a truth table; bit `v` is `f(v)`
/// and bit `i - 1` of `v` is input `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    table: Vec<u64>,
}

impl BooleanFunction {
    fn blank(n: u32) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            table: vec![0; (1usize << n).div_ceil(64)],
        })
    }

    pub fn from_fn(n: u32, f: impl Fn(u32) -> bool) -> Result<Self> {
        let mut g = Self::blank(n)?;
        for v in 0..1u32 << n {
            if f(v) {
                g.table[(v / 64) as usize] |= 1 << (v % 64);
            }
        }
        Ok(g)
    }

    /// Truth table from a hex value (optional `0x`), bit `v` being `f(v)`.
    pub fn from_hex(n: u32, hex: &str) -> Result<Self> {
        let mut g = Self::blank(n)?;
        g.table = parse_hex_words(hex, 1u64 << n)?;
        Ok(g)
    }

    /// Truth table from the low `2^n` bits of `word`, `n <= 6`.
    pub fn from_word(n: u32, word: u64) -> Result<Self> {
        let mut g = Self::blank(n)?;
        if n > 6 || (n < 6 && word >> (1u32 << n) != 0) {
            return Err(Error::TooWide { n });
        }
        g.table[0] = word;
        Ok(g)
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn parity(n: u32) -> Result<Self> {
        Self::from_fn(n, |v| v.count_ones() % 2 == 1)
    }

    pub fn and(n: u32) -> Result<Self> {
        Self::from_fn(n, |v| v == (1 << n) - 1)
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn eval(&self, v: u32) -> bool {
        self.table[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn is_constant(&self) -> bool {
        let first = self.eval(0);
        (0..1u32 << self.n).all(|v| self.eval(v) == first)
    }

    pub fn to_hex(&self) -> String {
        let digits = ((1usize << self.n) / 4).max(1);
        let mut s = String::from("0x");
        for d in (0..digits).rev() {
            let nibble = self.table[d / 16] >> ((d % 16) * 4) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Same function with inputs relabelled: input `i` of the result is wired
    /// to input `perm[i]` of `self` (both 0-based).
    pub fn permute_inputs(&self, perm: &[u32]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n as usize];
        if perm.len() != n as usize
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p as usize], true))
        {
            return Err(Error::Config(format!(
                "not a permutation of 0..{n}: {perm:?}"
            )));
        }
        Self::from_fn(n, |v| {
            let u = (0..n).fold(0u32, |u, i| u | ((v >> i & 1) << perm[i as usize]));
            self.eval(u)
        })
    }

    /// Number of coordinates whose flip changes `f(v)`.
    pub fn local_sensitivity(&self, v: u32) -> u32 {
        let fv = self.eval(v);
        (0..self.n)
            .filter(|i| self.eval(v ^ (1 << i)) != fv)
            .count() as u32
    }

    /// `s(f)`: the maximum local sensitivity.
    pub fn sensitivity(&self) -> u32 {
        (0..1u32 << self.n)
            .map(|v| self.local_sensitivity(v))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients `c_S` of the unique multilinear polynomial
    /// `Σ_S c_S Π_{i∈S} x_i` agreeing with `f`, indexed by the mask of `S`.
    pub fn multilinear_coefficients(&self) -> Vec<i64> {
        let mut c: Vec<i64> = (0..1u32 << self.n).map(|v| self.eval(v) as i64).collect();
        mobius(&mut c);
        c
    }

    /// Real degree of `f` as a multilinear polynomial.
    ///
    /// The coefficients are re-evaluated on every input as a self-check; a
    /// mismatch would mean broken integer arithmetic and panics.
    pub fn polynomial_degree(&self) -> u32 {
        let coeffs = self.multilinear_coefficients();
        let values = evaluate_multilinear(&coeffs);
        assert!(
            values
                .iter()
                .enumerate()
                .all(|(v, &x)| x == self.eval(v as u32) as i64),
            "multilinear reconstruction does not reproduce the truth table"
        );
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, _)| s.count_ones())
            .max()
            .unwrap_or(0)
    }
}

/// In-place subset Möbius transform: `c[S] = Σ_{T⊆S} (−1)^{|S|−|T|} c[T]`.
pub fn mobius(c: &mut [i64]) {
    let mut bit = 1;
    while bit < c.len() {
        for s in 0..c.len() {
            if s & bit != 0 {
                c[s] -= c[s ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In-place subset zeta transform, the inverse of [`mobius`]:
/// `c[S] = Σ_{T⊆S} c[T]`.
pub fn zeta(c: &mut [i64]) {
    let mut bit = 1;
    while bit < c.len() {
        for s in 0..c.len() {
            if s & bit != 0 {
                c[s] += c[s ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Values of `Σ_S c_S Π_{i∈S} x_i` at every 0/1 input.
pub fn evaluate_multilinear(coeffs: &[i64]) -> Vec<i64> {
    let mut v = coeffs.to_vec();
    zeta(&mut v);
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SensitivityMode {
    Exhaustive,
    Sample,
}

/// Sensitivity and degree of one function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionProfile {
    pub n: u32,
    pub function: String,
    pub s: u32,
    pub deg: u32,
    pub constant: bool,
    pub bound_holds: bool,
}

pub fn profile(f: &BooleanFunction) -> FunctionProfile {
    let s = f.sensitivity();
    let deg = f.polynomial_degree();
    FunctionProfile {
        n: f.arity(),
        function: f.to_hex(),
        s,
        deg,
        constant: f.is_constant(),
        bound_holds: s * s >= deg,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport {
    pub n: u32,
    pub mode: SensitivityMode,
    pub functions_checked: u64,
    pub constant_functions: u64,
    pub violations: u64,
    pub violation_examples: Vec<String>,
    /// Smallest `s(f)² / deg(f)` over non-constant functions.
    pub tightest_ratio: Option<f64>,
    pub tightest_function: Option<String>,
    pub all_hold: bool,
    pub seed: Option<u64>,
    pub elapsed: f64,
}

#[derive(Debug, Default)]
struct BoundTally {
    checked: u64,
    constant: u64,
    violations: Vec<String>,
    violation_count: u64,
    tightest: Option<(u32, u32, String)>,
}

impl BoundTally {
    fn observe(&mut self, f: &BooleanFunction) {
        self.checked += 1;
        if f.is_constant() {
            self.constant += 1;
            return;
        }
        let s = f.sensitivity();
        let deg = f.polynomial_degree();
        if s * s < deg {
            self.violation_count += 1;
            if self.violations.len() < 8 {
                self.violations.push(f.to_hex());
            }
        }
        // compare s²/deg exactly by cross-multiplication
        let tighter = self.tightest.as_ref().is_none_or(|(bs, bd, _)| {
            (s * s) as u64 * (*bd as u64) < (bs * bs) as u64 * deg as u64
        });
        if tighter {
            self.tightest = Some((s, deg, f.to_hex()));
        }
    }

    fn merge(mut self, other: BoundTally) -> BoundTally {
        self.checked += other.checked;
        self.constant += other.constant;
        self.violation_count += other.violation_count;
        let room = 8usize.saturating_sub(self.violations.len());
        self.violations
            .extend(other.violations.into_iter().take(room));
        if let Some((s, d, hex)) = other.tightest {
            let tighter = self.tightest.as_ref().is_none_or(|(bs, bd, _)| {
                (s * s) as u64 * (*bd as u64) < (bs * bs) as u64 * d as u64
            });
            if tighter {
                self.tightest = Some((s, d, hex));
            }
        }
        self
    }
}

const SAMPLE_CHUNK: u64 = 4096;

/// Checks `s(f)² >= deg(f)` over every function of arity `n` (exhaustive,
/// `n <= 3`) or over `samples` uniformly random truth tables.
pub fn check_sensitivity_bound(
    n: u32,
    mode: SensitivityMode,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<SensitivityReport> {
    check_dim(n)?;
    let start = Instant::now();
    let tally = match mode {
        SensitivityMode::Exhaustive => {
            if n > EXHAUSTIVE_ARITY_CAP {
                return Err(Error::ExhaustiveTooLarge {
                    n,
                    cap: EXHAUSTIVE_ARITY_CAP,
                });
            }
            let mut tally = BoundTally::default();
            for word in 0..1u64 << (1u32 << n) {
                tally.observe(&BooleanFunction::from_word(n, word)?);
            }
            tally
        }
        SensitivityMode::Sample => {
            if n > SAMPLE_ARITY_CAP {
                return Err(Error::DimensionCapExceeded {
                    n,
                    cap: SAMPLE_ARITY_CAP,
                });
            }
            let chunks = samples.div_ceil(SAMPLE_CHUNK) as usize;
            let words = (1usize << n).div_ceil(64);
            let tallies = map_chunks(threads, chunks, |chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk as u64);
                let count = SAMPLE_CHUNK.min(samples - chunk as u64 * SAMPLE_CHUNK);
                let mut tally = BoundTally::default();
                let mut f = BooleanFunction {
                    n,
                    table: vec![0; words],
                };
                for _ in 0..count {
                    for w in f.table.iter_mut() {
                        *w = rng.gen();
                    }
                    if n < 6 {
                        f.table[0] &= (1u64 << (1u32 << n)) - 1;
                    }
                    tally.observe(&f);
                }
                tally
            })?;
            tallies
                .into_iter()
                .fold(BoundTally::default(), BoundTally::merge)
        }
    };
    Ok(SensitivityReport {
        n,
        mode,
        functions_checked: tally.checked,
        constant_functions: tally.constant,
        violations: tally.violation_count,
        violation_examples: tally.violations,
        tightest_ratio: tally
            .tightest
            .as_ref()
            .map(|(s, d, _)| (s * s) as f64 / *d as f64),
        tightest_function: tally.tightest.map(|(_, _, hex)| hex),
        all_hold: tally.violation_count == 0,
        seed: (mode == SensitivityMode::Sample).then_some(seed),
        elapsed: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct evaluation of `c_S = Σ_{T⊆S} (−1)^{|S|−|T|} f(T)`.
    fn brute_coefficients(f: &BooleanFunction) -> Vec<i64> {
        let size = 1u32 << f.arity();
        (0..size)
            .map(|s| {
                (0..size)
                    .filter(|t| t & !s == 0)
                    .map(|t| {
                        let sign = if (s.count_ones() - t.count_ones()) % 2 == 0 {
                            1
                        } else {
                            -1
                        };
                        sign * f.eval(t) as i64
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn constants() {
        for n in 1..=4 {
            for value in [false, true] {
                let f = BooleanFunction::constant(n, value).unwrap();
                assert_eq!(f.sensitivity(), 0);
                assert_eq!(f.polynomial_degree(), 0);
                assert!(f.is_constant());
            }
        }
    }

    #[test]
    fn parity() {
        let f = BooleanFunction::parity(3).unwrap();
        assert_eq!(f.sensitivity(), 3);
        for n in 1..=6 {
            let f = BooleanFunction::parity(n).unwrap();
            assert_eq!(f.polynomial_degree(), n);
            let top = f.multilinear_coefficients()[(1 << n) - 1];
            assert_eq!(top.abs(), 1 << (n - 1));
        }
    }

    #[test]
    fn and2() {
        let f = BooleanFunction::and(2).unwrap();
        assert_eq!(f, BooleanFunction::from_hex(2, "0x8").unwrap());
        assert_eq!(f.sensitivity(), 2);
        assert_eq!(f.polynomial_degree(), 2);
        assert_eq!(f.multilinear_coefficients(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn transform_matches_brute_force() {
        for word in 0..256u64 {
            let f = BooleanFunction::from_word(3, word).unwrap();
            assert_eq!(f.multilinear_coefficients(), brute_coefficients(&f));
        }
    }

    #[test]
    fn hex_parsing() {
        let f = BooleanFunction::from_hex(3, "0xe8").unwrap();
        assert_eq!(f.to_hex(), "0xe8");
        assert!(BooleanFunction::from_hex(2, "0x10").is_err());
        assert!(BooleanFunction::from_hex(2, "zz").is_err());
        assert!(BooleanFunction::from_word(2, 0x10).is_err());
    }

    #[test]
    fn permutation_validation() {
        let f = BooleanFunction::and(3).unwrap();
        assert!(f.permute_inputs(&[0, 0, 1]).is_err());
        assert!(f.permute_inputs(&[0, 1]).is_err());
        assert_eq!(f.permute_inputs(&[2, 0, 1]).unwrap(), f);
        let dictator = BooleanFunction::from_fn(3, |v| v & 1 == 1).unwrap();
        let moved = dictator.permute_inputs(&[2, 0, 1]).unwrap();
        assert_eq!(moved, BooleanFunction::from_fn(3, |v| v & 2 == 2).unwrap());
    }

    #[test]
    fn exhaustive_small_arities() {
        let r2 = check_sensitivity_bound(2, SensitivityMode::Exhaustive, 0, 0, 1).unwrap();
        assert_eq!(r2.functions_checked, 16);
        assert_eq!(r2.constant_functions, 2);
        assert_eq!(r2.violations, 0);
        let r3 = check_sensitivity_bound(3, SensitivityMode::Exhaustive, 0, 0, 1).unwrap();
        assert_eq!(r3.functions_checked, 256);
        assert_eq!(r3.violations, 0);
        assert!(r3.all_hold);
        assert!(r3.tightest_ratio.unwrap() >= 1.0);
        assert_eq!(r3.seed, None);
    }

    #[test]
    fn exhaustive_cap() {
        assert!(matches!(
            check_sensitivity_bound(4, SensitivityMode::Exhaustive, 0, 0, 1),
            Err(Error::ExhaustiveTooLarge { .. })
        ));
    }

    #[test]
    fn sampled_is_deterministic() {
        let a = check_sensitivity_bound(5, SensitivityMode::Sample, 5000, 9, 1).unwrap();
        let b = check_sensitivity_bound(5, SensitivityMode::Sample, 5000, 9, 4).unwrap();
        assert_eq!(
            SensitivityReport {
                elapsed: 0.0,
                ..a.clone()
            },
            SensitivityReport { elapsed: 0.0, ..b }
        );
        assert_eq!(a.functions_checked, 5000);
        assert!(a.all_hold);
    }
}
