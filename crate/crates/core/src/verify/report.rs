use std::collections::BTreeMap;

use serde::Serialize;

/// Width of a slack histogram bin.
pub const SLACK_BIN_WIDTH: f64 = 0.25;

/// Cap on the number of violating vertex sets recorded in a report.
pub(crate) const MAX_EXAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample,
}

/// Where the weights of each instance come from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum WeightSource {
    Fixed(Vec<f64>),
    /// Independent weights `k / 100`, `k` uniform in `0..=100 * max`.
    Random {
        random_max: u32,
    },
}

/// Minimum of `Δ_a(H)` over the checked instances: an integer for unit
/// weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum DegreeValue {
    Count(u32),
    Weighted(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlackBin {
    pub lower: f64,
    pub upper: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub weights: WeightSource,
    pub mode: Mode,
    pub instances_checked: u64,
    pub failures: u64,
    pub failure_examples: Vec<String>,
    pub min_max_degree: Option<DegreeValue>,
    pub min_slack: Option<f64>,
    pub slack_histogram: Vec<SlackBin>,
    pub certificates_checked: u64,
    pub certificate_failures: u64,
    pub all_hold: bool,
    pub seed: Option<u64>,
    /// Wall-clock seconds; the only field that varies between identical runs.
    pub elapsed: f64,
}

/// Per-chunk accumulator; merged in chunk order.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tally {
    pub instances: u64,
    pub failures: u64,
    pub examples: Vec<String>,
    pub min_degree: Option<f64>,
    pub min_slack: Option<f64>,
    pub bins: BTreeMap<i64, u64>,
    pub certificates: u64,
    pub certificate_failures: u64,
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Tally {
    pub fn record(&mut self, max_degree: f64, slack: f64, count: u64) {
        if count == 0 {
            return;
        }
        self.instances += count;
        self.min_degree = min_opt(self.min_degree, Some(max_degree));
        self.min_slack = min_opt(self.min_slack, Some(slack));
        *self
            .bins
            .entry((slack / SLACK_BIN_WIDTH).floor() as i64)
            .or_default() += count;
    }

    pub fn fail(&mut self, example: impl FnOnce() -> String) {
        self.failures += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(example());
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failures += other.failures;
        let room = MAX_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self.min_degree = min_opt(self.min_degree, other.min_degree);
        self.min_slack = min_opt(self.min_slack, other.min_slack);
        for (k, v) in other.bins {
            *self.bins.entry(k).or_default() += v;
        }
        self.certificates += other.certificates;
        self.certificate_failures += other.certificate_failures;
        self
    }

    pub fn into_report(
        self,
        n: u32,
        weights: WeightSource,
        mode: Mode,
        integral_degrees: bool,
        seed: Option<u64>,
        elapsed: f64,
    ) -> VerifyReport {
        let min_max_degree = self.min_degree.map(|d| {
            if integral_degrees {
                DegreeValue::Count(d as u32)
            } else {
                DegreeValue::Weighted(d)
            }
        });
        VerifyReport {
            n,
            weights,
            mode,
            instances_checked: self.instances,
            failures: self.failures,
            failure_examples: self.examples,
            min_max_degree,
            min_slack: self.min_slack,
            slack_histogram: self
                .bins
                .into_iter()
                .map(|(k, count)| SlackBin {
                    lower: k as f64 * SLACK_BIN_WIDTH,
                    upper: (k + 1) as f64 * SLACK_BIN_WIDTH,
                    count,
                })
                .collect(),
            certificates_checked: self.certificates,
            certificate_failures: self.certificate_failures,
            all_hold: self.failures == 0 && self.certificate_failures == 0,
            seed,
            elapsed,
        }
    }
}
