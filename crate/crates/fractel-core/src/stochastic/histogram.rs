//! Binned density estimates with boundary atoms tracked separately.

use crate::error::{CoreError, Result};
use serde::Serialize;

/// Histogram of real draws. Bin width defaults to Freedman-Diaconis; point
/// masses (telegraph boundary atoms) are accumulated outside the bins so
/// they never corrupt the absolutely continuous part.
#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// total number of draws including atoms
    pub n: usize,
    pub atom_positive: u64,
    pub atom_negative: u64,
}

impl Histogram {
    /// Build from continuous draws plus counts of boundary-atom draws.
    pub fn from_draws(draws: &[f64], atom_positive: u64, atom_negative: u64) -> Result<Histogram> {
        if draws.len() < 16 {
            return Err(CoreError::InvalidConfig(
                "histogram needs at least 16 continuous draws".to_string(),
            ));
        }
        let mut sorted = draws.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = sorted.len();
        let q1 = sorted[n / 4];
        let q3 = sorted[(3 * n) / 4];
        let iqr = (q3 - q1).max(1e-12);
        let width = 2.0 * iqr / (n as f64).cbrt();
        let (lo, hi) = (sorted[0], sorted[n - 1]);
        let bins = (((hi - lo) / width).ceil() as usize).clamp(10, 2000);
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0u64; bins];
        for &x in &sorted {
            let mut idx = ((x - lo) / width).floor() as usize;
            if idx >= bins {
                idx = bins - 1;
            }
            counts[idx] += 1;
        }
        Ok(Histogram {
            edges,
            counts,
            n: n + atom_positive as usize + atom_negative as usize,
            atom_positive,
            atom_negative,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }

    /// Density estimate of bin i (relative to the full draw count, so the
    /// histogram plus atom masses integrates to one).
    pub fn density(&self, i: usize) -> f64 {
        let w = self.edges[i + 1] - self.edges[i];
        self.counts[i] as f64 / (self.n as f64 * w)
    }

    /// Standard error of the bin-i density estimate.
    pub fn density_stderr(&self, i: usize) -> f64 {
        let w = self.edges[i + 1] - self.edges[i];
        let p = self.counts[i] as f64 / self.n as f64;
        (p * (1.0 - p) / self.n as f64).sqrt() / w
    }

    /// Fraction of draws that were boundary atoms.
    pub fn atom_fraction(&self) -> f64 {
        (self.atom_positive + self.atom_negative) as f64 / self.n as f64
    }
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical law of
/// `draws` and the CDF values `cdf_at_sorted` evaluated at the draws sorted
/// ascending.
pub fn ks_distance(sorted_draws: &[f64], cdf_at_sorted: &[f64]) -> f64 {
    debug_assert_eq!(sorted_draws.len(), cdf_at_sorted.len());
    let n = sorted_draws.len() as f64;
    let mut d = 0.0f64;
    for (i, &f) in cdf_at_sorted.iter().enumerate() {
        let lo = i as f64 / n;
        let hi = (i as f64 + 1.0) / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

/// Asymptotic Kolmogorov critical value at level 1% for sample size n.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.62762 / (n as f64).sqrt()
}
