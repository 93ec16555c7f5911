//! Lightweight empirical randomness smoke tests over generator output.
//!
//! These are sanity gates, not a substitute for an external heavyweight
//! battery. All tests are two-sided: a p-value near zero flags poor fit
//! and a p-value near one flags a suspiciously perfect fit. Summation
//! order is fixed and sequential so results reproduce bit-for-bit.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Two-sided acceptance band on p-values.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PassBand {
    pub low: f64,
    pub high: f64,
}

impl Default for PassBand {
    fn default() -> Self {
        PassBand { low: 0.001, high: 0.999 }
    }
}

impl PassBand {
    fn admits(&self, p: f64) -> bool {
        (self.low..=self.high).contains(&p)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TestResult {
    pub name: String,
    pub statistic: f64,
    pub p_value: f64,
    pub pass: bool,
}

fn chi_square_p_value(statistic: f64, dof: f64) -> f64 {
    let dist = ChiSquared::new(dof).expect("positive dof");
    dist.sf(statistic)
}

fn collect_draws(stream: impl Iterator<Item = f64>, n_draws: u64) -> Result<Vec<f64>> {
    let got: Vec<f64> = stream.take(n_draws as usize).collect();
    if (got.len() as u64) < n_draws {
        return Err(Error::InsufficientDraws { needed: n_draws, got: got.len() as u64 });
    }
    Ok(got)
}

/// Chi-square goodness of fit of binned draws against the uniform law.
pub fn chisq_uniform(
    stream: impl Iterator<Item = f64>,
    n_draws: u64,
    bins: usize,
    band: PassBand,
) -> Result<TestResult> {
    if n_draws < 10 * bins as u64 {
        return Err(Error::InsufficientDraws { needed: 10 * bins as u64, got: n_draws });
    }
    let mut counts = vec![0u64; bins];
    let mut taken = 0u64;
    for u in stream.take(n_draws as usize) {
        let k = ((u * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
        taken += 1;
    }
    if taken < n_draws {
        return Err(Error::InsufficientDraws { needed: n_draws, got: taken });
    }
    let expected = n_draws as f64 / bins as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let p_value = chi_square_p_value(statistic, bins as f64 - 1.0);
    Ok(TestResult {
        name: format!("chisq_uniform(bins={bins})"),
        statistic,
        p_value,
        pass: band.admits(p_value),
    })
}

/// Chi-square over consecutive non-overlapping pairs on a grid×grid lattice.
pub fn serial_pairs(
    stream: impl Iterator<Item = f64>,
    n_draws: u64,
    grid: usize,
    band: PassBand,
) -> Result<TestResult> {
    if n_draws % 2 != 0 {
        return Err(Error::Parse("serial_pairs needs an even draw count".into()));
    }
    let cells = grid * grid;
    if n_draws < 10 * cells as u64 {
        return Err(Error::InsufficientDraws { needed: 10 * cells as u64, got: n_draws });
    }
    let mut counts = vec![0u64; cells];
    let mut taken = 0u64;
    let mut pending: Option<f64> = None;
    for u in stream.take(n_draws as usize) {
        taken += 1;
        match pending.take() {
            None => pending = Some(u),
            Some(x) => {
                let i = ((x * grid as f64) as usize).min(grid - 1);
                let j = ((u * grid as f64) as usize).min(grid - 1);
                counts[i * grid + j] += 1;
            }
        }
    }
    if taken < n_draws {
        return Err(Error::InsufficientDraws { needed: n_draws, got: taken });
    }
    let pairs = n_draws / 2;
    let expected = pairs as f64 / cells as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let p_value = chi_square_p_value(statistic, cells as f64 - 1.0);
    Ok(TestResult {
        name: format!("serial_pairs(grid={grid})"),
        statistic,
        p_value,
        pass: band.admits(p_value),
    })
}

/// Normalized sample autocorrelation at the requested lags.
///
/// The statistic at lag k is r_k·√n, approximately standard normal under
/// independence; the p-value is two-sided. Lag 0 is reported with its
/// trivial correlation of one and is exempt from pass/fail.
pub fn autocorrelation(
    stream: impl Iterator<Item = f64>,
    n_draws: u64,
    lags: &[usize],
    band: PassBand,
) -> Result<Vec<TestResult>> {
    let max_lag = lags.iter().copied().max().unwrap_or(0) as u64;
    if n_draws < 100 * max_lag.max(1) {
        return Err(Error::InsufficientDraws { needed: 100 * max_lag.max(1), got: n_draws });
    }
    let xs = collect_draws(stream, n_draws)?;
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut out = Vec::with_capacity(lags.len());
    for &lag in lags {
        if lag == 0 {
            out.push(TestResult {
                name: "autocorr(lag=0)".into(),
                statistic: 1.0,
                p_value: 1.0,
                pass: true,
            });
            continue;
        }
        let cov: f64 = xs[..xs.len() - lag]
            .iter()
            .zip(&xs[lag..])
            .map(|(a, b)| (a - mean) * (b - mean))
            .sum::<f64>()
            / n;
        let r = cov / var;
        let z = r * n.sqrt();
        let p_value = 2.0 * normal.sf(z.abs());
        out.push(TestResult {
            name: format!("autocorr(lag={lag})"),
            statistic: r,
            p_value,
            pass: band.admits(p_value),
        });
    }
    Ok(out)
}
