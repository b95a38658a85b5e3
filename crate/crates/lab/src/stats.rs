//! Trend tests, goodness of fit, regression and interval helpers.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal, StudentsT};

use crate::error::{LabError, Result};

pub const Z95: f64 = 1.959_963_984_540_054;

/// Kendall's S between a schedule `x` and observations `y`, with the
/// tie-corrected null variance. Observations sharing an `x` value are tied
/// in `x`, so one schedule point can carry many samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MannKendall {
    pub s: f64,
    pub var_s: f64,
    pub z: f64,
    /// One-sided p-value against a decreasing trend.
    pub p_decreasing: f64,
    /// One-sided p-value against an increasing trend.
    pub p_increasing: f64,
    pub samples: usize,
}

fn tie_sums(sorted: &[f64]) -> (f64, f64, f64) {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        a += t * (t - 1.0) * (2.0 * t + 5.0);
        b += t * (t - 1.0) * (t - 2.0);
        c += t * (t - 1.0);
        i = j;
    }
    (a, b, c)
}

/// Concordant minus discordant pairs between two sorted samples.
fn cross_sign(lo: &[f64], hi: &[f64]) -> f64 {
    // for each y in hi: #lo below y minus #lo above y
    hi.iter()
        .map(|&y| {
            let below = lo.partition_point(|&v| v < y);
            let above = lo.len() - lo.partition_point(|&v| v <= y);
            below as f64 - above as f64
        })
        .sum()
}

pub fn mann_kendall(x: &[f64], y: &[f64]) -> Result<MannKendall> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(LabError::Config("Mann-Kendall needs at least three paired values".into()));
    }
    let n = x.len();
    let mut xs: Vec<f64> = x.to_vec();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let groups: Vec<Vec<f64>> = xs
        .iter()
        .map(|&k| {
            let mut g: Vec<f64> = x.iter().zip(y).filter(|(a, _)| **a == k).map(|(_, b)| *b).collect();
            g.sort_by(f64::total_cmp);
            g
        })
        .collect();
    let mut s = 0.0;
    for a in 0..groups.len() {
        for b in a + 1..groups.len() {
            s += cross_sign(&groups[a], &groups[b]);
        }
    }
    let mut xsorted = x.to_vec();
    xsorted.sort_by(f64::total_cmp);
    let mut ysorted = y.to_vec();
    ysorted.sort_by(f64::total_cmp);
    let (tx1, tx2, tx3) = tie_sums(&xsorted);
    let (ty1, ty2, ty3) = tie_sums(&ysorted);
    let nf = n as f64;
    let var_s = (nf * (nf - 1.0) * (2.0 * nf + 5.0) - tx1 - ty1) / 18.0
        + tx2 * ty2 / (9.0 * nf * (nf - 1.0) * (nf - 2.0))
        + tx3 * ty3 / (2.0 * nf * (nf - 1.0));
    let z = if var_s <= 0.0 {
        0.0
    } else if s > 0.0 {
        (s - 1.0) / var_s.sqrt()
    } else if s < 0.0 {
        (s + 1.0) / var_s.sqrt()
    } else {
        0.0
    };
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(MannKendall { s, var_s, z, p_decreasing: normal.cdf(z), p_increasing: 1.0 - normal.cdf(z), samples: n })
}

/// Pearson chi-square goodness of fit; returns `(statistic, p)`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<(f64, f64)> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(LabError::Config("chi-square needs at least two matching cells".into()));
    }
    let stat: f64 = observed.iter().zip(expected).map(|(&o, &e)| (o as f64 - e).powi(2) / e).sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).expect("positive degrees of freedom");
    Ok((stat, 1.0 - dist.cdf(stat)))
}

/// Least-squares line with a 95% interval for the slope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slope {
    pub name: String,
    pub slope: f64,
    pub intercept: f64,
    pub std_err: f64,
    pub ci: (f64, f64),
    pub samples: usize,
}

impl Slope {
    pub fn positive(&self) -> bool {
        self.ci.0 > 0.0
    }
}

pub fn ols(name: &str, x: &[f64], y: &[f64]) -> Result<Slope> {
    let n = x.len();
    if n != y.len() || n < 3 {
        return Err(LabError::Config("regression needs at least three points".into()));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LabError::Config("regression needs two distinct x values".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let std_err = (rss / (nf - 2.0) / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, nf - 2.0).expect("positive degrees of freedom").inverse_cdf(0.975);
    Ok(Slope {
        name: name.to_string(),
        slope,
        intercept,
        std_err,
        ci: (slope - t * std_err, slope + t * std_err),
        samples: n,
    })
}

/// Normal-approximation 95% half-width of a proportion.
pub fn proportion_half_width(p: f64, n: usize) -> f64 {
    Z95 * (p * (1.0 - p) / n as f64).sqrt()
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Unbiased sample variance.
pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0)
}

/// 95% half-width for the variance from the fourth central moment.
pub fn variance_half_width(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let m = mean(v);
    let m2 = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let m4 = v.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    Z95 * ((m4 - m2 * m2).max(0.0) / n).sqrt()
}

/// Empirical quantile (lower order statistic) with a distribution-free 95%
/// band from binomial order-statistic ranks; returns `(value, half_width)`.
pub fn quantile_with_band(v: &[f64], q: f64) -> (f64, f64) {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let at = |r: f64| s[(r.floor().max(0.0) as usize).min(n - 1)];
    let centre = q * n as f64;
    let spread = Z95 * (n as f64 * q * (1.0 - q)).sqrt();
    let value = at((centre - 1.0).ceil());
    (value, (at(centre + spread) - at(centre - spread - 1.0)) / 2.0)
}

/// Largest fraction of values in an open unit window `(x, x + 1)`.
pub fn max_unit_window(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let mut best = 0;
    let mut j = 0;
    for i in 0..s.len() {
        if j < i {
            j = i;
        }
        while j < s.len() && s[j] < s[i] + 1.0 {
            j += 1;
        }
        best = best.max(j - i);
    }
    best as f64 / s.len() as f64
}
