//! Replication statistics: Student-t intervals and t-tests.

use serde::Serialize;

use crate::error::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub half_width: f64,
    pub alpha: f64,
    pub n: usize,
}

impl ConfidenceInterval {
    pub fn lower(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.half_width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TTestResult {
    pub statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
    pub significant: bool,
    /// Set when the samples had zero variance and the result is exact rather
    /// than drawn from the t distribution.
    pub zero_variance: bool,
}

/// Mean, unbiased variance and count of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub mean: f64,
    pub variance: f64,
    pub n: usize,
}

impl SampleSummary {
    pub fn of(samples: &[f64]) -> Result<Self, StatsError> {
        let n = samples.len();
        if n < 2 {
            return Err(StatsError::InsufficientData(n));
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
        Ok(SampleSummary {
            mean,
            variance: ss / (n - 1) as f64,
            n,
        })
    }

    pub fn sd(&self) -> f64 {
        self.variance.sqrt()
    }
}

fn check_alpha(alpha: f64) -> Result<(), StatsError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(StatsError::Domain(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

pub fn mean_ci(samples: &[f64], alpha: f64) -> Result<ConfidenceInterval, StatsError> {
    check_alpha(alpha)?;
    let s = SampleSummary::of(samples)?;
    let t = t_quantile(1.0 - alpha / 2.0, (s.n - 1) as f64)?;
    Ok(ConfidenceInterval {
        mean: s.mean,
        half_width: t * s.sd() / (s.n as f64).sqrt(),
        alpha,
        n: s.n,
    })
}

/// Two-sided Welch test with Welch–Satterthwaite degrees of freedom.
pub fn welch_t(a: &[f64], b: &[f64], alpha: f64) -> Result<TTestResult, StatsError> {
    welch_t_summary(SampleSummary::of(a)?, SampleSummary::of(b)?, alpha)
}

pub fn welch_t_summary(
    a: SampleSummary,
    b: SampleSummary,
    alpha: f64,
) -> Result<TTestResult, StatsError> {
    check_alpha(alpha)?;
    for s in [a, b] {
        if s.n < 2 {
            return Err(StatsError::InsufficientData(s.n));
        }
    }
    let va = a.variance / a.n as f64;
    let vb = b.variance / b.n as f64;
    let se2 = va + vb;
    let diff = a.mean - b.mean;
    if se2 <= 0.0 {
        return Ok(degenerate(diff, (a.n + b.n - 2) as f64, alpha));
    }
    let df = se2 * se2 / (va * va / (a.n - 1) as f64 + vb * vb / (b.n - 1) as f64);
    let t = diff / se2.sqrt();
    let p = two_sided_p(t, df);
    Ok(TTestResult {
        statistic: t,
        degrees_of_freedom: df,
        p_value: p,
        significant: p < alpha,
        zero_variance: false,
    })
}

/// One-sample two-sided t test of `diffs` against zero.
pub fn paired_t(diffs: &[f64], alpha: f64) -> Result<TTestResult, StatsError> {
    check_alpha(alpha)?;
    let s = SampleSummary::of(diffs)?;
    let df = (s.n - 1) as f64;
    if s.variance <= 0.0 {
        return Ok(degenerate(s.mean, df, alpha));
    }
    let t = s.mean / (s.sd() / (s.n as f64).sqrt());
    let p = two_sided_p(t, df);
    Ok(TTestResult {
        statistic: t,
        degrees_of_freedom: df,
        p_value: p,
        significant: p < alpha,
        zero_variance: false,
    })
}

fn degenerate(diff: f64, df: f64, alpha: f64) -> TTestResult {
    let (statistic, p) = if diff == 0.0 {
        (0.0, 1.0)
    } else {
        (diff.signum() * f64::INFINITY, 0.0)
    };
    TTestResult {
        statistic,
        degrees_of_freedom: df,
        p_value: p,
        significant: p < alpha,
        zero_variance: true,
    }
}

fn two_sided_p(t: f64, df: f64) -> f64 {
    // P(|T| > |t|) = I_x(df/2, 1/2) with x = df / (df + t^2)
    let x = df / (df + t * t);
    inc_beta(0.5 * df, 0.5, x).clamp(0.0, 1.0)
}

/// Student-t CDF.
pub fn t_cdf(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let tail = 0.5 * inc_beta(0.5 * df, 0.5, df / (df + t * t));
    if t > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Inverse Student-t CDF.
pub fn t_quantile(p: f64, df: f64) -> Result<f64, StatsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(StatsError::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    if df.is_nan() || df <= 0.0 || !df.is_finite() {
        return Err(StatsError::Domain(format!("df must be positive, got {df}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    // Solve in the upper half and reflect.
    let upper = p.max(1.0 - p);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while t_cdf(hi, df) < upper {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if t_cdf(mid, df) < upper {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = 0.5 * (lo + hi);
    Ok(if p > 0.5 { q } else { -q })
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7, n = 9
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Regularized incomplete beta function I_x(a, b).
fn inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}
