//! Least-squares estimation of fractal dimensions from retention data in
//! log-log space, with one or two scaling regimes.

use serde::Serialize;

use super::{loglog_transform, RetentionPoint, WrcParams, EUCLIDEAN_DIM};
use crate::error::{Error, Result};

/// Ordinary least-squares line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub sse: f64,
}

pub fn ols(xy: &[(f64, f64)]) -> Result<LineFit> {
    if xy.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 points, got {}",
            xy.len()
        )));
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx.is_nan() || sxx <= f64::EPSILON * f64::EPSILON * n {
        return Err(Error::Fit("degenerate x variance".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse = xy
        .iter()
        .map(|&(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    Ok(LineFit {
        slope,
        intercept,
        sse,
    })
}

/// One scaling regime: `D_f_hat = 3 - slope` over the given head range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Regime {
    pub d_f: f64,
    pub intercept: f64,
    pub h_range: (f64, f64),
    pub points: usize,
    pub sse: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    /// Ordered by ascending head.
    pub regimes: Vec<Regime>,
    /// Smallest head of the upper regime, for two-regime fits.
    pub breakpoint_h: Option<f64>,
    pub sse: f64,
}

fn sorted_points(points: &[RetentionPoint]) -> Result<Vec<RetentionPoint>> {
    let mut pts = points.to_vec();
    if pts.iter().any(|p| !p.h.is_finite() || !p.theta.is_finite()) {
        return Err(Error::Fit("non-finite retention point".into()));
    }
    pts.sort_by(|a, b| a.h.total_cmp(&b.h));
    if pts.windows(2).any(|w| w[0].h == w[1].h) {
        return Err(Error::Fit("heads must be distinct".into()));
    }
    Ok(pts)
}

fn regime(pts: &[RetentionPoint], xy: &[(f64, f64)]) -> Result<Regime> {
    let line = ols(xy)?;
    Ok(Regime {
        d_f: EUCLIDEAN_DIM - line.slope,
        intercept: line.intercept,
        h_range: (pts[0].h, pts[pts.len() - 1].h),
        points: pts.len(),
        sse: line.sse,
    })
}

/// Single straight-line fit of the log-log scaling.
pub fn fit_single(points: &[RetentionPoint], params: &WrcParams) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let pts = sorted_points(points)?;
    let xy = loglog_transform(params, &pts)?;
    let r = regime(&pts, &xy)?;
    Ok(FitResult {
        sse: r.sse,
        regimes: vec![r],
        breakpoint_h: None,
    })
}

const MIN_SIDE: usize = 3;

/// Relative tolerance under which two candidate splits count as tied.
const TIE_TOL: f64 = 1e-12;

/// Two-regime fit: every split leaving at least three points per side is
/// tried and the smallest total squared error wins. Ties go to the split
/// nearest the median of `x`, then to the lower split.
pub fn fit_bimodal(points: &[RetentionPoint], params: &WrcParams) -> Result<FitResult> {
    if points.len() < 2 * MIN_SIDE {
        return Err(Error::Fit(format!(
            "need at least 6 points, got {}",
            points.len()
        )));
    }
    let pts = sorted_points(points)?;
    let xy = loglog_transform(params, &pts)?;
    let n = xy.len();

    let mut xs: Vec<f64> = xy.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    };
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let sst: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    let tol = TIE_TOL * (1.0 + sst);

    let mut best: Option<(usize, f64, f64)> = None;
    for split in MIN_SIDE..=n - MIN_SIDE {
        let sse = ols(&xy[..split])?.sse + ols(&xy[split..])?.sse;
        let dist = (0.5 * (xy[split - 1].0 + xy[split].0) - median).abs();
        let better = match best {
            None => true,
            Some((_, b_sse, b_dist)) => {
                sse < b_sse - tol || ((sse - b_sse).abs() <= tol && dist < b_dist)
            }
        };
        if better {
            best = Some((split, sse, dist));
        }
    }
    let (split, _, _) = best.expect("at least one split");
    let lower = regime(&pts[..split], &xy[..split])?;
    let upper = regime(&pts[split..], &xy[split..])?;
    Ok(FitResult {
        sse: lower.sse + upper.sse,
        breakpoint_h: Some(pts[split].h),
        regimes: vec![lower, upper],
    })
}
