//! Inputs shared by the benchmarks.

use sponge_core::wrc::head_grid;
use sponge_core::{theta, RetentionPoint, WrcParams};

/// Noiseless two-regime retention data: `d_lo` below `h = 10`, `d_hi` from 10 on.
pub fn two_regime_points(
    per_side: usize,
    d_lo: f64,
    d_hi: f64,
) -> (WrcParams, Vec<RetentionPoint>) {
    let lo = WrcParams::psf(0.5, 0.45, 1.0, d_lo).expect("valid parameters");
    let hi = WrcParams::psf(0.5, 0.45, 1.0, d_hi).expect("valid parameters");
    let left = head_grid(1.0, 10.0, per_side + 1).expect("grid");
    let right = head_grid(10.0, 1000.0, per_side).expect("grid");
    let mut pts: Vec<RetentionPoint> = left[..per_side]
        .iter()
        .map(|&h| RetentionPoint {
            h,
            theta: theta(&lo, h).unwrap().value,
        })
        .collect();
    pts.extend(right.iter().map(|&h| RetentionPoint {
        h,
        theta: theta(&hi, h).unwrap().value,
    }));
    (lo, pts)
}
