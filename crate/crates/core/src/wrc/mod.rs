//! Fractal water-retention curves: the pore-solid fractal (PSF) model and
//! its Tyler-Wheatcraft (TW) and Rieu-Sposito (RS) special cases.
//!
//! Heads `h` are in cm. With `x = h / h_min` and exponent `D_f - 3`:
//!
//! | model | θ(h)                                  |
//! |-------|---------------------------------------|
//! | PSF   | `(θ_s - A) + A·x^(D_f-3)`             |
//! | TW    | `θ_s·x^(D_f-3)`                       |
//! | RS    | `θ_s - 1 + x^(D_f-3)`                 |
//!
//! TW is PSF with `A = θ_s`; RS is PSF with `A = 1`. Parameters for TW and
//! RS store that value of `A`, so the log-log transform applies to all three.

mod data;
mod fit;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use data::{read_retention_csv, read_retention_file};
pub use fit::{fit_bimodal, fit_single, ols, FitResult, LineFit, Regime};

/// Euclidean dimension of the embedding space.
pub const EUCLIDEAN_DIM: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    Psf,
    Tw,
    Rs,
}

/// Parameters of a retention curve.
///
/// `theta_s` is the saturated water content, equal to the total porosity Φ
/// (and to Φ_max for RS).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WrcParams {
    pub model: Model,
    pub theta_s: f64,
    /// `p / (p + s)`; equals `theta_s` for TW and 1 for RS.
    pub a: f64,
    /// Air-entry head, cm.
    pub h_min: f64,
    /// Head of the smallest pore, cm; may be infinite.
    pub h_max: f64,
    pub d_f: f64,
    /// Capillary length, cm, relating pore size and head by `l = alpha / h`.
    pub alpha: f64,
}

impl WrcParams {
    fn build(model: Model, theta_s: f64, a: f64, h_min: f64, d_f: f64) -> Result<Self> {
        let p = WrcParams {
            model,
            theta_s,
            a,
            h_min,
            h_max: f64::INFINITY,
            d_f,
            alpha: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn psf(theta_s: f64, a: f64, h_min: f64, d_f: f64) -> Result<Self> {
        Self::build(Model::Psf, theta_s, a, h_min, d_f)
    }

    /// PSF with `A = p / (p + s)` from pore and solid fractions.
    pub fn psf_from_fractions(theta_s: f64, p: f64, s: f64, h_min: f64, d_f: f64) -> Result<Self> {
        if !(p >= 0.0 && s >= 0.0 && p + s > 0.0) {
            return Err(Error::domain(
                "pore and solid fractions must be non-negative, not both zero",
            ));
        }
        Self::psf(theta_s, p / (p + s), h_min, d_f)
    }

    pub fn tw(theta_s: f64, h_min: f64, d_f: f64) -> Result<Self> {
        Self::build(Model::Tw, theta_s, theta_s, h_min, d_f)
    }

    pub fn rs(theta_s: f64, h_min: f64, d_f: f64) -> Result<Self> {
        Self::build(Model::Rs, theta_s, 1.0, h_min, d_f)
    }

    pub fn with_h_max(mut self, h_max: f64) -> Result<Self> {
        self.h_max = h_max;
        self.validate()?;
        Ok(self)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        self.alpha = alpha;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::domain(m));
        if !(self.theta_s > 0.0 && self.theta_s <= 1.0) {
            return fail("theta_s must lie in (0, 1]");
        }
        if !(self.a > 0.0 && self.a <= 1.0) {
            return fail("A must lie in (0, 1]");
        }
        if !(self.h_min > 0.0 && self.h_min.is_finite()) {
            return fail("h_min must be positive and finite");
        }
        if self.h_max.is_nan() || self.h_max <= self.h_min {
            return fail("h_max must exceed h_min");
        }
        if !(self.d_f > 0.0 && self.d_f < EUCLIDEAN_DIM) {
            return fail("D_f must lie in (0, 3)");
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return fail("alpha must be positive and finite");
        }
        Ok(())
    }

    /// Whether `theta_s <= A <= 1`, the physically meaningful range of the PSF model.
    pub fn in_physical_range(&self) -> bool {
        self.theta_s <= self.a && self.a <= 1.0
    }

    /// Largest pore size `alpha / h_min`.
    pub fn l_max(&self) -> f64 {
        self.alpha / self.h_min
    }

    fn check_head(&self, h: f64) -> Result<()> {
        if !(h >= self.h_min && h <= self.h_max) {
            return Err(Error::domain(format!(
                "head {h} outside [{}, {}]",
                self.h_min, self.h_max
            )));
        }
        Ok(())
    }
}

/// Water content at a head. `clamped` is set when the model formula went
/// negative and was clamped to zero (RS beyond its validity range).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theta {
    pub value: f64,
    pub clamped: bool,
}

/// All three models share the form `θ_s - A·(1 - x)`; TW fixes `A = θ_s` and
/// RS fixes `A = 1`. Evaluating that form keeps `θ(h_min) = θ_s` exact.
fn effective_a(params: &WrcParams) -> f64 {
    match params.model {
        Model::Psf => params.a,
        Model::Tw => params.theta_s,
        Model::Rs => 1.0,
    }
}

fn scaling(params: &WrcParams, h: f64) -> f64 {
    (h / params.h_min).powf(params.d_f - EUCLIDEAN_DIM)
}

pub fn theta(params: &WrcParams, h: f64) -> Result<Theta> {
    params.check_head(h)?;
    let raw = params.theta_s - effective_a(params) * (1.0 - scaling(params, h));
    Ok(if raw < 0.0 {
        Theta {
            value: 0.0,
            clamped: true,
        }
    } else {
        Theta {
            value: raw,
            clamped: false,
        }
    })
}

/// Cumulative porosity `[Φ <= l]` of pores no larger than `l`.
///
/// Defined for TW and RS. Through `l = alpha / h` it equals [`theta`].
pub fn partial_porosity(params: &WrcParams, l: f64) -> Result<f64> {
    let l_max = params.l_max();
    if !(l > 0.0 && l <= l_max) {
        return Err(Error::domain(format!("pore size {l} outside (0, {l_max}]")));
    }
    if params.model == Model::Psf {
        return Err(Error::domain(
            "partial porosity is defined for the TW and RS models",
        ));
    }
    let x = (l / l_max).powf(EUCLIDEAN_DIM - params.d_f);
    Ok(params.theta_s - effective_a(params) * (1.0 - x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reduction {
    Tw,
    Rs,
    General,
}

const REDUCTION_TOL: f64 = 1e-12;

/// Which special case a PSF parameter set reduces to.
pub fn model_reduction(params: &WrcParams) -> Reduction {
    if (params.a - params.theta_s).abs() <= REDUCTION_TOL {
        Reduction::Tw
    } else if (params.a - 1.0).abs() <= REDUCTION_TOL {
        Reduction::Rs
    } else {
        Reduction::General
    }
}

/// The TW or RS parameter set equivalent to `params`, if it reduces.
pub fn reduced_params(params: &WrcParams) -> Option<WrcParams> {
    let model = match model_reduction(params) {
        Reduction::Tw => Model::Tw,
        Reduction::Rs => Model::Rs,
        Reduction::General => return None,
    };
    let a = if model == Model::Tw {
        params.theta_s
    } else {
        1.0
    };
    Some(WrcParams {
        model,
        a,
        ..*params
    })
}

/// Largest `|theta_x(h) - theta_y(h)|` over the given heads.
pub fn max_pointwise_difference(x: &WrcParams, y: &WrcParams, heads: &[f64]) -> Result<f64> {
    heads.iter().try_fold(0.0f64, |m, &h| {
        Ok(m.max((theta(x, h)?.value - theta(y, h)?.value).abs()))
    })
}

/// `steps` heads spaced evenly in log scale from `lo` to `hi` inclusive.
pub fn head_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || steps == 0 || (steps == 1 && hi != lo) {
        return Err(Error::domain(
            "head grid needs 0 < lo <= hi and at least one step",
        ));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.log10(), hi.log10());
    let mut out: Vec<f64> = (0..steps)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (steps - 1) as f64))
        .collect();
    out[0] = lo;
    out[steps - 1] = hi;
    Ok(out)
}

/// A measured (head, water content) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetentionPoint {
    pub h: f64,
    pub theta: f64,
}

/// `(log10(h_min/h), log10((θ + A - θ_s)/A))` per point. Model data lie on
/// the line `y = (3 - D_f)·x`.
pub fn loglog_transform(params: &WrcParams, points: &[RetentionPoint]) -> Result<Vec<(f64, f64)>> {
    for p in points {
        params.check_head(p.h)?;
    }
    let args: Vec<f64> = points
        .iter()
        .map(|p| 1.0 - (params.theta_s - p.theta) / params.a)
        .collect();
    let bad: Vec<usize> = args
        .iter()
        .enumerate()
        .filter(|(_, &v)| v.is_nan() || v <= 0.0)
        .map(|(i, _)| i)
        .collect();
    if !bad.is_empty() {
        return Err(Error::Transform { points: bad });
    }
    Ok(points
        .iter()
        .zip(args)
        .map(|(p, v)| ((params.h_min / p.h).log10(), v.log10()))
        .collect())
}
