//! Exact arithmetic with grossone (①) for Menger sponge geometry and
//! porosity, together with fractal water-retention curve models.
//!
//! ```
//! use sponge_core::{parse, porosity_grossone, IterationIndex, NumClass, SpongeQuery};
//!
//! let q = SpongeQuery::new(1, IterationIndex::GrossOffset(0)).unwrap();
//! let r = porosity_grossone(&q);
//! assert_eq!(r.phi, parse("1 - (20/27)^(g-1)").unwrap());
//! assert_eq!(r.phi.classify(), NumClass::Finite);
//! ```

pub mod error;
pub mod geometry;
pub mod grossone;
pub mod hp;
pub mod parse;
pub mod porosity;
pub mod rational;
pub mod wrc;

pub use error::{Error, ParseError, Result};
pub use geometry::{
    carpet_area, carpet_geometry, dimension_estimate_at, fractal_dimension,
    fractal_dimension_fixed, menger_geometry, CarpetGeometry, DimensionEstimate, Fractal,
    IterationIndex, SpongeGeometry, SpongeQuery,
};
pub use grossone::{ExpTerm, GrossLinear, GrossValue, NumClass, PolyTerm, PrimeFactor, RawTerm};
pub use hp::Fixed;
pub use parse::{parse, tokenize, Token, TokenKind};
pub use porosity::{
    porosity_classical, porosity_grossone, turcotte_order, turcotte_scaling, PorosityResult,
    TurcotteOrder, TurcotteScaling, TurcotteSponge,
};
pub use rational::BigRational;
pub use wrc::{
    fit_bimodal, fit_single, loglog_transform, model_reduction, partial_porosity, theta, FitResult,
    Model, Reduction, Regime, RetentionPoint, Theta, WrcParams,
};
