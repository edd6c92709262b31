//! Porosity and density of the Menger sponge: the classical iteration
//! count, Turcotte's construction from unit cubes, and the grossone
//! formulation with a starting level `k`.

use std::cmp::Ordering;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{menger_geometry, SpongeQuery};
use crate::grossone::GrossValue;
use crate::hp::{self, Fixed};
use crate::rational::{int, pow_int, ratio, BigRational};

/// Working precision of [`turcotte_scaling`] when none is given.
pub const DEFAULT_DIGITS: u32 = 34;

/// Void fraction of a sponge together with its solid and void volumes
/// (total volume normalized to 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PorosityResult {
    pub phi: GrossValue,
    pub solid_volume: GrossValue,
    pub void_volume: GrossValue,
}

impl PorosityResult {
    /// `phi = void / (void + solid)` with `void = 1 - solid`.
    fn from_solid(solid: GrossValue) -> Self {
        let void = GrossValue::one().sub(&solid);
        let total = void.add(&solid);
        let phi = void.div(&total).expect("total volume is exactly one");
        PorosityResult {
            phi,
            solid_volume: solid,
            void_volume: void,
        }
    }
}

/// Porosity after `n` classical iterations (`n = 0` is the solid cube).
pub fn porosity_classical(n: u64) -> Result<PorosityResult> {
    let e = i64::try_from(n).map_err(|_| Error::domain("iteration count too large"))?;
    let solid = pow_int(&ratio(20, 27), e)?;
    Ok(PorosityResult::from_solid(GrossValue::rational(solid)))
}

/// Porosity `1 - (20/27)^(n+k-2)` for a finite or gross iteration index.
pub fn porosity_grossone(q: &SpongeQuery) -> PorosityResult {
    PorosityResult::from_solid(menger_geometry(q).volume)
}

/// Sponge built from zero-order cubes of size `r0` and density `rho0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurcotteSponge {
    r0: BigRational,
    rho0: BigRational,
}

impl TurcotteSponge {
    pub fn new(r0: BigRational, rho0: BigRational) -> Result<Self> {
        if !r0.is_positive() || !rho0.is_positive() {
            return Err(Error::domain("r0 and rho0 must be positive"));
        }
        Ok(TurcotteSponge { r0, rho0 })
    }

    pub fn unit() -> Self {
        TurcotteSponge {
            r0: BigRational::one(),
            rho0: BigRational::one(),
        }
    }

    pub fn r0(&self) -> &BigRational {
        &self.r0
    }

    pub fn rho0(&self) -> &BigRational {
        &self.rho0
    }

    /// `r_n = 3^n · r0`.
    pub fn size(&self, n: u64) -> Result<BigRational> {
        let e = i64::try_from(n).map_err(|_| Error::domain("order too large"))?;
        Ok(pow_int(&int(3), e)? * &self.r0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TurcotteOrder {
    pub n: u64,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub size: BigRational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub phi: BigRational,
    /// `rho_n / rho0`.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub density_ratio: BigRational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub density: BigRational,
}

/// Exact porosity and density of the `n`-th order sponge.
pub fn turcotte_order(n: u64, sponge: &TurcotteSponge) -> Result<TurcotteOrder> {
    let e = i64::try_from(n).map_err(|_| Error::domain("order too large"))?;
    let density_ratio = pow_int(&ratio(20, 27), e)?;
    Ok(TurcotteOrder {
        n,
        size: sponge.size(n)?,
        phi: BigRational::one() - &density_ratio,
        density: &density_ratio * &sponge.rho0,
        density_ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurcotteScaling {
    pub phi: Fixed,
    pub density_ratio: Fixed,
    pub digits: u32,
}

impl TurcotteScaling {
    pub fn phi_decimal(&self) -> String {
        self.phi.to_decimal(self.digits)
    }

    pub fn density_ratio_decimal(&self) -> String {
        self.density_ratio.to_decimal(self.digits)
    }
}

/// Power-law porosity `1 - (r0/r)^(3-D_f)` and density ratio `(r0/r)^(3-D_f)`,
/// evaluated with `digits` decimal digits of working precision.
pub fn turcotte_scaling(
    r0: &BigRational,
    r: &BigRational,
    d_f: &Fixed,
    digits: u32,
) -> Result<TurcotteScaling> {
    if !r0.is_positive() || r < r0 {
        return Err(Error::domain("require 0 < r0 <= r"));
    }
    if d_f.cmp_rational(&int(0)) != Ordering::Greater || d_f.cmp_rational(&int(3)) != Ordering::Less
    {
        return Err(Error::domain("fractal dimension must lie in (0, 3)"));
    }
    let bits = hp::bits_for_digits(digits);
    let w = bits + 32;
    let exponent = Fixed::from_int(3, w).sub(&d_f.with_bits(w));
    let ln_ratio = Fixed::ln_rational(&(r0 / r), w)?;
    let density = exponent.mul(&ln_ratio).exp();
    let phi = Fixed::from_int(1, w).sub(&density);
    Ok(TurcotteScaling {
        phi: phi.with_bits(bits),
        density_ratio: density.with_bits(bits),
        digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fractal_dimension_fixed, Fractal, IterationIndex};
    use crate::grossone::NumClass;
    use crate::parse::parse;

    fn q(k: u64, n: &str) -> SpongeQuery {
        SpongeQuery::new(k, n.parse().unwrap()).unwrap()
    }

    #[test]
    fn classical_values() {
        assert_eq!(porosity_classical(0).unwrap().phi, GrossValue::zero());
        assert_eq!(
            porosity_classical(1).unwrap().phi.as_rational(),
            Some(ratio(7, 27))
        );
        assert_eq!(
            porosity_classical(2).unwrap().phi.as_rational(),
            Some(ratio(329, 729))
        );
    }

    #[test]
    fn grossone_values() {
        assert_eq!(porosity_grossone(&q(1, "1")).phi, GrossValue::zero());
        assert_eq!(
            porosity_grossone(&q(2, "2")).phi.as_rational(),
            Some(ratio(329, 729))
        );
        let at_inf = porosity_grossone(&q(1, "g"));
        assert_eq!(at_inf.phi, parse("1 - (20/27)^(g-1)").unwrap());
        assert_eq!(at_inf.phi.classify(), NumClass::Finite);
        assert!(at_inf.phi < GrossValue::one());
        assert!(at_inf.phi > porosity_grossone(&q(1, "g-1")).phi);
        assert_eq!(at_inf.phi.finite_part(), BigRational::one());
        assert!(at_inf.phi.has_infinitesimal_part());
    }

    #[test]
    fn duality_and_phi_definition() {
        for idx in ["2", "5", "g", "g-3"] {
            let r = porosity_grossone(&q(2, idx));
            assert_eq!(r.phi.add(&r.solid_volume), GrossValue::one());
            assert_eq!(r.phi, r.void_volume);
            assert!(r.phi >= GrossValue::zero() && r.phi < GrossValue::one());
        }
    }

    #[test]
    fn local_window_depends_on_sum() {
        assert_eq!(
            porosity_grossone(&q(1, "g")).phi,
            porosity_grossone(&q(2, "g-1")).phi
        );
        assert_eq!(
            porosity_grossone(&q(3, "5")).phi,
            porosity_grossone(&q(2, "6")).phi
        );
    }

    #[test]
    fn turcotte_orders() {
        let s = TurcotteSponge::unit();
        let o1 = turcotte_order(1, &s).unwrap();
        assert_eq!(
            (o1.phi.clone(), o1.density_ratio.clone()),
            (ratio(7, 27), ratio(20, 27))
        );
        let o2 = turcotte_order(2, &s).unwrap();
        assert_eq!(
            (o2.phi, o2.density_ratio),
            (ratio(329, 729), ratio(400, 729))
        );
        let o0 = turcotte_order(0, &s).unwrap();
        assert_eq!((o0.phi, o0.density_ratio), (int(0), int(1)));
        let s = TurcotteSponge::new(ratio(1, 2), int(3)).unwrap();
        let o2 = turcotte_order(2, &s).unwrap();
        assert_eq!(o2.size, ratio(9, 2));
        assert_eq!(o2.density, ratio(400, 243));
        assert!(TurcotteSponge::new(int(0), int(1)).is_err());
    }

    #[test]
    fn turcotte_scaling_matches_exact_orders() {
        let d = fractal_dimension_fixed(Fractal::Sponge, hp::bits_for_digits(40));
        let nine = turcotte_scaling(&int(1), &int(9), &d, 34).unwrap();
        assert_eq!(&nine.phi_decimal()[..11], "0.451303155");
        let three = turcotte_scaling(&int(1), &int(3), &d, 34).unwrap();
        assert_eq!(&three.phi_decimal()[..11], "0.259259259");
        let one = turcotte_scaling(
            &int(1),
            &int(1),
            &Fixed::from_rational(&ratio(5, 2), 64),
            34,
        )
        .unwrap();
        assert!(one.phi.is_zero());
    }

    #[test]
    fn turcotte_scaling_domain() {
        let d = Fixed::from_rational(&ratio(5, 2), 64);
        assert!(turcotte_scaling(&int(2), &int(1), &d, 34).is_err());
        assert!(turcotte_scaling(&int(0), &int(1), &d, 34).is_err());
        assert!(turcotte_scaling(&int(1), &int(2), &Fixed::from_int(3, 64), 34).is_err());
        assert!(turcotte_scaling(&int(1), &int(2), &Fixed::zero(64), 34).is_err());
    }

    #[test]
    fn bridge_to_classical_indexing() {
        for t in 0..20u64 {
            let g = porosity_grossone(&SpongeQuery::new(1, IterationIndex::Finite(t + 1)).unwrap());
            assert_eq!(g, porosity_classical(t).unwrap());
        }
    }
}
