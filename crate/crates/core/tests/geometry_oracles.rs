use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use sponge_core::{
    carpet_geometry, menger_geometry, porosity_classical, porosity_grossone, BigRational,
    GrossValue, IterationIndex, NumClass, SpongeQuery,
};

/// Direct rational power by repeated multiplication.
fn direct_pow(n: i64, d: i64, e: i64) -> BigRational {
    let base = BigRational::new(BigInt::from(n), BigInt::from(d));
    let mut acc = BigRational::one();
    for _ in 0..e.abs() {
        acc *= &base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn queries() -> Vec<SpongeQuery> {
    let mut out = Vec::new();
    for k in 1..=6u64 {
        for n in k..=12 {
            out.push(SpongeQuery::new(k, IterationIndex::Finite(n)).unwrap());
        }
        for m in 0..=5 {
            out.push(SpongeQuery::new(k, IterationIndex::GrossOffset(m)).unwrap());
        }
    }
    out
}

#[test]
fn volume_and_area_identities() {
    for q in queries() {
        let s = menger_geometry(&q);
        let cube = s.side.pow(&BigRational::from_integer(3.into())).unwrap();
        assert_eq!(cube.mul(&s.count).unwrap(), s.volume, "{q:?}");
        let c = carpet_geometry(&q);
        let square = c.side.pow(&BigRational::from_integer(2.into())).unwrap();
        assert_eq!(square.mul(&c.count).unwrap(), c.area, "{q:?}");
        for v in [&s.count, &s.side, &s.volume, &c.area] {
            assert!(*v > GrossValue::zero());
        }
    }
}

#[test]
fn step_ratios() {
    let vol_ratio = GrossValue::rational(BigRational::new(20.into(), 27.into()));
    let area_ratio = GrossValue::rational(BigRational::new(8.into(), 9.into()));
    for q in queries() {
        let Some(next) = q.succ() else { continue };
        let (v0, v1) = (menger_geometry(&q).volume, menger_geometry(&next).volume);
        assert_eq!(v1.mul(&v0.recip().unwrap()).unwrap(), vol_ratio);
        assert!(v1 < v0);
        let (a0, a1) = (carpet_geometry(&q).area, carpet_geometry(&next).area);
        assert_eq!(a1.div(&a0).unwrap(), area_ratio);
    }
}

#[test]
fn volume_at_grossone_is_positive_infinitesimal() {
    let q = SpongeQuery::new(1, IterationIndex::GrossOffset(0)).unwrap();
    let v = menger_geometry(&q).volume;
    assert_eq!(v.classify(), NumClass::ExponentiallyInfinitesimal);
    assert!(v > GrossValue::zero());
    // Smaller than any positive rational we try.
    for d in [10i64, 1_000_000, 1_000_000_000_000] {
        assert!(v < GrossValue::rational(BigRational::new(1.into(), d.into())));
    }
}

proptest! {
    #[test]
    fn finite_instantiation(k in 1u64..=6, m in 0u64..=5, t in 1u64..=30) {
        let q = SpongeQuery::new(k, IterationIndex::GrossOffset(m)).unwrap();
        let n = t as i64 - m as i64;
        prop_assume!(n >= k as i64);
        let e = n + k as i64 - 2;
        let s = menger_geometry(&q);
        prop_assert_eq!(s.volume.substitute(t).unwrap(), direct_pow(20, 27, e));
        prop_assert_eq!(s.count.substitute(t).unwrap(), direct_pow(20, 1, e));
        prop_assert_eq!(s.side.substitute(t).unwrap(), direct_pow(1, 3, e));
        prop_assert_eq!(carpet_geometry(&q).area.substitute(t).unwrap(), direct_pow(8, 9, e));
        let phi = porosity_grossone(&q).phi.substitute(t).unwrap();
        prop_assert_eq!(phi, BigRational::one() - direct_pow(20, 27, e));
    }

    #[test]
    fn symbolic_matches_finite_query(k in 1u64..=4, m in 0u64..=3, t in 8u64..=20) {
        let gross = SpongeQuery::new(k, IterationIndex::GrossOffset(m)).unwrap();
        let finite = SpongeQuery::new(k, IterationIndex::Finite(t - m)).unwrap();
        prop_assert_eq!(
            GrossValue::rational(menger_geometry(&gross).volume.substitute(t).unwrap()),
            menger_geometry(&finite).volume
        );
    }
}

#[test]
fn porosity_bridge() {
    for t in 0..=50u64 {
        let q = SpongeQuery::new(1, IterationIndex::Finite(t + 1)).unwrap();
        assert_eq!(
            porosity_grossone(&q).phi,
            porosity_classical(t).unwrap().phi
        );
    }
}
