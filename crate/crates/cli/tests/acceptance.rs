//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion. Exits non-zero
//! if any criterion fails. Tolerances and time budgets are fixed below.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use sponge_core::rational::{int, ratio};
use sponge_core::wrc::{head_grid, max_pointwise_difference};
use sponge_core::{
    carpet_geometry, fit_bimodal, fractal_dimension, menger_geometry, parse, porosity_classical,
    porosity_grossone, theta, turcotte_order, turcotte_scaling, BigRational, Fixed, Fractal,
    GrossLinear, GrossValue, IterationIndex, NumClass, RawTerm, RetentionPoint, SpongeQuery,
    TurcotteSponge, WrcParams,
};

/// ln 20 / ln 3 to 60 significant digits, from an independent multiprecision evaluation.
const SPONGE_DIM: &str = "2.72683302786084204139609463636416210490710364692981054479";
/// 3 - ln 20 / ln 3 rounded to double precision.
const SLOPE_3_MINUS_D: f64 = 0.273_166_972_139_157_95;

const TOL_TURCOTTE: f64 = 1e-12;
const TOL_SLOPE: f64 = 1e-9;
const TOL_BIMODAL_DIM: f64 = 1e-6;
const TOL_REDUCTION: f64 = 1e-12;

const BUDGET_MS: Duration = Duration::from_millis(100);
const BUDGET_1S: Duration = Duration::from_secs(1);
const BUDGET_30S: Duration = Duration::from_secs(30);

const ORACLE_CASES: u32 = 200;
const PROPERTY_CASES: u32 = 1000;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    ratio(n, d)
}

fn query(k: u64, n: IterationIndex) -> SpongeQuery {
    SpongeQuery::new(k, n).expect("valid query")
}

fn c1_exact_fractions() -> Check {
    let p1 = porosity_classical(1).map_err(|e| e.to_string())?;
    let p2 = porosity_classical(2).map_err(|e| e.to_string())?;
    ensure(p1.phi.as_rational() == Some(q(7, 27)), || {
        format!("phi1 = {}", p1.phi)
    })?;
    ensure(p2.phi.as_rational() == Some(q(329, 729)), || {
        format!("phi2 = {}", p2.phi)
    })?;
    let unit = TurcotteSponge::unit();
    let t1 = turcotte_order(1, &unit).map_err(|e| e.to_string())?;
    let t2 = turcotte_order(2, &unit).map_err(|e| e.to_string())?;
    ensure(t1.density_ratio == q(20, 27), || {
        format!("rho1/rho0 = {}", t1.density_ratio)
    })?;
    ensure(t2.density_ratio == q(400, 729), || {
        format!("rho2/rho0 = {}", t2.density_ratio)
    })?;
    Ok("phi1 = 7/27, phi2 = 329/729, rho ratios 20/27, 400/729".into())
}

fn c2_fractal_dimension() -> Check {
    let d = fractal_dimension(Fractal::Sponge, 9).map_err(|e| e.to_string())?;
    ensure(d == "2.726833028", || format!("got {d}"))?;
    let d30 = fractal_dimension(Fractal::Sponge, 30).map_err(|e| e.to_string())?;
    ensure(d30 == SPONGE_DIM[..32], || format!("30 places: {d30}"))?;
    Ok(format!("D = {d}"))
}

fn c3_volume_chain() -> Check {
    let v = |m: u64| menger_geometry(&query(1, IterationIndex::GrossOffset(m))).volume;
    let (v0, v1, v2) = (v(0), v(1), v(2));
    let expected = GrossValue::power_of(q(20, 27), GrossLinear::grossone_plus(-1))
        .map_err(|e| e.to_string())?;
    ensure(v0 == expected, || format!("V(g) = {v0}"))?;
    ensure(parse("(20/27)^(g-1)").ok() == Some(v0.clone()), || {
        "parsed form differs".into()
    })?;
    let step = GrossValue::rational(q(20, 27));
    for (a, b) in [(&v0, &v1), (&v1, &v2)] {
        let r = a.div(b).map_err(|e| e.to_string())?;
        ensure(r == step, || format!("{a} / {b} = {r}"))?;
    }
    ensure(
        v0.classify() == NumClass::ExponentiallyInfinitesimal,
        || format!("class {}", v0.classify()),
    )?;
    ensure(v0.cmp(&GrossValue::zero()) == Ordering::Greater, || {
        "V(g) not > 0".into()
    })?;
    Ok(format!("V(g) = {v0}, ratios 20/27"))
}

fn c4_indexing_bridge() -> Check {
    for t in 0..=50u64 {
        let g = porosity_grossone(&query(1, IterationIndex::Finite(t + 1)));
        let c = porosity_classical(t).map_err(|e| e.to_string())?;
        ensure(g == c, || format!("t = {t}: {} vs {}", g.phi, c.phi))?;
    }
    Ok("t = 0..50".into())
}

/// `base^e` by repeated multiplication, inverting for negative `e`.
fn direct_pow(base: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn c5_finite_instantiation() -> Check {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: ORACLE_CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = (1u64..=5, 0u64..=5, 0u64..=30);
    runner
        .run(&strategy, |(k, m, t)| {
            let sq = query(k, IterationIndex::GrossOffset(m));
            let e = t as i64 - m as i64 + k as i64 - 2;
            let v = menger_geometry(&sq).volume.substitute(t).unwrap();
            let a = carpet_geometry(&sq).area.substitute(t).unwrap();
            let phi = porosity_grossone(&sq).phi.substitute(t).unwrap();
            let v_direct = direct_pow(&q(20, 27), e);
            prop_assert_eq!(&v, &v_direct);
            prop_assert_eq!(a, direct_pow(&q(8, 9), e));
            prop_assert_eq!(phi, BigRational::one() - v_direct);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{ORACLE_CASES} cases (k <= 5, m <= 5, t <= 30)"))
}

fn c6_turcotte_consistency() -> Check {
    let digits = 34;
    let bits = sponge_core::hp::bits_for_digits(digits) + 32;
    let d_f = Fixed::from_rational(
        &sponge_core::rational::parse_rational(SPONGE_DIM).unwrap(),
        bits,
    );
    let unit = TurcotteSponge::unit();
    let mut worst = 0f64;
    for n in 0..=20u64 {
        let exact = turcotte_order(n, &unit).map_err(|e| e.to_string())?;
        let s = turcotte_scaling(&int(1), &exact.size, &d_f, digits).map_err(|e| e.to_string())?;
        for (approx, exact) in [
            (&s.phi, &exact.phi),
            (&s.density_ratio, &exact.density_ratio),
        ] {
            let err = approx
                .sub(&Fixed::from_rational(exact, approx.bits()))
                .to_f64()
                .abs();
            worst = worst.max(err);
        }
    }
    ensure(worst <= TOL_TURCOTTE, || format!("max error {worst:e}"))?;
    Ok(format!(
        "n <= 20, max error {worst:.1e} <= {TOL_TURCOTTE:e}"
    ))
}

fn slope(xy: &[(f64, f64)]) -> f64 {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn c7_loglog_slope() -> Check {
    let report = sponge_cli::run([
        "menger",
        "wrc-eval",
        "--model",
        "psf",
        "--theta-s",
        "0.5",
        "--a",
        "0.45",
        "--h-min",
        "1",
        "--h-grid",
        "1:10000:81",
        "--loglog",
        "--output",
        "csv",
    ]);
    ensure(report.exit_code == 0, || report.stderr.clone())?;
    let mut lines = report.stdout.lines();
    ensure(lines.next() == Some("h,theta,x,y"), || {
        "unexpected header".into()
    })?;
    let xy: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
            (f[2], f[3])
        })
        .collect();
    ensure(xy.len() == 81, || format!("{} rows", xy.len()))?;
    let s = slope(&xy);
    ensure((s - SLOPE_3_MINUS_D).abs() <= TOL_SLOPE, || {
        format!("slope {s}")
    })?;
    Ok(format!(
        "slope {s:.12}, |slope - (3 - D)| = {:.1e}",
        (s - SLOPE_3_MINUS_D).abs()
    ))
}

fn c8_bimodal() -> Check {
    let (d_lo, d_hi) = (2.9, 2.5);
    let lo = WrcParams::psf(0.5, 0.45, 1.0, d_lo).map_err(|e| e.to_string())?;
    let hi = WrcParams::psf(0.5, 0.45, 1.0, d_hi).map_err(|e| e.to_string())?;
    let left = head_grid(1.0, 10.0, 16).map_err(|e| e.to_string())?;
    let right = head_grid(10.0, 1000.0, 15).map_err(|e| e.to_string())?;
    let point = |p: &WrcParams, h: f64| RetentionPoint {
        h,
        theta: theta(p, h).unwrap().value,
    };
    let mut pts: Vec<RetentionPoint> = left[..15].iter().map(|&h| point(&lo, h)).collect();
    pts.extend(right.iter().map(|&h| point(&hi, h)));
    ensure(pts.len() == 30, || "expected 30 points".into())?;
    let fit = fit_bimodal(&pts, &lo).map_err(|e| e.to_string())?;
    ensure(fit.breakpoint_h == Some(10.0), || {
        format!("breakpoint {:?}", fit.breakpoint_h)
    })?;
    let (e_lo, e_hi) = (
        (fit.regimes[0].d_f - d_lo).abs(),
        (fit.regimes[1].d_f - d_hi).abs(),
    );
    ensure(e_lo <= TOL_BIMODAL_DIM && e_hi <= TOL_BIMODAL_DIM, || {
        format!(
            "dimensions {} and {}",
            fit.regimes[0].d_f, fit.regimes[1].d_f
        )
    })?;
    Ok(format!(
        "breakpoint h = 10, D errors {e_lo:.1e}, {e_hi:.1e}"
    ))
}

fn c9_reductions() -> Check {
    let heads = head_grid(1.0, 1e6, 1000).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for &(theta_s, h_min, d_f) in &[
        (0.5, 1.0, 2.7268),
        (0.35, 5.0, 2.2),
        (0.9, 0.5, 2.95),
        (1.0, 2.0, 1.5),
    ] {
        let scaled: Vec<f64> = heads.iter().map(|h| h * h_min).collect();
        let psf_tw = WrcParams::psf(theta_s, theta_s, h_min, d_f).map_err(|e| e.to_string())?;
        let tw = WrcParams::tw(theta_s, h_min, d_f).map_err(|e| e.to_string())?;
        let psf_rs = WrcParams::psf(theta_s, 1.0, h_min, d_f).map_err(|e| e.to_string())?;
        let rs = WrcParams::rs(theta_s, h_min, d_f).map_err(|e| e.to_string())?;
        worst =
            worst.max(max_pointwise_difference(&psf_tw, &tw, &scaled).map_err(|e| e.to_string())?);
        worst =
            worst.max(max_pointwise_difference(&psf_rs, &rs, &scaled).map_err(|e| e.to_string())?);
    }
    ensure(worst <= TOL_REDUCTION, || {
        format!("max difference {worst:e}")
    })?;
    Ok(format!(
        "4 parameter sets x 1000 heads, max difference {worst:e}"
    ))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly_value() -> impl Strategy<Value = GrossValue> {
    prop::collection::vec((nonzero_rational(), -2i64..=3), 0..4).prop_map(|terms| {
        GrossValue::normalize(terms.into_iter().map(|(coeff, p)| RawTerm::Poly {
            coeff,
            power: int(p),
        }))
        .unwrap()
    })
}

fn exp_value() -> impl Strategy<Value = GrossValue> {
    let base = prop::sample::select(vec![
        q(2, 1),
        q(3, 1),
        q(20, 27),
        q(8, 9),
        q(1, 2),
        q(20, 1),
    ]);
    let rate = prop::sample::select(vec![int(1), int(-1), int(2), q(1, 2)]);
    let term = (nonzero_rational(), base, rate, -2i64..=2).prop_map(|(coeff, base, a, b)| {
        let b = if a == q(1, 2) { int(2 * b) } else { int(b) };
        RawTerm::Exp {
            coeff,
            bases: vec![(base, GrossLinear::new(a, b))],
        }
    });
    (prop::collection::vec(term, 0..3), small_rational()).prop_map(|(mut terms, c)| {
        terms.push(RawTerm::Poly {
            coeff: c,
            power: int(0),
        });
        GrossValue::normalize(terms).unwrap()
    })
}

fn any_value() -> impl Strategy<Value = GrossValue> {
    prop_oneof![
        poly_value(),
        exp_value(),
        (poly_value(), exp_value()).prop_map(|(p, e)| p.add(&e))
    ]
}

fn property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>,
) -> std::result::Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn c10_property_suite() -> Check {
    property("normalization", any_value(), |x| {
        prop_assert_eq!(GrossValue::normalize(x.to_raw()).unwrap(), x);
        Ok(())
    })?;
    let triple = prop_oneof![
        (poly_value(), poly_value(), poly_value()),
        (exp_value(), exp_value(), exp_value()),
    ];
    property("ring laws", triple, |(x, y, z)| {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.mul(&y.add(&z)).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap())
        );
        prop_assert_eq!(x.mul(&GrossValue::one()).unwrap(), x.clone());
        prop_assert!(x.add(&x.neg()).is_zero());
        Ok(())
    })?;
    property(
        "order",
        (any_value(), any_value(), any_value()),
        |(x, y, z)| {
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
            prop_assert_eq!(x.cmp(&y) == Ordering::Equal, x == y);
            let mut v = [x, y, z];
            v.sort();
            prop_assert!(v[0] <= v[1] && v[1] <= v[2] && v[0] <= v[2]);
            Ok(())
        },
    )?;
    property("round trip", any_value(), |x| {
        let text = x.to_string();
        prop_assert_eq!(parse(&text).unwrap(), x, "{}", text);
        Ok(())
    })?;
    let mut prev = GrossValue::grossone();
    for m in 1..=100i64 {
        let next = GrossLinear::grossone_plus(-m).to_value();
        ensure(prev > next, || format!("g-{} not > g-{m}", m - 1))?;
        ensure(next > GrossValue::integer(i64::MAX), || {
            format!("g-{m} not infinite")
        })?;
        prev = next;
    }
    Ok(format!(
        "4 properties x {PROPERTY_CASES} cases, chain g > g-1 > ... > g-100"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact porosity fractions", None, c1_exact_fractions),
        ("fractal dimension to 9 places", None, c2_fractal_dimension),
        ("grossone volume chain", Some(BUDGET_MS), c3_volume_chain),
        ("indexing bridge", None, c4_indexing_bridge),
        ("finite-instantiation oracle", None, c5_finite_instantiation),
        ("turcotte consistency", None, c6_turcotte_consistency),
        (
            "retention curve log-log slope",
            Some(BUDGET_1S),
            c7_loglog_slope,
        ),
        ("bimodal breakpoint recovery", Some(BUDGET_1S), c8_bimodal),
        ("model reduction identities", None, c9_reductions),
        (
            "grossone property suite",
            Some(BUDGET_30S),
            c10_property_suite,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
            (o, _) => o,
        };
        let budget = budget
            .map(|b| format!(", budget {b:?}"))
            .unwrap_or_default();
        match outcome {
            Ok(detail) => println!(
                "[PASS] {:>2}. {name}: {detail} ({elapsed:.2?}{budget})",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "[FAIL] {:>2}. {name}: {detail} ({elapsed:.2?}{budget})",
                    i + 1
                );
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
