use std::str::FromStr;

use serde_json::{json, Map, Value};
use sponge_core::rational::{fmt_rational, parse_rational, to_f64};
use sponge_core::wrc::{head_grid, read_retention_file};
use sponge_core::{
    carpet_geometry, dimension_estimate_at, fit_bimodal, fit_single, fractal_dimension,
    fractal_dimension_fixed, loglog_transform, menger_geometry, model_reduction, parse,
    porosity_classical, porosity_grossone, theta, turcotte_order, turcotte_scaling, BigRational,
    Error, Fixed, Fractal, GrossValue, IterationIndex, NumClass, PorosityResult, Result,
    RetentionPoint, SpongeQuery, TurcotteSponge, WrcParams,
};

use crate::output::{one_or_many, Rendered};
use crate::{
    EvalArgs, FitMode, GeometryArgs, PorosityArgs, PorosityModel, WrcEvalArgs, WrcFitArgs, WrcModel,
};

/// Decimal value of the finite part, or `None` when the value is infinite.
fn approx(v: &GrossValue) -> Option<f64> {
    match v.classify() {
        NumClass::ExponentiallyInfinite | NumClass::PolynomiallyInfinite => None,
        _ => Some(to_f64(&v.finite_part())),
    }
}

fn approx_cell(v: &GrossValue) -> String {
    match approx(v) {
        Some(x) if v.has_infinitesimal_part() => format!("{x} + infinitesimal"),
        Some(x) => x.to_string(),
        None => "infinite".into(),
    }
}

pub fn eval(args: &EvalArgs) -> Result<Rendered> {
    let v = parse(&args.expr)?;
    let canonical = v.to_string();
    let class = v.classify();
    let finite = v.finite_part();
    let correction = v.has_infinitesimal_part();
    let mut json = Map::new();
    json.insert("canonical".into(), json!(canonical));
    json.insert("class".into(), json!(class.to_string()));
    json.insert("finite_part".into(), json!(fmt_rational(&finite)));
    json.insert("approx".into(), json!(to_f64(&finite)));
    json.insert("infinitesimal_correction".into(), json!(correction));
    let mut rows = vec![
        vec!["canonical".into(), canonical],
        vec!["class".into(), class.to_string()],
        vec!["finite_part".into(), fmt_rational(&finite)],
        vec!["approx".into(), to_f64(&finite).to_string()],
        vec!["infinitesimal_correction".into(), correction.to_string()],
    ];
    if let Some(t) = args.at {
        let value = v.substitute(t)?;
        json.insert("at".into(), json!(t));
        json.insert("value".into(), json!(fmt_rational(&value)));
        rows.push(vec!["at".into(), t.to_string()]);
        rows.push(vec!["value".into(), fmt_rational(&value)]);
    }
    Ok(Rendered::new(
        &["field", "value"],
        rows,
        Value::Object(json),
    ))
}

fn indices(raw: &[String]) -> Result<Vec<IterationIndex>> {
    raw.iter().map(|s| IterationIndex::from_str(s)).collect()
}

pub fn geometry(args: &GeometryArgs, object: Fractal) -> Result<Rendered> {
    if let Some(places) = args.dimension {
        return dimension(args, object, places);
    }
    let measure = match object {
        Fractal::Sponge => "volume",
        Fractal::Carpet => "area",
    };
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for n in indices(&args.n)? {
        let q = SpongeQuery::new(args.k, n)?;
        let (count, side, m) = match object {
            Fractal::Sponge => {
                let g = menger_geometry(&q);
                (g.count, g.side, g.volume)
            }
            Fractal::Carpet => {
                let g = carpet_geometry(&q);
                (g.count, g.side, g.area)
            }
        };
        let class = m.classify().to_string();
        rows.push(vec![
            n.to_string(),
            count.to_string(),
            side.to_string(),
            m.to_string(),
            class.clone(),
            approx_cell(&m),
        ]);
        let mut obj = Map::new();
        obj.insert("k".into(), json!(args.k));
        obj.insert("n".into(), json!(n.to_string()));
        obj.insert("count".into(), json!(count.to_string()));
        obj.insert("side".into(), json!(side.to_string()));
        obj.insert(measure.into(), json!(m.to_string()));
        obj.insert("class".into(), json!(class));
        obj.insert("approx".into(), json!(approx(&m)));
        obj.insert(
            "infinitesimal_correction".into(),
            json!(m.has_infinitesimal_part()),
        );
        items.push(Value::Object(obj));
    }
    Ok(Rendered::new(
        &["n", "count", "side", measure, "class", "approx"],
        rows,
        one_or_many(items),
    ))
}

fn dimension(args: &GeometryArgs, object: Fractal, places: u32) -> Result<Rendered> {
    let value = fractal_dimension(object, places)?;
    let mut rows = vec![vec!["limit".into(), "-".into(), "-".into(), value.clone()]];
    let mut estimates = Vec::new();
    for n in indices(&args.n)? {
        if let IterationIndex::Finite(n) = n {
            let e = dimension_estimate_at(object, n, places)?;
            rows.push(vec![
                n.to_string(),
                e.count.to_string(),
                e.side.clone(),
                e.value.clone(),
            ]);
            estimates.push(serde_json::to_value(&e).expect("serializable"));
        }
    }
    let json = json!({
        "object": format!("{object:?}"),
        "places": places,
        "dimension": value,
        "estimates": estimates,
    });
    Ok(Rendered::new(
        &["n", "count", "side", "dimension"],
        rows,
        json,
    ))
}

fn porosity_json(label: (&str, Value), r: &PorosityResult) -> Value {
    let mut obj = Map::new();
    obj.insert("phi".into(), json!(r.phi.to_string()));
    obj.insert("solid_volume".into(), json!(r.solid_volume.to_string()));
    obj.insert("void_volume".into(), json!(r.void_volume.to_string()));
    obj.insert(label.0.into(), label.1);
    obj.insert("class".into(), json!(r.phi.classify().to_string()));
    obj.insert(
        "approx".into(),
        json!({
            "phi": approx(&r.phi),
            "solid_volume": approx(&r.solid_volume),
            "void_volume": approx(&r.void_volume),
        }),
    );
    obj.insert(
        "infinitesimal_correction".into(),
        json!(r.phi.has_infinitesimal_part()),
    );
    Value::Object(obj)
}

fn porosity_row(label: String, r: &PorosityResult) -> Vec<String> {
    vec![
        label,
        r.phi.to_string(),
        r.solid_volume.to_string(),
        r.void_volume.to_string(),
        approx_cell(&r.phi),
    ]
}

const POROSITY_HEADERS: [&str; 5] = ["n", "phi", "solid_volume", "void_volume", "approx"];

pub fn porosity(args: &PorosityArgs) -> Result<Rendered> {
    match args.model {
        PorosityModel::Classical => {
            let ns = if args.n.is_empty() {
                vec!["2".to_string()]
            } else {
                args.n.clone()
            };
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for s in &ns {
                let n: u64 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Data(format!("invalid iteration count {s:?}")))?;
                let r = porosity_classical(n)?;
                rows.push(porosity_row(n.to_string(), &r));
                items.push(porosity_json(("n", json!(n)), &r));
            }
            Ok(Rendered::new(&POROSITY_HEADERS, rows, one_or_many(items)))
        }
        PorosityModel::Grossone => {
            let ns = if args.n.is_empty() {
                vec!["g".to_string()]
            } else {
                args.n.clone()
            };
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for n in indices(&ns)? {
                let r = porosity_grossone(&SpongeQuery::new(args.k, n)?);
                rows.push(porosity_row(n.to_string(), &r));
                items.push(porosity_json(("n", json!(n.to_string())), &r));
            }
            Ok(Rendered::new(&POROSITY_HEADERS, rows, one_or_many(items)))
        }
        PorosityModel::Turcotte => turcotte(args),
    }
}

/// `sponge`, `carpet`, or a decimal / rational literal.
fn dimension_value(s: &str, bits: u32) -> Result<Fixed> {
    match s.trim() {
        "sponge" => Ok(fractal_dimension_fixed(Fractal::Sponge, bits)),
        "carpet" => Ok(fractal_dimension_fixed(Fractal::Carpet, bits)),
        other => Ok(Fixed::from_rational(&parse_rational(other)?, bits)),
    }
}

fn rational_flag(name: &str, s: &str) -> Result<BigRational> {
    parse_rational(s.trim()).map_err(|e| Error::Data(format!("--{name}: {e}")))
}

fn turcotte(args: &PorosityArgs) -> Result<Rendered> {
    let r0 = rational_flag("r0", &args.r0)?;
    let rho0 = rational_flag("rho0", &args.rho0)?;
    let sponge = TurcotteSponge::new(r0.clone(), rho0)?;
    let bits = sponge_core::hp::bits_for_digits(args.digits) + 32;
    let d_f = dimension_value(&args.d_f, bits)?;
    if !args.r.is_empty() {
        let mut rows = Vec::new();
        let mut items = Vec::new();
        for s in &args.r {
            let r = rational_flag("r", s)?;
            let t = turcotte_scaling(&r0, &r, &d_f, args.digits)?;
            let (phi, ratio) = (t.phi_decimal(), t.density_ratio_decimal());
            rows.push(vec![fmt_rational(&r), phi.clone(), ratio.clone()]);
            items.push(json!({
                "r": fmt_rational(&r),
                "phi": phi,
                "density_ratio": ratio,
                "digits": args.digits,
            }));
        }
        return Ok(Rendered::new(
            &["r", "phi", "density_ratio"],
            rows,
            one_or_many(items),
        ));
    }
    let ns = if args.n.is_empty() {
        vec!["0".into(), "1".into(), "2".into()]
    } else {
        args.n.clone()
    };
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for s in &ns {
        let n: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Data(format!("invalid order {s:?}")))?;
        let o = turcotte_order(n, &sponge)?;
        let t = turcotte_scaling(&r0, &o.size, &d_f, args.digits)?;
        rows.push(vec![
            n.to_string(),
            fmt_rational(&o.size),
            fmt_rational(&o.phi),
            fmt_rational(&o.density_ratio),
            fmt_rational(&o.density),
            t.phi_decimal(),
        ]);
        items.push(json!({
            "phi": fmt_rational(&o.phi),
            "density_ratio": fmt_rational(&o.density_ratio),
            "density": fmt_rational(&o.density),
            "n": n,
            "size": fmt_rational(&o.size),
            "approx": {
                "phi": to_f64(&o.phi),
                "density_ratio": to_f64(&o.density_ratio),
                "density": to_f64(&o.density),
            },
            "scaling": {
                "phi": t.phi_decimal(),
                "density_ratio": t.density_ratio_decimal(),
                "digits": args.digits,
            },
        }));
    }
    Ok(Rendered::new(
        &[
            "n",
            "size",
            "phi",
            "density_ratio",
            "density",
            "phi_scaling",
        ],
        rows,
        one_or_many(items),
    ))
}

fn dimension_f64(s: &str) -> Result<f64> {
    match s.trim() {
        "sponge" | "carpet" => Ok(dimension_value(s, 64)?.to_f64()),
        other => other.parse::<f64>().map_err(|_| {
            Error::Data(format!(
                "--d-f: expected sponge, carpet or a number, got {other:?}"
            ))
        }),
    }
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize)> {
    let bad = || Error::Data(format!("--h-grid: expected lo:hi:steps, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
        steps.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn wrc_eval(args: &WrcEvalArgs, warnings: &mut Vec<String>) -> Result<Rendered> {
    let d_f = dimension_f64(&args.d_f)?;
    let mut params = match args.model {
        WrcModel::Psf => {
            let a = args
                .a
                .ok_or_else(|| Error::Data("--a is required for the psf model".into()))?;
            WrcParams::psf(args.theta_s, a, args.h_min, d_f)?
        }
        WrcModel::Tw => WrcParams::tw(args.theta_s, args.h_min, d_f)?,
        WrcModel::Rs => WrcParams::rs(args.theta_s, args.h_min, d_f)?,
    };
    if let Some(h_max) = args.h_max {
        params = params.with_h_max(h_max)?;
    }
    let (lo, hi, steps) = match &args.h_grid {
        Some(g) => parse_grid(g)?,
        None => (params.h_min, params.h_min * 1000.0, 50),
    };
    let heads = head_grid(lo, hi, steps)?;
    let mut points = Vec::with_capacity(heads.len());
    let mut clamped = 0;
    for &h in &heads {
        let t = theta(&params, h)?;
        clamped += usize::from(t.clamped);
        points.push(RetentionPoint { h, theta: t.value });
    }
    if clamped > 0 {
        warnings.push(format!("{clamped} point(s) clamped to theta = 0"));
    }
    let loglog = if args.loglog {
        Some(loglog_transform(&params, &points)?)
    } else {
        None
    };

    let mut headers = vec!["h", "theta"];
    if loglog.is_some() {
        headers.extend(["x", "y"]);
    }
    let mut rows = Vec::new();
    let mut series = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut row = vec![p.h.to_string(), p.theta.to_string()];
        let mut obj = Map::new();
        obj.insert("h".into(), json!(p.h));
        obj.insert("theta".into(), json!(p.theta));
        if let Some(xy) = &loglog {
            row.push(xy[i].0.to_string());
            row.push(xy[i].1.to_string());
            obj.insert("x".into(), json!(xy[i].0));
            obj.insert("y".into(), json!(xy[i].1));
        }
        rows.push(row);
        series.push(Value::Object(obj));
    }
    let json = json!({
        "params": params,
        "reduction": format!("{:?}", model_reduction(&params)),
        "in_physical_range": params.in_physical_range(),
        "points": series,
    });
    Ok(Rendered::new(&headers, rows, json))
}

pub fn wrc_fit(args: &WrcFitArgs) -> Result<Rendered> {
    let points = read_retention_file(&args.input)?;
    if points.is_empty() {
        return Err(Error::Data(format!(
            "{}: no data rows",
            args.input.display()
        )));
    }
    let theta_s = args
        .theta_s
        .unwrap_or_else(|| points.iter().map(|p| p.theta).fold(f64::MIN, f64::max));
    let h_min = args
        .h_min
        .unwrap_or_else(|| points.iter().map(|p| p.h).fold(f64::MAX, f64::min));
    let a = args.a.unwrap_or(theta_s);
    // The dimension only seeds validation; fits ignore it.
    let params = WrcParams::psf(theta_s, a, h_min, 2.5)?;
    let fit = match args.mode {
        FitMode::Single => fit_single(&points, &params)?,
        FitMode::Bimodal => fit_bimodal(&points, &params)?,
    };
    let breakpoint = fit.breakpoint_h.map(|h| h.to_string()).unwrap_or_default();
    let rows = fit
        .regimes
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                (i + 1).to_string(),
                r.d_f.to_string(),
                r.intercept.to_string(),
                r.h_range.0.to_string(),
                r.h_range.1.to_string(),
                r.points.to_string(),
                r.sse.to_string(),
                breakpoint.clone(),
            ]
        })
        .collect();
    let json = json!({
        "mode": format!("{:?}", args.mode).to_lowercase(),
        "theta_s": theta_s,
        "a": a,
        "h_min": h_min,
        "fit": fit,
    });
    Ok(Rendered::new(
        &[
            "regime",
            "d_f",
            "intercept",
            "h_low",
            "h_high",
            "points",
            "sse",
            "breakpoint_h",
        ],
        rows,
        json,
    )
    .with_note(format!("total sse: {}", fit.sse)))
}
