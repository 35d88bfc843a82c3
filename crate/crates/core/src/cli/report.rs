use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde_json::{json, Value};

use crate::error::Result;
use crate::family::{BadReason, Family, FamilyReport};
use crate::glueconstruct::{CheckOutcome, CoverMap, GluedPair, CURVE_VAR};
use crate::projline::MoebiusMap;

use super::Format;

fn matrix_json(g: &MoebiusMap) -> Value {
    let [a, b, c, d] = g.entries();
    json!([[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]])
}

fn cover_json(c: &CoverMap) -> Value {
    json!({ "x": c.x.to_string(), "y": format!("({})*y", c.ymul), "formula": c.to_string() })
}

/// The JSON report for a constructed pair.
pub fn construct_json(g: &GluedPair, checks: Option<&[CheckOutcome]>) -> Value {
    let mut v = json!({
        "field": g.field().to_string(),
        "e": g.e.roots().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "eprime": g.eprime.roots().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "sigma": g.psi.to_arg(),
        "gamma": matrix_json(&g.gamma),
        "gamma_map": g.gamma.rational_map(CURVE_VAR),
        "a": g.a.to_string(),
        "b": g.b.to_string(),
        "lambda": g.lambda.to_string(),
        "sextic": g.sextic.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "sextic_display": g.sextic.display(CURVE_VAR),
        "f": cover_json(&g.f),
        "fprime": cover_json(&g.fprime),
    });
    if let Some(checks) = checks {
        let m: serde_json::Map<String, Value> = checks
            .iter()
            .map(|c| (c.name.to_string(), Value::from(if c.passed { "pass" } else { "fail" })))
            .collect();
        v["checks"] = Value::Object(m);
        let d: serde_json::Map<String, Value> =
            checks.iter().map(|c| (c.name.to_string(), Value::from(c.detail.clone()))).collect();
        v["check_details"] = Value::Object(d);
    }
    v
}

pub(super) fn write_construct(out: &mut dyn Write, format: Format, g: &GluedPair, checks: Option<&[CheckOutcome]>) -> Result<()> {
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&construct_json(g, checks)).unwrap())?;
        return Ok(());
    }
    writeln!(out, "field    {}", g.field())?;
    writeln!(out, "E        {}", g.e)?;
    writeln!(out, "E'       {}", g.eprime)?;
    writeln!(out, "sigma    {}", g.psi.to_arg())?;
    writeln!(out, "gamma    {}  ({})", g.gamma, g.gamma.rational_map(CURVE_VAR))?;
    writeln!(out, "a        {}", g.a)?;
    writeln!(out, "b        {}", g.b)?;
    writeln!(out, "lambda   {}", g.lambda)?;
    writeln!(out, "sextic   {}", g.sextic.display(CURVE_VAR))?;
    writeln!(out, "f        {}", g.f)?;
    writeln!(out, "f'       {}", g.fprime)?;
    if let Some(checks) = checks {
        writeln!(out, "checks")?;
        let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "  {status}  {:width$}  {}", c.name, c.detail)?;
        }
    }
    Ok(())
}

pub(super) fn write_moebius(out: &mut dyn Write, format: Format, g: &MoebiusMap) -> Result<()> {
    if format == Format::Json {
        let v = json!({ "ring": g.ring().to_string(), "matrix": matrix_json(g), "map": g.rational_map(CURVE_VAR) });
        writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap())?;
    } else {
        writeln!(out, "{g}")?;
        writeln!(out, "{}", g.rational_map(CURVE_VAR))?;
    }
    Ok(())
}

/// The JSON report for a family.
pub fn family_json(fam: &Family, rep: &FamilyReport, brute: &BTreeMap<u64, BadReason>) -> Value {
    let bad = |v: &[crate::family::BadPoint]| -> Vec<Value> {
        v.iter()
            .map(|b| {
                json!({
                    "s0": b.s0.to_string(),
                    "degree": b.degree,
                    "reasons": b.reasons.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect()
    };
    let table: Vec<Value> = rep
        .table
        .iter()
        .map(|(s0, g, same)| {
            json!({
                "s0": s0.to_string(),
                "lambda": g.lambda.to_string(),
                "sextic": g.sextic.display(CURVE_VAR),
                "specialize_commutes": same,
            })
        })
        .collect();
    let brute: BTreeSet<String> = brute.keys().map(|k| k.to_string()).collect();
    json!({
        "field": fam.ring().to_string(),
        "generic": construct_json(&rep.generic, None),
        "gamma_polynomial": rep.gamma_poly.iter().map(|p| p.display(fam.ring().var().unwrap())).collect::<Vec<_>>(),
        "bad_locus": bad(&rep.bad),
        "bad_locus_extensions": bad(&rep.bad_extension),
        "fiberwise_bad": brute,
        "specializations": table,
    })
}

pub(super) fn write_family(
    out: &mut dyn Write,
    format: Format,
    fam: &Family,
    rep: &FamilyReport,
    brute: &BTreeMap<u64, BadReason>,
) -> Result<()> {
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&family_json(fam, rep, brute)).unwrap())?;
        return Ok(());
    }
    let var = fam.ring().var().unwrap();
    let g = &rep.generic;
    writeln!(out, "field    {}", fam.ring())?;
    writeln!(out, "E        {}", fam.e)?;
    writeln!(out, "E'       {}", fam.eprime)?;
    writeln!(out, "sigma    {}", fam.psi.to_arg())?;
    writeln!(out, "gamma    {}", g.gamma)?;
    let gp: Vec<String> = rep.gamma_poly.iter().map(|p| p.display(var)).collect();
    writeln!(out, "         primitive [[{}, {}], [{}, {}]]", gp[0], gp[1], gp[2], gp[3])?;
    writeln!(out, "lambda   {}", g.lambda)?;
    writeln!(out, "sextic   {}", g.sextic.display(CURVE_VAR))?;
    writeln!(out, "bad locus over {}", fam.base())?;
    for b in &rep.bad {
        writeln!(out, "  {var} = {b}")?;
    }
    if !rep.bad_extension.is_empty() {
        writeln!(out, "bad values of degree 2..={}", crate::family::MAX_BAD_DEGREE)?;
        for b in &rep.bad_extension {
            writeln!(out, "  {var} = {b} (degree {})", b.degree)?;
        }
    }
    let scan: Vec<String> = brute.iter().map(|(k, r)| format!("{k} ({r})")).collect();
    writeln!(out, "fiberwise scan: {}", if scan.is_empty() { "none".into() } else { scan.join(", ") })?;
    writeln!(out, "specializations")?;
    for (s0, sp, same) in &rep.table {
        let status = if *same { "commutes" } else { "DIFFERS" };
        writeln!(out, "  {var} = {s0}: lambda = {}, sextic = {}  [{status}]", sp.lambda, sp.sextic.display(CURVE_VAR))?;
    }
    Ok(())
}
