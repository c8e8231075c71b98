//! Analyses behind each command and their JSON reports.

use hessrank::apex::{self, AffineApex};
use hessrank::classify::{self, Decomposition, Form};
use hessrank::diffcalc;
use hessrank::normform::{self, Bezout, Mat, UniPoly, WeakSmith};
use hessrank::polyring::{format_polynomial, format_rational, format_rational_function, VarNames};
use hessrank::{Error, Polynomial, Rational, RationalFunction, Result};
use serde_json::{json, Map, Value};

use crate::input::MatrixInput;

/// Named verification flags of a report.
type Flags = Vec<(&'static str, bool)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Apex,
    Decompose,
    Reduce,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Apex => "apex",
            Command::Decompose => "decompose",
            Command::Reduce => "reduce",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolyRequest {
    pub command: Command,
    pub input: String,
    pub vars: usize,
    pub main: usize,
    pub seed: u64,
    pub relation_degree: u32,
}

/// A finished report and whether all of its verification flags hold.
pub struct Report {
    pub value: Value,
    pub verified: bool,
}

fn poly_str(p: &Polynomial) -> String {
    format_polynomial(p, VarNames::all_x())
}

fn rf_str(r: &RationalFunction) -> String {
    format_rational_function(r, VarNames::all_x())
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(format_rational(c))).collect())
}

fn polys(v: &[Polynomial]) -> Value {
    Value::Array(v.iter().map(|p| Value::String(poly_str(p))).collect())
}

fn image_apex_json(a: &Option<AffineApex>) -> Value {
    match a {
        None => Value::Null,
        Some(a) => json!({
            "point": rats(&a.point),
            "directions": a.directions.iter().map(|d| rats(d)).collect::<Vec<_>>(),
        }),
    }
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    let formal = VarNames::with_formal(d.arity);
    json!({
        "form": d.form.label(),
        "g": format_rational_function(&d.g, formal),
        "p": d.p.as_deref().map(polys).unwrap_or(Value::Null),
        "q": d.q.as_deref().map(polys).unwrap_or(Value::Null),
        "a": polys(&d.a_or_b),
        "lambda": d.lambda.as_ref().map(|x| Value::String(rf_str(x))).unwrap_or(Value::Null),
        "gamma": d.gamma.as_ref().map(|x| Value::String(rf_str(x))).unwrap_or(Value::Null),
        "side_condition": d.side_condition,
        "over_L_fallback": d.over_l_fallback,
        "verified": d.verified,
    })
}

fn request_json(req: &PolyRequest, line: usize, source: &str) -> Value {
    json!({
        "command": req.command.name(),
        "input": req.input,
        "line": line,
        "polynomial": source,
        "vars": req.vars,
        "main_vars": req.main,
        "seed": req.seed.to_string(),
        "relation_degree": req.relation_degree,
    })
}

fn finish(mut obj: Map<String, Value>, flags: Vec<(&str, bool)>) -> Report {
    let verified = flags.iter().all(|(_, ok)| *ok);
    let mut v = Map::new();
    for (k, ok) in flags {
        v.insert(k.to_string(), Value::Bool(ok));
    }
    obj.insert("verification".into(), Value::Object(v));
    obj.insert("timing_ms".into(), Value::Null);
    Report { value: Value::Object(obj), verified }
}

fn base(req: &PolyRequest, line: usize, source: &str) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("request".into(), request_json(req, line, source));
    for k in ["rank", "apex", "decomposition", "normal_form"] {
        obj.insert(k.into(), Value::Null);
    }
    obj
}

/// `analyze`, `apex`, `decompose` and `reduce` for one polynomial.
pub fn run_poly(req: &PolyRequest, line: usize, source: &str, h: &Polynomial) -> Result<Report> {
    let h = &h.with_arity(req.vars.max(h.arity()));
    let n = h.arity();
    let m = req.main;
    if m > n {
        return Err(Error::Precondition(format!("--main-vars {m} exceeds the {n} variables")));
    }
    let mut obj = base(req, line, source);
    let mut flags: Vec<(&str, bool)> = Vec::new();
    if req.command == Command::Reduce {
        let profile = diffcalc::rank_profile(h, n)?;
        let red = classify::db_reduce(h, m, req.seed)?;
        let after = diffcalc::hessian_rank(&red.h, m)?;
        obj.insert(
            "rank".into(),
            json!({ "r": profile.r_hessian, "trdeg_K": profile.trdeg_over_k, "trdeg_L": profile.trdeg_over_l }),
        );
        obj.insert(
            "normal_form".into(),
            json!({
                "kind": "db_reduce",
                "n_target": m,
                "h": poly_str(&red.h),
                "C": red.c.iter().map(|r| rats(r)).collect::<Vec<_>>(),
                "tries": red.tries,
            }),
        );
        flags.push(("rank_preserved", profile.r_hessian == after));
        return Ok(finish(obj, flags));
    }

    let profile = diffcalc::rank_profile(h, m)?;
    obj.insert(
        "rank".into(),
        json!({ "r": profile.r_hessian, "trdeg_K": profile.trdeg_over_k, "trdeg_L": profile.trdeg_over_l }),
    );
    let grad = diffcalc::gradient(h, m)?;
    let basis = apex::projective_apex_space(&grad);
    let image = apex::image_apex_affine(&grad);
    let mut apex_obj = json!({
        "s": basis.len(),
        "projective_basis": basis.iter().map(|b| rats(b)).collect::<Vec<_>>(),
        "image_apex": image_apex_json(&image),
    });
    if req.command == Command::Apex {
        let plan = apex::plan_status(&grad);
        flags.push(("degree_one_criterion", plan.is_ok()));
        if let Ok(p) = plan {
            apex_obj["plan"] = json!({
                "r": p.r,
                "s": p.s,
                "has_k_image_apex": p.has_k_image_apex,
                "linear_ideal_generated": p.linear_ideal_generated,
                "constant_part_is_apex": p.constant_part_is_apex,
            });
        }
        obj.insert("apex".into(), apex_obj);
        return Ok(finish(obj, flags));
    }
    obj.insert("apex".into(), apex_obj);

    let (decomp, target, extra) = decompose(h, m)?;
    match &decomp {
        Ok(d) => {
            let mut dj = decomposition_json(d);
            for (k, v) in extra {
                dj[k] = v;
            }
            flags.push(("reconstruction", d.verified));
            flags.push(("degree_bounds", d.degree_bounds_hold()));
            if req.command == Command::Decompose && d.form != Form::GradConstant && d.form != Form::GradAffine {
                flags.push(("relations", d.relations_match(&target, req.relation_degree)?));
            }
            obj.insert("decomposition".into(), dj);
        }
        Err(reason) => {
            obj.insert("out_of_reach".into(), Value::String(reason.clone()));
        }
    }
    Ok(finish(obj, flags))
}

type Extra = Vec<(&'static str, Value)>;

/// With all variables main: the `(r, s)` dispatch after moving apices to
/// the last coordinates. Otherwise the given split, falling back to the
/// small-rank case.
fn decompose(h: &Polynomial, m: usize) -> Result<(std::result::Result<Decomposition, String>, Polynomial, Extra)> {
    let n = h.arity();
    if m == n {
        let c = classify::classify_hessian(h)?;
        let extra = vec![
            ("coordinates", Value::Array(c.transform.iter().map(|r| rats(r)).collect())),
            ("transformed", Value::String(poly_str(&c.transformed))),
            ("main_count", json!(c.main_count)),
        ];
        let d = c.decomposition.ok_or_else(|| c.out_of_reach.unwrap_or_default());
        return Ok((d, c.transformed, extra));
    }
    let d = match classify::classify_gradrel(h, m) {
        Ok(d) => Ok(d),
        Err(Error::Precondition(first)) => match classify::classify_small_rank(h, m) {
            Ok(d) => Ok(d),
            Err(Error::Precondition(second)) => Err(format!("{first}; {second}")),
            Err(e) => return Err(e),
        },
        Err(e) => return Err(e),
    };
    Ok((d, h.clone(), Vec::new()))
}

fn mat_json<S: Bezout + std::fmt::Display>(m: &Mat<S>) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Upper,
    Leading,
    Debondt,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Upper => "upper",
            Variant::Leading => "leading",
            Variant::Debondt => "debondt",
        }
    }
}

fn ws_json<S: Bezout + std::fmt::Display>(ws: &WeakSmith<S>) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("r".into(), json!(ws.r));
    o.insert("Q".into(), mat_json(&ws.q));
    o.insert("A".into(), mat_json(&ws.a));
    o.insert("C".into(), mat_json(&ws.c));
    o
}

fn smith_generic<S: Bezout + std::fmt::Display>(
    p: &Mat<S>,
    rank: Option<usize>,
    variant: Variant,
    leading: impl Fn(&Mat<S>, usize) -> Result<(WeakSmith<S>, bool)>,
) -> Result<(Map<String, Value>, Flags)> {
    let r = rank.unwrap_or_else(|| normform::rank(p));
    let mut flags = Vec::new();
    let obj = match variant {
        Variant::Plain => {
            let ws = normform::weak_smith(p, r)?;
            flags.push(("certificates", ws.verify(p)));
            ws_json(&ws)
        }
        Variant::Upper => {
            let ws = normform::weak_smith_upper(p, r)?;
            flags.push(("certificates", ws.verify(p)));
            flags.push(("upper_triangular", ws.a_is_upper()));
            ws_json(&ws)
        }
        Variant::Leading => {
            let (ws, ok) = leading(p, r)?;
            flags.push(("certificates", ws.verify(p)));
            flags.push(("leading_rank", ok));
            ws_json(&ws)
        }
        Variant::Debondt => {
            let f = normform::de_bondt(p)?;
            flags.push(("certificates", f.verify(p)));
            let mut o = Map::new();
            o.insert("r".into(), json!(f.r));
            o.insert("Q".into(), mat_json(&f.q));
            o.insert("D".into(), mat_json(&f.d));
            o.insert("E".into(), mat_json(&f.e));
            o.insert("Q_inv".into(), mat_json(&f.q_inv));
            o.insert("E_inv".into(), mat_json(&f.e_inv));
            o
        }
    };
    Ok((obj, flags))
}

pub fn run_smith(input: &str, m: &MatrixInput, rank: Option<usize>, variant: Variant) -> Result<Report> {
    let (mut nf, flags) = match m {
        MatrixInput::Int(p) => smith_generic(p, rank, variant, |_, _| {
            Err(Error::Precondition("the leading variant needs the polyt domain".into()))
        })?,
        MatrixInput::Polyt(p) => smith_generic(p, rank, variant, |p: &Mat<UniPoly>, r| {
            let ws = normform::weak_smith_leading(p, r)?;
            let ok = hessrank::qlinalg::rank(&normform::leading_matrix(&ws.q, r)) == r;
            Ok((ws, ok))
        })?,
    };
    let mut front = Map::new();
    front.insert("domain".into(), json!(m.kind().name()));
    front.insert("variant".into(), json!(variant.name()));
    front.append(&mut nf);
    let mut obj = Map::new();
    obj.insert(
        "request".into(),
        json!({ "command": "smith", "input": input, "domain": m.kind().name(), "rank": rank, "variant": variant.name() }),
    );
    for k in ["rank", "apex", "decomposition"] {
        obj.insert(k.into(), Value::Null);
    }
    obj.insert("normal_form".into(), Value::Object(front));
    Ok(finish(obj, flags))
}

/// Plain-text rendering of a report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::Object(_) => {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
                Value::Null => {}
                _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
            }
        }
    }
}
