//! JSON and text rendering of command results.
//!
//! Objects use `serde_json`'s sorted maps, so key order is stable and output for
//! identical inputs is byte-identical.

use serde_json::{json, Map, Value};

use crate::algebra::{Cdd, Num, P1Point};
use crate::error::Result;
use crate::flatness::{ClassifiedModel, FlatnessDecision};
use crate::foliation::{HomFoliation, IdentityCheck, IdentityStatus, SingularityReport};
use crate::prefoliation::{DiscriminantDecomposition, GenSingularity};
use crate::webnum::{CurvatureSample, ProbeResult};

/// Output format of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// `[re, im]` rounded to double precision.
pub fn complex(z: Cdd) -> Value {
    let c = z.to_c64();
    json!([c.re, c.im])
}

fn opt_num(n: &Option<Num>) -> Value {
    n.as_ref()
        .map_or(Value::Null, |n| Value::String(n.to_string()))
}

fn p1(p: &P1Point) -> Value {
    Value::String(p.to_string())
}

/// Field of definition: `Q`, `Q(zeta_n)`, with `(t)` appended for parametric input.
pub fn field_name(order: u32, parametric: bool) -> String {
    let base = if order <= 1 {
        "Q".to_string()
    } else {
        format!("Q(zeta_{order})")
    };
    if parametric {
        format!("{base}(t)")
    } else {
        base
    }
}

fn hom_singularity(s: &SingularityReport) -> Value {
    json!({
        "point": s.label(),
        "chart": s.chart.name(),
        "milnor": s.milnor,
        "eigenvalues": s.eigenvalues.as_ref().map(|(a, b)| json!([a.to_string(), b.to_string()])),
        "cs": opt_num(&s.cs),
        "bb": opt_num(&s.bb),
        "radial_order": s.radial_order,
    })
}

/// Foliation section for a homogeneous foliation.
pub fn hom_foliation(h: &HomFoliation) -> Result<Value> {
    let ty = h.foliation_type()?;
    let infl = h.inflection_divisor()?;
    let sings: Vec<Value> = h.singularities()?.iter().map(hom_singularity).collect();
    let cs = h.cs_polynomial()?;
    Ok(json!({
        "kind": "homogeneous",
        "degree": h.d() - 1,
        "form": h.form_string(),
        "type": ty.to_string(),
        "convex": h.is_convex()?,
        "inflection": {
            "invariant": infl.invariant.fmt_vars(["x", "y", "z"]),
            "transverse": infl.transverse.fmt_xy("x", "y"),
        },
        "singularities": sings,
        "cs_poly": cs.fmt_var("λ"),
    }))
}

/// Foliation section for a general foliation.
pub fn gen_foliation(degree: usize, form: String, sings: &[GenSingularity]) -> Value {
    let sings: Vec<Value> = sings
        .iter()
        .map(|s| {
            json!({
                "point": s.label(),
                "chart": s.chart.name(),
                "milnor": s.milnor,
                "trace": s.trace.to_string(),
                "det": s.det.to_string(),
                "bb": opt_num(&s.bb),
                "radial": s.radial,
                "cs": opt_num(&s.cs_infinity),
            })
        })
        .collect();
    json!({
        "kind": "general",
        "degree": degree,
        "form": form,
        "type": Value::Null,
        "inflection": Value::Null,
        "singularities": sings,
        "cs_poly": Value::Null,
    })
}

pub fn discriminant(d: &DiscriminantDecomposition) -> Value {
    Value::Array(
        d.components
            .iter()
            .map(|c| {
                json!({
                    "tag": c.tag.name(),
                    "equation": c.equation(),
                    "sources": c.sources.iter().map(p1).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn flatness(d: &FlatnessDecision) -> Value {
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            json!({
                "tag": c.tag.name(),
                "p0": c.p0.as_ref().map(p1),
                "rule": c.rule,
                "verdict": c.verdict.name(),
                "residual": opt_num(&c.residual),
                "second_route": c.second_route,
            })
        })
        .collect();
    json!({
        "overall": d.overall.name(),
        "components": comps,
        "shear": d.rotation,
    })
}

fn sample(s: &CurvatureSample) -> Value {
    json!({
        "p": complex(s.p),
        "q": complex(s.q),
        "k": complex(s.k),
        "normalized_k": s.normalized_k(),
        "error": s.error,
    })
}

pub fn probe(r: &ProbeResult, seed: u64, tol_accept: f64, tol_reject: f64) -> Value {
    let max_k = r
        .samples
        .iter()
        .map(|s| s.normalized_k())
        .fold(0.0, f64::max);
    json!({
        "verdict": r.verdict.name(),
        "samples": r.samples.len(),
        "seed": seed,
        "tol_accept": tol_accept,
        "tol_reject": tol_reject,
        "max_normalized_k": max_k,
        "indeterminate": r.indeterminate,
        "rejected": r.rejected,
        "witness": r.witness.as_ref().map(sample),
    })
}

pub fn identities(checks: &[IdentityCheck]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                let (status, detail) = match &c.status {
                    IdentityStatus::Pass => ("pass", Value::Null),
                    IdentityStatus::Fail(s) => ("fail", Value::String(s.clone())),
                    IdentityStatus::Skipped(s) => ("skipped", Value::String(s.clone())),
                };
                json!({"name": c.name, "status": status, "detail": detail})
            })
            .collect(),
    )
}

pub fn classification(d: usize, models: &[ClassifiedModel]) -> Value {
    let entries: Vec<Value> = models
        .iter()
        .map(|m| {
            json!({
                "label": m.label,
                "expected": m.expected.name(),
                "overall": m.decision.overall.name(),
                "agrees": m.agrees(),
            })
        })
        .collect();
    json!({
        "degree": d,
        "flat_models": models.iter().filter(|m| m.expected.name() == "flat").count(),
        "all_agree": models.iter().all(|m| m.agrees()),
        "models": entries,
    })
}

/// Report skeleton with every top-level key present.
pub fn document(input: Value, field: String) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("input".into(), input);
    m.insert("field".into(), Value::String(field));
    for k in ["foliation", "discriminant", "flatness", "probe"] {
        m.insert(k.into(), Value::Null);
    }
    m
}

/// Renders a report in the requested format.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) if a.iter().all(Value::is_number) && a.len() == 2 => {
            let re = a[0].as_f64().unwrap_or(0.0);
            let im = a[1].as_f64().unwrap_or(0.0);
            format!("{re:.6e}{im:+.6e}i")
        }
        other => other.to_string(),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => {
            a.len() == 2 && a.iter().all(Value::is_number)
                || a.iter().all(|x| !x.is_object() && !x.is_array())
        }
        _ => true,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_leaf(x) {
                    let s = match x {
                        Value::Array(a) if !(a.len() == 2 && a.iter().all(Value::is_number)) => {
                            a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
                        }
                        _ => scalar_text(x),
                    };
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    text(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x))),
    }
}
