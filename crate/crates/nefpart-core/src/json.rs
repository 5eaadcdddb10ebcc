//! JSON (de)serialization of the domain types. Rational numbers are encoded
//! as strings `"p/q"` (or `"p"` when integral); exponents and matrix entries
//! as JSON integers.

use crate::classify::ClassificationRow;
use crate::geometry::*;
use crate::gnp::*;
use crate::goodpair::*;
use crate::linalg::*;
use crate::regularity::CyReport;
use crate::toric::*;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Map, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{0}: {1}")]
    Schema(String, String),
    #[error("geometry error: {0}")]
    Geometry(#[from] GeomError),
    #[error("gnp error: {0}")]
    Gnp(#[from] GnpError),
}

fn err(pointer: &str, msg: &str) -> JsonError {
    JsonError::Schema(pointer.to_string(), msg.to_string())
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).ok()?;
            let q = Int::from_str(q.trim()).ok()?;
            if q.is_zero_or_negative() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => Some(Rat::from_integer(Int::from_str(s.trim()).ok()?)),
    }
}

trait ZeroOrNeg {
    fn is_zero_or_negative(&self) -> bool;
}
impl ZeroOrNeg for Int {
    fn is_zero_or_negative(&self) -> bool {
        !self.is_positive()
    }
}

fn rat_value(v: &Value, ptr: &str) -> Result<Rat, JsonError> {
    match v {
        Value::String(s) => rat_from_str(s).ok_or_else(|| err(ptr, "invalid rational")),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| err(ptr, "expected integer or \"p/q\" string"))?;
            Ok(Rat::from_integer(Int::from(i)))
        }
        _ => Err(err(ptr, "expected rational as string or integer")),
    }
}

fn int_value(v: &Value, ptr: &str) -> Result<Int, JsonError> {
    match v {
        Value::Number(n) => Ok(Int::from(
            n.as_i64().ok_or_else(|| err(ptr, "expected integer"))?,
        )),
        Value::String(s) => Int::from_str(s.trim()).map_err(|_| err(ptr, "invalid integer")),
        _ => Err(err(ptr, "expected integer")),
    }
}

fn usize_value(v: &Value, ptr: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(ptr, "expected nonnegative integer"))
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| err(ptr, "expected array"))
}

fn qvec_value(v: &Value, ptr: &str) -> Result<QVec, JsonError> {
    array(v, ptr)?
        .iter()
        .enumerate()
        .map(|(i, x)| rat_value(x, &format!("{ptr}/{i}")))
        .collect()
}

fn int_vec_value(v: &Value, ptr: &str) -> Result<Vec<Int>, JsonError> {
    array(v, ptr)?
        .iter()
        .enumerate()
        .map(|(i, x)| int_value(x, &format!("{ptr}/{i}")))
        .collect()
}

pub fn int_vec_to_json(v: &[Int]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| json!(x.to_i64().expect("exponent fits in i64")))
            .collect(),
    )
}

pub fn qvec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| json!(rat_to_string(x))).collect())
}

// ---------------------------------------------------------------- polytopes

pub fn polytope_to_json(p: &RationalPolytope) -> Value {
    json!({
        "ambient_dim": p.ambient_dim,
        "dim": p.dim,
        "vertices": p.vertices.iter().map(|v| qvec_to_json(v)).collect::<Vec<_>>(),
        "normals": p.facets.iter().map(|h| int_vec_to_json(&h.normal)).collect::<Vec<_>>(),
        "offsets": p.facets.iter().map(|h| json!(rat_to_string(&h.offset))).collect::<Vec<_>>(),
        "equation_normals": p.equations.iter().map(|h| int_vec_to_json(&h.normal)).collect::<Vec<_>>(),
        "equation_offsets": p.equations.iter().map(|h| json!(rat_to_string(&h.offset))).collect::<Vec<_>>(),
    })
}

/// Accepts either a V-presentation `{"ambient_dim", "vertices"}` or an
/// H-presentation `{"ambient_dim", "normals", "offsets"}` and canonicalizes.
pub fn polytope_from_json(v: &Value, ptr: &str) -> Result<RationalPolytope, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(ptr, "expected polytope object"))?;
    let ambient_dim = usize_value(
        obj.get("ambient_dim")
            .ok_or_else(|| err(&format!("{ptr}/ambient_dim"), "missing"))?,
        &format!("{ptr}/ambient_dim"),
    )?;
    if let Some(vs) = obj.get("vertices") {
        let pts: Vec<QVec> = array(vs, &format!("{ptr}/vertices"))?
            .iter()
            .enumerate()
            .map(|(i, x)| qvec_value(x, &format!("{ptr}/vertices/{i}")))
            .collect::<Result<_, _>>()?;
        if pts.is_empty() {
            return Ok(RationalPolytope::empty(ambient_dim));
        }
        Ok(convex_hull(&pts, ambient_dim)?)
    } else if let (Some(ns), Some(os)) = (obj.get("normals"), obj.get("offsets")) {
        let normals: Vec<QVec> = array(ns, &format!("{ptr}/normals"))?
            .iter()
            .enumerate()
            .map(|(i, x)| qvec_value(x, &format!("{ptr}/normals/{i}")))
            .collect::<Result<_, _>>()?;
        let offsets: Vec<Rat> = array(os, &format!("{ptr}/offsets"))?
            .iter()
            .enumerate()
            .map(|(i, x)| rat_value(x, &format!("{ptr}/offsets/{i}")))
            .collect::<Result<_, _>>()?;
        if normals.len() != offsets.len() {
            return Err(err(ptr, "normals and offsets differ in length"));
        }
        let hs: Vec<Halfspace> = normals
            .iter()
            .zip(&offsets)
            .map(|(n, o)| halfspace_from_rational(n, o))
            .collect();
        Ok(h_to_v(&hs, &[], ambient_dim)?)
    } else {
        Err(err(ptr, "expected \"vertices\" or \"normals\"/\"offsets\""))
    }
}

// --------------------------------------------------------------- partitions

pub fn partition_to_json(p: &VertexPartition) -> Value {
    json!({ "blocks": p.blocks })
}

pub fn partition_from_json(v: &Value, ptr: &str) -> Result<VertexPartition, JsonError> {
    let blocks_v = v
        .get("blocks")
        .ok_or_else(|| err(&format!("{ptr}/blocks"), "missing"))?;
    let blocks: Vec<Vec<usize>> = array(blocks_v, &format!("{ptr}/blocks"))?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            array(b, &format!("{ptr}/blocks/{i}"))?
                .iter()
                .enumerate()
                .map(|(j, x)| usize_value(x, &format!("{ptr}/blocks/{i}/{j}")))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(VertexPartition { blocks })
}

// --------------------------------------------------------------------- GNPs

pub fn gnp_to_json(g: &GeneralizedNefPartition) -> Value {
    json!({
        "delta": polytope_to_json(&g.delta),
        "partition": partition_to_json(&g.partition),
        "parts": g.parts.iter().map(polytope_to_json).collect::<Vec<_>>(),
    })
}

pub fn gnp_from_json(v: &Value, ptr: &str) -> Result<GeneralizedNefPartition, JsonError> {
    let delta = polytope_from_json(
        v.get("delta")
            .ok_or_else(|| err(&format!("{ptr}/delta"), "missing"))?,
        &format!("{ptr}/delta"),
    )?;
    let partition = partition_from_json(
        v.get("partition")
            .ok_or_else(|| err(&format!("{ptr}/partition"), "missing"))?,
        &format!("{ptr}/partition"),
    )?;
    match is_gnp(&delta, &partition)? {
        GnpResult::Gnp(g, _) => Ok(g),
        GnpResult::NotGnp(w) => Err(err(
            ptr,
            &format!(
                "partition is not a generalized nef partition (part {} fails on facet {:?})",
                w.part, w.facet
            ),
        )),
    }
}

pub fn good_pair_to_json(p: &GoodPair) -> Value {
    json!({
        "inner": gnp_to_json(&p.inner),
        "outer": gnp_to_json(&p.outer),
    })
}

pub fn good_pair_from_json(v: &Value, ptr: &str) -> Result<GoodPair, JsonError> {
    let inner = gnp_from_json(
        v.get("inner")
            .ok_or_else(|| err(&format!("{ptr}/inner"), "missing"))?,
        &format!("{ptr}/inner"),
    )?;
    let outer = gnp_from_json(
        v.get("outer")
            .ok_or_else(|| err(&format!("{ptr}/outer"), "missing"))?,
        &format!("{ptr}/outer"),
    )?;
    GoodPair::new(inner, outer).map_err(|e| err(ptr, &format!("not a good pair: {e}")))
}

// ------------------------------------------------------------ ambient / Cox

pub fn quotient_to_json(q: &QuotientGrading) -> Value {
    json!({
        "order": q.order.to_i64().expect("order fits in i64"),
        "residues": int_vec_to_json(&q.residues),
    })
}

pub fn ambient_to_json(a: &ToricAmbient) -> Value {
    let fake = fake_wps_data(a);
    json!({
        "dim": a.dim,
        "rays": a.rays.iter().map(|r| int_vec_to_json(r)).collect::<Vec<_>>(),
        "weights": fake.as_ref().map(|f| int_vec_to_json(&f.weights)),
        "quotient_gradings": fake
            .as_ref()
            .map(|f| f.quotient_gradings.iter().map(quotient_to_json).collect::<Vec<_>>()),
        "free_gradings": a.free_gradings.iter().map(|r| int_vec_to_json(r)).collect::<Vec<_>>(),
    })
}

/// Rebuild an ambient from its fan rays (the vertices of a Q-Fano polytope's
/// polar).
pub fn ambient_from_rays(rays: &[Vec<Int>], dim: usize) -> Result<ToricAmbient, JsonError> {
    let pts: Vec<QVec> = rays.iter().map(|r| int_to_qvec(r)).collect();
    let hull = convex_hull(&pts, dim)?;
    let delta = polar(&hull)?;
    ambient_from_polytope(&delta)
        .map_err(|e| err("/rays", &format!("rays do not define a Q-Fano fan: {e}")))
}

pub fn cox_system_to_json(a: &ToricAmbient, system: &CoxSystem, marked: Option<&[Vec<Int>]>) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "rays".into(),
        Value::Array(a.rays.iter().map(|r| int_vec_to_json(r)).collect()),
    );
    obj.insert(
        "supports".into(),
        Value::Array(
            system
                .supports
                .iter()
                .map(|s| Value::Array(s.iter().map(|e| int_vec_to_json(e)).collect()))
                .collect(),
        ),
    );
    obj.insert(
        "degrees".into(),
        Value::Array(
            system
                .degrees
                .iter()
                .map(|d| {
                    json!({
                        "free": int_vec_to_json(&d.free),
                        "torsion": int_vec_to_json(&d.torsion),
                    })
                })
                .collect(),
        ),
    );
    if let Some(m) = marked {
        obj.insert(
            "marked".into(),
            Value::Array(m.iter().map(|e| int_vec_to_json(e)).collect()),
        );
    }
    Value::Object(obj)
}

pub struct SystemInput {
    pub ambient: ToricAmbient,
    pub system: CoxSystem,
    pub marked: Option<Vec<Vec<Int>>>,
}

/// Parse `{"rays", "supports", "marked"?}`: the ambient is rebuilt from the
/// rays and the supports validated against it.
pub fn system_from_json(v: &Value, ptr: &str) -> Result<SystemInput, JsonError> {
    let rays_v = v
        .get("rays")
        .ok_or_else(|| err(&format!("{ptr}/rays"), "missing"))?;
    let rays: Vec<Vec<Int>> = array(rays_v, &format!("{ptr}/rays"))?
        .iter()
        .enumerate()
        .map(|(i, r)| int_vec_value(r, &format!("{ptr}/rays/{i}")))
        .collect::<Result<_, _>>()?;
    if rays.is_empty() {
        return Err(err(&format!("{ptr}/rays"), "empty"));
    }
    let dim = rays[0].len();
    let ambient = ambient_from_rays(&rays, dim)?;
    // The user's ray order may differ from the canonical one: remap exponents.
    let pos: Vec<usize> = rays
        .iter()
        .map(|r| {
            ambient
                .rays
                .iter()
                .position(|x| x == r)
                .ok_or_else(|| err(&format!("{ptr}/rays"), "rays must be primitive and distinct"))
        })
        .collect::<Result<_, _>>()?;
    let remap = |e: &[Int]| -> Vec<Int> {
        let mut out = vec![Int::from(0); e.len()];
        for (j, x) in e.iter().enumerate() {
            out[pos[j]] = x.clone();
        }
        out
    };
    let supports_v = v
        .get("supports")
        .ok_or_else(|| err(&format!("{ptr}/supports"), "missing"))?;
    let supports: Vec<Vec<Vec<Int>>> = array(supports_v, &format!("{ptr}/supports"))?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            array(s, &format!("{ptr}/supports/{i}"))?
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let raw = int_vec_value(e, &format!("{ptr}/supports/{i}/{j}"))?;
                    if raw.len() != rays.len() {
                        return Err(err(
                            &format!("{ptr}/supports/{i}/{j}"),
                            "exponent length does not match the number of rays",
                        ));
                    }
                    Ok(remap(&raw))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let system = cox_system(&ambient, &supports)
        .map_err(|e| err(&format!("{ptr}/supports"), &e.to_string()))?;
    let marked = match v.get("marked") {
        None | Some(Value::Null) => None,
        Some(mv) => Some(
            array(mv, &format!("{ptr}/marked"))?
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let raw = int_vec_value(e, &format!("{ptr}/marked/{i}"))?;
                    if raw.len() != rays.len() {
                        return Err(err(
                            &format!("{ptr}/marked/{i}"),
                            "exponent length does not match the number of rays",
                        ));
                    }
                    Ok(remap(&raw))
                })
                .collect::<Result<_, _>>()?,
        ),
    };
    Ok(SystemInput {
        ambient,
        system,
        marked,
    })
}

// ------------------------------------------------------------------ outputs

pub fn pair_matrix_to_json(m: &PairMatrix) -> Value {
    let label = |l: &PairLabel| -> Value {
        json!({
            "block": l.0,
            "vertex": l.1.as_ref().map(|v| qvec_to_json(v)),
        })
    };
    json!({
        "entries": m
            .entries
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| json!(x.to_i64().expect("entry fits"))).collect()))
            .collect::<Vec<_>>(),
        "row_labels": m.row_labels.iter().map(label).collect::<Vec<_>>(),
        "col_labels": m.col_labels.iter().map(label).collect::<Vec<_>>(),
    })
}

pub fn cy_report_to_json(r: &CyReport) -> Value {
    json!({
        "quasismooth": r.quasismooth,
        "well_formed": r.well_formed,
        "cy": r.cy,
        "witness": r.witness,
        "checks": r
            .checks
            .iter()
            .map(|(k, v)| (k.clone(), Value::Bool(*v)))
            .collect::<Map<String, Value>>(),
        "budget_exceeded": r.budget_exceeded,
    })
}

pub fn classification_row_to_json(r: &ClassificationRow) -> Value {
    let supports = |s: &Vec<Vec<Vec<Int>>>| -> Value {
        Value::Array(
            s.iter()
                .map(|eq| Value::Array(eq.iter().map(|e| int_vec_to_json(e)).collect()))
                .collect(),
        )
    };
    json!({
        "weights": r.weights,
        "degrees": [r.degrees.0, r.degrees.1],
        "pair_id": r.pair_id,
        "outer_blocks": r.outer_blocks,
        "vertex_supports": supports(&r.vertex_supports),
        "marked": Value::Array(r.marked.iter().map(|e| int_vec_to_json(e)).collect()),
        "irreducible": r.irreducible,
        "quasismooth": r.quasismooth,
        "dual_weights": r.dual_ambient.as_ref().map(|d| int_vec_to_json(&d.weights)),
        "dual_quotient_gradings": r
            .dual_ambient
            .as_ref()
            .map(|d| d.quotient_gradings.iter().map(quotient_to_json).collect::<Vec<_>>()),
        "dual_vertex_supports": supports(&r.dual_vertex_supports),
        "dual_marked": Value::Array(r.dual_marked.iter().map(|e| int_vec_to_json(e)).collect()),
        "dual_quasismooth": r.dual_quasismooth,
        "budget_exceeded": r.budget_exceeded,
    })
}
