//! JSON encodings for every value the command line reads or prints.
//!
//! Elements are strings in the ring's own syntax ("3/2", "[0,1]"), so any
//! value round-trips through its JSON form to a structurally equal value.
//! Matrices are arrays of row arrays. Subspaces and ideals carry their
//! basis as an array of basis vectors. Algebras are self-describing: they
//! embed their ring spec string, and parsing re-runs full validation.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebras::{
    matrix_algebra, quaternion_algebra, AlgebraMap, AzumayaReport, StructureAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projective::{subspace_from_span, ProjPoint, RightIdealRep, Subspace};
use crate::rings::{Elem, Ring};

pub fn elem_to_json(ring: &Ring, e: &Elem) -> Value {
    Value::String(ring.format_elem(e))
}

/// Accepts a string in the ring's element syntax or a bare JSON integer.
pub fn elem_from_json(ring: &Ring, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => ring.parse_elem(s),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("{n} is not an integer")))?;
            Ok(ring.from_i64(i))
        }
        other => Err(Error::Parse(format!("expected an element, got {other}"))),
    }
}

pub fn vec_to_json(ring: &Ring, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|e| elem_to_json(ring, e)).collect())
}

pub fn vec_from_json(ring: &Ring, v: &Value) -> Result<Vec<Elem>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(|e| elem_from_json(ring, e))
        .collect()
}

pub fn matrix_to_json(ring: &Ring, m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows).map(|r| vec_to_json(ring, &m.row(r))).collect();
    json!({
        "rows": m.rows,
        "cols": m.cols,
        "entries": entries,
    })
}

/// Accepts either the object form written by [`matrix_to_json`] or a bare
/// array of rows.
pub fn matrix_from_json(ring: &Ring, v: &Value) -> Result<Matrix> {
    let (entries, shape) = match v {
        Value::Object(map) => {
            let entries = map
                .get("entries")
                .ok_or_else(|| Error::Parse("matrix object lacks \"entries\"".into()))?;
            let dim = |key: &str| {
                map.get(key)
                    .and_then(Value::as_u64)
                    .map(|n| n as usize)
                    .ok_or_else(|| {
                        Error::Parse(format!("matrix object lacks an integer \"{key}\""))
                    })
            };
            (entries, Some((dim("rows")?, dim("cols")?)))
        }
        other => (other, None),
    };
    let rows: Vec<Vec<Elem>> = entries
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of rows, got {entries}")))?
        .iter()
        .map(|row| vec_from_json(ring, row))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix needs at least one row".into()));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Parse("matrix rows have unequal lengths".into()));
    }
    if let Some((r, c)) = shape {
        if r != rows.len() || c != rows[0].len() {
            return Err(Error::Parse(format!(
                "matrix says {r}x{c} but entries are {}x{}",
                rows.len(),
                rows[0].len()
            )));
        }
    }
    Ok(Matrix::from_rows(rows))
}

pub fn point_to_json(ring: &Ring, p: &ProjPoint) -> Value {
    vec_to_json(ring, p.coords())
}

pub fn point_from_json(ring: &Ring, v: &Value) -> Result<ProjPoint> {
    ProjPoint::normalize(ring, vec_from_json(ring, v)?)
}

pub fn subspace_to_json(ring: &Ring, s: &Subspace) -> Value {
    let basis: Vec<Value> = (0..s.dim())
        .map(|j| vec_to_json(ring, &s.basis().col(j)))
        .collect();
    json!({
        "ambient": s.ambient(),
        "dim": s.dim(),
        "chart": s.chart(),
        "basis": basis,
    })
}

/// Accepts either the object form written by [`subspace_to_json`] or a bare
/// array of basis vectors; the span is re-canonicalized either way.
pub fn subspace_from_json(ring: &Ring, v: &Value) -> Result<Subspace> {
    let basis = match v {
        Value::Object(map) => map
            .get("basis")
            .ok_or_else(|| Error::Parse("subspace object lacks \"basis\"".into()))?,
        other => other,
    };
    let vectors: Vec<Vec<Elem>> = basis
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of vectors, got {basis}")))?
        .iter()
        .map(|w| vec_from_json(ring, w))
        .collect::<Result<_>>()?;
    if vectors.is_empty() {
        return Err(Error::Parse(
            "subspace needs at least one basis vector".into(),
        ));
    }
    let ambient = vectors[0].len();
    if vectors.iter().any(|w| w.len() != ambient) {
        return Err(Error::Parse("basis vectors have unequal lengths".into()));
    }
    subspace_from_span(ring, ambient, &vectors)
}

pub fn ideal_to_json(rep: &RightIdealRep) -> Value {
    let ring = rep.algebra().ring();
    json!({
        "algebra_rank": rep.algebra().rank(),
        "space": subspace_to_json(ring, rep.space()),
        "verified": rep.verified(),
    })
}

pub fn algebra_to_json(a: &StructureAlgebra) -> Value {
    let ring = a.ring();
    let sc: Vec<Value> = (0..a.rank())
        .map(|i| {
            Value::Array(
                (0..a.rank())
                    .map(|j| vec_to_json(ring, a.sc(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "ring": ring.to_string(),
        "rank": a.rank(),
        "unit": vec_to_json(ring, a.unit()),
        "sc": sc,
    })
}

/// Parse and fully re-validate a self-describing algebra.
pub fn algebra_from_json(v: &Value) -> Result<(Ring, Arc<StructureAlgebra>)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("expected an algebra object, got {v}")))?;
    let ring_spec = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("algebra object lacks a \"ring\" string".into()))?;
    let ring = Ring::parse(ring_spec)?;
    let sc_rows = obj
        .get("sc")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("algebra object lacks an \"sc\" table".into()))?;
    let sc: Vec<Vec<Vec<Elem>>> = sc_rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("sc table rows must be arrays".into()))?
                .iter()
                .map(|cell| vec_from_json(&ring, cell))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let unit = match obj.get("unit") {
        Some(u) => vec_from_json(&ring, u)?,
        None => {
            return Err(Error::Parse(
                "algebra object lacks a \"unit\" vector".into(),
            ))
        }
    };
    let alg = StructureAlgebra::new(ring.clone(), sc, unit)?;
    Ok((ring, Arc::new(alg)))
}

/// Resolve an `--algebra` argument: `builtin:Mk`, `builtin:Q(a,b)` (both
/// need the ring), or inline JSON (which names its own ring).
pub fn algebra_from_spec(ring: Option<&Ring>, spec: &str) -> Result<(Ring, Arc<StructureAlgebra>)> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let ring = ring.ok_or_else(|| Error::Parse("builtin algebras need --ring".into()))?;
        if let Some(k) = rest.strip_prefix('M') {
            let k: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad matrix algebra size {k:?}")))?;
            if k == 0 || k > 16 {
                return Err(Error::Parse("matrix algebra size must be in 1..=16".into()));
            }
            return Ok((ring.clone(), Arc::new(matrix_algebra(ring, k))));
        }
        if let Some(args) = rest.strip_prefix("Q(").and_then(|s| s.strip_suffix(')')) {
            let parts = split_csv_brackets(args);
            if parts.len() != 2 {
                return Err(Error::Parse(format!(
                    "builtin:Q takes two elements, got {:?}",
                    args
                )));
            }
            let a = ring.parse_elem(&parts[0])?;
            let b = ring.parse_elem(&parts[1])?;
            return Ok((ring.clone(), Arc::new(quaternion_algebra(ring, &a, &b)?)));
        }
        return Err(Error::Parse(format!("unknown builtin algebra {rest:?}")));
    }
    let v: Value =
        serde_json::from_str(spec).map_err(|e| Error::Parse(format!("algebra JSON: {e}")))?;
    algebra_from_json(&v)
}

pub fn map_to_json(map: &AlgebraMap) -> Value {
    let ring = map.source().ring();
    json!({
        "source_rank": map.source().rank(),
        "target_rank": map.target().rank(),
        "matrix": matrix_to_json(ring, map.matrix()),
        "hom_verified": map.hom_verified(),
        "bijective": map.is_bijective(),
    })
}

/// `reason` appears only on rejections, `n` only on passes.
pub fn azumaya_to_json(report: &AzumayaReport) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("is_azumaya".into(), json!(report.is_azumaya));
    if let Some(n) = report.n {
        out.insert("n".into(), json!(n));
    }
    if let Some(reason) = &report.reason {
        out.insert("reason".into(), json!(reason));
    }
    Value::Object(out)
}

/// Split on top-level commas, leaving bracketed groups intact:
/// `"[0,1],2"` gives `["[0,1]", "2"]`.
pub fn split_csv_brackets(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '(' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    out.push(cur.trim().to_string());
    out
}

/// Parse a `--point` style argument: top-level comma separated elements.
pub fn point_from_csv(ring: &Ring, s: &str) -> Result<ProjPoint> {
    let coords: Vec<Elem> = split_csv_brackets(s)
        .iter()
        .map(|part| ring.parse_elem(part))
        .collect::<Result<_>>()?;
    ProjPoint::normalize(ring, coords)
}

// ---------------------------------------------------------------------------
