//! JSON schemas for algebra files, module files, and cached universe
//! bundles. Serialization is canonical: object keys sorted (the default
//! serde_json map is ordered), arrays in the documented orders, compact
//! encoding. Parsing validates against the domain types and reports
//! position-annotated errors.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::MatrixFp;
use crate::measures::Measure;
use crate::quiver::{Algebra, Quiver, Representation};
use crate::subcat::IndUniverse;

fn parse_error(context: &str, message: impl ToString) -> Error {
    Error::Parse { context: context.to_string(), message: message.to_string() }
}

#[derive(Deserialize)]
struct AlgebraFile {
    p: u64,
    vertices: Vec<String>,
    arrows: Vec<ArrowFile>,
    #[serde(default)]
    relations: Vec<Vec<TermFile>>,
}

#[derive(Deserialize)]
struct ArrowFile {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
struct TermFile {
    coeff: u64,
    path: Vec<String>,
}

/// Parses an algebra file, e.g.
/// `{"p":2,"vertices":["1","2"],"arrows":[{"name":"a","src":"1","tgt":"2"}],"relations":[]}`.
pub fn parse_algebra(bytes: &[u8]) -> Result<Arc<Algebra>> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error("algebra file", e))?;
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| parse_error("algebra file", e))?;
    let quiver = Quiver::new(
        file.vertices,
        file.arrows.into_iter().map(|a| (a.name, a.src, a.tgt)).collect(),
    )?;
    let relations = file
        .relations
        .into_iter()
        .map(|r| r.into_iter().map(|t| (t.coeff, t.path)).collect())
        .collect();
    Algebra::new(quiver, relations, file.p)
}

#[derive(Deserialize)]
struct ModuleFile {
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<u64>>>,
}

/// Parses a module file against its algebra:
/// `{"dims":{"1":1,"2":2},"maps":{"a":[[1],[0]],"b":[[0],[1]]}}`.
/// Vertices missing from `dims` get dimension zero; arrows missing from
/// `maps` get the zero matrix of the implied shape.
pub fn parse_module(algebra: &Arc<Algebra>, bytes: &[u8]) -> Result<Representation> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error("module file", e))?;
    let file: ModuleFile =
        serde_json::from_str(text).map_err(|e| parse_error("module file", e))?;
    let quiver = algebra.quiver();
    let mut dims = vec![0usize; quiver.vertex_count()];
    for (name, d) in &file.dims {
        dims[quiver.vertex_index(name)?] = *d;
    }
    for name in file.maps.keys() {
        quiver.arrow_index(name)?;
    }
    let mut maps = Vec::with_capacity(quiver.arrow_count());
    for arrow in quiver.arrows() {
        let (rows, cols) = (dims[arrow.tgt], dims[arrow.src]);
        let m = match file.maps.get(&arrow.name) {
            None => MatrixFp::zeros(rows, cols, algebra.modulus()),
            Some(nested) => {
                if nested.len() != rows || nested.iter().any(|r| r.len() != cols) {
                    return Err(Error::ShapeViolation {
                        arrow: arrow.name.clone(),
                        rows,
                        cols,
                        got_rows: nested.len(),
                        got_cols: nested.first().map_or(0, Vec::len),
                    });
                }
                let flat: Vec<u64> = nested.iter().flatten().copied().collect();
                MatrixFp::new(rows, cols, flat, algebra.modulus() as u64).map_err(|e| {
                    parse_error(&format!("map for arrow `{}`", arrow.name), e)
                })?
            }
        };
        maps.push(m);
    }
    Representation::new(Arc::clone(algebra), dims, maps)
}

pub fn algebra_to_value(algebra: &Algebra) -> Value {
    let quiver = algebra.quiver();
    let arrows: Vec<Value> = quiver
        .arrows()
        .iter()
        .map(|a| {
            json!({
                "name": a.name,
                "src": quiver.vertices()[a.src],
                "tgt": quiver.vertices()[a.tgt],
            })
        })
        .collect();
    let relations: Vec<Value> = algebra
        .relations()
        .iter()
        .map(|r| {
            let terms: Vec<Value> = r
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "coeff": t.coeff,
                        "path": t.path.iter().map(|&a| quiver.arrows()[a].name.clone()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Value::Array(terms)
        })
        .collect();
    json!({
        "p": algebra.modulus(),
        "vertices": quiver.vertices(),
        "arrows": arrows,
        "relations": relations,
    })
}

fn matrix_to_nested(m: &MatrixFp) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(|&e| json!(e)).collect()))
        .collect();
    Value::Array(rows)
}

pub fn module_to_value(x: &Representation) -> Value {
    let quiver = x.algebra().quiver();
    let dims: BTreeMap<String, usize> = quiver
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), x.dims()[i]))
        .collect();
    let maps: BTreeMap<String, Value> = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), matrix_to_nested(x.map(i))))
        .collect();
    json!({ "dims": dims, "maps": maps })
}

pub fn measure_to_value(m: &Measure) -> Value {
    serde_json::to_value(m).expect("measure serialization is infallible")
}

/// Serializes a universe to a cacheable bundle: the algebra, the bound, the
/// members as module files, the preorder matrix and the measures.
pub fn universe_to_value(u: &IndUniverse) -> Value {
    json!({
        "algebra": algebra_to_value(u.algebra()),
        "max_length": u.max_length(),
        "members": u.members().iter().map(module_to_value).collect::<Vec<_>>(),
        "preorder": u.preorder(),
        "measures": u.measures().iter().map(measure_to_value).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
struct UniverseFile {
    algebra: Value,
    max_length: usize,
    members: Vec<Value>,
    preorder: Vec<Vec<bool>>,
    measures: Vec<Measure>,
}

/// Loads a cached universe bundle. Members are re-validated against the
/// algebra; the preorder table and measures are trusted as cached data.
pub fn parse_universe(bytes: &[u8]) -> Result<IndUniverse> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error("universe bundle", e))?;
    let file: UniverseFile =
        serde_json::from_str(text).map_err(|e| parse_error("universe bundle", e))?;
    let algebra = parse_algebra(file.algebra.to_string().as_bytes())?;
    let members = file
        .members
        .iter()
        .map(|m| parse_module(&algebra, m.to_string().as_bytes()))
        .collect::<Result<Vec<_>>>()?;
    if file.preorder.len() != members.len()
        || file.preorder.iter().any(|row| row.len() != members.len())
        || file.measures.len() != members.len()
    {
        return Err(parse_error("universe bundle", "table sizes do not match member count"));
    }
    Ok(IndUniverse::from_parts(
        algebra,
        file.max_length,
        members,
        file.preorder,
        file.measures,
    ))
}

/// Canonical byte form: compact JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("value serialization is infallible");
    s.push('\n');
    s
}
