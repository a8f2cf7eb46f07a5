//! JSON file formats. Matrices are row-major nested arrays whose entries are
//! integers or `"a/b"` strings on input and always strings on output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::forms::{Family, GraphType};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Arrow, Quiver};
use crate::radical::{Group, GroupRep};
use crate::rep::{Morphism, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub type MatrixJson = Vec<Vec<Entry>>;

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| Entry::Text(s.to_string())).collect()).collect()
}

/// Parses a `rows × cols` matrix; an empty array stands for any matrix with no entries.
pub fn matrix_from_json(field: Field, rows: usize, cols: usize, m: &MatrixJson) -> Result<Matrix> {
    if m.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        let got_cols = m.first().map_or(0, Vec::len);
        return Err(Error::Shape(format!("expected {rows}x{cols}, got {}x{got_cols}", m.len())));
    }
    let parsed = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Entry::Int(v) => Ok(field.from_i64(*v)),
                    Entry::Text(s) => field.parse_scalar(s),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, cols, parsed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: usize,
    pub arrows: Vec<ArrowJson>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> QuiverJson {
        QuiverJson {
            vertices: q.vertex_count(),
            arrows: q.arrows().iter().map(|a| ArrowJson { label: a.label.clone(), from: a.source, to: a.target }).collect(),
        }
    }
}

impl QuiverJson {
    pub fn to_quiver(&self) -> Result<Quiver> {
        let arrows = self.arrows.iter().map(|a| Arrow { label: a.label.clone(), source: a.from, target: a.to }).collect();
        Quiver::new(self.vertices, arrows)
    }
}

/// A quiver written inline or as a path to a quiver file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuiverRef {
    Inline(QuiverJson),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub quiver: QuiverRef,
    pub field: String,
    pub dims: Vec<usize>,
    /// Keyed by arrow label; an arrow may be omitted only when its matrix has no entries.
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixJson>,
}

impl RepJson {
    pub fn from_rep(x: &Representation) -> RepJson {
        let matrices = x
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| (a.label.clone(), matrix_to_json(x.map(k))))
            .collect();
        RepJson {
            quiver: QuiverRef::Inline(x.quiver().into()),
            field: x.field().to_string(),
            dims: x.dims().to_vec(),
            matrices,
        }
    }

    pub fn field(&self) -> Result<Field> {
        self.field.parse()
    }

    /// Builds the representation over `q`, which the caller resolves from [`RepJson::quiver`].
    /// An inline quiver must agree with `q`.
    pub fn to_rep(&self, q: &Quiver) -> Result<Representation> {
        if let QuiverRef::Inline(inline) = &self.quiver {
            if &inline.to_quiver()? != q {
                return Err(Error::Invalid("the representation's quiver differs from the given quiver".into()));
            }
        }
        let field = self.field()?;
        if self.dims.len() != q.vertex_count() {
            return Err(Error::Shape(format!("{} dims for {} vertices", self.dims.len(), q.vertex_count())));
        }
        if let Some(extra) = self.matrices.keys().find(|l| q.arrow_index(l).is_none()) {
            return Err(Error::Invalid(format!("no arrow labelled {extra:?}")));
        }
        let mut maps = Vec::with_capacity(q.arrows().len());
        for a in q.arrows() {
            let (rows, cols) = (self.dims[a.target - 1], self.dims[a.source - 1]);
            let m = match self.matrices.get(&a.label) {
                Some(m) => matrix_from_json(field, rows, cols, m)
                    .map_err(|e| Error::Shape(format!("arrow {}: {e}", a.label)))?,
                None if rows * cols == 0 => Matrix::zeros(field, rows, cols),
                None => return Err(Error::Invalid(format!("missing matrix for arrow {:?}", a.label))),
            };
            maps.push(m);
        }
        Representation::new(field, q.clone(), self.dims.clone(), maps)
    }

    /// [`RepJson::to_rep`] for an inline quiver.
    pub fn to_rep_inline(&self) -> Result<Representation> {
        match &self.quiver {
            QuiverRef::Inline(q) => self.to_rep(&q.to_quiver()?),
            QuiverRef::Path(p) => Err(Error::Invalid(format!("quiver {p:?} must be resolved by the caller"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRepJson {
    pub group: Group,
    pub field: String,
    pub dim: usize,
    pub gamma: Vec<MatrixJson>,
}

impl GroupRepJson {
    pub fn from_group_rep(x: &GroupRep) -> GroupRepJson {
        GroupRepJson {
            group: x.group(),
            field: x.field().to_string(),
            dim: x.dim(),
            gamma: x.gamma().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_group_rep(&self) -> Result<GroupRep> {
        let field: Field = self.field.parse()?;
        let gamma = self.gamma.iter().map(|g| matrix_from_json(field, self.dim, self.dim, g)).collect::<Result<_>>()?;
        GroupRep::new(self.group, field, self.dim, gamma)
    }
}

/// `{"type":"dynkin","family":"E","n":8}`, `{"type":"euclidean","family":"A~","m":1,"delta":[1,1]}`
/// or `{"type":"other"}`.
pub fn graph_type_json(t: &GraphType) -> Value {
    match t {
        GraphType::Dynkin { family, n } => json!({"type": "dynkin", "family": family.letter(), "n": n}),
        GraphType::Euclidean { family, m, delta } => {
            json!({"type": "euclidean", "family": format!("{}~", family.letter()), "m": m, "delta": delta})
        }
        GraphType::Other => json!({"type": "other"}),
    }
}

pub fn graph_type_from_json(v: &Value) -> Result<GraphType> {
    let bad = || Error::Invalid(format!("not a graph type: {v}"));
    let family = |s: &str| match s.trim_end_matches('~') {
        "A" => Ok(Family::A),
        "D" => Ok(Family::D),
        "E" => Ok(Family::E),
        _ => Err(bad()),
    };
    let num = |k: &str| v.get(k).and_then(Value::as_u64).map(|n| n as usize).ok_or_else(bad);
    match v.get("type").and_then(Value::as_str) {
        Some("dynkin") => Ok(GraphType::Dynkin { family: family(v["family"].as_str().ok_or_else(bad)?)?, n: num("n")? }),
        Some("euclidean") => Ok(GraphType::Euclidean {
            family: family(v["family"].as_str().ok_or_else(bad)?)?,
            m: num("m")?,
            delta: serde_json::from_value(v["delta"].clone()).map_err(|_| bad())?,
        }),
        Some("other") => Ok(GraphType::Other),
        _ => Err(bad()),
    }
}

/// Components of a morphism as matrices, vertex by vertex.
pub fn morphism_json(f: &Morphism) -> Vec<MatrixJson> {
    f.components().iter().map(matrix_to_json).collect()
}

/// `{"summands": [{"dims", "multiplicity", "tag"?, "rep"}], "witness": [...]}`, the witness
/// being the isomorphism from the sum (summands in order, with repeats) to the input.
pub fn decomposition_json(d: &Decomposition, tags: &[Option<Value>]) -> Value {
    let summands: Vec<Value> = d
        .summands
        .iter()
        .zip(tags.iter().chain(std::iter::repeat(&None)))
        .map(|(s, t)| {
            let mut v = json!({
                "dims": s.rep.dims(),
                "multiplicity": s.multiplicity,
                "rep": RepJson::from_rep(&s.rep),
            });
            if let Some(t) = t {
                v["tag"] = t.clone();
            }
            v
        })
        .collect();
    json!({"summands": summands, "witness": morphism_json(&d.witness)})
}
