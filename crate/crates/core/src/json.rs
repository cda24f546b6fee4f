//! JSON encodings shared by the command line tool and the test fixtures.
//!
//! Ids are `{"kind": "pair"|"plus"|"minus", "i": int, "j": int|"inf"}`,
//! objects `{"shape": {...}, "summands": [{"id": ..., "mult": int}]}`.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bracket::RankVector;
use crate::error::{Error, Result};
use crate::oracle::SubspaceConfig;
use crate::order::{OrbitPoset, Relation};
use crate::quiver::{FlagObject, IndecId, Shape};
use crate::regions::Region;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub p: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexJson {
    Num(usize),
    Word(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdJson {
    pub kind: String,
    pub i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IndexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub id: IdJson,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectJson {
    pub shape: ShapeJson,
    pub summands: Vec<SummandJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ConfigJson {
    n: usize,
    a: Vec<usize>,
    q: u32,
    #[serde(rename = "U")]
    u: Vec<Vec<i64>>,
    #[serde(rename = "W")]
    w: Vec<Vec<i64>>,
    /// Optional basis adapted to the flag; the standard flag when absent.
    #[serde(rename = "flag", default, skip_serializing_if = "Option::is_none")]
    flag: Option<Vec<Vec<i64>>>,
}

pub fn shape_to_json(shape: Shape) -> ShapeJson {
    match shape {
        Shape::A { p, q } => ShapeJson { kind: "A".into(), p, q: Some(q) },
        Shape::D { p } => ShapeJson { kind: "D".into(), p, q: None },
    }
}

pub fn shape_from_json(s: &ShapeJson) -> Result<Shape> {
    match (s.kind.as_str(), s.q) {
        ("A", Some(q)) => Shape::type_a(s.p, q),
        ("A", None) => Err(Error::Parse("type A shape needs q".into())),
        ("D", _) => Shape::type_d(s.p),
        (other, _) => Err(Error::Parse(format!("unknown shape type {other:?}"))),
    }
}

pub fn id_to_json(shape: Shape, id: IndecId) -> IdJson {
    let idx = |t: usize| {
        if shape.is_type_d() && t == shape.inf() {
            IndexJson::Word("inf".into())
        } else {
            IndexJson::Num(t)
        }
    };
    match id {
        IndecId::A { i, j } => IdJson { kind: "pair".into(), i, j: Some(IndexJson::Num(j)) },
        IndecId::Pair { i, j } => IdJson { kind: "pair".into(), i, j: Some(idx(j)) },
        IndecId::Plus(i) => IdJson { kind: "plus".into(), i, j: None },
        IndecId::Minus(i) => IdJson { kind: "minus".into(), i, j: None },
    }
}

pub fn id_from_json(shape: Shape, v: &IdJson) -> Result<IndecId> {
    let id = match (v.kind.as_str(), &v.j) {
        ("pair", Some(j)) => {
            let j = match j {
                IndexJson::Num(j) => *j,
                IndexJson::Word(w) if w == "inf" && shape.is_type_d() => shape.inf(),
                IndexJson::Word(w) => return Err(Error::Parse(format!("bad index {w:?}"))),
            };
            if shape.is_type_d() {
                IndecId::Pair { i: v.i, j }
            } else {
                IndecId::A { i: v.i, j }
            }
        }
        ("pair", None) => return Err(Error::Parse("pair id needs j".into())),
        ("plus", _) => IndecId::Plus(v.i),
        ("minus", _) => IndecId::Minus(v.i),
        (other, _) => return Err(Error::Parse(format!("unknown id kind {other:?}"))),
    };
    if !shape.contains(id) {
        return Err(Error::ForeignId { id, shape });
    }
    Ok(id)
}

pub fn object_to_json(f: &FlagObject) -> ObjectJson {
    ObjectJson {
        shape: shape_to_json(f.shape),
        summands: f.summands().into_iter().map(|(id, mult)| SummandJson { id: id_to_json(f.shape, id), mult }).collect(),
    }
}

pub fn object_from_json(v: &ObjectJson) -> Result<FlagObject> {
    let shape = shape_from_json(&v.shape)?;
    let mut out = FlagObject::empty(shape);
    for s in &v.summands {
        out.add(id_from_json(shape, &s.id)?, s.mult)?;
    }
    Ok(out)
}

pub fn parse_object(text: &str) -> Result<FlagObject> {
    let v: ObjectJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    object_from_json(&v)
}

pub fn object_to_string(f: &FlagObject) -> String {
    serde_json::to_string_pretty(&object_to_json(f)).expect("serialisable")
}

pub fn region_to_json(r: &Region) -> Value {
    let mut params = serde_json::Map::new();
    for (k, v) in r.params.entries() {
        let val = if r.shape.is_type_d() && v == r.shape.inf() { json!("inf") } else { json!(v) };
        params.insert(k.to_string(), val);
    }
    json!({
        "kind": r.kind.as_str(),
        "params": params,
        "init": r.init().iter().map(|&id| id_to_json(r.shape, id)).collect::<Vec<_>>(),
        "term": r.term().iter().map(|&id| id_to_json(r.shape, id)).collect::<Vec<_>>(),
    })
}

pub fn rank_vector_to_json(rv: &RankVector) -> Value {
    json!({
        "ids": rv.ids().into_iter().map(|id| id_to_json(rv.shape, id)).collect::<Vec<_>>(),
        "values": rv.values(),
    })
}

/// Relation rows as base64 of little-endian bit rows.
pub fn relation_to_json(rel: &Relation) -> Vec<String> {
    (0..rel.len()).map(|x| STANDARD.encode(rel.row_bytes(x))).collect()
}

pub fn relation_from_json(rows: &[String]) -> Result<Relation> {
    let bytes: Result<Vec<Vec<u8>>> =
        rows.iter().map(|r| STANDARD.decode(r).map_err(|e| Error::Parse(e.to_string()))).collect();
    Ok(Relation::from_row_bytes(&bytes?))
}

/// Nodes, edges (move edges, or the cover pairs when `reduced`) and the
/// relation of a poset.
pub fn poset_to_json(poset: &OrbitPoset, reduced: bool) -> Result<Value> {
    let nodes: Vec<Value> = poset
        .nodes
        .iter()
        .enumerate()
        .map(|(k, f)| json!({"index": k, "label": f.label(), "object": object_to_json(f)}))
        .collect();
    let edges: Vec<Value> = if reduced {
        poset.hasse()?.into_iter().map(|(a, b)| json!({"from": a, "to": b})).collect()
    } else if poset.edges.is_empty() {
        poset.relation.strict_pairs().into_iter().map(|(a, b)| json!({"from": a, "to": b})).collect()
    } else {
        poset
            .edges
            .iter()
            .map(|e| json!({"from": e.from, "to": e.to, "kind": e.region.kind.as_str(), "region": region_to_json(&e.region)}))
            .collect()
    };
    Ok(json!({
        "order": poset.order.as_str(),
        "shape": shape_to_json(poset.shape),
        "dv": poset.dv.to_string(),
        "nodes": nodes,
        "edges": edges,
        "relation": relation_to_json(&poset.relation),
    }))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph. Unreduced move/weak output labels edges by region
/// kind; reduced output carries cover pairs only.
pub fn poset_to_dot(poset: &OrbitPoset, reduced: bool) -> Result<String> {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (k, f) in poset.nodes.iter().enumerate() {
        out.push_str(&format!("  n{k} [label=\"{}\"];\n", dot_escape(&f.label())));
    }
    if reduced {
        for (a, b) in poset.hasse()? {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
    } else if poset.edges.is_empty() {
        for (a, b) in poset.relation.strict_pairs() {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
    } else {
        for e in &poset.edges {
            out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to, e.region.kind));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn config_from_json(text: &str) -> Result<SubspaceConfig> {
    let c: ConfigJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let q = c.q;
    let red = |m: Vec<Vec<i64>>| -> Vec<Vec<u32>> {
        m.into_iter().map(|r| r.into_iter().map(|x| x.rem_euclid(q as i64) as u32).collect()).collect()
    };
    if c.a.last().copied().unwrap_or(0) != c.n {
        return Err(Error::InvalidConfig(format!("n = {} but the flag ends at {:?}", c.n, c.a.last())));
    }
    match c.flag {
        Some(flag) => SubspaceConfig::with_flag(q, c.a, red(flag), red(c.u), red(c.w)),
        None => SubspaceConfig::new(q, c.a, red(c.u), red(c.w)),
    }
}

pub fn config_to_json(c: &SubspaceConfig) -> Value {
    json!({
        "n": c.n,
        "a": c.a,
        "q": c.field.modulus(),
        "U": c.u,
        "W": c.w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::classify;
    use crate::order::move_poset;
    use crate::quiver::DimVector;

    #[test]
    fn object_round_trip() {
        let s = Shape::D { p: 2 };
        let f = FlagObject::from_summands(s, [(IndecId::Pair { i: 0, j: 1 }, 1), (IndecId::Pair { i: 2, j: 3 }, 2), (IndecId::Plus(1), 1)]).unwrap();
        let text = object_to_string(&f);
        assert!(text.contains("\"inf\""));
        assert_eq!(parse_object(&text).unwrap(), f);
        let a = Shape::A { p: 2, q: 3 };
        let g = FlagObject::from_summands(a, [(IndecId::A { i: 2, j: 3 }, 1)]).unwrap();
        assert_eq!(parse_object(&object_to_string(&g)).unwrap(), g);
    }

    #[test]
    fn id_parsing() {
        let s = Shape::D { p: 2 };
        let v: IdJson = serde_json::from_str(r#"{"kind":"pair","i":1,"j":"inf"}"#).unwrap();
        assert_eq!(id_from_json(s, &v).unwrap(), IndecId::Pair { i: 1, j: 3 });
        let v: IdJson = serde_json::from_str(r#"{"kind":"plus","i":3}"#).unwrap();
        assert!(id_from_json(s, &v).is_err());
        let v: IdJson = serde_json::from_str(r#"{"kind":"twist","i":1}"#).unwrap();
        assert!(id_from_json(s, &v).is_err());
        let fake = r#"{"shape":{"type":"D","p":2},"summands":[{"id":{"kind":"pair","i":0,"j":"inf"},"mult":1}]}"#;
        assert_eq!(parse_object(fake), Err(Error::FakeSummand));
    }

    #[test]
    fn config_parsing() {
        let text = r#"{"n":2,"a":[1,2],"q":5,"U":[[1,0]],"W":[[0,1]]}"#;
        let c = config_from_json(text).unwrap();
        assert_eq!(classify(&c).unwrap().label(), "I+(1) + I-(2)");
        let round = config_from_json(&config_to_json(&c).to_string()).unwrap();
        assert_eq!(round, c);
        let flagged = r#"{"n":2,"a":[1,2],"q":5,"U":[[1,1]],"W":[[0,1]],"flag":[[1,1],[0,1]]}"#;
        assert_eq!(classify(&config_from_json(flagged).unwrap()).unwrap().label(), "I+(1) + I-(2)");
        assert!(config_from_json(r#"{"n":3,"a":[1,2],"q":5,"U":[],"W":[]}"#).is_err());
    }

    #[test]
    fn poset_outputs() {
        let s = Shape::D { p: 2 };
        let mv = move_poset(s, &DimVector::D { a: vec![1, 2], k: 1, l: 1 }).unwrap();
        let v = poset_to_json(&mv, false).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
        let rows: Vec<String> = serde_json::from_value(v["relation"].clone()).unwrap();
        assert_eq!(relation_from_json(&rows).unwrap(), mv.relation);
        let dot = poset_to_dot(&mv, false).unwrap();
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.contains("[label=\"II\"]"));
    }
}
