use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Ids may be written as JSON strings or integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawId {
    Text(String),
    Number(i64),
}

impl RawId {
    fn into_string(self) -> String {
        match self {
            RawId::Text(s) => s,
            RawId::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    vertices: Vec<RawId>,
    edges: Vec<(RawId, RawId, RawId)>,
    #[serde(default)]
    rotation: Option<BTreeMap<String, Vec<RawId>>>,
    #[serde(default)]
    root: Option<(RawId, RawId)>,
}

/// The on-disk graph description:
/// `{"vertices":[..], "edges":[["id","u","v"],..], "rotation":{..}, "root":["v0","e0"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<(String, String)>,
}

impl GraphSpec {
    pub fn from_json(text: &str) -> Result<GraphSpec> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|err| {
            let line = err.line();
            let context = text
                .lines()
                .nth(line.saturating_sub(1))
                .map(|l| format!("\n  {line} | {}", l.trim_end()))
                .unwrap_or_default();
            Error::Parse(format!("line {line}, column {}: {err}{context}", err.column()))
        })?;
        Ok(GraphSpec {
            vertices: raw.vertices.into_iter().map(RawId::into_string).collect(),
            edges: raw
                .edges
                .into_iter()
                .map(|(a, b, c)| (a.into_string(), b.into_string(), c.into_string()))
                .collect(),
            rotation: raw.rotation.map(|r| {
                r.into_iter()
                    .map(|(k, v)| (k, v.into_iter().map(RawId::into_string).collect()))
                    .collect()
            }),
            root: raw.root.map(|(v, e)| (v.into_string(), e.into_string())),
        })
    }

    pub fn build(&self) -> Result<Graph> {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().cloned(),
            self.rotation.as_ref(),
        )
    }

    pub fn from_graph(g: &Graph) -> GraphSpec {
        let rotation = (0..g.num_vertices())
            .filter(|&v| g.valence(v) > 0)
            .map(|v| {
                let halves = g.rotation(v).iter().map(|&h| g.half_edge_id(h)).collect();
                (g.vertex_id(v).to_string(), halves)
            })
            .collect();
        GraphSpec {
            vertices: g.vertex_ids().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        g.vertex_id(e.ends[0]).to_string(),
                        g.vertex_id(e.ends[1]).to_string(),
                    )
                })
                .collect(),
            rotation: Some(rotation),
            root: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec serializes")
    }
}
