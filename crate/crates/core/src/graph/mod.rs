//! Finite graphs with a rotation system.
//!
//! Vertices and edges carry opaque string ids; internally everything is a
//! dense index. Half-edge `h` of edge `e` is stored as `2*e + side`, where
//! side 0 sits at the first listed endpoint.

pub mod families;
mod grapes;
mod io;
mod topology;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

pub use grapes::{decompose_grapes, GrapesStructure, LocalLabeling};
pub use io::GraphSpec;
pub use topology::{circumference, smooth_bivalent, topological_circumference};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: [usize; 2],
}

/// A half-edge viewed through its owning graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub index: usize,
    pub edge: usize,
    pub vertex: usize,
    pub side: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    vertex_lookup: HashMap<String, usize>,
    edge_lookup: HashMap<String, usize>,
}

impl Graph {
    /// Builds a graph. Without a rotation, each vertex lists its half-edges
    /// in input edge order (side 0 before side 1 for loops).
    pub fn new<V, E>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (E, V, V)>,
        rotation: Option<&BTreeMap<String, Vec<String>>>,
    ) -> Result<Graph>
    where
        V: Into<String>,
        E: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_list = Vec::new();
        let mut edge_lookup = HashMap::new();
        for (id, u, v) in edges {
            let id: String = id.into();
            let (u, v): (String, String) = (u.into(), v.into());
            let mut ends = [0; 2];
            for (slot, name) in ends.iter_mut().zip([&u, &v]) {
                *slot = *vertex_lookup.get(name).ok_or_else(|| Error::DanglingEndpoint {
                    edge: id.clone(),
                    vertex: name.clone(),
                })?;
            }
            if edge_lookup.insert(id.clone(), edge_list.len()).is_some() {
                return Err(Error::DuplicateEdge(id));
            }
            edge_list.push(Edge { id, ends });
        }
        let mut default_rotation = vec![Vec::new(); vertices.len()];
        for (e, edge) in edge_list.iter().enumerate() {
            for side in 0..2 {
                default_rotation[edge.ends[side]].push(2 * e + side);
            }
        }
        let mut graph = Graph {
            vertices,
            edges: edge_list,
            rotation: default_rotation,
            vertex_lookup,
            edge_lookup,
        };
        if let Some(rot) = rotation {
            graph.apply_rotation(rot)?;
        }
        Ok(graph)
    }

    fn apply_rotation(&mut self, rot: &BTreeMap<String, Vec<String>>) -> Result<()> {
        for (vname, halves) in rot {
            let v = self.vertex_index(vname).ok_or_else(|| Error::InvalidRotation {
                vertex: vname.clone(),
                reason: "unknown vertex".into(),
            })?;
            let mut order = Vec::with_capacity(halves.len());
            for hname in halves {
                let h = self.half_edge_index(hname).ok_or_else(|| Error::InvalidRotation {
                    vertex: vname.clone(),
                    reason: format!("unknown half-edge `{hname}`"),
                })?;
                order.push(h);
            }
            let mut expected = self.rotation[v].clone();
            let mut given = order.clone();
            expected.sort_unstable();
            given.sort_unstable();
            if expected != given {
                return Err(Error::InvalidRotation {
                    vertex: vname.clone(),
                    reason: "must list every incident half-edge exactly once".into(),
                });
            }
            self.rotation[v] = order;
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<usize>>,
    ) -> Graph {
        let vertex_lookup = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let edge_lookup = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        Graph {
            vertices,
            edges,
            rotation,
            vertex_lookup,
            edge_lookup,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_lookup.get(id).copied()
    }

    /// Half-edge ids have the form `edge:side`.
    pub fn half_edge_index(&self, id: &str) -> Option<usize> {
        let (e, side) = id.rsplit_once(':')?;
        let side: usize = side.parse().ok()?;
        if side > 1 {
            return None;
        }
        Some(2 * self.edge_index(e)? + side)
    }

    pub fn half_edge_id(&self, h: usize) -> String {
        format!("{}:{}", self.edges[h / 2].id, h % 2)
    }

    pub fn half_edge(&self, h: usize) -> HalfEdge {
        HalfEdge {
            index: h,
            edge: h / 2,
            vertex: self.edges[h / 2].ends[h % 2],
            side: h % 2,
        }
    }

    /// The edge e(h) of a half-edge.
    pub fn edge_of(&self, h: usize) -> usize {
        h / 2
    }

    /// The vertex v(h) of a half-edge.
    pub fn vertex_of(&self, h: usize) -> usize {
        self.edges[h / 2].ends[h % 2]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].ends[0] == self.edges[e].ends[1]
    }

    pub fn is_essential(&self, v: usize) -> bool {
        self.valence(v) >= 3
    }

    pub fn essential_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.is_essential(v)).collect()
    }

    /// Vertices carrying a local factor in the Świątkowski complex: every
    /// vertex except leaves. On a smoothed graph these are the essential
    /// vertices together with the base points of isolated circles and
    /// isolated vertices.
    pub fn factor_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.valence(v) != 1).collect()
    }

    pub fn other_vertex(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        let mut count = self.num_vertices();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.ends[0]), find(&mut parent, e.ends[1]));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn first_betti(&self) -> usize {
        self.num_edges() + self.components() - self.num_vertices()
    }

    /// Replaces edge `e` by a path of `parts[e]` segments. New vertices and
    /// edges are named `<edge>.<j>`.
    pub fn subdivide(&self, parts: impl Fn(usize) -> usize) -> Graph {
        let mut vertices = self.vertices.clone();
        let mut taken: std::collections::HashSet<String> =
            vertices.iter().chain(self.edges.iter().map(|e| &e.id)).cloned().collect();
        let mut fresh = |base: String| -> String {
            let mut name = base.clone();
            let mut n = 0;
            while taken.contains(&name) {
                n += 1;
                name = format!("{base}'{n}");
            }
            taken.insert(name.clone());
            name
        };
        let mut edges = Vec::new();
        // (old half-edge) -> new half-edge index
        let mut remap = vec![0usize; 2 * self.num_edges()];
        let mut rotation_tail: Vec<Vec<usize>> = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            let p = parts(e).max(1);
            if p == 1 {
                remap[2 * e] = 2 * edges.len();
                remap[2 * e + 1] = 2 * edges.len() + 1;
                edges.push(edge.clone());
                continue;
            }
            let mut chain = vec![edge.ends[0]];
            for j in 1..p {
                chain.push(vertices.len());
                vertices.push(fresh(format!("{}.v{}", edge.id, j)));
                rotation_tail.push(Vec::new());
            }
            chain.push(edge.ends[1]);
            for j in 0..p {
                let idx = edges.len();
                let id = if j == 0 {
                    edge.id.clone()
                } else {
                    fresh(format!("{}.{}", edge.id, j))
                };
                edges.push(Edge {
                    id,
                    ends: [chain[j], chain[j + 1]],
                });
                if j == 0 {
                    remap[2 * e] = 2 * idx;
                }
                if j == p - 1 {
                    remap[2 * e + 1] = 2 * idx + 1;
                }
                if j > 0 {
                    rotation_tail[chain[j] - self.num_vertices()].push(2 * idx);
                }
                if j + 1 < p {
                    rotation_tail[chain[j + 1] - self.num_vertices()].push(2 * idx + 1);
                }
            }
        }
        let mut rotation: Vec<Vec<usize>> = self
            .rotation
            .iter()
            .map(|r| r.iter().map(|&h| remap[h]).collect())
            .collect();
        for r in rotation_tail.iter_mut() {
            r.sort_unstable();
        }
        rotation.extend(rotation_tail);
        Graph::from_parts(vertices, edges, rotation)
    }
}
