use std::collections::VecDeque;

use super::{topology::circumference, Graph};
use crate::error::{Error, Result};

/// Labels of the local graph at one essential vertex.
///
/// Positions are 0-based here: position `i` holds the half-edge written
/// `h_{i+1}` in the usual notation, and local edge label `j` is `e_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalLabeling {
    pub vertex: usize,
    /// Half-edge of the ambient graph at each position.
    pub halves: Vec<usize>,
    /// Whether the half-edge at each position is the second half of a loop.
    pub second: Vec<bool>,
    /// Local edge label of the half-edge at each position.
    pub label_of: Vec<usize>,
    /// Ambient edge of each local edge label.
    pub edges: Vec<usize>,
    pub ell: usize,
    pub m: usize,
}

impl LocalLabeling {
    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    pub fn is_first(&self, pos: usize) -> bool {
        !self.second[pos]
    }

    /// Position of the first half-edge of a local edge label.
    pub fn first_position(&self, label: usize) -> usize {
        self.label_of
            .iter()
            .position(|&l| l == label)
            .expect("every label has a half-edge")
    }

    /// Local edge labels of loops, in label order.
    pub fn loop_labels(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&l| self.label_of.iter().filter(|&&x| x == l).count() == 2)
            .collect()
    }

    /// The two positions `(i, i+1)` of a loop label.
    pub fn loop_positions(&self, label: usize) -> Option<(usize, usize)> {
        let i = self.first_position(label);
        (i + 1 < self.len() && self.label_of[i + 1] == label).then_some((i, i + 1))
    }

    /// Ambient edge e(h_i) at a position.
    pub fn edge_at(&self, pos: usize) -> usize {
        self.edges[self.label_of[pos]]
    }
}

#[derive(Debug, Clone)]
pub struct GrapesStructure {
    graph: Graph,
    pub stem_edges: Vec<usize>,
    pub loop_edges: Vec<usize>,
    /// ℓ(v) for every vertex.
    pub loops: Vec<usize>,
    /// m(v), the valence of v in the stem.
    pub stem_valence: Vec<usize>,
    pub root_vertex: usize,
    pub root_edge: usize,
    pub sporadic: bool,
    /// One labeling per essential vertex, in vertex order.
    pub locals: Vec<LocalLabeling>,
    /// Rotation changes made to bring loop half-edges together.
    pub adjustments: Vec<String>,
}

impl GrapesStructure {
    /// The decomposed graph (with any rotation adjustments applied).
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn local(&self, v: usize) -> Option<&LocalLabeling> {
        self.locals.iter().find(|l| l.vertex == v)
    }

    pub fn essential_vertices(&self) -> Vec<usize> {
        self.locals.iter().map(|l| l.vertex).collect()
    }

    /// Rebuilds a graph from the stem and the loop counts.
    pub fn reassemble(&self) -> Graph {
        let g = &self.graph;
        let mut edges: Vec<(String, String, String)> = self
            .stem_edges
            .iter()
            .map(|&e| {
                let [a, b] = g.edge(e).ends;
                (g.edge_id(e).to_string(), g.vertex_id(a).to_string(), g.vertex_id(b).to_string())
            })
            .collect();
        for &e in &self.loop_edges {
            let v = g.edge(e).ends[0];
            edges.push((g.edge_id(e).to_string(), g.vertex_id(v).to_string(), g.vertex_id(v).to_string()));
        }
        Graph::new(g.vertex_ids().iter().cloned(), edges, None).expect("stem and loops form a graph")
    }
}

/// Splits a graph of topological circumference at most one into its stem
/// tree and loops, picks a root and labels every essential vertex.
pub fn decompose_grapes(g: &Graph, root: Option<(&str, &str)>) -> Result<GrapesStructure> {
    if g.essential_vertices().is_empty() {
        return Err(Error::NoEssentialVertex);
    }
    if let Some(v) = (0..g.num_vertices()).find(|&v| g.valence(v) == 2) {
        return Err(Error::BivalentVertex(g.vertex_id(v).to_string()));
    }
    if g.components() != 1 {
        return Err(Error::Disconnected);
    }
    let tc = circumference(g);
    if tc >= 2 {
        return Err(Error::NotAGrape(tc));
    }

    let n = g.num_vertices();
    let stem_edges: Vec<usize> = (0..g.num_edges()).filter(|&e| !g.is_loop(e)).collect();
    let loop_edges: Vec<usize> = (0..g.num_edges()).filter(|&e| g.is_loop(e)).collect();
    let mut loops = vec![0; n];
    let mut stem_valence = vec![0; n];
    for &e in &loop_edges {
        loops[g.edge(e).ends[0]] += 1;
    }
    for &e in &stem_edges {
        for v in g.edge(e).ends {
            stem_valence[v] += 1;
        }
    }
    let sporadic = stem_edges.is_empty();

    let (root_vertex, root_edge) = choose_root(g, root, sporadic, &stem_edges)?;

    let mut graph = g.clone();
    let mut adjustments = Vec::new();
    for v in graph.essential_vertices() {
        normalize_loops(&mut graph, v, &mut adjustments);
    }

    let mut toward_root = vec![usize::MAX; n];
    toward_root[root_vertex] = root_edge;
    let mut seen = vec![false; n];
    seen[root_vertex] = true;
    let mut queue = VecDeque::from([root_vertex]);
    while let Some(u) = queue.pop_front() {
        for &h in graph.rotation(u) {
            let e = h / 2;
            if graph.is_loop(e) {
                continue;
            }
            let w = graph.other_vertex(e, u);
            if !seen[w] {
                seen[w] = true;
                toward_root[w] = e;
                queue.push_back(w);
            }
        }
    }

    let mut locals = Vec::new();
    for v in graph.essential_vertices() {
        let rot = graph.rotation(v);
        let start = if sporadic {
            rot.iter()
                .enumerate()
                .position(|(i, &h)| h / 2 == root_edge && rot[(i + 1) % rot.len()] / 2 == root_edge)
                .expect("root loop half-edges are adjacent")
        } else {
            let e = toward_root[v];
            rot.iter()
                .position(|&h| h / 2 == e)
                .expect("edge toward the root is incident")
        };
        let halves: Vec<usize> = (0..rot.len()).map(|i| rot[(start + i) % rot.len()]).collect();
        let mut label_of = Vec::with_capacity(halves.len());
        let mut edges: Vec<usize> = Vec::new();
        let mut second = Vec::with_capacity(halves.len());
        for &h in &halves {
            let e = h / 2;
            match edges.iter().position(|&x| x == e) {
                Some(l) => {
                    label_of.push(l);
                    second.push(true);
                }
                None => {
                    label_of.push(edges.len());
                    edges.push(e);
                    second.push(false);
                }
            }
        }
        locals.push(LocalLabeling {
            vertex: v,
            halves,
            second,
            label_of,
            edges,
            ell: loops[v],
            m: stem_valence[v],
        });
    }

    Ok(GrapesStructure {
        graph,
        stem_edges,
        loop_edges,
        loops,
        stem_valence,
        root_vertex,
        root_edge,
        sporadic,
        locals,
        adjustments,
    })
}

fn choose_root(
    g: &Graph,
    root: Option<(&str, &str)>,
    sporadic: bool,
    stem_edges: &[usize],
) -> Result<(usize, usize)> {
    if let Some((vname, ename)) = root {
        let bad = |reason: &str| Error::InvalidRoot {
            vertex: vname.to_string(),
            edge: ename.to_string(),
            reason: reason.to_string(),
        };
        let v = g.vertex_index(vname).ok_or_else(|| bad("unknown vertex"))?;
        let e = g.edge_index(ename).ok_or_else(|| bad("unknown edge"))?;
        if !g.edge(e).ends.contains(&v) {
            return Err(bad("edge is not incident to the vertex"));
        }
        if sporadic != g.is_loop(e) {
            return Err(bad(if sporadic {
                "a bouquet is rooted at one of its loops"
            } else {
                "the root edge must be a stem edge"
            }));
        }
        return Ok((v, e));
    }
    if sporadic {
        let v = (0..g.num_vertices())
            .find(|&v| g.valence(v) > 0)
            .expect("an essential vertex exists");
        return Ok((v, g.rotation(v)[0] / 2));
    }
    for &e in stem_edges {
        for v in g.edge(e).ends {
            if g.valence(v) == 1 {
                return Ok((v, e));
            }
        }
    }
    let e = stem_edges[0];
    Ok((g.edge(e).ends[0], e))
}

/// Moves the second half of every loop next to its first half.
fn normalize_loops(g: &mut Graph, v: usize, notes: &mut Vec<String>) {
    let mut rot = g.rotation[v].clone();
    let len = rot.len();
    let loop_edges: Vec<usize> = {
        let mut es: Vec<usize> = rot.iter().map(|h| h / 2).filter(|&e| g.is_loop(e)).collect();
        es.dedup();
        es.sort_unstable();
        es.dedup();
        es
    };
    for e in loop_edges {
        let p = rot.iter().position(|&h| h / 2 == e).expect("loop half");
        let q = rot.iter().rposition(|&h| h / 2 == e).expect("loop half");
        let adjacent = q == p + 1 || (p == 0 && q == len - 1);
        if adjacent {
            continue;
        }
        let h = rot.remove(q);
        rot.insert(p + 1, h);
        notes.push(format!(
            "moved half-edge {} next to {} in the rotation at {}",
            g.half_edge_id(h),
            g.half_edge_id(rot[p]),
            g.vertex_id(v)
        ));
    }
    g.rotation[v] = rot;
}
