use super::{Edge, Graph};

/// Removes every bivalent vertex by merging its two incident edges. The
/// merged edge keeps the id of the lower-indexed edge. A circle made only of
/// bivalent vertices ends up as a single vertex carrying one loop.
pub fn smooth_bivalent(g: &Graph) -> Graph {
    let mut ends: Vec<Option<[usize; 2]>> = g.edges().iter().map(|e| Some(e.ends)).collect();
    let mut rot: Vec<Option<Vec<usize>>> =
        (0..g.num_vertices()).map(|v| Some(g.rotation(v).to_vec())).collect();

    loop {
        let candidate = rot.iter().enumerate().find_map(|(v, r)| match r {
            Some(r) if r.len() == 2 && r[0] / 2 != r[1] / 2 => Some(v),
            _ => None,
        });
        let Some(v) = candidate else { break };
        let r = rot[v].take().expect("live vertex");
        let (ha, hb) = if r[0] / 2 < r[1] / 2 { (r[0], r[1]) } else { (r[1], r[0]) };
        let (keep, ks) = (ha / 2, ha % 2);
        let (drop, ds) = (hb / 2, hb % 2);
        let far = ends[drop].expect("live edge")[1 - ds];
        ends[keep].as_mut().expect("live edge")[ks] = far;
        ends[drop] = None;
        let far_rot = rot[far].as_mut().expect("live vertex");
        let pos = far_rot
            .iter()
            .position(|&h| h == 2 * drop + (1 - ds))
            .expect("rotation lists the far half-edge");
        far_rot[pos] = 2 * keep + ks;
    }

    let mut vmap = vec![usize::MAX; g.num_vertices()];
    let mut vertices = Vec::new();
    for (v, r) in rot.iter().enumerate() {
        if r.is_some() {
            vmap[v] = vertices.len();
            vertices.push(g.vertex_id(v).to_string());
        }
    }
    let mut emap = vec![usize::MAX; g.num_edges()];
    let mut edges = Vec::new();
    for (e, en) in ends.iter().enumerate() {
        if let Some([a, b]) = en {
            emap[e] = edges.len();
            edges.push(Edge {
                id: g.edge_id(e).to_string(),
                ends: [vmap[*a], vmap[*b]],
            });
        }
    }
    let rotation = rot
        .into_iter()
        .flatten()
        .map(|r| r.into_iter().map(|h| 2 * emap[h / 2] + h % 2).collect())
        .collect();
    Graph::from_parts(vertices, edges, rotation)
}

/// Maximum number of edges in a simple cycle; loops count as cycles of
/// length one, parallel edges as cycles of length two.
pub fn circumference(g: &Graph) -> usize {
    let n = g.num_vertices();
    let mut best = 0;
    let mut on_path = vec![false; n];
    let mut used = vec![false; g.num_edges()];
    for s in 0..n {
        on_path[s] = true;
        dfs(g, s, s, 0, &mut on_path, &mut used, &mut best);
        on_path[s] = false;
        if best == n {
            break;
        }
    }
    best
}

fn dfs(
    g: &Graph,
    start: usize,
    at: usize,
    depth: usize,
    on_path: &mut [bool],
    used: &mut [bool],
    best: &mut usize,
) {
    for &h in g.rotation(at) {
        let e = h / 2;
        if used[e] {
            continue;
        }
        let next = g.edge(e).ends[1 - h % 2];
        if next == start {
            *best = (*best).max(depth + 1);
        } else if next > start && !on_path[next] {
            used[e] = true;
            on_path[next] = true;
            dfs(g, start, next, depth + 1, on_path, used, best);
            on_path[next] = false;
            used[e] = false;
        }
    }
}

/// Circumference of the smoothed graph.
pub fn topological_circumference(g: &Graph) -> usize {
    circumference(&smooth_bivalent(g))
}
