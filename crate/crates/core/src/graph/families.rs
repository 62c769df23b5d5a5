//! Small named graphs used throughout tests and the CLI.

use super::Graph;

fn build(vertices: &[String], edges: &[(String, String, String)]) -> Graph {
    Graph::new(vertices.iter().cloned(), edges.iter().cloned(), None).expect("well-formed family graph")
}

/// A single edge between two vertices.
pub fn interval() -> Graph {
    build(&["a".into(), "b".into()], &[("e1".into(), "a".into(), "b".into())])
}

/// One vertex with one loop.
pub fn circle() -> Graph {
    build(&["v".into()], &[("e1".into(), "v".into(), "v".into())])
}

/// `Γ_{ℓ,m}`: a vertex `v` with `m` leaf edges `e1..em` (to `u1..um`)
/// followed by `ℓ` loops `e{m+1}..e{m+ℓ}`.
pub fn elementary(loops: usize, leaves: usize) -> Graph {
    let mut vertices = vec!["v".to_string()];
    let mut edges = Vec::new();
    for j in 1..=leaves {
        vertices.push(format!("u{j}"));
        edges.push((format!("e{j}"), "v".to_string(), format!("u{j}")));
    }
    for r in 1..=loops {
        edges.push((format!("e{}", leaves + r), "v".to_string(), "v".to_string()));
    }
    build(&vertices, &edges)
}

/// Two vertices joined by `n` parallel edges.
pub fn theta(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n)
        .map(|j| (format!("e{j}"), "a".to_string(), "b".to_string()))
        .collect();
    build(&["a".into(), "b".into()], &edges)
}

/// A path on `n` edges.
pub fn path(n: usize) -> Graph {
    let vertices: Vec<String> = (0..=n).map(|j| format!("p{j}")).collect();
    let edges: Vec<_> = (1..=n)
        .map(|j| (format!("e{j}"), format!("p{}", j - 1), format!("p{j}")))
        .collect();
    build(&vertices, &edges)
}

/// The cycle on `n` vertices.
pub fn cycle(n: usize) -> Graph {
    let vertices: Vec<String> = (0..n).map(|j| format!("c{j}")).collect();
    let edges: Vec<_> = (0..n)
        .map(|j| (format!("e{}", j + 1), format!("c{j}"), format!("c{}", (j + 1) % n)))
        .collect();
    build(&vertices, &edges)
}

/// Builds a graph from string literals; panics on malformed input.
pub fn from_lists(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
    let edges: Vec<_> = edges
        .iter()
        .map(|(e, u, v)| (e.to_string(), u.to_string(), v.to_string()))
        .collect();
    build(&vertices, &edges)
}

/// Two essential vertices `x`, `y` joined by a stem edge `s`, each with
/// one loop and one leaf.
pub fn two_loop_leaf() -> Graph {
    from_lists(
        &["x", "y", "lx", "ly"],
        &[
            ("a", "x", "lx"),
            ("s", "x", "y"),
            ("lpx", "x", "x"),
            ("lpy", "y", "y"),
            ("b", "y", "ly"),
        ],
    )
}

/// A bigon on `a`, `b` with a leaf edge at each vertex: topological
/// circumference 2, two essential vertices.
pub fn bigon_with_leaves() -> Graph {
    from_lists(
        &["a", "b", "la", "lb"],
        &[("t", "a", "la"), ("p", "a", "b"), ("q", "a", "b"), ("r", "b", "lb")],
    )
}

/// A tree with three essential vertices on a path `x - y - z`: leaves
/// `a`, `b` at `x`, `c` at `y`, `d`, `f` at `z`.
pub fn three_vertex_tree() -> Graph {
    from_lists(
        &["x", "y", "z", "la", "lb", "lc", "ld", "lf"],
        &[
            ("a", "x", "la"),
            ("b", "x", "lb"),
            ("s", "x", "y"),
            ("c", "y", "lc"),
            ("t", "y", "z"),
            ("d", "z", "ld"),
            ("f", "z", "lf"),
        ],
    )
}

/// A vertex `x` with two leaves, joined by a stem edge to a vertex `y`
/// carrying two loops.
pub fn two_loops_on_stem() -> Graph {
    from_lists(
        &["x", "y", "la", "lb"],
        &[("a", "x", "la"), ("b", "x", "lb"), ("s", "x", "y"), ("p", "y", "y"), ("q", "y", "y")],
    )
}
