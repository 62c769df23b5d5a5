use std::collections::BTreeMap;

use grapeshot_core::graph::families::{self, elementary, from_lists, theta};
use grapeshot_core::graph::{circumference, decompose_grapes, smooth_bivalent, topological_circumference};
use grapeshot_core::{Error, Graph, GraphSpec};
use proptest::prelude::*;

/// Stem tree and loop counts of the fourteen-vertex bunch of grapes.
fn fourteen_vertex_grape() -> Graph {
    let stem = [
        (1, 0),
        (0, 13),
        (0, 2),
        (0, 3),
        (3, 7),
        (7, 12),
        (7, 11),
        (7, 8),
        (8, 10),
        (8, 9),
        (3, 4),
        (4, 6),
        (4, 5),
    ];
    let loops = [(13, 3), (1, 1), (2, 1), (7, 1), (9, 1), (11, 1), (12, 1)];
    let vertices: Vec<String> = (0..14).map(|v| v.to_string()).collect();
    let mut edges: Vec<(String, String, String)> = stem
        .iter()
        .map(|(a, b)| (format!("s{a}_{b}"), a.to_string(), b.to_string()))
        .collect();
    for (v, n) in loops {
        for j in 0..n {
            edges.push((format!("l{v}_{j}"), v.to_string(), v.to_string()));
        }
    }
    Graph::new(vertices, edges, None).unwrap()
}

#[test]
fn loop_graph_has_two_halves_at_one_vertex() {
    let g = families::circle();
    assert_eq!(g.num_vertices(), 1);
    assert_eq!(g.rotation(0), &[0, 1]);
    assert!(g.is_loop(0));
    assert_eq!(g.vertex_of(0), g.vertex_of(1));
}

#[test]
fn interval_has_one_half_per_vertex() {
    let g = families::interval();
    assert_eq!(g.valence(0), 1);
    assert_eq!(g.valence(1), 1);
    assert_eq!(g.half_edge_id(0), "e1:0");
    assert_eq!(g.half_edge_index("e1:1"), Some(1));
    assert_eq!(g.half_edge_index("e1:2"), None);
}

#[test]
fn construction_errors() {
    let dup = Graph::new(["a", "a"], Vec::<(&str, &str, &str)>::new(), None);
    assert!(matches!(dup, Err(Error::DuplicateVertex(v)) if v == "a"));

    let dup = Graph::new(["a", "b"], [("e", "a", "b"), ("e", "b", "a")], None);
    assert!(matches!(dup, Err(Error::DuplicateEdge(e)) if e == "e"));

    let dangling = Graph::new(["a"], [("e", "a", "z")], None);
    assert!(matches!(dangling, Err(Error::DanglingEndpoint { vertex, .. }) if vertex == "z"));

    let mut rot = BTreeMap::new();
    rot.insert("a".to_string(), vec!["e:0".to_string()]);
    let missing = Graph::new(["a"], [("e", "a", "a")], Some(&rot));
    assert!(matches!(missing, Err(Error::InvalidRotation { .. })));
}

#[test]
fn explicit_rotation_is_kept() {
    let mut rot = BTreeMap::new();
    rot.insert("v".to_string(), vec!["e3:0".into(), "e1:0".into(), "e2:0".into()]);
    let g = Graph::new(
        ["v", "a", "b", "c"],
        [("e1", "v", "a"), ("e2", "v", "b"), ("e3", "v", "c")],
        Some(&rot),
    )
    .unwrap();
    assert_eq!(g.rotation(0), &[4, 0, 2]);
}

#[test]
fn fourteen_vertex_grape_builds_and_labels() {
    let g = fourteen_vertex_grape();
    assert_eq!(g.num_edges(), 13 + 9);
    let gs = decompose_grapes(&g, None).unwrap();
    let ell = |v: usize| gs.loops[g.vertex_index(&v.to_string()).unwrap()];
    assert_eq!(ell(13), 3);
    for v in [1, 2, 7, 9, 11, 12] {
        assert_eq!(ell(v), 1, "vertex {v}");
    }
    for v in [0, 3, 4, 5, 6, 8, 10] {
        assert_eq!(ell(v), 0, "vertex {v}");
    }
    for l in &gs.locals {
        assert_eq!(l.m, gs.stem_valence[l.vertex]);
        assert_eq!(l.len(), 2 * l.ell + l.m);
    }
    // vertices 5, 6, 10 are leaves of the stem
    assert_eq!(gs.locals.len(), 11);
}

#[test]
fn smoothing() {
    let tri = families::cycle(3);
    let s = smooth_bivalent(&tri);
    assert_eq!((s.num_vertices(), s.num_edges()), (1, 1));
    assert!(s.is_loop(0));

    let p = families::path(2);
    let s = smooth_bivalent(&p);
    assert_eq!((s.num_vertices(), s.num_edges()), (2, 1));

    let g = elementary(1, 2);
    assert_eq!(smooth_bivalent(&g), g);
}

#[test]
fn circumferences() {
    assert_eq!(circumference(&families::path(4)), 0);
    assert_eq!(circumference(&elementary(0, 3)), 0);
    assert_eq!(circumference(&families::cycle(3)), 3);
    assert_eq!(circumference(&elementary(2, 0)), 1);
    assert_eq!(topological_circumference(&families::cycle(3)), 1);
    assert_eq!(topological_circumference(&theta(3)), 2);
    assert_eq!(topological_circumference(&families::path(3)), 0);
}

#[test]
fn g11_labeling() {
    let g = elementary(1, 1);
    let gs = decompose_grapes(&g, None).unwrap();
    assert_eq!(gs.stem_edges, vec![0]);
    assert!(!gs.sporadic);
    let l = gs.local(0).unwrap();
    assert_eq!((l.ell, l.m), (1, 1));
    // e^v_1 = e1 (toward the root), e^v_2 = the loop
    assert_eq!(l.edges, vec![0, 1]);
    assert_eq!(l.label_of, vec![0, 1, 1]);
    assert_eq!(l.second, vec![false, false, true]);
    assert_eq!(l.loop_positions(1), Some((1, 2)));
}

#[test]
fn non_grapes_are_rejected() {
    assert!(matches!(decompose_grapes(&theta(3), None), Err(Error::NotAGrape(2))));
    assert!(matches!(
        decompose_grapes(&families::circle(), None),
        Err(Error::NoEssentialVertex)
    ));
    let bivalent = from_lists(&["v", "a", "b", "c"], &[("1", "v", "a"), ("2", "v", "b"), ("3", "b", "c"), ("4", "v", "v")]);
    assert!(matches!(decompose_grapes(&bivalent, None), Err(Error::BivalentVertex(_))));
}

#[test]
fn root_choice_and_override() {
    let g = families::two_loop_leaf();
    let gs = decompose_grapes(&g, None).unwrap();
    assert_eq!(g.vertex_id(gs.root_vertex), "lx");
    assert_eq!(g.edge_id(gs.root_edge), "a");

    let gs = decompose_grapes(&g, Some(("ly", "b"))).unwrap();
    assert_eq!(g.edge_id(gs.root_edge), "b");
    let y = g.vertex_index("y").unwrap();
    assert_eq!(gs.local(y).unwrap().edge_at(0), g.edge_index("b").unwrap());

    assert!(matches!(decompose_grapes(&g, Some(("x", "b"))), Err(Error::InvalidRoot { .. })));
    assert!(matches!(decompose_grapes(&g, Some(("x", "lpx"))), Err(Error::InvalidRoot { .. })));
}

#[test]
fn sporadic_roots_at_a_loop() {
    let gs = decompose_grapes(&elementary(3, 0), None).unwrap();
    assert!(gs.sporadic);
    assert!(gs.graph().is_loop(gs.root_edge));
    let l = &gs.locals[0];
    assert_eq!(l.edge_at(0), gs.root_edge);
    assert_eq!(l.edge_at(1), gs.root_edge);
}

#[test]
fn separated_loop_halves_are_moved_together() {
    let mut rot = BTreeMap::new();
    rot.insert("v".to_string(), vec!["l:0".into(), "e:0".into(), "l:1".into(), "f:0".into()]);
    let g = Graph::new(
        ["v", "u", "w"],
        [("e", "v", "u"), ("l", "v", "v"), ("f", "v", "w")],
        Some(&rot),
    )
    .unwrap();
    let gs = decompose_grapes(&g, None).unwrap();
    assert_eq!(gs.adjustments.len(), 1);
    let l = &gs.locals[0];
    let label = l.loop_labels()[0];
    let (i, j) = l.loop_positions(label).unwrap();
    assert_eq!(j, i + 1);
}

#[test]
fn reassemble_recovers_the_graph() {
    for g in [elementary(2, 1), families::two_loop_leaf(), fourteen_vertex_grape()] {
        let gs = decompose_grapes(&g, None).unwrap();
        let r = gs.reassemble();
        assert_eq!(r.num_edges(), g.num_edges());
        for v in 0..g.num_vertices() {
            assert_eq!(r.valence(v), g.valence(v));
        }
    }
}

#[test]
fn json_round_trip_and_errors() {
    let text = r#"{"vertices":["v","u"],"edges":[["e1","v","u"],["e2","v","v"]],"root":["u","e1"]}"#;
    let spec = GraphSpec::from_json(text).unwrap();
    assert_eq!(spec.root, Some(("u".into(), "e1".into())));
    let g = spec.build().unwrap();
    let back = GraphSpec::from_json(&GraphSpec::from_graph(&g).to_json()).unwrap();
    assert_eq!(back.build().unwrap(), g);

    let numeric = GraphSpec::from_json(r#"{"vertices":[0,1],"edges":[[7,0,1]]}"#).unwrap();
    assert_eq!(numeric.edges[0], ("7".into(), "0".into(), "1".into()));

    let err = GraphSpec::from_json("{\n  \"vertices\": [\"a\",\n  \"edges\": 3\n}").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("line"), "{msg}");

    assert!(GraphSpec::from_json(r#"{"vertices":[],"edges":[],"colour":1}"#).is_err());
}

fn random_tree_with_loops() -> impl Strategy<Value = Graph> {
    (2usize..7)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(0usize..100, n - 1), proptest::collection::vec(0usize..3, n)))
        .prop_map(|(n, parents, loops)| {
            let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            let mut edges = Vec::new();
            for (i, p) in parents.iter().enumerate() {
                let child = i + 1;
                edges.push((format!("t{child}"), format!("v{}", p % child), format!("v{child}")));
            }
            for (v, &k) in loops.iter().enumerate() {
                for j in 0..k {
                    edges.push((format!("l{v}_{j}"), format!("v{v}"), format!("v{v}")));
                }
            }
            Graph::new(vertices, edges, None).unwrap()
        })
}

proptest! {
    #[test]
    fn rotation_lists_each_half_edge_once(g in random_tree_with_loops()) {
        let mut all: Vec<usize> = (0..g.num_vertices()).flat_map(|v| g.rotation(v).to_vec()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..2 * g.num_edges()).collect::<Vec<_>>());
    }

    #[test]
    fn smoothing_keeps_euler_characteristic(g in random_tree_with_loops()) {
        let s = smooth_bivalent(&g);
        prop_assert_eq!(s.first_betti(), g.first_betti());
        prop_assert_eq!(s.components(), g.components());
        prop_assert!((0..s.num_vertices()).all(|v| s.valence(v) != 2 || s.rotation(v)[0] / 2 == s.rotation(v)[1] / 2));
        prop_assert!(topological_circumference(&g) <= 1);
    }

    #[test]
    fn labelings_are_well_formed(g in random_tree_with_loops()) {
        let s = smooth_bivalent(&g);
        if let Ok(gs) = decompose_grapes(&s, None) {
            for l in &gs.locals {
                prop_assert_eq!(l.len(), s.valence(l.vertex));
                prop_assert_eq!(l.len(), 2 * l.ell + l.m);
                prop_assert!(l.is_first(0));
                for label in l.loop_labels() {
                    let (i, j) = l.loop_positions(label).expect("loop halves adjacent");
                    prop_assert!(l.is_first(i) && !l.is_first(j));
                }
                if !gs.sporadic {
                    prop_assert!(!gs.graph().is_loop(l.edge_at(0)));
                }
            }
        }
    }
}
