use grapeshot_core::graph::families::{bigon_with_leaves, cycle, elementary, from_lists, interval, theta};
use grapeshot_core::oracle::{cross_check, cube_betti, discretized_config_complex, subdivide_for};
use grapeshot_core::Graph;
use num_bigint::BigInt;

fn k5() -> Graph {
    let names = ["a", "b", "c", "d", "e"];
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            labels.push(format!("{}{}", names[i], names[j]));
        }
    }
    let mut n = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            edges.push((labels[n].as_str(), names[i], names[j]));
            n += 1;
        }
    }
    from_lists(&names, &edges)
}

fn h_tree() -> Graph {
    from_lists(
        &["x", "y", "a", "b", "c", "d"],
        &[("s", "x", "y"), ("xa", "x", "a"), ("xb", "x", "b"), ("yc", "y", "c"), ("yd", "y", "d")],
    )
}

#[test]
fn subdivision_sizes() {
    let p = subdivide_for(&interval(), 2);
    assert_eq!((p.num_vertices(), p.num_edges()), (4, 3));
    let c = subdivide_for(&cycle(1), 2);
    assert_eq!((c.num_vertices(), c.num_edges()), (3, 3));
    assert!((0..3).all(|e| !c.is_loop(e)));
    let s = subdivide_for(&elementary(0, 3), 2);
    assert_eq!((s.num_vertices(), s.num_edges()), (10, 9));
}

#[test]
fn cube_counts() {
    let cc = discretized_config_complex(&subdivide_for(&interval(), 2), 2);
    assert_eq!((0..3).map(|d| cc.num_cubes(d)).collect::<Vec<_>>(), vec![6, 6, 1]);
    let g = elementary(1, 2);
    let c0 = discretized_config_complex(&subdivide_for(&g, 0), 0);
    assert_eq!((c0.num_cubes(0), c0.num_cubes(1)), (1, 0));
    let c1 = discretized_config_complex(&subdivide_for(&g, 1), 1);
    let s = subdivide_for(&g, 1);
    assert_eq!((c1.num_cubes(0), c1.num_cubes(1)), (s.num_vertices(), s.num_edges()));
}

#[test]
fn cube_homology() {
    let b = |g: &Graph, k: usize| cube_betti(&discretized_config_complex(&subdivide_for(g, k), k));
    assert_eq!(b(&interval(), 2), vec![(1, vec![])]);
    for l in 0..3 {
        for m in 0..3 {
            if l + m == 0 {
                continue;
            }
            let expected = if l == 0 { vec![(1, vec![])] } else { vec![(1, vec![]), (l, vec![])] };
            assert_eq!(b(&elementary(l, m), 1), expected, "({l},{m})");
        }
    }
    assert_eq!(b(&elementary(0, 3), 2), vec![(1, vec![]), (1, vec![])]);
}

#[test]
fn oracle_agrees_with_swiatkowski() {
    for (g, k) in [(elementary(1, 1), 2), (theta(3), 2), (h_tree(), 3), (bigon_with_leaves(), 2), (cycle(2), 3)] {
        let r = cross_check(&g, k);
        assert!(r.matches, "k={k}: {:?} vs {:?}", r.oracle, r.swiatkowski);
    }
}

#[test]
fn oracle_sees_torsion() {
    let r = cross_check(&k5(), 2);
    assert!(r.matches, "{:?} vs {:?}", r.oracle, r.swiatkowski);
    assert_eq!(r.oracle[1], (6, vec![BigInt::from(2).to_string()]));
}
