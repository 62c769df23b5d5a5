//! Brute-force homology of `B_k Γ` through the discretized configuration
//! space of a subdivided graph, independent of the Świątkowski model.

use num_bigint::BigInt;
use serde::Serialize;

use crate::graph::Graph;
use crate::linalg::reduce::betti_and_torsion;
use crate::linalg::{ChainComplex, SparseMatrix};
use crate::swiatkowski::{Swiatkowski, WeightComplex};

/// Subdivides every edge into `k + 1` segments.
pub fn subdivide_for(g: &Graph, k: usize) -> Graph {
    g.subdivide(|_| k + 1)
}

/// A cube: `k` pairwise disjoint closed cells, edges and vertices kept
/// sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.edges.len()
    }
}

pub struct CubeComplex {
    pub k: usize,
    pub cells: Vec<Vec<Cube>>,
    pub complex: ChainComplex,
}

impl CubeComplex {
    pub fn num_cubes(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }
}

/// The cube complex of `k` unordered points on `g`; `g` should already be
/// subdivided (see [`subdivide_for`]).
pub fn discretized_config_complex(g: &Graph, k: usize) -> CubeComplex {
    let nv = g.num_vertices();
    let ncells = nv + g.num_edges();
    // Vertices touched by each cell.
    let closure = |c: usize| -> Vec<usize> {
        if c < nv {
            vec![c]
        } else {
            let [a, b] = g.edge(c - nv).ends;
            if a == b {
                vec![a]
            } else {
                vec![a, b]
            }
        }
    };
    let closures: Vec<Vec<usize>> = (0..ncells).map(closure).collect();
    let mut cubes: Vec<Vec<Cube>> = vec![Vec::new(); k + 1];
    let mut used = vec![false; nv];
    let mut chosen = Vec::with_capacity(k);
    fn rec(
        start: usize,
        left: usize,
        nv: usize,
        closures: &[Vec<usize>],
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        cubes: &mut Vec<Vec<Cube>>,
    ) {
        if left == 0 {
            let edges: Vec<usize> = chosen.iter().filter(|&&c| c >= nv).map(|c| c - nv).collect();
            let vertices: Vec<usize> = chosen.iter().copied().filter(|&c| c < nv).collect();
            cubes[edges.len()].push(Cube { edges, vertices });
            return;
        }
        for c in start..closures.len() {
            if closures[c].iter().any(|&v| used[v]) {
                continue;
            }
            for &v in &closures[c] {
                used[v] = true;
            }
            chosen.push(c);
            rec(c + 1, left - 1, nv, closures, used, chosen, cubes);
            chosen.pop();
            for &v in &closures[c] {
                used[v] = false;
            }
        }
    }
    rec(0, k, nv, &closures, &mut used, &mut chosen, &mut cubes);
    while cubes.len() > 1 && cubes.last().is_some_and(Vec::is_empty) {
        cubes.pop();
    }
    for layer in cubes.iter_mut() {
        layer.sort();
    }
    let index: Vec<std::collections::HashMap<&Cube, usize>> = cubes
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let dims: Vec<usize> = cubes.iter().map(Vec::len).collect();
    let mut maps = vec![SparseMatrix::zeros(0, dims[0])];
    for d in 1..cubes.len() {
        let columns = cubes[d]
            .iter()
            .map(|cube| {
                let mut col: Vec<(usize, BigInt)> = Vec::new();
                for (j, &e) in cube.edges.iter().enumerate() {
                    let [tail, head] = g.edge(e).ends;
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    for (v, s) in [(head, sign), (tail, -sign)] {
                        let mut edges = cube.edges.clone();
                        edges.remove(j);
                        let mut vertices = cube.vertices.clone();
                        let pos = vertices.partition_point(|&x| x < v);
                        vertices.insert(pos, v);
                        let face = Cube { edges, vertices };
                        col.push((index[d - 1][&face], BigInt::from(s)));
                    }
                }
                let mut merged: std::collections::BTreeMap<usize, BigInt> = Default::default();
                for (r, x) in col {
                    *merged.entry(r).or_default() += x;
                }
                merged
                    .into_iter()
                    .filter(|(_, x)| x.sign() != num_bigint::Sign::NoSign)
                    .collect()
            })
            .collect();
        maps.push(SparseMatrix {
            rows: dims[d - 1],
            cols: dims[d],
            columns,
        });
    }
    let complex = ChainComplex::new(dims, maps);
    CubeComplex { k, cells: cubes, complex }
}

/// Betti number and torsion per degree.
pub type BettiList = Vec<(usize, Vec<BigInt>)>;

pub fn cube_betti(c: &CubeComplex) -> BettiList {
    trim(betti_and_torsion(&c.complex))
}

fn trim(mut v: BettiList) -> BettiList {
    while v.len() > 1 && v.last().is_some_and(|(b, t)| *b == 0 && t.is_empty()) {
        v.pop();
    }
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub k: usize,
    pub cubes: Vec<usize>,
    pub oracle: Vec<(usize, Vec<String>)>,
    pub swiatkowski: Vec<(usize, Vec<String>)>,
    pub matches: bool,
}

fn render(v: &BettiList) -> Vec<(usize, Vec<String>)> {
    v.iter()
        .map(|(b, t)| (*b, t.iter().map(ToString::to_string).collect()))
        .collect()
}

/// Compares oracle and Świątkowski Betti numbers and torsion at weight `k`.
pub fn cross_check(g: &Graph, k: usize) -> OracleReport {
    let cc = discretized_config_complex(&subdivide_for(g, k), k);
    let oracle = cube_betti(&cc);
    let sw = trim(betti_and_torsion(&WeightComplex::build(&Swiatkowski::new(g), k).complex));
    OracleReport {
        k,
        cubes: cc.cells.iter().map(Vec::len).collect(),
        matches: oracle == sw,
        oracle: render(&oracle),
        swiatkowski: render(&sw),
    }
}
