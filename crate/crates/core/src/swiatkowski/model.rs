use num_bigint::BigInt;
use num_traits::One;

use super::chain::{BasisElement, Chain, Local};
use crate::graph::Graph;
use crate::linalg::{ChainComplex, SparseMatrix};
use crate::poly::Monomial;

/// One term `c · e · g'` of the boundary (or of a coproduct half) of a
/// local generator: coefficient, optional edge multiplier, optional
/// replacement generator at the same vertex.
pub type LocalTerm = (BigInt, Option<usize>, Option<Local>);

/// A term `c · x ⊗ y` of the coproduct of a local generator.
pub type CoTerm = (BigInt, Option<Local>, Option<Local>);

/// An exterior algebra over the edge polynomial ring generated by local
/// generators at a fixed ordered set of vertices.
pub trait Model: Sync {
    fn graph(&self) -> &Graph;
    /// Vertices carrying a local factor, in the global order.
    fn vertices(&self) -> &[usize];
    /// Non-unit local generators at a vertex, in canonical order.
    fn generators(&self, v: usize) -> &[Local];
    fn local_boundary(&self, v: usize, g: &Local) -> Vec<LocalTerm>;
    fn local_coproduct(&self, v: usize, g: &Local) -> Vec<CoTerm>;

    fn max_degree(&self) -> usize {
        self.vertices()
            .iter()
            .map(|&v| self.generators(v).iter().map(Local::degree).max().unwrap_or(0))
            .sum()
    }

    fn format_local(&self, v: usize, g: &Local) -> String {
        let graph = self.graph();
        match g {
            Local::Vert => format!("v({})", graph.vertex_id(v)),
            Local::Half(h) => format!("h({})", graph.half_edge_id(*h)),
            Local::Cone([i, j, k]) => format!("a({};{},{},{})", graph.vertex_id(v), i + 1, j + 1, k + 1),
            Local::ConeBar([i, j, k]) => {
                format!("abar({};{},{},{})", graph.vertex_id(v), i + 1, j + 1, k + 1)
            }
        }
    }
}

/// The Świątkowski complex: at each factor vertex `v` the generators are
/// `v` and the half-edges at `v`, with `∂h = e(h) - v`.
#[derive(Debug, Clone)]
pub struct Swiatkowski {
    graph: Graph,
    vertices: Vec<usize>,
    gens: Vec<Vec<Local>>,
}

impl Swiatkowski {
    pub fn new(graph: &Graph) -> Swiatkowski {
        let vertices = graph.factor_vertices();
        let mut gens = vec![Vec::new(); graph.num_vertices()];
        for &v in &vertices {
            gens[v].push(Local::Vert);
            gens[v].extend(graph.rotation(v).iter().map(|&h| Local::Half(h)));
        }
        Swiatkowski {
            graph: graph.clone(),
            vertices,
            gens,
        }
    }
}

impl Model for Swiatkowski {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn generators(&self, v: usize) -> &[Local] {
        &self.gens[v]
    }

    fn local_boundary(&self, _v: usize, g: &Local) -> Vec<LocalTerm> {
        swiatkowski_boundary(&self.graph, g)
    }

    fn local_coproduct(&self, _v: usize, g: &Local) -> Vec<CoTerm> {
        primitive_coproduct(g)
    }
}

pub(crate) fn swiatkowski_boundary(graph: &Graph, g: &Local) -> Vec<LocalTerm> {
    match g {
        Local::Half(h) => vec![
            (BigInt::one(), Some(graph.edge_of(*h)), None),
            (-BigInt::one(), None, Some(Local::Vert)),
        ],
        _ => Vec::new(),
    }
}

pub(crate) fn primitive_coproduct(g: &Local) -> Vec<CoTerm> {
    vec![(BigInt::one(), Some(*g), None), (BigInt::one(), None, Some(*g))]
}

/// All basis elements of weight `k`, grouped by degree. Order: local
/// choices lexicographic in vertex order (absent first, then generators in
/// canonical order), then monomials.
pub fn enumerate_weight<M: Model + ?Sized>(m: &M, k: usize) -> Vec<Vec<BasisElement>> {
    let mut out: Vec<Vec<BasisElement>> = vec![Vec::new(); m.max_degree().min(k) + 1];
    let edges: Vec<usize> = (0..m.graph().num_edges()).collect();
    let mut chosen: Vec<(usize, Local)> = Vec::new();
    fn rec<M: Model + ?Sized>(
        m: &M,
        idx: usize,
        weight_left: usize,
        degree: usize,
        chosen: &mut Vec<(usize, Local)>,
        edges: &[usize],
        out: &mut Vec<Vec<BasisElement>>,
    ) {
        let verts = m.vertices();
        if idx == verts.len() {
            if edges.is_empty() && weight_left > 0 {
                return;
            }
            for mono in Monomial::all_of_degree(edges, weight_left as u32) {
                out[degree].push(BasisElement {
                    mono,
                    locals: chosen.clone(),
                });
            }
            return;
        }
        rec(m, idx + 1, weight_left, degree, chosen, edges, out);
        let v = verts[idx];
        for g in m.generators(v) {
            if g.weight() <= weight_left {
                chosen.push((v, *g));
                rec(m, idx + 1, weight_left - g.weight(), degree + g.degree(), chosen, edges, out);
                chosen.pop();
            }
        }
    }
    rec(m, 0, k, 0, &mut chosen, &edges, &mut out);
    out
}

pub fn enumerate_basis<M: Model + ?Sized>(m: &M, i: usize, k: usize) -> Vec<BasisElement> {
    enumerate_weight(m, k).into_iter().nth(i).unwrap_or_default()
}

/// Boundary of a basis element by the Leibniz rule with Koszul signs.
pub fn boundary_of<M: Model + ?Sized>(m: &M, b: &BasisElement) -> Chain {
    let mut out = Chain::new();
    let mut before = 0usize;
    for (pos, (v, g)) in b.locals.iter().enumerate() {
        if g.degree() > 0 {
            let negative = before % 2 == 1;
            for (c, mult, repl) in m.local_boundary(*v, g) {
                let mono = match mult {
                    Some(e) => b.mono.mul_var(e),
                    None => b.mono.clone(),
                };
                let mut locals = b.locals.clone();
                match repl {
                    Some(r) => locals[pos].1 = r,
                    None => {
                        locals.remove(pos);
                    }
                }
                out.add_term(BasisElement { mono, locals }, if negative { -c } else { c });
            }
        }
        before += g.degree();
    }
    out
}

pub fn boundary<M: Model + ?Sized>(m: &M, c: &Chain) -> Chain {
    let mut out = Chain::new();
    for (b, x) in c.iter() {
        out.add_scaled(&boundary_of(m, b), x);
    }
    out
}

/// The weight-`k` part of the complex, with its bases.
pub struct WeightComplex {
    pub weight: usize,
    pub bases: Vec<Vec<BasisElement>>,
    pub index: Vec<std::collections::HashMap<BasisElement, usize>>,
    pub complex: ChainComplex,
}

impl WeightComplex {
    pub fn build<M: Model + ?Sized>(m: &M, k: usize) -> WeightComplex {
        let bases = enumerate_weight(m, k);
        let index: Vec<std::collections::HashMap<BasisElement, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(dims.len());
        maps.push(SparseMatrix::zeros(0, dims[0]));
        for i in 1..dims.len() {
            let columns = bases[i]
                .iter()
                .map(|b| {
                    let mut col: Vec<(usize, BigInt)> = boundary_of(m, b)
                        .iter()
                        .map(|(t, c)| (index[i - 1][t], c.clone()))
                        .collect();
                    col.sort_by_key(|(r, _)| *r);
                    col
                })
                .collect();
            maps.push(SparseMatrix {
                rows: dims[i - 1],
                cols: dims[i],
                columns,
            });
        }
        WeightComplex {
            weight: k,
            bases,
            index,
            complex: ChainComplex::new(dims, maps),
        }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.bases.get(i).map_or(0, Vec::len)
    }

    /// Coordinates of a homogeneous chain of degree `i` in the basis.
    pub fn to_vector(&self, i: usize, c: &Chain) -> std::collections::BTreeMap<usize, BigInt> {
        c.iter()
            .map(|(b, x)| {
                let idx = *self.index[i]
                    .get(b)
                    .unwrap_or_else(|| panic!("chain term outside the degree-{i} basis"));
                (idx, x.clone())
            })
            .collect()
    }

    pub fn to_chain(&self, i: usize, v: &[(usize, BigInt)]) -> Chain {
        v.iter().map(|(j, x)| (self.bases[i][*j].clone(), x.clone())).collect()
    }
}

/// Boundary matrix from degree `i` to degree `i-1` at weight `k`.
pub fn boundary_matrix<M: Model + ?Sized>(m: &M, i: usize, k: usize) -> SparseMatrix {
    let wc = WeightComplex::build(m, k);
    if i == 0 {
        return SparseMatrix::zeros(0, wc.dim(0));
    }
    match wc.complex.boundary.get(i) {
        Some(mat) => mat.clone(),
        None => SparseMatrix::zeros(wc.dim(i - 1), 0),
    }
}

pub fn format_element<M: Model + ?Sized>(m: &M, b: &BasisElement) -> String {
    let names = m.graph().edge_names();
    let mut parts = Vec::new();
    if !b.mono.is_one() {
        parts.push(b.mono.display(&names));
    }
    for (v, g) in &b.locals {
        parts.push(m.format_local(*v, g));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Terms are printed largest monomial first.
pub fn format_chain<M: Model + ?Sized>(m: &M, c: &Chain) -> String {
    use num_traits::Signed;
    if c.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = c.iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.mono.cmp(&a.mono).then_with(|| a.locals.cmp(&b.locals)));
    let mut s = String::new();
    for (i, (b, x)) in terms.into_iter().enumerate() {
        let body = format_element(m, b);
        let neg = x.is_negative();
        let abs = x.abs();
        s.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if abs.is_one() {
            s.push_str(&body);
        } else {
            s.push_str(&format!("{abs}*{body}"));
        }
    }
    s
}
