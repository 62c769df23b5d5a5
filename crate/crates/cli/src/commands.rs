use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use grapeshot_core::coalgebra::{verify_coalgebra_axioms, HomologyCoalgebra};
use grapeshot_core::grapes::{
    classify_primitives, cross_check_primitives, sl_decompose, verify_formality, verify_sl_isomorphism,
};
use grapeshot_core::graph::{decompose_grapes, smooth_bivalent, GrapesStructure};
use grapeshot_core::linalg::rational::{self, Q};
use grapeshot_core::oracle::cross_check;
use grapeshot_core::swiatkowski::{betti_table, Ring, Swiatkowski, WeightComplex};
use grapeshot_core::{Error, Graph, GraphSpec};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::{Command, Common, Format, RingArg};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

const SUITES: [&str; 5] = ["coalgebra", "sl", "primitivity", "formality", "oracle"];
const ORACLE_MAX_WEIGHT: usize = 3;

struct Loaded {
    name: String,
    graph: Graph,
    root: Option<(String, String)>,
    max_degree: usize,
}

impl Loaded {
    fn grapes(&self) -> grapeshot_core::Result<GrapesStructure> {
        decompose_grapes(&self.graph, self.root.as_ref().map(|(v, e)| (v.as_str(), e.as_str())))
    }

    fn summary(&self) -> Value {
        let g = &self.graph;
        json!({
            "name": self.name,
            "vertices": g.num_vertices(),
            "edges": g.num_edges(),
            "essential_vertices": g.essential_vertices().len(),
            "first_betti": g.first_betti(),
        })
    }
}

fn load(c: &Common) -> anyhow::Result<Loaded> {
    let text = std::fs::read_to_string(&c.graph).with_context(|| format!("cannot read {}", c.graph.display()))?;
    let spec = GraphSpec::from_json(&text).with_context(|| format!("in {}", c.graph.display()))?;
    let graph = smooth_bivalent(&spec.build()?);
    let root = match &c.root {
        Some(r) => {
            let Some((v, e)) = r.split_once(':') else {
                bail!("--root expects VERTEX:EDGE, got `{r}`");
            };
            Some((v.to_string(), e.to_string()))
        }
        None => spec.root.clone(),
    };
    let max_degree = c.max_degree.unwrap_or_else(|| graph.factor_vertices().len());
    Ok(Loaded {
        name: graph_name(&c.graph),
        graph,
        root,
        max_degree,
    })
}

fn graph_name(p: &Path) -> String {
    p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn ring(r: RingArg) -> Ring {
    match r {
        RingArg::Int => Ring::Int,
        RingArg::Rat => Ring::Rat,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn run(cmd: &Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Homology(c) => homology(c),
        Command::Verify { common, suites } => verify(common, suites),
        Command::Primitives(c) => primitives(c),
    }
}

fn homology(c: &Common) -> anyhow::Result<Output> {
    let l = load(c)?;
    let rows = betti_table(&Swiatkowski::new(&l.graph), l.max_degree, c.max_weight, ring(c.ring));
    let text = match c.format {
        Format::Json => pretty(&json!({
            "graph": l.summary(),
            "ring": ring(c.ring),
            "max_weight": c.max_weight,
            "max_degree": l.max_degree,
            "rows": rows,
        })),
        Format::Csv => csv_text(
            &["degree", "weight", "betti", "torsion"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.degree.to_string(),
                        r.weight.to_string(),
                        r.betti.to_string(),
                        r.torsion.join(";"),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Output { text, passed: true })
}

struct Entry {
    suite: &'static str,
    theorem: String,
    slice: String,
    predicted: String,
    computed: String,
    status: &'static str,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn parse_suites(s: &str) -> anyhow::Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(SUITES);
            continue;
        }
        match SUITES.iter().find(|&&x| x == part) {
            Some(&x) => out.push(x),
            None => bail!("unknown suite `{part}` (expected one of {} or all)", SUITES.join(", ")),
        }
    }
    if out.is_empty() {
        bail!("no suites selected");
    }
    let mut seen = Vec::new();
    out.retain(|x| {
        let new = !seen.contains(x);
        seen.push(*x);
        new
    });
    Ok(out)
}

fn verify(c: &Common, suites: &str) -> anyhow::Result<Output> {
    let suites = parse_suites(suites)?;
    let l = load(c)?;
    let k_max = c.max_weight;
    let grapes = l.grapes();
    let mut entries = Vec::new();
    for suite in suites {
        let needs_grapes = matches!(suite, "sl" | "primitivity" | "formality");
        let gs = match (&grapes, needs_grapes) {
            (Err(err), true) => {
                entries.push(Entry {
                    suite,
                    theorem: suite.into(),
                    slice: format!("k<={k_max}"),
                    predicted: String::new(),
                    computed: err.to_string(),
                    status: "skipped",
                });
                continue;
            }
            (Ok(gs), _) => Some(gs),
            (Err(_), false) => None,
        };
        match suite {
            "coalgebra" => coalgebra_suite(&l, k_max, &mut entries),
            "sl" => sl_suite(gs.expect("grapes"), &l, k_max, &mut entries),
            "primitivity" => primitivity_suite(gs.expect("grapes"), &l, k_max, ring(c.ring), &mut entries),
            "formality" => formality_suite(gs.expect("grapes"), k_max, &mut entries),
            "oracle" => oracle_suite(&l, k_max, &mut entries),
            _ => unreachable!(),
        }
    }
    let passed = entries.iter().all(|e| e.status != "fail");
    let text = match c.format {
        Format::Json => {
            let reports: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "suite": e.suite,
                        "theorem": e.theorem,
                        "graph": l.name,
                        "slice": e.slice,
                        "predicted": e.predicted,
                        "computed": e.computed,
                        "status": e.status,
                    })
                })
                .collect();
            pretty(&json!({
                "graph": l.summary(),
                "max_weight": k_max,
                "max_degree": l.max_degree,
                "passed": passed,
                "reports": reports,
            }))
        }
        Format::Csv => csv_text(
            &["suite", "theorem", "graph", "slice", "predicted", "computed", "status"],
            &entries
                .iter()
                .map(|e| {
                    vec![
                        e.suite.to_string(),
                        e.theorem.clone(),
                        l.name.clone(),
                        e.slice.clone(),
                        e.predicted.clone(),
                        e.computed.clone(),
                        e.status.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Output { text, passed })
}

fn coalgebra_suite(l: &Loaded, k_max: usize, out: &mut Vec<Entry>) {
    let m = Swiatkowski::new(&l.graph);
    let slice = format!("k<={k_max},i<={}", l.max_degree);
    let bad: Vec<usize> = (0..=k_max)
        .filter(|&k| !WeightComplex::build(&m, k).complex.squares_to_zero())
        .collect();
    out.push(Entry {
        suite: "coalgebra",
        theorem: "boundary_squared".into(),
        slice: slice.clone(),
        predicted: "0".into(),
        computed: if bad.is_empty() {
            "0".into()
        } else {
            format!("nonzero at weights {bad:?}")
        },
        status: status(bad.is_empty()),
    });
    for r in verify_coalgebra_axioms(&m, k_max, l.max_degree) {
        out.push(Entry {
            suite: "coalgebra",
            theorem: r.axiom.name().into(),
            slice: slice.clone(),
            predicted: format!("holds on {} basis elements", r.checked),
            computed: match &r.counterexample {
                None => format!("holds on {} basis elements", r.checked),
                Some(x) => format!("fails on {x}"),
            },
            status: status(r.passed),
        });
    }
}

fn sl_suite(gs: &GrapesStructure, l: &Loaded, k_max: usize, out: &mut Vec<Entry>) {
    let mut reports = verify_sl_isomorphism(gs, k_max);
    reports.retain(|r| r.degree <= l.max_degree);
    reports.sort_by_key(|r| (r.degree, r.weight));
    for r in reports {
        let computed = if r.predicted == r.computed && !r.invertible {
            format!("{} (external products dependent)", r.computed)
        } else {
            r.computed.to_string()
        };
        out.push(Entry {
            suite: "sl",
            theorem: "star_loop_basis".into(),
            slice: format!("({},{})", r.degree, r.weight),
            predicted: r.predicted.to_string(),
            computed,
            status: status(r.passed),
        });
    }
}

fn primitivity_suite(gs: &GrapesStructure, l: &Loaded, k_max: usize, ring: Ring, out: &mut Vec<Entry>) {
    let hc = HomologyCoalgebra::new(&Swiatkowski::new(gs.graph()), k_max, ring);
    for i in 0..=l.max_degree {
        for k in 0..=k_max {
            let slice = format!("({i},{k})");
            let entry = match cross_check_primitives(gs, &hc, i, k) {
                Ok(cmp) => Entry {
                    suite: "primitivity",
                    theorem: "primitive_classification".into(),
                    slice,
                    predicted: format!("dim {}", cmp.predicted.len()),
                    computed: format!("dim {}", cmp.kernel.len()),
                    status: status(cmp.equal),
                },
                Err(err) => Entry {
                    suite: "primitivity",
                    theorem: "primitive_classification".into(),
                    slice,
                    predicted: String::new(),
                    computed: err.to_string(),
                    status: "fail",
                },
            };
            out.push(entry);
        }
    }
}

fn formality_suite(gs: &GrapesStructure, k_max: usize, out: &mut Vec<Entry>) {
    let report = verify_formality(gs, k_max);
    for check in report.checks {
        out.push(Entry {
            suite: "formality",
            theorem: check.name,
            slice: format!("k<={k_max}"),
            predicted: "holds".into(),
            computed: check.detail.unwrap_or_else(|| "holds".into()),
            status: status(check.passed),
        });
    }
}

fn render_betti(v: &[(usize, Vec<String>)]) -> String {
    v.iter()
        .enumerate()
        .map(|(i, (b, t))| {
            if t.is_empty() {
                format!("H{i}={b}")
            } else {
                format!("H{i}={b}+torsion[{}]", t.join(","))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn oracle_suite(l: &Loaded, k_max: usize, out: &mut Vec<Entry>) {
    for k in 0..=k_max.min(ORACLE_MAX_WEIGHT) {
        let r = cross_check(&l.graph, k);
        out.push(Entry {
            suite: "oracle",
            theorem: "cube_complex_equivalence".into(),
            slice: format!("k={k}"),
            predicted: render_betti(&r.swiatkowski),
            computed: render_betti(&r.oracle),
            status: status(r.matches),
        });
    }
}

fn fmt_q(c: &Q) -> String {
    c.to_string()
}

/// `c1*x1 + c2*x2 - ...` with unit coefficients suppressed.
fn combination<'a>(terms: impl IntoIterator<Item = (&'a Q, String)>) -> String {
    let mut s = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a.is_one() {
            s.push_str(&label);
        } else {
            let _ = write!(s, "{}*{label}", fmt_q(&a));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn primitives(c: &Common) -> anyhow::Result<Output> {
    let l = load(c)?;
    let gs = match l.grapes() {
        Ok(gs) => gs,
        Err(err @ (Error::NotAGrape(_) | Error::NoEssentialVertex)) => {
            bail!("`primitives` needs a bunch of grapes: {err}")
        }
        Err(err) => return Err(err.into()),
    };
    let hc = HomologyCoalgebra::new(&Swiatkowski::new(gs.graph()), c.max_weight, ring(c.ring));
    let m = Swiatkowski::new(gs.graph());
    let mut slices = Vec::new();
    let mut csv_rows = Vec::new();
    let mut passed = true;
    for i in 0..=l.max_degree {
        for k in 0..=c.max_weight {
            let h = hc.homology(k);
            let n = hc.dim(i, k);
            let kernel = hc.primitive_kernel(&m, i, k)?;
            let predicted = classify_primitives(&gs, i, k);
            let pred_rows: Vec<Vec<Q>> = predicted
                .iter()
                .map(|p| rational::to_q(&h.coords(i, &p.chain)))
                .collect();
            let pred_cols = rational::columns_to_rows(&pred_rows, n);
            let matches = rational::same_span(&kernel, &pred_rows, n)
                && kernel.len() == rational::rank(&pred_rows, n);
            passed &= matches;
            let mut basis = Vec::new();
            for (idx, v) in kernel.iter().enumerate() {
                let ints = rational::primitive_integer(v);
                let vq = rational::to_q(&ints);
                let sl = sl_decompose(&gs, h, i, &vq)
                    .map(|t| combination(t.iter().map(|(g, c)| (c, g.display(&gs)))));
                let r0 = rational::solve(&pred_cols, &vq, predicted.len()).map(|x| {
                    combination(x.iter().zip(&predicted).map(|(c, p)| (c, p.label.clone())))
                });
                csv_rows.push(vec![
                    i.to_string(),
                    k.to_string(),
                    n.to_string(),
                    idx.to_string(),
                    ints.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
                    sl.clone().unwrap_or_default(),
                    r0.clone().unwrap_or_default(),
                ]);
                basis.push(json!({
                    "coordinates": ints.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "star_loop": sl,
                    "r0_combination": r0,
                }));
            }
            slices.push(json!({
                "degree": i,
                "weight": k,
                "homology_dim": n,
                "dimension": kernel.len(),
                "basis": basis,
                "predicted": predicted.iter().map(|p| p.label.clone()).collect::<Vec<_>>(),
                "matches": matches,
            }));
        }
    }
    let text = match c.format {
        Format::Json => pretty(&json!({
            "graph": l.summary(),
            "root": {
                "vertex": gs.graph().vertex_id(gs.root_vertex),
                "edge": gs.graph().edge_id(gs.root_edge),
            },
            "max_weight": c.max_weight,
            "max_degree": l.max_degree,
            "slices": slices,
        })),
        Format::Csv => csv_text(
            &["degree", "weight", "homology_dim", "index", "coordinates", "star_loop", "r0_combination"],
            &csv_rows,
        )?,
    };
    Ok(Output { text, passed })
}
