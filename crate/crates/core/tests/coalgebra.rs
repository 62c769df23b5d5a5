use std::collections::BTreeMap;

use grapeshot_core::coalgebra::{
    check_axiom, coshuffle, counit, perturb, primitive_kernel, tensor_boundary, unit_chain, verify_coalgebra_axioms,
    Axiom, HomologyCoalgebra,
};
use grapeshot_core::graph::families::{bigon_with_leaves, circle, elementary, interval, theta, two_loop_leaf};
use grapeshot_core::linalg::rational::{self, Q};
use grapeshot_core::poly::Monomial;
use grapeshot_core::swiatkowski::{
    enumerate_basis, format_element, BasisElement, Chain, Local, Ring, Swiatkowski, TensorChain, WeightComplex,
};
use grapeshot_core::Graph;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn one() -> BasisElement {
    BasisElement::unit()
}

fn half(v: usize, h: usize) -> BasisElement {
    BasisElement::new(Monomial::one(), vec![(v, Local::Half(h))])
}

fn tensor(terms: Vec<(BasisElement, BasisElement, i64)>) -> TensorChain {
    let mut t = TensorChain::new();
    for (a, b, c) in terms {
        t.add_term((a, b), BigInt::from(c));
    }
    t
}

#[test]
fn coshuffle_of_unit_and_half_edge() {
    let m = Swiatkowski::new(&elementary(0, 3));
    assert_eq!(coshuffle(&m, &unit_chain()), tensor(vec![(one(), one(), 1)]));
    let h = half(0, 0);
    assert_eq!(
        coshuffle(&m, &Chain::single(h.clone())),
        tensor(vec![(h.clone(), one(), 1), (one(), h, 1)])
    );
}

#[test]
fn coshuffle_of_wedge_at_distinct_vertices() {
    let g = theta(3);
    let m = Swiatkowski::new(&g);
    let (a, b) = (g.vertex_index("a").unwrap(), g.vertex_index("b").unwrap());
    let h = half(a, 0);
    let h2 = half(b, 3);
    let (hh, neg) = h.wedge(&h2).unwrap();
    assert!(!neg);
    let expected = tensor(vec![
        (hh.clone(), one(), 1),
        (h.clone(), h2.clone(), 1),
        (h2.clone(), h.clone(), -1),
        (one(), hh, 1),
    ]);
    assert_eq!(coshuffle(&m, &Chain::single(h.wedge(&h2).unwrap().0)), expected);
}

#[test]
fn coshuffle_of_edge_times_half_edge() {
    let m = Swiatkowski::new(&elementary(0, 3));
    let e = Monomial::var(1);
    let h = half(0, 0);
    let eh = h.times_mono(&e);
    let ebare = BasisElement::from_mono(e);
    let expected = tensor(vec![
        (eh.clone(), one(), 1),
        (ebare.clone(), h.clone(), 1),
        (h, ebare, 1),
        (one(), eh.clone(), 1),
    ]);
    assert_eq!(coshuffle(&m, &Chain::single(eh)), expected);
}

#[test]
fn axioms_on_examples() {
    let cases: Vec<(Graph, usize, usize)> = vec![
        (elementary(0, 3), 3, 1),
        (interval(), 4, 0),
        (theta(3), 4, 2),
        (elementary(2, 1), 4, 1),
        (bigon_with_leaves(), 3, 2),
    ];
    for (g, k, i) in cases {
        let m = Swiatkowski::new(&g);
        for r in verify_coalgebra_axioms(&m, k, i) {
            assert!(r.passed, "{:?}: {:?}", r.axiom, r.counterexample);
            assert!(r.checked > 0);
        }
    }
}

#[test]
fn counit_picks_the_unit() {
    let mut c = unit_chain();
    c.add_term(BasisElement::from_mono(Monomial::var(0)), BigInt::from(5));
    assert_eq!(counit(&c), BigInt::one());
}

#[test]
fn unit_class_comultiplies_to_unit_tensor_unit() {
    let m = Swiatkowski::new(&elementary(1, 1));
    let hc = HomologyCoalgebra::new(&m, 0, Ring::Int);
    let u = hc.unit_coordinate();
    assert!(u.clone() * &u == BigInt::one());
    let v = hc.comultiply(&m, 0, 0, &unit_chain());
    assert_eq!(v.len(), 1);
    assert_eq!(v[&((0, 0), (0, 0))], vec![BigInt::one()]);
}

#[test]
fn circle_loop_class_is_primitive() {
    let m = Swiatkowski::new(&circle());
    let hc = HomologyCoalgebra::new(&m, 1, Ring::Int);
    assert_eq!(hc.dim(1, 1), 1);
    let s = hc.slice(&m, 1, 1).unwrap();
    let u = hc.unit_coordinate();
    for b in &s.blocks {
        let expected = if b.left == (0, 0) || b.right == (0, 0) {
            u.clone()
        } else {
            BigInt::zero()
        };
        assert_eq!(b.matrix, vec![vec![expected]], "{:?} {:?}", b.left, b.right);
    }
    assert_eq!(hc.primitive_kernel(&m, 1, 1).unwrap().len(), 1);
}

#[test]
fn edge_squared_class() {
    let m = Swiatkowski::new(&interval());
    let hc = HomologyCoalgebra::new(&m, 2, Ring::Int);
    let e2 = Chain::single(BasisElement::from_mono(Monomial::power(0, 2)));
    let e1 = Chain::single(BasisElement::from_mono(Monomial::var(0)));
    let c2 = hc.homology(2).coords(0, &e2)[0].clone();
    let c1 = hc.homology(1).coords(0, &e1)[0].clone();
    let u = hc.unit_coordinate();
    let v = hc.comultiply(&m, 0, 2, &e2);
    assert_eq!(v[&((0, 2), (0, 0))], vec![&c2 * &u]);
    assert_eq!(v[&((0, 1), (0, 1))], vec![BigInt::from(2) * &c1 * &c1]);
    assert_eq!(v[&((0, 0), (0, 2))], vec![&u * &c2]);
}

#[test]
fn primitive_kernels_in_degree_zero_and_g11() {
    for g in [interval(), elementary(0, 3), theta(3), elementary(1, 1)] {
        let m = Swiatkowski::new(&g);
        assert_eq!(primitive_kernel(&m, 0, 0).unwrap().len(), 0);
        assert_eq!(primitive_kernel(&m, 0, 1).unwrap().len(), 1);
        assert_eq!(primitive_kernel(&m, 0, 2).unwrap().len(), 0);
    }
    let m = Swiatkowski::new(&elementary(1, 1));
    let k = primitive_kernel(&m, 1, 2).unwrap();
    assert_eq!(k.len(), 1);
}

/// Independent Künneth coordinates: write the tensor cycle, weight pair by
/// weight pair, as `Σ c_ab z_a⊗z_b + ∂w` by an explicit solve over ℚ.
fn kunneth_by_solve(
    m: &Swiatkowski,
    hc: &HomologyCoalgebra,
    i: usize,
    k: usize,
    t: &TensorChain,
) -> BTreeMap<((usize, usize), (usize, usize)), Vec<Q>> {
    let complexes: Vec<WeightComplex> = (0..=k).map(|w| WeightComplex::build(m, w)).collect();
    let mut out = BTreeMap::new();
    for k1 in 0..=k {
        let k2 = k - k1;
        // rows: basis pairs of total degree i
        let mut index: BTreeMap<(BasisElement, BasisElement), usize> = BTreeMap::new();
        for i1 in 0..=i {
            let (Some(bl), Some(br)) = (complexes[k1].bases.get(i1), complexes[k2].bases.get(i - i1)) else {
                continue;
            };
            for x in bl {
                for y in br {
                    let n = index.len();
                    index.insert((x.clone(), y.clone()), n);
                }
            }
        }
        let to_vec = |c: &TensorChain| -> Vec<Q> {
            let mut v = vec![Q::zero(); index.len()];
            for ((x, y), a) in c.iter() {
                if x.weight() == k1 {
                    v[index[&(x.clone(), y.clone())]] += Q::from_integer(a.clone());
                }
            }
            v
        };
        let mut cols: Vec<Vec<Q>> = Vec::new();
        let mut labels = Vec::new();
        for i1 in 0..=i {
            let (dl, dr) = (hc.dim(i1, k1), hc.dim(i - i1, k2));
            for a in 0..dl {
                for b in 0..dr {
                    let za = hc.homology(k1).representative(i1, a);
                    let zb = hc.homology(k2).representative(i - i1, b);
                    let mut zz = TensorChain::new();
                    for (x, c) in za.iter() {
                        for (y, d) in zb.iter() {
                            zz.add_term((x.clone(), y.clone()), c * d);
                        }
                    }
                    cols.push(to_vec(&zz));
                    labels.push(((i1, k1), (i - i1, k2), a * dr + b));
                }
            }
        }
        let nc = labels.len();
        for i1 in 0..=i + 1 {
            let (Some(bl), Some(br)) = (complexes[k1].bases.get(i1), complexes[k2].bases.get(i + 1 - i1)) else {
                continue;
            };
            for x in bl {
                for y in br {
                    let d = tensor_boundary(m, &tensor(vec![(x.clone(), y.clone(), 1)]));
                    cols.push(to_vec(&d));
                }
            }
        }
        let rows = rational::columns_to_rows(&cols, index.len());
        let sol = rational::solve(&rows, &to_vec(t), cols.len()).expect("tensor cycle lies in span");
        for (j, (l, r, pos)) in labels.into_iter().enumerate().take(nc) {
            let n = hc.dim(l.0, l.1) * hc.dim(r.0, r.1);
            out.entry((l, r)).or_insert_with(|| vec![Q::zero(); n])[pos] = sol[j].clone();
        }
    }
    out
}

#[test]
fn kunneth_coordinates_agree_with_explicit_solve() {
    for (g, kmax) in [(elementary(1, 1), 3), (elementary(0, 3), 3), (theta(3), 2)] {
        let m = Swiatkowski::new(&g);
        let hc = HomologyCoalgebra::new(&m, kmax, Ring::Int);
        for k in 0..=kmax {
            for i in 0..=2 {
                for z in hc.homology(k).representatives(i) {
                    let t = coshuffle(&m, &z);
                    let fast = hc.tensor_coords(i, k, &t);
                    let slow = kunneth_by_solve(&m, &hc, i, k, &t);
                    assert_eq!(fast.len(), slow.len(), "blocks at ({i},{k})");
                    for (key, v) in &fast {
                        assert_eq!(&rational::to_q(v), &slow[key], "{key:?} at ({i},{k})");
                    }
                }
            }
        }
    }
}

fn complete5() -> Graph {
    let vs: Vec<String> = (0..5).map(|i| format!("v{i}")).collect();
    let mut es = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            es.push((format!("e{a}{b}"), format!("v{a}"), format!("v{b}")));
        }
    }
    Graph::new(vs, es, None).unwrap()
}

#[test]
fn torsion_is_refused_in_integer_mode() {
    let m = Swiatkowski::new(&complete5());
    let int = HomologyCoalgebra::new(&m, 2, Ring::Int);
    assert_eq!(int.homology(2).torsion(1), &[BigInt::from(2)]);
    let err = int.slice(&m, 1, 2).unwrap_err();
    assert!(matches!(err, grapeshot_core::Error::TorsionPresent { degree: 1, weight: 2, .. }), "{err}");
    let rat = HomologyCoalgebra::new(&m, 2, Ring::Rat);
    let s = rat.slice(&m, 1, 2).unwrap();
    assert_eq!(s.dim, 6);
}

#[test]
fn integer_and_rational_slices_agree_without_torsion() {
    let m = Swiatkowski::new(&bigon_with_leaves());
    let a = HomologyCoalgebra::new(&m, 3, Ring::Int);
    let b = HomologyCoalgebra::new(&m, 3, Ring::Rat);
    for k in 0..=3 {
        for i in 0..=2 {
            assert_eq!(a.slice(&m, i, k).unwrap(), b.slice(&m, i, k).unwrap());
        }
    }
}

fn graphs() -> Vec<Graph> {
    vec![elementary(1, 1), elementary(0, 3), theta(3), two_loop_leaf(), elementary(2, 1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn axioms_hold_on_random_basis_elements(gi in 0usize..5, k in 0usize..5, i in 0usize..3, n in 0usize..200) {
        let g = &graphs()[gi];
        let m = Swiatkowski::new(g);
        let basis = enumerate_basis(&m, i, k);
        prop_assume!(!basis.is_empty());
        let b = &basis[n % basis.len()];
        for axiom in Axiom::ALL {
            prop_assert!(check_axiom(&m, axiom, b), "{} fails on {}", axiom.name(), format_element(&m, b));
        }
    }

    #[test]
    fn comultiplication_ignores_boundary_perturbations(
        gi in 0usize..5,
        k in 1usize..4,
        i in 0usize..2,
        coeffs in proptest::collection::vec(-2i64..3, 1..8),
    ) {
        let g = &graphs()[gi];
        let m = Swiatkowski::new(g);
        let hc = HomologyCoalgebra::new(&m, k, Ring::Rat);
        let above = enumerate_basis(&m, i + 1, k);
        prop_assume!(!above.is_empty() && hc.dim(i, k) > 0);
        let mut w = Chain::new();
        for (b, c) in above.iter().zip(coeffs.iter().cycle()) {
            w.add_term(b.clone(), BigInt::from(*c));
        }
        for z in hc.homology(k).representatives(i) {
            let z2 = perturb(&m, &z, &w);
            prop_assert_eq!(hc.comultiply(&m, i, k, &z), hc.comultiply(&m, i, k, &z2));
        }
    }
}
