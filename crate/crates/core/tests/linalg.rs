use grapeshot_core::linalg::rational::{self, q, Q};
use grapeshot_core::linalg::reduce::{betti_and_torsion, homology};
use grapeshot_core::linalg::{smith_normal_form, ChainComplex, Matrix, SparseMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn snf_examples() {
    assert_eq!(smith_normal_form(&Matrix::identity(3)).diagonal, ints(&[1, 1, 1]));
    let s = smith_normal_form(&Matrix::from_rows(vec![vec![2, 4], vec![6, 8]]));
    assert_eq!(s.diagonal, ints(&[2, 4]));
    assert!(smith_normal_form(&Matrix::zeros(3, 2)).diagonal.is_empty());
    let s = smith_normal_form(&Matrix::from_rows(vec![vec![2, 0], vec![0, 3]]));
    assert_eq!(s.diagonal, ints(&[1, 6]));
}

#[test]
fn determinants() {
    assert_eq!(Matrix::from_rows(vec![vec![2, 4], vec![6, 8]]).determinant(), BigInt::from(-8));
    assert_eq!(Matrix::identity(4).determinant(), BigInt::one());
    let m = Matrix::from_rows(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
    assert_eq!(m.determinant(), BigInt::from(-2));
}

/// A chain complex from dense boundary matrices.
fn complex(dims: Vec<usize>, maps: Vec<Vec<Vec<i64>>>) -> ChainComplex {
    let mut boundary = vec![SparseMatrix::zeros(0, dims[0])];
    for (i, m) in maps.into_iter().enumerate() {
        let dense = if m.is_empty() {
            Matrix::zeros(dims[i], dims[i + 1])
        } else {
            Matrix::from_rows(m)
        };
        boundary.push(SparseMatrix::from_dense(&dense));
    }
    ChainComplex::new(dims, boundary)
}

#[test]
fn homology_of_small_complexes() {
    // circle: two vertices, two edges
    let circle = complex(vec![2, 2], vec![vec![vec![-1, -1], vec![1, 1]]]);
    assert_eq!(betti_and_torsion(&circle), vec![(1, vec![]), (1, vec![])]);

    // projective plane style torsion: Z --2--> Z
    let rp = complex(vec![1, 1], vec![vec![vec![2]]]);
    assert_eq!(betti_and_torsion(&rp), vec![(0, ints(&[2])), (0, vec![])]);

    let h = homology(&circle, true);
    assert_eq!(h[1].representatives.len(), 1);
    assert_eq!(h[1].functionals.len(), 1);
}

#[test]
fn rational_helpers() {
    let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
    assert_eq!(rational::rank(&rows, 3), 1);
    let k = rational::kernel(&rows, 3);
    assert_eq!(k.len(), 2);
    for v in &k {
        let dot: Q = v.iter().zip(&rows[0]).map(|(a, b)| a * b).sum();
        assert!(dot.is_zero());
    }
    let a = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
    let x = rational::solve(&a, &[q(3), q(1)], 2).unwrap();
    assert_eq!(x, vec![q(2), q(1)]);
    assert!(rational::solve(&rows, &[q(1), q(1)], 3).is_none());
    let half = Q::new(BigInt::from(1), BigInt::from(2));
    assert_eq!(rational::primitive_integer(&[half.clone(), -half, q(0)]), ints(&[1, -1, 0]));
    assert_eq!(rational::primitive_integer(&[q(-4), q(6)]), ints(&[2, -3]));
    assert!(rational::same_span(&[vec![q(1), q(1)]], &[vec![q(-2), q(-2)]], 2));
    assert!(!rational::same_span(&[vec![q(1), q(0)]], &[vec![q(0), q(1)]], 2));
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r).prop_map(Matrix::from_rows)
    })
}

proptest! {
    #[test]
    fn snf_factors_the_matrix(m in small_matrix()) {
        let s = smith_normal_form(&m);
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if i == j && i < s.rank() { s.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(&d[(i, j)], &expected);
            }
        }
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(m.cols()));
        for w in s.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.diagonal.iter().all(|x| x.is_positive()));
        let qrows: Vec<Vec<Q>> = (0..m.rows()).map(|i| rational::to_q(m.row(i))).collect();
        prop_assert_eq!(s.rank(), rational::rank(&qrows, m.cols()));
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in small_matrix()) {
        let qrows: Vec<Vec<Q>> = (0..m.rows()).map(|i| rational::to_q(m.row(i))).collect();
        let k = rational::kernel(&qrows, m.cols());
        prop_assert_eq!(k.len() + rational::rank(&qrows, m.cols()), m.cols());
        for v in &k {
            for r in &qrows {
                let dot: Q = v.iter().zip(r).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn euler_characteristic_of_two_step_complex(m in small_matrix()) {
        // C_1 --m--> C_0
        let cc = ChainComplex::new(
            vec![m.rows(), m.cols()],
            vec![SparseMatrix::zeros(0, m.rows()), SparseMatrix::from_dense(&m)],
        );
        let h = betti_and_torsion(&cc);
        let chi = m.rows() as i64 - m.cols() as i64;
        prop_assert_eq!(h[0].0 as i64 - h[1].0 as i64, chi);
        let full = homology(&cc, true);
        for (i, d) in full.iter().enumerate() {
            prop_assert_eq!(d.representatives.len(), d.betti);
            for (a, f) in d.functionals.iter().enumerate() {
                for (b, z) in d.representatives.iter().enumerate() {
                    let mut dot = BigInt::zero();
                    for (r, x) in z {
                        for (s, y) in f {
                            if r == s {
                                dot += x * y;
                            }
                        }
                    }
                    prop_assert_eq!(dot, BigInt::from(u8::from(a == b)), "degree {}", i);
                }
            }
        }
    }
}
