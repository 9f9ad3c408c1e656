//! Property-based invariants for the exact linear algebra and the free Lie
//! algebra operations.

use proptest::prelude::*;

use pseudofree::exact::{Matrix, Scalar, Subspace};
use pseudofree::freelie::FreeLie;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(scalar_strategy(), r * c).prop_map(move |data| {
            let mut k = 0;
            Matrix::from_fn(r, c, |_, _| {
                let v = data[k].clone();
                k += 1;
                v
            })
        })
    })
}

/// Independent rank oracle: the largest size of a nonzero minor, by brute
/// force over all square submatrices.
fn minor_rank(m: &Matrix) -> usize {
    fn det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
        if rows.len() == 1 {
            return m[(rows[0], cols[0])].clone();
        }
        let mut acc = Scalar::zero();
        for (k, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(m, &rows[1..], &sub_cols);
            let term = &m[(rows[0], c)] * &minor;
            if k % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }
    let max = m.rows().min(m.cols());
    for size in (1..=max).rev() {
        for rows in subsets(m.rows(), size) {
            for cols in subsets(m.cols(), size) {
                if !det(m, &rows, &cols).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rref_is_idempotent(m in matrix_strategy(5, 6)) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn rank_matches_minor_oracle(m in matrix_strategy(5, 7)) {
        prop_assert_eq!(m.rank(), minor_rank(&m));
    }

    #[test]
    fn rank_plus_nullity_is_column_count(m in matrix_strategy(6, 8)) {
        prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
    }

    #[test]
    fn membership_agrees_with_solvability(
        m in matrix_strategy(4, 5),
        rhs in proptest::collection::vec(scalar_strategy(), 4),
    ) {
        let rhs = &rhs[..m.rows()];
        // b lies in the column space iff the system is solvable
        let col_space = Subspace::from_vectors(
            m.rows(),
            (0..m.cols()).map(|j| (0..m.rows()).map(|i| m[(i, j)].clone()).collect()),
        );
        let solvable = m.solve(rhs).is_some();
        prop_assert_eq!(col_space.contains(rhs), solvable);
        if let Some(x) = m.solve(rhs) {
            prop_assert_eq!(m.mul_vec(&x), rhs.to_vec());
        }
    }

    #[test]
    fn span_dimension_identity(
        a in proptest::collection::vec(proptest::collection::vec(scalar_strategy(), 5), 1..4),
        b in proptest::collection::vec(proptest::collection::vec(scalar_strategy(), 5), 1..4),
    ) {
        let sa = Subspace::from_vectors(5, a);
        let sb = Subspace::from_vectors(5, b);
        let inter = sa.intersect(&sb).unwrap();
        let sum = sa.sum(&sb).unwrap();
        prop_assert_eq!(inter.dim() + sum.dim(), sa.dim() + sb.dim());
        for row in inter.rows() {
            prop_assert!(sa.contains(row) && sb.contains(row));
        }
    }
}

fn element_strategy(
    alg: std::sync::Arc<FreeLie>,
) -> impl Strategy<Value = pseudofree::freelie::LieElement> {
    let total = alg.word_count();
    proptest::collection::vec((0..total, -4i64..=4), 1..5).prop_map(move |picks| {
        let mut v = alg.zero_el();
        for (w, c) in picks {
            let el = alg.scale(&Scalar::from_int(c), &alg.word_el(w as u32));
            v = alg.add(&v, &el).unwrap();
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_bilinear_antisymmetric_jacobi(
        (a, b, c) in {
            let alg = FreeLie::shared(2, 5).unwrap();
            (element_strategy(alg.clone()), element_strategy(alg.clone()), element_strategy(alg))
        }
    ) {
        let alg = FreeLie::shared(2, 5).unwrap();
        let ab = alg.bracket(&a, &b).unwrap();
        let ba = alg.bracket(&b, &a).unwrap();
        prop_assert!(alg.add(&ab, &ba).unwrap().is_zero());
        let t1 = alg.bracket(&a, &alg.bracket(&b, &c).unwrap()).unwrap();
        let t2 = alg.bracket(&b, &alg.bracket(&c, &a).unwrap()).unwrap();
        let t3 = alg.bracket(&c, &alg.bracket(&a, &b).unwrap()).unwrap();
        prop_assert!(alg.add(&alg.add(&t1, &t2).unwrap(), &t3).unwrap().is_zero());
        // bilinearity in the first slot
        let sum = alg.add(&a, &b).unwrap();
        let lhs = alg.bracket(&sum, &c).unwrap();
        let rhs = alg.add(&alg.bracket(&a, &c).unwrap(), &alg.bracket(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gl_action_is_a_group_action(
        entries_a in proptest::collection::vec(-3i64..=3, 4),
        entries_b in proptest::collection::vec(-3i64..=3, 4),
        v in element_strategy(FreeLie::shared(2, 4).unwrap()),
    ) {
        let alg = FreeLie::shared(2, 4).unwrap();
        let mk = |e: &[i64]| {
            Matrix::from_fn(2, 2, |i, j| Scalar::from_int(e[2 * i + j]))
        };
        let a = mk(&entries_a);
        let b = mk(&entries_b);
        let ab = a.mul(&b);
        let lhs = alg.gl_action(&ab, &v).unwrap();
        let rhs = alg.gl_action(&a, &alg.gl_action(&b, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_satisfy_leibniz(
        a in element_strategy(FreeLie::shared(2, 5).unwrap()),
        b in element_strategy(FreeLie::shared(2, 5).unwrap()),
        img_word in 0usize..2,
    ) {
        let alg = FreeLie::shared(2, 5).unwrap();
        // derivation sending x -> chosen degree-2 multiple, y -> 0
        let range = alg.degree_words(2);
        let w = range.start + (img_word as u32 % (range.end - range.start));
        let d = pseudofree::freelie::Derivation::new(
            &alg,
            vec![alg.word_el(w), alg.zero_el()],
        ).unwrap();
        let lhs = d.apply(&alg, &alg.bracket(&a, &b).unwrap()).unwrap();
        let rhs = alg.add(
            &alg.bracket(&d.apply(&alg, &a).unwrap(), &b).unwrap(),
            &alg.bracket(&a, &d.apply(&alg, &b).unwrap()).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multidegree_parts_reconstruct(v in element_strategy(FreeLie::shared(3, 4).unwrap())) {
        let alg = FreeLie::shared(3, 4).unwrap();
        let parts = alg.multidegree_split(&v);
        let mut acc = alg.zero_el();
        for (md, p) in &parts {
            for (w, _) in p.terms() {
                prop_assert_eq!(alg.word_multidegree(w), md.as_slice());
            }
            acc = alg.add(&acc, p).unwrap();
        }
        prop_assert_eq!(acc, v);
    }
}

#[test]
fn kernel_dimension_of_zero_and_identity() {
    assert_eq!(Matrix::zero(3, 3).kernel().len(), 3);
    assert!(Matrix::identity(5).kernel().is_empty());
}
