//! Property tests for the algebraic invariants the library promises.

use conekit::{
    enumerate_exceptional, enumerate_exceptional_seq, in_kahler_cone, in_symplectic_cone,
    rational_blowup_model, ruled_blowup_model, ClassVector, ExceptionalQuery, Lattice,
    QuadraticRoot, Rational,
};
use proptest::prelude::*;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("b{i}")).collect()
}

/// Strategy: a random symmetric integer Gram matrix of rank 2..=4.
fn symmetric_gram() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4)
        .prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n)
        })
        .prop_map(|mut rows| {
            for i in 1..rows.len() {
                let (mirrored, rest) = rows.split_at_mut(i);
                for (j, upper_row) in mirrored.iter().enumerate() {
                    rest[0][j] = upper_row[i];
                }
            }
            rows
        })
}

/// Applies `count` shear operations (add `c` times one column to another)
/// drawn from `ops` to the identity, producing a unimodular matrix.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(from, to, c) in ops {
        let (from, to) = (from % n, to % n);
        if from == to {
            continue;
        }
        for row in u.iter_mut() {
            row[to] += c * row[from];
        }
    }
    u
}

/// `U^T G U` in plain integer arithmetic.
fn conjugate(gram: &[Vec<i64>], u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc: i128 = 0;
            for a in 0..n {
                for b in 0..n {
                    acc += i128::from(u[a][i]) * i128::from(gram[a][b]) * i128::from(u[b][j]);
                }
            }
            out[i][j] = i64::try_from(acc).expect("conjugated entries stay small");
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, .. ProptestConfig::default() })]

    #[test]
    fn pairing_is_bilinear_and_symmetric(
        gram in symmetric_gram(),
        seed_a in proptest::collection::vec(-7i64..=7, 4),
        seed_b in proptest::collection::vec(-7i64..=7, 4),
        seed_c in proptest::collection::vec(-7i64..=7, 4),
        lambda_num in -5i64..=5,
        lambda_den in 1i64..=4,
    ) {
        let n = gram.len();
        let lattice = Lattice::new(names(n), gram).unwrap();
        let a = ClassVector::from_integers(&seed_a[..n]);
        let b = ClassVector::from_integers(&seed_b[..n]);
        let c = ClassVector::from_integers(&seed_c[..n]);
        let lambda = ratio(lambda_num, lambda_den);
        prop_assert_eq!(
            lattice.pair(&a, &b).unwrap(),
            lattice.pair(&b, &a).unwrap()
        );
        let shifted = &a + &b.scaled(&lambda);
        prop_assert_eq!(
            lattice.pair(&shifted, &c).unwrap(),
            lattice.pair(&a, &c).unwrap() + lambda * lattice.pair(&b, &c).unwrap()
        );
    }

    #[test]
    fn signature_and_parity_survive_basis_changes(
        gram in symmetric_gram(),
        ops in proptest::collection::vec((0usize..8, 0usize..8, -2i64..=2), 2..8),
    ) {
        let n = gram.len();
        let u = unimodular(n, &ops);
        let conjugated = conjugate(&gram, &u);
        let original = Lattice::new(names(n), gram).unwrap();
        let changed = Lattice::new(names(n), conjugated).unwrap();
        prop_assert_eq!(original.signature(), changed.signature());
        prop_assert_eq!(original.parity(), changed.parity());
    }

    #[test]
    fn same_component_is_an_equivalence_on_positive_classes(
        signs in proptest::collection::vec(proptest::bool::ANY, 3),
        scales in proptest::collection::vec(7i64..=20, 3),
        perturbations in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 3),
    ) {
        let model = ruled_blowup_model();
        let lattice = model.lattice();
        // Positive-square classes by construction: a dominant multiple of
        // the reference class (square 3) in either component, plus a small
        // perturbation that cannot flip the square's sign.
        let classes: Vec<ClassVector> = (0..3)
            .map(|i| {
                let s = if signs[i] { scales[i] } else { -scales[i] };
                let scaled = model.reference().scaled(&rat(s));
                &scaled + &ClassVector::from_integers(&perturbations[i])
            })
            .collect();
        for cls in &classes {
            prop_assert!(lattice.self_int(cls).unwrap() > rat(0));
        }
        let (a, b, c) = (&classes[0], &classes[1], &classes[2]);
        prop_assert!(lattice.same_component(a, a).unwrap());
        prop_assert_eq!(
            lattice.same_component(a, b).unwrap(),
            lattice.same_component(b, a).unwrap()
        );
        if lattice.same_component(a, b).unwrap() && lattice.same_component(b, c).unwrap() {
            prop_assert!(lattice.same_component(a, c).unwrap());
        }
        // And with two components there are exactly two equivalence classes:
        // a is with b or with -b.
        prop_assert!(
            lattice.same_component(a, b).unwrap()
                || lattice.same_component(a, &-b).unwrap()
        );
    }

    #[test]
    fn solving_from_pairings_round_trips(
        seed in proptest::collection::vec(-9i64..=9, 3),
        denom in 1i64..=3,
    ) {
        let model = ruled_blowup_model();
        let lattice = model.lattice();
        let x = ClassVector::new(
            seed.iter().map(|&c| ratio(c, denom)).collect(),
        );
        let targets: Vec<(ClassVector, Rational)> = (0..3)
            .map(|i| {
                let probe = lattice.basis_vector(i);
                let value = lattice.pair(&x, &probe).unwrap();
                (probe, value)
            })
            .collect();
        prop_assert_eq!(lattice.solve_from_pairings(&targets).unwrap(), x);
    }

    #[test]
    fn symplectic_membership_is_scale_invariant(
        seed in proptest::collection::vec(-6i64..=6, 3),
        scale_num in 1i64..=9,
        scale_den in 1i64..=9,
    ) {
        let model = ruled_blowup_model();
        let a = ClassVector::from_integers(&seed);
        let lambda = ratio(scale_num, scale_den);
        let scaled = a.scaled(&lambda);
        prop_assert_eq!(
            in_symplectic_cone(&model, &a).unwrap(),
            in_symplectic_cone(&model, &scaled).unwrap()
        );
    }

    #[test]
    fn kahler_cone_sits_inside_symplectic_cone(
        seed in proptest::collection::vec(-6i64..=6, 3),
    ) {
        let ruled = ruled_blowup_model();
        let a = ClassVector::from_integers(&seed);
        if in_kahler_cone(&ruled, &a).unwrap() {
            prop_assert!(in_symplectic_cone(&ruled, &a).unwrap());
        }
        let plane = rational_blowup_model(2).unwrap();
        let b = ClassVector::from_integers(&seed);
        if in_kahler_cone(&plane, &b).unwrap() {
            prop_assert!(in_symplectic_cone(&plane, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, .. ProptestConfig::default() })]

    #[test]
    fn diagonal_searches_match_a_local_odometer(
        d_plus in 1i64..=4,
        d_minus in proptest::collection::vec(1i64..=4, 1..=2),
        k_seed in proptest::collection::vec(-3i64..=3, 3),
        bound in 1u32..=3,
    ) {
        let n = 1 + d_minus.len();
        let mut gram = vec![vec![0i64; n]; n];
        gram[0][0] = d_plus;
        for (i, &d) in d_minus.iter().enumerate() {
            gram[i + 1][i + 1] = -d;
        }
        let k_coeffs = &k_seed[..n];
        prop_assume!(k_coeffs.iter().any(|&c| c != 0));
        let lattice = Lattice::new(names(n), gram.clone()).unwrap();
        let k = ClassVector::from_integers(k_coeffs);
        let query = ExceptionalQuery::ambient(k.clone(), bound);
        let found = enumerate_exceptional(&lattice, &query);
        prop_assert_eq!(&found, &enumerate_exceptional_seq(&lattice, &query));
        // Dumb odometer over the box.
        let b = i64::from(bound);
        let mut expected = Vec::new();
        let mut t = vec![-b; n];
        'grid: loop {
            let quad: i64 = (0..n).map(|i| gram[i][i] * t[i] * t[i]).sum();
            let lin: i64 = (0..n).map(|i| gram[i][i] * t[i] * k_coeffs[i]).sum();
            if quad == -1 && lin == -1 {
                expected.push(ClassVector::from_integers(&t));
            }
            let mut i = 0;
            loop {
                if i == n { break 'grid; }
                t[i] += 1;
                if t[i] <= b { break; }
                t[i] = -b;
                i += 1;
            }
        }
        expected.sort();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn quadratic_root_comparisons_agree_with_brackets(
        p in -9i64..=9,
        q in -9i64..=9,
        d in 0i64..=30,
        m in 1i64..=6,
        flip in proptest::bool::ANY,
        r_num in -200i64..=200,
        r_den in 1i64..=20,
    ) {
        let m = if flip { -m } else { m };
        let root = QuadraticRoot::new(rat(p), rat(q), rat(d), rat(m)).unwrap();
        let width = ratio(1, 1_000_000);
        let (lo, hi) = root.bracket(&width);
        prop_assert!(&hi - &lo <= width);
        // The bracket really contains the value.
        prop_assert!(root.cmp_rational(&lo) != std::cmp::Ordering::Less);
        prop_assert!(root.cmp_rational(&hi) != std::cmp::Ordering::Greater);
        if root.to_rational().is_none() {
            prop_assert!(root.is_greater_than(&lo));
            prop_assert!(root.is_less_than(&hi));
        }
        // Comparisons against an unrelated rational agree with the bracket
        // whenever the rational clears it.
        let r = ratio(r_num, r_den);
        if r < lo {
            prop_assert!(root.is_greater_than(&r));
        } else if r > hi {
            prop_assert!(root.is_less_than(&r));
        }
        // Trichotomy.
        let cmp = root.cmp_rational(&r);
        prop_assert_eq!(cmp == std::cmp::Ordering::Greater, root.is_greater_than(&r));
        prop_assert_eq!(cmp == std::cmp::Ordering::Less, root.is_less_than(&r));
    }
}
