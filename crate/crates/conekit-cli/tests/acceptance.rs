//! Acceptance suite: one test per advertised guarantee, each ending with a
//! `[PASS] criterion N` line.  Everything here is exact — integer and
//! rational arithmetic only, no tolerances — and independent oracles are
//! rebuilt inside this file where a criterion calls for one.

use conekit::{
    adjunction_genus, certify_non_generic, classify_trivial_k_negative_curve,
    deformation_interval, enumerate_exceptional, in_kahler_cone, in_symplectic_cone, noether_b2,
    rat, ratio, ClassVector, ExceptionalQuery, Lattice, Rational,
};
use conekit_cli::format::{builtin, builtin_names, parse_model, serialize_model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ruled() -> conekit::SurfaceModel {
    conekit::ruled_blowup_model()
}

fn class(coeffs: &[i64]) -> ClassVector {
    ClassVector::from_integers(coeffs)
}

#[test]
fn criterion_01_delta_reconstruction() {
    let model = ruled();
    let lattice = model.lattice();
    let targets = [
        (class(&[1, 0, 0]), rat(0)),
        (class(&[0, 1, 0]), rat(4)),
        (class(&[0, 0, 1]), rat(0)),
    ];
    let delta = lattice
        .solve_from_pairings(&targets)
        .expect("the pairing system has a unique solution");
    assert_eq!(delta, class(&[2, 0, -2]), "delta = 2e - 2k exactly");
    assert_eq!(lattice.self_int(&delta).unwrap(), rat(0), "delta^2 = 0");
    let genus = adjunction_genus(lattice, model.canonical_class(), &delta).unwrap();
    assert_eq!(genus, rat(1), "adjunction genus of delta");
    println!("[PASS] criterion 1: delta solves to 2e - 2k with square 0 and genus 1");
}

/// Self-contained brute-force oracle for criterion 2: scan an integer box in
/// the working coordinates and keep the classes with square -1 and
/// k-pairing -1.
fn brute_force(
    gram: &[[i64; 3]; 3],
    k: &[i64; 3],
    columns: &[[i64; 3]],
    bound: i64,
) -> Vec<Vec<i64>> {
    let pair = |a: &[i64; 3], b: &[i64; 3]| -> i64 {
        let mut total = 0;
        for i in 0..3 {
            for j in 0..3 {
                total += a[i] * gram[i][j] * b[j];
            }
        }
        total
    };
    let mut found = Vec::new();
    let width = 2 * bound + 1;
    let dims = columns.len() as u32;
    for code in 0..width.pow(dims) {
        let mut rest = code;
        let mut ambient = [0i64; 3];
        for column in columns {
            let t = rest % width - bound;
            rest /= width;
            for i in 0..3 {
                ambient[i] += t * column[i];
            }
        }
        if pair(&ambient, &ambient) == -1 && pair(&ambient, k) == -1 {
            found.push(ambient.to_vec());
        }
    }
    found.sort();
    found
}

fn as_integer_rows(classes: &[ClassVector]) -> Vec<Vec<i64>> {
    classes
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .map(|x| {
                    assert!(
                        conekit::parse_rational(&conekit::format_rational(x)).is_ok(),
                        "coefficients render round-trip"
                    );
                    conekit::format_rational(x)
                        .parse::<i64>()
                        .expect("exceptional classes have integer coefficients")
                })
                .collect()
        })
        .collect()
}

#[test]
fn criterion_02_exceptional_set_reproduction() {
    let model = ruled();
    let lattice = model.lattice();
    let gram = [[-1, 0, -1], [0, 0, -2], [-1, -2, -1]];
    let k = [0, 0, 1];

    // Sphere-sublattice search, bound 5: exactly {e, f - e}.
    let basis = model.sphere_sublattice().unwrap().to_vec();
    let query = ExceptionalQuery::in_sublattice(model.canonical_class().clone(), basis, 5);
    let constrained = enumerate_exceptional(lattice, &query);
    let expected = vec![class(&[-1, 1, 0]), class(&[1, 0, 0])];
    assert_eq!(constrained, expected, "E(X,k) over the sphere sublattice");
    let oracle = brute_force(&gram, &k, &[[1, 0, 0], [-1, 1, 0]], 5);
    assert_eq!(
        as_integer_rows(&constrained),
        oracle,
        "engine agrees with the brute-force oracle on the sublattice"
    );

    // Unconstrained search, bound 2: a strict superset with spurious classes.
    let query = ExceptionalQuery::ambient(model.canonical_class().clone(), 2);
    let unconstrained = enumerate_exceptional(lattice, &query);
    let oracle = brute_force(&gram, &k, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2);
    assert_eq!(
        as_integer_rows(&unconstrained),
        oracle,
        "engine agrees with the brute-force oracle on the ambient box"
    );
    for member in &expected {
        assert!(
            unconstrained.contains(member),
            "the ambient search keeps the genuine classes"
        );
    }
    assert!(
        unconstrained.len() > expected.len(),
        "the ambient search is a strict superset"
    );
    let alpha_family = unconstrained
        .iter()
        .filter(|c| {
            c.coeff(1) == &rat(0) && (c.coeff(0) + c.coeff(2)) == rat(1)
        })
        .count();
    assert!(
        alpha_family >= 3,
        "at least 3 classes of the form alpha*e + (1 - alpha)*k, found {alpha_family}"
    );
    println!(
        "[PASS] criterion 2: sublattice search gives {{e, f - e}}; ambient bound-2 search \
         returns {} classes including {alpha_family} of the alpha-family",
        unconstrained.len()
    );
}

#[test]
fn criterion_03_ruled_certificate() {
    let model = ruled();
    let lattice = model.lattice();
    let start = class(&[0, 1, -1]);
    let curve = model
        .curves()
        .unwrap()
        .iter()
        .find(|r| r.label == "e - 2k")
        .unwrap();
    let certificate = certify_non_generic(&model, &start, curve).expect("certificate exists");

    let interval = certificate.interval();
    assert_eq!(interval.t_low(), &rat(3), "lower endpoint v/m = 3");
    let high = interval.t_high();
    assert_eq!(
        (high.p(), high.q(), high.d(), high.m()),
        (&rat(3), &rat(1), &rat(12), &rat(1)),
        "upper endpoint 3 + sqrt(12)"
    );

    assert_eq!(certificate.t(), &rat(4), "T = 4");
    let witness = certificate.witness();
    assert_eq!(witness, &class(&[4, 1, -9]), "a_T = 4e + f - 9k");
    assert_eq!(lattice.self_int(witness).unwrap(), rat(11), "a_T^2 = 11");
    assert_eq!(
        lattice.pair(witness, &class(&[1, 0, 0])).unwrap(),
        rat(5),
        "a_T . e1"
    );
    assert_eq!(
        lattice.pair(witness, &class(&[-1, 1, 0])).unwrap(),
        rat(13),
        "a_T . e2"
    );
    assert_eq!(
        lattice.pair(witness, &curve.class).unwrap(),
        rat(-1),
        "a_T . (e - 2k)"
    );
    assert!(in_symplectic_cone(&model, witness).unwrap());
    assert!(!in_kahler_cone(&model, witness).unwrap());
    println!(
        "[PASS] criterion 3: ruled certificate has T = 4, a_T = 4e + f - 9k, \
         square 11, pairings 5/13/-1, symplectic and not Kahler"
    );
}

#[test]
fn criterion_04_burniat_certificate() {
    let model = conekit::burniat_model();
    let lattice = model.lattice();
    let curve = &model.curves().unwrap()[0];
    let certificate =
        certify_non_generic(&model, model.canonical_class(), curve).expect("certificate exists");
    let high = certificate.interval().t_high();
    assert_eq!(certificate.interval().t_low(), &rat(1));
    assert_eq!(
        (high.p(), high.q(), high.d(), high.m()),
        (&rat(1), &rat(1), &rat(7), &rat(1)),
        "upper endpoint 1 + sqrt(7)"
    );
    assert_eq!(certificate.t(), &rat(2), "T = 2");
    let witness = certificate.witness();
    assert_eq!(lattice.self_int(witness).unwrap(), rat(6), "a_T^2 = 6");
    assert_eq!(
        lattice.pair(witness, &curve.class).unwrap(),
        rat(-1),
        "a_T . c = -1"
    );
    println!("[PASS] criterion 4: general-type certificate has T = 2, a_T^2 = 6, a_T . c = -1");
}

#[test]
fn criterion_05_noether_table() {
    for (k_sq, expected) in [(6, 4), (8, 2), (9, 1)] {
        assert_eq!(noether_b2(k_sq, 1), expected, "chi = 1, K^2 = {k_sq}");
    }
    println!("[PASS] criterion 5: noether_b2 maps (6,1)->4, (8,1)->2, (9,1)->1");
}

#[test]
fn criterion_06_trivial_canonical_classification() {
    let mut accepted = Vec::new();
    for c_sq in -6..0 {
        for genus in 0..=3 {
            if classify_trivial_k_negative_curve(c_sq, genus) {
                accepted.push((c_sq, genus));
            }
        }
    }
    assert_eq!(
        accepted,
        vec![(-2, 0)],
        "only the (-2)-sphere survives adjunction with trivial canonical class"
    );
    println!("[PASS] criterion 6: (-2, 0) is the unique admissible pair in the scanned box");
}

#[test]
fn criterion_07_bidisk_genericity() {
    let model = conekit::bidisk_model();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6269_6469_736b);
    let samples = 200;
    for _ in 0..samples {
        let a = ratio(rng.gen_range(1..=90), rng.gen_range(1..=15));
        let b = ratio(rng.gen_range(1..=90), rng.gen_range(1..=15));
        let candidate = ClassVector::new(vec![a, b]);
        let square = model.lattice().self_int(&candidate).unwrap();
        assert!(square > rat(0), "samples have positive square");
        assert!(
            model
                .lattice()
                .same_component(&candidate, model.reference())
                .unwrap(),
            "samples sit in the reference component"
        );
        let symplectic = in_symplectic_cone(&model, &candidate).unwrap();
        let kahler = in_kahler_cone(&model, &candidate).unwrap();
        assert!(
            symplectic && kahler,
            "kahler <=> symplectic failed at {candidate}"
        );
    }
    println!(
        "[PASS] criterion 7: {samples} random positive classes on the product form are \
         Kahler exactly when symplectic (all are)"
    );
}

/// Applies `count` random elementary column operations to the identity,
/// producing a unimodular matrix with small entries.
fn random_unimodular(rng: &mut ChaCha8Rng, rank: usize, count: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..count {
        let i = rng.gen_range(0..rank);
        let mut j = rng.gen_range(0..rank);
        if rank > 1 {
            while j == i {
                j = rng.gen_range(0..rank);
            }
        }
        if rank == 1 {
            continue;
        }
        match rng.gen_range(0..3) {
            0 => {
                // column swap
                for row in u.iter_mut() {
                    row.swap(i, j);
                }
            }
            1 => {
                for row in u.iter_mut() {
                    row[i] += row[j];
                }
            }
            _ => {
                for row in u.iter_mut() {
                    row[i] -= row[j];
                }
            }
        }
    }
    u
}

#[test]
fn criterion_08_signature_and_parity_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x756e_696d_6f64);
    let mut checked = 0usize;
    for name in builtin_names() {
        let model = builtin(&name).unwrap();
        let lattice = model.lattice();
        let rank = lattice.rank();
        let gram: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| i64::try_from(lattice.gram_entry(i, j)).unwrap())
                    .collect()
            })
            .collect();
        let signature = lattice.signature();
        let parity = lattice.parity();
        for _ in 0..100 {
            let u = random_unimodular(&mut rng, rank, 3 * rank);
            // conjugate = U^T G U, computed in i128 to rule out overflow
            let mut conjugated = vec![vec![0i64; rank]; rank];
            for (a, target_row) in conjugated.iter_mut().enumerate() {
                for (b, target) in target_row.iter_mut().enumerate() {
                    let mut total: i128 = 0;
                    for i in 0..rank {
                        for j in 0..rank {
                            total += i128::from(u[i][a]) * i128::from(gram[i][j])
                                * i128::from(u[j][b]);
                        }
                    }
                    *target = i64::try_from(total).expect("conjugated entries stay small");
                }
            }
            let names = (0..rank).map(|i| format!("x{i}")).collect();
            let changed = Lattice::new(names, conjugated).expect("conjugates stay symmetric");
            assert_eq!(changed.signature(), signature, "signature under {name}");
            assert_eq!(changed.parity(), parity, "parity under {name}");
            checked += 1;
        }
    }
    println!(
        "[PASS] criterion 8: signature and parity unchanged under {checked} random \
         unimodular basis changes across {} models",
        builtin_names().len()
    );
}

fn probe_interval(
    model: &conekit::SurfaceModel,
    start: &ClassVector,
    curve: &ClassVector,
    rng: &mut ChaCha8Rng,
) {
    let interval = deformation_interval(model.lattice(), start, curve).unwrap();
    let t_low = interval.t_low().clone();
    let eps = ratio(1, 1_000_000);

    // Just below the lower endpoint: not in the interval, pairing still >= 0.
    let below = &t_low - &eps;
    assert!(!interval.contains(&below));
    assert!(interval.direction_pairing_at(&below) > rat(0));

    // Just above the lower endpoint: inside, with both defining inequalities.
    let above = &t_low + &eps;
    assert!(interval.contains(&above));
    assert!(interval.square_at(&above) > rat(0));
    assert!(interval.direction_pairing_at(&above) < rat(0));

    // Exact rational bracket around the irrational upper endpoint.
    let (inside, outside) = interval.t_high().bracket(&eps);
    assert!(
        interval.t_high().is_greater_than(&inside) && !interval.t_high().is_greater_than(&outside),
        "the bracket straddles the root"
    );
    assert!(interval.contains(&inside));
    assert!(interval.square_at(&inside) > rat(0));
    assert!(interval.direction_pairing_at(&inside) < rat(0));
    assert!(!interval.contains(&outside));
    assert!(
        interval.square_at(&outside) < rat(0),
        "the square turns negative past the upper root"
    );

    // Random rational parameters strictly inside keep both inequalities.
    let span = &inside - &t_low;
    for _ in 0..100 {
        let lambda = ratio(rng.gen_range(1..1000), 1000);
        let t = &t_low + &(&span * &lambda);
        assert!(interval.contains(&t), "t = {t} inside the open interval");
        assert!(interval.square_at(&t) > rat(0));
        assert!(interval.direction_pairing_at(&t) < rat(0));
    }
}

#[test]
fn criterion_09_deformation_interval_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x696e_7465_7276);
    let ruled_model = ruled();
    probe_interval(
        &ruled_model,
        &class(&[0, 1, -1]),
        &class(&[1, 0, -2]),
        &mut rng,
    );
    let burniat = conekit::burniat_model();
    let curve = burniat.curves().unwrap()[0].class.clone();
    probe_interval(&burniat, burniat.canonical_class(), &curve, &mut rng);
    println!(
        "[PASS] criterion 9: both certified intervals behave exactly at rational probes \
         around every endpoint (no floating point)"
    );
}

#[test]
fn criterion_10_round_trips() {
    // Model files: parse . serialize is the identity on every built-in.
    for name in builtin_names() {
        let model = builtin(&name).unwrap();
        let reparsed = parse_model(&serialize_model(&model))
            .unwrap_or_else(|e| panic!("reparsing the {name} model failed: {e}"));
        assert_eq!(reparsed, model, "round trip on {name}");
    }

    // Pairings: solve_from_pairings . pair is the identity on random classes.
    let model = ruled();
    let lattice = model.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(0x726f_756e_6474);
    let samples = 500;
    for _ in 0..samples {
        let coeffs: Vec<Rational> = (0..lattice.rank())
            .map(|_| ratio(rng.gen_range(-30..=30), rng.gen_range(1..=10)))
            .collect();
        let original = ClassVector::new(coeffs);
        let targets: Vec<(ClassVector, Rational)> = (0..lattice.rank())
            .map(|i| {
                let basis = lattice.basis_vector(i);
                let pairing = lattice.pair(&original, &basis).unwrap();
                (basis, pairing)
            })
            .collect();
        let solved = lattice.solve_from_pairings(&targets).unwrap();
        assert_eq!(solved, original, "solve inverted the pairing map");
    }
    println!(
        "[PASS] criterion 10: file format round-trips all {} built-ins; \
         solve/pair round-trips {samples} random classes",
        builtin_names().len()
    );
}
