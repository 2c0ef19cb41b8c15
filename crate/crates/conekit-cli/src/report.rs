//! The built-in verification report.
//!
//! `run_verification_report` replays the bundled worked examples from first
//! principles — solving for classes from their pairings, enumerating
//! exceptional sets, certifying deformations — and checks every value against
//! the recorded expectations.  Each item reports pass/fail together with the
//! exact quantities involved, so a failure names the first place where the
//! computed geometry disagrees with the record.

use conekit::{
    certify_non_generic, decomposable_identity_check, enumerate_exceptional, in_kahler_cone,
    in_symplectic_cone, noether_b2, rat, ratio, ClassVector, ExceptionalQuery, Rational,
};
use conekit::{format_rational, SurfaceModel};
use std::fmt::Write as _;

/// One entry of the report.
#[derive(Debug, Clone)]
pub struct ReportItem {
    /// Short name, used both as the heading and in failure summaries.
    pub label: String,
    /// Whether every check in the item held.
    pub passed: bool,
    /// Detail lines with the exact values that were compared.
    pub lines: Vec<String>,
}

/// The full report.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub items: Vec<ReportItem>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|item| item.passed)
    }

    /// The label of the first failing item, if any.
    pub fn first_failure(&self) -> Option<&str> {
        self.items
            .iter()
            .find(|item| !item.passed)
            .map(|item| item.label.as_str())
    }

    /// Renders the report as text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {}", item.label);
            for line in &item.lines {
                let _ = writeln!(out, "       {line}");
            }
        }
        match self.first_failure() {
            None => {
                let _ = writeln!(out, "all {} checks passed", self.items.len());
            }
            Some(label) => {
                let _ = writeln!(out, "first failure: {label}");
            }
        }
        out
    }
}

struct ItemBuilder {
    label: String,
    passed: bool,
    lines: Vec<String>,
}

impl ItemBuilder {
    fn new(label: &str) -> Self {
        ItemBuilder {
            label: label.to_string(),
            passed: true,
            lines: Vec::new(),
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        let mut line = line.into();
        if !ok {
            self.passed = false;
            line.push_str("  <- FAILED");
        }
        self.lines.push(line);
    }
}

fn item(label: &str, body: impl FnOnce(&mut ItemBuilder) -> conekit::Result<()>) -> ReportItem {
    let mut builder = ItemBuilder::new(label);
    if let Err(e) = body(&mut builder) {
        builder.check(false, format!("error: {e}"));
    }
    ReportItem {
        label: builder.label,
        passed: builder.passed,
        lines: builder.lines,
    }
}

/// Deterministic generator for the sampling items; splitmix64 keeps the
/// report reproducible without pulling a random-number crate into the binary.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi, "empty sample range");
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    fn positive_rational(&mut self) -> Rational {
        ratio(self.in_range(1, 60), self.in_range(1, 12))
    }
}

fn find_curve<'m>(model: &'m SurfaceModel, label: &str) -> &'m conekit::CurveRecord {
    model
        .curves()
        .expect("built-in models declare their curves")
        .iter()
        .find(|record| record.label == label)
        .unwrap_or_else(|| panic!("no declared curve labeled {label:?}"))
}

fn delta_item(ruled: &SurfaceModel) -> ReportItem {
    item("delta reconstruction from pairing data", |b| {
        let lattice = ruled.lattice();
        let targets = [
            (ClassVector::from_integers(&[1, 0, 0]), rat(0)),
            (ClassVector::from_integers(&[0, 1, 0]), rat(4)),
            (ClassVector::from_integers(&[0, 0, 1]), rat(0)),
        ];
        let delta = lattice.solve_from_pairings(&targets)?;
        let expected = ClassVector::from_integers(&[2, 0, -2]);
        b.check(
            delta == expected,
            format!("delta = {}", lattice.render_class(&delta)),
        );
        let square = lattice.self_int(&delta)?;
        b.check(square == rat(0), format!("delta^2 = {}", format_rational(&square)));
        let genus = conekit::adjunction_genus(lattice, ruled.canonical_class(), &delta)?;
        b.check(genus == rat(1), format!("genus(delta) = {}", format_rational(&genus)));
        Ok(())
    })
}

fn half_class_item() -> ReportItem {
    item("half-class decomposition of the section class", |b| {
        for m in [-1, -3, -5] {
            let identity = decomposable_identity_check(m);
            b.check(
                identity.holds && !identity.xi_integral,
                format!(
                    "m = {m}: 4*xi + complement {} the section class; xi integral: {}",
                    if identity.holds { "equals" } else { "misses" },
                    identity.xi_integral
                ),
            );
        }
        Ok(())
    })
}

fn sphere_enumeration_item(ruled: &SurfaceModel) -> ReportItem {
    item("exceptional classes over the sphere sublattice", |b| {
        let basis = ruled
            .sphere_sublattice()
            .expect("the ruled model carries a sphere sublattice")
            .to_vec();
        let query = ExceptionalQuery::in_sublattice(ruled.canonical_class().clone(), basis, 5);
        let found = enumerate_exceptional(ruled.lattice(), &query);
        let e1 = ClassVector::from_integers(&[1, 0, 0]);
        let e2 = ClassVector::from_integers(&[-1, 1, 0]);
        let expected = {
            let mut v = vec![e1.clone(), e2.clone()];
            v.sort();
            v
        };
        if found == expected {
            b.note("E(X,k) = {e1, e2}");
            b.note(format!("e1 = {}", ruled.lattice().render_class(&e1)));
            b.note(format!("e2 = {}", ruled.lattice().render_class(&e2)));
        } else {
            let rendered: Vec<String> = found
                .iter()
                .map(|c| ruled.lattice().render_class(c))
                .collect();
            b.check(false, format!("E(X,k) = {{{}}}", rendered.join(", ")));
        }
        Ok(())
    })
}

fn parity_item(ruled: &SurfaceModel, bidisk: &SurfaceModel) -> ReportItem {
    item("form parities", |b| {
        let ruled_parity = ruled.lattice().parity();
        b.check(
            ruled_parity == conekit::Parity::Odd,
            format!("ruled form parity: {ruled_parity}"),
        );
        let bidisk_parity = bidisk.lattice().parity();
        b.check(
            bidisk_parity == conekit::Parity::Even,
            format!("product form parity: {bidisk_parity}"),
        );
        Ok(())
    })
}

fn ruled_certificate_item(ruled: &SurfaceModel) -> ReportItem {
    item("ruled non-generic certificate", |b| {
        let lattice = ruled.lattice();
        let start = ClassVector::from_integers(&[0, 1, -1]);
        let curve = find_curve(ruled, "e - 2k");
        let certificate = certify_non_generic(ruled, &start, curve)?;
        b.note(format!("deformation interval: {}", certificate.interval()));
        b.check(
            certificate.t() == &rat(4),
            format!("T = {}", format_rational(certificate.t())),
        );
        let witness = certificate.witness();
        b.check(
            witness == &ClassVector::from_integers(&[4, 1, -9]),
            format!("a_T = {}", lattice.render_class(witness)),
        );
        let square = lattice.self_int(witness)?;
        b.check(square == rat(11), format!("a_T^2 = {}", format_rational(&square)));
        for (name, class, expected) in [
            ("e1", ClassVector::from_integers(&[1, 0, 0]), rat(5)),
            ("e2", ClassVector::from_integers(&[-1, 1, 0]), rat(13)),
            ("e - 2k", curve.class.clone(), rat(-1)),
        ] {
            let pairing = lattice.pair(witness, &class)?;
            b.check(
                pairing == expected,
                format!("a_T . {name} = {}", format_rational(&pairing)),
            );
        }
        let symplectic = in_symplectic_cone(ruled, witness)?;
        let kahler = in_kahler_cone(ruled, witness)?;
        b.check(symplectic, format!("symplectic: {symplectic}"));
        b.check(!kahler, format!("kahler: {kahler}"));
        certificate.verify(ruled)?;
        b.note("certificate re-verified from scratch");
        Ok(())
    })
}

fn general_type_certificate_item() -> ReportItem {
    item("general-type non-generic certificate", |b| {
        let model = conekit::burniat_model();
        let lattice = model.lattice();
        let curve = find_curve(&model, "c");
        let certificate = certify_non_generic(&model, model.canonical_class(), curve)?;
        b.note(format!("deformation interval: {}", certificate.interval()));
        b.check(
            certificate.t() == &rat(2),
            format!("T = {}", format_rational(certificate.t())),
        );
        let witness = certificate.witness();
        let square = lattice.self_int(witness)?;
        b.check(square == rat(6), format!("a_T^2 = {}", format_rational(&square)));
        let against_curve = lattice.pair(witness, &curve.class)?;
        b.check(
            against_curve == rat(-1),
            format!("a_T . c = {}", format_rational(&against_curve)),
        );
        let against_k = lattice.pair(witness, model.canonical_class())?;
        b.check(
            against_k == rat(8),
            format!("a_T . K = {}", format_rational(&against_k)),
        );
        certificate.verify(&model)?;
        b.note("certificate re-verified from scratch");
        Ok(())
    })
}

fn noether_item() -> ReportItem {
    item("second Betti numbers from the Noether relation", |b| {
        let table = [(6, 4), (8, 2), (9, 1)];
        let ok = table.iter().all(|&(k_sq, b2)| noether_b2(k_sq, 1) == b2);
        b.check(ok, "b2 = 10 - K^2: 6 -> 4, 8 -> 2, 9 -> 1");
        for (k_sq, expected) in table {
            let computed = noether_b2(k_sq, 1);
            b.check(
                computed == expected,
                format!("K^2 = {k_sq}: b2 = {computed}"),
            );
        }
        Ok(())
    })
}

fn genericity_item(bidisk: &SurfaceModel) -> ReportItem {
    item("product-form genericity sample", |b| {
        let mut rng = SplitMix64(0x636f_6e65_6b69_7421);
        let mut agreements = 0usize;
        let samples = 50;
        for _ in 0..samples {
            let class = ClassVector::new(vec![rng.positive_rational(), rng.positive_rational()]);
            let symplectic = in_symplectic_cone(bidisk, &class)?;
            let kahler = in_kahler_cone(bidisk, &class)?;
            if symplectic && kahler {
                agreements += 1;
            } else {
                b.check(
                    false,
                    format!(
                        "sample {class}: symplectic {symplectic}, kahler {kahler}"
                    ),
                );
            }
        }
        b.check(
            agreements == samples,
            format!("{agreements}/{samples} sampled classes are both symplectic and kahler"),
        );
        Ok(())
    })
}

fn rational_enumeration_item() -> ReportItem {
    item("exceptional counts on small rational models", |b| {
        for (n, expected) in [(1u32, 1usize), (2, 3), (3, 6)] {
            let model = conekit::rational_blowup_model(n)?;
            let query =
                ExceptionalQuery::ambient(model.canonical_class().clone(), 3 * (n + 1));
            let found = enumerate_exceptional(model.lattice(), &query);
            b.check(
                found.len() == expected,
                format!("n = {n}: {} exceptional classes", found.len()),
            );
            b.check(
                found.as_slice() == model.exceptional_set(),
                format!("n = {n}: enumeration matches the model's declared set"),
            );
            let mut e1 = vec![0i64; (n + 1) as usize];
            e1[1] = 1;
            b.check(
                found.contains(&ClassVector::from_integers(&e1)),
                format!("n = {n}: contains e1"),
            );
            if n >= 2 {
                let mut line = vec![0i64; (n + 1) as usize];
                line[0] = 1;
                line[1] = -1;
                line[2] = -1;
                b.check(
                    found.contains(&ClassVector::from_integers(&line)),
                    format!("n = {n}: contains h - e1 - e2"),
                );
            }
        }
        Ok(())
    })
}

/// Runs every report item in order.
pub fn run_verification_report() -> VerificationReport {
    let ruled = conekit::ruled_blowup_model();
    let bidisk = conekit::bidisk_model();
    let items = vec![
        delta_item(&ruled),
        half_class_item(),
        sphere_enumeration_item(&ruled),
        parity_item(&ruled, &bidisk),
        ruled_certificate_item(&ruled),
        general_type_certificate_item(),
        noether_item(),
        genericity_item(&bidisk),
        rational_enumeration_item(),
    ];
    VerificationReport { items }
}
