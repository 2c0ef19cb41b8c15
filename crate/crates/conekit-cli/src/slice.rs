//! Two-parameter cone slices.
//!
//! Given two independent classes `u`, `v` and a rectangle of parameters, the
//! slice walks the grid `a(s, t) = s·u + t·v` and classifies each point
//! against the cone structure of the model.  Every grid value is an exact
//! rational, so the verdicts are decisions, not estimates: a point on a wall
//! is reported as such rather than landing on either side by rounding luck.

use conekit::rat;
use conekit::{format_rational, ClassVector, Rational, SurfaceModel};
use std::fmt;

/// Classification of a single grid point.
///
/// Variants are ordered by how early the corresponding test fires; the first
/// failed test names the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Zero or non-positive square: not in the positive cone at all.
    OutsideP,
    /// Positive square but on the other component of the positive cone.
    WrongComponent,
    /// Exactly on a defining wall: square zero, or a pairing with a declared
    /// exceptional class or curve vanishes.
    OnWall,
    /// Pairs negatively with a declared exceptional class.
    NotSymplectic,
    /// Symplectic, but obstructed by a declared curve.
    SymplecticNotKahler,
    /// Inside both cones.
    Kahler,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Verdict::OutsideP => "OUTSIDE_P",
            Verdict::WrongComponent => "WRONG_COMPONENT",
            Verdict::OnWall => "ON_WALL",
            Verdict::NotSymplectic => "NOT_SYMPLECTIC",
            Verdict::SymplecticNotKahler => "SYMPLECTIC_NOT_KAHLER",
            Verdict::Kahler => "KAHLER",
        };
        f.write_str(text)
    }
}

/// One classified grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceRow {
    pub s: Rational,
    pub t: Rational,
    pub class: ClassVector,
    pub square: Rational,
    pub verdict: Verdict,
}

/// Errors from slice construction.
#[derive(Debug, thiserror::Error)]
pub enum SliceError {
    /// The request itself is malformed (bad step count, empty range, …).
    #[error("{0}")]
    Usage(String),
    /// The model cannot answer the question (e.g. curves undeclared).
    #[error(transparent)]
    Model(#[from] conekit::Error),
}

fn usage(message: impl Into<String>) -> SliceError {
    SliceError::Usage(message.into())
}

/// Classifies `class` against the model's cones.
pub fn classify(model: &SurfaceModel, class: &ClassVector) -> conekit::Result<Verdict> {
    let lattice = model.lattice();
    let curves = model.curves().ok_or(conekit::Error::CurvesUnavailable)?;

    if class.is_zero() {
        return Ok(Verdict::OutsideP);
    }
    let square = lattice.self_int(class)?;
    let zero = rat(0);
    if square < zero {
        return Ok(Verdict::OutsideP);
    }
    if square == zero {
        return Ok(Verdict::OnWall);
    }

    let mut pairings = Vec::new();
    for e in model.exceptional_set() {
        pairings.push(lattice.pair(class, e)?);
    }
    let curve_start = pairings.len();
    for record in curves {
        pairings.push(lattice.pair(class, &record.class)?);
    }
    if pairings.contains(&zero) {
        return Ok(Verdict::OnWall);
    }
    if !lattice.same_component(class, model.reference())? {
        return Ok(Verdict::WrongComponent);
    }
    if pairings[..curve_start].iter().any(|p| *p < zero) {
        return Ok(Verdict::NotSymplectic);
    }
    if pairings[curve_start..].iter().any(|p| *p < zero) {
        return Ok(Verdict::SymplecticNotKahler);
    }
    Ok(Verdict::Kahler)
}

fn independent(u: &ClassVector, v: &ClassVector) -> bool {
    if u.is_zero() || v.is_zero() {
        return false;
    }
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            if u.coeff(i) * v.coeff(j) != u.coeff(j) * v.coeff(i) {
                return true;
            }
        }
    }
    false
}

/// Walks the grid `a(s, t) = s·u + t·v` and classifies every point.
///
/// Parameters run over `steps` evenly spaced rationals from the low to the
/// high end of each range, endpoints included; rows are emitted with `s`
/// as the outer (slower) coordinate.
pub fn slice_grid(
    model: &SurfaceModel,
    u: &ClassVector,
    v: &ClassVector,
    s_range: (Rational, Rational),
    t_range: (Rational, Rational),
    steps: u32,
) -> Result<Vec<SliceRow>, SliceError> {
    if steps < 2 {
        return Err(usage(format!(
            "a slice needs at least 2 steps per axis, got {steps}"
        )));
    }
    if s_range.0 >= s_range.1 {
        return Err(usage(format!(
            "the s-range must satisfy lo < hi, got {}:{}",
            format_rational(&s_range.0),
            format_rational(&s_range.1)
        )));
    }
    if t_range.0 >= t_range.1 {
        return Err(usage(format!(
            "the t-range must satisfy lo < hi, got {}:{}",
            format_rational(&t_range.0),
            format_rational(&t_range.1)
        )));
    }
    let rank = model.lattice().rank();
    if u.len() != rank || v.len() != rank {
        return Err(SliceError::Model(conekit::Error::DimensionMismatch {
            expected: rank,
            found: if u.len() != rank { u.len() } else { v.len() },
        }));
    }
    if !independent(u, v) {
        return Err(usage(
            "the slice directions u and v must be linearly independent".to_string(),
        ));
    }

    let grid = |range: &(Rational, Rational)| -> Vec<Rational> {
        let span = &range.1 - &range.0;
        let denom = rat(i64::from(steps) - 1);
        (0..steps)
            .map(|i| &range.0 + &span * rat(i64::from(i)) / &denom)
            .collect()
    };
    let s_values = grid(&s_range);
    let t_values = grid(&t_range);

    let mut rows = Vec::with_capacity(s_values.len() * t_values.len());
    for s in &s_values {
        for t in &t_values {
            let class = &u.scaled(s) + &v.scaled(t);
            let square = model.lattice().self_int(&class)?;
            let verdict = classify(model, &class)?;
            rows.push(SliceRow {
                s: s.clone(),
                t: t.clone(),
                class,
                square,
                verdict,
            });
        }
    }
    Ok(rows)
}

/// Renders slice rows as CSV.
///
/// The output is byte-stable: header `s,t,square,verdict`, one row per grid
/// point in emission order, LF line endings, no trailing whitespace, exact
/// rational fields.
pub fn slice_csv(rows: &[SliceRow]) -> String {
    let mut out = String::from("s,t,square,verdict\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_rational(&row.s),
            format_rational(&row.t),
            format_rational(&row.square),
            row.verdict
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use conekit::{in_kahler_cone, in_symplectic_cone, ratio, ruled_blowup_model};

    fn ruled_slice() -> Vec<SliceRow> {
        let model = ruled_blowup_model();
        let u = ClassVector::from_integers(&[0, 1, -1]); // f - k
        let v = ClassVector::from_integers(&[1, 0, -2]); // e - 2k
        slice_grid(&model, &u, &v, (rat(0), rat(2)), (rat(0), rat(6)), 7)
            .expect("the reference slice builds")
    }

    fn verdict_at(rows: &[SliceRow], s: i64, t: i64) -> Verdict {
        rows.iter()
            .find(|row| row.s == rat(s) && row.t == rat(t))
            .unwrap_or_else(|| panic!("no row at ({s}, {t})"))
            .verdict
    }

    #[test]
    fn the_reference_grid_hits_the_expected_verdicts() {
        let rows = ruled_slice();
        assert_eq!(rows.len(), 49, "7x7 grid");
        assert_eq!(verdict_at(&rows, 0, 0), Verdict::OutsideP, "origin");
        assert_eq!(verdict_at(&rows, 1, 0), Verdict::Kahler, "f - k itself");
        assert_eq!(
            verdict_at(&rows, 1, 4),
            Verdict::SymplecticNotKahler,
            "the certified deformation endpoint region"
        );
    }

    #[test]
    fn rows_walk_s_in_the_outer_loop() {
        let rows = ruled_slice();
        assert_eq!(rows[0].s, rat(0));
        assert_eq!(rows[0].t, rat(0));
        assert_eq!(rows[1].s, rat(0), "t varies first");
        assert_eq!(rows[1].t, rat(1));
        assert_eq!(rows[7].s, ratio(1, 3), "second block starts the next s");
        assert_eq!(rows[7].t, rat(0));
    }

    #[test]
    fn csv_output_is_byte_stable() {
        let rows = ruled_slice();
        let a = slice_csv(&rows);
        let b = slice_csv(&ruled_slice());
        assert_eq!(a, b, "two renders agree byte for byte");
        assert!(a.starts_with("s,t,square,verdict\n"));
        assert!(a.ends_with('\n'));
        assert!(
            a.lines().all(|line| line.trim_end() == line),
            "no trailing whitespace on any line"
        );
        assert!(a.contains("\n1,4,11,SYMPLECTIC_NOT_KAHLER\n"), "{a}");
        assert!(a.contains("\n1,0,3,KAHLER\n"), "{a}");
        assert!(a.contains("\n0,0,0,OUTSIDE_P\n"), "{a}");
    }

    #[test]
    fn fractional_grid_values_render_exactly() {
        let rows = ruled_slice();
        let csv = slice_csv(&rows);
        assert!(
            csv.contains("\n1/3,"),
            "intermediate s values are exact rationals: {csv}"
        );
    }

    #[test]
    fn wall_points_are_reported_as_walls() {
        let model = ruled_blowup_model();
        // -e + 2f - k has positive square but pairs to zero with f - e.
        let on_wall = ClassVector::from_integers(&[-1, 2, -1]);
        assert_eq!(classify(&model, &on_wall).unwrap(), Verdict::OnWall);
        // Square-zero classes land on the boundary of P.
        let f = ClassVector::from_integers(&[0, 1, 0]);
        assert_eq!(classify(&model, &f).unwrap(), Verdict::OnWall);
    }

    #[test]
    fn wrong_component_classes_are_flagged() {
        let model = ruled_blowup_model();
        let minus_ref = ClassVector::from_integers(&[0, -1, 1]);
        assert_eq!(
            classify(&model, &minus_ref).unwrap(),
            Verdict::WrongComponent
        );
    }

    #[test]
    fn exceptional_obstructions_differ_from_curve_obstructions() {
        let model = ruled_blowup_model();
        // 3e + 2f - k: square 4, reference side, but pairs to -2 with e.
        let class = ClassVector::from_integers(&[3, 2, -1]);
        let square = model.lattice().self_int(&class).unwrap();
        assert_eq!(square, rat(4), "square is {square}");
        assert_eq!(classify(&model, &class).unwrap(), Verdict::NotSymplectic);

        // Further along the certified ray the obstruction is a curve instead.
        let class = ClassVector::from_integers(&[5, 1, -11]);
        assert_eq!(
            classify(&model, &class).unwrap(),
            Verdict::SymplecticNotKahler
        );
    }

    #[test]
    fn degenerate_requests_are_usage_errors() {
        let model = ruled_blowup_model();
        let u = ClassVector::from_integers(&[0, 1, -1]);
        let v = ClassVector::from_integers(&[1, 0, -2]);
        let same = (rat(0), rat(0));
        let ok = (rat(0), rat(1));
        assert!(matches!(
            slice_grid(&model, &u, &v, same.clone(), ok.clone(), 7),
            Err(SliceError::Usage(_))
        ));
        assert!(matches!(
            slice_grid(&model, &u, &v, ok.clone(), same, 7),
            Err(SliceError::Usage(_))
        ));
        assert!(matches!(
            slice_grid(&model, &u, &v, ok.clone(), ok.clone(), 1),
            Err(SliceError::Usage(_))
        ));
        let parallel = u.scaled(&rat(3));
        assert!(matches!(
            slice_grid(&model, &u, &parallel, ok.clone(), ok, 7),
            Err(SliceError::Usage(_))
        ));
    }

    #[test]
    fn slices_need_declared_curves() {
        let base = ruled_blowup_model();
        let model = conekit::SurfaceModel::new(
            base.lattice().clone(),
            base.canonical_class().clone(),
            base.reference().clone(),
            base.exceptional_set().to_vec(),
            None,
            None,
            conekit::ModelTags::named("bare"),
        )
        .unwrap();
        let u = ClassVector::from_integers(&[0, 1, -1]);
        let v = ClassVector::from_integers(&[1, 0, -2]);
        let err = slice_grid(&model, &u, &v, (rat(0), rat(1)), (rat(0), rat(1)), 3)
            .expect_err("no curves declared");
        assert!(matches!(
            err,
            SliceError::Model(conekit::Error::CurvesUnavailable)
        ));
    }

    #[test]
    fn verdicts_agree_with_the_cone_predicates() {
        let model = ruled_blowup_model();
        let rows = ruled_slice();
        for row in &rows {
            let symplectic = if row.class.is_zero() {
                false
            } else {
                in_symplectic_cone(&model, &row.class).unwrap()
            };
            let kahler = if row.class.is_zero() {
                false
            } else {
                in_kahler_cone(&model, &row.class).unwrap()
            };
            match row.verdict {
                Verdict::Kahler => assert!(symplectic && kahler, "at ({}, {})", row.s, row.t),
                Verdict::SymplecticNotKahler => {
                    assert!(symplectic && !kahler, "at ({}, {})", row.s, row.t);
                    let witness = conekit::kahler_obstruction(&model, &row.class)
                        .unwrap()
                        .expect("a blocked class names an obstructing curve");
                    let pairing = model.lattice().pair(&row.class, &witness.class).unwrap();
                    assert!(pairing < rat(0), "witness curve pairs strictly negatively");
                }
                _ => assert!(!kahler, "at ({}, {})", row.s, row.t),
            }
        }
    }
}
