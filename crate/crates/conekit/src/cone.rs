//! Cone membership tests, adjunction bookkeeping, and certificates for
//! classes that are symplectic but not Kahler.
//!
//! The positive cone of a signature-`(1, n, 0)` lattice has two connected
//! components; all cones here live in the component of the model's
//! reference class. Membership is decided by finitely many exact pairing
//! signs:
//!
//! * **symplectic cone** — positive square, reference component, and
//!   strictly positive pairing with every declared exceptional class;
//! * **Kahler cone** — positive square, reference component, and strictly
//!   positive pairing with every declared negative curve (available only on
//!   models that declare their curve list).
//!
//! The gap between the two is witnessed constructively: deforming a Kahler
//! class `w` along a negative curve `C` as `a(t) = w + tC` keeps the square
//! positive on an explicit interval while the pairing with `C` goes
//! negative. [`certify_non_generic`] picks an exact rational parameter in
//! that interval, re-checks every cone condition at it, and packages the
//! result as a [`NonKahlerCertificate`] that can be re-verified from
//! scratch.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{ClassVector, Lattice};
use crate::model::SurfaceModel;
use crate::quad::QuadraticRoot;
use crate::ratio::{format_rational, rat, ratio, Rational};

/// A declared irreducible curve: its class, its genus, and a display label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRecord {
    /// The curve's class in ambient coordinates.
    pub class: ClassVector,
    /// Arithmetic genus; must agree with the adjunction value for the
    /// model's canonical class.
    pub genus: u32,
    /// Short name used in reports and error messages.
    pub label: String,
}

/// Genus of a class by adjunction: `(C^2 + K.C)/2 + 1`.
///
/// The value is rational in general; callers that require an integer (model
/// validation does) must check.
pub fn adjunction_genus(lat: &Lattice, k: &ClassVector, c: &ClassVector) -> Result<Rational> {
    let c_sq = lat.self_int(c)?;
    let kc = lat.pair(k, c)?;
    Ok((c_sq + kc) / rat(2) + Rational::from_integer(1.into()))
}

/// Whether a negative-square class of the given genus can be an irreducible
/// curve when the canonical class pairs to zero with everything.
///
/// With `K.C = 0` adjunction forces `C^2 = 2g - 2`, so a negative square
/// with a nonnegative genus leaves exactly `C^2 = -2`, `g = 0`.
pub fn classify_trivial_k_negative_curve(c_sq: i64, genus: i64) -> bool {
    genus >= 0 && c_sq < 0 && c_sq == 2 * genus - 2
}

/// Second Betti number from the Noether relation
/// `chi = (K^2 + (2 + b_2))/12` for a `b_+ = 1` surface, solved for `b_2`:
/// `b_2 = 12 chi - K^2 - 2`.
pub fn noether_b2(k_sq: i64, chi: i64) -> i64 {
    12 * chi - k_sq - 2
}

/// Whether `a` lies in the model's symplectic cone: positive square, the
/// reference component, and positive pairing with every declared
/// exceptional class.
pub fn in_symplectic_cone(model: &SurfaceModel, a: &ClassVector) -> Result<bool> {
    let lat = model.lattice();
    if !lat.self_int(a)?.is_positive() {
        return Ok(false);
    }
    if !lat.same_component(a, model.reference())? {
        return Ok(false);
    }
    for e in model.exceptional_set() {
        if !lat.pair(a, e)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `a` lies in the model's Kahler cone: positive square, the
/// reference component, and positive pairing with every declared negative
/// curve. Fails with [`Error::CurvesUnavailable`] when the model does not
/// declare its curve list.
pub fn in_kahler_cone(model: &SurfaceModel, a: &ClassVector) -> Result<bool> {
    let curves = model.curves().ok_or(Error::CurvesUnavailable)?;
    let lat = model.lattice();
    if !lat.self_int(a)?.is_positive() {
        return Ok(false);
    }
    if !lat.same_component(a, model.reference())? {
        return Ok(false);
    }
    for curve in curves {
        if !lat.pair(a, &curve.class)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first declared curve whose pairing with `a` is not strictly
/// positive, if any. Fails with [`Error::CurvesUnavailable`] when the model
/// does not declare its curve list.
pub fn kahler_obstruction<'m>(
    model: &'m SurfaceModel,
    a: &ClassVector,
) -> Result<Option<&'m CurveRecord>> {
    let curves = model.curves().ok_or(Error::CurvesUnavailable)?;
    let lat = model.lattice();
    for curve in curves {
        if !lat.pair(a, &curve.class)?.is_positive() {
            return Ok(Some(curve));
        }
    }
    Ok(None)
}

/// The open parameter interval on which `a(t) = w + tC` has positive square
/// *and* negative pairing with `C`.
///
/// Writing `v = w.C > 0`, `m = -C^2 > 0`, the square is
/// `a(t)^2 = w^2 + 2tv - t^2 m`, positive up to `(v + sqrt(v^2 + m w^2))/m`,
/// while `a(t).C = v - tm` is negative past `v/m`. The lower endpoint is
/// always rational; the upper one generally is not and is kept exact as a
/// [`QuadraticRoot`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationInterval {
    v: Rational,
    m: Rational,
    w_sq: Rational,
    t_low: Rational,
    t_high: QuadraticRoot,
}

impl DeformationInterval {
    /// Pairing of the start class with the deformation direction.
    pub fn v(&self) -> &Rational {
        &self.v
    }

    /// Negated square of the deformation direction (positive).
    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// Square of the start class (positive).
    pub fn w_sq(&self) -> &Rational {
        &self.w_sq
    }

    /// Lower endpoint `v/m` (excluded).
    pub fn t_low(&self) -> &Rational {
        &self.t_low
    }

    /// Upper endpoint `(v + sqrt(v^2 + m w^2))/m` (excluded).
    pub fn t_high(&self) -> &QuadraticRoot {
        &self.t_high
    }

    /// Whether `t` lies strictly inside the interval.
    pub fn contains(&self, t: &Rational) -> bool {
        &self.t_low < t && self.t_high.is_greater_than(t)
    }

    /// `a(t)^2 = w^2 + 2tv - t^2 m`, exactly.
    pub fn square_at(&self, t: &Rational) -> Rational {
        &self.w_sq + rat(2) * t * &self.v - t * t * &self.m
    }

    /// `a(t).C = v - tm`, exactly.
    pub fn direction_pairing_at(&self, t: &Rational) -> Rational {
        &self.v - t * &self.m
    }
}

impl fmt::Display for DeformationInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.t_low), self.t_high)
    }
}

/// Builds the deformation interval for start class `w` and direction `c`.
///
/// Errors when `w.c` is not strictly positive ([`Error::CurveDoesNotObstruct`]),
/// when `c^2` is not strictly negative ([`Error::CurveSquareNotNegative`]),
/// or when `w^2` is not strictly positive ([`Error::NotPositiveSquare`]).
pub fn deformation_interval(
    lat: &Lattice,
    w: &ClassVector,
    c: &ClassVector,
) -> Result<DeformationInterval> {
    let v = lat.pair(w, c)?;
    if !v.is_positive() {
        return Err(Error::CurveDoesNotObstruct {
            pairing: format_rational(&v),
        });
    }
    let c_sq = lat.self_int(c)?;
    if !c_sq.is_negative() {
        return Err(Error::CurveSquareNotNegative {
            square: format_rational(&c_sq),
        });
    }
    let w_sq = lat.self_int(w)?;
    if !w_sq.is_positive() {
        return Err(Error::NotPositiveSquare {
            class: lat.render_class(w),
            square: format_rational(&w_sq),
        });
    }
    let m = -c_sq;
    let t_low = &v / &m;
    let radicand = &v * &v + &m * &w_sq;
    let t_high = QuadraticRoot::new(v.clone(), Rational::from_integer(1.into()), radicand, m.clone())?;
    Ok(DeformationInterval {
        v,
        m,
        w_sq,
        t_low,
        t_high,
    })
}

/// One recomputed fact inside a certificate, for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    /// What the check is about (e.g. `"square"`, `"pairing with e"`).
    pub label: String,
    /// The exact values involved, rendered.
    pub detail: String,
    /// Whether the check held.
    pub ok: bool,
}

/// A what-you-can-recompute witness that a model's symplectic cone strictly
/// contains its Kahler cone: an exact parameter `t` such that
/// `a(t) = start + t * curve` meets every symplectic-cone condition while
/// pairing negatively with the declared curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonKahlerCertificate {
    start: ClassVector,
    curve: CurveRecord,
    interval: DeformationInterval,
    t: Rational,
    witness: ClassVector,
    checks: Vec<CheckRecord>,
}

impl NonKahlerCertificate {
    /// The start class `w`.
    pub fn start(&self) -> &ClassVector {
        &self.start
    }

    /// The obstructing curve the deformation follows.
    pub fn curve(&self) -> &CurveRecord {
        &self.curve
    }

    /// The admissible parameter interval.
    pub fn interval(&self) -> &DeformationInterval {
        &self.interval
    }

    /// The chosen parameter.
    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// The witness class `a(t) = start + t * curve`.
    pub fn witness(&self) -> &ClassVector {
        &self.witness
    }

    /// The recorded checks, in display order.
    pub fn checks(&self) -> &[CheckRecord] {
        &self.checks
    }

    /// Re-derives the certificate from its inputs and the model, failing
    /// with [`Error::CertificationFailed`] on the first discrepancy. Nothing
    /// stored in the certificate is trusted beyond `start`, `curve`, and
    /// `t`.
    pub fn verify(&self, model: &SurfaceModel) -> Result<()> {
        let lat = model.lattice();
        let fail = |constraint: &str| Error::CertificationFailed {
            constraint: constraint.to_string(),
        };
        let genus = adjunction_genus(lat, model.canonical_class(), &self.curve.class)?;
        if genus != rat(i64::from(self.curve.genus)) {
            return Err(fail("the curve's declared genus disagrees with adjunction"));
        }
        let interval = deformation_interval(lat, &self.start, &self.curve.class)?;
        if interval != self.interval {
            return Err(fail("the stored interval is not the derived interval"));
        }
        if !interval.contains(&self.t) {
            return Err(fail("the parameter lies outside the admissible interval"));
        }
        let witness = &self.start + &self.curve.class.scaled(&self.t);
        if witness != self.witness {
            return Err(fail("the stored witness is not start + t * curve"));
        }
        let square = lat.self_int(&witness)?;
        if !square.is_positive() {
            return Err(fail("the witness square is not positive"));
        }
        if square != interval.square_at(&self.t) {
            return Err(fail("the witness square disagrees with the interval formula"));
        }
        if !lat.same_component(&witness, model.reference())? {
            return Err(fail("the witness left the reference component"));
        }
        for e in model.exceptional_set() {
            if !lat.pair(&witness, e)?.is_positive() {
                return Err(fail("the witness does not pair positively with every exceptional class"));
            }
        }
        let against_curve = lat.pair(&witness, &self.curve.class)?;
        if !against_curve.is_negative() {
            return Err(fail("the witness does not pair negatively with the curve"));
        }
        if against_curve != interval.direction_pairing_at(&self.t) {
            return Err(fail("the curve pairing disagrees with the interval formula"));
        }
        Ok(())
    }
}

/// Deforms `start` along `curve` to an exact parameter where the class is
/// symplectic but pairs negatively with the curve, preferring the smallest
/// parameter of the form `(v + j)/m` with integer `j >= 1`; when no such
/// parameter is admissible the scan falls back to `t_low + 2^-i`. Fails
/// with [`Error::CertificationFailed`] naming the blocking constraint when
/// every probe is rejected.
pub fn certify_non_generic(
    model: &SurfaceModel,
    start: &ClassVector,
    curve: &CurveRecord,
) -> Result<NonKahlerCertificate> {
    let lat = model.lattice();
    let interval = deformation_interval(lat, start, &curve.class)?;
    let mut last_block = None;
    // Integer-numerator sweep: t = (v + j)/m, j = 1, 2, ... stays inside the
    // interval for j up to sqrt(v^2 + m w^2), so this loop terminates.
    let mut j = rat(1);
    loop {
        let t = (interval.v() + &j) / interval.m();
        if !interval.t_high().is_greater_than(&t) {
            break;
        }
        match probe(model, start, curve, &interval, &t) {
            Ok(cert) => return Ok(cert),
            Err(block) => last_block = Some(block),
        }
        j += rat(1);
    }
    // Fallback: approach the lower endpoint, where the square is close to
    // its value at t_low and only the pairing constraints can still block.
    for i in 1..=64u32 {
        let t = interval.t_low() + ratio(1, 2).pow(i as i32);
        if !interval.t_high().is_greater_than(&t) {
            continue;
        }
        match probe(model, start, curve, &interval, &t) {
            Ok(cert) => return Ok(cert),
            Err(block) => last_block = Some(block),
        }
    }
    Err(Error::CertificationFailed {
        constraint: last_block
            .unwrap_or_else(|| "the deformation interval contains no probe parameter".to_string()),
    })
}

/// Tries one parameter; returns the assembled certificate or the failing
/// constraint, rendered.
fn probe(
    model: &SurfaceModel,
    start: &ClassVector,
    curve: &CurveRecord,
    interval: &DeformationInterval,
    t: &Rational,
) -> std::result::Result<NonKahlerCertificate, String> {
    let lat = model.lattice();
    let witness = start + &curve.class.scaled(t);
    let mut checks = Vec::new();
    let mut ok_all = true;
    let mut push = |label: String, detail: String, ok: bool| {
        checks.push(CheckRecord { label, detail, ok });
    };

    let in_interval = interval.contains(t);
    push(
        "interval".to_string(),
        format!("t = {} lies in {}", format_rational(t), interval),
        in_interval,
    );
    ok_all &= in_interval;

    let square = lat
        .self_int(&witness)
        .expect("witness inherits the lattice rank");
    debug_assert_eq!(square, interval.square_at(t));
    let square_ok = square.is_positive();
    push(
        "square".to_string(),
        format!("a(t)^2 = {}", format_rational(&square)),
        square_ok,
    );
    ok_all &= square_ok;

    let ref_pairing = lat
        .pair(&witness, model.reference())
        .expect("reference inherits the lattice rank");
    let component_ok = ref_pairing.is_positive();
    push(
        "component".to_string(),
        format!(
            "a(t) . ({}) = {}",
            lat.render_class(model.reference()),
            format_rational(&ref_pairing)
        ),
        component_ok,
    );
    ok_all &= component_ok;

    for e in model.exceptional_set() {
        let pairing = lat
            .pair(&witness, e)
            .expect("exceptional classes inherit the lattice rank");
        let e_ok = pairing.is_positive();
        push(
            format!("pairing with {}", lat.render_class(e)),
            format!(
                "a(t) . ({}) = {}",
                lat.render_class(e),
                format_rational(&pairing)
            ),
            e_ok,
        );
        ok_all &= e_ok;
    }

    let curve_pairing = lat
        .pair(&witness, &curve.class)
        .expect("curve classes inherit the lattice rank");
    debug_assert_eq!(curve_pairing, interval.direction_pairing_at(t));
    let curve_ok = curve_pairing.is_negative();
    push(
        "obstructing curve".to_string(),
        format!(
            "a(t) . ({}) = {}",
            lat.render_class(&curve.class),
            format_rational(&curve_pairing)
        ),
        curve_ok,
    );
    ok_all &= curve_ok;

    if !ok_all {
        let blocker = checks
            .iter()
            .find(|c| !c.ok)
            .expect("some check failed");
        return Err(format!(
            "{} rejected t = {}: {}",
            blocker.label,
            format_rational(t),
            blocker.detail
        ));
    }
    Ok(NonKahlerCertificate {
        start: start.clone(),
        curve: curve.clone(),
        interval: interval.clone(),
        t: t.clone(),
        witness,
        checks,
    })
}
