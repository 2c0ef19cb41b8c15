//! Validated surface models: a lattice plus the distinguished classes the
//! cone machinery needs, and builders for the built-in families.
//!
//! A [`SurfaceModel`] packages a signature-`(1, n, 0)` lattice with its
//! canonical class, a reference class selecting a positive-cone component,
//! the declared exceptional classes, an optional list of negative curves,
//! and optional bookkeeping (a sphere sublattice to search, display tags).
//! Construction checks every declared fact against the pairing — squares,
//! canonical pairings, adjunction genera, independence — so the rest of the
//! crate can trust a model it is handed.
//!
//! Four built-in families cover the interesting corners of the `b_+ = 1`
//! landscape:
//!
//! * [`ruled_blowup_model`] — a one-point blow-up of a ruled surface over an
//!   elliptic curve; its symplectic cone strictly contains its Kahler cone.
//! * [`burniat_model`] — a rank-2 slice of a minimal general-type surface
//!   with `K^2 = 6` carrying a genus-1 curve of square `-1`.
//! * [`bidisk_model`] — an irreducible bidisk quotient with no negative
//!   curves at all, where the two cones agree.
//! * [`rational_blowup_model`] — the plane blown up at up to eight points,
//!   with the exceptional classes enumerated rather than declared.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::cone::{adjunction_genus, CurveRecord};
use crate::enumerate::{enumerate_exceptional, rational_rank, ExceptionalQuery};
use crate::error::{Error, Result};
use crate::lattice::{ClassVector, Lattice, Parity};
use crate::ratio::{format_rational, rat, ratio};

/// Kodaira dimension tag, for display and round-tripping only — nothing in
/// the cone machinery branches on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaDim {
    MinusInfinity,
    Zero,
    One,
    Two,
}

impl fmt::Display for KodairaDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaDim::MinusInfinity => write!(f, "-inf"),
            KodairaDim::Zero => write!(f, "0"),
            KodairaDim::One => write!(f, "1"),
            KodairaDim::Two => write!(f, "2"),
        }
    }
}

impl FromStr for KodairaDim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(KodairaDim::MinusInfinity),
            "0" => Ok(KodairaDim::Zero),
            "1" => Ok(KodairaDim::One),
            "2" => Ok(KodairaDim::Two),
            other => Err(Error::ModelInvalid(format!(
                "unknown Kodaira dimension {other:?} (expected -inf, 0, 1, or 2)"
            ))),
        }
    }
}

/// Display metadata attached to a model. Only `name` is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelTags {
    /// Short identifier, e.g. `"ruled"` or `"rational3"`.
    pub name: String,
    /// Kodaira dimension, if the model cares to state it.
    pub kodaira_dim: Option<KodairaDim>,
    /// Geometric genus, if stated.
    pub p_g: Option<u32>,
    /// Whether the underlying surface is minimal, if stated.
    pub minimal: Option<bool>,
    /// Free-form remark.
    pub note: Option<String>,
}

impl ModelTags {
    /// Tags carrying only a name.
    pub fn named(name: &str) -> Self {
        ModelTags {
            name: name.to_string(),
            kodaira_dim: None,
            p_g: None,
            minimal: None,
            note: None,
        }
    }
}

/// A lattice with its distinguished cone data, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    lattice: Lattice,
    canonical: ClassVector,
    reference: ClassVector,
    exceptional_set: Vec<ClassVector>,
    curves: Option<Vec<CurveRecord>>,
    sphere_sublattice: Option<Vec<ClassVector>>,
    tags: ModelTags,
}

impl SurfaceModel {
    /// Builds a model after checking every declared fact:
    ///
    /// * the lattice signature is `(1, n, 0)`;
    /// * every class has the lattice's rank;
    /// * the reference class has positive square;
    /// * each exceptional class `E` has `E^2 = -1` and `E.K = -1`, the set
    ///   has no duplicates, and the reference pairs `>= 0` with each;
    /// * each curve has negative square, a distinct non-empty label, genus
    ///   matching adjunction, and reference pairing `>= 0`;
    /// * sphere-sublattice members are linearly independent.
    pub fn new(
        lattice: Lattice,
        canonical: ClassVector,
        reference: ClassVector,
        exceptional_set: Vec<ClassVector>,
        curves: Option<Vec<CurveRecord>>,
        sphere_sublattice: Option<Vec<ClassVector>>,
        tags: ModelTags,
    ) -> Result<Self> {
        let signature = lattice.signature();
        if !signature.is_lorentzian() {
            return Err(Error::SignatureNotLorentzian {
                positive: signature.positive,
                negative: signature.negative,
                zero: signature.zero,
            });
        }
        let rank = lattice.rank();
        let check_rank = |cls: &ClassVector| -> Result<()> {
            if cls.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: cls.len(),
                });
            }
            Ok(())
        };
        check_rank(&canonical)?;
        check_rank(&reference)?;
        let ref_sq = lattice.self_int(&reference)?;
        if !ref_sq.is_positive() {
            return Err(Error::NotPositiveSquare {
                class: lattice.render_class(&reference),
                square: format_rational(&ref_sq),
            });
        }
        let minus_one = rat(-1);
        for (i, e) in exceptional_set.iter().enumerate() {
            check_rank(e)?;
            let sq = lattice.self_int(e)?;
            if sq != minus_one {
                return Err(Error::ModelInvalid(format!(
                    "exceptional_set[{i}]: square is {}, expected -1",
                    format_rational(&sq)
                )));
            }
            let against_k = lattice.pair(e, &canonical)?;
            if against_k != minus_one {
                return Err(Error::ModelInvalid(format!(
                    "exceptional_set[{i}]: pairing with the canonical class is {}, expected -1",
                    format_rational(&against_k)
                )));
            }
            if let Some(prev) = exceptional_set[..i].iter().position(|other| other == e) {
                return Err(Error::ModelInvalid(format!(
                    "exceptional_set[{i}]: duplicate of exceptional_set[{prev}]"
                )));
            }
            if lattice.pair(&reference, e)?.is_negative() {
                return Err(Error::ModelInvalid(format!(
                    "exceptional_set[{i}]: the reference class pairs negatively with it"
                )));
            }
        }
        if let Some(records) = &curves {
            for (i, record) in records.iter().enumerate() {
                check_rank(&record.class)?;
                if record.label.is_empty() {
                    return Err(Error::ModelInvalid(format!("curves[{i}]: empty label")));
                }
                if records[..i].iter().any(|other| other.label == record.label) {
                    return Err(Error::ModelInvalid(format!(
                        "curves[{i}]: label {:?} already used",
                        record.label
                    )));
                }
                let sq = lattice.self_int(&record.class)?;
                if !sq.is_negative() {
                    return Err(Error::ModelInvalid(format!(
                        "curves[{i}] ({:?}): square is {}, expected negative",
                        record.label,
                        format_rational(&sq)
                    )));
                }
                let computed = adjunction_genus(&lattice, &canonical, &record.class)?;
                if computed != rat(i64::from(record.genus)) {
                    return Err(Error::GenusMismatch {
                        label: record.label.clone(),
                        declared: record.genus.to_string(),
                        computed: format_rational(&computed),
                    });
                }
                if lattice.pair(&reference, &record.class)?.is_negative() {
                    return Err(Error::ModelInvalid(format!(
                        "curves[{i}] ({:?}): the reference class pairs negatively with it",
                        record.label
                    )));
                }
            }
        }
        if let Some(members) = &sphere_sublattice {
            if members.is_empty() {
                return Err(Error::ModelInvalid(
                    "sphere_sublattice: empty member list".to_string(),
                ));
            }
            for member in members {
                check_rank(member)?;
            }
            if rational_rank(members) != members.len() {
                return Err(Error::ModelInvalid(
                    "sphere_sublattice: members are linearly dependent".to_string(),
                ));
            }
        }
        Ok(SurfaceModel {
            lattice,
            canonical,
            reference,
            exceptional_set,
            curves,
            sphere_sublattice,
            tags,
        })
    }

    /// The underlying lattice.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The canonical class `K`.
    pub fn canonical_class(&self) -> &ClassVector {
        &self.canonical
    }

    /// The class whose positive-cone component all cones live in.
    pub fn reference(&self) -> &ClassVector {
        &self.reference
    }

    /// The declared exceptional classes.
    pub fn exceptional_set(&self) -> &[ClassVector] {
        &self.exceptional_set
    }

    /// The declared negative curves: `None` means "not declared" (Kahler
    /// queries unavailable), `Some(&[])` means "declared empty".
    pub fn curves(&self) -> Option<&[CurveRecord]> {
        self.curves.as_deref()
    }

    /// Optional sublattice spanned by sphere classes, for focused searches.
    pub fn sphere_sublattice(&self) -> Option<&[ClassVector]> {
        self.sphere_sublattice.as_deref()
    }

    /// Display metadata.
    pub fn tags(&self) -> &ModelTags {
        &self.tags
    }
}

/// One-point blow-up of a ruled surface over an elliptic curve.
///
/// Basis `e, f, k`: the exceptional sphere, the fiber, and the canonical
/// class. The two square-`-1` sphere classes are `e` and `f - e`; the
/// genus-1 curve `e - 2k` obstructs the Kahler cone away from the
/// symplectic cone.
pub fn ruled_blowup_model() -> SurfaceModel {
    let lattice = Lattice::new(
        vec!["e".to_string(), "f".to_string(), "k".to_string()],
        vec![vec![-1, 0, -1], vec![0, 0, -2], vec![-1, -2, -1]],
    )
    .expect("fixture gram matrix is well-formed");
    let e1 = ClassVector::from_integers(&[1, 0, 0]);
    let e2 = ClassVector::from_integers(&[-1, 1, 0]);
    let f = ClassVector::from_integers(&[0, 1, 0]);
    let k = ClassVector::from_integers(&[0, 0, 1]);
    let minus_one = rat(-1);
    // Construction self-checks: the basis really encodes the geometry.
    assert_eq!(lattice.self_int(&e1).unwrap(), minus_one, "e^2 must be -1");
    assert_eq!(
        lattice.self_int(&e2).unwrap(),
        minus_one,
        "(f - e)^2 must be -1"
    );
    assert_eq!(
        lattice.pair(&e1, &e2).unwrap(),
        rat(1),
        "the two sphere classes must meet once"
    );
    assert_eq!(&e1 + &e2, f, "the sphere classes must sum to the fiber");
    assert_eq!(lattice.self_int(&f).unwrap(), rat(0), "f^2 must be 0");
    assert_eq!(lattice.self_int(&k).unwrap(), minus_one, "k^2 must be -1");
    assert_eq!(lattice.pair(&e1, &k).unwrap(), minus_one, "e.k must be -1");
    assert_eq!(
        lattice.pair(&e2, &k).unwrap(),
        minus_one,
        "(f - e).k must be -1"
    );
    assert_eq!(lattice.parity(), Parity::Odd, "the pairing must be odd");
    assert!(lattice.is_lorentzian(), "signature must be (1, 2, 0)");
    let reference = ClassVector::from_integers(&[0, 1, -1]); // f - k
    assert_eq!(
        lattice.self_int(&reference).unwrap(),
        rat(3),
        "(f - k)^2 must be 3"
    );
    let section = ClassVector::from_integers(&[1, 0, -2]); // e - 2k
    let curves = vec![
        CurveRecord {
            class: e1.clone(),
            genus: 0,
            label: "e".to_string(),
        },
        CurveRecord {
            class: e2.clone(),
            genus: 0,
            label: "-e + f".to_string(),
        },
        CurveRecord {
            class: section,
            genus: 1,
            label: "e - 2k".to_string(),
        },
    ];
    let mut tags = ModelTags::named("ruled");
    tags.kodaira_dim = Some(KodairaDim::MinusInfinity);
    tags.p_g = Some(0);
    tags.minimal = Some(false);
    tags.note = Some(
        "one-point blow-up of a ruled surface over an elliptic curve; \
         the symplectic cone strictly contains the Kahler cone"
            .to_string(),
    );
    SurfaceModel::new(
        lattice,
        k,
        reference,
        vec![e1.clone(), e2.clone()],
        Some(curves),
        Some(vec![e1, e2]),
        tags,
    )
    .expect("the ruled fixture satisfies every model invariant")
}

/// The square-zero genus-1 class `2e - 2k` of the ruled fixture,
/// reconstructed purely from its pairings against the basis (0 with `e`,
/// 4 with `f`, 0 with `k`) rather than read off.
///
/// # Panics
///
/// If `model` is not the ruled fixture: the defining pairings are specific
/// to it.
pub fn delta_class(model: &SurfaceModel) -> ClassVector {
    assert_eq!(
        model.tags().name,
        "ruled",
        "delta_class is defined only for the ruled fixture"
    );
    let lattice = model.lattice();
    let targets = [
        (ClassVector::from_integers(&[1, 0, 0]), rat(0)),
        (ClassVector::from_integers(&[0, 1, 0]), rat(4)),
        (ClassVector::from_integers(&[0, 0, 1]), rat(0)),
    ];
    let delta = lattice
        .solve_from_pairings(&targets)
        .expect("the ruled basis pins the class down uniquely");
    assert_eq!(
        delta,
        ClassVector::from_integers(&[2, 0, -2]),
        "the pairing targets must reconstruct 2e - 2k"
    );
    assert_eq!(
        lattice.self_int(&delta).unwrap(),
        rat(0),
        "the reconstructed class must have square zero"
    );
    assert_eq!(
        adjunction_genus(lattice, model.canonical_class(), &delta).unwrap(),
        rat(1),
        "the reconstructed class must have genus one"
    );
    delta
}

/// The algebra behind the half-class family of the ruled fixture, for one
/// odd `m < 0`: the class `xi = (e + m f - k)/2` is never integral, yet
/// `4 xi + (-2m f - e) = e - 2k` holds coefficientwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfClassIdentity {
    /// The family parameter.
    pub m: i64,
    /// `(e + m f - k)/2`.
    pub xi: ClassVector,
    /// Whether `xi` has integer coefficients (always false here).
    pub xi_integral: bool,
    /// `-2m f - e`.
    pub complement: ClassVector,
    /// `e - 2k`, the section class the identity lands on.
    pub target: ClassVector,
    /// Whether `4 xi + complement == target`.
    pub holds: bool,
}

/// Evaluates the half-class identity for an odd negative `m`.
///
/// # Panics
///
/// If `m` is not odd and negative: the family is indexed by odd `m < 0`.
pub fn decomposable_identity_check(m: i64) -> HalfClassIdentity {
    assert!(
        m < 0 && m % 2 != 0,
        "the half-class family is indexed by odd negative m, got {m}"
    );
    let xi = ClassVector::new(vec![ratio(1, 2), ratio(m, 2), ratio(-1, 2)]);
    let complement = ClassVector::from_integers(&[-1, -2 * m, 0]);
    let target = ClassVector::from_integers(&[1, 0, -2]);
    let four_xi = xi.scaled(&rat(4));
    let holds = &four_xi + &complement == target;
    HalfClassIdentity {
        m,
        xi_integral: xi.is_integral(),
        xi,
        complement,
        target,
        holds,
    }
}

/// Rank-2 slice of a minimal general-type surface with `K^2 = 6`,
/// spanned by the canonical class and a genus-1 curve of square `-1`.
///
/// The full second cohomology has rank 4; this slice keeps exactly the
/// classes the cone comparison needs. The surface is minimal, so the
/// exceptional set is empty — even though the *numerical* exceptional
/// condition has a solution (`-c`), no declared class realizes it.
pub fn burniat_model() -> SurfaceModel {
    let lattice = Lattice::new(
        vec!["k".to_string(), "c".to_string()],
        vec![vec![6, 1], vec![1, -1]],
    )
    .expect("fixture gram matrix is well-formed");
    let k = ClassVector::from_integers(&[1, 0]);
    let c = ClassVector::from_integers(&[0, 1]);
    assert_eq!(lattice.self_int(&k).unwrap(), rat(6), "K^2 must be 6");
    assert_eq!(lattice.self_int(&c).unwrap(), rat(-1), "c^2 must be -1");
    // k.c = 1 is forced: adjunction with genus 1 and c^2 = -1 gives
    // (c^2 + K.c)/2 + 1 = 1, i.e. K.c = -c^2 = 1.
    assert_eq!(lattice.pair(&k, &c).unwrap(), rat(1), "K.c must be 1");
    let curves = vec![CurveRecord {
        class: c,
        genus: 1,
        label: "c".to_string(),
    }];
    let mut tags = ModelTags::named("burniat");
    tags.kodaira_dim = Some(KodairaDim::Two);
    tags.p_g = Some(0);
    tags.minimal = Some(true);
    tags.note = Some(
        "rank-2 slice (canonical class and one genus-1 curve) of the full \
         rank-4 lattice of a minimal general-type surface with K^2 = 6"
            .to_string(),
    );
    SurfaceModel::new(
        lattice,
        k.clone(),
        k,
        Vec::new(),
        Some(curves),
        None,
        tags,
    )
    .expect("the general-type fixture satisfies every model invariant")
}

/// Irreducible quotient of the bidisk: even pairing `[[0, 4], [4, 0]]`,
/// canonical class `w1 + w2` with `K^2 = 8`, and no negative curves at all,
/// so the Kahler cone fills the whole positive component.
pub fn bidisk_model() -> SurfaceModel {
    let lattice = Lattice::new(
        vec!["w1".to_string(), "w2".to_string()],
        vec![vec![0, 4], vec![4, 0]],
    )
    .expect("fixture gram matrix is well-formed");
    let k = ClassVector::from_integers(&[1, 1]);
    assert_eq!(lattice.self_int(&k).unwrap(), rat(8), "K^2 must be 8");
    assert_eq!(lattice.parity(), Parity::Even, "the pairing must be even");
    let mut tags = ModelTags::named("bidisk");
    tags.kodaira_dim = Some(KodairaDim::Two);
    tags.p_g = Some(0);
    tags.minimal = Some(true);
    tags.note = Some(
        "irreducible bidisk quotient; it carries no curves of negative \
         square, so the declared curve list is empty and the Kahler and \
         symplectic cones agree"
            .to_string(),
    );
    SurfaceModel::new(
        lattice,
        k.clone(),
        k,
        Vec::new(),
        Some(Vec::new()),
        None,
        tags,
    )
    .expect("the bidisk fixture satisfies every model invariant")
}

/// The plane blown up at `n <= 8` points: odd unimodular lattice
/// `diag(1, -1, .., -1)`, canonical class `-3h + e_1 + .. + e_n`.
///
/// The exceptional set is *enumerated* (coefficient box of half-width
/// `3(n + 1)`, which contains every solution for `n <= 8`), not declared,
/// and the same classes double as the genus-0 curve list. For `n > 8` the
/// canonical square drops to zero or below and the set of solutions becomes
/// infinite, so the request is refused.
pub fn rational_blowup_model(n: u32) -> Result<SurfaceModel> {
    if n > 8 {
        return Err(Error::TooManyBlowups { n });
    }
    let rank = n as usize + 1;
    let mut names = vec!["h".to_string()];
    let mut gram = vec![vec![0i64; rank]];
    gram[0][0] = 1;
    let mut k_coeffs = vec![rat(-3)];
    for i in 1..rank {
        names.push(format!("e{i}"));
        let mut row = vec![0i64; rank];
        row[i] = -1;
        gram.push(row);
        k_coeffs.push(rat(1));
    }
    let lattice = Lattice::new(names, gram).expect("the blow-up gram matrix is well-formed");
    let canonical = ClassVector::new(k_coeffs);
    let reference = lattice.basis_vector(0);
    let query = ExceptionalQuery::ambient(canonical.clone(), 3 * (n + 1));
    let exceptional_set = enumerate_exceptional(&lattice, &query);
    assert_eq!(
        exceptional_set.is_empty(),
        n == 0,
        "blowing up at least one point must produce exceptional classes"
    );
    let curves = exceptional_set
        .iter()
        .map(|cls| CurveRecord {
            class: cls.clone(),
            genus: 0,
            label: lattice.render_class(cls),
        })
        .collect();
    let mut tags = ModelTags::named(&format!("rational{n}"));
    tags.kodaira_dim = Some(KodairaDim::MinusInfinity);
    tags.p_g = Some(0);
    tags.minimal = Some(n == 0);
    tags.note = Some(format!("the projective plane blown up at {n} points"));
    SurfaceModel::new(
        lattice,
        canonical,
        reference,
        exceptional_set,
        Some(curves),
        None,
        tags,
    )
}
