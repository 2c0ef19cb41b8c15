//! On-disk model files.
//!
//! A model file is a TOML document with four required sections:
//!
//! ```toml
//! name = "ruled"
//!
//! [lattice]
//! basis = ["e", "f", "k"]
//! gram = [[-1, 0, -1], [0, 0, -2], [-1, -2, -1]]
//!
//! [classes]
//! K = ["0", "0", "1"]
//! reference = ["0", "1", "-1"]
//!
//! [roles]
//! canonical = "K"
//! reference = "reference"
//! exceptional = []
//! ```
//!
//! Class coefficients are written as rational strings (`"p"` or `"p/q"`) so
//! that files stay exact; the `[roles]` table refers to classes by the names
//! they were given under `[classes]`.  Two optional pieces complete the
//! picture: a top-level `curves` array declaring negative curves (each entry
//! names a class and states its genus; the class name doubles as the curve
//! label), and `roles.sphere_sublattice` naming a basis for a definite
//! sublattice used to restrict exceptional-class searches.  `curves = []`
//! and a missing `curves` key mean different things: the former declares
//! "no negative curves", the latter declares nothing, which disables
//! Kähler-side questions for the model.

use std::collections::BTreeMap;

use conekit::{
    format_rational, parse_rational, ClassVector, CurveRecord, KodairaDim, Lattice, ModelTags,
    SurfaceModel,
};
use serde::{Deserialize, Serialize};

/// Errors produced while reading or resolving a model file.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    /// The document is not valid TOML (the inner error carries line/column).
    #[error("model file is not valid TOML: {0}")]
    Syntax(#[from] toml::de::Error),
    /// The document is valid TOML but a field has the wrong content.
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    /// The document describes an inconsistent model.
    #[error(transparent)]
    Model(#[from] conekit::Error),
}

fn field_err(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelDoc {
    name: String,
    // Declared before the table-valued fields so that the empty form
    // (`curves = []`) serializes as a plain key/value pair, which TOML only
    // allows ahead of the first table header.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    curves: Option<Vec<CurveDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tags: Option<TagsDoc>,
    lattice: LatticeDoc,
    classes: BTreeMap<String, Vec<String>>,
    roles: RolesDoc,
}

#[derive(Debug, Serialize, Deserialize)]
struct TagsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kodaira_dim: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p_g: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    minimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LatticeDoc {
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RolesDoc {
    canonical: String,
    reference: String,
    #[serde(default)]
    exceptional: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sphere_sublattice: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CurveDoc {
    class: String,
    genus: u32,
}

/// Parses a model file, returning the model together with its named classes.
///
/// The name map is what lets command-line arguments refer to classes by the
/// names used in the file; the model itself only stores coefficient vectors.
pub fn parse_model_with_classes(
    text: &str,
) -> Result<(SurfaceModel, BTreeMap<String, ClassVector>), FormatError> {
    let doc: ModelDoc = toml::from_str(text)?;

    let lattice = Lattice::new(doc.lattice.basis.clone(), doc.lattice.gram.clone())?;
    let rank = lattice.rank();

    let mut classes = BTreeMap::new();
    for (name, entries) in &doc.classes {
        let path = format!("classes.{name}");
        if entries.len() != rank {
            return Err(field_err(
                path,
                format!("expected {rank} coefficients, found {}", entries.len()),
            ));
        }
        let mut coeffs = Vec::with_capacity(rank);
        for (i, text) in entries.iter().enumerate() {
            let value = parse_rational(text)
                .map_err(|e| field_err(format!("{path}[{i}]"), e.to_string()))?;
            coeffs.push(value);
        }
        classes.insert(name.clone(), ClassVector::new(coeffs));
    }

    let resolve = |name: &str, path: &str| -> Result<ClassVector, FormatError> {
        classes
            .get(name)
            .cloned()
            .ok_or_else(|| field_err(path, format!("class \"{name}\" is not defined in [classes]")))
    };

    let canonical = resolve(&doc.roles.canonical, "roles.canonical")?;
    let reference = resolve(&doc.roles.reference, "roles.reference")?;
    let mut exceptional = Vec::with_capacity(doc.roles.exceptional.len());
    for (i, name) in doc.roles.exceptional.iter().enumerate() {
        exceptional.push(resolve(name, &format!("roles.exceptional[{i}]"))?);
    }
    let sphere_sublattice = match &doc.roles.sphere_sublattice {
        None => None,
        Some(names) => {
            let mut basis = Vec::with_capacity(names.len());
            for (i, name) in names.iter().enumerate() {
                basis.push(resolve(name, &format!("roles.sphere_sublattice[{i}]"))?);
            }
            Some(basis)
        }
    };
    let curves = match &doc.curves {
        None => None,
        Some(entries) => {
            let mut records = Vec::with_capacity(entries.len());
            for (i, entry) in entries.iter().enumerate() {
                let class = resolve(&entry.class, &format!("curves[{i}].class"))?;
                records.push(CurveRecord {
                    class,
                    genus: entry.genus,
                    label: entry.class.clone(),
                });
            }
            Some(records)
        }
    };

    let tags_doc = doc.tags.unwrap_or(TagsDoc {
        kodaira_dim: None,
        p_g: None,
        minimal: None,
        note: None,
    });
    let kodaira_dim = match &tags_doc.kodaira_dim {
        None => None,
        Some(text) => Some(
            text.parse::<KodairaDim>()
                .map_err(|e| field_err("tags.kodaira_dim", e.to_string()))?,
        ),
    };
    let tags = ModelTags {
        name: doc.name,
        kodaira_dim,
        p_g: tags_doc.p_g,
        minimal: tags_doc.minimal,
        note: tags_doc.note,
    };

    let model = SurfaceModel::new(
        lattice,
        canonical,
        reference,
        exceptional,
        curves,
        sphere_sublattice,
        tags,
    )?;
    Ok((model, classes))
}

/// Parses a model file, discarding the class-name map.
pub fn parse_model(text: &str) -> Result<SurfaceModel, FormatError> {
    parse_model_with_classes(text).map(|(model, _)| model)
}

/// Renders a model as a TOML document that [`parse_model`] reads back
/// unchanged.
///
/// Class names are assigned deterministically: curve labels keep their own
/// names, the canonical class is called `K`, the reference class `reference`,
/// exceptional classes `E1`, `E2`, … and sphere-sublattice members `S1`,
/// `S2`, ….  A role that repeats an already-named vector reuses the earlier
/// name instead of minting a fresh one, so e.g. a model whose reference class
/// is its canonical class serializes both roles against the single entry `K`.
pub fn serialize_model(model: &SurfaceModel) -> String {
    let mut names: Vec<(String, ClassVector)> = Vec::new();

    let find = |names: &[(String, ClassVector)], class: &ClassVector| -> Option<String> {
        names
            .iter()
            .find(|(_, v)| v == class)
            .map(|(n, _)| n.clone())
    };
    let fresh = |names: &[(String, ClassVector)], desired: &str| -> String {
        if !names.iter().any(|(n, _)| n == desired) {
            return desired.to_string();
        }
        let mut suffix = 2usize;
        loop {
            let candidate = format!("{desired}_{suffix}");
            if !names.iter().any(|(n, _)| n == &candidate) {
                return candidate;
            }
            suffix += 1;
        }
    };

    // Curves claim their labels first: the label is stored in the file as the
    // class name, so it must not be renamed by a collision with a role name.
    let mut curve_docs = None;
    if let Some(records) = model.curves() {
        let mut docs = Vec::with_capacity(records.len());
        for record in records {
            let name = match find(&names, &record.class) {
                Some(existing) if existing == record.label => existing,
                _ => {
                    let name = fresh(&names, &record.label);
                    names.push((name.clone(), record.class.clone()));
                    name
                }
            };
            docs.push(CurveDoc {
                class: name,
                genus: record.genus,
            });
        }
        curve_docs = Some(docs);
    }

    let assign = |names: &mut Vec<(String, ClassVector)>,
                  desired: &str,
                  class: &ClassVector|
     -> String {
        if let Some(existing) = find(names, class) {
            return existing;
        }
        let name = fresh(names, desired);
        names.push((name.clone(), class.clone()));
        name
    };

    let canonical = assign(&mut names, "K", model.canonical_class());
    let reference = assign(&mut names, "reference", model.reference());
    let exceptional: Vec<String> = model
        .exceptional_set()
        .iter()
        .enumerate()
        .map(|(i, class)| assign(&mut names, &format!("E{}", i + 1), class))
        .collect();
    let sphere_sublattice = model.sphere_sublattice().map(|basis| {
        basis
            .iter()
            .enumerate()
            .map(|(i, class)| assign(&mut names, &format!("S{}", i + 1), class))
            .collect()
    });

    let classes: BTreeMap<String, Vec<String>> = names
        .into_iter()
        .map(|(name, class)| {
            let coeffs = class.coeffs().iter().map(format_rational).collect();
            (name, coeffs)
        })
        .collect();

    let tags = model.tags();
    let tags_doc = TagsDoc {
        kodaira_dim: tags.kodaira_dim.map(|k| k.to_string()),
        p_g: tags.p_g,
        minimal: tags.minimal,
        note: tags.note.clone(),
    };
    let tags = if tags_doc.kodaira_dim.is_none()
        && tags_doc.p_g.is_none()
        && tags_doc.minimal.is_none()
        && tags_doc.note.is_none()
    {
        None
    } else {
        Some(tags_doc)
    };

    let lattice = model.lattice();
    let doc = ModelDoc {
        name: model.tags().name.clone(),
        curves: curve_docs,
        tags,
        lattice: LatticeDoc {
            basis: lattice.basis_names().to_vec(),
            gram: (0..lattice.rank())
                .map(|i| {
                    (0..lattice.rank())
                        .map(|j| {
                            let entry = lattice.gram_entry(i, j);
                            i64::try_from(entry).expect("gram entries of serialized models fit i64")
                        })
                        .collect()
                })
                .collect(),
        },
        classes,
        roles: RolesDoc {
            canonical,
            reference,
            exceptional,
            sphere_sublattice,
        },
    };
    toml::to_string(&doc).expect("model documents serialize to TOML")
}

/// Returns the built-in model registered under `name`, if any.
///
/// Recognized names: `ruled`, `burniat`, `bidisk`, and `rational0` through
/// `rational8`.
pub fn builtin(name: &str) -> Option<SurfaceModel> {
    match name {
        "ruled" => Some(conekit::ruled_blowup_model()),
        "burniat" => Some(conekit::burniat_model()),
        "bidisk" => Some(conekit::bidisk_model()),
        _ => {
            let n: u32 = name.strip_prefix("rational")?.parse().ok()?;
            conekit::rational_blowup_model(n).ok()
        }
    }
}

/// Lists the names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    let mut names = vec![
        "ruled".to_string(),
        "burniat".to_string(),
        "bidisk".to_string(),
    ];
    for n in 0..=8 {
        names.push(format!("rational{n}"));
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use conekit::rat;

    #[test]
    fn builtins_round_trip_through_the_file_format() {
        for name in ["ruled", "burniat", "bidisk", "rational0", "rational2"] {
            let model = builtin(name).expect("builtin model");
            let text = serialize_model(&model);
            let reparsed = parse_model(&text)
                .unwrap_or_else(|e| panic!("serialized {name} model failed to parse: {e}"));
            assert_eq!(reparsed, model, "round trip changed the {name} model");
        }
    }

    #[test]
    fn class_names_survive_serialization() {
        let model = conekit::ruled_blowup_model();
        let text = serialize_model(&model);
        let (_, classes) = parse_model_with_classes(&text).expect("parse");
        assert!(classes.contains_key("K"), "canonical class is named K");
        assert!(classes.contains_key("reference"));
        assert!(
            classes.contains_key("e - 2k"),
            "curve labels double as class names; found {:?}",
            classes.keys().collect::<Vec<_>>()
        );
        // The first exceptional class coincides with the declared curve `e`,
        // so the roles table reuses that name instead of minting `E1`.
        assert_eq!(classes["e"], ClassVector::from_integers(&[1, 0, 0]));
        assert!(text.contains("exceptional = [\"e\", \"-e + f\"]"), "{text}");
    }

    #[test]
    fn exceptional_names_are_minted_when_no_curve_claims_them() {
        let base = conekit::ruled_blowup_model();
        let model = SurfaceModel::new(
            base.lattice().clone(),
            base.canonical_class().clone(),
            base.reference().clone(),
            base.exceptional_set().to_vec(),
            None,
            None,
            ModelTags::named("ruled-bare"),
        )
        .expect("curve-free variant validates");
        let text = serialize_model(&model);
        assert!(text.contains("exceptional = [\"E1\", \"E2\"]"), "{text}");
        let reparsed = parse_model(&text).expect("parse");
        assert_eq!(reparsed, model);
    }

    #[test]
    fn missing_role_targets_are_reported_with_their_path() {
        let mut text = serialize_model(&conekit::burniat_model());
        text = text.replace("canonical = \"K\"", "canonical = \"missing\"");
        let err = parse_model(&text).expect_err("dangling role name");
        let message = err.to_string();
        assert!(
            message.contains("roles.canonical") && message.contains("missing"),
            "error should name the offending field: {message}"
        );
    }

    #[test]
    fn bad_rationals_are_reported_with_their_path() {
        let mut text = serialize_model(&conekit::burniat_model());
        text = text.replace("K = [\"1\", \"0\"]", "K = [\"1\", \"zero\"]");
        let err = parse_model(&text).expect_err("unparseable coefficient");
        assert!(
            err.to_string().contains("classes.K[1]"),
            "error should name the coefficient: {err}"
        );
    }

    #[test]
    fn asymmetric_grams_are_rejected() {
        let text = r#"
name = "broken"

[lattice]
basis = ["a", "b"]
gram = [[1, 2], [3, -1]]

[classes]
K = ["1", "0"]

[roles]
canonical = "K"
reference = "K"
"#;
        let err = parse_model(text).expect_err("asymmetric gram");
        assert!(
            matches!(err, FormatError::Model(conekit::Error::AsymmetricGram { .. })),
            "unexpected error: {err}"
        );
    }

    #[test]
    fn declared_genus_must_match_adjunction() {
        let mut text = serialize_model(&conekit::ruled_blowup_model());
        text = text.replace(
            "class = \"e - 2k\"\ngenus = 1",
            "class = \"e - 2k\"\ngenus = 2",
        );
        let err = parse_model(&text).expect_err("wrong genus");
        match err {
            FormatError::Model(conekit::Error::GenusMismatch {
                label,
                declared,
                computed,
            }) => {
                assert_eq!(label, "e - 2k");
                assert_eq!(declared, "2");
                assert_eq!(computed, "1");
            }
            other => panic!("expected a genus mismatch, got {other}"),
        }
    }

    #[test]
    fn empty_and_absent_curve_lists_are_distinguished() {
        let with_empty = serialize_model(&conekit::bidisk_model());
        assert!(
            with_empty.contains("curves = []"),
            "declared-empty curve list should appear explicitly:\n{with_empty}"
        );
        let parsed = parse_model(&with_empty).expect("parse");
        assert_eq!(parsed.curves(), Some(&[][..]));

        let without = with_empty.replace("curves = []\n", "");
        let parsed = parse_model(&without).expect("parse");
        assert!(parsed.curves().is_none(), "absent key means undeclared");
    }

    #[test]
    fn builtin_lookup_covers_the_registry() {
        for name in builtin_names() {
            assert!(builtin(&name).is_some(), "missing builtin {name}");
        }
        assert!(builtin("rational9").is_none(), "nine blow-ups overflow");
        assert!(builtin("unknown").is_none());
    }

    #[test]
    fn syntax_errors_carry_position_information() {
        let err = parse_model("name = \"x\"\n[lattice\n").expect_err("bad TOML");
        let message = err.to_string();
        assert!(
            message.contains("TOML"),
            "syntax errors should be flagged as such: {message}"
        );
    }

    #[test]
    fn duplicate_role_vectors_share_one_class_entry() {
        let model = conekit::burniat_model();
        assert_eq!(model.canonical_class(), model.reference());
        let text = serialize_model(&model);
        assert!(text.contains("reference = \"K\""), "roles share the K entry:\n{text}");
    }

    #[test]
    fn rational_coefficients_survive_the_round_trip() {
        let model = conekit::burniat_model();
        let mut text = serialize_model(&model);
        text = text.replace("K = [\"1\", \"0\"]", "K = [\"2/2\", \"0/5\"]");
        let parsed = parse_model(&text).expect("reduced fractions parse");
        assert_eq!(parsed.canonical_class().coeff(0), &rat(1));
    }
}
