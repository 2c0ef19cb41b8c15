//! Command-line front end.
//!
//! Exit codes: `0` on success, `1` when a requested verification fails (a
//! class outside the queried cone, a certificate that cannot be produced, a
//! failing report item), and `2` for usage or parse errors.  A consumer that
//! stops reading stdout (e.g. `conekit … | head`) ends the run quietly with
//! exit code `0`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use conekit::{
    certify_non_generic, enumerate_exceptional, in_kahler_cone, in_symplectic_cone,
    kahler_obstruction, parse_rational, ClassVector, CurveRecord, ExceptionalQuery, Rational,
    SurfaceModel,
};
use conekit_cli::format::{builtin, builtin_names, parse_model_with_classes, serialize_model};
use conekit_cli::report::run_verification_report;
use conekit_cli::slice::{slice_csv, slice_grid, SliceError};

#[derive(Parser)]
#[command(
    name = "conekit",
    about = "Exact cone computations on the intersection lattices of surface models",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a model as a TOML document on stdout.
    ///
    /// The argument is either a built-in model name (try `ruled`, `burniat`,
    /// `bidisk`, `rational0` … `rational8`) or a path to a model file, which
    /// is validated and re-emitted in normalized form.
    Model {
        /// Built-in model name or path to a model file.
        source: String,
    },
    /// Decide whether a class lies in the symplectic (default) or Kähler cone.
    CheckCone {
        /// Built-in model name or path to a model file.
        file: String,
        /// Class name from the model file, a basis name, or comma-separated
        /// rational coefficients like `4,1,-9`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Test the Kähler cone instead of the symplectic cone.
        #[arg(long)]
        kahler: bool,
    },
    /// List exceptional classes with bounded coefficients.
    EnumerateExceptional {
        /// Built-in model name or path to a model file.
        file: String,
        /// Bound on the absolute value of every search coordinate.
        #[arg(long)]
        bound: u32,
        /// Search inside the model's declared sphere sublattice.
        #[arg(long)]
        sphere_sublattice: bool,
    },
    /// Produce and verify a symplectic-but-not-Kähler certificate.
    Certify {
        /// Built-in model name or path to a model file.
        file: String,
        /// Start class: a class name, basis name, or coefficient vector.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Obstructing curve: a declared curve label or its class.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Classify the grid s*u + t*v and print it as CSV.
    Slice {
        /// Built-in model name or path to a model file.
        file: String,
        /// First direction: class name, basis name, or coefficient vector.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Second direction: class name, basis name, or coefficient vector.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Parameter rectangle, written `sLo:sHi,tLo:tHi` with rational ends.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Grid points per axis (at least 2, endpoints included).
        #[arg(long)]
        steps: u32,
    },
    /// Re-derive the bundled worked examples and check every recorded value.
    VerifyPaper,
}

/// A failed run, carrying the exit code contract.
enum Failure {
    /// Bad invocation or unreadable/invalid input: exit code 2.
    Usage(String),
    /// The computation ran and the answer is "no": exit code 1.
    Verification(String),
    /// The output consumer closed the pipe; stop writing, exit code 0.
    ClosedPipe,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 1,
            Failure::ClosedPipe => 0,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::ClosedPipe
        } else {
            Failure::Verification(format!("cannot write output: {e}"))
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn verification(message: impl Into<String>) -> Failure {
    Failure::Verification(message.into())
}

type Classes = BTreeMap<String, ClassVector>;

/// Loads a model from a built-in name or a file path.
///
/// Built-ins pass through the file format too, so names declared by the
/// serializer (`K`, `reference`, curve labels, …) work in class arguments
/// regardless of where the model came from.
fn load_model(source: &str) -> Result<(SurfaceModel, Classes), Failure> {
    let text = match builtin(source) {
        Some(model) => serialize_model(&model),
        None => fs::read_to_string(source).map_err(|e| {
            usage(format!(
                "cannot read model {source:?} ({e}); built-in names are {}",
                builtin_names().join(", ")
            ))
        })?,
    };
    parse_model_with_classes(&text).map_err(|e| usage(format!("{source}: {e}")))
}

/// Resolves a class argument: a `[classes]` name, a basis name, or a
/// comma-separated list of rational coefficients.
fn resolve_class(
    spec: &str,
    model: &SurfaceModel,
    classes: &Classes,
) -> Result<ClassVector, Failure> {
    let spec = spec.trim();
    if let Some(class) = classes.get(spec) {
        return Ok(class.clone());
    }
    let lattice = model.lattice();
    if let Some(i) = lattice.basis_names().iter().position(|name| name == spec) {
        return Ok(lattice.basis_vector(i));
    }
    if spec.contains(',') {
        let mut coeffs = Vec::new();
        for part in spec.split(',') {
            let value = parse_rational(part)
                .map_err(|e| usage(format!("bad coefficient {part:?} in {spec:?}: {e}")))?;
            coeffs.push(value);
        }
        if coeffs.len() != lattice.rank() {
            return Err(usage(format!(
                "class {spec:?} has {} coefficients but the lattice has rank {}",
                coeffs.len(),
                lattice.rank()
            )));
        }
        return Ok(ClassVector::new(coeffs));
    }
    Err(usage(format!(
        "unknown class {spec:?}: not a declared class name, basis name, or coefficient vector"
    )))
}

/// Resolves a curve argument to one of the model's declared curve records.
fn resolve_curve<'m>(
    spec: &str,
    model: &'m SurfaceModel,
    classes: &Classes,
) -> Result<&'m CurveRecord, Failure> {
    let records = model
        .curves()
        .ok_or_else(|| verification("the model declares no curves".to_string()))?;
    if let Some(record) = records.iter().find(|r| r.label == spec.trim()) {
        return Ok(record);
    }
    let class = resolve_class(spec, model, classes)?;
    records
        .iter()
        .find(|r| r.class == class)
        .ok_or_else(|| verification(format!("{spec:?} is not a declared curve of the model")))
}

fn parse_range_pair(text: &str) -> Result<(Rational, Rational), Failure> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("range part {text:?} is not of the form lo:hi")))?;
    let lo = parse_rational(lo).map_err(|e| usage(format!("bad range endpoint {lo:?}: {e}")))?;
    let hi = parse_rational(hi).map_err(|e| usage(format!("bad range endpoint {hi:?}: {e}")))?;
    Ok((lo, hi))
}

#[allow(clippy::type_complexity)]
fn parse_range(text: &str) -> Result<((Rational, Rational), (Rational, Rational)), Failure> {
    let (s_part, t_part) = text.split_once(',').ok_or_else(|| {
        usage(format!(
            "range {text:?} is not of the form sLo:sHi,tLo:tHi"
        ))
    })?;
    Ok((parse_range_pair(s_part)?, parse_range_pair(t_part)?))
}

fn cmd_model(out: &mut impl Write, source: &str) -> Result<(), Failure> {
    let (model, _) = load_model(source)?;
    write!(out, "{}", serialize_model(&model))?;
    Ok(())
}

fn cmd_check_cone(
    out: &mut impl Write,
    file: &str,
    class_spec: &str,
    kahler: bool,
) -> Result<(), Failure> {
    let (model, classes) = load_model(file)?;
    let class = resolve_class(class_spec, &model, &classes)?;
    let lattice = model.lattice();
    writeln!(out, "class: {}", lattice.render_class(&class))?;
    let square = lattice
        .self_int(&class)
        .map_err(|e| usage(e.to_string()))?;
    writeln!(out, "square: {}", conekit::format_rational(&square))?;
    let cone = if kahler { "kahler" } else { "symplectic" };
    let inside = if kahler {
        in_kahler_cone(&model, &class)
    } else {
        in_symplectic_cone(&model, &class)
    }
    .map_err(|e| verification(e.to_string()))?;
    if inside {
        writeln!(out, "{cone} cone: INSIDE")?;
        return Ok(());
    }
    if kahler && in_symplectic_cone(&model, &class).map_err(|e| verification(e.to_string()))? {
        let blocking = kahler_obstruction(&model, &class)
            .map_err(|e| verification(e.to_string()))?
            .expect("a symplectic non-Kahler class has an obstructing curve");
        writeln!(
            out,
            "{cone} cone: OUTSIDE (obstructed by curve {}, pairing {})",
            blocking.label,
            conekit::format_rational(
                &lattice
                    .pair(&class, &blocking.class)
                    .expect("dimensions already checked")
            )
        )?;
    } else {
        writeln!(out, "{cone} cone: OUTSIDE")?;
    }
    Err(verification(format!(
        "{} is outside the {cone} cone",
        lattice.render_class(&class)
    )))
}

fn cmd_enumerate(out: &mut impl Write, file: &str, bound: u32, sphere: bool) -> Result<(), Failure> {
    let (model, _) = load_model(file)?;
    let k = model.canonical_class().clone();
    let query = if sphere {
        let basis = model
            .sphere_sublattice()
            .ok_or_else(|| verification("the model declares no sphere sublattice"))?
            .to_vec();
        ExceptionalQuery::in_sublattice(k, basis, bound)
    } else {
        ExceptionalQuery::ambient(k, bound)
    };
    let found = enumerate_exceptional(model.lattice(), &query);
    for class in &found {
        writeln!(out, "{}  {}", class, model.lattice().render_class(class))?;
    }
    writeln!(out, "count: {}", found.len())?;
    Ok(())
}

fn cmd_certify(
    out: &mut impl Write,
    file: &str,
    start_spec: &str,
    curve_spec: &str,
) -> Result<(), Failure> {
    let (model, classes) = load_model(file)?;
    let start = resolve_class(start_spec, &model, &classes)?;
    let curve = resolve_curve(curve_spec, &model, &classes)?;
    let lattice = model.lattice();
    writeln!(out, "start: {}", lattice.render_class(&start))?;
    writeln!(out, "curve: {} (genus {})", curve.label, curve.genus)?;
    let certificate =
        certify_non_generic(&model, &start, curve).map_err(|e| verification(e.to_string()))?;
    writeln!(out, "interval: {}", certificate.interval())?;
    writeln!(out, "T = {}", conekit::format_rational(certificate.t()))?;
    writeln!(
        out,
        "witness a_T = {}",
        lattice.render_class(certificate.witness())
    )?;
    for check in certificate.checks() {
        let mark = if check.ok { "ok" } else { "FAIL" };
        writeln!(out, "  [{mark}] {}: {}", check.label, check.detail)?;
    }
    certificate
        .verify(&model)
        .map_err(|e| verification(e.to_string()))?;
    writeln!(out, "certificate verified")?;
    Ok(())
}

fn cmd_slice(
    out: &mut impl Write,
    file: &str,
    u: &str,
    v: &str,
    range: &str,
    steps: u32,
) -> Result<(), Failure> {
    let (model, classes) = load_model(file)?;
    let u = resolve_class(u, &model, &classes)?;
    let v = resolve_class(v, &model, &classes)?;
    let (s_range, t_range) = parse_range(range)?;
    let rows = slice_grid(&model, &u, &v, s_range, t_range, steps).map_err(|e| match e {
        SliceError::Usage(m) => usage(m),
        SliceError::Model(m) => verification(m.to_string()),
    })?;
    write!(out, "{}", slice_csv(&rows))?;
    Ok(())
}

fn cmd_verify(out: &mut impl Write) -> Result<(), Failure> {
    let report = run_verification_report();
    write!(out, "{}", report.render())?;
    match report.first_failure() {
        None => Ok(()),
        Some(label) => Err(verification(format!("report item failed: {label}"))),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Model { source } => cmd_model(out, source),
        Command::CheckCone {
            file,
            class,
            kahler,
        } => cmd_check_cone(out, file, class, *kahler),
        Command::EnumerateExceptional {
            file,
            bound,
            sphere_sublattice,
        } => cmd_enumerate(out, file, *bound, *sphere_sublattice),
        Command::Certify { file, start, curve } => cmd_certify(out, file, start, curve),
        Command::Slice {
            file,
            u,
            v,
            range,
            steps,
        } => cmd_slice(out, file, u, v, range, *steps),
        Command::VerifyPaper => cmd_verify(out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    // Keep the first failure; a flush error only matters on otherwise-clean runs.
    let result = match out.flush() {
        Ok(()) => result,
        Err(e) => result.and(Err(Failure::from(e))),
    };
    match result {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(failure) => {
            let code = failure.code();
            let message = match &failure {
                Failure::Usage(m) | Failure::Verification(m) => m,
                Failure::ClosedPipe => unreachable!("handled above"),
            };
            let _ = writeln!(io::stderr(), "error: {message}");
            ExitCode::from(code)
        }
    }
}
