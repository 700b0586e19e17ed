//! Command-line front end. Every subcommand is a thin shell over the library
//! pipeline: resolve a curve, reparametrize it by arc length, take a Frenet
//! table, and hand it to the requested operation. Outputs are deterministic
//! text files (see [`crate::export`]) plus JSON on stdout for `classify` and
//! `verify`.
//!
//! Exit codes: 0 success, 2 bad arguments or curve spec, 3 degenerate curve
//! (curvature vanishes on too much of the domain, or the parametrization is
//! singular), 4 degenerate construction (the requested partner does not exist
//! for this donor), 5 verification failure. Unexpected I/O or internal
//! errors exit 1.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{check_ratio_identity, classify_curve};
use crate::config::{Tolerances, VerifyTolerances};
use crate::curve::{ParamCurve, Vec3};
use crate::error::{Error, Result};
use crate::export;
use crate::field::{DirectionField, FieldKind};
use crate::fixtures;
use crate::frenet::{frenet_apparatus, FrenetTable};
use crate::partner::{
    frame_relation_residuals, round_trip_residuals, trace_direction_curve, transfer_residuals,
    CurveTrace, Provenance,
};
use crate::spec::CurveSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_SPEC: i32 = 2;
pub const EXIT_DEGENERATE_CURVE: i32 = 3;
pub const EXIT_DEGENERATE_CONSTRUCTION: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

/// Map a library error onto the documented exit codes.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Spec(_) | Error::UnknownFixture { .. } => EXIT_BAD_SPEC,
        Error::EmptyTable
        | Error::TooFewSamples { .. }
        | Error::DegenerateSpeed { .. }
        | Error::GapInInterval { .. }
        | Error::GapSample { .. }
        | Error::OutOfDomain { .. }
        | Error::StencilOutOfDomain { .. } => EXIT_DEGENERATE_CURVE,
        Error::MannheimDegenerate { .. }
        | Error::BertrandDegenerate { .. }
        | Error::ZeroPartnerCurvature { .. }
        | Error::TraceInconsistent { .. }
        | Error::NotUnitNorm { .. }
        | Error::KindMismatch { .. } => EXIT_DEGENERATE_CONSTRUCTION,
        Error::GridMismatch { .. } | Error::Io(_) => 1,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dircurve",
    version,
    about = "Frenet frames, direction-curve partners, and helix classification for space curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a curve's Frenet frame, curvature, and torsion to CSV
    Frenet(FrenetArgs),
    /// Trace a partner curve along a direction field; write the trace, the
    /// field, and a report of the frame and curvature relations
    Construct(ConstructArgs),
    /// Label a curve as plane, helix, slant_helix, or generic
    Classify(ClassifyArgs),
    /// Rebuild a partner and fail if any donor-partner relation drifts past
    /// its tolerance
    Verify(VerifyArgs),
    /// Emit the data files and projections behind the built-in figures
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Built-in curve name (helix_ex39, mannheim_ex48, bertrand_ex510, slant_ex511)
    #[arg(long, value_name = "NAME", conflicts_with = "spec", required_unless_present = "spec")]
    pub builtin: Option<String>,
    /// Path to a curve spec JSON file
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Lattice sample count (at least 16; overrides the spec file)
    #[arg(short = 'n', long = "samples", value_name = "N")]
    pub samples: Option<usize>,
    /// Directory for output files
    #[arg(short = 'o', long = "out", value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Relative-spread ceiling for the helix and slant-helix constancy tests
    #[arg(long, value_name = "TOL")]
    pub tol_constancy: Option<f64>,
    /// max |tau| ceiling for the plane label
    #[arg(long, value_name = "TOL")]
    pub tol_plane: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FrenetArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Evolute,
    Mannheim,
    Bertrand,
    Custom,
}

impl KindArg {
    fn as_str(self) -> &'static str {
        match self {
            KindArg::Evolute => "evolute",
            KindArg::Mannheim => "mannheim",
            KindArg::Bertrand => "bertrand",
            KindArg::Custom => "custom",
        }
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Partner construction to apply
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Constant tangent angle for --kind bertrand (radians unless --degrees)
    #[arg(long, value_name = "ANGLE", allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Interpret --theta in degrees
    #[arg(long)]
    pub degrees: bool,
    /// Integration constant added to the quadrature phase (evolute/mannheim)
    #[arg(long, value_name = "PHI", default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase_offset: f64,
    /// Constant frame coefficients "a,b,c" for --kind custom (unit norm)
    #[arg(long, value_name = "A,B,C")]
    pub field: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Partner construction to verify
    #[arg(long, value_enum)]
    pub kind: VerifyKindArg,
    /// Constant tangent angle for --kind bertrand (radians unless --degrees)
    #[arg(long, value_name = "ANGLE", allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Interpret --theta in degrees
    #[arg(long)]
    pub degrees: bool,
    /// Integration constant added to the quadrature phase (evolute/mannheim)
    #[arg(long, value_name = "PHI", default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase_offset: f64,
    /// Test hook: displace the traced partner by this amplitude before
    /// measuring, to demonstrate that violations are caught
    #[arg(long, value_name = "AMPLITUDE")]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKindArg {
    Evolute,
    Mannheim,
    Bertrand,
}

impl From<VerifyKindArg> for KindArg {
    fn from(k: VerifyKindArg) -> Self {
        match k {
            VerifyKindArg::Evolute => KindArg::Evolute,
            VerifyKindArg::Mannheim => KindArg::Mannheim,
            VerifyKindArg::Bertrand => KindArg::Bertrand,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Figure number 1..=7 (omit to emit all seven)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
    pub fig: Option<u8>,
    /// Directory for output files
    #[arg(short = 'o', long = "out", value_name = "DIR")]
    pub out: Option<PathBuf>,
}

/// Everything a command needs after argument resolution.
pub struct RunConfig {
    pub curve: ParamCurve,
    pub n_samples: usize,
    pub out_dir: Option<PathBuf>,
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn resolve(input: &InputArgs, default_n: usize) -> Result<Self> {
        let (curve, spec_n) = match (&input.builtin, &input.spec) {
            (Some(name), None) => (fixtures::fixture(name)?.curve, None),
            (None, Some(path)) => {
                let spec = CurveSpec::load(path)?;
                (spec.realize()?, spec.n_samples)
            }
            _ => return Err(Error::Spec("give exactly one of --builtin or --spec".into())),
        };
        let n_samples = input.samples.or(spec_n).unwrap_or(default_n);
        if n_samples < 16 {
            return Err(Error::Spec(format!("n_samples must be at least 16, got {n_samples}")));
        }
        let mut tol = Tolerances::default();
        if let Some(t) = input.tol_constancy {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::Spec(format!("--tol-constancy must be positive, got {t}")));
            }
            tol.constancy_tol = t;
        }
        if let Some(t) = input.tol_plane {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::Spec(format!("--tol-plane must be positive, got {t}")));
            }
            tol.plane_tol = t;
        }
        Ok(Self {
            curve,
            n_samples,
            out_dir: input.out.clone(),
            tol,
        })
    }

    /// Arc-length reparametrization followed by the Frenet table. Exact (up
    /// to quadrature roundoff) when the curve is already unit speed, so it is
    /// applied unconditionally.
    pub fn unit_speed_table(&self) -> Result<(ParamCurve, FrenetTable)> {
        let arc = self.curve.arc_length_reparametrize(self.n_samples, &self.tol)?;
        let table = frenet_apparatus(&arc, self.n_samples, &self.tol)?;
        Ok((arc, table))
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Frenet(args) => cmd_frenet(&args),
        Command::Construct(args) => cmd_construct(&args),
        Command::Classify(args) => cmd_classify(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Reproduce(args) => cmd_reproduce(&args),
    }
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

fn out_dir(cfg: &RunConfig) -> PathBuf {
    cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn json_line(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    text.push('\n');
    text
}

pub fn cmd_frenet(args: &FrenetArgs) -> Result<i32> {
    let cfg = RunConfig::resolve(&args.input, 1024)?;
    let (_, table) = cfg.unit_speed_table()?;
    let dropped = table.lattice_len() - table.samples().len();
    if 2 * dropped > table.lattice_len() {
        eprintln!(
            "error: curvature vanishes on {dropped} of {} lattice samples",
            table.lattice_len()
        );
        return Ok(EXIT_DEGENERATE_CURVE);
    }
    write_text(&out_dir(&cfg), "frenet.csv", &export::frenet_csv(&table))?;
    Ok(EXIT_OK)
}

fn theta_in_radians(theta: Option<f64>, degrees: bool, kind: KindArg) -> Result<Option<f64>> {
    match (kind, theta) {
        (KindArg::Bertrand, Some(t)) => Ok(Some(if degrees { t.to_radians() } else { t })),
        (KindArg::Bertrand, None) => Err(Error::Spec("--kind bertrand needs --theta".into())),
        (_, Some(_)) => Err(Error::Spec("--theta applies to --kind bertrand only".into())),
        (_, None) => Ok(None),
    }
}

fn check_phase_offset(offset: f64, kind: KindArg) -> Result<()> {
    if offset != 0.0 && !matches!(kind, KindArg::Evolute | KindArg::Mannheim) {
        return Err(Error::Spec("--phase-offset applies to evolute and mannheim kinds only".into()));
    }
    Ok(())
}

fn parse_field_coefficients(text: &str, tol: &Tolerances) -> Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Spec(format!("--field needs three comma-separated numbers, got {text:?}")));
    }
    let mut coeff = [0.0; 3];
    for (slot, part) in coeff.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Spec(format!("--field component {part:?} is not a number")))?;
    }
    let norm_sq: f64 = coeff.iter().map(|c| c * c).sum();
    if (norm_sq - 1.0).abs() > tol.unit_coeff_tol {
        return Err(Error::Spec(format!(
            "--field coefficients must have unit norm; {text:?} has squared norm {norm_sq}"
        )));
    }
    Ok(coeff)
}

fn build_field(
    table: &FrenetTable,
    kind: KindArg,
    theta: Option<f64>,
    phase_offset: f64,
    custom: Option<[f64; 3]>,
    tol: &Tolerances,
) -> Result<DirectionField> {
    match kind {
        KindArg::Evolute => DirectionField::evolute(table, phase_offset),
        KindArg::Mannheim => DirectionField::mannheim(table, phase_offset, tol),
        KindArg::Bertrand => DirectionField::bertrand(table, theta.expect("validated"), tol),
        KindArg::Custom => {
            let [a, b, c] = custom.expect("validated");
            DirectionField::custom(table, move |_| a, move |_| b, move |_| c, tol)
        }
    }
}

pub fn cmd_construct(args: &ConstructArgs) -> Result<i32> {
    let cfg = RunConfig::resolve(&args.input, 1024)?;
    let theta = theta_in_radians(args.theta, args.degrees, args.kind)?;
    check_phase_offset(args.phase_offset, args.kind)?;
    let custom = match (args.kind, &args.field) {
        (KindArg::Custom, Some(text)) => Some(parse_field_coefficients(text, &cfg.tol)?),
        (KindArg::Custom, None) => return Err(Error::Spec("--kind custom needs --field".into())),
        (_, Some(_)) => return Err(Error::Spec("--field applies to --kind custom only".into())),
        (_, None) => None,
    };

    let (_, table) = cfg.unit_speed_table()?;
    let field = build_field(&table, args.kind, theta, args.phase_offset, custom, &cfg.tol)?;
    let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg.tol)?;
    let ptable = trace.frenet_table(&cfg.tol)?;

    let frame = frame_relation_residuals(&table, &field, &ptable, &cfg.tol)?;
    let (transfer, round_trip) = if args.kind == KindArg::Custom {
        (None, None)
    } else {
        (
            Some(transfer_residuals(&table, &field, &ptable, &cfg.tol)?),
            Some(round_trip_residuals(&table, &field, &ptable, &cfg.tol)?),
        )
    };

    let relations = json!({
        "kind": args.kind.as_str(),
        "provenance": trace.provenance().as_str(),
        "theta": theta,
        "phase_offset": args.phase_offset,
        "partner_samples": ptable.samples().len(),
        "frame": frame,
        "transfer": transfer,
        "round_trip": round_trip,
        "tolerances": cfg.tol,
    });

    let dir = out_dir(&cfg);
    write_text(&dir, "trace.csv", &export::trace_csv(trace.provenance().as_str(), &ptable))?;
    write_text(&dir, "field.csv", &export::field_csv(&field))?;
    write_text(&dir, "relations.json", &json_line(&relations))?;
    Ok(EXIT_OK)
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<i32> {
    let cfg = RunConfig::resolve(&args.input, 1024)?;
    let (_, table) = cfg.unit_speed_table()?;
    let c = classify_curve(&table, &cfg.tol)?;
    let report = json!({
        "label": c.class.as_str(),
        "helix_spread": c.helix.spread,
        "slant_spread": c.slant.spread,
        "max_abs_tau": c.max_abs_tau,
        "tolerances": cfg.tol,
    });
    let text = json_line(&report);
    print!("{text}");
    if let Some(dir) = &cfg.out_dir {
        write_text(dir, "classification.json", &text)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let cfg = RunConfig::resolve(&args.input, 4096)?;
    let kind: KindArg = args.kind.into();
    let theta = theta_in_radians(args.theta, args.degrees, kind)?;
    check_phase_offset(args.phase_offset, kind)?;

    let (_, table) = cfg.unit_speed_table()?;
    let field = build_field(&table, kind, theta, args.phase_offset, None, &cfg.tol)?;
    let mut trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg.tol)?;
    if let Some(amplitude) = args.perturb {
        trace = displaced_trace(&trace, amplitude);
    }
    let ptable = trace.frenet_table(&cfg.tol)?;

    let frame = frame_relation_residuals(&table, &field, &ptable, &cfg.tol)?;
    let transfer = transfer_residuals(&table, &field, &ptable, &cfg.tol)?;
    let round_trip = round_trip_residuals(&table, &field, &ptable, &cfg.tol)?;
    let field_kind = match kind {
        KindArg::Evolute => FieldKind::Evolute,
        KindArg::Mannheim => FieldKind::Mannheim,
        KindArg::Bertrand => FieldKind::Bertrand,
        KindArg::Custom => unreachable!("verify kinds exclude custom"),
    };
    let ratio = check_ratio_identity(field_kind, &table, &ptable, theta, &cfg.tol)?;

    let vtol = VerifyTolerances::default();
    let mut checks: Vec<(&str, f64, f64)> = vec![
        ("frame_tangent_max", frame.tangent.max, vtol.frame),
        ("frame_normal_max", frame.normal.as_ref().expect("named kinds").max, vtol.frame),
        ("frame_binormal_max", frame.binormal.as_ref().expect("named kinds").max, vtol.frame),
        ("transfer_kappa_max", transfer.kappa.max, vtol.transfer),
        ("transfer_tau_max", transfer.tau.max, vtol.transfer),
        ("ratio_identity_median", ratio.ratio.median, vtol.ratio_median),
        ("round_trip_kappa_median", round_trip.kappa.median, vtol.ratio_median),
        ("round_trip_tau_median", round_trip.tau.median, vtol.ratio_median),
    ];
    if let Some(angle) = &frame.tangent_angle {
        checks.push(("tangent_angle_max", angle.max, vtol.tangent_angle));
    }
    if let Some(sigma) = &ratio.sigma {
        checks.push(("sigma_identity_median", sigma.median, vtol.ratio_median));
    }

    let populated = frame.tangent.count > 0;
    let pass = populated && checks.iter().all(|(_, value, limit)| value <= limit);
    let report = json!({
        "kind": kind.as_str(),
        "theta": theta,
        "phase_offset": args.phase_offset,
        "perturb": args.perturb,
        "matched_samples": frame.tangent.count,
        "checks": checks
            .iter()
            .map(|(name, value, limit)| {
                json!({"name": name, "value": value, "limit": limit, "pass": value <= limit})
            })
            .collect::<Vec<_>>(),
        "frame": frame,
        "transfer": transfer,
        "round_trip": round_trip,
        "ratio_identity": ratio,
        "pass": pass,
    });
    let text = json_line(&report);
    print!("{text}");
    if let Some(dir) = &cfg.out_dir {
        write_text(dir, "verify.json", &text)?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Superimpose a smooth displacement on a traced curve. Used only by the
/// `--perturb` hook to prove the verifier rejects corrupted data.
fn displaced_trace(trace: &CurveTrace, amplitude: f64) -> CurveTrace {
    let direction = Vec3::new(0.36, 0.48, 0.8);
    let points: Vec<Vec3> = trace
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| p + amplitude * (5.0 * trace.s_at(i)).sin() * direction)
        .collect();
    CurveTrace::from_samples(trace.provenance(), trace.s_start(), trace.spacing(), points)
}

struct Figure {
    name: &'static str,
    csv: String,
    svg: String,
}

pub fn cmd_reproduce(args: &ReproduceArgs) -> Result<i32> {
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let figs: Vec<u8> = match args.fig {
        Some(f) => vec![f],
        None => (1..=7).collect(),
    };
    for f in figs {
        let figure = build_figure(f)?;
        write_text(&dir, &format!("{}.csv", figure.name), &figure.csv)?;
        write_text(&dir, &format!("{}.svg", figure.name), &figure.svg)?;
    }
    Ok(EXIT_OK)
}

fn donor_table(name: &str, domain: Option<(f64, f64)>, n: usize, tol: &Tolerances) -> Result<FrenetTable> {
    let fixture = match domain {
        Some(d) => fixtures::fixture_on(name, d)?,
        None => fixtures::fixture(name)?,
    };
    let arc = fixture.curve.arc_length_reparametrize(n, tol)?;
    frenet_apparatus(&arc, n, tol)
}

/// Trace a field over a donor table and translate the result so the sample
/// at lattice index `origin_index` sits at the origin.
fn trace_through_origin(
    table: &FrenetTable,
    field: &DirectionField,
    origin_index: usize,
    tol: &Tolerances,
) -> Result<CurveTrace> {
    let trace = trace_direction_curve(table, field, Vec3::zeros(), tol)?;
    let shift = trace.points()[origin_index];
    let points: Vec<Vec3> = trace.points().iter().map(|p| p - shift).collect();
    Ok(CurveTrace::from_samples(
        trace.provenance(),
        trace.s_start(),
        trace.spacing(),
        points,
    ))
}

fn build_figure(fig: u8) -> Result<Figure> {
    let tol = Tolerances::default();
    let pi = std::f64::consts::PI;

    let donor_figure = |name: &'static str, fixture: &str, title: &'static str| -> Result<Figure> {
        let table = donor_table(fixture, None, 4097, &tol)?;
        let points: Vec<Vec3> = table.samples().iter().map(|x| x.point).collect();
        Ok(Figure {
            name,
            csv: export::trace_csv(Provenance::Input.as_str(), &table),
            svg: export::projection_svg(title, &points),
        })
    };

    let trace_figure = |name: &'static str,
                        title: &'static str,
                        donor: &str,
                        domain: Option<(f64, f64)>,
                        n: usize,
                        origin_index: usize,
                        make: &dyn Fn(&FrenetTable) -> Result<DirectionField>|
     -> Result<Figure> {
        let table = donor_table(donor, domain, n, &tol)?;
        let field = make(&table)?;
        let trace = trace_through_origin(&table, &field, origin_index, &tol)?;
        let ptable = trace.frenet_table(&tol)?;
        Ok(Figure {
            name,
            csv: export::trace_csv(trace.provenance().as_str(), &ptable),
            svg: export::projection_svg(title, trace.points()),
        })
    };

    match fig {
        1 => donor_figure("fig1", "helix_ex39", "fig1: helix donor curve"),
        2 => trace_figure(
            "fig2",
            "fig2: evolute-direction trace of the helix donor",
            "helix_ex39",
            None,
            4097,
            0,
            &|t| DirectionField::evolute(t, 0.0),
        ),
        3 => trace_figure(
            "fig3",
            "fig3: mannheim-direction trace of the helix donor",
            "helix_ex39",
            Some((-4.0 * pi, 4.0 * pi)),
            8193,
            4096,
            &|t| DirectionField::mannheim(t, -2.0 * pi, &Tolerances::default()),
        ),
        4 => trace_figure(
            "fig4",
            "fig4: mannheim-direction trace, extended span",
            "helix_ex39",
            Some((-10.0 * pi, 10.0 * pi)),
            20481,
            10240,
            &|t| DirectionField::mannheim(t, -5.0 * pi, &Tolerances::default()),
        ),
        5 => trace_figure(
            "fig5",
            "fig5: bertrand-direction trace of the helix donor (theta = pi/3)",
            "helix_ex39",
            Some((-4.0 * pi, 4.0 * pi)),
            8193,
            4096,
            &|t| DirectionField::bertrand(t, pi / 3.0, &Tolerances::default()),
        ),
        6 => donor_figure("fig6", "slant_ex511", "fig6: slant-helix donor curve"),
        7 => trace_figure(
            "fig7",
            "fig7: bertrand-direction trace of the slant-helix donor (theta = pi/4)",
            "slant_ex511",
            None,
            4097,
            0,
            &|t| DirectionField::bertrand(t, pi / 4.0, &Tolerances::default()),
        ),
        _ => Err(Error::Spec(format!("figure number must be 1..=7, got {fig}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn field_coefficients_parse_and_validate() {
        let tol = Tolerances::default();
        assert_eq!(parse_field_coefficients("0,1,0", &tol).unwrap(), [0.0, 1.0, 0.0]);
        let c = parse_field_coefficients(" 0.6, 0.0, 0.8 ", &tol).unwrap();
        assert_eq!(c, [0.6, 0.0, 0.8]);
        assert!(parse_field_coefficients("0.5,0.5,0.5", &tol).is_err());
        assert!(parse_field_coefficients("1,0", &tol).is_err());
        assert!(parse_field_coefficients("a,b,c", &tol).is_err());
    }

    #[test]
    fn theta_validation_matches_kinds() {
        assert!(theta_in_radians(None, false, KindArg::Bertrand).is_err());
        assert!(theta_in_radians(Some(1.0), false, KindArg::Evolute).is_err());
        assert_eq!(theta_in_radians(None, false, KindArg::Evolute).unwrap(), None);
        let t = theta_in_radians(Some(60.0), true, KindArg::Bertrand).unwrap().unwrap();
        assert!((t - std::f64::consts::PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn exit_codes_cover_the_documented_map() {
        assert_eq!(exit_code_for(&Error::Spec("x".into())), 2);
        assert_eq!(
            exit_code_for(&Error::UnknownFixture { name: "x".into(), expected: "y".into() }),
            2
        );
        assert_eq!(exit_code_for(&Error::EmptyTable), 3);
        assert_eq!(exit_code_for(&Error::BertrandDegenerate { theta: 0.78 }), 4);
        assert_eq!(exit_code_for(&Error::MannheimDegenerate { max_abs_tau: 0.0 }), 4);
    }
}
