//! Front end for `swan`: character specs, subcommands and their output.

pub mod parse;
pub mod spec;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use swan_core::conductor::nonlog_conductor;
use swan_core::curves::{BoundsVerdict, FamilyExperiment};
use swan_core::witt::derive_witt_polys;
use swan_core::{
    check_bounds, classify, family_experiment, reduce, sw_curve, sw_log, Character, Registry,
};
use thiserror::Error;

pub use parse::{parse_expression, Model, ParseError};
pub use spec::{Built, CharacterSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("coordinate {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error(transparent)]
    Core(#[from] swan_core::Error),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "swan",
    version,
    about = "Swan conductors of Artin-Schreier-Witt characters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Swan conductor, fierceness and non-log conductor.
    Sw(SwArgs),
    /// Conductors along the tangent curve family.
    Family(FamilyArgs),
    /// Reduced representative and (F-1)-witness.
    Reduce(CommonArgs),
    /// Sampled curve bounds against a boundary multiplicity.
    CheckBounds(BoundsArgs),
    /// Universal Witt addition and negation polynomials.
    WittPolys(PolysArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CharArgs {
    /// JSON character spec; flags below override its fields.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Degree of the residue field over F_p.
    #[arg(long)]
    pub m: Option<u32>,
    /// Number of variables t1..td.
    #[arg(long)]
    pub d: Option<usize>,
    /// Witt length (defaults to the number of coordinates).
    #[arg(long)]
    pub n: Option<usize>,
    /// One Witt coordinate; repeat for longer vectors.
    #[arg(long = "coords", allow_hyphen_values = true)]
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub chr: CharArgs,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SwArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "reduction")]
    pub method: String,
    #[arg(long, default_value = "shifted")]
    pub variant: String,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 10)]
    pub emax: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long = "d-mult")]
    pub d_mult: u64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PolysArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    /// Print the integral polynomials instead of their reductions mod p.
    #[arg(long)]
    pub integral: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced; `failed` maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub failed: bool,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            stdout,
            stderr: String::new(),
            failed: false,
        }
    }
}

impl CharArgs {
    pub fn resolve(&self) -> Result<CharacterSpec, CliError> {
        let mut spec = match &self.spec {
            Some(path) => CharacterSpec::from_file(path)?,
            None => CharacterSpec {
                m: 1,
                ..CharacterSpec::default()
            },
        };
        if let Some(p) = self.p {
            spec.p = p;
        }
        if let Some(m) = self.m {
            spec.m = m;
        }
        if self.d.is_some() {
            spec.d = self.d;
        }
        if self.n.is_some() {
            spec.n = self.n;
        }
        if !self.coords.is_empty() {
            spec.coords = self.coords.clone();
        }
        if spec.p == 0 {
            return Err(CliError::Input("--p is required".into()));
        }
        Ok(spec)
    }
}

fn surface_only(
    built: Built,
    what: &str,
) -> Result<(usize, Character<swan_core::BoundaryLaurent>), CliError> {
    match built {
        Built::Surface { d, chi } => Ok((d, chi)),
        Built::Curve(_) => Err(CliError::Input(format!(
            "{what} needs a surface character, not a curve"
        ))),
    }
}

fn text_record<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    if let serde_json::Value::Object(map) = json {
        for (k, v) in map {
            let v = match v {
                serde_json::Value::Null => continue,
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            writeln!(out, "{k}={v}").unwrap();
        }
    }
    out
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_record<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("serializable");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

#[derive(Debug, Serialize)]
struct SwRecord {
    model: &'static str,
    p: u64,
    m: u32,
    d: usize,
    n: usize,
    method: String,
    sw: u64,
    dominant_index: Option<usize>,
    tie: bool,
    fierce: bool,
    classification: Option<&'static str>,
    variant: String,
    sw_nonlog: u64,
}

fn cmd_sw(args: &SwArgs) -> Result<Output, CliError> {
    let spec = args.common.chr.resolve()?;
    let registry = Registry::with_builtins();
    let method = registry.method(&args.method)?;
    let variant = registry.variant(&args.variant)?;
    let rec = match spec.build()? {
        Built::Surface { d, chi } => {
            let rep = sw_log(&chi)?;
            SwRecord {
                model: "surface",
                p: spec.p,
                m: spec.m,
                d,
                n: chi.len(),
                method: method.name().to_string(),
                sw: method.sw_boundary(&chi)?,
                dominant_index: rep.dominant_index,
                tie: rep.tie,
                fierce: rep.fierce,
                classification: (chi.len() == 1)
                    .then(|| classify(&chi))
                    .transpose()?
                    .map(|c| c.as_str()),
                variant: variant.name().to_string(),
                sw_nonlog: nonlog_conductor(&chi, variant)?,
            }
        }
        Built::Curve(chi) => {
            let rep = sw_curve(&chi)?;
            SwRecord {
                model: "curve",
                p: spec.p,
                m: spec.m,
                d: 1,
                n: chi.len(),
                method: method.name().to_string(),
                sw: method.sw_curve(&chi)?,
                dominant_index: rep.dominant_index,
                tie: rep.tie,
                fierce: rep.fierce,
                classification: None,
                variant: variant.name().to_string(),
                sw_nonlog: nonlog_conductor(&chi, variant)?,
            }
        }
    };
    Ok(Output::ok(
        match args.common.format.unwrap_or(Format::Text) {
            Format::Text => text_record(&rec),
            Format::Csv => csv_record(&[rec]),
            Format::Json => json(&rec),
        },
    ))
}

#[derive(Debug, Serialize)]
struct SummaryRecord {
    sw_log: u64,
    sup_ratio: Option<String>,
    fierce: bool,
    tie: bool,
    dominant_index: Option<usize>,
    c: u64,
    support: String,
    weights: String,
    skipped: String,
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn summary_record(fam: &FamilyExperiment) -> SummaryRecord {
    let s = &fam.summary;
    SummaryRecord {
        sw_log: s.sw_log,
        sup_ratio: s.sup_ratio.map(|(a, b)| format!("{a}/{b}")),
        fierce: s.fierce,
        tie: s.tie,
        dominant_index: s.dominant_index,
        c: s.c,
        support: join(
            &s.support
                .iter()
                .map(|v| format!("t{}", v + 2))
                .collect::<Vec<_>>(),
        ),
        weights: join(&s.weights),
        skipped: join(&s.skipped),
    }
}

#[derive(Debug, Serialize)]
struct FamilyJson<'a> {
    rows: &'a [swan_core::curves::ExperimentRow],
    summary: SummaryRecord,
}

fn cmd_family(args: &FamilyArgs) -> Result<Output, CliError> {
    let spec = args.common.chr.resolve()?;
    let (_, chi) = surface_only(spec.build()?, "family")?;
    let fam = family_experiment(&chi, args.emax)?;
    Ok(match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => Output {
            stdout: csv_record(&fam.rows),
            stderr: text_record(&summary_record(&fam)),
            failed: false,
        },
        Format::Json => Output::ok(json(&FamilyJson {
            rows: &fam.rows,
            summary: summary_record(&fam),
        })),
        Format::Text => {
            let mut out = String::new();
            for r in &fam.rows {
                writeln!(
                    out,
                    "e={} sw={} ratio={}/{} {}",
                    r.e,
                    r.sw,
                    r.ratio_num,
                    r.ratio_den,
                    r.case_tag.as_str()
                )
                .unwrap();
            }
            out.push_str(&text_record(&summary_record(&fam)));
            Output::ok(out)
        }
    })
}

#[derive(Debug, Serialize)]
struct ReduceRecord {
    sw: u64,
    steps: usize,
    fierce: Vec<bool>,
    reduced: Vec<String>,
    witness: Vec<String>,
}

fn reduce_record<R: swan_core::conductor::LocalCoeff>(
    chi: &Character<R>,
) -> Result<ReduceRecord, CliError> {
    let red = reduce(chi.witt())?;
    Ok(ReduceRecord {
        sw: swan_core::gamma(&red.reduced),
        steps: red.steps,
        fierce: red.fierce.clone(),
        reduced: red.reduced.coords().iter().map(|c| c.render()).collect(),
        witness: red.witness.coords().iter().map(|c| c.render()).collect(),
    })
}

fn cmd_reduce(args: &CommonArgs) -> Result<Output, CliError> {
    let spec = args.chr.resolve()?;
    let rec = match spec.build()? {
        Built::Surface { chi, .. } => reduce_record(&chi)?,
        Built::Curve(chi) => reduce_record(&chi)?,
    };
    Ok(Output::ok(match args.format.unwrap_or(Format::Text) {
        Format::Json => json(&rec),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                index: usize,
                reduced: &'a str,
                witness: &'a str,
                fierce: bool,
            }
            let rows: Vec<Row> = (0..rec.reduced.len())
                .map(|i| Row {
                    index: i,
                    reduced: &rec.reduced[i],
                    witness: &rec.witness[i],
                    fierce: rec.fierce[i],
                })
                .collect();
            csv_record(&rows)
        }
        Format::Text => {
            let mut out = String::new();
            for (i, c) in rec.reduced.iter().enumerate() {
                writeln!(out, "reduced[{i}] = {c}").unwrap();
            }
            for (i, c) in rec.witness.iter().enumerate() {
                writeln!(out, "witness[{i}] = {c}").unwrap();
            }
            writeln!(out, "sw = {}", rec.sw).unwrap();
            writeln!(out, "steps = {}", rec.steps).unwrap();
            out
        }
    }))
}

fn render_weights(w: &[Option<u64>]) -> String {
    w.iter()
        .map(|x| x.map_or("0".to_string(), |m| format!("w^{m}")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn bounds_text(v: &BoundsVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "ok={}", v.ok).unwrap();
    writeln!(out, "sw_log={}", v.sw_log).unwrap();
    writeln!(out, "d_mult={}", v.d_mult).unwrap();
    writeln!(out, "samples={}", v.samples).unwrap();
    writeln!(out, "log_violations={}", v.log_violations.len()).unwrap();
    writeln!(out, "bound_violations={}", v.bound_violations.len()).unwrap();
    if let Some(w) = &v.witness {
        writeln!(out, "witness=e={} sw={} > {}", w.e, w.sw, w.e * v.d_mult).unwrap();
    }
    for o in v.log_violations.iter().chain(&v.bound_violations) {
        writeln!(
            out,
            "violation: e={} [{}] sw={}",
            o.e,
            render_weights(&o.weights),
            o.sw
        )
        .unwrap();
    }
    out
}

fn cmd_check_bounds(args: &BoundsArgs) -> Result<Output, CliError> {
    let spec = args.common.chr.resolve()?;
    let (_, chi) = surface_only(spec.build()?, "check-bounds")?;
    let v = check_bounds(&chi, args.d_mult, args.samples, args.seed)?;
    let stdout = match args.common.format.unwrap_or(Format::Text) {
        Format::Json => json(&v),
        Format::Csv => csv_record(
            &v.log_violations
                .iter()
                .chain(&v.bound_violations)
                .map(|o| (o.e, render_weights(&o.weights), o.sw))
                .collect::<Vec<_>>(),
        ),
        Format::Text => bounds_text(&v),
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        failed: !v.ok,
    })
}

#[derive(Debug, Serialize)]
struct PolysRecord {
    p: u64,
    n: usize,
    sum: Vec<String>,
    neg: Vec<String>,
}

fn cmd_witt_polys(args: &PolysArgs) -> Result<Output, CliError> {
    let polys = derive_witt_polys(args.p, args.n)?;
    let names = polys.variable_names();
    let pick = |i: usize| {
        if args.integral {
            (polys.sum_poly(i), polys.neg_poly(i))
        } else {
            (polys.sum_poly_mod_p(i), polys.neg_poly_mod_p(i))
        }
    };
    let rec = PolysRecord {
        p: args.p,
        n: args.n,
        sum: (0..args.n).map(|i| pick(i).0.render(&names)).collect(),
        neg: (0..args.n).map(|i| pick(i).1.render(&names)).collect(),
    };
    Ok(Output::ok(match args.format.unwrap_or(Format::Text) {
        Format::Json => json(&rec),
        Format::Csv => csv_record(
            &(0..args.n)
                .map(|i| (i, rec.sum[i].clone(), rec.neg[i].clone()))
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut out = String::new();
            for (i, s) in rec.sum.iter().enumerate() {
                writeln!(out, "S_{i} = {s}").unwrap();
            }
            for (i, s) in rec.neg.iter().enumerate() {
                writeln!(out, "N_{i} = {s}").unwrap();
            }
            out
        }
    }))
}

/// Runs a command and writes `--out` if requested.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let (out, path) = match &cli.command {
        Command::Sw(a) => (cmd_sw(a)?, &a.common.out),
        Command::Family(a) => (cmd_family(a)?, &a.common.out),
        Command::Reduce(a) => (cmd_reduce(a)?, &a.out),
        Command::CheckBounds(a) => (cmd_check_bounds(a)?, &a.common.out),
        Command::WittPolys(a) => (cmd_witt_polys(a)?, &a.out),
    };
    match path {
        Some(path) => {
            std::fs::write(path, &out.stdout)
                .map_err(|e| CliError::Io(path.display().to_string(), e))?;
            Ok(Output {
                stdout: out.stderr,
                stderr: String::new(),
                failed: out.failed,
            })
        }
        None => Ok(out),
    }
}
