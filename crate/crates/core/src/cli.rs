//! Command-line surface.
//!
//! ```text
//! jtangent verify-example <NAME>
//! jtangent construct <SPEC.json>
//! jtangent classify <NAME | SPEC.json>
//! jtangent sample <NAME | SPEC.json>
//! ```
//!
//! Common flags: `--grid NxNxN`, `--box xmin:xmax,ymin:ymax,zmin:zmax`,
//! `--tol KEY=VAL` (repeatable), `--out PATH`, `--format json|csv`.
//!
//! Exit codes: 0 success, 1 usage or spec error, 2 mathematical validation
//! failure, 3 I/O error.
//!
//! CSV columns:
//!
//! - `construct`: `x,y,z,f1,f2,f3,f4,h11,h12,h13,h22,h23,h33,S11,S12,S13,S21,S22,S23,S31,S32,S33,tau1,tau2,tau3`
//!   with `Sij = S^i_j`;
//! - `sample`: `x,y,z,f1,f2,f3,f4`;
//! - `classify`: `section,key,value`;
//! - `verify-example`: `check,expected,actual,error,tolerance,pass`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::affine::decompose;
use crate::classify::{
    classify, ClassificationReport, ClassifyError, Grid, Tolerances, SCHEMA_VERSION,
};
use crate::constructors::{gallery, ConstructionError, GalleryName, ImmersionOracle};
use crate::specfile::{Spec, SpecFile};
use crate::verify::{verify_example, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "jtangent",
    version,
    about = "Construct and certify J-tangent centro-affine hypersurfaces and affine hyperspheres in R^4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a gallery example and compare with its reference values.
    VerifyExample {
        /// ex41, ex42, ex43, ex53_f1 or ex53_f2.
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build an immersion from a spec file and dump f, h, S, tau on the grid.
    Construct {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a gallery example or a spec file.
    Classify {
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Sample f on the grid.
    Sample {
        target: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Lattice resolution, NxNxN.
    #[arg(long, value_parser = parse_grid, default_value = "5x5x5")]
    grid: [usize; 3],
    /// Sampling box, xmin:xmax,ymin:ymax,zmin:zmax.
    #[arg(long = "box", allow_hyphen_values = true, value_parser = parse_box, default_value = "-1:1,-1:1,-1:1")]
    bounds: [(f64, f64); 3],
    /// Tolerance override KEY=VAL (frame_condition, identity, null_direction, j_tangency).
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_grid(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split('x').collect();
    if parts.len() != 3 {
        return Err(format!("expected NxNxN, got `{s}`"));
    }
    let mut out = [0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count `{p}`"))?;
        if *o == 0 {
            return Err("grid counts must be positive".into());
        }
    }
    Ok(out)
}

fn parse_box(s: &str) -> Result<[(f64, f64); 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected xmin:xmax,ymin:ymax,zmin:zmax, got `{s}`"));
    }
    let mut out = [(0.0, 0.0); 3];
    for (o, p) in out.iter_mut().zip(parts) {
        let (lo, hi) = p
            .split_once(':')
            .ok_or_else(|| format!("expected min:max, got `{p}`"))?;
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(format!("empty or invalid interval `{p}`"));
        }
        *o = (lo, hi);
    }
    Ok(out)
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VAL, got `{s}`"))?;
    let v: f64 = v
        .parse()
        .map_err(|_| format!("bad tolerance value `{v}`"))?;
    Tolerances::default().set(k, v).map_err(|e| e.to_string())?;
    Ok((k.to_string(), v))
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(m: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: m.to_string(),
        }
    }

    fn math(m: impl ToString) -> Self {
        Failure {
            code: EXIT_MATH,
            message: m.to_string(),
        }
    }

    fn io(m: impl ToString) -> Self {
        Failure {
            code: EXIT_IO,
            message: m.to_string(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::DegenerateCurveData { .. } | ConstructionError::Eval(_) => {
                Failure::math(e)
            }
            _ => Failure::usage(e),
        }
    }
}

impl Common {
    fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        for (k, v) in &self.tol {
            t.set(k, *v).expect("keys validated while parsing");
        }
        t
    }

    fn points(&self, oracle: &ImmersionOracle) -> Result<Vec<[f64; 3]>, Failure> {
        let grid = Grid {
            counts: self.grid,
            bounds: self.bounds,
        };
        let g = grid.restricted_to(oracle).ok_or_else(|| {
            Failure::usage(format!(
                "box does not meet the curve parameter domain {:?}",
                oracle.domain()
            ))
        })?;
        Ok(g.points())
    }
}

fn load_spec(path: &Path) -> Result<Spec, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let file = SpecFile::from_json(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    file.to_spec()
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_target(target: &str) -> Result<ImmersionOracle, Failure> {
    if let Ok(name) = target.parse::<GalleryName>() {
        return Ok(gallery(name));
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(Failure::usage(format!(
            "`{target}` is neither a gallery example nor an existing spec file"
        )));
    }
    Ok(load_spec(path)?.build()?)
}

/// Destination of the primary output.
struct Output<'a> {
    path: Option<&'a Path>,
    stdout: &'a mut dyn Write,
}

impl Output<'_> {
    fn write(&mut self, bytes: &[u8]) -> Result<(), Failure> {
        match self.path {
            Some(p) => {
                fs::write(p, bytes).map_err(|e| Failure::io(format!("{}: {e}", p.display())))
            }
            None => self
                .stdout
                .write_all(bytes)
                .and_then(|_| self.stdout.flush())
                .map_err(Failure::io),
        }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let mut buf = serde_json::to_vec_pretty(value).map_err(Failure::io)?;
        buf.push(b'\n');
        self.write(&buf)
    }

    fn csv(&mut self, header: &[String], rows: &[Vec<String>]) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(Failure::io)?;
        for r in rows {
            w.write_record(r).map_err(Failure::io)?;
        }
        let buf = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
        self.write(&buf)
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Flatten a JSON value into `(section, key, value)` rows.
fn flatten_json(section: &str, prefix: &str, v: &serde_json::Value, out: &mut Vec<Vec<String>>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_json(section, &key, val, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten_json(section, &format!("{prefix}[{i}]"), val, out);
            }
        }
        other => {
            let text = match other {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Null => "NaN".to_string(),
                o => o.to_string(),
            };
            out.push(vec![section.to_string(), prefix.to_string(), text]);
        }
    }
}

fn report_rows(report: &ClassificationReport) -> Result<Vec<Vec<String>>, Failure> {
    let value = serde_json::to_value(report).map_err(Failure::io)?;
    let mut rows = Vec::new();
    let obj = value.as_object().expect("report serializes to an object");
    for section in ["schema_version", "provenance", "variant"] {
        flatten_json("meta", section, &obj[section], &mut rows);
    }
    for section in ["verdicts", "lambda", "residuals", "tolerances", "failures"] {
        flatten_json(section, "", &obj[section], &mut rows);
    }
    Ok(rows)
}

fn cmd_verify(
    name: &str,
    common: &Common,
    out: &mut Output,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let name: GalleryName = name.parse().map_err(Failure::usage)?;
    let oracle = gallery(name);
    let points = common.points(&oracle)?;
    let v = match verify_example(name, &points, &common.tolerances()) {
        Ok(v) => v,
        Err(VerifyError::Classify(ClassifyError::BothNullGate { report })) => {
            out.json(&report)?;
            return Err(Failure::math(ClassifyError::BothNullGate { report }));
        }
        Err(e) => return Err(Failure::math(e)),
    };
    match common.format {
        Format::Json => out.json(&v)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = v
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        num(c.expected),
                        num(c.actual),
                        num(c.error),
                        num(c.tolerance),
                        c.pass.to_string(),
                    ]
                })
                .collect();
            out.csv(
                &strings(&["check", "expected", "actual", "error", "tolerance", "pass"]),
                &rows,
            )?;
        }
    }
    for c in &v.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            stderr,
            "{status} {} = {} (expected {}, error {:.3e}, tolerance {:.0e})",
            c.name, c.actual, c.expected, c.error, c.tolerance
        );
    }
    if v.passed {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(stderr, "{}: reference mismatch", v.example);
        Ok(EXIT_MATH)
    }
}

#[derive(Serialize)]
struct ConstructPoint {
    x: f64,
    y: f64,
    z: f64,
    f: [f64; 4],
    h: [[f64; 3]; 3],
    #[serde(rename = "S")]
    s: [[f64; 3]; 3],
    tau: [f64; 3],
}

#[derive(Serialize)]
struct ConstructSummary {
    lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_range: Option<(f64, f64)>,
    /// Smallest `|det[α, α′] det[β, β′]|` or `|det[γ1, γ2′, γ2, J γ2]|`.
    min_curve_determinant: f64,
}

#[derive(Serialize)]
struct ConstructOutput {
    schema_version: u32,
    provenance: String,
    variant: String,
    summary: ConstructSummary,
    points: Vec<ConstructPoint>,
}

fn cmd_construct(
    path: &Path,
    common: &Common,
    out: &mut Output,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let oracle = load_spec(path)?.build()?;
    let samples = crate::constructors::DEFAULT_VALIDATION_SAMPLES;
    let summary = if let Some(s) = oracle.sphere_spec() {
        let (bmin, bmax, det) = s.summary(samples).map_err(Failure::math)?;
        ConstructSummary {
            lambda: oracle.lambda(),
            b_range: Some((bmin, bmax)),
            min_curve_determinant: det,
        }
    } else {
        let s = oracle
            .centroaffine_spec()
            .expect("oracle is centro-affine or sphere");
        ConstructSummary {
            lambda: oracle.lambda(),
            b_range: None,
            min_curve_determinant: s.min_determinant(samples).map_err(Failure::math)?,
        }
    };
    let _ = writeln!(stderr, "lambda = {}", summary.lambda);
    if let Some((lo, hi)) = summary.b_range {
        let _ = writeln!(stderr, "B range = [{lo}, {hi}]");
    }
    let _ = writeln!(
        stderr,
        "min curve determinant = {:e}",
        summary.min_curve_determinant
    );

    let tol = common.tolerances();
    let mut points = Vec::new();
    for p in common.points(&oracle)? {
        let (f, c) = oracle
            .jets(p)
            .map_err(|e| Failure::math(format!("at {p:?}: {e}")))?;
        let d = decompose(&f, &c, tol.frame_condition)
            .map_err(|e| Failure::math(format!("at {p:?}: {e}")))?;
        let fv = f.value();
        points.push(ConstructPoint {
            x: p[0],
            y: p[1],
            z: p[2],
            f: [fv[0], fv[1], fv[2], fv[3]],
            h: std::array::from_fn(|i| std::array::from_fn(|j| d.h[(i, j)])),
            s: std::array::from_fn(|i| std::array::from_fn(|j| d.s[(i, j)])),
            tau: [d.tau[0], d.tau[1], d.tau[2]],
        });
    }
    match common.format {
        Format::Json => out.json(&ConstructOutput {
            schema_version: SCHEMA_VERSION,
            provenance: oracle.provenance().to_string(),
            variant: oracle.variant().to_string(),
            summary,
            points,
        })?,
        Format::Csv => {
            let mut header = strings(&["x", "y", "z", "f1", "f2", "f3", "f4"]);
            header.extend(strings(&["h11", "h12", "h13", "h22", "h23", "h33"]));
            for i in 1..=3 {
                for j in 1..=3 {
                    header.push(format!("S{i}{j}"));
                }
            }
            header.extend(strings(&["tau1", "tau2", "tau3"]));
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    let mut r: Vec<f64> = vec![p.x, p.y, p.z];
                    r.extend(p.f);
                    r.extend([
                        p.h[0][0], p.h[0][1], p.h[0][2], p.h[1][1], p.h[1][2], p.h[2][2],
                    ]);
                    r.extend(p.s.iter().flatten());
                    r.extend(p.tau);
                    r.into_iter().map(num).collect()
                })
                .collect();
            out.csv(&header, &rows)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_classify(
    target: &str,
    common: &Common,
    out: &mut Output,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let oracle = load_target(target)?;
    let points = common.points(&oracle)?;
    let (report, code) = match classify(&oracle, &points, &common.tolerances()) {
        Ok(r) => (r, EXIT_OK),
        Err(ClassifyError::BothNullGate { report }) => {
            let _ = writeln!(
                stderr,
                "{}",
                ClassifyError::BothNullGate {
                    report: report.clone()
                }
            );
            (*report, EXIT_MATH)
        }
        Err(e) => return Err(Failure::usage(e)),
    };
    match common.format {
        Format::Json => out.json(&report)?,
        Format::Csv => out.csv(
            &strings(&["section", "key", "value"]),
            &report_rows(&report)?,
        )?,
    }
    Ok(code)
}

#[derive(Serialize)]
struct SamplePoint {
    x: f64,
    y: f64,
    z: f64,
    f: [f64; 4],
}

#[derive(Serialize)]
struct SampleOutput {
    schema_version: u32,
    provenance: String,
    points: Vec<SamplePoint>,
}

fn cmd_sample(target: &str, common: &Common, out: &mut Output) -> Result<i32, Failure> {
    let oracle = load_target(target)?;
    let mut points = Vec::new();
    for p in common.points(&oracle)? {
        let f = oracle
            .f_jet(p)
            .map_err(|e| Failure::math(format!("at {p:?}: {e}")))?
            .value();
        points.push(SamplePoint {
            x: p[0],
            y: p[1],
            z: p[2],
            f: [f[0], f[1], f[2], f[3]],
        });
    }
    match common.format {
        Format::Json => out.json(&SampleOutput {
            schema_version: SCHEMA_VERSION,
            provenance: oracle.provenance().to_string(),
            points,
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    [p.x, p.y, p.z, p.f[0], p.f[1], p.f[2], p.f[3]]
                        .map(num)
                        .to_vec()
                })
                .collect();
            out.csv(&strings(&["x", "y", "z", "f1", "f2", "f3", "f4"]), &rows)?;
        }
    }
    Ok(EXIT_OK)
}

/// Run the CLI with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let common = match &cli.command {
        Command::VerifyExample { common, .. }
        | Command::Construct { common, .. }
        | Command::Classify { common, .. }
        | Command::Sample { common, .. } => common,
    };
    let mut out = Output {
        path: common.out.as_deref(),
        stdout,
    };
    let result = match &cli.command {
        Command::VerifyExample { name, common } => cmd_verify(name, common, &mut out, stderr),
        Command::Construct { spec, common } => cmd_construct(spec, common, &mut out, stderr),
        Command::Classify { target, common } => cmd_classify(target, common, &mut out, stderr),
        Command::Sample { target, common } => cmd_sample(target, common, &mut out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
