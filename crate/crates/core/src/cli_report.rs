//! Table reproduction, property suites and CSV/JSON rendering behind the
//! `sl2r` binary.
//!
//! Every command produces a [`Sheet`] of named columns. CSV output prints
//! numbers with 10 significant digits; JSON output keeps full precision and
//! adds a `meta` object. Identical configurations give byte-identical output.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::geodesics::{
    connect, geodesic_polar, geodesic_polar_velocity, integrate_geodesic, solve_geodesic_to,
    Direction, ODE_STEP,
};
use crate::isometries::{apply, translation_to};
use crate::metric::{metric_inhomogeneous, metric_polar, pullback_polar};
use crate::model_core::{ModelPoint, ProjectivePoint};
use crate::translation_curves::translation_arc_between;
use crate::triangles::{
    find_pi_sum_triangle, geodesic_triangle_report, is_lightlike, plane_normal,
    translated_vertices, translated_vertices_by_matrix, translation_triangle_report, Triangle,
    TriangleReport,
};
use crate::{GeometryError, Result};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Parameter at which the `→ 0` limit rows are evaluated.
pub const LIMIT_PARAM: f64 = 1e-6;
pub const LIMIT_TOL: f64 = 1e-4;
const CSV_DIGITS: i32 = 10;
const MAX_COUNTEREXAMPLES: usize = 5;

const TABLE3_Y2: [(f64, &str); 5] = [
    (1e-3, "1/1000"),
    (1.0 / 3.0, "1/3"),
    (0.5, "1/2"),
    (0.75, "3/4"),
    (0.999, "999/1000"),
];
const TABLE4_Z3: [(f64, &str); 4] = [
    (0.1, "1/10"),
    (1.0 / 3.0, "1/3"),
    (0.999, "999/1000"),
    (1.0 - 1e-6, "(10^6-1)/10^6"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Right-angled triangle families with `A1` at the origin and `A2 = (0, y², 0)`:
/// `A3 = (x³, 0, 0)` on the fibre axis or `A3 = (0, 0, z³)` in the base plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Fibre,
    Hyperbolic,
}

impl Family {
    /// Triangle for the free parameter `p` of `A3` and `y2` of `A2`.
    pub fn triangle(self, y2: f64, p: f64) -> Result<Triangle> {
        let a2 = ModelPoint::new(0.0, y2, 0.0);
        let a3 = match self {
            Family::Fibre => ModelPoint::new(p, 0.0, 0.0),
            Family::Hyperbolic => ModelPoint::new(0.0, 0.0, p),
        };
        Triangle::at_origin(a2, a3)
    }

    fn param_name(self) -> &'static str {
        match self {
            Family::Fibre => "x3",
            Family::Hyperbolic => "z3",
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fibre" | "fiber" => Ok(Family::Fibre),
            "hyperbolic" => Ok(Family::Hyperbolic),
            _ => Err(format!("unknown family `{s}` (expected fibre or hyperbolic)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    TranslationAngleSum,
    LightlikeEquality,
    NonlightlikeStrict,
    OdeVsClosed,
    BvpRoundtrip,
    FibreGrid,
    HyperbolicGrid,
    ClosedFormTranslations,
    Antipodality,
    MetricPullback,
    UnitSpeed,
    IsometryInvariance,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::TranslationAngleSum,
        Suite::LightlikeEquality,
        Suite::NonlightlikeStrict,
        Suite::OdeVsClosed,
        Suite::BvpRoundtrip,
        Suite::FibreGrid,
        Suite::HyperbolicGrid,
        Suite::ClosedFormTranslations,
        Suite::Antipodality,
        Suite::MetricPullback,
        Suite::UnitSpeed,
        Suite::IsometryInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TranslationAngleSum => "translation-anglesum",
            Suite::LightlikeEquality => "lightlike-equality",
            Suite::NonlightlikeStrict => "nonlightlike-strict",
            Suite::OdeVsClosed => "ode-vs-closed",
            Suite::BvpRoundtrip => "bvp-roundtrip",
            Suite::FibreGrid => "fibre-grid",
            Suite::HyperbolicGrid => "hyperbolic-grid",
            Suite::ClosedFormTranslations => "closed-form-translations",
            Suite::Antipodality => "antipodality",
            Suite::MetricPullback => "metric-pullback",
            Suite::UnitSpeed => "unit-speed",
            Suite::IsometryInvariance => "isometry-invariance",
            Suite::All => "all",
        }
    }

    /// Sample count used when none is given. For the grids it is the number
    /// of points per axis.
    pub fn default_n(self) -> usize {
        match self {
            Suite::TranslationAngleSum | Suite::UnitSpeed => 1000,
            Suite::LightlikeEquality | Suite::NonlightlikeStrict | Suite::MetricPullback => 200,
            Suite::OdeVsClosed => 5,
            Suite::BvpRoundtrip => 500,
            Suite::FibreGrid | Suite::HyperbolicGrid => 19,
            Suite::ClosedFormTranslations | Suite::Antipodality | Suite::IsometryInvariance => 100,
            Suite::All => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Geodesic { from: ModelPoint, to: ModelPoint },
    Translate { from: ModelPoint, to: ModelPoint },
    Triangle { vertices: [ModelPoint; 3] },
    Table3 { x3: f64, y2_values: Option<Vec<f64>> },
    Table4 { y2: f64, z3_values: Option<Vec<f64>> },
    FindPi { a2: ModelPoint, a3_h: ModelPoint, a3_f: ModelPoint },
    Sweep { family: Family, y2: Option<f64> },
    Verify { suite: Suite },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Geodesic { .. } => "geodesic",
            Command::Translate { .. } => "translate",
            Command::Triangle { .. } => "triangle",
            Command::Table3 { .. } => "table3",
            Command::Table4 { .. } => "table4",
            Command::FindPi { .. } => "find-pi",
            Command::Sweep { .. } => "sweep",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: f64,
    pub seed: u64,
    pub n: Option<usize>,
    pub format: OutputFormat,
    pub out: Option<std::path::PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            tol: DEFAULT_TOL,
            seed: DEFAULT_SEED,
            n: None,
            format: OutputFormat::Csv,
            out: None,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), CliError> {
        let bad = |msg: String| Err(CliError::bad_arguments(msg));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.n == Some(0) {
            return bad("--n must be positive".into());
        }
        let unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(CliError::bad_arguments(format!(
                    "{name} = {v} is outside the open interval (0, 1)"
                )))
            }
        };
        match &self.command {
            Command::Table3 { x3, y2_values } => {
                if !(x3.is_finite() && *x3 > 0.0) {
                    return bad(format!("x3 must be positive, got {x3}"));
                }
                for v in y2_values.iter().flatten() {
                    unit("y2", *v)?;
                }
            }
            Command::Table4 { y2, z3_values } => {
                unit("y2", *y2)?;
                for v in z3_values.iter().flatten() {
                    unit("z3", *v)?;
                }
            }
            Command::Sweep { y2: Some(y2), .. } => unit("y2", *y2)?,
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExitStatus {
    Success,
    InvariantViolation,
    SolverFailure,
    BadArguments,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::InvariantViolation => 2,
            ExitStatus::SolverFailure => 3,
            ExitStatus::BadArguments => 4,
        }
    }

    fn worst(self, other: ExitStatus) -> ExitStatus {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn bad_arguments(message: impl Into<String>) -> Self {
        CliError {
            status: ExitStatus::BadArguments,
            message: message.into(),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError {
            status: if e.is_solver_failure() {
                ExitStatus::SolverFailure
            } else {
                ExitStatus::BadArguments
            },
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub body: String,
    pub status: ExitStatus,
}

// ---------------------------------------------------------------------------
// sheets

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Json(Value),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_sig(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Json(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(_) => Value::Null,
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Json(v) => v.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sheet {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Sheet {
    fn new(columns: &[&str]) -> Self {
        Sheet {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn to_json(&self, meta: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (c, cell) in self.columns.iter().zip(row) {
                    obj.insert(c.clone(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows }))
            .expect("json values serialize");
        s.push('\n');
        s
    }
}

/// Fixed 10 significant digits; plain decimals for moderate magnitudes,
/// scientific notation otherwise. Non-finite values render empty.
pub fn format_sig(v: f64) -> String {
    if !v.is_finite() {
        return String::new();
    }
    if v == 0.0 {
        return format!("{:.*}", (CSV_DIGITS - 1) as usize, 0.0);
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..15).contains(&e) {
        format!("{:.*}", (CSV_DIGITS - 1 - e).max(0) as usize, v)
    } else {
        format!("{:.*e}", (CSV_DIGITS - 1) as usize, v)
    }
}

// ---------------------------------------------------------------------------
// tables

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowKind {
    Data,
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Ok,
    /// Limit row within [`LIMIT_TOL`] of every analytic limit.
    LimitPass,
    LimitFail,
    /// Limit row whose convergence is too slow for a pass/fail check.
    LimitReported,
    SolverFailure(String),
    Error(String),
}

impl RowStatus {
    fn label(&self) -> String {
        match self {
            RowStatus::Ok => "ok".into(),
            RowStatus::LimitPass => "limit-pass".into(),
            RowStatus::LimitFail => "limit-fail".into(),
            RowStatus::LimitReported => "limit-reported".into(),
            RowStatus::SolverFailure(m) => format!("solver-failure: {m}"),
            RowStatus::Error(m) => format!("error: {m}"),
        }
    }

    fn exit(&self) -> ExitStatus {
        match self {
            RowStatus::Ok | RowStatus::LimitPass | RowStatus::LimitReported => ExitStatus::Success,
            RowStatus::LimitFail => ExitStatus::InvariantViolation,
            RowStatus::SolverFailure(_) | RowStatus::Error(_) => ExitStatus::SolverFailure,
        }
    }
}

/// Analytic limits of the columns `|α₂³|, d, ω₂, ω₃, Σ`; `INFINITY` for a
/// divergent column.
pub type Limits = [f64; 5];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub kind: RowKind,
    pub label: String,
    pub param: f64,
    /// `|α₂³|`, the altitude of the side `A2A3` leaving `A2`.
    pub alpha23: f64,
    /// `|α₃²|`.
    pub alpha32: f64,
    pub d: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub sum: f64,
    pub limits: Option<Limits>,
    /// Largest deviation from the finite limits.
    pub limit_deviation: Option<f64>,
    pub status: RowStatus,
}

impl TableRow {
    fn columns(&self) -> [f64; 5] {
        [self.alpha23, self.d, self.omega2, self.omega3, self.sum]
    }
}

fn right_triangle_row(family: Family, y2: f64, p: f64, label: String, param: f64) -> TableRow {
    let mut row = TableRow {
        kind: RowKind::Data,
        label,
        param,
        alpha23: f64::NAN,
        alpha32: f64::NAN,
        d: f64::NAN,
        omega1: f64::NAN,
        omega2: f64::NAN,
        omega3: f64::NAN,
        sum: f64::NAN,
        limits: None,
        limit_deviation: None,
        status: RowStatus::Ok,
    };
    match family
        .triangle(y2, p)
        .and_then(|t| geodesic_triangle_report(&t))
    {
        Ok(r) => {
            row.alpha23 = r.direction(1, 2).map_or(f64::NAN, |d| d.alpha().abs());
            row.alpha32 = r.direction(2, 1).map_or(f64::NAN, |d| d.alpha().abs());
            row.d = r.side_lengths[0];
            [row.omega1, row.omega2, row.omega3] = r.omega;
            row.sum = r.angle_sum;
        }
        Err(e) if e.is_solver_failure() => row.status = RowStatus::SolverFailure(e.to_string()),
        Err(e) => row.status = RowStatus::Error(e.to_string()),
    }
    row
}

fn limit_row(mut row: TableRow, limits: Limits, checked: bool) -> TableRow {
    row.kind = RowKind::Limit;
    row.limits = Some(limits);
    if row.status != RowStatus::Ok {
        return row;
    }
    let dev = row
        .columns()
        .iter()
        .zip(limits)
        .filter(|(_, l)| l.is_finite())
        .map(|(v, l)| (v - l).abs())
        .fold(0.0, f64::max);
    row.limit_deviation = Some(dev);
    row.status = if !checked {
        RowStatus::LimitReported
    } else if dev <= LIMIT_TOL {
        RowStatus::LimitPass
    } else {
        RowStatus::LimitFail
    };
    row
}

/// Rows of the fibre-like family `A3 = (x³, 0, 0)` for each `y²`.
pub fn run_table3(x3: f64, y2_values: &[f64]) -> Vec<TableRow> {
    y2_values
        .iter()
        .map(|&y2| right_triangle_row(Family::Fibre, y2, x3, label_for(y2, &TABLE3_Y2), y2))
        .collect()
}

/// Limit rows `y² → 0` (checked at [`LIMIT_PARAM`]) and `y² → 1` (reported
/// only: the angles converge logarithmically slowly).
pub fn table3_limit_rows(x3: f64) -> Vec<TableRow> {
    let near0 = right_triangle_row(Family::Fibre, LIMIT_PARAM, x3, "->0".into(), LIMIT_PARAM);
    let near1 = 1.0 - LIMIT_PARAM;
    let near1 = right_triangle_row(Family::Fibre, near1, x3, "->1".into(), near1);
    vec![
        limit_row(near0, [FRAC_PI_2, x3.atan(), FRAC_PI_2, 0.0, PI], true),
        limit_row(near1, [0.0, f64::INFINITY, 0.0, FRAC_PI_2, PI], false),
    ]
}

/// Rows of the hyperbolic-like family `A3 = (0, 0, z³)` for each `z³`.
pub fn run_table4(y2: f64, z3_values: &[f64]) -> Vec<TableRow> {
    z3_values
        .iter()
        .map(|&z3| right_triangle_row(Family::Hyperbolic, y2, z3, label_for(z3, &TABLE4_Z3), z3))
        .collect()
}

/// Limit row `z³ → 0`, checked at [`LIMIT_PARAM`].
pub fn table4_limit_rows(y2: f64) -> Vec<TableRow> {
    let near0 = right_triangle_row(Family::Hyperbolic, y2, LIMIT_PARAM, "->0".into(), LIMIT_PARAM);
    vec![limit_row(near0, [0.0, y2.atanh(), 0.0, FRAC_PI_2, PI], true)]
}

fn label_for(v: f64, known: &[(f64, &str)]) -> String {
    known
        .iter()
        .find(|(k, _)| *k == v)
        .map_or_else(|| format_sig(v), |(_, l)| l.to_string())
}

fn table_sheet(param: &str, rows: &[TableRow]) -> Sheet {
    let mut sheet = Sheet::new(&[
        param, "alpha23", "d_A2A3", "omega2", "omega3", "sum", "omega1", "alpha32", "kind",
        "label", "limit_deviation", "status",
    ]);
    for r in rows {
        sheet.push(vec![
            r.param.into(),
            r.alpha23.into(),
            r.d.into(),
            r.omega2.into(),
            r.omega3.into(),
            r.sum.into(),
            r.omega1.into(),
            r.alpha32.into(),
            match r.kind {
                RowKind::Data => "data",
                RowKind::Limit => "limit",
            }
            .into(),
            r.label.clone().into(),
            r.limit_deviation.unwrap_or(f64::NAN).into(),
            r.status.label().into(),
        ]);
    }
    sheet
}

// ---------------------------------------------------------------------------
// sweeps

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub y2: f64,
    pub param: f64,
    pub row: TableRow,
}

/// Evaluates a right-angled family on the grid `k/(n+1)`, `k = 1..=n`, for
/// both `y²` and the `A3` parameter, or along the `A3` parameter only when
/// `y2` is fixed.
pub fn run_sweep(family: Family, n: usize, y2: Option<f64>) -> Vec<SweepRow> {
    let grid: Vec<f64> = (1..=n).map(|k| k as f64 / (n + 1) as f64).collect();
    let y_values = y2.map_or_else(|| grid.clone(), |y| vec![y]);
    let mut out = Vec::with_capacity(y_values.len() * grid.len());
    for &y in &y_values {
        for &p in &grid {
            out.push(SweepRow {
                y2: y,
                param: p,
                row: right_triangle_row(family, y, p, String::new(), p),
            });
        }
    }
    out
}

fn sweep_sheet(family: Family, rows: &[SweepRow]) -> Sheet {
    let mut sheet = Sheet::new(&[
        "y2",
        family.param_name(),
        "alpha23",
        "alpha32",
        "d_A2A3",
        "omega1",
        "omega2",
        "omega3",
        "sum",
        "status",
    ]);
    for s in rows {
        let r = &s.row;
        sheet.push(vec![
            s.y2.into(),
            s.param.into(),
            r.alpha23.into(),
            r.alpha32.into(),
            r.d.into(),
            r.omega1.into(),
            r.omega2.into(),
            r.omega3.into(),
            r.sum.into(),
            r.status.label().into(),
        ]);
    }
    sheet
}

// ---------------------------------------------------------------------------
// property suites

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Human-readable bound that every margin measures against.
    pub bound: String,
    pub checked: usize,
    pub failures: usize,
    pub solver_failures: usize,
    /// Smallest slack seen; negative means violated.
    pub worst_margin: f64,
    /// The checked quantity (angle sum, deviation, residual) at the sample
    /// with the smallest slack.
    pub observed_at_worst: f64,
    pub passed: bool,
    pub counterexamples: Vec<Value>,
}

impl SuiteReport {
    pub fn exit(&self) -> ExitStatus {
        if self.solver_failures > 0 {
            ExitStatus::SolverFailure
        } else if !self.passed {
            ExitStatus::InvariantViolation
        } else {
            ExitStatus::Success
        }
    }
}

struct Tally {
    report: SuiteReport,
    strict: bool,
}

impl Tally {
    fn new(suite: Suite, bound: &str) -> Self {
        Tally {
            report: SuiteReport {
                suite: suite.name().into(),
                bound: bound.into(),
                checked: 0,
                failures: 0,
                solver_failures: 0,
                worst_margin: f64::INFINITY,
                observed_at_worst: f64::NAN,
                passed: true,
                counterexamples: Vec::new(),
            },
            strict: false,
        }
    }

    fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    fn example(&mut self, v: Value) {
        if self.report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.report.counterexamples.push(v);
        }
    }

    fn record(&mut self, margin: f64, observed: f64, instance: impl FnOnce() -> Value) {
        self.report.checked += 1;
        if margin.is_nan() {
            self.report.worst_margin = f64::NAN;
            self.report.observed_at_worst = observed;
        } else if margin < self.report.worst_margin {
            self.report.worst_margin = margin;
            self.report.observed_at_worst = observed;
        }
        let ok = if self.strict {
            margin > 0.0
        } else {
            margin >= 0.0
        };
        if !ok {
            self.report.failures += 1;
            let mut v = instance();
            v["margin"] = json!(if margin.is_finite() { Some(margin) } else { None });
            self.example(v);
        }
    }

    fn error(&mut self, e: &GeometryError, instance: Value) {
        self.report.checked += 1;
        if e.is_solver_failure() {
            self.report.solver_failures += 1;
        } else {
            self.report.failures += 1;
        }
        let mut v = instance;
        v["error"] = json!(e.to_string());
        self.example(v);
    }

    fn finish(mut self) -> SuiteReport {
        let r = &mut self.report;
        r.passed = r.failures == 0 && r.solver_failures == 0 && r.checked > 0;
        self.report
    }
}

fn point_json(p: &ModelPoint) -> Value {
    json!([p.x, p.y, p.z])
}

fn triangle_json(t: &Triangle) -> Value {
    match t.chart_points() {
        Ok(pts) => json!({ "vertices": pts.iter().map(point_json).collect::<Vec<_>>() }),
        Err(_) => json!({ "vertices": t.vertices.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>() }),
    }
}

/// Uniform sample from the cube `[-b, b]³` with quadratic form `≤ -depth`.
fn random_chart_point(rng: &mut ChaCha8Rng, b: f64, depth: f64) -> ModelPoint {
    loop {
        let p = ModelPoint::new(
            rng.random_range(-b..=b),
            rng.random_range(-b..=b),
            rng.random_range(-b..=b),
        );
        if p.quadratic_form() <= -depth {
            return p;
        }
    }
}

/// Sine of the chart angle between `A2 - A1` and `A3 - A1`.
fn chart_spread(pts: &[ModelPoint; 3]) -> f64 {
    let u = pts[1].to_vector() - pts[0].to_vector();
    let v = pts[2].to_vector() - pts[0].to_vector();
    u.cross(&v).norm() / (u.norm() * v.norm())
}

/// Random triangle whose vertices are well inside the model and not close to
/// collinear, with `A1` at the origin when `origin` is set.
fn random_triangle(rng: &mut ChaCha8Rng, b: f64, depth: f64, origin: bool) -> Triangle {
    loop {
        let a1 = if origin {
            ModelPoint::ORIGIN
        } else {
            random_chart_point(rng, b, depth)
        };
        let pts = [a1, random_chart_point(rng, b, depth), random_chart_point(rng, b, depth)];
        if chart_spread(&pts) < 1e-2 {
            continue;
        }
        if let Ok(t) = Triangle::from_chart(pts) {
            return t;
        }
    }
}

/// Random triangle in a plane through the origin with light-like normal
/// `(1, cos t, sin t)`.
fn random_lightlike_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    let t = rng.random_range(-PI..PI);
    let v = Vector3::new(1.0, t.cos(), t.sin());
    let e1 = Vector3::new(0.0, -t.sin(), t.cos());
    let e2 = v.cross(&e1).normalize();
    loop {
        let mut pick = || loop {
            let p = ModelPoint::from_vector(
                e1 * rng.random_range(-0.8..=0.8) + e2 * rng.random_range(-0.8..=0.8),
            );
            if p.quadratic_form() <= -0.05 {
                return p;
            }
        };
        let pts = [ModelPoint::ORIGIN, pick(), pick()];
        if chart_spread(&pts) < 1e-2 {
            continue;
        }
        if let Ok(t) = Triangle::from_chart(pts) {
            return t;
        }
    }
}

fn translate_triangle(t: &Triangle, x: &ModelPoint) -> Result<Triangle> {
    let m = translation_to(&x.to_projective())?;
    Ok(Triangle {
        vertices: [
            apply(&m, &t.vertices[0])?.normalized(),
            apply(&m, &t.vertices[1])?.normalized(),
            apply(&m, &t.vertices[2])?.normalized(),
        ],
    })
}

fn chart_deviation(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    let (a, b) = (p.to_chart()?.to_vector(), q.to_chart()?.to_vector());
    Ok((a - b).amax() / (1.0 + a.amax()))
}

fn suite_translation_anglesum(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::TranslationAngleSum, "sum >= pi - 1e-9");
    for _ in 0..n {
        let t = random_triangle(rng, 0.8, 0.05, false);
        match translation_triangle_report(&t) {
            Ok(r) => tally.record(r.angle_sum - (PI - 1e-9), r.angle_sum, || triangle_json(&t)),
            Err(e) => tally.error(&e, triangle_json(&t)),
        }
    }
    tally.finish()
}

fn suite_lightlike_equality(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::LightlikeEquality, "|sum - pi| <= 1e-7");
    for _ in 0..n {
        let t = random_lightlike_triangle(rng);
        let lightlike = plane_normal(&t).map(|v| is_lightlike(&v));
        match translation_triangle_report(&t) {
            Ok(r) => {
                let dev = (r.angle_sum - PI).abs();
                let margin = if lightlike == Ok(true) {
                    1e-7 - dev
                } else {
                    f64::NAN
                };
                tally.record(margin, dev, || triangle_json(&t))
            }
            Err(e) => tally.error(&e, triangle_json(&t)),
        }
    }
    tally.finish()
}

fn suite_nonlightlike_strict(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(
        Suite::NonlightlikeStrict,
        "sum > pi for |-v1^2 + v2^2 + v3^2| >= 0.05 |v|^2",
    )
    .strict();
    let mut done = 0;
    while done < n {
        let t = random_triangle(rng, 0.8, 0.05, true);
        let Ok(v) = plane_normal(&t) else { continue };
        if v.minkowski_square().abs() < 0.05 * v.to_vector().norm_squared() {
            continue;
        }
        done += 1;
        match translation_triangle_report(&t) {
            Ok(r) => tally.record(r.angle_sum - PI, r.angle_sum, || triangle_json(&t)),
            Err(e) => tally.error(&e, triangle_json(&t)),
        }
    }
    tally.finish()
}

/// Altitudes covering the H²-like, light-like and fibre-like regimes.
const ODE_ALPHAS: [f64; 5] = [-1.2, 0.0, std::f64::consts::FRAC_PI_4, 1.0, 1.5];

/// Largest deviation between the integrated and closed-form polar
/// coordinates over `s ∈ [0.05, s_end]`.
pub fn ode_closed_form_deviation(alpha: f64, s_end: f64) -> Result<f64> {
    let dir = Direction::new(0.0, alpha)?;
    let path = integrate_geodesic(&dir, s_end, ODE_STEP)?;
    Ok(path
        .samples
        .iter()
        .filter(|(s, _)| *s >= 0.05)
        .map(|(s, h)| {
            let c = geodesic_polar(*s, alpha);
            (h.r - c.r)
                .abs()
                .max((h.theta - c.theta).abs())
                .max((h.phi - c.phi).abs())
        })
        .fold(0.0, f64::max))
}

fn suite_ode_vs_closed(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::OdeVsClosed, "max |ode - closed form| <= 1e-6");
    let extra = n.saturating_sub(ODE_ALPHAS.len());
    let alphas: Vec<f64> = ODE_ALPHAS
        .iter()
        .copied()
        .take(n)
        .chain((0..extra).map(|_| rng.random_range(-1.55..1.55)))
        .collect();
    for alpha in alphas {
        match ode_closed_form_deviation(alpha, 2.0) {
            Ok(dev) => tally.record(1e-6 - dev, dev, || json!({ "alpha": alpha })),
            Err(e) => tally.error(&e, json!({ "alpha": alpha })),
        }
    }
    tally.finish()
}

fn suite_bvp_roundtrip(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::BvpRoundtrip, "chart residual <= 1e-9");
    for _ in 0..n {
        let p = random_chart_point(rng, 1.5, 0.02);
        match solve_geodesic_to(&p) {
            Ok(sol) => tally.record(1e-9 - sol.residual, sol.residual, || json!({ "target": point_json(&p) })),
            Err(e) => tally.error(&e, json!({ "target": point_json(&p) })),
        }
    }
    tally.finish()
}

/// Slack of the right-angled grid checks for one report, the worst of the
/// angle-sum bound, `ω1 = π/2` and (fibre family) the internal identities.
pub fn grid_margin(family: Family, r: &TriangleReport) -> f64 {
    let alpha23 = r.direction(1, 2).map_or(f64::NAN, |d| d.alpha().abs());
    let alpha32 = r.direction(2, 1).map_or(f64::NAN, |d| d.alpha().abs());
    let right = 1e-8 - (r.omega[0] - FRAC_PI_2).abs();
    match family {
        Family::Fibre => {
            let sum = r.angle_sum - (PI - 1e-7);
            let internal = 1e-8 - (r.omega[2] - (FRAC_PI_2 - alpha23)).abs();
            let equal = 1e-8 - (alpha23 - alpha32).abs();
            sum.min(right).min(internal).min(equal)
        }
        Family::Hyperbolic => (PI + 1e-7 - r.angle_sum).min(right),
    }
}

fn suite_grid(family: Family, n: usize) -> SuiteReport {
    let (suite, bound) = match family {
        Family::Fibre => (
            Suite::FibreGrid,
            "sum >= pi - 1e-7; omega1 = pi/2, omega3 = pi/2 - |alpha23|, |alpha23| = |alpha32| within 1e-8",
        ),
        Family::Hyperbolic => (Suite::HyperbolicGrid, "sum <= pi + 1e-7; omega1 = pi/2 within 1e-8"),
    };
    let mut tally = Tally::new(suite, bound);
    let grid: Vec<f64> = (1..=n).map(|k| k as f64 / (n + 1) as f64).collect();
    for &y2 in &grid {
        for &p in &grid {
            let instance = || json!({ "y2": y2, family.param_name(): p });
            match family.triangle(y2, p).and_then(|t| geodesic_triangle_report(&t)) {
                Ok(r) => tally.record(grid_margin(family, &r), r.angle_sum, instance),
                Err(e) => tally.error(&e, instance()),
            }
        }
    }
    tally.finish()
}

fn suite_closed_form_translations(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(
        Suite::ClosedFormTranslations,
        "closed-form images equal matrix images within 1e-12 (relative)",
    );
    for _ in 0..n {
        let t = random_triangle(rng, 0.8, 0.05, true);
        let dev = (0..3).try_fold(0.0f64, |acc, i| {
            let a = translated_vertices(&t, i)?;
            let b = translated_vertices_by_matrix(&t, i)?;
            (0..3).try_fold(acc, |acc, k| Ok(acc.max(chart_deviation(&a[k], &b[k])?)))
        });
        match dev {
            Ok(dev) => tally.record(1e-12 - dev, dev, || triangle_json(&t)),
            Err(e) => tally.error(&e, triangle_json(&t)),
        }
    }
    tally.finish()
}

/// Largest chart deviation from antipodality among the pairs
/// `(A2, A1²)`, `(A3, A1³)` and `(A3², A2³)`.
pub fn antipodality_deviation(t: &Triangle) -> Result<f64> {
    let t = t.moved_to_origin()?;
    let from2 = translated_vertices_by_matrix(&t, 1)?;
    let from3 = translated_vertices_by_matrix(&t, 2)?;
    let pairs = [
        (t.vertices[1], from2[0]),
        (t.vertices[2], from3[0]),
        (from2[2], from3[1]),
    ];
    pairs.iter().try_fold(0.0f64, |acc, (p, q)| {
        let s = p.to_chart()?.to_vector() + q.to_chart()?.to_vector();
        Ok(acc.max(s.amax()))
    })
}

fn suite_antipodality(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::Antipodality, "antipodal pairs within 1e-10");
    for _ in 0..n {
        let t = random_triangle(rng, 0.8, 0.05, true);
        match antipodality_deviation(&t) {
            Ok(dev) => tally.record(1e-10 - dev, dev, || triangle_json(&t)),
            Err(e) => tally.error(&e, triangle_json(&t)),
        }
    }
    tally.finish()
}

/// Largest entry-wise difference between the finite-difference pull-back of
/// the polar tensor and the inhomogeneous tensor, relative to the largest
/// entry when that exceeds 1.
pub fn pullback_deviation(m: &ModelPoint) -> Result<f64> {
    let fd = pullback_polar(m, 1e-6)?;
    let g = metric_inhomogeneous(m)?;
    Ok((fd.0 - g.0).amax() / g.0.amax().max(1.0))
}

fn suite_metric_pullback(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::MetricPullback, "pull-back deviation <= 1e-5");
    let mut done = 0;
    while done < n {
        let p = random_chart_point(rng, 0.8, 0.1);
        if p.y.hypot(p.z) < 0.1 {
            continue;
        }
        done += 1;
        match pullback_deviation(&p) {
            Ok(dev) => tally.record(1e-5 - dev, dev, || json!({ "point": point_json(&p) })),
            Err(e) => tally.error(&e, json!({ "point": point_json(&p) })),
        }
    }
    tally.finish()
}

/// `|g(v, v) - 1|` for the closed-form velocity at arc length `s`.
pub fn speed_deviation(s: f64, alpha: f64) -> f64 {
    let h = geodesic_polar(s, alpha);
    let (dr, dth, dph) = geodesic_polar_velocity(s, alpha);
    let v = Vector3::new(dr, dth, dph);
    (metric_polar(h.r).inner(&v, &v) - 1.0).abs()
}

fn suite_unit_speed(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(Suite::UnitSpeed, "|g(v, v) - 1| <= 1e-6");
    for _ in 0..n {
        let s = rng.random_range(0.0..3.0);
        let alpha = rng.random_range(-FRAC_PI_2..=FRAC_PI_2);
        let dev = speed_deviation(s, alpha);
        tally.record(1e-6 - dev, dev, || {
            json!({ "s": s, "alpha": alpha })
        });
    }
    tally.finish()
}

fn suite_isometry_invariance(rng: &mut ChaCha8Rng, n: usize) -> SuiteReport {
    let mut tally = Tally::new(
        Suite::IsometryInvariance,
        "angle sums within 1e-7 and geodesic side lengths within 1e-8 after a translation",
    );
    for _ in 0..n {
        let t = random_triangle(rng, 0.6, 0.1, false);
        let x = random_chart_point(rng, 0.6, 0.1);
        let instance = || json!({ "triangle": triangle_json(&t), "translation": point_json(&x) });
        let margin = translate_triangle(&t, &x).and_then(|moved| {
            let a = geodesic_triangle_report(&t)?;
            let b = geodesic_triangle_report(&moved)?;
            let sides = (0..3)
                .map(|k| (a.side_lengths[k] - b.side_lengths[k]).abs())
                .fold(0.0, f64::max);
            let dsum = (a.angle_sum - b.angle_sum).abs();
            Ok(((1e-7 - dsum).min(1e-8 - sides), dsum))
        });
        match margin {
            Ok((m, dsum)) => tally.record(m, dsum, instance),
            Err(e) => tally.error(&e, instance()),
        }
    }
    tally.finish()
}

/// Runs one suite, or every suite for [`Suite::All`]. Each suite draws from
/// its own generator seeded with `seed`, so results do not depend on which
/// other suites ran. `n = None` uses each suite's default count.
pub fn run_verify(suite: Suite, seed: u64, n: Option<usize>) -> Vec<SuiteReport> {
    if suite == Suite::All {
        return Suite::EACH
            .iter()
            .flat_map(|s| run_verify(*s, seed, n))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.unwrap_or(suite.default_n());
    vec![match suite {
        Suite::TranslationAngleSum => suite_translation_anglesum(&mut rng, n),
        Suite::LightlikeEquality => suite_lightlike_equality(&mut rng, n),
        Suite::NonlightlikeStrict => suite_nonlightlike_strict(&mut rng, n),
        Suite::OdeVsClosed => suite_ode_vs_closed(&mut rng, n),
        Suite::BvpRoundtrip => suite_bvp_roundtrip(&mut rng, n),
        Suite::FibreGrid => suite_grid(Family::Fibre, n),
        Suite::HyperbolicGrid => suite_grid(Family::Hyperbolic, n),
        Suite::ClosedFormTranslations => suite_closed_form_translations(&mut rng, n),
        Suite::Antipodality => suite_antipodality(&mut rng, n),
        Suite::MetricPullback => suite_metric_pullback(&mut rng, n),
        Suite::UnitSpeed => suite_unit_speed(&mut rng, n),
        Suite::IsometryInvariance => suite_isometry_invariance(&mut rng, n),
        Suite::All => unreachable!(),
    }]
}

fn verify_sheet(reports: &[SuiteReport]) -> Sheet {
    let mut sheet = Sheet::new(&[
        "suite",
        "passed",
        "checked",
        "failures",
        "solver_failures",
        "worst_margin",
        "observed_at_worst",
        "bound",
        "counterexamples",
    ]);
    for r in reports {
        sheet.push(vec![
            r.suite.clone().into(),
            Cell::Bool(r.passed),
            Cell::Int(r.checked as u64),
            Cell::Int(r.failures as u64),
            Cell::Int(r.solver_failures as u64),
            r.worst_margin.into(),
            r.observed_at_worst.into(),
            r.bound.clone().into(),
            Cell::Json(Value::Array(r.counterexamples.clone())),
        ]);
    }
    sheet
}

// ---------------------------------------------------------------------------
// single computations

fn report_cells(r: &TriangleReport) -> Vec<Cell> {
    vec![
        match r.kind {
            crate::triangles::CurveKind::Geodesic => "geodesic",
            crate::triangles::CurveKind::Translation => "translation",
        }
        .into(),
        r.omega[0].into(),
        r.omega[1].into(),
        r.omega[2].into(),
        r.angle_sum.into(),
        r.side_lengths[0].into(),
        r.side_lengths[1].into(),
        r.side_lengths[2].into(),
        r.classification
            .map_or(String::new(), |c| format!("{c:?}"))
            .into(),
    ]
}

const REPORT_COLUMNS: [&str; 9] = [
    "kind", "omega1", "omega2", "omega3", "sum", "side1", "side2", "side3", "classification",
];

fn arc_sheet(dir: &Direction, s: f64, residual: Option<f64>) -> Sheet {
    let mut sheet = Sheet::new(&["lambda", "alpha", "regime", "s", "residual"]);
    sheet.push(vec![
        dir.lambda().into(),
        dir.alpha().into(),
        format!("{:?}", dir.regime()).into(),
        s.into(),
        residual.unwrap_or(f64::NAN).into(),
    ]);
    sheet
}

fn meta(cfg: &RunConfig, n: Option<usize>) -> Value {
    let version = env!("CARGO_PKG_VERSION");
    let modules = [
        "model_core",
        "isometries",
        "metric",
        "geodesics",
        "translation_curves",
        "triangles",
        "cli_report",
    ];
    let versions: Map<String, Value> = modules
        .iter()
        .map(|m| (m.to_string(), json!(version)))
        .collect();
    json!({
        "command": cfg.command.name(),
        "tolerance": cfg.tol,
        "seed": cfg.seed,
        "n": n,
        "versions": versions,
    })
}

fn render(cfg: &RunConfig, sheet: &Sheet, n: Option<usize>) -> String {
    match cfg.format {
        OutputFormat::Csv => sheet.to_csv(),
        OutputFormat::Json => sheet.to_json(meta(cfg, n)),
    }
}

/// Executes a validated configuration and renders its output.
pub fn run(cfg: &RunConfig) -> std::result::Result<RunOutput, CliError> {
    cfg.validate()?;
    let mut status = ExitStatus::Success;
    let mut n_used = cfg.n;
    let sheet = match &cfg.command {
        Command::Geodesic { from, to } => {
            let sol = connect(from, to)?.ok_or_else(|| {
                CliError::bad_arguments("start and end points coincide")
            })?;
            arc_sheet(&sol.arc.dir, sol.arc.s, Some(sol.residual))
        }
        Command::Translate { from, to } => {
            let arc = translation_arc_between(from, to)?;
            arc_sheet(&arc.dir, arc.s, None)
        }
        Command::Triangle { vertices } => {
            let t = Triangle::from_chart(*vertices)?;
            let mut cols = REPORT_COLUMNS.to_vec();
            cols.push("lightlike");
            let mut sheet = Sheet::new(&cols);
            let g = geodesic_triangle_report(&t)?;
            let mut row = report_cells(&g);
            row.push("".into());
            sheet.push(row);
            match translation_triangle_report(&t) {
                Ok(tr) => {
                    let mut row = report_cells(&tr);
                    row.push(Cell::Bool(plane_normal(&t).map(|v| is_lightlike(&v))?));
                    sheet.push(row);
                }
                Err(GeometryError::DegenerateTriangle(m)) => {
                    log::warn!("translation triangle skipped: {m}");
                }
                Err(e) => return Err(e.into()),
            }
            sheet
        }
        Command::Table3 { x3, y2_values } => {
            let mut rows = match y2_values {
                Some(v) => run_table3(*x3, v),
                None => {
                    let v: Vec<f64> = TABLE3_Y2.iter().map(|(v, _)| *v).collect();
                    let mut rows = table3_limit_rows(*x3);
                    let limit1 = rows.pop();
                    rows.extend(run_table3(*x3, &v));
                    rows.extend(limit1);
                    rows
                }
            };
            rows.iter_mut().for_each(|r| status = status.worst(r.status.exit()));
            table_sheet("y2", &rows)
        }
        Command::Table4 { y2, z3_values } => {
            let rows = match z3_values {
                Some(v) => run_table4(*y2, v),
                None => {
                    let v: Vec<f64> = TABLE4_Z3.iter().map(|(v, _)| *v).collect();
                    let mut rows = table4_limit_rows(*y2);
                    rows.extend(run_table4(*y2, &v));
                    rows
                }
            };
            rows.iter().for_each(|r| status = status.worst(r.status.exit()));
            table_sheet("z3", &rows)
        }
        Command::FindPi { a2, a3_h, a3_f } => {
            let (t, tri) = find_pi_sum_triangle(
                &a2.to_projective(),
                &a3_h.to_projective(),
                &a3_f.to_projective(),
                cfg.tol,
            )?;
            let r = geodesic_triangle_report(&tri)?;
            let a3 = tri.chart_points()?[2];
            let mut sheet = Sheet::new(&[
                "t", "a3_x", "a3_y", "a3_z", "omega1", "omega2", "omega3", "sum", "sum_minus_pi",
            ]);
            sheet.push(vec![
                t.into(),
                a3.x.into(),
                a3.y.into(),
                a3.z.into(),
                r.omega[0].into(),
                r.omega[1].into(),
                r.omega[2].into(),
                r.angle_sum.into(),
                (r.angle_sum - PI).into(),
            ]);
            sheet
        }
        Command::Sweep { family, y2 } => {
            let n = cfg.n.unwrap_or(19);
            n_used = Some(n);
            let rows = run_sweep(*family, n, *y2);
            rows.iter()
                .for_each(|r| status = status.worst(r.row.status.exit()));
            sweep_sheet(*family, &rows)
        }
        Command::Verify { suite } => {
            let reports = run_verify(*suite, cfg.seed, cfg.n);
            reports.iter().for_each(|r| status = status.worst(r.exit()));
            verify_sheet(&reports)
        }
    };
    Ok(RunOutput {
        body: render(cfg, &sheet, n_used),
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(PI), "3.141592654");
        assert_eq!(format_sig(0.0051), "0.005100000000");
        assert_eq!(format_sig(7.51740123456), "7.517401235");
        assert_eq!(format_sig(1e-6), "1.000000000e-6");
        assert_eq!(format_sig(f64::NAN), "");
    }

    #[test]
    fn table3_row() {
        let rows = run_table3(0.2, &[0.75]);
        let r = &rows[0];
        assert_eq!(r.status, RowStatus::Ok);
        assert_abs_diff_eq!(r.alpha23, 0.1630, epsilon = 5e-4);
        assert_abs_diff_eq!(r.d, 0.9891, epsilon = 5e-4);
        assert_abs_diff_eq!(r.omega2, 0.2043, epsilon = 5e-4);
        assert_abs_diff_eq!(r.omega3, 1.4078, epsilon = 5e-4);
        assert_abs_diff_eq!(r.sum, 3.1829, epsilon = 5e-4);
    }

    #[test]
    fn limit_rows() {
        let rows = table3_limit_rows(0.2);
        assert_eq!(rows[0].status, RowStatus::LimitPass, "{:?}", rows[0]);
        assert_eq!(rows[1].status, RowStatus::LimitReported);
        let rows = table4_limit_rows(0.5);
        assert_eq!(rows[0].status, RowStatus::LimitPass, "{:?}", rows[0]);
    }

    #[test]
    fn suites_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn csv_and_json_shapes() {
        let cfg = RunConfig::new(Command::Table3 {
            x3: 0.2,
            y2_values: Some(vec![0.5]),
        });
        let out = run(&cfg).unwrap();
        assert_eq!(out.status, ExitStatus::Success);
        assert!(out
            .body
            .starts_with("y2,alpha23,d_A2A3,omega2,omega3,sum,"));
        let json_cfg = RunConfig {
            format: OutputFormat::Json,
            ..cfg
        };
        let v: Value = serde_json::from_str(&run(&json_cfg).unwrap().body).unwrap();
        assert_eq!(v["meta"]["seed"], json!(DEFAULT_SEED));
        assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn bad_arguments() {
        let cfg = RunConfig::new(Command::Table4 {
            y2: 1.5,
            z3_values: None,
        });
        assert_eq!(run(&cfg).unwrap_err().status, ExitStatus::BadArguments);
        let mut cfg = RunConfig::new(Command::Verify { suite: Suite::UnitSpeed });
        cfg.tol = -1.0;
        assert_eq!(run(&cfg).unwrap_err().status, ExitStatus::BadArguments);
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::UnitSpeed, Suite::Antipodality, Suite::ClosedFormTranslations] {
            let r = &run_verify(suite, 7, Some(20))[0];
            assert!(r.passed, "{r:?}");
        }
    }
}
