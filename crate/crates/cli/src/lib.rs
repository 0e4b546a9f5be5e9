//! Request evaluation and output encoding for the `p3bundles` binary.
//!
//! Single queries and sweeps produce [`Record`]s with one shared schema;
//! `verify` produces one [`SuiteRecord`] per suite. Core errors never abort a
//! run: they become status records. Only missing or contradictory flags are
//! usage errors.

use std::fmt;

use p3bundles_core::bundle::{
    classify_rank2, classify_rank3, rank2_chern, rank2_thresholds, rank3_chern_any, rank3_thresholds,
};
use p3bundles_core::cohomology::cohomology;
use p3bundles_core::moduli::{
    rank2_dim_bounds, rank2_ed, rank2_exact_dim, rank3_ed, rank3_hyperplane_report, rank3_line_h1_k_large,
    rank3_line_report_k2, rank3_line_report_k3,
};
use p3bundles_core::verify::{self, Formula, Formulas, Grids, Suite};
use p3bundles_core::{BundleSpec, DivisorClass, Error, ExactRational, IntRange, ModuliReport, SurfaceClass, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest number of grid points a sweep may visit.
pub const MAX_SWEEP_POINTS: u64 = 10_000_000;

/// CSV columns shared by every query and sweep record. The first sixteen are
/// the stable interface; the rest carry command-specific detail.
pub const COLUMNS: [&str; 30] = [
    "k",
    "nu",
    "c1",
    "a",
    "b",
    "l",
    "status",
    "c2",
    "c3",
    "dim_Y",
    "ed",
    "h1_end_lo",
    "h1_end_hi",
    "h2_end_lo",
    "h2_end_hi",
    "codim_bound",
    "rank",
    "j",
    "reason_code",
    "reason",
    "error",
    "h0",
    "h1",
    "h2",
    "chi",
    "dim_M_lo",
    "dim_M_hi",
    "smooth_at_e",
    "printed_upper",
    "thresholds",
];

pub const SUITE_COLUMNS: [&str; 3] = ["suite", "checks_passed", "checks_failed"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Cohom,
    Classify,
    Chern,
    Thresholds,
    Moduli,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cohom => "cohom",
            Command::Classify => "classify",
            Command::Chern => "chern",
            Command::Thresholds => "thresholds",
            Command::Moduli => "moduli",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Named integer arguments of a single query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
}

/// Inclusive integer interval for a sweep axis. `lo > hi` is an empty axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Axis {
    pub lo: i64,
    pub hi: i64,
}

impl Axis {
    fn len(self) -> u64 {
        if self.lo > self.hi {
            0
        } else {
            self.hi.abs_diff(self.lo) + 1
        }
    }
}

impl Serialize for Axis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    /// `lo..hi` (inclusive) or a single integer.
    fn from_str(text: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad range endpoint {t:?}: {e}"));
        match text.split_once("..") {
            Some((lo, hi)) => Ok(Axis { lo: parse(lo)?, hi: parse(hi.strip_prefix('=').unwrap_or(hi))? }),
            None => {
                let v = parse(text)?;
                Ok(Axis { lo: v, hi: v })
            }
        }
    }
}

/// Sweep axes, iterated lexicographically in field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Axes {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Axis>,
}

impl Axes {
    fn list(&self) -> [Option<Axis>; 8] {
        [self.rank, self.k, self.nu, self.c1, self.a, self.b, self.l, self.j]
    }

    fn points(&self) -> u64 {
        self.list().iter().flatten().fold(1u64, |n, axis| n.saturating_mul(axis.len()))
    }

    fn params(values: &[Option<i64>; 8]) -> Params {
        let [rank, k, nu, c1, a, b, l, j] = *values;
        Params { rank, k, nu, c1, a, b, l, j }
    }

    /// Calls `f` on every grid point in lexicographic order.
    fn for_each(&self, mut f: impl FnMut(Params)) {
        let axes = self.list();
        if self.points() == 0 {
            return;
        }
        let mut current: [Option<i64>; 8] = axes.map(|a| a.map(|a| a.lo));
        loop {
            f(Self::params(&current));
            let mut i = axes.len();
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if let (Some(axis), Some(v)) = (axes[i], current[i]) {
                    if v < axis.hi {
                        current[i] = Some(v + 1);
                        break;
                    }
                    current[i] = Some(axis.lo);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Request {
    Query { command: Command, params: Params },
    Sweep { command: Command, axes: Axes },
    Verify { suites: Vec<Suite>, shift: Option<(Formula, i64)> },
}

/// Missing, contradictory or out-of-range flags. Maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Flags present in a query or sweep, by name.
struct Present([bool; 8]);

impl Present {
    fn of_params(p: &Params) -> Self {
        Present([p.rank, p.k, p.nu, p.c1, p.a, p.b, p.l, p.j].map(|v| v.is_some()))
    }

    fn of_axes(a: &Axes) -> Self {
        Present(a.list().map(|v| v.is_some()))
    }

    fn has(&self, name: &str) -> bool {
        let i = ["rank", "k", "nu", "c1", "a", "b", "l", "j"].iter().position(|n| *n == name).expect("known flag");
        self.0[i]
    }
}

/// `beyond_rank2` says whether some requested rank differs from 2.
fn check_required(command: Command, p: &Present, beyond_rank2: bool) -> Result<(), UsageError> {
    let need = |names: &[&str]| -> Result<(), UsageError> {
        let missing: Vec<String> = names.iter().filter(|n| !p.has(n)).map(|n| format!("--{n}")).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(usage(format!("{} requires {}", command.name(), missing.join(", "))))
        }
    };
    if command == Command::Cohom {
        return need(&["k", "a", "b"]);
    }
    need(&["rank"])?;
    if p.has("j") {
        return Err(usage(format!("--j only applies to cohom, not {}", command.name())));
    }
    if !p.has("k") && !(p.has("nu") && p.has("c1")) {
        return Err(usage(format!("{} requires --k or both --nu and --c1", command.name())));
    }
    if p.has("l") && (p.has("a") || p.has("b")) {
        return Err(usage("--l (hyperplane family) cannot be combined with --a/--b"));
    }
    if command == Command::Moduli && !p.has("l") && !beyond_rank2 {
        return need(&["b"]);
    }
    if !p.has("l") {
        return need(&["a", "b"]);
    }
    Ok(())
}

/// One query or sweep point. Every field is present in every record so the
/// schema does not depend on the outcome.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Record {
    pub rank: Option<i64>,
    pub k: Option<i64>,
    pub nu: Option<i64>,
    pub c1: Option<i64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub l: Option<i64>,
    pub j: Option<i64>,
    pub status: String,
    pub reason_code: Option<String>,
    pub reason: Option<String>,
    pub error: Option<String>,
    pub c2: Option<i64>,
    pub c3: Option<i64>,
    #[serde(rename = "dim_Y")]
    pub dim_y: Option<i64>,
    pub ed: Option<i64>,
    pub h1_end: Option<IntRange>,
    pub h2_end: Option<IntRange>,
    #[serde(rename = "dim_M")]
    pub dim_m: Option<IntRange>,
    pub codim_bound: Option<i64>,
    pub smooth_at_e: Option<bool>,
    pub printed_upper: Option<ExactRational>,
    pub h0: Option<i64>,
    pub h1: Option<i64>,
    pub h2: Option<i64>,
    pub chi: Option<i64>,
    pub thresholds: Option<Value>,
    #[serde(skip)]
    fault: bool,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::LatticeUndefined { .. } => "LatticeUndefined",
        Error::Precondition(_) => "Precondition",
        Error::OutOfRegime(_) => "OutOfRegime",
        Error::UnsupportedRank(_) => "UnsupportedRank",
        Error::NotAdmissible(_) => "NotAdmissible",
        Error::ArithmeticFault(_) => "ArithmeticFault",
    }
}

impl Record {
    fn from_params(p: &Params) -> Self {
        Record { rank: p.rank, k: p.k, nu: p.nu, c1: p.c1, a: p.a, b: p.b, l: p.l, j: p.j, ..Default::default() }
    }

    pub fn is_fault(&self) -> bool {
        self.fault
    }

    fn fill_spec(&mut self, spec: &BundleSpec) {
        self.k = Some(spec.k());
        self.nu = Some(spec.nu());
        self.c1 = Some(spec.c1());
        match *spec {
            BundleSpec::Rank2 { a, b, .. } | BundleSpec::Rank3Line { a, b, .. } => {
                self.a = Some(a);
                self.b = Some(b);
            }
            BundleSpec::Rank3Hyperplane { l, .. } => self.l = Some(l),
        }
    }

    fn fill_verdict(&mut self, v: &Verdict) {
        self.status = v.status.to_string();
        self.reason_code = Some(v.reason.code.to_string());
        self.reason = Some(v.reason.text.clone());
    }

    /// Records `e` as the outcome. The status only changes if nothing has set it.
    fn fail(&mut self, e: &Error) {
        if self.status.is_empty() {
            self.status = error_kind(e).to_string();
        }
        self.fault |= e.is_fault();
        self.error = Some(e.to_string());
    }

    fn fill_report(&mut self, r: &ModuliReport) {
        self.dim_y = Some(r.dim_y);
        self.ed = Some(r.ed);
        self.h1_end = Some(r.h1_end);
        self.h2_end = Some(r.h2_end);
        self.dim_m = Some(r.dim_m);
        self.codim_bound = r.codim_bound;
        self.smooth_at_e = r.smooth_at_e;
        self.printed_upper = r.printed_upper;
    }

    fn csv_row(&self) -> Vec<String> {
        let int = |v: Option<i64>| v.map(|v| v.to_string()).unwrap_or_default();
        let lo = |r: Option<IntRange>| int(r.map(|r| r.lo));
        let hi = |r: Option<IntRange>| int(r.map(|r| r.hi));
        vec![
            int(self.k),
            int(self.nu),
            int(self.c1),
            int(self.a),
            int(self.b),
            int(self.l),
            self.status.clone(),
            int(self.c2),
            int(self.c3),
            int(self.dim_y),
            int(self.ed),
            lo(self.h1_end),
            hi(self.h1_end),
            lo(self.h2_end),
            hi(self.h2_end),
            int(self.codim_bound),
            int(self.rank),
            int(self.j),
            self.reason_code.clone().unwrap_or_default(),
            self.reason.clone().unwrap_or_default(),
            self.error.clone().unwrap_or_default(),
            int(self.h0),
            int(self.h1),
            int(self.h2),
            int(self.chi),
            lo(self.dim_m),
            hi(self.dim_m),
            self.smooth_at_e.map(|v| v.to_string()).unwrap_or_default(),
            self.printed_upper.map(|v| v.0.to_string()).unwrap_or_default(),
            self.thresholds.as_ref().map(|v| v.to_string()).unwrap_or_default(),
        ]
    }
}

/// Builds the bundle spec from `--nu/--c1` or from `--k`.
fn spec_of(p: &Params) -> Result<BundleSpec, Error> {
    let rank = p.rank.expect("rank checked");
    if let (Some(nu), Some(c1)) = (p.nu, p.c1) {
        let spec = match (rank, p.l) {
            (2, None) => BundleSpec::Rank2 { nu, c1, a: p.a.unwrap_or(0), b: p.b.expect("b checked") },
            (3, None) => BundleSpec::Rank3Line { nu, c1, a: p.a.expect("a checked"), b: p.b.expect("b checked") },
            (3, Some(l)) => BundleSpec::Rank3Hyperplane { nu, c1, l },
            (2, Some(_)) => return Err(Error::Precondition("the hyperplane family has rank 3".into())),
            _ => return Err(Error::UnsupportedRank(u32::try_from(rank).unwrap_or(u32::MAX))),
        };
        spec.validate()?;
        if let Some(k) = p.k {
            if k != spec.k() {
                return Err(Error::Precondition(format!("k = {k} but {spec} lives on degree {}", spec.k())));
            }
        }
        return Ok(spec);
    }
    let k = p.k.expect("k checked");
    match (rank, p.l) {
        (2, None) => BundleSpec::rank2_on(k, p.a.unwrap_or(0), p.b.expect("b checked")),
        (3, None) => BundleSpec::rank3_line_on(k, p.a.expect("a checked"), p.b.expect("b checked")),
        (3, Some(l)) => BundleSpec::rank3_hyperplane_on(k, l),
        (2, Some(_)) => Err(Error::Precondition("the hyperplane family has rank 3".into())),
        _ => Err(Error::UnsupportedRank(u32::try_from(rank).unwrap_or(u32::MAX))),
    }
}

fn classify(spec: &BundleSpec) -> Result<Verdict, Error> {
    match spec {
        BundleSpec::Rank2 { .. } => classify_rank2(spec),
        _ => classify_rank3(spec),
    }
}

fn eval_cohom(p: &Params) -> Record {
    let mut r = Record::from_params(p);
    let d = DivisorClass::twisted(p.a.expect("a"), p.b.expect("b"), p.j.unwrap_or(0));
    match SurfaceClass::new(p.k.expect("k")).and_then(|s| cohomology(d, &s)) {
        Ok(h) => {
            r.status = "Ok".into();
            r.h0 = Some(h.h0);
            r.h1 = Some(h.h1);
            r.h2 = Some(h.h2);
            r.chi = Some(h.chi);
        }
        Err(e) => r.fail(&e),
    }
    r
}

fn eval_bundle(command: Command, p: &Params) -> Record {
    let mut r = Record::from_params(p);
    let spec = match spec_of(p) {
        Ok(spec) => spec,
        Err(e) => {
            r.fail(&e);
            return r;
        }
    };
    r.fill_spec(&spec);
    let verdict = match classify(&spec) {
        Ok(v) => v,
        Err(e) => {
            r.fail(&e);
            return r;
        }
    };
    r.fill_verdict(&verdict);
    if let Err(e) = fill_command(command, &spec, &mut r) {
        r.fail(&e);
    }
    r
}

fn fill_command(command: Command, spec: &BundleSpec, r: &mut Record) -> Result<(), Error> {
    let admissible = matches!(r.status.as_str(), "Stable" | "Unknown");
    if admissible || command == Command::Chern {
        let chern = match spec {
            BundleSpec::Rank2 { .. } => rank2_chern(spec),
            _ => rank3_chern_any(spec),
        };
        match chern {
            Ok(c) => {
                r.c2 = Some(c.c2);
                r.c3 = Some(c.c3);
                if command == Command::Chern {
                    r.ed = Some(if c.rank == 2 { rank2_ed(c.c1, c.c2) } else { rank3_ed(c.c1, c.c2) });
                }
            }
            Err(e) if command == Command::Chern => return Err(e),
            Err(_) => {}
        }
    }
    match command {
        Command::Classify | Command::Chern | Command::Cohom => Ok(()),
        Command::Thresholds => {
            let value = match spec {
                BundleSpec::Rank2 { .. } => serde_json::to_value(rank2_thresholds(spec)?),
                _ => serde_json::to_value(rank3_thresholds(spec)?),
            };
            r.thresholds = Some(value.map_err(|e| Error::ArithmeticFault(e.to_string()))?);
            Ok(())
        }
        Command::Moduli => {
            let k = spec.k();
            let report = match *spec {
                BundleSpec::Rank2 { b, a, .. } => {
                    if a != 0 {
                        return Err(Error::NotAdmissible("rank 2 moduli counts cover the a = 0 family".into()));
                    }
                    if k >= 4 {
                        rank2_dim_bounds(k, b)?
                    } else {
                        rank2_exact_dim(k, b)?
                    }
                }
                BundleSpec::Rank3Line { a, b, .. } => match k {
                    2 => rank3_line_report_k2(a, b)?,
                    3 => rank3_line_report_k3(a, b)?,
                    _ => rank3_line_h1_k_large(k, a, b)?,
                },
                BundleSpec::Rank3Hyperplane { nu, c1, l } => rank3_hyperplane_report(k, nu, c1, l)?,
            };
            r.fill_report(&report);
            Ok(())
        }
    }
}

/// Evaluates one query point. Required flags must already be checked.
pub fn evaluate(command: Command, p: &Params) -> Record {
    match command {
        Command::Cohom => eval_cohom(p),
        _ => eval_bundle(command, p),
    }
}

/// Per-suite outcome of `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub checks_passed: u64,
    pub checks_failed: u64,
    pub failures: Vec<verify::Failure>,
}

/// Serialized output and the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit_code: u8,
}

impl Request {
    pub fn validate(&self) -> Result<(), UsageError> {
        match self {
            Request::Query { command, params } => {
                check_required(*command, &Present::of_params(params), params.rank.is_some_and(|r| r != 2))
            }
            Request::Sweep { command, axes } => {
                let beyond_rank2 = axes.rank.is_some_and(|r| r.lo != 2 || r.hi != 2);
                check_required(*command, &Present::of_axes(axes), beyond_rank2)?;
                let n = axes.points();
                if n > MAX_SWEEP_POINTS {
                    return Err(usage(format!("sweep has {n} points, limit {MAX_SWEEP_POINTS}")));
                }
                Ok(())
            }
            Request::Verify { suites, .. } => {
                let mut seen = Vec::new();
                for s in suites {
                    if seen.contains(s) {
                        return Err(usage(format!("suite {} listed twice", s.name())));
                    }
                    seen.push(*s);
                }
                Ok(())
            }
        }
    }

    fn query_json(&self, format: Format) -> Value {
        let format = match format {
            Format::Json => "json",
            Format::Csv => "csv",
        };
        match self {
            Request::Query { command, params } => {
                json!({ "command": command.name(), "parameters": params, "format": format })
            }
            Request::Sweep { command, axes } => {
                json!({ "command": "sweep", "of": command.name(), "ranges": axes, "format": format })
            }
            Request::Verify { suites, shift } => json!({
                "command": "verify",
                "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "shift": shift.map(|(f, d)| json!({ "formula": f.name(), "delta": d })),
                "format": format,
            }),
        }
    }
}

fn emit_json<T: Serialize>(query: Value, records: &[T]) -> String {
    let doc = json!({ "schema_version": SCHEMA_VERSION, "query": query, "records": records });
    let mut body = serde_json::to_string_pretty(&doc).expect("records serialize");
    body.push('\n');
    body
}

fn emit_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("records are UTF-8")
}

/// Serializes query or sweep records.
pub fn emit(query: &Request, records: &[Record], format: Format) -> String {
    match format {
        Format::Json => emit_json(query.query_json(format), records),
        Format::Csv => emit_csv(&COLUMNS, records.iter().map(Record::csv_row)),
    }
}

fn emit_suites(query: &Request, records: &[SuiteRecord], format: Format) -> String {
    match format {
        Format::Json => emit_json(query.query_json(format), records),
        Format::Csv => emit_csv(
            &SUITE_COLUMNS,
            records.iter().map(|r| vec![r.suite.clone(), r.checks_passed.to_string(), r.checks_failed.to_string()]),
        ),
    }
}

/// Runs `request`. Exit status 1 means an arithmetic fault or a failed
/// verification check.
pub fn run(request: &Request, format: Format) -> Result<Output, UsageError> {
    request.validate()?;
    match request {
        Request::Query { command, params } => Ok(records_output(request, vec![evaluate(*command, params)], format)),
        Request::Sweep { command, axes } => {
            let mut records = Vec::new();
            axes.for_each(|p| records.push(evaluate(*command, &p)));
            Ok(records_output(request, records, format))
        }
        Request::Verify { suites, shift } => {
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.clone() };
            let formulas = match shift {
                Some((f, d)) => Formulas::shifted(*f, *d),
                None => Formulas::exact(),
            };
            let grids = Grids::default();
            let records: Vec<SuiteRecord> = suites
                .iter()
                .map(|&s| {
                    let report = verify::run(&[s], &grids, &formulas);
                    SuiteRecord {
                        suite: s.name().to_string(),
                        checks_passed: report.checks_passed,
                        checks_failed: report.checks_failed,
                        failures: report.failures,
                    }
                })
                .collect();
            let failed = records.iter().any(|r| r.checks_failed > 0);
            Ok(Output { body: emit_suites(request, &records, format), exit_code: u8::from(failed) })
        }
    }
}

fn records_output(request: &Request, records: Vec<Record>, format: Format) -> Output {
    let fault = records.iter().any(Record::is_fault);
    Output { body: emit(request, &records, format), exit_code: u8::from(fault) }
}
