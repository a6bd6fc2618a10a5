//! Verification suites, their registry, and machine-readable reports.
//!
//! Every check draws its randomness from `check_seed(run seed, "suite.check")`,
//! so adding or removing a check never changes another check's samples, and a
//! suite run alone reproduces its residuals from a full run.

mod config;
mod suites;

pub use config::{ConfigError, ReportFormat, RunConfig};
pub use suites::{smooth_cocycle_sample, CocycleSweep, BogoliubovSuite, CliffordSuite, StringSuite, StringorSuite, TomitaSuite, TwoGroupSuite};

use crate::algebra::{generated_star_algebra, tomita_data, OperatorAlgebra, StandardFormData};
use crate::clifford::{half_space, CliffordModel, HalfSpace, LatticeModel};
use crate::numeric::{format_matrix, ComplexMatrix, TolerancePolicy};
use crate::sampling::{check_seed, sample_rng};
use crate::string_model::StringModel;
use crate::stringor::StringorContext;
use crate::twogroup::AxiomReport;
use serde::{Serialize, Serializer};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

/// JSON has no infinities; they are written as `null`.
fn finite_or_null<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub anchor: String,
    #[serde(serialize_with = "finite_or_null")]
    pub residual: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub tolerance: f64,
    pub pass: bool,
    /// Seconds.
    pub wall_time: f64,
    pub samples: usize,
}

impl CheckRecord {
    pub fn is_exploratory(&self) -> bool {
        self.tolerance == f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub exploratory: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
            exploratory: records.iter().filter(|r| r.is_exploratory()).count(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, records: Vec<CheckRecord>) -> Self {
        let summary = Summary::of(&records);
        Self { config, records, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn record(&self, suite: &str, check: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.suite == suite && r.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON with every `wall_time` zeroed, for comparing runs.
    pub fn to_json_without_timing(&self) -> String {
        let mut copy = self.clone();
        for r in &mut copy.records {
            r.wall_time = 0.0;
        }
        copy.to_json()
    }

    /// One table per suite.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(out, "n = {}, d = {}, seed = {}\n", c.n, c.d, c.seed);
        let s = &self.summary;
        let _ = writeln!(out, "{} checks: {} passed, {} failed, {} exploratory\n", s.total, s.passed, s.failed, s.exploratory);
        let mut suites: Vec<&str> = Vec::new();
        for r in &self.records {
            if !suites.contains(&r.suite.as_str()) {
                suites.push(&r.suite);
            }
        }
        for suite in suites {
            let _ = writeln!(out, "## {suite}\n");
            let _ = writeln!(out, "| check | anchor | residual | tolerance | pass | samples | time (s) |");
            let _ = writeln!(out, "|---|---|---|---|---|---|---|");
            for r in self.records.iter().filter(|r| r.suite == suite) {
                let tol = if r.is_exploratory() { "exploratory".to_string() } else { format!("{:.1e}", r.tolerance) };
                let _ = writeln!(
                    out,
                    "| {} | {} | {:.3e} | {} | {} | {} | {:.2} |",
                    r.check,
                    r.anchor,
                    r.residual,
                    tol,
                    if r.pass { "yes" } else { "**no**" },
                    r.samples,
                    r.wall_time
                );
            }
            out.push('\n');
        }
        out
    }
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Markdown => report.to_markdown(),
    }
}

/// Models shared by the suites of one run, built on first use.
pub struct Environment {
    config: RunConfig,
    tol: TolerancePolicy,
    clifford: OnceLock<CliffordModel>,
    halves: OnceLock<Result<HalfAlgebras, String>>,
    string: OnceLock<Arc<StringModel>>,
    stringor: OnceLock<Result<StringorContext, String>>,
}

/// The algebras generated by the two halves of the circle and the modular
/// data of the vacuum for the first.
pub struct HalfAlgebras {
    pub first: OperatorAlgebra,
    pub second: OperatorAlgebra,
    pub standard_form: StandardFormData,
}

impl Environment {
    pub fn new(config: RunConfig) -> Self {
        Self {
            config,
            tol: TolerancePolicy::default(),
            clifford: OnceLock::new(),
            halves: OnceLock::new(),
            string: OnceLock::new(),
            stringor: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn tol(&self) -> TolerancePolicy {
        self.tol
    }

    pub fn clifford(&self) -> &CliffordModel {
        self.clifford.get_or_init(|| {
            CliffordModel::new(LatticeModel::new(self.config.n, self.config.d).expect("validated configuration"))
        })
    }

    pub fn halves(&self) -> Result<&HalfAlgebras, String> {
        self.halves
            .get_or_init(|| {
                let model = self.clifford();
                let half = |which| {
                    let gens: Vec<_> = model
                        .generator_indices(&half_space(model.lattice(), which))
                        .into_iter()
                        .map(|i| model.generator(i).clone())
                        .collect();
                    generated_star_algebra(&gens, self.tol).map_err(|e| e.to_string())
                };
                let first = half(HalfSpace::First)?;
                let second = half(HalfSpace::Second)?;
                let standard_form = tomita_data(&first, &model.vacuum(), self.tol).map_err(|e| e.to_string())?;
                Ok(HalfAlgebras { first, second, standard_form })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn string(&self) -> &Arc<StringModel> {
        self.string
            .get_or_init(|| Arc::new(StringModel::from_clifford(self.clifford().clone(), self.tol)))
    }

    pub fn stringor(&self) -> Result<&StringorContext, String> {
        self.stringor
            .get_or_init(|| StringorContext::new(self.string().clone()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Writes the modular conjugation's linear part, the modular operator and,
/// when spin is available, the lift of one sampled loop into `dir`.
pub fn write_dumps(config: &RunConfig, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let env = Environment::new(config.clone());
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut write = |name: &str, m: &ComplexMatrix| -> std::io::Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, format_matrix(m))?;
        written.push(path);
        Ok(())
    };
    if let Ok(halves) = env.halves() {
        write("modular_conjugation.txt", halves.standard_form.j.linear_part())?;
        write("modular_operator.txt", &halves.standard_form.delta)?;
    }
    if config.d >= 2 {
        let m = env.string();
        let mut rng = sample_rng(check_seed(config.seed, "dump.lift"), 0);
        if let Ok(lift) = m.lift(&m.random_loop(&mut rng)) {
            write("sample_lift.txt", lift.unitary())?;
        }
    }
    Ok(written)
}

/// A named group of checks.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    /// Whether the suite applies at this configuration; `all` skips the
    /// others and an explicit selection is a configuration error.
    fn applies(&self, config: &RunConfig) -> bool {
        let _ = config;
        true
    }
    fn run(&self, env: &Environment, checks: &mut Checks);
}

/// Suites by name, in dependency order.
pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut registry = Self { suites: Vec::new() };
        registry.register(Box::new(CliffordSuite));
        registry.register(Box::new(BogoliubovSuite));
        registry.register(Box::new(TomitaSuite));
        registry.register(Box::new(TwoGroupSuite));
        registry.register(Box::new(StringSuite));
        registry.register(Box::new(StringorSuite));
        registry
    }
}

impl SuiteRegistry {
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    /// The selected suites in registry order.
    pub fn select(&self, config: &RunConfig) -> Result<Vec<&dyn Suite>, ConfigError> {
        let everything = config.suites.iter().any(|s| s == "all");
        for name in &config.suites {
            if name != "all" && !self.suites.iter().any(|s| s.name() == name) {
                return Err(ConfigError::UnknownSuite(name.clone()));
            }
        }
        let mut out = Vec::new();
        for suite in &self.suites {
            let explicit = config.suites.iter().any(|s| s == suite.name());
            if !(everything || explicit) {
                continue;
            }
            if suite.applies(config) {
                out.push(suite.as_ref());
            } else if explicit {
                return Err(ConfigError::NeedsSpin { suite: suite.name().into() });
            }
        }
        Ok(out)
    }

    pub fn run(&self, config: &RunConfig) -> Result<Report, ConfigError> {
        config.validate()?;
        let selected = self.select(config)?;
        let env = Environment::new(config.clone());
        let mut records = Vec::new();
        for suite in selected {
            let mut checks = Checks::new(suite.name(), config);
            suite.run(&env, &mut checks);
            records.extend(checks.records);
        }
        Ok(Report::new(config.clone(), records))
    }
}

/// Runs the standard registry.
pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    SuiteRegistry::default().run(config)
}

/// How a residual is judged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Passes at or below the tolerance; `--tol` replaces it.
    Gate(f64),
    /// A count or dimension that must match exactly; never overridden.
    Exact,
    /// Reported only: infinite tolerance.
    Explore,
}

impl Bound {
    fn tolerance(self, config: &RunConfig) -> f64 {
        match self {
            Bound::Gate(tol) => config.tolerance_or(tol),
            Bound::Exact => 0.0,
            Bound::Explore => f64::INFINITY,
        }
    }
}

/// Collects the records of one suite. Each check gets its own seed and
/// sample count; a panic inside a check is recorded as a failure with an
/// infinite residual. Records produced by one measurement share its wall
/// time.
pub struct Checks {
    suite: &'static str,
    config: RunConfig,
    records: Vec<CheckRecord>,
}

impl Checks {
    fn new(suite: &'static str, config: &RunConfig) -> Self {
        Self { suite, config: config.clone(), records: Vec::new() }
    }

    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    fn push(&mut self, check: String, anchor: &str, residual: f64, bound: Bound, wall_time: f64, samples: usize) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        let tolerance = bound.tolerance(&self.config);
        self.records.push(CheckRecord {
            suite: self.suite.to_string(),
            check,
            anchor: anchor.to_string(),
            residual,
            tolerance,
            pass: tolerance == f64::INFINITY || residual <= tolerance,
            wall_time,
            samples,
        });
    }

    /// Runs `f(seed, samples)` and turns its output into records
    /// `(suffix, residual, bound)`, named `name.suffix` (or `name` for an
    /// empty suffix). If `f` panics, a single failing record is written.
    pub fn measure<T>(
        &mut self,
        name: &str,
        anchor: &str,
        samples: usize,
        f: impl FnOnce(u64, usize) -> T,
        split: impl FnOnce(T) -> Vec<(String, f64, Bound)>,
    ) {
        let samples = self.config.samples_or(samples);
        let seed = check_seed(self.config.seed, &format!("{}.{}", self.suite, name));
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| split(f(seed, samples))));
        let time = start.elapsed().as_secs_f64();
        match out {
            Ok(rows) => {
                for (suffix, residual, bound) in rows {
                    let check = if suffix.is_empty() { name.to_string() } else { format!("{name}.{suffix}") };
                    self.push(check, anchor, residual, bound, time, samples);
                }
            }
            Err(_) => self.push(name.to_string(), anchor, f64::INFINITY, Bound::Gate(0.0), time, samples),
        }
    }

    /// A single residual.
    pub fn check(&mut self, name: &str, anchor: &str, bound: Bound, samples: usize, f: impl FnOnce(u64, usize) -> f64) {
        self.measure(name, anchor, samples, f, |r| vec![(String::new(), r, bound)]);
    }

    /// One record per residual of an axiom report, all under one bound.
    pub fn axioms(&mut self, name: &str, anchor: &str, bound: Bound, samples: usize, f: impl FnOnce(u64, usize) -> AxiomReport) {
        self.axioms_with(name, anchor, samples, f, |_| bound);
    }

    /// One record per residual of an axiom report, bounded per axiom.
    pub fn axioms_with(
        &mut self,
        name: &str,
        anchor: &str,
        samples: usize,
        f: impl FnOnce(u64, usize) -> AxiomReport,
        bound: impl Fn(&str) -> Bound,
    ) {
        self.measure(name, anchor, samples, f, |report| {
            report.residuals.into_iter().map(|(axiom, r)| {
                let b = bound(&axiom);
                (axiom, r, b)
            }).collect()
        });
    }
}
