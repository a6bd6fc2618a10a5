//! End-to-end acceptance run over the reference lattice sizes. Prints one
//! PASS/FAIL line per criterion, then the exploratory measurements, and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;
use stringor_core::numeric::TolerancePolicy;
use stringor_core::report::{run, smooth_cocycle_sample, CheckRecord, Report, RunConfig};
use stringor_core::string_model::StringModel;

const CONFIGS: [(usize, usize); 4] = [(1, 2), (2, 2), (2, 3), (3, 2)];
const SEED: u64 = 0x5eed;

/// Records whose `suite.check` name starts with `prefix` must have a finite
/// residual at most `tol`, measured over at least `samples` samples.
struct Rule {
    prefix: &'static str,
    tol: f64,
    samples: usize,
}

const fn rule(prefix: &'static str, tol: f64, samples: usize) -> Rule {
    Rule { prefix, tol, samples }
}

struct Criterion {
    title: &'static str,
    rules: &'static [Rule],
}

const CRITERIA: [Criterion; 9] = [
    Criterion { title: "Clifford relations", rules: &[rule("clifford.relations.anticommutator", 1e-10, 200)] },
    Criterion {
        title: "implementer existence and uniqueness",
        rules: &[
            rule("bogoliubov.implementers.kernel_dimension", 0.0, 50),
            rule("bogoliubov.implementers.oracle_residual", 1e-9, 50),
            rule("bogoliubov.implementers.pin_oracle_agreement", 1e-8, 50),
        ],
    },
    Criterion {
        title: "central extension",
        rules: &[
            rule("bogoliubov.extension.scalar_defect", 1e-8, 50),
            rule("bogoliubov.extension.unit_modulus", 1e-8, 50),
            rule("bogoliubov.extension.cocycle_identity", 1e-8, 50),
        ],
    },
    Criterion { title: "twisted duality", rules: &[rule("tomita.twisted_duality", 1e-8, 1)] },
    Criterion {
        title: "modular theory and canonical implementation",
        rules: &[
            rule("tomita.modular", 1e-9, 1),
            rule("tomita.mirror_is_commutant", 1e-9, 1),
            rule("tomita.canonical_implementation", 1e-9, 20),
        ],
    },
    Criterion {
        title: "string crossed module",
        rules: &[
            rule("string.crossed_module", 1e-8, 100),
            rule("string.disjoint_commutativity", 1e-8, 50),
        ],
    },
    Criterion {
        title: "representation identities",
        rules: &[
            rule("stringor.t_compatibility", 1e-8, 100),
            rule("stringor.alpha_compatibility", 1e-8, 100),
            rule("stringor.well_definedness", 1e-8, 1),
        ],
    },
    Criterion {
        title: "2-group layer",
        rules: &[
            rule("two-group.matrix_round_trip", 1e-10, 1),
            rule("two-group.conjugation_dihedral.round_trip", 1e-10, 1),
            rule("two-group.random_finite.round_trip", 1e-10, 1),
            rule("stringor.two_group_hom", 1e-8, 1),
            rule("stringor.fusion_factorization.homomorphism", 1e-8, 1),
            rule("stringor.f_values.scalar_defect", 1e-8, 1),
        ],
    },
    Criterion {
        title: "pi-level structure",
        rules: &[
            rule("string.pi1_kernel_dimension", 0.0, 1),
            rule("stringor.pi_level.kernel_dimension", 1e-10, 1),
            rule("stringor.pi_level.r1_on_scalars", 1e-10, 1),
            rule("string.pi1_centrality", 1e-10, 1),
            rule("stringor.pi_level.centrality", 1e-10, 1),
        ],
    },
];

fn matches(record: &CheckRecord, prefix: &str) -> bool {
    let name = format!("{}.{}", record.suite, record.check);
    name == prefix || name.strip_prefix(prefix).is_some_and(|rest| rest.starts_with('.'))
}

/// Worst residual over all matching records, or the reasons the rule fails.
fn evaluate(rule: &Rule, reports: &[Report]) -> Result<f64, Vec<String>> {
    let mut worst = 0.0f64;
    let mut problems = Vec::new();
    for report in reports {
        let at = format!("(n={}, d={})", report.config.n, report.config.d);
        let found: Vec<&CheckRecord> = report.records.iter().filter(|r| matches(r, rule.prefix)).collect();
        if found.is_empty() {
            problems.push(format!("{} missing at {at}", rule.prefix));
        }
        for r in found {
            worst = worst.max(r.residual);
            if !(r.residual <= rule.tol) {
                problems.push(format!("{}.{} at {at}: {:e} > {:e}", r.suite, r.check, r.residual, rule.tol));
            }
            if r.samples < rule.samples {
                problems.push(format!("{}.{} at {at}: {} samples < {}", r.suite, r.check, r.samples, rule.samples));
            }
        }
    }
    if problems.is_empty() {
        Ok(worst)
    } else {
        Err(problems)
    }
}

fn report_line(index: usize, title: &str, outcome: Result<String, Vec<String>>) -> bool {
    match outcome {
        Ok(detail) => {
            println!("PASS  {index:>2}. {title}: {detail}");
            true
        }
        Err(problems) => {
            println!("FAIL  {index:>2}. {title}");
            for p in problems {
                println!("        {p}");
            }
            false
        }
    }
}

fn criterion_outcome(criterion: &Criterion, reports: &[Report]) -> Result<String, Vec<String>> {
    let mut worst = 0.0f64;
    let mut problems = Vec::new();
    for rule in criterion.rules {
        match evaluate(rule, reports) {
            Ok(w) => worst = worst.max(w),
            Err(p) => problems.extend(p),
        }
    }
    if problems.is_empty() {
        Ok(format!("worst residual {worst:.1e}"))
    } else {
        Err(problems)
    }
}

fn exploratory(reports: &[Report]) {
    println!();
    println!("exploratory:");
    for report in reports {
        let at = format!("n={}, d={}", report.config.n, report.config.d);
        let value = |suite: &str, check: &str| report.record(suite, check).map_or(f64::NAN, |r| r.residual);
        println!(
            "  {at}: f deviation from 1 {:.1e}, vertex reflection defect {:.3}",
            value("stringor", "f_values.deviation_from_one"),
            value("stringor", "modular_reflection.vertex_defect"),
        );
    }
    for n in [2, 3, 4] {
        let started = Instant::now();
        match StringModel::new(n, 2, TolerancePolicy::default()) {
            Ok(model) => {
                let sweep = smooth_cocycle_sample(&model, 5, SEED);
                println!(
                    "  loop cocycle n={n}, d=2: discrete {:.4}, Fock {:.1e}, difference {:.4} ({:.1}s)",
                    sweep.discrete,
                    sweep.fock,
                    sweep.difference,
                    started.elapsed().as_secs_f64()
                );
            }
            Err(e) => println!("  loop cocycle n={n}, d=2: model failed: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut reports = Vec::new();
    for (n, d) in CONFIGS {
        let t = Instant::now();
        match run(&RunConfig::new(n, d, SEED)) {
            Ok(report) => {
                println!(
                    "ran n={n}, d={d}: {} checks, {} failed ({:.1}s)",
                    report.summary.total,
                    report.summary.failed,
                    t.elapsed().as_secs_f64()
                );
                reports.push(report);
            }
            Err(e) => {
                println!("FAIL  configuration n={n}, d={d}: {e}");
                return ExitCode::FAILURE;
            }
        }
    }
    println!();

    let mut all = true;
    for (i, criterion) in CRITERIA.iter().enumerate() {
        all &= report_line(i + 1, criterion.title, criterion_outcome(criterion, &reports));
    }

    let determinism = CONFIGS[..2]
        .iter()
        .zip(&reports)
        .filter_map(|(&(n, d), first)| match run(&RunConfig::new(n, d, SEED)) {
            Ok(again) if again.to_json_without_timing() == first.to_json_without_timing() => None,
            Ok(_) => Some(format!("reports differ at n={n}, d={d}")),
            Err(e) => Some(format!("rerun at n={n}, d={d} failed: {e}")),
        })
        .collect::<Vec<_>>();
    let outcome = if determinism.is_empty() { Ok("identical reports on rerun".to_string()) } else { Err(determinism) };
    all &= report_line(10, "determinism", outcome);

    exploratory(&reports);
    println!();
    println!("total {:.1}s", started.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
