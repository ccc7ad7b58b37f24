//! Directive execution and the versioned JSON report.

use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::Representation;
use crate::module::ModuleMap;
use crate::nslie::{subadjacent, validate_nslie};
use crate::operators::{
    check_nijenhuis, check_relative_rb, check_reynolds, check_twisted_rb,
    induced_structures_from_rb, nijenhuis_power_properties,
};
use crate::random;
use crate::rb_cohomology::RBCohomology;
use crate::report::{AxiomReport, Check, CheckJson};
use crate::table::Table;
use crate::tensor::{ccybe_check, r_sharp_equivalence};
use crate::twilled::{DirectSum, StructureKind};
use crate::value::LambdaValue;
use crate::Result;

use super::elaborate::{PlannedDirective, Program, Task};
use super::error::Span;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Largest cochain arity any directive may request.
    pub max_arity: usize,
    pub seed: u64,
    /// Random cochains per arity in `cohomology` directives.
    pub samples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_arity: 4,
            seed: 0,
            samples: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirectiveResult {
    pub text: String,
    pub span: Span,
    pub tag: &'static str,
    pub report: AxiomReport,
    pub elapsed: Duration,
}

impl DirectiveResult {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub input_sha256: String,
    pub options: RunOptions,
    pub constructions: Vec<DirectiveResult>,
    pub directives: Vec<DirectiveResult>,
}

fn tag_of(task: &Task) -> &'static str {
    match task {
        Task::Lie(_) => "lie conformal algebra axioms",
        Task::Module(_) => "module axioms",
        Task::RotaBaxter { phi: None, .. } => "relative rota-baxter identity",
        Task::RotaBaxter { phi: Some(_), .. } => "twisted rota-baxter identity",
        Task::Nijenhuis { powers: None, .. } => "nijenhuis torsion",
        Task::Nijenhuis {
            powers: Some(_), ..
        } => "nijenhuis power identities",
        Task::Reynolds { .. } => "reynolds identity",
        Task::Ccybe { .. } => "conformal classical yang-baxter equation",
        Task::NSLie(_) => "ns-lie identities",
        Task::Twist { .. } => "maurer-cartan twisting",
        Task::Classify { .. } => "twilled classification",
        Task::Cohomology { .. } => "twisted rota-baxter cohomology",
        Task::Unavailable(_) => "construction",
    }
}

fn error_report(e: crate::Error) -> AxiomReport {
    let mut r = AxiomReport::new();
    r.push(Check::verdict(
        "error",
        "engine error",
        false,
        Some(e.to_string()),
    ));
    r
}

fn kind_name(k: StructureKind) -> &'static str {
    match k {
        StructureKind::Twilled => "twilled",
        StructureKind::QuasiTwilled => "quasi-twilled",
        StructureKind::General => "general",
        StructureKind::NotLie => "not lie",
    }
}

fn rota_baxter(t: &ModuleMap, rep: &Representation, phi: Option<&Table>) -> Result<AxiomReport> {
    let mut report = match phi {
        None => check_relative_rb(t, rep)?,
        Some(phi) => check_twisted_rb(t, rep, phi)?,
    };
    if report.passed() {
        let induced = induced_structures_from_rb(t, rep, phi)?;
        report.push(Check::verdict(
            "induced.sum-bracket.kind",
            "twilled classification",
            matches!(
                induced.kind,
                StructureKind::Twilled | StructureKind::QuasiTwilled
            ),
            Some(kind_name(induced.kind).into()),
        ));
        report.extend(induced.report.prefixed("induced"));
    }
    Ok(report)
}

fn twist(sum: &DirectSum, pi: &Table, h: &ModuleMap) -> Result<AxiomReport> {
    let dec = sum.decompose(pi)?;
    let twisted = sum.twist(pi, h)?;
    let cls = sum.classify(&twisted)?;
    let phi2_zero = cls.decomposition.phi2.is_zero();
    let mut report = AxiomReport::new();
    if dec.is_quasi_twilled() {
        let mc = sum.mc_check(&dec, h)?;
        let mc_passed = mc.passed();
        report.extend(mc);
        report.push(Check::verdict(
            "verdicts-agree",
            "maurer-cartan equation and twisted structure",
            mc_passed == phi2_zero,
            None,
        ));
    }
    let note = if dec.is_quasi_twilled() {
        format!("twisted structure is {}", kind_name(cls.kind))
    } else {
        format!(
            "input is not quasi-twilled, so only the twisted structure is checked; twisted structure is {}",
            kind_name(cls.kind)
        )
    };
    report.push(Check::verdict(
        "twisted.phi2-vanishes",
        "twisted structure",
        phi2_zero,
        Some(note),
    ));
    Ok(report)
}

fn classify(sum: &DirectSum, pi: &Table) -> Result<AxiomReport> {
    let cls = sum.classify(pi)?;
    let mut report = cls.report;
    report.push(Check::verdict(
        "classification",
        "twilled classification",
        cls.kind != StructureKind::NotLie,
        Some(kind_name(cls.kind).into()),
    ));
    Ok(report)
}

fn record_table(c: &mut Check, t: &Table, sample: usize, target_names: &[String]) {
    for (idx, v) in t.entries() {
        let mut tuple = vec![format!("sample {sample}")];
        tuple.extend(idx.iter().map(|i| format!("#{i}")));
        c.record(tuple, v.clone(), target_names);
    }
}

struct CohomologyInput<'a> {
    t: &'a ModuleMap,
    rep: &'a Representation,
    phi: &'a Table,
    max_arity: usize,
    element: Option<&'a LambdaValue>,
}

fn cohomology(input: CohomologyInput<'_>, options: &RunOptions, seed: u64) -> Result<AxiomReport> {
    let CohomologyInput {
        t,
        rep,
        phi,
        max_arity,
        element,
    } = input;
    let mut report = AxiomReport::new();
    if max_arity > options.max_arity || max_arity < 2 {
        report.push(Check::verdict(
            "max-arity",
            "arity bound",
            false,
            Some(format!(
                "requested max-arity {max_arity}; allowed range is 2..={}",
                options.max_arity
            )),
        ));
        return Ok(report);
    }
    let c = RBCohomology::new(t, rep, phi)?.with_max_arity(max_arity);
    let (rm, ra) = (rep.space.rank(), rep.algebra.rank());
    let names = rep.algebra.names().to_vec();
    let mut rng = random::seeded(seed);
    for k in 0..max_arity {
        let mut squared = Check::new(format!("d-squared.arity-{k}"), "d_T squares to zero");
        let mut expanded = Check::new(
            format!("expanded-formula.arity-{k}"),
            "expanded coboundary formula",
        );
        let mut linf = Check::new(
            format!("l-infinity.arity-{k}"),
            "twisted l-infinity differential",
        );
        for s in 0..options.samples {
            let f = if k == 0 {
                c.zero_cochain(&random::module_element(&mut rng, ra, 2))?
            } else {
                random::cochain(&mut rng, rm, ra, k, 2)
            };
            let df = c.d_t(&f)?;
            record_table(
                &mut expanded,
                &df.sub(&c.d_t_expanded(&f, true)?),
                s,
                &names,
            );
            if k >= 1 {
                record_table(&mut linf, &df.sub(&c.d_t_via_linf(&f)?), s, &names);
            }
            if k + 2 <= max_arity {
                record_table(&mut squared, &c.d_t(&df)?, s, &names);
            }
        }
        if k + 2 <= max_arity {
            report.push(squared);
        }
        report.push(expanded);
        if k >= 1 {
            report.push(linf);
        }
    }
    if let Some(a) = element {
        let nij = c.check_nijenhuis_element(a)?;
        let passed = nij.passed();
        report.extend(nij.prefixed("element"));
        if passed {
            let triv = c.trivial_deformation_from(a)?;
            report.extend(triv.report.prefixed("trivial-deformation"));
        }
    }
    Ok(report)
}

fn directive_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn execute_task(task: &Task, options: &RunOptions, seed: u64) -> Result<AxiomReport> {
    match task {
        Task::Lie(a) => Ok(a.check_axioms()),
        Task::Module(rep) => Ok(rep.check_module()),
        Task::RotaBaxter { t, rep, phi } => rota_baxter(t, rep, phi.as_ref()),
        Task::Nijenhuis { n, alg, powers } => {
            let mut report = check_nijenhuis(n, alg)?;
            if let Some((k, l)) = powers {
                report.extend(nijenhuis_power_properties(n, alg, *k, *l)?.prefixed("powers"));
            }
            Ok(report)
        }
        Task::Reynolds { r, alg } => check_reynolds(r, alg),
        Task::Ccybe { r, alg } => {
            if r.is_skew() {
                r_sharp_equivalence(r, alg)
            } else {
                ccybe_check(r, alg)
            }
        }
        Task::NSLie(s) => {
            let mut report = validate_nslie(s);
            if report.passed() {
                report.extend(subadjacent(s)?.report);
            }
            Ok(report)
        }
        Task::Twist { sum, pi, h } => twist(sum, pi, h),
        Task::Classify { sum, pi } => classify(sum, pi),
        Task::Cohomology {
            t,
            rep,
            phi,
            max_arity,
            element,
        } => cohomology(
            CohomologyInput {
                t,
                rep,
                phi,
                max_arity: *max_arity,
                element: element.as_ref(),
            },
            options,
            seed,
        ),
        Task::Unavailable(reason) => {
            let mut r = AxiomReport::new();
            r.push(Check::verdict(
                "construction",
                "construction",
                false,
                Some(reason.clone()),
            ));
            Ok(r)
        }
    }
}

/// Run one directive. Results depend only on the directive, its position and
/// the options, so directives may run in any order or in parallel.
pub fn execute(program: &Program, index: usize, options: &RunOptions) -> DirectiveResult {
    let PlannedDirective { text, span, task } = &program.directives[index];
    let start = Instant::now();
    let report = execute_task(task, options, directive_seed(options.seed, index))
        .unwrap_or_else(error_report);
    DirectiveResult {
        text: text.clone(),
        span: *span,
        tag: tag_of(task),
        report,
        elapsed: start.elapsed(),
    }
}

pub fn sha256_hex(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

impl Report {
    /// Assemble the report from directive results given in source order.
    pub fn assemble(
        input: &[u8],
        program: &Program,
        options: &RunOptions,
        directives: Vec<DirectiveResult>,
    ) -> Report {
        let constructions = program
            .failed
            .iter()
            .map(|f| {
                let mut report = AxiomReport::new();
                report.push(Check::verdict(
                    "construction",
                    "construction",
                    false,
                    Some(f.reason.clone()),
                ));
                DirectiveResult {
                    text: f.text.clone(),
                    span: f.span,
                    tag: "construction",
                    report,
                    elapsed: Duration::ZERO,
                }
            })
            .collect();
        Report {
            input_sha256: sha256_hex(input),
            options: options.clone(),
            constructions,
            directives,
        }
    }

    /// Run every directive sequentially.
    pub fn run(input: &[u8], program: &Program, options: &RunOptions) -> Report {
        let results = (0..program.directives.len())
            .map(|i| execute(program, i, options))
            .collect();
        Report::assemble(input, program, options, results)
    }

    fn entries(&self) -> impl Iterator<Item = &DirectiveResult> {
        self.constructions.iter().chain(&self.directives)
    }

    pub fn passed(&self) -> bool {
        self.entries().all(DirectiveResult::passed)
    }

    /// Deterministic JSON; timings are included only on request.
    pub fn to_json(&self, timings: bool) -> String {
        let entry = |r: &DirectiveResult| EntryJson {
            directive: r.text.clone(),
            line: r.span.line,
            column: r.span.col,
            tag: r.tag,
            status: if r.passed() { "pass" } else { "fail" },
            checks: r.report.to_json(),
        };
        let checks: Vec<&Check> = self.entries().flat_map(|r| &r.report.checks).collect();
        let json = ReportJson {
            schema: SCHEMA,
            tool: ToolJson {
                name: "lcakit",
                version: env!("CARGO_PKG_VERSION"),
            },
            input: InputJson {
                sha256: self.input_sha256.clone(),
            },
            options: OptionsJson {
                max_arity: self.options.max_arity,
                seed: self.options.seed,
                samples: self.options.samples,
            },
            constructions: self.constructions.iter().map(entry).collect(),
            directives: self.directives.iter().map(entry).collect(),
            summary: SummaryJson {
                entries: self.constructions.len() + self.directives.len(),
                failed_entries: self.entries().filter(|r| !r.passed()).count(),
                checks: checks.len(),
                failed_checks: checks.iter().filter(|c| !c.passed).count(),
            },
            timings: timings.then(|| {
                self.directives
                    .iter()
                    .map(|r| TimingJson {
                        directive: r.text.clone(),
                        line: r.span.line,
                        micros: r.elapsed.as_micros() as u64,
                    })
                    .collect()
            }),
        };
        let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per entry plus the failing checks with their witnesses.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.entries() {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {}:{} {}\n",
                r.span.line, r.span.col, r.text
            ));
            for c in r.report.checks.iter().filter(|c| !c.passed) {
                out.push_str(&format!("  failed {} ({})", c.name, c.tag));
                if let Some(n) = &c.note {
                    out.push_str(&format!(": {n}"));
                }
                out.push('\n');
                for w in &c.witnesses {
                    out.push_str(&format!(
                        "    at ({}): {}\n",
                        w.tuple.join(", "),
                        w.rendered
                    ));
                }
            }
        }
        let failed = self.entries().filter(|r| !r.passed()).count();
        let total = self.constructions.len() + self.directives.len();
        out.push_str(&format!("{} of {total} passed\n", total - failed));
        out
    }
}

#[derive(Serialize)]
struct ToolJson {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct InputJson {
    sha256: String,
}

#[derive(Serialize)]
struct OptionsJson {
    max_arity: usize,
    seed: u64,
    samples: usize,
}

#[derive(Serialize)]
struct EntryJson {
    directive: String,
    line: usize,
    column: usize,
    tag: &'static str,
    status: &'static str,
    checks: Vec<CheckJson>,
}

#[derive(Serialize)]
struct SummaryJson {
    entries: usize,
    failed_entries: usize,
    checks: usize,
    failed_checks: usize,
}

#[derive(Serialize)]
struct TimingJson {
    directive: String,
    line: usize,
    micros: u64,
}

#[derive(Serialize)]
struct ReportJson {
    schema: u32,
    tool: ToolJson,
    input: InputJson,
    options: OptionsJson,
    constructions: Vec<EntryJson>,
    directives: Vec<EntryJson>,
    summary: SummaryJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Vec<TimingJson>>,
}
