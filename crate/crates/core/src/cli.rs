//! The `rigidtrace` command line: reads JSON inputs, runs one operation and
//! renders the result as text or JSON.
//!
//! Exit codes: 0 on success, 1 when the input fails validation (the report
//! lists what failed), 2 on usage errors and unreadable or ill-formed
//! input files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bord::{
    evaluate, Bordism, BordismData, FinGroup, GroupData, Representation, RepresentationData,
};
use crate::checks::{acceptance, invariants, selftest, CheckOutcome};
use crate::cyclic::{
    chern_character, hochschild_homology, negative_cyclic, AlgebraData, FDAlgebra,
    IdempotentMatrix, DEFAULT_COMPLEX_CAP,
};
use crate::error::Error;
use crate::fibration::{
    integrate, sections_at, DiagramData, FunctorData, SectionsReport, SECTION_CAP,
};
use crate::field::{parse_vector, Field, FieldSpec, PrimeField, Rationals, Scalar};
use crate::fincat::{check_category, CategoryData, FinCat};
use crate::gamma::{
    is_special, nerve_monoid, Discrete, FinCMonoid, GammaSet, GammaSetDump, MonoidData,
    SpecialReport,
};
use crate::matrix::Matrix;
use crate::nerve::nerve_truncated;
use crate::simplices::category_of_simplices;
use crate::smc::table::{morphism_by_name, object_by_name, SmcData};
use crate::smc::{
    check_smc, find_dual, nerve_smc, trace, DualSearch, DualityDatum, MatrixCategory,
    SymmetricMonoidal, TableSmc, DEFAULT_DUAL_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "rigidtrace",
    version,
    about = "Exact computations with symmetric monoidal categories, traces, fibrations and cyclic homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a finite category or a symmetric monoidal category.
    #[command(group(ArgGroup::new("input").required(true).args(["category", "smc"])))]
    Check {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        smc: Option<PathBuf>,
    },
    /// The nerve of a finite category, truncated at `--bound`.
    Nerve {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Check the special condition of a Γ-set or a Γ-category level by level.
    #[command(group(ArgGroup::new("input").required(true).args(["monoid", "gamma", "smc"])))]
    Special {
        /// Commutative monoid; its Γ-nerve is checked.
        #[arg(long)]
        monoid: Option<PathBuf>,
        /// A dumped Γ-set (level sizes and map tables).
        #[arg(long)]
        gamma: Option<PathBuf>,
        /// Symmetric monoidal category; its Γ-category is checked.
        #[arg(long)]
        smc: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Include the Γ-set tables in the JSON report.
        #[arg(long)]
        dump: bool,
    },
    /// The Grothendieck construction of a diagram of categories.
    Integrate {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Cartesian sections over each `i/I`, compared with the fibers.
    Sections {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// The category of simplices up to dimension `--bound`.
    Simplices {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Search for a dual of an object.
    Dual {
        #[arg(long)]
        smc: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// The categorical trace of an endomorphism.
    Trace {
        #[arg(long)]
        smc: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        endo: PathBuf,
    },
    /// Hochschild homology by the full and the normalized complex.
    Hochschild {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Negative cyclic homology modulo `u^{K+1}`.
    Negcyclic {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        uorder: usize,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// The Chern character of an idempotent matrix.
    Chern {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        idempotent: PathBuf,
        #[arg(long)]
        uorder: usize,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Evaluate a bordism in a representation.
    #[command(name = "bord-eval")]
    BordEval {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        bordism: PathBuf,
    },
    /// Run the acceptance checks and invariants.
    Selftest {
        /// Run only the checks with these ids.
        #[arg(long)]
        only: Vec<String>,
    },
}

/// A failure that ends the command.
#[derive(Debug)]
enum Failure {
    /// Exit 2: unreadable or ill-formed input.
    Input(String),
    /// Exit 1: the input was read but is not valid.
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Input(m),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A finished report: whether validation passed, and both renderings.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            ok: true,
            text,
            json,
        }
    }
}

/// Enumeration caps, overridable through `RIGIDTRACE_CAP`.
#[derive(Clone, Copy)]
struct Caps {
    dual: u128,
    sections: u128,
    complex: usize,
}

impl Caps {
    fn from_env() -> Outcome<Self> {
        match std::env::var("RIGIDTRACE_CAP") {
            Err(_) => Ok(Caps {
                dual: DEFAULT_DUAL_CAP,
                sections: SECTION_CAP,
                complex: DEFAULT_COMPLEX_CAP,
            }),
            Ok(v) => {
                let n: u64 = v.trim().parse().map_err(|_| {
                    Failure::Input(format!(
                        "RIGIDTRACE_CAP must be a non-negative integer, got {v:?}"
                    ))
                })?;
                Ok(Caps {
                    dual: n as u128,
                    sections: n as u128,
                    complex: usize::try_from(n).unwrap_or(usize::MAX),
                })
            }
        }
    }
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit code with everything that would be printed.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let format = cli.format;
    let result = Caps::from_env().and_then(|caps| dispatch(cli.command, caps));
    match result {
        Ok(report) => {
            let body = match format {
                Format::Text => report.text,
                Format::Json => {
                    serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n"
                }
            };
            (if report.ok { 0 } else { 1 }, body)
        }
        Err(Failure::Input(m)) => (2, format!("error: {m}\n")),
        Err(Failure::Invalid(m)) => match format {
            Format::Text => (1, format!("invalid: {m}\n")),
            Format::Json => (
                1,
                serde_json::to_string_pretty(&json!({ "valid": false, "error": m })).expect("json")
                    + "\n",
            ),
        },
    }
}

fn read_text(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: cannot read: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Outcome<T> {
    serde_json::from_str(text).map_err(|e| {
        Failure::Input(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    parse_json(path, &read_text(path)?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn dispatch(command: Command, caps: Caps) -> Outcome<Report> {
    match command {
        Command::Check {
            category: Some(path),
            ..
        } => check_category_cmd(&path),
        Command::Check {
            smc: Some(path), ..
        } => with_smc(&path, |s| s.check()),
        Command::Check { .. } => Err(Failure::Input("give --category or --smc".into())),
        Command::Nerve { category, bound } => nerve_cmd(&category, bound),
        Command::Special {
            monoid,
            gamma,
            smc,
            bound,
            dump,
        } => special_cmd(monoid, gamma, smc, bound, dump),
        Command::Integrate { diagram } => integrate_cmd(&diagram),
        Command::Sections { diagram } => sections_cmd(&diagram, caps),
        Command::Simplices { category, bound } => simplices_cmd(&category, bound),
        Command::Dual { smc, object } => with_smc(&smc, |s| s.dual(&object, caps)),
        Command::Trace { smc, object, endo } => {
            let endo_text = read_text(&endo)?;
            with_smc(&smc, |s| s.trace(&object, &endo, &endo_text, caps))
        }
        Command::Hochschild {
            algebra,
            degree,
            bound,
        } => with_algebra(&algebra, |a| a.hochschild(degree, bound, caps)),
        Command::Negcyclic {
            algebra,
            degree,
            uorder,
            bound,
        } => with_algebra(&algebra, |a| a.negcyclic(degree, uorder, bound, caps)),
        Command::Chern {
            algebra,
            idempotent,
            uorder,
            bound,
        } => {
            let e: Vec<Vec<Vec<Scalar>>> = read_json(&idempotent)?;
            with_algebra(&algebra, |a| a.chern(&e, uorder, bound, caps))
        }
        Command::BordEval {
            group,
            rep,
            bordism,
        } => bord_eval_cmd(&group, &rep, &bordism),
        Command::Selftest { only } => selftest_cmd(&only),
    }
}

fn check_category_cmd(path: &Path) -> Outcome<Report> {
    let data: CategoryData = read_json(path)?;
    let violations = check_category(&data);
    let mut text = String::new();
    if violations.is_empty() {
        writeln!(
            text,
            "valid: {} objects, {} morphisms",
            data.objects.len(),
            data.morphisms.len()
        )
        .unwrap();
    } else {
        writeln!(text, "{} violation(s):", violations.len()).unwrap();
        for v in &violations {
            writeln!(text, "  {v}").unwrap();
        }
    }
    Ok(Report {
        ok: violations.is_empty(),
        text,
        json: json!({ "valid": violations.is_empty(), "violations": violations }),
    })
}

fn load_category(path: &Path) -> Outcome<FinCat> {
    let data: CategoryData = read_json(path)?;
    let violations = check_category(&data);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Failure::Invalid(format!(
            "not a category: {}",
            list.join("; ")
        )));
    }
    Ok(FinCat::from_data(&data)?)
}

fn nerve_cmd(path: &Path, bound: usize) -> Outcome<Report> {
    let cat = load_category(path)?;
    let (sset, _) = nerve_truncated(&cat, bound);
    let failures = sset.check_identities();
    let mut text = String::new();
    for (n, c) in sset.counts.iter().enumerate() {
        writeln!(text, "N_{n}: {c} simplices").unwrap();
    }
    writeln!(
        text,
        "simplicial identities: {}",
        if failures.is_empty() {
            "hold".to_string()
        } else {
            format!("{} failure(s)", failures.len())
        }
    )
    .unwrap();
    Ok(Report {
        ok: failures.is_empty(),
        text,
        json: json!({ "nerve": sset, "identity_failures": failures }),
    })
}

fn special_text(report: &SpecialReport) -> String {
    let mut text = String::new();
    for l in &report.levels {
        writeln!(
            text,
            "level {}: {} ({})",
            l.level,
            if l.ok { "ok" } else { "FAILS" },
            l.detail
        )
        .unwrap();
    }
    match report.first_failure() {
        None => writeln!(text, "special through level {}", report.levels.len() - 1).unwrap(),
        Some(n) => writeln!(text, "not special: first failure at level {n}").unwrap(),
    }
    text
}

fn special_cmd(
    monoid: Option<PathBuf>,
    gamma: Option<PathBuf>,
    smc: Option<PathBuf>,
    bound: usize,
    dump: bool,
) -> Outcome<Report> {
    let (report, table): (SpecialReport, Option<GammaSetDump>) = if let Some(path) = monoid {
        let data: MonoidData = read_json(&path)?;
        let e = FinCMonoid::from_data(&data)?;
        let x = nerve_monoid(&e, bound);
        (is_special(&Discrete(&x), bound), dump.then(|| x.dump()))
    } else if let Some(path) = gamma {
        let d: GammaSetDump = read_json(&path)?;
        let x = GammaSet::from_dump(&d)?;
        let violations = x.functoriality_violations();
        if !violations.is_empty() {
            return Err(Failure::Invalid(format!(
                "not a functor on Γ: {}",
                violations.join("; ")
            )));
        }
        (is_special(&Discrete(&x), bound), dump.then(|| x.dump()))
    } else if let Some(path) = smc {
        return with_smc(&path, |s| s.special(bound));
    } else {
        return Err(Failure::Input("give --monoid, --gamma or --smc".into()));
    };
    let mut json = json!({ "special": report.is_special(), "first_failure": report.first_failure(), "levels": report.levels });
    if let Some(t) = table {
        json["gamma_set"] = to_value(&t);
    }
    Ok(Report {
        ok: report.is_special(),
        text: special_text(&report),
        json,
    })
}

fn load_diagram(path: &Path) -> Outcome<crate::fibration::CatDiagram> {
    let data: DiagramData = read_json(path)?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    Ok(data.to_diagram(dir)?)
}

fn integrate_cmd(path: &Path) -> Outcome<Report> {
    let diagram = load_diagram(path)?;
    let integral = integrate(&diagram)?;
    let total = &integral.fibered.total;
    let proj = &integral.fibered.projection;
    let base = diagram.base();
    let cartesian: Vec<bool> = total
        .morphisms()
        .map(|m| integral.is_cartesian(m))
        .collect();
    let projection = FunctorData {
        objects: total
            .objects()
            .map(|x| base.object_name(proj.obj(x)).to_string())
            .collect(),
        morphisms: total
            .morphisms()
            .map(|m| base.morphism_name(proj.mor(m)).to_string())
            .collect(),
    };
    let lifts = integral.has_cartesian_lifts();
    let mut text = String::new();
    writeln!(
        text,
        "total category: {} objects, {} morphisms",
        total.num_objects(),
        total.num_morphisms()
    )
    .unwrap();
    writeln!(
        text,
        "cartesian morphisms: {}",
        cartesian.iter().filter(|&&c| c).count()
    )
    .unwrap();
    for m in total
        .morphisms()
        .filter(|&m| cartesian[m] && !total.is_identity(m))
    {
        writeln!(
            text,
            "  {}: {} → {}",
            total.morphism_name(m),
            total.object_name(total.src(m)),
            total.object_name(total.tgt(m))
        )
        .unwrap();
    }
    writeln!(text, "every base morphism has cartesian lifts: {lifts}").unwrap();
    Ok(Report {
        ok: lifts,
        text,
        json: json!({ "category": total.to_data(), "cartesian": cartesian, "projection": projection, "fibered": lifts }),
    })
}

fn sections_cmd(path: &Path, caps: Caps) -> Outcome<Report> {
    let diagram = load_diagram(path)?;
    let integral = integrate(&diagram)?;
    let reports: Vec<SectionsReport> = diagram
        .base()
        .objects()
        .map(|i| sections_at(&integral, i, caps.sections))
        .collect::<Result<_, _>>()?;
    let ok = reports.iter().all(|r| r.equivalence);
    let mut text = String::new();
    for r in &reports {
        writeln!(
            text,
            "over {}: {} sections, {} morphisms, fiber has {} objects, evaluation is {}",
            r.object,
            r.sections,
            r.section_morphisms,
            r.fiber_objects,
            if r.equivalence {
                "an equivalence"
            } else {
                "NOT an equivalence"
            }
        )
        .unwrap();
    }
    Ok(Report {
        ok,
        text,
        json: json!({ "roundtrip": ok, "objects": reports }),
    })
}

fn simplices_cmd(path: &Path, bound: usize) -> Outcome<Report> {
    let cat = std::sync::Arc::new(load_category(path)?);
    let sc = category_of_simplices(&cat, bound)?;
    let fibers: Vec<_> = cat.objects().map(|i| sc.fiber_report(i)).collect();
    let ok = fibers.iter().all(|r| r.has_terminal && r.cofibered);
    let total = sc.total();
    let mut text = String::new();
    writeln!(
        text,
        "simplices up to dimension {bound}: {} objects, {} morphisms",
        total.num_objects(),
        total.num_morphisms()
    )
    .unwrap();
    writeln!(text, "vertical morphisms (W): {}", sc.vertical_count()).unwrap();
    for r in &fibers {
        writeln!(
            text,
            "fiber over {}: {} objects, terminal {} ({}), lifts {} of {}{}",
            r.object,
            r.fiber_objects,
            r.terminal_witness,
            if r.has_terminal { "ok" } else { "MISSING" },
            r.lifts_checked - r.missing_lifts.len(),
            r.lifts_checked,
            if r.strictly_cartesian {
                ", strictly cartesian"
            } else {
                ""
            }
        )
        .unwrap();
    }
    Ok(Report {
        ok,
        text,
        json: json!({
            "bound": bound,
            "objects": total.num_objects(),
            "morphisms": total.num_morphisms(),
            "vertical": sc.vertical_count(),
            "fibers": fibers,
        }),
    })
}

fn scalar<F: Field>(f: F, x: &F::Elem) -> Scalar {
    Scalar::from_elem(f, x)
}

fn matrix_value<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    to_value(
        &m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| scalar(f, x)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

fn matrix_text<F: Field>(m: &Matrix<F>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("[] ({}×{})", m.rows(), m.cols());
    }
    let rows: Vec<String> = m
        .format_rows()
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn bord_eval_cmd(group: &Path, rep: &Path, bordism: &Path) -> Outcome<Report> {
    let g = FinGroup::from_data(&read_json::<GroupData>(group)?)?;
    let r: RepresentationData = read_json(rep)?;
    let b: BordismData = read_json(bordism)?;
    let b = Bordism::from_data(&g, &b)?;
    match r.field_spec()? {
        FieldSpec::Rationals => bord_eval_in(Representation::from_data(&g, Rationals, &r)?, &g, &b),
        FieldSpec::Prime(p) => bord_eval_in(
            Representation::from_data(&g, PrimeField::new(p)?, &r)?,
            &g,
            &b,
        ),
    }
}

fn bord_eval_in<F: Field>(rho: Representation<F>, g: &FinGroup, b: &Bordism) -> Outcome<Report> {
    let m = evaluate(&rho, g, b);
    let closed = b.source().is_empty() && b.target().is_empty();
    let text = if closed {
        format!("{}\n", rho.field().format(m.get(0, 0)))
    } else {
        format!("{}\n", matrix_text(&m))
    };
    let mut json = json!({ "bordism": b.describe(g), "source": b.source().to_string(), "target": b.target().to_string(), "matrix": matrix_value(&m) });
    if closed {
        json["scalar"] = to_value(&scalar(rho.field(), m.get(0, 0)));
    }
    Ok(Report::ok(text, json))
}

fn outcome_line(c: &CheckOutcome) -> String {
    format!(
        "[{}] {} {}: {}",
        if c.passed { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        c.detail
    )
}

fn selftest_cmd(only: &[String]) -> Outcome<Report> {
    let (checks, passed, failed) = if only.is_empty() {
        let r = selftest();
        (r.checks, r.passed, r.failed)
    } else {
        let all: Vec<_> = acceptance().into_iter().chain(invariants()).collect();
        if let Some(unknown) = only
            .iter()
            .find(|id| !all.iter().any(|c| c.id == id.as_str()))
        {
            return Err(Failure::Input(format!("no check with id {unknown:?}")));
        }
        let checks: Vec<CheckOutcome> = all
            .iter()
            .filter(|c| only.iter().any(|id| id == c.id))
            .map(|c| c.run())
            .collect();
        let passed = checks.iter().filter(|c| c.passed).count();
        let failed = checks.len() - passed;
        (checks, passed, failed)
    };
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{}", outcome_line(c)).unwrap();
    }
    writeln!(text, "{passed} passed, {failed} failed").unwrap();
    Ok(Report {
        ok: failed == 0,
        text,
        json: json!({ "passed": passed, "failed": failed, "checks": checks }),
    })
}

/// A matrix category given by its field and maximal dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct MatrixSpec {
    field: String,
    #[serde(default)]
    p: Option<u64>,
    maxdim: usize,
}

/// The operations of the CLI that work on any symmetric monoidal category
/// read from a file.
trait SmcCommands {
    fn check(&self) -> Outcome<Report>;
    fn special(&self, bound: usize) -> Outcome<Report>;
    fn dual(&self, object: &str, caps: Caps) -> Outcome<Report>;
    fn trace(&self, object: &str, endo_path: &Path, endo: &str, caps: Caps) -> Outcome<Report>;
}

/// How objects and morphisms of a category are read and shown.
trait Presented: SymmetricMonoidal {
    fn parse_object(&self, s: &str) -> Outcome<Self::Obj>;
    fn parse_morphism(&self, path: &Path, text: &str) -> Outcome<Self::Mor>;
    fn show_object(&self, x: &Self::Obj) -> String;
    fn morphism_value(&self, f: &Self::Mor) -> Value;
    fn morphism_text(&self, f: &Self::Mor) -> String;
    /// A duality datum known in closed form, used when the search is capped.
    fn known_dual(&self, _x: &Self::Obj) -> Option<DualityDatum<Self::Obj, Self::Mor>> {
        None
    }
}

impl<F: Field> Presented for MatrixCategory<F> {
    fn parse_object(&self, s: &str) -> Outcome<usize> {
        let n: usize = s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("object {s:?} is not a dimension")))?;
        if n > self.max_dim() {
            return Err(Failure::Invalid(format!(
                "dimension {n} exceeds maxdim {}",
                self.max_dim()
            )));
        }
        Ok(n)
    }
    fn parse_morphism(&self, path: &Path, text: &str) -> Outcome<Matrix<F>> {
        let rows: Vec<Vec<Scalar>> = parse_json(path, text)?;
        let f = self.field();
        let entries = rows
            .iter()
            .map(|r| parse_vector(f, r))
            .collect::<Result<Vec<_>, _>>()?;
        let cols = entries.first().map_or(0, Vec::len);
        Matrix::from_rows(f, entries.len(), cols, entries).ok_or_else(|| {
            Failure::Input(format!("{}: rows have different lengths", path.display()))
        })
    }
    fn show_object(&self, x: &usize) -> String {
        x.to_string()
    }
    fn morphism_value(&self, f: &Matrix<F>) -> Value {
        matrix_value(f)
    }
    fn morphism_text(&self, f: &Matrix<F>) -> String {
        matrix_text(f)
    }
    fn known_dual(&self, x: &usize) -> Option<DualityDatum<usize, Matrix<F>>> {
        Some(self.standard_duality(*x))
    }
}

impl Presented for TableSmc {
    fn parse_object(&self, s: &str) -> Outcome<usize> {
        Ok(object_by_name(self, s)?)
    }
    fn parse_morphism(&self, path: &Path, text: &str) -> Outcome<usize> {
        let name: String = parse_json(path, text)?;
        Ok(morphism_by_name(self, &name)?)
    }
    fn show_object(&self, x: &usize) -> String {
        self.category().object_name(*x).to_string()
    }
    fn morphism_value(&self, f: &usize) -> Value {
        Value::String(self.category().morphism_name(*f).to_string())
    }
    fn morphism_text(&self, f: &usize) -> String {
        self.category().morphism_name(*f).to_string()
    }
}

impl<A: Presented> SmcCommands for A {
    fn check(&self) -> Outcome<Report> {
        let failures = check_smc(self, 1 << 16);
        let text = if failures.is_empty() {
            format!("valid: {} objects checked\n", self.objects().len())
        } else {
            failures.iter().map(|f| format!("{f}\n")).collect()
        };
        Ok(Report {
            ok: failures.is_empty(),
            text,
            json: json!({ "valid": failures.is_empty(), "violations": failures }),
        })
    }

    fn special(&self, bound: usize) -> Outcome<Report> {
        let x = nerve_smc(self, self.objects(), bound)?;
        let report = is_special(&x, bound);
        Ok(Report {
            ok: report.is_special(),
            text: special_text(&report),
            json: json!({ "special": report.is_special(), "first_failure": report.first_failure(), "levels": report.levels }),
        })
    }

    fn dual(&self, object: &str, caps: Caps) -> Outcome<Report> {
        let x = self.parse_object(object)?;
        Ok(match find_dual(self, &x, caps.dual) {
            DualSearch::Found(d) => Report::ok(
                format!(
                    "dual of {}: {}\nt = {}\nu = {}\n",
                    self.show_object(&d.x),
                    self.show_object(&d.dual),
                    self.morphism_text(&d.t),
                    self.morphism_text(&d.u)
                ),
                json!({
                    "object": self.show_object(&d.x),
                    "rigid": true,
                    "dual": self.show_object(&d.dual),
                    "t": self.morphism_value(&d.t),
                    "u": self.morphism_value(&d.u),
                }),
            ),
            DualSearch::NotRigid(cert) => Report {
                ok: false,
                text: format!("{} is not rigid: {} candidate duals searched exhaustively\n", object, cert.searched.len()),
                json: json!({ "object": object, "rigid": false, "certificate": cert }),
            },
            DualSearch::CapExceeded(cert) => Report {
                ok: false,
                text: format!(
                    "no dual found for {object}; search skipped {} candidate(s) over the cap ({})\n",
                    cert.skipped.len(),
                    cert.skipped.join(", ")
                ),
                json: json!({ "object": object, "rigid": Value::Null, "certificate": cert }),
            },
        })
    }

    fn trace(&self, object: &str, endo_path: &Path, endo: &str, caps: Caps) -> Outcome<Report> {
        let x = self.parse_object(object)?;
        let f = self.parse_morphism(endo_path, endo)?;
        let d = match find_dual(self, &x, caps.dual) {
            DualSearch::Found(d) => d,
            DualSearch::NotRigid(_) => {
                return Err(Failure::Invalid(format!("{object} is not rigid")))
            }
            DualSearch::CapExceeded(_) => match self.known_dual(&x).filter(|d| d.verify(self)) {
                Some(d) => d,
                None => {
                    return Err(Failure::Invalid(format!(
                        "no dual of {object} found within the search cap"
                    )))
                }
            },
        };
        let t = trace(self, &d, &f)?;
        Ok(Report::ok(
            format!("{}\n", self.morphism_text(&t)),
            json!({ "object": self.show_object(&x), "trace": self.morphism_value(&t) }),
        ))
    }
}

fn with_smc(path: &Path, run: impl Fn(&dyn SmcCommands) -> Outcome<Report>) -> Outcome<Report> {
    let text = read_text(path)?;
    let probe: Value = parse_json(path, &text)?;
    if probe.get("maxdim").is_some() {
        let spec: MatrixSpec = parse_json(path, &text)?;
        match FieldSpec::from_tag(&spec.field, spec.p)? {
            FieldSpec::Rationals => run(&MatrixCategory::new(Rationals, spec.maxdim)),
            FieldSpec::Prime(p) => run(&MatrixCategory::new(PrimeField::new(p)?, spec.maxdim)),
        }
    } else {
        let data: SmcData = parse_json(path, &text)?;
        run(&TableSmc::from_data(&data)?)
    }
}

trait AlgebraCommands {
    fn hochschild(&self, degree: usize, bound: Option<usize>, caps: Caps) -> Outcome<Report>;
    fn negcyclic(
        &self,
        degree: usize,
        uorder: usize,
        bound: Option<usize>,
        caps: Caps,
    ) -> Outcome<Report>;
    fn chern(
        &self,
        e: &[Vec<Vec<Scalar>>],
        uorder: usize,
        bound: Option<usize>,
        caps: Caps,
    ) -> Outcome<Report>;
}

impl<F: Field> AlgebraCommands for FDAlgebra<F> {
    fn hochschild(&self, degree: usize, bound: Option<usize>, caps: Caps) -> Outcome<Report> {
        let r = hochschild_homology(self, degree, bound.unwrap_or(degree + 1), caps.complex)?;
        let mut text = format!(
            "HH_{degree}: dimension {} (full complex {}, normalized {})\n",
            r.dim_normalized, r.dim_full, r.dim_normalized
        );
        for rep in &r.representatives {
            writeln!(text, "  class of {rep}").unwrap();
        }
        Ok(Report {
            ok: r.agree(),
            text,
            json: to_value(&r),
        })
    }

    fn negcyclic(
        &self,
        degree: usize,
        uorder: usize,
        bound: Option<usize>,
        caps: Caps,
    ) -> Outcome<Report> {
        let r = negative_cyclic(
            self,
            degree,
            bound.unwrap_or(degree + 2 * uorder + 1),
            uorder,
            caps.complex,
        )?;
        let text = format!(
            "HC⁻_{degree} modulo u^{}: dimension {}; by truncation {:?}; stabilized: {}\n",
            uorder + 1,
            r.dimension,
            r.dims,
            r.stabilized
        );
        Ok(Report::ok(text, to_value(&r)))
    }

    fn chern(
        &self,
        e: &[Vec<Vec<Scalar>>],
        uorder: usize,
        bound: Option<usize>,
        caps: Caps,
    ) -> Outcome<Report> {
        let f = self.field();
        let m = crate::cyclic::AlgebraMatrix::from_data(self, e)?;
        let e = IdempotentMatrix::new(self, m)?;
        let tr = e.trace(self);
        let (c, cycle) = chern_character(
            self,
            &e,
            uorder,
            bound.unwrap_or(2 * uorder + 2),
            caps.complex,
        )?;
        let summary = cycle.summary(&c);
        let coords: Vec<String> = tr.iter().map(|x| f.format(x)).collect();
        let mut text = format!("c_0 = ({}) = {}\n", coords.join(", "), self.format(&tr));
        writeln!(
            text,
            "negative cyclic cycle on the normalized complex, basis {}:",
            c.algebra().labels().join(", ")
        )
        .unwrap();
        for (j, comp) in summary.components.iter().enumerate() {
            writeln!(text, "  u^{j}: {comp}").unwrap();
        }
        writeln!(
            text,
            "lift to u-order {uorder}: {}",
            if summary.verified {
                "verified"
            } else {
                "FAILED"
            }
        )
        .unwrap();
        Ok(Report {
            ok: summary.verified,
            text,
            json: json!({
                "c0": tr.iter().map(|x| scalar(f, x)).collect::<Vec<_>>(),
                "c0_formatted": self.format(&tr),
                "cycle": summary,
            }),
        })
    }
}

fn with_algebra(
    path: &Path,
    run: impl Fn(&dyn AlgebraCommands) -> Outcome<Report>,
) -> Outcome<Report> {
    let data: AlgebraData = read_json(path)?;
    match data.field_spec()? {
        FieldSpec::Rationals => run(&FDAlgebra::from_data(Rationals, &data)?),
        FieldSpec::Prime(p) => run(&FDAlgebra::from_data(PrimeField::new(p)?, &data)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["rigidtrace"]).0, 2);
        assert_eq!(run(["rigidtrace", "frobnicate"]).0, 2);
        assert_eq!(run(["rigidtrace", "check"]).0, 2);
        assert_eq!(run(["rigidtrace", "--help"]).0, 0);
    }

    #[test]
    fn missing_file_exits_two_naming_it() {
        let (code, out) = run(["rigidtrace", "check", "--category", "/nonexistent/cat.json"]);
        assert_eq!(code, 2);
        assert!(out.contains("/nonexistent/cat.json"));
    }

    #[test]
    fn selftest_filter_rejects_unknown_ids() {
        assert_eq!(run(["rigidtrace", "selftest", "--only", "99"]).0, 2);
        let (code, out) = run(["rigidtrace", "selftest", "--only", "7"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("1 passed, 0 failed"));
    }
}
