//! The `eikq` command line: verbs, flags and exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | affirmative verdict, or the construction succeeded |
//! | 1 | negative verdict (not eikonal, not congruent, nothing found) |
//! | 2 | usage error or malformed input |
//! | 3 | numerically inconclusive |
//! | 4 | I/O failure |
//!
//! `--json` puts a machine-readable report on stdout; `-o` writes canonical
//! poly-text. `EIKQ_COLOR=0` turns off ANSI colour, `EIKQ_COLOR=1` forces it.

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{check_eikonal, ResidualSet};
use crate::classifier::{
    classify_float_with, classify_with, congruent_primitive, ClassifyOptions, Verdict,
};
use crate::constructors::{
    cartan_cubic, make_canonical_quartic, make_primitive, search_with_config, NormalFormData,
    PrimitiveSpec, SearchConfig,
};
use crate::error::Error;
use crate::normalform::{extract_normal_form_float_seeded, extract_normal_form_seeded};
use crate::polyring::{parse_matrix_text, to_poly_text, Polynomial, RationalMatrix};

pub use crate::polyring::parse_poly_text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "eikq",
    version,
    about = "Construct, verify and classify eikonal polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a polynomial from one of the built-in families.
    Construct(ConstructArgs),
    /// Check |∇f|² = g²|x|^(2g−2).
    Verify(VerifyArgs),
    /// Decide whether an eikonal quartic is primitive or isoparametric.
    Classify(ClassifyArgs),
    /// Reduce a quartic to its normal form.
    Normalform(NormalformArgs),
    /// Are h_{4,H₁} and h_{4,H₂} congruent?
    Congruent(CongruentArgs),
    /// Search for pencils giving isoparametric quartics.
    SearchPencil(SearchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// h_{g,H} with H = span(e_1, …, e_dimh).
    Primitive,
    /// (Σx²)² − 8(Σ_{i≤k} x_i²)(Σ_{i>k} x_i²).
    Canonical,
    /// x_n³ − 3x_n(x_1² + … + x_{n−1}²).
    Cubic,
    /// The quartic assembled from normal-form data (--data).
    NormalForm,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long = "type", value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 4)]
    pub g: u32,
    #[arg(long, required_if_eq_any([("family", "primitive"), ("family", "canonical"), ("family", "cubic")]))]
    pub n: Option<usize>,
    #[arg(long, required_if_eq("family", "primitive"))]
    pub dimh: Option<usize>,
    #[arg(long, required_if_eq("family", "canonical"))]
    pub k: Option<usize>,
    /// Normal-form data file.
    #[arg(long, required_if_eq("family", "normal-form"))]
    pub data: Option<PathBuf>,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Defaults to the degree of the input.
    #[arg(long)]
    pub g: Option<u32>,
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
    /// Stay on the exact path; needs --rotation.
    #[arg(long, requires = "rotation", conflicts_with = "float")]
    pub exact: bool,
    /// Work in floating point from the start.
    #[arg(long, conflicts_with = "rotation")]
    pub float: bool,
    /// Rotation file: n, then n² rationals row-major.
    #[arg(long)]
    pub rotation: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct NormalformArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
    #[arg(long, requires = "rotation", conflicts_with = "float")]
    pub exact: bool,
    #[arg(long, conflicts_with = "rotation")]
    pub float: bool,
    #[arg(long)]
    pub rotation: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the normal-form data (exact path only).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CongruentArgs {
    pub n: usize,
    pub d1: usize,
    pub d2: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    pub p: usize,
    pub q: usize,
    pub nu: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cayley-conjugated copies per hit.
    #[arg(long, default_value_t = 1)]
    pub conjugations: usize,
    #[arg(long)]
    pub max_hits: Option<usize>,
    /// Write the quartic of the first hit.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Write every hit as normal-form data into this directory.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

/// Why a command stopped early, and with which exit code.
#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Lib(e) => match e {
                Error::NotEikonalEvidence(_) => EXIT_NEGATIVE,
                Error::NoConvergence { .. }
                | Error::ExactFrameUnavailable(_)
                | Error::Inconsistent(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_USAGE,
            },
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    color: bool,
}

impl Ctx<'_> {
    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn json(&mut self, v: &Value) -> Outcome {
        let text = serde_json::to_string_pretty(v).expect("json values serialize");
        self.line(&text)?;
        Ok(EXIT_OK)
    }

    fn line(&mut self, s: &str) -> std::result::Result<(), Failure> {
        writeln!(self.out, "{s}").map_err(|e| Failure::Io(format!("stdout: {e}")))
    }
}

/// Colour on when `EIKQ_COLOR=1`, off when `EIKQ_COLOR=0`, otherwise only
/// for a terminal.
pub fn color_enabled() -> bool {
    match std::env::var("EIKQ_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => io::stdout().is_terminal(),
    }
}

/// Runs one command, writing reports to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    run_with_color(cli, out, err, color_enabled())
}

pub fn run_with_color(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32 {
    let mut ctx = Ctx { out, color };
    let result = match &cli.command {
        Command::Construct(a) => construct(&mut ctx, a),
        Command::Verify(a) => verify(&mut ctx, a),
        Command::Classify(a) => classify(&mut ctx, a),
        Command::Normalform(a) => normalform(&mut ctx, a),
        Command::Congruent(a) => congruent(&mut ctx, a),
        Command::SearchPencil(a) => search(&mut ctx, a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Io(m) => m.clone(),
                Failure::Lib(e) => e.to_string(),
            };
            let _ = writeln!(err, "eikq: {msg}");
            f.code()
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path) -> std::result::Result<Polynomial, Failure> {
    parse_poly_text(&read(path)?).map_err(|e| Failure::Lib(located(path, e)))
}

fn read_rotation(path: Option<&PathBuf>) -> std::result::Result<Option<RationalMatrix>, Failure> {
    path.map(|p| parse_matrix_text(&read(p)?).map_err(|e| Failure::Lib(located(p, e))))
        .transpose()
}

/// Prefixes parse errors with the file they came from.
fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        e => e,
    }
}

fn construct(ctx: &mut Ctx, a: &ConstructArgs) -> Outcome {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::InvalidParameters(format!("--{flag} is required for this type")))
    };
    let f = match a.family {
        Family::Primitive => make_primitive(PrimitiveSpec::new(
            a.g,
            need(a.n, "n")?,
            need(a.dimh, "dimh")?,
        )?)?,
        Family::Canonical => make_canonical_quartic(need(a.n, "n")?, need(a.k, "k")?)?,
        Family::Cubic => cartan_cubic(need(a.n, "n")?)?,
        Family::NormalForm => {
            let path = a
                .data
                .as_ref()
                .ok_or_else(|| Error::InvalidParameters("--data is required".into()))?;
            NormalFormData::parse_text(&read(path)?)
                .map_err(|e| located(path, e))?
                .assemble()?
        }
    };
    let text = to_poly_text(&f);
    if let Some(path) = &a.output {
        write(path, &text)?;
    }
    if a.json {
        return ctx.json(&json!({
            "n": f.nvars(),
            "degree": f.total_degree(),
            "terms": f.len(),
            "poly": text,
        }));
    }
    if a.output.is_none() {
        write!(ctx.out, "{text}").map_err(|e| Failure::Io(format!("stdout: {e}")))?;
    }
    Ok(EXIT_OK)
}

fn verify(ctx: &mut Ctx, a: &VerifyArgs) -> Outcome {
    let f = read_poly(&a.file)?;
    let g = match a.g {
        Some(g) => g,
        None => f.total_degree().ok_or_else(|| {
            Error::InvalidParameters("cannot infer --g from the zero polynomial".into())
        })?,
    };
    let (residuals, detail) = match check_eikonal(&f, g) {
        Ok(r) => (ResidualSet::new(vec![r]), None),
        // The wrong degree is a negative answer, not a usage error.
        Err(e @ (Error::DegreeMismatch { .. } | Error::NotHomogeneous)) => {
            (ResidualSet::new(vec![]), Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let ok = detail.is_none() && residuals.all_zero();
    let summary = residuals.max_magnitude();
    if a.json {
        ctx.json(&json!({
            "g": g,
            "n": f.nvars(),
            "eikonal": ok,
            "residual_summary": summary,
            "residuals": residuals.to_json(),
            "detail": detail,
        }))?;
    } else {
        let verdict = if ok {
            ctx.paint("eikonal", "32")
        } else {
            ctx.paint("not eikonal", "31")
        };
        ctx.line(&format!("{verdict} (g = {g}, n = {})", f.nvars()))?;
        match detail {
            Some(d) => ctx.line(&format!("  {d}"))?,
            None => ctx.line(&format!("  max |residual coefficient| = {summary:.3e}"))?,
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn classify(ctx: &mut Ctx, a: &ClassifyArgs) -> Outcome {
    let f = read_poly(&a.file)?;
    let rotation = read_rotation(a.rotation.as_ref())?;
    let opts = ClassifyOptions {
        tol: a.tol,
        seed: a.seed,
        ..ClassifyOptions::default()
    };
    let report = if a.float {
        classify_float_with(&f.to_float(), &opts)?
    } else {
        classify_with(&f, rotation.as_ref(), &opts)?
    };
    if a.json {
        ctx.json(&report.to_json())?;
    } else {
        let verdict = report.verdict.as_str();
        let verdict = match report.verdict {
            Verdict::Primitive | Verdict::Isoparametric => ctx.paint(verdict, "32"),
            Verdict::NotEikonal => ctx.paint(verdict, "31"),
            Verdict::InconclusiveFloat => ctx.paint(verdict, "33"),
        };
        ctx.line(&format!(
            "{verdict} (n = {}, {})",
            report.n,
            report.arithmetic.as_str()
        ))?;
        let fields = [
            ("p", report.p),
            ("q", report.q),
            ("nu", report.nu),
            ("mu", report.mu),
            ("dimH", report.dim_h),
            ("m1", report.m1),
            ("m2", report.m2),
        ];
        let shown: Vec<String> = fields
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k} = {v}")))
            .collect();
        if !shown.is_empty() {
            ctx.line(&format!("  {}", shown.join(", ")))?;
        }
        if let Some(c) = &report.laplacian_constant {
            ctx.line(&format!("  Δf = {c}·|x|²"))?;
        }
        ctx.line(&format!("  max residual = {:.3e}", report.residual_summary))?;
        ctx.line(&format!("  {}", report.detail))?;
    }
    Ok(match report.verdict {
        Verdict::Primitive | Verdict::Isoparametric => EXIT_OK,
        Verdict::NotEikonal => EXIT_NEGATIVE,
        Verdict::InconclusiveFloat => EXIT_INCONCLUSIVE,
    })
}

fn normalform(ctx: &mut Ctx, a: &NormalformArgs) -> Outcome {
    let f = read_poly(&a.file)?;
    let rotation = read_rotation(a.rotation.as_ref())?;
    if a.float {
        if a.output.is_some() {
            return Err(Error::InvalidParameters("-o needs the exact path".into()).into());
        }
        let nf = extract_normal_form_float_seeded(&f.to_float(), a.seed)?;
        return ctx.json(&nf.to_json());
    }
    let nf = extract_normal_form_seeded(&f, rotation.as_ref(), a.seed)?;
    if let Some(path) = &a.output {
        write(path, &nf.data.to_text())?;
    }
    if a.json || a.output.is_none() {
        ctx.json(&nf.to_json())?;
    }
    Ok(EXIT_OK)
}

fn congruent(ctx: &mut Ctx, a: &CongruentArgs) -> Outcome {
    let yes = congruent_primitive(a.n, a.d1, a.d2)?;
    if a.json {
        ctx.json(&json!({ "n": a.n, "d1": a.d1, "d2": a.d2, "congruent": yes }))?;
    } else {
        ctx.line(if yes { "congruent" } else { "not congruent" })?;
    }
    Ok(if yes { EXIT_OK } else { EXIT_NEGATIVE })
}

fn search(ctx: &mut Ctx, a: &SearchArgs) -> Outcome {
    let config = SearchConfig {
        budget: a.budget,
        seed: a.seed,
        conjugations: a.conjugations,
        max_hits: a.max_hits,
    };
    let outcome = search_with_config(a.p, a.q, a.nu, &config)?;
    if let (Some(path), Some(first)) = (&a.output, outcome.results.first()) {
        write(path, &to_poly_text(&first.assemble()?))?;
    }
    if let Some(dir) = &a.data_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        for (i, data) in outcome.results.iter().enumerate() {
            write(&dir.join(format!("hit-{i:04}.txt")), &data.to_text())?;
        }
    }
    if a.json {
        let results: Vec<Value> = outcome
            .results
            .iter()
            .map(|d| Value::String(d.to_text()))
            .collect();
        ctx.json(&json!({
            "p": a.p,
            "q": a.q,
            "nu": a.nu,
            "examined": outcome.examined,
            "exhausted": outcome.exhausted,
            "found": outcome.results.len(),
            "results": results,
        }))?;
    } else {
        let found = outcome.results.len();
        let label = format!("{found} pencil(s)");
        let label = if found > 0 {
            ctx.paint(&label, "32")
        } else {
            ctx.paint(&label, "31")
        };
        ctx.line(&format!(
            "{label} for (p, q, ν) = ({}, {}, {}); {} candidates examined{}",
            a.p,
            a.q,
            a.nu,
            outcome.examined,
            if outcome.exhausted {
                ", space exhausted"
            } else {
                ""
            }
        ))?;
    }
    Ok(if outcome.results.is_empty() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}
