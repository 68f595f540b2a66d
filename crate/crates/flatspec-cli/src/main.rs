//! `flatspec` — count flat spectra of Boolean functions under the transform
//! sets {H}^n, {H,N}^n, {I,H}^n, {I,H,N}^n, verify the closed-form counts for
//! structured families, search for optima, and reproduce the reference
//! tables.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or gating error.

mod report;
mod tables;

use std::io::Write as _;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use flatspec::constructions::Family;
use flatspec::{
    big_q_eval, code_distance, count_flat_graph, count_flat_with, gf4_generator, lc_orbit,
    q_poly, search_functions, search_quadratics, AnfPolynomial, Maximizers, Method, TransformSet,
};

use report::{big, kv, Format, Report, Row};
use tables::{TableChoice, KNOWN_ERRATUM};

#[derive(Parser)]
#[command(
    name = "flatspec",
    version,
    about = "Flat-spectrum counts for Boolean functions under {I,H,N} transform sets"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Worker threads for parallel counting (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum SetFlag {
    H,
    Hn,
    Ih,
    Ihn,
}

impl SetFlag {
    fn set(self) -> TransformSet {
        match self {
            SetFlag::H => TransformSet::H,
            SetFlag::Hn => TransformSet::HN,
            SetFlag::Ih => TransformSet::IH,
            SetFlag::Ihn => TransformSet::IHN,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodFlag {
    Rank,
    Spectral,
    Balance,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Line,
    Clique,
    Clc,
    Constant,
    Monomial,
}

fn kind_name(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Line => "line",
        FamilyKind::Clique => "clique",
        FamilyKind::Clc => "clc",
        FamilyKind::Constant => "constant",
        FamilyKind::Monomial => "monomial",
    }
}

fn family_of(kind: FamilyKind, n: usize, m: Option<usize>) -> Result<Family> {
    ensure!(n >= 1, "--n must be at least 1");
    if kind == FamilyKind::Clc {
        let m = m.context("--family clc needs --m")?;
        ensure!(m >= 1, "--m must be at least 1");
        return Ok(Family::CliqueLineClique { n, m });
    }
    ensure!(m.is_none(), "--m only applies to --family clc");
    Ok(match kind {
        FamilyKind::Line => Family::Line { n },
        FamilyKind::Clique => Family::Clique { n },
        FamilyKind::Constant => Family::Constant { n },
        FamilyKind::Monomial => Family::Monomial { n },
        FamilyKind::Clc => unreachable!(),
    })
}

/// One Boolean function, given either as an explicit ANF or as a structured
/// family member.
#[derive(Args)]
struct FunctionInput {
    /// Algebraic normal form: comma-separated variable-digit monomials, e.g.
    /// "02,13,23"; "0" alone is the constant-zero function.
    #[arg(long)]
    anf: Option<String>,

    /// Number of variables.
    #[arg(long)]
    n: Option<usize>,

    /// Structured family instead of an explicit ANF.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,

    /// Second parameter of the clc family.
    #[arg(long)]
    m: Option<usize>,
}

impl FunctionInput {
    fn poly(&self) -> Result<AnfPolynomial> {
        let n = self.n.context("--n is required")?;
        ensure!(n >= 1, "--n must be at least 1");
        match (&self.anf, self.family) {
            (Some(_), Some(_)) => bail!("pass either --anf or --family, not both"),
            (None, None) => bail!("pass one of --anf or --family"),
            (Some(text), None) => {
                ensure!(self.m.is_none(), "--m only applies to --family clc");
                Ok(AnfPolynomial::parse(text, n)?)
            }
            (None, Some(kind)) => Ok(family_of(kind, n, self.m)?.build()),
        }
    }

    fn describe(&self, poly: &AnfPolynomial, inputs: &mut Row) {
        if let Some(kind) = self.family {
            inputs.push(kv("family", kind_name(kind)));
        }
        inputs.push(kv("anf", poly.to_string()));
        inputs.push(kv("n", poly.n() as u64));
        if let Some(m) = self.m {
            inputs.push(kv("m", m as u64));
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count the flat spectra of one function over a transform set.
    Count {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long, value_enum, default_value_t = SetFlag::Ihn)]
        set: SetFlag,
        /// Counting method; rank falls back to spectral above degree 2.
        #[arg(long, value_enum)]
        method: Option<MethodFlag>,
        /// Flatness tolerance for the spectral method.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// List every flat transform assignment.
        #[arg(long)]
        detail: bool,
    },

    /// Build a structured family member and print its defining data.
    Construct {
        #[command(flatten)]
        input: FunctionInput,
    },

    /// Check measured flat counts against the closed-form predictions over a
    /// parameter range.
    Verify {
        /// Structured family to verify.
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long, value_enum, default_value_t = SetFlag::Ihn)]
        set: SetFlag,
        /// Range of n: "1..10" (inclusive) or a single value.
        #[arg(long)]
        n: String,
        /// Range of m (clc only).
        #[arg(long)]
        m: Option<String>,
        /// Counting method; rank falls back to spectral above degree 2.
        #[arg(long, value_enum)]
        method: Option<MethodFlag>,
    },

    /// Exhaustively search fixed-degree functions for the largest flat count.
    Search {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Algebraic degree of the candidates.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = SetFlag::Ihn)]
        set: SetFlag,
        /// Candidate budget override for expensive sweeps.
        #[arg(long)]
        budget: Option<u64>,
    },

    /// GF(4)-additive code distance of a quadratic's adjacency generator.
    Distance {
        #[command(flatten)]
        input: FunctionInput,
        /// Print the generator matrix rows too.
        #[arg(long)]
        generator: bool,
    },

    /// Local-complementation orbit of a quadratic's graph.
    Orbit {
        #[command(flatten)]
        input: FunctionInput,
    },

    /// Interlace polynomial q and the two-variable evaluation Q.
    Interlace {
        #[command(flatten)]
        input: FunctionInput,
        /// Extra evaluation point for q and Q.
        #[arg(long)]
        at: Option<i64>,
    },

    /// Regenerate the reference tables and diff them against stored values.
    Tables {
        #[arg(long, value_enum, default_value_t = TableChoice::All)]
        table: TableChoice,
        /// Count known-erratum cells as failures too.
        #[arg(long)]
        strict: bool,
        /// Skip cells whose parameter (n, or n+m for clc) exceeds this cap.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let (report, code) = match &cli.command {
        Command::Count {
            input,
            set,
            method,
            tol,
            detail,
        } => run_count(input, *set, *method, *tol, *detail)?,
        Command::Construct { input } => run_construct(input)?,
        Command::Verify {
            family,
            set,
            n,
            m,
            method,
        } => run_verify(*family, *set, n, m.as_deref(), *method)?,
        Command::Search {
            n,
            degree,
            set,
            budget,
        } => run_search(*n, *degree, *set, *budget)?,
        Command::Distance { input, generator } => run_distance(input, *generator)?,
        Command::Orbit { input } => run_orbit(input)?,
        Command::Interlace { input, at } => run_interlace(input, *at)?,
        Command::Tables {
            table,
            strict,
            max_n,
        } => run_tables(*table, *strict, *max_n)?,
    };
    let rendered = report.render(cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(ExitCode::from(code))
}

/// Picks the counting method, falling back from rank to spectral above
/// degree 2. Returns the method and whether a fallback happened.
fn resolve_method(flag: Option<MethodFlag>, degree: usize) -> (Method, bool) {
    match flag {
        Some(MethodFlag::Spectral) => (Method::Spectral, false),
        Some(MethodFlag::Balance) => (Method::Balance, false),
        Some(MethodFlag::Rank) | None => {
            if degree > 2 {
                (Method::Spectral, true)
            } else {
                (Method::Rank, false)
            }
        }
    }
}

fn warn_fallback(degree: usize) {
    eprintln!(
        "warning: the rank method needs degree <= 2 (got {degree}); falling back to spectral"
    );
}

fn run_count(
    input: &FunctionInput,
    set: SetFlag,
    method: Option<MethodFlag>,
    tol: f64,
    detail: bool,
) -> Result<(Report, u8)> {
    let poly = input.poly()?;
    let set = set.set();
    let (method, fell_back) = resolve_method(method, poly.degree());
    if fell_back {
        warn_fallback(poly.degree());
    }
    let counted = count_flat_with(&poly.to_function(), set, method, tol, detail)?;
    let mut report = Report::new("count");
    input.describe(&poly, &mut report.inputs);
    report.inputs.push(kv("set", set.label()));
    report.inputs.push(kv("method", method.to_string()));
    report.results.push(vec![
        kv("n", poly.n() as u64),
        kv("set", set.label()),
        kv("method", method.to_string()),
        kv("assignments_total", counted.assignments_total),
        kv("flat_count", counted.flat_count),
    ]);
    if let Some(list) = counted.detail {
        for a in list {
            report.results.push(vec![kv("assignment", a.to_string())]);
        }
    }
    Ok((report, 0))
}

fn run_construct(input: &FunctionInput) -> Result<(Report, u8)> {
    let Some(kind) = input.family else {
        bail!("construct needs --family");
    };
    ensure!(input.anf.is_none(), "construct takes --family, not --anf");
    let n = input.n.context("--n is required")?;
    let family = family_of(kind, n, input.m)?;
    let poly = family.build();
    let mut report = Report::new("construct");
    input.describe(&poly, &mut report.inputs);
    let mut row = vec![
        kv("family", kind_name(kind)),
        kv("n", n as u64),
        kv(
            "m",
            input.m.map_or(Value::Null, |v| Value::from(v as u64)),
        ),
        kv("vars", poly.n() as u64),
        kv("anf", poly.to_string()),
        kv("degree", poly.degree() as u64),
    ];
    if let Ok(g) = poly.graph() {
        row.push(kv("edges", g.edges().len() as u64));
    }
    report.results.push(row);
    Ok((report, 0))
}

/// Parses "a..b" (inclusive) or a single number.
fn parse_range(text: &str) -> Result<(usize, usize)> {
    let parse = |part: &str| {
        part.trim()
            .parse::<usize>()
            .with_context(|| format!("bad range component {part:?}"))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    ensure!(lo >= 1, "ranges start at 1, got {text:?}");
    ensure!(lo <= hi, "empty range {text:?}");
    Ok((lo, hi))
}

fn run_verify(
    kind: FamilyKind,
    set: SetFlag,
    n_text: &str,
    m_text: Option<&str>,
    method: Option<MethodFlag>,
) -> Result<(Report, u8)> {
    let set = set.set();
    let (n_lo, n_hi) = parse_range(n_text)?;
    let m_range = match (kind, m_text) {
        (FamilyKind::Clc, Some(t)) => Some(parse_range(t)?),
        (FamilyKind::Clc, None) => bail!("--family clc needs --m (a range like 2..4)"),
        (_, Some(_)) => bail!("--m only applies to --family clc"),
        (_, None) => None,
    };

    let mut report = Report::new("verify");
    report.inputs.push(kv("family", kind_name(kind)));
    report.inputs.push(kv("set", set.label()));
    report.inputs.push(kv("n", n_text));
    if let Some(t) = m_text {
        report.inputs.push(kv("m", t));
    }

    let mut warned = false;
    for n in n_lo..=n_hi {
        let m_points: Vec<Option<usize>> = match m_range {
            Some((lo, hi)) => (lo..=hi).map(Some).collect(),
            None => vec![None],
        };
        for m in m_points {
            let family = family_of(kind, n, m)?;
            let expected = family.predicted_count(set)?;
            let poly = family.build();
            let (resolved, fell_back) = resolve_method(method, poly.degree());
            if fell_back && !warned {
                warn_fallback(poly.degree());
                warned = true;
            }
            let measured = match resolved {
                Method::Rank => count_flat_graph(&poly.graph()?, set).flat_count,
                other => count_flat_with(&poly.to_function(), set, other, 1e-9, false)?.flat_count,
            };
            let ok = expected == measured;
            let row = vec![
                kv("family", kind_name(kind)),
                kv("set", set.label()),
                kv("n", n as u64),
                kv("m", m.map_or(Value::Null, |v| Value::from(v as u64))),
                kv("expected", expected),
                kv("measured", measured),
                kv("source", "formula"),
                kv("match", ok),
            ];
            if !ok {
                report.mismatches.push(row.clone());
            }
            report.results.push(row);
        }
    }
    let code = u8::from(!report.mismatches.is_empty());
    Ok((report, code))
}

fn run_search(n: usize, degree: usize, set: SetFlag, budget: Option<u64>) -> Result<(Report, u8)> {
    let set = set.set();
    let mut report = Report::new("search");
    report.inputs.push(kv("n", n as u64));
    report.inputs.push(kv("degree", degree as u64));
    report.inputs.push(kv("set", set.label()));
    if let Some(b) = budget {
        report.inputs.push(kv("budget", b));
    }

    let result = if degree == 2 {
        search_quadratics(n, set, budget)?
    } else {
        search_functions(n, degree, set, budget)?
    };
    let (listed_all, orbit_count) = match &result.maximizers {
        Maximizers::Quadratic { orbits, listed_all } => (*listed_all, Some(orbits.len())),
        Maximizers::General { listed_all, .. } => (*listed_all, None),
    };
    let mut summary = vec![
        kv("n", result.n as u64),
        kv("degree", result.degree as u64),
        kv("set", result.set.label()),
        kv("candidates", result.candidates),
        kv("max_count", result.max_count),
        kv("maximizer_total", result.maximizer_total),
        kv("listed_all", listed_all),
    ];
    if let Some(c) = orbit_count {
        summary.push(kv("orbits", c as u64));
    }
    report.results.push(summary);

    match &result.maximizers {
        Maximizers::Quadratic { orbits, .. } => {
            for (i, orbit) in orbits.iter().enumerate() {
                let members: Vec<Value> = orbit
                    .iter()
                    .map(|g| Value::from(AnfPolynomial::from_graph(g).to_string()))
                    .collect();
                report.results.push(vec![
                    kv("orbit", i as u64),
                    kv("size", orbit.len() as u64),
                    kv("members", Value::Array(members)),
                ]);
            }
        }
        Maximizers::General { sample, .. } => {
            for (i, poly) in sample.iter().enumerate() {
                report
                    .results
                    .push(vec![kv("index", i as u64), kv("anf", poly.to_string())]);
            }
        }
    }
    Ok((report, 0))
}

fn run_distance(input: &FunctionInput, generator: bool) -> Result<(Report, u8)> {
    let poly = input.poly()?;
    let g = poly
        .graph()
        .context("the code construction needs degree at most 2")?;
    let d = code_distance(&g)?;
    let mut report = Report::new("distance");
    input.describe(&poly, &mut report.inputs);
    report.results.push(vec![
        kv("n", g.n() as u64),
        kv("anf", poly.to_string()),
        kv("distance", u64::from(d)),
    ]);
    if generator {
        let gen = gf4_generator(&g);
        for i in 0..gen.n() {
            let symbols: String = (0..gen.n()).map(|j| gen.symbol(i, j).to_string()).collect();
            report
                .results
                .push(vec![kv("generator_row", i as u64), kv("symbols", symbols)]);
        }
    }
    Ok((report, 0))
}

fn run_orbit(input: &FunctionInput) -> Result<(Report, u8)> {
    let poly = input.poly()?;
    let g = poly
        .graph()
        .context("orbits are defined on graphs, so degree at most 2")?;
    let orbit = lc_orbit(&g)?;
    let mut report = Report::new("orbit");
    input.describe(&poly, &mut report.inputs);
    report.results.push(vec![
        kv("n", g.n() as u64),
        kv("anf", poly.to_string()),
        kv("orbit_size", orbit.len() as u64),
    ]);
    for (i, member) in orbit.iter().enumerate() {
        report.results.push(vec![
            kv("index", i as u64),
            kv("anf", AnfPolynomial::from_graph(member).to_string()),
            kv("edges", member.edges().len() as u64),
        ]);
    }
    Ok((report, 0))
}

fn run_interlace(input: &FunctionInput, at: Option<i64>) -> Result<(Report, u8)> {
    let poly = input.poly()?;
    let g = poly
        .graph()
        .context("interlace polynomials are defined on graphs, so degree at most 2")?;
    let q = q_poly(&g)?;
    let q1 = q.eval(1)?;
    let bq2 = big_q_eval(&g, 2)?;
    let mut report = Report::new("interlace");
    input.describe(&poly, &mut report.inputs);
    let coeffs: Vec<Value> = q.coeffs().iter().map(|&c| Value::from(c)).collect();
    report.results.push(vec![
        kv("n", g.n() as u64),
        kv("anf", poly.to_string()),
        kv("q", q.to_string()),
        kv("q_coeffs", Value::Array(coeffs)),
        kv("q_at_1", big(q1)),
        kv("big_q_at_2", big(bq2)),
    ]);
    if let Some(x) = at {
        report.results.push(vec![
            kv("x", x),
            kv("q_at", big(q.eval(x)?)),
            kv("big_q_at", big(big_q_eval(&g, x)?)),
            kv(
                "note",
                if x == 2 { "" } else { "extrapolated definition" },
            ),
        ]);
    }
    Ok((report, 0))
}

fn field<'a>(row: &'a Row, key: &str) -> Option<&'a Value> {
    row.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

fn run_tables(choice: TableChoice, strict: bool, max_n: Option<usize>) -> Result<(Report, u8)> {
    let rows = tables::emit(choice, max_n)?;
    let mut report = Report::new("tables");
    report.inputs.push(kv("table", choice.label()));
    report.inputs.push(kv("strict", strict));
    if let Some(cap) = max_n {
        report.inputs.push(kv("max_n", cap as u64));
    }
    let mut hard = false;
    for row in &rows {
        if field(row, "match") == Some(&Value::Bool(false)) {
            let erratum = field(row, "note") == Some(&Value::from(KNOWN_ERRATUM));
            hard |= !erratum;
            report.mismatches.push(row.clone());
        }
    }
    report.results = rows;
    let code = u8::from(hard || (strict && !report.mismatches.is_empty()));
    Ok((report, code))
}
