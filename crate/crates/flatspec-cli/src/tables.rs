//! The `tables` subcommand: regenerate every numeric cell of the reference
//! tables from first principles (oracle counts, recurrences, code
//! enumeration) and diff each against its stored value.

use anyhow::Result;
use serde_json::Value;

use flatspec::catalog::{
    OptimumRow, CUBIC_OPTIMA, QUADRATIC_OPTIMA, QUARTIC_OPTIMA, QUINTIC_OPTIMA,
};
use flatspec::constructions::Family;
use flatspec::{
    code_distance, count_flat, count_flat_graph, search_functions, search_quadratics,
    AnfPolynomial, Method, TransformSet,
};

use crate::report::{kv, Row};

/// Note attached to the one stored cell that disagrees with its oracle: the
/// constant-function column lists 2^n flat spectra under {H,N}, but only the
/// all-N assignment is flat, so the measured count is 1 for every n.
pub const KNOWN_ERRATUM: &str = "known erratum";
const NOT_RECOMPUTED: &str = "not recomputed";

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableChoice {
    I,
    Ii,
    Iii,
    Iv,
    V,
    All,
}

impl TableChoice {
    pub fn label(self) -> &'static str {
        match self {
            TableChoice::I => "i",
            TableChoice::Ii => "ii",
            TableChoice::Iii => "iii",
            TableChoice::Iv => "iv",
            TableChoice::V => "v",
            TableChoice::All => "all",
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cell(
    table: &str,
    row: String,
    column: &str,
    n: usize,
    m: Option<usize>,
    anf: Option<&str>,
    expected: u64,
    measured: Option<u64>,
    note: &str,
) -> Row {
    vec![
        kv("table", table),
        kv("row", row),
        kv("column", column),
        kv("n", n as u64),
        kv("m", m.map_or(Value::Null, |v| Value::from(v as u64))),
        kv("anf", anf.map_or(Value::Null, Value::from)),
        kv("expected", expected),
        kv("measured", measured.map_or(Value::Null, Value::from)),
        kv("source", "paper-table"),
        kv("match", measured.map_or(true, |v| v == expected)),
        kv("note", note),
    ]
}

fn within(n: usize, max_n: Option<usize>) -> bool {
    max_n.map_or(true, |cap| n <= cap)
}

/// Rank-oracle count of a quadratic family member.
fn measure_family_rank(family: Family, set: TransformSet) -> Result<u64> {
    let g = family.build().graph()?;
    Ok(count_flat_graph(&g, set).flat_count)
}

/// Spectral-oracle count of any family member.
fn measure_family_spectral(family: Family, set: TransformSet) -> Result<u64> {
    let f = family.build().to_function();
    Ok(count_flat(&f, set, Method::Spectral)?.flat_count)
}

const SETS: [(TransformSet, &str); 3] = [
    (TransformSet::HN, "hn"),
    (TransformSet::IH, "ih"),
    (TransformSet::IHN, "ihn"),
];

/// Table I: closed-form counts for the structured families, one cell per
/// (set row, family column, parameter point).
fn table_i(rows: &mut Vec<Row>, max_n: Option<usize>) -> Result<()> {
    const CLC_POINTS: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 3), (4, 3), (6, 4)];
    for (set, set_label) in SETS {
        for n in 3..=6 {
            if !within(n, max_n) {
                continue;
            }
            let expected = match set {
                TransformSet::HN => 0,
                TransformSet::IH => 1,
                TransformSet::IHN => n as u64 + 1,
                TransformSet::H => unreachable!(),
            };
            let measured = measure_family_spectral(Family::Monomial { n }, set)?;
            rows.push(cell(
                "i",
                set_label.to_string(),
                "monomial",
                n,
                None,
                None,
                expected,
                Some(measured),
                "",
            ));
        }
        for n in 1..=6 {
            if !within(n, max_n) {
                continue;
            }
            let (expected, note) = match set {
                TransformSet::HN => (1u64 << n, KNOWN_ERRATUM),
                TransformSet::IH => (1, ""),
                TransformSet::IHN => (1 << n, ""),
                TransformSet::H => unreachable!(),
            };
            let measured = measure_family_rank(Family::Constant { n }, set)?;
            rows.push(cell(
                "i",
                set_label.to_string(),
                "constant",
                n,
                None,
                None,
                expected,
                Some(measured),
                note,
            ));
        }
        for n in 1..=8 {
            if !within(n, max_n) {
                continue;
            }
            for family in [Family::Line { n }, Family::Clique { n }] {
                let expected = family.predicted_count(set)?;
                let measured = measure_family_rank(family, set)?;
                rows.push(cell(
                    "i",
                    set_label.to_string(),
                    family.kind_label(),
                    n,
                    None,
                    None,
                    expected,
                    Some(measured),
                    "",
                ));
            }
        }
        for (n, m) in CLC_POINTS {
            if !within(n + m, max_n) {
                continue;
            }
            let family = Family::CliqueLineClique { n, m };
            let expected = family.predicted_count(set)?;
            let measured = measure_family_rank(family, set)?;
            rows.push(cell(
                "i",
                set_label.to_string(),
                "clc",
                n,
                Some(m),
                None,
                expected,
                Some(measured),
                "",
            ));
        }
    }
    Ok(())
}

/// Table II: optimal quadratics — representative counts, line counts, code
/// distances, and (n <= 6) full-search maxima.
fn table_ii(rows: &mut Vec<Row>, max_n: Option<usize>) -> Result<()> {
    for opt in QUADRATIC_OPTIMA {
        if !within(opt.n, max_n) {
            continue;
        }
        let label = format!("n={}", opt.n);
        let anf = opt.representatives[0];
        let g = AnfPolynomial::parse(anf, opt.n)?.graph()?;
        rows.push(cell(
            "ii",
            label.clone(),
            "K",
            opt.n,
            None,
            Some(anf),
            opt.max_count,
            Some(count_flat_graph(&g, TransformSet::IHN).flat_count),
            "",
        ));
        rows.push(cell(
            "ii",
            label.clone(),
            "K-line",
            opt.n,
            None,
            None,
            opt.line_count.expect("quadratic rows carry a line count"),
            Some(measure_family_rank(
                Family::Line { n: opt.n },
                TransformSet::IHN,
            )?),
            "",
        ));
        rows.push(cell(
            "ii",
            label.clone(),
            "distance",
            opt.n,
            None,
            Some(anf),
            u64::from(opt.distance),
            Some(u64::from(code_distance(&g)?)),
            "",
        ));
        if opt.n <= 6 {
            let search = search_quadratics(opt.n, TransformSet::IHN, None)?;
            rows.push(cell(
                "ii",
                label,
                "search-max",
                opt.n,
                None,
                None,
                opt.max_count,
                Some(search.max_count),
                "",
            ));
        }
    }
    Ok(())
}

/// Tables III-V share a layout: representative counts via the spectral
/// oracle, fixture distances echoed, and exhaustive maxima where the default
/// search gate allows.
fn table_degree(
    rows: &mut Vec<Row>,
    table: &str,
    optima: &[OptimumRow],
    max_n: Option<usize>,
) -> Result<()> {
    for opt in optima {
        if !within(opt.n, max_n) {
            continue;
        }
        let label = format!("n={}", opt.n);
        for anf in opt.representatives {
            let f = AnfPolynomial::parse(anf, opt.n)?.to_function();
            let measured = count_flat(&f, TransformSet::IHN, Method::Spectral)?.flat_count;
            rows.push(cell(
                table,
                label.clone(),
                "K",
                opt.n,
                None,
                Some(anf),
                opt.max_count,
                Some(measured),
                if opt.all_attain {
                    "every function of this degree attains the maximum"
                } else {
                    ""
                },
            ));
        }
        rows.push(cell(
            table,
            label.clone(),
            "distance",
            opt.n,
            None,
            None,
            u64::from(opt.distance),
            None,
            NOT_RECOMPUTED,
        ));
        let search_here = match opt.degree {
            3 => opt.n <= 4,
            4 => opt.n <= 4,
            _ => false,
        };
        if search_here {
            let search = search_functions(opt.n, opt.degree, TransformSet::IHN, None)?;
            rows.push(cell(
                table,
                label,
                "search-max",
                opt.n,
                None,
                None,
                opt.max_count,
                Some(search.max_count),
                "",
            ));
        }
    }
    Ok(())
}

pub fn emit(choice: TableChoice, max_n: Option<usize>) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    if matches!(choice, TableChoice::I | TableChoice::All) {
        table_i(&mut rows, max_n)?;
    }
    if matches!(choice, TableChoice::Ii | TableChoice::All) {
        table_ii(&mut rows, max_n)?;
    }
    if matches!(choice, TableChoice::Iii | TableChoice::All) {
        table_degree(&mut rows, "iii", CUBIC_OPTIMA, max_n)?;
    }
    if matches!(choice, TableChoice::Iv | TableChoice::All) {
        table_degree(&mut rows, "iv", QUARTIC_OPTIMA, max_n)?;
    }
    if matches!(choice, TableChoice::V | TableChoice::All) {
        table_degree(&mut rows, "v", QUINTIC_OPTIMA, max_n)?;
    }
    Ok(rows)
}
