//! Reference optima for the {I,H,N}^n flat-count searches: for each number
//! of variables and degree, the maximal count, representative functions that
//! attain it, and the associated code distance. Quadratic distances are
//! recomputable from the representative's graph; higher-degree distances are
//! carried as fixture metadata only.

/// One row of a reference table of search optima.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimumRow {
    pub n: usize,
    pub degree: usize,
    /// Maximal {I,H,N}^n flat count over all functions of this degree.
    pub max_count: u64,
    /// Distance column of the row; see `distance_recomputed`.
    pub distance: u32,
    /// True when `distance` is the GF(4) code distance of the representative
    /// graphs and is re-derivable here; false when it is carried metadata.
    pub distance_recomputed: bool,
    /// Functions attaining the maximum, in digit-string notation.
    pub representatives: &'static [&'static str],
    /// True when every function of the degree attains the maximum (the
    /// representative list is then a canonical sample, not exhaustive).
    pub all_attain: bool,
    /// For the quadratic table: the line count on the same n, for contrast.
    pub line_count: Option<u64>,
}

pub const QUADRATIC_OPTIMA: &[OptimumRow] = &[
    OptimumRow {
        n: 4,
        degree: 2,
        max_count: 44,
        distance: 2,
        distance_recomputed: true,
        representatives: &["02,13,23"],
        all_attain: false,
        line_count: Some(44),
    },
    OptimumRow {
        n: 5,
        degree: 2,
        max_count: 132,
        distance: 3,
        distance_recomputed: true,
        representatives: &["01,02,13,24,34"],
        all_attain: false,
        line_count: Some(120),
    },
    OptimumRow {
        n: 6,
        degree: 2,
        max_count: 396,
        distance: 4,
        distance_recomputed: true,
        representatives: &["01,02,05,13,15,24,25,34,35,45"],
        all_attain: false,
        line_count: Some(328),
    },
    OptimumRow {
        n: 7,
        degree: 2,
        max_count: 1096,
        distance: 3,
        distance_recomputed: true,
        representatives: &["03,06,14,16,25,26,34,35,45"],
        all_attain: false,
        line_count: Some(896),
    },
    OptimumRow {
        n: 8,
        degree: 2,
        max_count: 3256,
        distance: 4,
        distance_recomputed: true,
        representatives: &["02,03,04,12,13,15,26,37,46,47,56,57,67"],
        all_attain: false,
        line_count: Some(2448),
    },
    OptimumRow {
        n: 9,
        degree: 2,
        max_count: 9432,
        distance: 4,
        distance_recomputed: true,
        representatives: &["04,07,08,14,16,18,25,26,28,34,35,37,57,58,67,68"],
        all_attain: false,
        line_count: Some(6688),
    },
];

pub const CUBIC_OPTIMA: &[OptimumRow] = &[
    OptimumRow {
        n: 3,
        degree: 3,
        max_count: 4,
        distance: 1,
        distance_recomputed: false,
        representatives: &["012"],
        all_attain: false,
        line_count: None,
    },
    OptimumRow {
        n: 4,
        degree: 3,
        max_count: 20,
        distance: 2,
        distance_recomputed: false,
        representatives: &["012,03,13,23"],
        all_attain: false,
        line_count: None,
    },
    OptimumRow {
        n: 5,
        degree: 3,
        max_count: 72,
        distance: 2,
        distance_recomputed: false,
        representatives: &["012,03,14,23,24"],
        all_attain: false,
        line_count: None,
    },
    OptimumRow {
        n: 6,
        degree: 3,
        max_count: 248,
        distance: 3,
        distance_recomputed: false,
        representatives: &["012,03,04,13,15,24,25"],
        all_attain: false,
        line_count: None,
    },
];

pub const QUARTIC_OPTIMA: &[OptimumRow] = &[
    OptimumRow {
        n: 4,
        degree: 4,
        max_count: 5,
        distance: 1,
        distance_recomputed: false,
        representatives: &["0123"],
        all_attain: true,
        line_count: None,
    },
    OptimumRow {
        n: 5,
        degree: 4,
        max_count: 30,
        distance: 2,
        distance_recomputed: false,
        representatives: &[
            "0123,01,04,14,23,24,34",
            "0123,02,04,13,14,23,24,34",
            "0123,04,14,23,24,34",
        ],
        all_attain: false,
        line_count: None,
    },
];

pub const QUINTIC_OPTIMA: &[OptimumRow] = &[OptimumRow {
    n: 5,
    degree: 5,
    max_count: 6,
    distance: 1,
    distance_recomputed: false,
    representatives: &["01234"],
    all_attain: true,
    line_count: None,
}];

/// All reference rows, quadratics first, then by increasing degree and n.
pub fn all_rows() -> impl Iterator<Item = &'static OptimumRow> {
    QUADRATIC_OPTIMA
        .iter()
        .chain(CUBIC_OPTIMA)
        .chain(QUARTIC_OPTIMA)
        .chain(QUINTIC_OPTIMA)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfunc::AnfPolynomial;
    use crate::exact::count_flat_exact;
    use crate::gf4::code_distance;
    use crate::transform::{count_flat_graph, TransformSet};

    #[test]
    fn rows_are_well_formed() {
        for row in all_rows() {
            assert!(!row.representatives.is_empty());
            for text in row.representatives {
                let anf = AnfPolynomial::parse(text, row.n).unwrap();
                assert_eq!(anf.degree(), row.degree, "{text}");
            }
            assert_eq!(row.distance_recomputed, row.degree == 2);
        }
    }

    #[test]
    fn quadratic_rows_match_their_oracles() {
        for row in QUADRATIC_OPTIMA {
            let g = AnfPolynomial::parse(row.representatives[0], row.n)
                .unwrap()
                .graph()
                .unwrap();
            assert_eq!(count_flat_graph(&g, TransformSet::IHN).flat_count, row.max_count);
            assert_eq!(code_distance(&g).unwrap(), row.distance);
        }
    }

    #[test]
    fn higher_degree_rows_match_the_exact_engine() {
        for row in CUBIC_OPTIMA.iter().chain(QUARTIC_OPTIMA).chain(QUINTIC_OPTIMA) {
            for text in row.representatives {
                let f = AnfPolynomial::parse(text, row.n).unwrap().to_function();
                assert_eq!(
                    count_flat_exact(&f, TransformSet::IHN),
                    row.max_count,
                    "{text}"
                );
            }
        }
    }
}
