//! Local complementation, LC-orbit enumeration, and exhaustive searches for
//! the largest flat-spectrum counts among quadratics and higher-degree
//! functions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::boolfunc::AnfPolynomial;
use crate::exact::{count_flat_exact, count_flat_small, MAX_EXACT_VARS};
use crate::gf2::flat_rank_masked;
use crate::graph::Graph;
use crate::transform::TransformSet;

/// LC orbits are stored explicitly, so enumeration is gated.
pub const MAX_ORBIT_VARS: usize = 12;

/// Largest number of maximizing functions a search result lists verbatim.
pub const MAXIMIZER_SAMPLE: usize = 64;

/// Largest number of maximizing graphs the quadratic search keeps for orbit
/// grouping. Degenerate searches (e.g. {H} at odd n, where every graph ties
/// at zero) would otherwise list the whole space.
pub const QUADRATIC_LIST_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("orbit enumeration is gated to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(
        "degree-{degree} search is undefined at n={n}; use search_quadratics for degree 2"
    )]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("{candidates} candidates exceed the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error(
        "exhaustive degree-{degree} search at n={n} is outside the default gate \
         (n <= 4, or n = 5 for quintics); pass an explicit budget to override"
    )]
    DefaultGate { n: usize, degree: usize },
    #[error("search is gated to n <= {max}, got {n}")]
    TooManyVariables { n: usize, max: usize },
}

/// Complements the edges inside the open neighborhood of `v`, leaving every
/// other edge alone.
pub fn local_complement(g: &Graph, v: usize) -> Result<Graph, OrbitError> {
    let n = g.n();
    if v >= n {
        return Err(OrbitError::VertexOutOfRange { v, n });
    }
    let mut out = g.clone();
    let nb = g.row(v);
    let mut a_bits = nb;
    while a_bits != 0 {
        let a = a_bits.trailing_zeros() as usize;
        a_bits &= a_bits - 1;
        let mut b_bits = a_bits;
        while b_bits != 0 {
            let b = b_bits.trailing_zeros() as usize;
            b_bits &= b_bits - 1;
            out.toggle_edge(a, b);
        }
    }
    Ok(out)
}

/// Closure of `g` under local complementation at every vertex, sorted into a
/// canonical order.
pub fn lc_orbit(g: &Graph) -> Result<Vec<Graph>, OrbitError> {
    let n = g.n();
    if n > MAX_ORBIT_VARS {
        return Err(OrbitError::TooLarge {
            n,
            max: MAX_ORBIT_VARS,
        });
    }
    let mut seen = BTreeSet::new();
    let mut queue = vec![g.clone()];
    seen.insert(g.clone());
    while let Some(cur) = queue.pop() {
        for v in 0..n {
            let next = local_complement(&cur, v).expect("vertex is in range");
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Outcome of an exhaustive maximal-flat-count search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: usize,
    pub degree: usize,
    pub set: TransformSet,
    /// Number of candidate functions examined.
    pub candidates: u64,
    pub max_count: u64,
    /// How many candidates attain the maximum.
    pub maximizer_total: u64,
    pub maximizers: Maximizers,
}

#[derive(Debug, Clone)]
pub enum Maximizers {
    /// Maximizing graphs grouped by LC orbit (each group is the intersection
    /// of one orbit with the listed maximizer set), groups ordered by their
    /// smallest member. When more than [`QUADRATIC_LIST_CAP`] graphs attain
    /// the maximum only the smallest are listed and `listed_all` is false.
    Quadratic {
        orbits: Vec<Vec<Graph>>,
        listed_all: bool,
    },
    /// Maximizing functions in enumeration order, truncated to
    /// [`MAXIMIZER_SAMPLE`]; `listed_all` says whether the sample is the
    /// whole maximizer set.
    General {
        sample: Vec<AnfPolynomial>,
        listed_all: bool,
    },
}

/// Sequential flat count of a quadratic given as a graph, via the rank
/// criterion; used inside the already-parallel search loops.
fn count_graph_seq(g: &Graph, set: TransformSet) -> u64 {
    let n = g.n();
    (0..set.assignments_total(n))
        .filter(|&idx| {
            let (imask, nmask) = set.masks(n, idx);
            flat_rank_masked(g, imask, nmask)
        })
        .count() as u64
}

/// Exhaustive search over all 2^{n(n-1)/2} quadratics (as graphs) for the
/// maximal flat count. The default budget admits n <= 6.
pub fn search_quadratics(
    n: usize,
    set: TransformSet,
    budget: Option<u64>,
) -> Result<SearchResult, SearchError> {
    // n = 12 would need 66 edge bits; the orbit grouping is gated below that
    // anyway.
    const MAX_N: usize = 11;
    if n == 0 || n > MAX_N {
        return Err(SearchError::TooManyVariables { n, max: MAX_N });
    }
    let edge_bits = n * (n - 1) / 2;
    let candidates = 1u64 << edge_bits;
    let allowed = budget.unwrap_or(1 << 15);
    if candidates > allowed {
        return Err(SearchError::BudgetExceeded {
            candidates: candidates as u128,
            budget: allowed as u128,
        });
    }
    let edge_order: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let graph_of = |mask: u64| {
        let mut g = Graph::empty(n);
        for (k, &(i, j)) in edge_order.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.set_edge(i, j, true);
            }
        }
        g
    };
    let (max_count, mut masks) = (0..candidates)
        .into_par_iter()
        .fold(
            || (0u64, Vec::new()),
            |(mut best, mut at_best), mask| {
                let c = count_graph_seq(&graph_of(mask), set);
                if c > best {
                    best = c;
                    at_best.clear();
                }
                if c == best {
                    at_best.push(mask);
                }
                (best, at_best)
            },
        )
        .reduce(
            || (0u64, Vec::new()),
            |(ba, mut va), (bb, mut vb)| {
                if ba > bb {
                    (ba, va)
                } else if bb > ba {
                    (bb, vb)
                } else {
                    va.append(&mut vb);
                    (ba, va)
                }
            },
        );
    masks.sort_unstable();
    let maximizer_total = masks.len() as u64;
    let listed_all = masks.len() <= QUADRATIC_LIST_CAP;
    masks.truncate(QUADRATIC_LIST_CAP);
    let listed: BTreeSet<Graph> = masks.iter().map(|&m| graph_of(m)).collect();
    let mut remaining = listed.clone();
    let mut orbits = Vec::new();
    while let Some(first) = remaining.iter().next().cloned() {
        let orbit = lc_orbit(&first).expect("n <= 11 is under the orbit gate");
        let group: Vec<Graph> = orbit.into_iter().filter(|h| listed.contains(h)).collect();
        for h in &group {
            remaining.remove(h);
        }
        orbits.push(group);
    }
    Ok(SearchResult {
        n,
        degree: 2,
        set,
        candidates,
        max_count,
        maximizer_total,
        maximizers: Maximizers::Quadratic { orbits, listed_all },
    })
}

/// Truth table (n <= 5) of the single monomial with variable mask `m`.
fn monomial_table32(n: usize, m: u32) -> u32 {
    let mut t = 0u32;
    for x in 0..1u32 << n {
        if x & m == m {
            t |= 1 << x;
        }
    }
    t
}

/// Variable masks of all degree-d monomials on n variables, in increasing
/// mask order.
fn monomials_of_degree(n: usize, d: usize) -> Vec<u32> {
    (1u32..1 << n)
        .filter(|m| m.count_ones() as usize == d)
        .collect()
}

/// Exhaustive search over all functions of exactly the given degree (>= 3)
/// for the maximal flat count. Affine terms never change a flat count, so
/// the enumeration fixes the constant and linear parts to zero and ranges
/// over every choice of degree-2..=degree monomials with at least one
/// monomial of the top degree. Without an explicit budget the search is
/// gated to n <= 4, plus quintics at n = 5.
pub fn search_functions(
    n: usize,
    degree: usize,
    set: TransformSet,
    budget: Option<u64>,
) -> Result<SearchResult, SearchError> {
    if n > MAX_EXACT_VARS {
        return Err(SearchError::TooManyVariables {
            n,
            max: MAX_EXACT_VARS,
        });
    }
    if degree < 3 || degree > n {
        return Err(SearchError::DegreeOutOfRange { degree, n });
    }
    let mut lower: Vec<u32> = (2..degree)
        .flat_map(|d| monomials_of_degree(n, d))
        .collect();
    let top = monomials_of_degree(n, degree);
    let (lc, tc) = (lower.len(), top.len());
    let candidates: u128 = if lc + tc >= 64 {
        u128::MAX
    } else {
        (((1u128 << tc) - 1) << lc) as u128
    };
    match budget {
        Some(b) => {
            if candidates > u128::from(b) {
                return Err(SearchError::BudgetExceeded {
                    candidates,
                    budget: u128::from(b),
                });
            }
        }
        None => {
            if !(n <= 4 || (n == 5 && degree == 5)) {
                return Err(SearchError::DefaultGate { n, degree });
            }
        }
    }
    let candidates = candidates as u64;
    // Monomial index b < lc is lower[b]; index lc + b is top[b].
    lower.extend_from_slice(&top);
    let monomials = lower;
    let lower_total = 1u64 << lc;

    // One unit of work per nonzero choice of top-degree monomials; the lower
    // monomials are walked in Gray-code order so each step is a single
    // truth-table XOR.
    let per_top: Vec<(u64, u64, Vec<u64>)> = (1..1u64 << tc)
        .into_par_iter()
        .map(|top_part| {
            let mut best = 0u64;
            let mut total = 0u64;
            let mut sample: Vec<u64> = Vec::new();
            let mut record = |count: u64, mono_mask: u64| {
                if count > best {
                    best = count;
                    total = 0;
                    sample.clear();
                }
                if count == best {
                    total += 1;
                    if sample.len() < MAXIMIZER_SAMPLE {
                        sample.push(mono_mask);
                    }
                }
            };
            if n <= 5 {
                let tables: Vec<u32> =
                    monomials.iter().map(|&m| monomial_table32(n, m)).collect();
                let mut table = 0u32;
                for b in 0..tc {
                    if top_part >> b & 1 == 1 {
                        table ^= tables[lc + b];
                    }
                }
                let mut k = 0u64;
                loop {
                    let count = count_flat_small(table, n, set);
                    record(count, (top_part << lc) | (k ^ (k >> 1)));
                    k += 1;
                    if k == lower_total {
                        break;
                    }
                    table ^= tables[k.trailing_zeros() as usize];
                }
            } else {
                // Only reachable with an explicit budget override; built per
                // candidate without the table engine.
                for k in 0..lower_total {
                    let mono_mask = (top_part << lc) | (k ^ (k >> 1));
                    let anf = AnfPolynomial::new(
                        n,
                        (0..lc + tc).filter(|&b| mono_mask >> b & 1 == 1).map(|b| monomials[b]),
                        false,
                    )
                    .expect("monomial masks are in range");
                    let count = count_flat_exact(&anf.to_function(), set);
                    record(count, mono_mask);
                }
            }
            (best, total, sample)
        })
        .collect();

    let mut max_count = 0u64;
    let mut maximizer_total = 0u64;
    let mut sample_masks: Vec<u64> = Vec::new();
    for (best, total, sample) in per_top {
        if best > max_count {
            max_count = best;
            maximizer_total = 0;
            sample_masks.clear();
        }
        if best == max_count {
            maximizer_total += total;
            for m in sample {
                if sample_masks.len() < MAXIMIZER_SAMPLE {
                    sample_masks.push(m);
                }
            }
        }
    }
    let sample: Vec<AnfPolynomial> = sample_masks
        .iter()
        .map(|&mono_mask| {
            AnfPolynomial::new(
                n,
                (0..lc + tc).filter(|&b| mono_mask >> b & 1 == 1).map(|b| monomials[b]),
                false,
            )
            .expect("monomial masks are in range")
        })
        .collect();
    let listed_all = sample.len() as u64 == maximizer_total;
    Ok(SearchResult {
        n,
        degree,
        set,
        candidates,
        max_count,
        maximizer_total,
        maximizers: Maximizers::General { sample, listed_all },
    })
}
