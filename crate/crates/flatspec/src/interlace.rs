//! Interlace-style graph polynomial evaluations tied to flat-spectrum
//! counts: q as a subset-nullity sum whose value at 1 is the {I,H}^n count,
//! and Q as an assignment-nullity sum whose value at 2 is the {I,H,N}^n
//! count.

use std::fmt;

use thiserror::Error;

use crate::gf2::rank_of_rows;
use crate::graph::Graph;
use crate::transform::TransformSet;

/// q sums over all 2^n vertex subsets.
pub const MAX_Q_VARS: usize = 14;
/// Q sums over all 3^n kernel assignments.
pub const MAX_BIG_Q_VARS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterlaceError {
    #[error("{what} is gated to n <= {max}, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("evaluation overflowed 128-bit integers")]
    Overflow,
}

/// Univariate polynomial with exact integer coefficients, lowest degree
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        IntPolynomial { coeffs }
    }

    /// Coefficients in increasing power order; always at least one entry.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact evaluation by Horner's rule in 128-bit arithmetic.
    pub fn eval(&self, x: i64) -> Result<i128, InterlaceError> {
        let x = i128::from(x);
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(x)
                .and_then(|v| v.checked_add(i128::from(c)))
                .ok_or(InterlaceError::Overflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if wrote {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let mag = c.unsigned_abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// GF(2) rank of the adjacency submatrix induced by the vertex set `s`.
/// Vertices outside `s` contribute zero rows and masked-off columns, neither
/// of which changes the rank.
fn induced_rank(g: &Graph, s: u64) -> usize {
    let mut rows = [0u64; MAX_Q_VARS];
    let mut cnt = 0;
    let mut left = s;
    while left != 0 {
        let i = left.trailing_zeros() as usize;
        left &= left - 1;
        rows[cnt] = g.row(i) & s;
        cnt += 1;
    }
    rank_of_rows(&mut rows[..cnt], s)
}

/// q(x) = Σ over vertex subsets S of (x-1)^(|S| - rank Γ[S]), assembled with
/// exact integer coefficients.
pub fn q_poly(g: &Graph) -> Result<IntPolynomial, InterlaceError> {
    let n = g.n();
    if n > MAX_Q_VARS {
        return Err(InterlaceError::TooLarge {
            what: "q_poly",
            n,
            max: MAX_Q_VARS,
        });
    }
    // binom[e][k] = C(e, k)
    let mut binom = vec![vec![0i64; n + 1]; n + 1];
    for e in 0..=n {
        binom[e][0] = 1;
        for k in 1..=e {
            binom[e][k] = binom[e - 1][k - 1] + if k <= e - 1 { binom[e - 1][k] } else { 0 };
        }
    }
    let mut coeffs = vec![0i64; n + 1];
    for s in 0..1u64 << n {
        let e = s.count_ones() as usize - induced_rank(g, s);
        // add (x-1)^e = Σ_k C(e,k) (-1)^(e-k) x^k
        for (k, c) in coeffs.iter_mut().enumerate().take(e + 1) {
            let term = binom[e][k];
            *c += if (e - k) % 2 == 0 { term } else { -term };
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Q(g, x) = Σ over assignments a in {I,H,N}^n of
/// (x-2)^(nullity of the modified adjacency matrix), with 0^0 = 1. At x = 2
/// only the full-rank assignments survive, giving the {I,H,N}^n flat count.
/// Away from 2 this is an extrapolated definition evaluated point-wise.
pub fn big_q_eval(g: &Graph, x: i64) -> Result<i128, InterlaceError> {
    let n = g.n();
    if n > MAX_BIG_Q_VARS {
        return Err(InterlaceError::TooLarge {
            what: "big_q_eval",
            n,
            max: MAX_BIG_Q_VARS,
        });
    }
    let base = i128::from(x) - 2;
    let mut sum: i128 = 0;
    let set = TransformSet::IHN;
    for idx in 0..set.assignments_total(n) {
        let (imask, nmask) = set.masks(n, idx);
        let keep = ((1u64 << n) - 1) & !imask;
        let mut rows = [0u64; MAX_BIG_Q_VARS];
        let mut cnt = 0;
        let mut left = keep;
        while left != 0 {
            let i = left.trailing_zeros() as usize;
            left &= left - 1;
            rows[cnt] = (g.row(i) & keep) | (nmask & (1 << i));
            cnt += 1;
        }
        let nullity = cnt - rank_of_rows(&mut rows[..cnt], keep);
        let term = base
            .checked_pow(nullity as u32)
            .ok_or(InterlaceError::Overflow)?;
        sum = sum.checked_add(term).ok_or(InterlaceError::Overflow)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfunc::AnfPolynomial;
    use crate::transform::count_flat_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen() {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    #[test]
    fn edgeless_q_is_a_power() {
        for n in 1..=6 {
            let q = q_poly(&Graph::empty(n)).unwrap();
            let mut expect = vec![0i64; n + 1];
            expect[n] = 1;
            assert_eq!(q.coeffs(), &expect[..]);
        }
        assert_eq!(q_poly(&Graph::empty(4)).unwrap().to_string(), "x^4");
    }

    #[test]
    fn path_and_clique_evaluations() {
        assert_eq!(q_poly(&Graph::path(4)).unwrap().eval(1).unwrap(), 5);
        for n in 2..=6 {
            assert_eq!(
                q_poly(&Graph::complete(n)).unwrap().eval(1).unwrap(),
                1 << (n - 1)
            );
        }
    }

    #[test]
    fn big_q_reference_points() {
        assert_eq!(big_q_eval(&Graph::path(4), 2).unwrap(), 44);
        for n in 2..=4 {
            assert_eq!(
                big_q_eval(&Graph::complete(n), 2).unwrap(),
                i128::from((n as u64 + 1) << (n - 1))
            );
        }
        assert_eq!(big_q_eval(&Graph::empty(1), 2).unwrap(), 2);
    }

    #[test]
    fn evaluations_count_flat_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0060);
        for _ in 0..25 {
            let n = rng.gen_range(1..=6usize);
            let g = random_graph(&mut rng, n);
            assert_eq!(
                q_poly(&g).unwrap().eval(1).unwrap(),
                i128::from(count_flat_graph(&g, TransformSet::IH).flat_count),
                "q(1) vs {{I,H}} on {g}"
            );
            assert_eq!(
                big_q_eval(&g, 2).unwrap(),
                i128::from(count_flat_graph(&g, TransformSet::IHN).flat_count),
                "Q(2) vs {{I,H,N}} on {g}"
            );
        }
    }

    #[test]
    fn display_formatting() {
        let p = IntPolynomial::new(vec![3, -2, 0, 1]);
        assert_eq!(p.to_string(), "x^3 - 2x + 3");
        assert_eq!(IntPolynomial::new(vec![0]).to_string(), "0");
        assert_eq!(IntPolynomial::new(vec![-1, 1]).to_string(), "x - 1");
    }

    #[test]
    fn gates() {
        assert!(matches!(
            q_poly(&Graph::empty(15)),
            Err(InterlaceError::TooLarge { .. })
        ));
        assert!(matches!(
            big_q_eval(&Graph::empty(11), 2),
            Err(InterlaceError::TooLarge { .. })
        ));
    }

    #[test]
    fn other_points_evaluate_exactly() {
        // Point evaluations away from the anchored values stay exact
        // integers; spot-check Horner against a direct sum.
        let g = AnfPolynomial::parse("01,12,23,03", 4)
            .unwrap()
            .graph()
            .unwrap();
        let q = q_poly(&g).unwrap();
        for x in -3..=3i64 {
            let direct: i128 = (0..1u64 << 4)
                .map(|s| {
                    let e = s.count_ones() as usize - super::induced_rank(&g, s);
                    i128::from(x - 1).pow(e as u32)
                })
                .sum();
            assert_eq!(q.eval(x).unwrap(), direct);
        }
    }
}
