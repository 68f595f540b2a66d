//! The structured families — line, clique, clique-line-clique, constant,
//! monomial — and their predicted flat-spectrum counts. Every count is
//! computed with exact integer recurrences or integer closed forms; the
//! radical closed forms (with sqrt(3), sqrt(5)) exist only as identity checks
//! against the recurrences.

use thiserror::Error;

use crate::boolfunc::AnfPolynomial;
use crate::transform::TransformSet;

/// Parameter cap for predicted counts; keeps every value comfortably inside
/// u64 (the largest supported count is below 2^48).
pub const MAX_FORMULA_VARS: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("no closed-form count for the {family} family under {set}")]
    Unsupported {
        family: &'static str,
        set: TransformSet,
    },
    #[error("the monomial count n+1 does not hold at n = 2 (x0x1 is the 2-clique; use the clique or line formula)")]
    MonomialTwoVars,
    #[error("the clique-line-clique formula under {set} needs n >= 2 and m >= 2, got n = {n}, m = {m}")]
    ClcRange {
        set: TransformSet,
        n: usize,
        m: usize,
    },
    #[error("formula parameters are capped at {MAX_FORMULA_VARS} total variables, got {0}")]
    TooLarge(usize),
}

/// A named function family with its parameters.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// x0x1 + x1x2 + ... + x_{n-2}x_{n-1} (the path graph).
    Line { n: usize },
    /// Sum of all x_i x_j, i < j (the complete graph).
    Clique { n: usize },
    /// Cliques of sizes n and m bridged by the edge {n-1, n}.
    CliqueLineClique { n: usize, m: usize },
    /// The zero function on n variables.
    Constant { n: usize },
    /// The single degree-n monomial x0 x1 ... x_{n-1}.
    Monomial { n: usize },
}

impl Family {
    /// CLI-facing family name.
    pub fn kind_label(&self) -> &'static str {
        match self {
            Family::Line { .. } => "line",
            Family::Clique { .. } => "clique",
            Family::CliqueLineClique { .. } => "clc",
            Family::Constant { .. } => "constant",
            Family::Monomial { .. } => "monomial",
        }
    }

    /// Total variable count of the built function.
    pub fn n_vars(&self) -> usize {
        match *self {
            Family::Line { n }
            | Family::Clique { n }
            | Family::Constant { n }
            | Family::Monomial { n } => n,
            Family::CliqueLineClique { n, m } => n + m,
        }
    }

    /// The exact ANF of the family member (affine part zero).
    pub fn build(&self) -> AnfPolynomial {
        let pair = |i: usize, j: usize| (1u32 << i) | (1u32 << j);
        match *self {
            Family::Line { n } => {
                assert!(n >= 1, "line needs n >= 1");
                let mons = (0..n.saturating_sub(1)).map(|i| pair(i, i + 1));
                AnfPolynomial::new(n, mons, false).unwrap()
            }
            Family::Clique { n } => {
                assert!(n >= 1, "clique needs n >= 1");
                let mut mons = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        mons.push(pair(i, j));
                    }
                }
                AnfPolynomial::new(n, mons, false).unwrap()
            }
            Family::CliqueLineClique { n, m } => {
                assert!(n >= 1 && m >= 1, "clique-line-clique needs n, m >= 1");
                let mut mons = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        mons.push(pair(i, j));
                    }
                }
                mons.push(pair(n - 1, n));
                for i in n..n + m {
                    for j in i + 1..n + m {
                        mons.push(pair(i, j));
                    }
                }
                AnfPolynomial::new(n + m, mons, false).unwrap()
            }
            Family::Constant { n } => AnfPolynomial::zero(n),
            Family::Monomial { n } => {
                assert!(n >= 1, "monomial needs n >= 1");
                AnfPolynomial::new(n, [(1u32 << n) - 1], false).unwrap()
            }
        }
    }

    /// The predicted flat-spectrum count for this family under `set`,
    /// computed with exact integers. Errors for (family, set) pairs with no
    /// formula and for parameters outside a formula's validity range.
    pub fn predicted_count(&self, set: TransformSet) -> Result<u64, FormulaError> {
        if self.n_vars() > MAX_FORMULA_VARS {
            return Err(FormulaError::TooLarge(self.n_vars()));
        }
        let unsupported = Err(FormulaError::Unsupported {
            family: self.kind_label(),
            set,
        });
        match (*self, set) {
            (Family::Line { n }, TransformSet::HN) => Ok(line_seq_hn(n)[n]),
            (Family::Line { n }, TransformSet::IH) => Ok(line_seq_ih(n)[n]),
            (Family::Line { n }, TransformSet::IHN) => Ok(line_seq_ihn(n)[n]),
            (Family::Clique { n }, TransformSet::HN) => Ok(clique_count_hn(n)),
            (Family::Clique { n }, TransformSet::IH) => Ok(clique_count_ih(n)),
            (Family::Clique { n }, TransformSet::IHN) => Ok(clique_count_ihn(n)),
            (Family::CliqueLineClique { n, m }, TransformSet::HN) => Ok(clc_count_hn(n, m)),
            (Family::CliqueLineClique { n, m }, TransformSet::IH) => clc_count_ih(n, m),
            (Family::CliqueLineClique { n, m }, TransformSet::IHN) => clc_count_ihn(n, m),
            (Family::Constant { n }, TransformSet::IHN) => Ok(1u64 << n),
            (Family::Monomial { n }, TransformSet::IHN) => {
                if n == 2 {
                    Err(FormulaError::MonomialTwoVars)
                } else {
                    Ok(n as u64 + 1)
                }
            }
            _ => unsupported,
        }
    }
}

/// Line counts under {H,N}: K_n = 2^n - K_{n-1} with K_0 = 1 (hence K_1 = 1).
/// Returns the sequence K_0..=K_max.
pub fn line_seq_hn(max: usize) -> Vec<u64> {
    let mut k = vec![1u64];
    for n in 1..=max {
        k.push((1u64 << n) - k[n - 1]);
    }
    k
}

/// Line counts under {I,H}: the Fibonacci recurrence K_n = K_{n-1} + K_{n-2}
/// with K_0 = K_1 = 1.
pub fn line_seq_ih(max: usize) -> Vec<u64> {
    let mut k = vec![1u64, 1];
    for n in 2..=max {
        k.push(k[n - 1] + k[n - 2]);
    }
    k.truncate(max + 1);
    k
}

/// Line counts under {I,H,N}: K_n = 2(K_{n-1} + K_{n-2}) with K_0 = 1, K_1 = 2.
pub fn line_seq_ihn(max: usize) -> Vec<u64> {
    let mut k = vec![1u64, 2];
    for n in 2..=max {
        k.push(2 * (k[n - 1] + k[n - 2]));
    }
    k.truncate(max + 1);
    k
}

/// Clique count under {H,N}: K_n = K_{n-1} + 1 + (-1)^n with K_1 = 1
/// (equivalently n plus 1 when n is even).
pub fn clique_count_hn(n: usize) -> u64 {
    assert!(n >= 1);
    let mut k = 1u64;
    for i in 2..=n {
        // 1 + (-1)^i: adds 2 for even i, nothing for odd i.
        if i % 2 == 0 {
            k += 2;
        }
    }
    k
}

/// Clique count under {I,H}: 2^{n-1}.
pub fn clique_count_ih(n: usize) -> u64 {
    assert!(n >= 1);
    1u64 << (n - 1)
}

/// Clique count under {I,H,N}: (n+1) 2^{n-1}.
pub fn clique_count_ihn(n: usize) -> u64 {
    assert!(n >= 1);
    (n as u64 + 1) << (n - 1)
}

fn even(k: usize) -> u64 {
    u64::from(k % 2 == 0)
}

/// Clique-line-clique count under {H,N}:
/// 3nm - n[(1+(-1)^m)/2] - m[(1+(-1)^n)/2] + 3[(1+(-1)^n)/2][(1+(-1)^m)/2].
pub fn clc_count_hn(n: usize, m: usize) -> u64 {
    assert!(n >= 1 && m >= 1);
    let (n64, m64) = (n as u64, m as u64);
    3 * n64 * m64 - n64 * even(m) - m64 * even(n) + 3 * even(n) * even(m)
}

/// Clique-line-clique count under {I,H}: 5 * 2^{n+m-4}. The closed form
/// requires both cliques to have at least two vertices; a size-1 clique
/// degenerates the structure into a pendant vertex and the formula fails
/// there (e.g. n=1, m=3 has 6 flat spectra, not 5).
pub fn clc_count_ih(n: usize, m: usize) -> Result<u64, FormulaError> {
    assert!(n >= 1 && m >= 1);
    if n < 2 || m < 2 {
        return Err(FormulaError::ClcRange {
            set: TransformSet::IH,
            n,
            m,
        });
    }
    Ok(5u64 << (n + m - 4))
}

/// Clique-line-clique count under {I,H,N}: 2^{n+m-3} (3nm + 2n + 2m + 2),
/// valid for n, m >= 2 (as with {I,H}, size-1 cliques fall outside the
/// formula: n=1, m=2 has 16 flat spectra, the formula would give 14).
pub fn clc_count_ihn(n: usize, m: usize) -> Result<u64, FormulaError> {
    assert!(n >= 1 && m >= 1);
    if n < 2 || m < 2 {
        return Err(FormulaError::ClcRange {
            set: TransformSet::IHN,
            n,
            m,
        });
    }
    let (n64, m64) = (n as u64, m as u64);
    Ok((3 * n64 * m64 + 2 * n64 + 2 * m64 + 2) << (n + m - 3))
}

/// The {H,N} line closed form (2^{n+1} + (-1)^n)/3, evaluated exactly.
pub fn line_hn_closed(n: usize) -> u64 {
    let num = if n % 2 == 0 {
        (1u64 << (n + 1)) + 1
    } else {
        (1u64 << (n + 1)) - 1
    };
    assert!(num % 3 == 0, "closed form must divide exactly");
    num / 3
}

/// The {I,H} line count from the radical closed form, evaluated exactly in
/// the ring Z[sqrt(5)]: with (1+sqrt5)^{n+1} = c + d*sqrt5, K_n = d / 2^n.
pub fn line_ih_radical(n: usize) -> u64 {
    let (mut c, mut d) = (1u128, 1u128); // (1 + sqrt5)^1
    for _ in 0..n {
        (c, d) = (c + 5 * d, c + d);
    }
    let scale = 1u128 << n;
    assert!(d % scale == 0, "radical form must divide exactly");
    (d / scale) as u64
}

/// The {I,H,N} line count from the radical closed form, evaluated exactly in
/// Z[sqrt(3)]: with (1+sqrt3)^{n+1} = a + b*sqrt3, K_n = b.
pub fn line_ihn_radical(n: usize) -> u64 {
    let (mut a, mut b) = (1u128, 1u128); // (1 + sqrt3)^1
    for _ in 0..n {
        (a, b) = (a + 3 * b, a + b);
    }
    b as u64
}

/// Right side of the {I,H} convolution identity:
/// K_n^{IH} = K_n^H + sum_{i=0}^{n-1} K^H_{n-1-i} K_i^{IH},
/// where K_i^H = (1+(-1)^i)/2 for i >= 1 and K_0^H = 1.
pub fn line_ih_convolution(n: usize) -> u64 {
    let kh = |i: usize| even(i); // 1 exactly when i is even, matching K_0^H = 1
    let ih = line_seq_ih(n);
    let mut acc = kh(n);
    for i in 0..n {
        acc += kh(n - 1 - i) * ih[i];
    }
    acc
}

/// Right side of the {I,H,N} convolution identity:
/// K_n^{IHN} = K_n + sum_{i=0}^{n-1} K_{n-1-i} K_i^{IHN}, K the {H,N} line
/// counts with K_0 = 1.
pub fn line_ihn_convolution(n: usize) -> u64 {
    let hn = line_seq_hn(n);
    let ihn = line_seq_ihn(n);
    let mut acc = hn[n];
    for i in 0..n {
        acc += hn[n - 1 - i] * ihn[i];
    }
    acc
}
