//! GF(4)-additive codes from graphs: the generator Γ + ωI and the minimum
//! symbol weight of the additive span, where ω² + ω + 1 = 0 and each symbol
//! is written over the GF(2) basis {1, ω}.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

/// Codeword enumeration walks all 2^n - 1 combinations.
pub const MAX_CODE_VARS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("distance enumeration is gated to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// One GF(4) symbol, as coordinates over the basis {1, ω}: ω̄ = 1 + ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gf4 {
    Zero,
    One,
    Omega,
    OmegaBar,
}

impl Gf4 {
    fn from_parts(one: bool, omega: bool) -> Gf4 {
        match (one, omega) {
            (false, false) => Gf4::Zero,
            (true, false) => Gf4::One,
            (false, true) => Gf4::Omega,
            (true, true) => Gf4::OmegaBar,
        }
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gf4::Zero => "0",
            Gf4::One => "1",
            Gf4::Omega => "w",
            Gf4::OmegaBar => "W",
        })
    }
}

/// Generator matrix Γ + ωI of the additive code attached to a graph; row i
/// has 1-entries at the neighbors of i and ω on the diagonal, stored as two
/// bit rows per basis coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf4Generator {
    n: usize,
    one_rows: Vec<u64>,
    omega_rows: Vec<u64>,
}

impl Gf4Generator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbol(&self, i: usize, j: usize) -> Gf4 {
        assert!(i < self.n && j < self.n);
        Gf4::from_parts(
            self.one_rows[i] >> j & 1 == 1,
            self.omega_rows[i] >> j & 1 == 1,
        )
    }

    /// The 1-coordinate of row i (exactly the graph adjacency row).
    pub fn one_row(&self, i: usize) -> u64 {
        self.one_rows[i]
    }

    /// The ω-coordinate of row i (exactly the diagonal bit).
    pub fn omega_row(&self, i: usize) -> u64 {
        self.omega_rows[i]
    }
}

impl fmt::Display for Gf4Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str("\n")?;
            }
            for j in 0..self.n {
                write!(f, "{}", self.symbol(i, j))?;
            }
        }
        Ok(())
    }
}

pub fn gf4_generator(g: &Graph) -> Gf4Generator {
    let n = g.n();
    Gf4Generator {
        n,
        one_rows: (0..n).map(|i| g.row(i)).collect(),
        omega_rows: (0..n).map(|i| 1u64 << i).collect(),
    }
}

/// Minimum number of nonzero symbols over the 2^n - 1 nonzero GF(2)-linear
/// combinations of generator rows. A combination c has 1-part Γc and ω-part
/// c itself, so its weight is popcount(Γc | c).
pub fn code_distance(g: &Graph) -> Result<u32, CodeError> {
    let n = g.n();
    if n > MAX_CODE_VARS {
        return Err(CodeError::TooLarge {
            n,
            max: MAX_CODE_VARS,
        });
    }
    let mut best = u32::MAX;
    let mut acc = 0u64; // Γ · gray(k)
    for k in 1..1u64 << n {
        acc ^= g.row(k.trailing_zeros() as usize);
        let c = k ^ (k >> 1);
        best = best.min((acc | c).count_ones());
        if best == 1 {
            break;
        }
    }
    Ok(best)
}
