//! Boolean functions: algebraic normal form, packed truth tables, and the
//! digit-string monomial notation ("02,13,23" = x0x2 + x1x3 + x2x3).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

/// Truth tables are capped at 2^16 entries.
pub const MAX_VARS: usize = 16;
/// The digit-string notation uses one decimal digit per variable index.
pub const MAX_PARSE_VARS: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnfError {
    #[error("variable count {0} out of range 1..={MAX_VARS}")]
    BadVarCount(usize),
    #[error("digit-string notation requires n <= {MAX_PARSE_VARS}, got n = {0}")]
    TooManyVarsForDigits(usize),
    #[error("unexpected character {0:?} in monomial string (digits and commas only)")]
    BadCharacter(char),
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("digits within a monomial must be strictly increasing, got {0:?}")]
    NonIncreasingDigits(String),
    #[error("empty monomial between commas")]
    EmptyMonomial,
    #[error("function has degree {0} but this operation needs degree <= 2")]
    DegreeTooHigh(usize),
}

/// Algebraic normal form: XOR of AND-monomials plus a constant bit. Each
/// monomial is a nonempty set of variable indices packed into a bitmask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnfPolynomial {
    n: usize,
    monomials: BTreeSet<u32>,
    constant: bool,
}

impl AnfPolynomial {
    pub fn new(
        n: usize,
        monomials: impl IntoIterator<Item = u32>,
        constant: bool,
    ) -> Result<Self, AnfError> {
        if n == 0 || n > MAX_VARS {
            return Err(AnfError::BadVarCount(n));
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            if m == 0 {
                return Err(AnfError::EmptyMonomial);
            }
            if m >> n != 0 {
                return Err(AnfError::IndexOutOfRange {
                    index: (31 - m.leading_zeros()) as usize,
                    n,
                });
            }
            set.insert(m);
        }
        Ok(AnfPolynomial {
            n,
            monomials: set,
            constant,
        })
    }

    pub fn zero(n: usize) -> Self {
        AnfPolynomial::new(n, [], false).unwrap()
    }

    /// Parses the digit-string notation: comma-separated monomials, one
    /// decimal digit per variable, digits strictly increasing within a
    /// monomial. The empty string is the zero function.
    pub fn parse(text: &str, n: usize) -> Result<Self, AnfError> {
        if n == 0 || n > MAX_VARS {
            return Err(AnfError::BadVarCount(n));
        }
        if n > MAX_PARSE_VARS {
            return Err(AnfError::TooManyVarsForDigits(n));
        }
        let mut monomials = BTreeSet::new();
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(AnfPolynomial::zero(n));
        }
        for token in trimmed.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(AnfError::EmptyMonomial);
            }
            let mut mask = 0u32;
            let mut last: Option<usize> = None;
            for ch in token.chars() {
                let Some(d) = ch.to_digit(10) else {
                    return Err(AnfError::BadCharacter(ch));
                };
                let idx = d as usize;
                if idx >= n {
                    return Err(AnfError::IndexOutOfRange { index: idx, n });
                }
                if last.is_some_and(|p| idx <= p) {
                    return Err(AnfError::NonIncreasingDigits(token.to_string()));
                }
                last = Some(idx);
                mask |= 1 << idx;
            }
            monomials.insert(mask);
        }
        Ok(AnfPolynomial {
            n,
            monomials,
            constant: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    /// Monomials as variable-index bitmasks, in ascending mask order.
    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    /// Largest monomial size; 0 for constant functions.
    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the truth table: table[x] = constant + sum of monomial
    /// products over GF(2).
    pub fn to_function(&self) -> BooleanFunction {
        let mut words = vec![0u64; BooleanFunction::word_count(self.n)];
        if self.constant {
            words[0] = 1;
        }
        for &m in &self.monomials {
            set_packed_bit(&mut words, m as usize);
        }
        mobius_in_place(&mut words, self.n);
        if self.n < 6 {
            // The left-shifting transform smears bits past position 2^n;
            // keep stored words canonical so equality works bitwise.
            words[0] &= (1u64 << (1 << self.n)) - 1;
        }
        BooleanFunction {
            n: self.n,
            words,
        }
    }

    /// The graph with an edge per degree-2 monomial. Linear and constant
    /// terms carry no edge; degree > 2 is rejected.
    pub fn graph(&self) -> Result<Graph, AnfError> {
        let deg = self.degree();
        if deg > 2 {
            return Err(AnfError::DegreeTooHigh(deg));
        }
        let mut g = Graph::empty(self.n);
        for &m in &self.monomials {
            if m.count_ones() == 2 {
                let i = m.trailing_zeros() as usize;
                let j = (31 - m.leading_zeros()) as usize;
                g.set_edge(i, j, true);
            }
        }
        Ok(g)
    }

    /// The pure quadratic whose degree-2 monomials are the edges of `g`.
    pub fn from_graph(g: &Graph) -> Self {
        let monomials = g
            .edges()
            .into_iter()
            .map(|(i, j)| (1u32 << i) | (1u32 << j));
        AnfPolynomial::new(g.n(), monomials, false).unwrap()
    }

    /// Digit-string form, available when every index is a single digit and
    /// there is no constant term. Monomials are emitted in mask order.
    pub fn to_digit_string(&self) -> Option<String> {
        if self.n > MAX_PARSE_VARS || self.constant {
            return None;
        }
        let mut out = String::new();
        for (k, &m) in self.monomials.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            for i in 0..self.n {
                if m >> i & 1 == 1 {
                    out.push(char::from_digit(i as u32, 10).unwrap());
                }
            }
        }
        Some(out)
    }
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.to_digit_string() {
            if s.is_empty() {
                return write!(f, "0");
            }
            return write!(f, "{s}");
        }
        // Fallback for n > 10 or a constant term: explicit x-notation.
        let mut first = true;
        for &m in &self.monomials {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            for i in 0..self.n {
                if m >> i & 1 == 1 {
                    write!(f, "x{i}")?;
                }
            }
        }
        if self.constant {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "1")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Truth table of 2^n bits packed into u64 words; entry x is bit (x % 64) of
/// word (x / 64), with x = sum x_i 2^i and variable 0 least significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

impl BooleanFunction {
    fn word_count(n: usize) -> usize {
        if n < 6 {
            1
        } else {
            1 << (n - 6)
        }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        assert!(n >= 1 && n <= MAX_VARS, "variable count {n} out of range");
        let fill = if value { !0u64 } else { 0 };
        let mut words = vec![fill; Self::word_count(n)];
        if value && n < 6 {
            words[0] = (1u64 << (1 << n)) - 1;
        }
        BooleanFunction { n, words }
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Self {
        assert!(n >= 1 && n <= MAX_VARS, "variable count {n} out of range");
        assert_eq!(bits.len(), 1 << n, "truth table length must be 2^n");
        let mut f = BooleanFunction::constant(n, false);
        for (x, &b) in bits.iter().enumerate() {
            if b {
                f.words[x >> 6] |= 1 << (x & 63);
            }
        }
        f
    }

    /// Builds from the low 2^n bits of `table` (n <= 5).
    pub fn from_table_u32(n: usize, table: u32) -> Self {
        assert!(n >= 1 && n <= 5, "from_table_u32 needs n <= 5, got {n}");
        let mask = if n == 5 { !0u32 } else { (1u32 << (1 << n)) - 1 };
        BooleanFunction {
            n,
            words: vec![(table & mask) as u64],
        }
    }

    /// The low 2^n bits as a u32 (n <= 5).
    pub fn table_u32(&self) -> u32 {
        assert!(self.n <= 5, "table_u32 needs n <= 5, got {}", self.n);
        self.words[0] as u32
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, x: usize) -> bool {
        self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    pub fn set(&mut self, x: usize, value: bool) {
        if value {
            self.words[x >> 6] |= 1 << (x & 63);
        } else {
            self.words[x >> 6] &= !(1 << (x & 63));
        }
    }

    /// Number of inputs mapped to 1.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Recovers the ANF by Mobius inversion (self-inverse over GF(2)).
    pub fn anf(&self) -> AnfPolynomial {
        let mut words = self.words.clone();
        mobius_in_place(&mut words, self.n);
        let mut monomials = BTreeSet::new();
        let mut constant = false;
        for m in 0..self.len() {
            if words[m >> 6] >> (m & 63) & 1 == 1 {
                if m == 0 {
                    constant = true;
                } else {
                    monomials.insert(m as u32);
                }
            }
        }
        AnfPolynomial {
            n: self.n,
            monomials,
            constant,
        }
    }
}

fn set_packed_bit(words: &mut [u64], x: usize) {
    words[x >> 6] ^= 1 << (x & 63);
}

/// In-place GF(2) Mobius (zeta) transform over the subset lattice:
/// out[x] = XOR of in[y] over y subseteq x. Involutive.
fn mobius_in_place(words: &mut [u64], n: usize) {
    // Positions whose bit i is set, as a repeating 64-bit pattern (i < 6).
    const PATTERN: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    for i in 0..n.min(6) {
        let shift = 1 << i;
        if n < 6 {
            // Only the low 2^n bits of word 0 are meaningful.
            words[0] ^= (words[0] << shift) & PATTERN[i];
        } else {
            for w in words.iter_mut() {
                *w ^= (*w << shift) & PATTERN[i];
            }
        }
    }
    for i in 6..n {
        let stride = 1 << (i - 6);
        let mut base = 0;
        while base < words.len() {
            for k in 0..stride {
                words[base + stride + k] ^= words[base + k];
            }
            base += 2 * stride;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_quadratic_digit_string() {
        let p = AnfPolynomial::parse("02,13,23", 4).unwrap();
        let masks: Vec<u32> = p.monomials().collect();
        assert_eq!(masks, vec![0b0101, 0b1010, 0b1100]);
        assert!(!p.constant());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn parse_empty_is_zero() {
        let p = AnfPolynomial::parse("", 3).unwrap();
        assert_eq!(p, AnfPolynomial::zero(3));
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn parse_mixed_degree() {
        let p = AnfPolynomial::parse("012,03,13,23", 4).unwrap();
        let masks: Vec<u32> = p.monomials().collect();
        assert_eq!(masks, vec![0b0111, 0b1001, 0b1010, 0b1100]);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            AnfPolynomial::parse("05", 4),
            Err(AnfError::IndexOutOfRange { index: 5, n: 4 })
        );
        assert_eq!(
            AnfPolynomial::parse("00", 4),
            Err(AnfError::NonIncreasingDigits("00".into()))
        );
        assert_eq!(
            AnfPolynomial::parse("21", 4),
            Err(AnfError::NonIncreasingDigits("21".into()))
        );
        assert_eq!(AnfPolynomial::parse("0a", 4), Err(AnfError::BadCharacter('a')));
        assert_eq!(AnfPolynomial::parse("01,,23", 4), Err(AnfError::EmptyMonomial));
        assert_eq!(
            AnfPolynomial::parse("01", 11),
            Err(AnfError::TooManyVarsForDigits(11))
        );
    }

    #[test]
    fn digit_string_roundtrip() {
        let p = AnfPolynomial::parse("012,03,13,23", 4).unwrap();
        assert_eq!(p.to_digit_string().unwrap(), "012,03,13,23");
        assert_eq!(p.to_string(), "012,03,13,23");
        assert_eq!(AnfPolynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn zero_polynomial_evaluates_to_zero() {
        let f = AnfPolynomial::zero(2).to_function();
        assert_eq!(f, BooleanFunction::constant(2, false));
    }

    #[test]
    fn single_and_evaluates() {
        // x0x1 on two variables: 1 only at x = 3.
        let f = AnfPolynomial::parse("01", 2).unwrap().to_function();
        let bits: Vec<bool> = (0..4).map(|x| f.get(x)).collect();
        assert_eq!(bits, vec![false, false, false, true]);
    }

    #[test]
    fn line_matches_pointwise_evaluation() {
        // x0x1 + x1x2 evaluated directly, bit i of x = value of variable i.
        let f = AnfPolynomial::parse("01,12", 3).unwrap().to_function();
        for x in 0..8usize {
            let (x0, x1, x2) = (x & 1, x >> 1 & 1, x >> 2 & 1);
            let expect = (x0 & x1) ^ (x1 & x2);
            assert_eq!(f.get(x), expect == 1, "x = {x}");
        }
    }

    #[test]
    fn anf_of_all_ones_is_constant_one() {
        let p = BooleanFunction::constant(2, true).anf();
        assert!(p.constant());
        assert_eq!(p.monomial_count(), 0);
    }

    #[test]
    fn anf_of_xor_is_linear() {
        let f = BooleanFunction::from_bits(2, &[false, true, true, false]);
        let p = f.anf();
        let masks: Vec<u32> = p.monomials().collect();
        assert_eq!(masks, vec![0b01, 0b10]);
        assert!(!p.constant());
    }

    #[test]
    fn roundtrip_exhaustive_small() {
        // Every function on up to 4 variables survives table -> ANF -> table.
        for n in 1..=4usize {
            for t in 0u32..1 << (1 << n) {
                let f = BooleanFunction::from_table_u32(n, t);
                assert_eq!(f.anf().to_function(), f, "n={n} t={t:#x}");
            }
        }
    }

    #[test]
    fn roundtrip_randomized_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for n in 5..=8usize {
            for _ in 0..50 {
                let bits: Vec<bool> = (0..1 << n).map(|_| rng.gen()).collect();
                let f = BooleanFunction::from_bits(n, &bits);
                assert_eq!(f.anf().to_function(), f, "n={n}");
                let p = f.anf();
                let q = AnfPolynomial::new(n, p.monomials(), p.constant()).unwrap();
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn degree_of_named_functions() {
        let monomial = AnfPolynomial::new(6, [(1u32 << 6) - 1], false).unwrap();
        assert_eq!(monomial.degree(), 6);
        assert_eq!(AnfPolynomial::zero(4).degree(), 0);
        let clique = AnfPolynomial::from_graph(&Graph::complete(5));
        assert_eq!(clique.degree(), 2);
    }

    #[test]
    fn graph_of_quadratic() {
        let line = AnfPolynomial::parse("01,12", 3).unwrap();
        assert_eq!(line.graph().unwrap(), Graph::path(3));
        let clique = AnfPolynomial::from_graph(&Graph::complete(4));
        assert_eq!(clique.graph().unwrap(), Graph::complete(4));
        let p = AnfPolynomial::parse("02,13,23", 4).unwrap();
        assert_eq!(
            p.graph().unwrap(),
            Graph::from_edges(4, &[(0, 2), (1, 3), (2, 3)])
        );
        let cubic = AnfPolynomial::parse("012", 3).unwrap();
        assert_eq!(cubic.graph(), Err(AnfError::DegreeTooHigh(3)));
    }

    #[test]
    fn graph_roundtrip_drops_affine_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..40 {
            let n = rng.gen_range(2..=6);
            let mut g = Graph::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen() {
                        g.set_edge(i, j, true);
                    }
                }
            }
            assert_eq!(AnfPolynomial::from_graph(&g).graph().unwrap(), g);
            // Affine terms do not contribute edges.
            let mut masks: Vec<u32> = AnfPolynomial::from_graph(&g).monomials().collect();
            masks.push(1); // + x0
            let with_affine = AnfPolynomial::new(n, masks, true).unwrap();
            assert_eq!(with_affine.graph().unwrap(), g);
        }
    }
}
