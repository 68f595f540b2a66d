//! The spectral side: transform assignments over {I, H, N}, butterfly
//! application of the tensored kernels, flatness tests, and flat-spectrum
//! counting over a whole transform set by rank, spectral, or balance method.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::boolfunc::BooleanFunction;
use crate::gf2;
use crate::graph::Graph;

/// Tolerance on ||P_k| - 1| for spectral flatness. Amplitudes are sums of
/// 2^n unit-modulus terms scaled by 2^{-s/2}, exactly representable to far
/// better than this for every table size this crate accepts (n <= 16).
pub const FLAT_TOL: f64 = 1e-9;

/// Unitarity residual bound, relative to the exact norm 2^n.
pub const UNITARITY_REL_TOL: f64 = 1e-6;

/// Largest n for the truth-table-wise balance oracle (cost 4^{n-|R_I|} per
/// fixing of the I-variables).
pub const MAX_BALANCE_VARS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("assignment length {got} does not match variable count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{context} is gated to n <= {max}, got n = {n}")]
    TooLarge {
        n: usize,
        max: usize,
        context: &'static str,
    },
    #[error("rank method needs a quadratic, but the function has degree {degree}")]
    NeedsQuadratic { degree: usize },
    #[error("unknown kernel character {0:?} (expected I, H or N)")]
    BadKernel(char),
    #[error("unknown transform set {0:?} (expected h, hn, ih or ihn)")]
    BadSetLabel(String),
    #[error("unknown method {0:?} (expected rank, spectral or balance)")]
    BadMethod(String),
}

/// One 2x2 kernel choice for a single variable. H and N carry a 1/sqrt(2)
/// factor; I is the plain identity.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kernel {
    I,
    H,
    N,
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::I => "I",
            Kernel::H => "H",
            Kernel::N => "N",
        })
    }
}

/// A kernel per variable: entry i is the kernel acting on variable i. This is
/// the partition (R_I, R_H, R_N) of the variable set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TransformAssignment {
    kinds: Vec<Kernel>,
}

impl TransformAssignment {
    pub fn new(kinds: Vec<Kernel>) -> Self {
        assert!(!kinds.is_empty(), "empty assignment");
        TransformAssignment { kinds }
    }

    pub fn uniform(kernel: Kernel, n: usize) -> Self {
        TransformAssignment::new(vec![kernel; n])
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kinds(&self) -> &[Kernel] {
        &self.kinds
    }

    fn mask_of(&self, kernel: Kernel) -> u64 {
        let mut m = 0;
        for (i, &k) in self.kinds.iter().enumerate() {
            if k == kernel {
                m |= 1 << i;
            }
        }
        m
    }

    /// Bitmask of I-variables (R_I).
    pub fn i_mask(&self) -> u64 {
        self.mask_of(Kernel::I)
    }

    /// Bitmask of H-variables (R_H).
    pub fn h_mask(&self) -> u64 {
        self.mask_of(Kernel::H)
    }

    /// Bitmask of N-variables (R_N).
    pub fn n_mask(&self) -> u64 {
        self.mask_of(Kernel::N)
    }

    pub fn count(&self, kernel: Kernel) -> usize {
        self.kinds.iter().filter(|&&k| k == kernel).count()
    }
}

impl Index<usize> for TransformAssignment {
    type Output = Kernel;
    fn index(&self, i: usize) -> &Kernel {
        &self.kinds[i]
    }
}

impl fmt::Display for TransformAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.kinds {
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for TransformAssignment {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, TransformError> {
        let mut kinds = Vec::with_capacity(s.len());
        for ch in s.chars() {
            kinds.push(match ch.to_ascii_uppercase() {
                'I' => Kernel::I,
                'H' => Kernel::H,
                'N' => Kernel::N,
                other => return Err(TransformError::BadKernel(other)),
            });
        }
        if kinds.is_empty() {
            return Err(TransformError::BadKernel(' '));
        }
        Ok(TransformAssignment::new(kinds))
    }
}

/// The four transform sets studied: every assignment draws each variable's
/// kernel from the set.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum TransformSet {
    H,
    HN,
    IH,
    IHN,
}

impl TransformSet {
    pub const ALL: [TransformSet; 4] = [
        TransformSet::H,
        TransformSet::HN,
        TransformSet::IH,
        TransformSet::IHN,
    ];

    /// Kernels in enumeration order (I < H < N).
    pub fn kernels(self) -> &'static [Kernel] {
        match self {
            TransformSet::H => &[Kernel::H],
            TransformSet::HN => &[Kernel::H, Kernel::N],
            TransformSet::IH => &[Kernel::I, Kernel::H],
            TransformSet::IHN => &[Kernel::I, Kernel::H, Kernel::N],
        }
    }

    /// CLI label: h, hn, ih, ihn.
    pub fn label(self) -> &'static str {
        match self {
            TransformSet::H => "h",
            TransformSet::HN => "hn",
            TransformSet::IH => "ih",
            TransformSet::IHN => "ihn",
        }
    }

    /// Set notation, e.g. "{I,H,N}".
    pub fn notation(self) -> &'static str {
        match self {
            TransformSet::H => "{H}",
            TransformSet::HN => "{H,N}",
            TransformSet::IH => "{I,H}",
            TransformSet::IHN => "{I,H,N}",
        }
    }

    /// 1, 2^n, 2^n or 3^n.
    pub fn assignments_total(self, n: usize) -> u64 {
        match self {
            TransformSet::H => 1,
            TransformSet::HN | TransformSet::IH => 1 << n,
            TransformSet::IHN => 3u64.pow(n as u32),
        }
    }

    /// Assignment number `index` in odometer order: digit i of the base-b
    /// expansion of `index` picks the kernel for variable i, so variable 0
    /// ticks fastest, with digit order I < H < N.
    pub fn assignment(self, n: usize, index: u64) -> TransformAssignment {
        debug_assert!(index < self.assignments_total(n));
        let kernels = self.kernels();
        let base = kernels.len() as u64;
        let mut kinds = Vec::with_capacity(n);
        let mut rest = index;
        for _ in 0..n {
            kinds.push(kernels[(rest % base) as usize]);
            rest /= base;
        }
        TransformAssignment::new(kinds)
    }

    /// (i_mask, n_mask) of `assignment(n, index)` without building the vector.
    pub(crate) fn masks(self, n: usize, index: u64) -> (u64, u64) {
        let kernels = self.kernels();
        let base = kernels.len() as u64;
        let mut imask = 0;
        let mut nmask = 0;
        let mut rest = index;
        for i in 0..n {
            match kernels[(rest % base) as usize] {
                Kernel::I => imask |= 1 << i,
                Kernel::H => {}
                Kernel::N => nmask |= 1 << i,
            }
            rest /= base;
        }
        (imask, nmask)
    }
}

impl fmt::Display for TransformSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

impl FromStr for TransformSet {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, TransformError> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(TransformSet::H),
            "hn" => Ok(TransformSet::HN),
            "ih" => Ok(TransformSet::IH),
            "ihn" => Ok(TransformSet::IHN),
            other => Err(TransformError::BadSetLabel(other.to_string())),
        }
    }
}

/// How a flat count is computed.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Method {
    /// GF(2) rank of the modified adjacency matrix; quadratics only.
    Rank,
    /// Complex butterflies on the bipolar vector; any function.
    Spectral,
    /// Derivative-balance test on truth tables; any function, n <= 8.
    Balance,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rank => "rank",
            Method::Spectral => "spectral",
            Method::Balance => "balance",
        })
    }
}

impl FromStr for Method {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, TransformError> {
        match s.to_ascii_lowercase().as_str() {
            "rank" => Ok(Method::Rank),
            "spectral" => Ok(Method::Spectral),
            "balance" => Ok(Method::Balance),
            other => Err(TransformError::BadMethod(other.to_string())),
        }
    }
}

/// Complex spectrum P of a transformed function, 2^n amplitudes.
#[derive(Clone, Debug)]
pub struct Spectrum {
    n: usize,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// True iff every amplitude magnitude is within `tol` of 1.
    pub fn is_flat(&self, tol: f64) -> bool {
        assert!(tol > 0.0, "tolerance must be positive");
        self.values.iter().all(|p| (p.norm() - 1.0).abs() <= tol)
    }

    /// Largest ||P_k| - 1| over the spectrum.
    pub fn flatness_deviation(&self) -> f64 {
        self.values
            .iter()
            .map(|p| (p.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Sum of squared magnitudes; exactly 2^n for a unitary transform of a
    /// bipolar vector.
    pub fn norm_sq_sum(&self) -> f64 {
        self.values.iter().map(|p| p.norm_sqr()).sum()
    }

    /// |norm_sq_sum - 2^n|, the unitarity residual.
    pub fn unitarity_residual(&self) -> f64 {
        (self.norm_sq_sum() - (1u64 << self.n) as f64).abs()
    }
}

/// Counting result over one transform set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCountReport {
    pub set: TransformSet,
    pub assignments_total: u64,
    pub flat_count: u64,
    pub method: Method,
    /// The flat assignments themselves, when requested.
    pub detail: Option<Vec<TransformAssignment>>,
}

/// Applies the tensor product of the per-variable kernels to the bipolar
/// vector v_x = (-1)^{f(x)}: pass i combines index pairs differing in bit i,
/// I passes through, H and N butterfly with a 1/sqrt(2) factor.
pub fn apply_transform(
    f: &BooleanFunction,
    a: &TransformAssignment,
) -> Result<Spectrum, TransformError> {
    let n = f.n();
    if a.len() != n {
        return Err(TransformError::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    let mut v: Vec<Complex64> = (0..1usize << n)
        .map(|x| Complex64::new(if f.get(x) { -1.0 } else { 1.0 }, 0.0))
        .collect();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        let step = 1usize << i;
        match a[i] {
            Kernel::I => continue,
            Kernel::H => {
                for block in (0..1usize << n).step_by(2 * step) {
                    for x in block..block + step {
                        let u = v[x];
                        let w = v[x + step];
                        v[x] = (u + w) * s;
                        v[x + step] = (u - w) * s;
                    }
                }
            }
            Kernel::N => {
                let im = Complex64::new(0.0, 1.0);
                for block in (0..1usize << n).step_by(2 * step) {
                    for x in block..block + step {
                        let u = v[x];
                        let w = v[x + step] * im;
                        v[x] = (u + w) * s;
                        v[x + step] = (u - w) * s;
                    }
                }
            }
        }
    }
    Ok(Spectrum { n, values: v })
}

/// Balance criterion: the spectrum is flat iff for every fixing of the
/// I-variables, g(x) + g(x+k) + sum over N-variables of k_i x_i is balanced
/// on the free variables for every k != 0, where g is the restriction of f.
pub fn is_flat_balance(
    f: &BooleanFunction,
    a: &TransformAssignment,
) -> Result<bool, TransformError> {
    let n = f.n();
    if a.len() != n {
        return Err(TransformError::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    if n > MAX_BALANCE_VARS {
        return Err(TransformError::TooLarge {
            n,
            max: MAX_BALANCE_VARS,
            context: "the balance oracle",
        });
    }
    Ok(balance_verdict(f, a.i_mask(), a.n_mask()))
}

fn balance_verdict(f: &BooleanFunction, imask: u64, nmask: u64) -> bool {
    let n = f.n();
    let free: Vec<usize> = (0..n).filter(|&i| imask >> i & 1 == 0).collect();
    let fixed: Vec<usize> = (0..n).filter(|&i| imask >> i & 1 == 1).collect();
    let t = free.len();
    // N-mask compressed onto the free variables.
    let mut nfree = 0usize;
    for (y, &i) in free.iter().enumerate() {
        if nmask >> i & 1 == 1 {
            nfree |= 1 << y;
        }
    }
    let mut g = vec![false; 1 << t];
    for c in 0u64..1 << fixed.len() {
        for (y, slot) in g.iter_mut().enumerate() {
            let mut x = 0usize;
            for (b, &i) in free.iter().enumerate() {
                x |= ((y >> b) & 1) << i;
            }
            for (b, &i) in fixed.iter().enumerate() {
                x |= (((c >> b) & 1) as usize) << i;
            }
            *slot = f.get(x);
        }
        for k in 1usize..1 << t {
            let mut ones = 0usize;
            for (y, &gy) in g.iter().enumerate() {
                let lin = (k & nfree & y).count_ones() & 1 == 1;
                if gy ^ g[y ^ k] ^ lin {
                    ones += 1;
                }
            }
            if ones != 1 << (t - 1) {
                return false;
            }
        }
    }
    true
}

/// Counts flat spectra of `f` over every assignment in `set`, with the
/// default flatness tolerance and no per-assignment detail.
pub fn count_flat(
    f: &BooleanFunction,
    set: TransformSet,
    method: Method,
) -> Result<FlatCountReport, TransformError> {
    count_flat_with(f, set, method, FLAT_TOL, false)
}

/// Full-control variant of `count_flat`.
pub fn count_flat_with(
    f: &BooleanFunction,
    set: TransformSet,
    method: Method,
    tol: f64,
    detail: bool,
) -> Result<FlatCountReport, TransformError> {
    let n = f.n();
    let total = set.assignments_total(n);
    let graph = match method {
        Method::Rank => {
            let anf = f.anf();
            let deg = anf.degree();
            if deg > 2 {
                return Err(TransformError::NeedsQuadratic { degree: deg });
            }
            Some(anf.graph().expect("degree was just checked"))
        }
        Method::Spectral => None,
        Method::Balance => {
            if n > MAX_BALANCE_VARS {
                return Err(TransformError::TooLarge {
                    n,
                    max: MAX_BALANCE_VARS,
                    context: "the balance oracle",
                });
            }
            None
        }
    };
    let verdict = |idx: u64| -> bool {
        match method {
            Method::Rank => {
                let (imask, nmask) = set.masks(n, idx);
                gf2::flat_rank_masked(graph.as_ref().unwrap(), imask, nmask)
            }
            Method::Spectral => {
                let a = set.assignment(n, idx);
                apply_transform(f, &a)
                    .expect("assignment length matches by construction")
                    .is_flat(tol)
            }
            Method::Balance => {
                let (imask, nmask) = set.masks(n, idx);
                balance_verdict(f, imask, nmask)
            }
        }
    };
    let (flat_count, listing) = if detail {
        let mut indices: Vec<u64> = (0..total).into_par_iter().filter(|&i| verdict(i)).collect();
        indices.sort_unstable();
        (indices.len() as u64, Some(indices))
    } else {
        let count = (0..total).into_par_iter().filter(|&i| verdict(i)).count() as u64;
        (count, None)
    };
    Ok(FlatCountReport {
        set,
        assignments_total: total,
        flat_count,
        method,
        detail: listing.map(|indices| {
            indices
                .into_iter()
                .map(|idx| set.assignment(n, idx))
                .collect()
        }),
    })
}

/// Rank-method count for a graph (quadratic) directly; infallible since the
/// degree is 2 by construction.
pub fn count_flat_graph(g: &Graph, set: TransformSet) -> FlatCountReport {
    let n = g.n();
    assert!(n <= 32, "graph counting is gated to n <= 32, got {n}");
    let total = set.assignments_total(n);
    let flat_count = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let (imask, nmask) = set.masks(n, idx);
            gf2::flat_rank_masked(g, imask, nmask)
        })
        .count() as u64;
    FlatCountReport {
        set,
        assignments_total: total,
        flat_count,
        method: Method::Rank,
        detail: None,
    }
}

/// The flat assignments of a graph under the rank method, in odometer order.
pub fn flat_assignments_graph(g: &Graph, set: TransformSet) -> Vec<TransformAssignment> {
    let n = g.n();
    (0..set.assignments_total(n))
        .filter(|&idx| {
            let (imask, nmask) = set.masks(n, idx);
            gf2::flat_rank_masked(g, imask, nmask)
        })
        .map(|idx| set.assignment(n, idx))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfunc::AnfPolynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn func(text: &str, n: usize) -> BooleanFunction {
        AnfPolynomial::parse(text, n).unwrap().to_function()
    }

    #[test]
    fn odometer_order() {
        let labels: Vec<String> = (0..4)
            .map(|i| TransformSet::HN.assignment(2, i).to_string())
            .collect();
        assert_eq!(labels, vec!["HH", "NH", "HN", "NN"]);
        let labels: Vec<String> = (0..3)
            .map(|i| TransformSet::IHN.assignment(1, i).to_string())
            .collect();
        assert_eq!(labels, vec!["I", "H", "N"]);
        assert_eq!(TransformSet::IH.assignment(3, 5).to_string(), "HIH");
    }

    #[test]
    fn totals_by_set() {
        assert_eq!(TransformSet::H.assignments_total(5), 1);
        assert_eq!(TransformSet::HN.assignments_total(5), 32);
        assert_eq!(TransformSet::IH.assignments_total(5), 32);
        assert_eq!(TransformSet::IHN.assignments_total(5), 243);
    }

    #[test]
    fn masks_match_assignment() {
        for idx in 0..TransformSet::IHN.assignments_total(4) {
            let a = TransformSet::IHN.assignment(4, idx);
            assert_eq!(TransformSet::IHN.masks(4, idx), (a.i_mask(), a.n_mask()));
        }
    }

    #[test]
    fn identity_transform_of_constant() {
        let f = BooleanFunction::constant(2, false);
        let s = apply_transform(&f, &"II".parse().unwrap()).unwrap();
        for p in s.values() {
            assert_eq!(*p, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn hadamard_of_one_variable_constant() {
        let f = BooleanFunction::constant(1, false);
        let s = apply_transform(&f, &"H".parse().unwrap()).unwrap();
        assert!((s.values()[0] - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!(s.values()[1].norm() < 1e-12);
    }

    #[test]
    fn clique2_is_bent() {
        let s = apply_transform(&func("01", 2), &"HH".parse().unwrap()).unwrap();
        assert!(s.is_flat(FLAT_TOL));
        let s4 = apply_transform(&func("01,02,03,12,13,23", 4), &"HHHH".parse().unwrap()).unwrap();
        assert!(s4.is_flat(FLAT_TOL));
    }

    #[test]
    fn constant_is_not_bent() {
        let f = BooleanFunction::constant(2, false);
        let s = apply_transform(&f, &"HH".parse().unwrap()).unwrap();
        assert!(!s.is_flat(FLAT_TOL));
        // Single spike of magnitude 2^{n/2} = 2 at k = 0.
        assert!((s.values()[0].norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn monomial_needs_all_but_one_identity() {
        // x0x1x2: no assignment with fewer than 2 I-kernels is flat.
        let f = func("012", 3);
        for idx in 0..TransformSet::IHN.assignments_total(3) {
            let a = TransformSet::IHN.assignment(3, idx);
            if a.count(Kernel::I) < 2 {
                let s = apply_transform(&f, &a).unwrap();
                assert!(!s.is_flat(FLAT_TOL), "unexpected flat at {a}");
            }
        }
    }

    #[test]
    fn count_examples_line4_every_method() {
        let f = func("01,12,23", 4);
        for method in [Method::Rank, Method::Spectral, Method::Balance] {
            let r = count_flat(&f, TransformSet::HN, method).unwrap();
            assert_eq!(r.flat_count, 11, "method {method}");
            assert_eq!(r.assignments_total, 16);
        }
    }

    #[test]
    fn count_examples_other_sets() {
        let clique4 = func("01,02,03,12,13,23", 4);
        assert_eq!(
            count_flat(&clique4, TransformSet::IH, Method::Rank).unwrap().flat_count,
            8
        );
        let line4 = func("01,12,23", 4);
        assert_eq!(
            count_flat(&line4, TransformSet::IHN, Method::Rank).unwrap().flat_count,
            44
        );
        let constant3 = BooleanFunction::constant(3, false);
        assert_eq!(
            count_flat(&constant3, TransformSet::IHN, Method::Spectral).unwrap().flat_count,
            8
        );
        let monomial3 = func("012", 3);
        assert_eq!(
            count_flat(&monomial3, TransformSet::IHN, Method::Spectral).unwrap().flat_count,
            4
        );
    }

    #[test]
    fn rank_method_rejects_cubics() {
        let err = count_flat(&func("012", 3), TransformSet::HN, Method::Rank).unwrap_err();
        assert_eq!(err, TransformError::NeedsQuadratic { degree: 3 });
    }

    #[test]
    fn balance_examples() {
        for n in 1..=6 {
            let f = BooleanFunction::constant(n, false);
            let all_n = TransformAssignment::uniform(Kernel::N, n);
            assert!(is_flat_balance(&f, &all_n).unwrap(), "n={n}");
        }
        let f2 = BooleanFunction::constant(2, false);
        assert!(!is_flat_balance(&f2, &"HN".parse().unwrap()).unwrap());
    }

    #[test]
    fn balance_agrees_with_spectral_on_random_quadratics() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0020);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen() {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let f = AnfPolynomial::from_graph(&g).to_function();
            for idx in 0..TransformSet::IHN.assignments_total(n) {
                let a = TransformSet::IHN.assignment(n, idx);
                let spectral = apply_transform(&f, &a).unwrap().is_flat(FLAT_TOL);
                let balance = is_flat_balance(&f, &a).unwrap();
                let rank = gf2::is_flat_rank(&g, &a).unwrap();
                assert_eq!(spectral, balance, "f={f:?} a={a}");
                assert_eq!(spectral, rank, "f={f:?} a={a}");
            }
        }
    }

    #[test]
    fn unitarity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0021);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let bits: Vec<bool> = (0..1 << n).map(|_| rng.gen()).collect();
            let f = BooleanFunction::from_bits(n, &bits);
            let idx = rng.gen_range(0..TransformSet::IHN.assignments_total(n));
            let a = TransformSet::IHN.assignment(n, idx);
            let s = apply_transform(&f, &a).unwrap();
            assert!(s.unitarity_residual() <= UNITARITY_REL_TOL * (1u64 << n) as f64);
        }
    }

    #[test]
    fn affine_terms_do_not_change_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0022);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let bits: Vec<bool> = (0..1 << n).map(|_| rng.gen()).collect();
            let f = BooleanFunction::from_bits(n, &bits);
            // Add a random affine function c.x + d.
            let c: usize = rng.gen_range(0..1 << n);
            let d: bool = rng.gen();
            let shifted_bits: Vec<bool> = (0..1 << n)
                .map(|x| f.get(x) ^ ((x & c).count_ones() & 1 == 1) ^ d)
                .collect();
            let shifted = BooleanFunction::from_bits(n, &shifted_bits);
            for set in TransformSet::ALL {
                let a = count_flat(&f, set, Method::Spectral).unwrap().flat_count;
                let b = count_flat(&shifted, set, Method::Spectral).unwrap().flat_count;
                assert_eq!(a, b, "set {set} n={n}");
            }
        }
    }

    #[test]
    fn relabeling_preserves_counts() {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0023);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let bits: Vec<bool> = (0..1 << n).map(|_| rng.gen()).collect();
            let f = BooleanFunction::from_bits(n, &bits);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            // g(x) = f(x permuted): bit perm[i] of the argument of f is bit i of x.
            let permuted_bits: Vec<bool> = (0..1usize << n)
                .map(|x| {
                    let mut y = 0usize;
                    for i in 0..n {
                        y |= ((x >> perm[i]) & 1) << i;
                    }
                    f.get(y)
                })
                .collect();
            let g = BooleanFunction::from_bits(n, &permuted_bits);
            for set in TransformSet::ALL {
                assert_eq!(
                    count_flat(&f, set, Method::Spectral).unwrap().flat_count,
                    count_flat(&g, set, Method::Spectral).unwrap().flat_count,
                    "set {set} n={n}"
                );
            }
        }
    }

    #[test]
    fn detail_lists_flat_assignments() {
        let f = func("01", 2);
        let r = count_flat_with(&f, TransformSet::IHN, Method::Spectral, FLAT_TOL, true).unwrap();
        let detail = r.detail.unwrap();
        assert_eq!(detail.len() as u64, r.flat_count);
        // The all-I assignment is flat for every function.
        assert_eq!(detail[0].to_string(), "II");
        // Clique n=2 is bent.
        assert!(detail.iter().any(|a| a.to_string() == "HH"));
    }

    #[test]
    fn balance_gate() {
        let f = BooleanFunction::constant(9, false);
        let a = TransformAssignment::uniform(Kernel::H, 9);
        assert!(matches!(
            is_flat_balance(&f, &a),
            Err(TransformError::TooLarge { n: 9, .. })
        ));
    }
}
