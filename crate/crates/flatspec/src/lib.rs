//! Flat-spectrum analysis of Boolean functions.
//!
//! A Boolean function f on n variables is turned into the bipolar vector
//! v_x = (-1)^{f(x)} and hit with a tensor product of 2x2 kernels, one per
//! variable: the identity I, the Walsh-Hadamard kernel H = (1/sqrt2)[[1,1],[1,-1]],
//! or the Negahadamard kernel N = (1/sqrt2)[[1,i],[1,-i]]. A spectrum is *flat*
//! when every output amplitude has magnitude exactly 1. This crate counts flat
//! spectra over the transform sets {H}^n, {H,N}^n, {I,H}^n and {I,H,N}^n by
//! three independent routes:
//!
//! * a GF(2) rank criterion on a modified adjacency matrix (quadratics only),
//! * direct floating-point butterflies over the complex amplitudes,
//! * a derivative-balance test on truth tables,
//!
//! plus an exact Gaussian-integer engine used for bulk searches. On top of the
//! oracles sit the structured families (line, clique, clique-line-clique,
//! constant, monomial) with their closed-form counts, local-complementation
//! orbits, GF(4)-additive code distances, and interlace-polynomial evaluations.
//!
//! Variable 0 is the least-significant truth-table bit throughout.

pub mod boolfunc;
pub mod catalog;
pub mod constructions;
pub mod exact;
pub mod gf2;
pub mod gf4;
pub mod graph;
pub mod interlace;
pub mod orbits;
pub mod transform;

pub use boolfunc::{AnfPolynomial, BooleanFunction};
pub use constructions::Family;
pub use exact::count_flat_exact;
pub use gf4::{code_distance, gf4_generator, Gf4, Gf4Generator};
pub use graph::Graph;
pub use interlace::{big_q_eval, q_poly, IntPolynomial};
pub use orbits::{
    lc_orbit, local_complement, search_functions, search_quadratics, Maximizers, SearchResult,
};
pub use transform::{
    apply_transform, count_flat, count_flat_graph, count_flat_with, FlatCountReport, Kernel,
    Method, Spectrum, TransformAssignment, TransformSet,
};
