//! Exact algorithms for weighted and unweighted vertex integrity.
//!
//! For a vertex-weighted graph `G`, the weighted vertex integrity is
//!
//! ```text
//! wvi(G) = min over S ⊆ V of  weight(S) + max_{C ∈ cc(G - S)} weight(V(C))
//! ```
//!
//! The crate provides a brute-force [`oracle`], an FPT branching algorithm
//! in the solution value ([`natural`]), enumeration over twin classes for
//! neighborhood diversity and twin cover ([`quotient`]), a dynamic program
//! over modular decompositions ([`mw`]), the cluster-vertex-deletion
//! algorithm for the unweighted problem ([`cvd`]), and an XP dynamic program
//! over clique-width expressions ([`cw`]). [`reductions`] builds the gadget
//! instances of the known hardness reductions so the solvers can be checked
//! against each other on structured inputs.

pub mod cvd;
pub mod cw;
mod error;
pub mod format;
pub mod graph;
pub mod mw;
pub mod natural;
pub mod oracle;
pub mod params;
pub mod quotient;
pub mod reductions;

pub use error::{Error, Result};
pub use graph::{
    connected_components, evaluate, is_redundant, peel_universal, strip_redundant, twin_classes,
    Peeled, Solution, TwinPartition, Vertex, WeightedGraph,
};

/// Caps for the routines whose running time is exponential in some input
/// measure. Exceeding a cap yields [`Error::TooLarge`], never a truncated
/// answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Vertex count accepted by the brute-force oracle.
    pub oracle_vertices: usize,
    /// Edge count accepted by the line-integrity oracle.
    pub oracle_edges: usize,
    /// Number of twin classes accepted by the neighborhood-diversity solver.
    pub twin_classes: usize,
    /// Size of the cluster vertex deletion set accepted by the cvd solver.
    pub cvd_size: usize,
    /// Quotient size accepted by the modular-width solver.
    pub md_width: usize,
    /// Label count accepted by the clique-width solver.
    pub cw_labels: usize,
    /// Total weight accepted by the pseudo-polynomial solvers (mw, cw).
    pub unary_weight: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_vertices: 22,
            oracle_edges: 22,
            twin_classes: 24,
            cvd_size: 6,
            md_width: 20,
            cw_labels: 8,
            unary_weight: 1_000_000,
        }
    }
}

/// Lexicographic comparison of sorted vertex lists, the tie-break every
/// solver uses between equally good certificates.
pub(crate) fn lex_less(a: &[Vertex], b: &[Vertex]) -> bool {
    a < b
}

/// Picks the better of two solutions: smaller objective, then the
/// lexicographically smaller deletion set.
pub(crate) fn better(a: Solution, b: Solution) -> Solution {
    if b.objective < a.objective || (b.objective == a.objective && lex_less(&b.deleted, &a.deleted))
    {
        b
    } else {
        a
    }
}
