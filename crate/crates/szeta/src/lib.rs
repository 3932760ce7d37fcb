//! Homology length spectra, stable norms, and systolic/stable zeta
//! functions of weighted graphs and flat tori.
//!
//! The layers, bottom to top:
//!
//! - [`graph`]: connected weighted multigraphs and integer homology
//!   coordinates over a fixed cotree basis.
//! - [`stable`]: the exact stable-norm unit ball (rational convex hull,
//!   gauge, volume) and the independent circulation-cost route to the norm.
//! - [`spectrum`]: shortest closed walks per class via Dijkstra on the
//!   maximal abelian cover, marked/ordered spectra, lattice-point counting,
//!   and the bounded gap between lengths and norms.
//! - [`ehrhart`]: the dilate-counting quasi-polynomial of the ball, its
//!   shell expansion, and the data for the Hurwitz-zeta form.
//! - [`zeta`]: gamma/zeta special functions, truncated Dirichlet sums with
//!   tail bounds, the meromorphic continuation for combinatorial graphs,
//!   residue extrapolation, Perron inversion, and the Mellin cross-check.
//! - [`torus`]: lattices, pruned vector enumeration, theta coefficients,
//!   Epstein zeta sums, and the classical 16-dimensional isospectral pair.
//!
//! Exact arithmetic (`num_rational::BigRational`) carries everything
//! geometric; floating point appears only in the analytic layer, paired
//! with explicit tail bounds or error estimates.
//!
//! ```
//! use szeta::graph::WeightedGraph;
//! use szeta::num::qi;
//! use szeta::spectrum::enumerate_spectrum;
//! use szeta::stable::stable_ball;
//!
//! // figure-eight: one vertex, two unit loops
//! let g = WeightedGraph::from_edges(vec![(0, 0, qi(1)), (0, 0, qi(1))])?;
//! let basis = g.homology_basis();
//! let ball = stable_ball(&g, &basis)?;
//! assert_eq!(*ball.volume(), qi(2));
//!
//! let spectrum = enumerate_spectrum(&g, &basis, &qi(2))?;
//! assert_eq!(spectrum.entries.len(), 12);
//! # Ok::<(), szeta::Error>(())
//! ```
//!
//! The `book/` directory of the repository holds a guide whose code blocks
//! are compiled as doc-tests of this crate.

pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod num;
pub mod plot;
pub mod spectrum;
pub mod stable;
pub mod torus;
pub mod zeta;

pub use error::{Error, Result};

// Each chapter of the guide is attached as documentation of an empty
// module so `cargo test --doc` runs every code block in the book.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(graphs, "../../../book/src/graphs.md");
    chapter!(stable_norm, "../../../book/src/stable-norm.md");
    chapter!(spectra, "../../../book/src/spectra.md");
    chapter!(ehrhart, "../../../book/src/ehrhart.md");
    chapter!(zeta, "../../../book/src/zeta.md");
    chapter!(tori, "../../../book/src/tori.md");
    chapter!(cli, "../../../book/src/cli.md");
}
