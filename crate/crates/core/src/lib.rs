//! Induced decompositions of graphs into copies of a complete multipartite
//! pattern `F = K_{a_1, ..., a_k}`.
//!
//! * [`designs`]: Latin squares, MOLS over finite fields and their products,
//!   transversal designs `TD(k, n)`.
//! * [`blowup`]: `K_{m a_1, ..., m a_k}` with `m = a_1 ... a_k` split into
//!   `m^2` induced copies of `F`, addressed by length-`2k` codewords.
//! * [`embedded`]: embedded decompositions of `K_{p a_1, ..., p a_k}` from
//!   `TD(k, p)`.
//! * [`dense`]: `n`-vertex graphs with `O(n)` non-edges that still admit an
//!   induced `F`-decomposition, with a checked certificate.
//! * [`oracle`]: independent brute force (exact cover, verification, exact
//!   `cex(n, F)` for tiny `n`).

pub mod blowup;
pub mod decomposition;
pub mod dense;
pub mod designs;
pub mod embedded;
pub mod error;
mod gf;
pub mod graph;
pub mod oracle;
pub mod pattern;

pub use blowup::{blowup_decompose, make_context, BlowupContext, BlowupCopy, CellIndex, Codeword};
pub use decomposition::{to_canonical_json, Decomposition, Host, PatternCopy};
pub use dense::{assemble, choose_parameters, DenseCertificate, DenseParameters};
pub use designs::{
    cyclic_latin, macneish, mols, mols_prime_power, mols_product, td_from_mols, verify_td, LatinSquare,
    MolsFamily, Point, TransversalDesign,
};
pub use embedded::{embedded_decompose, star_parameters, verify_embedded, EmbeddedDecomposition};
pub use error::{Error, Result};
pub use graph::SmallGraph;
pub use oracle::{cex_exact, exact_cover_decompose, verify_decomposition, SearchBudget};
pub use pattern::PatternSignature;
