//! Word problems on surface groups, Cayley-ball geometry of the dual tiling,
//! and the combinatorial certificates behind distortion of surface
//! homeomorphisms.

pub mod annulus;
pub mod cayley;
pub mod distortion;
pub mod error;
pub mod exact;
pub mod presentation;
pub mod rewriter;
pub mod suites;
pub mod torus_grid;

pub use cayley::{Ball, FaceId};
pub use error::{Error, Result};
pub use presentation::{GroupKind, Letter, Presentation, Word};
pub use rewriter::Rewriter;
