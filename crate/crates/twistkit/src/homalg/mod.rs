//! Exact homological algebra over a field: complexes, graded maps,
//! homology, quasi-isomorphisms and elementary complexes.

pub mod blocks;
pub mod complex;
pub mod elementary;
pub mod graded;
pub mod homology;

pub use blocks::{block_map, inclusion, projection};
pub use complex::{direct_sum, shift, Complex, Cx};
pub use elementary::{
    build_elementary, elementary_morphism, is_elementary, summand_homotopy, ElementaryDecl,
    SummandHomotopy,
};
pub use graded::{same_complex, GradedMap};
pub use homology::{
    homology, is_quasi_iso, split_acyclic, whitehead_inverse, AcyclicSplitting, Harmonic, Homology,
    WhiteheadInverse,
};
