//! Čech descent data for complexes over exact fields.
//!
//! twistkit represents twisting cochains, Green complexes and simplicial
//! twisting cochains over a finite cover, validates their defining
//! equations exactly, and implements the constructions relating them:
//! dg-nerve simplices, the Čech Maurer–Cartan algebra, GTT-labellings of
//! pair subdivisions, horn filling, strictification and the extraction of
//! weak equivalences from paths.

pub mod cech_mc;
pub mod descent;
pub mod dg_nerve;
pub mod error;
pub mod gen;
pub mod gtt;
pub mod homalg;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod simplex_core;

pub use error::{Error, Result};
pub use homalg::{Complex, Cx, ElementaryDecl, GradedMap};
pub use matrix::Matrix;
pub use scalar::{FieldSpec, Fp, Scalar, Q};
