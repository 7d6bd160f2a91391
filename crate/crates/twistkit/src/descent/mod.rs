//! Descent data over a finite cover: the points and paths of the Čech
//! totalisations of the presheaves of locally free complexes, twisting
//! cochains, Green complexes and simplicial twisting cochains.
//!
//! Restriction maps are identities (every open carries the same field), so
//! a point is a family of labels indexed by the tuples of the cover that is
//! compatible with faces and degeneracies. A path between twisting cochains
//! is a labelling of the prisms `Δ[p] x Δ[1]` over all tuples; it is stored
//! as a Maurer–Cartan element on the doubled cover (see
//! [`Cover::doubled`](crate::cech_mc::Cover::doubled)), whose tuples are
//! exactly the prism simplices over tuples of the base cover.

mod locfree;
mod path;
mod principal;
mod stc;
mod twist;

pub use locfree::{validate_locfree, LocFreeData};
pub use path::{path_to_weq, prism_tuple, validate_path, validate_weq, TwistPath, WeakEquivalence};
pub use principal::{validate_gauge, validate_principal_cocycle, PrincipalCocycle};
pub use stc::{
    export_stc_notation, validate_green, validate_stc, GreenData, StcData, StcFace, StcNotation,
};
pub use twist::{validate_twisting_cochain, TwistingCochainData};
