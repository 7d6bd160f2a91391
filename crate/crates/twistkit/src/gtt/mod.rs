//! GTT-labellings of pair subdivisions: the simplices of Green complexes and
//! simplicial twisting cochains, with their simplicial structure, the
//! inclusions of twisting cochains and Green complexes, 2-horn filling and
//! strictification.

pub mod connect;
pub mod horn;
pub mod labelling;
pub mod strictify;

pub use connect::{connect_compose, connect_strictify};
pub use horn::{fill_horn2, fill_horn2_green, horn_edges, horn_faces};
pub use labelling::{
    gtt_degeneracy, gtt_face, include_green, include_twist, is_gtt1, proper_cells, validate_gtt,
    Complement, GttLabelling,
};
pub use strictify::{check_strictification, strictify, Strictification};
