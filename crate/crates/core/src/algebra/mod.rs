//! Exact rational linear algebra and polynomial utilities.

mod charpoly;
mod matrix;
mod poly;
mod polymat;
mod roots;

pub use charpoly::charpoly_exact;
pub use matrix::RationalMatrix;
pub use poly::{poly_normalize, ProjectivePoly};
pub use polymat::polymat_det;
pub use roots::{poly_roots_unit_circle, real_roots, DEFAULT_ROOT_TOL};
