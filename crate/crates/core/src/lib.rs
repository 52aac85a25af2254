//! Contact real hypersurfaces in Kähler model spaces.
//!
//! Curvature of complex space forms and of the complex quadric pair, the
//! almost contact structure induced on a hypersurface, contact identities,
//! singular normals of the quadric, tube profiles with Jacobi-field focal
//! analysis, and a finite-difference laboratory in flat `C^n`.

pub mod contact;
pub mod curvature;
pub mod error;
pub mod immersion;
pub mod linalg;
pub mod model_frame;
pub mod report;
pub mod singular;
pub mod suites;
pub mod tube;

pub use error::{GeometryError, Result};
pub use linalg::{Operator, Vector};
