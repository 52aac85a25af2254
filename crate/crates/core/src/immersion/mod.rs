//! Finite-difference laboratory for hypersurfaces of flat `C^n`.

pub mod charts;
pub mod checks;
pub mod forms;
pub mod geometry;

pub use charts::{
    Chart, CylinderChart, GraphTubeChart, HolomorphicGraph, HyperplaneChart, Orientation, ParamBox,
    SphereChart,
};
pub use checks::{c2_tube_check, c2_tube_check_on, sphere_check, sphere_check_on, C2TubeCheck, PatchGrid, SphereCheck};
pub use forms::{exterior_derivative_oneform, exterior_derivative_twoform, fundamental_form, reeb_form, FormField};
pub use geometry::{extrinsic_geometry, ImmersedPatch, PointGeometry, DEFAULT_STEP};
