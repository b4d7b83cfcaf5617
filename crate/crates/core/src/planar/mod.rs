//! Frequency sets in `Z^2` and recovery of point masses on the 2-torus.

mod interp;
mod omega;
mod profile;
mod recover;

pub use interp::{
    is_interpolating, random_probe_points, sufficiency_probe, triangle_interpolate, LineWitness, ProbeReport,
    DIRECTION_DRAWS, INTERPOLATION_TOL, PROBE_SEPARATION,
};
pub use omega::{build_omega, lemma_rows, sufficient_size, OmegaKind, OmegaSet};
pub use profile::MultiplicityProfile;
pub use recover::{
    recover_max_k, recover_peeling, recover_search, recover_search_report, select_unique, slice_row,
    Measure2DWitness, SearchReport,
};
