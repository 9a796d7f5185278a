//! Exact computations for visibility in grid worlds: modular visibility
//! posets and their widths, lattice antichains, constructive chain covers,
//! DFT checks over `Z_p^d`, and a segment-exact visibility simulator.

pub mod construct;
pub mod cover;
pub mod error;
pub mod fourier;
pub mod geometry;
pub mod lattice;
pub mod modular;
pub mod poset;
pub mod verify;

pub use construct::{
    build_lower_bound_config, enumerate_families, fit_loglog_slope, scaling_experiment, FamilyPlan,
    LowerBoundConfig, ScalingMode, ScalingOptions, ScalingReport,
};
pub use cover::{primitive_chain_cover, toy_chain_cover, CoverKind, CoverReport};
pub use error::{Error, Result};
pub use fourier::{fourier_suite, g_dk_checks, FourierReport, GridFunction};
pub use geometry::{
    is_primitive_obstruction, project_corner, restricted_visible_set, shallow_blocks,
    visible_2d_exact, visible_sampled, Configuration, Parallelotope, RestrictedVisibility,
    SampleOptions, SampledVisibility, Segment,
};
pub use lattice::{
    antichain_from_lattice, independent_pair_3d, interior_point, lll_reduce, small_vector_3d,
    IntegerLattice, LatticeAntichain, ReducedBasis, Region,
};
pub use modular::{
    check_height_duality, dual_height, height, mean_height, next_prime_leq, DualHeight,
    DualityReport, Height, HeightStats, ResidueVector, Sample, Sign,
};
pub use poset::{
    best_in_family, build_primitive_poset, build_s_poset, split_halves, width_bruteforce,
    width_exact, Antichain, ChainCover, Poset, PosetElement, WidthResult,
};
pub use verify::{verify_all, VerifyReport, VerifyRow};
