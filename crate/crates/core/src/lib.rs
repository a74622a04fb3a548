//! Exact-arithmetic workbench for entropy rank one algebraic Z^d-actions
//! given by a cyclic module R_d/p with p prime, plus sums and extensions.

pub mod arith;
pub mod compose;
pub mod config;
pub mod error;
pub mod field;
pub mod harmonic;
pub mod laurent;
pub mod lyapunov;
pub mod poly;
pub mod system;
pub mod uniformity;

pub use arith::{Ball, CBall, LogCombination, Q};
pub use compose::{direct_sum, extension, load_composition, submodule_restrict, ComposedCheck, ComposedModule, ComposedRate, ComposedSet, Predicate};
pub use config::{CompositionNode, FunctionsFile, SystemConfig};
pub use error::{Error, Result};
pub use field::places::{abs_value, discover_places, in_ring, is_s_integral, product_formula_check};
pub use field::{parse_presentation, AbsValue, Backend, FieldElement, Place, PlaceKind, PlaceSet, Presentation};
pub use harmonic::{correlation, fix_count_oracle, fix_count_product, periodic_pairing, FixCount, FixRow, GaussQ, TrigPolynomial};
pub use laurent::{shell_order, ExponentVector, LaurentPoly, Norm};
pub use lyapunov::{directional_entropy, is_mixing, lyapunov_vectors, separation_constant, Constant, LyapunovData, LogValue};
pub use system::{Profile, System};
pub use uniformity::{
    check_property_i, check_property_ii, default_b, enumerate_hk, phi_rate, property_map, psi_rate, scan_radius, ExhaustiveSet,
    LeafCheck, Property, PropertyCheck, RadiusReport, ThetaSchedule, DEFAULT_CAP,
};
