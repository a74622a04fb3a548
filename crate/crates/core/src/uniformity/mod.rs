//! Exhaustive sets, Properties I and II, radius scans and rate functions.

pub mod enumerate;
pub mod property;
pub mod rates;
pub mod scan;
pub mod schedule;

pub use enumerate::{enumerate_hk, Band, ExhaustiveSet, DEFAULT_CAP};
pub use property::{check_property_i, check_property_ii, property_i_witness, property_ii_witness, Property};
pub use rates::{default_b, fit_line, phi_rate, psi_rate, LinearFit};
pub use scan::{property_map, scan_radius, LeafCheck, PropertyCheck, RadiusReport, Witness};
pub use schedule::ThetaSchedule;
