//! Swan conductors of Artin–Schreier–Witt characters along a boundary
//! divisor, and their behaviour on curves tangent to it.

pub mod conductor;
pub mod curves;
pub mod error;
pub mod field;
pub mod registry;
pub mod rings;
pub mod witt;

pub use conductor::{
    brute_force_sw, classify, fil_member, fil_nonlog_member, gamma, nonlog_conductor, reduce,
    reduce_coordinate_1d, reduce_coordinate_2d, sw_curve, sw_log, Character, Classification,
    NonLogVariant, OracleSpace, ReductionReport,
};
pub use curves::{
    adjust_p_coprime, b_good_vector, check_bounds, family_experiment, pullback_multiplicity,
    restrict_character, select_support, CurveMorphism, GoodVector,
};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use registry::{Registry, SwanMethod};
pub use rings::{BoundaryLaurent, MPoly, SeriesW};
pub use witt::{derive_witt_polys, WittRing, WittVec};
