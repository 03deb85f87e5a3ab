//! Named polynomial families and assembly from normal-form data.

pub mod normal_data;
pub mod primitive;
pub mod search;

pub use normal_data::{assemble_from_normal_form, assemble_parts, NormalFormData};
pub use primitive::{cartan_cubic, make_canonical_quartic, make_primitive, PrimitiveSpec};
pub use search::{
    check_feasible, search_isoparametric_pencil, search_with_config, SearchConfig, SearchOutcome,
};
