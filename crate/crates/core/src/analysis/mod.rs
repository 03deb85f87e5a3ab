//! Identity checks: the eikonal and Laplacian equations, the coefficient
//! system of a normal form, the bigraded structure identities and the
//! pencil conditions.

pub mod eikonal;
pub mod pencil;
pub mod residual;
pub mod system;

pub use eikonal::{check_eikonal, check_munzner_second, eikonal_residual, MunznerSecond};
pub use pencil::{check_pencil, pencil_spectrum, Pencil, PencilReport};
pub use residual::{Residual, ResidualSet, ResidualValue, FLOAT_RESIDUAL_TOL};
pub use system::{check_structure_identities, check_system, check_system_of};
