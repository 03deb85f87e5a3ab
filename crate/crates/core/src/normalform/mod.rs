//! Reduction of a quartic to its normal form
//!
//! ```text
//! f(R x) = x_n⁴ + 2φ x_n² + 8ψ x_n + θ,   φ = ξ² − 3η²,   ψ = ξᵀA_ηξ
//! ```
//!
//! around a maximum of `f` on the unit sphere, which the rotation `R`
//! sends to `e_n`. The exact path needs a rational orthogonal `R`
//! (supplied, or found among coordinate axes and rationalized numerical
//! maximizers); the float path works with `f64` throughout and labels
//! everything it produces as approximate.

mod extract;
pub mod sphere;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::pencil::Pencil;
use crate::constructors::NormalFormData;
use crate::polyring::{to_poly_text, Coefficient, Matrix, Poly, Rational};

pub use extract::{
    extract_normal_form, extract_normal_form_float, extract_normal_form_float_seeded,
    extract_normal_form_seeded, find_exact_rotation, float_rotation, split_theta,
    split_theta_with_tol, FLOAT_SNAP_TOL,
};
pub use sphere::{
    sphere_maximize, sphere_maximize_seeded, SphereMax, DEFAULT_SEEDS, DEFAULT_SPHERE_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Exact,
    Float,
}

impl Arithmetic {
    pub fn as_str(self) -> &'static str {
        match self {
            Arithmetic::Exact => "exact",
            Arithmetic::Float => "float",
        }
    }
}

/// Bigraded pieces `θ_i ∈ ξ^i ⊗ η^(4−i)` of `θ`; `θ₁` is always zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaParts<C = Rational> {
    pub theta0: Poly<C>,
    pub theta2: Poly<C>,
    pub theta3: Poly<C>,
    pub theta4: Poly<C>,
}

/// A quartic in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<C = Rational> {
    /// Orthogonal `R` with `f(R x)` in normal form.
    pub rotation: Matrix<C>,
    /// Eigenvalues of `φ`: `p` ones followed by `q` entries `−3`.
    pub phi_eigenvalues: Vec<C>,
    /// Pencil and `θ₃`.
    pub data: NormalFormData<C>,
    /// `φ, ψ, θ` as read off `f(R x)`, over the `n − 1` barred variables.
    pub phi: Poly<C>,
    pub psi: Poly<C>,
    pub theta: Poly<C>,
    pub theta_parts: ThetaParts<C>,
    /// Coefficient of `x_n⁴`; one up to rounding.
    pub leading: C,
    /// Largest coefficient of the `x_n³` part; zero on the exact path.
    pub cubic_defect: f64,
    pub arithmetic: Arithmetic,
}

impl<C: Coefficient> NormalForm<C> {
    pub fn n(&self) -> usize {
        self.data.n()
    }

    pub fn p(&self) -> usize {
        self.data.p()
    }

    pub fn q(&self) -> usize {
        self.data.q()
    }

    pub fn pencil(&self) -> &Pencil<C> {
        &self.data.pencil
    }

    /// The quartic `f(R x)` rebuilt from the extracted `φ, ψ, θ`.
    pub fn reassembled(&self) -> Poly<C> {
        crate::constructors::assemble_parts(&self.phi, &self.psi, &self.theta)
    }

    /// `{p, q, phi, pencil, theta3, rotation, arithmetic}` with exact
    /// values as `"p/q"` strings and float values as numbers.
    pub fn to_json(&self) -> Value {
        let pencil: Vec<Value> = self.pencil().matrices().iter().map(matrix_json).collect();
        json!({
            "p": self.p(),
            "q": self.q(),
            "phi": self.phi_eigenvalues.iter().map(coeff_json).collect::<Vec<_>>(),
            "pencil": pencil,
            "theta3": to_poly_text(&self.data.theta3),
            "rotation": matrix_json(&self.rotation),
            "arithmetic": self.arithmetic.as_str(),
        })
    }
}

pub(crate) fn coeff_json<C: Coefficient>(c: &C) -> Value {
    if C::EXACT {
        Value::String(c.render())
    } else {
        json!(c.to_f64())
    }
}

pub(crate) fn matrix_json<C: Coefficient>(m: &Matrix<C>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(coeff_json).collect()))
            .collect(),
    )
}
