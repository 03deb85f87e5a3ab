use serde_json::{json, Map, Value};

use crate::polyring::{Coefficient, Poly, Polynomial, Rational};

/// Default zero threshold for residuals computed in floating point.
pub const FLOAT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum ResidualValue {
    /// The full residual polynomial.
    Exact(Polynomial),
    /// Largest absolute coefficient of a floating-point residual.
    Float(f64),
}

/// A named identity `lhs − rhs`, evaluated either exactly or numerically.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: ResidualValue,
    zero: bool,
}

impl Residual {
    pub fn exact(name: impl Into<String>, poly: Polynomial) -> Self {
        let zero = poly.is_zero();
        Residual {
            name: name.into(),
            value: ResidualValue::Exact(poly),
            zero,
        }
    }

    pub fn float(name: impl Into<String>, max_coeff: f64, tol: f64) -> Self {
        Residual {
            name: name.into(),
            value: ResidualValue::Float(max_coeff),
            zero: max_coeff <= tol,
        }
    }

    /// Builds a residual from a polynomial over either ring. Exact rings
    /// keep the polynomial; `f64` keeps only the largest coefficient.
    pub fn from_poly<C: Coefficient>(name: impl Into<String>, poly: &Poly<C>, tol: f64) -> Self {
        if C::EXACT {
            let exact = poly.map_coeffs(|c| c.as_rational().expect("exact ring"));
            Residual::exact(name, exact)
        } else {
            Residual::float(name, poly.max_abs_coeff().magnitude(), tol)
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, ResidualValue::Exact(_))
    }

    /// Identically zero (exact) or below the threshold (float).
    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn magnitude(&self) -> f64 {
        match &self.value {
            ResidualValue::Exact(p) => p.max_abs_coeff().magnitude(),
            ResidualValue::Float(m) => *m,
        }
    }

    /// Largest absolute coefficient; exact rationals render as `p/q`.
    pub fn max_coeff_json(&self) -> Value {
        match &self.value {
            ResidualValue::Exact(p) => Value::String(p.max_abs_coeff().to_string()),
            ResidualValue::Float(m) => json!(m),
        }
    }

    pub fn exact_max_coeff(&self) -> Option<Rational> {
        match &self.value {
            ResidualValue::Exact(p) => Some(p.max_abs_coeff()),
            ResidualValue::Float(_) => None,
        }
    }
}

/// An ordered collection of named residuals.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ResidualSet {
    pub residuals: Vec<Residual>,
}

impl ResidualSet {
    pub fn new(residuals: Vec<Residual>) -> Self {
        ResidualSet { residuals }
    }

    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(Residual::is_zero)
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.residuals
            .iter()
            .map(Residual::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn extend(&mut self, other: ResidualSet) {
        self.residuals.extend(other.residuals);
    }

    /// `{name: {"zero": bool, "max_coeff": "p/q" | float}}` in insertion order.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for r in &self.residuals {
            map.insert(
                r.name.clone(),
                json!({ "zero": r.is_zero(), "max_coeff": r.max_coeff_json() }),
            );
        }
        Value::Object(map)
    }
}
