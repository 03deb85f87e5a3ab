//! The coefficient system of a quartic normal form and its refinement
//! into bigraded structure identities.
//!
//! With `f = x_n⁴ + 2φx_n² + 8ψx_n + θ`, the eikonal equation splits by
//! powers of `x_n` into
//!
//! ```text
//! eq1: 8φ + |∇φ|² = 12x̄²
//! eq2: ⟨∇φ, ∇ψ⟩ = −2ψ
//! eq3: 4φ² + ⟨∇φ, ∇θ⟩ + 16|∇ψ|² = 12x̄⁴
//! eq4: ⟨∇ψ, ∇θ⟩ = −4φψ
//! eq5: 64ψ² + |∇θ|² = 16x̄⁶
//! ```

use super::residual::{Residual, ResidualSet, FLOAT_RESIDUAL_TOL};
use crate::constructors::NormalFormData;
use crate::error::{Error, Result};
use crate::polyring::{dot_in, Coefficient, Poly};

/// Residuals `eq1..eq5` for polynomials in the `n − 1` barred variables.
/// Float inputs are judged against `tol`.
pub fn check_system<C: Coefficient>(
    phi: &Poly<C>,
    psi: &Poly<C>,
    theta: &Poly<C>,
    tol: f64,
) -> Result<ResidualSet> {
    let m = phi.nvars();
    for p in [psi, theta] {
        if p.nvars() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.nvars(),
            });
        }
    }
    let (dphi, dpsi, dtheta) = (phi.gradient(), psi.gradient(), theta.gradient());
    let r1 = Poly::radial(m, 1);
    let eq1 = &(&phi.scale_int(8) + &dot_in(m, &dphi, &dphi)) - &r1.scale_int(12);
    let eq2 = &dot_in(m, &dphi, &dpsi) + &psi.scale_int(2);
    let eq3 = &(&(&(phi * phi).scale_int(4) + &dot_in(m, &dphi, &dtheta))
        + &dot_in(m, &dpsi, &dpsi).scale_int(16))
        - &Poly::radial(m, 2).scale_int(12);
    let eq4 = &dot_in(m, &dpsi, &dtheta) + &(phi * psi).scale_int(4);
    let eq5 = &(&(psi * psi).scale_int(64) + &dot_in(m, &dtheta, &dtheta))
        - &Poly::radial(m, 3).scale_int(16);
    Ok(ResidualSet::new(
        [
            ("eq1", eq1),
            ("eq2", eq2),
            ("eq3", eq3),
            ("eq4", eq4),
            ("eq5", eq5),
        ]
        .into_iter()
        .map(|(name, p)| Residual::from_poly(name, &p, tol))
        .collect(),
    ))
}

/// [`check_system`] on the `φ, ψ, θ` derived from normal-form data.
pub fn check_system_of<C: Coefficient>(data: &NormalFormData<C>, tol: f64) -> Result<ResidualSet> {
    check_system(&data.phi(), &data.psi(), &data.theta(), tol)
}

/// Bigraded identities on `(A_η, θ₃)` that, together, are equivalent to the
/// data assembling to an eikonal quartic:
///
/// - `er1`: `⟨τ, ∇_η θ₃⟩ = 0`
/// - `er2`: `⟨A_ηξ, ∇_ξ θ₃⟩ = 0`
/// - `eta`: `ξᵀ(A_η³ − η²A_η)ξ = 0`
/// - `es1`: `|∇_ξθ₄|² + |∇_ηθ₃|² = 16ξ⁶`
/// - `es2`: `⟨∇_ξθ₄, ∇_ξθ₃⟩ + ⟨∇_ηθ₃, ∇_ηθ₂⟩ = 0`
/// - `es3`: `64ψ² + 2⟨∇_ξθ₄, ∇_ξθ₂⟩ + |∇_ηθ₂|² + |∇_ξθ₃|² = 48ξ⁴η²`
/// - `es4`: `⟨∇_ξθ₃, ∇_ξθ₂⟩ + ⟨∇_ηθ₃, ∇_ηθ₀⟩ = 0`
pub fn check_structure_identities<C: Coefficient>(data: &NormalFormData<C>) -> Result<ResidualSet> {
    check_structure_identities_with_tol(data, FLOAT_RESIDUAL_TOL)
}

pub fn check_structure_identities_with_tol<C: Coefficient>(
    data: &NormalFormData<C>,
    tol: f64,
) -> Result<ResidualSet> {
    data.validate()?;
    let m = data.m();
    let (xi, eta) = (data.xi_vars(), data.eta_vars());
    let t3 = &data.theta3;
    let (t4, t2, t0) = (data.theta4(), data.theta2(), data.theta0());
    let gx = |p: &Poly<C>| p.gradient_in(&xi);
    let ge = |p: &Poly<C>| p.gradient_in(&eta);
    let (gx4, gx3, gx2) = (gx(&t4), gx(t3), gx(&t2));
    let (ge3, ge2, ge0) = (ge(t3), ge(&t2), ge(&t0));

    let er1 = dot_in(m, &data.tau(), &ge3);
    let er2 = dot_in(m, &data.a_eta_xi(), &gx3);
    let (cube, lin) = data.cube_sides();
    let eta_res = &cube - &lin;

    let xi2 = Poly::norm_sq_of(m, &xi);
    let eta2 = Poly::norm_sq_of(m, &eta);
    let es1 = &(&dot_in(m, &gx4, &gx4) + &dot_in(m, &ge3, &ge3)) - &xi2.pow(3).scale_int(16);
    let es2 = &dot_in(m, &gx4, &gx3) + &dot_in(m, &ge3, &ge2);
    let psi = data.psi();
    let es3 = &(&(&(&(&psi * &psi).scale_int(64) + &dot_in(m, &gx4, &gx2).scale_int(2))
        + &dot_in(m, &ge2, &ge2))
        + &dot_in(m, &gx3, &gx3))
        - &(&xi2.pow(2) * &eta2).scale_int(48);
    let es4 = &dot_in(m, &gx3, &gx2) + &dot_in(m, &ge3, &ge0);

    Ok(ResidualSet::new(
        [
            ("er1", er1),
            ("er2", er2),
            ("eta", eta_res),
            ("es1", es1),
            ("es2", es2),
            ("es3", es3),
            ("es4", es4),
        ]
        .into_iter()
        .map(|(name, p)| Residual::from_poly(name, &p, tol))
        .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::pencil::Pencil;
    use crate::polyring::{rat, Polynomial, Rational, RationalMatrix};

    fn diag(entries: &[i64]) -> RationalMatrix {
        RationalMatrix::diagonal(&entries.iter().map(|&v| rat(v)).collect::<Vec<_>>())
    }

    #[test]
    fn plane_quartic_system() {
        // x̄ = (ξ, η) in two variables.
        let phi = &Polynomial::norm_sq_of(2, &[0]) - &Polynomial::norm_sq_of(2, &[1]).scale_int(3);
        let theta = make_theta();
        let set = check_system(&phi, &Polynomial::zero(2), &theta, 0.0).unwrap();
        assert!(set.all_zero());
    }

    fn make_theta() -> Polynomial {
        crate::polyring::parse_poly_text("n 2\n4 0 1\n2 2 -6\n0 4 1").unwrap()
    }

    #[test]
    fn pure_quartic_theta_fails_first_equation() {
        let z = Polynomial::zero(3);
        let set = check_system(&z, &z, &Polynomial::radial(3, 2), 0.0).unwrap();
        let eq1 = set.get("eq1").unwrap();
        assert_eq!(
            eq1.value,
            crate::analysis::residual::ResidualValue::Exact(
                Polynomial::radial(3, 1).scale_int(-12)
            )
        );
    }

    #[test]
    fn structure_identities_on_primitive_data() {
        for data in [
            NormalFormData::<Rational>::trivial(0, 4),
            NormalFormData::trivial(4, 0),
            NormalFormData::new(
                Pencil::new(2, vec![diag(&[1, -1])]).unwrap(),
                Polynomial::zero(3),
            )
            .unwrap(),
        ] {
            assert!(check_structure_identities(&data).unwrap().all_zero());
            assert!(check_system_of(&data, 0.0).unwrap().all_zero());
        }
    }

    #[test]
    fn scaled_projection_breaks_cube_identity() {
        let data = NormalFormData::new(
            Pencil::new(2, vec![diag(&[2, 0])]).unwrap(),
            Polynomial::zero(3),
        )
        .unwrap();
        let set = check_structure_identities(&data).unwrap();
        assert!(!set.get("eta").unwrap().is_zero());
    }
}
