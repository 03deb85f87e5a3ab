//! A quartic assembled from normal-form data with one `η` variable and
//! `A₁ = diag(1, −1)`: it equals `(x_n² + u² + v² + η²)² − 2(u² − v² −
//! 2x_nη)²` and is primitive.

use eikq::analysis::{check_eikonal, Pencil};
use eikq::classifier::classify;
use eikq::constructors::NormalFormData;
use eikq::polyring::{rat, Poly};
use eikq::RationalMatrix;

pub fn run() -> eikq::Result<()> {
    let a1 = RationalMatrix::diagonal(&[rat(1), rat(-1)]);
    let data = NormalFormData::new(Pencil::new(2, vec![a1])?, Poly::zero(3))?;
    let f = data.assemble()?;

    // Variables (u, v, η, x_n).
    let x = |i| Poly::var(4, i);
    let s = x(3).pow(2) + x(0).pow(2) + x(1).pow(2) + x(2).pow(2);
    let t = x(0).pow(2) - x(1).pow(2) - (x(3) * x(2)).scale_int(2);
    let closed = s.pow(2) - t.pow(2).scale_int(2);
    assert_eq!(f, closed);
    assert!(check_eikonal(&f, 4)?.is_zero());

    let report = classify(&f, None)?;
    println!(
        "{} (dim H class {:?}): {}",
        report.verdict.as_str(),
        report.dim_h,
        report.detail
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
