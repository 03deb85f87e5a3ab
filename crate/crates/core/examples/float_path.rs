//! A canonical quartic under an irrational rotation has no rational
//! coefficients, so it is classified in floating point.

use eikq::classifier::classify_float;
use eikq::constructors::make_canonical_quartic;
use eikq::polyring::Matrix;

pub fn run() -> eikq::Result<()> {
    let n = 5;
    let f = make_canonical_quartic(n, 2)?.to_float();

    let (s, c) = 0.7f64.sin_cos();
    let mut r = Matrix::<f64>::identity(n);
    r.set(0, 0, c);
    r.set(0, n - 1, -s);
    r.set(n - 1, 0, s);
    r.set(n - 1, n - 1, c);
    let rotated = f.substitute_linear(&r)?;

    let report = classify_float(&rotated)?;
    println!(
        "{} with dim H class {:?} ({} arithmetic, max residual {:.2e})",
        report.verdict.as_str(),
        report.dim_h,
        report.arithmetic.as_str(),
        report.residual_summary
    );

    // A perturbation well above rounding is rejected.
    let bumped = &rotated + &eikq::polyring::Poly::monomial(vec![2, 2, 0, 0, 0], 1e-3);
    println!("perturbed: {}", classify_float(&bumped)?.verdict.as_str());
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
