//! Every primitive quartic is congruent to one of the canonical quartics
//! `(Σx²)² − 8(Σ_{i≤k} x_i²)(Σ_{i>k} x_i²)`; the classifier recovers `k`
//! as `dim H`, and the Laplacian spectrum tells the classes apart.

use eikq::classifier::{classify, congruent_primitive, laplacian_signature, primitive_class};
use eikq::constructors::make_canonical_quartic;

pub fn run() -> eikq::Result<()> {
    for n in 2..=6 {
        for k in 0..=n / 2 {
            let f = make_canonical_quartic(n, k)?;
            let report = classify(&f, None)?;
            let signature = laplacian_signature(&f)?;
            println!(
                "n = {n}, k = {k}: {} with dim H class {:?}, Δf spectrum {:?}",
                report.verdict.as_str(),
                report.dim_h,
                signature.approximate()
            );
            assert_eq!(report.dim_h, Some(primitive_class(n, k)));
        }
    }
    println!(
        "dim H = 2 and 4 congruent in R⁶: {}",
        congruent_primitive(6, 2, 4)?
    );
    println!(
        "dim H = 2 and 3 congruent in R⁶: {}",
        congruent_primitive(6, 2, 3)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
