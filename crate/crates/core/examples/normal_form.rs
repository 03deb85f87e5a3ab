//! The normal form depends on which maximum of `f` on the sphere is sent
//! to `e_n`. For `h_{4,H}` with `dim H = 1` one choice gives `(p, q) =
//! (0, n − 1)` and another `(n − 2, 1)`; the classification agrees.

use eikq::classifier::classify;
use eikq::constructors::{make_primitive, PrimitiveSpec};
use eikq::normalform::extract_normal_form;
use eikq::RationalMatrix;

pub fn run() -> eikq::Result<()> {
    let n = 5;
    let f = make_primitive(PrimitiveSpec::new(4, n, 1)?)?;

    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, n - 1);
    let frames = [
        ("e_1 ↔ e_n", RationalMatrix::permutation(&swap)),
        ("identity", RationalMatrix::identity(n)),
    ];
    for (label, rotation) in frames {
        let nf = extract_normal_form(&f, Some(&rotation))?;
        let report = classify(&f, Some(&rotation))?;
        println!(
            "{label:>10}: (p, q) = ({}, {}), {} with dim H class {:?}",
            nf.p(),
            nf.q(),
            report.verdict.as_str(),
            report.dim_h
        );
        println!("{}", serde_json::to_string(&nf.to_json()).expect("json"));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
