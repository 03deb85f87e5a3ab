//! Structured search for pencils with `(p, q, ν) = (3, 2, 1)`. Every hit
//! assembles to an isoparametric quartic in `R⁶` with multiplicities
//! `(1, 1)`.

use eikq::classifier::{classify, Verdict};
use eikq::constructors::{search_with_config, SearchConfig};

pub fn run() -> eikq::Result<()> {
    let config = SearchConfig {
        max_hits: Some(3),
        ..SearchConfig::default()
    };
    let outcome = search_with_config(3, 2, 1, &config)?;
    println!(
        "{} hits after {} candidates",
        outcome.results.len(),
        outcome.examined
    );

    for data in &outcome.results {
        let f = data.assemble()?;
        let report = classify(&f, None)?;
        assert_eq!(report.verdict, Verdict::Isoparametric);
        println!(
            "m = ({:?}, {:?}), Δf = {}·|x|²\n{}",
            report.m1,
            report.m2,
            report
                .laplacian_constant
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_default(),
            data.to_text()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
