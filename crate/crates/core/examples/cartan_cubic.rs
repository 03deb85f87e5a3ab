//! The cubic `h = x_n³ − 3x_n(x_1² + … + x_{n−1}²)` is eikonal with
//! `g = 3`, but `Δh = 6(2 − n)x_n` is not a multiple of a power of `|x|`
//! unless `n = 2`, so `h` is not isoparametric.

use eikq::analysis::{check_eikonal, check_munzner_second};
use eikq::constructors::cartan_cubic;
use eikq::polyring::Poly;

pub fn run() -> eikq::Result<()> {
    for n in [2, 3, 5, 8] {
        let h = cartan_cubic(n)?;
        assert!(check_eikonal(&h, 3)?.is_zero());
        let lap = h.laplacian();
        assert_eq!(lap, Poly::var(n, n - 1).scale_int(6 * (2 - n as i64)));
        let radial = check_munzner_second(&h, 3, None)?.is_some();
        let mut e_n = vec![0; n];
        e_n[n - 1] = 1;
        let c = lap.coeff(&e_n);
        println!(
            "n = {n}: Δh = {c}·x_n{}",
            if radial { ", harmonic" } else { ", not radial" }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
