//! The primitive solutions `h_{g,H}` for several degrees, checked against
//! the eikonal equation exactly.

use eikq::analysis::check_eikonal;
use eikq::constructors::{make_primitive, PrimitiveSpec};
use eikq::polyring::to_poly_text;

pub fn run() -> eikq::Result<()> {
    for g in [1, 2, 3, 4, 6] {
        // Odd degrees only admit a line for H.
        let shapes: &[(usize, usize)] = if g % 2 == 1 {
            &[(2, 1), (4, 1), (6, 1)]
        } else {
            &[(2, 1), (4, 2), (6, 3)]
        };
        for &(n, dim_h) in shapes {
            let f = make_primitive(PrimitiveSpec::new(g, n, dim_h)?)?;
            let residual = check_eikonal(&f, g)?;
            assert!(residual.is_zero());
            println!(
                "g = {g}, n = {n}, dim H = {dim_h}: {} terms, eikonal",
                f.len()
            );
        }
    }

    // ξ⁴ − 6ξ²η² + η⁴ in the plane.
    let h = make_primitive(PrimitiveSpec::new(4, 2, 1)?)?;
    print!("{}", to_poly_text(&h));
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
