//! Reading and writing the poly-text format: one `n <dim>` header, then
//! one `exponents… coefficient` line per term. Output is canonical
//! (graded-lex descending, merged, lowest terms).

use eikq::polyring::{parse_poly_text, to_poly_text};

pub fn run() -> eikq::Result<()> {
    let source = "\
# the planar primitive quartic, written out of order
n 2
0 4 1
2 2 -3
4 0 1
2 2 -3
";
    let f = parse_poly_text(source)?;
    let text = to_poly_text(&f);
    print!("{text}");
    assert_eq!(parse_poly_text(&text)?, f);

    match parse_poly_text("n 2\n1 0 1/0\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("zero denominator"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eikq::Result<()> {
    run()
}
