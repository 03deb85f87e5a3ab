//! Poly-text: the line-oriented exchange format for polynomials.
//!
//! ```text
//! n 2
//! # x1^4 - 6 x1^2 x2^2 + x2^4
//! 4 0 1
//! 2 2 -6
//! 0 4 1
//! ```
//!
//! Line one is `n <dimension>`. Every other non-blank line holds `n`
//! exponents and a coefficient `p` or `p/q`. `#` starts a comment. Terms
//! may come in any order and duplicates are merged; the writer emits
//! graded-lexicographic descending order with coefficients in lowest terms.

use super::coeff::{parse_rational, Coefficient, Rational};
use super::matrix::RationalMatrix;
use super::poly::{Poly, Polynomial};
use crate::error::{Error, Result};

fn content_lines(source: &str) -> impl Iterator<Item = (usize, &str)> {
    source.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn rational_at(line: usize, token: &str) -> Result<Rational> {
    parse_rational(token).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => other,
    })
}

/// Parses poly-text into a canonical polynomial.
pub fn parse_poly_text(source: &str) -> Result<Polynomial> {
    parse_poly_lines(&mut content_lines(source).peekable())
}

pub(crate) fn parse_poly_lines<'a, I>(lines: &mut I) -> Result<Polynomial>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "dimension header `n <dimension>` missing"))?;
    let mut tokens = header.split_whitespace();
    let n = match (tokens.next(), tokens.next(), tokens.next()) {
        (Some("n"), Some(d), None) => d
            .parse::<usize>()
            .map_err(|_| Error::parse(hline, format!("invalid dimension `{d}`")))?,
        _ => {
            return Err(Error::parse(
                hline,
                "dimension header `n <dimension>` missing",
            ))
        }
    };
    if n == 0 {
        return Err(Error::parse(hline, "dimension must be positive"));
    }
    let mut poly = Polynomial::zero(n);
    for (line, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != n + 1 {
            return Err(Error::parse(
                line,
                format!(
                    "expected {} exponents and a coefficient, found {} fields",
                    n,
                    tokens.len()
                ),
            ));
        }
        let exps = tokens[..n]
            .iter()
            .map(|t| {
                t.parse::<u32>().map_err(|_| {
                    Error::parse(line, format!("exponent `{t}` is not a nonnegative integer"))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let c = rational_at(line, tokens[n])?;
        poly = &poly + &Polynomial::monomial(exps, c);
    }
    Ok(poly)
}

/// Canonical poly-text of a polynomial.
pub fn to_poly_text<C: Coefficient>(p: &Poly<C>) -> String {
    let mut out = format!("n {}\n", p.nvars());
    for (m, c) in p.terms() {
        for e in m.exponents() {
            out.push_str(&e.to_string());
            out.push(' ');
        }
        out.push_str(&c.render());
        out.push('\n');
    }
    out
}

/// Parses a square rational matrix: the dimension `n` followed by `n²`
/// rationals in row-major order, separated by arbitrary whitespace.
pub fn parse_matrix_text(source: &str) -> Result<RationalMatrix> {
    let tokens: Vec<(usize, &str)> = content_lines(source)
        .flat_map(|(line, text)| text.split_whitespace().map(move |t| (line, t)))
        .collect();
    let Some(&(line, first)) = tokens.first() else {
        return Err(Error::parse(0, "matrix dimension missing"));
    };
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid matrix dimension `{first}`")))?;
    if tokens.len() != 1 + n * n {
        return Err(Error::parse(
            line,
            format!(
                "expected {} matrix entries, found {}",
                n * n,
                tokens.len() - 1
            ),
        ));
    }
    let entries = tokens[1..]
        .iter()
        .map(|&(l, t)| rational_at(l, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_fn(n, n, |i, j| {
        entries[i * n + j].clone()
    }))
}

pub fn to_matrix_text(m: &RationalMatrix) -> String {
    let mut out = format!("{}\n", m.rows());
    out.push_str(&m.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::{rat, ratio};

    #[test]
    fn parses_the_planar_quartic() {
        let p = parse_poly_text("n 2\n4 0 1\n2 2 -6\n0 4 1").unwrap();
        assert_eq!(p.coeff(&[4, 0]), rat(1));
        assert_eq!(p.coeff(&[2, 2]), rat(-6));
        assert_eq!(p.coeff(&[0, 4]), rat(1));
        assert_eq!(to_poly_text(&p), "n 2\n4 0 1\n2 2 -6\n0 4 1\n");
    }

    #[test]
    fn merges_duplicates_and_comments() {
        let p = parse_poly_text("# comment\nn 2\n1 0 1/2 # half\n\n1 0 1/2\n").unwrap();
        assert_eq!(p, Polynomial::var(2, 0));
        let q = parse_poly_text("n 1\n1 1").unwrap();
        assert_eq!(q, Polynomial::var(1, 0));
    }

    #[test]
    fn reports_errors_with_lines() {
        assert!(matches!(
            parse_poly_text("4 0 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_poly_text(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poly_text("n 2\n1 0 1\n1 x 1"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_poly_text("n 2\n-1 0 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_poly_text("n 2\n1 0 1/0"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_poly_text("n 2\n1 0"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn zero_polynomial_is_header_only() {
        assert_eq!(to_poly_text(&Polynomial::zero(3)), "n 3\n");
        assert!(parse_poly_text("n 3\n2 0 0 0").unwrap().is_zero());
    }

    #[test]
    fn matrix_text() {
        let m = parse_matrix_text("2\n3/5 4/5\n-4/5 3/5\n").unwrap();
        assert!(m.is_orthogonal(0.0));
        assert_eq!(m.get(1, 0), &ratio(-4, 5));
        assert_eq!(parse_matrix_text(&to_matrix_text(&m)).unwrap(), m);
        assert!(parse_matrix_text("2\n1 0 0").is_err());
    }
}
