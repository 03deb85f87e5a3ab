//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints one PASS/FAIL line; exits non-zero on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eikq::analysis::{
    check_eikonal, check_munzner_second, check_structure_identities, check_system_of, Pencil,
};
use eikq::classifier::{
    classify, classify_float, congruent_primitive, laplacian_signature, Signature, Verdict,
};
use eikq::constructors::{
    cartan_cubic, make_canonical_quartic, make_primitive, search_isoparametric_pencil,
    NormalFormData, PrimitiveSpec,
};
use eikq::normalform::{extract_normal_form, Arithmetic};
use eikq::polyring::{rat, Matrix, Poly, Polynomial, Rational, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: eikq::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn prim(g: u32, n: usize, d: usize) -> std::result::Result<Polynomial, String> {
    lib(PrimitiveSpec::new(g, n, d).and_then(make_primitive))
}

fn primitive_family() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for g in [1, 2, 3, 4, 6] {
        for n in 2..=10 {
            let dims: Vec<usize> = if g % 2 == 1 {
                vec![1]
            } else {
                (0..=n).collect()
            };
            for d in dims {
                let f = prim(g, n, d)?;
                ensure!(
                    lib(check_eikonal(&f, g))?.is_zero(),
                    "g = {g}, n = {n}, dim H = {d}: nonzero residual"
                );
                count += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{count} forms exactly eikonal in {elapsed:.2?}"))
}

/// `Δ(x_a³ − 3x_a Σ_{i≠a} x_i²) = 6x_a − 6(n − 1)x_a`, term by term.
fn cubic_laplacian() -> Check {
    for n in 3..=26usize {
        let want = |a: usize| Poly::var(n, a).scale_int(6 - 6 * (n as i64 - 1));
        let h = prim(3, n, 1)?;
        ensure!(h.laplacian() == want(0), "n = {n}: Δh ≠ 6(2 − n)x_1");
        let c = lib(cartan_cubic(n))?;
        ensure!(c.laplacian() == want(n - 1), "n = {n}: Δh ≠ 6(2 − n)x_n");
        ensure!(
            lib(check_eikonal(&c, 3))?.is_zero(),
            "n = {n}: cubic not eikonal"
        );
        ensure!(
            lib(check_munzner_second(&c, 3, None))?.is_none(),
            "n = {n}: Δh reported radial"
        );
    }
    let planar = lib(cartan_cubic(2))?;
    ensure!(
        planar.laplacian().is_zero(),
        "n = 2 cubic should be harmonic"
    );
    Ok("Δh = 6(2 − n)x_n for n = 3..26, radial only for n = 2".into())
}

fn canonical_classification() -> Check {
    let mut count = 0;
    for n in 2..=8 {
        for k in 0..=n / 2 {
            let f = lib(make_canonical_quartic(n, k))?;
            let r = lib(classify(&f, None))?;
            ensure!(
                r.verdict == Verdict::Primitive,
                "n = {n}, k = {k}: {}",
                r.verdict.as_str()
            );
            ensure!(
                r.dim_h == Some(k),
                "n = {n}, k = {k}: dim H class {:?}",
                r.dim_h
            );
            ensure!(
                r.arithmetic == Arithmetic::Exact,
                "n = {n}, k = {k}: float path"
            );
            ensure!(r.residuals.all_zero(), "n = {n}, k = {k}: nonzero residual");
            count += 1;
        }
    }
    Ok(format!(
        "{count} canonical quartics primitive with the right class, exact"
    ))
}

fn congruence_signatures() -> Check {
    for n in 2..=8usize {
        let mut sigs = Vec::new();
        for p in 0..=n {
            let Signature::Exact(sig) = lib(laplacian_signature(&prim(4, n, p)?))? else {
                return Err(format!("n = {n}, p = {p}: float signature"));
            };
            let (n_, p_) = (n as i64, p as i64);
            let mut want: Vec<(Rational, usize)> = Vec::new();
            for (value, mult) in [(8 + 16 * p_ - 12 * n_, p), (4 * n_ - 16 * p_ + 8, n - p)] {
                if mult == 0 {
                    continue;
                }
                match want.iter_mut().find(|(v, _)| *v == rat(value)) {
                    Some(entry) => entry.1 += mult,
                    None => want.push((rat(value), mult)),
                }
            }
            want.sort();
            ensure!(
                sig == want,
                "n = {n}, p = {p}: spectrum {sig:?}, expected {want:?}"
            );
            sigs.push(sig);
        }
        for d1 in 0..=n {
            for d2 in 0..=n {
                let same = sigs[d1] == sigs[d2];
                let congruent = lib(congruent_primitive(n, d1, d2))?;
                ensure!(
                    same == congruent,
                    "n = {n}: ({d1}, {d2}) spectra equal {same}, congruent {congruent}"
                );
            }
        }
    }
    Ok("spectra match the closed form and separate exactly the congruence classes".into())
}

fn normal_form_non_uniqueness() -> Check {
    for n in 3..=6 {
        let f = prim(4, n, 1)?;
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, n - 1);
        let frames = [
            (RationalMatrix::permutation(&swap), (0, n - 1)),
            (RationalMatrix::identity(n), (n - 2, 1)),
        ];
        let mut classes = Vec::new();
        for (rotation, pq) in frames {
            let nf = lib(extract_normal_form(&f, Some(&rotation)))?;
            ensure!(
                (nf.p(), nf.q()) == pq,
                "n = {n}: (p, q) = ({}, {}), expected {pq:?}",
                nf.p(),
                nf.q()
            );
            let r = lib(classify(&f, Some(&rotation)))?;
            ensure!(
                r.verdict == Verdict::Primitive,
                "n = {n}, {pq:?}: {}",
                r.verdict.as_str()
            );
            ensure!(
                r.arithmetic == Arithmetic::Exact,
                "n = {n}, {pq:?}: float path"
            );
            classes.push(r.dim_h);
        }
        ensure!(
            classes[0] == classes[1] && classes[0] == Some(1),
            "n = {n}: classes {classes:?}"
        );
    }
    Ok("(0, n − 1) and (n − 2, 1) presentations agree for n = 3..6".into())
}

fn q_one_branch() -> Check {
    let pencil = lib(Pencil::new(
        2,
        vec![RationalMatrix::diagonal(&[rat(1), rat(-1)])],
    ))?;
    let data = lib(NormalFormData::new(pencil, Poly::zero(3)))?;
    let f = lib(data.assemble())?;
    // (u, v, η, x_n)
    let x = |i| Polynomial::var(4, i);
    let s = &(&(&x(3).pow(2) + &x(0).pow(2)) + &x(1).pow(2)) + &x(2).pow(2);
    let t = &(&x(0).pow(2) - &x(1).pow(2)) - &(&x(3) * &x(2)).scale_int(2);
    let closed = &s.pow(2) - &t.pow(2).scale_int(2);
    ensure!(
        f == closed,
        "assembled quartic differs from the closed form"
    );
    ensure!(lib(check_eikonal(&f, 4))?.is_zero(), "not eikonal");
    let r = lib(classify(&f, None))?;
    ensure!(
        r.verdict == Verdict::Primitive,
        "verdict {}",
        r.verdict.as_str()
    );
    Ok(format!(
        "closed form reproduced; primitive, dim H class {:?}",
        r.dim_h
    ))
}

fn isoparametric_search() -> Check {
    let start = Instant::now();
    let hits = lib(search_isoparametric_pencil(3, 2, 1, 1_000_000))?;
    ensure!(!hits.is_empty(), "no pencil found");
    for data in &hits {
        let f = lib(data.assemble())?;
        ensure!(f.nvars() == 6, "dimension {}", f.nvars());
        ensure!(lib(check_eikonal(&f, 4))?.is_zero(), "hit not eikonal");
        let r = lib(classify(&f, None))?;
        ensure!(
            r.verdict == Verdict::Isoparametric,
            "verdict {}",
            r.verdict.as_str()
        );
        ensure!(
            (r.m1, r.m2) == (Some(1), Some(1)),
            "multiplicities {:?}",
            (r.m1, r.m2)
        );
        ensure!(
            r.laplacian_constant == Some(rat(0)),
            "Δf constant {:?}",
            r.laplacian_constant
        );
        ensure!(f.laplacian().is_zero(), "Δf ≠ 0");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{} hits, all isoparametric with m = (1, 1), Δf = 0, in {elapsed:.2?}",
        hits.len()
    ))
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-1..=1))
}

fn random_symmetric(rng: &mut ChaCha8Rng, p: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(p, p);
    for i in 0..p {
        for j in i..p {
            let v = small(rng);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// A random element of bidegree (3, 1) in (ξ, η).
fn random_theta3(rng: &mut ChaCha8Rng, p: usize, q: usize) -> Polynomial {
    let mut terms = Vec::new();
    if p > 0 {
        for _ in 0..rng.gen_range(1..=3) {
            let mut e = vec![0u32; p + q];
            for _ in 0..3 {
                e[rng.gen_range(0..p)] += 1;
            }
            e[p + rng.gen_range(0..q)] = 1;
            terms.push((e, rat(rng.gen_range(-2..=2) * 8)));
        }
    }
    Polynomial::from_terms(p + q, terms).expect("well-formed terms")
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut s = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = Rational::new(
                rng.gen_range(-1i64..=1).into(),
                rng.gen_range(1i64..=2).into(),
            );
            s.set(i, j, v.clone());
            s.set(j, i, -v);
        }
    }
    RationalMatrix::cayley(&s).expect("antisymmetric")
}

fn structure_cross_validation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let hits = lib(search_isoparametric_pencil(3, 2, 1, 1_000_000))?;
    let (mut valid, mut invalid) = (0, 0);
    for i in 0..200 {
        let data = match i % 5 {
            0 => hits[rng.gen_range(0..hits.len())].clone(),
            1 => {
                let (p, q) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
                NormalFormData::trivial(p, q)
            }
            2 => {
                let p = rng.gen_range(1..=3);
                let diag: Vec<Rational> = (0..p).map(|_| small(&mut rng)).collect();
                let pencil = lib(Pencil::new(p, vec![RationalMatrix::diagonal(&diag)]))?;
                lib(NormalFormData::new(pencil, Poly::zero(p + 1)))?
            }
            3 => {
                let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
                let mats = (0..q).map(|_| random_symmetric(&mut rng, p)).collect();
                let theta3 = if rng.gen_bool(0.5) {
                    random_theta3(&mut rng, p, q)
                } else {
                    Poly::zero(p + q)
                };
                lib(NormalFormData::new(lib(Pencil::new(p, mats))?, theta3))?
            }
            _ => {
                let base = &hits[rng.gen_range(0..hits.len())];
                let mut mats = base.pencil.matrices().to_vec();
                let theta3 = if rng.gen_bool(0.5) {
                    let a = rng.gen_range(0..3);
                    let b = rng.gen_range(0..3);
                    let bump = Matrix::from_fn(3, 3, |r, c| {
                        if (r, c) == (a, b) || (r, c) == (b, a) {
                            rat(1)
                        } else {
                            rat(0)
                        }
                    });
                    mats[0] = lib(mats[0].checked_add(&bump))?;
                    base.theta3.clone()
                } else {
                    &base.theta3 + &random_theta3(&mut rng, 3, 2)
                };
                lib(NormalFormData::new(lib(Pencil::new(3, mats))?, theta3))?
            }
        };
        let identities = lib(check_system_of(&data, 0.0))?.all_zero()
            && lib(check_structure_identities(&data))?.all_zero();
        let eikonal = lib(check_eikonal(&lib(data.assemble())?, 4))?.is_zero();
        ensure!(
            identities == eikonal,
            "candidate {i}: identities {identities}, eikonal {eikonal}\n{}",
            data.to_text()
        );
        if eikonal {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    ensure!(
        valid > 0 && invalid > 0,
        "unmixed sample: {valid} valid, {invalid} invalid"
    );
    Ok(format!(
        "200 candidates ({valid} eikonal, {invalid} not), no disagreements"
    ))
}

fn congruence_invariance() -> Check {
    let mut corpus: Vec<Polynomial> = Vec::new();
    for n in 3..=5 {
        for k in 0..=n / 2 {
            corpus.push(lib(make_canonical_quartic(n, k))?);
        }
    }
    let pencil = lib(Pencil::new(
        2,
        vec![RationalMatrix::diagonal(&[rat(1), rat(-1)])],
    ))?;
    corpus.push(lib(
        lib(NormalFormData::new(pencil, Poly::zero(3)))?.assemble()
    )?);
    corpus.push(lib(lib(search_isoparametric_pencil(3, 2, 1, 1_000_000))?
        [0]
    .assemble())?);

    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    let mut checked = 0;
    for f in &corpus {
        let n = f.nvars();
        let frame = lib(extract_normal_form(f, None))?.rotation;
        let base = lib(classify(f, Some(&frame)))?;
        ensure!(
            base.is_eikonal() && base.arithmetic == Arithmetic::Exact,
            "corpus quartic misclassified"
        );
        for _ in 0..50 {
            let u = random_orthogonal(&mut rng, n);
            let moved = lib(f.substitute_linear(&u))?;
            let rotation = lib(u.transpose().checked_mul(&frame))?;
            let r = lib(classify(&moved, Some(&rotation)))?;
            ensure!(r.arithmetic == Arithmetic::Exact, "n = {n}: float path");
            ensure!(
                r.signature() == base.signature()
                    && (r.p, r.q, r.nu, r.mu) == (base.p, base.q, base.nu, base.mu),
                "n = {n}: {:?} vs {:?}",
                r.signature(),
                base.signature()
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{} quartics × 50 rotations = {checked} exact classifications agree",
        corpus.len()
    ))
}

fn float_path() -> Check {
    let n = 5;
    let f = lib(make_canonical_quartic(n, 2))?.to_float();
    let (s, c) = (2f64.sqrt() / 2.0 * 0.9).sin_cos();
    let mut r = Matrix::<f64>::identity(n);
    for (a, b) in [(0, 4), (1, 3)] {
        r.set(a, a, c);
        r.set(a, b, -s);
        r.set(b, a, s);
        r.set(b, b, c);
    }
    let rotated = lib(f.substitute_linear(&r))?;
    let report = lib(classify_float(&rotated))?;
    ensure!(
        report.verdict == Verdict::Primitive,
        "verdict {}",
        report.verdict.as_str()
    );
    ensure!(report.dim_h == Some(2), "dim H class {:?}", report.dim_h);
    ensure!(
        report.arithmetic == Arithmetic::Float,
        "arithmetic {}",
        report.arithmetic.as_str()
    );
    ensure!(
        report.residual_summary < 1e-9,
        "residual {:e}",
        report.residual_summary
    );
    Ok(format!(
        "primitive, dim H class 2, float, residual {:.1e}",
        report.residual_summary
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("primitive family is eikonal", primitive_family),
        ("cubic Laplacian", cubic_laplacian),
        ("canonical quartics classify", canonical_classification),
        ("Laplacian spectra vs congruence", congruence_signatures),
        ("normal-form non-uniqueness", normal_form_non_uniqueness),
        ("single-η branch", q_one_branch),
        ("isoparametric pencil search", isoparametric_search),
        ("identities ⇔ eikonal", structure_cross_validation),
        ("invariance under rotations", congruence_invariance),
        ("float path", float_path),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
