//! A small embedded invariant suite, run by `superell selftest`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{lcm_up_to, ln_rational, rational_valuation, Rational};
use crate::bounds::{theorem_hyper_bound, theorem_st_bound, theorem_super_bound, disc_height_bound, BoundInputs};
use crate::field::{factor_prime, make_field, ord_at, FieldElement, KPoly};
use crate::places::{abs_value, height, height_of_poly, is_root_of_unity, support_places, SSpec, DEFAULT_TOL};
use crate::poly::{complex_roots, discriminant, Poly};
use crate::solver::{max_exponent_search, solve_superelliptic, Problem};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn bound_regression() -> Outcome {
    let st = theorem_st_bound(&BoundInputs::default()).map_err(err)?.log_nat;
    let sup = theorem_super_bound(&BoundInputs::default()).map_err(err)?.log_nat;
    let hyp = theorem_hyper_bound(&BoundInputs { n: 3, ..Default::default() }).map_err(err)?.log_nat;
    let ok = (st - 80.0 * 40f64.ln()).abs() < 1e-9
        && (sup - 3024.0 * 12f64.ln()).abs() < 1e-9
        && (hyp - 17172.0 * 12f64.ln()).abs() < 1e-8;
    ensure(ok, format!("st {st:.3}, super {sup:.2}, hyper {hyp:.1}"))
}

fn product_formula() -> Outcome {
    let mut worst = 0f64;
    for g in [[1i64, 0, 1], [1, 0, -2], [1, -1, -1]] {
        let k = make_field(&Poly::from_ints(&g), None).map_err(err)?;
        for (a, b, c) in [(3i64, -7i64, 10i64), (1, 1, 2), (-12, 5, 9)] {
            let alpha = FieldElement::new(
                &k,
                vec![Rational::new(a.into(), c.into()), Rational::new(b.into(), 1.into())],
            );
            let mut total = 0.0;
            for v in support_places(&alpha).map_err(err)? {
                let l = abs_value(&alpha, &v, DEFAULT_TOL).map_err(err)?.ln().ok_or("zero")?;
                total += l.value;
            }
            worst = worst.max(total.abs());
        }
    }
    ensure(worst <= 1e-9, format!("max |Σ log|α|_v| = {worst:e}"))
}

fn height_axioms() -> Outcome {
    let k = make_field(&Poly::from_ints(&[1, 0, -2]), None).map_err(err)?;
    let alpha = FieldElement::from_ints(&k, &[3, -5]);
    let h = height(&alpha, DEFAULT_TOL).map_err(err)?.value;
    let h3 = height(&alpha.pow(3).map_err(err)?, DEFAULT_TOL).map_err(err)?.value;
    let hinv = height(&alpha.inverse().map_err(err)?, DEFAULT_TOL).map_err(err)?.value;
    let ok = (h3 - 3.0 * h).abs() < 1e-9 && (hinv - h).abs() < 1e-9;
    ensure(ok, format!("h = {h:.12}, h(α^3) = {h3:.12}, h(1/α) = {hinv:.12}"))
}

fn kronecker() -> Outcome {
    let k = make_field(&Poly::from_ints(&[1, 0, 1]), None).map_err(err)?;
    let mut ok = true;
    for c in [[0i64, 0], [1, 0], [-1, 0], [0, 1], [0, -1]] {
        let a = FieldElement::from_ints(&k, &c);
        ok &= height(&a, DEFAULT_TOL).map_err(err)?.value.abs() < 1e-12;
        ok &= a.is_zero() || is_root_of_unity(&a);
    }
    let one_plus_i = FieldElement::from_ints(&k, &[1, 1]);
    ok &= !is_root_of_unity(&one_plus_i);
    ensure(ok, "h vanishes exactly on 0 and the roots of unity of Q(i)".into())
}

fn valuations() -> Outcome {
    let supplied = Some((BigInt::from(-108), BigInt::from(1)));
    let k = make_field(&Poly::from_ints(&[1, 0, 0, -2]), supplied).map_err(err)?;
    let alpha = FieldElement::new(&k, vec![Rational::new(7.into(), 6.into()), int(5), int(-1)]);
    for p in [3i64, 5, 7, 11, 31] {
        let p = BigInt::from(p);
        let sum: i64 = factor_prime(&k, &p)
            .map_err(err)?
            .iter()
            .map(|q| q.f as i64 * ord_at(&alpha, q).unwrap().finite().unwrap())
            .sum();
        if sum != rational_valuation(&alpha.norm(), &p) {
            return Err(format!("Σ f·ord mismatch at p = {p}"));
        }
    }
    Ok("Σ_P f_P ord_P(α) = v_p(N(α)) at 5 primes".into())
}

fn certified_roots() -> Outcome {
    let f = Poly::from_ints(&[1, 0, 0, -2]);
    let roots = complex_roots(&f, 1e-20).map_err(err)?;
    let total: usize = roots.iter().map(|r| r.roots().len()).sum();
    ensure(total == 3, format!("{} enclosures covering {total} roots of X^3 - 2", roots.len()))
}

fn disc_height() -> Outcome {
    let k = crate::field::NumberField::rationals();
    for c in [vec![1i64, 0, 0, -2], vec![3, -7, 1, 5], vec![2, 0, 0, 0, 1, -9]] {
        let f = Poly::from_ints(&c);
        let d = discriminant(&f).map_err(err)?;
        let hd = crate::arith::rational_height(&d);
        let hf = height_of_poly(&KPoly::from_rational(&k, &f), DEFAULT_TOL).map_err(err)?.value;
        let bound = disc_height_bound(f.degree() as u32, hf);
        if hd > bound + 1e-9 {
            return Err(format!("h(D(f)) = {hd} exceeds {bound} for {f}"));
        }
    }
    Ok("h(D(f)) within the bound on 3 polynomials".into())
}

fn mordell() -> Outcome {
    let p = Problem::new(Poly::from_ints(&[1, 0, 0, 17]), int(1), SSpec::rational(&[]).map_err(err)?)
        .map_err(err)?;
    let sols = solve_superelliptic(&p, 2, 60f64.ln(), None).map_err(err)?;
    let mut xs: Vec<i64> = sols.iter().map(|s| s.x.to_integer().try_into().unwrap()).collect();
    xs.dedup();
    xs.sort();
    ensure(xs == vec![-2, -1, 2, 4, 8, 43, 52], format!("x = {xs:?}"))
}

fn ramanujan_nagell() -> Outcome {
    let p = Problem::new(Poly::from_ints(&[1, 0, 7]), int(1), SSpec::rational(&[]).map_err(err)?)
        .map_err(err)?;
    let best = max_exponent_search(&p, 200f64.ln(), 64, None).map_err(err)?.ok_or("none found")?;
    ensure(
        best.m == 15 && best.witness.x == int(181),
        format!("m* = {} at x = {}", best.m, best.witness.x),
    )
}

fn lcm_growth() -> Outcome {
    for m in 1..=200u64 {
        let u = lcm_up_to(m);
        let four_m = num_traits::pow(BigInt::from(4), m as usize);
        if u > four_m {
            return Err(format!("u({m}) exceeds 4^{m}"));
        }
    }
    let log_ratio = ln_rational(&Rational::from_integer(lcm_up_to(200))) / (200.0 * 4f64.ln());
    Ok(format!("u(m) <= 4^m for m <= 200; log u(200)/log 4^200 = {log_ratio:.3}"))
}

const CHECKS: &[(&str, fn() -> Outcome)] = &[
    ("bound_regression", bound_regression),
    ("product_formula", product_formula),
    ("height_axioms", height_axioms),
    ("kronecker", kronecker),
    ("valuation_sums", valuations),
    ("certified_roots", certified_roots),
    ("disc_height", disc_height),
    ("mordell_x3_plus_17", mordell),
    ("ramanujan_nagell", ramanujan_nagell),
    ("lcm_growth", lcm_growth),
];

pub fn run_selftest() -> SelftestReport {
    let checks: Vec<Check> = CHECKS
        .iter()
        .map(|(name, f)| {
            let (pass, detail) = match catch_unwind(AssertUnwindSafe(f)) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(_) => (false, "panicked".to_string()),
            };
            Check { name, pass, detail }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    SelftestReport { passed, failed: checks.len() - passed, checks }
}
