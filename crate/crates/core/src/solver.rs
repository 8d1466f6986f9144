//! Exhaustive search for S-integral solutions of `b y^m = f(x)` over `Q`,
//! exponent maximization and bound verification.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    exact_nth_root, format_rational, ln_bigint, rational_height, strip_prime, Rational,
};
use crate::bounds::{
    theorem_hyper_bound, theorem_st_bound, theorem_super_bound, BoundInputs, LogBound,
};
use crate::field::{FieldElement, KPoly};
use crate::places::{h_hat, SSpec, DEFAULT_TOL};
use crate::poly::{is_squarefree, Poly};
use crate::{Error, Result};

/// Ceiling on the number of candidates `x` a single enumeration may produce.
pub const MAX_CANDIDATES: usize = 20_000_000;

/// Slack on the height cap absorbing `f64` rounding of `log H`.
const CAP_SLACK: f64 = 1e-12;

/// One solution `(x, y)` of `b y^m = f(x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionRecord {
    #[serde(with = "crate::arith::rational_str")]
    pub x: Rational,
    #[serde(with = "crate::arith::rational_str")]
    pub y: Rational,
    pub m: u32,
    pub h_x: f64,
    pub h_y: f64,
    /// `y = 0` or `y = ±1`.
    pub y_is_trivial: bool,
}

impl SolutionRecord {
    fn new(x: Rational, y: Rational, m: u32) -> Self {
        let y_is_trivial = y.is_zero() || y.abs().is_one();
        SolutionRecord { h_x: rational_height(&x), h_y: rational_height(&y), x, y, m, y_is_trivial }
    }
}

/// Validated data of `b y^m = f(x)` with `x, y ∈ O_S`, `K = Q`.
#[derive(Debug, Clone)]
pub struct Problem {
    f: Poly,
    b: Rational,
    s: SSpec,
    primes: Vec<BigInt>,
}

impl Problem {
    pub fn new(f: Poly, b: Rational, s: SSpec) -> Result<Self> {
        if !s.field().is_rational() {
            return Err(Error::NonRationalField);
        }
        if b.is_zero() {
            return Err(Error::ZeroB);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.degree() < 2 {
            return Err(Error::InvalidInput(format!("deg f must be at least 2, got {}", f.degree())));
        }
        if !is_squarefree(&f) {
            return Err(Error::NotSquarefree);
        }
        let primes = s.rational_primes();
        let smooth = |q: &Rational| s_smooth(q.denom(), &primes);
        if !smooth(&b) {
            return Err(Error::NotSInteger(format!("b = {}", format_rational(&b))));
        }
        for (i, a) in f.coeffs().iter().enumerate() {
            if !smooth(a) {
                return Err(Error::NotSInteger(format!("a_{i} = {}", format_rational(a))));
            }
        }
        Ok(Problem { f, b, s, primes })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn s(&self) -> &SSpec {
        &self.s
    }

    /// `ĥ` of the equation data.
    pub fn h_hat(&self) -> Result<f64> {
        let k = self.s.field();
        let f = KPoly::from_rational(k, &self.f);
        let b = FieldElement::from_rational(k, self.b.clone());
        Ok(h_hat(&f, &b, &self.s, DEFAULT_TOL)?.value)
    }

    /// Bound parameters for exponent `m` (`d = 1`, `|D_K| = 1`).
    pub fn bound_inputs(&self, m: u32) -> Result<BoundInputs> {
        Ok(BoundInputs {
            n: self.f.degree() as u32,
            m,
            d: 1,
            s: self.s.s() as u32,
            t: self.s.t() as u32,
            abs_disc: BigInt::one(),
            q_s: self.s.q_s(),
            p_s: self.s.p_s(),
            h_hat: self.h_hat()?,
            exact: None,
        })
    }

    /// `f(x)/b`.
    fn quotient(&self, x: &Rational) -> Rational {
        self.f.eval(x) / &self.b
    }
}

fn s_smooth(n: &BigInt, primes: &[BigInt]) -> bool {
    let mut r = n.abs();
    for p in primes {
        r = strip_prime(&r, p).0;
    }
    r.is_one()
}

/// Largest integer `H` with `log H ≤ cap`.
fn height_bound(cap: f64) -> Result<BigInt> {
    if !cap.is_finite() || cap < 0.0 {
        return Err(Error::InvalidInput(format!("height_cap must be finite and >= 0, got {cap}")));
    }
    if cap > 40.0 {
        return Err(Error::InvalidInput(format!("height_cap {cap} beyond desk scale")));
    }
    let mut h = BigInt::from(cap.exp().floor() as u64);
    while ln_bigint(&(&h + 1u32)) <= cap + CAP_SLACK {
        h += 1u32;
    }
    while h > BigInt::one() && ln_bigint(&h) > cap + CAP_SLACK {
        h -= 1u32;
    }
    Ok(h.max(BigInt::one()))
}

/// All products of powers of `primes` up to `limit`, ascending.
fn smooth_numbers(primes: &[BigInt], limit: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for p in primes {
        let mut next = Vec::new();
        for n in &out {
            let mut v = n.clone();
            while &v <= limit {
                next.push(v.clone());
                v *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn canonical(a: &Rational, b: &Rational) -> Ordering {
    let key = |q: &Rational| q.numer().abs().max(q.denom().clone());
    key(a)
        .cmp(&key(b))
        .then_with(|| a.numer().cmp(b.numer()))
        .then_with(|| a.denom().cmp(b.denom()))
}

/// `x = a/den` in lowest terms, `den` an S-unit, with `log max(|a|, den) ≤ height_cap`,
/// ordered by height, then numerator, then denominator.
pub fn enumerate_s_integers(s: &SSpec, height_cap: f64) -> Result<Vec<Rational>> {
    if !s.field().is_rational() {
        return Err(Error::NonRationalField);
    }
    let h = height_bound(height_cap)?;
    let dens = smooth_numbers(&s.rational_primes(), &h);
    let h_u = h.to_u64().ok_or_else(|| Error::InvalidInput("height cap too large".into()))?;
    let estimate = (2 * h_u as u128 + 1) * dens.len() as u128;
    if estimate > MAX_CANDIDATES as u128 {
        return Err(Error::InvalidInput(format!(
            "height cap admits about {estimate} candidates, limit {MAX_CANDIDATES}"
        )));
    }
    let mut out = Vec::new();
    for den in &dens {
        let start = if den.is_one() { 0 } else { 1 };
        for a in start..=h_u {
            let a = BigInt::from(a);
            if !a.gcd(den).is_one() {
                continue;
            }
            out.push(Rational::new_raw(a.clone(), den.clone()));
            if !a.is_zero() {
                out.push(Rational::new_raw(-a, den.clone()));
            }
        }
    }
    out.par_sort_by(canonical);
    Ok(out)
}

/// `y ∈ Z[1/S]` with `y^m = q`, by the valuation rule. For even `m` the
/// positive root is returned.
pub fn s_integral_root(q: &Rational, m: u32, primes: &[BigInt]) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && m % 2 == 0 {
        return None;
    }
    let mut num = q.numer().abs();
    let mut den = q.denom().clone();
    let mut scale = Rational::one();
    for p in primes {
        let (n2, vn) = strip_prime(&num, p);
        let (d2, vd) = strip_prime(&den, p);
        let v = vn as i64 - vd as i64;
        if v % m as i64 != 0 {
            return None;
        }
        let pk = Rational::from_integer(num_traits::pow(p.clone(), (v.unsigned_abs() / m as u64) as usize));
        scale = if v >= 0 { scale * pk } else { scale / pk };
        num = n2;
        den = d2;
    }
    // a prime outside S in the denominator
    if !den.is_one() {
        return None;
    }
    let root = exact_nth_root(&num, m)?;
    let y = scale * Rational::from_integer(root);
    Some(if q.is_negative() { -y } else { y })
}

fn with_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(format!("workers: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn solutions_at(problem: &Problem, x: &Rational, m: u32) -> Vec<SolutionRecord> {
    let q = problem.quotient(x);
    match s_integral_root(&q, m, &problem.primes) {
        None => Vec::new(),
        Some(y) if y.is_zero() => vec![SolutionRecord::new(x.clone(), y, m)],
        Some(y) if m % 2 == 0 => vec![
            SolutionRecord::new(x.clone(), y.clone(), m),
            SolutionRecord::new(x.clone(), -y, m),
        ],
        Some(y) => vec![SolutionRecord::new(x.clone(), y, m)],
    }
}

/// Every solution with `h(x) ≤ height_cap`, in enumeration order of `x`
/// (positive `y` first).
pub fn solve_superelliptic(
    problem: &Problem,
    m: u32,
    height_cap: f64,
    workers: Option<usize>,
) -> Result<Vec<SolutionRecord>> {
    if m < 2 {
        return Err(Error::InvalidExponent(m as i64));
    }
    let xs = enumerate_s_integers(problem.s(), height_cap)?;
    with_pool(workers, || {
        xs.par_iter()
            .flat_map_iter(|x| solutions_at(problem, x, m))
            .collect()
    })
}

/// Largest exponent admitting a solution with `y ∉ {0, ±1}`, with its witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxExponent {
    pub m: u32,
    pub witness: SolutionRecord,
}

/// Largest `m` for which `y^m = q` has a solution `y ∈ Z[1/S]`, `y ∉ {0, ±1}`,
/// among `2 ≤ m ≤ m_cap`, with the corresponding `y`.
fn best_exponent(q: &Rational, m_cap: u32, primes: &[BigInt]) -> Option<(u32, Rational)> {
    if q.is_zero() || q.abs().is_one() {
        return None;
    }
    // h(q) = m h(y) and h(y) ≥ log 2
    let limit = (rational_height(q) / std::f64::consts::LN_2 + 1e-9).floor() as u32;
    (2..=m_cap.min(limit)).rev().find_map(|m| s_integral_root(q, m, primes).map(|y| (m, y)))
}

/// Preference among witnesses: smaller `h(x)`, then `x ≥ 0`, smaller denominator, smaller `h(y)`.
fn witness_order(a: &SolutionRecord, b: &SolutionRecord) -> Ordering {
    let key = |q: &Rational| q.numer().abs().max(q.denom().clone());
    key(&a.x)
        .cmp(&key(&b.x))
        .then_with(|| a.x.is_negative().cmp(&b.x.is_negative()))
        .then_with(|| a.x.denom().cmp(b.x.denom()))
        .then_with(|| key(&a.y).cmp(&key(&b.y)))
        .then_with(|| a.y.is_negative().cmp(&b.y.is_negative()))
}

/// The Schinzel–Tijdeman experiment: maximize `m` over `x` with `h(x) ≤ height_cap`.
pub fn max_exponent_search(
    problem: &Problem,
    height_cap: f64,
    m_cap: u32,
    workers: Option<usize>,
) -> Result<Option<MaxExponent>> {
    if m_cap < 3 {
        return Err(Error::InvalidInput(format!("m_cap must be at least 3, got {m_cap}")));
    }
    let xs = enumerate_s_integers(problem.s(), height_cap)?;
    let found: Vec<MaxExponent> = with_pool(workers, || {
        xs.par_iter()
            .filter_map(|x| {
                let (m, y) = best_exponent(&problem.quotient(x), m_cap, &problem.primes)?;
                Some(MaxExponent { m, witness: SolutionRecord::new(x.clone(), y.abs(), m) })
            })
            .collect()
    })?;
    Ok(found
        .into_iter()
        .min_by(|a, b| b.m.cmp(&a.m).then_with(|| witness_order(&a.witness, &b.witness))))
}

/// What `verify_bounds` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum VerifyMode {
    /// Solve at a fixed exponent and compare heights with the theorem bound.
    Exponent(u32),
    /// Maximize the exponent up to the cap and compare with the ST bound.
    MaxExponent(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub height_cap: f64,
    pub h_hat: f64,
    pub solutions: Vec<SolutionRecord>,
    pub theorem_bound: Option<LogBound>,
    pub max_h_x: f64,
    pub max_h_y: f64,
    pub max_exponent: Option<MaxExponent>,
    pub st_bound: LogBound,
    pub heights_pass: bool,
    pub exponent_pass: bool,
    pub all_pass: bool,
    pub notes: Vec<String>,
}

/// `h ≤ e^log_bound`, compared in the log domain.
fn height_within(h: f64, log_bound: f64) -> bool {
    h <= 0.0 || h.ln() <= log_bound
}

fn theorem_bound_for(problem: &Problem, m: u32) -> Result<Option<LogBound>> {
    let inputs = problem.bound_inputs(m)?;
    if m >= 3 {
        theorem_super_bound(&inputs).map(Some)
    } else if inputs.n >= 3 {
        theorem_hyper_bound(&inputs).map(Some)
    } else {
        Ok(None)
    }
}

/// Runs the search and checks every observation against the theorems.
pub fn verify_bounds(
    problem: &Problem,
    mode: VerifyMode,
    height_cap: f64,
    workers: Option<usize>,
) -> Result<VerificationReport> {
    let mut notes = Vec::new();
    let (solutions, max_exponent, m) = match mode {
        VerifyMode::Exponent(m) => {
            let sols = solve_superelliptic(problem, m, height_cap, workers)?;
            let nontrivial = sols.iter().find(|s| !s.y_is_trivial).cloned();
            (sols, nontrivial.map(|w| MaxExponent { m, witness: w }), m)
        }
        VerifyMode::MaxExponent(m_cap) => {
            let best = max_exponent_search(problem, height_cap, m_cap, workers)?;
            let m = best.as_ref().map_or(0, |b| b.m);
            let sols = match &best {
                Some(b) => solve_superelliptic(problem, b.m, height_cap, workers)?,
                None => Vec::new(),
            };
            (sols, best, m)
        }
    };
    let st_bound = theorem_st_bound(&problem.bound_inputs(m.max(2))?)?;
    let theorem_bound = if m >= 2 { theorem_bound_for(problem, m)? } else { None };
    if solutions.is_empty() {
        notes.push("zero solutions found; height checks pass vacuously".to_string());
    }
    if m >= 2 && theorem_bound.is_none() {
        notes.push(format!("no height theorem applies to m = {m}, n = {}", problem.f.degree()));
    }
    if max_exponent.is_none() {
        notes.push("no solution with y outside {0, ±1}; exponent check passes vacuously".into());
    }
    notes.push(format!(
        "search complete only for h(x) <= {height_cap}; the theorem bounds are far larger"
    ));
    let max_h_x = solutions.iter().map(|s| s.h_x).fold(0.0, f64::max);
    let max_h_y = solutions.iter().map(|s| s.h_y).fold(0.0, f64::max);
    let heights_pass = match &theorem_bound {
        Some(b) => height_within(max_h_x, b.log_nat) && height_within(max_h_y, b.log_nat),
        None => true,
    };
    let exponent_pass = max_exponent
        .as_ref()
        .map_or(true, |e| (e.m as f64).ln() <= st_bound.log_nat);
    let h_hat = problem.h_hat()?;
    Ok(VerificationReport {
        mode,
        height_cap,
        h_hat,
        solutions,
        theorem_bound,
        max_h_x,
        max_h_y,
        max_exponent,
        st_bound,
        heights_pass,
        exponent_pass,
        all_pass: heights_pass && exponent_pass,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::perfect_mth_root;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn problem(f: &[i64], b: i64, primes: &[u64]) -> Problem {
        Problem::new(Poly::from_ints(f), q(b, 1), SSpec::rational(primes).unwrap()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let inf = SSpec::rational(&[]).unwrap();
        let xs = enumerate_s_integers(&inf, 2f64.ln()).unwrap();
        assert_eq!(xs, vec![q(-1, 1), q(0, 1), q(1, 1), q(-2, 1), q(2, 1)]);
        let two = SSpec::rational(&[2]).unwrap();
        let xs = enumerate_s_integers(&two, 2f64.ln()).unwrap();
        assert_eq!(xs.len(), 7);
        assert!(xs.contains(&q(1, 2)) && xs.contains(&q(-1, 2)));
        assert_eq!(enumerate_s_integers(&inf, 10f64.ln()).unwrap().len(), 21);
        let gi = crate::field::make_field(&Poly::from_ints(&[1, 0, 1]), None).unwrap();
        assert_eq!(
            enumerate_s_integers(&SSpec::infinite(&gi), 1.0).unwrap_err().to_string(),
            "solver supports K = Q only"
        );
    }

    #[test]
    fn enumeration_is_exact_and_unique() {
        let s = SSpec::rational(&[2, 3]).unwrap();
        let cap = 40f64.ln();
        let xs = enumerate_s_integers(&s, cap).unwrap();
        let set: BTreeSet<Rational> = xs.iter().cloned().collect();
        assert_eq!(set.len(), xs.len());
        let mut brute = BTreeSet::new();
        for den in 1..=40i64 {
            for a in -40..=40i64 {
                let x = q(a, den);
                let smooth = s_smooth(x.denom(), &[BigInt::from(2), BigInt::from(3)]);
                if smooth && rational_height(&x) <= cap + 1e-12 {
                    brute.insert(x);
                }
            }
        }
        assert_eq!(set, brute);
    }

    #[test]
    fn solver_examples() {
        let p = problem(&[1, 0, 0, -2], 1, &[]);
        let sols = solve_superelliptic(&p, 2, 1e4f64.ln(), None).unwrap();
        let pairs: Vec<_> = sols.iter().map(|s| (s.x.clone(), s.y.clone())).collect();
        assert_eq!(pairs, vec![(q(3, 1), q(5, 1)), (q(3, 1), q(-5, 1))]);
        let p = problem(&[1, 0, 1], 1, &[]);
        let sols = solve_superelliptic(&p, 3, 1e3f64.ln(), None).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!((sols[0].x.clone(), sols[0].y.clone()), (q(0, 1), q(1, 1)));
        assert!(sols[0].y_is_trivial);
        let p = problem(&[1, 0, -1, 0], 1, &[]);
        let sols = solve_superelliptic(&p, 2, 1e2f64.ln(), None).unwrap();
        let xs: Vec<_> = sols.iter().map(|s| s.x.clone()).collect();
        assert_eq!(xs, vec![q(-1, 1), q(0, 1), q(1, 1)]);
        assert!(sols.iter().all(|s| s.y.is_zero() && s.y_is_trivial));
    }

    #[test]
    fn input_errors() {
        let inf = SSpec::rational(&[]).unwrap();
        let square = Problem::new(Poly::from_ints(&[1, 2, 1]), q(1, 1), inf.clone());
        assert_eq!(square.unwrap_err().to_string(), "f has multiple zeros");
        let zero_b = Problem::new(Poly::from_ints(&[1, 0, 7]), q(0, 1), inf.clone());
        assert_eq!(zero_b.unwrap_err().to_string(), "b must be nonzero");
        let half = Problem::new(Poly::parse(&["1", "0", "1/2"]).unwrap(), q(1, 1), inf.clone());
        assert!(matches!(half, Err(Error::NotSInteger(_))));
        let p = problem(&[1, 0, 7], 1, &[]);
        assert!(matches!(solve_superelliptic(&p, 1, 1.0, None), Err(Error::InvalidExponent(1))));
        assert!(Problem::new(Poly::parse(&["1", "0", "1/2"]).unwrap(), q(1, 1), SSpec::rational(&[2]).unwrap()).is_ok());
    }

    #[test]
    fn ramanujan_nagell() {
        let p = problem(&[1, 0, 7], 1, &[]);
        let best = max_exponent_search(&p, 1e3f64.ln(), 40, Some(2)).unwrap().unwrap();
        assert_eq!(best.m, 15);
        assert_eq!((best.witness.x.clone(), best.witness.y.clone()), (q(181, 1), q(2, 1)));
        let p = problem(&[1, 0, -17], 1, &[]);
        let best = max_exponent_search(&p, 1e3f64.ln(), 40, None).unwrap().unwrap();
        assert!(best.m >= 3);
        let p = problem(&[1, 0, 3], 1, &[]);
        let best = max_exponent_search(&p, 10f64.ln(), 40, None).unwrap();
        // 1 + 3 = 2^2 is the only nontrivial power in range
        assert_eq!(best.map(|b| (b.m, b.witness.x)), Some((2, q(1, 1))));
    }

    #[test]
    fn verification_reports() {
        let p = problem(&[1, 0, 0, -2], 1, &[]);
        let r = verify_bounds(&p, VerifyMode::Exponent(2), 1e4f64.ln(), None).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.theorem_bound.as_ref().unwrap().name, "hyper");
        let p = problem(&[1, 0, 7], 1, &[]);
        let r = verify_bounds(&p, VerifyMode::MaxExponent(64), 1e3f64.ln(), None).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.max_exponent.as_ref().unwrap().m, 15);
        assert!((r.st_bound.log_nat - 337.92).abs() < 5e-3);
        let p = problem(&[1, 0, 0, 5], 1, &[]);
        let r = verify_bounds(&p, VerifyMode::Exponent(5), 2f64.ln(), None).unwrap();
        assert!(r.solutions.is_empty() && r.all_pass);
        assert!(r.notes[0].contains("zero solutions"));
    }

    #[test]
    fn deterministic_under_parallelism() {
        let p = problem(&[1, 0, 0, 17], 1, &[2]);
        let a = solve_superelliptic(&p, 2, 300f64.ln(), Some(1)).unwrap();
        let b = solve_superelliptic(&p, 2, 300f64.ln(), Some(4)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    /// Double loop: tabulate `b y^m` over all S-integers `y` of admissible height, then look up `f(x)`.
    fn naive(f: &Poly, b: &Rational, m: u32, s: &SSpec, cap: f64) -> BTreeSet<(Rational, Rational)> {
        let xs = enumerate_s_integers(s, cap).unwrap();
        let y_cap = xs
            .iter()
            .map(|x| rational_height(&(f.eval(x) / b)) / m as f64)
            .fold(0.0, f64::max);
        let mut table = std::collections::HashMap::<Rational, Vec<Rational>>::new();
        for y in enumerate_s_integers(s, y_cap + 1e-9).unwrap() {
            table.entry(b * num_traits::pow(y.clone(), m as usize)).or_default().push(y);
        }
        let mut out = BTreeSet::new();
        for x in xs {
            for y in table.get(&f.eval(&x)).into_iter().flatten() {
                out.insert((x.clone(), y.clone()));
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]
        #[test]
        fn agrees_with_naive_search(
            coeffs in prop::collection::vec(-6i64..=6, 2..=4),
            lead in 1i64..=3,
            b in prop::sample::select(vec![1i64, -1, 2, 3]),
            m in 2u32..=4,
            primes in prop::sample::select(vec![vec![], vec![2u64], vec![2, 3]]),
        ) {
            let mut c = vec![lead];
            c.extend(coeffs);
            let f = Poly::from_ints(&c);
            prop_assume!(is_squarefree(&f));
            let s = SSpec::rational(&primes).unwrap();
            let p = Problem::new(f.clone(), q(b, 1), s.clone()).unwrap();
            let cap = 20f64.ln();
            let got: BTreeSet<_> = solve_superelliptic(&p, m, cap, None)
                .unwrap()
                .into_iter()
                .map(|r| {
                    assert_eq!(&p.b * num_traits::pow(r.y.clone(), m as usize), f.eval(&r.x));
                    (r.x, r.y)
                })
                .collect();
            prop_assert_eq!(got, naive(&f, &q(b, 1), m, &s, cap));
        }

        #[test]
        fn root_rule_matches_rational_roots(n in -5000i64..5000, d in 1i64..200, m in 2u32..6) {
            let primes = [BigInt::from(2), BigInt::from(5)];
            let x = q(n, d);
            let direct = perfect_mth_root(&x, m).unwrap().filter(|y| s_smooth(y.denom(), &primes));
            prop_assert_eq!(s_integral_root(&x, m, &primes), direct.map(|y| if x.is_negative() { y } else { y.abs() }));
        }
    }
}
