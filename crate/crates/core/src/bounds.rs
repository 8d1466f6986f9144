//! Explicit upper bounds, evaluated in the natural-log domain with a
//! labeled breakdown of summands.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_10, LN_2};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{lcm_up_to, ln_bigint, log_star, valuation};
use crate::{Error, Result};

/// Lower bound `R_K ≥ 0.2` for the regulator of any number field.
pub const R_K_LOWER: f64 = 0.2;

/// Lower bound `R_S ≥ (ln 2)/5` for S-regulators.
pub const R_S_LOWER: f64 = LN_2 / 5.0;

/// Whether class number and regulators came from the user or from bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMode {
    PaperBounds,
    UserExact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub label: String,
    pub value: f64,
}

/// `log_nat = Σ terms`, also given in base 10.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogBound {
    pub name: String,
    pub log_nat: f64,
    pub log10: f64,
    pub terms: Vec<Term>,
    pub inputs: BTreeMap<String, Value>,
    pub estimate_mode: EstimateMode,
}

impl LogBound {
    fn new(name: &str, terms: Vec<(String, f64)>, inputs: BTreeMap<String, Value>) -> Self {
        Self::with_mode(name, terms, inputs, EstimateMode::UserExact)
    }

    fn with_mode(
        name: &str,
        terms: Vec<(String, f64)>,
        inputs: BTreeMap<String, Value>,
        estimate_mode: EstimateMode,
    ) -> Self {
        let log_nat = terms.iter().map(|(_, v)| v).sum::<f64>();
        LogBound {
            name: name.to_string(),
            log_nat,
            log10: log_nat / LN_10,
            terms: terms.into_iter().map(|(label, value)| Term { label, value }).collect(),
            inputs,
            estimate_mode,
        }
    }

    /// The bound itself, `e^log_nat` (may be infinite).
    pub fn value(&self) -> f64 {
        self.log_nat.exp()
    }

    pub fn term(&self, label: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.label == label).map(|t| t.value)
    }
}

fn inputs(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn t(label: impl Into<String>, value: f64) -> (String, f64) {
    (label.into(), value)
}

/// User-supplied class number and regulators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactInvariants {
    pub h_k: f64,
    pub r_k: f64,
    pub r_s: f64,
}

/// Parameters shared by the theorem bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInputs {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub s: u32,
    pub t: u32,
    #[serde(with = "crate::arith::bigint_str")]
    pub abs_disc: BigInt,
    #[serde(with = "crate::arith::bigint_str")]
    pub q_s: BigInt,
    #[serde(with = "crate::arith::bigint_str")]
    pub p_s: BigInt,
    pub h_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactInvariants>,
}

impl Default for BoundInputs {
    fn default() -> Self {
        BoundInputs {
            n: 2,
            m: 3,
            d: 1,
            s: 1,
            t: 0,
            abs_disc: BigInt::one(),
            q_s: BigInt::one(),
            p_s: BigInt::one(),
            h_hat: 0.0,
            exact: None,
        }
    }
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(msg.to_string()));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if self.d < 1 {
            return bad("d must be at least 1");
        }
        if self.s < 1 {
            return bad("s must be at least 1");
        }
        if self.abs_disc < BigInt::one() {
            return bad("|D_K| must be at least 1");
        }
        if self.p_s < BigInt::one() || self.q_s < self.p_s {
            return bad("need Q_S >= P_S >= 1");
        }
        if !(self.h_hat >= 0.0) || !self.h_hat.is_finite() {
            return bad("h_hat must be finite and nonnegative");
        }
        Ok(())
    }

    fn log_disc(&self) -> f64 {
        ln_bigint(&self.abs_disc)
    }

    fn log_qs(&self) -> f64 {
        ln_bigint(&self.q_s)
    }

    fn log_ps(&self) -> f64 {
        ln_bigint(&self.p_s)
    }

    fn echo(&self) -> BTreeMap<String, Value> {
        let mut out = inputs(&[
            ("n", json!(self.n)),
            ("m", json!(self.m)),
            ("d", json!(self.d)),
            ("s", json!(self.s)),
            ("t", json!(self.t)),
            ("abs_disc", json!(self.abs_disc.to_string())),
            ("log_abs_disc", json!(self.log_disc())),
            ("q_s", json!(self.q_s.to_string())),
            ("log_q_s", json!(self.log_qs())),
            ("p_s", json!(self.p_s.to_string())),
            ("log_p_s", json!(self.log_ps())),
            ("h_hat", json!(self.h_hat)),
        ]);
        if let Some(x) = self.exact {
            out.insert("exact".into(), json!(x));
        }
        out
    }
}

/// `log` of `(6ns)^{14m³n³s} |D_K|^{2m²n²} Q_S^{3m²n²} e^{8m²n³d ĥ}`; needs `m ≥ 3`, `n ≥ 2`.
pub fn theorem_super_bound(b: &BoundInputs) -> Result<LogBound> {
    b.validate()?;
    if b.m < 3 {
        return Err(Error::Hypothesis(format!("superelliptic bound needs m >= 3, got m = {}", b.m)));
    }
    let (n, m, s, d) = (b.n as f64, b.m as f64, b.s as f64, b.d as f64);
    let terms = vec![
        t("(6ns)^(14m^3n^3s)", 14.0 * m.powi(3) * n.powi(3) * s * (6.0 * n * s).ln()),
        t("|D_K|^(2m^2n^2)", 2.0 * m * m * n * n * b.log_disc()),
        t("Q_S^(3m^2n^2)", 3.0 * m * m * n * n * b.log_qs()),
        t("e^(8m^2n^3d*h)", 8.0 * m * m * n.powi(3) * d * b.h_hat),
    ];
    Ok(LogBound::new("super", terms, b.echo()))
}

/// `log` of `(4ns)^{212n⁴s} |D_K|^{8n³} Q_S^{20n³} e^{50n⁴d ĥ}`; needs `n ≥ 3`.
pub fn theorem_hyper_bound(b: &BoundInputs) -> Result<LogBound> {
    b.validate()?;
    if b.n < 3 {
        return Err(Error::Hypothesis(format!("hyperelliptic bound needs n >= 3, got n = {}", b.n)));
    }
    let (n, s, d) = (b.n as f64, b.s as f64, b.d as f64);
    let mut echo = b.echo();
    echo.insert("m".into(), json!(2));
    let terms = vec![
        t("(4ns)^(212n^4s)", 212.0 * n.powi(4) * s * (4.0 * n * s).ln()),
        t("|D_K|^(8n^3)", 8.0 * n.powi(3) * b.log_disc()),
        t("Q_S^(20n^3)", 20.0 * n.powi(3) * b.log_qs()),
        t("e^(50n^4d*h)", 50.0 * n.powi(4) * d * b.h_hat),
    ];
    Ok(LogBound::new("hyper", terms, echo))
}

/// `log` of `(10n²s)^{c·ns} |D_K|^{6n} P_S^{n²} e^{11nd ĥ}` for a given exponent constant `c`.
pub fn st_bound_with_exponent(b: &BoundInputs, c: u32) -> Result<LogBound> {
    b.validate()?;
    let (n, s, d) = (b.n as f64, b.s as f64, b.d as f64);
    let terms = vec![
        t(format!("(10n^2s)^({c}ns)"), c as f64 * n * s * (10.0 * n * n * s).ln()),
        t("|D_K|^(6n)", 6.0 * n * b.log_disc()),
        t("P_S^(n^2)", n * n * b.log_ps()),
        t("e^(11nd*h)", 11.0 * n * d * b.h_hat),
    ];
    let mut echo = b.echo();
    echo.remove("m");
    Ok(LogBound::new("st", terms, echo))
}

/// Upper bound for `log m` in the Schinzel–Tijdeman equation.
pub fn theorem_st_bound(b: &BoundInputs) -> Result<LogBound> {
    st_bound_with_exponent(b, 40)
}

/// `(C_3, m-threshold, final)`: the exponent-37, -38 and -40 forms of the
/// Schinzel–Tijdeman bound, in increasing order.
pub fn st_chain(b: &BoundInputs) -> Result<[LogBound; 3]> {
    Ok([
        st_bound_with_exponent(b, 37)?,
        st_bound_with_exponent(b, 38)?,
        st_bound_with_exponent(b, 40)?,
    ])
}

/// `log` of `|D_K|^{1/2} (log*|D_K|)^{d-1}`, an upper bound for `h_K R_K`.
pub fn hk_rk_upper(abs_disc: &BigInt, d: u32) -> LogBound {
    let ld = ln_bigint(abs_disc);
    let terms = vec![
        t("|D_K|^(1/2)", ld / 2.0),
        t("(log*|D_K|)^(d-1)", (d as f64 - 1.0) * log_star(ld.exp()).ln()),
    ];
    let echo = inputs(&[("abs_disc", json!(abs_disc.to_string())), ("d", json!(d))]);
    LogBound::new("hk_rk", terms, echo)
}

/// `(ln 2)/5 ≤ R_S ≤ |D_K|^{1/2} (log*|D_K|)^{d-1} (log P_S)^t`.
///
/// The last factor is read as 1 when `t = 0`. For `t > 0` and `P_S = 2` it is
/// below 1; the breakdown flags that case.
pub fn rs_bounds(abs_disc: &BigInt, d: u32, t_count: u32, p_s: &BigInt) -> (f64, LogBound) {
    let hk = hk_rk_upper(abs_disc, d);
    let mut terms: Vec<(String, f64)> = hk.terms.into_iter().map(|x| (x.label, x.value)).collect();
    let log_ps = ln_bigint(p_s);
    let last = if t_count == 0 { 0.0 } else { t_count as f64 * log_ps.ln() };
    let label = if t_count > 0 && log_ps < 1.0 {
        "(log P_S)^t [log P_S < 1]"
    } else {
        "(log P_S)^t"
    };
    terms.push(t(label, last));
    let echo = inputs(&[
        ("abs_disc", json!(abs_disc.to_string())),
        ("d", json!(d)),
        ("t", json!(t_count)),
        ("p_s", json!(p_s.to_string())),
    ]);
    (R_S_LOWER, LogBound::with_mode("r_s", terms, echo, EstimateMode::PaperBounds))
}

/// Lower bound for `h(α)` over `α` of degree `≤ d` that are not roots of unity.
pub fn voutier_lower(d: u32) -> f64 {
    if d <= 1 {
        LN_2
    } else {
        let d = d as f64;
        2.0 / (d * (3.0 * d).ln().powi(3))
    }
}

/// `log` of `12 (16ed)^{3n+2} (log* d)²`.
pub fn matveev_yu_c1(n: u32, d: u32) -> LogBound {
    let (nf, df) = (n as f64, d as f64);
    let terms = vec![
        t("12", 12f64.ln()),
        t("(16ed)^(3n+2)", (3.0 * nf + 2.0) * (16.0 * E * df).ln()),
        t("(log* d)^2", 2.0 * log_star(df).ln()),
    ];
    LogBound::new("matveev_yu_c1", terms, inputs(&[("n", json!(n)), ("d", json!(d))]))
}

/// `log` of `c_1(s,d) = s^{2s+4} 2^{7s+60} d^{2s+d+2}`.
pub fn gyory_yu_c1(s: u32, d: u32) -> LogBound {
    let (sf, df) = (s as f64, d as f64);
    let terms = vec![
        t("s^(2s+4)", (2.0 * sf + 4.0) * sf.ln()),
        t("2^(7s+60)", (7.0 * sf + 60.0) * LN_2),
        t("d^(2s+d+2)", (2.0 * sf + df + 2.0) * df.ln()),
    ];
    LogBound::new("gyory_yu_c1", terms, inputs(&[("s", json!(s)), ("d", json!(d))]))
}

/// Inputs to the Thue and Pell bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThueInputs {
    pub s: u32,
    pub d: u32,
    pub n: u32,
    pub t: u32,
    #[serde(with = "crate::arith::bigint_str")]
    pub abs_disc: BigInt,
    #[serde(with = "crate::arith::bigint_str")]
    pub p_s: BigInt,
    #[serde(with = "crate::arith::bigint_str")]
    pub q_s: BigInt,
    /// Bound on the heights of the form's coefficients.
    pub a: f64,
    /// Bound on the height of the right-hand side.
    pub b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactInvariants>,
}

/// `(h_K, R_K, R_S)` values used by a bound, with their provenance.
fn class_data(x: &ThueInputs) -> (ExactInvariants, EstimateMode) {
    match x.exact {
        Some(e) => (e, EstimateMode::UserExact),
        None => {
            let hr = hk_rk_upper(&x.abs_disc, x.d).value();
            let (_, rs) = rs_bounds(&x.abs_disc, x.d, x.t, &x.p_s);
            let est = ExactInvariants { h_k: hr / R_K_LOWER, r_k: hr, r_s: rs.value() };
            (est, EstimateMode::PaperBounds)
        }
    }
}

fn thue_like(name: &str, x: &ThueInputs, n6: bool) -> LogBound {
    let (c, mode) = class_data(x);
    let (n, d) = (x.n as f64, x.d as f64);
    let p_s = x.p_s.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    let a_coeff = if n6 { n * d } else { d };
    let last = c.r_k + c.h_k / d * ln_bigint(&x.q_s) + a_coeff * x.a + x.b;
    let mut terms: Vec<(String, f64)> = gyory_yu_c1(x.s, x.d)
        .terms
        .into_iter()
        .map(|tm| (format!("c1: {}", tm.label), tm.value))
        .collect();
    if n6 {
        terms.push(t("n^6", 6.0 * n.ln()));
    }
    terms.push(t("P_S", ln_bigint(&x.p_s)));
    terms.push(t("R_S", c.r_s.ln()));
    terms.push(t("1 + log*R_S/log*P_S", (1.0 + log_star(c.r_s) / log_star(p_s)).ln()));
    let label = if n6 { "R_K + (h_K/d)log Q_S + ndA + B" } else { "R_K + (h_K/d)log Q_S + dA + B" };
    terms.push(t(label, last.ln()));
    let mut echo = inputs(&[
        ("s", json!(x.s)),
        ("d", json!(x.d)),
        ("t", json!(x.t)),
        ("abs_disc", json!(x.abs_disc.to_string())),
        ("p_s", json!(x.p_s.to_string())),
        ("q_s", json!(x.q_s.to_string())),
        ("A", json!(x.a)),
        ("B", json!(x.b)),
        ("h_k", json!(c.h_k)),
        ("r_k", json!(c.r_k)),
        ("r_s", json!(c.r_s)),
    ]);
    if n6 {
        echo.insert("n".into(), json!(x.n));
    }
    LogBound::with_mode(name, terms, echo, mode)
}

/// `log` of `c_1(s,d) n⁶ P_S R_S (1 + log*R_S/log*P_S)(R_K + (h_K/d)log Q_S + ndA + B)`.
pub fn thue_bound(x: &ThueInputs) -> LogBound {
    thue_like("thue", x, true)
}

/// `log` of `c_1(s,d) P_S R_S (1 + log*R_S/log*P_S)(R_K + (h_K/d)log Q_S + dA + B)`.
pub fn pell_bound(x: &ThueInputs) -> LogBound {
    thue_like("pell", x, false)
}

/// Discriminant bound for the splitting tower step `k`:
/// `(n e^{h_f})^{2kn^k d} |D_K|^{n^k}`, with the sharper
/// `n^{(2n-1)d} e^{(2n-2)d h_f} |D_K|^n` at `k = 1`.
pub fn disc_tower_bound(n: u32, k: u32, d: u32, h_f: f64, abs_disc: &BigInt) -> Result<LogBound> {
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("k must satisfy 1 <= k <= n = {n}, got {k}")));
    }
    let (nf, kf, df) = (n as f64, k as f64, d as f64);
    let ld = ln_bigint(abs_disc);
    let terms = if k == 1 {
        vec![
            t("n^((2n-1)d)", (2.0 * nf - 1.0) * df * nf.ln()),
            t("e^((2n-2)d*h_f)", (2.0 * nf - 2.0) * df * h_f),
            t("|D_K|^n", nf * ld),
        ]
    } else {
        let nk = nf.powi(k as i32);
        vec![
            t("n^(2kn^kd)", 2.0 * kf * nk * df * nf.ln()),
            t("e^(2kn^kd*h_f)", 2.0 * kf * nk * df * h_f),
            t("|D_K|^(n^k)", nk * ld),
        ]
    };
    let echo = inputs(&[
        ("n", json!(n)),
        ("k", json!(k)),
        ("d", json!(d)),
        ("h_f", json!(h_f)),
        ("abs_disc", json!(abs_disc.to_string())),
    ]);
    Ok(LogBound::new("disc_tower", terms, echo))
}

/// `h(D(f)) ≤ (2n-1) log n + (2n-2) h(f)`.
pub fn disc_height_bound(n: u32, h_f: f64) -> f64 {
    let n = n as f64;
    (2.0 * n - 1.0) * n.ln() + (2.0 * n - 2.0) * h_f
}

/// `c = 39 d^{d+2}`.
pub fn unit_shift_constant(d: u32) -> f64 {
    39.0 * (d as f64).powi(d as i32 + 2)
}

/// `h(α η^m) ≤ (1/d) log N_S(α) + m (c R_K + (h_K/d) log Q_S)` for a suitable S-unit `η`.
pub fn unit_shift_bound(d: u32, n_s_alpha: f64, m: u32, r_k: f64, h_k: f64, q_s: f64) -> f64 {
    let df = d as f64;
    n_s_alpha.ln() / df + m as f64 * (unit_shift_constant(d) * r_k + h_k / df * q_s.ln())
}

/// `n (1 + v_p(lcm(1..n)))`, bounding `ord_P` of a relative discriminant.
pub fn ram_exponent_bound(n: u32, p: &BigInt) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !p.is_positive() || !crate::arith::is_prime(p)? {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(n as u64 * (1 + valuation(&lcm_up_to(n as u64), p) as u64))
}
