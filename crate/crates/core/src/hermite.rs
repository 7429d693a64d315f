//! Discrete q-Hermite polynomials I and II: exact construction from the
//! explicit sums, the structural identity battery, numeric orthogonality on
//! q-lattices, and the q-commuting addition/rescaling formulas.

use crate::error::Result;
use crate::jackson::{jackson_interval, jackson_realline, JacksonConfig};
use crate::ncalg::{compose_series, lambda_mu, nc_mul, nc_pow, qplane, NCElement};
use crate::scalar::{
    qbinomial, qpochhammer_infinite, qq_factorial, qshifted_factorial, QMode, ScalarC, ScalarQ,
};
use crate::series::{
    bigeq_series_base, eq_prod, eq_series_base, gauss_g, qderiv, PowerSeries, QDirection,
};
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermiteFamily {
    I,
    II,
}

/// A monic discrete q-Hermite polynomial with exact coefficients.
#[derive(Clone, Debug)]
pub struct QHermitePoly {
    pub family: HermiteFamily,
    pub n: u32,
    pub poly: PowerSeries,
}

fn q2(mode: &QMode) -> ScalarQ {
    mode.qpow(2)
}

/// `(q^2; q^2)_k` in the given mode.
fn qq2_factorial(mode: &QMode, k: u32) -> ScalarQ {
    qshifted_factorial(&q2(mode), &q2(mode), k)
}

fn qq_fact(mode: &QMode, k: u32) -> ScalarQ {
    match mode {
        QMode::ExactSymbolic => qq_factorial(k),
        QMode::NumericAt(_) => qshifted_factorial(&mode.q(), &mode.q(), k),
    }
}

/// Builds the polynomial from the explicit sum; both families are monic.
pub fn hermite(family: HermiteFamily, n: u32, mode: &QMode) -> QHermitePoly {
    let prefactor = qq_fact(mode, n);
    let mut coeffs = vec![mode.zero(); n as usize + 1];
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { mode.one() } else { -mode.one() };
        let qpow = match family {
            HermiteFamily::I => mode.qpow((k as i64) * (k as i64 - 1)),
            HermiteFamily::II => {
                // q^(-2nk) q^(k(2k+1))
                mode.qpow(-2 * (n as i64) * (k as i64) + (k as i64) * (2 * k as i64 + 1))
            }
        };
        let den = &qq2_factorial(mode, k) * &qq_fact(mode, n - 2 * k);
        let c = (&(&sign * &qpow) * &prefactor)
            .checked_div(&den)
            .expect("factorials invertible");
        coeffs[(n - 2 * k) as usize] = c;
    }
    QHermitePoly {
        family,
        n,
        poly: PowerSeries::polynomial(mode.clone(), coeffs),
    }
}

impl QHermitePoly {
    pub fn eval_real(&self, x: f64, q: f64) -> f64 {
        self.poly.eval_numeric(Complex64::new(x, 0.0), q).re
    }

    /// Value at 0 (the constant coefficient).
    pub fn at_zero(&self) -> ScalarQ {
        self.poly.coeff(0)
    }
}

impl fmt::Display for QHermitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in (0..=self.n).rev() {
            let mut c = self.poly.coeff(d);
            if c.is_zero() {
                continue;
            }
            // coefficients whose rendering leads with a minus print as a
            // subtracted positive term
            let rendered = c.to_string();
            let negated = rendered.starts_with('-') || rendered.starts_with("(-");
            if negated {
                c = -c;
            }
            if first {
                if negated {
                    write!(f, "-")?;
                }
                first = false;
            } else if negated {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            let var = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            match (var.is_empty(), c.is_one()) {
                (true, _) if cs.contains(' ') => write!(f, "({cs})")?,
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{var}")?,
                (false, false) if cs.contains(' ') || cs.contains('/') => {
                    write!(f, "({cs})*{var}")?
                }
                (false, false) => write!(f, "{cs}*{var}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// exact structural checks
// ---------------------------------------------------------------------------

/// Three-term recurrence implied by the explicit sums:
/// family I: `h_(n+1) = x h_n - q^(n-1)(1-q^n) h_(n-1)`,
/// family II: `h~_(n+1) = x h~_n - q^(1-2n)(1-q^n) h~_(n-1)`.
pub fn check_three_term(family: HermiteFamily, n_max: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let x = PowerSeries::identity(mode.clone());
    let mut failures = 0;
    for n in 1..=n_max {
        let h_prev = hermite(family, n - 1, &mode);
        let h_n = hermite(family, n, &mode);
        let h_next = hermite(family, n + 1, &mode);
        let coeff = match family {
            HermiteFamily::I => {
                &mode.qpow(n as i64 - 1) * &(&mode.one() - &mode.qpow(n as i64))
            }
            HermiteFamily::II => {
                &mode.qpow(1 - 2 * n as i64) * &(&mode.one() - &mode.qpow(n as i64))
            }
        };
        let rhs = x.mul(&h_n.poly).sub(&h_prev.poly.scale(&coeff));
        if !h_next.poly.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Coefficient of `t^n` in the generating product equals the stated multiple
/// of the polynomial: family I uses `E_{q^2}(-t^2) e_q(xt)` against
/// `h_n(x)/(q;q)_n`; family II uses `e_{q^2}(-t^2) E_q(xt)` against
/// `q^(n(n-1)/2) h~_n(x)/(q;q)_n`.
pub fn check_generating_function(family: HermiteFamily, n_max: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let mut failures = 0;
    for n in 0..=n_max {
        // sum over 2j + m = n of (t^2-part)_j * x^m/(q;q)_m * (x-part q-power)
        let mut lhs = vec![mode.zero(); n as usize + 1];
        for j in 0..=n / 2 {
            let m = n - 2 * j;
            let sign = if j % 2 == 0 { mode.one() } else { -mode.one() };
            let (outer, xfactor) = match family {
                HermiteFamily::I => (
                    // E_{q^2}(-t^2): q^(2 j(j-1)/2) = q^(j(j-1))
                    &(&sign * &mode.qpow((j as i64) * (j as i64 - 1)))
                        / &qq2_factorial(&mode, j),
                    mode.one(),
                ),
                HermiteFamily::II => (
                    // e_{q^2}(-t^2) and E_q(xt) carries q^(m(m-1)/2)
                    &sign / &qq2_factorial(&mode, j),
                    mode.qpow((m as i64) * (m as i64 - 1) / 2),
                ),
            };
            lhs[m as usize] =
                (&outer * &xfactor).checked_div(&qq_fact(&mode, m)).unwrap();
        }
        let h = hermite(family, n, &mode);
        let scale = match family {
            HermiteFamily::I => mode.one().checked_div(&qq_fact(&mode, n)).unwrap(),
            HermiteFamily::II => mode
                .qpow((n as i64) * (n as i64 - 1) / 2)
                .checked_div(&qq_fact(&mode, n))
                .unwrap(),
        };
        let rhs = h.poly.scale(&scale);
        let lhs = PowerSeries::polynomial(mode.clone(), lhs);
        if !lhs.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Monomial expansions: `x^n` as a combination of the polynomials.
pub fn check_monomial_expansion(family: HermiteFamily, n_max: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let mut failures = 0;
    for n in 0..=n_max {
        let mut rhs = PowerSeries::zero(mode.clone(), n);
        for k in 0..=n / 2 {
            let h = hermite(family, n - 2 * k, &mode);
            let coeff = match family {
                HermiteFamily::I => mode
                    .one()
                    .checked_div(&(&qq2_factorial(&mode, k) * &qq_fact(&mode, n - 2 * k)))
                    .unwrap(),
                HermiteFamily::II => mode
                    .qpow(-2 * (n as i64) * (k as i64) + 3 * (k as i64) * (k as i64))
                    .checked_div(&(&qq_fact(&mode, n - 2 * k) * &qq2_factorial(&mode, k)))
                    .unwrap(),
            };
            rhs = rhs.add(&h.poly.scale(&coeff));
        }
        let rhs = rhs.scale(&qq_fact(&mode, n));
        let mut mono = PowerSeries::zero(mode.clone(), n);
        mono.set_coeff(n, mode.one());
        if !mono.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Alternating sums collapsing to constants:
/// family I: `sum_k (q^-m;q)_k/(q;q)_k q^k h_k(x) x^(m-k)` equals
/// `(-1)^j q^(-j^2) (q;q^2)_j` for `m = 2j` and `0` for odd `m`;
/// family II: with `q^(mk)` and `h~`, equals `(-1)^j (q;q^2)_j` / `0`.
pub fn check_alternating_sum(family: HermiteFamily, m_max: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let q = mode.q();
    let mut failures = 0;
    for m in 0..=m_max {
        let mut lhs = PowerSeries::zero(mode.clone(), m);
        let qmm = mode.qpow(-(m as i64));
        for k in 0..=m {
            let h = hermite(family, k, &mode);
            let base = qshifted_factorial(&qmm, &q, k)
                .checked_div(&qq_fact(&mode, k))
                .unwrap();
            let tw = match family {
                HermiteFamily::I => mode.qpow(k as i64),
                HermiteFamily::II => mode.qpow((m as i64) * (k as i64)),
            };
            // h_k(x) * x^(m-k)
            let mut xpow = PowerSeries::zero(mode.clone(), m);
            xpow.set_coeff(m - k, mode.one());
            lhs = lhs.add(&h.poly.mul(&xpow).scale(&(&base * &tw)));
        }
        let expect = if m % 2 == 0 {
            let j = m / 2;
            let sign = if j % 2 == 0 { mode.one() } else { -mode.one() };
            let qfac = qshifted_factorial(&q, &q2(&mode), j);
            match family {
                HermiteFamily::I => {
                    &(&sign * &mode.qpow(-((j as i64) * (j as i64)))) * &qfac
                }
                HermiteFamily::II => &sign * &qfac,
            }
        } else {
            mode.zero()
        };
        let rhs = PowerSeries::polynomial(mode.clone(), vec![expect]);
        if !lhs.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Values at the origin: family I `h_(2j)(0) = (-1)^j q^(j(j-1)) (q;q^2)_j`,
/// family II `h~_(2j)(0) = (-1)^j q^(j-2j^2) (q;q^2)_j`; odd degrees vanish.
pub fn check_special_values(family: HermiteFamily, m_max: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let mut failures = 0;
    for m in 0..=m_max {
        let h = hermite(family, m, &mode);
        let got = h.at_zero();
        let expect = if m % 2 == 1 {
            mode.zero()
        } else {
            let j = m / 2;
            let sign = if j % 2 == 0 { mode.one() } else { -mode.one() };
            let qfac = qshifted_factorial(&mode.q(), &q2(&mode), j);
            let p = match family {
                HermiteFamily::I => mode.qpow((j as i64) * (j as i64 - 1)),
                HermiteFamily::II => mode.qpow(j as i64 - 2 * (j as i64) * (j as i64)),
            };
            &(&sign * &p) * &qfac
        };
        if !(&got - &expect).is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Duality `h_n(ix; q^-1) = i^n h~_n(x; q)`, exact via the substitution
/// `q -> 1/q` on rational functions and the formal unit `i`.
pub fn check_duality(n_max: u32) -> Result<u32> {
    let mode = QMode::ExactSymbolic;
    let mut failures = 0;
    for n in 0..=n_max {
        let h1 = hermite(HermiteFamily::I, n, &mode);
        let h2 = hermite(HermiteFamily::II, n, &mode);
        let mut ok = true;
        for d in 0..=n {
            // coefficient of x^d in h_n(ix; q^-1): a_d(q^-1) i^d
            let a = h1.poly.coeff(d).subst_q_inv()?;
            let lhs = ScalarC::from_real(a).mul_i_pow(d as i64);
            let rhs = ScalarC::from_real(h2.poly.coeff(d)).mul_i_pow(n as i64);
            if !lhs.add(&rhs.neg()).is_zero() {
                ok = false;
            }
        }
        if !ok {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Weight of family I as a series: `E_{q^2}(-q^2 x^2)`.
pub fn weight_i_series(mode: &QMode, trunc: u32) -> PowerSeries {
    bigeq_series_base(mode, trunc, 2).compose_monomial(&(-q2(mode)), 2, trunc)
}

/// Weight of family II as a series: `e_{q^2}(-x^2)`.
pub fn weight_ii_series(mode: &QMode, trunc: u32) -> PowerSeries {
    eq_series_base(mode, trunc, 2).compose_monomial(&(-mode.one()), 2, trunc)
}

/// Lowering relations as exact series identities:
/// `(1-q) D_q^+ (h_n W_I) = -q^(-n) h_(n+1) W_I` and
/// `(1-q) D_q^- (h~_n W_II) = -q^n h~_(n+1) W_II`.
pub fn check_lowering(family: HermiteFamily, n_max: u32, trunc: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let one_minus_q = &mode.one() - &mode.q();
    let (weight, dir) = match family {
        HermiteFamily::I => (weight_i_series(&mode, trunc), QDirection::Forward),
        HermiteFamily::II => (weight_ii_series(&mode, trunc), QDirection::Backward),
    };
    let mut failures = 0;
    for n in 0..=n_max {
        let h = hermite(family, n, &mode);
        let h_next = hermite(family, n + 1, &mode);
        let lhs = qderiv(&h.poly.mul(&weight), dir).scale(&one_minus_q);
        let factor = match family {
            HermiteFamily::I => -mode.qpow(-(n as i64)),
            HermiteFamily::II => -mode.qpow(n as i64),
        };
        let rhs = h_next.poly.mul(&weight).scale(&factor);
        if !lhs.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Rodrigues-type formulas by n-fold q-derivative of the weight:
/// `h_n = (-1)^n q^(n(n-1)/2) e_{q^2}(q^2x^2) (1-q)^n (D_q^+)^n E_{q^2}(-q^2x^2)`,
/// `h~_n = (-1)^n q^(-n(n-1)/2) E_{q^2}(x^2) (1-q)^n (D_q^-)^n e_{q^2}(-x^2)`.
pub fn check_rodrigues(family: HermiteFamily, n_max: u32, trunc: u32) -> u32 {
    let mode = QMode::ExactSymbolic;
    let one_minus_q = &mode.one() - &mode.q();
    let mut failures = 0;
    for n in 0..=n_max {
        let (mut deriv, inverse_weight, dir) = match family {
            HermiteFamily::I => (
                weight_i_series(&mode, trunc),
                eq_series_base(&mode, trunc, 2).compose_monomial(&q2(&mode), 2, trunc),
                QDirection::Forward,
            ),
            HermiteFamily::II => (
                weight_ii_series(&mode, trunc),
                bigeq_series_base(&mode, trunc, 2).compose_monomial(&mode.one(), 2, trunc),
                QDirection::Backward,
            ),
        };
        for _ in 0..n {
            deriv = qderiv(&deriv, dir).scale(&one_minus_q);
        }
        let sign = if n % 2 == 0 { mode.one() } else { -mode.one() };
        let p = match family {
            HermiteFamily::I => mode.qpow((n as i64) * (n as i64 - 1) / 2),
            HermiteFamily::II => mode.qpow(-(n as i64) * (n as i64 - 1) / 2),
        };
        let rhs = inverse_weight.mul(&deriv).scale(&(&sign * &p));
        let h = hermite(family, n, &mode);
        if !h.poly.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    failures
}

#[derive(Clone, Debug, Default)]
pub struct StructuralReport {
    pub three_term: u32,
    pub generating_function: u32,
    pub monomial_expansion: u32,
    pub alternating_sum: u32,
    pub special_values: u32,
    pub lowering: u32,
    pub rodrigues: u32,
}

impl StructuralReport {
    pub fn all_pass(&self) -> bool {
        self.three_term == 0
            && self.generating_function == 0
            && self.monomial_expansion == 0
            && self.alternating_sum == 0
            && self.special_values == 0
            && self.lowering == 0
            && self.rodrigues == 0
    }
}

/// Runs the full exact battery for one family.
pub fn structural_checks(family: HermiteFamily, n_max: u32) -> StructuralReport {
    StructuralReport {
        three_term: check_three_term(family, n_max),
        generating_function: check_generating_function(family, n_max),
        monomial_expansion: check_monomial_expansion(family, n_max),
        alternating_sum: check_alternating_sum(family, n_max),
        special_values: check_special_values(family, n_max),
        lowering: check_lowering(family, n_max.min(8), n_max + 12),
        rodrigues: check_rodrigues(family, n_max.min(8), n_max + 12),
    }
}

// ---------------------------------------------------------------------------
// numeric side: normalization constants, orthogonality, transform integrals
// ---------------------------------------------------------------------------

/// `b_q = (1-q) (q; q)_inf (-q; q)_inf (-1; q)_inf`.
pub fn bq_constant(q: f64, tol: f64) -> Result<f64> {
    let p1 = qpochhammer_infinite(Complex64::new(q, 0.0), q, tol, None)?.value;
    let p2 = qpochhammer_infinite(Complex64::new(-q, 0.0), q, tol, None)?.value;
    let p3 = qpochhammer_infinite(Complex64::new(-1.0, 0.0), q, tol, None)?.value;
    Ok((1.0 - q) * (p1 * p2 * p3).re)
}

/// `c_q(gamma) = 2 (1-q) gamma (q^2, -q gamma^2, -q/gamma^2; q^2)_inf /
/// (-gamma^2, -q^2/gamma^2, q; q^2)_inf`.
pub fn cq_constant(q: f64, gamma: f64, tol: f64) -> Result<f64> {
    let q2 = q * q;
    let g2 = gamma * gamma;
    let num = [q2, -q * g2, -q / g2];
    let den = [-g2, -q2 / g2, q];
    let mut value = 2.0 * (1.0 - q) * gamma;
    for a in num {
        value *= qpochhammer_infinite(Complex64::new(a, 0.0), q2, tol, None)?
            .value
            .re;
    }
    for a in den {
        value /= qpochhammer_infinite(Complex64::new(a, 0.0), q2, tol, None)?
            .value
            .re;
    }
    Ok(value)
}

/// Family-I weight at a numeric point: `E_{q^2}(-q^2 x^2) = ((qx)^2; q^2)_inf`.
pub fn weight_i(x: f64, q: f64) -> f64 {
    crate::series::gauss_big_g(Complex64::new(q * x, 0.0), q, 1e-16)
        .expect("entire")
        .re
}

/// Family-II weight at a numeric point: `e_{q^2}(-x^2)`.
pub fn weight_ii(x: f64, q: f64) -> f64 {
    gauss_g(Complex64::new(x, 0.0), q, 1e-16).expect("no poles").re
}

#[derive(Clone, Debug)]
pub struct OrthogonalityPair {
    pub m: u32,
    pub n: u32,
    pub computed: Complex64,
    /// closed-form diagonal value; zero off the diagonal
    pub closed: f64,
}

/// One orthogonality inner product. Family I integrates over `[-1, 1]`
/// against `E_{q^2}(-q^2x^2)` with diagonal `b_q q^(n(n-1)/2) (q;q)_n`;
/// family II over the `gamma`-lattice line against `e_{q^2}(-x^2)` with
/// diagonal `c_q(gamma) q^(-n^2) (q;q)_n`.
pub fn orthogonality_numeric(
    family: HermiteFamily,
    m: u32,
    n: u32,
    q: f64,
    gamma: f64,
    cfg: &JacksonConfig,
) -> Result<OrthogonalityPair> {
    let mode = QMode::NumericAt(q);
    let hm = hermite(family, m, &mode);
    let hn = hermite(family, n, &mode);
    let f = |x: f64| -> Complex64 {
        let w = match family {
            HermiteFamily::I => weight_i(x, q),
            HermiteFamily::II => weight_ii(x, q),
        };
        Complex64::new(hm.eval_real(x, q) * hn.eval_real(x, q) * w, 0.0)
    };
    let computed = match family {
        HermiteFamily::I => jackson_interval(f, -1.0, 1.0, q, cfg)?,
        HermiteFamily::II => jackson_realline(f, gamma, q, cfg)?,
    };
    let closed = if m == n {
        let mut fact = 1.0;
        for j in 1..=n {
            fact *= 1.0 - q.powi(j as i32);
        }
        match family {
            HermiteFamily::I => {
                bq_constant(q, cfg.tail_tol)? * q.powi((n * (n.max(1) - 1) / 2) as i32) * fact
            }
            HermiteFamily::II => {
                cq_constant(q, gamma, cfg.tail_tol)? * q.powi(-((n * n) as i32)) * fact
            }
        }
    } else {
        0.0
    };
    Ok(OrthogonalityPair {
        m,
        n,
        computed,
        closed,
    })
}

/// Which transform integral to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    /// `int_-1^1 e_q(-ixt) h_n(x) W_I dx = b_q q^(n(n-1)/2) i^-n t^n e_{q^2}(-t^2)`
    HermiteToMonomial,
    /// `int_line E_q(iqxt) h~_n(x) W_II dx = c_q q^(-n(n-1)/2) i^n t^n E_{q^2}(-q^2t^2)`
    HermiteIiToMonomial,
    /// `int_-1^1 e_q(-ixt) x^n W_I dx = b_q q^(n(n-1)/2) i^-n h~_n(t) e_{q^2}(-t^2)`
    MonomialToHermiteIi,
    /// `int_line E_q(iqxt) x^n W_II dx = c_q q^(-n(n-1)/2) i^n h_n(t) E_{q^2}(-q^2t^2)`
    MonomialToHermite,
}

#[derive(Clone, Debug)]
pub struct TransformCheck {
    pub t: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub deviation: f64,
}

pub fn transform_integral(
    kind: TransformKind,
    n: u32,
    t: f64,
    q: f64,
    gamma: f64,
    cfg: &JacksonConfig,
) -> Result<TransformCheck> {
    let mode = QMode::NumericAt(q);
    let i = Complex64::new(0.0, 1.0);
    let tol = cfg.tail_tol;
    let tc = Complex64::new(t, 0.0);
    let half = (n as i32) * (n as i32 - 1) / 2;
    let (lhs, rhs) = match kind {
        TransformKind::HermiteToMonomial => {
            let h = hermite(HermiteFamily::I, n, &mode);
            let f = |x: f64| {
                eq_prod(-i * x * t, q, tol).expect("imaginary argument")
                    * h.eval_real(x, q)
                    * weight_i(x, q)
            };
            let lhs = jackson_interval(f, -1.0, 1.0, q, cfg)?;
            let rhs = bq_constant(q, tol)?
                * q.powi(half)
                * i.powi(-(n as i32))
                * tc.powi(n as i32)
                * gauss_g(tc, q, tol)?;
            (lhs, rhs)
        }
        TransformKind::HermiteIiToMonomial => {
            let h = hermite(HermiteFamily::II, n, &mode);
            let f = |x: f64| {
                crate::series::bigeq_prod(i * q * x * t, q, tol).expect("entire")
                    * h.eval_real(x, q)
                    * weight_ii(x, q)
            };
            let lhs = jackson_realline(f, gamma, q, cfg)?;
            let rhs = cq_constant(q, gamma, tol)?
                * q.powi(-half)
                * i.powi(n as i32)
                * tc.powi(n as i32)
                * crate::series::gauss_big_g(q * tc, q, tol)?;
            (lhs, rhs)
        }
        TransformKind::MonomialToHermiteIi => {
            let h = hermite(HermiteFamily::II, n, &mode);
            let f = |x: f64| {
                eq_prod(-i * x * t, q, tol).expect("imaginary argument")
                    * x.powi(n as i32)
                    * weight_i(x, q)
            };
            let lhs = jackson_interval(f, -1.0, 1.0, q, cfg)?;
            let rhs = bq_constant(q, tol)?
                * q.powi(half)
                * i.powi(-(n as i32))
                * h.eval_real(t, q)
                * gauss_g(tc, q, tol)?;
            (lhs, rhs)
        }
        TransformKind::MonomialToHermite => {
            let h = hermite(HermiteFamily::I, n, &mode);
            let f = |x: f64| {
                crate::series::bigeq_prod(i * q * x * t, q, tol).expect("entire")
                    * x.powi(n as i32)
                    * weight_ii(x, q)
            };
            let lhs = jackson_realline(f, gamma, q, cfg)?;
            let rhs = cq_constant(q, gamma, tol)?
                * q.powi(-half)
                * i.powi(n as i32)
                * h.eval_real(t, q)
                * crate::series::gauss_big_g(q * tc, q, tol)?;
            (lhs, rhs)
        }
    };
    Ok(TransformCheck {
        t,
        lhs,
        rhs,
        deviation: (lhs - rhs).norm(),
    })
}

// ---------------------------------------------------------------------------
// q-commuting identities
// ---------------------------------------------------------------------------

/// Addition formula in the q-plane:
/// `h_n(x+y) = sum_k [n,k]_q y^(n-k) h_k(x)` exactly as elements.
pub fn addition_formula(n: u32) -> Result<bool> {
    let mode = QMode::ExactSymbolic;
    let alg = qplane();
    let trunc = n;
    let x = NCElement::generator(&alg, trunc, "x")?;
    let y = NCElement::generator(&alg, trunc, "y")?;
    let h_n = hermite(HermiteFamily::I, n, &mode);
    let lhs = compose_series(&h_n.poly, &x.add(&y)?)?;
    let mut rhs = NCElement::zero(&alg, trunc);
    for k in 0..=n {
        let h_k = hermite(HermiteFamily::I, k, &mode);
        let y_pow = nc_pow(&y, n - k)?;
        let term = nc_mul(&y_pow, &compose_series(&h_k.poly, &x)?)?;
        rhs = rhs.add(&term.scale(&qbinomial(n, k)?))?;
    }
    Ok(lhs.sub(&rhs)?.is_zero())
}

/// Rescaling identity over `lambda mu = q^(1/2) mu lambda` with a central
/// scalar slot `x`:
/// `sum_k (-1)^k q^(k(k-1)) lambda^(n-2k) (lambda^2+mu^2)^k x^(n-2k) / ((q;q)_(n-2k) (q^2;q^2)_k)`
/// `= sum_k (-1)^k q^(k(k-1)) lambda^(n-2k) mu^(2k) h_(n-2k)(x) / ((q;q)_(n-2k) (q^2;q^2)_k)`.
pub fn rescaling_identity(n: u32) -> Result<bool> {
    let mode = QMode::ExactSymbolic;
    let alg = lambda_mu();
    let trunc = 2 * n;
    let x = NCElement::generator(&alg, trunc, "x")?;
    let mu = NCElement::generator(&alg, trunc, "mu")?;
    let la = NCElement::generator(&alg, trunc, "lambda")?;
    let la2_plus_mu2 = nc_pow(&la, 2)?.add(&nc_pow(&mu, 2)?)?;

    let mut lhs = NCElement::zero(&alg, trunc);
    let mut rhs = NCElement::zero(&alg, trunc);
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { mode.one() } else { -mode.one() };
        let c = (&sign * &mode.qpow((k as i64) * (k as i64 - 1)))
            .checked_div(&(&qq_fact(&mode, n - 2 * k) * &qq2_factorial(&mode, k)))?;
        let la_pow = nc_pow(&la, n - 2 * k)?;
        let lhs_term = nc_mul(
            &nc_mul(&la_pow, &nc_pow(&la2_plus_mu2, k)?)?,
            &nc_pow(&x, n - 2 * k)?,
        )?;
        lhs = lhs.add(&lhs_term.scale(&c))?;
        let h = hermite(HermiteFamily::I, n - 2 * k, &mode);
        let rhs_term = nc_mul(
            &nc_mul(&la_pow, &nc_pow(&mu, 2 * k)?)?,
            &compose_series(&h.poly, &x)?,
        )?;
        rhs = rhs.add(&rhs_term.scale(&c))?;
    }
    Ok(lhs.sub(&rhs)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::close;

    fn exact() -> QMode {
        QMode::ExactSymbolic
    }

    #[test]
    fn small_polynomials() {
        let mode = exact();
        for family in [HermiteFamily::I, HermiteFamily::II] {
            let h0 = hermite(family, 0, &mode);
            assert!(h0.poly.coeff(0).is_one());
            let h1 = hermite(family, 1, &mode);
            assert!(h1.poly.coeff(1).is_one() && h1.poly.coeff(0).is_zero());
        }
        // h_2 = x^2 - (1-q)
        let h2 = hermite(HermiteFamily::I, 2, &mode);
        assert_eq!(h2.poly.coeff(0), -(ScalarQ::one() - ScalarQ::q()));
        assert!(h2.poly.coeff(2).is_one());
        // h~_2 = x^2 - q^(-1)(1-q)
        let g2 = hermite(HermiteFamily::II, 2, &mode);
        assert_eq!(
            g2.poly.coeff(0),
            -(ScalarQ::qpow(-1) * (ScalarQ::one() - ScalarQ::q()))
        );
    }

    #[test]
    fn structural_batteries_pass() {
        for family in [HermiteFamily::I, HermiteFamily::II] {
            let r = structural_checks(family, 8);
            assert!(r.all_pass(), "{family:?}: {r:?}");
        }
    }

    #[test]
    fn duality_exact() {
        assert_eq!(check_duality(10).unwrap(), 0);
    }

    #[test]
    fn normalization_constants_match_quadrature() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        // b_q equals the interval integral of the family-I weight
        let quad = jackson_interval(
            |x| Complex64::new(weight_i(x, q), 0.0),
            -1.0,
            1.0,
            q,
            &cfg,
        )
        .unwrap();
        let bq = bq_constant(q, 1e-15).unwrap();
        assert!(close(quad, Complex64::new(bq, 0.0), 1e-12), "{quad} vs {bq}");
        // c_q(gamma) equals the line integral of the family-II weight
        for gamma in [1.0, 0.7] {
            let quad = jackson_realline(
                |x| Complex64::new(weight_ii(x, q), 0.0),
                gamma,
                q,
                &cfg,
            )
            .unwrap();
            let cq = cq_constant(q, gamma, 1e-15).unwrap();
            assert!(
                close(quad, Complex64::new(cq, 0.0), 1e-12),
                "gamma={gamma}: {quad} vs {cq}"
            );
        }
    }

    #[test]
    fn orthogonality_small() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let d = orthogonality_numeric(HermiteFamily::I, 0, 0, q, 1.0, &cfg).unwrap();
        assert!(close(d.computed, Complex64::new(d.closed, 0.0), 1e-12));
        let off = orthogonality_numeric(HermiteFamily::I, 2, 1, q, 1.0, &cfg).unwrap();
        assert!(off.computed.norm() < 1e-12);
        let d2 = orthogonality_numeric(HermiteFamily::II, 1, 1, q, 1.0, &cfg).unwrap();
        let rel = (d2.computed.re - d2.closed).abs() / d2.closed.abs();
        assert!(rel < 1e-12, "rel = {rel}");
    }

    #[test]
    fn even_moment_line_integral() {
        // int t^2 e_{q^2}(-t^2) over the line = c_q(1) q^(-1) (q; q^2)_1
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let v = jackson_realline(
            |t| Complex64::new(t * t * weight_ii(t, q), 0.0),
            1.0,
            q,
            &cfg,
        )
        .unwrap();
        let expect = cq_constant(q, 1.0, 1e-15).unwrap() / q * (1.0 - q);
        assert!(close(v, Complex64::new(expect, 0.0), 1e-11), "{v} vs {expect}");
    }

    #[test]
    fn interval_moment_value() {
        // int_-q^q E_{q^2}(-t^2) t^0 d_q t = b_q q
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let v = jackson_interval(
            |t| crate::series::gauss_big_g(Complex64::new(t, 0.0), q, 1e-16).unwrap(),
            -q,
            q,
            q,
            &cfg,
        )
        .unwrap();
        let expect = bq_constant(q, 1e-15).unwrap() * q;
        assert!(close(v, Complex64::new(expect, 0.0), 1e-12), "{v} vs {expect}");
    }

    #[test]
    fn transform_integrals_agree() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        for kind in [
            TransformKind::HermiteToMonomial,
            TransformKind::HermiteIiToMonomial,
            TransformKind::MonomialToHermiteIi,
            TransformKind::MonomialToHermite,
        ] {
            for n in 0..=3u32 {
                for t in [0.0, 0.25, 1.0] {
                    let c = transform_integral(kind, n, t, q, 1.0, &cfg).unwrap();
                    let scale = 1.0f64.max(c.rhs.norm());
                    assert!(
                        c.deviation <= 1e-9 * scale,
                        "{kind:?} n={n} t={t}: dev {}",
                        c.deviation
                    );
                }
            }
        }
    }

    #[test]
    fn addition_formula_small() {
        for n in 0..=5 {
            assert!(addition_formula(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn rescaling_small() {
        for n in 0..=4 {
            assert!(rescaling_identity(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn display_reads_naturally() {
        let h3 = hermite(HermiteFamily::I, 3, &exact());
        assert_eq!(h3.to_string(), "x^3 - (1 - q^3)*x");
    }
}
