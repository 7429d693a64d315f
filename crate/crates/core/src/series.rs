//! One-variable layer: truncated formal power series, the named q-special
//! series, q-derivatives, numeric product-form evaluators, and the hybrid
//! (classical-meets-q) checks.

use crate::error::{Error, Result};
use crate::scalar::{
    qpochhammer_infinite, qq_factorial, qshifted_factorial, qshifted_factorial_apoly, APoly,
    QMode, ScalarQ,
};
use num_complex::Complex64;

/// A degree-truncated formal power series in one commuting variable.
///
/// `poly` marks series that are exact polynomials rather than truncations of
/// an infinite series; composition with a non-nilpotent argument is only
/// allowed for those.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    pub mode: QMode,
    pub trunc: u32,
    pub poly: bool,
    coeffs: Vec<ScalarQ>,
}

impl PowerSeries {
    pub fn zero(mode: QMode, trunc: u32) -> Self {
        PowerSeries {
            mode,
            trunc,
            poly: false,
            coeffs: Vec::new(),
        }
    }

    pub fn from_fn(mode: QMode, trunc: u32, f: impl Fn(u32) -> ScalarQ) -> Self {
        let coeffs = (0..=trunc).map(f).collect();
        let mut s = PowerSeries {
            mode,
            trunc,
            poly: false,
            coeffs,
        };
        s.trim();
        s
    }

    /// An exact polynomial (not a truncation).
    pub fn polynomial(mode: QMode, coeffs: Vec<ScalarQ>) -> Self {
        let trunc = coeffs.len().saturating_sub(1) as u32;
        let mut s = PowerSeries {
            mode,
            trunc,
            poly: true,
            coeffs,
        };
        s.trim();
        s
    }

    /// The identity series `z`.
    pub fn identity(mode: QMode) -> Self {
        let one = mode.one();
        let zero = mode.zero();
        PowerSeries::polynomial(mode, vec![zero, one])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, k: u32) -> ScalarQ {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| self.mode.zero())
    }

    pub fn coeffs(&self) -> &[ScalarQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn set_coeff(&mut self, k: u32, c: ScalarQ) {
        if k > self.trunc && !self.poly {
            return;
        }
        let k = k as usize;
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, self.mode.zero());
        }
        self.coeffs[k] = c;
        self.trim();
    }

    fn joined_trunc(&self, rhs: &PowerSeries) -> (u32, bool) {
        match (self.poly, rhs.poly) {
            (true, true) => (u32::MAX, true),
            (true, false) => (rhs.trunc, false),
            (false, true) => (self.trunc, false),
            (false, false) => (self.trunc.min(rhs.trunc), false),
        }
    }

    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        let (trunc, poly) = self.joined_trunc(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n as u32 {
            if k > trunc {
                break;
            }
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        let trunc = if poly {
            out.len().saturating_sub(1) as u32
        } else {
            trunc
        };
        let mut s = PowerSeries {
            mode: self.mode.clone(),
            trunc,
            poly,
            coeffs: out,
        };
        s.trim();
        s
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            mode: self.mode.clone(),
            trunc: self.trunc,
            poly: self.poly,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &ScalarQ) -> PowerSeries {
        let mut s = PowerSeries {
            mode: self.mode.clone(),
            trunc: self.trunc,
            poly: self.poly,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        };
        s.trim();
        s
    }

    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let (trunc, poly) = self.joined_trunc(rhs);
        if self.is_zero() || rhs.is_zero() {
            return PowerSeries {
                mode: self.mode.clone(),
                trunc: if poly { 0 } else { trunc },
                poly,
                coeffs: Vec::new(),
            };
        }
        let top = if poly {
            (self.coeffs.len() + rhs.coeffs.len() - 2) as u32
        } else {
            trunc.min((self.coeffs.len() + rhs.coeffs.len() - 2) as u32)
        };
        let mut out = vec![self.mode.zero(); top as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if (i + j) as u32 > top {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let trunc = if poly { top } else { trunc };
        let mut s = PowerSeries {
            mode: self.mode.clone(),
            trunc,
            poly,
            coeffs: out,
        };
        s.trim();
        s
    }

    /// Substitute `z -> c z^m` (enough for the Gaussian compositions).
    pub fn compose_monomial(&self, c: &ScalarQ, m: u32, trunc: u32) -> PowerSeries {
        let mut out = PowerSeries::zero(self.mode.clone(), trunc);
        let mut cp = self.mode.one();
        for (k, a) in self.coeffs.iter().enumerate() {
            let deg = k as u32 * m;
            if deg > trunc {
                break;
            }
            if !a.is_zero() {
                out.set_coeff(deg, &out.coeff(deg) + &(a * &cp));
            }
            cp = &cp * c;
        }
        out
    }

    /// Restrict to coefficients of degree <= `n` (marking the result a
    /// truncated series).
    pub fn truncated(&self, n: u32) -> PowerSeries {
        let mut s = PowerSeries {
            mode: self.mode.clone(),
            trunc: n,
            poly: false,
            coeffs: self.coeffs.iter().take(n as usize + 1).cloned().collect(),
        };
        s.trim();
        s
    }

    /// Evaluate a polynomial/truncated series at a numeric point.
    pub fn eval_numeric(&self, z: Complex64, q: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.value_at(q);
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QDirection {
    Backward,
    Forward,
}

/// The q-derivative on series: backward sends `z^n` to
/// `(1-q^n)/(1-q) z^(n-1)`, forward to `(q^-n - 1)/(1-q) z^(n-1)`.
pub fn qderiv(f: &PowerSeries, direction: QDirection) -> PowerSeries {
    let mode = f.mode.clone();
    let one = mode.one();
    let denom = &one - &mode.q();
    let trunc = if f.poly {
        f.trunc
    } else {
        f.trunc.saturating_sub(1)
    };
    let mut out = PowerSeries {
        mode: mode.clone(),
        trunc,
        poly: f.poly,
        coeffs: Vec::new(),
    };
    for n in 1..=f.coeffs.len() as u32 - u32::from(f.is_zero()) {
        let c = f.coeff(n);
        if c.is_zero() {
            continue;
        }
        let factor = match direction {
            QDirection::Backward => &(&one - &mode.qpow(n as i64)) / &denom,
            QDirection::Forward => &(&mode.qpow(-(n as i64)) - &one) / &denom,
        };
        out.set_coeff(n - 1, &c * &factor);
    }
    out
}

/// The named one-variable series of the engine.
#[derive(Clone, Debug, PartialEq)]
pub enum NamedSeries {
    Eq,
    BigEq,
    Phi10(ScalarQ),
    LogQ,
    Li2Q,
    GaussG,
    GaussBigG,
}

/// `e_{q^base}` as a truncated series: coefficient `1/(q^base; q^base)_k`.
pub fn eq_series_base(mode: &QMode, trunc: u32, base: u32) -> PowerSeries {
    let qb = mode.qpow(base as i64);
    PowerSeries::from_fn(mode.clone(), trunc, |k| {
        mode.one()
            .checked_div(&qshifted_factorial(&qb, &qb, k))
            .expect("(q;q)_k is invertible")
    })
}

/// `E_{q^base}`: coefficient `q^(base*k(k-1)/2) / (q^base; q^base)_k`.
pub fn bigeq_series_base(mode: &QMode, trunc: u32, base: u32) -> PowerSeries {
    let qb = mode.qpow(base as i64);
    PowerSeries::from_fn(mode.clone(), trunc, |k| {
        let num = mode.qpow(base as i64 * (k as i64) * (k as i64 - 1) / 2);
        num.checked_div(&qshifted_factorial(&qb, &qb, k))
            .expect("(q;q)_k is invertible")
    })
}

pub fn series_of(name: &NamedSeries, mode: &QMode, trunc: u32) -> PowerSeries {
    match name {
        NamedSeries::Eq => eq_series_base(mode, trunc, 1),
        NamedSeries::BigEq => bigeq_series_base(mode, trunc, 1),
        NamedSeries::Phi10(a) => {
            let q = mode.q();
            PowerSeries::from_fn(mode.clone(), trunc, |k| {
                let num = qshifted_factorial(a, &q, k);
                let den = qshifted_factorial(&q, &q, k);
                num.checked_div(&den).expect("(q;q)_k is invertible")
            })
        }
        NamedSeries::LogQ => PowerSeries::from_fn(mode.clone(), trunc, |k| {
            if k == 0 {
                mode.zero()
            } else {
                mode.one()
                    .checked_div(&(&mode.one() - &mode.qpow(k as i64)))
                    .expect("1 - q^k nonzero")
            }
        }),
        NamedSeries::Li2Q => PowerSeries::from_fn(mode.clone(), trunc, |k| {
            if k == 0 {
                mode.zero()
            } else {
                mode.one()
                    .checked_div(
                        &(&mode.int(k as i64) * &(&mode.one() - &mode.qpow(k as i64))),
                    )
                    .expect("k (1 - q^k) nonzero")
            }
        }),
        NamedSeries::GaussG => {
            let inner = -mode.one();
            eq_series_base(mode, trunc, 2).compose_monomial(&inner, 2, trunc)
        }
        NamedSeries::GaussBigG => {
            let inner = -mode.one();
            bigeq_series_base(mode, trunc, 2).compose_monomial(&inner, 2, trunc)
        }
    }
}

// ---------------------------------------------------------------------------
// numeric evaluation via product forms
// ---------------------------------------------------------------------------

const POLE_EPS: f64 = 1e-8;

/// `e_q(z) = 1 / (z; q)_inf` by the product form (valid beyond `|z| < 1`,
/// away from the poles `q^-k`).
pub fn eq_prod(z: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    let p = qpochhammer_infinite(z, q, tol, Some(POLE_EPS))?;
    // the product can overflow for huge |z|; the reciprocal is then 0
    if p.value.norm().is_infinite() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(p.value.inv())
}

/// `E_q(z) = (-z; q)_inf`; entire.
pub fn bigeq_prod(z: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    Ok(qpochhammer_infinite(-z, q, tol, None)?.value)
}

/// The q-Gaussian `g_q(x) = e_{q^2}(-x^2)`.
pub fn gauss_g(x: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    eq_prod(-x * x, q * q, tol)
}

/// The second q-Gaussian `G_q(x) = E_{q^2}(-x^2) = (x^2; q^2)_inf`.
pub fn gauss_big_g(x: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    Ok(qpochhammer_infinite(x * x, q * q, tol, None)?.value)
}

/// `log_q(z) = sum z^n / (1-q^n)`, `|z| < 1`.
pub fn logq_sum(z: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "log_q series needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zn = z;
    let mut n = 1u32;
    while zn.norm() / (1.0 - q) >= tol && n < 100_000 {
        acc += zn / (1.0 - q.powi(n as i32));
        zn *= z;
        n += 1;
    }
    Ok(acc)
}

/// `Li2(z; q) = sum z^n / (n (1-q^n))`, `|z| < 1`.
pub fn li2q_sum(z: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "Li2(.;q) series needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zn = z;
    let mut n = 1u32;
    while zn.norm() / (1.0 - q) >= tol && n < 100_000 {
        acc += zn / (n as f64 * (1.0 - q.powi(n as i32)));
        zn *= z;
        n += 1;
    }
    Ok(acc)
}

/// Euler's dilogarithm by direct series summation (`|z| < 1`); used as the
/// classical oracle in the q -> 1 limit checks.
pub fn dilog(z: f64) -> f64 {
    assert!(z.abs() < 1.0);
    let mut acc = 0.0;
    let mut zn = z;
    let mut n = 1u64;
    while zn.abs() / (n * n) as f64 >= 1e-18 && n < 10_000_000 {
        acc += zn / (n * n) as f64;
        zn *= z;
        n += 1;
    }
    acc
}

pub fn numeric_eval(name: &NamedSeries, z: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    match name {
        NamedSeries::Eq => eq_prod(z, q, tol),
        NamedSeries::BigEq => bigeq_prod(z, q, tol),
        NamedSeries::Phi10(a) => {
            let a = a.value_at(q);
            let num = qpochhammer_infinite(a * z, q, tol, None)?.value;
            let den = qpochhammer_infinite(z, q, tol, Some(POLE_EPS))?.value;
            Ok(num / den)
        }
        NamedSeries::LogQ => logq_sum(z, q, tol),
        NamedSeries::Li2Q => li2q_sum(z, q, tol),
        NamedSeries::GaussG => gauss_g(z, q, tol),
        NamedSeries::GaussBigG => gauss_big_g(z, q, tol),
    }
}

// ---------------------------------------------------------------------------
// q -> 1 limit checks
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitTarget {
    Eq,
    BigEq,
    LogQ,
    Li2Q,
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub target: f64,
    pub deviations: Vec<f64>,
    /// Deviations shrink along the q-sequence (small wobble tolerated).
    pub shrinking: bool,
    pub final_deviation: f64,
}

/// Deviations of the rescaled q-functions from their classical limits along
/// a sequence of q values approaching 1.
pub fn limit_check_q1(which: LimitTarget, z: f64, qs: &[f64]) -> Result<LimitReport> {
    let tol = 1e-15;
    let target = match which {
        LimitTarget::Eq | LimitTarget::BigEq => z.exp(),
        LimitTarget::LogQ => -(1.0 - z).ln(),
        LimitTarget::Li2Q => dilog(z),
    };
    let mut deviations = Vec::with_capacity(qs.len());
    for &q in qs {
        let zc = Complex64::new(z, 0.0);
        let value = match which {
            LimitTarget::Eq => eq_prod(zc * (1.0 - q), q, tol)?,
            LimitTarget::BigEq => bigeq_prod(zc * (1.0 - q), q, tol)?,
            LimitTarget::LogQ => logq_sum(zc, q, tol)? * (1.0 - q),
            LimitTarget::Li2Q => li2q_sum(zc, q, tol)? * (1.0 - q),
        };
        deviations.push((value - target).norm());
    }
    let shrinking = deviations.windows(2).all(|w| w[1] <= w[0] * 1.05 + 1e-14);
    Ok(LimitReport {
        target,
        final_deviation: deviations.last().copied().unwrap_or(0.0),
        deviations,
        shrinking,
    })
}

// ---------------------------------------------------------------------------
// hybrid identities (classical objects meeting q-series)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct HybridReport {
    /// max over samples of |Li2(z;q) - log e_q(z)|
    pub li2_log_max: f64,
    /// max over samples of |log_q(z) - z e_q'(z)/e_q(z)|
    pub logq_ratio_max: f64,
    /// max over samples of |log_q(z) + d/da phi10(a;;q,z) at a=1| (central difference)
    pub logq_aderiv_max: f64,
    /// chain-rule check: observed x-interval where it holds and max deviation there
    pub chain_rule_range: (f64, f64),
    pub chain_rule_max: f64,
}

fn eq_series_derivative(z: Complex64, q: f64, tol: f64) -> Complex64 {
    // termwise derivative of sum z^n/(q;q)_n; |z| < 1
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pochh = 1.0;
    let mut zpow = Complex64::new(1.0, 0.0);
    for n in 1..200 {
        pochh *= 1.0 - q.powi(n);
        acc += n as f64 * zpow / pochh;
        zpow *= z;
        if (zpow.norm() * (n + 1) as f64 / pochh) < tol {
            break;
        }
    }
    acc
}

/// Numeric checks of the hybrid formulas on real samples `|z| < 1`.
pub fn hybrid_identities(q: f64, zs: &[f64]) -> Result<HybridReport> {
    let tol = 1e-16;
    let mut li2_log_max: f64 = 0.0;
    let mut logq_ratio_max: f64 = 0.0;
    let mut logq_aderiv_max: f64 = 0.0;
    for &z in zs {
        let zc = Complex64::new(z, 0.0);
        let li2 = li2q_sum(zc, q, tol)?;
        let eq = eq_prod(zc, q, tol)?;
        li2_log_max = li2_log_max.max((li2 - eq.ln()).norm());

        let logq = logq_sum(zc, q, tol)?;
        let ratio = zc * eq_series_derivative(zc, q, tol) / eq;
        logq_ratio_max = logq_ratio_max.max((logq - ratio).norm());

        // -d/da phi10(a;;q,z) at a = 1 by central difference
        let h = 1e-5;
        let phi = |a: f64| -> Result<Complex64> {
            let num = qpochhammer_infinite(Complex64::new(a, 0.0) * zc, q, tol, None)?.value;
            let den = qpochhammer_infinite(zc, q, tol, Some(POLE_EPS))?.value;
            Ok(num / den)
        };
        let deriv = (phi(1.0 + h)? - phi(1.0 - h)?) / (2.0 * h);
        logq_aderiv_max = logq_aderiv_max.max((logq + deriv).norm());
    }

    // chain rule: (D_q f)(g(x)) (D_q g)(x) = 1 with g(x) = 1 - e_q(-(1-q)x),
    // f(y) = (1-q) log_q(y); sampled on (0, 1/(1-q))
    let g = |x: f64| -> Result<Complex64> {
        Ok(Complex64::new(1.0, 0.0) - eq_prod(Complex64::new(-(1.0 - q) * x, 0.0), q, tol)?)
    };
    let f_dq = |y: Complex64| -> Result<Complex64> {
        // D_q f at y for f = (1-q) log_q: (f(y) - f(qy)) / ((1-q) y)
        let fy = logq_sum(y, q, tol)? * (1.0 - q);
        let fqy = logq_sum(y * q, q, tol)? * (1.0 - q);
        Ok((fy - fqy) / ((1.0 - q) * y))
    };
    let mut chain_max: f64 = 0.0;
    let mut hi = 0.0f64;
    let upper = 1.0 / (1.0 - q);
    let steps = 40;
    for i in 1..steps {
        let x = upper * i as f64 / steps as f64;
        let gx = g(x)?;
        let dgx = (g(x)? - g(q * x)?) / ((1.0 - q) * x);
        let val = f_dq(gx)? * dgx;
        let dev = (val - Complex64::new(1.0, 0.0)).norm();
        if dev < 1e-8 {
            hi = x;
            chain_max = chain_max.max(dev);
        } else {
            break;
        }
    }
    Ok(HybridReport {
        li2_log_max,
        logq_ratio_max,
        logq_aderiv_max,
        chain_rule_range: (0.0, hi),
        chain_rule_max: chain_max,
    })
}

/// Exact route for the parameter-derivative formula: the a-derivative of the
/// k-th phi10 coefficient at a = 1 equals minus the log_q coefficient,
/// termwise in the rational-function field. Returns the number of failing
/// indices up to `trunc`.
pub fn logq_aderiv_exact(trunc: u32) -> u32 {
    let mut failures = 0;
    for k in 1..=trunc {
        let phi_k = qshifted_factorial_apoly(k);
        let deriv_at_one = phi_k.derivative().eval(&ScalarQ::one());
        let coeff = deriv_at_one
            .checked_div(&qq_factorial(k))
            .expect("(q;q)_k invertible");
        let logq_k = ScalarQ::one()
            .checked_div(&(ScalarQ::one() - ScalarQ::qpow(k as i64)))
            .unwrap();
        if !(-coeff.clone()).checked_sub(&logq_k).unwrap().is_zero() {
            failures += 1;
        }
    }
    failures
}

/// Exact phi10 with symbolic parameter: series over polynomials in `a`.
/// Returns coefficients `(a;q)_k / (q;q)_k` as [`APoly`] values scaled by the
/// inverse factorial.
pub fn phi10_apoly_coeffs(trunc: u32) -> Vec<APoly> {
    (0..=trunc)
        .map(|k| {
            let inv_fact = ScalarQ::one().checked_div(&qq_factorial(k)).unwrap();
            qshifted_factorial_apoly(k).scale(&inv_fact)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::close;

    fn exact() -> QMode {
        QMode::ExactSymbolic
    }

    #[test]
    fn eq_coefficients() {
        let s = series_of(&NamedSeries::Eq, &exact(), 6);
        // coefficient of z^2 is 1/((1-q)(1-q^2))
        let expect = ScalarQ::one()
            .checked_div(
                &((ScalarQ::one() - ScalarQ::q())
                    * (ScalarQ::one() - ScalarQ::qpow(2))),
            )
            .unwrap();
        assert_eq!(s.coeff(2), expect);
    }

    #[test]
    fn logq_starts_at_degree_one() {
        let s = series_of(&NamedSeries::LogQ, &exact(), 6);
        assert!(s.coeff(0).is_zero());
        assert!(!s.coeff(1).is_zero());
    }

    #[test]
    fn phi10_is_bigeq_times_eq() {
        // phi10(a;;q,z) = E_q(-a z) e_q(z) as truncated series, symbolic-ish a = q^3
        let a = ScalarQ::qpow(3);
        let n = 10;
        let phi = series_of(&NamedSeries::Phi10(a.clone()), &exact(), n);
        let e = series_of(&NamedSeries::Eq, &exact(), n);
        let big = bigeq_series_base(&exact(), n, 1).compose_monomial(&(-a), 1, n);
        let prod = big.mul(&e);
        assert!(phi.sub(&prod).is_zero());
    }

    #[test]
    fn qderiv_monomial_rules() {
        let mode = exact();
        let z3 = PowerSeries::polynomial(mode.clone(), vec![
            ScalarQ::zero(),
            ScalarQ::zero(),
            ScalarQ::zero(),
            ScalarQ::one(),
        ]);
        let d = qderiv(&z3, QDirection::Backward);
        // (1-q^3)/(1-q) z^2
        let expect = (ScalarQ::one() - ScalarQ::qpow(3))
            .checked_div(&(ScalarQ::one() - ScalarQ::q()))
            .unwrap();
        assert_eq!(d.coeff(2), expect);
        assert!(d.coeff(1).is_zero());
        let constant = PowerSeries::polynomial(mode, vec![ScalarQ::int(7)]);
        assert!(qderiv(&constant, QDirection::Backward).is_zero());
    }

    #[test]
    fn qderiv_of_logq_is_geometric() {
        // (1-q) D_q log_q = sum z^n
        let s = series_of(&NamedSeries::LogQ, &exact(), 9);
        let d = qderiv(&s, QDirection::Backward).scale(&(ScalarQ::one() - ScalarQ::q()));
        for n in 0..=8 {
            assert!(d.coeff(n).is_one(), "coefficient {n}");
        }
    }

    #[test]
    fn eq_qz_recurrence_as_series() {
        // e_q(qz) = (1-z) e_q(z) to truncation 16
        let mode = exact();
        let n = 16;
        let e = series_of(&NamedSeries::Eq, &mode, n);
        let lhs = e.compose_monomial(&ScalarQ::q(), 1, n);
        let one_minus_z = PowerSeries::polynomial(mode.clone(), vec![ScalarQ::one(), ScalarQ::int(-1)]);
        let rhs = one_minus_z.mul(&e);
        assert!(lhs.sub(&rhs).is_zero());
        // E_q(z) = (1+z) E_q(qz)
        let be = series_of(&NamedSeries::BigEq, &mode, n);
        let one_plus_z = PowerSeries::polynomial(mode, vec![ScalarQ::one(), ScalarQ::one()]);
        let rhs2 = one_plus_z.mul(&be.compose_monomial(&ScalarQ::q(), 1, n));
        assert!(be.sub(&rhs2).is_zero());
    }

    #[test]
    fn eq_bigeq_inverse_pair_exact_and_numeric() {
        let mode = exact();
        let n = 16;
        let e = series_of(&NamedSeries::Eq, &mode, n);
        let be_neg = bigeq_series_base(&mode, n, 1).compose_monomial(&ScalarQ::int(-1), 1, n);
        let prod = e.mul(&be_neg);
        assert!(prod.coeff(0).is_one());
        for k in 1..=n {
            assert!(prod.coeff(k).is_zero(), "degree {k}");
        }
        // numeric at q = 1/2, random-ish z inside the unit disc
        for &z in &[0.3, -0.7, 0.11] {
            let zc = Complex64::new(z, 0.25);
            let p = eq_prod(zc, 0.5, 1e-15).unwrap() * bigeq_prod(-zc, 0.5, 1e-15).unwrap();
            assert!(close(p, Complex64::new(1.0, 0.0), 1e-12));
        }
    }

    #[test]
    fn gaussian_splits_numerically() {
        // e_{q^2}(-z^2) = e_q(iz) e_q(-iz) for real z
        for &z in &[0.4, 1.3, 2.7] {
            let zc = Complex64::new(z, 0.0);
            let i = Complex64::new(0.0, 1.0);
            let lhs = gauss_g(zc, 0.5, 1e-15).unwrap();
            let rhs = eq_prod(i * zc, 0.5, 1e-15).unwrap() * eq_prod(-i * zc, 0.5, 1e-15).unwrap();
            assert!(close(lhs, rhs, 1e-12), "z = {z}");
        }
    }

    #[test]
    fn bigeq_at_zero_is_one() {
        assert_eq!(
            bigeq_prod(Complex64::new(0.0, 0.0), 0.5, 1e-15).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn limits_shrink_toward_classical() {
        let qs = [0.9, 0.99, 0.999];
        let r = limit_check_q1(LimitTarget::Eq, 1.0, &qs).unwrap();
        assert!(r.shrinking && r.final_deviation < 1e-2);
        let r = limit_check_q1(LimitTarget::LogQ, 0.0, &qs).unwrap();
        assert!(r.deviations.iter().all(|&d| d == 0.0));
        let r = limit_check_q1(LimitTarget::Li2Q, 0.5, &qs).unwrap();
        assert!(r.shrinking && r.final_deviation < 1e-2);
        // classical oracle sanity: Li2(1/2) = pi^2/12 - ln(2)^2/2
        let target = std::f64::consts::PI.powi(2) / 12.0 - 0.5 * (2.0f64).ln().powi(2);
        assert!((r.target - target).abs() < 1e-12);
    }

    #[test]
    fn hybrid_report_within_tolerances() {
        let zs = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5, -0.25, -0.5];
        let r = hybrid_identities(0.5, &zs).unwrap();
        assert!(r.li2_log_max < 1e-10, "li2/log {}", r.li2_log_max);
        assert!(r.logq_ratio_max < 1e-10, "ratio {}", r.logq_ratio_max);
        assert!(r.logq_aderiv_max < 1e-6, "a-deriv {}", r.logq_aderiv_max);
        assert!(r.chain_rule_range.1 > 0.0 && r.chain_rule_max < 1e-9);
    }

    #[test]
    fn aderiv_exact_route_is_zero_residual() {
        assert_eq!(logq_aderiv_exact(16), 0);
    }
}
