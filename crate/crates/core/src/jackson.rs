//! Jackson integration: exact on truncated series over finite intervals,
//! numeric on geometric lattices over half-lines and the full line, plus the
//! q-Taylor expansion and the translation-invariance statements in
//! q-commuting variables.

use crate::error::{Error, Result};
use crate::ncalg::{compose_series, nc_mul, qplane, NCElement};
use crate::scalar::{qq_factorial, QMode, ScalarQ};
use crate::series::{qderiv, PowerSeries, QDirection};
use num_complex::Complex64;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug)]
pub struct JacksonConfig {
    /// A tail term counts as settled when its magnitude falls below
    /// `tail_tol` times the largest term seen in the sum.
    pub tail_tol: f64,
    /// Maximum number of lattice steps on each side.
    pub max_window: u32,
}

impl Default for JacksonConfig {
    fn default() -> Self {
        JacksonConfig {
            tail_tol: 1e-15,
            max_window: 400,
        }
    }
}

/// Complex samples of a function on the two-sided lattice `{±gamma q^k}`.
#[derive(Clone, Debug)]
pub struct QGridFunction {
    pub gamma: f64,
    pub q: f64,
    values: BTreeMap<(i8, i32), Complex64>,
    pub at_zero: Option<Complex64>,
}

impl QGridFunction {
    pub fn sample(
        gamma: f64,
        q: f64,
        range: std::ops::RangeInclusive<i32>,
        f: impl Fn(f64) -> Complex64,
    ) -> Self {
        let mut values = BTreeMap::new();
        for k in range {
            let x = gamma * q.powi(k);
            values.insert((1, k), f(x));
            values.insert((-1, k), f(-x));
        }
        QGridFunction {
            gamma,
            q,
            values,
            at_zero: None,
        }
    }

    pub fn point(&self, sign: i8, k: i32) -> f64 {
        f64::from(sign) * self.gamma * self.q.powi(k)
    }

    pub fn get(&self, sign: i8, k: i32) -> Result<Complex64> {
        self.values
            .get(&(sign, k))
            .copied()
            .ok_or_else(|| Error::MissingSample(format!("{}", self.point(sign, k))))
    }

    pub fn keys(&self) -> impl Iterator<Item = (i8, i32)> + '_ {
        self.values.keys().copied()
    }

    /// q-derivative on the grid. Backward needs the sample at `q z` (index
    /// `k+1`), forward the one at `q^-1 z` (index `k-1`); missing neighbours
    /// shrink the grid and out-of-window requests report `MissingSample`
    /// through `get`.
    pub fn qderiv(&self, direction: QDirection) -> Result<QGridFunction> {
        let mut values = BTreeMap::new();
        for &(sign, k) in self.values.keys() {
            let z = self.point(sign, k);
            let source = match direction {
                QDirection::Backward => (self.get(sign, k), self.get(sign, k + 1)),
                QDirection::Forward => (self.get(sign, k - 1), self.get(sign, k)),
            };
            if let (Ok(hi), Ok(lo)) = source {
                values.insert((sign, k), (hi - lo) / ((1.0 - self.q) * z));
            }
        }
        if values.is_empty() {
            return Err(Error::MissingSample("empty derivative grid".into()));
        }
        Ok(QGridFunction {
            gamma: self.gamma,
            q: self.q,
            values,
            at_zero: None,
        })
    }
}

/// Exact antiderivative on series: `z^n -> (1-q)/(1-q^(n+1)) z^(n+1)`.
pub fn jackson_0_to_x(f: &PowerSeries) -> PowerSeries {
    let mode = f.mode.clone();
    let one = mode.one();
    let one_minus_q = &one - &mode.q();
    // integrating shifts reliable degrees up by one
    let mut out = PowerSeries::zero(mode.clone(), f.trunc + 1);
    out.poly = f.poly;
    for n in 0..=f.degree().unwrap_or(0) {
        let c = f.coeff(n);
        if c.is_zero() {
            continue;
        }
        let factor = one_minus_q
            .checked_div(&(&one - &mode.qpow(n as i64 + 1)))
            .expect("1 - q^(n+1) nonzero");
        out.set_coeff(n + 1, &c * &factor);
    }
    out
}

/// One-sided numeric Jackson sum: `(1-q) sum_{k>=0} f(q^k x) q^k x`.
fn jackson_half(
    f: &dyn Fn(f64) -> Complex64,
    x: f64,
    q: f64,
    cfg: &JacksonConfig,
) -> Result<Complex64> {
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut small_streak = 0;
    let mut peak = 0.0f64;
    for k in 0..cfg.max_window {
        let point = q.powi(k as i32) * x;
        let term = f(point) * point;
        acc += term;
        peak = peak.max(term.norm());
        // the tolerance is relative to the largest term seen, so small-valued
        // integrals keep full relative accuracy
        if term.norm() < cfg.tail_tol * peak.max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(acc * (1.0 - q));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::TailNotConverged)
}

/// `int_a^b f(t) d_q t` with both endpoints anchored at 0.
pub fn jackson_interval(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    q: f64,
    cfg: &JacksonConfig,
) -> Result<Complex64> {
    let upper = jackson_half(&f, b, q, cfg)?;
    let lower = jackson_half(&f, a, q, cfg)?;
    Ok(upper - lower)
}

/// Two-sided numeric Jackson integral over the lattice `{±gamma q^k}`,
/// `k` ranging over all integers: `(1-q) sum_k (f(q^k gamma) + f(-q^k gamma)) q^k gamma`.
///
/// The decaying side (`k -> +inf`) and the growing side (`k -> -inf`) are
/// expanded until three consecutive terms fall below `tail_tol`; a growing
/// upper tail is reported as divergent.
pub fn jackson_realline(
    f: impl Fn(f64) -> Complex64,
    gamma: f64,
    q: f64,
    cfg: &JacksonConfig,
) -> Result<Complex64> {
    let term_at = |k: i32| -> Complex64 {
        let point = gamma * q.powi(k);
        (f(point) + f(-point)) * point
    };
    let mut acc = Complex64::new(0.0, 0.0);
    let mut peak = 0.0f64;
    // inner side: k = 0, 1, 2, ... (points shrink to 0)
    let mut small_streak = 0;
    let mut converged = false;
    for k in 0..cfg.max_window as i32 {
        let term = term_at(k);
        acc += term;
        peak = peak.max(term.norm());
        if term.norm() < cfg.tail_tol * peak.max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    if !converged {
        return Err(Error::TailNotConverged);
    }
    // outer side: k = -1, -2, ... (points grow; convergence needs decay of f)
    let mut small_streak = 0;
    let mut growth_streak = 0;
    let mut last_norm = f64::NEG_INFINITY;
    let mut converged = false;
    for k in 1..=cfg.max_window as i32 {
        let term = term_at(-k);
        let norm = term.norm();
        if !norm.is_finite() || norm > 1e100 {
            return Err(Error::DivergentUpperTail);
        }
        acc += term;
        peak = peak.max(norm);
        if norm < cfg.tail_tol * peak.max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
        if norm > last_norm && norm > cfg.tail_tol * peak {
            growth_streak += 1;
            if growth_streak >= 8 && norm > 1e8 {
                return Err(Error::DivergentUpperTail);
            }
        } else {
            growth_streak = 0;
        }
        last_norm = norm;
    }
    if !converged {
        return Err(Error::TailNotConverged);
    }
    Ok(acc * (1.0 - q))
}

/// Real-line Jackson integral of pre-sampled grid values.
pub fn jackson_realline_grid(g: &QGridFunction, cfg: &JacksonConfig) -> Result<Complex64> {
    let mut ks: Vec<i32> = g
        .keys()
        .filter(|&(s, _)| s == 1)
        .map(|(_, k)| k)
        .collect();
    ks.sort_unstable();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut peak = 0.0f64;
    let mut settled = false;
    for &k in ks.iter().rev() {
        // ascending point size: large k first (small points)
        let point = g.gamma * g.q.powi(k);
        let term = (g.get(1, k)? + g.get(-1, k)?) * point;
        if !term.norm().is_finite() {
            return Err(Error::DivergentUpperTail);
        }
        acc += term;
        peak = peak.max(term.norm());
        settled = term.norm() < cfg.tail_tol * peak.max(f64::MIN_POSITIVE);
    }
    if !settled {
        return Err(Error::TailNotConverged);
    }
    Ok(acc * (1.0 - g.q))
}

// ---------------------------------------------------------------------------
// q-Taylor expansion in q-commuting variables
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct QTaylorParts {
    /// `sum_{k<m} y^k ((1-q) D_q)^k f(x) / (q;q)_k`
    pub partial: NCElement,
    /// `f(x+y) - partial`; every monomial has y-exponent >= m
    pub remainder: NCElement,
    /// remainder with `y^m` divided off on the left
    pub g_m: NCElement,
}

/// Builds `sum_k y^k ((1-q) D_q)^k f(x) / (q;q)_k` for `k < m` in the
/// q-plane, where the `x`-series sits to the right of the `y`-powers.
fn taylor_partial(f: &PowerSeries, m: u32, trunc: u32) -> Result<NCElement> {
    let mode = f.mode.clone();
    let alg = qplane();
    let one_minus_q = &mode.one() - &mode.q();
    let mut out = NCElement::zero(&alg, trunc);
    let y = NCElement::generator(&alg, trunc, "y")?;
    let x = NCElement::generator(&alg, trunc, "x")?;
    let mut deriv = f.clone();
    let mut y_pow = NCElement::one(&alg, trunc);
    for k in 0..m {
        if k > 0 {
            deriv = qderiv(&deriv, QDirection::Backward).scale(&one_minus_q);
            y_pow = nc_mul(&y_pow, &y)?;
        }
        if deriv.is_zero() {
            break;
        }
        let coeff = mode
            .one()
            .checked_div(&qq_factorial_mode(&mode, k))
            .expect("(q;q)_k invertible");
        // deriv evaluated at the generator x
        let fx = compose_series(&deriv.scale(&coeff), &x)?;
        out = out.add(&nc_mul(&y_pow, &fx)?)?;
    }
    Ok(out)
}

fn qq_factorial_mode(mode: &QMode, k: u32) -> ScalarQ {
    match mode {
        QMode::ExactSymbolic => qq_factorial(k),
        QMode::NumericAt(_) => {
            crate::scalar::qshifted_factorial(&mode.q(), &mode.q(), k)
        }
    }
}

/// Splits `f(x+y)` into the order-`m` q-Taylor partial sum plus a remainder
/// `y^m g_m(x, y)`, verifying the remainder's `y`-degrees along the way.
pub fn qtaylor(f: &PowerSeries, m: u32, trunc: u32) -> Result<QTaylorParts> {
    let alg = qplane();
    let x = NCElement::generator(&alg, trunc, "x")?;
    let y = NCElement::generator(&alg, trunc, "y")?;
    let full = compose_series(f, &x.add(&y)?)?;
    let partial = taylor_partial(f, m, trunc)?;
    let remainder = full.sub(&partial)?;
    let mut g_m = NCElement::zero(&alg, trunc);
    for (key, c) in remainder.terms() {
        let l = key.word.iter().filter(|&&g| g == 0).count() as u32;
        if l < m {
            return Err(Error::Domain(format!(
                "remainder term with y-exponent {l} below order {m}"
            )));
        }
        // strip y^m from the left of the normal word
        let stripped: Vec<u8> = key.word[m as usize..].to_vec();
        let mut term = NCElement::zero(&alg, trunc);
        let w = crate::ncalg::Word::from_slice(&stripped);
        term = term.add(&monomial(&alg, trunc, w, c.clone()))?;
        g_m = g_m.add(&term)?;
    }
    Ok(QTaylorParts {
        partial,
        remainder,
        g_m,
    })
}

fn monomial(
    alg: &std::sync::Arc<crate::ncalg::AlgebraSpec>,
    trunc: u32,
    w: crate::ncalg::Word,
    c: ScalarQ,
) -> NCElement {
    let mut e = NCElement::zero(alg, trunc);
    if w.is_empty() {
        return NCElement::scalar(alg, trunc, c);
    }
    // words built from an existing normal form stay normal
    let names: Vec<&str> = w
        .iter()
        .map(|&g| alg.gens[g as usize].name)
        .collect();
    let nf = crate::ncalg::normal_order(alg, &names, trunc).expect("known generators");
    e = e.add(&nf.scale(&c)).expect("same algebra");
    e
}

// ---------------------------------------------------------------------------
// translation invariance over a finite interval (exact)
// ---------------------------------------------------------------------------

/// Exact check of `int_y^(u+y) f(t) d_q t = int_0^u f(t+y) d_q t` in the
/// q-plane, for any `u` with `u y = q y u`.
///
/// The left side lifts the monomial rule through composition; the right side
/// expands `f(t+y)` by the q-Taylor formula and integrates termwise:
/// `sum_k (1-q)^k/(q;q)_k y^k J(D_q^k f)(u)`.
pub fn translation_invariance_at(
    f: &PowerSeries,
    u: &NCElement,
    trunc: u32,
) -> Result<bool> {
    let mode = f.mode.clone();
    let alg = qplane();
    if u.algebra != alg {
        return Err(Error::AlgebraMismatch);
    }
    let y = NCElement::generator(&alg, trunc, "y")?;
    // u must q-commute with y
    let uy = nc_mul(&u, &y)?;
    let yu = nc_mul(&y, &u)?;
    if !uy.sub(&yu.scale(&mode.q()))?.is_zero() {
        return Err(Error::Domain("u does not q-commute with y".into()));
    }

    let integral = jackson_0_to_x(f);
    let upper = u.add(&y)?;
    let lhs = compose_series(&integral, &upper)?.sub(&compose_series(&integral, &y)?)?;

    let one_minus_q = &mode.one() - &mode.q();
    let mut rhs = NCElement::zero(&alg, trunc);
    let mut deriv = f.clone();
    let mut y_pow = NCElement::one(&alg, trunc);
    for k in 0..=trunc {
        if k > 0 {
            deriv = qderiv(&deriv, QDirection::Backward).scale(&one_minus_q);
            y_pow = nc_mul(&y_pow, &y)?;
        }
        if deriv.is_zero() {
            break;
        }
        let coeff = mode.one().checked_div(&qq_factorial_mode(&mode, k))?;
        let integrated = jackson_0_to_x(&deriv.scale(&coeff));
        rhs = rhs.add(&nc_mul(&y_pow, &compose_series(&integrated, &u)?)?)?;
    }
    Ok(lhs.sub(&rhs)?.is_zero())
}

/// The standard statement with `u = x` (the generator).
pub fn translation_invariance_finite(f: &PowerSeries, trunc: u32) -> Result<bool> {
    let alg = qplane();
    let x = NCElement::generator(&alg, trunc, "x")?;
    translation_invariance_at(f, &x, trunc)
}

// ---------------------------------------------------------------------------
// translation invariance over the real line (numeric)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    /// `g_q(x) = e_{q^2}(-x^2)`
    GaussG,
    /// `G_q(x) = E_{q^2}(-x^2)`
    GaussBigG,
}

impl WeightKind {
    pub fn eval(&self, x: f64, q: f64) -> Complex64 {
        let xc = Complex64::new(x, 0.0);
        match self {
            WeightKind::GaussG => crate::series::gauss_g(xc, q, 1e-16).expect("no poles"),
            WeightKind::GaussBigG => {
                crate::series::gauss_big_g(xc, q, 1e-16).expect("entire")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct InfiniteInvarianceReport {
    /// `I_f(gamma)` for `f = x^j * weight`
    pub base: Complex64,
    /// `I_{f_m}(gamma)` for `m = 1..=m_max`
    pub translated_moments: Vec<Complex64>,
    pub max_abs: f64,
}

/// Numeric q-derivative of a closure.
fn dq_fn<'a>(f: &'a dyn Fn(f64) -> Complex64, q: f64) -> impl Fn(f64) -> Complex64 + 'a {
    move |x: f64| (f(x) - f(q * x)) / ((1.0 - q) * x)
}

/// Computes `I_{f_m}(gamma)` for `f = x^j * weight`, where
/// `f_m = ((1-q) D_q)^m f / (q;q)_m`; translation invariance over the line
/// holds exactly when all of them vanish for `m >= 1`.
pub fn translation_invariance_infinite(
    weight: WeightKind,
    j: u32,
    gamma: f64,
    q: f64,
    m_max: u32,
    cfg: &JacksonConfig,
) -> Result<InfiniteInvarianceReport> {
    let f = move |x: f64| x.powi(j as i32) * weight.eval(x, q);
    let base = jackson_realline(f, gamma, q, cfg)?;
    let mut translated = Vec::new();
    let mut max_abs: f64 = 0.0;
    for m in 1..=m_max {
        // ((1-q) D_q)^m f / (q;q)_m as a nested closure
        let value = {
            let mut eval: Box<dyn Fn(f64) -> Complex64> = Box::new(f);
            for _ in 0..m {
                let prev = eval;
                eval = Box::new(move |x: f64| {
                    (prev(x) - prev(q * x)) / ((1.0 - q) * x) * (1.0 - q)
                });
            }
            let mut fact = 1.0;
            for i in 1..=m {
                fact *= 1.0 - q.powi(i as i32);
            }
            jackson_realline(|x| eval(x) / fact, gamma, q, cfg)?
        };
        max_abs = max_abs.max(value.norm());
        translated.push(value);
    }
    Ok(InfiniteInvarianceReport {
        base,
        translated_moments: translated,
        max_abs,
    })
}

/// Direct check that the line integral of a q-derivative vanishes when the
/// integrand decays both ways (summation by parts telescopes).
pub fn derivative_integral_vanishes(
    f: impl Fn(f64) -> Complex64,
    gamma: f64,
    q: f64,
    cfg: &JacksonConfig,
) -> Result<Complex64> {
    let df = dq_fn(&f, q);
    jackson_realline(df, gamma, q, cfg)
}

/// Empirical ratio test for the rapid-decay hypothesis: the magnitudes of
/// `D_q^m f` at the outer lattice points `±gamma q^-k` must decay faster
/// than `q^(k)` as `k` grows. Returns the worst observed ratio
/// `|value(k+1)| / (|value(k)| * q)`; rapid decay keeps it below 1.
pub fn growth_hypothesis_ratio(
    f: impl Fn(f64) -> Complex64,
    gamma: f64,
    q: f64,
    m_max: u32,
    k_probe: i32,
) -> f64 {
    let mut worst: f64 = 0.0;
    for m in 0..=m_max {
        let mut eval: Box<dyn Fn(f64) -> Complex64> = Box::new(&f);
        for _ in 0..m {
            let prev = eval;
            eval = Box::new(move |x: f64| (prev(x) - prev(q * x)) / ((1.0 - q) * x));
        }
        for k in k_probe..k_probe + 4 {
            let a = eval(gamma * q.powi(-k)).norm() + eval(-gamma * q.powi(-k)).norm();
            let b = eval(gamma * q.powi(-k - 1)).norm() + eval(-gamma * q.powi(-k - 1)).norm();
            if a > 0.0 {
                worst = worst.max(b / (a / q));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::close;
    use crate::series::{series_of, NamedSeries};

    fn exact() -> QMode {
        QMode::ExactSymbolic
    }

    #[test]
    fn fermat_rule_on_series() {
        let mode = exact();
        let z2 = PowerSeries::polynomial(
            mode.clone(),
            vec![ScalarQ::zero(), ScalarQ::zero(), ScalarQ::one()],
        );
        let j = jackson_0_to_x(&z2);
        let expect = (ScalarQ::one() - ScalarQ::q())
            .checked_div(&(ScalarQ::one() - ScalarQ::qpow(3)))
            .unwrap();
        assert_eq!(j.coeff(3), expect);
        assert!(jackson_0_to_x(&PowerSeries::zero(mode, 5)).is_zero());
    }

    #[test]
    fn geometric_integrates_to_logq() {
        // int_0^x (1-t)^{-1} = (1-q) log_q(x): monomial rule applied to the
        // geometric series, coefficient (1-q)/(1-q^(n+1)) on x^(n+1)
        let mode = exact();
        let n = 12;
        let geom = PowerSeries::from_fn(mode.clone(), n, |_| ScalarQ::one());
        let j = jackson_0_to_x(&geom);
        let logq = series_of(&NamedSeries::LogQ, &mode, n + 1)
            .scale(&(ScalarQ::one() - ScalarQ::q()));
        assert!(j.sub(&logq).is_zero());
    }

    #[test]
    fn monomial_interval_value() {
        // int_0^1 t^2 d_q t = (1-q)/(1-q^3) = 4/7 at q = 1/2
        let cfg = JacksonConfig::default();
        let v = jackson_interval(|t| Complex64::new(t * t, 0.0), 0.0, 1.0, 0.5, &cfg).unwrap();
        assert!(close(v, Complex64::new(4.0 / 7.0, 0.0), 1e-13));
        // a = b = 0 gives 0
        let z = jackson_interval(|_| Complex64::new(3.0, 0.0), 0.0, 0.0, 0.5, &cfg).unwrap();
        assert_eq!(z, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn odd_function_line_integral_vanishes() {
        let cfg = JacksonConfig::default();
        let v = jackson_realline(
            |t| Complex64::new(t, 0.0) * WeightKind::GaussG.eval(t, 0.5),
            1.0,
            0.5,
            &cfg,
        )
        .unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn gamma_shift_invariance() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let f = |t: f64| WeightKind::GaussG.eval(t, q) * Complex64::new(t * t, 0.0);
        let a = jackson_realline(f, 1.0, q, &cfg).unwrap();
        let b = jackson_realline(f, 0.5, q, &cfg).unwrap();
        assert!(close(a, b, 1e-12));
    }

    #[test]
    fn big_gaussian_diverges_off_lattice() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let r = jackson_realline(|t| WeightKind::GaussBigG.eval(t, q), 1.1, q, &cfg);
        assert!(matches!(r, Err(Error::DivergentUpperTail)));
        // on the lattice (gamma = 1) the integrand vanishes at all outer points
        let ok = jackson_realline(|t| WeightKind::GaussBigG.eval(t, q), 1.0, q, &cfg);
        assert!(ok.is_ok());
    }

    #[test]
    fn qtaylor_monomial_reproduces_binomial() {
        // full expansion of z^n splits with zero remainder at order n+1
        let mode = exact();
        for n in 1..=6u32 {
            let mut coeffs = vec![ScalarQ::zero(); n as usize + 1];
            coeffs[n as usize] = ScalarQ::one();
            let zn = PowerSeries::polynomial(mode.clone(), coeffs);
            let parts = qtaylor(&zn, n + 1, n + 2).unwrap();
            assert!(parts.remainder.is_zero(), "n = {n}");
            // order-1 split: f(x+y) = f(x) + O(y)
            let p1 = qtaylor(&zn, 1, n + 2).unwrap();
            for (key, _) in p1.remainder.terms() {
                let l = key.word.iter().filter(|&&g| g == 0).count();
                assert!(l >= 1);
            }
        }
    }

    #[test]
    fn qtaylor_order_two_structure() {
        // m = 2, f = z^3: remainder is y^2 g_2 with g_2 nonzero
        let mode = exact();
        let f = PowerSeries::polynomial(
            mode,
            vec![
                ScalarQ::zero(),
                ScalarQ::zero(),
                ScalarQ::zero(),
                ScalarQ::one(),
            ],
        );
        let parts = qtaylor(&f, 2, 5).unwrap();
        assert!(!parts.g_m.is_zero());
        // reassemble: partial + y^2 g_2 = f(x+y)
        let alg = qplane();
        let y = NCElement::generator(&alg, 5, "y").unwrap();
        let y2 = nc_mul(&y, &y).unwrap();
        let rebuilt = parts
            .partial
            .add(&nc_mul(&y2, &parts.g_m).unwrap())
            .unwrap();
        let x = NCElement::generator(&alg, 5, "x").unwrap();
        let full = compose_series(&f, &x.add(&y).unwrap()).unwrap();
        assert!(rebuilt.sub(&full).unwrap().is_zero());
    }

    #[test]
    fn finite_invariance_for_monomials_and_constants() {
        let mode = exact();
        let one = PowerSeries::polynomial(mode.clone(), vec![ScalarQ::one()]);
        assert!(translation_invariance_finite(&one, 6).unwrap());
        for n in 1..=6u32 {
            let mut coeffs = vec![ScalarQ::zero(); n as usize + 1];
            coeffs[n as usize] = ScalarQ::one();
            let zn = PowerSeries::polynomial(mode.clone(), coeffs);
            assert!(translation_invariance_finite(&zn, n + 2).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn finite_invariance_for_geometric_series() {
        let mode = exact();
        let n = 10;
        let geom = PowerSeries::from_fn(mode, n, |_| ScalarQ::one());
        assert!(translation_invariance_finite(&geom, n).unwrap());
    }

    #[test]
    fn infinite_invariance_for_small_gaussian() {
        let cfg = JacksonConfig::default();
        let r =
            translation_invariance_infinite(WeightKind::GaussG, 2, 1.0, 0.5, 2, &cfg).unwrap();
        assert!(r.max_abs < 1e-10, "max_abs = {}", r.max_abs);
        assert!(r.base.norm() > 0.0);
    }

    #[test]
    fn telescoping_lemma() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let f = move |t: f64| Complex64::new(t, 0.0) * WeightKind::GaussG.eval(t, q);
        let v = derivative_integral_vanishes(f, 1.0, q, &cfg).unwrap();
        assert!(v.norm() < 1e-12, "residual {}", v.norm());
    }

    #[test]
    fn grid_sampling_and_derivative() {
        let q = 0.5;
        let g = QGridFunction::sample(1.0, q, -3..=10, |x| Complex64::new(x * x, 0.0));
        // D_q^- of x^2 at x: ((x^2 - q^2 x^2)/((1-q)x)) = (1+q) x
        let d = g.qderiv(QDirection::Backward).unwrap();
        let x = g.point(1, 2);
        let got = d.get(1, 2).unwrap();
        assert!(close(got, Complex64::new((1.0 + q) * x, 0.0), 1e-13));
        assert!(g.get(1, 99).is_err());
    }

    #[test]
    fn big_gaussian_line_integral_collapses_to_interval() {
        // on the unit anchor the second Gaussian vanishes at every outer
        // lattice point, so the line integral is the interval sum over
        // [-q, q]
        let cfg = JacksonConfig::default();
        let q = 0.5;
        for j in [0u32, 2, 4] {
            let f = move |t: f64| {
                Complex64::new(t.powi(j as i32), 0.0) * WeightKind::GaussBigG.eval(t, q)
            };
            let line = jackson_realline(f, 1.0, q, &cfg).unwrap();
            let interval = jackson_interval(f, -q, q, q, &cfg).unwrap();
            assert!(
                crate::scalar::close(line, interval, 1e-13),
                "j={j}: {line} vs {interval}"
            );
        }
    }

    #[test]
    fn grid_integration_matches_closure_integration() {
        let cfg = JacksonConfig::default();
        let q = 0.5;
        let f = |t: f64| Complex64::new(t * t, 0.0) * WeightKind::GaussG.eval(t, q);
        let grid = QGridFunction::sample(1.0, q, -40..=120, f);
        let a = jackson_realline_grid(&grid, &cfg).unwrap();
        let b = jackson_realline(f, 1.0, q, &cfg).unwrap();
        assert!(crate::scalar::close(a, b, 1e-13), "{a} vs {b}");
    }

    #[test]
    fn integral_acts_as_a_constant_through_the_dilation() {
        // the line integral, read as an operator through the dilation
        // action, multiplies every basis vector z^m by the same scalar:
        // I_f(gamma q^m) = I_f(gamma) for all m
        let cfg = JacksonConfig::default();
        let q = 0.5;
        for (weight, gamma) in [(WeightKind::GaussG, 0.8), (WeightKind::GaussBigG, 1.0)] {
            let f = move |t: f64| Complex64::new(t * t, 0.0) * weight.eval(t, q);
            let base = jackson_realline(f, gamma, q, &cfg).unwrap();
            for m in 1..=6 {
                let shifted = jackson_realline(f, gamma * q.powi(m), q, &cfg).unwrap();
                assert!(
                    crate::scalar::close(base, shifted, 1e-12),
                    "{weight:?} m={m}: {base} vs {shifted}"
                );
            }
        }
    }

    #[test]
    fn growth_ratio_distinguishes_weights() {
        let q = 0.5;
        let rapid = growth_hypothesis_ratio(
            |x| WeightKind::GaussG.eval(x, q),
            1.0,
            q,
            2,
            3,
        );
        assert!(rapid < 1.0, "gaussian should be rapidly decreasing: {rapid}");
    }
}
