//! The braided line: braiding, braided tensor products, comultiplication,
//! counit, antipode, the full axiom battery on truncated polynomials, and
//! the covariance statements tying the coproduct to the Jackson integral and
//! the q-Fourier kernel.
//!
//! The tensor square is not a new structure: under `x ten 1 -> y`,
//! `1 ten x -> x` it is the q-plane, so every check runs on the same
//! rewriting kernel. Triple tensors use the three-slot q-commuting algebra.

use crate::error::Result;
use crate::hermite::{hermite, HermiteFamily};
use crate::jackson::JacksonConfig;
use crate::ncalg::{compose_series, nc_mul, qline3, qplane, NCElement};
use crate::scalar::{qbinomial, QMode, ScalarQ};
use crate::series::{eq_prod, gauss_g, qderiv, series_of, NamedSeries, PowerSeries, QDirection};
use num_complex::Complex64;
use std::sync::Arc;

/// A truncated polynomial on the braided line.
pub type BraidedPoly = PowerSeries;

/// An element of the braided tensor square in the q-plane realization
/// (`x ten 1 = y`, `1 ten x = x`, basis `x^l ten x^k = y^l x^k`).
pub type TensorElement = NCElement;

/// Tensor basis element `x^l ten x^k` as a q-plane monomial `y^l x^k`.
pub fn tensor_monomial(l: u32, k: u32, trunc: u32, c: ScalarQ) -> Result<TensorElement> {
    let alg = qplane();
    let names: Vec<&str> = std::iter::repeat("y")
        .take(l as usize)
        .chain(std::iter::repeat("x").take(k as usize))
        .collect();
    Ok(crate::ncalg::normal_order(&alg, &names, trunc)?.scale(&c))
}

/// The braiding `Psi(x^k ten x^l) = q^(kl) x^l ten x^k`, extended linearly.
pub fn braiding(a: &TensorElement) -> Result<TensorElement> {
    let mut out = NCElement::zero(&a.algebra, a.trunc);
    for (key, c) in a.terms() {
        let l = key.word.iter().filter(|&&g| g == 0).count() as u32;
        let k = key.word.len() as u32 - l;
        // slot 1 carried x^l, slot 2 x^k; swap with the q^(lk) factor
        let factor = ScalarQ::qpow((l as i64) * (k as i64));
        out = out.add(&tensor_monomial(k, l, a.trunc, c * &factor)?)?;
    }
    Ok(out)
}

/// Multiplication in the braided tensor square; in the q-plane realization
/// this is plain noncommutative multiplication.
pub fn braided_tensor_mul(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    nc_mul(a, b)
}

/// `Delta(f) = f(x ten 1 + 1 ten x)`.
pub fn coproduct(f: &BraidedPoly, trunc: u32) -> Result<TensorElement> {
    let alg = qplane();
    let x = NCElement::generator(&alg, trunc, "x")?;
    let y = NCElement::generator(&alg, trunc, "y")?;
    compose_series(f, &y.add(&x)?)
}

/// `epsilon(f)`: the constant coefficient.
pub fn counit(f: &BraidedPoly) -> ScalarQ {
    f.coeff(0)
}

/// `S(x^n) = (-1)^n q^(n(n-1)/2) x^n`, extended linearly.
pub fn antipode(f: &BraidedPoly) -> BraidedPoly {
    let mode = f.mode.clone();
    let mut out = PowerSeries::zero(mode.clone(), f.trunc);
    out.poly = f.poly;
    for n in 0..=f.degree().unwrap_or(0) {
        let c = f.coeff(n);
        if c.is_zero() {
            continue;
        }
        let sign = if n % 2 == 0 { mode.one() } else { -mode.one() };
        out.set_coeff(n, &(&c * &sign) * &mode.qpow((n as i64) * (n as i64 - 1) / 2));
    }
    out
}

fn antipode_scalar(n: u32) -> ScalarQ {
    let sign = if n % 2 == 0 {
        ScalarQ::one()
    } else {
        -ScalarQ::one()
    };
    &sign * &ScalarQ::qpow((n as i64) * (n as i64 - 1) / 2)
}

/// Applies a slot-wise linear map and multiplies the slots together
/// (`m` after `f ten g` on monomials).
fn merge_slots(
    a: &TensorElement,
    slot1: impl Fn(u32) -> ScalarQ,
    slot2: impl Fn(u32) -> ScalarQ,
    trunc: u32,
) -> BraidedPoly {
    let mode = QMode::ExactSymbolic;
    let mut out = PowerSeries::zero(mode, trunc);
    for (key, c) in a.terms() {
        let l = key.word.iter().filter(|&&g| g == 0).count() as u32;
        let k = key.word.len() as u32 - l;
        let factor = &slot1(l) * &slot2(k);
        let deg = l + k;
        if deg <= trunc {
            out.set_coeff(deg, &out.coeff(deg) + &(c * &factor));
        }
    }
    out
}

/// `x^n` as a braided polynomial.
fn x_pow(n: u32, trunc: u32) -> BraidedPoly {
    let mut p = PowerSeries::zero(QMode::ExactSymbolic, trunc);
    p.set_coeff(n, ScalarQ::one());
    p
}

#[derive(Clone, Debug, Default)]
pub struct HopfReport {
    pub coassociativity: u32,
    pub counit_laws: u32,
    pub antipode_laws: u32,
    pub antipode_recurrence: u32,
    pub braided_compatibility: u32,
    pub homomorphism: u32,
}

impl HopfReport {
    pub fn all_pass(&self) -> bool {
        self.coassociativity == 0
            && self.counit_laws == 0
            && self.antipode_laws == 0
            && self.antipode_recurrence == 0
            && self.braided_compatibility == 0
            && self.homomorphism == 0
    }
}

/// Coassociativity on the basis, checked inside the triple braided tensor
/// power: both double coproducts of `x^n` expand into
/// `s1^a s2^b s3^c` with multinomial q-binomial coefficients.
pub fn check_coassociativity(n_max: u32) -> Result<u32> {
    let alg3 = qline3();
    let mut failures = 0;
    for n in 0..=n_max {
        let trunc = n;
        let mut lhs = NCElement::zero(&alg3, trunc);
        let mut rhs = NCElement::zero(&alg3, trunc);
        for k in 0..=n {
            let outer = qbinomial(n, k)?;
            // (Delta ten id): expand the first slot of x^(n-k) ten x^k
            for j in 0..=n - k {
                let c = &outer * &qbinomial(n - k, j)?;
                let names: Vec<&str> = std::iter::repeat("s1")
                    .take((n - k - j) as usize)
                    .chain(std::iter::repeat("s2").take(j as usize))
                    .chain(std::iter::repeat("s3").take(k as usize))
                    .collect();
                lhs = lhs.add(&crate::ncalg::normal_order(&alg3, &names, trunc)?.scale(&c))?;
            }
            // (id ten Delta): expand the second slot
            for j in 0..=k {
                let c = &outer * &qbinomial(k, j)?;
                let names: Vec<&str> = std::iter::repeat("s1")
                    .take((n - k) as usize)
                    .chain(std::iter::repeat("s2").take((k - j) as usize))
                    .chain(std::iter::repeat("s3").take(j as usize))
                    .collect();
                rhs = rhs.add(&crate::ncalg::normal_order(&alg3, &names, trunc)?.scale(&c))?;
            }
        }
        if !lhs.sub(&rhs)?.is_zero() {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Counit laws `(eps ten id) Delta = id = (id ten eps) Delta` on the basis.
pub fn check_counit_laws(n_max: u32) -> Result<u32> {
    let mut failures = 0;
    for n in 0..=n_max {
        let d = coproduct(&x_pow(n, n), n)?;
        let left = merge_slots(
            &d,
            |l| if l == 0 { ScalarQ::one() } else { ScalarQ::zero() },
            |_| ScalarQ::one(),
            n,
        );
        let right = merge_slots(
            &d,
            |_| ScalarQ::one(),
            |k| if k == 0 { ScalarQ::one() } else { ScalarQ::zero() },
            n,
        );
        let expect = x_pow(n, n);
        if !left.sub(&expect).is_zero() || !right.sub(&expect).is_zero() {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Both antipode laws `m (S ten id) Delta = eps(.) 1 = m (id ten S) Delta`
/// and the defining recurrence
/// `sum_k [n,k]_q x^(n-k) S(x^k) = delta_(n,0)`, whose left side collapses
/// to `(1; q)_n x^n`.
pub fn check_antipode_laws(n_max: u32) -> Result<(u32, u32)> {
    let mut law_failures = 0;
    let mut rec_failures = 0;
    let one_minus_one = ScalarQ::one() - ScalarQ::one();
    for n in 0..=n_max {
        let d = coproduct(&x_pow(n, n), n)?;
        let left = merge_slots(&d, antipode_scalar, |_| ScalarQ::one(), n);
        let right = merge_slots(&d, |_| ScalarQ::one(), antipode_scalar, n);
        let expect = if n == 0 {
            PowerSeries::polynomial(QMode::ExactSymbolic, vec![ScalarQ::one()])
        } else {
            PowerSeries::zero(QMode::ExactSymbolic, n)
        };
        if !left.sub(&expect).is_zero() || !right.sub(&expect).is_zero() {
            law_failures += 1;
        }

        // recurrence: sum_k [n,k] x^(n-k) S(x^k) = (1;q)_n x^n
        let mut acc = ScalarQ::zero();
        for k in 0..=n {
            acc = &acc + &(&qbinomial(n, k)? * &antipode_scalar(k));
        }
        let closed = crate::scalar::qshifted_factorial(&ScalarQ::one(), &ScalarQ::q(), n);
        let expect_c = if n == 0 { ScalarQ::one() } else { &one_minus_one * &acc };
        let _ = expect_c;
        if !(&acc - &closed).is_zero() || (n > 0 && !acc.is_zero()) {
            rec_failures += 1;
        }
    }
    Ok((law_failures, rec_failures))
}

/// Braided compatibility: `S(x^(m+n)) = q^(mn) S(x^n) S(x^m)` (the
/// `S . m = m . (S ten S) . Psi` axiom on monomials) and
/// `Delta . S = (S ten S) . Psi . Delta` on the basis.
pub fn check_braided_compatibility(n_max: u32) -> Result<u32> {
    let mut failures = 0;
    for m in 0..=n_max {
        for n in 0..=n_max.saturating_sub(m) {
            let lhs = antipode_scalar(m + n);
            let rhs = &(&ScalarQ::qpow((m as i64) * (n as i64)) * &antipode_scalar(n))
                * &antipode_scalar(m);
            if !(&lhs - &rhs).is_zero() {
                failures += 1;
            }
        }
    }
    for n in 0..=n_max {
        // Delta(S(x^n))
        let lhs = coproduct(&antipode(&x_pow(n, n)), n)?;
        // (S ten S) Psi Delta(x^n)
        let braided = braiding(&coproduct(&x_pow(n, n), n)?)?;
        let mut rhs = NCElement::zero(&braided.algebra, n);
        for (key, c) in braided.terms() {
            let l = key.word.iter().filter(|&&g| g == 0).count() as u32;
            let k = key.word.len() as u32 - l;
            let factor = &antipode_scalar(l) * &antipode_scalar(k);
            rhs = rhs.add(&tensor_monomial(l, k, n, c * &factor)?)?;
        }
        if !lhs.sub(&rhs)?.is_zero() {
            failures += 1;
        }
    }
    Ok(failures)
}

/// `Delta` is an algebra map for the braided product:
/// `Delta(x^a x^b) = Delta(x^a) Delta(x^b)` for `a + b <= n_max`.
pub fn check_homomorphism(n_max: u32) -> Result<u32> {
    let mut failures = 0;
    for a in 0..=n_max {
        for b in 0..=n_max - a {
            let n = a + b;
            let lhs = coproduct(&x_pow(n, n), n)?;
            let rhs = braided_tensor_mul(
                &coproduct(&x_pow(a, n), n)?,
                &coproduct(&x_pow(b, n), n)?,
            )?;
            if !lhs.sub(&rhs)?.is_zero() {
                failures += 1;
            }
        }
    }
    Ok(failures)
}

/// The full axiom battery up to basis degree `n_max`.
pub fn hopf_axiom_check(n_max: u32) -> Result<HopfReport> {
    let (antipode_laws, antipode_recurrence) = check_antipode_laws(n_max)?;
    Ok(HopfReport {
        coassociativity: check_coassociativity(n_max)?,
        counit_laws: check_counit_laws(n_max)?,
        antipode_laws,
        antipode_recurrence,
        braided_compatibility: check_braided_compatibility(n_max)?,
        homomorphism: check_homomorphism(n_max)?,
    })
}

/// Hopf operations on the q-exponential: `Delta(e_q) = e_q ten e_q`,
/// `eps(e_q) = 1`, `S(e_q) = E_q(-x)`, and `S(e_q) e_q = 1`, all truncated.
pub fn check_exponential_hopf(trunc: u32) -> Result<u32> {
    let mode = QMode::ExactSymbolic;
    let alg = qplane();
    let e = series_of(&NamedSeries::Eq, &mode, trunc);
    let mut failures = 0;

    let d = coproduct(&e, trunc)?;
    let ey = compose_series(&e, &NCElement::generator(&alg, trunc, "y")?)?;
    let ex = compose_series(&e, &NCElement::generator(&alg, trunc, "x")?)?;
    if !d.sub(&nc_mul(&ey, &ex)?)?.is_zero() {
        failures += 1;
    }

    if !counit(&e).is_one() {
        failures += 1;
    }

    let s = antipode(&e);
    let big_e_neg = crate::series::bigeq_series_base(&mode, trunc, 1)
        .compose_monomial(&-mode.one(), 1, trunc);
    if !s.sub(&big_e_neg).is_zero() {
        failures += 1;
    }

    let prod = s.mul(&e);
    let one = PowerSeries::polynomial(mode, vec![ScalarQ::one()]);
    if !prod.sub(&one.truncated(trunc)).is_zero() {
        failures += 1;
    }
    Ok(failures)
}

/// Coproduct of the q-Hermite polynomials:
/// `Delta(h_n) = sum_k [n,k]_q x^(n-k) ten h_k(x)`, and applying
/// `m (S ten id)` collapses it to the constant `h_n(0)`.
pub fn hermite_coproduct_check(n_max: u32) -> Result<u32> {
    let mode = QMode::ExactSymbolic;
    let alg = qplane();
    let mut failures = 0;
    for n in 0..=n_max {
        let trunc = n;
        let h_n = hermite(HermiteFamily::I, n, &mode);
        let lhs = coproduct(&h_n.poly, trunc)?;
        let x = NCElement::generator(&alg, trunc, "x")?;
        let mut rhs = NCElement::zero(&alg, trunc);
        for k in 0..=n {
            let h_k = hermite(HermiteFamily::I, k, &mode);
            let y_pow = tensor_monomial(n - k, 0, trunc, qbinomial(n, k)?)?;
            rhs = rhs.add(&nc_mul(&y_pow, &compose_series(&h_k.poly, &x)?)?)?;
        }
        if !lhs.sub(&rhs)?.is_zero() {
            failures += 1;
            continue;
        }
        // m (S ten id) Delta(h_n) = h_n(0) 1
        let folded = merge_slots(&lhs, antipode_scalar, |_| ScalarQ::one(), trunc);
        let expect = PowerSeries::polynomial(mode.clone(), vec![h_n.at_zero()]);
        if !folded.sub(&expect.truncated(trunc)).is_zero() {
            failures += 1;
        }
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// covariance of the line integral and the Fourier kernel (numeric)
// ---------------------------------------------------------------------------

/// Samples of a function and its iterated backward q-derivatives on the
/// two-sided lattice. Inner points (|t| below a threshold) are evaluated
/// through the function's power series, where iterated differencing is
/// exact in the coefficients; outer points difference the samples directly.
/// This avoids the catastrophic cancellation of nested finite differences
/// at tiny lattice points.
struct DerivativeTable {
    gamma: f64,
    q: f64,
    k_min: i32,
    /// levels[d][sign][j] = (D_q^d f)(sign * gamma q^(k_min + j))
    levels: Vec<[Vec<Complex64>; 2]>,
}

impl DerivativeTable {
    fn build(
        f: &dyn Fn(f64) -> Complex64,
        f_series: &PowerSeries,
        q: f64,
        gamma: f64,
        k_min: i32,
        k_max: i32,
        depth: u32,
    ) -> DerivativeTable {
        let width = (k_max - k_min + 1) as usize;
        let series_threshold = 0.71;
        // series derivatives, exact in coefficients
        let mut series_levels = Vec::with_capacity(depth as usize + 1);
        series_levels.push(f_series.clone());
        for _ in 0..depth {
            series_levels.push(qderiv(series_levels.last().unwrap(), QDirection::Backward));
        }
        let mut levels: Vec<[Vec<Complex64>; 2]> = Vec::with_capacity(depth as usize + 1);
        let base: [Vec<Complex64>; 2] = [
            (0..width)
                .map(|j| f(gamma * q.powi(k_min + j as i32)))
                .collect(),
            (0..width)
                .map(|j| f(-gamma * q.powi(k_min + j as i32)))
                .collect(),
        ];
        levels.push(base);
        for d in 1..=depth as usize {
            let prev = &levels[d - 1];
            let mut next = [vec![Complex64::default(); width], vec![
                Complex64::default();
                width
            ]];
            for (s, sign) in [(0usize, 1.0f64), (1, -1.0)] {
                for j in 0..width {
                    let t = sign * gamma * q.powi(k_min + j as i32);
                    if t.abs() <= series_threshold {
                        next[s][j] =
                            series_levels[d].eval_numeric(Complex64::new(t, 0.0), q);
                    } else if j + 1 < width {
                        next[s][j] = (prev[s][j] - prev[s][j + 1]) / ((1.0 - q) * t);
                    } else {
                        next[s][j] = Complex64::default();
                    }
                }
            }
            levels.push(next);
        }
        DerivativeTable {
            gamma,
            q,
            k_min,
            levels,
        }
    }

    /// `(1-q) sum_j (K(t_j) D^d f(t_j) + K(-t_j) D^d f(-t_j)) t_j` over the
    /// stored window.
    fn integrate(&self, d: usize, kernel: &dyn Fn(f64) -> Complex64) -> Complex64 {
        let level = &self.levels[d];
        let mut acc = Complex64::default();
        for j in (0..level[0].len()).rev() {
            let t = self.gamma * self.q.powi(self.k_min + j as i32);
            acc += (kernel(t) * level[0][j] + kernel(-t) * level[1][j]) * t;
        }
        acc * (1.0 - self.q)
    }
}

#[derive(Clone, Debug)]
pub struct CovarianceReport {
    /// residuals of the translation-invariance functional (delegated check)
    pub invariance_max: f64,
    /// max deviation of the kernel covariance on the lattice points
    pub fourier_covariance_max: f64,
    /// max coefficient-wise deviation in the integration-by-parts family
    pub parts_max: f64,
}

/// Monomial-times-Gaussian source `x^m g_q(x)` with its numeric series.
fn gaussian_source(m: u32, q: f64, trunc: u32) -> (impl Fn(f64) -> Complex64, PowerSeries) {
    let mode = QMode::NumericAt(q);
    let g_series = series_of(&NamedSeries::GaussG, &mode, trunc);
    let mut mono = PowerSeries::zero(mode, trunc);
    mono.set_coeff(m, ScalarQ::real(1.0));
    let series = mono.mul(&g_series);
    let f = move |x: f64| {
        Complex64::new(x, 0.0).powi(m as i32) * gauss_g(Complex64::new(x, 0.0), q, 1e-16).unwrap()
    };
    (f, series)
}

/// Covariance of the Fourier kernel with the coproduct, evaluated in the
/// dilation representation on lattice points `x = gamma q^j`:
/// the braided expansion
/// `sum_k (1-q)^k/(q;q)_k x^k int e_q(-i q^k t y) (D_q^k f)(t) d_q t`
/// must equal `E_q(i x y) int e_q(-i t y) f(t) d_q t`.
pub fn fourier_covariance_check(
    m: u32,
    y: f64,
    q: f64,
    gamma: f64,
    lattice_js: &[i32],
    _cfg: &JacksonConfig,
) -> Result<f64> {
    let depth = 28u32;
    let (f, f_series) = gaussian_source(m, q, 200);
    let table = DerivativeTable::build(&f, &f_series, q, gamma, -20, 70, depth);
    let i = Complex64::new(0.0, 1.0);
    let tol = 1e-16;
    // I_k with the dilated kernel
    let mut ik = Vec::with_capacity(depth as usize + 1);
    for k in 0..=depth as usize {
        let qk = q.powi(k as i32);
        let kernel = move |t: f64| eq_prod(-i * qk * t * y, q, tol).expect("imaginary argument");
        ik.push(table.integrate(k, &kernel));
    }
    let base_kernel = move |t: f64| eq_prod(-i * t * y, q, tol).expect("imaginary argument");
    let base = table.integrate(0, &base_kernel);

    let mut max_dev: f64 = 0.0;
    for &j in lattice_js {
        let x = gamma * q.powi(j);
        // left: truncated k-sum
        let mut lhs = Complex64::default();
        let mut ck = 1.0f64;
        for (k, ik_val) in ik.iter().enumerate() {
            if k > 0 {
                ck *= (1.0 - q) / (1.0 - q.powi(k as i32)) * x;
            }
            let term = ik_val * ck;
            lhs += term;
            if k > 4 && term.norm() < 1e-14 {
                break;
            }
        }
        let rhs = crate::series::bigeq_prod(i * x * y, q, tol)? * base;
        let dev = (lhs - rhs).norm() / 1.0f64.max(rhs.norm());
        max_dev = max_dev.max(dev);
    }
    Ok(max_dev)
}

/// The integration-by-parts family behind the convolution-style covariance:
/// coefficientwise,
/// `int g(q^k t) (D_q^k f)(t) d_q t = (-1)^k q^(k(k-1)/2) int (D_q^k g)(t) f(t) d_q t`
/// for `k <= k_max`, with `g = g_q` and `f = x^m g_q`.
pub fn parts_family_check(
    m: u32,
    q: f64,
    gamma: f64,
    k_max: u32,
    _cfg: &JacksonConfig,
) -> Result<f64> {
    let (f, f_series) = gaussian_source(m, q, 200);
    let (g, g_series) = gaussian_source(0, q, 200);
    let tf = DerivativeTable::build(&f, &f_series, q, gamma, -20, 70, k_max);
    let tg = DerivativeTable::build(&g, &g_series, q, gamma, -20, 70, k_max);
    let mut max_dev: f64 = 0.0;
    for k in 0..=k_max {
        let qk = q.powi(k as i32);
        let lhs = tf.integrate(k as usize, &move |t: f64| {
            gauss_g(Complex64::new(qk * t, 0.0), q, 1e-16).unwrap()
        });
        // right side: integrate (D^k g)(t) f(t): reuse the g-table with f as kernel
        let m_pow = m as i32;
        let rhs_int = tg.integrate(k as usize, &move |t: f64| {
            Complex64::new(t, 0.0).powi(m_pow)
                * gauss_g(Complex64::new(t, 0.0), q, 1e-16).unwrap()
        });
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * q.powi((k as i32) * (k as i32 - 1) / 2) * rhs_int;
        let dev = (lhs - rhs).norm() / 1.0f64.max(rhs.norm());
        max_dev = max_dev.max(dev);
    }
    Ok(max_dev)
}

/// Bundles the three numeric covariance statements.
pub fn integral_covariance_check(q: f64, cfg: &JacksonConfig) -> Result<CovarianceReport> {
    // (a) translation invariance of the line functional, delegated
    let inv = crate::jackson::translation_invariance_infinite(
        crate::jackson::WeightKind::GaussG,
        2,
        1.0,
        q,
        4,
        cfg,
    )?;
    // (b) kernel covariance on lattice points
    let fourier = fourier_covariance_check(2, 0.25, q, 1.0, &[0, 1, 2, 3], cfg)?;
    // (c) integration-by-parts family
    let parts = parts_family_check(1, q, 1.0, 8, cfg)?;
    Ok(CovarianceReport {
        invariance_max: inv.max_abs,
        fourier_covariance_max: fourier,
        parts_max: parts,
    })
}

/// Associativity of the n-fold braided product rule on the triple tensor
/// power, for exponents up to `e_max`.
pub fn check_triple_associativity(e_max: u32) -> Result<u32> {
    let alg: Arc<crate::ncalg::AlgebraSpec> = qline3();
    let mut failures = 0;
    let trunc = 6 * e_max;
    let g: Vec<NCElement> = (1..=3)
        .map(|i| NCElement::generator(&alg, trunc, &format!("s{i}")).unwrap())
        .collect();
    for a in 0..=e_max {
        for b in 0..=e_max {
            let u = nc_mul(&crate::ncalg::nc_pow(&g[0], a)?, &crate::ncalg::nc_pow(&g[1], b)?)?;
            let v = nc_mul(&crate::ncalg::nc_pow(&g[1], b)?, &crate::ncalg::nc_pow(&g[2], a)?)?;
            let w = nc_mul(&crate::ncalg::nc_pow(&g[2], a)?, &crate::ncalg::nc_pow(&g[0], b)?)?;
            let left = nc_mul(&nc_mul(&u, &v)?, &w)?;
            let right = nc_mul(&u, &nc_mul(&v, &w)?)?;
            if !left.sub(&right)?.is_zero() {
                failures += 1;
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braiding_on_monomials() {
        // Psi(x ten 1) = 1 ten x? no: Psi(x^1 ten x^0) = q^0 x^0 ten x^1
        let a = tensor_monomial(1, 0, 4, ScalarQ::one()).unwrap();
        let b = braiding(&a).unwrap();
        let expect = tensor_monomial(0, 1, 4, ScalarQ::one()).unwrap();
        assert!(b.sub(&expect).unwrap().is_zero());
        // Psi(x ten x) = q x ten x
        let c = tensor_monomial(1, 1, 4, ScalarQ::one()).unwrap();
        let d = braiding(&c).unwrap();
        assert!(d.sub(&c.scale(&ScalarQ::q())).unwrap().is_zero());
        // Psi^2(x^k ten x^l) = q^(2kl) x^k ten x^l
        let e = tensor_monomial(2, 3, 8, ScalarQ::one()).unwrap();
        let twice = braiding(&braiding(&e).unwrap()).unwrap();
        assert!(twice.sub(&e.scale(&ScalarQ::qpow(12))).unwrap().is_zero());
    }

    #[test]
    fn braided_product_rule() {
        // (1 ten x)(x ten 1) = q (x ten 1)(1 ten x)
        let a = tensor_monomial(0, 1, 4, ScalarQ::one()).unwrap();
        let b = tensor_monomial(1, 0, 4, ScalarQ::one()).unwrap();
        let ab = braided_tensor_mul(&a, &b).unwrap();
        let ba = braided_tensor_mul(&b, &a).unwrap();
        assert!(ab.sub(&ba.scale(&ScalarQ::q())).unwrap().is_zero());
        // (x^k1 ten x^k2)(x^l1 ten x^l2) = q^(k2 l1) x^(k1+l1) ten x^(k2+l2)
        let u = tensor_monomial(2, 1, 8, ScalarQ::one()).unwrap();
        let v = tensor_monomial(1, 2, 8, ScalarQ::one()).unwrap();
        let uv = braided_tensor_mul(&u, &v).unwrap();
        let expect = tensor_monomial(3, 3, 8, ScalarQ::q()).unwrap();
        assert!(uv.sub(&expect).unwrap().is_zero());
    }

    #[test]
    fn coproduct_of_x_and_square() {
        let d1 = coproduct(&x_pow(1, 2), 2).unwrap();
        let expect = tensor_monomial(1, 0, 2, ScalarQ::one())
            .unwrap()
            .add(&tensor_monomial(0, 1, 2, ScalarQ::one()).unwrap())
            .unwrap();
        assert!(d1.sub(&expect).unwrap().is_zero());
        // Delta(x^2) = x^2 ten 1 + (1+q) x ten x + 1 ten x^2
        let d2 = coproduct(&x_pow(2, 2), 2).unwrap();
        let expect = tensor_monomial(2, 0, 2, ScalarQ::one())
            .unwrap()
            .add(&tensor_monomial(1, 1, 2, ScalarQ::one() + ScalarQ::q()).unwrap())
            .unwrap()
            .add(&tensor_monomial(0, 2, 2, ScalarQ::one()).unwrap())
            .unwrap();
        assert!(d2.sub(&expect).unwrap().is_zero());
    }

    #[test]
    fn counit_and_antipode_values() {
        assert!(counit(&x_pow(0, 3)).is_one());
        assert!(counit(&x_pow(5, 5)).is_zero());
        let mut f = PowerSeries::zero(QMode::ExactSymbolic, 3);
        f.set_coeff(0, ScalarQ::int(3));
        f.set_coeff(1, ScalarQ::int(2));
        assert_eq!(counit(&f), ScalarQ::int(3));
        // S(x) = -x, S(x^3) = -q^3 x^3
        let s = antipode(&x_pow(1, 3));
        assert_eq!(s.coeff(1), -ScalarQ::one());
        let s3 = antipode(&x_pow(3, 3));
        assert_eq!(s3.coeff(3), -ScalarQ::qpow(3));
    }

    #[test]
    fn axiom_battery_passes() {
        let r = hopf_axiom_check(8).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn exponential_hopf_structure() {
        assert_eq!(check_exponential_hopf(12).unwrap(), 0);
    }

    #[test]
    fn hermite_coproduct() {
        assert_eq!(hermite_coproduct_check(6).unwrap(), 0);
    }

    #[test]
    fn triple_associativity() {
        assert_eq!(check_triple_associativity(6).unwrap(), 0);
    }

    #[test]
    fn counit_respects_antipode() {
        // eps(S(f)) = eps(f) on the basis, and S(1) = 1
        for n in 0..=8u32 {
            let s = antipode(&x_pow(n, n));
            assert_eq!(counit(&s), counit(&x_pow(n, n)));
        }
        let one = PowerSeries::polynomial(QMode::ExactSymbolic, vec![ScalarQ::one()]);
        assert!(antipode(&one).sub(&one).is_zero());
    }

    #[test]
    fn covariance_statements_numeric() {
        let cfg = JacksonConfig::default();
        let r = integral_covariance_check(0.5, &cfg).unwrap();
        assert!(r.invariance_max < 1e-10, "invariance {}", r.invariance_max);
        assert!(
            r.fourier_covariance_max < 1e-8,
            "fourier {}",
            r.fourier_covariance_max
        );
        assert!(r.parts_max < 1e-8, "parts {}", r.parts_max);
    }
}
