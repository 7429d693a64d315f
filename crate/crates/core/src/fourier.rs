//! The q-Fourier transform pair on q-lattice samples: forward transform over
//! `[-1, 1]`, inverse transform over the two-sided lattice, roundtrips on the
//! polynomial-times-Gaussian classes, and the derivative/multiplication
//! exchange relations.

use crate::error::{Error, Result};
use crate::hermite::{
    bq_constant, cq_constant, hermite, weight_i, weight_ii, HermiteFamily,
};
use crate::jackson::{jackson_interval, jackson_realline, JacksonConfig};
use crate::parallel::{map_with, ExecMode};
use crate::scalar::QMode;
use crate::series::{bigeq_prod, eq_prod, gauss_g};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct TransformConfig {
    pub q: f64,
    pub gamma: f64,
    pub cfg: JacksonConfig,
}

impl TransformConfig {
    pub fn new(q: f64, gamma: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&q) || q == 0.0 {
            return Err(Error::Domain(format!("q = {q} outside (0,1)")));
        }
        if gamma <= 0.0 {
            return Err(Error::Domain(format!("gamma = {gamma} must be positive")));
        }
        Ok(TransformConfig {
            q,
            gamma,
            cfg: JacksonConfig::default(),
        })
    }
}

/// `(F_q f)(y) = (1/b_q) int_-1^1 e_q(-ixy) f(x) d_q x`.
pub fn fq_transform_point(
    f: &(dyn Fn(f64) -> Complex64 + Sync),
    y: Complex64,
    tc: &TransformConfig,
) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let q = tc.q;
    let tol = tc.cfg.tail_tol;
    let integral = jackson_try(
        |x| Ok(eq_prod(-i * x * y, q, tol)? * f(x)),
        |g| jackson_interval(g, -1.0, 1.0, q, &tc.cfg),
    )?;
    Ok(integral / bq_constant(q, tol)?)
}

/// `(F~_{q,gamma} g)(x) = (1/c_q(gamma)) int_line E_q(iqxy) g(y) d_q y`.
pub fn ftilde_transform_point(
    g: &(dyn Fn(f64) -> Complex64 + Sync),
    x: Complex64,
    tc: &TransformConfig,
) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let q = tc.q;
    let tol = tc.cfg.tail_tol;
    let integral = jackson_try(
        |y| Ok(bigeq_prod(i * q * x * y, q, tol)? * g(y)),
        |h| jackson_realline(h, tc.gamma, q, &tc.cfg),
    )?;
    Ok(integral / cq_constant(q, tc.gamma, tol)?)
}

/// Adapts a fallible integrand to the quadrature interface, carrying kernel
/// errors (e.g. pole hits) out of the sum.
fn jackson_try(
    f: impl Fn(f64) -> Result<Complex64>,
    quad: impl Fn(&dyn Fn(f64) -> Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    use std::cell::Cell;
    let failed: Cell<Option<Error>> = Cell::new(None);
    let wrapped = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failed.set(Some(e));
            Complex64::new(0.0, 0.0)
        }
    };
    let out = quad(&wrapped)?;
    match failed.take() {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Forward transform on a sample set, parallel over the samples.
pub fn fq_transform(
    f: &(dyn Fn(f64) -> Complex64 + Sync),
    ys: &[Complex64],
    tc: &TransformConfig,
    mode: ExecMode,
) -> Vec<Result<Complex64>> {
    map_with(mode, ys, |&y| fq_transform_point(f, y, tc))
}

pub fn ftilde_transform(
    g: &(dyn Fn(f64) -> Complex64 + Sync),
    xs: &[Complex64],
    tc: &TransformConfig,
    mode: ExecMode,
) -> Vec<Result<Complex64>> {
    map_with(mode, xs, |&x| ftilde_transform_point(g, x, tc))
}

/// Forward transform of pre-sampled lattice values on `[-1, 1]`
/// (`{±q^k}, k >= 0`); indices beyond the grid report `MissingSample`.
pub fn fq_transform_grid(
    g: &crate::jackson::QGridFunction,
    ys: &[Complex64],
    tc: &TransformConfig,
    mode: ExecMode,
) -> Vec<Result<Complex64>> {
    map_with(mode, ys, |&y| {
        let i = Complex64::new(0.0, 1.0);
        let q = tc.q;
        let tol = tc.cfg.tail_tol;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut peak = 0.0f64;
        let mut k = 0i32;
        loop {
            let x = q.powi(k);
            let term = (eq_prod(-i * x * y, q, tol)? * g.get(1, k)?
                + eq_prod(i * x * y, q, tol)? * g.get(-1, k)?)
                * x;
            acc += term;
            peak = peak.max(term.norm());
            if term.norm() < tc.cfg.tail_tol * peak.max(f64::MIN_POSITIVE) && k > 3 {
                break;
            }
            k += 1;
            if k as u32 > tc.cfg.max_window {
                return Err(Error::TailNotConverged);
            }
        }
        Ok(acc * (1.0 - q) / bq_constant(q, tol)?)
    })
}

/// Inverse transform of pre-sampled values on the two-sided lattice.
pub fn ftilde_transform_grid(
    g: &crate::jackson::QGridFunction,
    xs: &[Complex64],
    tc: &TransformConfig,
    mode: ExecMode,
) -> Vec<Result<Complex64>> {
    map_with(mode, xs, |&x| {
        let i = Complex64::new(0.0, 1.0);
        let q = tc.q;
        let tol = tc.cfg.tail_tol;
        let mut keys: Vec<i32> = g.keys().filter(|&(s, _)| s == 1).map(|(_, k)| k).collect();
        keys.sort_unstable();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut peak = 0.0f64;
        let mut settled = false;
        for &k in keys.iter().rev() {
            let t = g.gamma * q.powi(k);
            let term = (bigeq_prod(i * q * x * t, q, tol)? * g.get(1, k)?
                + bigeq_prod(-i * q * x * t, q, tol)? * g.get(-1, k)?)
                * t;
            acc += term;
            peak = peak.max(term.norm());
            settled = term.norm() < tc.cfg.tail_tol * peak.max(f64::MIN_POSITIVE);
        }
        if !settled {
            return Err(Error::TailNotConverged);
        }
        Ok(acc * (1.0 - q) / cq_constant(q, g.gamma, tol)?)
    })
}

/// One row of the machine-readable comparison tables.
#[derive(Clone, Debug)]
pub struct SampleRow {
    pub point: Complex64,
    pub transform: Complex64,
    pub closed_form: Complex64,
    pub deviation: f64,
}

/// The closed transform images of the Gaussian-weight classes:
/// `h_n(x) W_I(x) <-> q^(n(n-1)/2) i^-n y^n e_{q^2}(-y^2)` and
/// `x^n W_I(x) <-> q^(n(n-1)/2) i^-n h~_n(y) e_{q^2}(-y^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    HermiteWeight,
    MonomialWeight,
}

fn forward_closed(class: PairClass, n: u32, y: Complex64, q: f64, tol: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let phase = q.powi((n as i32) * (n as i32 - 1) / 2) * i.powi(-(n as i32));
    let shape = match class {
        PairClass::HermiteWeight => y.powi(n as i32),
        PairClass::MonomialWeight => {
            let mode = QMode::NumericAt(q);
            let h = hermite(HermiteFamily::II, n, &mode);
            h.poly.eval_numeric(y, q)
        }
    };
    phase * shape * gauss_g(y, q, tol).expect("no poles on the real axis")
}

fn source_f(class: PairClass, n: u32, q: f64) -> impl Fn(f64) -> Complex64 + Sync {
    let mode = QMode::NumericAt(q);
    let h = hermite(HermiteFamily::I, n, &mode);
    move |x: f64| {
        let shape = match class {
            PairClass::HermiteWeight => h.eval_real(x, q),
            PairClass::MonomialWeight => x.powi(n as i32),
        };
        Complex64::new(shape * weight_i(x, q), 0.0)
    }
}

#[derive(Clone, Debug)]
pub struct ForwardReport {
    pub n: u32,
    pub class: PairClass,
    pub rows: Vec<SampleRow>,
    pub max_deviation: f64,
}

/// Forward map against the closed form on a sample set.
pub fn forward_check(
    class: PairClass,
    n: u32,
    ys: &[Complex64],
    tc: &TransformConfig,
    mode: ExecMode,
) -> Result<ForwardReport> {
    let f = source_f(class, n, tc.q);
    let tol = tc.cfg.tail_tol;
    let values = fq_transform(&f, ys, tc, mode);
    let mut rows = Vec::with_capacity(ys.len());
    let mut max_dev: f64 = 0.0;
    for (&y, value) in ys.iter().zip(values) {
        let transform = value?;
        let closed = forward_closed(class, n, y, tc.q, tol);
        let dev = (transform - closed).norm() / 1.0f64.max(closed.norm());
        max_dev = max_dev.max(dev);
        rows.push(SampleRow {
            point: y,
            transform,
            closed_form: closed,
            deviation: dev,
        });
    }
    Ok(ForwardReport {
        n,
        class,
        rows,
        max_deviation: max_dev,
    })
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub n: u32,
    pub class: PairClass,
    /// max relative deviation of the forward image from its closed form
    pub forward_dev: f64,
    /// max deviation of `F~(F f)` from `f` on the `[-1,1]` lattice
    pub roundtrip_dev: f64,
}

/// Maps `f` through the forward transform's closed image and back through
/// the inverse transform, comparing with `f` on the lattice points `±q^k`.
pub fn roundtrip_check(
    class: PairClass,
    n: u32,
    tc: &TransformConfig,
    mode: ExecMode,
) -> Result<RoundtripReport> {
    let q = tc.q;
    let tol = tc.cfg.tail_tol;
    // forward on a fixed sample set
    let ys: Vec<Complex64> = (0..20)
        .map(|j| Complex64::new(-1.9 + 0.2 * j as f64, 0.0))
        .collect();
    let forward = forward_check(class, n, &ys, tc, mode)?;

    // inverse applied to the closed forward image, evaluated on the lattice
    let g = move |y: f64| forward_closed(class, n, Complex64::new(y, 0.0), q, tol);
    let f = source_f(class, n, q);
    let lattice: Vec<Complex64> = (0..12)
        .flat_map(|k| {
            let x = q.powi(k);
            [Complex64::new(x, 0.0), Complex64::new(-x, 0.0)]
        })
        .collect();
    let back = ftilde_transform(&g, &lattice, tc, mode);
    let mut max_dev: f64 = 0.0;
    for (&x, value) in lattice.iter().zip(back) {
        let recovered = value?;
        let expect = f(x.re);
        let dev = (recovered - expect).norm() / 1.0f64.max(expect.norm());
        max_dev = max_dev.max(dev);
    }
    Ok(RoundtripReport {
        n,
        class,
        forward_dev: forward.max_deviation,
        roundtrip_dev: max_dev,
    })
}

#[derive(Clone, Debug)]
pub struct ExchangeReport {
    pub first_max: f64,
    pub second_max: f64,
}

/// The exchange relations:
/// `(1-q) (F_q(D_q^+ f))(y) = i y (F_q f)(y)` for `f` vanishing at `±1/q`,
/// and `(1-q) (F~(D_q^- g))(x) = -i x (F~ g)(x)` for decaying `g`.
pub fn derivative_exchange_check(
    tc: &TransformConfig,
    samples: &[f64],
    mode: ExecMode,
) -> Result<ExchangeReport> {
    let q = tc.q;
    let i = Complex64::new(0.0, 1.0);
    let tol = tc.cfg.tail_tol;

    // first statement with f = E_{q^2}(-q^2 x^2) (family-I weight)
    let f = move |x: f64| Complex64::new(weight_i(x, q), 0.0);
    let edge = f(1.0 / q).norm().max(f(-1.0 / q).norm());
    if edge > 1e-12 {
        return Err(Error::HypothesisFailed(format!(
            "f(±1/q) = {edge} does not vanish"
        )));
    }
    let df = move |x: f64| (f(x / q) - f(x)) / ((1.0 - q) * x);
    let ys: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    let lhs = fq_transform(&df, &ys, tc, mode);
    let rhs = fq_transform(&f, &ys, tc, mode);
    let mut first_max: f64 = 0.0;
    for ((&y, l), r) in ys.iter().zip(lhs).zip(rhs) {
        let l = l? * (1.0 - q);
        let r = i * y * r?;
        first_max = first_max.max((l - r).norm() / 1.0f64.max(r.norm()));
    }

    // second statement with g = e_{q^2}(-y^2)
    let g = move |y: f64| Complex64::new(weight_ii(y, q), 0.0);
    // decay hypothesis: E_q(±ix gamma q^(-n+1)) g(±gamma q^(-n)) -> 0
    let xh = samples.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
    for n in [20, 25] {
        let yv = tc.gamma * q.powi(-n);
        let kernel = bigeq_prod(i * xh * yv * q, q, tol)?;
        let bound = (kernel * g(yv)).norm();
        if bound > 1e-10 {
            return Err(Error::HypothesisFailed(format!(
                "kernel-weighted tail {bound} at q^-{n} does not decay"
            )));
        }
    }
    let dg = move |y: f64| (g(y) - g(q * y)) / ((1.0 - q) * y);
    let xs = ys.clone();
    let lhs = ftilde_transform(&dg, &xs, tc, mode);
    let rhs = ftilde_transform(&g, &xs, tc, mode);
    let mut second_max: f64 = 0.0;
    for ((&x, l), r) in xs.iter().zip(lhs).zip(rhs) {
        let l = l? * (1.0 - q);
        let r = -i * x * r?;
        second_max = second_max.max((l - r).norm() / 1.0f64.max(r.norm()));
    }
    Ok(ExchangeReport {
        first_max,
        second_max,
    })
}

/// Numeric form of the lowering relations on lattice samples:
/// `(1-q) D_q^+ (h_n W_I) + q^-n h_(n+1) W_I = 0` and the family-II analogue
/// with `D_q^-` and `q^n`.
pub fn lowering_numeric(n_max: u32, q: f64) -> (f64, f64) {
    let mode = QMode::NumericAt(q);
    let mut max_i: f64 = 0.0;
    let mut max_ii: f64 = 0.0;
    for n in 0..=n_max {
        let h = hermite(HermiteFamily::I, n, &mode);
        let h1 = hermite(HermiteFamily::I, n + 1, &mode);
        let f = |x: f64| h.eval_real(x, q) * weight_i(x, q);
        for k in 0..10 {
            for s in [1.0, -1.0] {
                let x = s * q.powi(k);
                let d = (f(x / q) - f(x)) / ((1.0 - q) * x);
                let resid = (1.0 - q) * d + q.powi(-(n as i32)) * h1.eval_real(x, q) * weight_i(x, q);
                max_i = max_i.max(resid.abs());
            }
        }
        let g = hermite(HermiteFamily::II, n, &mode);
        let g1 = hermite(HermiteFamily::II, n + 1, &mode);
        let w = |x: f64| g.eval_real(x, q) * weight_ii(x, q);
        for k in -4..8 {
            for s in [1.0, -1.0] {
                let x = s * q.powi(k);
                let d = (w(x) - w(q * x)) / ((1.0 - q) * x);
                let resid = (1.0 - q) * d + q.powi(n as i32) * g1.eval_real(x, q) * weight_ii(x, q);
                max_ii = max_ii.max(resid.abs());
            }
        }
    }
    (max_i, max_ii)
}

/// The pole guard on the forward kernel: `e_q(-ixy)` for real arguments
/// never hits a pole, but complex `y` on the imaginary axis can; the
/// transform refuses rather than returning a wrong value.
pub fn kernel_pole_guard_demo(tc: &TransformConfig) -> Result<Complex64> {
    // y = i q^{-1}: the kernel at x = 1 is e_q(q^{-1}), right on a pole
    let y = Complex64::new(0.0, 1.0 / tc.q);
    fq_transform_point(&|_x| Complex64::new(1.0, 0.0), y, tc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc() -> TransformConfig {
        TransformConfig::new(0.5, 1.0).unwrap()
    }

    #[test]
    fn gaussian_pair_at_n0() {
        // F_q(E_{q^2}(-q^2 x^2)) = e_{q^2}(-y^2)
        let tc = tc();
        let ys: Vec<Complex64> = (0..21)
            .map(|j| Complex64::new(-2.0 + 0.2 * j as f64, 0.0))
            .collect();
        let r = forward_check(PairClass::HermiteWeight, 0, &ys, &tc, ExecMode::Sequential)
            .unwrap();
        assert!(r.max_deviation < 1e-9, "dev = {}", r.max_deviation);
    }

    #[test]
    fn odd_source_vanishes_at_zero() {
        let tc = tc();
        let f = source_f(PairClass::HermiteWeight, 1, tc.q);
        let v = fq_transform_point(&f, Complex64::new(0.0, 0.0), &tc).unwrap();
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn hermite_forward_n2_value() {
        // at n = 2 the image is -q y^2 e_{q^2}(-y^2)
        let tc = tc();
        let y = Complex64::new(0.5, 0.0);
        let f = source_f(PairClass::HermiteWeight, 2, tc.q);
        let got = fq_transform_point(&f, y, &tc).unwrap();
        let expect = -tc.q * y * y * gauss_g(y, tc.q, 1e-15).unwrap();
        assert!((got - expect).norm() < 1e-10, "{got} vs {expect}");
    }

    #[test]
    fn roundtrips_recover_sources() {
        let tc = tc();
        for class in [PairClass::HermiteWeight, PairClass::MonomialWeight] {
            for n in 0..=3u32 {
                let r = roundtrip_check(class, n, &tc, ExecMode::Sequential).unwrap();
                assert!(
                    r.forward_dev < 1e-9 && r.roundtrip_dev < 1e-8,
                    "{class:?} n={n}: {r:?}"
                );
            }
        }
    }

    #[test]
    fn exchange_relations_hold() {
        let tc = tc();
        let samples = [-1.5, -0.75, -0.25, 0.25, 0.5, 1.0, 1.5];
        let r = derivative_exchange_check(&tc, &samples, ExecMode::Sequential).unwrap();
        assert!(r.first_max < 1e-9, "first {}", r.first_max);
        assert!(r.second_max < 1e-9, "second {}", r.second_max);
    }

    #[test]
    fn lowering_consistency_on_lattice() {
        let (a, b) = lowering_numeric(4, 0.5);
        assert!(a < 1e-9 && b < 1e-9, "{a} {b}");
    }

    #[test]
    fn grid_transform_matches_closure_transform() {
        let tc = tc();
        let q = tc.q;
        let f = source_f(PairClass::HermiteWeight, 2, q);
        let grid = qcalc_core_grid(q, &f);
        let ys = [Complex64::new(0.5, 0.0), Complex64::new(-1.0, 0.0)];
        let from_grid = fq_transform_grid(&grid, &ys, &tc, ExecMode::Sequential);
        let from_fn = fq_transform(&f, &ys, &tc, ExecMode::Sequential);
        for (a, b) in from_grid.into_iter().zip(from_fn) {
            assert!((a.unwrap() - b.unwrap()).norm() < 1e-12);
        }
        // a too-small grid reports the missing sample
        let tiny = crate::jackson::QGridFunction::sample(1.0, q, 0..=2, |x| f(x));
        let r = fq_transform_grid(&tiny, &ys[..1], &tc, ExecMode::Sequential);
        assert!(matches!(r[0], Err(Error::MissingSample(_))));
    }

    fn qcalc_core_grid(
        q: f64,
        f: &(dyn Fn(f64) -> Complex64 + Sync),
    ) -> crate::jackson::QGridFunction {
        crate::jackson::QGridFunction::sample(1.0, q, 0..=80, f)
    }

    #[test]
    fn pole_guard_refuses() {
        let r = kernel_pole_guard_demo(&tc());
        assert!(matches!(r, Err(Error::PoleHit)));
    }

    #[test]
    fn transforms_are_linear() {
        let tc = tc();
        let q = tc.q;
        let f = move |x: f64| Complex64::new(weight_i(x, q), 0.0);
        let g = move |x: f64| Complex64::new(x * x * weight_i(x, q), 0.0);
        let combo = move |x: f64| 2.0 * f(x) - 3.0 * g(x);
        for y in [Complex64::new(0.5, 0.0), Complex64::new(-1.25, 0.0)] {
            let lhs = fq_transform_point(&combo, y, &tc).unwrap();
            let rhs = 2.0 * fq_transform_point(&f, y, &tc).unwrap()
                - 3.0 * fq_transform_point(&g, y, &tc).unwrap();
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn gamma_shift_leaves_inverse_unchanged() {
        let q = 0.5;
        let g = move |y: f64| forward_closed(PairClass::HermiteWeight, 2, Complex64::new(y, 0.0), q, 1e-15);
        let xs = [Complex64::new(0.5, 0.0), Complex64::new(-0.25, 0.0)];
        let a = TransformConfig::new(q, 1.0).unwrap();
        let b = TransformConfig::new(q, 0.5).unwrap();
        for &x in &xs {
            let va = ftilde_transform_point(&g, x, &a).unwrap();
            let vb = ftilde_transform_point(&g, x, &b).unwrap();
            assert!((va - vb).norm() < 1e-10, "{va} vs {vb}");
        }
    }
}
