//! The coefficient field: exact rational functions in `v` (with `q = v^2`)
//! and complex floating-point numerics, plus the q-factorial primitives.

use crate::error::{Error, Result};
use crate::vpoly::VPoly;
use num_complex::Complex64;
pub use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

/// A reduced ratio of polynomials in `v`. Canonical form: the denominator is
/// primitive with positive leading coefficient (its rational content is folded
/// into the numerator) and shares no factor with the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: VPoly,
    den: VPoly,
}

impl RatFun {
    pub fn new(num: VPoly, den: VPoly) -> RatFun {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: VPoly::zero(),
                den: VPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        // move the denominator's rational content into the numerator
        let c = den.as_rational_content();
        if !c.is_one() {
            num = num.mul_rational(&c.recip());
            den = den.mul_rational(&c.recip());
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: VPoly) -> RatFun {
        RatFun {
            num: p,
            den: VPoly::one(),
        }
    }

    pub fn num(&self) -> &VPoly {
        &self.num
    }

    pub fn den(&self) -> &VPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g0 = self.den.gcd(&rhs.den);
        if g0.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            // coprime denominators: the sum is already reduced
            return RatFun::finish(num, den);
        }
        let b1 = self.den.div_exact(&g0).unwrap();
        let d1 = rhs.den.div_exact(&g0).unwrap();
        let t = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if t.is_zero() {
            return RatFun::from_poly(VPoly::zero());
        }
        let g1 = t.gcd(&g0);
        if g1.is_one() {
            RatFun::finish(t, self.den.mul(&d1))
        } else {
            let num = t.div_exact(&g1).unwrap();
            let den = self.den.div_exact(&g1).unwrap().mul(&d1);
            RatFun::finish(num, den)
        }
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::from_poly(VPoly::zero());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1).unwrap()
        };
        let d = if g1.is_one() {
            rhs.den.clone()
        } else {
            rhs.den.div_exact(&g1).unwrap()
        };
        let c = if g2.is_one() {
            rhs.num.clone()
        } else {
            rhs.num.div_exact(&g2).unwrap()
        };
        let b = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2).unwrap()
        };
        RatFun::finish(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::finish(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Renormalizes sign/content between an already-coprime pair.
    fn finish(mut num: VPoly, mut den: VPoly) -> RatFun {
        let c = den.as_rational_content();
        if !c.is_one() {
            num = num.mul_rational(&c.recip());
            den = den.mul_rational(&c.recip());
        }
        RatFun { num, den }
    }

    pub fn pow(&self, n: i64) -> Result<RatFun> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = RatFun::from_poly(VPoly::one());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Substitute `q -> 1/q` (that is, `v -> 1/v`).
    pub fn subst_q_inv(&self) -> RatFun {
        let (rn, dn) = self.num.subst_inv();
        let (rd, dd) = self.den.subst_inv();
        if dd >= dn {
            RatFun::new(rn.mul_vpow(dd - dn), rd)
        } else {
            RatFun::new(rn, rd.mul_vpow(dn - dd))
        }
    }

    /// Numeric value at `q`, evaluating polynomials at `v = sqrt(q)`.
    pub fn eval_at_q(&self, q: f64) -> Complex64 {
        let v = Complex64::new(q.sqrt(), 0.0);
        self.num.eval_complex(v) / self.den.eval_complex(v)
    }

    /// Exact rational value at rational `q`; requires all `v`-powers even.
    pub fn eval_at_q_rational(&self, q: &BigRational) -> Option<BigRational> {
        if !self.num.is_even_in_v() || !self.den.is_even_in_v() {
            return None;
        }
        // with only even powers present, p(v) at v^2 = q is p_even(q)
        let n = self.num.eval_even_at(q);
        let d = self.den.eval_even_at(q);
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // canonical form fixes the sign of the leading denominator
        // coefficient; rendering reads better when the lowest one is
        // positive instead
        let t = self.den.trailing_zeros();
        if self.den.coeff(t) < num_traits::Zero::zero() {
            write!(f, "({})/({})", self.num.neg(), self.den.neg())
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Which coefficient world a computation runs in.
#[derive(Clone, Debug, PartialEq)]
pub enum QMode {
    ExactSymbolic,
    NumericAt(f64),
}

impl QMode {
    pub fn numeric(q: f64) -> Result<QMode> {
        if q > 0.0 && q < 1.0 {
            Ok(QMode::NumericAt(q))
        } else {
            Err(Error::Domain(format!("q = {q} is outside (0,1)")))
        }
    }

    pub fn q(&self) -> ScalarQ {
        match self {
            QMode::ExactSymbolic => ScalarQ::q(),
            QMode::NumericAt(q) => ScalarQ::real(*q),
        }
    }

    pub fn one(&self) -> ScalarQ {
        match self {
            QMode::ExactSymbolic => ScalarQ::one(),
            QMode::NumericAt(_) => ScalarQ::real(1.0),
        }
    }

    pub fn zero(&self) -> ScalarQ {
        match self {
            QMode::ExactSymbolic => ScalarQ::zero(),
            QMode::NumericAt(_) => ScalarQ::real(0.0),
        }
    }

    pub fn int(&self, k: i64) -> ScalarQ {
        match self {
            QMode::ExactSymbolic => ScalarQ::int(k),
            QMode::NumericAt(_) => ScalarQ::real(k as f64),
        }
    }

    pub fn qpow(&self, k: i64) -> ScalarQ {
        match self {
            QMode::ExactSymbolic => ScalarQ::qpow(k),
            QMode::NumericAt(q) => ScalarQ::real(q.powi(k as i32)),
        }
    }
}

/// A coefficient: exact rational function of `q^(1/2)` or a complex number.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarQ {
    Exact(RatFun),
    Numeric(Complex64),
}

impl ScalarQ {
    pub fn zero() -> ScalarQ {
        ScalarQ::Exact(RatFun::from_poly(VPoly::zero()))
    }

    pub fn one() -> ScalarQ {
        ScalarQ::Exact(RatFun::from_poly(VPoly::one()))
    }

    pub fn int(k: i64) -> ScalarQ {
        ScalarQ::Exact(RatFun::from_poly(VPoly::constant(BigRational::from(
            num_bigint::BigInt::from(k),
        ))))
    }

    pub fn rational(n: i64, d: i64) -> ScalarQ {
        ScalarQ::Exact(RatFun::from_poly(VPoly::constant(BigRational::new(
            n.into(),
            d.into(),
        ))))
    }

    pub fn from_big_rational(r: BigRational) -> ScalarQ {
        ScalarQ::Exact(RatFun::from_poly(VPoly::constant(r)))
    }

    /// The base indeterminate `q`.
    pub fn q() -> ScalarQ {
        ScalarQ::qpow(1)
    }

    /// `v = q^(1/2)`.
    pub fn v() -> ScalarQ {
        ScalarQ::vpow(1)
    }

    pub fn qpow(k: i64) -> ScalarQ {
        ScalarQ::vpow(2 * k)
    }

    pub fn vpow(k: i64) -> ScalarQ {
        if k >= 0 {
            ScalarQ::Exact(RatFun::from_poly(VPoly::monomial(
                BigRational::one(),
                k as usize,
            )))
        } else {
            ScalarQ::Exact(RatFun::new(
                VPoly::one(),
                VPoly::monomial(BigRational::one(), (-k) as usize),
            ))
        }
    }

    pub fn real(x: f64) -> ScalarQ {
        ScalarQ::Numeric(Complex64::new(x, 0.0))
    }

    pub fn complex(z: Complex64) -> ScalarQ {
        ScalarQ::Numeric(z)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ScalarQ::Exact(r) => r.is_zero(),
            ScalarQ::Numeric(z) => z.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ScalarQ::Exact(r) => r.is_one(),
            ScalarQ::Numeric(z) => *z == Complex64::new(1.0, 0.0),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarQ::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&RatFun> {
        match self {
            ScalarQ::Exact(r) => Some(r),
            ScalarQ::Numeric(_) => None,
        }
    }

    pub fn as_numeric(&self) -> Option<Complex64> {
        match self {
            ScalarQ::Numeric(z) => Some(*z),
            ScalarQ::Exact(_) => None,
        }
    }

    /// Numeric value: identity on numerics, evaluation at `q` on exacts.
    pub fn value_at(&self, q: f64) -> Complex64 {
        match self {
            ScalarQ::Exact(r) => r.eval_at_q(q),
            ScalarQ::Numeric(z) => *z,
        }
    }

    pub fn checked_add(&self, rhs: &ScalarQ) -> Result<ScalarQ> {
        match (self, rhs) {
            (ScalarQ::Exact(a), ScalarQ::Exact(b)) => Ok(ScalarQ::Exact(a.add(b))),
            (ScalarQ::Numeric(a), ScalarQ::Numeric(b)) => Ok(ScalarQ::Numeric(a + b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_sub(&self, rhs: &ScalarQ) -> Result<ScalarQ> {
        match (self, rhs) {
            (ScalarQ::Exact(a), ScalarQ::Exact(b)) => Ok(ScalarQ::Exact(a.sub(b))),
            (ScalarQ::Numeric(a), ScalarQ::Numeric(b)) => Ok(ScalarQ::Numeric(a - b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_mul(&self, rhs: &ScalarQ) -> Result<ScalarQ> {
        match (self, rhs) {
            (ScalarQ::Exact(a), ScalarQ::Exact(b)) => Ok(ScalarQ::Exact(a.mul(b))),
            (ScalarQ::Numeric(a), ScalarQ::Numeric(b)) => Ok(ScalarQ::Numeric(a * b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_div(&self, rhs: &ScalarQ) -> Result<ScalarQ> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (ScalarQ::Exact(a), ScalarQ::Exact(b)) => Ok(ScalarQ::Exact(a.div(b)?)),
            (ScalarQ::Numeric(a), ScalarQ::Numeric(b)) => Ok(ScalarQ::Numeric(a / b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn inv(&self) -> Result<ScalarQ> {
        match self {
            ScalarQ::Exact(r) => Ok(ScalarQ::Exact(r.inv()?)),
            ScalarQ::Numeric(z) => {
                if z.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(ScalarQ::Numeric(z.inv()))
                }
            }
        }
    }

    pub fn pow(&self, n: i64) -> Result<ScalarQ> {
        match self {
            ScalarQ::Exact(r) => Ok(ScalarQ::Exact(r.pow(n)?)),
            ScalarQ::Numeric(z) => Ok(ScalarQ::Numeric(z.powi(n as i32))),
        }
    }

    /// Substitute `q -> 1/q`; exact mode only.
    pub fn subst_q_inv(&self) -> Result<ScalarQ> {
        match self {
            ScalarQ::Exact(r) => Ok(ScalarQ::Exact(r.subst_q_inv())),
            ScalarQ::Numeric(_) => Err(Error::ModeMismatch),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked scalar arithmetic with the mode and division preconditions.
pub fn scalar_arith(a: &ScalarQ, b: &ScalarQ, op: ArithOp) -> Result<ScalarQ> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &ScalarQ) -> ScalarQ {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl $trait for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$checked(&rhs).expect("scalar arithmetic")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        match self {
            ScalarQ::Exact(r) => ScalarQ::Exact(r.neg()),
            ScalarQ::Numeric(z) => ScalarQ::Numeric(-z),
        }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarQ::Exact(r) => write!(f, "{r}"),
            ScalarQ::Numeric(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{z}")
                }
            }
        }
    }
}

/// `(a; p)_k` — the shifted factorial with explicit base `p` (pass `q` for
/// the usual one, `q^2` for even-base products).
pub fn qshifted_factorial(a: &ScalarQ, base: &ScalarQ, k: u32) -> ScalarQ {
    let one = if a.is_exact() {
        ScalarQ::one()
    } else {
        ScalarQ::real(1.0)
    };
    let mut acc = one.clone();
    let mut pj = one.clone();
    for _ in 0..k {
        let factor = &one - &(&pj * a);
        acc = &acc * &factor;
        pj = &pj * base;
    }
    acc
}

static QQ_CACHE: OnceLock<RwLock<Vec<ScalarQ>>> = OnceLock::new();

/// `(q; q)_k` as an exact polynomial, cached.
pub fn qq_factorial(k: u32) -> ScalarQ {
    let cache = QQ_CACHE.get_or_init(|| RwLock::new(vec![ScalarQ::one()]));
    {
        let table = cache.read().unwrap();
        if let Some(v) = table.get(k as usize) {
            return v.clone();
        }
    }
    let mut table = cache.write().unwrap();
    while table.len() <= k as usize {
        let j = table.len() as i64;
        let factor = ScalarQ::one() - ScalarQ::qpow(j);
        let next = table.last().unwrap() * &factor;
        table.push(next);
    }
    table[k as usize].clone()
}

static QBIN_CACHE: OnceLock<RwLock<Vec<Vec<ScalarQ>>>> = OnceLock::new();

/// The exact q-binomial coefficient as a polynomial in `q`, via the additive
/// recurrence (no divisions, so no gcd work).
pub fn qbinomial(n: u32, k: u32) -> Result<ScalarQ> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let cache = QBIN_CACHE.get_or_init(|| RwLock::new(vec![vec![ScalarQ::one()]]));
    {
        let table = cache.read().unwrap();
        if let Some(row) = table.get(n as usize) {
            return Ok(row[k as usize].clone());
        }
    }
    let mut table = cache.write().unwrap();
    while table.len() <= n as usize {
        let m = table.len();
        let prev = table.last().unwrap().clone();
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            if j == 0 || j == m {
                row.push(ScalarQ::one());
            } else {
                // [m, j] = q^j [m-1, j] + [m-1, j-1]
                let t = ScalarQ::qpow(j as i64) * prev[j].clone() + prev[j - 1].clone();
                row.push(t);
            }
        }
        table.push(row);
    }
    Ok(table[n as usize][k as usize].clone())
}

/// Numeric q-binomial at a concrete `q`.
pub fn qbinomial_f64(n: u32, k: u32, q: f64) -> f64 {
    let k = k.min(n - k.min(n));
    let mut acc = 1.0;
    for j in 1..=k {
        acc *= (1.0 - q.powi((n - k + j) as i32)) / (1.0 - q.powi(j as i32));
    }
    acc
}

/// Value and truncation length of a numerically evaluated `(a; q)_inf`.
#[derive(Clone, Copy, Debug)]
pub struct PochhammerValue {
    pub value: Complex64,
    pub factors: usize,
}

/// `(a; q)_inf` as a truncated product; factors stop once `|q^j a| < tol`.
/// `pole_eps`, when set, rejects evaluations that pass within that distance
/// of a zero factor.
pub fn qpochhammer_infinite(
    a: Complex64,
    q: f64,
    tol: f64,
    pole_eps: Option<f64>,
) -> Result<PochhammerValue> {
    if q.abs() >= 1.0 {
        return Err(Error::NonConvergent);
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut term = a;
    let mut j = 0usize;
    while term.norm() >= tol && j < 100_000 {
        let factor = Complex64::new(1.0, 0.0) - term;
        if let Some(eps) = pole_eps {
            if factor.norm() < eps {
                return Err(Error::PoleHit);
            }
        }
        value *= factor;
        // saturate on overflow: complex multiplication would otherwise
        // contaminate the value with inf * 0 = NaN components. The
        // magnitude stays infinite for all remaining factors (poles are
        // guarded above), only the phase is lost.
        if !value.re.is_finite() || !value.im.is_finite() {
            return Ok(PochhammerValue {
                value: Complex64::new(f64::INFINITY, 0.0),
                factors: j + 1,
            });
        }
        term *= q;
        j += 1;
    }
    Ok(PochhammerValue { value, factors: j })
}

/// An exact complex pair `re + i*im` over [`ScalarQ`], with `i^2 = -1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarC {
    pub re: ScalarQ,
    pub im: ScalarQ,
}

impl ScalarC {
    pub fn from_real(re: ScalarQ) -> ScalarC {
        ScalarC {
            re,
            im: ScalarQ::zero(),
        }
    }

    pub fn i() -> ScalarC {
        ScalarC {
            re: ScalarQ::zero(),
            im: ScalarQ::one(),
        }
    }

    pub fn zero() -> ScalarC {
        ScalarC::from_real(ScalarQ::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &ScalarC) -> ScalarC {
        ScalarC {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &ScalarC) -> ScalarC {
        ScalarC {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }

    pub fn neg(&self) -> ScalarC {
        ScalarC {
            re: -&self.re,
            im: -&self.im,
        }
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: i64) -> ScalarC {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => ScalarC {
                re: -&self.im,
                im: self.re.clone(),
            },
            2 => self.neg(),
            _ => ScalarC {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }
}

/// A dense polynomial in an auxiliary commuting parameter with [`ScalarQ`]
/// coefficients; powers ascend with the index.
#[derive(Clone, Debug, PartialEq)]
pub struct APoly {
    pub coeffs: Vec<ScalarQ>,
}

impl APoly {
    pub fn zero() -> APoly {
        APoly { coeffs: Vec::new() }
    }

    pub fn constant(c: ScalarQ) -> APoly {
        let mut p = APoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn var() -> APoly {
        APoly {
            coeffs: vec![ScalarQ::zero(), ScalarQ::one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &APoly) -> APoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(ScalarQ::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(ScalarQ::zero);
            out.push(&a + &b);
        }
        let mut p = APoly { coeffs: out };
        p.trim();
        p
    }

    pub fn sub(&self, rhs: &APoly) -> APoly {
        self.add(&rhs.scale(&ScalarQ::int(-1)))
    }

    pub fn scale(&self, c: &ScalarQ) -> APoly {
        let mut p = APoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        };
        p.trim();
        p
    }

    pub fn mul(&self, rhs: &APoly) -> APoly {
        if self.is_zero() || rhs.is_zero() {
            return APoly::zero();
        }
        let mut out = vec![ScalarQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let mut p = APoly { coeffs: out };
        p.trim();
        p
    }

    /// Derivative with respect to the parameter.
    pub fn derivative(&self) -> APoly {
        if self.coeffs.len() <= 1 {
            return APoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * &ScalarQ::int(i as i64));
        }
        let mut p = APoly { coeffs: out };
        p.trim();
        p
    }

    pub fn eval(&self, a: &ScalarQ) -> ScalarQ {
        let mut acc = ScalarQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }
}

/// `(a; q)_k` as an exact polynomial in the parameter `a`.
pub fn qshifted_factorial_apoly(k: u32) -> APoly {
    let mut acc = APoly::constant(ScalarQ::one());
    for j in 0..k {
        // 1 - q^j a
        let factor = APoly {
            coeffs: vec![ScalarQ::one(), -ScalarQ::qpow(j as i64)],
        };
        acc = acc.mul(&factor);
    }
    acc
}

/// Relative-or-absolute closeness for numeric comparisons.
pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1.0_f64.max(a.norm()).max(b.norm())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_q2_over_one_minus_q_simplifies() {
        let num = ScalarQ::one() - ScalarQ::qpow(2);
        let den = ScalarQ::one() - ScalarQ::q();
        let r = (num / den).as_exact().unwrap().clone();
        // 1 + q
        let expect = (ScalarQ::one() + ScalarQ::q()).as_exact().unwrap().clone();
        assert_eq!(r, expect);
    }

    #[test]
    fn q_times_q_is_v4() {
        let q2 = ScalarQ::q() * ScalarQ::q();
        assert_eq!(q2, ScalarQ::vpow(4));
        assert_eq!(q2, ScalarQ::qpow(2));
    }

    #[test]
    fn numeric_half_cubic_ratio() {
        // (1 - q^3)/(1 - q) at q = 1/2 is 1 + q + q^2 = 1.75
        let q = ScalarQ::real(0.5);
        let num = ScalarQ::real(1.0) - q.clone() * q.clone() * q.clone();
        let den = ScalarQ::real(1.0) - q;
        let r = (num / den).as_numeric().unwrap();
        assert!((r.re - 1.75).abs() < 1e-15 && r.im == 0.0);
    }

    #[test]
    fn mode_mismatch_and_zero_division_are_reported() {
        let e = scalar_arith(&ScalarQ::q(), &ScalarQ::real(0.5), ArithOp::Add);
        assert_eq!(e.unwrap_err(), Error::ModeMismatch);
        let z = scalar_arith(&ScalarQ::q(), &ScalarQ::zero(), ArithOp::Div);
        assert_eq!(z.unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn shifted_factorial_small_cases() {
        // (q; q)_2 = (1-q)(1-q^2)
        let got = qshifted_factorial(&ScalarQ::q(), &ScalarQ::q(), 2);
        let expect =
            (ScalarQ::one() - ScalarQ::q()) * (ScalarQ::one() - ScalarQ::qpow(2));
        assert_eq!(got, expect);
        // empty product
        assert!(qshifted_factorial(&ScalarQ::q(), &ScalarQ::q(), 0).is_one());
        // single factor with a = z q^{-1}: 1 - q^{-1} z at z = q^3, say
        let a = ScalarQ::qpow(-1) * ScalarQ::qpow(3);
        let got = qshifted_factorial(&a, &ScalarQ::q(), 1);
        assert_eq!(got, ScalarQ::one() - ScalarQ::qpow(2));
    }

    #[test]
    fn qbinomial_matches_paper_values() {
        // [2,1] = 1 + q, [3,1] = 1 + q + q^2, [n,0] = 1
        assert_eq!(
            qbinomial(2, 1).unwrap(),
            ScalarQ::one() + ScalarQ::q()
        );
        assert_eq!(
            qbinomial(3, 1).unwrap(),
            ScalarQ::one() + ScalarQ::q() + ScalarQ::qpow(2)
        );
        assert!(qbinomial(17, 0).unwrap().is_one());
        assert!(qbinomial(3, 4).is_err());
    }

    #[test]
    fn qbinomial_is_ratio_of_factorials() {
        for n in 0..=10u32 {
            for k in 0..=n {
                let lhs = qbinomial(n, k).unwrap();
                let rhs = qq_factorial(n)
                    .checked_div(&(qq_factorial(k) * qq_factorial(n - k)))
                    .unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn infinite_product_basics() {
        let v = qpochhammer_infinite(Complex64::new(0.0, 0.0), 0.5, 1e-15, None).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        // splitting off the first factor: (-1; q)_inf = 2 (-q; q)_inf
        let full = qpochhammer_infinite(Complex64::new(-1.0, 0.0), 0.5, 1e-15, None)
            .unwrap()
            .value;
        let tail = qpochhammer_infinite(Complex64::new(-0.5, 0.0), 0.5, 1e-15, None)
            .unwrap()
            .value;
        assert!((full - 2.0 * tail).norm() < 1e-12);
        assert!(qpochhammer_infinite(Complex64::new(1.0, 0.0), 1.0, 1e-15, None).is_err());
    }

    #[test]
    fn infinite_product_frozen_value() {
        // (1/2; 1/2)_inf, independently computed by exact rational partial
        // sums of the pentagonal-number series and cross-checked against a
        // 40-digit direct product
        let v = qpochhammer_infinite(Complex64::new(0.5, 0.0), 0.5, 1e-16, None)
            .unwrap()
            .value;
        assert!((v.re - 0.2887880950866024212788997219292).abs() < 1e-15);
        assert!(v.im == 0.0);
    }

    #[test]
    fn exact_matches_numeric_at_half() {
        let x = (ScalarQ::one() - ScalarQ::qpow(3))
            / (ScalarQ::one() - ScalarQ::q());
        let v = x.value_at(0.5);
        assert!((v.re - 1.75).abs() < 1e-12);
    }

    #[test]
    fn q_inverse_substitution() {
        // q -> 1/q maps 1 - q to -(1-q)/q
        let x = ScalarQ::one() - ScalarQ::q();
        let y = x.subst_q_inv().unwrap();
        let expect = -(ScalarQ::one() - ScalarQ::q()) * ScalarQ::qpow(-1);
        assert_eq!(y, expect);
    }

    #[test]
    fn apoly_derivative_of_shifted_factorial_at_one() {
        // d/da (a;q)_n at a = 1 is -(q;q)_{n-1}
        for n in 1..=6u32 {
            let p = qshifted_factorial_apoly(n);
            let d = p.derivative().eval(&ScalarQ::one());
            assert_eq!(-d, qq_factorial(n - 1), "n = {n}");
        }
    }

    #[test]
    fn scalar_c_complex_unit() {
        let i = ScalarC::i();
        let m = i.mul(&i);
        assert_eq!(m.re, ScalarQ::int(-1));
        assert!(m.im.is_zero());
        let z = ScalarC::from_real(ScalarQ::q()).mul_i_pow(3);
        assert!(z.re.is_zero());
        assert_eq!(z.im, -ScalarQ::q());
    }
}
