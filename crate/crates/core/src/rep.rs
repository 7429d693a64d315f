//! Operational representations of the q-plane on one-variable series, the
//! faithfulness argument, and the mechanical reduction of noncommutative
//! identities to commutative ones.

use crate::error::{Error, Result};
use crate::ncalg::{compose_series, nc_pow, qplane, NCElement};
use crate::scalar::{qbinomial, qq_factorial, qshifted_factorial, QMode, ScalarQ};
use crate::series::{series_of, NamedSeries, PowerSeries};

/// The four concrete actions on series in `z`:
///
/// * `Rep47`: `x: f -> q z f(qz)`, `y: f -> z f(z)`
/// * `Rep48`: `x: f -> f(qz)`,     `y: f -> z f(z)`
/// * `Rep49`: `x: f -> D_q f`,     `y: f -> f(qz)`
/// * `Rep120`: `x: f -> gamma f(qz)`, `y: f -> z f(z)`
#[derive(Clone, Debug, PartialEq)]
pub enum RepSpec {
    Rep47,
    Rep48,
    Rep49,
    Rep120 { gamma: ScalarQ },
}

impl RepSpec {
    pub fn rep120(gamma: ScalarQ) -> Result<RepSpec> {
        if gamma.is_zero() {
            return Err(Error::Domain("gamma must be nonzero".into()));
        }
        Ok(RepSpec::Rep120 { gamma })
    }

    /// Image of the normal monomial `y^l x^k` applied to `z^m`, as
    /// `(coefficient, output power)`; `None` when the action annihilates.
    fn monomial_action(
        &self,
        mode: &QMode,
        l: u32,
        k: u32,
        m: u32,
    ) -> Option<(ScalarQ, u32)> {
        match self {
            RepSpec::Rep47 => {
                let e = (k as i64) * (k as i64 + 1) / 2 + (k as i64) * (m as i64);
                Some((mode.qpow(e), k + l + m))
            }
            RepSpec::Rep48 => Some((mode.qpow((k as i64) * (m as i64)), l + m)),
            RepSpec::Rep49 => {
                if k > m {
                    return None;
                }
                // x^k acts as D_q^k: z^m -> (1-q^m)...(1-q^(m-k+1))/(1-q)^k z^(m-k)
                let one = mode.one();
                let mut c = one.clone();
                for j in 0..k {
                    c = &c * &(&one - &mode.qpow((m - j) as i64));
                }
                let denom = (&one - &mode.q()).pow(k as i64).ok()?;
                let c = c.checked_div(&denom).ok()?;
                // y^l then dilates by q^l: picks up q^(l (m-k))
                let c = &c * &mode.qpow((l as i64) * ((m - k) as i64));
                Some((c, m - k))
            }
            RepSpec::Rep120 { gamma } => {
                let g = gamma.pow(k as i64).ok()?;
                Some((&g * &mode.qpow((k as i64) * (m as i64)), l + m))
            }
        }
    }
}

/// Splits a normal q-plane word into `(l, k)` with the word equal to
/// `y^l x^k`.
fn split_yx(word: &[u8]) -> (u32, u32) {
    let l = word.iter().filter(|&&g| g == 0).count() as u32;
    (l, word.len() as u32 - l)
}

/// `pi(a) f`, truncated at the truncation of `f`.
pub fn act(rep: &RepSpec, a: &NCElement, f: &PowerSeries) -> Result<PowerSeries> {
    if a.algebra != qplane() {
        return Err(Error::AlgebraMismatch);
    }
    let mode = f.mode.clone();
    let mut out = PowerSeries::zero(mode.clone(), f.trunc);
    for (key, coeff) in a.terms() {
        let (l, k) = split_yx(&key.word);
        for m in 0..=f.trunc {
            let fm = f.coeff(m);
            if fm.is_zero() {
                continue;
            }
            if let Some((c, out_pow)) = rep.monomial_action(&mode, l, k, m) {
                if out_pow <= f.trunc {
                    let add = &(&c * coeff) * &fm;
                    out.set_coeff(out_pow, &out.coeff(out_pow) + &add);
                }
            }
        }
    }
    Ok(out)
}

/// Monomial `z^m` as a polynomial series.
pub fn z_monomial(mode: &QMode, m: u32, trunc: u32) -> PowerSeries {
    let mut s = PowerSeries::zero(mode.clone(), trunc);
    s.set_coeff(m, mode.one());
    s
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub max_m: u32,
    pub failures: u32,
}

/// Checks `pi(x) pi(y) f = q pi(y) pi(x) f` exactly on the basis `z^m`.
pub fn verify_relation(rep: &RepSpec, max_m: u32) -> Result<RelationReport> {
    let mode = QMode::ExactSymbolic;
    let trunc = max_m + 4;
    let alg = qplane();
    let x = NCElement::generator(&alg, trunc, "x")?;
    let y = NCElement::generator(&alg, trunc, "y")?;
    let mut failures = 0;
    for m in 0..=max_m {
        let zm = z_monomial(&mode, m, trunc);
        let lhs = act(rep, &x, &act(rep, &y, &zm)?)?;
        let rhs = act(rep, &y, &act(rep, &x, &zm)?)?.scale(&mode.q());
        if !lhs.sub(&rhs).is_zero() {
            failures += 1;
        }
    }
    Ok(RelationReport { max_m, failures })
}

#[derive(Clone, Debug)]
pub struct FaithfulnessReport {
    pub degree: u32,
    pub rows: u32,
    pub ranks: Vec<u32>,
    pub full_rank: bool,
}

/// Exact rank of the evaluation system of the dilation representation: for
/// homogeneous degree `n`, the matrix `M[m][k] = q^(k(k+1)/2) (q^m)^k`
/// (`m = 0..rows-1`, `k = 0..n`) must have rank `n + 1`, which is the
/// Vandermonde-style argument for faithfulness.
pub fn faithfulness_check(degree: u32, rows: u32) -> FaithfulnessReport {
    let mut ranks = Vec::new();
    let mut full = true;
    for n in 0..=degree {
        let mut matrix: Vec<Vec<ScalarQ>> = Vec::new();
        for m in 0..rows.max(n + 1) {
            let mut row = Vec::new();
            for k in 0..=n {
                let e = (k as i64) * (k as i64 + 1) / 2 + (k as i64) * (m as i64);
                row.push(ScalarQ::qpow(e));
            }
            matrix.push(row);
        }
        let r = exact_rank(matrix);
        if r != n + 1 {
            full = false;
        }
        ranks.push(r);
    }
    FaithfulnessReport {
        degree,
        rows,
        ranks,
        full_rank: full,
    }
}

/// Gaussian elimination over the exact field.
fn exact_rank(mut m: Vec<Vec<ScalarQ>>) -> u32 {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot invertible");
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let t = &m[row][c] * &factor;
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub id: String,
    pub cases: u32,
    pub failures: u32,
}

/// Reduces a registered noncommutative identity to its commutative endpoint
/// under the given representation, over a range of basis exponents `m`.
/// Supported pairs: `eq3` and `eq12` under the dilation action.
pub fn reduce_to_commutative(
    id: &str,
    rep: &RepSpec,
    m_range: std::ops::RangeInclusive<u32>,
    trunc: u32,
) -> Result<ReductionReport> {
    if *rep != RepSpec::Rep47 {
        return Err(Error::Domain(
            "reduction endpoints are registered for the dilation action only".into(),
        ));
    }
    let mut cases = 0;
    let mut failures = 0;
    match id {
        "eq3" => {
            for m in m_range {
                for n in 0..=trunc.min(8) {
                    cases += 1;
                    if !reduce_qbinomial_rep47(n, m)? {
                        failures += 1;
                    }
                }
            }
        }
        "eq12" => {
            for m in m_range {
                cases += 1;
                if !reduce_eq_split_rep47(m, trunc)? {
                    failures += 1;
                }
            }
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    }
    Ok(ReductionReport {
        id: id.to_string(),
        cases,
        failures,
    })
}

/// Reduces the q-binomial expansion under the dilation action to the
/// terminating q-binomial sum: both sides act on `z^m`, the common monomial
/// `z^(m+n)` is divided out, and each scalar side is compared against the
/// closed evaluation at `z = -q^(n+m+1)`.
pub fn reduce_qbinomial_rep47(n: u32, m: u32) -> Result<bool> {
    let mode = QMode::ExactSymbolic;
    let trunc = n + m + 1;
    let alg = qplane();
    let x = NCElement::generator(&alg, trunc, "x")?;
    let y = NCElement::generator(&alg, trunc, "y")?;
    let zm = z_monomial(&mode, m, trunc);
    let rep = RepSpec::Rep47;

    // left side: pi((x+y)^n) z^m
    let pow = nc_pow(&x.add(&y)?, n)?;
    let lhs = act(&rep, &pow, &zm)?;
    // right side: sum_k [n,k] pi(y^(n-k) x^k) z^m
    let mut rhs = PowerSeries::zero(mode.clone(), trunc);
    for k in 0..=n {
        let mut mono = NCElement::one(&alg, trunc);
        for _ in 0..n - k {
            mono = crate::ncalg::nc_mul(&mono, &y)?;
        }
        for _ in 0..k {
            mono = crate::ncalg::nc_mul(&mono, &x)?;
        }
        let acted = act(&rep, &mono, &zm)?.scale(&qbinomial(n, k)?);
        rhs = rhs.add(&acted);
    }
    if !lhs.sub(&rhs).is_zero() {
        return Ok(false);
    }

    // the common monomial is z^(m+n); dividing it out leaves the scalar sum
    let lhs_scalar = lhs.coeff(n + m);
    let rhs_scalar = rhs.coeff(n + m);

    // closed forms at z = -q^(n+m+1):
    //   (q^-n z; q)_n = (-q^(m+1); q)_n
    //   sum_k (q^-n;q)_k/(q;q)_k z^k
    let q = ScalarQ::q();
    let closed_left = qshifted_factorial(&(-ScalarQ::qpow(m as i64 + 1)), &q, n);
    let z = -ScalarQ::qpow((n + m + 1) as i64);
    let mut closed_right = ScalarQ::zero();
    let qmn = ScalarQ::qpow(-(n as i64));
    for k in 0..=n {
        let num = qshifted_factorial(&qmn, &q, k);
        let term = num
            .checked_div(&qq_factorial(k))?
            .checked_mul(&z.pow(k as i64)?)?;
        closed_right = &closed_right + &term;
    }
    Ok((&lhs_scalar - &closed_left).is_zero()
        && (&rhs_scalar - &closed_right).is_zero()
        && (&closed_left - &closed_right).is_zero())
}

/// Reduces the exponential splitting under the dilation action: acting on
/// `z^m` and dividing by `z^m` must reproduce
/// `phi10(-q^(m+1);; q, z) = e_q(z) E_q(q^(m+1) z)` to the stated truncation.
pub fn reduce_eq_split_rep47(m: u32, trunc: u32) -> Result<bool> {
    let mode = QMode::ExactSymbolic;
    let alg = qplane();
    let rep = RepSpec::Rep47;
    let inner = trunc + m;
    let x = NCElement::generator(&alg, inner, "x")?;
    let y = NCElement::generator(&alg, inner, "y")?;
    let e = series_of(&NamedSeries::Eq, &mode, inner);
    let zm = z_monomial(&mode, m, inner);

    let lhs_el = compose_series(&e, &x.add(&y)?)?;
    let rhs_el = crate::ncalg::nc_mul(&compose_series(&e, &y)?, &compose_series(&e, &x)?)?;
    let lhs = act(&rep, &lhs_el, &zm)?;
    let rhs = act(&rep, &rhs_el, &zm)?;
    if !lhs.sub(&rhs).is_zero() {
        return Ok(false);
    }

    // divide by z^m and compare with the commutative endpoint
    let a = -ScalarQ::qpow(m as i64 + 1);
    let phi = series_of(&NamedSeries::Phi10(a), &mode, trunc);
    let eq = series_of(&NamedSeries::Eq, &mode, trunc);
    let big = crate::series::bigeq_series_base(&mode, trunc, 1)
        .compose_monomial(&ScalarQ::qpow(m as i64 + 1), 1, trunc);
    let endpoint = eq.mul(&big);
    if !phi.sub(&endpoint).is_zero() {
        return Ok(false);
    }
    for k in 0..=trunc {
        if !(&lhs.coeff(k + m) - &phi.coeff(k)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rep47_closed_form_on_monomials() {
        // pi(y^l x^k) z^m = q^(k(k+1)/2 + k m) z^(k+l+m)
        let mode = QMode::ExactSymbolic;
        let alg = qplane();
        let trunc = 12;
        for (l, k, m) in [(0u32, 1u32, 0u32), (2, 1, 3), (1, 2, 2), (0, 3, 1)] {
            let mut el = NCElement::one(&alg, trunc);
            let y = NCElement::generator(&alg, trunc, "y").unwrap();
            let x = NCElement::generator(&alg, trunc, "x").unwrap();
            for _ in 0..l {
                el = crate::ncalg::nc_mul(&el, &y).unwrap();
            }
            for _ in 0..k {
                el = crate::ncalg::nc_mul(&el, &x).unwrap();
            }
            let out = act(&RepSpec::Rep47, &el, &z_monomial(&mode, m, trunc)).unwrap();
            let e = (k as i64) * (k as i64 + 1) / 2 + (k as i64) * (m as i64);
            assert_eq!(out.coeff(k + l + m), ScalarQ::qpow(e));
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let mode = QMode::ExactSymbolic;
        let alg = qplane();
        let one = NCElement::one(&alg, 8);
        let f = series_of(&NamedSeries::Eq, &mode, 8);
        let g = act(&RepSpec::Rep48, &one, &f).unwrap();
        assert!(g.sub(&f).is_zero());
    }

    #[test]
    fn all_reps_preserve_the_relation() {
        for rep in [
            RepSpec::Rep47,
            RepSpec::Rep48,
            RepSpec::Rep49,
            RepSpec::rep120(ScalarQ::qpow(2)).unwrap(),
        ] {
            let r = verify_relation(&rep, 16).unwrap();
            assert_eq!(r.failures, 0, "{rep:?}");
        }
    }

    #[test]
    fn rep47_sum_power_closed_form() {
        // pi((x+y)^n) z^m = (-q^(m+1); q)_n z^(m+n)
        let mode = QMode::ExactSymbolic;
        let alg = qplane();
        for n in 0..=5u32 {
            for m in 0..=3u32 {
                let trunc = n + m + 1;
                let x = NCElement::generator(&alg, trunc, "x").unwrap();
                let y = NCElement::generator(&alg, trunc, "y").unwrap();
                let p = nc_pow(&x.add(&y).unwrap(), n).unwrap();
                let out = act(&RepSpec::Rep47, &p, &z_monomial(&mode, m, trunc)).unwrap();
                let expect = qshifted_factorial(
                    &(-ScalarQ::qpow(m as i64 + 1)),
                    &ScalarQ::q(),
                    n,
                );
                assert_eq!(out.coeff(m + n), expect, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn rep120_polynomial_evaluation() {
        // pi(f(x)) z^k = f(gamma q^k) z^k for polynomial f, gamma = q^2
        let mode = QMode::ExactSymbolic;
        let alg = qplane();
        let trunc = 10;
        let gamma = ScalarQ::qpow(2);
        let rep = RepSpec::rep120(gamma.clone()).unwrap();
        // f(x) = 1 + 3x + x^2 applied through the representation
        let x = NCElement::generator(&alg, trunc, "x").unwrap();
        let f_of_x = NCElement::one(&alg, trunc)
            .add(&x.scale(&ScalarQ::int(3)))
            .unwrap()
            .add(&nc_pow(&x, 2).unwrap())
            .unwrap();
        for k in 0..=4u32 {
            let out = act(&rep, &f_of_x, &z_monomial(&mode, k, trunc)).unwrap();
            let point = &gamma * &ScalarQ::qpow(k as i64);
            let expect = ScalarQ::one()
                + (ScalarQ::int(3) * point.clone())
                + point.pow(2).unwrap();
            assert_eq!(out.coeff(k), expect, "k = {k}");
            assert_eq!(out.degree(), Some(k));
        }
    }

    #[test]
    fn faithfulness_small_degrees() {
        let r = faithfulness_check(4, 6);
        assert!(r.full_rank);
        assert_eq!(r.ranks, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn qbinomial_reduction_small() {
        assert!(reduce_qbinomial_rep47(1, 0).unwrap());
        assert!(reduce_qbinomial_rep47(3, 2).unwrap());
    }

    #[test]
    fn eq_split_reduction_small() {
        assert!(reduce_eq_split_rep47(0, 8).unwrap());
        assert!(reduce_eq_split_rep47(2, 8).unwrap());
    }
}
