//! Property suites: field axioms for the exact scalars, exact/numeric
//! agreement at a concrete q, associativity of the rewriting product on
//! random elements, and linearity/multiplicativity of the representations.

use num_complex::Complex64;
use proptest::prelude::*;
use qcalc_core::ncalg::{self, nc_mul, NCElement};
use qcalc_core::rep::{act, z_monomial, RepSpec};
use qcalc_core::scalar::{close, QMode, ScalarQ};
use qcalc_core::series::PowerSeries;

/// Small exact rational functions in q: ratios of sparse integer polynomials.
fn scalar_strategy() -> impl Strategy<Value = ScalarQ> {
    let poly = prop::collection::vec(-4i64..=4, 1..4);
    (poly.clone(), poly, 0u32..3).prop_map(|(num, den, shift)| {
        let mut n = ScalarQ::zero();
        for (i, c) in num.iter().enumerate() {
            n = n + ScalarQ::int(*c) * ScalarQ::qpow(i as i64);
        }
        let mut d = ScalarQ::one(); // keep denominators nonzero
        for (i, c) in den.iter().enumerate() {
            d = d + ScalarQ::int(*c) * ScalarQ::qpow(i as i64 + 1);
        }
        // avoid denominators that vanish at or near the numeric probe q = 1/2
        if d.is_zero() || d.value_at(0.5).norm() < 1e-2 {
            d = ScalarQ::one();
        }
        n.checked_div(&d).unwrap() * ScalarQ::qpow(shift as i64)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        let ab = a.clone() + b.clone();
        let ba = b.clone() + a.clone();
        prop_assert!((ab.clone() - ba).is_zero());
        let lhs = (a.clone() + b.clone()) * c.clone();
        let rhs = a.clone() * c.clone() + b.clone() * c.clone();
        prop_assert!((lhs - rhs).is_zero());
        let assoc_l = (a.clone() * b.clone()) * c.clone();
        let assoc_r = a.clone() * (b.clone() * c.clone());
        prop_assert!((assoc_l - assoc_r).is_zero());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!((a.clone() * inv - ScalarQ::one()).is_zero());
        }
    }

    #[test]
    fn exact_matches_numeric_at_half(a in scalar_strategy(), b in scalar_strategy()) {
        let q = 0.5;
        let exact = (a.clone() * b.clone() + a.clone()).value_at(q);
        let numeric = a.value_at(q) * b.value_at(q) + a.value_at(q);
        prop_assert!(close(exact, numeric, 1e-12), "{exact} vs {numeric}");
    }
}

/// A random element of an algebra: a few monomial words of bounded length.
fn element_strategy(
    alg: std::sync::Arc<ncalg::AlgebraSpec>,
    trunc: u32,
) -> impl Strategy<Value = NCElement> {
    let n_gens = alg.gens.len() as u8;
    let word = prop::collection::vec(0u8..n_gens, 0..4);
    prop::collection::vec((word, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut out = NCElement::zero(&alg, trunc);
        for (w, c) in terms {
            let names: Vec<&str> = w.iter().map(|&g| alg.gens[g as usize].name).collect();
            let m = ncalg::normal_order(&alg, &names, trunc).unwrap();
            out = out.add(&m.scale(&ScalarQ::int(c))).unwrap();
        }
        out
    })
}

macro_rules! assoc_prop {
    ($name:ident, $alg:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10))]

            #[test]
            fn $name(
                a in element_strategy($alg, 12),
                b in element_strategy($alg, 12),
                c in element_strategy($alg, 12),
            ) {
                let left = nc_mul(&nc_mul(&a, &b).unwrap(), &c).unwrap();
                let right = nc_mul(&a, &nc_mul(&b, &c).unwrap()).unwrap();
                prop_assert!(left.sub(&right).unwrap().is_zero());
            }
        }
    };
}

assoc_prop!(assoc_qplane, ncalg::qplane());
assoc_prop!(assoc_qheis, ncalg::qheis());
assoc_prop!(assoc_qheisz, ncalg::qheisz());
assoc_prop!(assoc_gf98, ncalg::gf98());
assoc_prop!(assoc_gf103, ncalg::gf103());
assoc_prop!(assoc_qline3, ncalg::qline3());
assoc_prop!(assoc_lambda_mu, ncalg::lambda_mu());

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// The action is multiplicative: pi(a b) f = pi(a)(pi(b) f).
    #[test]
    fn action_is_multiplicative(
        a in element_strategy(ncalg::qplane(), 10),
        b in element_strategy(ncalg::qplane(), 10),
        m in 0u32..4,
    ) {
        let mode = QMode::ExactSymbolic;
        for spec in [RepSpec::Rep47, RepSpec::Rep48, RepSpec::Rep49] {
            let f = z_monomial(&mode, m, 10);
            let ab = nc_mul(&a, &b).unwrap();
            let lhs = act(&spec, &ab, &f).unwrap();
            let rhs = act(&spec, &a, &act(&spec, &b, &f).unwrap()).unwrap();
            prop_assert!(lhs.sub(&rhs).is_zero(), "{spec:?}");
        }
    }

    /// The action is linear in the function argument.
    #[test]
    fn action_is_linear(
        a in element_strategy(ncalg::qplane(), 8),
        c1 in -3i64..=3,
        c2 in -3i64..=3,
    ) {
        let mode = QMode::ExactSymbolic;
        let f = z_monomial(&mode, 1, 8).scale(&ScalarQ::int(c1));
        let g = z_monomial(&mode, 3, 8).scale(&ScalarQ::int(c2));
        let lhs = act(&RepSpec::Rep47, &a, &f.add(&g)).unwrap();
        let rhs = act(&RepSpec::Rep47, &a, &f)
            .unwrap()
            .add(&act(&RepSpec::Rep47, &a, &g).unwrap());
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}

#[test]
fn numeric_series_and_product_forms_agree() {
    // partial sums of the defining series against the product evaluator
    let q = 0.5;
    let mode = QMode::NumericAt(q);
    // enough terms that the truncation error at |z| = 0.75 sits below 1e-13
    let e = qcalc_core::series::series_of(&qcalc_core::series::NamedSeries::Eq, &mode, 120);
    for &z in &[0.3f64, -0.5, 0.75] {
        let series_val = eval_series(&e, z, q);
        let prod_val = qcalc_core::series::eq_prod(Complex64::new(z, 0.0), q, 1e-16).unwrap();
        assert!(close(series_val, prod_val, 1e-12), "z = {z}");
    }
}

fn eval_series(s: &PowerSeries, z: f64, q: f64) -> Complex64 {
    s.eval_numeric(Complex64::new(z, 0.0), q)
}
