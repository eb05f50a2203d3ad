use jtwist_core::momentum::{rel_dev, DeformationContext};
use jtwist_core::scalar::{rat, rational_to_f64, Rational};
use jtwist_core::twist::{default_u_values, Generator, TwistFamily};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rational(max: i64) -> impl Strategy<Value = Rational> {
    (-max..=max, 1i64..6).prop_map(|(n, d)| rat(n, d))
}

fn momentum() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(8), 2)
}

fn setup() -> impl Strategy<Value = (Rational, Vec<Rational>)> {
    (small_rational(6), prop::collection::vec((-3i64..=3).prop_map(|n| rat(n, 10)), 2))
}

fn neg(k: &[Rational]) -> Vec<Rational> {
    k.iter().map(|x| -x.clone()).collect()
}

fn floats(k: &[Rational]) -> Vec<f64> {
    k.iter().map(rational_to_f64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn zero_is_a_unit((u, a) in setup(), k in momentum()) {
        let ctx = DeformationContext::from_rational(&u, &a).unwrap();
        let zero = vec![Rational::zero(); 2];
        prop_assert_eq!(ctx.deformed_sum(&k, &zero).unwrap(), k.clone());
        prop_assert_eq!(ctx.deformed_sum(&zero, &k).unwrap(), k);
    }

    #[test]
    fn antipode_inverts((u, a) in setup(), k in momentum()) {
        let ctx = DeformationContext::from_rational(&u, &a).unwrap();
        prop_assume!(ctx.check_antipode_domain(&k).is_ok());
        let s = ctx.antipode(&k).unwrap();
        let zero = vec![Rational::zero(); 2];
        prop_assume!(!ctx.sum_denominator(&k, &s).is_zero() && !ctx.sum_denominator(&s, &k).is_zero());
        prop_assert_eq!(ctx.deformed_sum(&k, &s).unwrap(), zero.clone());
        prop_assert_eq!(ctx.deformed_sum(&s, &k).unwrap(), zero);
    }

    #[test]
    fn deformed_sum_is_associative((u, a) in setup(), k in momentum(), q in momentum(), l in momentum()) {
        let ctx = DeformationContext::from_rational(&u, &a).unwrap();
        prop_assume!(ctx.check_sum_domain(&k, &q).is_ok() && ctx.check_sum_domain(&q, &l).is_ok());
        let kq = ctx.deformed_sum(&k, &q).unwrap();
        let ql = ctx.deformed_sum(&q, &l).unwrap();
        prop_assume!(ctx.check_sum_domain(&kq, &l).is_ok() && ctx.check_sum_domain(&k, &ql).is_ok());
        prop_assert_eq!(ctx.deformed_sum(&kq, &l).unwrap(), ctx.deformed_sum(&k, &ql).unwrap());
    }

    #[test]
    fn r_symmetric_point_has_odd_antipode(a in prop::collection::vec(small_rational(3), 2), k in momentum()) {
        let ctx = DeformationContext::from_rational(&rat(1, 2), &a).unwrap();
        prop_assert_eq!(ctx.antipode(&k).unwrap(), neg(&k));
    }

    #[test]
    fn k_inverts_k_inverse((u, a) in setup(), k in momentum()) {
        let ctx = DeformationContext::from_rational(&u, &a).unwrap();
        prop_assume!(ctx.check_log_domain(&k).is_ok());
        let f = ctx.to_f64();
        let kf = floats(&k);
        let back = f.k_map(&f.k_inverse(&kf).unwrap()).unwrap();
        prop_assert!(rel_dev(&back, &kf) < 1e-12, "{back:?} vs {kf:?}");
    }

    #[test]
    fn p_of_k_inverse_is_deformed_sum((u, a) in setup(), k in momentum(), q in momentum()) {
        let ctx = DeformationContext::from_rational(&u, &a).unwrap();
        prop_assume!(ctx.check_admissible(&k, &q).is_ok());
        let f = ctx.to_f64();
        let exact = floats(&ctx.deformed_sum(&k, &q).unwrap());
        let via_p = f.p_map(&f.k_inverse(&floats(&k)).unwrap(), &floats(&q)).unwrap();
        prop_assert!(rel_dev(&via_p, &exact) < 1e-12, "{via_p:?} vs {exact:?}");
    }
}

/// `Δp_μ` from the twisted coproduct with `A ↦ -a·k` on the left leg and
/// `-a·q` on the right, `p ↦ k_μ`, `q_μ`.
fn coproduct_eigenvalue(fam: &TwistFamily, a: &[Rational], k: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let dot = |x: &[Rational]| x.iter().zip(a).map(|(x, a)| x * a).sum::<Rational>();
    let (ak, aq) = (-dot(k), -dot(q));
    let delta = fam.deformed_coproduct(Generator::E);
    (0..k.len())
        .map(|mu| {
            let mut total = Rational::zero();
            for (key, c) in delta.terms() {
                assert!(c.im.is_zero());
                assert!(key.iter().all(|m| m.d == 0 && m.e <= 1));
                let left = ak.pow(key[0].a as i32) * if key[0].e == 1 { k[mu].clone() } else { rat(1, 1) };
                let right = aq.pow(key[1].a as i32) * if key[1].e == 1 { q[mu].clone() } else { rat(1, 1) };
                total += &c.re * left * right;
            }
            total
        })
        .collect()
}

/// The order-`N` truncation misses `D(k,q)` by `O(|a|^{N+1})`.
#[test]
fn deformed_sum_resums_the_coproduct() {
    let (k, q) = (vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(-1, 1)]);
    let gap = |u: &Rational, order: usize, scale: i64| {
        let a = vec![rat(1, 100 * scale), rat(1, 300 * scale)];
        let exact = DeformationContext::from_rational(u, &a).unwrap().deformed_sum(&k, &q).unwrap();
        let fam = TwistFamily::build(u, order).unwrap();
        let series = coproduct_eigenvalue(&fam, &a, &k, &q);
        series.iter().zip(&exact).map(|(s, e)| rational_to_f64(&(s - e).abs())).fold(0f64, f64::max)
    };
    for u in default_u_values() {
        for order in [1, 2, 4] {
            let (wide, narrow) = (gap(&u, order, 1), gap(&u, order, 10));
            if u.is_zero() || u == rat(1, 1) {
                // Δp terminates at first order
                assert_eq!((wide, narrow), (0.0, 0.0), "u = {u}");
            } else {
                let ratio = wide / narrow;
                let expected = 10f64.powi(order as i32 + 1);
                assert!((0.5 * expected..2.0 * expected).contains(&ratio), "u = {u}, N = {order}: ratio {ratio}");
            }
        }
    }
}

#[test]
fn degenerate_forms() {
    let a = vec![rat(1, 10), rat(0, 1)];
    let (k, q) = (vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(-1, 1)]);
    let d = |u: i64| DeformationContext::from_rational(&rat(u, 1), &a).unwrap().deformed_sum(&k, &q).unwrap();
    // u = 0: k + (1 - a·k) q;  u = 1: k (1 + a·q) + q
    assert_eq!(d(0), vec![rat(37, 10), rat(11, 10)]);
    assert_eq!(d(1), vec![rat(43, 10), rat(8, 5)]);
}
