mod common;

use common::{cocycle_residual, oracle_twist, Oracle, Rewriter};
use jtwist_core::borel::{coproduct0_on_leg, mono_mul, BorelElement, Mono, TensorElement};
use jtwist_core::scalar::rat;
use jtwist_core::twist::{default_u_values, TwistFamily};

#[test]
fn monomial_products_match_word_rewriting() {
    let mut rw = Rewriter::default();
    let mut monos = Vec::new();
    for a in 0..=4u32 {
        for e in 0..=4 - a {
            for d in 0..=4 - a - e {
                monos.push((a, e, d));
            }
        }
    }
    for &x in &monos {
        for &y in &monos {
            let expected = rw.mono_product(x, y);
            let mut got: Vec<_> = mono_mul(common::mono(x), common::mono(y))
                .into_iter()
                .map(|(m, c)| ((m.a, m.e, m.d), c as i64))
                .filter(|(_, c)| *c != 0)
                .collect();
            got.sort();
            let expected: Vec<_> = expected.into_iter().collect();
            assert_eq!(got, expected, "{x:?} * {y:?}");
        }
    }
}

#[test]
fn twist_matches_independent_construction() {
    let mut rw = Rewriter::default();
    for u in default_u_values() {
        let fam = TwistFamily::build(&u, 3).unwrap();
        assert_eq!(Oracle::from_tensor(&fam.twist), oracle_twist(&u, 3, &mut rw), "u = {u}");
    }
}

#[test]
fn oracle_cocycle_holds_at_small_order() {
    let mut rw = Rewriter::default();
    for u in [rat(0, 1), rat(1, 2), rat(2, 1)] {
        let f = oracle_twist(&u, 3, &mut rw);
        assert!(cocycle_residual(&f, &mut rw).is_zero(), "u = {u}");
    }
}

#[test]
fn oracle_detects_corrupted_twist() {
    let mut rw = Rewriter::default();
    let u = rat(1, 2);
    let mut f = oracle_twist(&u, 3, &mut rw);
    let key = f.terms.keys().find(|k| k.iter().map(|m| m.0).sum::<u32>() == 2).unwrap().clone();
    f.terms.remove(&key);
    let residual = cocycle_residual(&f, &mut rw);
    assert!(!residual.is_zero());
    assert!(residual.terms.keys().all(|k| k.iter().map(|m| m.0).sum::<u32>() >= 2));
}

#[test]
fn library_coproduct0_matches_letterwise_coproduct() {
    let mut rw = Rewriter::default();
    let order = 4;
    let x = &(&BorelElement::gen_d(order) * &BorelElement::gen_a(order)).pow(2)
        + &BorelElement::monomial(Mono::new(1, 2, 1), jtwist_core::GaussianRational::ratio(3, 2), order);
    let t = TensorElement::from_legs(&[&x, &BorelElement::gen_d(order)]).unwrap();
    let lib = coproduct0_on_leg(&t, 0).unwrap();
    assert_eq!(Oracle::from_tensor(&lib), Oracle::from_tensor(&t).coproduct_leg(0, &mut rw));
    let lib = coproduct0_on_leg(&t, 1).unwrap();
    assert_eq!(Oracle::from_tensor(&lib), Oracle::from_tensor(&t).coproduct_leg(1, &mut rw));
}
