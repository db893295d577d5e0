use dualcalc::ratfunc::{q_frac, Poly, RatFunc, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..4)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(e, c)| (e, q_frac(c, 1)))))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q_frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.recip().unwrap()), RatFunc::one());
            prop_assert_eq!(b.div(&a).unwrap().mul(&a), b);
        }
    }

    #[test]
    fn substitution_composes(
        f in ratfunc(), g1 in ratfunc(), g2 in ratfunc(), h1 in ratfunc(), h2 in ratfunc()
    ) {
        let outer = f.substitute(&g1, &g2).and_then(|fg| fg.substitute(&h1, &h2));
        let inner = g1
            .substitute(&h1, &h2)
            .and_then(|a| Ok((a, g2.substitute(&h1, &h2)?)))
            .and_then(|(a, b)| f.substitute(&a, &b));
        if let (Ok(l), Ok(r)) = (outer, inner) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in ratfunc(), g in ratfunc(), x in rational(), y in rational()) {
        let (Ok(fv), Ok(gv)) = (f.eval(&x, &y), g.eval(&x, &y)) else {
            return Ok(());
        };
        prop_assert_eq!(f.add(&g).eval(&x, &y).unwrap(), &fv + &gv);
        prop_assert_eq!(f.sub(&g).eval(&x, &y).unwrap(), &fv - &gv);
        prop_assert_eq!(f.mul(&g).eval(&x, &y).unwrap(), &fv * &gv);
        if !gv.is_zero() {
            prop_assert_eq!(f.div(&g).unwrap().eval(&x, &y).unwrap(), &fv / &gv);
        }
    }

    #[test]
    fn printed_form_parses_back(f in ratfunc()) {
        let s = format!("({})/({})", f.num, f.den);
        prop_assert_eq!(RatFunc::parse(&s).unwrap(), f);
    }
}

#[test]
fn poles_are_reported() {
    let f = RatFunc::parse("1/(x - y)").unwrap();
    assert!(f.eval(&q_frac(1, 2), &q_frac(1, 2)).is_err());
    assert!(RatFunc::parse("x/0").is_err());
}
