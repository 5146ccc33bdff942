use proptest::prelude::*;
use toroidal_exact::{gcd_cofactors, rf_parse, rf_series, Mon, Poly, RatFun, Var};

const VARS: [Var; 3] = [Var::QH, Var::TH, Var::U];

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i32..=3, 0i32..=3, -2i32..=2, -4i64..=4), 1..5).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(a, b, c, k)| {
            (Mon::from_pairs(&[(VARS[0], a), (VARS[1], b), (VARS[2], c)]), k.into())
        }))
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (small_poly(), small_poly()).prop_filter_map("zero denominator", |(n, d)| RatFun::from_polys(n, d).ok())
}

fn nonzero_ratfun() -> impl Strategy<Value = RatFun> {
    ratfun().prop_filter("zero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse(a in nonzero_ratfun()) {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn canonical_form_round_trips(a in ratfun()) {
        let s = a.to_string();
        prop_assert_eq!(rf_parse(&s).unwrap(), a);
    }

    #[test]
    fn canonical_invariants(a in ratfun()) {
        let d = a.denom();
        prop_assert!(d.is_proper());
        prop_assert!(d.min_exps().is_one());
        prop_assert!(!d.lead_is_negative());
        let g = gcd_cofactors(a.numer(), d).g;
        prop_assert!(g.is_one() || a.is_zero());
    }

    #[test]
    fn gcd_divides_and_recovers_common_factor(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assume!(!h.is_zero());
        let a = &f * &h;
        let b = &g * &h;
        let r = gcd_cofactors(&a, &b);
        prop_assert_eq!(&r.g * &r.ca, a.clone());
        prop_assert_eq!(&r.g * &r.cb, b.clone());
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(r.g.div_exact(&h).is_some() || h.is_monomial());
        }
    }

    #[test]
    fn series_is_a_ring_homomorphism(a in ratfun(), b in ratfun()) {
        let m = 4;
        let (sa, sb) = (rf_series(&a, m).unwrap(), rf_series(&b, m).unwrap());
        let sum = rf_series(&(&a + &b), m).unwrap();
        prop_assert_eq!(sum, sa.add(&sb));
        let prod = rf_series(&(&a * &b), m).unwrap();
        let lhs = sa.mul(&sb);
        for r in lhs.valuation().min(prod.valuation())..=lhs.order.min(prod.order) {
            prop_assert_eq!(prod.coeff(r), lhs.coeff(r));
        }
    }
}

#[test]
fn gcd_of_four_variable_products() {
    let f = rf_parse("(1 - x*q^2*t^-1)*(1 - y*t)*(q - t*x*y)").unwrap();
    let g = rf_parse("(1 - x*q^2*t^-1)*(1 - y*q^3)*(q - t*x*y)^2").unwrap();
    let ratio = &g / &f;
    assert_eq!(ratio, rf_parse("(1 - y*q^3)*(q - t*x*y)/(1 - y*t)").unwrap());
}

#[test]
fn zero_denominator_is_an_error() {
    assert!(RatFun::from_polys(Poly::one(), Poly::zero()).is_err());
    assert!(RatFun::zero().inv().is_err());
    let f = rf_parse("1/(1 - u)").unwrap();
    assert!(f.substitute(&[(Var::U, RatFun::one())]).is_err());
}

#[test]
fn half_powers_print_and_parse() {
    let f = RatFun::qt_half(1, -3);
    assert_eq!(f.to_string(), "q^(1/2)*t^(-3/2)");
    assert_eq!(rf_parse("q^(1/2)*t^(-3/2)").unwrap(), f);
    assert_eq!(rf_parse("(q/t)^3").unwrap(), RatFun::qt(3, -3));
}

#[test]
fn geometric_series() {
    // 1/(1 - a u^-1) = sum a^r u^-r
    let f = rf_parse("1/(1 - q*u^-1)").unwrap();
    let s = rf_series(&f, 5).unwrap();
    for r in 0..=5 {
        assert_eq!(s.coeff(r), RatFun::qt(r, 0));
    }
    // u/(u - 1) = 1 + u^-1 + ...
    let g = rf_parse("u/(u - 1)").unwrap();
    let s = rf_series(&g, 3).unwrap();
    assert!((0..=3).all(|r| s.coeff(r).is_one()));
}

#[test]
fn exp_log_inverse() {
    let f = rf_parse("(1 - q*u^-1)/(1 - t*u^-1)").unwrap();
    let s = rf_series(&f, 5).unwrap();
    let back = s.log().unwrap().exp().unwrap();
    assert_eq!(back, s);
    let inv = s.inv().unwrap();
    assert_eq!(inv, rf_series(&f.inv().unwrap(), 5).unwrap());
}
