mod common;

use common::{names, poly};
use logpoisson::poly::Poly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(3), a.clone());
    }

    #[test]
    fn partials_commute_and_obey_leibniz(a in poly(3, 4, 5), b in poly(3, 4, 5), i in 0usize..3, j in 0usize..3) {
        let d = |f: &Poly, k: usize| f.partial(k).unwrap();
        prop_assert_eq!(d(&d(&a, i), j), d(&d(&a, j), i));
        prop_assert_eq!(d(&(&a * &b), i), &(&d(&a, i) * &b) + &(&a * &d(&b, i)));
        prop_assert_eq!(a.euler(i), &Poly::var(3, i) * &d(&a, i));
    }

    #[test]
    fn exact_division_round_trips(a in poly(3, 3, 4), g in poly(3, 2, 3)) {
        prop_assume!(!g.is_zero());
        let prod = &a * &g;
        prop_assert_eq!(prod.exact_divide(&g).unwrap(), a.clone());
        if g.degree() > Some(0) {
            prop_assert!((&prod + &Poly::one(3)).exact_divide(&g).is_err());
        }
    }

    #[test]
    fn text_round_trips(a in poly(3, 4, 6)) {
        let text = a.to_string_with(&names(3));
        prop_assert_eq!(Poly::parse(&text, &names(3)).unwrap(), a);
    }

    #[test]
    fn degree_is_additive(a in poly(2, 4, 4), b in poly(2, 4, 4)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
    }
}
