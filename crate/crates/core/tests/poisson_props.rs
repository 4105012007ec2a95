mod common;

use common::{case, cases, p, poly, polys, truncate_vars};
use logpoisson::logforms::{bracket_s, express_d, extension_bracket, htilde, OneForm};
use logpoisson::poly::Poly;
use proptest::prelude::*;

fn cyclic<T>(f: impl Fn(usize, usize, usize) -> T) -> [T; 3] {
    [f(0, 1, 2), f(1, 2, 0), f(2, 0, 1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn bracket_is_skew_and_jacobi(f in polys(3, 2, 3, 3), which in 0usize..6) {
        let cs = cases();
        let c = &cs[which];
        let n = c.poisson.nvars();
        let f: Vec<Poly> = f.iter().map(|g| truncate_vars(g, n)).collect();
        let br = |a: &Poly, b: &Poly| c.poisson.bracket(a, b).unwrap();
        prop_assert_eq!(br(&f[0], &f[1]), -br(&f[1], &f[0]));
        let [a, b, cc] = cyclic(|i, j, k| br(&f[i], &br(&f[j], &f[k])));
        prop_assert!((&(&a + &b) + &cc).is_zero(), "{}", c.label);
    }

    #[test]
    fn bracket_s_is_lie_and_leibniz(coeffs in polys(3, 2, 3, 9), a in poly(3, 2, 3), which in 0usize..6) {
        let cs = cases();
        let c = &cs[which];
        let (n, r) = (c.poisson.nvars(), c.basis.len());
        let forms: Vec<OneForm> = (0..3)
            .map(|t| OneForm::new((0..r).map(|i| truncate_vars(&coeffs[3 * t + i], n)).collect()))
            .collect();
        let a = truncate_vars(&a, n);
        let bs = |x: &OneForm, y: &OneForm| bracket_s(&c.poisson, &c.basis, x, y).unwrap();

        let [j1, j2, j3] = cyclic(|i, j, k| bs(&forms[i], &bs(&forms[j], &forms[k])));
        prop_assert!(j1.add(&j2).add(&j3).is_zero(), "{}", c.label);

        let lhs = bs(&forms[0], &forms[1].scale(&a));
        let h = htilde(&c.poisson, &c.basis, &forms[0]).unwrap();
        let rhs = forms[1].scale(&h.apply(&a)).add(&bs(&forms[0], &forms[1]).scale(&a));
        prop_assert_eq!(lhs, rhs);

        let ht = |x: &OneForm| htilde(&c.poisson, &c.basis, x).unwrap();
        prop_assert_eq!(ht(&bs(&forms[0], &forms[1])), ht(&forms[0]).commutator(&ht(&forms[1])));
    }

    #[test]
    fn extension_bracket_jacobi_on_forms(coeffs in polys(3, 2, 3, 9), which in 0usize..6) {
        let cs = cases();
        let c = &cs[which];
        let (n, r) = (c.poisson.nvars(), c.basis.len());
        let zero = Poly::zero(n);
        let forms: Vec<OneForm> = (0..3)
            .map(|t| OneForm::new((0..r).map(|i| truncate_vars(&coeffs[3 * t + i], n)).collect()))
            .collect();
        let eb = |x: (&Poly, &OneForm), y: (&Poly, &OneForm)| extension_bracket(&c.poisson, &c.basis, x, y).unwrap();
        let sums = cyclic(|i, j, k| {
            let (s, f) = eb((&zero, &forms[j]), (&zero, &forms[k]));
            eb((&zero, &forms[i]), (&s, &f))
        });
        let scalar = &(&sums[0].0 + &sums[1].0) + &sums[2].0;
        let form = sums[0].1.add(&sums[1].1).add(&sums[2].1);
        prop_assert!(scalar.is_zero() && form.is_zero(), "{}", c.label);
    }

    #[test]
    fn express_d_is_a_derivation(f in poly(3, 3, 4), g in poly(3, 3, 4), which in 0usize..6) {
        let cs = cases();
        let c = &cs[which];
        let n = c.poisson.nvars();
        let (f, g) = (truncate_vars(&f, n), truncate_vars(&g, n));
        let d = |h: &Poly| express_d(&c.basis, h);
        prop_assert_eq!(d(&(&f * &g)), d(&g).scale(&f).add(&d(&f).scale(&g)));
    }
}

#[test]
fn extension_bracket_fails_jacobi_with_scalar_parts() {
    // the Jacobi sum of (a, 0), (0, α), (0, β) reduces to {a, π(α, β)}
    let c = case("example2", 2, &[(0, 1, "x^2")], &[0]);
    let a = p("y", 2);
    let zero = Poly::zero(2);
    let e1 = OneForm::basis(2, 0, Poly::one(2));
    let e2 = OneForm::basis(2, 1, Poly::one(2));
    let none = OneForm::zero(2, 2);
    let eb = |x: (&Poly, &OneForm), y: (&Poly, &OneForm)| extension_bracket(&c.poisson, &c.basis, x, y).unwrap();
    let t = [(&a, &none), (&zero, &e1), (&zero, &e2)];
    let mut scalar = Poly::zero(2);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let (s, f) = eb(t[j], t[k]);
        scalar += &eb(t[i], (&s, &f)).0;
    }
    // π(dx/x, dy) = x, so the sum is {y, x} = -x^2
    assert_eq!(scalar, p("-x^2", 2));
}
