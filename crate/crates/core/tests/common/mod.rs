#![allow(dead_code)]

use logpoisson::complex::{tuples, Cochain};
use logpoisson::logforms::LogBasis;
use logpoisson::poisson::{LogDivisorSpec, PoissonStructure};
use logpoisson::poly::{default_names, Monomial, Poly, Rational};
use proptest::prelude::*;

/// Polynomials in `n` variables with exponents `≤ e` per variable.
pub fn poly(n: usize, e: u32, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=e, n), -9i64..=9, 1i64..=4), 0..=terms).prop_map(
        move |ts| {
            Poly::from_terms(
                n,
                ts.into_iter()
                    .map(|(exps, a, b)| (Monomial::new(exps), Rational::new(a.into(), b.into()))),
            )
        },
    )
}

pub fn polys(n: usize, e: u32, terms: usize, len: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly(n, e, terms), len)
}

/// A `k`-cochain of rank `r` with coefficients of degree `≤ n·e`.
pub fn cochain(r: usize, n: usize, k: usize, e: u32) -> impl Strategy<Value = Cochain> {
    let len = tuples(r, k).len();
    polys(n, e, 3, len).prop_map(move |v| {
        if v.is_empty() {
            Cochain::zero(k, n)
        } else {
            Cochain::from_vec(k, r, v)
        }
    })
}

pub fn names(n: usize) -> Vec<String> {
    default_names(n)
}

pub fn p(text: &str, n: usize) -> Poly {
    Poly::parse(text, &names(n)).unwrap()
}

/// `(name, bracket, divisor variables)` for the structures used across tests.
pub struct Case {
    pub label: &'static str,
    pub poisson: PoissonStructure,
    pub basis: LogBasis,
}

pub fn case(label: &'static str, n: usize, bracket: &[(usize, usize, &str)], divisor: &[usize]) -> Case {
    let poisson =
        PoissonStructure::from_pairs(names(n), bracket.iter().map(|&(i, j, s)| (i, j, p(s, n)))).unwrap();
    let basis = LogBasis::new(n, &LogDivisorSpec::from_variables(n, divisor).unwrap());
    Case { label, poisson, basis }
}

pub fn cases() -> Vec<Case> {
    vec![
        case("example1", 2, &[(0, 1, "x")], &[0]),
        case("example2", 2, &[(0, 1, "x^2")], &[0]),
        case("example3", 3, &[(1, 2, "x*y*z")], &[0, 1, 2]),
        case("xy(1+x-y^2)", 2, &[(0, 1, "x*y*(1 + x - y^2)")], &[0, 1]),
        case("so3", 3, &[(0, 1, "z"), (1, 2, "x"), (2, 0, "y")], &[]),
        case("xz-casimir", 3, &[(1, 2, "x*y*z*(x + 2*y - 1)")], &[0, 2]),
    ]
}

/// Keeps the terms of degree `≤ max_degree` that only involve the first `n`
/// variables, re-embedded in `n` variables.
pub fn restrict(f: &Poly, n: usize, max_degree: u32) -> Poly {
    Poly::from_terms(
        n,
        f.terms()
            .filter(|(m, _)| m.exponents()[n..].iter().all(|&e| e == 0) && m.degree() <= max_degree)
            .map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())),
    )
}

pub fn truncate_vars(f: &Poly, n: usize) -> Poly {
    restrict(f, n, u32::MAX)
}
