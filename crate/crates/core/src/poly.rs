//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so iteration is deterministic and the leading term
//! is the last entry. Zero coefficients are never stored, which makes the
//! term map a canonical form: two equal polynomials compare equal
//! structurally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub mod parse;

pub use parse::ParseError;

/// Exact coefficient field.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// first variable, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree exactly `degree`.
///
/// Order is descending lexicographic in the exponent vector, so for two
/// variables and degree 2 the result is `[x^2, x*y, y^2]`.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, remaining - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
    out
}

/// Monomials of total degree `0..=max_degree`, degree-ascending, each degree
/// block in the order of [`monomials_of_degree`].
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    (0..=max_degree)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    /// The coordinate function `x_j`.
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable index {j} out of range");
        Self::term(Monomial::var(nvars, j), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a constant polynomial; `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_same(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_j`.
    pub fn partial(&self, j: usize) -> Result<Poly, PolyError> {
        if j >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: j,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[j] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// `x_j * ∂_j f`, which keeps the monomial support and scales each term
    /// by its `x_j` exponent.
    pub fn euler(&self, j: usize) -> Poly {
        assert!(j < self.nvars, "variable index {j} out of range");
        Poly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c * Rational::from_integer(BigInt::from(m.0[j])))),
        )
    }

    /// Exact quotient `f / g`, or [`PolyError::NotDivisible`].
    ///
    /// Runs graded-lex division by a single divisor; the remainder is zero
    /// exactly when `g` divides `f`, and the procedure stops at the first
    /// leading term that `lt(g)` does not divide.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check_same(g)?;
        let (lm, lc) = g.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or(PolyError::NotDivisible)?;
            let qc = c / &lc;
            rem = &rem - &g.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renders the polynomial with the given variable names in the textual
    /// syntax accepted by [`Poly::parse`]. Terms appear in descending
    /// graded-lex order.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        assert_eq!(names.len(), self.nvars, "name list length mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| {
                    if *e == 1 {
                        n.as_ref().to_string()
                    } else {
                        format!("{}^{}", n.as_ref(), e)
                    }
                })
                .collect();
            let coeff_is_one = abs.is_one();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !coeff_is_one {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses the textual syntax `x^2*y - 3/2*z` over the declared names.
    pub fn parse(text: &str, names: &[impl AsRef<str>]) -> Result<Poly, ParseError> {
        parse::parse_poly(text, names)
    }
}

/// Default variable names used by `Display`: `x, y, z` for up to three
/// variables, `x1..xn` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.nvars)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_same(rhs).expect("polynomial addition");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_same(rhs).expect("polynomial subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn add_cancels_and_merges() {
        assert_eq!(&p("x + y") + &p("-x"), p("y"));
        assert_eq!(&Poly::zero(3) + &p("x*z - 2"), p("x*z - 2"));
        assert_eq!(&p("x^2*y + 1") + &p("x^2*y"), p("2*x^2*y + 1"));
        let f = p("x^3 - 7/3*y*z + 5");
        assert!((&f + &(-&f)).terms().next().is_none());
    }

    #[test]
    fn mul_basic() {
        assert_eq!(&p("x") * &p("y"), p("x*y"));
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert!((&p("x^2 + 3*z") * &Poly::zero(3)).is_zero());
        assert_eq!((&p("x^2 + y") * &p("z^3 - 1")).degree(), Some(5));
    }

    #[test]
    fn mismatched_arity_is_an_error() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert_eq!(
            a.checked_add(&b),
            Err(PolyError::VariableMismatch { left: 2, right: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
        assert!(a.exact_divide(&b).is_err());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x^2*y").partial(0).unwrap(), p("2*x*y"));
        assert!(p("x^2").partial(1).unwrap().is_zero());
        assert_eq!(p("x*y*z").partial(2).unwrap(), p("x*y"));
        assert_eq!(
            p("x").partial(3),
            Err(PolyError::IndexOutOfRange { index: 3, nvars: 3 })
        );
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2*y + x^3").exact_divide(&p("x")).unwrap(), p("x*y + x^2"));
        assert_eq!(p("x*y*z").exact_divide(&p("y")).unwrap(), p("x*z"));
        assert_eq!(p("x + 1").exact_divide(&p("x")), Err(PolyError::NotDivisible));
        assert_eq!(p("x").exact_divide(&Poly::zero(3)), Err(PolyError::DivisionByZero));
        assert_eq!(
            p("x^2 - y^2").exact_divide(&p("x + y")).unwrap(),
            p("x - y")
        );
        assert!(Poly::zero(3).exact_divide(&p("x")).unwrap().is_zero());
    }

    #[test]
    fn monomial_enumeration() {
        let two = monomials_of_degree(2, 2);
        assert_eq!(
            two,
            vec![
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![1, 1]),
                Monomial::new(vec![0, 2])
            ]
        );
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 4).len(), 35);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![0, 3]);
        let b = Monomial::new(vec![1, 0]);
        let c = Monomial::new(vec![2, 1]);
        let d = Monomial::new(vec![1, 2]);
        assert!(b < a);
        assert!(a < d && d < c);
        assert_eq!(p("y^3 + x").leading_term().unwrap().0, &Monomial::new(vec![0, 3, 0]));
    }

    #[test]
    fn rendering_round_trips() {
        let f = p("-3/2*x^2*y + z - 1 + 4*x*y*z");
        let s = f.to_string_with(&["x", "y", "z"]);
        assert_eq!(s, "-3/2*x^2*y + 4*x*y*z + z - 1");
        assert_eq!(p(&s), f);
        assert_eq!(Poly::zero(3).to_string(), "0");
        assert_eq!(p("-x").to_string(), "-x");
    }

    #[test]
    fn euler_operator() {
        assert_eq!(p("x^3*y + x + y").euler(0), p("3*x^3*y + x"));
    }
}
