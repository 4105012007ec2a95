//! Poisson brackets on polynomial algebras.
//!
//! A bracket is stored by its values on coordinate pairs `{x_i, x_j}`,
//! `i < j`, and extended to arbitrary polynomials as a biderivation.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::poly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("bracket pair ({0}, {0}) is not allowed; {{x, x}} is always 0")]
    DiagonalPair(usize),
    #[error("divisor generator is the zero polynomial")]
    ZeroGenerator,
    #[error("divisor generator {0} is not of the form c*x_j^m")]
    Unsupported(String),
    #[error("divisor variable {0} appears in more than one generator")]
    RepeatedVariable(String),
}

/// A derivation `Σ coeffs[j] ∂_j` of the polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        if let Some(first) = coeffs.first() {
            let n = first.nvars();
            assert!(
                coeffs.iter().all(|c| c.nvars() == n) && coeffs.len() == n,
                "derivation needs one coefficient per variable"
            );
        }
        Derivation { coeffs }
    }

    pub fn zero(nvars: usize) -> Self {
        Derivation {
            coeffs: vec![Poly::zero(nvars); nvars],
        }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(j).expect("derivation arity");
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// `[self, other] = self∘other − other∘self`, again a derivation.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        Derivation {
            coeffs: (0..self.nvars())
                .map(|j| {
                    let xj = Poly::var(self.nvars(), j);
                    &self.apply(&other.apply(&xj)) - &other.apply(&self.apply(&xj))
                })
                .collect(),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::poly::default_names(self.nvars());
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({c})∂_{n}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    names: Vec<String>,
    // {x_i, x_j} for i < j; absent pairs are zero
    pairs: BTreeMap<(usize, usize), Poly>,
}

impl PoissonStructure {
    /// The zero bracket on the named variables.
    pub fn new(names: Vec<String>) -> Self {
        PoissonStructure {
            names,
            pairs: BTreeMap::new(),
        }
    }

    /// Convenience constructor from `(i, j, {x_i, x_j})` triples.
    pub fn from_pairs(
        names: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize, Poly)>,
    ) -> Result<Self, PoissonError> {
        let mut p = Self::new(names);
        for (i, j, v) in pairs {
            p.set(i, j, v)?;
        }
        Ok(p)
    }

    /// Sets `{x_i, x_j} = value`; the opposite order is implied by skew symmetry.
    pub fn set(&mut self, i: usize, j: usize, value: Poly) -> Result<(), PoissonError> {
        let n = self.nvars();
        for idx in [i, j] {
            if idx >= n {
                return Err(PolyError::IndexOutOfRange { index: idx, nvars: n }.into());
            }
        }
        if value.nvars() != n {
            return Err(PolyError::VariableMismatch {
                left: n,
                right: value.nvars(),
            }
            .into());
        }
        if i == j {
            return Err(PoissonError::DiagonalPair(i));
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), -value) };
        if value.is_zero() {
            self.pairs.remove(&key);
        } else {
            self.pairs.insert(key, value);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `{x_i, x_j}` for any ordered pair.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Poly::zero(self.nvars()),
            Less => self
                .pairs
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Poly::zero(self.nvars())),
            Greater => -self.get(j, i),
        }
    }

    /// Nonzero stored pairs `(i, j, {x_i, x_j})` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.pairs.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    fn check(&self, f: &Poly) -> Result<(), PoissonError> {
        if f.nvars() == self.nvars() {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.nvars(),
                right: f.nvars(),
            }
            .into())
        }
    }

    /// `{f, g} = Σ_{i<j} {x_i, x_j} (∂_i f ∂_j g − ∂_j f ∂_i g)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
        self.check(f)?;
        self.check(g)?;
        let n = self.nvars();
        let df: Vec<Poly> = (0..n).map(|j| f.partial(j)).collect::<Result<_, _>>()?;
        let dg: Vec<Poly> = (0..n).map(|j| g.partial(j)).collect::<Result<_, _>>()?;
        let mut out = Poly::zero(n);
        for (&(i, j), pij) in &self.pairs {
            let cross = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !cross.is_zero() {
                out += &(pij * &cross);
            }
        }
        Ok(out)
    }

    /// `{x_i,{x_j,x_k}} + {x_j,{x_k,x_i}} + {x_k,{x_i,x_j}}`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Result<Poly, PoissonError> {
        let n = self.nvars();
        let x = |a: usize| Poly::var(n, a);
        for idx in [i, j, k] {
            if idx >= n {
                return Err(PolyError::IndexOutOfRange { index: idx, nvars: n }.into());
            }
        }
        Ok(self.bracket(&x(i), &self.get(j, k))?
            + self.bracket(&x(j), &self.get(k, i))?
            + self.bracket(&x(k), &self.get(i, j))?)
    }

    /// Jacobiators on every coordinate triple; vanishing on all of them is
    /// equivalent to the Jacobi identity for a biderivation.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.nvars();
        let mut failures = Vec::new();
        let mut triples = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    triples += 1;
                    let jac = self.jacobiator(i, j, k).expect("indices in range");
                    if !jac.is_zero() {
                        failures.push((i, j, k, jac));
                    }
                }
            }
        }
        JacobiReport { triples, failures }
    }

    /// The Hamiltonian derivation `{f, -}`.
    pub fn hamiltonian(&self, f: &Poly) -> Result<Derivation, PoissonError> {
        let n = self.nvars();
        Ok(Derivation::new(
            (0..n)
                .map(|j| self.bracket(f, &Poly::var(n, j)))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// Checks `x_j | {x_k, x_j}` for every divisor variable `x_j` and every
    /// generator `x_k`. By the Leibniz rule this makes every Hamiltonian
    /// derivation principal logarithmic along the divisor.
    pub fn is_log_principal(&self, divisor: &LogDivisorSpec) -> LogPrincipalReport {
        let n = self.nvars();
        let mut failures = Vec::new();
        for &j in divisor.variables() {
            let xj = Poly::var(n, j);
            for k in 0..n {
                let b = self.get(k, j);
                if b.exact_divide(&xj).is_err() {
                    failures.push(LogPrincipalFailure {
                        generator: k,
                        divisor_variable: j,
                        bracket: b,
                    });
                }
            }
        }
        LogPrincipalReport { failures }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    /// Number of coordinate triples examined; zero means a vacuous pass.
    pub triples: usize,
    pub failures: Vec<(usize, usize, usize, Poly)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn vacuous(&self) -> bool {
        self.triples == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogPrincipalFailure {
    pub generator: usize,
    pub divisor_variable: usize,
    /// `{x_generator, x_divisor_variable}`, not divisible by the divisor variable.
    pub bracket: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogPrincipalReport {
    pub failures: Vec<LogPrincipalFailure>,
}

impl LogPrincipalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of normalizing `u = c·x_j^m` to the variable `x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeNormalization {
    pub variable: usize,
    /// `m`, with `du/u = m·dx_j/x_j`.
    pub multiplicity: u32,
}

/// Reduces a single-variable monomial divisor generator to its variable.
pub fn normalize_squarefree(u: &Poly) -> Result<SquarefreeNormalization, PoissonError> {
    if u.is_zero() {
        return Err(PoissonError::ZeroGenerator);
    }
    let unsupported = || PoissonError::Unsupported(u.to_string());
    if u.num_terms() != 1 {
        return Err(unsupported());
    }
    let (m, _) = u.leading_term().expect("nonzero");
    let mut support = m.exponents().iter().enumerate().filter(|(_, e)| **e > 0);
    match (support.next(), support.next()) {
        (Some((variable, &multiplicity)), None) => Ok(SquarefreeNormalization {
            variable,
            multiplicity,
        }),
        _ => Err(unsupported()),
    }
}

/// The divisor generators `S = {u_1, …, u_p}` and their normalization to
/// distinct coordinate variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDivisorSpec {
    generators: Vec<Poly>,
    normalized: Vec<SquarefreeNormalization>,
}

impl LogDivisorSpec {
    pub fn new(generators: Vec<Poly>) -> Result<Self, PoissonError> {
        let mut normalized: Vec<SquarefreeNormalization> = Vec::with_capacity(generators.len());
        for u in &generators {
            let norm = normalize_squarefree(u)?;
            if normalized.iter().any(|n| n.variable == norm.variable) {
                return Err(PoissonError::RepeatedVariable(
                    Poly::var(u.nvars(), norm.variable).to_string(),
                ));
            }
            normalized.push(norm);
        }
        Ok(LogDivisorSpec {
            generators,
            normalized,
        })
    }

    /// Divisor along the given coordinate variables.
    pub fn from_variables(nvars: usize, vars: &[usize]) -> Result<Self, PoissonError> {
        Self::new(vars.iter().map(|&j| Poly::var(nvars, j)).collect())
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn normalizations(&self) -> &[SquarefreeNormalization] {
        &self.normalized
    }

    /// Normalized divisor variables, in generator order.
    pub fn variables(&self) -> impl Iterator<Item = &usize> {
        self.normalized.iter().map(|n| &n.variable)
    }

    pub fn contains_variable(&self, j: usize) -> bool {
        self.normalized.iter().any(|n| n.variable == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        crate::poly::default_names(n)
    }

    fn p2(s: &str) -> Poly {
        Poly::parse(s, &["x", "y"]).unwrap()
    }

    fn p3(s: &str) -> Poly {
        Poly::parse(s, &["x", "y", "z"]).unwrap()
    }

    fn example1() -> PoissonStructure {
        PoissonStructure::from_pairs(names(2), [(0, 1, p2("x"))]).unwrap()
    }

    fn example3() -> PoissonStructure {
        PoissonStructure::from_pairs(names(3), [(1, 2, p3("x*y*z"))]).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let p = example1();
        assert_eq!(p.bracket(&p2("x"), &p2("y")).unwrap(), p2("x"));
        let f = p2("x^2*y + 3*y^3");
        assert!(p.bracket(&f, &f).unwrap().is_zero());
        let q = example3();
        assert_eq!(q.bracket(&p3("y^2"), &p3("z")).unwrap(), p3("2*x*y^2*z"));
    }

    #[test]
    fn bracket_rejects_foreign_polys() {
        assert!(example1().bracket(&p3("x"), &p3("y")).is_err());
    }

    #[test]
    fn skew_storage() {
        let mut p = PoissonStructure::new(names(2));
        p.set(1, 0, p2("x")).unwrap();
        assert_eq!(p.get(0, 1), -p2("x"));
        assert_eq!(p.set(1, 1, p2("x")), Err(PoissonError::DiagonalPair(1)));
    }

    #[test]
    fn jacobiators() {
        let r = example1().check_jacobi();
        assert!(r.passed() && r.vacuous());
        assert!(example3().jacobiator(0, 1, 2).unwrap().is_zero());
        let lie = PoissonStructure::from_pairs(names(3), [(0, 1, p3("z"))]).unwrap();
        assert!(lie.jacobiator(0, 1, 2).unwrap().is_zero());
        // {x,y}=z, {y,z}=y: {x,{y,z}} = z survives
        let bad = PoissonStructure::from_pairs(names(3), [(0, 1, p3("z")), (1, 2, p3("y"))])
            .unwrap();
        let report = bad.check_jacobi();
        assert_eq!(report.failures, vec![(0, 1, 2, p3("z"))]);
    }

    #[test]
    fn hamiltonians() {
        let p = example1();
        assert_eq!(
            p.hamiltonian(&p2("x")).unwrap(),
            Derivation::new(vec![Poly::zero(2), p2("x")])
        );
        assert_eq!(
            p.hamiltonian(&p2("y")).unwrap(),
            Derivation::new(vec![p2("-x"), Poly::zero(2)])
        );
        assert!(p.hamiltonian(&Poly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn squarefree_normalization() {
        let n = normalize_squarefree(&p2("x^2")).unwrap();
        assert_eq!((n.variable, n.multiplicity), (0, 2));
        assert_eq!(normalize_squarefree(&p2("x")).unwrap().variable, 0);
        assert_eq!(normalize_squarefree(&p2("-3*y^4")).unwrap().variable, 1);
        assert!(matches!(
            normalize_squarefree(&p2("x + y")),
            Err(PoissonError::Unsupported(_))
        ));
        assert!(matches!(
            normalize_squarefree(&p2("x*y")),
            Err(PoissonError::Unsupported(_))
        ));
        assert!(matches!(
            normalize_squarefree(&p2("5")),
            Err(PoissonError::Unsupported(_))
        ));
        assert_eq!(
            normalize_squarefree(&Poly::zero(2)),
            Err(PoissonError::ZeroGenerator)
        );
        assert!(matches!(
            LogDivisorSpec::new(vec![p2("x"), p2("2*x^3")]),
            Err(PoissonError::RepeatedVariable(_))
        ));
    }

    #[test]
    fn log_principal_examples() {
        let s = LogDivisorSpec::new(vec![p2("x")]).unwrap();
        assert!(example1().is_log_principal(&s).passed());

        let s3 = LogDivisorSpec::from_variables(3, &[0, 1, 2]).unwrap();
        assert!(example3().is_log_principal(&s3).passed());

        let symplectic = PoissonStructure::from_pairs(names(2), [(0, 1, p2("1"))]).unwrap();
        let report = symplectic.is_log_principal(&s);
        assert!(!report.passed());
        assert_eq!(report.failures[0].generator, 1);
        assert_eq!(report.failures[0].divisor_variable, 0);
        assert_eq!(report.failures[0].bracket, p2("-1"));
    }
}
