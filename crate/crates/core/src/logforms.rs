//! Logarithmic one-forms along a normal-crossing coordinate divisor.
//!
//! With the divisor normalized to distinct coordinate variables, the module
//! of logarithmic differentials is free on one form per variable: `dx_j/x_j`
//! where `x_j` is a divisor variable and `dx_l` elsewhere. Everything here
//! works in that basis: the logarithmic Hamiltonian map, the bracket on
//! forms, the log-symplectic determinant test and the central extension by
//! the algebra itself.

use std::fmt;

use thiserror::Error;

use crate::poisson::{Derivation, LogDivisorSpec, PoissonError, PoissonStructure};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogFormsError {
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("{context}: {value} is not divisible by {divisor}; the bracket is not logarithmic principal along the divisor")]
    DivisionObstruction {
        context: String,
        value: String,
        divisor: String,
    },
    #[error("basis has {basis} forms but the Poisson structure has {poisson} variables")]
    SizeMismatch { basis: usize, poisson: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisForm {
    /// `dx_j / x_j`
    LogVar(usize),
    /// `dx_j`
    Exact(usize),
}

impl BasisForm {
    pub fn variable(&self) -> usize {
        match *self {
            BasisForm::LogVar(j) | BasisForm::Exact(j) => j,
        }
    }

    pub fn is_log(&self) -> bool {
        matches!(self, BasisForm::LogVar(_))
    }

    /// `x_j` for `dx_j/x_j`, `1` for `dx_j`.
    pub fn divisor(&self, nvars: usize) -> Poly {
        match *self {
            BasisForm::LogVar(j) => Poly::var(nvars, j),
            BasisForm::Exact(_) => Poly::one(nvars),
        }
    }

    pub fn label(&self, names: &[String]) -> String {
        match *self {
            BasisForm::LogVar(j) => format!("d{0}/{0}", names[j]),
            BasisForm::Exact(j) => format!("d{}", names[j]),
        }
    }
}

/// Ordered basis of the logarithmic differentials, one form per variable in
/// declared variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBasis {
    forms: Vec<BasisForm>,
}

impl LogBasis {
    pub fn new(nvars: usize, divisor: &LogDivisorSpec) -> Self {
        LogBasis {
            forms: (0..nvars)
                .map(|j| {
                    if divisor.contains_variable(j) {
                        BasisForm::LogVar(j)
                    } else {
                        BasisForm::Exact(j)
                    }
                })
                .collect(),
        }
    }

    /// The basis `dx_1, …, dx_n` of the ordinary Kähler differentials.
    pub fn exact(nvars: usize) -> Self {
        LogBasis {
            forms: (0..nvars).map(BasisForm::Exact).collect(),
        }
    }

    pub fn forms(&self) -> &[BasisForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn labels(&self, names: &[String]) -> Vec<String> {
        self.forms.iter().map(|f| f.label(names)).collect()
    }
}

/// `Σ coeffs[i]·forms[i]` over a [`LogBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    coeffs: Vec<Poly>,
}

impl OneForm {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        OneForm { coeffs }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        OneForm {
            coeffs: vec![Poly::zero(nvars); rank],
        }
    }

    /// `f·e_i`.
    pub fn basis(rank: usize, i: usize, f: Poly) -> Self {
        let nvars = f.nvars();
        let mut out = Self::zero(rank, nvars);
        out.coeffs[i] = f;
        out
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> OneForm {
        OneForm {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_sizes(poisson: &PoissonStructure, basis: &LogBasis) -> Result<(), LogFormsError> {
    if poisson.nvars() == basis.len() {
        Ok(())
    } else {
        Err(LogFormsError::SizeMismatch {
            basis: basis.len(),
            poisson: poisson.nvars(),
        })
    }
}

fn divide(value: &Poly, divisor: &Poly, context: impl FnOnce() -> String) -> Result<Poly, LogFormsError> {
    value
        .exact_divide(divisor)
        .map_err(|_| LogFormsError::DivisionObstruction {
            context: context(),
            value: value.to_string(),
            divisor: divisor.to_string(),
        })
}

/// Logarithmic Hamiltonian of a basis form: `H(dx_j)` for `dx_j`, and
/// `(1/x_j)·H(dx_j)` for `dx_j/x_j`.
pub fn htilde_basis(poisson: &PoissonStructure, form: BasisForm) -> Result<Derivation, LogFormsError> {
    let n = poisson.nvars();
    let j = form.variable();
    let h = poisson.hamiltonian(&Poly::var(n, j))?;
    match form {
        BasisForm::Exact(_) => Ok(h),
        BasisForm::LogVar(_) => {
            let xj = Poly::var(n, j);
            let coeffs = h
                .coeffs()
                .iter()
                .map(|c| divide(c, &xj, || format!("H(d{0})/{0}", Poly::var(n, j))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Derivation::new(coeffs))
        }
    }
}

/// Logarithmic Hamiltonians of every basis form, in basis order.
pub fn htilde_all(poisson: &PoissonStructure, basis: &LogBasis) -> Result<Vec<Derivation>, LogFormsError> {
    check_sizes(poisson, basis)?;
    basis.forms().iter().map(|&e| htilde_basis(poisson, e)).collect()
}

/// `H̃(α) = Σ a_i H̃(e_i)`.
pub fn htilde(poisson: &PoissonStructure, basis: &LogBasis, alpha: &OneForm) -> Result<Derivation, LogFormsError> {
    let hs = htilde_all(poisson, basis)?;
    Ok(combine(&hs, alpha, poisson.nvars()))
}

fn combine(hs: &[Derivation], alpha: &OneForm, nvars: usize) -> Derivation {
    hs.iter()
        .zip(alpha.coeffs())
        .filter(|(_, a)| !a.is_zero())
        .fold(Derivation::zero(nvars), |acc, (h, a)| acc.add(&h.scale(a)))
}

/// `df` in the basis: `x_j ∂_j f` on `dx_j/x_j`, `∂_l f` on `dx_l`.
pub fn express_d(basis: &LogBasis, f: &Poly) -> OneForm {
    OneForm::new(
        basis
            .forms()
            .iter()
            .map(|form| match *form {
                BasisForm::LogVar(j) => f.euler(j),
                BasisForm::Exact(l) => f.partial(l).expect("basis variable in range"),
            })
            .collect(),
    )
}

/// The scalar `s_ij = π(e_i, e_j) = {x_a, x_b} / (div(e_i)·div(e_j))`.
///
/// Skew in `(i, j)`. The division is exact whenever the bracket is
/// logarithmic principal along the divisor.
pub fn pi_value(
    poisson: &PoissonStructure,
    basis: &LogBasis,
    i: usize,
    j: usize,
) -> Result<Poly, LogFormsError> {
    check_sizes(poisson, basis)?;
    let n = poisson.nvars();
    let (ei, ej) = (basis.forms()[i], basis.forms()[j]);
    let b = poisson.get(ei.variable(), ej.variable());
    let div = &ei.divisor(n) * &ej.divisor(n);
    divide(&b, &div, || format!("π(e{}, e{})", i + 1, j + 1))
}

/// `[e_i, e_j]_s = d(s_ij)` expressed in the basis.
pub fn structure_constants(
    poisson: &PoissonStructure,
    basis: &LogBasis,
    i: usize,
    j: usize,
) -> Result<OneForm, LogFormsError> {
    Ok(express_d(basis, &pi_value(poisson, basis, i, j)?))
}

/// Full table of `s_ij` (row-major, skew, zero diagonal).
pub fn pi_matrix(poisson: &PoissonStructure, basis: &LogBasis) -> Result<Vec<Vec<Poly>>, LogFormsError> {
    let r = basis.len();
    let mut m = vec![vec![Poly::zero(poisson.nvars()); r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let s = pi_value(poisson, basis, i, j)?;
            m[j][i] = -&s;
            m[i][j] = s;
        }
    }
    Ok(m)
}

/// The bracket of logarithmic forms, extended from the basis by
/// `[α, aβ] = H̃(α)(a)β + a[α, β]`:
///
/// `[α, β] = Σ a_i b_j [e_i, e_j] + Σ_j H̃(α)(b_j) e_j − Σ_i H̃(β)(a_i) e_i`.
pub fn bracket_s(
    poisson: &PoissonStructure,
    basis: &LogBasis,
    alpha: &OneForm,
    beta: &OneForm,
) -> Result<OneForm, LogFormsError> {
    let n = poisson.nvars();
    let r = basis.len();
    let hs = htilde_all(poisson, basis)?;
    let h_alpha = combine(&hs, alpha, n);
    let h_beta = combine(&hs, beta, n);

    let mut out: Vec<Poly> = (0..r)
        .map(|j| &h_alpha.apply(&beta.coeffs()[j]) - &h_beta.apply(&alpha.coeffs()[j]))
        .collect();
    for i in 0..r {
        for j in i + 1..r {
            let ab = &(&alpha.coeffs()[i] * &beta.coeffs()[j]) - &(&alpha.coeffs()[j] * &beta.coeffs()[i]);
            if ab.is_zero() {
                continue;
            }
            let sc = structure_constants(poisson, basis, i, j)?;
            for (o, c) in out.iter_mut().zip(sc.coeffs()) {
                if !c.is_zero() {
                    *o += &(&ab * c);
                }
            }
        }
    }
    Ok(OneForm::new(out))
}

/// Matrix of `H̃` in the basis dual to `B`: column `i` holds `H̃(e_i)`
/// written on `x_j∂_j` (rows of `dx_j/x_j`) and `∂_l` (rows of `dx_l`).
pub fn htilde_matrix(poisson: &PoissonStructure, basis: &LogBasis) -> Result<Vec<Vec<Poly>>, LogFormsError> {
    let n = poisson.nvars();
    let hs = htilde_all(poisson, basis)?;
    let r = basis.len();
    let mut m = vec![vec![Poly::zero(n); r]; r];
    for (col, h) in hs.iter().enumerate() {
        for (row, form) in basis.forms().iter().enumerate() {
            let c = &h.coeffs()[form.variable()];
            m[row][col] = match form {
                BasisForm::Exact(_) => c.clone(),
                BasisForm::LogVar(j) => divide(c, &Poly::var(n, *j), || {
                    format!("H̃(e{}) on the {} row", col + 1, Poly::var(n, *j))
                })?,
            };
        }
    }
    Ok(m)
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let r = m.len();
    match r {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut out = Poly::zero(nvars);
            for col in 0..r {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor, nvars);
                if col % 2 == 0 {
                    out += &term;
                } else {
                    out -= &term;
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSymplecticVerdict {
    pub matrix: Vec<Vec<Poly>>,
    pub determinant: Poly,
    /// The determinant is a nonzero constant, i.e. a unit of the ring.
    pub is_logsymplectic: bool,
}

pub fn log_symplectic(poisson: &PoissonStructure, basis: &LogBasis) -> Result<LogSymplecticVerdict, LogFormsError> {
    let matrix = htilde_matrix(poisson, basis)?;
    let det = determinant(&matrix, poisson.nvars());
    let is_logsymplectic = !det.is_zero() && det.is_constant();
    Ok(LogSymplecticVerdict {
        matrix,
        determinant: det,
        is_logsymplectic,
    })
}

/// Bracket on `A ⊕ Ω_A(log I)`:
///
/// `[a+α, b+β] = {a,b} + π(α,β) + H̃(α)b − H̃(β)a + [α,β]`.
pub fn extension_bracket(
    poisson: &PoissonStructure,
    basis: &LogBasis,
    (a, alpha): (&Poly, &OneForm),
    (b, beta): (&Poly, &OneForm),
) -> Result<(Poly, OneForm), LogFormsError> {
    let n = poisson.nvars();
    let r = basis.len();
    let hs = htilde_all(poisson, basis)?;
    let pi = pi_matrix(poisson, basis)?;

    let mut scalar = poisson.bracket(a, b)?;
    for i in 0..r {
        for j in 0..r {
            if pi[i][j].is_zero() {
                continue;
            }
            let ab = &alpha.coeffs()[i] * &beta.coeffs()[j];
            if !ab.is_zero() {
                scalar += &(&ab * &pi[i][j]);
            }
        }
    }
    scalar += &combine(&hs, alpha, n).apply(b);
    scalar -= &combine(&hs, beta, n).apply(a);
    Ok((scalar, bracket_s(poisson, basis, alpha, beta)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        crate::poly::default_names(n)
    }

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &names(n)).unwrap()
    }

    fn setup(bracket: &[(usize, usize, &str)], n: usize, divisor: &[usize]) -> (PoissonStructure, LogBasis) {
        let ps = PoissonStructure::from_pairs(
            names(n),
            bracket.iter().map(|&(i, j, s)| (i, j, p(s, n))),
        )
        .unwrap();
        let s = LogDivisorSpec::from_variables(n, divisor).unwrap();
        (ps, LogBasis::new(n, &s))
    }

    fn der(cs: &[&str], n: usize) -> Derivation {
        Derivation::new(cs.iter().map(|s| p(s, n)).collect())
    }

    #[test]
    fn basis_layout() {
        let (_, b) = setup(&[(1, 2, "x*y*z")], 3, &[2, 0]);
        assert_eq!(
            b.forms(),
            &[BasisForm::LogVar(0), BasisForm::Exact(1), BasisForm::LogVar(2)]
        );
        assert_eq!(b.labels(&names(3)), vec!["dx/x", "dy", "dz/z"]);
    }

    #[test]
    fn htilde_on_basis_forms() {
        let (p1, _) = setup(&[(0, 1, "x")], 2, &[0]);
        assert_eq!(htilde_basis(&p1, BasisForm::LogVar(0)).unwrap(), der(&["0", "1"], 2));
        let (p2, _) = setup(&[(0, 1, "x^2")], 2, &[0]);
        assert_eq!(htilde_basis(&p2, BasisForm::Exact(1)).unwrap(), der(&["-x^2", "0"], 2));
        let (p3, _) = setup(&[(1, 2, "x*y*z")], 3, &[0, 1, 2]);
        assert_eq!(
            htilde_basis(&p3, BasisForm::LogVar(1)).unwrap(),
            der(&["0", "0", "x*z"], 3)
        );
    }

    #[test]
    fn htilde_obstruction_on_symplectic_bracket() {
        let (ps, _) = setup(&[(0, 1, "1")], 2, &[0]);
        assert!(matches!(
            htilde_basis(&ps, BasisForm::LogVar(0)),
            Err(LogFormsError::DivisionObstruction { .. })
        ));
    }

    #[test]
    fn express_d_examples() {
        let (_, b) = setup(&[(0, 1, "x")], 2, &[0]);
        assert_eq!(express_d(&b, &p("x", 2)), OneForm::new(vec![p("x", 2), p("0", 2)]));
        assert_eq!(express_d(&b, &p("x*y", 2)), OneForm::new(vec![p("x*y", 2), p("x", 2)]));
        assert!(express_d(&b, &p("7/2", 2)).is_zero());
    }

    #[test]
    fn structure_constant_examples() {
        let (p1, b1) = setup(&[(0, 1, "x")], 2, &[0]);
        assert!(structure_constants(&p1, &b1, 0, 1).unwrap().is_zero());
        let (p2, b2) = setup(&[(0, 1, "x^2")], 2, &[0]);
        assert_eq!(
            structure_constants(&p2, &b2, 0, 1).unwrap(),
            OneForm::new(vec![p("x", 2), p("0", 2)])
        );
        let (p3, b3) = setup(&[(1, 2, "x*y*z")], 3, &[0, 1, 2]);
        assert_eq!(
            structure_constants(&p3, &b3, 1, 2).unwrap(),
            OneForm::new(vec![p("x", 3), p("0", 3), p("0", 3)])
        );
    }

    #[test]
    fn bracket_s_examples() {
        let (ps, b) = setup(&[(0, 1, "x")], 2, &[0]);
        let e1 = OneForm::basis(2, 0, Poly::one(2));
        let e2 = OneForm::basis(2, 1, Poly::one(2));
        assert!(bracket_s(&ps, &b, &e1, &e2).unwrap().is_zero());
        let y_dy = OneForm::basis(2, 1, p("y", 2));
        assert_eq!(bracket_s(&ps, &b, &e1, &y_dy).unwrap(), e2);
        let alpha = OneForm::new(vec![p("x*y + 1", 2), p("y^2 - x", 2)]);
        assert!(bracket_s(&ps, &b, &alpha, &alpha).unwrap().is_zero());
    }

    #[test]
    fn log_symplectic_examples() {
        let (p1, b1) = setup(&[(0, 1, "x")], 2, &[0]);
        let v = log_symplectic(&p1, &b1).unwrap();
        assert_eq!(
            v.matrix,
            vec![vec![p("0", 2), p("-1", 2)], vec![p("1", 2), p("0", 2)]]
        );
        assert_eq!(v.determinant, p("1", 2));
        assert!(v.is_logsymplectic);

        let (p2, b2) = setup(&[(0, 1, "x^2")], 2, &[0]);
        let v = log_symplectic(&p2, &b2).unwrap();
        assert_eq!(v.determinant, p("x^2", 2));
        assert!(!v.is_logsymplectic);

        let (p3, b3) = setup(&[(1, 2, "x*y*z")], 3, &[0, 1, 2]);
        let v = log_symplectic(&p3, &b3).unwrap();
        assert!(v.determinant.is_zero());
        assert!(!v.is_logsymplectic);
    }

    #[test]
    fn extension_bracket_examples() {
        let (ps, b) = setup(&[(0, 1, "x")], 2, &[0]);
        let zero = Poly::zero(2);
        let zero_form = OneForm::zero(2, 2);
        let e1 = OneForm::basis(2, 0, Poly::one(2));
        let e2 = OneForm::basis(2, 1, Poly::one(2));
        let (s, f) = extension_bracket(&ps, &b, (&zero, &e1), (&zero, &e2)).unwrap();
        assert_eq!(s, Poly::one(2));
        assert!(f.is_zero());

        let (a, bb) = (p("x^2*y", 2), p("y + x", 2));
        let (s, f) = extension_bracket(&ps, &b, (&a, &zero_form), (&bb, &zero_form)).unwrap();
        assert_eq!(s, ps.bracket(&a, &bb).unwrap());
        assert!(f.is_zero());

        let beta = OneForm::new(vec![p("y", 2), p("x^3", 2)]);
        let (s, f) = extension_bracket(&ps, &b, (&Poly::one(2), &zero_form), (&zero, &beta)).unwrap();
        assert!(s.is_zero() && f.is_zero());
    }

    #[test]
    fn determinant_of_3x3() {
        let m: Vec<Vec<Poly>> = [["x", "1", "0"], ["0", "y", "2"], ["1", "0", "1"]]
            .iter()
            .map(|r| r.iter().map(|s| p(s, 2)).collect())
            .collect();
        // x(y - 0) - 1(0 - 2) + 0
        assert_eq!(determinant(&m, 2), p("x*y + 2", 2));
    }
}
