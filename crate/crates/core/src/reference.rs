//! Worked examples with hand-derived closed-form differentials.
//!
//! Each [`ReferenceFormula`] writes a differential of one example as an
//! explicit operator on component tuples `(f_1, …)`. Components are tied to
//! cochain values by a [`Slot`] table: component `i` equals
//! `sign · c(tuple)`. The three-variable formulas use the cyclic pair order
//! `(e2∧e3, e3∧e1, e1∧e2)` for their outputs; the degree-2 inputs of the
//! top differentials read the third component as `c(e2, e1)`.

use crate::complex::{differential, Cochain, ComplexKind};
use crate::poly::Poly;
use crate::problem::{build_complex, parse_spec, ProblemError, ProblemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    /// `{x,y} = x` on `ℚ[x,y]`, divisor `x`.
    One,
    /// `{x,y} = x²` on `ℚ[x,y]`, divisor `x`.
    Two,
    /// `{y,z} = xyz` on `ℚ[x,y,z]`, divisor `xyz`.
    Three,
}

impl Example {
    pub const ALL: [Example; 3] = [Example::One, Example::Two, Example::Three];

    pub fn name(&self) -> &'static str {
        match self {
            Example::One => "example1",
            Example::Two => "example2",
            Example::Three => "example3",
        }
    }

    pub fn document(&self) -> &'static str {
        match self {
            Example::One => include_str!("../data/example1.json"),
            Example::Two => include_str!("../data/example2.json"),
            Example::Three => include_str!("../data/example3.json"),
        }
    }

    pub fn spec(&self) -> ProblemSpec {
        parse_spec(self.document()).expect("bundled example parses")
    }
}

/// Component `i` of a formula is `sign · c(tuple)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub tuple: Vec<usize>,
    pub sign: i32,
}

fn slots(entries: &[(&[usize], i32)]) -> Vec<Slot> {
    entries
        .iter()
        .map(|&(t, sign)| Slot {
            tuple: t.to_vec(),
            sign,
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ReferenceFormula {
    pub name: &'static str,
    pub example: Example,
    pub kind: ComplexKind,
    /// Degree of the input cochain.
    pub degree: usize,
    pub input: Vec<Slot>,
    pub output: Vec<Slot>,
    pub formula: fn(&[Poly]) -> Vec<Poly>,
    /// Printed form known not to be a differential; kept for comparison.
    pub misprint: bool,
}

fn x(n: usize) -> Poly {
    Poly::var(n, 0)
}
fn y(n: usize) -> Poly {
    Poly::var(n, 1)
}
fn z(n: usize) -> Poly {
    Poly::var(n, 2)
}
fn dx(f: &Poly) -> Poly {
    f.partial(0).expect("x")
}
fn dy(f: &Poly) -> Poly {
    f.partial(1).expect("y")
}
fn dz(f: &Poly) -> Poly {
    f.partial(2).expect("z")
}

// {x,y} = x, logarithmic Poisson
fn ex1_log_d0(f: &[Poly]) -> Vec<Poly> {
    vec![dy(&f[0]), -(&x(2) * &dx(&f[0]))]
}
fn ex1_log_d1(f: &[Poly]) -> Vec<Poly> {
    vec![&dy(&f[1]) + &(&x(2) * &dx(&f[0]))]
}

// {x,y} = x, logarithmic de Rham
fn ex1_dr_d0(f: &[Poly]) -> Vec<Poly> {
    vec![&x(2) * &dx(&f[0]), dy(&f[0])]
}
fn ex1_dr_d1(f: &[Poly]) -> Vec<Poly> {
    vec![&(&x(2) * &dx(&f[1])) - &dy(&f[0])]
}

// {x,y} = x, Poisson
fn ex1_p_d0(f: &[Poly]) -> Vec<Poly> {
    vec![&x(2) * &dy(&f[0]), -(&x(2) * &dx(&f[0]))]
}
fn ex1_p_d1(f: &[Poly]) -> Vec<Poly> {
    vec![&(&(&x(2) * &dy(&f[1])) + &(&x(2) * &dx(&f[0]))) - &f[0]]
}

// {x,y} = x², logarithmic Poisson
fn ex2_log_d0(f: &[Poly]) -> Vec<Poly> {
    let x = x(2);
    vec![&x * &dy(&f[0]), -(&(&x * &x) * &dx(&f[0]))]
}
fn ex2_log_d1(f: &[Poly]) -> Vec<Poly> {
    let x = x(2);
    vec![&(&(&x * &dy(&f[1])) + &(&(&x * &x) * &dx(&f[0]))) - &(&x * &f[0])]
}

// {x,y} = x², Poisson
fn ex2_p_d0(f: &[Poly]) -> Vec<Poly> {
    let xx = &x(2) * &x(2);
    vec![&xx * &dy(&f[0]), -(&xx * &dx(&f[0]))]
}
fn ex2_p_d1(f: &[Poly]) -> Vec<Poly> {
    let x = x(2);
    let xx = &x * &x;
    vec![&(&(&xx * &dx(&f[0])) + &(&xx * &dy(&f[1]))) - &(&(&x * &f[0]) * &Poly::from_int(2, 2))]
}

// {y,z} = xyz, logarithmic Poisson
fn ex3_log_d0(f: &[Poly]) -> Vec<Poly> {
    let (x, y, z) = (x(3), y(3), z(3));
    vec![Poly::zero(3), &(&x * &z) * &dz(&f[0]), -(&(&x * &y) * &dy(&f[0]))]
}
fn ex3_log_d1(f: &[Poly]) -> Vec<Poly> {
    let (x, y, z) = (x(3), y(3), z(3));
    let (xy, xz) = (&x * &y, &x * &z);
    vec![
        &(&(&xz * &dz(&f[2])) + &(&xy * &dy(&f[1]))) - &(&x * &f[0]),
        -(&xy * &dy(&f[0])),
        -(&xz * &dz(&f[0])),
    ]
}
fn ex3_log_d2(f: &[Poly]) -> Vec<Poly> {
    let (x, y, z) = (x(3), y(3), z(3));
    vec![&(&(&x * &z) * &dz(&f[1])) + &(&(&x * &y) * &dy(&f[2]))]
}

// {y,z} = xyz, Poisson
fn ex3_p_d0(f: &[Poly]) -> Vec<Poly> {
    let xyz = &(&x(3) * &y(3)) * &z(3);
    vec![Poly::zero(3), &xyz * &dz(&f[0]), -(&xyz * &dy(&f[0]))]
}
fn ex3_p_d1(f: &[Poly]) -> Vec<Poly> {
    let (x, y, z) = (x(3), y(3), z(3));
    let xyz = &(&x * &y) * &z;
    let first = &(&(&xyz * &dz(&f[2])) + &(&xyz * &dy(&f[1])))
        - &(&(&(&(&y * &z) * &f[0]) + &(&(&x * &z) * &f[1])) + &(&(&x * &y) * &f[2]));
    vec![first, -(&xyz * &dy(&f[0])), -(&xyz * &dz(&f[0]))]
}
/// As printed: `xyz(∂_z f_2 + ∂_y f_3)`.
fn ex3_p_d2_printed(f: &[Poly]) -> Vec<Poly> {
    let xyz = &(&x(3) * &y(3)) * &z(3);
    vec![&xyz * &(&dz(&f[1]) + &dy(&f[2]))]
}
/// With the zero-order terms coming from `[dy, dz] = d(xyz)`.
fn ex3_p_d2(f: &[Poly]) -> Vec<Poly> {
    let (x, y, z) = (x(3), y(3), z(3));
    let xyz = &(&x * &y) * &z;
    vec![&(&xyz * &(&dz(&f[1]) + &dy(&f[2]))) - &(&(&(&x * &y) * &f[1]) + &(&(&x * &z) * &f[2]))]
}

/// Every hard-coded differential, in a fixed order.
pub fn formulas() -> Vec<ReferenceFormula> {
    use ComplexKind::*;
    let scalar = || slots(&[(&[], 1)]);
    let pair1 = || slots(&[(&[0], 1), (&[1], 1)]);
    let pair2 = || slots(&[(&[0, 1], 1)]);
    let triple1 = || slots(&[(&[0], 1), (&[1], 1), (&[2], 1)]);
    let cyclic = || slots(&[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)]);
    let top_input = || slots(&[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], -1)]);
    let top = || slots(&[(&[0, 1, 2], 1)]);
    let f = |name, example, kind, degree, input, output, formula| ReferenceFormula {
        name,
        example,
        kind,
        degree,
        input,
        output,
        formula,
        misprint: false,
    };
    let mut out = vec![
        f("example1 log-poisson d0", Example::One, LogPoisson, 0, scalar(), pair1(), ex1_log_d0 as fn(&[Poly]) -> Vec<Poly>),
        f("example1 log-poisson d1", Example::One, LogPoisson, 1, pair1(), pair2(), ex1_log_d1),
        f("example1 log-derham d0", Example::One, LogDeRham, 0, scalar(), pair1(), ex1_dr_d0),
        f("example1 log-derham d1", Example::One, LogDeRham, 1, pair1(), pair2(), ex1_dr_d1),
        f("example1 poisson d0", Example::One, Poisson, 0, scalar(), pair1(), ex1_p_d0),
        f("example1 poisson d1", Example::One, Poisson, 1, pair1(), pair2(), ex1_p_d1),
        f("example2 log-poisson d0", Example::Two, LogPoisson, 0, scalar(), pair1(), ex2_log_d0),
        f("example2 log-poisson d1", Example::Two, LogPoisson, 1, pair1(), pair2(), ex2_log_d1),
        f("example2 poisson d0", Example::Two, Poisson, 0, scalar(), pair1(), ex2_p_d0),
        f("example2 poisson d1", Example::Two, Poisson, 1, pair1(), pair2(), ex2_p_d1),
        f("example3 log-poisson d0", Example::Three, LogPoisson, 0, scalar(), triple1(), ex3_log_d0),
        f("example3 log-poisson d1", Example::Three, LogPoisson, 1, triple1(), cyclic(), ex3_log_d1),
        f("example3 log-poisson d2", Example::Three, LogPoisson, 2, top_input(), top(), ex3_log_d2),
        f("example3 poisson d0", Example::Three, Poisson, 0, scalar(), triple1(), ex3_p_d0),
        f("example3 poisson d1", Example::Three, Poisson, 1, triple1(), cyclic(), ex3_p_d1),
        f("example3 poisson d2", Example::Three, Poisson, 2, top_input(), top(), ex3_p_d2),
    ];
    let mut printed = f(
        "example3 poisson d2 (printed)",
        Example::Three,
        Poisson,
        2,
        top_input(),
        top(),
        ex3_p_d2_printed,
    );
    printed.misprint = true;
    out.push(printed);
    out
}

impl ReferenceFormula {
    fn signed(p: &Poly, sign: i32) -> Poly {
        if sign < 0 {
            -p
        } else {
            p.clone()
        }
    }

    /// The cochain whose components are `inputs`.
    pub fn input_cochain(&self, inputs: &[Poly]) -> Cochain {
        let n = self.example.spec().nvars();
        let mut c = Cochain::zero(self.degree, n);
        for (slot, f) in self.input.iter().zip(inputs) {
            c.set(&slot.tuple, Self::signed(f, slot.sign));
        }
        c
    }

    /// The engine's differential, read back through the output slots.
    pub fn generated(&self, inputs: &[Poly]) -> Result<Vec<Poly>, ProblemError> {
        let data = build_complex(&self.example.spec(), self.kind)?;
        let dc = differential(&data, &self.input_cochain(inputs));
        Ok(self
            .output
            .iter()
            .map(|slot| Self::signed(&dc.eval(&slot.tuple), slot.sign))
            .collect())
    }

    pub fn expected(&self, inputs: &[Poly]) -> Vec<Poly> {
        (self.formula)(inputs)
    }

    pub fn agrees(&self, inputs: &[Poly]) -> Result<bool, ProblemError> {
        Ok(self.generated(inputs)? == self.expected(inputs))
    }
}
