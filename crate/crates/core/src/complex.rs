//! Cochain complexes of free Lie–Rinehart algebras.
//!
//! A Lie–Rinehart algebra free on `e_1..e_r` is fixed by its anchors
//! `ρ(e_i)` and the expansions `[e_i, e_j] = Σ_l c_ij^l e_l`. Cochains are
//! alternating `A`-multilinear forms, stored by their values on strictly
//! increasing index tuples. One differential serves the Poisson complex,
//! the logarithmic Poisson complex and the logarithmic de Rham complex;
//! they differ only in their [`LieRinehartData`].

use std::collections::BTreeMap;
use std::fmt;

use crate::logforms::{self, BasisForm, LogBasis, LogFormsError};
use crate::poisson::{Derivation, LogDivisorSpec, PoissonStructure};
use crate::poly::Poly;

/// Which of the three complexes a [`LieRinehartData`] realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexKind {
    Poisson,
    LogPoisson,
    LogDeRham,
}

impl ComplexKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComplexKind::Poisson => "poisson",
            ComplexKind::LogPoisson => "log-poisson",
            ComplexKind::LogDeRham => "log-derham",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "poisson" => Some(ComplexKind::Poisson),
            "log-poisson" => Some(ComplexKind::LogPoisson),
            "log-derham" => Some(ComplexKind::LogDeRham),
            _ => None,
        }
    }

    pub const ALL: [ComplexKind; 3] = [
        ComplexKind::Poisson,
        ComplexKind::LogPoisson,
        ComplexKind::LogDeRham,
    ];
}

impl serde::Serialize for ComplexKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for ComplexKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        ComplexKind::parse(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown complex kind {s:?}")))
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRinehartData {
    nvars: usize,
    anchors: Vec<Derivation>,
    // [e_i, e_j] for i < j as coefficient vectors of length r; absent = 0
    brackets: BTreeMap<(usize, usize), Vec<Poly>>,
}

impl LieRinehartData {
    /// Panics if the anchors or bracket vectors have inconsistent sizes.
    pub fn new(nvars: usize, anchors: Vec<Derivation>, brackets: BTreeMap<(usize, usize), Vec<Poly>>) -> Self {
        let r = anchors.len();
        assert!(anchors.iter().all(|a| a.nvars() == nvars), "anchor arity");
        for (&(i, j), v) in &brackets {
            assert!(i < j && j < r, "bracket key ({i}, {j}) out of order or range");
            assert_eq!(v.len(), r, "bracket vector length");
            assert!(v.iter().all(|c| c.nvars() == nvars), "bracket coefficient arity");
        }
        let brackets = brackets
            .into_iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .collect();
        LieRinehartData {
            nvars,
            anchors,
            brackets,
        }
    }

    pub fn rank(&self) -> usize {
        self.anchors.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn anchors(&self) -> &[Derivation] {
        &self.anchors
    }

    /// `[e_i, e_j]` as a coefficient vector, for any ordered pair.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Poly> {
        let zero = || vec![Poly::zero(self.nvars); self.rank()];
        if i == j {
            return zero();
        }
        let (key, sign) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.brackets.get(&key) {
            None => zero(),
            Some(v) if sign => v.iter().map(|c| -c).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Upper bound on how far the differential raises total degree:
    /// `max(deg ρ-coefficient − 1, deg bracket coefficient, 0)`.
    pub fn shift(&self) -> u32 {
        let anchor = self
            .anchors
            .iter()
            .flat_map(|a| a.coeffs())
            .filter_map(Poly::degree)
            .map(|d| d.saturating_sub(1))
            .max()
            .unwrap_or(0);
        let brackets = self
            .brackets
            .values()
            .flatten()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0);
        anchor.max(brackets)
    }

    /// `ρ(Σ u_i e_i) = Σ u_i ρ(e_i)`.
    pub fn anchor_of(&self, u: &[Poly]) -> Derivation {
        self.anchors
            .iter()
            .zip(u)
            .filter(|(_, c)| !c.is_zero())
            .fold(Derivation::zero(self.nvars), |acc, (a, c)| acc.add(&a.scale(c)))
    }

    /// Bracket of two sections, extended from the basis by the Leibniz rule:
    /// `[u, v] = Σ u_i v_j [e_i, e_j] + ρ(u)(v_l) e_l − ρ(v)(u_l) e_l`.
    pub fn bracket_of(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let (ru, rv) = (self.anchor_of(u), self.anchor_of(v));
        let mut out: Vec<Poly> = (0..self.rank())
            .map(|l| &ru.apply(&v[l]) - &rv.apply(&u[l]))
            .collect();
        for (&(i, j), sc) in &self.brackets {
            let w = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            if w.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(sc) {
                if !c.is_zero() {
                    *o += &(&w * c);
                }
            }
        }
        out
    }

    /// Same algebra with the basis reordered: new `e'_a = e_{perm[a]}`.
    pub fn permuted(&self, perm: &[usize]) -> LieRinehartData {
        let r = self.rank();
        assert_eq!(perm.len(), r);
        let mut inverse = vec![0; r];
        for (a, &p) in perm.iter().enumerate() {
            inverse[p] = a;
        }
        let anchors = perm.iter().map(|&p| self.anchors[p].clone()).collect();
        let mut brackets = BTreeMap::new();
        for a in 0..r {
            for b in a + 1..r {
                let old = self.bracket(perm[a], perm[b]);
                let mut v = vec![Poly::zero(self.nvars); r];
                for (l, c) in old.into_iter().enumerate() {
                    v[inverse[l]] = c;
                }
                brackets.insert((a, b), v);
            }
        }
        LieRinehartData::new(self.nvars, anchors, brackets)
    }
}

/// Strictly increasing `k`-subsets of `0..r` in lexicographic order.
pub fn tuples(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= r {
        go(0, r, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Sorts `t` in place and returns the permutation sign, or `None` when an
/// index repeats.
fn sort_with_sign(t: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// An alternating `k`-cochain with polynomial values on increasing tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    nvars: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

impl Cochain {
    pub fn zero(degree: usize, nvars: usize) -> Self {
        Cochain {
            degree,
            nvars,
            comps: BTreeMap::new(),
        }
    }

    /// Constant-`0`-cochain `f`.
    pub fn function(f: Poly) -> Self {
        let mut c = Cochain::zero(0, f.nvars());
        c.set(&[], f);
        c
    }

    /// Builds from `(tuple, value)` pairs; tuples need not be sorted.
    pub fn from_components(
        degree: usize,
        nvars: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Poly)>,
    ) -> Self {
        let mut c = Cochain::zero(degree, nvars);
        for (t, v) in comps {
            c.set(&t, v);
        }
        c
    }

    /// Sets `c(e_t)`, sorting `t` and adjusting the sign. Setting a value on
    /// a tuple with a repeated index is only allowed for zero.
    pub fn set(&mut self, tuple: &[usize], value: Poly) {
        assert_eq!(tuple.len(), self.degree, "tuple length");
        assert_eq!(value.nvars(), self.nvars, "value arity");
        let mut t = tuple.to_vec();
        match sort_with_sign(&mut t) {
            None => assert!(value.is_zero(), "alternating cochain on a repeated index"),
            Some(neg) => {
                let v = if neg { -value } else { value };
                if v.is_zero() {
                    self.comps.remove(&t);
                } else {
                    self.comps.insert(t, v);
                }
            }
        }
    }

    /// Adds `value` to `c(e_t)` for an arbitrary tuple.
    pub fn add_at(&mut self, tuple: &[usize], value: &Poly) {
        let mut t = tuple.to_vec();
        if let Some(neg) = sort_with_sign(&mut t) {
            let cur = self.comps.remove(&t).unwrap_or_else(|| Poly::zero(self.nvars));
            let next = if neg { &cur - value } else { &cur + value };
            if !next.is_zero() {
                self.comps.insert(t, next);
            }
        }
    }

    /// `c(e_{t_1}, …, e_{t_k})` for any tuple, using alternation.
    pub fn eval(&self, tuple: &[usize]) -> Poly {
        let mut t = tuple.to_vec();
        match sort_with_sign(&mut t) {
            None => Poly::zero(self.nvars),
            Some(neg) => {
                let v = self
                    .comps
                    .get(&t)
                    .cloned()
                    .unwrap_or_else(|| Poly::zero(self.nvars));
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components on increasing tuples, in lexicographic order.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.comps.iter()
    }

    /// Maximum total degree over the components, `None` when zero.
    pub fn max_poly_degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::degree).max()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "cochain degree mismatch");
        let mut out = self.clone();
        for (t, v) in &other.comps {
            out.add_at(t, v);
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            nvars: self.nvars,
            comps: self.comps.iter().map(|(t, v)| (t.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> Cochain {
        let mut out = Cochain::zero(self.degree, self.nvars);
        for (t, v) in &self.comps {
            out.set(t, v * f);
        }
        out
    }

    /// Components listed over all increasing tuples of a rank-`r` basis,
    /// zeros included.
    pub fn to_vec(&self, r: usize) -> Vec<Poly> {
        tuples(r, self.degree).iter().map(|t| self.eval(t)).collect()
    }

    /// Inverse of [`Cochain::to_vec`].
    pub fn from_vec(degree: usize, r: usize, values: Vec<Poly>) -> Cochain {
        let nvars = values.first().map(Poly::nvars).unwrap_or(0);
        let ts = tuples(r, degree);
        assert_eq!(ts.len(), values.len(), "component count");
        Cochain::from_components(degree, nvars, ts.into_iter().zip(values))
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0 (degree {})", self.degree);
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(t, v)| {
                let idx: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
                format!("[{}]: {}", idx.join(","), v)
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// `(dc)(e_{t_0},…,e_{t_k}) = Σ_i (−1)^i ρ(e_{t_i}) c(…ê_{t_i}…)
///   + Σ_{i<j} (−1)^{i+j} c([e_{t_i}, e_{t_j}], …ê_{t_i}…ê_{t_j}…)`.
///
/// A `k`-cochain with `k ≥ rank` has no `(k+1)`-tuples to land on, so its
/// differential is the zero cochain of degree `k + 1`.
pub fn differential(data: &LieRinehartData, c: &Cochain) -> Cochain {
    let r = data.rank();
    let k = c.degree();
    let mut out = Cochain::zero(k + 1, data.nvars());
    if c.is_zero() || k >= r {
        return out;
    }
    for t in tuples(r, k + 1) {
        let mut val = Poly::zero(data.nvars());
        let mut rest = Vec::with_capacity(k);
        for i in 0..=k {
            rest.clear();
            rest.extend(t.iter().enumerate().filter(|(m, _)| *m != i).map(|(_, &e)| e));
            let inner = c.eval(&rest);
            if inner.is_zero() {
                continue;
            }
            let term = data.anchors[t[i]].apply(&inner);
            if i % 2 == 0 {
                val += &term;
            } else {
                val -= &term;
            }
        }
        let mut args = Vec::with_capacity(k);
        for i in 0..=k {
            for j in i + 1..=k {
                let sc = data.bracket(t[i], t[j]);
                if sc.iter().all(Poly::is_zero) {
                    continue;
                }
                let mut term = Poly::zero(data.nvars());
                for (l, coeff) in sc.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    args.clear();
                    args.push(l);
                    args.extend(
                        t.iter()
                            .enumerate()
                            .filter(|(m, _)| *m != i && *m != j)
                            .map(|(_, &e)| e),
                    );
                    let v = c.eval(&args);
                    if !v.is_zero() {
                        term += &(coeff * &v);
                    }
                }
                if (i + j) % 2 == 0 {
                    val += &term;
                } else {
                    val -= &term;
                }
            }
        }
        out.set(&t, val);
    }
    out
}

/// Lie–Rinehart data of `(Ω_A, [da,db] = d{a,b}, H)` on the basis `dx_j`.
pub fn poisson_complex(poisson: &PoissonStructure) -> LieRinehartData {
    let n = poisson.nvars();
    let basis = LogBasis::exact(n);
    let anchors = (0..n)
        .map(|j| poisson.hamiltonian(&Poly::var(n, j)).expect("same arity"))
        .collect();
    let mut brackets = BTreeMap::new();
    for (i, j, v) in poisson.pairs() {
        brackets.insert((i, j), logforms::express_d(&basis, v).into_coeffs());
    }
    LieRinehartData::new(n, anchors, brackets)
}

/// Lie–Rinehart data of the logarithmic forms with anchor `H̃` and bracket
/// `[-,-]_s`.
pub fn log_poisson_complex(
    poisson: &PoissonStructure,
    divisor: &LogDivisorSpec,
) -> Result<LieRinehartData, LogFormsError> {
    let basis = LogBasis::new(poisson.nvars(), divisor);
    log_poisson_complex_on(poisson, &basis)
}

/// As [`log_poisson_complex`], on an explicit basis.
pub fn log_poisson_complex_on(poisson: &PoissonStructure, basis: &LogBasis) -> Result<LieRinehartData, LogFormsError> {
    let anchors = logforms::htilde_all(poisson, basis)?;
    let r = basis.len();
    let mut brackets = BTreeMap::new();
    for i in 0..r {
        for j in i + 1..r {
            let sc = logforms::structure_constants(poisson, basis, i, j)?;
            brackets.insert((i, j), sc.into_coeffs());
        }
    }
    Ok(LieRinehartData::new(poisson.nvars(), anchors, brackets))
}

/// The logarithmic de Rham complex as the Chevalley–Eilenberg complex of
/// the logarithmic vector fields `x_j∂_j`, `∂_l`, which pairwise commute.
pub fn log_derham_complex(basis: &LogBasis) -> LieRinehartData {
    let n = basis.len();
    let anchors = basis
        .forms()
        .iter()
        .map(|form| {
            let mut coeffs = vec![Poly::zero(n); n];
            coeffs[form.variable()] = match *form {
                BasisForm::LogVar(j) => Poly::var(n, j),
                BasisForm::Exact(_) => Poly::one(n),
            };
            Derivation::new(coeffs)
        })
        .collect();
    LieRinehartData::new(n, anchors, BTreeMap::new())
}

/// Exterior derivative on logarithmic forms `Σ f_T e_T`, computed as
/// `d(f·e_T) = df ∧ e_T` with closed basis forms.
pub fn log_derham_differential(basis: &LogBasis, c: &Cochain) -> Cochain {
    let r = basis.len();
    let mut out = Cochain::zero(c.degree() + 1, c.nvars());
    for (t, f) in c.components() {
        let df = logforms::express_d(basis, f);
        for (l, g) in df.coeffs().iter().enumerate() {
            if g.is_zero() || t.contains(&l) {
                continue;
            }
            debug_assert!(l < r);
            let mut tuple = Vec::with_capacity(t.len() + 1);
            tuple.push(l);
            tuple.extend_from_slice(t);
            out.add_at(&tuple, g);
        }
    }
    out
}

/// `H̃(ω)(α_1,…,α_p) = (−1)^p ω(H̃α_1,…,H̃α_p)`: pulls a logarithmic
/// `p`-form back to a logarithmic Poisson `p`-cochain through the matrix of
/// `H̃`. Anticommutes with the differentials.
pub fn chain_map_htilde(
    poisson: &PoissonStructure,
    basis: &LogBasis,
    omega: &Cochain,
) -> Result<Cochain, LogFormsError> {
    let m = logforms::htilde_matrix(poisson, basis)?;
    let n = poisson.nvars();
    let p = omega.degree();
    let r = basis.len();
    let mut out = Cochain::zero(p, n);
    for s in tuples(r, p) {
        let mut val = Poly::zero(n);
        for (t, w) in omega.components() {
            let minor: Vec<Vec<Poly>> = t
                .iter()
                .map(|&row| s.iter().map(|&col| m[row][col].clone()).collect())
                .collect();
            let det = logforms::determinant(&minor, n);
            if !det.is_zero() {
                val += &(w * &det);
            }
        }
        if p % 2 == 1 {
            val = -val;
        }
        out.set(&s, val);
    }
    Ok(out)
}
