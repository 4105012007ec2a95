//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sparse maps from coordinate index to value. Echelon forms
//! pivot on the *largest* nonzero index of each vector, so when coordinates
//! are numbered by ascending polynomial degree the pivot of a vector sits
//! at its highest-degree coordinate. With that convention the dimension of
//! `span ∩ {coordinates ≤ c}` is the number of pivots `≤ c`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;
type IntVec = BTreeMap<usize, BigInt>;

/// Clears denominators and removes the integer content.
fn to_primitive_int(v: &SparseVec) -> IntVec {
    let lcm = v
        .values()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: IntVec = v
        .iter()
        .map(|(&i, q)| (i, q.numer() * (&lcm / q.denom())))
        .collect();
    normalize_content(&mut out);
    out
}

fn normalize_content(v: &mut IntVec) {
    let g = v.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.values_mut() {
        *x = &*x / &g;
    }
}

/// Incremental fraction-free echelon basis of a subspace.
#[derive(Debug, Clone, Default)]
pub struct IntEchelon {
    rows: BTreeMap<usize, IntVec>,
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut v = to_primitive_int(v);
        while let Some((&lead, a)) = v.iter().next_back() {
            let Some(row) = self.rows.get(&lead) else {
                if a.is_negative() {
                    for x in v.values_mut() {
                        *x = -&*x;
                    }
                }
                self.rows.insert(lead, v);
                return true;
            };
            // v ← (b/g)·v − (a/g)·row with a = v[lead], b = row[lead]
            let b = &row[&lead];
            let g = a.gcd(b);
            let (va, rb) = (b / &g, a / &g);
            let mut next = IntVec::new();
            for (&i, x) in &v {
                next.insert(i, x * &va);
            }
            for (&i, y) in row {
                let e = next.entry(i).or_insert_with(BigInt::zero);
                *e -= y * &rb;
                if e.is_zero() {
                    next.remove(&i);
                }
            }
            next.retain(|_, x| !x.is_zero());
            normalize_content(&mut next);
            v = next;
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot coordinates in ascending order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Number of pivots `≤ bound`, i.e. `dim(span ∩ {coords ≤ bound})`.
    pub fn pivots_up_to(&self, bound: usize) -> usize {
        self.rows.range(..=bound).count()
    }
}

/// Incremental rational echelon basis that remembers how each row was
/// built from the inserted generators, so membership queries can return a
/// preimage.
#[derive(Debug, Clone, Default)]
pub struct RationalSolver {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

fn axpy(target: &mut SparseVec, scale: &Rational, src: &SparseVec) {
    for (&i, x) in src {
        let e = target.entry(i).or_insert_with(Rational::zero);
        *e -= scale * x;
        if e.is_zero() {
            target.remove(&i);
        }
    }
}

impl RationalSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `v` against the current rows, returning the remainder and
    /// the recipe `r` with `v − remainder = Σ r_g · generator_g`.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut recipe = SparseVec::new();
        // pivots are processed from the largest index down
        let mut bound = usize::MAX;
        loop {
            let lead = match v.range(..=bound).next_back() {
                Some((&i, _)) => i,
                None => break,
            };
            if let Some((row, row_recipe)) = self.rows.get(&lead) {
                let factor = &v[&lead] / &row[&lead];
                axpy(&mut v, &factor, row);
                for (&g, x) in row_recipe {
                    let e = recipe.entry(g).or_insert_with(Rational::zero);
                    *e += &factor * x;
                    if e.is_zero() {
                        recipe.remove(&g);
                    }
                }
            }
            if lead == 0 {
                break;
            }
            bound = lead - 1;
        }
        (v, recipe)
    }

    /// Adds generator number `id` with coordinates `v`.
    pub fn insert(&mut self, id: usize, v: &SparseVec) -> bool {
        let (rem, recipe) = self.reduce(v);
        let Some((&lead, _)) = rem.iter().next_back() else {
            return false;
        };
        // rem = v − Σ recipe·gen, so as a combination: gen_id − recipe
        let mut own: SparseVec = recipe.into_iter().map(|(g, x)| (g, -x)).collect();
        *own.entry(id).or_insert_with(Rational::zero) += Rational::one();
        own.retain(|_, x| !x.is_zero());
        self.rows.insert(lead, (rem, own));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coefficients `λ_g` with `Σ λ_g · generator_g = target`, if any.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (rem, recipe) = self.reduce(target);
        rem.is_empty().then_some(recipe)
    }
}

/// Column-major sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        assert!(
            cols.iter().all(|c| c.keys().all(|&i| i < nrows)),
            "column entry outside row range"
        );
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.cols[j].get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Column rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut ech = IntEchelon::new();
        for c in &self.cols {
            ech.insert(c);
        }
        ech.rank()
    }

    /// A basis of the right null space, from the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut m = self.to_dense();
        let ncols = self.ncols();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = Rational::one() / &m[row][col];
            for x in m[row].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..m.len() {
                if i != row && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in 0..ncols {
                        let delta = &f * &m[row][j];
                        m[i][j] -= delta;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); ncols];
                v[f] = Rational::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -m[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// `M·v` for a dense vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.nrows];
        for (c, x) in self.cols.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (&i, y) in c {
                out[i] += x * y;
            }
        }
        out
    }
}
