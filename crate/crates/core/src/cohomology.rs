//! Degree-filtered cohomology of polynomial cochain complexes.
//!
//! The differentials are not graded (a coefficient such as `−x²∂_x` raises
//! degree), so dimensions are computed on the total-degree filtration
//! `F_d = {cochains with all coefficients of degree ≤ d}`:
//!
//! ```text
//! dim H^k_{≤d} = dim(ker d^k ∩ F_d) − dim(im d^{k−1} ∩ F_d)
//! ```
//!
//! The image is generated from sources in `F_{d + buffer}` so that
//! cancellations from higher degrees are seen. Per-degree dimensions are the
//! increments of `dim H^k_{≤d}` in `d`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{differential, tuples, Cochain, ComplexKind, LieRinehartData};
use crate::linalg::{IntEchelon, RationalSolver, SparseMatrix, SparseVec};
use crate::poly::{monomials_of_degree, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cochain is not closed: its differential is nonzero")]
    NotClosed,
    #[error("windows differ: {left:?} vs {right:?}")]
    WindowMismatch { left: SliceWindow, right: SliceWindow },
    #[error("cochain degree {degree} exceeds the complex rank {rank}")]
    DegreeOutOfRange { degree: usize, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceWindow {
    /// Largest filtration degree reported.
    pub max_degree: u32,
    /// Extra source degrees used when generating images.
    pub buffer: u32,
}

impl SliceWindow {
    /// Window with the default buffer `shift + 2`.
    pub fn for_complex(data: &LieRinehartData, max_degree: u32) -> Self {
        SliceWindow {
            max_degree,
            buffer: data.shift() + 2,
        }
    }
}

/// Coordinates of `k`-cochains with coefficients of degree `≤ max_degree`,
/// numbered by ascending degree, then tuple, then monomial.
#[derive(Debug, Clone)]
pub struct CoordSpace {
    degree: usize,
    rank: usize,
    nvars: usize,
    max_degree: u32,
    labels: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    // first coordinate index of each polynomial degree, plus the end
    degree_starts: Vec<usize>,
}

impl CoordSpace {
    pub fn new(rank: usize, nvars: usize, degree: usize, max_degree: u32) -> Self {
        let ntuples = tuples(rank, degree).len();
        let mut labels = Vec::new();
        let mut degree_starts = Vec::new();
        for d in 0..=max_degree {
            degree_starts.push(labels.len());
            let monos = monomials_of_degree(nvars, d);
            for t in 0..ntuples {
                for m in &monos {
                    labels.push((t, m.clone()));
                }
            }
        }
        degree_starts.push(labels.len());
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        CoordSpace {
            degree,
            rank,
            nvars,
            max_degree,
            labels,
            index,
            degree_starts,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of coordinates of polynomial degree `≤ d`.
    pub fn count_up_to(&self, d: u32) -> usize {
        let d = d.min(self.max_degree);
        self.degree_starts[d as usize + 1]
    }

    /// Polynomial degree of coordinate `i`.
    pub fn degree_of(&self, i: usize) -> u32 {
        self.labels[i].1.degree()
    }

    /// `(tuple, monomial)` of coordinate `i`.
    pub fn label(&self, i: usize) -> (Vec<usize>, &Monomial) {
        let t = &tuples(self.rank, self.degree)[self.labels[i].0];
        (t.clone(), &self.labels[i].1)
    }

    /// The cochain `m·e_T` for coordinate `i`.
    pub fn basis_cochain(&self, i: usize) -> Cochain {
        let (t, m) = self.label(i);
        Cochain::from_components(
            self.degree,
            self.nvars,
            [(t, Poly::term(m.clone(), Rational::one()))],
        )
    }

    /// Coordinates of `c`; `None` if some coefficient leaves the space.
    pub fn coords(&self, c: &Cochain) -> Option<SparseVec> {
        let ts = tuples(self.rank, self.degree);
        let tuple_index: HashMap<&Vec<usize>, usize> =
            ts.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut out = SparseVec::new();
        for (t, p) in c.components() {
            let ti = tuple_index[t];
            for (m, q) in p.terms() {
                let i = *self.index.get(&(ti, m.clone()))?;
                out.insert(i, q.clone());
            }
        }
        Some(out)
    }

    /// Inverse of [`CoordSpace::coords`].
    pub fn cochain(&self, v: &SparseVec) -> Cochain {
        let ts = tuples(self.rank, self.degree);
        let mut by_tuple: BTreeMap<usize, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (&i, q) in v {
            let (t, m) = &self.labels[i];
            by_tuple.entry(*t).or_default().push((m.clone(), q.clone()));
        }
        Cochain::from_components(
            self.degree,
            self.nvars,
            by_tuple
                .into_iter()
                .map(|(t, terms)| (ts[t].clone(), Poly::from_terms(self.nvars, terms))),
        )
    }
}

/// Matrix of `d^k` restricted to a degree slice, with its coordinate spaces.
#[derive(Debug, Clone)]
pub struct Slice {
    pub matrix: SparseMatrix,
    pub source: CoordSpace,
    pub target: CoordSpace,
}

/// Matrix of `d^k` from `k`-cochains of degree `≤ source_degree` to
/// `(k+1)`-cochains of degree `≤ source_degree + shift`.
pub fn slice_matrix(data: &LieRinehartData, k: usize, source_degree: u32) -> Slice {
    let (r, n) = (data.rank(), data.nvars());
    let source = CoordSpace::new(r, n, k, source_degree);
    let target = CoordSpace::new(r, n, k + 1, source_degree + data.shift());
    let cols = (0..source.len())
        .into_par_iter()
        .map(|i| {
            let image = differential(data, &source.basis_cochain(i));
            target
                .coords(&image)
                .expect("differential respects the degree shift")
        })
        .collect();
    Slice {
        matrix: SparseMatrix::from_columns(target.len(), cols),
        source,
        target,
    }
}

/// `dim(ker d^k ∩ F_d)` for `d = 0..=max_degree`.
fn kernel_profile(data: &LieRinehartData, k: usize, max_degree: u32) -> Vec<usize> {
    let slice = slice_matrix(data, k, max_degree);
    let mut ech = IntEchelon::new();
    let mut out = Vec::with_capacity(max_degree as usize + 1);
    let mut col = 0;
    for d in 0..=max_degree {
        let end = slice.source.count_up_to(d);
        while col < end {
            ech.insert(slice.matrix.column(col));
            col += 1;
        }
        out.push(end - ech.rank());
    }
    out
}

/// `dim(im d^{k−1} ∩ F_d)` for `d = 0..=max_degree`, with images generated
/// from sources of degree `≤ max_degree + buffer`, for each requested
/// buffer.
fn image_profiles(data: &LieRinehartData, k: usize, max_degree: u32, buffers: &[u32]) -> Vec<Vec<usize>> {
    if k == 0 {
        return buffers.iter().map(|_| vec![0; max_degree as usize + 1]).collect();
    }
    let top = max_degree + buffers.iter().copied().max().unwrap_or(0);
    let slice = slice_matrix(data, k - 1, top);
    let mut ech = IntEchelon::new();
    let mut col = 0;
    let mut snapshots = BTreeMap::new();
    let mut caps: Vec<u32> = buffers.iter().map(|b| max_degree + b).collect();
    caps.sort_unstable();
    caps.dedup();
    for cap in caps {
        let end = slice.source.count_up_to(cap);
        while col < end {
            ech.insert(slice.matrix.column(col));
            col += 1;
        }
        let counts: Vec<usize> = (0..=max_degree)
            .map(|d| {
                let bound = slice.target.count_up_to(d);
                if bound == 0 {
                    0
                } else {
                    ech.pivots_up_to(bound - 1)
                }
            })
            .collect();
        snapshots.insert(cap, counts);
    }
    buffers
        .iter()
        .map(|b| snapshots[&(max_degree + b)].clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyEntry {
    pub degree: u32,
    /// Dimension of the degree-`d` piece of `H^k`.
    pub dim: usize,
    /// `dim H^k_{≤d}`.
    pub cumulative: usize,
    /// Unchanged when the image buffer grows by one.
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub kind: Option<ComplexKind>,
    pub window: SliceWindow,
    pub shift: u32,
    /// Rows keyed by cochain degree `k`.
    pub rows: BTreeMap<usize, Vec<CohomologyEntry>>,
}

impl CohomologyTable {
    pub fn row(&self, k: usize) -> Option<&[CohomologyEntry]> {
        self.rows.get(&k).map(Vec::as_slice)
    }

    /// Per-degree dimensions of `H^k`.
    pub fn dims(&self, k: usize) -> Vec<usize> {
        self.row(k)
            .map(|r| r.iter().map(|e| e.dim).collect())
            .unwrap_or_default()
    }

    /// `dim H^k_{≤ max_degree}`.
    pub fn total(&self, k: usize) -> usize {
        self.row(k)
            .and_then(|r| r.last())
            .map(|e| e.cumulative)
            .unwrap_or(0)
    }
}

fn increments(cumulative: &[usize]) -> Vec<usize> {
    cumulative
        .iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { *c } else { c - cumulative[i - 1] })
        .collect()
}

/// Cumulative `dim H^k_{≤d}` for `d = 0..=max_degree` at each buffer.
pub fn cumulative_dims(data: &LieRinehartData, k: usize, max_degree: u32, buffers: &[u32]) -> Vec<Vec<usize>> {
    let ker = kernel_profile(data, k, max_degree);
    image_profiles(data, k, max_degree, buffers)
        .into_iter()
        .map(|im| ker.iter().zip(&im).map(|(a, b)| a - b).collect())
        .collect()
}

/// One row of the cohomology table: per-degree dimensions of `H^k` on the
/// window, with stabilization flags from a recomputation at `buffer + 1`.
pub fn cohomology_dims(data: &LieRinehartData, k: usize, window: SliceWindow) -> Vec<CohomologyEntry> {
    let d = window.max_degree;
    let cums = cumulative_dims(data, k, d, &[window.buffer, window.buffer + 1]);
    let (base, next) = (&cums[0], &cums[1]);
    let (dims, next_dims) = (increments(base), increments(next));
    (0..=d as usize)
        .map(|i| CohomologyEntry {
            degree: i as u32,
            dim: dims[i],
            cumulative: base[i],
            stabilized: dims[i] == next_dims[i] && base[i] == next[i],
        })
        .collect()
}

/// Table for the cochain degrees `ks`, rows computed concurrently.
pub fn cohomology_table(
    data: &LieRinehartData,
    kind: Option<ComplexKind>,
    ks: &[usize],
    window: SliceWindow,
) -> CohomologyTable {
    let rows = ks
        .par_iter()
        .map(|&k| (k, cohomology_dims(data, k, window)))
        .collect();
    CohomologyTable {
        kind,
        window,
        shift: data.shift(),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitive {
    /// `d(witness) = c`.
    Found(Cochain),
    /// No primitive with coefficients of degree `≤ max_source_degree`. This
    /// does not certify that `c` is not exact.
    NoneInWindow { max_source_degree: u32 },
}

/// Solves `d^{k−1} v = c` over sources of degree `≤ max_degree + buffer`.
pub fn find_primitive(data: &LieRinehartData, c: &Cochain, window: SliceWindow) -> Result<Primitive, CohomologyError> {
    let k = c.degree();
    if k > data.rank() {
        return Err(CohomologyError::DegreeOutOfRange {
            degree: k,
            rank: data.rank(),
        });
    }
    if !differential(data, c).is_zero() {
        return Err(CohomologyError::NotClosed);
    }
    let (r, n) = (data.rank(), data.nvars());
    if c.is_zero() {
        return Ok(Primitive::Found(Cochain::zero(k.saturating_sub(1), n)));
    }
    let max_source_degree = window.max_degree + window.buffer;
    if k == 0 {
        return Ok(Primitive::NoneInWindow { max_source_degree });
    }
    let target_degree = (max_source_degree + data.shift()).max(c.max_poly_degree().unwrap_or(0));
    let source = CoordSpace::new(r, n, k - 1, max_source_degree);
    let target = CoordSpace::new(r, n, k, target_degree);
    let mut solver = RationalSolver::new();
    for i in 0..source.len() {
        let image = differential(data, &source.basis_cochain(i));
        solver.insert(i, &target.coords(&image).expect("within target degree"));
    }
    let rhs = target.coords(c).expect("within target degree");
    Ok(match solver.solve(&rhs) {
        Some(lambda) => Primitive::Found(source.cochain(&lambda)),
        None => Primitive::NoneInWindow { max_source_degree },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimDifference {
    pub k: usize,
    pub degree: u32,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableComparison {
    pub compared: usize,
    pub differences: Vec<DimDifference>,
}

impl TableComparison {
    pub fn equal(&self) -> bool {
        self.differences.is_empty()
    }

    /// Smallest degree at which some row differs.
    pub fn first_difference_degree(&self) -> Option<u32> {
        self.differences.iter().map(|d| d.degree).min()
    }
}

/// Entry-by-entry comparison over the cochain degrees both tables contain.
pub fn compare_tables(left: &CohomologyTable, right: &CohomologyTable) -> Result<TableComparison, CohomologyError> {
    if left.window.max_degree != right.window.max_degree {
        return Err(CohomologyError::WindowMismatch {
            left: left.window,
            right: right.window,
        });
    }
    let mut compared = 0;
    let mut differences = Vec::new();
    for (k, lrow) in &left.rows {
        let Some(rrow) = right.rows.get(k) else { continue };
        for (a, b) in lrow.iter().zip(rrow) {
            compared += 1;
            if a.dim != b.dim {
                differences.push(DimDifference {
                    k: *k,
                    degree: a.degree,
                    left: a.dim,
                    right: b.dim,
                });
            }
        }
    }
    Ok(TableComparison {
        compared,
        differences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{log_poisson_complex, poisson_complex};
    use crate::poisson::{LogDivisorSpec, PoissonStructure};

    fn names(n: usize) -> Vec<String> {
        crate::poly::default_names(n)
    }

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &names(n)).unwrap()
    }

    fn structure(bracket: &[(usize, usize, &str)], n: usize) -> PoissonStructure {
        PoissonStructure::from_pairs(names(n), bracket.iter().map(|&(i, j, s)| (i, j, p(s, n)))).unwrap()
    }

    fn example1_log() -> LieRinehartData {
        log_poisson_complex(
            &structure(&[(0, 1, "x")], 2),
            &LogDivisorSpec::from_variables(2, &[0]).unwrap(),
        )
        .unwrap()
    }

    fn example2_log() -> LieRinehartData {
        log_poisson_complex(
            &structure(&[(0, 1, "x^2")], 2),
            &LogDivisorSpec::from_variables(2, &[0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn constant_slice_is_zero() {
        let s = slice_matrix(&example1_log(), 0, 0);
        assert_eq!(s.matrix.ncols(), 1);
        assert_eq!(s.matrix.rank(), 0);
    }

    #[test]
    fn degree_one_kernel_is_constants() {
        let s = slice_matrix(&example1_log(), 0, 1);
        assert_eq!(s.matrix.ncols(), 3);
        assert_eq!(s.matrix.ncols() - s.matrix.rank(), 1);
    }

    #[test]
    fn empty_slice() {
        // rank-2 algebra has no 3-cochains
        let s = slice_matrix(&example1_log(), 3, 2);
        assert_eq!((s.matrix.nrows(), s.matrix.ncols()), (0, 0));
    }

    #[test]
    fn example1_h1_in_degree_zero() {
        let l = example1_log();
        let row = cohomology_dims(&l, 1, SliceWindow::for_complex(&l, 8));
        assert_eq!(row.iter().map(|e| e.dim).collect::<Vec<_>>(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn example2_h2_every_degree() {
        let l = example2_log();
        let row = cohomology_dims(&l, 2, SliceWindow::for_complex(&l, 8));
        assert!(row.iter().all(|e| e.dim == 1 && e.stabilized));
    }

    #[test]
    fn coords_round_trip() {
        let space = CoordSpace::new(3, 3, 2, 3);
        let c = Cochain::from_components(2, 3, [(vec![0, 2], p("x*y - 1/2*z^3", 3)), (vec![1, 2], p("4", 3))]);
        let v = space.coords(&c).unwrap();
        assert_eq!(space.cochain(&v), c);
        let too_big = Cochain::from_components(2, 3, [(vec![0, 1], p("x^4", 3))]);
        assert!(space.coords(&too_big).is_none());
    }

    #[test]
    fn primitives() {
        let l = example1_log();
        let w = SliceWindow::for_complex(&l, 4);
        let pi = Cochain::from_components(2, 2, [(vec![0, 1], Poly::one(2))]);
        match find_primitive(&l, &pi, w).unwrap() {
            Primitive::Found(v) => assert_eq!(differential(&l, &v), pi),
            other => panic!("expected a primitive, got {other:?}"),
        }
        assert_eq!(
            find_primitive(&l, &Cochain::zero(2, 2), w).unwrap(),
            Primitive::Found(Cochain::zero(1, 2))
        );

        let l2 = example2_log();
        let one = Cochain::from_components(2, 2, [(vec![0, 1], Poly::one(2))]);
        for d in 0..=4 {
            assert!(matches!(
                find_primitive(&l2, &one, SliceWindow::for_complex(&l2, d)).unwrap(),
                Primitive::NoneInWindow { .. }
            ));
        }
    }

    #[test]
    fn find_primitive_rejects_open_cochains() {
        let l = example1_log();
        let c = Cochain::from_components(1, 2, [(vec![0], p("x", 2)), (vec![1], p("x*y", 2))]);
        assert!(!differential(&l, &c).is_zero());
        assert_eq!(
            find_primitive(&l, &c, SliceWindow::for_complex(&l, 2)),
            Err(CohomologyError::NotClosed)
        );
    }

    #[test]
    fn comparison_requires_same_window() {
        let l = example1_log();
        let a = cohomology_table(&l, None, &[0], SliceWindow::for_complex(&l, 2));
        let b = cohomology_table(&l, None, &[0], SliceWindow::for_complex(&l, 3));
        assert!(matches!(compare_tables(&a, &b), Err(CohomologyError::WindowMismatch { .. })));
        let pc = poisson_complex(&structure(&[(0, 1, "x")], 2));
        let c = cohomology_table(&pc, None, &[0], SliceWindow::for_complex(&pc, 2));
        assert!(compare_tables(&a, &c).unwrap().equal());
    }
}
