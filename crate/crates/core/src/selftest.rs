//! Randomized consistency suites over the bundled examples and a few
//! seeded random brackets.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{
    chain_map_htilde, differential, log_derham_complex, log_derham_differential, log_poisson_complex_on,
    poisson_complex, tuples, Cochain, LieRinehartData,
};
use crate::logforms::{self, LogBasis, OneForm};
use crate::poisson::{LogDivisorSpec, PoissonStructure};
use crate::poly::{default_names, monomials_up_to, Poly, Rational};
use crate::reference::{self, Example, ReferenceFormula};

#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Random cases per subject and per check.
    pub cases: usize,
    /// Negate one structure constant of every logarithmic complex first.
    pub mutate: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 20240917,
            cases: 50,
            mutate: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub seed: u64,
    pub mutated: bool,
    pub suites: Vec<SuiteResult>,
    pub notes: Vec<String>,
}

impl SelftestReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}{}", self.seed, if self.mutated { " (mutated)" } else { "" })?;
        for s in &self.suites {
            let verdict = if s.passed() { "pass" } else { "FAIL" };
            writeln!(f, "{verdict} {:<20} {:>5} cases, {} failures", s.name, s.cases, s.failures)?;
            if let Some(w) = &s.first_failure {
                writeln!(f, "     first failure: {w}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        writeln!(f, "{} suites, {}", self.suites.len(), if self.passed { "all passed" } else { "FAILED" })
    }
}

/// Random polynomial with at most `max_terms` terms of degree `≤ max_degree`
/// and small rational coefficients.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_degree: u32, max_terms: usize) -> Poly {
    let monos = monomials_up_to(nvars, max_degree);
    let count = rng.gen_range(0..=max_terms);
    Poly::from_terms(
        nvars,
        (0..count).map(|_| {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            let c = Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into());
            (m, c)
        }),
    )
}

fn random_vec(rng: &mut impl Rng, len: usize, nvars: usize, max_degree: u32) -> Vec<Poly> {
    (0..len).map(|_| random_poly(rng, nvars, max_degree, 4)).collect()
}

fn random_cochain(rng: &mut impl Rng, rank: usize, nvars: usize, k: usize, max_degree: u32) -> Cochain {
    let values = random_vec(rng, tuples(rank, k).len(), nvars, max_degree);
    Cochain::from_vec(k, rank, values)
}

struct Subject {
    label: String,
    poisson: PoissonStructure,
    basis: LogBasis,
    log: LieRinehartData,
}

fn subject(label: String, poisson: PoissonStructure, divisor: &[usize]) -> Subject {
    let n = poisson.nvars();
    let basis = LogBasis::new(n, &LogDivisorSpec::from_variables(n, divisor).expect("distinct variables"));
    let log = log_poisson_complex_on(&poisson, &basis).expect("logarithmic principal by construction");
    Subject {
        label,
        poisson,
        basis,
        log,
    }
}

fn subjects(rng: &mut impl Rng) -> Vec<Subject> {
    let mut out: Vec<Subject> = Example::ALL
        .iter()
        .map(|e| {
            let spec = e.spec();
            let vars: Vec<usize> = spec.divisor().variables().copied().collect();
            subject(e.name().to_string(), spec.poisson(), &vars)
        })
        .collect();

    // any {x,y} is Poisson; x·y·g is logarithmic along xy
    let n2 = default_names(2);
    let xy = &Poly::var(2, 0) * &Poly::var(2, 1);
    let g = random_poly(rng, 2, 2, 3);
    let p = PoissonStructure::from_pairs(n2, [(0, 1, &xy * &g)]).expect("valid");
    out.push(subject("random {x,y} = xy*g".into(), p, &[0, 1]));

    // with only {y,z} nonzero, x is a Casimir and Jacobi holds for any value
    let n3 = default_names(3);
    let xyz = &(&Poly::var(3, 0) * &Poly::var(3, 1)) * &Poly::var(3, 2);
    let g = random_poly(rng, 3, 1, 2);
    let p = PoissonStructure::from_pairs(n3.clone(), [(1, 2, &xyz * &g)]).expect("valid");
    out.push(subject("random {y,z} = xyz*g".into(), p, &[0, 1, 2]));

    // linear so(3) bracket, no divisor
    let p = PoissonStructure::from_pairs(
        n3,
        [(0, 1, Poly::var(3, 2)), (1, 2, Poly::var(3, 0)), (2, 0, Poly::var(3, 1))],
    )
    .expect("valid");
    out.push(subject("so(3)".into(), p, &[]));
    out
}

/// Negates the first nonzero structure constant.
fn mutate(data: &LieRinehartData) -> Option<LieRinehartData> {
    let r = data.rank();
    let mut brackets = std::collections::BTreeMap::new();
    let mut done = false;
    for i in 0..r {
        for j in i + 1..r {
            let mut v = data.bracket(i, j);
            if !done {
                if let Some(c) = v.iter_mut().find(|c| !c.is_zero()) {
                    *c = -&*c;
                    done = true;
                }
            }
            brackets.insert((i, j), v);
        }
    }
    done.then(|| LieRinehartData::new(data.nvars(), data.anchors().to_vec(), brackets))
}

fn cyclic_sum(f: impl Fn(usize, usize, usize) -> Vec<Poly>, len: usize, nvars: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(nvars); len];
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        for (o, t) in out.iter_mut().zip(f(a, b, c)) {
            *o += &t;
        }
    }
    out
}

fn all_zero(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// The generator behind every randomized check, for callers without `rand`.
pub fn seeded_rng(seed: u64) -> impl Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random inputs on which a closed-form formula and the engine differ.
pub fn formula_disagreements(f: &ReferenceFormula, cases: usize, rng: &mut impl Rng) -> Vec<Vec<Poly>> {
    let n = f.example.spec().nvars();
    (0..cases)
        .map(|_| random_vec(rng, f.input.len(), n, 4))
        .filter(|inputs| !f.agrees(inputs).unwrap_or(false))
        .collect()
}

pub fn run_selftest(opts: SelftestOptions) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut subjects = subjects(&mut rng);
    let mut notes = Vec::new();
    if opts.mutate {
        for s in &mut subjects {
            if let Some(m) = mutate(&s.log) {
                s.log = m;
                notes.push(format!("{}: one structure constant negated", s.label));
            }
        }
    }
    let cases = opts.cases;

    let mut dd = SuiteResult::new("d-squared");
    for s in &subjects {
        let n = s.poisson.nvars();
        let complexes = [
            ("poisson", poisson_complex(&s.poisson)),
            ("log-poisson", s.log.clone()),
            ("log-derham", log_derham_complex(&s.basis)),
        ];
        for (name, data) in &complexes {
            let r = data.rank();
            for k in 0..=r.saturating_sub(2) {
                for _ in 0..cases {
                    let c = random_cochain(&mut rng, r, n, k, 5);
                    let ddc = differential(data, &differential(data, &c));
                    dd.record(ddc.is_zero(), || format!("{} {name} k={k}: d(d({c})) = {ddc}", s.label));
                }
            }
        }
    }

    let mut jacobi = SuiteResult::new("jacobi");
    let mut extension_mixed = (0usize, 0usize);
    for s in &subjects {
        let (n, r) = (s.poisson.nvars(), s.basis.len());
        for _ in 0..cases {
            let f: Vec<Poly> = (0..3).map(|_| random_poly(&mut rng, n, 3, 3)).collect();
            let br = |a: &Poly, b: &Poly| s.poisson.bracket(a, b).expect("same arity");
            let jac = cyclic_sum(|a, b, c| vec![br(&f[a], &br(&f[b], &f[c]))], 1, n);
            jacobi.record(all_zero(&jac), || format!("{}: {{,}} jacobiator {}", s.label, jac[0]));

            let u: Vec<Vec<Poly>> = (0..3).map(|_| random_vec(&mut rng, r, n, 2)).collect();
            let jac = cyclic_sum(|a, b, c| s.log.bracket_of(&u[a], &s.log.bracket_of(&u[b], &u[c])), r, n);
            jacobi.record(all_zero(&jac), || format!("{}: [,]_s jacobiator {jac:?}", s.label));

            let forms: Vec<OneForm> = u.iter().cloned().map(OneForm::new).collect();
            let bs = |a: &OneForm, b: &OneForm| logforms::bracket_s(&s.poisson, &s.basis, a, b).expect("principal");
            let jac = cyclic_sum(
                |a, b, c| bs(&forms[a], &bs(&forms[b], &forms[c])).into_coeffs(),
                r,
                n,
            );
            jacobi.record(all_zero(&jac), || format!("{}: bracket_s jacobiator {jac:?}", s.label));

            // pure form triples: the scalar part of the Jacobi sum is dπ(α,β,γ)
            let eb = |a: &(Poly, OneForm), b: &(Poly, OneForm)| {
                logforms::extension_bracket(&s.poisson, &s.basis, (&a.0, &a.1), (&b.0, &b.1)).expect("principal")
            };
            let ext_jac = |ext: &[(Poly, OneForm)]| {
                cyclic_sum(
                    |a, b, c| {
                        let (f, form) = eb(&ext[a], &eb(&ext[b], &ext[c]));
                        let mut v = vec![f];
                        v.extend(form.into_coeffs());
                        v
                    },
                    r + 1,
                    n,
                )
            };
            let pure: Vec<(Poly, OneForm)> = forms.iter().map(|a| (Poly::zero(n), a.clone())).collect();
            let jac = ext_jac(&pure);
            jacobi.record(all_zero(&jac), || format!("{}: extension jacobiator {jac:?}", s.label));

            let mixed: Vec<(Poly, OneForm)> = forms.iter().map(|a| (random_poly(&mut rng, n, 2, 2), a.clone())).collect();
            extension_mixed.0 += 1;
            extension_mixed.1 += usize::from(!all_zero(&ext_jac(&mixed)));
        }
    }
    if extension_mixed.1 > 0 {
        notes.push(format!(
            "extension bracket with nonzero scalar parts: Jacobi fails on {}/{} random triples \
             (the {{a,b}} term is not compatible with the H̃ action)",
            extension_mixed.1, extension_mixed.0
        ));
    }

    let mut leibniz = SuiteResult::new("leibniz");
    for s in &subjects {
        let (n, r) = (s.poisson.nvars(), s.basis.len());
        for _ in 0..cases {
            let alpha = OneForm::new(random_vec(&mut rng, r, n, 2));
            let beta = OneForm::new(random_vec(&mut rng, r, n, 2));
            let a = random_poly(&mut rng, n, 2, 3);
            let bs = |x: &OneForm, y: &OneForm| logforms::bracket_s(&s.poisson, &s.basis, x, y).expect("principal");
            let lhs = bs(&alpha, &beta.scale(&a));
            let h = logforms::htilde(&s.poisson, &s.basis, &alpha).expect("principal");
            let rhs = beta.scale(&h.apply(&a)).add(&bs(&alpha, &beta).scale(&a));
            leibniz.record(lhs == rhs, || format!("{}: [α, aβ] ≠ H̃(α)(a)β + a[α,β]", s.label));

            let via_data = s.log.bracket_of(alpha.coeffs(), beta.coeffs());
            leibniz.record(via_data == bs(&alpha, &beta).into_coeffs(), || {
                format!("{}: complex bracket differs from [,]_s", s.label)
            });
        }
    }

    let mut anchor = SuiteResult::new("anchor-homomorphism");
    for s in &subjects {
        let (n, r) = (s.poisson.nvars(), s.basis.len());
        for _ in 0..cases {
            let u = random_vec(&mut rng, r, n, 2);
            let v = random_vec(&mut rng, r, n, 2);
            let lhs = s.log.anchor_of(&s.log.bracket_of(&u, &v));
            let rhs = s.log.anchor_of(&u).commutator(&s.log.anchor_of(&v));
            anchor.record(lhs == rhs, || format!("{}: ρ([u,v]) = {lhs}, [ρu,ρv] = {rhs}", s.label));
        }
    }

    let mut chain = SuiteResult::new("chain-map");
    for s in &subjects {
        let (n, r) = (s.poisson.nvars(), s.basis.len());
        for p in 0..r {
            for _ in 0..cases {
                let omega = random_cochain(&mut rng, r, n, p, 4);
                let ht = |c: &Cochain| chain_map_htilde(&s.poisson, &s.basis, c).expect("principal");
                let residual = differential(&s.log, &ht(&omega)).add(&ht(&log_derham_differential(&s.basis, &omega)));
                chain.record(residual.is_zero(), || format!("{} p={p}: residual {residual}", s.label));
            }
        }
    }

    let mut oracle = SuiteResult::new("closed-form-oracles");
    for f in reference::formulas() {
        let disagreements = formula_disagreements(&f, cases, &mut rng);
        if f.misprint {
            notes.push(format!(
                "{}: disagrees with the engine on {}/{cases} inputs (known misprint, not counted)",
                f.name,
                disagreements.len()
            ));
        } else {
            for i in 0..cases {
                let bad = disagreements.first().filter(|_| i < disagreements.len());
                oracle.record(bad.is_none(), || format!("{} on {:?}", f.name, bad.unwrap()));
            }
        }
    }

    let suites = vec![dd, jacobi, leibniz, anchor, chain, oracle];
    SelftestReport {
        passed: suites.iter().all(SuiteResult::passed),
        seed: opts.seed,
        mutated: opts.mutate,
        suites,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_run_passes() {
        let r = run_selftest(SelftestOptions {
            cases: 8,
            ..Default::default()
        });
        assert!(r.passed, "{r}");
        assert!(r.suites.len() >= 6);
    }

    #[test]
    fn mutation_is_caught() {
        let r = run_selftest(SelftestOptions {
            cases: 8,
            mutate: true,
            ..Default::default()
        });
        assert!(!r.suite("jacobi").unwrap().passed(), "{r}");
        assert!(!r.passed);
    }
}
