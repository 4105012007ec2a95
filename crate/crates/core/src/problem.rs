//! Problem documents and the reports behind the command-line tool.
//!
//! A problem is a JSON object:
//!
//! ```json
//! {"variables": ["x", "y"], "bracket": {"x,y": "x"},
//!  "log_generators": ["x"], "max_degree": 8, "buffer": 3}
//! ```
//!
//! `bracket` keys are unordered variable pairs; `"y,x": "f"` means
//! `{x,y} = −f`. `buffer` is optional.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::cohomology::{
    cohomology_dims, cohomology_table, compare_tables, find_primitive, CohomologyEntry, CohomologyError,
    CohomologyTable, DimDifference, Primitive, SliceWindow,
};
use crate::complex::{
    differential, log_derham_complex, log_poisson_complex_on, poisson_complex, tuples, Cochain, ComplexKind,
    LieRinehartData,
};
use crate::logforms::{self, LogBasis, LogFormsError};
use crate::poisson::{LogDivisorSpec, PoissonError, PoissonStructure};
use crate::poly::{ParseError, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("at least one variable is required")]
    NoVariables,
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("variable {0:?} is declared twice")]
    DuplicateVariable(String),
    #[error("bracket key {0:?} is not of the form \"a,b\"")]
    BadPairKey(String),
    #[error("bracket key {key:?} references undeclared variable {name:?}")]
    UnknownVariable { key: String, name: String },
    #[error("bracket key {0:?} pairs a variable with itself")]
    DiagonalPair(String),
    #[error("bracket pair {0:?} is given more than once")]
    DuplicatePair(String),
    #[error("cannot parse {context} {text:?}: {source}")]
    Polynomial {
        context: String,
        text: String,
        source: ParseError,
    },
    #[error("log generator {generator:?}: {source}")]
    Divisor { generator: String, source: PoissonError },
}

/// Errors of the reporting layer, with the process exit code they map to.
#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}; run the check subcommand for details")]
    CheckFailed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl ProblemError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ProblemError::CheckFailed(_) => 1,
            ProblemError::Io { .. } | ProblemError::Spec(_) | ProblemError::Usage(_) => 2,
            ProblemError::Internal(_) => 3,
        }
    }
}

impl From<LogFormsError> for ProblemError {
    fn from(e: LogFormsError) -> Self {
        ProblemError::Internal(e.to_string())
    }
}

impl From<PoissonError> for ProblemError {
    fn from(e: PoissonError) -> Self {
        ProblemError::Internal(e.to_string())
    }
}

impl From<CohomologyError> for ProblemError {
    fn from(e: CohomologyError) -> Self {
        ProblemError::Internal(e.to_string())
    }
}

/// Object entries in document order, duplicates kept.
#[derive(Debug, Default)]
struct Entries(Vec<(String, String)>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Entries;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object of polynomial strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, String>()? {
                    out.push(entry);
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    variables: Vec<String>,
    #[serde(default)]
    bracket: Entries,
    #[serde(default)]
    log_generators: Vec<String>,
    max_degree: u32,
    #[serde(default)]
    buffer: Option<u32>,
}

/// A validated problem document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub variables: Vec<String>,
    /// `{x_i, x_j}` keyed by `(i, j)` with `i < j`.
    pub bracket: BTreeMap<(usize, usize), Poly>,
    pub log_generators: Vec<Poly>,
    pub max_degree: u32,
    pub buffer: Option<u32>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

pub fn parse_spec(document: &str) -> Result<ProblemSpec, SpecError> {
    let raw: RawSpec = serde_json::from_str(document).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let names = raw.variables;
    if names.is_empty() {
        return Err(SpecError::NoVariables);
    }
    for (i, name) in names.iter().enumerate() {
        if !valid_name(name) {
            return Err(SpecError::InvalidName(name.clone()));
        }
        if names[..i].contains(name) {
            return Err(SpecError::DuplicateVariable(name.clone()));
        }
    }
    let index = |key: &str, name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SpecError::UnknownVariable {
                key: key.to_string(),
                name: name.to_string(),
            })
    };

    let mut bracket = BTreeMap::new();
    for (key, text) in &raw.bracket.0 {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| SpecError::BadPairKey(key.clone()))?;
        let (a, b) = (a.trim(), b.trim());
        if a.is_empty() || b.is_empty() || b.contains(',') {
            return Err(SpecError::BadPairKey(key.clone()));
        }
        let (i, j) = (index(key, a)?, index(key, b)?);
        if i == j {
            return Err(SpecError::DiagonalPair(key.clone()));
        }
        let value = Poly::parse(text, &names).map_err(|source| SpecError::Polynomial {
            context: format!("bracket {key:?}"),
            text: text.clone(),
            source,
        })?;
        let (pair, value) = if i < j { ((i, j), value) } else { ((j, i), -value) };
        if bracket.insert(pair, value).is_some() {
            return Err(SpecError::DuplicatePair(key.clone()));
        }
    }

    let mut log_generators = Vec::with_capacity(raw.log_generators.len());
    for text in &raw.log_generators {
        let u = Poly::parse(text, &names).map_err(|source| SpecError::Polynomial {
            context: "log generator".to_string(),
            text: text.clone(),
            source,
        })?;
        log_generators.push(u);
    }
    LogDivisorSpec::new(log_generators.clone()).map_err(|source| SpecError::Divisor {
        generator: raw.log_generators.join(", "),
        source,
    })?;

    Ok(ProblemSpec {
        variables: names,
        bracket,
        log_generators,
        max_degree: raw.max_degree,
        buffer: raw.buffer,
    })
}

impl ProblemSpec {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn poisson(&self) -> PoissonStructure {
        PoissonStructure::from_pairs(
            self.variables.clone(),
            self.bracket.iter().map(|(&(i, j), v)| (i, j, v.clone())),
        )
        .expect("validated at parse time")
    }

    pub fn divisor(&self) -> LogDivisorSpec {
        LogDivisorSpec::new(self.log_generators.clone()).expect("validated at parse time")
    }

    pub fn basis(&self) -> LogBasis {
        LogBasis::new(self.nvars(), &self.divisor())
    }

    fn render(&self, p: &Poly) -> String {
        p.to_string_with(&self.variables)
    }

    /// The document form; parsing it gives back an equal spec.
    pub fn to_json(&self) -> serde_json::Value {
        let bracket: serde_json::Map<String, serde_json::Value> = self
            .bracket
            .iter()
            .map(|(&(i, j), v)| {
                (
                    format!("{},{}", self.variables[i], self.variables[j]),
                    self.render(v).into(),
                )
            })
            .collect();
        let mut doc = serde_json::json!({
            "variables": self.variables,
            "bracket": bracket,
            "log_generators": self.log_generators.iter().map(|u| self.render(u)).collect::<Vec<_>>(),
            "max_degree": self.max_degree,
        });
        if let Some(b) = self.buffer {
            doc["buffer"] = b.into();
        }
        doc
    }
}

pub fn read_spec(path: &str) -> Result<ProblemSpec, ProblemError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(parse_spec(&text)?)
}

// ---------------------------------------------------------------- check

#[derive(Debug, Clone, Serialize)]
pub struct JacobiFailureOut {
    pub triple: [String; 3],
    pub jacobiator: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobiSummary {
    pub passed: bool,
    pub triples_checked: usize,
    pub failures: Vec<JacobiFailureOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrincipalFailureOut {
    pub generator: String,
    pub divisor_variable: String,
    /// `{generator, divisor_variable}`, not divisible by the divisor variable.
    pub bracket: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrincipalSummary {
    pub passed: bool,
    pub failures: Vec<PrincipalFailureOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizationNote {
    pub generator: String,
    pub variable: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct LogSymplecticSummary {
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub logsymplectic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// Jacobi and log-principal checks both pass.
    pub passed: bool,
    pub variables: Vec<String>,
    pub basis: Vec<String>,
    pub jacobi: JacobiSummary,
    pub log_principal: PrincipalSummary,
    pub normalizations: Vec<NormalizationNote>,
    /// Absent when the bracket is not logarithmic principal.
    pub log_symplectic: Option<LogSymplecticSummary>,
}

pub fn run_check(spec: &ProblemSpec) -> Result<CheckReport, ProblemError> {
    let p = spec.poisson();
    let names = &spec.variables;
    let jr = p.check_jacobi();
    let jacobi = JacobiSummary {
        passed: jr.passed(),
        triples_checked: jr.triples,
        failures: jr
            .failures
            .iter()
            .map(|(i, j, k, v)| JacobiFailureOut {
                triple: [names[*i].clone(), names[*j].clone(), names[*k].clone()],
                jacobiator: spec.render(v),
            })
            .collect(),
    };
    let divisor = spec.divisor();
    let pr = p.is_log_principal(&divisor);
    let log_principal = PrincipalSummary {
        passed: pr.passed(),
        failures: pr
            .failures
            .iter()
            .map(|f| PrincipalFailureOut {
                generator: names[f.generator].clone(),
                divisor_variable: names[f.divisor_variable].clone(),
                bracket: spec.render(&f.bracket),
            })
            .collect(),
    };
    let normalizations = spec
        .log_generators
        .iter()
        .zip(divisor.normalizations())
        .map(|(u, n)| NormalizationNote {
            generator: spec.render(u),
            variable: names[n.variable].clone(),
            multiplicity: n.multiplicity,
        })
        .collect();
    let basis = spec.basis();
    let log_symplectic = if pr.passed() {
        let v = logforms::log_symplectic(&p, &basis)?;
        Some(LogSymplecticSummary {
            matrix: v
                .matrix
                .iter()
                .map(|row| row.iter().map(|c| spec.render(c)).collect())
                .collect(),
            determinant: spec.render(&v.determinant),
            logsymplectic: v.is_logsymplectic,
        })
    } else {
        None
    };
    Ok(CheckReport {
        passed: jacobi.passed && log_principal.passed,
        variables: names.clone(),
        basis: basis.labels(names),
        jacobi,
        log_principal,
        normalizations,
        log_symplectic,
    })
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b: bool| if b { "pass" } else { "FAIL" };
        write!(f, "jacobi: {}", verdict(self.jacobi.passed))?;
        if self.jacobi.triples_checked == 0 {
            write!(f, " (fewer than three variables)")?;
        }
        writeln!(f)?;
        for fl in &self.jacobi.failures {
            writeln!(
                f,
                "  jacobiator({}, {}, {}) = {}",
                fl.triple[0], fl.triple[1], fl.triple[2], fl.jacobiator
            )?;
        }
        writeln!(f, "log-principal: {}", verdict(self.log_principal.passed))?;
        for fl in &self.log_principal.failures {
            writeln!(
                f,
                "  {{{}, {}}} = {} is not divisible by {}",
                fl.generator, fl.divisor_variable, fl.bracket, fl.divisor_variable
            )?;
        }
        for n in &self.normalizations {
            if n.generator != n.variable {
                writeln!(
                    f,
                    "note: log generator {} normalized to {} (multiplicity {})",
                    n.generator, n.variable, n.multiplicity
                )?;
            }
        }
        writeln!(f, "basis: {}", self.basis.join(", "))?;
        match &self.log_symplectic {
            Some(ls) => {
                writeln!(f, "H~ matrix:")?;
                for row in &ls.matrix {
                    writeln!(f, "  [{}]", row.join(", "))?;
                }
                writeln!(f, "determinant: {}", ls.determinant)?;
                writeln!(f, "logsymplectic: {}", ls.logsymplectic)
            }
            None => writeln!(f, "logsymplectic: not applicable"),
        }
    }
}

// ---------------------------------------------------------------- cohomology

/// Command-line overrides of the document's window.
#[derive(Debug, Clone, Copy, Default)]
pub struct WindowOverride {
    pub max_degree: Option<u32>,
    pub buffer: Option<u32>,
}

impl WindowOverride {
    pub fn resolve(&self, spec: &ProblemSpec, data: &LieRinehartData) -> SliceWindow {
        let max_degree = self.max_degree.unwrap_or(spec.max_degree);
        let mut w = SliceWindow::for_complex(data, max_degree);
        if let Some(b) = self.buffer.or(spec.buffer) {
            w.buffer = b;
        }
        w
    }
}

/// Parses `"k"`, `"a..b"` or `"a-b"` (inclusive) into cochain degrees `≤ rank`.
pub fn parse_k_range(text: &str, rank: usize) -> Result<Vec<usize>, ProblemError> {
    let bad = || ProblemError::Usage(format!("bad --k range {text:?}; expected k, a..b or a-b"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..").or_else(|| text.split_once('-')) {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let k = num(text)?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    if hi > rank {
        return Err(ProblemError::Usage(format!(
            "cochain degree {hi} exceeds the number of variables {rank}"
        )));
    }
    Ok((lo..=hi).collect())
}

/// Builds the complex of the given kind, after the checks it depends on.
pub fn build_complex(spec: &ProblemSpec, kind: ComplexKind) -> Result<LieRinehartData, ProblemError> {
    let p = spec.poisson();
    if kind != ComplexKind::LogDeRham && !p.check_jacobi().passed() {
        return Err(ProblemError::CheckFailed("the bracket violates the Jacobi identity".into()));
    }
    if kind != ComplexKind::Poisson && !p.is_log_principal(&spec.divisor()).passed() {
        return Err(ProblemError::CheckFailed(
            "the bracket is not logarithmic principal along the divisor".into(),
        ));
    }
    Ok(match kind {
        ComplexKind::Poisson => poisson_complex(&p),
        ComplexKind::LogPoisson => log_poisson_complex_on(&p, &spec.basis())?,
        ComplexKind::LogDeRham => log_derham_complex(&spec.basis()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub variables: Vec<String>,
    /// Cochain basis labels (`dx` for the Poisson complex).
    pub basis: Vec<String>,
    pub table: CohomologyTable,
}

pub fn run_cohomology(
    spec: &ProblemSpec,
    kind: ComplexKind,
    ks: &[usize],
    window: WindowOverride,
) -> Result<CohomologyReport, ProblemError> {
    let data = build_complex(spec, kind)?;
    let w = window.resolve(spec, &data);
    let basis = match kind {
        ComplexKind::Poisson => LogBasis::exact(spec.nvars()),
        _ => spec.basis(),
    };
    Ok(CohomologyReport {
        variables: spec.variables.clone(),
        basis: basis.labels(&spec.variables),
        table: cohomology_table(&data, Some(kind), ks, w),
    })
}

/// Column-aligned text rendering. Entries not yet stable under a larger
/// image buffer carry a trailing `?`.
pub fn render_table(t: &CohomologyTable) -> String {
    let kind = t.kind.map(|k| k.name()).unwrap_or("complex");
    let mut out = format!(
        "{kind}: per-degree dim H^k, max degree {}, buffer {}, shift {}\n",
        t.window.max_degree, t.window.buffer, t.shift
    );
    let cell = |e: &CohomologyEntry| format!("{}{}", e.dim, if e.stabilized { "" } else { "?" });
    let mut width = 5;
    for row in t.rows.values() {
        for e in row {
            width = width.max(cell(e).len());
        }
        width = width.max(row.last().map_or(0, |e| e.cumulative.to_string().len()));
    }
    let mut header = format!("{:>3} |", "k\\d");
    for d in 0..=t.window.max_degree {
        header += &format!(" {d:>width$}");
    }
    header += &format!(" | {:>width$}", "total");
    out += &header;
    out.push('\n');
    out += &"-".repeat(header.chars().count());
    out.push('\n');
    for (k, row) in &t.rows {
        out += &format!("{k:>3} |");
        for e in row {
            out += &format!(" {:>width$}", cell(e));
        }
        out += &format!(" | {:>width$}\n", t.total(*k));
    }
    if t.rows.values().flatten().any(|e| !e.stabilized) {
        out += "? = changes when the image buffer grows; raise --buffer\n";
    }
    out
}

// ---------------------------------------------------------------- compare

#[derive(Debug, Clone, Serialize)]
pub struct PairComparison {
    pub left: ComplexKind,
    pub right: ComplexKind,
    pub equal: bool,
    pub first_difference_degree: Option<u32>,
    pub differences: Vec<DimDifference>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub tables: Vec<CohomologyReport>,
    pub comparisons: Vec<PairComparison>,
}

pub fn run_compare(
    spec: &ProblemSpec,
    kinds: &[ComplexKind],
    ks: &[usize],
    window: WindowOverride,
) -> Result<CompareReport, ProblemError> {
    let tables = kinds
        .iter()
        .map(|&kind| run_cohomology(spec, kind, ks, window))
        .collect::<Result<Vec<_>, _>>()?;
    let mut comparisons = Vec::new();
    for a in 0..tables.len() {
        for b in a + 1..tables.len() {
            let c = compare_tables(&tables[a].table, &tables[b].table)?;
            comparisons.push(PairComparison {
                left: kinds[a],
                right: kinds[b],
                equal: c.equal(),
                first_difference_degree: c.first_difference_degree(),
                differences: c.differences,
            });
        }
    }
    Ok(CompareReport { tables, comparisons })
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tables {
            writeln!(f, "{}", render_table(&t.table))?;
        }
        for c in &self.comparisons {
            write!(f, "{} vs {}: ", c.left, c.right)?;
            match c.first_difference_degree {
                None => writeln!(f, "equal")?,
                Some(d) => {
                    writeln!(f, "differ from degree {d}")?;
                    for x in &c.differences {
                        writeln!(f, "  H^{} degree {}: {} vs {}", x.k, x.degree, x.left, x.right)?;
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- prequantize

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    pub forms: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PrequantizeOutcome {
    /// `d(witness) = π`, checked exactly.
    Prequantizable { witness: Vec<Component> },
    /// No primitive among sources of degree `≤ max_source_degree`.
    Obstruction {
        max_source_degree: u32,
        h2: Vec<CohomologyEntry>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct PrequantizeReport {
    pub basis: Vec<String>,
    pub window: SliceWindow,
    /// The curvature cochain `π(e_i, e_j) = s_ij`.
    pub pi: Vec<Component>,
    pub outcome: PrequantizeOutcome,
}

fn components(spec: &ProblemSpec, labels: &[String], c: &Cochain) -> Vec<Component> {
    c.components()
        .map(|(t, v)| Component {
            forms: t.iter().map(|&i| labels[i].clone()).collect(),
            value: spec.render(v),
        })
        .collect()
}

/// The 2-cochain `π` with values `s_ij` on the logarithmic basis.
pub fn pi_cochain(p: &PoissonStructure, basis: &LogBasis) -> Result<Cochain, LogFormsError> {
    let mut c = Cochain::zero(2, p.nvars());
    for t in tuples(basis.len(), 2) {
        c.set(&t, logforms::pi_value(p, basis, t[0], t[1])?);
    }
    Ok(c)
}

pub fn run_prequantize(spec: &ProblemSpec, window: WindowOverride) -> Result<PrequantizeReport, ProblemError> {
    let data = build_complex(spec, ComplexKind::LogPoisson)?;
    let w = window.resolve(spec, &data);
    let p = spec.poisson();
    let basis = spec.basis();
    let labels = basis.labels(&spec.variables);
    let pi = pi_cochain(&p, &basis)?;
    let outcome = match find_primitive(&data, &pi, w)? {
        Primitive::Found(witness) => {
            if differential(&data, &witness) != pi {
                return Err(ProblemError::Internal("primitive does not reproduce π".into()));
            }
            PrequantizeOutcome::Prequantizable {
                witness: (0..basis.len())
                    .map(|i| Component {
                        forms: vec![labels[i].clone()],
                        value: spec.render(&witness.eval(&[i])),
                    })
                    .collect(),
            }
        }
        Primitive::NoneInWindow { max_source_degree } => PrequantizeOutcome::Obstruction {
            max_source_degree,
            h2: if basis.len() >= 2 {
                cohomology_dims(&data, 2, w)
            } else {
                Vec::new()
            },
        },
    };
    Ok(PrequantizeReport {
        pi: components(spec, &labels, &pi),
        basis: labels,
        window: w,
        outcome,
    })
}

impl fmt::Display for PrequantizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "basis: {}", self.basis.join(", "))?;
        if self.pi.is_empty() {
            writeln!(f, "pi = 0")?;
        }
        for c in &self.pi {
            writeln!(f, "pi({}) = {}", c.forms.join(", "), c.value)?;
        }
        match &self.outcome {
            PrequantizeOutcome::Prequantizable { witness } => {
                writeln!(f, "prequantizable within window: d(w) = pi with")?;
                for c in witness {
                    writeln!(f, "  w({}) = {}", c.forms[0], c.value)?;
                }
            }
            PrequantizeOutcome::Obstruction { max_source_degree, h2 } => {
                writeln!(
                    f,
                    "obstruction persists: no primitive of degree <= {max_source_degree} \
                     (inconclusive beyond the window)"
                )?;
                if !h2.is_empty() {
                    let dims: Vec<String> = h2.iter().map(|e| e.dim.to_string()).collect();
                    writeln!(f, "H^2 per degree: {}", dims.join(" "))?;
                }
            }
        }
        Ok(())
    }
}
