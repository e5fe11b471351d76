//! End-to-end analysis of one graph, and seeded sweeps over random trees.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{self, Field};
use crate::linmaps::{self, has_derivation_shape, Flavor, MapSpace, SolveError};
use crate::quiver::{parse_graph, random_tree, validate, Graph};
use crate::zigzag::{build_algebra, AlgebraError, Element, ZigzagAlgebra};

pub const CHECK_NAMES: [&str; 8] = [
    "dim_algebra_formula",
    "center_formula",
    "der_formula",
    "inner_formula",
    "hh1_is_one",
    "jordan_eq_der",
    "anti_is_zero",
    "structured_eq_solver",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl AnalysisError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::InvalidInput(_) => 1,
            AnalysisError::Internal(_) => 2,
        }
    }
}

impl From<AlgebraError> for AnalysisError {
    fn from(e: AlgebraError) -> Self {
        AnalysisError::InvalidInput(e.to_string())
    }
}

impl From<SolveError> for AnalysisError {
    fn from(e: SolveError) -> Self {
        AnalysisError::Internal(e.to_string())
    }
}

impl From<exactlin::LinalgError> for AnalysisError {
    fn from(e: exactlin::LinalgError) -> Self {
        AnalysisError::Internal(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A failed check in a prime field: reported, never fatal.
    Warn,
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Warn => "warn",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub field: Field,
    pub skip_jordan: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub is_tree: bool,
    pub field: Field,
    pub dim_algebra: usize,
    pub dim_center: usize,
    pub dim_der: usize,
    pub dim_jordan: Option<usize>,
    pub dim_anti: usize,
    pub dim_inner: usize,
    pub hh0: usize,
    pub hh1: usize,
    pub formula_checks: BTreeMap<String, CheckStatus>,
    pub warnings: Vec<String>,
    /// Wall-clock milliseconds per stage. The only nondeterministic field.
    pub timing_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.formula_checks
            .iter()
            .filter(|(_, s)| **s == CheckStatus::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failed_checks().is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }
}

struct Stopwatch {
    timings: BTreeMap<String, f64>,
}

impl Stopwatch {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings
            .insert(stage.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

/// Dimensions that are compared against the rational baseline in prime mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CoreDims {
    center: usize,
    der: usize,
    jordan: Option<usize>,
    anti: usize,
    inner: usize,
}

fn core_dims(a: &ZigzagAlgebra, with_jordan: bool) -> Result<CoreDims, AnalysisError> {
    Ok(CoreDims {
        center: a.center().len(),
        der: linmaps::solve(a, Flavor::Derivation)?.dimension(),
        jordan: if with_jordan {
            Some(linmaps::solve(a, Flavor::Jordan)?.dimension())
        } else {
            None
        },
        anti: linmaps::solve(a, Flavor::Anti)?.dimension(),
        inner: linmaps::inner_space(a)?.dimension(),
    })
}

fn elements_as_vectors(v: &[Element]) -> Vec<exactlin::Vector> {
    v.iter().map(|e| e.coeffs().to_vec()).collect()
}

fn verdict(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Parses and analyzes a graph file's bytes.
pub fn analyze_bytes(bytes: &[u8], opts: &AnalyzeOptions) -> Result<Report, AnalysisError> {
    let g = parse_graph(bytes).map_err(|e| AnalysisError::InvalidInput(e.to_string()))?;
    analyze_graph(&g, opts)
}

/// Runs the full pipeline on one graph.
///
/// Invalid graphs (one vertex, disconnected) are input errors. Solver
/// post-verification failures, a broken product table, or inner derivations
/// escaping the derivation space are internal errors. Formula checks only
/// apply to trees, except the algebra dimension, which holds for every
/// connected graph.
pub fn analyze_graph(g: &Graph, opts: &AnalyzeOptions) -> Result<Report, AnalysisError> {
    let mut clock = Stopwatch {
        timings: BTreeMap::new(),
    };
    let mut warnings = Vec::new();
    let field = opts.field;
    let prime_mode = !field.is_rational();
    let mut skip_jordan = opts.skip_jordan;
    if field.characteristic() == 2 && !skip_jordan {
        skip_jordan = true;
        warnings.push(
            "Jordan derivations skipped: the Jordan solver refuses characteristic 2 (a∘a = 2a² vanishes)"
                .to_string(),
        );
    }

    let validation = clock.time("validate", || validate(g));
    let a = clock.time("build", || build_algebra(g, field))?;
    let well_formed = clock.time("table_audit", || {
        a.check_associativity() && a.check_identity() && a.check_orthogonal_idempotents()
    });
    if !well_formed {
        return Err(AnalysisError::Internal(
            "product table failed the associativity/identity audit".into(),
        ));
    }

    let center = clock.time("center", || a.center());
    let der = clock.time("derivation", || linmaps::solve(&a, Flavor::Derivation))?;
    let jordan = if skip_jordan {
        None
    } else {
        Some(clock.time("jordan", || linmaps::solve(&a, Flavor::Jordan))?)
    };
    let anti = clock.time("anti", || linmaps::solve(&a, Flavor::Anti))?;
    let inner = clock.time("inner", || linmaps::inner_space(&a))?;
    let structured = clock.time("structured", || linmaps::structured_space(&a))?;
    let hh = linmaps::hh_dims_from(center.len(), &der, &inner)?;

    let n = g.vertex_count();
    let arrows = a.quiver().arrow_count();
    let tree_only = |check: &dyn Fn() -> Result<bool, AnalysisError>| -> Result<CheckStatus, AnalysisError> {
        if validation.is_tree {
            Ok(verdict(check()?))
        } else {
            Ok(CheckStatus::NotApplicable)
        }
    };

    let mut checks = BTreeMap::new();
    checks.insert("dim_algebra_formula", verdict(a.dim() == 2 * n + arrows));
    checks.insert(
        "center_formula",
        tree_only(&|| {
            Ok(center.len() == n + 1
                && exactlin::span_equal(
                    &elements_as_vectors(&center),
                    &elements_as_vectors(&a.expected_center_basis()),
                )?)
        })?,
    );
    checks.insert("der_formula", tree_only(&|| Ok(der.dimension() == 3 * n - 2))?);
    checks.insert(
        "inner_formula",
        tree_only(&|| {
            Ok(inner.dimension() == n + arrows - 1 && inner.dimension() == a.dim() - center.len())
        })?,
    );
    checks.insert("hh1_is_one", tree_only(&|| Ok(hh.hh1 == 1))?);
    checks.insert(
        "jordan_eq_der",
        match &jordan {
            None => CheckStatus::NotApplicable,
            Some(j) => tree_only(&|| Ok(j.span_equal(&der)?))?,
        },
    );
    checks.insert("anti_is_zero", tree_only(&|| Ok(anti.dimension() == 0))?);
    checks.insert(
        "structured_eq_solver",
        clock.time("structured_check", || {
            tree_only(&|| {
                Ok(structured.span_equal(&der)?
                    && der.basis().iter().all(|m| has_derivation_shape(&a, m)))
            })
        })?,
    );

    if prime_mode {
        for status in checks.values_mut() {
            if *status == CheckStatus::Fail {
                *status = CheckStatus::Warn;
            }
        }
        let baseline_alg = build_algebra(g, Field::rationals())?;
        let baseline = clock.time("rational_baseline", || core_dims(&baseline_alg, jordan.is_some()))?;
        let here = CoreDims {
            center: center.len(),
            der: der.dimension(),
            jordan: jordan.as_ref().map(MapSpace::dimension),
            anti: anti.dimension(),
            inner: inner.dimension(),
        };
        let pairs = [
            ("dim_center", here.center, baseline.center),
            ("dim_der", here.der, baseline.der),
            ("dim_anti", here.anti, baseline.anti),
            ("dim_inner", here.inner, baseline.inner),
        ];
        for (name, got, want) in pairs {
            if got != want {
                warnings.push(format!("{name} over {field} is {got}, rational baseline is {want}"));
            }
        }
        if let (Some(got), Some(want)) = (here.jordan, baseline.jordan) {
            if got != want {
                warnings.push(format!("dim_jordan over {field} is {got}, rational baseline is {want}"));
            }
        }
    }

    Ok(Report {
        n,
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        is_tree: validation.is_tree,
        field,
        dim_algebra: a.dim(),
        dim_center: center.len(),
        dim_der: der.dimension(),
        dim_jordan: jordan.as_ref().map(MapSpace::dimension),
        dim_anti: anti.dimension(),
        dim_inner: inner.dimension(),
        hh0: hh.hh0,
        hh1: hh.hh1,
        formula_checks: checks.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        warnings,
        timing_ms: clock.timings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub analyze: AnalyzeOptions,
}

/// One sweep entry. Deliberately free of timings so sweeps are byte-for-byte
/// reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub n: usize,
    pub tree_seed: u64,
    pub edges: Vec<[usize; 2]>,
    pub dim_der: Option<usize>,
    pub dim_inner: Option<usize>,
    pub hh1: Option<usize>,
    pub passed: bool,
    pub failed_checks: Vec<String>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub seed: u64,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub field: Field,
    pub rows: Vec<SweepRow>,
    pub passed: usize,
    pub failed: usize,
}

impl SweepSummary {
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            2
        }
    }
}

/// Vertex count and generator seed of the `index`-th sweep tree: sizes cycle
/// through `n_min..=n_max`, seeds are `seed + index` (wrapping).
pub fn sweep_tree_params(opts: &SweepOptions, index: usize) -> (usize, u64) {
    let span = opts.n_max - opts.n_min + 1;
    (opts.n_min + index % span, opts.seed.wrapping_add(index as u64))
}

/// Analyzes `count` random trees. Trees are processed in parallel; rows come
/// back in generation order.
pub fn sweep(opts: &SweepOptions) -> Result<SweepSummary, AnalysisError> {
    if opts.n_min < 2 || opts.n_min > opts.n_max {
        return Err(AnalysisError::InvalidInput(format!(
            "sweep needs 2 <= n_min <= n_max, got n_min={} n_max={}",
            opts.n_min, opts.n_max
        )));
    }
    let rows: Vec<SweepRow> = (0..opts.count)
        .into_par_iter()
        .map(|index| {
            let (n, tree_seed) = sweep_tree_params(opts, index);
            let g = random_tree(n, tree_seed).expect("n >= 2");
            let edges = g.edges().map(|(u, v)| [u, v]).collect();
            match analyze_graph(&g, &opts.analyze) {
                Ok(r) => SweepRow {
                    index,
                    n,
                    tree_seed,
                    edges,
                    dim_der: Some(r.dim_der),
                    dim_inner: Some(r.dim_inner),
                    hh1: Some(r.hh1),
                    passed: r.passed(),
                    failed_checks: r.failed_checks().into_iter().map(String::from).collect(),
                    warnings: r.warnings,
                    error: None,
                },
                Err(e) => SweepRow {
                    index,
                    n,
                    tree_seed,
                    edges,
                    dim_der: None,
                    dim_inner: None,
                    hh1: None,
                    passed: false,
                    failed_checks: Vec::new(),
                    warnings: Vec::new(),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let passed = rows.iter().filter(|r| r.passed).count();
    Ok(SweepSummary {
        seed: opts.seed,
        count: opts.count,
        n_min: opts.n_min,
        n_max: opts.n_max,
        field: opts.analyze.field,
        failed: rows.len() - passed,
        rows,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_report() {
        let r = analyze_bytes(b"vertices 2\nedge 1 2\n", &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.dim_algebra, r.dim_center, r.dim_der, r.dim_inner), (6, 3, 4, 3));
        assert_eq!((r.hh0, r.hh1, r.dim_anti, r.dim_jordan), (3, 1, 0, Some(4)));
        assert_eq!(r.formula_checks.len(), CHECK_NAMES.len());
        assert!(r.formula_checks.values().all(|s| *s == CheckStatus::Pass));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn triangle_is_reported_without_tree_checks() {
        let r = analyze_graph(&Graph::cycle(3), &AnalyzeOptions::default()).unwrap();
        assert!(!r.is_tree);
        assert_eq!(r.formula_checks["dim_algebra_formula"], CheckStatus::Pass);
        for name in CHECK_NAMES.iter().skip(1) {
            assert_eq!(r.formula_checks[*name], CheckStatus::NotApplicable, "{name}");
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn input_errors() {
        let opts = AnalyzeOptions::default();
        assert_eq!(analyze_bytes(b"vertices 3\nedge 1 1", &opts).unwrap_err().exit_code(), 1);
        assert_eq!(analyze_bytes(b"vertices 1", &opts).unwrap_err().exit_code(), 1);
        assert_eq!(analyze_bytes(b"vertices 3\nedge 1 2", &opts).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn characteristic_two_skips_jordan() {
        let opts = AnalyzeOptions {
            field: Field::prime(2).unwrap(),
            skip_jordan: false,
        };
        let r = analyze_graph(&Graph::path(3), &opts).unwrap();
        assert_eq!(r.dim_jordan, None);
        assert_eq!(r.formula_checks["jordan_eq_der"], CheckStatus::NotApplicable);
        assert!(r.warnings.iter().any(|w| w.contains("characteristic 2")));
        assert!(!r.formula_checks.values().any(|s| *s == CheckStatus::Fail));
    }

    #[test]
    fn report_json_round_trips() {
        let r = analyze_graph(&Graph::star(5), &AnalyzeOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sweep_small() {
        let opts = SweepOptions {
            count: 6,
            n_min: 2,
            n_max: 4,
            seed: 9,
            analyze: AnalyzeOptions::default(),
        };
        let s = sweep(&opts).unwrap();
        assert_eq!((s.passed, s.failed), (6, 0));
        assert_eq!(s.rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 3, 4, 2, 3, 4]);
        assert!(s.rows.iter().all(|r| r.hh1 == Some(1)));
        assert_eq!(s, sweep(&opts).unwrap());
        let bad = SweepOptions { n_min: 1, ..opts };
        assert_eq!(sweep(&bad).unwrap_err().exit_code(), 1);
    }
}
