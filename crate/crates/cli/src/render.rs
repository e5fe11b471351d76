use std::fmt::Write;

use serde::Serialize;
use zigzag_core::analysis::{AnalysisError, Report, SweepRow, SweepSummary, CHECK_NAMES};
use zigzag_core::exactlin::{Field, Scalar};
use zigzag_core::linmaps::{self, extract_params, materialize, DerivationParams, Flavor, LinearMap};
use zigzag_core::quiver::{parse_graph, validate};
use zigzag_core::zigzag::{build_algebra, BasisElement};

fn edge_list(edges: &[[usize; 2]]) -> String {
    if edges.is_empty() {
        return "(none)".into();
    }
    edges.iter().map(|[u, v]| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

pub fn report(r: &Report) -> String {
    let mut s = String::new();
    let kind = if r.is_tree { "tree" } else { "not a tree" };
    let _ = writeln!(s, "graph: n={}, edges {} ({kind})", r.n, edge_list(&r.edges));
    let _ = writeln!(s, "field: {}", r.field);
    let jordan = r.dim_jordan.map_or("skipped".to_string(), |d| d.to_string());
    let rows: [(&str, String); 9] = [
        ("dim algebra", r.dim_algebra.to_string()),
        ("dim center", r.dim_center.to_string()),
        ("dim Der", r.dim_der.to_string()),
        ("dim Jordan Der", jordan),
        ("dim anti-Der", r.dim_anti.to_string()),
        ("dim IDer", r.dim_inner.to_string()),
        ("HH^0", r.hh0.to_string()),
        ("HH^1", r.hh1.to_string()),
        ("checks failed", r.failed_checks().len().to_string()),
    ];
    for (label, value) in rows {
        let _ = writeln!(s, "  {label:<16}{value:>6}");
    }
    let _ = writeln!(s, "checks:");
    for name in CHECK_NAMES {
        let status = r.formula_checks.get(name).map_or("?".to_string(), ToString::to_string);
        let _ = writeln!(s, "  {name:<22}{status}");
    }
    let timing: Vec<String> = r.timing_ms.iter().map(|(k, v)| format!("{k} {v:.2}")).collect();
    let _ = writeln!(s, "timing (ms): {}", timing.join(", "));
    s
}

pub fn sweep(summary: &SweepSummary, quiet: bool) -> String {
    let mut s = String::new();
    if !quiet {
        let _ = writeln!(
            s,
            "sweep: {} trees, n in [{}, {}], seed {}, field {}",
            summary.count, summary.n_min, summary.n_max, summary.seed, summary.field
        );
        let _ = writeln!(s, "{:>5} {:>4} {:>8} {:>10} {:>4}  verdict", "#", "n", "dim_der", "dim_inner", "hh1");
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |d| d.to_string());
        for row in &summary.rows {
            let _ = writeln!(
                s,
                "{:>5} {:>4} {:>8} {:>10} {:>4}  {}",
                row.index,
                row.n,
                opt(row.dim_der),
                opt(row.dim_inner),
                opt(row.hh1),
                if row.passed { "pass" } else { "FAIL" }
            );
        }
    }
    if summary.failed == 0 {
        let _ = writeln!(s, "PASS: {}/{} trees", summary.passed, summary.count);
    } else {
        let _ = writeln!(s, "FAIL: {}/{} trees failed", summary.failed, summary.count);
    }
    s
}

/// The failing tree as a graph file, for reproduction.
pub fn failing_tree(row: &SweepRow) -> String {
    let mut s = format!("tree #{} (n={}, tree seed {}) failed", row.index, row.n, row.tree_seed);
    if let Some(e) = &row.error {
        let _ = write!(s, ": {e}");
    } else if !row.failed_checks.is_empty() {
        let _ = write!(s, ": {}", row.failed_checks.join(", "));
    }
    let _ = write!(s, "\nvertices {}", row.n);
    for [u, v] in &row.edges {
        let _ = write!(s, "\nedge {u} {v}");
    }
    s
}

#[derive(Debug, Serialize)]
pub struct DumpedMap {
    /// `matrix[p][q]` is the coefficient of basis element `p` in the image of basis element `q`.
    pub matrix: Vec<Vec<Scalar>>,
    pub params: Option<DerivationParams>,
    #[serde(skip)]
    pub images: Vec<(String, String)>,
}

#[derive(Debug, Serialize)]
pub struct DerivationDump {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub is_tree: bool,
    pub field: Field,
    pub basis: Vec<String>,
    pub arrows: Vec<String>,
    pub dimension: usize,
    pub maps: Vec<DumpedMap>,
}

fn combination(terms: &[(usize, Scalar)], labels: &[BasisElement]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (p, v)) in terms.iter().enumerate() {
        let text = v.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != "1" {
            let _ = write!(out, "{mag} ");
        }
        let _ = write!(out, "{}", labels[*p]);
    }
    out
}

pub fn derivation_dump(bytes: &[u8], field: Field) -> Result<DerivationDump, AnalysisError> {
    let g = parse_graph(bytes).map_err(|e| AnalysisError::InvalidInput(e.to_string()))?;
    let a = build_algebra(&g, field)?;
    let der = linmaps::solve(&a, Flavor::Derivation)?;
    let labels = a.basis().to_vec();
    let maps = der
        .basis()
        .iter()
        .map(|m: &LinearMap| {
            let params = extract_params(&a, m);
            let params = (materialize(&a, &params).as_ref() == Ok(m)).then_some(params);
            let images = (0..a.dim())
                .map(|q| (labels[q].to_string(), combination(&m.column(q), &labels)))
                .collect();
            DumpedMap {
                matrix: m.to_rows(),
                params,
                images,
            }
        })
        .collect();
    Ok(DerivationDump {
        n: g.vertex_count(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        is_tree: validate(&g).is_tree,
        field,
        basis: labels.iter().map(ToString::to_string).collect(),
        arrows: a.quiver().arrows().iter().map(ToString::to_string).collect(),
        dimension: der.dimension(),
        maps,
    })
}

pub fn dump_text(d: &DerivationDump) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "derivation space of Z(Γ), n={}, edges {}, field {}: dimension {}",
        d.n,
        edge_list(&d.edges),
        d.field,
        d.dimension
    );
    for (k, m) in d.maps.iter().enumerate() {
        let _ = writeln!(s, "D{}:", k + 1);
        for (b, image) in m.images.iter().filter(|(_, img)| img != "0") {
            let _ = writeln!(s, "  {b} -> {image}");
        }
        if let Some(p) = &m.params {
            let fmt_params = |name: &str, vals: &[Scalar]| -> Vec<String> {
                vals.iter()
                    .zip(&d.arrows)
                    .filter(|(v, _)| !v.is_zero())
                    .map(|(v, a)| format!("{name}[{a}]={v}"))
                    .collect()
            };
            let mut listed = fmt_params("t", &p.arrow_coeffs);
            listed.extend(fmt_params("d", &p.diag_coeffs));
            let _ = writeln!(s, "  params: {}", listed.join(" "));
        }
    }
    s
}
