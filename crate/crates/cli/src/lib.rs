//! Command implementations behind the `bodycad` binary.
//!
//! Every command returns its stdout text and exit code so tests can drive it
//! without spawning a process.

pub mod files;
pub mod number;

use std::path::Path;

use bodycad_core::geometry::Scalar;
use bodycad_core::model::{cad_graph_of, primitive_graph_of, validate, Framework, Violation};
use bodycad_core::rigidity::{analyze_with, assemble, perturb_audit, FlexBasis, Mode, RigidityError};
use bodycad_core::sparsity::{
    nested, pebble_components, pebble_decision, MultiGraph, NestedCounts, NestedMode, NestedResult, SparsityCounts,
    SparsityError,
};
use serde_json::{json, Value};
use thiserror::Error;

pub use files::{framework_to_json, parse_framework, parse_graph, FileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: FileError,
    },
    #[error("invalid framework:\n{}", .0.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Sparsity(#[from] SparsityError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

/// What a command prints on stdout and the code it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_framework(path: &Path) -> Result<Framework, CliError> {
    parse_framework(&read(path)?).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<MultiGraph, CliError> {
    parse_graph(&read(path)?).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

fn checked(fw: &Framework) -> Result<(), CliError> {
    let violations = validate(fw);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invalid(violations))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn rationals(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(number::to_json).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    pub mode: Mode,
    /// Number of random rigid-motion trials, if an audit is wanted.
    pub perturb_trials: Option<usize>,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            mode: Mode::Rational,
            perturb_trials: None,
            seed: 1,
        }
    }
}

/// Rigidity report as JSON. Exit 0 when rigid, 3 when flexible.
pub fn analyze_framework(fw: &Framework, opts: &AnalyzeOptions) -> Result<Outcome, CliError> {
    let r = analyze_with(fw, opts.mode).map_err(|e| match e {
        RigidityError::Invalid(v) => CliError::Invalid(v),
        other => CliError::Rigidity(other),
    })?;
    let full = (6 * r.n).saturating_sub(6);
    let summary = if r.is_rigid {
        let shape = if r.is_minimally_rigid {
            "minimally rigid"
        } else {
            "rigid"
        };
        format!(
            "{shape}: rank {} of {full} with {} rows, {} redundant (infinitesimal, at this realization)",
            r.rank,
            r.rows,
            r.redundant_rows.len()
        )
    } else {
        format!(
            "flexible: rank {} of {full} with {} rows, {} degrees of freedom, {} redundant (infinitesimal, at this realization)",
            r.rank,
            r.rows,
            r.dof,
            r.redundant_rows.len()
        )
    };
    let flex = match &r.flex_basis {
        FlexBasis::Exact(vs) => Value::Array(vs.iter().map(|v| rationals(v)).collect()),
        FlexBasis::Float(vs) => json!(vs),
    };
    let (mode, tolerance) = match opts.mode {
        Mode::Rational => ("rational", Value::Null),
        Mode::Float { tolerance } => ("float", json!(tolerance)),
    };
    let mut report = json!({
        "mode": mode,
        "tolerance": tolerance,
        "n": r.n,
        "rows": r.rows,
        "rank": r.rank,
        "dof": r.dof,
        "isRigid": r.is_rigid,
        "isMinimallyRigid": r.is_minimally_rigid,
        "isOverconstrained": r.is_overconstrained,
        "redundantRows": r.redundant_rows.iter().zip(&r.redundant_sources).map(|(row, s)| json!({
            "row": row,
            "constraint": s.constraint,
            "ordinal": s.ordinal,
        })).collect::<Vec<_>>(),
        "flexBasis": flex,
        "trivialKernelCheck": if r.trivial_kernel_ok { "pass" } else { "fail" },
        "components": r.components.iter().map(|c| json!({
            "bodies": c.bodies,
            "rows": c.rows,
            "rank": c.rank,
            "dof": c.dof,
        })).collect::<Vec<_>>(),
        "summary": summary,
    });
    if let Some(trials) = opts.perturb_trials {
        let audit = perturb_audit(fw, trials, opts.seed)?;
        report["perturbAudit"] = json!({
            "trials": trials,
            "seed": opts.seed,
            "baseRank": audit.base_rank,
            "trialRanks": audit.trial_ranks,
            "rankChanged": audit.rank_changed(),
        });
    }
    Ok(Outcome {
        stdout: pretty(&report),
        code: if r.is_rigid { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

pub fn cmd_analyze(path: &Path, opts: &AnalyzeOptions) -> Result<Outcome, CliError> {
    analyze_framework(&load_framework(path)?, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

/// Columns of body `b`: the velocity block, then the negated angular block.
pub fn column_names(n: usize) -> Vec<String> {
    (1..=n)
        .flat_map(|b| {
            ["vx", "vy", "vz", "nwx", "nwy", "nwz"]
                .into_iter()
                .map(move |c| format!("b{b}_{c}"))
        })
        .collect()
}

const CSV_META: [&str; 7] = ["row", "constraint", "ordinal", "kind", "class", "body_i", "body_j"];

pub fn matrix_framework(fw: &Framework, format: MatrixFormat) -> Result<Outcome, CliError> {
    checked(fw)?;
    let m = assemble(fw)?;
    let columns = column_names(m.n);
    let stdout = match format {
        MatrixFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: Vec<&str> = CSV_META
                .iter()
                .copied()
                .chain(columns.iter().map(String::as_str))
                .collect();
            w.write_record(&header).map_err(|e| CliError::Usage(e.to_string()))?;
            for (k, (row, meta)) in m.rows.iter().zip(&m.meta).enumerate() {
                let mut record = vec![
                    k.to_string(),
                    meta.source.constraint.to_string(),
                    meta.source.ordinal.to_string(),
                    fw.constraints[meta.source.constraint].kind().name().to_string(),
                    meta.class.name().to_string(),
                    meta.body_i.to_string(),
                    meta.body_j.to_string(),
                ];
                record.extend(row.iter().map(number::format_rational));
                w.write_record(&record).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
        MatrixFormat::Json => pretty(&json!({
            "n": m.n,
            "width": m.width(),
            "columns": columns,
            "rows": m.rows.iter().zip(&m.meta).enumerate().map(|(k, (row, meta))| json!({
                "row": k,
                "constraint": meta.source.constraint,
                "ordinal": meta.source.ordinal,
                "kind": fw.constraints[meta.source.constraint].kind().name(),
                "class": meta.class.name(),
                "bodyI": meta.body_i,
                "bodyJ": meta.body_j,
                "entries": rationals(row),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}

pub fn cmd_matrix(path: &Path, format: MatrixFormat) -> Result<Outcome, CliError> {
    matrix_framework(&load_framework(path)?, format)
}

/// Read the numeric part of a CSV matrix dump back into exact rows.
pub fn parse_matrix_csv(text: &str) -> Result<Vec<Vec<Scalar>>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let row = record
            .iter()
            .skip(CSV_META.len())
            .map(|cell| number::parse_rational(cell).ok_or_else(|| format!("row {k}: bad cell `{cell}`")))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Read the entries of a JSON matrix dump back into exact rows.
pub fn parse_matrix_json(text: &str) -> Result<Vec<Vec<Scalar>>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let rows = v["rows"].as_array().ok_or("missing `rows`")?;
    rows.iter()
        .map(|r| {
            r["entries"]
                .as_array()
                .ok_or_else(|| "missing `entries`".to_string())?
                .iter()
                .map(|x| number::from_json(x).ok_or_else(|| format!("bad entry {x}")))
                .collect()
        })
        .collect()
}

/// Parse `k1,l1,k2,l2`, or `k,l` meaning the same counts inside and out.
pub fn parse_counts(text: &str) -> Result<NestedCounts, CliError> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("counts `{text}` are not non-negative integers")))?;
    match parts.as_slice() {
        [k, l] => Ok(NestedCounts::new(*k, *l, *k, *l)?),
        [k1, l1, k2, l2] => Ok(NestedCounts::new(*k1, *l1, *k2, *l2)?),
        _ => Err(CliError::Usage(format!(
            "counts `{text}` must be `k,l` or `k1,l1,k2,l2`"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparsityMode {
    Decision,
    Extract,
    Components,
}

/// Where each edge came from when the graph was derived from a framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrigin {
    pub constraint: usize,
    pub ordinal: usize,
    pub bodies: (usize, usize),
}

/// Primitive cad graph of a framework, with the body id of each vertex and
/// the origin of each edge.
pub fn framework_graph(fw: &Framework) -> Result<(MultiGraph, Vec<usize>, Vec<EdgeOrigin>), CliError> {
    checked(fw)?;
    let h = primitive_graph_of(&cad_graph_of(fw));
    let origins = h
        .edges
        .iter()
        .map(|e| EdgeOrigin {
            constraint: e.constraint,
            ordinal: e.ordinal,
            bodies: (e.i, e.j),
        })
        .collect();
    Ok((h.to_multigraph(), h.vertices.clone(), origins))
}

fn edge_json(g: &MultiGraph, origins: Option<&[EdgeOrigin]>, index: usize) -> Value {
    let e = &g.edges()[index];
    let mut v = json!({"index": index, "u": e.u, "v": e.v, "color": files::color_name(e.color)});
    if let Some(o) = origins.map(|o| &o[index]) {
        v["constraint"] = json!(o.constraint);
        v["ordinal"] = json!(o.ordinal);
        v["bodies"] = json!([o.bodies.0, o.bodies.1]);
    }
    v
}

pub fn sparsity_graph(
    g: &MultiGraph,
    nc: NestedCounts,
    mode: SparsityMode,
    vertex_bodies: Option<&[usize]>,
    origins: Option<&[EdgeOrigin]>,
) -> Result<Outcome, CliError> {
    let (k1, l1) = (nc.outer.k, nc.outer.l);
    let mut out = json!({
        "counts": {"outer": [k1, l1], "inner": [nc.inner.k, nc.inner.l]},
        "vertexCount": g.vertex_count(),
        "edgeCount": g.edge_count(),
        "redEdgeCount": g.red_count(),
        "bound": nc.outer.bound(g.vertex_count()),
    });
    if let Some(ids) = vertex_bodies {
        out["vertexBodies"] = json!(ids);
    }
    let code = match mode {
        SparsityMode::Decision => {
            let NestedResult::Decision(sparse) = nested(g, nc, NestedMode::Decision)? else {
                unreachable!("decision mode answers with a decision")
            };
            let tight = sparse && g.edge_count() as i64 == nc.outer.bound(g.vertex_count());
            out["mode"] = json!("decision");
            out["sparse"] = json!(sparse);
            out["tight"] = json!(tight);
            if sparse {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        SparsityMode::Extract => {
            let NestedResult::Extraction(kept) = nested(g, nc, NestedMode::Extraction)? else {
                unreachable!("extraction mode answers with edges")
            };
            out["mode"] = json!("extract");
            out["size"] = json!(kept.len());
            out["edges"] = Value::Array(kept.iter().map(|&e| edge_json(g, origins, e)).collect());
            EXIT_OK
        }
        SparsityMode::Components => {
            let NestedResult::Components(comps) = nested(g, nc, NestedMode::Components)? else {
                unreachable!("components mode answers with vertex sets")
            };
            out["mode"] = json!("components");
            out["components"] = json!(comps);
            EXIT_OK
        }
    };
    Ok(Outcome {
        stdout: pretty(&out),
        code,
    })
}

pub fn cmd_sparsity(
    path: &Path,
    from_framework: bool,
    nc: NestedCounts,
    mode: SparsityMode,
) -> Result<Outcome, CliError> {
    if from_framework {
        let (g, ids, origins) = framework_graph(&load_framework(path)?)?;
        sparsity_graph(&g, nc, mode, Some(&ids), Some(&origins))
    } else {
        sparsity_graph(&load_graph(path)?, nc, mode, None, None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PebbleMode {
    Decision,
    Components,
}

/// Plain (k,l) pebble game; edge colors are ignored.
pub fn pebble_graph(g: &MultiGraph, k: usize, l: usize, mode: PebbleMode) -> Result<Outcome, CliError> {
    let c = SparsityCounts::new(k, l)?;
    let mut out = json!({
        "counts": [k, l],
        "vertexCount": g.vertex_count(),
        "edgeCount": g.edge_count(),
        "bound": c.bound(g.vertex_count()),
    });
    let code = match mode {
        PebbleMode::Decision => {
            let accepted = pebble_decision(g, c)?;
            let sparse = accepted.len() == g.edge_count();
            let rejected: Vec<usize> = (0..g.edge_count())
                .filter(|e| accepted.binary_search(e).is_err())
                .collect();
            out["mode"] = json!("decision");
            out["sparse"] = json!(sparse);
            out["tight"] = json!(sparse && g.edge_count() as i64 == c.bound(g.vertex_count()));
            out["acceptedEdges"] = json!(accepted);
            out["rejectedEdges"] = json!(rejected);
            if sparse {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        PebbleMode::Components => {
            out["mode"] = json!("components");
            out["components"] = json!(pebble_components(g, c)?);
            EXIT_OK
        }
    };
    Ok(Outcome {
        stdout: pretty(&out),
        code,
    })
}

pub fn cmd_pebble(path: &Path, k: usize, l: usize, mode: PebbleMode) -> Result<Outcome, CliError> {
    pebble_graph(&load_graph(path)?, k, l, mode)
}
