//! Report files for a census run.
//!
//! Every file is a pure function of the census result, so identical
//! results give byte-identical files. Tables are written as CSV (header
//! row, LF line endings, ascending by value then companion) or as JSON
//! arrays of the same rows.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::reference as published;
use super::{
    library_distributions, spec_distributions, CensusResult, Distribution, SPEC_COUNT,
};
use crate::error::{Error, Result};
use crate::gate::CostModel;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown report format {other:?} (expected csv or json)"
            ))),
        }
    }
}

impl ReportFormat {
    fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Means {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_len: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_len: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_cost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub library_max_len: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub library_max_cost: Option<f64>,
}

/// Comparison of one computed table against its published counterpart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableComparison {
    pub table: String,
    pub published: String,
    pub matches: bool,
    pub differing_rows: usize,
}

/// Contents of `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub scope: super::CensusScope,
    pub cost_model: Vec<u32>,
    pub library_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_count: Option<u64>,
    /// Sub-libraries times non-identity specifications.
    pub trials: u64,
    pub universal_count: usize,
    /// Σ (order − 1) over the processed sub-libraries.
    pub total_pairs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerated_pairs: Option<u64>,
    pub means: Means,
    pub comparisons: Vec<TableComparison>,
    pub notes: Vec<String>,
}

struct Table {
    name: &'static str,
    dist: Distribution,
    paired_header: &'static str,
}

/// Computed tables paired with the published tables they are compared to.
struct Comparison {
    computed: &'static str,
    published: &'static str,
    rows: BTreeMap<(u32, Option<u32>), u64>,
    reference: BTreeMap<(u32, Option<u32>), u64>,
}

fn single(rows: &[(u32, u32)]) -> BTreeMap<(u32, Option<u32>), u64> {
    rows.iter().map(|&(v, c)| ((v, None), c as u64)).collect()
}

fn paired(rows: &[(u32, u32, u32)]) -> BTreeMap<(u32, Option<u32>), u64> {
    rows.iter().map(|&(v, p, c)| ((v, Some(p)), c as u64)).collect()
}

fn counts(d: &Distribution) -> BTreeMap<(u32, Option<u32>), u64> {
    d.counts.iter().map(|(&v, &c)| ((v, None), c)).collect()
}

fn pairs(d: &Distribution) -> BTreeMap<(u32, Option<u32>), u64> {
    d.paired.iter().map(|(&(v, p), &c)| ((v, Some(p)), c)).collect()
}

fn comparisons(tables: &[Table]) -> Vec<Comparison> {
    let find = |name: &str| &tables.iter().find(|t| t.name == name).expect("table").dist;
    let mut out = Vec::new();
    let mut add = |computed, published, rows, reference| {
        out.push(Comparison {
            computed,
            published,
            rows,
            reference,
        })
    };
    if tables.iter().any(|t| t.name == "min_len") {
        add("covering_count", "spec_covering_count", counts(find("covering_count")), single(published::SPEC_COVERING_COUNT));
        add("min_len", "spec_min_len", counts(find("min_len")), single(published::SPEC_MIN_LEN));
        add("min_len", "spec_min_len_prior", counts(find("min_len")), single(published::SPEC_MIN_LEN_PRIOR));
        add("min_len_paired", "spec_min_len_paired", pairs(find("min_len")), paired(published::SPEC_MIN_LEN_PAIRED));
        add("max_len", "spec_max_len", counts(find("max_len")), single(published::SPEC_MAX_LEN));
        add("max_len_paired", "spec_max_len_paired", pairs(find("max_len")), paired(published::SPEC_MAX_LEN_PAIRED));
        add("min_cost", "spec_min_cost", counts(find("min_cost")), single(published::SPEC_MIN_COST));
        add("min_cost", "spec_min_cost_prior", counts(find("min_cost")), single(published::SPEC_MIN_COST_PRIOR));
        add("min_cost_paired", "spec_min_cost_paired", pairs(find("min_cost")), paired(published::SPEC_MIN_COST_PAIRED));
        add("max_cost", "spec_max_cost", counts(find("max_cost")), single(published::SPEC_MAX_COST));
        add("max_cost_paired", "spec_max_cost_paired", pairs(find("max_cost")), paired(published::SPEC_MAX_COST_PAIRED));
    }
    add("library_coverage", "library_coverage", counts(find("library_coverage")), single(published::LIBRARY_COVERAGE));
    add("library_max_len", "library_max_len", counts(find("library_max_len")), single(published::LIBRARY_MAX_LEN));
    add("library_max_len_paired", "library_max_len_paired", pairs(find("library_max_len")), paired(published::LIBRARY_MAX_LEN_PAIRED));
    add("library_max_cost", "library_max_cost", counts(find("library_max_cost")), single(published::LIBRARY_MAX_COST));
    add("library_max_cost_paired", "library_max_cost_paired", pairs(find("library_max_cost")), paired(published::LIBRARY_MAX_COST_PAIRED));
    out
}

fn differing(c: &Comparison) -> Vec<((u32, Option<u32>), u64, u64)> {
    let keys: BTreeSet<_> = c.rows.keys().chain(c.reference.keys()).copied().collect();
    keys.into_iter()
        .map(|k| {
            (
                k,
                c.rows.get(&k).copied().unwrap_or(0),
                c.reference.get(&k).copied().unwrap_or(0),
            )
        })
        .filter(|(_, a, b)| a != b)
        .collect()
}

fn tables(result: &CensusResult) -> Vec<Table> {
    let mut out = Vec::new();
    if let Some(specs) = &result.specs {
        let d = spec_distributions(specs);
        out.push(Table { name: "covering_count", dist: d.covering, paired_header: "" });
        out.push(Table { name: "min_len", dist: d.min_len, paired_header: "value,companion,count" });
        out.push(Table { name: "max_len", dist: d.max_len, paired_header: "value,companion,count" });
        out.push(Table { name: "min_cost", dist: d.min_cost, paired_header: "value,companion,count" });
        out.push(Table { name: "max_cost", dist: d.max_cost, paired_header: "value,companion,count" });
    }
    if let Some(libraries) = &result.libraries {
        let d = library_distributions(libraries);
        out.push(Table { name: "library_coverage", dist: d.coverage, paired_header: "" });
        out.push(Table { name: "library_max_len", dist: d.max_len, paired_header: "value,companion,count" });
        out.push(Table { name: "library_max_cost", dist: d.max_cost, paired_header: "value,companion,count" });
    }
    out
}

/// Builds the summary without writing anything.
pub fn summarize(result: &CensusResult, model: &CostModel) -> Summary {
    let tables = tables(result);
    let mean = |name: &str| tables.iter().find(|t| t.name == name).map(|t| round3(t.dist.mean()));
    let full = result.specs.is_some();
    let mut notes = Vec::new();
    if full {
        let zero_cost = tables
            .iter()
            .find(|t| t.name == "min_cost")
            .map_or(0, |t| t.dist.count(0));
        notes.push(format!(
            "{zero_cost} specifications have minimum cost 0 (circuits of NOT gates only), although the published text gives the minimum-cost range as 1 to 17"
        ));
    }
    if result.libraries.is_some() {
        notes.push(
            "extremal tables use per-sub-library optima; companions are the minimum cost among length-optimal circuits (minimum length among cost-optimal ones), tie-broken to the smallest library mask and then the smallest specification".into(),
        );
    }
    let comparisons = if result.libraries.is_some() {
        comparisons(&tables)
            .iter()
            .map(|c| {
                let rows = differing(c).len();
                TableComparison {
                    table: c.computed.into(),
                    published: c.published.into(),
                    matches: rows == 0,
                    differing_rows: rows,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Summary {
        schema_version: REPORT_SCHEMA_VERSION,
        scope: result.scope,
        cost_model: model.costs().to_vec(),
        library_count: result.groups.len(),
        spec_count: full.then_some(SPEC_COUNT),
        trials: result.groups.len() as u64 * SPEC_COUNT,
        universal_count: result.universal_count(),
        total_pairs: result.total_pairs,
        enumerated_pairs: result.enumerated_pairs,
        means: Means {
            min_len: mean("min_len"),
            max_len: mean("max_len"),
            min_cost: mean("min_cost"),
            max_cost: mean("max_cost"),
            library_max_len: mean("library_max_len"),
            library_max_cost: mean("library_max_cost"),
        },
        comparisons,
        notes,
    }
}

#[derive(Serialize)]
struct Row {
    value: u32,
    count: u64,
}

#[derive(Serialize)]
struct PairRow {
    value: u32,
    companion: u32,
    count: u64,
}

#[derive(Serialize)]
struct DiffRow {
    table: &'static str,
    published_table: &'static str,
    value: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    companion: Option<u32>,
    computed: u64,
    published: u64,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}

fn json_bytes<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes every report file into `out` (created if missing) and returns
/// the paths written, in order.
pub fn emit_report(
    result: &CensusResult,
    model: &CostModel,
    format: ReportFormat,
    out: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out)?;
    let mut written = Vec::new();
    let ext = format.extension();
    let tables = tables(result);

    for t in &tables {
        let path = out.join(format!("{}_hist.{ext}", t.name));
        let bytes = match format {
            ReportFormat::Csv => {
                let mut s = String::from("value,count\n");
                for (v, c) in &t.dist.counts {
                    s.push_str(&format!("{v},{c}\n"));
                }
                s.into_bytes()
            }
            ReportFormat::Json => json_bytes(
                &t.dist
                    .counts
                    .iter()
                    .map(|(&value, &count)| Row { value, count })
                    .collect::<Vec<_>>(),
            )?,
        };
        write_file(&path, &bytes)?;
        written.push(path);
        if t.paired_header.is_empty() {
            continue;
        }
        let path = out.join(format!("{}_paired.{ext}", t.name));
        let bytes = match format {
            ReportFormat::Csv => {
                let mut s = format!("{}\n", t.paired_header);
                for ((v, p), c) in &t.dist.paired {
                    s.push_str(&format!("{v},{p},{c}\n"));
                }
                s.into_bytes()
            }
            ReportFormat::Json => json_bytes(
                &t.dist
                    .paired
                    .iter()
                    .map(|(&(value, companion), &count)| PairRow { value, companion, count })
                    .collect::<Vec<_>>(),
            )?,
        };
        write_file(&path, &bytes)?;
        written.push(path);
    }

    if let Some(libraries) = &result.libraries {
        let mut s = String::new();
        for r in libraries {
            s.push_str(&serde_json::to_string(r)?);
            s.push('\n');
        }
        let path = out.join("library_records.jsonl");
        write_file(&path, s.as_bytes())?;
        written.push(path);

        let mut rows = Vec::new();
        for c in comparisons(&tables) {
            for ((value, companion), computed, published) in differing(&c) {
                rows.push(DiffRow {
                    table: c.computed,
                    published_table: c.published,
                    value,
                    companion,
                    computed,
                    published,
                });
            }
        }
        let path = out.join(format!("discrepancies.{ext}"));
        let bytes = match format {
            ReportFormat::Csv => {
                let mut s = String::from("table,published_table,value,companion,computed,published\n");
                for r in &rows {
                    let companion = r.companion.map(|c| c.to_string()).unwrap_or_default();
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        r.table, r.published_table, r.value, companion, r.computed, r.published
                    ));
                }
                s.into_bytes()
            }
            ReportFormat::Json => json_bytes(&rows)?,
        };
        write_file(&path, &bytes)?;
        written.push(path);
    }

    let path = out.join("summary.json");
    write_file(&path, &json_bytes(&summarize(result, model))?)?;
    written.push(path);
    Ok(written)
}

/// Mass-conservation check: per-specification tables sum to the number of
/// covered specifications and per-library tables to the number of
/// libraries processed.
pub fn check_mass(result: &CensusResult) -> Result<()> {
    for t in tables(result) {
        let expected = if t.name.starts_with("library_") {
            result.groups.len() as u64
        } else {
            result
                .specs
                .as_ref()
                .map_or(0, |s| s.spec_ids().count() as u64)
        };
        let paired: u64 = t.dist.paired.values().sum();
        if t.dist.total() != expected || (!t.paired_header.is_empty() && paired != expected) {
            return Err(Error::InvalidArgument(format!(
                "table {} holds {} entries, expected {expected}",
                t.name,
                t.dist.total()
            )));
        }
    }
    Ok(())
}
