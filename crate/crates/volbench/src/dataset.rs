//! Algorithm survey dataset (CSV) and rendering of the class tables.
//!
//! Columns: `id, poly_degree, polylog_degree, estimate_type, era,
//! application_areas[, note]`. `poly_degree` is a rational (`1/2`, `0.5`,
//! `2`), areas are separated by `;`.

use serde_json::{json, Value};
use volbench_core::survey::{
    marginals, tabulate, tabulate_adjustments, AlgorithmRecord, ClassTable, Exponent, ScalingDescriptor,
    TabulationMode,
};
use volbench_core::VolumetricClass;

use crate::FormatError;

/// The 58-record survey shipped with the tool. Individual rows are
/// synthesized so that all published aggregate counts are reproduced; no row
/// describes a particular published algorithm.
pub const BUNDLED_CSV: &str = include_str!("../data/algorithms.csv");

const COLUMNS: [&str; 6] = ["id", "poly_degree", "polylog_degree", "estimate_type", "era", "application_areas"];

pub fn bundled() -> Vec<AlgorithmRecord> {
    load_dataset(BUNDLED_CSV).expect("bundled dataset is valid")
}

pub fn load_dataset(text: &str) -> Result<Vec<AlgorithmRecord>, FormatError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| FormatError::Parse(e.to_string()))?.clone();
    let names: Vec<&str> = headers.iter().collect();
    let has_note = match names.as_slice() {
        n if n == COLUMNS => false,
        [head @ .., "note"] if head == COLUMNS => true,
        _ => {
            return Err(FormatError::Schema(format!(
                "header must be `{},[note]`, got `{}`",
                COLUMNS.join(","),
                names.join(",")
            )))
        }
    };

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| FormatError::Parse(e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| row.get(i).unwrap_or("");
        let bad = |what: &str, e: &dyn std::fmt::Display| FormatError::Schema(format!("line {line}: {what}: {e}"));
        if row.len() != names.len() {
            return Err(FormatError::Schema(format!("line {line}: expected {} fields, got {}", names.len(), row.len())));
        }
        let p: Exponent = field(1).parse().map_err(|e| bad("poly_degree", &e))?;
        let q: u32 = field(2).parse().map_err(|e| bad("polylog_degree", &e))?;
        let estimate = field(3).parse().map_err(|e| bad("estimate_type", &e))?;
        let era = field(4).parse().map_err(|e| bad("era", &e))?;
        let areas = field(5)
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad("application_areas", &e))?;
        let mut record = AlgorithmRecord::new(field(0), ScalingDescriptor::new(p, q), estimate, era, areas)
            .map_err(|e| FormatError::Invariant(format!("line {line}: {e}")))?;
        if has_note {
            record = record.with_note(field(6));
        }
        records.push(record);
    }
    if records.is_empty() {
        return Err(FormatError::Schema("dataset has no records".into()));
    }
    Ok(records)
}

fn class_table_text(title: &str, table: &ClassTable) -> String {
    let mut out = format!("{title}\n");
    let width = table.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(7);
    for class in VolumetricClass::ALL {
        let rows: Vec<_> = table.rows.iter().filter(|r| r.class == class).collect();
        if rows.is_empty() {
            continue;
        }
        out += &format!(
            "  {class}  {:>3} ({}%)\n",
            table.class_total(class),
            table.class_percent(class)
        );
        for r in rows {
            out += &format!("      {:<width$}  {:>3} ({}%)\n", r.label, r.count, r.percent);
        }
    }
    out
}

/// Initial table, adjustment table, final table and marginals as text.
pub fn render_tables(records: &[AlgorithmRecord]) -> Result<String, volbench_core::Error> {
    let initial = tabulate(records, TabulationMode::Initial)?;
    let adjusted = tabulate(records, TabulationMode::Adjusted)?;
    let mut out = class_table_text(&format!("Initial classes ({} algorithms)", records.len()), &initial);
    out += "\nAdjustments (moved up / kept)\n";
    for row in tabulate_adjustments(records)? {
        out += &format!("      {:<7}  {:>3} / {}\n", row.form.label(), row.adjusted, row.kept);
    }
    out += "\n";
    out += &class_table_text("Final classes", &adjusted);
    let m = marginals(records);
    out += "\nEstimate types\n";
    for (e, c) in &m.estimate_types {
        out += &format!("      {:<28} {c:>3}\n", e.as_str());
    }
    out += "Eras\n";
    for (e, c) in &m.eras {
        out += &format!("      {:<28} {c:>3}\n", e.as_str());
    }
    out += "Application areas (overlapping)\n";
    for (a, c) in &m.application_areas {
        out += &format!("      {:<28} {c:>3}\n", a.as_str());
    }
    Ok(out)
}

fn class_table_json(table: &ClassTable) -> Value {
    json!({
        "total": table.total,
        "classes": VolumetricClass::ALL.iter().map(|&class| json!({
            "class": class.k(),
            "count": table.class_total(class),
            "percent": table.class_percent(class),
            "rows": table.rows.iter().filter(|r| r.class == class).map(|r| json!({
                "scaling": r.label,
                "conformant": r.form.is_some(),
                "count": r.count,
                "percent": r.percent,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn tables_json(records: &[AlgorithmRecord]) -> Result<Value, volbench_core::Error> {
    let m = marginals(records);
    Ok(json!({
        "initial": class_table_json(&tabulate(records, TabulationMode::Initial)?),
        "adjustments": tabulate_adjustments(records)?.iter().map(|r| json!({
            "scaling": r.form.label(), "adjusted": r.adjusted, "kept": r.kept,
        })).collect::<Vec<_>>(),
        "final": class_table_json(&tabulate(records, TabulationMode::Adjusted)?),
        "estimate_types": m.estimate_types.iter().map(|(e, c)| (e.as_str().to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "eras": m.eras.iter().map(|(e, c)| (e.as_str().to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "application_areas": m.application_areas.iter().map(|(a, c)| (a.as_str().to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
    }))
}
