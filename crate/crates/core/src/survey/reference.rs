//! Published survey counts and a cell-by-cell comparison against them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::tables::{marginals, tabulate, tabulate_adjustments, ClassTable, TabulationMode};
use super::{AlgorithmRecord, ApplicationArea, Era, EstimateType, ScalingForm};
use crate::Result;

use ScalingForm::*;

pub const TOTAL_ALGORITHMS: usize = 58;

/// `(class, form, count)` before adjustment.
pub const INITIAL: &[(u32, ScalingForm, usize)] = &[
    (1, Linear, 16),
    (1, Log, 8),
    (1, LogPower, 6),
    (1, Constant, 2),
    (1, SqrtPolylog, 1),
    (2, Quadratic, 10),
    (2, LinearPolylog, 2),
    (3, Cubic, 8),
    (3, QuadraticPolylog, 1),
    (4, CubicLog, 2),
    (5, Quintic, 2),
];

/// `(form, adjusted, kept)`.
pub const ADJUSTMENTS: &[(ScalingForm, usize, usize)] = &[(Linear, 12, 4), (Quadratic, 6, 4), (Cubic, 4, 4)];

/// `(class, form, count)` after adjustment.
pub const FINAL: &[(u32, ScalingForm, usize)] = &[
    (1, Linear, 4),
    (1, Log, 8),
    (1, LogPower, 6),
    (1, Constant, 2),
    (1, SqrtPolylog, 1),
    (2, Linear, 12),
    (2, Quadratic, 4),
    (2, LinearPolylog, 2),
    (3, Quadratic, 6),
    (3, Cubic, 4),
    (3, QuadraticPolylog, 1),
    (4, Cubic, 4),
    (4, CubicLog, 2),
    (5, Quintic, 2),
];

pub const ESTIMATE_TYPES: &[(EstimateType, usize)] = &[
    (EstimateType::GateDepth, 14),
    (EstimateType::GateCountOrOperations, 19),
    (EstimateType::RuntimeOrTimeComplexity, 25),
];

pub const ERAS: &[(Era, usize)] = &[(Era::Nisq, 27), (Era::FaultTolerant, 31)];

pub const APPLICATION_AREAS: &[(ApplicationArea, usize)] = &[
    (ApplicationArea::MachineLearning, 24),
    (ApplicationArea::Optimization, 14),
    (ApplicationArea::ManyBodyPhysicsChemistry, 16),
    (ApplicationArea::QuantumDataHiding, 6),
    (ApplicationArea::NumericalSolvers, 3),
    (ApplicationArea::Other, 2),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub table: &'static str,
    pub cell: String,
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: expected {}, found {}",
            self.table, self.cell, self.expected, self.found
        )
    }
}

fn compare(
    table: &'static str,
    expected: BTreeMap<String, usize>,
    found: BTreeMap<String, usize>,
    out: &mut Vec<Mismatch>,
) {
    let mut keys: Vec<&String> = expected.keys().chain(found.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let e = expected.get(key).copied().unwrap_or(0);
        let f = found.get(key).copied().unwrap_or(0);
        if e != f {
            out.push(Mismatch { table, cell: key.clone(), expected: e, found: f });
        }
    }
}

fn class_cells(reference: &[(u32, ScalingForm, usize)]) -> BTreeMap<String, usize> {
    reference
        .iter()
        .map(|&(k, form, count)| (alloc::format!("QV-{k} {}", form.label()), count))
        .collect()
}

fn table_cells(table: &ClassTable) -> BTreeMap<String, usize> {
    let mut cells = BTreeMap::new();
    for row in &table.rows {
        *cells.entry(alloc::format!("{} {}", row.class, row.label)).or_insert(0) += row.count;
    }
    cells
}

fn named<T: fmt::Display>(items: impl IntoIterator<Item = (T, usize)>) -> BTreeMap<String, usize> {
    items.into_iter().map(|(k, v)| (alloc::format!("{k}"), v)).collect()
}

/// Every cell that deviates from the published counts, in table order.
pub fn check(records: &[AlgorithmRecord]) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();

    let total = BTreeMap::from([(String::from("algorithms"), TOTAL_ALGORITHMS)]);
    let found_total = BTreeMap::from([(String::from("algorithms"), records.len())]);
    compare("total", total, found_total, &mut out);

    let initial = tabulate(records, TabulationMode::Initial)?;
    compare("initial classes", class_cells(INITIAL), table_cells(&initial), &mut out);

    let adjustments = tabulate_adjustments(records)?;
    let mut expected = BTreeMap::new();
    let mut found = BTreeMap::new();
    for &(form, adjusted, kept) in ADJUSTMENTS {
        expected.insert(alloc::format!("{} adjusted", form.label()), adjusted);
        expected.insert(alloc::format!("{} kept", form.label()), kept);
    }
    for row in adjustments {
        found.insert(alloc::format!("{} adjusted", row.form.label()), row.adjusted);
        found.insert(alloc::format!("{} kept", row.form.label()), row.kept);
    }
    compare("adjustments", expected, found, &mut out);

    let adjusted = tabulate(records, TabulationMode::Adjusted)?;
    compare("final classes", class_cells(FINAL), table_cells(&adjusted), &mut out);

    let m = marginals(records);
    compare("estimate types", named(ESTIMATE_TYPES.iter().copied()), named(m.estimate_types), &mut out);
    compare("eras", named(ERAS.iter().copied()), named(m.eras), &mut out);
    compare(
        "application areas",
        named(APPLICATION_AREAS.iter().copied()),
        named(m.application_areas),
        &mut out,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_tables_are_self_consistent() {
        let initial: usize = INITIAL.iter().map(|r| r.2).sum();
        let adjusted: usize = FINAL.iter().map(|r| r.2).sum();
        let types: usize = ESTIMATE_TYPES.iter().map(|r| r.1).sum();
        let eras: usize = ERAS.iter().map(|r| r.1).sum();
        assert_eq!([initial, adjusted, types, eras], [TOTAL_ALGORITHMS; 4]);

        // adjusted counts move one class up, kept ones stay
        for &(form, moved, kept) in ADJUSTMENTS {
            let k0 = super::super::classify_initial(&form.canonical()).unwrap().k();
            let at = |k: u32| FINAL.iter().find(|r| r.0 == k && r.1 == form).map_or(0, |r| r.2);
            assert_eq!(at(k0), kept);
            assert_eq!(at(k0 + 1), moved);
        }
    }

    #[test]
    fn class_rule_matches_the_initial_table() {
        for &(k, form, _) in INITIAL {
            assert_eq!(super::super::classify_initial(&form.canonical()).unwrap().k(), k, "{form}");
        }
    }
}
